//! Scale theory of Hindustani music, computable: exact shruti ratios,
//! the tempered twelve-swara saptak, murchhana derivation of the six
//! thaats, scale-change transposition, sargam notation, and sine
//! rendering for audible checks.
//!
//! Intervals are exact rationals until a frequency is needed; register
//! arithmetic is pure powers of two, so octave relations are exact even
//! in floating point.

pub mod murchhana;
pub mod pitch;
pub mod sargam;
pub mod shruti;
pub mod swara;
pub mod synth;

pub use murchhana::{
    enumerate_murchhanas, murchhana, scale_change, MurchhanaOutcome, ScalePattern, Shift, Thaat,
};
pub use pitch::{deviation_cents, ets_frequency, just_frequency, Cents, Hz, Ratio};
pub use sargam::{
    format_melody, parse_melody, transpose_melody, Melody, MelodyEvent, TransposeMode,
};
pub use shruti::{canonical_shrutis, shruti_table, table_rows, ShrutiEntry, ShrutiRow};
pub use swara::{swara_frequency, western_name, Degree, Modifier, Register, Swara, Tonic};
pub use synth::{render_melody, render_tone, wav_bytes, write_wav, RenderConfig};
