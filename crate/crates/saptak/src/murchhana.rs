//! Scale shifting: plain scale change and the murchhana rotation.
//!
//! A scale change moves every frequency by the same factor and alters no
//! structure. A murchhana re-anchors sa on another shuddha degree and
//! re-spells the old ladder against the new anchor; it is valid only when
//! the fifth survives, which fails exactly once (shift 6, where pa's slot
//! is taken by teevra ma).

use serde::Serialize;
use thiserror::Error;

use crate::pitch::ets_frequency;
use crate::swara::{Degree, Swara, Tonic};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MurchhanaError {
    #[error("shift {0} outside 0..=6")]
    InvalidShift(i64),
    #[error("scale pattern must be 7 steps of 1 or 2 semitones summing to 12")]
    InvalidPattern,
    #[error("no Carnatic counterpart recorded for `{0}`")]
    UnknownRaga(String),
}

const HINDUSTANI: [&str; 6] = [
    "Bilawal", "Kafi", "Bhairavi", "Kalyan", "Khammaj", "Asavari",
];

const CARNATIC: [(&str, &str); 6] = [
    ("Bilawal", "Dhirashankarabaranam"),
    ("Kafi", "Kharaharapriya"),
    ("Bhairavi", "Hanumantodi"),
    ("Kalyan", "Mechakalyani"),
    ("Khammaj", "Harikamboji"),
    ("Asavari", "Natabhairavi"),
];

/// Anchor degree of a murchhana, indexing the shuddha ladder sa..ni.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Shift(u8);

impl Shift {
    pub const ALL: [Shift; 7] = [
        Shift(0),
        Shift(1),
        Shift(2),
        Shift(3),
        Shift(4),
        Shift(5),
        Shift(6),
    ];

    pub fn new(value: i64) -> Result<Shift, MurchhanaError> {
        if (0..=6).contains(&value) {
            Ok(Shift(value as u8))
        } else {
            Err(MurchhanaError::InvalidShift(value))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn degree(self) -> Degree {
        Degree::ALL[self.0 as usize]
    }

    /// Semitone of the anchor degree's shuddha form.
    pub fn anchor_semitone(self) -> u8 {
        self.degree().shuddha_semitone()
    }
}

/// Interval ladder in semitones, T = 2 and S = 1.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ScalePattern([u8; 7]);

impl ScalePattern {
    /// T T S T T T S.
    pub const MAJOR: ScalePattern = ScalePattern([2, 2, 1, 2, 2, 2, 1]);

    pub fn new(steps: [u8; 7]) -> Result<ScalePattern, MurchhanaError> {
        if steps.iter().all(|&s| s == 1 || s == 2) && steps.iter().sum::<u8>() == 12 {
            Ok(ScalePattern(steps))
        } else {
            Err(MurchhanaError::InvalidPattern)
        }
    }

    pub fn steps(self) -> [u8; 7] {
        self.0
    }

    pub fn rotated(self, by: usize) -> ScalePattern {
        let mut steps = [0; 7];
        for (i, slot) in steps.iter_mut().enumerate() {
            *slot = self.0[(i + by) % 7];
        }
        ScalePattern(steps)
    }

    /// Cumulative semitones of the 7 degrees; degree 0 is always 0.
    pub fn degree_semitones(self) -> [u8; 7] {
        let mut out = [0; 7];
        for i in 1..7 {
            out[i] = out[i - 1] + self.0[i - 1];
        }
        out
    }
}

/// A named 7-degree parent scale.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Thaat {
    degrees: [Swara; 7],
    shift: Shift,
    hindustani_name: Option<&'static str>,
    carnatic_name: Option<&'static str>,
}

impl Thaat {
    pub fn degrees(&self) -> [Swara; 7] {
        self.degrees
    }

    pub fn shift(&self) -> Shift {
        self.shift
    }

    pub fn hindustani_name(&self) -> Option<&'static str> {
        self.hindustani_name
    }

    pub fn carnatic_name(&self) -> Option<&'static str> {
        self.carnatic_name
    }

    pub fn semitones(&self) -> [u8; 7] {
        self.degrees.map(|s| s.semitone_index())
    }

    pub fn vikrita(&self) -> Vec<Swara> {
        self.degrees.iter().copied().filter(|s| s.is_vikrita()).collect()
    }
}

/// Why a shift was refused: the swara standing on the fifth degree when
/// pa itself fell out of the rotated set.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Rejection {
    pub shift: Shift,
    pub displaced_degree: Swara,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MurchhanaOutcome {
    Accepted(Thaat),
    Rejected(Rejection),
}

impl MurchhanaOutcome {
    pub fn is_accepted(&self) -> bool {
        matches!(self, MurchhanaOutcome::Accepted(_))
    }

    pub fn thaat(&self) -> Option<&Thaat> {
        match self {
            MurchhanaOutcome::Accepted(t) => Some(t),
            MurchhanaOutcome::Rejected(_) => None,
        }
    }
}

/// Rotate the shuddha set about the shift-th degree and re-spell.
pub fn murchhana(shift: Shift) -> MurchhanaOutcome {
    let anchor = shift.anchor_semitone();
    let mut semitones: Vec<u8> = Degree::ALL
        .iter()
        .map(|d| (d.shuddha_semitone() + 12 - anchor) % 12)
        .collect();
    semitones.sort_unstable();
    // pa rule: the rotation is rejected exactly when the fifth is gone
    if !semitones.contains(&7) {
        let displaced = Swara::from_semitone(semitones[4]).expect("mod 12");
        return MurchhanaOutcome::Rejected(Rejection {
            shift,
            displaced_degree: displaced,
        });
    }
    let mut degrees = [Swara::SA; 7];
    for (slot, &s) in degrees.iter_mut().zip(&semitones) {
        *slot = Swara::from_semitone(s).expect("mod 12");
    }
    let hindustani = HINDUSTANI[shift.get() as usize];
    MurchhanaOutcome::Accepted(Thaat {
        degrees,
        shift,
        hindustani_name: Some(hindustani),
        carnatic_name: carnatic_name(hindustani).ok(),
    })
}

/// All seven shifts in order: six thaats and the rejected seventh.
pub fn enumerate_murchhanas() -> Vec<MurchhanaOutcome> {
    Shift::ALL.iter().map(|&s| murchhana(s)).collect()
}

/// Move the tonic by ETS steps; structure is untouched.
pub fn scale_change(tonic: Tonic, steps: i32) -> Tonic {
    Tonic::new(ets_frequency(tonic.sa_frequency(), steps))
}

pub fn carnatic_name(hindustani: &str) -> Result<&'static str, MurchhanaError> {
    CARNATIC
        .iter()
        .find(|(h, _)| *h == hindustani)
        .map(|&(_, c)| c)
        .ok_or_else(|| MurchhanaError::UnknownRaga(hindustani.to_string()))
}

/// Text grid of all seven shifts: one row per shift, 14 slots padded
/// with `*`, the rejected row labelled with dashes.
pub fn murchhana_grid() -> String {
    const LADDER: [&str; 8] = ["sa", "re", "ga", "ma", "pa", "dha", "ni", "sa'"];
    let mut out = String::new();
    let labels = HINDUSTANI.iter().copied().chain(std::iter::once("----"));
    for (shift, label) in labels.enumerate() {
        let mut cells: Vec<&str> = Vec::with_capacity(14);
        cells.extend(std::iter::repeat_n("*", shift));
        cells.extend(LADDER);
        cells.extend(std::iter::repeat_n("*", 14 - 8 - shift));
        let mut row = format!("{label:<10}");
        for cell in &cells {
            row.push_str(&format!("{cell:<5}"));
        }
        out.push_str(row.trim_end());
        out.push('\n');
    }
    out
}

/// Per-shift export object.
#[derive(Serialize, Clone, Debug)]
pub struct OutcomeRow {
    pub shift: u8,
    pub accepted: bool,
    pub hindustani_name: Option<String>,
    pub carnatic_name: Option<String>,
    pub degrees: Option<Vec<String>>,
    pub vikrita: Option<Vec<String>>,
    pub rejection: Option<RejectionRow>,
}

#[derive(Serialize, Clone, Debug)]
pub struct RejectionRow {
    pub displaced_degree: String,
    pub reason: String,
}

pub fn outcome_rows(outcomes: &[MurchhanaOutcome]) -> Vec<OutcomeRow> {
    outcomes
        .iter()
        .map(|outcome| match outcome {
            MurchhanaOutcome::Accepted(t) => OutcomeRow {
                shift: t.shift().get(),
                accepted: true,
                hindustani_name: t.hindustani_name().map(String::from),
                carnatic_name: t.carnatic_name().map(String::from),
                degrees: Some(t.degrees().iter().map(|s| s.to_string()).collect()),
                vikrita: Some(t.vikrita().iter().map(|s| s.to_string()).collect()),
                rejection: None,
            },
            MurchhanaOutcome::Rejected(r) => OutcomeRow {
                shift: r.shift.get(),
                accepted: false,
                hindustani_name: None,
                carnatic_name: None,
                degrees: None,
                vikrita: None,
                rejection: Some(RejectionRow {
                    displaced_degree: r.displaced_degree.to_string(),
                    reason: format!("pa is displaced to {}", r.displaced_degree),
                }),
            },
        })
        .collect()
}

pub fn outcomes_to_json(outcomes: &[MurchhanaOutcome]) -> String {
    serde_json::to_string_pretty(&outcome_rows(outcomes)).expect("rows are plain data")
}
