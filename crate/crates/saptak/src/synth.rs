//! Sine rendering of tones and melodies, and WAV output.
//!
//! Sine-only timbre: the point of rendering is to hear a tuning, not a
//! voice. Output is 16-bit mono PCM for universal player compatibility.

use std::io;
use std::path::Path;

use thiserror::Error;

use crate::pitch::{Hz, Ratio};
use crate::sargam::Melody;

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("bad render config: {0}")]
    BadConfig(String),
    #[error("{freq} Hz is at or above the Nyquist limit {nyquist} Hz")]
    Aliased { freq: f64, nyquist: f64 },
    #[error("sample buffer is empty")]
    EmptyBuffer,
    #[error("rendered audio would not fit in a WAV file")]
    TooLong,
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// The WAV data chunk length must fit in u32.
const MAX_SAMPLES: usize = (u32::MAX as usize - 44) / 2;

#[derive(Clone, Copy, Debug)]
pub struct RenderConfig {
    sample_rate: u32,
    amplitude: f64,
    note_seconds: f64,
    fade_ms: f64,
}

impl RenderConfig {
    pub fn new(
        sample_rate: u32,
        amplitude: f64,
        note_seconds: f64,
        fade_ms: f64,
    ) -> Result<RenderConfig, SynthError> {
        if !(8000..=192_000).contains(&sample_rate) {
            return Err(SynthError::BadConfig(format!(
                "sample rate {sample_rate} outside 8000..=192000"
            )));
        }
        if !(amplitude > 0.0 && amplitude <= 1.0) {
            return Err(SynthError::BadConfig(format!(
                "amplitude {amplitude} outside (0, 1]"
            )));
        }
        if !(note_seconds > 0.0 && note_seconds <= 3600.0) {
            return Err(SynthError::BadConfig(format!(
                "note length {note_seconds} s outside (0, 3600]"
            )));
        }
        if !(fade_ms >= 0.0 && fade_ms * 2.0 < note_seconds * 1000.0) {
            return Err(SynthError::BadConfig(format!(
                "fades of {fade_ms} ms do not fit inside a {note_seconds} s note"
            )));
        }
        Ok(RenderConfig {
            sample_rate,
            amplitude,
            note_seconds,
            fade_ms,
        })
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn note_seconds(&self) -> f64 {
        self.note_seconds
    }

    pub fn fade_ms(&self) -> f64 {
        self.fade_ms
    }

    pub fn nyquist(&self) -> f64 {
        f64::from(self.sample_rate) / 2.0
    }
}

impl Default for RenderConfig {
    fn default() -> RenderConfig {
        RenderConfig {
            sample_rate: 44100,
            amplitude: 0.5,
            note_seconds: 0.5,
            fade_ms: 10.0,
        }
    }
}

/// One note of `cfg.note_seconds` at frequency `f`.
pub fn render_tone(f: Hz, cfg: &RenderConfig) -> Result<Vec<f64>, SynthError> {
    let n = samples_for(cfg.note_seconds, cfg.sample_rate)?;
    let mut out = vec![0.0; n];
    fill_sine(&mut out, f, cfg)?;
    Ok(out)
}

/// Concatenated per-event tones, silence for rests. Event boundaries sit
/// at ceil(cumulative_beats * note_seconds * sample_rate), so the total
/// sample count is the ceiling for the whole melody.
pub fn render_melody(melody: &Melody, cfg: &RenderConfig) -> Result<Vec<f64>, SynthError> {
    let mut boundaries = Vec::with_capacity(melody.events.len() + 1);
    boundaries.push(0usize);
    let mut cum: Option<Ratio> = None;
    for event in &melody.events {
        let total = match cum {
            None => event.beats(),
            Some(acc) => acc
                .checked_add(event.beats())
                .map_err(|_| SynthError::TooLong)?,
        };
        cum = Some(total);
        boundaries.push(samples_for(total.value() * cfg.note_seconds, cfg.sample_rate)?);
    }
    let total = *boundaries.last().expect("starts non-empty");
    let mut out = vec![0.0; total];
    for (i, event) in melody.events.iter().enumerate() {
        let seg = &mut out[boundaries[i]..boundaries[i + 1]];
        if let Some(f) = event.frequency(melody.tonic) {
            fill_sine(seg, f, cfg)?;
        }
    }
    Ok(out)
}

fn samples_for(seconds: f64, rate: u32) -> Result<usize, SynthError> {
    let n = (seconds * f64::from(rate)).ceil();
    if n.is_nan() || n < 0.0 || n > MAX_SAMPLES as f64 {
        return Err(SynthError::TooLong);
    }
    Ok(n as usize)
}

fn fill_sine(segment: &mut [f64], f: Hz, cfg: &RenderConfig) -> Result<(), SynthError> {
    let nyquist = cfg.nyquist();
    if f.get() >= nyquist {
        return Err(SynthError::Aliased {
            freq: f.get(),
            nyquist,
        });
    }
    let n = segment.len();
    // short segments get proportionally shorter ramps
    let fade = ((cfg.fade_ms / 1000.0) * f64::from(cfg.sample_rate))
        .round()
        .min(n as f64 / 2.0);
    let step = std::f64::consts::TAU * f.get() / f64::from(cfg.sample_rate);
    for (i, slot) in segment.iter_mut().enumerate() {
        let mut gain = 1.0f64;
        if fade > 0.0 {
            gain = gain.min((i as f64 + 1.0) / fade).min((n - i) as f64 / fade);
        }
        *slot = cfg.amplitude * gain * (step * i as f64).sin();
    }
    Ok(())
}

fn quantize(x: f64) -> i16 {
    (x.clamp(-1.0, 1.0) * 32767.0).round() as i16
}

/// RIFF/WAVE, PCM 16-bit signed little-endian, mono.
pub fn wav_bytes(samples: &[f64], sample_rate: u32) -> Result<Vec<u8>, SynthError> {
    if samples.is_empty() {
        return Err(SynthError::EmptyBuffer);
    }
    if samples.len() > MAX_SAMPLES {
        return Err(SynthError::TooLong);
    }
    let data_len = (samples.len() * 2) as u32;
    let mut out = Vec::with_capacity(44 + samples.len() * 2);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_len).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes()); // PCM fmt chunk size
    out.extend_from_slice(&1u16.to_le_bytes()); // PCM
    out.extend_from_slice(&1u16.to_le_bytes()); // mono
    out.extend_from_slice(&sample_rate.to_le_bytes());
    out.extend_from_slice(&(sample_rate * 2).to_le_bytes()); // byte rate
    out.extend_from_slice(&2u16.to_le_bytes()); // block align
    out.extend_from_slice(&16u16.to_le_bytes()); // bits per sample
    out.extend_from_slice(b"data");
    out.extend_from_slice(&data_len.to_le_bytes());
    for &s in samples {
        out.extend_from_slice(&quantize(s).to_le_bytes());
    }
    Ok(out)
}

pub fn write_wav<P: AsRef<Path>>(
    samples: &[f64],
    sample_rate: u32,
    path: P,
) -> Result<(), SynthError> {
    Ok(std::fs::write(path, wav_bytes(samples, sample_rate)?)?)
}
