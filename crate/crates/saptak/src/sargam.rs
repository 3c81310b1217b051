//! ASCII sargam notation: parsing, canonical formatting, transposition.
//!
//! One token per event. Lowercase s r g m p d n are shuddha; uppercase
//! R G D N komal and M teevra. Each trailing `'` raises a saptak and each
//! `,` lowers one; `-` is a rest; `:n/d` appends an exact beat count. A
//! file may open with `@tonic <pitch-or-Hz>`, and `#` comments run to end
//! of line.

use thiserror::Error;

use crate::murchhana::{murchhana, scale_change, MurchhanaOutcome, Shift};
use crate::pitch::{Hz, PitchError, Ratio};
use crate::swara::{swara_frequency, Register, Swara, Tonic, TonicError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("line {line}: bad @tonic header: {source}")]
    BadHeader {
        line: usize,
        #[source]
        source: TonicError,
    },
    #[error("token {index} `{token}` is not in the sargam alphabet")]
    UnknownToken { index: usize, token: String },
    #[error("token {index} `{token}` has an invalid duration")]
    BadDuration { index: usize, token: String },
    #[error("melody contains no events")]
    Empty,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TransposeError {
    #[error("shift {0} is out of range")]
    InvalidShift(i64),
    #[error("murchhana at shift {shift} is rejected: pa is displaced to {displaced}")]
    RejectedShift { shift: u8, displaced: String },
    #[error("event {index} is {swara}; murchhana is defined on shuddha swaras only")]
    VikritaSource { index: usize, swara: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MelodyEvent {
    Note {
        swara: Swara,
        register: Register,
        beats: Ratio,
    },
    Rest {
        beats: Ratio,
    },
}

impl MelodyEvent {
    pub fn beats(self) -> Ratio {
        match self {
            MelodyEvent::Note { beats, .. } | MelodyEvent::Rest { beats } => beats,
        }
    }

    /// Realized pitch against a tonic; rests have none.
    pub fn frequency(self, tonic: Tonic) -> Option<Hz> {
        match self {
            MelodyEvent::Note { swara, register, .. } => {
                Some(swara_frequency(tonic, swara, register))
            }
            MelodyEvent::Rest { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Melody {
    pub tonic: Tonic,
    pub events: Vec<MelodyEvent>,
}

impl Melody {
    pub fn total_beats(&self) -> Result<Ratio, PitchError> {
        let mut total: Option<Ratio> = None;
        for e in &self.events {
            total = Some(match total {
                None => e.beats(),
                Some(acc) => acc.checked_add(e.beats())?,
            });
        }
        // parse guarantees at least one event
        total.ok_or(PitchError::ZeroRatio)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransposeMode {
    ScaleChange,
    Murchhana,
}

pub fn parse_melody(text: &str) -> Result<Melody, ParseError> {
    let mut tonic = Tonic::default();
    let mut body = String::new();
    let mut header_window = true;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.is_empty() {
            continue;
        }
        // the header may only be the first contentful line
        if header_window {
            header_window = false;
            if words[0] == "@tonic" {
                let value = words[1..].join(" ");
                tonic = Tonic::parse(&value).map_err(|source| ParseError::BadHeader {
                    line: lineno + 1,
                    source,
                })?;
                continue;
            }
        }
        body.push_str(line);
        body.push('\n');
    }
    let mut events = Vec::new();
    for (i, token) in body.split_whitespace().enumerate() {
        events.push(parse_token(i + 1, token)?);
    }
    if events.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(Melody { tonic, events })
}

fn parse_token(index: usize, token: &str) -> Result<MelodyEvent, ParseError> {
    let unknown = || ParseError::UnknownToken {
        index,
        token: token.to_string(),
    };
    let (head, dur) = match token.split_once(':') {
        Some((h, d)) => (h, Some(d)),
        None => (token, None),
    };
    let beats = match dur {
        None => Ratio::ONE,
        Some(d) => parse_beats(d).ok_or_else(|| ParseError::BadDuration {
            index,
            token: token.to_string(),
        })?,
    };
    if head == "-" {
        return Ok(MelodyEvent::Rest { beats });
    }
    let mut chars = head.chars();
    let swara = chars
        .next()
        .and_then(Swara::from_token)
        .ok_or_else(unknown)?;
    let mut register = 0i32;
    for c in chars {
        match c {
            '\'' => register += 1,
            ',' => register -= 1,
            _ => return Err(unknown()),
        }
    }
    Ok(MelodyEvent::Note {
        swara,
        register: Register(register),
        beats,
    })
}

fn parse_beats(text: &str) -> Option<Ratio> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (parse_int(n)?, parse_int(d)?),
        None => (parse_int(text)?, 1),
    };
    Ratio::new(num, den).ok()
}

// digits only: no signs, no whitespace
fn parse_int(text: &str) -> Option<u64> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

/// Canonical text: an @tonic header, then all events on one line. The
/// canonical form round-trips exactly through parse_melody.
pub fn format_melody(melody: &Melody) -> String {
    let mut out = format!("@tonic {}\n", melody.tonic.sa_frequency().get());
    let tokens: Vec<String> = melody.events.iter().map(format_event).collect();
    out.push_str(&tokens.join(" "));
    out.push('\n');
    out
}

fn format_event(event: &MelodyEvent) -> String {
    let (head, beats) = match *event {
        MelodyEvent::Rest { beats } => ("-".to_string(), beats),
        MelodyEvent::Note {
            swara,
            register,
            beats,
        } => (format!("{}{}", swara.token(), register.marks()), beats),
    };
    if beats == Ratio::ONE {
        head
    } else if beats.den() == 1 {
        format!("{}:{}", head, beats.num())
    } else {
        format!("{}:{}", head, beats)
    }
}

/// Transpose a melody.
///
/// Scale change replaces the tonic and leaves every event untouched.
/// Murchhana moves the tonic up to the shift degree and re-spells each
/// event relative to the new sa, carrying registers across the octave
/// seam, so that every event keeps its absolute frequency. Vikrita
/// source events have no image under a proper pure-saptak rotation and
/// are refused; shift 0 is the identity and accepts any melody.
pub fn transpose_melody(
    melody: &Melody,
    mode: TransposeMode,
    shift: i64,
) -> Result<Melody, TransposeError> {
    match mode {
        TransposeMode::ScaleChange => {
            // stay well inside f64 range
            if shift.abs() > 4096 {
                return Err(TransposeError::InvalidShift(shift));
            }
            Ok(Melody {
                tonic: scale_change(melody.tonic, shift as i32),
                events: melody.events.clone(),
            })
        }
        TransposeMode::Murchhana => {
            let s = Shift::new(shift).map_err(|_| TransposeError::InvalidShift(shift))?;
            if let MurchhanaOutcome::Rejected(r) = murchhana(s) {
                return Err(TransposeError::RejectedShift {
                    shift: r.shift.get(),
                    displaced: r.displaced_degree.to_string(),
                });
            }
            let anchor = i32::from(s.anchor_semitone());
            let mut events = Vec::with_capacity(melody.events.len());
            for (i, &event) in melody.events.iter().enumerate() {
                events.push(match event {
                    MelodyEvent::Rest { beats } => MelodyEvent::Rest { beats },
                    MelodyEvent::Note {
                        swara,
                        register,
                        beats,
                    } => {
                        // only the identity rotation has defined images
                        // for vikrita swaras
                        if swara.is_vikrita() && anchor != 0 {
                            return Err(TransposeError::VikritaSource {
                                index: i + 1,
                                swara: swara.to_string(),
                            });
                        }
                        let rel = i32::from(swara.semitone_index()) - anchor;
                        let semitone = rel.rem_euclid(12);
                        MelodyEvent::Note {
                            swara: Swara::from_semitone(semitone as u8).expect("mod 12"),
                            register: Register(register.0 + rel.div_euclid(12)),
                            beats,
                        }
                    }
                });
            }
            Ok(Melody {
                tonic: scale_change(melody.tonic, anchor),
                events,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::swara::western_name;

    fn note(swara: Swara, register: i32) -> MelodyEvent {
        MelodyEvent::Note {
            swara,
            register: Register(register),
            beats: Ratio::ONE,
        }
    }

    #[test]
    fn parses_plain_shuddha_notes() {
        let m = parse_melody("s r g m").unwrap();
        assert_eq!(m.tonic, Tonic::default());
        assert_eq!(
            m.events,
            vec![
                note(Swara::SA, 0),
                note(Swara::RE, 0),
                note(Swara::GA, 0),
                note(Swara::MA, 0),
            ]
        );
    }

    #[test]
    fn parses_registers_vikrita_and_rests() {
        let m = parse_melody("G, n' -").unwrap();
        assert_eq!(
            m.events,
            vec![
                note(Swara::KOMAL_GA, -1),
                note(Swara::NI, 1),
                MelodyEvent::Rest { beats: Ratio::ONE },
            ]
        );
        let wide = parse_melody("s'' p,,").unwrap();
        assert_eq!(wide.events, vec![note(Swara::SA, 2), note(Swara::PA, -2)]);
    }

    #[test]
    fn parses_durations_as_exact_rationals() {
        let m = parse_melody("s:3 d:1/2 -:2 m:6/4").unwrap();
        let beats: Vec<Ratio> = m.events.iter().map(|e| e.beats()).collect();
        assert_eq!(
            beats,
            vec![
                Ratio::new(3, 1).unwrap(),
                Ratio::new(1, 2).unwrap(),
                Ratio::new(2, 1).unwrap(),
                Ratio::new(3, 2).unwrap(),
            ]
        );
    }

    #[test]
    fn rejects_bad_tokens_with_position() {
        assert_eq!(
            parse_melody("x"),
            Err(ParseError::UnknownToken {
                index: 1,
                token: "x".to_string()
            })
        );
        assert_eq!(
            parse_melody("s r q"),
            Err(ParseError::UnknownToken {
                index: 3,
                token: "q".to_string()
            })
        );
        assert!(matches!(
            parse_melody("s'r"),
            Err(ParseError::UnknownToken { index: 1, .. })
        ));
        for bad in ["s:0", "s:1/0", "s:+2", "s:2:3", "s:", "-:x"] {
            assert!(
                matches!(parse_melody(bad), Err(ParseError::BadDuration { index: 1, .. })),
                "{bad}"
            );
        }
        assert_eq!(parse_melody(""), Err(ParseError::Empty));
        assert_eq!(parse_melody("# comment only\n\n"), Err(ParseError::Empty));
    }

    #[test]
    fn header_comments_and_blank_lines() {
        let text = "# raga sketch\n\n@tonic C4  # middle C\ns r g\n";
        let m = parse_melody(text).unwrap();
        assert_eq!(m.tonic, Tonic::parse("C4").unwrap());
        assert_eq!(m.events.len(), 3);
        let hz = parse_melody("@tonic 440\ns").unwrap();
        assert_eq!(hz.tonic.sa_frequency().get(), 440.0);
        assert!(matches!(
            parse_melody("@tonic\ns"),
            Err(ParseError::BadHeader { line: 1, .. })
        ));
        assert!(matches!(
            parse_melody("@tonic what\ns"),
            Err(ParseError::BadHeader { line: 1, .. })
        ));
        // a later @tonic is just an unknown token
        assert!(matches!(
            parse_melody("s\n@tonic 440"),
            Err(ParseError::UnknownToken { index: 2, .. })
        ));
    }

    #[test]
    fn formats_canonically_and_round_trips() {
        let sa = Melody {
            tonic: Tonic::default(),
            events: vec![note(Swara::SA, 0)],
        };
        assert_eq!(format_melody(&sa), "@tonic 261.6256\ns\n");
        let ni_tar = Melody {
            tonic: Tonic::default(),
            events: vec![note(Swara::KOMAL_NI, 1)],
        };
        assert!(format_melody(&ni_tar).ends_with("N'\n"));
        for text in ["s r g m", "G, n' -", "s:3 d:1/2 - m'':5/3", "@tonic A3\np,,:7/2"] {
            let m = parse_melody(text).unwrap();
            let canonical = format_melody(&m);
            assert_eq!(parse_melody(&canonical).unwrap(), m, "{text}");
            assert_eq!(format_melody(&parse_melody(&canonical).unwrap()), canonical);
        }
    }

    #[test]
    fn total_beats_sums_exactly() {
        let m = parse_melody("s:1/2 r:1/3 -").unwrap();
        assert_eq!(m.total_beats().unwrap(), Ratio::new(11, 6).unwrap());
    }

    #[test]
    fn scale_change_keeps_tokens_and_moves_tonic() {
        let m = parse_melody("@tonic C3\ns r g").unwrap();
        let up = transpose_melody(&m, TransposeMode::ScaleChange, 5).unwrap();
        assert_eq!(up.events, m.events);
        assert_eq!(
            western_name(up.tonic, Swara::SA, Register::MADHYA).unwrap(),
            "F3"
        );
        let back = transpose_melody(&up, TransposeMode::ScaleChange, -5).unwrap();
        assert_eq!(back.events, m.events);
        let rel = (back.tonic.sa_frequency().get() - m.tonic.sa_frequency().get()).abs()
            / m.tonic.sa_frequency().get();
        assert!(rel < 1e-9);
        assert_eq!(
            transpose_melody(&m, TransposeMode::ScaleChange, 9999),
            Err(TransposeError::InvalidShift(9999))
        );
    }

    #[test]
    fn murchhana_shift_zero_is_identity() {
        // vikrita events included: the identity guesses nothing
        let m = parse_melody("s R G, m' M -:2 N").unwrap();
        let t = transpose_melody(&m, TransposeMode::Murchhana, 0).unwrap();
        assert_eq!(t, m);
    }

    #[test]
    fn murchhana_preserves_event_frequencies() {
        let m = parse_melody("s r g m p d n s'").unwrap();
        let t = transpose_melody(&m, TransposeMode::Murchhana, 1).unwrap();
        // new sa is the old re
        let expected_tonic = swara_frequency(m.tonic, Swara::RE, Register::MADHYA);
        let rel = (t.tonic.sa_frequency().get() - expected_tonic.get()).abs() / expected_tonic.get();
        assert!(rel < 1e-9);
        // old sa re-spells as komal ni mandra against the new sa
        assert_eq!(t.events[0], note(Swara::KOMAL_NI, -1));
        assert_eq!(t.events[7], note(Swara::KOMAL_NI, 0));
        for (old, new) in m.events.iter().zip(&t.events) {
            let before = old.frequency(m.tonic).unwrap().get();
            let after = new.frequency(t.tonic).unwrap().get();
            assert!((before - after).abs() / before < 1e-9);
        }
    }

    #[test]
    fn murchhana_of_pure_saptak_spells_the_thaat() {
        for shift in 0..6i64 {
            let m = parse_melody("s r g m p d n s'").unwrap();
            let t = transpose_melody(&m, TransposeMode::Murchhana, shift).unwrap();
            let spelled: BTreeSet<Swara> = t
                .events
                .iter()
                .filter_map(|e| match e {
                    MelodyEvent::Note { swara, .. } => Some(*swara),
                    MelodyEvent::Rest { .. } => None,
                })
                .collect();
            let thaat = murchhana(Shift::new(shift).unwrap())
                .thaat()
                .expect("accepted")
                .degrees();
            let expected: BTreeSet<Swara> = thaat.into_iter().collect();
            assert_eq!(spelled, expected, "shift {shift}");
        }
    }

    #[test]
    fn murchhana_rejections_and_domain_errors() {
        let m = parse_melody("s r g").unwrap();
        assert_eq!(
            transpose_melody(&m, TransposeMode::Murchhana, 6),
            Err(TransposeError::RejectedShift {
                shift: 6,
                displaced: "teevra ma".to_string()
            })
        );
        assert_eq!(
            transpose_melody(&m, TransposeMode::Murchhana, 7),
            Err(TransposeError::InvalidShift(7))
        );
        assert_eq!(
            transpose_melody(&m, TransposeMode::Murchhana, -1),
            Err(TransposeError::InvalidShift(-1))
        );
        let vikrita = parse_melody("s G m").unwrap();
        assert_eq!(
            transpose_melody(&vikrita, TransposeMode::Murchhana, 1),
            Err(TransposeError::VikritaSource {
                index: 2,
                swara: "komal ga".to_string()
            })
        );
    }
}
