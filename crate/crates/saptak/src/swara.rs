//! The twelve-swara saptak, its registers, and the A440 keyboard map.

use std::fmt;

use thiserror::Error;

use crate::pitch::Hz;

pub const A4_HZ: f64 = 440.0;
/// Keyboard index of A4 when C0 is key 0.
pub const A4_KEY: i64 = 57;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SwaraError {
    #[error("{degree} does not admit the {modifier} modifier")]
    InvalidModifier { degree: Degree, modifier: Modifier },
    #[error("tonic {hz} Hz is not within one cent of the A440 keyboard")]
    NotOnKeyboard { hz: f64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TonicError {
    #[error("empty tonic")]
    Empty,
    #[error("bad pitch name `{0}` (expected e.g. C4, F#3, B_flat2)")]
    BadPitchName(String),
    #[error("bad frequency `{0}` (expected a positive number of Hz)")]
    BadFrequency(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Degree {
    Sa,
    Re,
    Ga,
    Ma,
    Pa,
    Dha,
    Ni,
}

impl Degree {
    pub const ALL: [Degree; 7] = [
        Degree::Sa,
        Degree::Re,
        Degree::Ga,
        Degree::Ma,
        Degree::Pa,
        Degree::Dha,
        Degree::Ni,
    ];

    pub fn name(self) -> &'static str {
        ["sa", "re", "ga", "ma", "pa", "dha", "ni"][self as usize]
    }

    /// Semitone of the shuddha form: the T T S T T T S ladder.
    pub fn shuddha_semitone(self) -> u8 {
        [0, 2, 4, 5, 7, 9, 11][self as usize]
    }

    /// sa and pa admit no variants.
    pub fn is_atal(self) -> bool {
        matches!(self, Degree::Sa | Degree::Pa)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

// Komal < Shuddha < Teevra so that derived swara order is semitone order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Modifier {
    Komal,
    Shuddha,
    Teevra,
}

impl Modifier {
    pub fn name(self) -> &'static str {
        match self {
            Modifier::Komal => "komal",
            Modifier::Shuddha => "shuddha",
            Modifier::Teevra => "teevra",
        }
    }
}

impl fmt::Display for Modifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One of the 12 valid (degree, modifier) pitch classes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Swara {
    degree: Degree,
    modifier: Modifier,
}

impl Swara {
    pub const SA: Swara = Swara { degree: Degree::Sa, modifier: Modifier::Shuddha };
    pub const KOMAL_RE: Swara = Swara { degree: Degree::Re, modifier: Modifier::Komal };
    pub const RE: Swara = Swara { degree: Degree::Re, modifier: Modifier::Shuddha };
    pub const KOMAL_GA: Swara = Swara { degree: Degree::Ga, modifier: Modifier::Komal };
    pub const GA: Swara = Swara { degree: Degree::Ga, modifier: Modifier::Shuddha };
    pub const MA: Swara = Swara { degree: Degree::Ma, modifier: Modifier::Shuddha };
    pub const TEEVRA_MA: Swara = Swara { degree: Degree::Ma, modifier: Modifier::Teevra };
    pub const PA: Swara = Swara { degree: Degree::Pa, modifier: Modifier::Shuddha };
    pub const KOMAL_DHA: Swara = Swara { degree: Degree::Dha, modifier: Modifier::Komal };
    pub const DHA: Swara = Swara { degree: Degree::Dha, modifier: Modifier::Shuddha };
    pub const KOMAL_NI: Swara = Swara { degree: Degree::Ni, modifier: Modifier::Komal };
    pub const NI: Swara = Swara { degree: Degree::Ni, modifier: Modifier::Shuddha };

    /// The saptak in semitone order.
    pub const ALL: [Swara; 12] = [
        Swara::SA,
        Swara::KOMAL_RE,
        Swara::RE,
        Swara::KOMAL_GA,
        Swara::GA,
        Swara::MA,
        Swara::TEEVRA_MA,
        Swara::PA,
        Swara::KOMAL_DHA,
        Swara::DHA,
        Swara::KOMAL_NI,
        Swara::NI,
    ];

    pub fn new(degree: Degree, modifier: Modifier) -> Result<Swara, SwaraError> {
        let valid = match modifier {
            Modifier::Shuddha => true,
            Modifier::Komal => {
                matches!(degree, Degree::Re | Degree::Ga | Degree::Dha | Degree::Ni)
            }
            Modifier::Teevra => degree == Degree::Ma,
        };
        if valid {
            Ok(Swara { degree, modifier })
        } else {
            Err(SwaraError::InvalidModifier { degree, modifier })
        }
    }

    pub fn degree(self) -> Degree {
        self.degree
    }

    pub fn modifier(self) -> Modifier {
        self.modifier
    }

    pub fn semitone_index(self) -> u8 {
        let base = self.degree.shuddha_semitone();
        match self.modifier {
            Modifier::Shuddha => base,
            Modifier::Komal => base - 1,
            Modifier::Teevra => base + 1,
        }
    }

    pub fn from_semitone(semitone: u8) -> Option<Swara> {
        Swara::ALL.get(semitone as usize).copied()
    }

    pub fn is_vikrita(self) -> bool {
        self.modifier != Modifier::Shuddha
    }

    /// One-character notation: lowercase shuddha, uppercase vikrita.
    pub fn token(self) -> char {
        let letter = b"srgmpdn"[self.degree as usize];
        if self.is_vikrita() {
            letter.to_ascii_uppercase() as char
        } else {
            letter as char
        }
    }

    pub fn from_token(c: char) -> Option<Swara> {
        Some(match c {
            's' => Swara::SA,
            'r' => Swara::RE,
            'R' => Swara::KOMAL_RE,
            'g' => Swara::GA,
            'G' => Swara::KOMAL_GA,
            'm' => Swara::MA,
            'M' => Swara::TEEVRA_MA,
            'p' => Swara::PA,
            'd' => Swara::DHA,
            'D' => Swara::KOMAL_DHA,
            'n' => Swara::NI,
            'N' => Swara::KOMAL_NI,
            _ => return None,
        })
    }
}

impl fmt::Display for Swara {
    /// Spoken name: "komal ga", "teevra ma"; shuddha is the bare degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_vikrita() {
            write!(f, "{} {}", self.modifier, self.degree)
        } else {
            f.write_str(self.degree.name())
        }
    }
}

/// Saptak band relative to madhya: +1 = tar, -1 = mandra.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Register(pub i32);

impl Register {
    pub const MANDRA: Register = Register(-1);
    pub const MADHYA: Register = Register(0);
    pub const TAR: Register = Register(1);

    pub fn label(self) -> String {
        match self.0 {
            0 => "madhya".to_string(),
            n if n > 0 => format!("{}tar", "ati-".repeat(n as usize - 1)),
            n => format!("{}mandra", "ati-".repeat(-n as usize - 1)),
        }
    }

    /// Notation marks: one `'` per saptak above madhya, one `,` per below.
    pub fn marks(self) -> String {
        if self.0 >= 0 {
            "'".repeat(self.0 as usize)
        } else {
            ",".repeat(-self.0 as usize)
        }
    }
}

/// Chosen sa of the madhya saptak.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Tonic {
    sa: Hz,
}

impl Tonic {
    pub fn new(sa: Hz) -> Tonic {
        Tonic { sa }
    }

    pub fn sa_frequency(self) -> Hz {
        self.sa
    }

    /// Accepts a frequency literal ("261.63") or a pitch name ("C4",
    /// "F#3", "B_flat2"); names are resolved on the A440 keyboard.
    pub fn parse(text: &str) -> Result<Tonic, TonicError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(TonicError::Empty);
        }
        if text.starts_with(|c: char| c.is_ascii_uppercase()) {
            return Tonic::from_pitch_name(text);
        }
        let value: f64 = text
            .parse()
            .map_err(|_| TonicError::BadFrequency(text.to_string()))?;
        let hz = Hz::new(value).map_err(|_| TonicError::BadFrequency(text.to_string()))?;
        Ok(Tonic::new(hz))
    }

    /// Scientific pitch notation, sharps preferred; `_flat` accepted as an
    /// input alias (B_flat2 names the same key as A#2).
    pub fn from_pitch_name(name: &str) -> Result<Tonic, TonicError> {
        let err = || TonicError::BadPitchName(name.to_string());
        let mut rest = name;
        let letter = rest.chars().next().ok_or_else(err)?;
        let mut semitone: i64 = match letter {
            'C' => 0,
            'D' => 2,
            'E' => 4,
            'F' => 5,
            'G' => 7,
            'A' => 9,
            'B' => 11,
            _ => return Err(err()),
        };
        rest = &rest[1..];
        if let Some(r) = rest.strip_prefix('#') {
            semitone += 1;
            rest = r;
        } else if let Some(r) = rest.strip_prefix("_flat") {
            semitone -= 1;
            rest = r;
        }
        if rest.is_empty() || !rest.bytes().all(|b| b == b'-' || b.is_ascii_digit()) {
            return Err(err());
        }
        let octave: i64 = rest.parse().map_err(|_| err())?;
        Ok(Tonic::new(key_frequency(octave * 12 + semitone)))
    }
}

impl Default for Tonic {
    /// Middle C as printed in the shruti table.
    fn default() -> Tonic {
        Tonic { sa: Hz::from_raw(261.6256) }
    }
}

/// ETS frequency of a keyboard key (C0 = key 0, A4 = key 57).
pub fn key_frequency(key: i64) -> Hz {
    Hz::from_raw(A4_HZ * (((key - A4_KEY) as f64) / 12.0).exp2())
}

/// Nearest keyboard key, if the frequency lies within one cent of one.
pub fn key_index(hz: Hz) -> Option<i64> {
    let keys = 12.0 * (hz.get() / A4_HZ).log2() + A4_KEY as f64;
    let nearest = keys.round();
    // one cent is 0.01 key
    if (keys - nearest).abs() <= 0.01 {
        Some(nearest as i64)
    } else {
        None
    }
}

pub fn key_name(key: i64) -> String {
    const NAMES: [&str; 12] = [
        "C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B",
    ];
    format!("{}{}", NAMES[key.rem_euclid(12) as usize], key.div_euclid(12))
}

/// Realized pitch of a swara. The register factor is an exact power of
/// two, so the octave law holds bit for bit.
pub fn swara_frequency(tonic: Tonic, swara: Swara, register: Register) -> Hz {
    let octave = 2f64.powi(register.0);
    let step = (f64::from(swara.semitone_index()) / 12.0).exp2();
    Hz::from_raw(tonic.sa_frequency().get() * octave * step)
}

/// Western name of a realized swara; the tonic must sit on the keyboard.
pub fn western_name(tonic: Tonic, swara: Swara, register: Register) -> Result<String, SwaraError> {
    let base = key_index(tonic.sa_frequency()).ok_or(SwaraError::NotOnKeyboard {
        hz: tonic.sa_frequency().get(),
    })?;
    Ok(key_name(
        base + 12 * i64::from(register.0) + i64::from(swara.semitone_index()),
    ))
}
