//! Exact interval arithmetic and the frequency boundary.
//!
//! Intervals stay in integer arithmetic for as long as possible; doubles
//! enter only where a concrete frequency or cent measure is produced.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Cents per octave; an ETS semitone is 100 cents.
pub const OCTAVE_CENTS: f64 = 1200.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PitchError {
    #[error("ratio needs a positive numerator and denominator")]
    ZeroRatio,
    #[error("ratio arithmetic overflowed")]
    Overflow,
    #[error("frequency must be positive and finite, got {0}")]
    BadFrequency(f64),
}

/// Interval as an exact rational, always held in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    pub const ONE: Ratio = Ratio { num: 1, den: 1 };
    pub const OCTAVE: Ratio = Ratio { num: 2, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Ratio, PitchError> {
        if num == 0 || den == 0 {
            return Err(PitchError::ZeroRatio);
        }
        let g = gcd(num, den);
        Ok(Ratio {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Interval composition (the rational product), exact.
    pub fn compose(self, other: Ratio) -> Result<Ratio, PitchError> {
        // Cross-reduce first: lowest-terms inputs then only overflow when
        // the reduced product itself would not fit.
        let ga = gcd(self.num, other.den);
        let gb = gcd(other.num, self.den);
        let num = (self.num / ga)
            .checked_mul(other.num / gb)
            .ok_or(PitchError::Overflow)?;
        let den = (self.den / gb)
            .checked_mul(other.den / ga)
            .ok_or(PitchError::Overflow)?;
        Ok(Ratio { num, den })
    }

    /// Exact rational sum, used for beat counts.
    pub fn checked_add(self, other: Ratio) -> Result<Ratio, PitchError> {
        let g = gcd(self.den, other.den);
        let den = (self.den / g)
            .checked_mul(other.den)
            .ok_or(PitchError::Overflow)?;
        let a = self
            .num
            .checked_mul(den / self.den)
            .ok_or(PitchError::Overflow)?;
        let b = other
            .num
            .checked_mul(den / other.den)
            .ok_or(PitchError::Overflow)?;
        let num = a.checked_add(b).ok_or(PitchError::Overflow)?;
        Ratio::new(num, den)
    }

    pub fn to_cents(self) -> Cents {
        Cents(OCTAVE_CENTS * self.value().log2())
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Ratio) -> Ordering {
        // u128 cross products cannot overflow for u64 fields
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Ratio) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Logarithmic interval size, 1200 per octave.
#[derive(Clone, Copy, PartialEq, PartialOrd, Debug, Default)]
pub struct Cents(pub f64);

/// Frequency in cycles per second; positive and finite by construction.
#[derive(Clone, Copy, PartialEq, PartialOrd, Debug)]
pub struct Hz(f64);

impl Hz {
    pub fn new(value: f64) -> Result<Hz, PitchError> {
        if value.is_finite() && value > 0.0 {
            Ok(Hz(value))
        } else {
            Err(PitchError::BadFrequency(value))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// For values positive by construction.
    pub(crate) fn from_raw(value: f64) -> Hz {
        debug_assert!(value.is_finite() && value > 0.0);
        Hz(value)
    }
}

impl fmt::Display for Hz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn just_frequency(base: Hz, r: Ratio) -> Hz {
    Hz::from_raw(base.get() * r.num as f64 / r.den as f64)
}

pub fn ets_frequency(reference: Hz, steps: i32) -> Hz {
    Hz::from_raw(reference.get() * (f64::from(steps) / 12.0).exp2())
}

/// How far an interval sits from its equal-tempered step.
pub fn deviation_cents(r: Ratio, steps: i32) -> Cents {
    Cents(r.to_cents().0 - 100.0 * f64::from(steps))
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
