//! Independent oracles for the integration suites. Each recomputes its
//! quantity by a route the library does not use.
#![allow(dead_code)]

use std::path::Path;

use num_bigint::BigUint;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

/// 1200 * log2(num/den) by fixed-point squaring: normalize into [1, 2),
/// then extract log bits one squaring at a time. 192 fractional bits and
/// 50 extracted bits leave the result exact far below f64 resolution.
pub fn cents_oracle(num: u64, den: u64) -> f64 {
    const FRAC_BITS: u64 = 192;
    const LOG_BITS: usize = 50;
    assert!(num > 0 && den > 0);
    let mut octaves = 0i64;
    let mut n = BigUint::from(num);
    let mut d = BigUint::from(den);
    while n >= &d << 1u8 {
        d <<= 1u8;
        octaves += 1;
    }
    while n < d {
        n <<= 1u8;
        octaves -= 1;
    }
    // u = floor(x * 2^FRAC_BITS) for x in [1, 2)
    let mut u = (n << FRAC_BITS) / d;
    let two = BigUint::from(2u8) << FRAC_BITS;
    let mut frac = 0.0f64;
    let mut weight = 0.5f64;
    for _ in 0..LOG_BITS {
        u = (&u * &u) >> FRAC_BITS;
        if u >= two {
            u >>= 1u8;
            frac += weight;
        }
        weight *= 0.5;
    }
    1200.0 * (octaves as f64 + frac)
}

/// Murchhana degrees recomputed from first principles: rotate the T/S
/// step pattern and walk cumulative sums (the library instead subtracts
/// the anchor from the shuddha set mod 12).
pub fn rotation_oracle(shift: usize) -> Vec<u8> {
    let steps = [2u8, 2, 1, 2, 2, 2, 1];
    let mut semitones = vec![0u8];
    for i in 0..6 {
        semitones.push(semitones[i] + steps[(shift + i) % 7]);
    }
    semitones
}

/// Dominant non-DC spectral peak as a bin-center frequency, from an
/// n_fft-point transform of the (zero-padded or truncated) samples.
pub fn spectral_peak_hz(samples: &[f64], rate: u32, n_fft: usize) -> f64 {
    let mut buf: Vec<Complex<f64>> = samples
        .iter()
        .take(n_fft)
        .map(|&x| Complex::new(x, 0.0))
        .collect();
    buf.resize(n_fft, Complex::new(0.0, 0.0));
    FftPlanner::new().plan_fft_forward(n_fft).process(&mut buf);
    let mut best = 1usize;
    for k in 2..n_fft / 2 {
        if buf[k].norm_sqr() > buf[best].norm_sqr() {
            best = k;
        }
    }
    best as f64 * f64::from(rate) / n_fft as f64
}

/// Independent WAV decode. Returns (sample_rate, channels, bits, samples).
pub fn read_wav(path: &Path) -> (u32, u16, u16, Vec<i16>) {
    let mut reader = hound::WavReader::open(path).expect("wav opens");
    let spec = reader.spec();
    let samples: Vec<i16> = reader
        .samples::<i16>()
        .map(|s| s.expect("sample decodes"))
        .collect();
    (spec.sample_rate, spec.channels, spec.bits_per_sample, samples)
}
