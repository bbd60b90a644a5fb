//! Certified evaluation of the support size `ceil(2 ln(1/delta) / delta^2)`.
//!
//! The logarithm is enclosed in a rational interval via the `atanh` series
//! with an explicit tail bound. Terms are added until the interval for the
//! whole expression contains no integer other than possibly its upper end,
//! which pins the ceiling exactly.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

const INITIAL_TERMS: usize = 8;
const MAX_TERMS: usize = 1 << 16;

fn check_delta(delta: &Rational) -> Result<()> {
    if !delta.is_positive() || *delta >= Rational::one() {
        return Err(Error::InvalidDelta(format_rational(delta)));
    }
    Ok(())
}

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

/// Encloses `atanh(z) = sum z^(2k+1) / (2k+1)` for `0 <= z < 1` using `terms`
/// terms; the tail is at most `z^(2K+1) / ((2K+1)(1 - z^2))`.
fn atanh_interval(z: &Rational, terms: usize) -> Interval {
    let z2 = z * z;
    let mut power = z.clone();
    let mut sum = Rational::zero();
    for k in 0..terms {
        sum += &power / Rational::from_integer(BigInt::from(2 * k + 1));
        power *= &z2;
    }
    let tail = &power
        / (Rational::from_integer(BigInt::from(2 * terms + 1)) * (Rational::one() - &z2));
    Interval {
        hi: &sum + tail,
        lo: sum,
    }
}

/// Encloses `ln(x)` for rational `x >= 1`.
pub fn ln_interval(x: &Rational, terms: usize) -> Interval {
    assert!(*x >= Rational::one(), "ln_interval needs x >= 1");
    // x = 2^m * r with 1 <= r < 2.
    let mut m = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = Rational::from_integer(BigInt::from(2));
    let pow2 = |e: i64| -> Rational {
        let p = Rational::from_integer(BigInt::one() << e.unsigned_abs());
        if e >= 0 {
            p
        } else {
            p.recip()
        }
    };
    let mut r = x * pow2(-m);
    while r >= two {
        r /= &two;
        m += 1;
    }
    while r < Rational::one() {
        r *= &two;
        m -= 1;
    }
    let z = (&r - Rational::one()) / (&r + Rational::one());
    let ln_r = atanh_interval(&z, terms);
    let ln2 = atanh_interval(&Rational::new(1.into(), 3.into()), terms);
    let scale = Rational::from_integer(BigInt::from(2 * m));
    let two = Rational::from_integer(BigInt::from(2));
    Interval {
        lo: &scale * &ln2.lo + &two * &ln_r.lo,
        hi: &scale * &ln2.hi + &two * &ln_r.hi,
    }
}

/// Encloses `2 ln(1/delta) / delta^2`.
pub fn kappa_interval(delta: &Rational, terms: usize) -> Result<Interval> {
    check_delta(delta)?;
    let inv = delta.recip();
    let ln = ln_interval(&inv, terms);
    let factor = Rational::from_integer(BigInt::from(2)) * &inv * &inv;
    Ok(Interval {
        lo: &factor * ln.lo,
        hi: &factor * ln.hi,
    })
}

/// `ceil(2 ln(1/delta) / delta^2)` for `0 < delta < 1`, exactly.
pub fn kappa(delta: &Rational) -> Result<u64> {
    check_delta(delta)?;
    let mut terms = INITIAL_TERMS;
    loop {
        let Interval { lo, hi } = kappa_interval(delta, terms)?;
        let candidate = if lo == hi {
            Some(lo.ceil().to_integer())
        } else {
            let floor = lo.floor().to_integer();
            let next = &floor + BigInt::one();
            let resolved = !lo.is_integer() && hi <= Rational::from_integer(next.clone());
            resolved.then_some(next)
        };
        if let Some(value) = candidate {
            return value.to_u64().ok_or_else(|| {
                Error::OutOfRange(format!("kappa({}) overflows u64", format_rational(delta)))
            });
        }
        if terms >= MAX_TERMS {
            return Err(Error::OutOfRange(format!(
                "could not resolve kappa({}) within {MAX_TERMS} series terms",
                format_rational(delta)
            )));
        }
        terms *= 2;
    }
}

/// Width of the enclosure, for diagnostics.
pub fn interval_width(interval: &Interval) -> Rational {
    &interval.hi - &interval.lo
}
