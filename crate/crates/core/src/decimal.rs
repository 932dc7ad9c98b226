//! Fixed-point decimals for reporting transcendental statistics.
//!
//! Values are big integers scaled by `10^w`. Logarithms use
//! `ln x = k ln 2 + 2 atanh((y-1)/(y+1))` with `x = 2^k y`, `1 ≤ y < 2`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

const GUARD: u32 = 12;

/// A decimal number `scaled / 10^digits`, rounded half away from zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decimal {
    scaled: BigInt,
    digits: u32,
}

fn pow10(w: u32) -> BigInt {
    BigInt::from(10u32).pow(w)
}

/// `round(num / den)` with ties away from zero; `den > 0`.
fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.abs().div_rem(den);
    let q = if r * 2u32 >= *den { q + 1u32 } else { q };
    if num.sign() == Sign::Minus {
        -q
    } else {
        q
    }
}

impl Decimal {
    pub fn from_rational(x: &BigRational, digits: u32) -> Self {
        Decimal { scaled: round_div(&(x.numer() * pow10(digits)), x.denom()), digits }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// The exact rational value of the rounded decimal.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.scaled.clone(), pow10(self.digits))
    }

    pub fn is_positive(&self) -> bool {
        self.scaled.is_positive()
    }

    pub fn cmp_rational(&self, x: &BigRational) -> Ordering {
        self.to_rational().cmp(x)
    }

    fn from_fixed(f: &Fixed, digits: u32) -> Self {
        debug_assert!(digits <= f.w);
        Decimal { scaled: round_div(&f.v, &pow10(f.w - digits)), digits }
    }
}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Decimal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_rational().cmp(&other.to_rational())
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.scaled.is_negative() { "-" } else { "" };
        let (int, frac) = self.scaled.abs().div_rem(&pow10(self.digits));
        if self.digits == 0 {
            return write!(f, "{sign}{int}");
        }
        write!(f, "{sign}{int}.{:0>width$}", frac.to_string(), width = self.digits as usize)
    }
}

/// Working fixed-point value `v / 10^w`.
#[derive(Clone, Debug)]
struct Fixed {
    v: BigInt,
    w: u32,
}

impl Fixed {
    fn from_rational(x: &BigRational, w: u32) -> Self {
        Fixed { v: round_div(&(x.numer() * pow10(w)), x.denom()), w }
    }

    fn one(w: u32) -> Self {
        Fixed { v: pow10(w), w }
    }

    fn mul(&self, o: &Fixed) -> Fixed {
        Fixed { v: round_div(&(&self.v * &o.v), &pow10(self.w)), w: self.w }
    }

    fn mul_rational(&self, x: &BigRational) -> Fixed {
        Fixed { v: round_div(&(&self.v * x.numer()), x.denom()), w: self.w }
    }

    fn div(&self, o: &Fixed) -> Fixed {
        Fixed { v: round_div(&(&self.v * pow10(self.w)), &o.v), w: self.w }
    }

    /// `2 atanh(z)` for `|z| ≤ 1/3`.
    fn atanh2(z: &Fixed) -> Fixed {
        let w = z.w;
        let z2 = z.mul(z);
        let mut term = z.clone();
        let mut sum = BigInt::zero();
        let mut k = 0u32;
        while !term.v.is_zero() {
            sum += round_div(&term.v, &BigInt::from(2 * k + 1));
            term = term.mul(&z2);
            k += 1;
        }
        Fixed { v: sum * 2u32, w }
    }

    fn ln2(w: u32) -> Fixed {
        Self::atanh2(&Fixed::from_rational(&BigRational::new(1.into(), 3.into()), w))
    }

    /// Natural logarithm of a positive value.
    fn ln(&self) -> Fixed {
        let w = self.w;
        let one = Fixed::one(w);
        let two = &one.v * 2u32;
        let mut y = self.v.clone();
        let mut k: i64 = 0;
        while y >= two {
            y = round_div(&y, &BigInt::from(2u32));
            k += 1;
        }
        while y < one.v {
            y *= 2u32;
            k -= 1;
        }
        let num = Fixed { v: &y - &one.v, w };
        let den = Fixed { v: &y + &one.v, w };
        let mut out = Self::atanh2(&num.div(&den));
        if k != 0 {
            out.v += Self::ln2(w).v * k;
        }
        out
    }
}

/// `ln x` for rational `x > 0`, to `digits` decimals.
pub fn ln(x: &BigRational, digits: u32) -> Result<Decimal> {
    if !x.is_positive() {
        return Err(Error::Unsupported("logarithm of a nonpositive number".into()));
    }
    let w = digits + GUARD;
    Ok(Decimal::from_fixed(&Fixed::from_rational(x, w).ln(), digits))
}

/// `c · ln(n ln b)` for rationals `c`, integers `n ≥ 1`, `b ≥ 2`: the shape of
/// `φ(m) ln ln |m| / |m|` with `|m| = b^n`. Requires `b^n > e`.
pub fn scaled_log_log(c: &BigRational, n: u64, b: u64, digits: u32) -> Result<Decimal> {
    let w = digits + GUARD + 10;
    let ln_b = Fixed::from_rational(&BigRational::from_integer(b.into()), w).ln();
    let inner = Fixed { v: ln_b.v * n, w };
    if inner.v <= Fixed::one(w).v {
        return Err(Error::LogLogUndefined);
    }
    Ok(Decimal::from_fixed(&inner.ln().mul_rational(c), digits))
}

/// `a / (c · ln(ln x))` for big rationals `a, c` and `x > e`.
pub fn ratio_over_log_log(a: &BigRational, c: &BigRational, x: &BigRational, digits: u32) -> Result<Decimal> {
    let w = digits + GUARD + 10;
    let ln_x = Fixed::from_rational(x, w).ln();
    if ln_x.v <= Fixed::one(w).v {
        return Err(Error::LogLogUndefined);
    }
    let denom = ln_x.ln().mul_rational(c);
    let num = Fixed::from_rational(a, w);
    Ok(Decimal::from_fixed(&num.div(&denom), digits))
}
