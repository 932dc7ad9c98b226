//! The Euler function of A = F_q[T], primorials and Mertens-type products.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::decimal::{self, Decimal};
use crate::error::{Error, Result};
use crate::factor::{factor, irreducible_count, irreducibles};
use crate::field::FqField;
use crate::poly::Poly;

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn ratio(a: &BigUint, b: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(a.clone()), BigInt::from(b.clone()))
}

/// `#(A/m)^*`, from `φ_A(m) = |m| ∏_{p | m} (1 - 1/|p|)`.
pub fn euler_phi_a(m: &Poly) -> Result<BigUint> {
    if m.is_zero() {
        return Err(Error::ZeroInput("euler_phi_a"));
    }
    let q = big(m.field().q() as u64);
    Ok(factor(m)?.factors.iter().fold(BigUint::one(), |acc, (p, e)| {
        let norm = q.pow(p.degree().unwrap() as u32);
        acc * (&norm - 1u32) * norm.pow(e - 1)
    }))
}

/// `|m| = q^{deg m}`.
pub fn norm(m: &Poly) -> BigUint {
    big(m.field().q() as u64).pow(m.degree().unwrap_or(0) as u32)
}

/// Data of the product `m_n` of all monic irreducibles of degree at most
/// `n`. The polynomial itself is not stored; see [`primorial_poly`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimorialRecord {
    pub q: u32,
    pub n: u32,
    /// Number of monic irreducibles of each degree `1..=n`.
    pub prime_counts: Vec<u128>,
    pub deg_m: u64,
    pub phi: BigUint,
    /// `φ_A(m_n) / |m_n|`.
    pub mertens: BigRational,
}

impl PrimorialRecord {
    /// `|m_n| = q^{deg m_n}`.
    pub fn norm(&self) -> BigUint {
        big(self.q as u64).pow(self.deg_m as u32)
    }
}

fn prime_counts(q: u32, n: u32) -> Vec<u128> {
    (1..=n).map(|d| irreducible_count(q as u64, d)).collect()
}

fn primorial_degree(q: u32, n: u32, budget: u64) -> Result<(Vec<u128>, u64)> {
    let counts = prime_counts(q, n);
    let deg: u128 = counts.iter().enumerate().map(|(i, c)| (i as u128 + 1) * c).sum();
    match u64::try_from(deg) {
        Ok(d) if d <= budget => Ok((counts, d)),
        _ => Err(Error::BudgetExceeded { degree: deg.min(i64::MAX as u128) as i64, required: deg.to_string(), budget }),
    }
}

/// The primorial record, with `φ_A(m_n) = ∏_d (q^d - 1)^{N_d}` taken from
/// the known factorization. `deg m_n` must not exceed `budget`.
pub fn primorial(q: u32, n: u32, budget: u64) -> Result<PrimorialRecord> {
    let (counts, deg_m) = primorial_degree(q, n, budget)?;
    let qb = big(q as u64);
    let phi = counts
        .iter()
        .enumerate()
        .fold(BigUint::one(), |acc, (i, &c)| acc * (qb.pow(i as u32 + 1) - 1u32).pow(c as u32));
    let mertens = ratio(&phi, &qb.pow(deg_m as u32));
    Ok(PrimorialRecord { q, n, prime_counts: counts, deg_m, phi, mertens })
}

/// `m_n` as a polynomial.
pub fn primorial_poly(field: &FqField, n: u32, budget: u64) -> Result<Poly> {
    primorial_degree(field.q(), n, budget)?;
    Ok((1..=n as usize).flat_map(|d| irreducibles(field, d)).fold(Poly::one(field), |acc, p| acc.mul_ref(&p)))
}

/// `∏_{deg p ≤ n} (1 - q^{-deg p})` over monic irreducibles, exactly.
pub fn mertens_product(q: u32, n: u32, budget: u64) -> Result<BigRational> {
    primorial_degree(q, n, budget)?;
    let qb = big(q as u64);
    Ok(prime_counts(q, n).iter().enumerate().fold(BigRational::one(), |acc, (i, &c)| {
        let norm = qb.pow(i as u32 + 1);
        acc * ratio(&(&norm - 1u32), &norm).pow(c as i32)
    }))
}

/// `φ_A(m) ln ln |m| / |m|` for the primorial `m`.
pub fn liminf_statistic(record: &PrimorialRecord, digits: u32) -> Result<Decimal> {
    decimal::scaled_log_log(&record.mertens, record.deg_m, record.q as u64, digits)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthPoint {
    pub degree: usize,
    /// First monic polynomial of this degree (canonical order) with the
    /// smallest `φ_A`, which maximizes the ratio among that degree.
    pub witness: Poly,
    pub phi: BigUint,
    pub ratio: Decimal,
    /// `φ_A(witness) < 16`, so `ln ln 16` was used.
    pub clamped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiGrowthReport {
    pub per_degree: Vec<GrowthPoint>,
    /// Index into `per_degree` of the overall maximum (first on ties).
    pub argmax: usize,
}

impl PhiGrowthReport {
    pub fn best(&self) -> &GrowthPoint {
        &self.per_degree[self.argmax]
    }
}

const CLAMP: u64 = 16;

/// `|m| / (φ_A(m) ln ln max(φ_A(m), 16))` maximized over monic `m` with
/// `1 ≤ deg m ≤ deg_bound`.
pub fn phigrowth_report(field: &FqField, deg_bound: usize, digits: u32, budget: u64) -> Result<PhiGrowthReport> {
    if deg_bound == 0 {
        return Err(Error::Unsupported("degree bound must be at least 1".into()));
    }
    let total = big(field.q() as u64).pow(deg_bound as u32 + 1);
    if total > big(budget) {
        return Err(Error::BudgetExceeded { degree: deg_bound as i64, required: total.to_string(), budget });
    }
    let per_degree = (1..=deg_bound)
        .into_par_iter()
        .map(|d| {
            let mut best: Option<(BigUint, Poly)> = None;
            for m in Poly::monic_of_degree(field, d) {
                let phi = euler_phi_a(&m)?;
                if best.as_ref().is_none_or(|(b, _)| phi < *b) {
                    best = Some((phi, m));
                }
            }
            let (phi, witness) = best.unwrap();
            let clamped = phi < big(CLAMP);
            let inner = if clamped { big(CLAMP) } else { phi.clone() };
            let one = BigUint::one();
            let ratio = decimal::ratio_over_log_log(
                &ratio(&norm(&witness), &one),
                &ratio(&phi, &one),
                &ratio(&inner, &one),
                digits,
            )?;
            Ok(GrowthPoint { degree: d, witness, phi, ratio, clamped })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut argmax = 0;
    for (i, p) in per_degree.iter().enumerate() {
        if p.ratio > per_degree[argmax].ratio {
            argmax = i;
        }
    }
    Ok(PhiGrowthReport { per_degree, argmax })
}
