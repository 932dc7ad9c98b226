//! Places of F_q(T), valuations, divisors and genus-zero Riemann–Roch spaces.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::factor::factor;
use crate::field::FqField;
use crate::poly::Poly;
use crate::ratfn::RatFn;

/// A discrete valuation value; zero has valuation `+∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

/// A place of F_q(T): a monic irreducible polynomial, or the degree
/// valuation at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    /// Place at a monic irreducible `g`.
    pub fn finite(g: Poly) -> Result<Self> {
        if !g.is_monic() || !g.is_irreducible() {
            return Err(Error::InvalidPlace(g.to_string()));
        }
        Ok(Place::Finite(g))
    }

    pub fn degree(&self) -> u32 {
        match self {
            Place::Finite(g) => g.degree().unwrap() as u32,
            Place::Infinity => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite places first (by canonical polynomial order), then infinity.
impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => a.cmp(b),
            (Place::Finite(_), Place::Infinity) => Ordering::Less,
            (Place::Infinity, Place::Finite(_)) => Ordering::Greater,
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(g) => write!(f, "({g})"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

pub fn poly_valuation(p: &Poly, place: &Place) -> Valuation {
    if p.is_zero() {
        return Valuation::Infinite;
    }
    match place {
        Place::Finite(g) => Valuation::Finite(p.multiplicity(g) as i64),
        Place::Infinity => Valuation::Finite(-p.degree_or_neg()),
    }
}

/// `v(x)`: multiplicity difference at a finite place, `deg den - deg num`
/// at infinity.
pub fn valuation(x: &RatFn, place: &Place) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    match place {
        Place::Finite(g) => Valuation::Finite(x.num().multiplicity(g) as i64 - x.den().multiplicity(g) as i64),
        Place::Infinity => Valuation::Finite(x.den().degree_or_neg() - x.num().degree_or_neg()),
    }
}

/// Finite places where `x` has a zero or a pole, in canonical order.
pub fn finite_support(x: &RatFn) -> Vec<Place> {
    let mut out = Vec::new();
    for p in [x.num(), x.den()] {
        if p.is_constant() {
            continue;
        }
        for (g, _) in factor(p).expect("nonzero").factors {
            out.push(Place::Finite(g));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// An integer combination of places with finite support.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Divisor {
    coeffs: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I: IntoIterator<Item = (Place, i64)>>(pairs: I) -> Self {
        let mut d = Divisor::new();
        for (p, n) in pairs {
            d.add_at(p, n);
        }
        d
    }

    pub fn add_at(&mut self, place: Place, n: i64) {
        let e = self.coeffs.entry(place).or_insert(0);
        *e += n;
        if *e == 0 {
            self.coeffs.retain(|_, v| *v != 0);
        }
    }

    pub fn coeff(&self, place: &Place) -> i64 {
        self.coeffs.get(place).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.coeffs.iter().map(|(p, &n)| (p, n))
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `sum n_v deg(v)`.
    pub fn degree(&self) -> i64 {
        self.coeffs.iter().map(|(p, &n)| n * p.degree() as i64).sum()
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, n) in other.iter() {
            out.add_at(p.clone(), n);
        }
        out
    }

    /// Whether `x` lies in L(D): `v(x) ≥ -n_v` everywhere.
    pub fn contains(&self, x: &RatFn) -> bool {
        if x.is_zero() {
            return true;
        }
        let rr = RiemannRoch::new(x.field(), self);
        rr.coordinate(x).is_some()
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, &n)) in self.coeffs.iter().enumerate() {
            match (i, n < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match n.unsigned_abs() {
                1 => write!(f, "{p}")?,
                m => write!(f, "{m}*{p}")?,
            }
        }
        Ok(())
    }
}

/// Principal divisor of a nonzero rational function.
pub fn divisor_of(x: &RatFn) -> Result<Divisor> {
    if x.is_zero() {
        return Err(Error::ZeroInput("divisor_of"));
    }
    let mut d = Divisor::new();
    for p in finite_support(x) {
        let v = valuation(x, &p).finite().unwrap();
        d.add_at(p, v);
    }
    d.add_at(Place::Infinity, valuation(x, &Place::Infinity).finite().unwrap());
    Ok(d)
}

/// The Riemann–Roch space L(D) on the projective line.
///
/// Elements are `H k / G` where `G = prod g^{n_g}` over finite places with
/// `n_g > 0`, `H = prod g^{-n_g}` over those with `n_g < 0`, and `k` ranges
/// over polynomials of degree at most `deg D`.
#[derive(Clone, Debug)]
pub struct RiemannRoch {
    field: FqField,
    pole_part: Poly,
    zero_part: Poly,
    degree: i64,
}

impl RiemannRoch {
    pub fn new(field: &FqField, d: &Divisor) -> Self {
        let mut g = Poly::one(field);
        let mut h = Poly::one(field);
        for (p, n) in d.iter() {
            if let Place::Finite(gp) = p {
                if n > 0 {
                    g = g.mul_ref(&gp.pow(n as u64));
                } else {
                    h = h.mul_ref(&gp.pow(n.unsigned_abs()));
                }
            }
        }
        RiemannRoch { field: field.clone(), pole_part: g, zero_part: h, degree: d.degree() }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn dimension(&self) -> u64 {
        (self.degree + 1).max(0) as u64
    }

    /// Number of elements, `q^dim`.
    pub fn cardinality(&self) -> BigUint {
        BigUint::from(self.field.q()).pow(self.dimension() as u32)
    }

    pub fn basis(&self) -> Vec<RatFn> {
        (0..self.dimension() as usize)
            .map(|j| self.element(&Poly::monomial(&self.field, crate::field::FqElem::ONE, j)))
            .collect()
    }

    /// `H k / G`.
    pub fn element(&self, k: &Poly) -> RatFn {
        RatFn::new(self.zero_part.mul_ref(k), self.pole_part.clone()).expect("G is nonzero")
    }

    /// The polynomial `k = x G / H` when `x ∈ L(D)`.
    pub fn coordinate(&self, x: &RatFn) -> Option<Poly> {
        if x.is_zero() {
            return Some(Poly::zero(&self.field));
        }
        let num = x.num().mul_ref(&self.pole_part);
        let den = x.den().mul_ref(&self.zero_part);
        let k = num.exact_div(&den)?;
        (k.degree_or_neg() <= self.degree).then_some(k)
    }

    pub fn contains(&self, x: &RatFn) -> bool {
        self.coordinate(x).is_some()
    }

    /// All elements, in canonical order of their coordinate polynomial.
    pub fn elements(&self) -> impl Iterator<Item = RatFn> + '_ {
        Poly::up_to_degree(&self.field, self.degree).map(move |k| self.element(&k))
    }
}

/// A basis of L(D).
pub fn rr_space(field: &FqField, d: &Divisor) -> Vec<RatFn> {
    RiemannRoch::new(field, d).basis()
}

/// `(#L(D), #k_q * q^{deg D})`. Either the count is 1 or it is at most the
/// bound.
pub fn parallelotope_count_check(field: &FqField, d: &Divisor, q_place: &Place) -> (BigUint, BigUint) {
    let rr = RiemannRoch::new(field, d);
    let count = rr.cardinality();
    let q = BigUint::from(field.q());
    let exp = q_place.degree() as i64 + d.degree();
    let bound = if exp >= 0 { q.pow(exp as u32) } else { BigUint::zero() };
    debug_assert!(count.is_one() || count <= bound);
    (count, bound)
}
