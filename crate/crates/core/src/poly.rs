//! Elements of A = F_q[T].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FqElem, FqField};

/// A polynomial in T over F_q, coefficients in ascending degree with no
/// trailing zero. The zero polynomial has no coefficients and no degree.
#[derive(Clone)]
pub struct Poly {
    field: FqField,
    coeffs: Vec<FqElem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: degree first (zero smallest), then lexicographic on the
/// ascending coefficient sequence under the field's element order.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
                match self.field.cmp_elems(*a, *b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl Poly {
    pub fn new(field: &FqField, mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    /// From integer coefficients (ascending), reduced into the prime field.
    pub fn from_ints(field: &FqField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &FqField) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FqField) -> Self {
        Self::constant(field, FqElem::ONE)
    }

    pub fn constant(field: &FqField, c: FqElem) -> Self {
        Self::new(field, vec![c])
    }

    /// The indeterminate T.
    pub fn t(field: &FqField) -> Self {
        Self::monomial(field, FqElem::ONE, 1)
    }

    pub fn monomial(field: &FqField, c: FqElem, k: usize) -> Self {
        let mut v = vec![FqElem::ZERO; k + 1];
        v[k] = c;
        Self::new(field, v)
    }

    /// `T + c`.
    pub fn linear(field: &FqField, c: FqElem) -> Self {
        Self::new(field, vec![c, FqElem::ONE])
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or(FqElem::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a signed integer, with `-1` standing in for zero. Only for
    /// places where the caller has already excluded zero or wants that.
    pub fn degree_or_neg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FqElem::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FqElem::ONE
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn scale(&self, c: FqElem) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect())
    }

    pub fn add_ref(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub_ref(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg_ref(&self) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|&a| self.field.neg(a)).collect())
    }

    pub fn mul_ref(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![FqElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn pow(&self, mut k: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// `self^(q^k)`: coefficients are fixed by Frobenius, so this only
    /// spreads exponents.
    pub fn frobenius(&self, k: u32) -> Poly {
        if self.is_constant() || k == 0 {
            return self.clone();
        }
        let step = (self.field.q() as usize).pow(k);
        let mut out = vec![FqElem::ZERO; (self.coeffs.len() - 1) * step + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * step] = c;
        }
        Poly::new(&self.field, out)
    }

    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let d = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        if self.coeffs.len() <= d {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv = f.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FqElem::ZERO; self.coeffs.len() - d];
        for k in (0..quot.len()).rev() {
            let c = f.mul(rem[k + d], inv);
            if c.is_zero() {
                continue;
            }
            quot[k] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(rem[k + j], f.mul(c, b));
            }
        }
        rem.truncate(d);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Quotient when `divisor` divides `self`, otherwise `None`.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.divmod(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem(self).is_ok_and(|r| r.is_zero())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic lcm; zero if either argument is zero.
    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let g = self.gcd(other);
        self.exact_div(&g).expect("gcd divides").mul_ref(other).monic()
    }

    pub fn eval(&self, x: FqElem) -> FqElem {
        self.coeffs.iter().rev().fold(FqElem::ZERO, |acc, &c| self.field.add(self.field.mul(acc, x), c))
    }

    /// `self(T + c)`.
    pub fn shift(&self, c: FqElem) -> Poly {
        let lin = Poly::linear(&self.field, c);
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(&self.field), |acc, &a| acc.mul_ref(&lin).add_ref(&Poly::constant(&self.field, a)))
    }

    /// Multiplicity of `g` in `self` (`self` nonzero, `g` nonconstant).
    pub fn multiplicity(&self, g: &Poly) -> u32 {
        let mut n = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(g) {
            cur = q;
            n += 1;
        }
        n
    }

    /// Ben-Or irreducibility test: `gcd(T^{q^i} - T, f) = 1` for
    /// `1 ≤ i ≤ deg f / 2`.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let t = Poly::t(&self.field);
        let mut h = t.clone();
        for _ in 1..=d / 2 {
            h = h.frobenius(1).rem(self).expect("nonzero");
            if !h.sub_ref(&t).gcd(self).is_one() {
                return false;
            }
        }
        true
    }

    /// Monic polynomials of exact degree `d` in canonical order.
    pub fn monic_of_degree(field: &FqField, d: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = field.q() as u64;
        let count = q.pow(d as u32);
        (0..count).map(move |idx| {
            let mut coeffs = vec![FqElem::ZERO; d + 1];
            let mut k = idx;
            // a_0 most significant, so fill from the top index down.
            for i in (0..d).rev() {
                coeffs[i] = field.elements()[(k % q) as usize];
                k /= q;
            }
            coeffs[d] = FqElem::ONE;
            Poly::new(field, coeffs)
        })
    }

    /// All polynomials of exact degree `d` (any leading coefficient) in
    /// canonical order.
    pub fn of_degree(field: &FqField, d: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = field.q() as u64;
        let count = q.pow(d as u32) * (q - 1);
        (0..count).map(move |idx| {
            let mut coeffs = vec![FqElem::ZERO; d + 1];
            let mut k = idx;
            coeffs[d] = field.units()[(k % (q - 1)) as usize];
            k /= q - 1;
            for i in (0..d).rev() {
                coeffs[i] = field.elements()[(k % q) as usize];
                k /= q;
            }
            Poly::new(field, coeffs)
        })
    }

    /// Every polynomial of degree at most `d`, zero first, canonical order.
    pub fn up_to_degree(field: &FqField, d: i64) -> impl Iterator<Item = Poly> + '_ {
        std::iter::once(Poly::zero(field)).chain((0..=d.max(-1)).flat_map(move |k| Self::of_degree(field, k as usize)))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.add_ref(rhs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.sub_ref(rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_ref(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.neg_ref()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let cs = self.field.format_elem(c);
            match (i, c == FqElem::ONE) {
                (0, _) => write!(f, "{cs}")?,
                (_, true) => write!(f, "T")?,
                (_, false) => write!(f, "{cs}*T")?,
            }
            if i > 1 {
                write!(f, "^{i}")?;
            }
        }
        Ok(())
    }
}
