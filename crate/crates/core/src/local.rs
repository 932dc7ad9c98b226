//! Laurent series over F_q with explicit precision, and local orbit analysis
//! of Drinfeld modules at a degree-one place.
//!
//! A global module at the place `T - c` is studied in the variable
//! `S = T - c`; then `φ_S = φ_T - c` has linear coefficient `S`, and series
//! are written in that variable (printed as `T`).

use std::fmt;

use num_bigint::BigUint;

use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::field::{FqElem, FqField};
use crate::place::Place;
use crate::poly::Poly;
use crate::ratfn::RatFn;
use crate::text::{parse_ratfn, split_top_level};

/// `Σ coeffs[i] T^{val+i} + O(T^prec)`; `prec = None` means exact.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    field: FqField,
    val: i64,
    coeffs: Vec<FqElem>,
    prec: Option<i64>,
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries({self})")
    }
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl LaurentSeries {
    fn build(field: &FqField, val: i64, mut coeffs: Vec<FqElem>, prec: Option<i64>) -> Self {
        if let Some(n) = prec {
            let keep = (n - val).clamp(0, coeffs.len() as i64) as usize;
            coeffs.truncate(keep);
        }
        let lead = coeffs.iter().position(|c| !c.is_zero());
        let (val, coeffs) = match lead {
            None => (prec.unwrap_or(0), Vec::new()),
            Some(k) => {
                let mut c = coeffs.split_off(k);
                while c.last().is_some_and(|x| x.is_zero()) {
                    c.pop();
                }
                (val + k as i64, c)
            }
        };
        LaurentSeries { field: field.clone(), val, coeffs, prec }
    }

    pub fn new(field: &FqField, val: i64, coeffs: Vec<FqElem>, prec: Option<i64>) -> Self {
        Self::build(field, val, coeffs, prec)
    }

    pub fn zero(field: &FqField) -> Self {
        Self::build(field, 0, Vec::new(), None)
    }

    /// `O(T^n)`.
    pub fn big_o(field: &FqField, n: i64) -> Self {
        Self::build(field, n, Vec::new(), Some(n))
    }

    pub fn one(field: &FqField) -> Self {
        Self::monomial(field, FqElem::ONE, 0)
    }

    pub fn monomial(field: &FqField, c: FqElem, k: i64) -> Self {
        Self::build(field, k, vec![c], None)
    }

    pub fn from_poly(p: &Poly) -> Self {
        Self::build(p.field(), 0, p.coeffs().to_vec(), None)
    }

    /// Expansion of `x` at the place `T - c`, in powers of `T - c`. Exact
    /// when the expansion terminates, otherwise known modulo `(T-c)^prec`.
    pub fn from_ratfn(x: &RatFn, c: FqElem, prec: i64) -> Result<Self> {
        let num = Self::from_poly(&x.num().shift(c));
        let den = Self::from_poly(&x.den().shift(c));
        let x = num.mul(&den.inverse(prec)?);
        Ok(if x.is_exact() { x } else { x.truncate(prec) })
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn precision(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// No known nonzero coefficient (exact zero or `O(T^n)`).
    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec.is_none()
    }

    /// The valuation, if some coefficient is known to be nonzero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    /// Lower bound for the valuation: the valuation, or the precision for a
    /// series indistinguishable from 0 (`None` for exact zero).
    fn val_bound(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            self.prec
        } else {
            Some(self.val)
        }
    }

    pub fn coeff(&self, k: i64) -> FqElem {
        let i = k - self.val;
        if i < 0 {
            return FqElem::ZERO;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(FqElem::ZERO)
    }

    /// Forgets everything from `T^n` on.
    pub fn truncate(&self, n: i64) -> Self {
        Self::build(&self.field, self.val, self.coeffs.clone(), min_prec(self.prec, Some(n)))
    }

    pub fn add(&self, o: &LaurentSeries) -> Self {
        let f = &self.field;
        let prec = min_prec(self.prec, o.prec);
        if self.coeffs.is_empty() {
            return Self::build(f, o.val, o.coeffs.clone(), prec);
        }
        if o.coeffs.is_empty() {
            return Self::build(f, self.val, self.coeffs.clone(), prec);
        }
        let lo = self.val.min(o.val);
        let hi = (self.val + self.coeffs.len() as i64).max(o.val + o.coeffs.len() as i64);
        let coeffs = (lo..hi).map(|k| f.add(self.coeff(k), o.coeff(k))).collect();
        Self::build(f, lo, coeffs, prec)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self::build(f, self.val, self.coeffs.iter().map(|&c| f.neg(c)).collect(), self.prec)
    }

    pub fn sub(&self, o: &LaurentSeries) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: FqElem) -> Self {
        let f = &self.field;
        if c.is_zero() {
            return Self::build(f, 0, Vec::new(), self.prec.map(|_| self.val_bound().unwrap()));
        }
        Self::build(f, self.val, self.coeffs.iter().map(|&a| f.mul(a, c)).collect(), self.prec)
    }

    /// Precision of a product is `min(v(a) + N_b, v(b) + N_a)`.
    pub fn mul(&self, o: &LaurentSeries) -> Self {
        let f = &self.field;
        if self.is_exact_zero() || o.is_exact_zero() {
            return Self::zero(f);
        }
        let va = self.val_bound().unwrap();
        let vb = o.val_bound().unwrap();
        let prec = min_prec(self.prec.map(|n| n + vb), o.prec.map(|n| n + va));
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::build(f, va + vb, Vec::new(), prec);
        }
        let mut out = vec![FqElem::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::build(f, self.val + o.val, out, prec)
    }

    /// `1/self`. Exact inputs whose inverse does not terminate are expanded
    /// up to `T^prec`; inexact inputs keep whatever precision they support.
    pub fn inverse(&self, prec: i64) -> Result<Self> {
        let f = &self.field;
        let Some(v) = self.valuation() else {
            return Err(Error::Precision(format!("cannot invert {self}")));
        };
        if self.is_exact() && self.coeffs.len() == 1 {
            let c = f.inv(self.coeffs[0])?;
            return Ok(Self::monomial(f, c, -v));
        }
        let natural = self.prec.map(|n| n - 2 * v);
        let target = min_prec(natural, Some(prec)).unwrap();
        let len = (target + v).max(0) as usize;
        let u0 = f.inv(self.coeffs[0])?;
        let mut inv: Vec<FqElem> = Vec::with_capacity(len);
        for k in 0..len {
            if k == 0 {
                inv.push(u0);
                continue;
            }
            let mut s = FqElem::ZERO;
            for j in 1..=k.min(self.coeffs.len() - 1) {
                s = f.add(s, f.mul(self.coeffs[j], inv[k - j]));
            }
            inv.push(f.neg(f.mul(s, u0)));
        }
        Ok(Self::build(f, -v, inv, Some(target)))
    }

    /// `self^{q^k}`: coefficients are fixed by Frobenius, exponents and
    /// precision scale by `q^k`.
    pub fn frobenius(&self, k: u32) -> Self {
        let qk = (self.field.q() as i64).pow(k);
        let mut coeffs =
            vec![FqElem::ZERO; if self.coeffs.is_empty() { 0 } else { (self.coeffs.len() - 1) * qk as usize + 1 }];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * qk as usize] = c;
        }
        Self::build(&self.field, self.val * qk, coeffs, self.prec.map(|n| n * qk))
    }

    pub fn parse(field: &FqField, s: &str) -> Result<Self> {
        let err = |m: &str| Error::Parse(format!("{m} in series {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev.is_some() && prev != Some('^') && prev != Some('(') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
            prev = Some(ch);
        }
        terms.push(cur);
        let mut out = Self::zero(field);
        for term in terms {
            let (neg, body) = match term.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, term.strip_prefix('+').unwrap_or(&term)),
            };
            if body.is_empty() {
                return Err(err("empty term"));
            }
            if let Some(inner) = body.strip_prefix("O(").and_then(|b| b.strip_suffix(')')) {
                let n = exponent_of(inner).ok_or_else(|| err("bad O-term"))?;
                out = out.add(&Self::big_o(field, n));
                continue;
            }
            let (coef, k) = match body.find('T') {
                None => (body, 0),
                Some(pos) => {
                    let coef = body[..pos].trim_end_matches('*');
                    let k = exponent_of(&body[pos..]).ok_or_else(|| err("bad power of T"))?;
                    (if coef.is_empty() { "1" } else { coef }, k)
                }
            };
            let c = parse_ratfn(field, coef)?.as_constant().ok_or_else(|| err("coefficient is not a constant"))?;
            let c = if neg { field.neg(c) } else { c };
            out = out.add(&Self::monomial(field, c, k));
        }
        Ok(out)
    }
}

/// `T`, `T^k`, `T^-k`, `T^(-k)` or `1` to an exponent.
fn exponent_of(s: &str) -> Option<i64> {
    if s == "1" {
        return Some(0);
    }
    let rest = s.strip_prefix('T')?;
    if rest.is_empty() {
        return Some(1);
    }
    let e = rest.strip_prefix('^')?;
    let e = e.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(e);
    e.parse().ok()
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.val + i as i64;
            let cs = self.field.format_elem(c);
            let mono = match k {
                0 => String::new(),
                1 => "T".to_string(),
                _ => format!("T^{k}"),
            };
            parts.push(match (k, c == FqElem::ONE) {
                (0, _) => cs,
                (_, true) => mono,
                _ => format!("{cs}*{mono}"),
            });
        }
        if let Some(n) = self.prec {
            parts.push(match n {
                0 => "O(1)".to_string(),
                1 => "O(T)".to_string(),
                _ => format!("O(T^{n})"),
            });
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// A Drinfeld module over F_q((T)): `φ_T = T + a_1 τ + ... + a_r τ^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalModule {
    field: FqField,
    coeffs: Vec<LaurentSeries>,
    /// `c` when the module comes from a global one at `T - c`.
    center: FqElem,
}

impl LocalModule {
    pub fn new(field: &FqField, coeffs: Vec<LaurentSeries>) -> Result<Self> {
        let t = LaurentSeries::monomial(field, FqElem::ONE, 1);
        if coeffs.first() != Some(&t) {
            return Err(Error::InvalidModule("linear coefficient must be exactly T".into()));
        }
        if coeffs.len() < 2 || coeffs.last().unwrap().is_zero_to_precision() {
            return Err(Error::InvalidModule("leading coefficient must be known and nonzero".into()));
        }
        Ok(LocalModule { field: field.clone(), coeffs, center: FqElem::ZERO })
    }

    /// Parses `"T, 1 + T + O(T^5), T^-1"`.
    pub fn parse(field: &FqField, s: &str) -> Result<Self> {
        let coeffs = split_top_level(s).into_iter().map(|p| LaurentSeries::parse(field, p)).collect::<Result<_>>()?;
        Self::new(field, coeffs)
    }

    /// The completion of `φ` at the degree-one place `T - c`.
    pub fn from_global(phi: &DrinfeldModule, place: &Place, prec: i64) -> Result<Self> {
        let field = phi.field();
        let c = match place {
            Place::Finite(g) if g.degree() == Some(1) => field.neg(g.coeff(0)),
            Place::Finite(_) => return Err(Error::Unsupported("local analysis needs a degree-one place".into())),
            Place::Infinity => return Err(Error::Unsupported("the place at infinity is not supported".into())),
        };
        let mut coeffs = vec![LaurentSeries::monomial(field, FqElem::ONE, 1)];
        for i in 1..=phi.rank() {
            coeffs.push(LaurentSeries::from_ratfn(&phi.coeff(i), c, prec)?);
        }
        let mut m = Self::new(field, coeffs)?;
        m.center = c;
        Ok(m)
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[LaurentSeries] {
        &self.coeffs
    }

    /// `c` for a module taken at `T - c`; 0 otherwise.
    pub fn center(&self) -> FqElem {
        self.center
    }

    pub fn eval(&self, x: &LaurentSeries) -> LaurentSeries {
        let mut acc = LaurentSeries::zero(&self.field);
        let mut power = x.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power.frobenius(1);
            }
            acc = acc.add(&a.mul(&power));
        }
        acc
    }

    /// `φ_a(x)` for `a ∈ F_q[T]` in the global variable, from the iterates
    /// `x, φ_S(x), ...` (needs `deg a + 1` of them).
    fn eval_global(&self, a: &Poly, iterates: &[LaurentSeries]) -> LaurentSeries {
        let b = a.shift(self.center);
        b.coeffs().iter().zip(iterates).fold(LaurentSeries::zero(&self.field), |acc, (&c, y)| acc.add(&y.scale(c)))
    }

    /// Valuations of the coefficients, using the precision as a lower bound
    /// for coefficients indistinguishable from 0 (`None` for exact zeros).
    fn valuation_bounds(&self) -> Vec<Option<i64>> {
        self.coeffs.iter().map(LaurentSeries::val_bound).collect()
    }

    /// Integral coefficients and unit leading coefficient.
    pub fn has_good_reduction(&self) -> Result<bool> {
        let r = self.rank();
        let mut integral = true;
        for (i, a) in self.coeffs.iter().enumerate() {
            match (a.valuation(), a.precision()) {
                (Some(v), _) => integral &= v >= 0,
                (None, None) => {}
                (None, Some(n)) if n >= 0 => {}
                (None, Some(n)) => {
                    return Err(Error::Precision(format!("coefficient a_{i} = O(T^{n}) is undetermined")));
                }
            }
        }
        Ok(integral && self.coeffs[r].valuation() == Some(0))
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    num_integer::Integer::div_ceil(&a, &b)
}

/// The valuation floor: orbits of points below it escape to valuation
/// `-∞`, so local torsion lies at or above it.
pub fn local_escape_floor(phi: &LocalModule) -> i64 {
    let q = phi.field.q() as i128;
    let r = phi.rank();
    let vals = phi.valuation_bounds();
    let vr = vals[r].unwrap() as i128;
    let qr = q.pow(r as u32);
    let mut best = ceil_div(-vr, qr - 1);
    for (i, v) in vals.iter().enumerate().take(r) {
        if let Some(vi) = v {
            best = best.min(ceil_div(*vi as i128 - vr, qr - q.pow(i as u32)));
        }
    }
    best as i64
}

/// For good reduction, any `x` with `v(x) ≥ 2` has `v(φ_T(x)) = v(x) + 1`,
/// so its orbit never returns; the ceiling is 2.
pub fn contraction_ceiling(phi: &LocalModule) -> Result<i64> {
    if !phi.has_good_reduction()? {
        return Err(Error::NotGoodReduction);
    }
    Ok(2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NotTorsionReason {
    /// Some iterate fell below the escape floor.
    Escape,
    /// Some nonzero iterate reached valuation at least 2 (good reduction).
    Contraction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalVerdict {
    NotTorsion(NotTorsionReason),
    /// `φ_a(x) = 0` to the available precision, `a` monic in the global `T`.
    TorsionWitness(Poly),
    UndecidedAtPrecision,
}

/// Classifies `x` by following its orbit and, for exact `x`, searching monic
/// annihilators of degree at most `a_deg_bound`.
pub fn is_torsion_local(phi: &LocalModule, x: &LaurentSeries, a_deg_bound: usize) -> Result<LocalVerdict> {
    let field = &phi.field;
    if x.is_exact_zero() {
        return Ok(LocalVerdict::TorsionWitness(Poly::one(field)));
    }
    let floor = local_escape_floor(phi);
    let good = phi.has_good_reduction()?;
    if let Some(n) = x.precision() {
        let need = floor.max(2) + 1;
        if n < need {
            return Err(Error::Precision(format!("input known to O(T^{n}), need at least O(T^{need})")));
        }
    }
    let steps = (a_deg_bound.max(1) * phi.rank()) + 1;
    let mut iterates = vec![x.clone()];
    for k in 0..=steps {
        let y = &iterates[k];
        if let Some(v) = y.valuation() {
            if v < floor {
                return Ok(LocalVerdict::NotTorsion(NotTorsionReason::Escape));
            }
            if good && v >= 2 {
                return Ok(LocalVerdict::NotTorsion(NotTorsionReason::Contraction));
            }
        } else if y.is_exact_zero() {
            break;
        }
        let next = phi.eval(y);
        iterates.push(next);
    }
    if !x.is_exact() {
        return Ok(LocalVerdict::UndecidedAtPrecision);
    }
    while iterates.len() <= a_deg_bound {
        let next = phi.eval(iterates.last().unwrap());
        iterates.push(next);
    }
    for d in 0..=a_deg_bound {
        for a in Poly::monic_of_degree(field, d) {
            let y = phi.eval_global(&a, &iterates);
            if y.is_zero_to_precision() {
                return Ok(LocalVerdict::TorsionWitness(a));
            }
        }
    }
    Ok(LocalVerdict::UndecidedAtPrecision)
}

/// `q^{2d}`, the bound on torsion over a local field with residue degree
/// `d` for a module with good reduction.
pub fn local_torsion_bound(phi: &LocalModule, d: u32) -> Result<BigUint> {
    if !phi.has_good_reduction()? {
        return Err(Error::NotGoodReduction);
    }
    Ok(BigUint::from(phi.field.q()).pow(2 * d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(q: u32) -> FqField {
        FqField::new(q).unwrap()
    }

    fn s(f: &FqField, x: &str) -> LaurentSeries {
        LaurentSeries::parse(f, x).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let f = k(2);
        assert_eq!(s(&f, "T").mul(&s(&f, "T^-1")), LaurentSeries::one(&f));
        assert_eq!(s(&f, "1 + T").inverse(4).unwrap(), s(&f, "1 + T + T^2 + T^3 + O(T^4)"));
        assert_eq!(s(&f, "1 + T").frobenius(1), s(&f, "1 + T^2"));
        assert_eq!(s(&f, "1 + T + O(T^3)").frobenius(1), s(&f, "1 + T^2 + O(T^6)"));
        assert!(LaurentSeries::big_o(&f, 3).inverse(5).is_err());
    }

    #[test]
    fn precision_tracking() {
        let f = k(3);
        let a = s(&f, "T^-1 + 1 + O(T^2)");
        let b = s(&f, "T^2 + O(T^4)");
        let p = a.mul(&b);
        // min(-1 + 4, 2 + 2) = 3
        assert_eq!(p.precision(), Some(3));
        assert_eq!(p, s(&f, "T + T^2 + O(T^3)"));
        assert_eq!(a.add(&b).precision(), Some(2));
        assert_eq!(s(&f, "1 + O(T^5)").sub(&s(&f, "1")), LaurentSeries::big_o(&f, 5));
        assert_eq!(s(&f, "T^2 + O(T^5)").inverse(100).unwrap().precision(), Some(1));
        let inv = s(&f, "T^-2 + T + O(T^3)").inverse(100).unwrap();
        assert_eq!(inv.valuation(), Some(2));
        assert_eq!(inv.mul(&s(&f, "T^-2 + T + O(T^3)")), s(&f, "1 + O(T^5)"));
    }

    #[test]
    fn from_ratfn_expansions() {
        let f = k(2);
        let x = parse_ratfn(&f, "1/(T+1)").unwrap();
        assert_eq!(LaurentSeries::from_ratfn(&x, FqElem::ZERO, 4).unwrap(), s(&f, "1 + T + T^2 + T^3 + O(T^4)"));
        // at T - 1 = T + 1 the same function is S^-1
        assert_eq!(LaurentSeries::from_ratfn(&x, FqElem::ONE, 4).unwrap(), s(&f, "T^-1"));
        let y = parse_ratfn(&f, "T^2").unwrap();
        assert_eq!(LaurentSeries::from_ratfn(&y, FqElem::ONE, 4).unwrap(), s(&f, "1 + T^2"));
    }

    #[test]
    fn text_round_trip() {
        let f = k(3);
        for x in ["T^-2 + 1 + T^3 + O(T^5)", "2*T + O(T^2)", "0", "O(T^3)", "O(1)", "T^-1 + 2", "O(T^-2)"] {
            let a = s(&f, x);
            assert_eq!(a.to_string(), x);
            assert_eq!(s(&f, &a.to_string()), a);
        }
        assert_eq!(s(&f, "1 - T"), s(&f, "1 + 2*T"));
        assert_eq!(s(&f, "T^(-2)"), s(&f, "T^-2"));
        let f4 = k(4);
        assert_eq!(s(&f4, "g^2*T + g").to_string(), "g + g^2*T");
        assert!(LaurentSeries::parse(&f, "T^x").is_err());
        assert!(LaurentSeries::parse(&f, "").is_err());
        assert!(LaurentSeries::parse(&f, "T*T").is_err());
    }

    #[test]
    fn floors() {
        let f = k(2);
        let carlitz = LocalModule::parse(&f, "T, 1").unwrap();
        assert_eq!(local_escape_floor(&carlitz), 0);
        let m = LocalModule::parse(&f, "T, T^-1").unwrap();
        assert_eq!(local_escape_floor(&m), 1);
        let f3 = k(3);
        let good = LocalModule::parse(&f3, "T, 1 + T, 2").unwrap();
        assert_eq!(local_escape_floor(&good), 0);
    }

    #[test]
    fn contraction() {
        let f = k(2);
        let c = LocalModule::parse(&f, "T, 1").unwrap();
        assert_eq!(contraction_ceiling(&c).unwrap(), 2);
        assert_eq!(c.eval(&s(&f, "T^2")).valuation(), Some(3));
        assert_eq!(c.eval(&s(&f, "T^3")).valuation(), Some(4));
        let f3 = k(3);
        let m = LocalModule::parse(&f3, "T, 0, 1").unwrap();
        assert_eq!(m.eval(&s(&f3, "T^2")).valuation(), Some(3));
        let bad = LocalModule::parse(&f, "T, T").unwrap();
        assert!(matches!(contraction_ceiling(&bad), Err(Error::NotGoodReduction)));
    }

    #[test]
    fn local_classification() {
        let f = k(2);
        let c = LocalModule::parse(&f, "T, 1").unwrap();
        assert_eq!(is_torsion_local(&c, &s(&f, "T"), 3).unwrap(), LocalVerdict::TorsionWitness(Poly::t(&f)));
        assert_eq!(
            is_torsion_local(&c, &s(&f, "T^2 + O(T^5)"), 3).unwrap(),
            LocalVerdict::NotTorsion(NotTorsionReason::Contraction)
        );
        assert_eq!(
            is_torsion_local(&c, &LaurentSeries::zero(&f), 3).unwrap(),
            LocalVerdict::TorsionWitness(Poly::one(&f))
        );
        assert_eq!(
            is_torsion_local(&c, &s(&f, "T^-1"), 3).unwrap(),
            LocalVerdict::NotTorsion(NotTorsionReason::Escape)
        );
        assert_eq!(is_torsion_local(&c, &s(&f, "1 + O(T^4)"), 3).unwrap(), LocalVerdict::UndecidedAtPrecision);
        assert!(matches!(is_torsion_local(&c, &s(&f, "1 + O(T^2)"), 3), Err(Error::Precision(_))));
        assert_eq!(
            is_torsion_local(&c, &s(&f, "1"), 3).unwrap(),
            LocalVerdict::TorsionWitness(Poly::from_ints(&f, &[0, 1, 1]))
        );
    }

    #[test]
    fn carlitz_local_torsion_is_small() {
        // exact points with valuation 0..1 and witness degree ≤ 3
        let f = k(2);
        let c = LocalModule::parse(&f, "T, 1").unwrap();
        let mut found = Vec::new();
        for p in Poly::up_to_degree(&f, 3) {
            let x = LaurentSeries::from_poly(&p);
            if let LocalVerdict::TorsionWitness(_) = is_torsion_local(&c, &x, 3).unwrap() {
                found.push(x);
            }
        }
        assert!(found.len() <= local_torsion_bound(&c, 1).unwrap().to_string().parse::<usize>().unwrap());
        assert_eq!(found.len(), 4);
    }

    #[test]
    fn from_global_modules() {
        let f = k(3);
        let phi = DrinfeldModule::parse(&f, "T, -(T+1)").unwrap();
        let place = Place::finite(Poly::from_ints(&f, &[2, 1])).unwrap();
        let m = LocalModule::from_global(&phi, &place, 10).unwrap();
        assert!(m.has_good_reduction().unwrap());
        // φ_{T+1}(1) = 0 globally; the witness is reported in the global T
        let v = is_torsion_local(&m, &LaurentSeries::one(&f), 2).unwrap();
        assert_eq!(v, LocalVerdict::TorsionWitness(Poly::from_ints(&f, &[1, 1])));
        assert!(LocalModule::from_global(&phi, &Place::Infinity, 10).is_err());
        let quad = Place::finite(Poly::from_ints(&f, &[1, 0, 1])).unwrap();
        assert!(LocalModule::from_global(&phi, &quad, 10).is_err());
    }

    #[test]
    fn bounds() {
        let f2 = k(2);
        assert_eq!(local_torsion_bound(&LocalModule::parse(&f2, "T, 1").unwrap(), 1).unwrap(), BigUint::from(4u32));
        let f3 = k(3);
        assert_eq!(local_torsion_bound(&LocalModule::parse(&f3, "T, 1").unwrap(), 2).unwrap(), BigUint::from(81u32));
        assert!(local_torsion_bound(&LocalModule::parse(&f3, "T, T").unwrap(), 1).is_err());
    }

    #[test]
    fn module_validation() {
        let f = k(2);
        assert!(LocalModule::parse(&f, "T + 1, 1").is_err());
        assert!(LocalModule::parse(&f, "T").is_err());
        assert!(LocalModule::parse(&f, "T, O(T^3)").is_err());
    }
}
