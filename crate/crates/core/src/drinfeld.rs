//! Drinfeld F_q[T]-modules over K = F_q(T).

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::factor::factor;
use crate::field::{FqElem, FqField};
use crate::ore::{subspace_poly, OrePoly};
use crate::place::{valuation, Place};
use crate::poly::Poly;
use crate::ratfn::RatFn;
use crate::text::{parse_ratfn_list, split_top_level};

/// A Drinfeld module, determined by `φ_T = T + a_1 τ + ... + a_r τ^r` with
/// `a_r ≠ 0` and `r ≥ 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct DrinfeldModule {
    field: FqField,
    phi_t: OrePoly,
}

impl fmt::Debug for DrinfeldModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DrinfeldModule(q={}, phi_T = {})", self.field.q(), self.phi_t)
    }
}

/// Comma separated coefficients `a_0, a_1, ..., a_r`.
impl fmt::Display for DrinfeldModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..=self.rank()).map(|i| self.coeff(i).to_string()).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl DrinfeldModule {
    pub fn new(field: &FqField, coeffs: Vec<RatFn>) -> Result<Self> {
        Self::from_ore(OrePoly::new(field, coeffs))
    }

    pub fn from_ore(phi_t: OrePoly) -> Result<Self> {
        let field = phi_t.field().clone();
        if phi_t.coeff(0) != RatFn::t(&field) {
            return Err(Error::InvalidModule(format!("linear coefficient must be T, got {}", phi_t.coeff(0))));
        }
        if phi_t.tau_degree().unwrap_or(0) < 1 {
            return Err(Error::InvalidModule("rank must be at least 1".into()));
        }
        Ok(DrinfeldModule { field, phi_t })
    }

    /// Parses `"T, -(T+1)"`.
    pub fn parse(field: &FqField, s: &str) -> Result<Self> {
        if split_top_level(s).iter().any(|p| p.is_empty()) {
            return Err(Error::Parse(format!("empty coefficient in {s:?}")));
        }
        Self::new(field, parse_ratfn_list(field, s)?)
    }

    /// `φ_T = T + τ`.
    pub fn carlitz(field: &FqField) -> Self {
        Self::new(field, vec![RatFn::t(field), RatFn::one(field)]).unwrap()
    }

    /// Rank one module in the normal form `φ_T = T x - f x^q`.
    pub fn rank1(field: &FqField, f: &RatFn) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroInput("rank1"));
        }
        Self::new(field, vec![RatFn::t(field), f.neg_ref()])
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn rank(&self) -> usize {
        self.phi_t.tau_degree().unwrap()
    }

    pub fn phi_t(&self) -> &OrePoly {
        &self.phi_t
    }

    pub fn coeff(&self, i: usize) -> RatFn {
        self.phi_t.coeff(i)
    }

    pub fn leading(&self) -> RatFn {
        self.coeff(self.rank())
    }

    /// `f` with `φ_T = T x - f x^q`, for rank one.
    pub fn rank1_parameter(&self) -> Option<RatFn> {
        (self.rank() == 1).then(|| self.coeff(1).neg_ref())
    }

    /// `φ_a = Σ c_i φ_T^i` by Horner's rule.
    pub fn phi_a(&self, a: &Poly) -> OrePoly {
        let mut acc = OrePoly::zero(&self.field);
        for &c in a.coeffs().iter().rev() {
            acc = acc.mul_ref(&self.phi_t).add_ref(&OrePoly::scalar(RatFn::constant(&self.field, c)));
        }
        acc
    }

    /// Iterates `x, φ_T(x), φ_T^2(x), ...` up to `φ_T^n(x)`.
    pub fn iterates(&self, x: &RatFn, n: usize) -> Vec<RatFn> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(x.clone());
        for i in 0..n {
            let next = self.phi_t.eval(&out[i]);
            out.push(next);
        }
        out
    }

    /// `φ_a(x)` from precomputed iterates of `x` (needs `deg a + 1` of them).
    pub fn eval_from_iterates(&self, a: &Poly, iterates: &[RatFn]) -> RatFn {
        a.coeffs()
            .iter()
            .zip(iterates)
            .filter(|(c, _)| !c.is_zero())
            .fold(RatFn::zero(&self.field), |acc, (&c, y)| acc.add_ref(&y.scale(c)))
    }

    /// The conjugate `u^{-1} φ u`, with coefficients `u^{q^i - 1} a_i`.
    /// `y` is torsion for the twist exactly when `u y` is torsion for `self`.
    pub fn twist(&self, u: &RatFn) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::ZeroInput("twist"));
        }
        let coeffs = (0..=self.rank())
            .map(|i| {
                let a = self.coeff(i);
                if i == 0 || a.is_zero() {
                    return a;
                }
                // u^{q^i - 1} = u^{q^i} / u
                u.frobenius(i as u32).div_ref(u).unwrap().mul_ref(&a)
            })
            .collect();
        Self::new(&self.field, coeffs)
    }

    /// The twist attached to the class of `f` in K*/K*^n, `n = #Aut(φ)`:
    /// coefficients `f^{(q^i - 1)/n} a_i`.
    pub fn twist_by_class(&self, f: &RatFn) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroInput("twist_by_class"));
        }
        let n = self.aut_count() as u128;
        let q = self.q() as u128;
        let coeffs = (0..=self.rank())
            .map(|i| {
                let a = self.coeff(i);
                if i == 0 || a.is_zero() {
                    return Ok(a);
                }
                let e = (q.pow(i as u32) - 1) / n;
                let e = i64::try_from(e).map_err(|_| Error::Unsupported("twist exponent overflow".into()))?;
                Ok(f.pow(e)?.mul_ref(&a))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.field, coeffs)
    }

    /// `n = gcd{q^i - 1 : i ≥ 1, a_i ≠ 0}`, the number of automorphisms.
    pub fn aut_count(&self) -> u64 {
        let q = self.q() as u128;
        (1..=self.rank()).filter(|&i| !self.coeff(i).is_zero()).fold(0u128, |g, i| g.gcd(&(q.pow(i as u32) - 1))) as u64
    }

    /// Integral coefficients at `g` with a unit leading coefficient.
    pub fn has_good_reduction(&self, place: &Place) -> bool {
        let Place::Finite(_) = place else { return false };
        let integral = (0..=self.rank()).all(|i| {
            let a = self.coeff(i);
            a.is_zero() || valuation(&a, place).finite().unwrap() >= 0
        });
        integral && valuation(&self.leading(), place).finite() == Some(0)
    }
}

/// Moves `f` within its class in K*/K*^{q-1} to a polynomial `f_norm` with
/// every irreducible exponent below `q - 1`. Returns `(f_norm, u)` with
/// `f_norm = f u^{q-1}`.
pub fn normalize_rank1(field: &FqField, f: &RatFn) -> Result<(Poly, RatFn)> {
    if f.is_zero() {
        return Err(Error::ZeroInput("normalize_rank1"));
    }
    let m = field.q() as i64 - 1;
    let mut exps: BTreeMap<Poly, i64> = BTreeMap::new();
    let num = factor(f.num())?;
    for (g, e) in num.factors {
        *exps.entry(g).or_default() += e as i64;
    }
    for (g, e) in factor(f.den())?.factors {
        *exps.entry(g).or_default() -= e as i64;
    }
    let mut f_norm = Poly::constant(field, num.unit);
    let mut u = RatFn::one(field);
    for (g, e) in exps {
        let r = e.rem_euclid(m);
        f_norm = f_norm.mul_ref(&g.pow(r as u64));
        let k = (r - e) / m;
        u = u.mul_ref(&RatFn::from(g).pow(k)?);
    }
    Ok((f_norm, u))
}

/// The module whose `φ_T` has kernel exactly the span of `basis`:
/// `φ_T = (T/c) e_V` with `c` the linear coefficient of the subspace
/// polynomial.
pub fn drinfeld_from_kernel(field: &FqField, basis: &[RatFn]) -> Result<DrinfeldModule> {
    if basis.is_empty() {
        return Err(Error::InvalidModule("empty kernel gives rank 0".into()));
    }
    let e = subspace_poly(field, basis)?;
    let c = e.coeff(0);
    let scale = RatFn::t(field).div_ref(&c)?;
    DrinfeldModule::from_ore(e.left_scale(&scale))
}

/// `φ_T = T x - (α + T) x^q + α x^{q^2}`, which always has `1` as a
/// T-torsion point.
pub fn rank2_family(field: &FqField, alpha: &RatFn) -> Result<DrinfeldModule> {
    if alpha.is_zero() {
        return Err(Error::ZeroInput("rank2_family"));
    }
    let t = RatFn::t(field);
    DrinfeldModule::new(field, vec![t.clone(), alpha.add_ref(&t).neg_ref(), alpha.clone()])
}

/// Representatives of F_q^* / (F_q^*)^n in canonical order, each the first
/// element of its coset.
pub fn unit_class_representatives(field: &FqField, n: u64) -> Vec<FqElem> {
    let m = field.q() as u64 - 1;
    let step = n.gcd(&m);
    // (F_q^*)^n = <g^step>; g^k and g^l are equivalent iff k ≡ l mod step
    let mut seen = vec![false; step as usize];
    let mut out = Vec::new();
    for &c in field.units() {
        let k = field.log(c).unwrap() as u64 % step;
        if !seen[k as usize] {
            seen[k as usize] = true;
            out.push(c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_ratfn;

    fn k(q: u32) -> FqField {
        FqField::new(q).unwrap()
    }

    fn r(f: &FqField, s: &str) -> RatFn {
        parse_ratfn(f, s).unwrap()
    }

    #[test]
    fn phi_a_examples() {
        let f = k(2);
        let c = DrinfeldModule::carlitz(&f);
        let phi = c.phi_a(&Poly::from_ints(&f, &[1, 1]));
        assert_eq!(phi, OrePoly::new(&f, vec![r(&f, "T+1"), RatFn::one(&f)]));
        assert_eq!(phi.eval(&RatFn::one(&f)), RatFn::t(&f));
        assert_eq!(c.phi_a(&Poly::one(&f)), OrePoly::identity(&f));
        let tt = c.phi_a(&Poly::from_ints(&f, &[0, 1, 1]));
        assert!(tt.eval(&RatFn::t(&f)).is_zero());
        assert_eq!(tt.tau_degree(), Some(2));
    }

    #[test]
    fn construction_checks() {
        let f = k(3);
        assert!(DrinfeldModule::parse(&f, "T, -(T+1)").is_ok());
        assert!(matches!(DrinfeldModule::parse(&f, "T+1, 1"), Err(Error::InvalidModule(_))));
        assert!(matches!(DrinfeldModule::parse(&f, "T"), Err(Error::InvalidModule(_))));
        assert!(matches!(DrinfeldModule::parse(&f, "T, 0"), Err(Error::InvalidModule(_))));
        assert!(matches!(DrinfeldModule::parse(&f, "T,"), Err(Error::Parse(_))));
        assert_eq!(DrinfeldModule::parse(&f, "T, 2*T+2").unwrap().to_string(), "T, 2*T+2");
    }

    #[test]
    fn twist_examples() {
        let f = k(2);
        let c = DrinfeldModule::carlitz(&f);
        assert_eq!(c.twist(&RatFn::one(&f)).unwrap(), c);
        let psi = c.twist(&RatFn::t(&f)).unwrap();
        assert_eq!(psi, DrinfeldModule::parse(&f, "T, T").unwrap());
        assert!(c.twist(&RatFn::zero(&f)).is_err());
    }

    #[test]
    fn twist_is_conjugation() {
        // φ_a(u x) = u ψ_a(x)
        let f = k(3);
        let phi = DrinfeldModule::parse(&f, "T, T+1, 1/T").unwrap();
        let u = r(&f, "(T+2)/T^2");
        let psi = phi.twist(&u).unwrap();
        let a = Poly::from_ints(&f, &[1, 2, 1]);
        for s in ["1", "T", "1/(T+1)", "2*T^2+1"] {
            let x = r(&f, s);
            assert_eq!(phi.phi_a(&a).eval(&u.mul_ref(&x)), u.mul_ref(&psi.phi_a(&a).eval(&x)));
        }
    }

    #[test]
    fn twist_by_class_examples() {
        let f = k(3);
        let phi = DrinfeldModule::parse(&f, "T, -1").unwrap();
        assert_eq!(phi.aut_count(), 2);
        assert_eq!(phi.twist_by_class(&RatFn::one(&f)).unwrap(), phi);
        assert_eq!(phi.twist_by_class(&RatFn::t(&f)).unwrap(), DrinfeldModule::parse(&f, "T, -T").unwrap());
        let u = r(&f, "(T+1)/T");
        let un = u.pow(2).unwrap();
        assert_eq!(phi.twist_by_class(&un).unwrap(), phi.twist(&u).unwrap());
    }

    #[test]
    fn aut_counts() {
        for q in [2, 3, 4, 5] {
            let f = k(q);
            assert_eq!(DrinfeldModule::carlitz(&f).aut_count(), q as u64 - 1);
        }
        let f2 = k(2);
        assert_eq!(DrinfeldModule::parse(&f2, "T, 1, 1").unwrap().aut_count(), 1);
        let f3 = k(3);
        assert_eq!(DrinfeldModule::parse(&f3, "T, 0, 1").unwrap().aut_count(), 8);
    }

    #[test]
    fn normalization_examples() {
        let f2 = k(2);
        for s in ["T", "T^2+T", "1/(T+1)", "(T^3+T+1)/T^5"] {
            let (n, u) = normalize_rank1(&f2, &r(&f2, s)).unwrap();
            assert!(n.is_one());
            assert_eq!(RatFn::from(n), r(&f2, s).mul_ref(&u));
        }
        let f3 = k(3);
        let (n, u) = normalize_rank1(&f3, &r(&f3, "T^4")).unwrap();
        assert!(n.is_one());
        assert_eq!(u, r(&f3, "T^-2"));
        let (n, u) = normalize_rank1(&f3, &r(&f3, "(T+1)^3/T")).unwrap();
        assert_eq!(n, Poly::from_ints(&f3, &[0, 1, 1]));
        assert_eq!(u, r(&f3, "T/(T+1)"));
        let (n, _) = normalize_rank1(&f3, &r(&f3, "2*T+2")).unwrap();
        assert_eq!(n, Poly::from_ints(&f3, &[2, 2]));
        assert!(normalize_rank1(&f3, &RatFn::zero(&f3)).is_err());
    }

    #[test]
    fn good_reduction_examples() {
        let f = k(3);
        let t = Place::finite(Poly::t(&f)).unwrap();
        let t1 = Place::finite(Poly::from_ints(&f, &[1, 1])).unwrap();
        let c = DrinfeldModule::carlitz(&f);
        assert!(c.has_good_reduction(&t) && c.has_good_reduction(&t1));
        assert!(!DrinfeldModule::parse(&f, "T, -1/T").unwrap().has_good_reduction(&t));
        assert!(!DrinfeldModule::parse(&f, "T, -T").unwrap().has_good_reduction(&t));
        assert!(DrinfeldModule::parse(&f, "T, -T").unwrap().has_good_reduction(&t1));
        assert!(!c.has_good_reduction(&Place::Infinity));
    }

    #[test]
    fn from_kernel_examples() {
        let f = k(2);
        let phi = drinfeld_from_kernel(&f, &[RatFn::one(&f)]).unwrap();
        assert_eq!(phi, DrinfeldModule::parse(&f, "T, T").unwrap());
        assert!(drinfeld_from_kernel(&f, &[]).is_err());
        let phi2 = drinfeld_from_kernel(&f, &[RatFn::one(&f), RatFn::t(&f)]).unwrap();
        assert_eq!(phi2.rank(), 2);
        let d = crate::place::Divisor::from_pairs([(Place::Infinity, 1)]);
        assert_eq!(phi2.phi_t().kernel_in(&d).unwrap().len(), 4);
    }

    #[test]
    fn rank2_family_examples() {
        let f2 = k(2);
        let phi = rank2_family(&f2, &r(&f2, "T+1")).unwrap();
        assert!(phi.phi_t().eval(&RatFn::one(&f2)).is_zero());
        let f3 = k(3);
        let phi = rank2_family(&f3, &RatFn::one(&f3)).unwrap();
        assert!(phi.phi_t().eval(&RatFn::one(&f3)).is_zero());
        let phi = rank2_family(&f3, &r(&f3, "T^2")).unwrap();
        assert_eq!(phi.coeff(1), r(&f3, "-(T^2+T)"));
        assert_eq!(phi.coeff(2), r(&f3, "T^2"));
        assert!(rank2_family(&f3, &RatFn::zero(&f3)).is_err());
    }

    #[test]
    fn unit_classes() {
        let f3 = k(3);
        assert_eq!(unit_class_representatives(&f3, 2).len(), 2);
        assert_eq!(unit_class_representatives(&f3, 8).len(), 2);
        let f5 = k(5);
        assert_eq!(unit_class_representatives(&f5, 4).len(), 4);
        assert_eq!(unit_class_representatives(&f5, 1), vec![FqElem::ONE]);
        let f4 = k(4);
        assert_eq!(unit_class_representatives(&f4, 1).len(), 1);
    }
}
