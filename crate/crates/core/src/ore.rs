//! The twisted polynomial ring K{τ} of F_q-linear polynomials.
//!
//! `a_0 + a_1 τ + ... + a_r τ^r` acts on `x` as `Σ a_i x^{q^i}`; the product
//! is composition, governed by `τ a = a^q τ`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::FqField;
use crate::linalg;
use crate::place::{Divisor, RiemannRoch};
use crate::ratfn::RatFn;

#[derive(Clone, PartialEq, Eq)]
pub struct OrePoly {
    field: FqField,
    coeffs: Vec<RatFn>,
}

impl fmt::Debug for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrePoly({self})")
    }
}

impl OrePoly {
    pub fn new(field: &FqField, mut coeffs: Vec<RatFn>) -> Self {
        while coeffs.last().is_some_and(RatFn::is_zero) {
            coeffs.pop();
        }
        OrePoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FqField) -> Self {
        OrePoly { field: field.clone(), coeffs: Vec::new() }
    }

    /// The identity map `x`.
    pub fn identity(field: &FqField) -> Self {
        Self::scalar(RatFn::one(field))
    }

    /// `τ^k`.
    pub fn tau_pow(field: &FqField, k: usize) -> Self {
        let mut c = vec![RatFn::zero(field); k + 1];
        c[k] = RatFn::one(field);
        Self::new(field, c)
    }

    /// Multiplication by a constant `c`.
    pub fn scalar(c: RatFn) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c])
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn coeffs(&self) -> &[RatFn] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFn {
        self.coeffs.get(i).cloned().unwrap_or_else(|| RatFn::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// τ-degree; `None` for zero.
    pub fn tau_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a polynomial in `x`, `q^{τ-degree}`.
    pub fn x_degree(&self) -> Option<u128> {
        self.tau_degree().map(|r| (self.field.q() as u128).pow(r as u32))
    }

    pub fn add_ref(&self, o: &OrePoly) -> OrePoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        OrePoly::new(&self.field, (0..n).map(|i| self.coeff(i).add_ref(&o.coeff(i))).collect())
    }

    pub fn sub_ref(&self, o: &OrePoly) -> OrePoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        OrePoly::new(&self.field, (0..n).map(|i| self.coeff(i).sub_ref(&o.coeff(i))).collect())
    }

    pub fn neg_ref(&self) -> OrePoly {
        OrePoly::new(&self.field, self.coeffs.iter().map(RatFn::neg_ref).collect())
    }

    /// `c · self` (multiply the output by `c`).
    pub fn left_scale(&self, c: &RatFn) -> OrePoly {
        OrePoly::new(&self.field, self.coeffs.iter().map(|a| c.mul_ref(a)).collect())
    }

    /// Composition `self ∘ o`: `(a τ^i)(b τ^j) = a b^{q^i} τ^{i+j}`.
    pub fn mul_ref(&self, o: &OrePoly) -> OrePoly {
        if self.is_zero() || o.is_zero() {
            return OrePoly::zero(&self.field);
        }
        let mut out = vec![RatFn::zero(&self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add_ref(&a.mul_ref(&b.frobenius(i as u32)));
            }
        }
        OrePoly::new(&self.field, out)
    }

    /// `Σ a_i x^{q^i}`.
    pub fn eval(&self, x: &RatFn) -> RatFn {
        if x.is_zero() {
            return x.clone();
        }
        let mut acc = RatFn::zero(&self.field);
        let mut power = x.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power.frobenius(1);
            }
            if !a.is_zero() {
                acc = acc.add_ref(&a.mul_ref(&power));
            }
        }
        acc
    }

    /// Elements of L(D) killed by `self`, in the enumeration order of L(D).
    pub fn kernel_in(&self, d: &Divisor) -> Result<Vec<RatFn>> {
        if self.is_zero() {
            return Err(Error::ZeroInput("ore_kernel"));
        }
        let rr = RiemannRoch::new(&self.field, d);
        Ok(rr.elements().filter(|x| self.eval(x).is_zero()).collect())
    }
}

/// The monic additive polynomial `∏_{v ∈ V} (x - v)` for `V` the F_q-span of
/// `basis`, built as `(τ - e(b)^{q-1}) e` one basis vector at a time.
pub fn subspace_poly(field: &FqField, basis: &[RatFn]) -> Result<OrePoly> {
    let q = field.q() as i64;
    let mut e = OrePoly::identity(field);
    for b in basis {
        let eb = e.eval(b);
        if eb.is_zero() {
            return Err(Error::DependentBasis);
        }
        let c = eb.pow(q - 1)?;
        let step = OrePoly::new(field, vec![c.neg_ref(), RatFn::one(field)]);
        e = step.mul_ref(&e);
    }
    debug_assert!(linalg::is_independent(field, basis));
    Ok(e)
}

fn needs_parens(s: &str) -> bool {
    s.contains('+') || s.contains('-') || s.contains('/')
}

impl fmt::Display for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let tau = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            let c = a.to_string();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (_, true) => write!(f, "{tau}")?,
                _ if needs_parens(&c) => write!(f, "({c})*{tau}")?,
                _ => write!(f, "{c}*{tau}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::place::Place;
    use crate::text::{parse_additive, parse_ratfn};

    fn ore(f: &FqField, s: &str) -> OrePoly {
        OrePoly::new(f, parse_additive(f, s).unwrap())
    }

    #[test]
    fn twist_rule() {
        let f = FqField::new(3).unwrap();
        let a = parse_ratfn(&f, "T+1").unwrap();
        let prod = OrePoly::tau_pow(&f, 1).mul_ref(&OrePoly::scalar(a.clone()));
        assert_eq!(prod, OrePoly::new(&f, vec![RatFn::zero(&f), a.pow(3).unwrap()]));
        let id = OrePoly::identity(&f);
        assert_eq!(id.mul_ref(&id), id);
    }

    #[test]
    fn carlitz_square() {
        let f = FqField::new(2).unwrap();
        let c = ore(&f, "T + t");
        let sq = c.mul_ref(&c);
        // T^2 + (T^2 + T) τ + τ^2
        assert_eq!(sq, ore(&f, "T^2 + (T^2+T)*t + t^2"));
        for s in ["1", "T", "T^3+1", "1/(T+1)", "(T^2+T+1)/T^3"] {
            let x = parse_ratfn(&f, s).unwrap();
            assert_eq!(sq.eval(&x), c.eval(&c.eval(&x)));
        }
    }

    #[test]
    fn eval_examples() {
        let f = FqField::new(2).unwrap();
        let c = ore(&f, "T + t");
        assert_eq!(c.eval(&RatFn::one(&f)), parse_ratfn(&f, "T+1").unwrap());
        assert!(c.eval(&RatFn::zero(&f)).is_zero());
        let f3 = FqField::new(3).unwrap();
        let phi = ore(&f3, "T - T*t");
        assert!(phi.eval(&RatFn::one(&f3)).is_zero());
    }

    #[test]
    fn subspace_polys() {
        let f = FqField::new(2).unwrap();
        let e = subspace_poly(&f, &[RatFn::one(&f)]).unwrap();
        assert_eq!(e, ore(&f, "T^0 + t"));
        assert_eq!(subspace_poly(&f, &[]).unwrap(), OrePoly::identity(&f));
        let basis = [RatFn::one(&f), RatFn::t(&f)];
        let e = subspace_poly(&f, &basis).unwrap();
        assert_eq!(e.tau_degree(), Some(2));
        assert_eq!(e.x_degree(), Some(4));
        assert!(e.coeff(2).is_one());
        for v in linalg::span(&f, &basis) {
            assert!(e.eval(&v).is_zero());
        }
        assert!(matches!(subspace_poly(&f, &[RatFn::one(&f), RatFn::one(&f)]), Err(Error::DependentBasis)));
    }

    #[test]
    fn subspace_poly_is_the_root_product() {
        // expand prod_{v in V}(x - v) as an ordinary polynomial in x and
        // compare with the additive coefficients
        let f = FqField::new(2).unwrap();
        let basis = [RatFn::one(&f), RatFn::t(&f)];
        let mut prod: Vec<RatFn> = vec![RatFn::one(&f)];
        for v in linalg::span(&f, &basis) {
            let mut next = vec![RatFn::zero(&f); prod.len() + 1];
            for (i, c) in prod.iter().enumerate() {
                next[i + 1] = next[i + 1].add_ref(c);
                next[i] = next[i].sub_ref(&c.mul_ref(&v));
            }
            prod = next;
        }
        let e = subspace_poly(&f, &basis).unwrap();
        for (k, c) in prod.iter().enumerate() {
            let expected = match k {
                1 => e.coeff(0),
                2 => e.coeff(1),
                4 => e.coeff(2),
                _ => RatFn::zero(&f),
            };
            assert_eq!(c, &expected, "x^{k}");
        }
    }

    #[test]
    fn kernels() {
        let f = FqField::new(2).unwrap();
        let d = Divisor::from_pairs([(Place::Infinity, 1)]);
        let e = subspace_poly(&f, &[RatFn::one(&f)]).unwrap();
        assert_eq!(e.kernel_in(&d).unwrap(), vec![RatFn::zero(&f), RatFn::one(&f)]);
        assert_eq!(OrePoly::identity(&f).kernel_in(&d).unwrap(), vec![RatFn::zero(&f)]);
        // Carlitz φ_{T^2+T} = φ_T ∘ φ_{T+1}
        let c = ore(&f, "T + t");
        let c1 = ore(&f, "T + 1 + t");
        let k = c.mul_ref(&c1).kernel_in(&d).unwrap();
        assert_eq!(k.len(), 4);
        assert!(OrePoly::zero(&f).kernel_in(&d).is_err());
    }

    #[test]
    fn display_round_trip() {
        let f = FqField::new(3).unwrap();
        for s in ["T + 2*t", "T + (T+1)*t + t^2", "T + (2*T^2+1)/T*t^3", "1/(T+1) + t"] {
            let p = ore(&f, s);
            assert_eq!(ore(&f, &p.to_string()), p, "{s} -> {p}");
        }
    }
}
