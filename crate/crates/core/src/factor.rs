//! Factorization in F_q[T] and enumeration of monic irreducibles.

use crate::error::{Error, Result};
use crate::field::{FqElem, FqField};
use crate::poly::Poly;

/// `unit * prod(g_i ^ e_i)` with distinct monic irreducible `g_i` in
/// canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElem,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, field: &FqField) -> Poly {
        self.factors.iter().fold(Poly::constant(field, self.unit), |acc, (g, e)| acc.mul_ref(&g.pow(*e as u64)))
    }
}

/// Trial division in increasing degree. A monic candidate that divides the
/// cofactor at the moment it is tried is necessarily irreducible, because all
/// factors of smaller degree have already been removed.
pub fn factor(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroInput("factor"));
    }
    let field = f.field();
    let unit = f.leading();
    let mut rest = f.monic();
    let mut factors = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap() >= 2 * d {
        for g in Poly::monic_of_degree(field, d) {
            let mut e = 0;
            while let Some(qt) = rest.exact_div(&g) {
                rest = qt;
                e += 1;
            }
            if e > 0 {
                factors.push((g, e));
            }
            if rest.degree().unwrap() < 2 * d {
                break;
            }
        }
        d += 1;
    }
    if rest.degree().unwrap() > 0 {
        match factors.iter_mut().find(|(g, _)| *g == rest) {
            Some(entry) => entry.1 += 1,
            None => factors.push((rest, 1)),
        }
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

/// Monic irreducibles of degree `m` in canonical order.
pub fn irreducibles(field: &FqField, m: usize) -> Vec<Poly> {
    if m == 0 {
        return Vec::new();
    }
    Poly::monic_of_degree(field, m).filter(Poly::is_irreducible).collect()
}

pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducibles of degree `m` over F_q:
/// `(1/m) sum_{d | m} mu(d) q^{m/d}`. Exact, with 128-bit intermediates.
pub fn irreducible_count(q: u64, m: u32) -> u128 {
    assert!(m >= 1);
    let mut acc: i128 = 0;
    for d in 1..=m {
        if m.is_multiple_of(d) {
            acc += mobius(d as u64) as i128 * (q as i128).pow(m / d);
        }
    }
    (acc / m as i128) as u128
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: &FqField, c: &[i64]) -> Poly {
        Poly::from_ints(k, c)
    }

    /// Independent irreducibility check: no monic divisor of degree ≤ n/2.
    fn trial_irreducible(f: &Poly) -> bool {
        let n = f.degree().unwrap();
        n >= 1 && (1..=n / 2).all(|d| Poly::monic_of_degree(f.field(), d).all(|g| !g.divides(f)))
    }

    #[test]
    fn visible_factorization() {
        let k = FqField::new(2).unwrap();
        let fac = factor(&p(&k, &[0, 1, 1])).unwrap();
        assert_eq!(fac.unit, FqElem::ONE);
        assert_eq!(fac.factors, vec![(p(&k, &[0, 1]), 1), (p(&k, &[1, 1]), 1)]);
    }

    #[test]
    fn irreducible_cubic() {
        let k = FqField::new(2).unwrap();
        let f = p(&k, &[1, 1, 0, 1]);
        assert_eq!(factor(&f).unwrap().factors, vec![(f.clone(), 1)]);
        assert!(trial_irreducible(&f));
    }

    #[test]
    fn unit_is_split_off() {
        let k = FqField::new(3).unwrap();
        let fac = factor(&p(&k, &[2, 0, 2])).unwrap();
        assert_eq!(fac.unit, k.from_int(2));
        assert_eq!(fac.factors, vec![(p(&k, &[1, 0, 1]), 1)]);
        assert!(matches!(factor(&Poly::zero(&k)), Err(Error::ZeroInput(_))));
    }

    #[test]
    fn repeated_factors() {
        let k = FqField::new(3).unwrap();
        let t = Poly::t(&k);
        let g = p(&k, &[1, 0, 1]);
        let f = t.pow(3).mul_ref(&g.pow(2)).scale(k.from_int(2));
        let fac = factor(&f).unwrap();
        assert_eq!(fac.factors, vec![(t, 3), (g, 2)]);
        assert_eq!(fac.expand(&k), f);
    }

    #[test]
    fn recomposes_and_factors_are_irreducible() {
        for q in [2u32, 3, 4, 5] {
            let k = FqField::new(q).unwrap();
            let max = if q <= 3 { 6 } else { 4 };
            for d in 1..=max {
                for f in Poly::of_degree(&k, d).step_by(7) {
                    let fac = factor(&f).unwrap();
                    assert_eq!(fac.expand(&k), f);
                    for (g, _) in &fac.factors {
                        assert!(g.is_monic() && trial_irreducible(g), "{g} from {f}");
                    }
                }
            }
        }
    }

    #[test]
    fn irreducibles_small() {
        let k2 = FqField::new(2).unwrap();
        assert_eq!(irreducibles(&k2, 1), vec![Poly::t(&k2), p(&k2, &[1, 1])]);
        let cubics = irreducibles(&k2, 3);
        assert_eq!(cubics.len(), 2);
        assert!(cubics.contains(&p(&k2, &[1, 1, 0, 1])));
        assert!(cubics.contains(&p(&k2, &[1, 0, 1, 1])));
        // ascending coefficient sequences [1,0,1,1] < [1,1,0,1]
        assert_eq!(cubics[0], p(&k2, &[1, 0, 1, 1]));
        let k3 = FqField::new(3).unwrap();
        assert_eq!(irreducibles(&k3, 2).len(), 3);
    }

    #[test]
    fn mobius_count_matches_enumeration() {
        for q in [2u32, 3, 4, 5] {
            let k = FqField::new(q).unwrap();
            let max_m = match q {
                2 => 8,
                3 => 6,
                _ => 4,
            };
            for m in 1..=max_m {
                let listed = irreducibles(&k, m);
                assert_eq!(listed.len() as u128, irreducible_count(q as u64, m as u32), "q={q} m={m}");
                assert!(listed.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn ben_or_agrees_with_trial_division() {
        let k = FqField::new(3).unwrap();
        for d in 1..=5 {
            for f in Poly::monic_of_degree(&k, d) {
                assert_eq!(f.is_irreducible(), trial_irreducible(&f), "{f}");
            }
        }
    }
}
