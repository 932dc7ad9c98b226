//! F_q-linear algebra on finite families of rational functions.

use crate::field::{FqElem, FqField};
use crate::poly::Poly;
use crate::ratfn::RatFn;

/// Coefficient vectors of `xs` over a shared denominator. Two families give
/// comparable vectors only if they are converted together.
pub fn coordinate_vectors(field: &FqField, xs: &[RatFn]) -> Vec<Vec<FqElem>> {
    let common = xs.iter().fold(Poly::one(field), |acc, x| acc.lcm(x.den()));
    let nums: Vec<Poly> = xs.iter().map(|x| x.num().mul_ref(&common.exact_div(x.den()).expect("lcm"))).collect();
    let width = nums.iter().map(|n| n.coeffs().len()).max().unwrap_or(0);
    nums.iter().map(|n| (0..width).map(|i| n.coeff(i)).collect()).collect()
}

/// Incremental row echelon form that remembers how each row was built from
/// the accepted inputs.
#[derive(Clone)]
pub struct Echelon {
    field: FqField,
    rows: Vec<(usize, Vec<FqElem>, Vec<FqElem>)>,
    accepted: usize,
}

impl Echelon {
    pub fn new(field: &FqField) -> Self {
        Echelon { field: field.clone(), rows: Vec::new(), accepted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of what is already there and returns
    /// `None`; otherwise returns `c` with `v = sum c_j input_j` over the
    /// previously accepted inputs.
    pub fn insert(&mut self, v: &[FqElem]) -> Option<Vec<FqElem>> {
        let f = &self.field;
        let mut res = v.to_vec();
        let mut lambdas = Vec::with_capacity(self.rows.len());
        for (pivot, row, _) in &self.rows {
            let lam = res.get(*pivot).copied().unwrap_or(FqElem::ZERO);
            lambdas.push(lam);
            if lam.is_zero() {
                continue;
            }
            if res.len() < row.len() {
                res.resize(row.len(), FqElem::ZERO);
            }
            for (r, &a) in res.iter_mut().zip(row) {
                *r = f.sub(*r, f.mul(lam, a));
            }
        }
        let mut combo = vec![FqElem::ZERO; self.accepted + 1];
        for (lam, (_, _, c)) in lambdas.iter().zip(&self.rows) {
            if lam.is_zero() {
                continue;
            }
            for (acc, &cj) in combo.iter_mut().zip(c) {
                *acc = f.add(*acc, f.mul(*lam, cj));
            }
        }
        match res.iter().position(|a| !a.is_zero()) {
            None => {
                combo.truncate(self.accepted);
                Some(combo)
            }
            Some(pivot) => {
                let inv = f.inv(res[pivot]).unwrap();
                for r in res.iter_mut() {
                    *r = f.mul(*r, inv);
                }
                // new row = (v - sum lam_i row_i) * inv
                let mut row_combo: Vec<FqElem> = combo.iter().map(|&c| f.neg(c)).collect();
                row_combo[self.accepted] = FqElem::ONE;
                for c in row_combo.iter_mut() {
                    *c = f.mul(*c, inv);
                }
                self.rows.push((pivot, res, row_combo));
                for (_, _, c) in self.rows.iter_mut() {
                    c.resize(self.accepted + 1, FqElem::ZERO);
                }
                self.accepted += 1;
                None
            }
        }
    }
}

/// Rank of the F_q-span of `xs`.
pub fn rank(field: &FqField, xs: &[RatFn]) -> usize {
    let mut ech = Echelon::new(field);
    for v in coordinate_vectors(field, xs) {
        ech.insert(&v);
    }
    ech.rank()
}

pub fn is_independent(field: &FqField, xs: &[RatFn]) -> bool {
    rank(field, xs) == xs.len()
}

/// Indices of a maximal independent subfamily, chosen greedily in order.
pub fn greedy_basis(field: &FqField, xs: &[RatFn]) -> Vec<usize> {
    let mut ech = Echelon::new(field);
    let mut out = Vec::new();
    for (i, v) in coordinate_vectors(field, xs).into_iter().enumerate() {
        if ech.insert(&v).is_none() {
            out.push(i);
        }
    }
    out
}

/// The first `k` with `xs[k]` in the span of `xs[..k]`, together with the
/// coefficients expressing it.
pub fn first_dependency(field: &FqField, xs: &[RatFn]) -> Option<(usize, Vec<FqElem>)> {
    let mut ech = Echelon::new(field);
    for (k, v) in coordinate_vectors(field, xs).into_iter().enumerate() {
        if let Some(c) = ech.insert(&v) {
            return Some((k, c));
        }
    }
    None
}

/// Coordinates of each `y` in terms of the independent family `basis`, or
/// `None` if some `y` lies outside the span.
pub fn express(field: &FqField, basis: &[RatFn], ys: &[RatFn]) -> Option<Vec<Vec<FqElem>>> {
    let all: Vec<RatFn> = basis.iter().chain(ys).cloned().collect();
    let vecs = coordinate_vectors(field, &all);
    let mut ech = Echelon::new(field);
    for v in &vecs[..basis.len()] {
        if ech.insert(v).is_some() {
            return None;
        }
    }
    vecs[basis.len()..].iter().map(|v| ech.clone().insert(v)).collect()
}

/// Every F_q-combination of `basis`, in lexicographic order of coefficient
/// tuples (first coordinate most significant).
pub fn span(field: &FqField, basis: &[RatFn]) -> Vec<RatFn> {
    let mut out = vec![RatFn::zero(field)];
    for b in basis.iter().rev() {
        let mut next = Vec::with_capacity(out.len() * field.q() as usize);
        for &c in field.elements() {
            let cb = b.scale(c);
            for x in &out {
                next.push(cb.add_ref(x));
            }
        }
        out = next;
    }
    out
}
