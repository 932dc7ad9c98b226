#![allow(dead_code)]

use drinfeld_core::{FqElem, FqField, Poly, RatFn};
use proptest::prelude::*;

pub fn field(q: u32) -> FqField {
    FqField::new(q).unwrap()
}

pub fn elem(f: &FqField, k: u32) -> FqElem {
    f.elements()[(k % f.q()) as usize]
}

pub fn poly(f: &FqField, raw: &[u32]) -> Poly {
    Poly::new(f, raw.iter().map(|&k| elem(f, k)).collect())
}

/// `num/den`, with the denominator bumped to 1 when it comes out zero.
pub fn ratfn(f: &FqField, num: &[u32], den: &[u32]) -> RatFn {
    let d = poly(f, den);
    let d = if d.is_zero() { Poly::one(f) } else { d };
    RatFn::new(poly(f, num), d).unwrap()
}

pub fn nonzero_ratfn(f: &FqField, num: &[u32], den: &[u32]) -> RatFn {
    let x = ratfn(f, num, den);
    if x.is_zero() {
        RatFn::one(f)
    } else {
        x
    }
}

pub fn q_small() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3), Just(4), Just(5)]
}

pub fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..64, 0..=max_len)
}

pub fn nonempty_coeffs(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..64, 1..=max_len)
}
