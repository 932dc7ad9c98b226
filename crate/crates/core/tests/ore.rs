mod common;

use common::*;
use drinfeld_core::ore::subspace_poly;
use drinfeld_core::place::RiemannRoch;
use drinfeld_core::{linalg, Divisor, FqField, OrePoly, Place, RatFn};
use proptest::prelude::*;

fn ore(f: &FqField, raw: &[(Vec<u32>, Vec<u32>)]) -> OrePoly {
    OrePoly::new(f, raw.iter().map(|(n, d)| ratfn(f, n, d)).collect())
}

fn ore_raw() -> impl Strategy<Value = Vec<(Vec<u32>, Vec<u32>)>> {
    prop::collection::vec((coeffs(3), nonempty_coeffs(2)), 0..=3)
}

fn q_tiny() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3), Just(4)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn evaluation_is_f_q_linear(q in q_small(), a in ore_raw(), x in (coeffs(3), nonempty_coeffs(3)), y in (coeffs(3), nonempty_coeffs(3)), c in 0u32..64) {
        let f = field(q);
        let p = ore(&f, &a);
        let x = ratfn(&f, &x.0, &x.1);
        let y = ratfn(&f, &y.0, &y.1);
        let c = elem(&f, c);
        prop_assert_eq!(p.eval(&x.add_ref(&y)), p.eval(&x).add_ref(&p.eval(&y)));
        prop_assert_eq!(p.eval(&x.scale(c)), p.eval(&x).scale(c));
    }

    #[test]
    fn composition_laws(q in q_tiny(), a in ore_raw(), b in ore_raw(), c in ore_raw()) {
        let f = field(q);
        let (a, b, c) = (ore(&f, &a), ore(&f, &b), ore(&f, &c));
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert_eq!(b.add_ref(&c).mul_ref(&a), b.mul_ref(&a).add_ref(&c.mul_ref(&a)));
        if let (Some(da), Some(db)) = (a.tau_degree(), b.tau_degree()) {
            prop_assert_eq!(a.mul_ref(&b).tau_degree(), Some(da + db));
        }
    }

    #[test]
    fn composition_matches_evaluation(q in q_tiny(), a in ore_raw(), b in ore_raw(), x in (coeffs(2), nonempty_coeffs(2))) {
        let f = field(q);
        let (a, b) = (ore(&f, &a), ore(&f, &b));
        let x = ratfn(&f, &x.0, &x.1);
        prop_assert_eq!(a.mul_ref(&b).eval(&x), a.eval(&b.eval(&x)));
    }

    #[test]
    fn subspace_polynomial_kernel_is_exact(q in prop_oneof![Just(2u32), Just(3)], raw in prop::collection::vec((coeffs(3), prop::sample::select(vec![vec![1u32], vec![0, 1], vec![1, 1]])), 1..=3)) {
        let f = field(q);
        let basis: Vec<RatFn> = raw.iter().map(|(n, d)| ratfn(&f, n, d)).collect();
        prop_assume!(linalg::is_independent(&f, &basis));
        let e = subspace_poly(&f, &basis).unwrap();
        prop_assert_eq!(e.x_degree(), Some((q as u128).pow(basis.len() as u32)));
        prop_assert!(e.coeff(basis.len()).is_one());
        let span = linalg::span(&f, &basis);
        for v in &span {
            prop_assert!(e.eval(v).is_zero());
        }
        // a divisor large enough to hold the span, with room to spare
        let mut d = Divisor::from_pairs([(Place::Infinity, 4)]);
        for p in [vec![0u32, 1], vec![1, 1]] {
            d.add_at(Place::finite(poly(&f, &p).monic()).unwrap(), 1);
        }
        prop_assert!(basis.iter().all(|b| d.contains(b)));
        let mut kernel = e.kernel_in(&d).unwrap();
        let mut span = span;
        kernel.sort();
        span.sort();
        prop_assert_eq!(kernel, span);
        prop_assert!(RiemannRoch::new(&f, &d).dimension() as usize > basis.len());
    }
}

#[test]
fn dependent_basis_is_rejected() {
    let f = field(3);
    let x = ratfn(&f, &[1, 1], &[1]);
    assert!(subspace_poly(&f, &[x.clone(), x.scale(elem(&f, 2))]).is_err());
}
