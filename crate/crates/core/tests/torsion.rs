mod common;

use common::*;
use drinfeld_core::place::{valuation, RiemannRoch};
use drinfeld_core::torsion::*;
use drinfeld_core::{linalg, Divisor, DrinfeldModule, FqField, Place, Poly, RatFn, Valuation};
use proptest::prelude::*;

type Raw = Vec<(Vec<u32>, Vec<u32>)>;

fn module(f: &FqField, raw: &Raw) -> DrinfeldModule {
    let mut coeffs = vec![RatFn::t(f)];
    coeffs.extend(raw.iter().map(|(n, d)| ratfn(f, n, d)));
    if coeffs.last().unwrap().is_zero() {
        *coeffs.last_mut().unwrap() = RatFn::one(f);
    }
    DrinfeldModule::new(f, coeffs).unwrap()
}

fn module_raw() -> impl Strategy<Value = Raw> {
    prop::collection::vec((coeffs(3), nonempty_coeffs(3)), 1..=2)
}

fn q23() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3)]
}

fn small_l_d(phi: &DrinfeldModule, cap: u64) -> Option<RiemannRoch> {
    let d = torsion_divisor(phi);
    match rr_cardinality(phi.field(), &d) {
        Some(n) if n <= cap => Some(RiemannRoch::new(phi.field(), &d)),
        _ => None,
    }
}

/// First monic `a` in canonical order with `φ_a(x) = 0`, of degree at most `max_deg`.
fn brute_order(phi: &DrinfeldModule, x: &RatFn, max_deg: usize) -> Option<Poly> {
    let f = phi.field();
    (0..=max_deg).find_map(|d| Poly::monic_of_degree(f, d).find(|a| phi.phi_a(a).eval(x).is_zero()))
}

fn vfin(x: &RatFn, v: &Place) -> Option<i64> {
    valuation(x, v).finite()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn escape_is_sound(q in q23(), raw in module_raw(), x in (nonempty_coeffs(4), nonempty_coeffs(4))) {
        let f = field(q);
        let phi = module(&f, &raw);
        let x = nonzero_ratfn(&f, &x.0, &x.1);
        let qr = (q as i64).pow(phi.rank() as u32);
        for t in escape_thresholds(&phi) {
            let mut y = x.clone();
            for _ in 0..2 {
                let vy = vfin(&y, &t.place).unwrap();
                if vy >= t.floor {
                    break;
                }
                let next = phi.phi_t().eval(&y);
                let vn = vfin(&next, &t.place).unwrap();
                let vr = vfin(&phi.leading(), &t.place).unwrap();
                prop_assert_eq!(vn, vr + qr * vy);
                prop_assert!(vn < vy);
                y = next;
            }
        }
        if !torsion_divisor(&phi).contains(&x) {
            prop_assert!(!is_torsion(&phi, &x));
        }
    }

    #[test]
    fn enumeration_matches_brute_force(q in q23(), raw in module_raw()) {
        let f = field(q);
        let phi = module(&f, &raw);
        let Some(rr) = small_l_d(&phi, 256) else { return Ok(()) };
        let max_deg = rr.dimension() as usize + phi.rank();
        let tors = torsion_submodule(&phi, 256).unwrap();
        for x in rr.elements() {
            let brute = brute_order(&phi, &x, max_deg);
            prop_assert_eq!(brute.is_some(), tors.contains(&x));
            prop_assert_eq!(brute.is_some(), is_torsion(&phi, &x));
            match brute {
                Some(a) => {
                    prop_assert_eq!(element_order(&phi, &x).unwrap(), a.clone());
                    prop_assert!(a.divides(&tors.annihilator));
                }
                None => prop_assert!(element_order(&phi, &x).is_err()),
            }
        }
    }

    #[test]
    fn torsion_is_a_submodule(q in q23(), raw in module_raw()) {
        let f = field(q);
        let phi = module(&f, &raw);
        let Ok(tors) = torsion_submodule(&phi, 1 << 12) else { return Ok(()) };
        prop_assert!(tors.elements[0].is_zero());
        prop_assert!(tors.elements.windows(2).all(|w| w[0] < w[1]));
        for x in &tors.elements {
            prop_assert!(tors.contains(&phi.phi_t().eval(x)));
            prop_assert!(phi.phi_a(&tors.annihilator).eval(x).is_zero());
            for c in f.elements() {
                prop_assert!(tors.contains(&x.scale(*c)));
            }
        }
        for x in tors.elements.iter().take(8) {
            for y in &tors.elements {
                prop_assert!(tors.contains(&x.add_ref(y)));
            }
        }
        let deg: usize = tors.invariant_factors.iter().map(|p| p.degree().unwrap()).sum();
        prop_assert_eq!(tors.size(), (q as usize).pow(deg as u32));
        prop_assert!(tors.invariant_factors.windows(2).all(|w| w[0].divides(&w[1])));
        prop_assert_eq!(tors.invariant_factors.last().cloned().unwrap_or_else(|| Poly::one(&f)), tors.annihilator.clone());
        prop_assert!(tors.invariant_factors.len() <= phi.rank());
    }

    #[test]
    fn twisting_moves_torsion(q in q23(), raw in module_raw(), u in (nonempty_coeffs(3), nonempty_coeffs(3))) {
        let f = field(q);
        let phi = module(&f, &raw);
        let u = nonzero_ratfn(&f, &u.0, &u.1);
        let psi = phi.twist(&u).unwrap();
        let (Ok(tp), Ok(ts)) = (torsion_submodule(&phi, 1 << 12), torsion_submodule(&psi, 1 << 12)) else { return Ok(()) };
        let mut moved: Vec<RatFn> = ts.elements.iter().map(|y| u.mul_ref(y)).collect();
        moved.sort();
        prop_assert_eq!(moved, tp.elements.clone());
        prop_assert_eq!(ts.invariant_factors, tp.invariant_factors);
    }

    #[test]
    fn height_is_projective(q in q_small(), xs in prop::collection::vec((coeffs(4), nonempty_coeffs(3)), 1..=4), c in (nonempty_coeffs(4), nonempty_coeffs(4))) {
        let f = field(q);
        let xs: Vec<RatFn> = xs.iter().map(|(n, d)| ratfn(&f, n, d)).collect();
        prop_assume!(xs.iter().any(|x| !x.is_zero()));
        let c = nonzero_ratfn(&f, &c.0, &c.1);
        let h = weil_height(&xs).unwrap();
        prop_assert!(h >= 0);
        let scaled: Vec<RatFn> = xs.iter().map(|x| x.mul_ref(&c)).collect();
        prop_assert_eq!(weil_height(&scaled).unwrap(), h);
        // clear denominators: polynomial coordinates n_i give max deg n_i - deg gcd
        let lcm = xs.iter().fold(Poly::one(&f), |l, x| l.lcm(x.den()));
        let ns: Vec<Poly> = xs.iter().map(|x| x.mul_ref(&RatFn::from(lcm.clone())).as_poly().unwrap().clone()).collect();
        let g = ns.iter().fold(Poly::zero(&f), |g, n| g.gcd(n));
        let maxdeg = ns.iter().filter_map(|n| n.degree()).max().unwrap() as i64;
        prop_assert_eq!(h, maxdeg - g.degree().unwrap() as i64);
    }

    #[test]
    fn parallelotope_volume_is_height(q in q23(), raw in prop::collection::vec((coeffs(3), nonempty_coeffs(3)), 1..=3)) {
        let f = field(q);
        let basis: Vec<RatFn> = raw.iter().map(|(n, d)| ratfn(&f, n, d)).collect();
        prop_assume!(linalg::is_independent(&f, &basis));
        let (d, e) = min_parallelotope_volume(&f, &basis).unwrap();
        prop_assert_eq!(e, weil_height(&basis).unwrap());
        prop_assert_eq!(e, d.degree());
        let span = linalg::span(&f, &basis);
        prop_assert!(span.iter().all(|y| d.contains(y)));
        for (v, n) in d.iter() {
            let reached = span.iter().filter_map(|y| vfin(y, v)).map(|a| -a).max().unwrap();
            prop_assert_eq!(reached, n);
            let mut smaller = d.clone();
            smaller.add_at(v.clone(), -1);
            prop_assert!(!span.iter().all(|y| smaller.contains(y)));
        }
    }
}

#[test]
fn good_reduction_bounds_torsion() {
    for q in [2u32, 3] {
        let f = field(q);
        for entry in census_rank1(&f, 4, 1 << 16).unwrap() {
            for g in Poly::monic_of_degree(&f, 1).chain(Poly::monic_of_degree(&f, 2)) {
                if !g.is_irreducible() {
                    continue;
                }
                let place = Place::finite(g.clone()).unwrap();
                if entry.module.has_good_reduction(&place) {
                    let bound = (q as usize).pow(2 * g.degree().unwrap() as u32);
                    assert!(entry.torsion.size() <= bound, "{} at {g}", entry.module);
                }
            }
        }
    }
}

#[test]
fn classifier_agrees_with_enumeration_on_rational_parameters() {
    for q in [2u32, 3, 4] {
        let f = field(q);
        for num in Poly::up_to_degree(&f, 2).filter(|p| !p.is_zero()) {
            for den in Poly::up_to_degree(&f, 1).filter(|p| p.is_monic()) {
                let x = RatFn::new(num.clone(), den).unwrap();
                let phi = DrinfeldModule::rank1(&f, &x).unwrap();
                let closed = classify_rank1(&phi).unwrap();
                let enumerated = torsion_submodule(&phi, 1 << 16).unwrap();
                assert_eq!(closed, enumerated, "{phi}");
            }
        }
    }
}

#[test]
fn floors_vanish_at_unit_places() {
    let f = field(3);
    let phi = DrinfeldModule::parse(&f, "T, T^2+1, 1/(T+1)").unwrap();
    let relevant = relevant_places(&phi);
    for g in Poly::monic_of_degree(&f, 1) {
        let place = Place::finite(g).unwrap();
        let units = (0..=phi.rank())
            .all(|i| matches!(valuation(&phi.coeff(i), &place), Valuation::Finite(0) | Valuation::Infinite));
        if units {
            assert_eq!(valuation_floor(&phi, &place), 0);
            assert!(!relevant.contains(&place));
        }
    }
    let d: Divisor = torsion_divisor(&phi);
    assert!(d.iter().all(|(v, _)| relevant.contains(v)));
}
