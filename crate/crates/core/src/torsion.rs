//! Global torsion over K = F_q(T).
//!
//! Torsion points of `φ` have `v(x) ≥ c_v` at every place, so they lie in a
//! Riemann–Roch space L(D). Inside L(D) an orbit of `φ_T` either leaves the
//! space (not torsion) or revisits a point (torsion).

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::drinfeld::{normalize_rank1, unit_class_representatives, DrinfeldModule};
use crate::error::{Error, Result};
use crate::factor::factor;
use crate::field::{FqElem, FqField};
use crate::linalg::{self, Echelon};
use crate::place::{finite_support, valuation, Divisor, Place, RiemannRoch, Valuation};
use crate::poly::Poly;
use crate::ratfn::RatFn;

/// A finite torsion submodule with its A-module structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionModule {
    /// All elements, sorted, starting with 0.
    pub elements: Vec<RatFn>,
    /// Monic generator of the annihilator ideal.
    pub annihilator: Poly,
    /// Monic invariant factors `d_1 | d_2 | ...`.
    pub invariant_factors: Vec<Poly>,
}

impl TorsionModule {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, x: &RatFn) -> bool {
        self.elements.binary_search(x).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EscapeThreshold {
    pub place: Place,
    pub floor: i64,
}

fn ceil_div(a: i128, b: i128) -> i128 {
    Integer::div_ceil(&a, &b)
}

/// The valuation floor `c_v`: below it the leading term of `φ_T` dominates
/// and valuations strictly decrease along the orbit.
pub fn valuation_floor(phi: &DrinfeldModule, place: &Place) -> i64 {
    let q = phi.q() as i128;
    let r = phi.rank();
    let vr = valuation(&phi.leading(), place).finite().unwrap() as i128;
    let qr = q.pow(r as u32);
    let mut best = ceil_div(-vr, qr - 1);
    for i in 0..r {
        if let Valuation::Finite(vi) = valuation(&phi.coeff(i), place) {
            best = best.min(ceil_div(vi as i128 - vr, qr - q.pow(i as u32)));
        }
    }
    best as i64
}

/// Places where some coefficient is not a unit, together with ∞.
pub fn relevant_places(phi: &DrinfeldModule) -> Vec<Place> {
    let mut places = BTreeSet::new();
    for i in 0..=phi.rank() {
        places.extend(finite_support(&phi.coeff(i)));
    }
    places.insert(Place::Infinity);
    places.into_iter().collect()
}

/// `c_v` at every relevant place; elsewhere the floor is 0.
pub fn escape_thresholds(phi: &DrinfeldModule) -> Vec<EscapeThreshold> {
    relevant_places(phi)
        .into_iter()
        .map(|place| {
            let floor = valuation_floor(phi, &place);
            EscapeThreshold { place, floor }
        })
        .collect()
}

/// `D = Σ -c_v v`; every torsion point lies in L(D).
pub fn torsion_divisor(phi: &DrinfeldModule) -> Divisor {
    Divisor::from_pairs(escape_thresholds(phi).into_iter().map(|t| (t.place, -t.floor)))
}

fn check_budget(rr: &RiemannRoch, budget: u64) -> Result<()> {
    let card = rr.cardinality();
    if card > BigUint::from(budget) {
        return Err(Error::BudgetExceeded { degree: rr.degree(), required: card.to_string(), budget });
    }
    Ok(())
}

/// Follows the orbit of `x` until it leaves `rr`, repeats, or reaches a point
/// already classified in `memo`, then records the verdict for the whole path.
fn classify_orbit(phi: &DrinfeldModule, rr: &RiemannRoch, x: &RatFn, memo: &mut HashMap<RatFn, bool>) -> bool {
    let mut path: Vec<RatFn> = Vec::new();
    let mut on_path: HashSet<RatFn> = HashSet::new();
    let mut cur = x.clone();
    let verdict = loop {
        if let Some(&v) = memo.get(&cur) {
            break v;
        }
        if !rr.contains(&cur) {
            break false;
        }
        if !on_path.insert(cur.clone()) {
            break true;
        }
        let next = phi.phi_t().eval(&cur);
        path.push(cur);
        cur = next;
    };
    for p in path {
        memo.insert(p, verdict);
    }
    verdict
}

/// Finite forward orbit under `φ_T`.
pub fn is_torsion(phi: &DrinfeldModule, x: &RatFn) -> bool {
    if x.is_zero() {
        return true;
    }
    let rr = RiemannRoch::new(phi.field(), &torsion_divisor(phi));
    classify_orbit(phi, &rr, x, &mut HashMap::new())
}

/// The full torsion submodule, by enumerating L(D).
pub fn torsion_submodule(phi: &DrinfeldModule, budget: u64) -> Result<TorsionModule> {
    let rr = RiemannRoch::new(phi.field(), &torsion_divisor(phi));
    check_budget(&rr, budget)?;
    let mut memo = HashMap::new();
    let elements: Vec<RatFn> = rr.elements().filter(|x| classify_orbit(phi, &rr, x, &mut memo)).collect();
    module_structure(phi, &elements)
}

/// Monic generator of the annihilator of a torsion point, from the first
/// linear relation among `x, φ_T(x), φ_T^2(x), ...`.
pub fn element_order(phi: &DrinfeldModule, x: &RatFn) -> Result<Poly> {
    if !is_torsion(phi, x) {
        return Err(Error::NotTorsion);
    }
    let field = phi.field();
    let rr = RiemannRoch::new(field, &torsion_divisor(phi));
    let width = rr.dimension() as usize;
    let mut ech = Echelon::new(field);
    let mut cur = x.clone();
    loop {
        let k = rr.coordinate(&cur).expect("torsion orbit stays in L(D)");
        let v: Vec<FqElem> = (0..width).map(|i| k.coeff(i)).collect();
        if let Some(c) = ech.insert(&v) {
            return Ok(relation_poly(field, &c));
        }
        cur = phi.phi_t().eval(&cur);
    }
}

/// `T^k - Σ c_j T^j` for `k = c.len()`.
fn relation_poly(field: &FqField, c: &[FqElem]) -> Poly {
    let mut coeffs: Vec<FqElem> = c.iter().map(|&a| field.neg(a)).collect();
    coeffs.push(FqElem::ONE);
    Poly::new(field, coeffs)
}

type Mat = Vec<Vec<FqElem>>;

fn identity(d: usize) -> Mat {
    (0..d).map(|i| (0..d).map(|j| if i == j { FqElem::ONE } else { FqElem::ZERO }).collect()).collect()
}

fn mat_mul(field: &FqField, a: &Mat, b: &Mat) -> Mat {
    let d = a.len();
    (0..d)
        .map(|i| {
            (0..d).map(|j| (0..d).fold(FqElem::ZERO, |acc, k| field.add(acc, field.mul(a[i][k], b[k][j])))).collect()
        })
        .collect()
}

fn mat_vec(field: &FqField, a: &Mat, v: &[FqElem]) -> Vec<FqElem> {
    a.iter().map(|row| row.iter().zip(v).fold(FqElem::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))).collect()
}

/// `p(M)` by Horner's rule.
fn mat_poly(field: &FqField, p: &Poly, m: &Mat) -> Mat {
    let d = m.len();
    let mut acc = vec![vec![FqElem::ZERO; d]; d];
    for &c in p.coeffs().iter().rev() {
        acc = mat_mul(field, &acc, m);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] = field.add(row[i], c);
        }
    }
    acc
}

fn mat_rank(field: &FqField, a: &Mat) -> usize {
    let mut ech = Echelon::new(field);
    for row in a {
        ech.insert(row);
    }
    ech.rank()
}

/// Minimal polynomial of `v` under `M`.
fn vector_order(field: &FqField, m: &Mat, v: &[FqElem]) -> Poly {
    let mut ech = Echelon::new(field);
    let mut cur = v.to_vec();
    loop {
        if let Some(c) = ech.insert(&cur) {
            return relation_poly(field, &c);
        }
        cur = mat_vec(field, m, &cur);
    }
}

/// Annihilator and invariant factors of F_q^d as an A-module with `T`
/// acting by `m`.
fn matrix_structure(field: &FqField, m: &Mat) -> Result<(Poly, Vec<Poly>)> {
    let d = m.len();
    let unit = identity(d);
    let annihilator = unit.iter().fold(Poly::one(field), |acc, e| acc.lcm(&vector_order(field, m, e)));

    // per prime p^k || annihilator: n_j = (dim ker p(M)^j - dim ker p(M)^{j-1}) / deg p
    // counts the cyclic p-components of exponent at least j
    let mut exps_by_prime: Vec<(Poly, Vec<u32>)> = Vec::new();
    for (p, k) in factor(&annihilator)?.factors {
        let pm = mat_poly(field, &p, m);
        let dp = p.degree().unwrap();
        let mut power = unit.clone();
        let mut kernel_dims = vec![0usize];
        for _ in 0..k {
            power = mat_mul(field, &power, &pm);
            kernel_dims.push(d - mat_rank(field, &power));
        }
        let at_least: Vec<usize> = (1..=k as usize).map(|j| (kernel_dims[j] - kernel_dims[j - 1]) / dp).collect();
        let mut exps = Vec::new();
        for j in (1..=k as usize).rev() {
            let exactly = at_least[j - 1] - at_least.get(j).copied().unwrap_or(0);
            exps.extend(std::iter::repeat_n(j as u32, exactly));
        }
        exps_by_prime.push((p, exps));
    }
    let count = exps_by_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut invariant_factors: Vec<Poly> = (0..count)
        .map(|i| {
            exps_by_prime.iter().fold(Poly::one(field), |acc, (p, e)| match e.get(i) {
                Some(&k) => acc.mul_ref(&p.pow(k as u64)),
                None => acc,
            })
        })
        .collect();
    invariant_factors.reverse();
    Ok((annihilator, invariant_factors))
}

/// Checks that `elements` is an F_q-subspace stable under `φ_T` and returns
/// it with its annihilator and invariant factors.
pub fn module_structure(phi: &DrinfeldModule, elements: &[RatFn]) -> Result<TorsionModule> {
    let field = phi.field();
    let mut elems: Vec<RatFn> = elements.to_vec();
    elems.sort();
    elems.dedup();
    if elems.first().is_none_or(|z| !z.is_zero()) {
        return Err(Error::NotClosed);
    }
    let basis: Vec<RatFn> = linalg::greedy_basis(field, &elems).into_iter().map(|i| elems[i].clone()).collect();
    let d = basis.len();
    let q = BigUint::from(field.q());
    if BigUint::from(elems.len()) != q.pow(d as u32) {
        return Err(Error::NotClosed);
    }
    let images: Vec<RatFn> = basis.iter().map(|b| phi.phi_t().eval(b)).collect();
    let cols = linalg::express(field, &basis, &images).ok_or(Error::NotClosed)?;
    // M[i][j] = coefficient of basis_i in φ_T(basis_j)
    let m: Mat = (0..d).map(|i| (0..d).map(|j| cols[j][i]).collect()).collect();

    let (annihilator, invariant_factors) = matrix_structure(field, &m)?;
    Ok(TorsionModule { elements: elems, annihilator, invariant_factors })
}

/// Torsion of a rank one module from the closed-form classification: after
/// normalizing `f = -a_1` the torsion is `F_2 + F_2 T` when `q = 2`, `F_q`
/// when the normal form is `T + c`, and `0` otherwise, scaled by the
/// normalizing factor.
pub fn classify_rank1(phi: &DrinfeldModule) -> Result<TorsionModule> {
    if phi.rank() != 1 {
        return Err(Error::RankMismatch { expected: 1, found: phi.rank() });
    }
    let field = phi.field();
    let f = phi.rank1_parameter().unwrap();
    let (f_norm, u) = normalize_rank1(field, &f)?;
    let (base, annihilator): (Vec<RatFn>, Poly) = if field.q() == 2 {
        let t = RatFn::t(field);
        let one = RatFn::one(field);
        let all = vec![RatFn::zero(field), one.clone(), t.clone(), t.add_ref(&one)];
        (all, Poly::from_ints(field, &[0, 1, 1]))
    } else if f_norm.degree() == Some(1) && f_norm.is_monic() {
        let consts = field.elements().iter().map(|&c| RatFn::constant(field, c)).collect();
        (consts, f_norm.clone())
    } else {
        (vec![RatFn::zero(field)], Poly::one(field))
    };
    let mut elements: Vec<RatFn> = base.iter().map(|x| x.mul_ref(&u)).collect();
    elements.sort();
    let invariant_factors = if annihilator.is_one() { Vec::new() } else { vec![annihilator.clone()] };
    Ok(TorsionModule { elements, annihilator, invariant_factors })
}

/// Nonzero polynomials of degree at most `deg_bound`, in canonical order,
/// whose leading coefficient is one of the chosen representatives of
/// F_q^*/(F_q^*)^n and whose irreducible exponents are all below `n`. These
/// represent the classes of K*/K*^n that have polynomial representatives of
/// bounded degree.
pub fn normalized_classes(field: &FqField, n: u64, deg_bound: usize, budget: u64) -> Result<Vec<Poly>> {
    let total = BigUint::from(field.q()).pow(deg_bound as u32 + 1);
    if total > BigUint::from(budget) {
        return Err(Error::BudgetExceeded { degree: deg_bound as i64, required: total.to_string(), budget });
    }
    let reps = unit_class_representatives(field, n);
    let mut candidates: Vec<Poly> = Vec::new();
    for d in 0..=deg_bound {
        for &c in &reps {
            candidates.extend(Poly::monic_of_degree(field, d).map(|m| m.scale(c)));
        }
    }
    let mut out: Vec<Poly> = candidates
        .into_par_iter()
        .filter(|p| factor(p).unwrap().factors.iter().all(|&(_, e)| (e as u64) < n))
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub f_norm: Poly,
    pub module: DrinfeldModule,
    pub torsion: TorsionModule,
}

/// Torsion of `φ_T = T x - f x^q` for every normalized `f` of degree at most
/// `deg_bound`, computed by enumeration.
pub fn census_rank1(field: &FqField, deg_bound: usize, budget: u64) -> Result<Vec<CensusEntry>> {
    let classes = normalized_classes(field, field.q() as u64 - 1, deg_bound, budget)?;
    classes
        .into_par_iter()
        .map(|f| {
            let module = DrinfeldModule::rank1(field, &RatFn::from(f.clone()))?;
            let torsion = torsion_submodule(&module, budget)?;
            Ok(CensusEntry { f_norm: f, module, torsion })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct TwistTorsion {
    pub f: Poly,
    pub twist: DrinfeldModule,
    pub torsion: TorsionModule,
}

/// Twists `ψ` of `φ` by classes `f ∈ K*/K*^n` (n = #Aut φ) with polynomial
/// representative of degree at most `f_deg_bound` and nonzero torsion.
pub fn twist_torsion_search(phi: &DrinfeldModule, f_deg_bound: usize, budget: u64) -> Result<Vec<TwistTorsion>> {
    let field = phi.field();
    let classes = normalized_classes(field, phi.aut_count(), f_deg_bound, budget)?;
    let found: Vec<Option<TwistTorsion>> = classes
        .into_par_iter()
        .map(|f| {
            let twist = phi.twist_by_class(&RatFn::from(f.clone()))?;
            let torsion = torsion_submodule(&twist, budget)?;
            Ok((!torsion.is_trivial()).then_some(TwistTorsion { f, twist, torsion }))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Logarithmic Weil height of the projective point `(x_0 : ... : x_k)`.
pub fn weil_height(coords: &[RatFn]) -> Result<i64> {
    if coords.iter().all(RatFn::is_zero) {
        return Err(Error::ZeroInput("weil_height"));
    }
    Ok(pole_divisor(coords).degree())
}

/// `Σ_v max_i(-v(x_i)) v` over the places where some `x_i` is not a unit.
fn pole_divisor(xs: &[RatFn]) -> Divisor {
    let mut places = BTreeSet::new();
    places.insert(Place::Infinity);
    for x in xs.iter().filter(|x| !x.is_zero()) {
        places.extend(finite_support(x));
    }
    Divisor::from_pairs(places.into_iter().map(|v| {
        let n = xs.iter().filter_map(|x| valuation(x, &v).finite()).map(|a| -a).max().unwrap();
        (v, n)
    }))
}

/// The smallest parallelotope containing the span of `basis`, as a divisor,
/// with its degree (the base-q logarithm of its volume).
pub fn min_parallelotope_volume(field: &FqField, basis: &[RatFn]) -> Result<(Divisor, i64)> {
    if basis.is_empty() {
        return Err(Error::ZeroInput("min_parallelotope_volume"));
    }
    if !linalg::is_independent(field, basis) {
        return Err(Error::DependentBasis);
    }
    let d = pole_divisor(basis);
    let e = d.degree();
    Ok((d, e))
}

/// Exact `#L(D)` as `u64` if it fits.
pub fn rr_cardinality(field: &FqField, d: &Divisor) -> Option<u64> {
    RiemannRoch::new(field, d).cardinality().to_u64()
}
