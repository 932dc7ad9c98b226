//! One report per subcommand.

use std::fmt::Write as _;

use drinfeld_core::arithstats::{phigrowth_report, primorial, GrowthPoint};
use drinfeld_core::drinfeld::{drinfeld_from_kernel, normalize_rank1};
use drinfeld_core::local::{
    contraction_ceiling, is_torsion_local, local_escape_floor, local_torsion_bound, LocalVerdict, NotTorsionReason,
};
use drinfeld_core::place::RiemannRoch;
use drinfeld_core::text::{parse_poly, parse_ratfn_list};
use drinfeld_core::torsion::{
    census_rank1, classify_rank1, element_order, escape_thresholds, min_parallelotope_volume, torsion_divisor,
    torsion_submodule, twist_torsion_search, weil_height,
};
use drinfeld_core::{linalg, DrinfeldModule, Error, FqField, LaurentSeries, LocalModule, Place, TorsionModule};
use serde::Serialize;

use crate::output::{join_factors, Report};
use crate::CliResult;

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn list(xs: &[String]) -> String {
    if xs.is_empty() {
        "(none)".into()
    } else {
        xs.join(", ")
    }
}

#[derive(Serialize)]
pub struct FloorRow {
    place: String,
    floor: i64,
}

#[derive(Serialize)]
pub struct ElementRow {
    element: String,
    order: String,
}

#[derive(Serialize)]
pub struct TorsionReport {
    q: u32,
    module: String,
    rank: usize,
    size: usize,
    annihilator: String,
    invariant_factors: Vec<String>,
    divisor: String,
    divisor_degree: i64,
    search_space_size: String,
    floors: Vec<FloorRow>,
    elements: Vec<ElementRow>,
}

pub fn torsion(field: &FqField, phi_t: &str, budget: u64) -> CliResult<TorsionReport> {
    let phi = DrinfeldModule::parse(field, phi_t)?;
    let tors = torsion_submodule(&phi, budget)?;
    let d = torsion_divisor(&phi);
    let rr = RiemannRoch::new(field, &d);
    let elements = tors
        .elements
        .iter()
        .map(|x| Ok(ElementRow { element: x.to_string(), order: element_order(&phi, x)?.to_string() }))
        .collect::<CliResult<_>>()?;
    Ok(TorsionReport {
        q: field.q(),
        module: phi.to_string(),
        rank: phi.rank(),
        size: tors.size(),
        annihilator: tors.annihilator.to_string(),
        invariant_factors: strings(&tors.invariant_factors),
        divisor: d.to_string(),
        divisor_degree: d.degree(),
        search_space_size: rr.cardinality().to_string(),
        floors: escape_thresholds(&phi)
            .into_iter()
            .map(|t| FloorRow { place: t.place.to_string(), floor: t.floor })
            .collect(),
        elements,
    })
}

impl Report for TorsionReport {
    const COMMAND: &'static str = "torsion";

    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "phi_T: {}", self.module).unwrap();
        writeln!(s, "rank: {}", self.rank).unwrap();
        writeln!(s, "torsion size: {}", self.size).unwrap();
        writeln!(s, "annihilator: {}", self.annihilator).unwrap();
        writeln!(s, "invariant factors: {}", list(&self.invariant_factors)).unwrap();
        writeln!(s, "divisor: {} (degree {}, {} elements)", self.divisor, self.divisor_degree, self.search_space_size)
            .unwrap();
        writeln!(s, "floors:").unwrap();
        for f in &self.floors {
            writeln!(s, "  {}: {}", f.place, f.floor).unwrap();
        }
        writeln!(s, "elements (order):").unwrap();
        for e in &self.elements {
            writeln!(s, "  {} ({})", e.element, e.order).unwrap();
        }
        s
    }

    fn csv_header(&self) -> Vec<&'static str> {
        vec!["element", "order"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.elements.iter().map(|e| vec![e.element.clone(), e.order.clone()]).collect()
    }
}

#[derive(Serialize)]
pub struct ClassifyReport {
    q: u32,
    module: String,
    f: String,
    f_norm: String,
    u: String,
    size: usize,
    annihilator: String,
    invariant_factors: Vec<String>,
    elements: Vec<String>,
}

pub fn classify(field: &FqField, phi_t: &str) -> CliResult<ClassifyReport> {
    let phi = DrinfeldModule::parse(field, phi_t)?;
    let tors = classify_rank1(&phi)?;
    let f = phi.rank1_parameter().unwrap();
    let (f_norm, u) = normalize_rank1(field, &f)?;
    Ok(ClassifyReport {
        q: field.q(),
        module: phi.to_string(),
        f: f.to_string(),
        f_norm: f_norm.to_string(),
        u: u.to_string(),
        size: tors.size(),
        annihilator: tors.annihilator.to_string(),
        invariant_factors: strings(&tors.invariant_factors),
        elements: strings(&tors.elements),
    })
}

impl Report for ClassifyReport {
    const COMMAND: &'static str = "classify";

    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "phi_T: {}", self.module).unwrap();
        writeln!(s, "f: {}", self.f).unwrap();
        writeln!(s, "normal form: f_norm = {}, f_norm = f * ({})^(q-1)", self.f_norm, self.u).unwrap();
        writeln!(s, "torsion size: {}", self.size).unwrap();
        writeln!(s, "annihilator: {}", self.annihilator).unwrap();
        writeln!(s, "invariant factors: {}", list(&self.invariant_factors)).unwrap();
        writeln!(s, "elements: {}", list(&self.elements)).unwrap();
        s
    }

    fn csv_header(&self) -> Vec<&'static str> {
        vec!["q", "f", "f_norm", "torsion_size", "invariant_factors"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![vec![
            self.q.to_string(),
            self.f.clone(),
            self.f_norm.clone(),
            self.size.to_string(),
            join_factors(&self.invariant_factors),
        ]]
    }
}

#[derive(Serialize)]
pub struct ModuleRow {
    f: String,
    module: String,
    torsion_size: usize,
    annihilator: String,
    invariant_factors: Vec<String>,
    elements: Vec<String>,
}

impl ModuleRow {
    fn new(f: String, module: &DrinfeldModule, t: &TorsionModule) -> Self {
        ModuleRow {
            f,
            module: module.to_string(),
            torsion_size: t.size(),
            annihilator: t.annihilator.to_string(),
            invariant_factors: strings(&t.invariant_factors),
            elements: strings(&t.elements),
        }
    }
}

#[derive(Serialize)]
pub struct CensusReport {
    q: u32,
    deg_bound: usize,
    rows: Vec<ModuleRow>,
}

pub fn census(field: &FqField, deg_bound: usize, budget: u64) -> CliResult<CensusReport> {
    let rows = census_rank1(field, deg_bound, budget)?
        .iter()
        .map(|e| ModuleRow::new(e.f_norm.to_string(), &e.module, &e.torsion))
        .collect();
    Ok(CensusReport { q: field.q(), deg_bound, rows })
}

impl Report for CensusReport {
    const COMMAND: &'static str = "census";

    fn text(&self) -> String {
        let mut s = String::new();
        let nonzero = self.rows.iter().filter(|r| r.torsion_size > 1).count();
        writeln!(
            s,
            "q = {}, deg f <= {}: {} classes, {} with nonzero torsion",
            self.q,
            self.deg_bound,
            self.rows.len(),
            nonzero
        )
        .unwrap();
        for r in &self.rows {
            writeln!(s, "  f = {}: size {}, invariant factors {}", r.f, r.torsion_size, list(&r.invariant_factors))
                .unwrap();
        }
        s
    }

    fn csv_header(&self) -> Vec<&'static str> {
        vec!["q", "f_norm", "torsion_size", "invariant_factors"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![self.q.to_string(), r.f.clone(), r.torsion_size.to_string(), join_factors(&r.invariant_factors)]
            })
            .collect()
    }
}

#[derive(Serialize)]
pub struct TwistReport {
    q: u32,
    module: String,
    aut_count: u64,
    deg_bound: usize,
    rows: Vec<ModuleRow>,
}

pub fn twist_search(field: &FqField, phi_t: &str, deg_bound: usize, budget: u64) -> CliResult<TwistReport> {
    let phi = DrinfeldModule::parse(field, phi_t)?;
    let rows = twist_torsion_search(&phi, deg_bound, budget)?
        .iter()
        .map(|t| ModuleRow::new(t.f.to_string(), &t.twist, &t.torsion))
        .collect();
    Ok(TwistReport { q: field.q(), module: phi.to_string(), aut_count: phi.aut_count(), deg_bound, rows })
}

impl Report for TwistReport {
    const COMMAND: &'static str = "twist-search";

    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "phi_T: {} (#Aut = {})", self.module, self.aut_count).unwrap();
        writeln!(s, "twists with nonzero torsion, deg f <= {}: {}", self.deg_bound, self.rows.len()).unwrap();
        for r in &self.rows {
            writeln!(s, "  f = {}: psi_T = {}; size {}, elements {}", r.f, r.module, r.torsion_size, list(&r.elements))
                .unwrap();
        }
        s
    }

    fn csv_header(&self) -> Vec<&'static str> {
        vec!["q", "f", "twist", "torsion_size", "invariant_factors"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    self.q.to_string(),
                    r.f.clone(),
                    r.module.clone(),
                    r.torsion_size.to_string(),
                    join_factors(&r.invariant_factors),
                ]
            })
            .collect()
    }
}

pub struct LocalRequest<'a> {
    pub phi_t: &'a str,
    /// `None` means coefficients and points are Laurent series.
    pub place: Option<&'a str>,
    pub precision: i64,
    pub points: &'a [String],
    pub a_deg_bound: usize,
}

#[derive(Serialize)]
pub struct PointRow {
    x: String,
    series: String,
    verdict: &'static str,
    reason: Option<&'static str>,
    witness: Option<String>,
}

#[derive(Serialize)]
pub struct LocalReport {
    q: u32,
    place: Option<String>,
    coefficients: Vec<String>,
    good_reduction: bool,
    escape_floor: i64,
    contraction_ceiling: Option<i64>,
    torsion_bound: Option<String>,
    points: Vec<PointRow>,
}

pub fn local(field: &FqField, req: &LocalRequest) -> CliResult<LocalReport> {
    let (phi, place, points): (LocalModule, Option<Place>, Vec<(String, LaurentSeries)>) = match req.place {
        None => {
            let phi = LocalModule::parse(field, req.phi_t)?;
            let pts = req
                .points
                .iter()
                .map(|s| Ok((s.clone(), LaurentSeries::parse(field, s)?)))
                .collect::<CliResult<_>>()?;
            (phi, None, pts)
        }
        Some(p) => {
            let global = DrinfeldModule::parse(field, req.phi_t)?;
            let place = Place::finite(parse_poly(field, p)?)?;
            let phi = LocalModule::from_global(&global, &place, req.precision)?;
            let pts = req
                .points
                .iter()
                .map(|s| {
                    let x = drinfeld_core::text::parse_ratfn(field, s)?;
                    Ok((x.to_string(), LaurentSeries::from_ratfn(&x, phi.center(), req.precision)?))
                })
                .collect::<CliResult<_>>()?;
            (phi, Some(place), pts)
        }
    };
    let good = phi.has_good_reduction()?;
    let ceiling = match contraction_ceiling(&phi) {
        Ok(c) => Some(c),
        Err(Error::NotGoodReduction) => None,
        Err(e) => return Err(e.into()),
    };
    let bound = if good { Some(local_torsion_bound(&phi, 1)?.to_string()) } else { None };
    let points = points
        .into_iter()
        .map(|(x, s)| {
            let (verdict, reason, witness) = match is_torsion_local(&phi, &s, req.a_deg_bound)? {
                LocalVerdict::TorsionWitness(a) => ("torsion", None, Some(a.to_string())),
                LocalVerdict::NotTorsion(NotTorsionReason::Escape) => ("not-torsion", Some("escape"), None),
                LocalVerdict::NotTorsion(NotTorsionReason::Contraction) => ("not-torsion", Some("contraction"), None),
                LocalVerdict::UndecidedAtPrecision => ("undecided", None, None),
            };
            Ok(PointRow { x, series: s.to_string(), verdict, reason, witness })
        })
        .collect::<CliResult<_>>()?;
    Ok(LocalReport {
        q: field.q(),
        place: place.map(|p| p.to_string()),
        coefficients: strings(phi.coeffs()),
        good_reduction: good,
        escape_floor: local_escape_floor(&phi),
        contraction_ceiling: ceiling,
        torsion_bound: bound,
        points,
    })
}

impl Report for LocalReport {
    const COMMAND: &'static str = "local";

    fn text(&self) -> String {
        let mut s = String::new();
        if let Some(p) = &self.place {
            writeln!(s, "place: {p} (series in T - c, written T)").unwrap();
        }
        writeln!(s, "phi_T: {}", self.coefficients.join(", ")).unwrap();
        writeln!(s, "good reduction: {}", if self.good_reduction { "yes" } else { "no" }).unwrap();
        writeln!(s, "escape floor: {}", self.escape_floor).unwrap();
        if let Some(c) = self.contraction_ceiling {
            writeln!(s, "contraction ceiling: {c}").unwrap();
        }
        if let Some(b) = &self.torsion_bound {
            writeln!(s, "torsion bound: {b}").unwrap();
        }
        for p in &self.points {
            let detail = match (&p.reason, &p.witness) {
                (Some(r), _) => format!(" ({r})"),
                (_, Some(a)) => format!(" (killed by {a})"),
                _ => String::new(),
            };
            writeln!(s, "x = {} = {}: {}{}", p.x, p.series, p.verdict, detail).unwrap();
        }
        s
    }

    fn csv_header(&self) -> Vec<&'static str> {
        vec!["x", "series", "verdict", "reason", "witness"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.points
            .iter()
            .map(|p| {
                vec![
                    p.x.clone(),
                    p.series.clone(),
                    p.verdict.to_string(),
                    p.reason.unwrap_or("").to_string(),
                    p.witness.clone().unwrap_or_default(),
                ]
            })
            .collect()
    }
}

#[derive(Serialize)]
pub struct MertensRow {
    n: u32,
    deg_m: u64,
    phi: String,
    product: String,
    statistic: String,
}

#[derive(Serialize)]
pub struct MertensReport {
    q: u32,
    digits: u32,
    rows: Vec<MertensRow>,
}

pub fn mertens(field: &FqField, n: u32, digits: u32, budget: u64) -> CliResult<MertensReport> {
    let rows = (1..=n)
        .map(|k| {
            let rec = primorial(field.q(), k, budget)?;
            let statistic = drinfeld_core::arithstats::liminf_statistic(&rec, digits)?;
            Ok(MertensRow {
                n: k,
                deg_m: rec.deg_m,
                phi: rec.phi.to_string(),
                product: rec.mertens.to_string(),
                statistic: statistic.to_string(),
            })
        })
        .collect::<CliResult<_>>()?;
    Ok(MertensReport { q: field.q(), digits, rows })
}

impl Report for MertensReport {
    const COMMAND: &'static str = "stats-mertens";

    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "q = {}: m_n = product of monic irreducibles of degree <= n", self.q).unwrap();
        writeln!(s, "n  deg m_n  phi_A(m_n)/|m_n|  phi_A(m_n) ln ln|m_n| / |m_n|").unwrap();
        for r in &self.rows {
            writeln!(s, "{}  {}  {}  {}", r.n, r.deg_m, r.product, r.statistic).unwrap();
        }
        s
    }

    fn csv_header(&self) -> Vec<&'static str> {
        vec!["n", "deg_m", "phi", "product", "statistic"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| vec![r.n.to_string(), r.deg_m.to_string(), r.phi.clone(), r.product.clone(), r.statistic.clone()])
            .collect()
    }
}

#[derive(Serialize, Clone)]
pub struct GrowthRow {
    degree: usize,
    witness: String,
    phi: String,
    ratio: String,
    clamped: bool,
}

impl From<&GrowthPoint> for GrowthRow {
    fn from(p: &GrowthPoint) -> Self {
        GrowthRow {
            degree: p.degree,
            witness: p.witness.to_string(),
            phi: p.phi.to_string(),
            ratio: p.ratio.to_string(),
            clamped: p.clamped,
        }
    }
}

#[derive(Serialize)]
pub struct GrowthReport {
    q: u32,
    deg_bound: usize,
    digits: u32,
    rows: Vec<GrowthRow>,
    best: GrowthRow,
}

pub fn phigrowth(field: &FqField, deg_bound: usize, digits: u32, budget: u64) -> CliResult<GrowthReport> {
    let report = phigrowth_report(field, deg_bound, digits, budget)?;
    Ok(GrowthReport {
        q: field.q(),
        deg_bound,
        digits,
        rows: report.per_degree.iter().map(GrowthRow::from).collect(),
        best: report.best().into(),
    })
}

impl Report for GrowthReport {
    const COMMAND: &'static str = "stats-phigrowth";

    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "q = {}: max of |m| / (phi_A(m) ln ln max(phi_A(m), 16)) per degree", self.q).unwrap();
        for r in &self.rows {
            let mark = if r.clamped { " [clamped]" } else { "" };
            writeln!(s, "  deg {}: m = {}, phi_A = {}, ratio {}{}", r.degree, r.witness, r.phi, r.ratio, mark).unwrap();
        }
        writeln!(s, "maximum: {} at m = {} (degree {})", self.best.ratio, self.best.witness, self.best.degree).unwrap();
        s
    }

    fn csv_header(&self) -> Vec<&'static str> {
        vec!["degree", "witness", "phi", "ratio", "clamped"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![r.degree.to_string(), r.witness.clone(), r.phi.clone(), r.ratio.clone(), r.clamped.to_string()]
            })
            .collect()
    }
}

#[derive(Serialize)]
pub struct HeightReport {
    q: u32,
    coords: Vec<String>,
    height: i64,
    independent: bool,
    parallelotope: Option<String>,
    volume_exponent: Option<i64>,
}

pub fn height(field: &FqField, coords: &str) -> CliResult<HeightReport> {
    let xs = parse_ratfn_list(field, coords)?;
    let h = weil_height(&xs)?;
    let independent = linalg::is_independent(field, &xs);
    let (parallelotope, volume_exponent) = if independent {
        let (d, e) = min_parallelotope_volume(field, &xs)?;
        (Some(d.to_string()), Some(e))
    } else {
        (None, None)
    };
    Ok(HeightReport { q: field.q(), coords: strings(&xs), height: h, independent, parallelotope, volume_exponent })
}

impl Report for HeightReport {
    const COMMAND: &'static str = "height";

    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "point: ({})", self.coords.join(" : ")).unwrap();
        writeln!(s, "height: {}", self.height).unwrap();
        match (&self.parallelotope, self.volume_exponent) {
            (Some(d), Some(e)) => writeln!(s, "minimal parallelotope: {d} (volume q^{e})").unwrap(),
            _ => writeln!(s, "coordinates are dependent over F_q; no parallelotope").unwrap(),
        }
        s
    }

    fn csv_header(&self) -> Vec<&'static str> {
        vec!["height", "independent", "volume_exponent"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let vol = self.volume_exponent.map(|e| e.to_string()).unwrap_or_default();
        vec![vec![self.height.to_string(), self.independent.to_string(), vol]]
    }
}

#[derive(Serialize)]
pub struct KernelReport {
    q: u32,
    basis: Vec<String>,
    rank: usize,
    module: String,
    coefficients: Vec<String>,
}

pub fn kernel(field: &FqField, basis: &str) -> CliResult<KernelReport> {
    let xs = parse_ratfn_list(field, basis)?;
    let phi = drinfeld_from_kernel(field, &xs)?;
    Ok(KernelReport {
        q: field.q(),
        basis: strings(&xs),
        rank: phi.rank(),
        module: phi.to_string(),
        coefficients: (0..=phi.rank()).map(|i| phi.coeff(i).to_string()).collect(),
    })
}

impl Report for KernelReport {
    const COMMAND: &'static str = "kernel";

    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "kernel basis: {}", self.basis.join(", ")).unwrap();
        writeln!(s, "rank: {}", self.rank).unwrap();
        writeln!(s, "phi_T: {}", self.module).unwrap();
        s
    }

    fn csv_header(&self) -> Vec<&'static str> {
        vec!["i", "coefficient"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.coefficients.iter().enumerate().map(|(i, c)| vec![i.to_string(), c.clone()]).collect()
    }
}
