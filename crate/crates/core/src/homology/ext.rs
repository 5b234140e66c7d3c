//! `Ext_UL(M, UL)` as the cohomology of `Hom_UL(P, UL)` where `P` is the CE
//! resolution of `M`; grade, depth and the polygrade report.
//!
//! A cochain of internal degree `d` sends a generator of weight `w` to
//! `UL_{w+d}`, so classes can sit at negative `d`. For a finite-dimensional
//! algebra the top class of `k` sits at `d = Σ|odd| - Σ|even|`.

use std::collections::{BTreeMap, HashMap};

use serde_json::{json, Value};

use super::complex::{ce_chain_complex, homology_dims, Resolution};
use super::module::{GradedModule, ModuleSpec};
use crate::enveloping::Enveloping;
use crate::error::HomologyError;
use crate::field::{Field, Scalar};
use crate::lie::GradedLieAlgebra;
use crate::linalg::{rank, rank_and_kernel, rank_mod_prime, Rref, Vector, RANK_PRIME};
use crate::series::{pbw_series, DimensionSequence, polybd_estimate, GrowthReport, Verdict};

/// Internal-degree ceiling used when none is given. Even directions shift
/// classes down in this grading, so only odd degrees count towards it.
pub fn default_d_bound(l: &GradedLieAlgebra, m: &ModuleSpec) -> i64 {
    let odd: i64 = (0..l.dim()).filter(|&i| l.is_odd(i)).map(|i| l.degree(i) as i64).sum();
    odd + m.top_degree() as i64 + 2 * l.max_degree() as i64
}

/// `dim L + 1` for a complete algebra. A truncated one is only scanned for a
/// homology candidate, through homological degree 3.
pub fn default_q_max(l: &GradedLieAlgebra) -> usize {
    match l.truncation() {
        None => l.dim() + 1,
        Some(_) => (l.dim() + 1).min(TRUNCATED_Q_MAX),
    }
}

pub const TRUNCATED_Q_MAX: usize = 3;

/// `(g, a, c)`: generator, optional Lie letter, coefficient.
type RevTerm = (usize, Option<usize>, Scalar);

/// `Hom_UL(P_q, UL)` for `q <= top`, with `UL` tabulated far enough for
/// internal degrees up to `d_bound`.
struct HomComplex<'a> {
    l: &'a GradedLieAlgebra,
    res: Resolution,
    u: Enveloping,
    /// `rev[q][h]`: terms `(g, a, c)` with `D g ∋ c · a · h`, `g` in `P_{q+1}`.
    rev: Vec<Vec<Vec<RevTerm>>>,
    ranks: HashMap<(usize, i64), usize>,
    fast_ranks: HashMap<(usize, i64), usize>,
}

impl<'a> HomComplex<'a> {
    fn new(l: &'a GradedLieAlgebra, m: &GradedModule, top: usize, d_bound: i64) -> Result<Self, HomologyError> {
        if let Some(t) = l.truncation() {
            return Err(HomologyError::Truncated { truncation: t });
        }
        let res = Resolution::new(l, m, top, None)?;
        let wmax = res.gens.iter().flatten().map(|g| g.weight).max().unwrap_or(0);
        let u = Enveloping::new(l, (wmax + d_bound).max(0) as u32)?;
        let mut rev: Vec<Vec<Vec<RevTerm>>> =
            res.gens.iter().map(|lv| vec![Vec::new(); lv.len()]).collect();
        for q in 1..res.gens.len() {
            for (g, terms) in res.boundary[q].iter().enumerate() {
                for t in terms {
                    rev[q - 1][t.target].push((g, t.lie, t.coeff.clone()));
                }
            }
        }
        Ok(HomComplex { l, res, u, rev, ranks: HashMap::new(), fast_ranks: HashMap::new() })
    }

    fn field(&self) -> Field {
        self.l.field()
    }

    fn top(&self) -> usize {
        self.res.gens.len() - 1
    }

    fn min_d(&self, q: usize) -> i64 {
        -self.res.gens[q].iter().map(|g| g.weight).max().unwrap_or(0)
    }

    /// Offsets of each generator's block in `C^{q,d}` and the total dimension.
    fn layout(&self, q: usize, d: i64) -> (Vec<Option<usize>>, usize) {
        let mut offs = Vec::with_capacity(self.res.gens[q].len());
        let mut n = 0;
        for g in &self.res.gens[q] {
            let k = self.u.dim_in_degree(g.weight + d);
            if k == 0 {
                offs.push(None);
            } else {
                offs.push(Some(n));
                n += k;
            }
        }
        (offs, n)
    }

    fn local(&self, mono: usize) -> usize {
        mono - self.u.of_degree(self.u.degree(mono) as i64)[0]
    }

    /// Images of the basis of `C^{q,d}` under `δ: C^{q,d} -> C^{q+1,d}`.
    fn delta(&self, q: usize, d: i64) -> Vec<Vector> {
        let (offs, _) = self.layout(q, d);
        let (next, _) = if q < self.top() { self.layout(q + 1, d) } else { (Vec::new(), 0) };
        let mut out = Vec::new();
        for (h, gen) in self.res.gens[q].iter().enumerate() {
            if offs[h].is_none() {
                continue;
            }
            for &mono in self.u.of_degree(gen.weight + d) {
                let mut v = Vector::zero();
                if q < self.top() {
                    for (g, a, c) in &self.rev[q][h] {
                        let Some(base) = next[*g] else { continue };
                        match a {
                            None => v.add_at(base + self.local(mono), c),
                            Some(e) => {
                                let prod = self.u.left_mul(*e, mono).expect("enveloping algebra tabulated far enough");
                                for (m2, c2) in prod.iter() {
                                    v.add_at(base + self.local(m2), &(c * c2));
                                }
                            }
                        }
                    }
                }
                out.push(v);
            }
        }
        out
    }

    fn rank_delta(&mut self, q: usize, d: i64) -> usize {
        if let Some(r) = self.ranks.get(&(q, d)) {
            return *r;
        }
        let images = self.delta(q, d);
        let r = match self.field() {
            Field::Prime(p) => rank_mod_prime(&images, p).expect("prime field entries reduce"),
            Field::Rational => rank(Field::Rational, &images),
        };
        self.ranks.insert((q, d), r);
        r
    }

    /// A lower bound for the rank over the rationals, exact over `F_p`.
    fn rank_delta_fast(&mut self, q: usize, d: i64) -> usize {
        if let Some(r) = self.ranks.get(&(q, d)) {
            return *r;
        }
        if let Some(r) = self.fast_ranks.get(&(q, d)) {
            return *r;
        }
        let r = match self.field() {
            Field::Prime(_) => return self.rank_delta(q, d),
            Field::Rational => match rank_mod_prime(&self.delta(q, d), RANK_PRIME) {
                Some(r) => r,
                None => return self.rank_delta(q, d),
            },
        };
        self.fast_ranks.insert((q, d), r);
        r
    }

    /// `dim Ext^{q,d}`; needs `q < top`. Ranks mod a large prime are tried
    /// first: they can only be smaller, so when they already force zero the
    /// answer is exact.
    fn ext_dim(&mut self, q: usize, d: i64) -> usize {
        let (_, n) = self.layout(q, d);
        if n == 0 {
            return 0;
        }
        let below = if q == 0 { 0 } else { self.rank_delta_fast(q - 1, d) };
        if n == self.rank_delta_fast(q, d) + below {
            return 0;
        }
        let below = if q == 0 { 0 } else { self.rank_delta(q - 1, d) };
        n - self.rank_delta(q, d) - below
    }

    fn witness(&self, q: usize, d: i64) -> Option<Vector> {
        let (_, kernel) = rank_and_kernel(self.field(), &self.delta(q, d));
        let mut image = Rref::new(self.field());
        if q > 0 {
            for v in self.delta(q - 1, d) {
                image.insert(&v);
            }
        }
        kernel.into_iter().find(|v| !image.contains(v))
    }

    fn describe(&self, q: usize, d: i64, v: &Vector) -> Vec<(String, Vec<(String, Scalar)>)> {
        let (offs, _) = self.layout(q, d);
        let mut out = Vec::new();
        for (h, gen) in self.res.gens[q].iter().enumerate() {
            let Some(base) = offs[h] else { continue };
            let monos = self.u.of_degree(gen.weight + d);
            let vals: Vec<(String, Scalar)> = monos
                .iter()
                .enumerate()
                .filter_map(|(k, &mono)| v.get(base + k).map(|c| (self.u.name(mono).to_string(), c.clone())))
                .collect();
            if !vals.is_empty() {
                out.push((self.res.labels[q][h].clone(), vals));
            }
        }
        out
    }
}

/// Dimensions of `Ext^q_UL(M, UL)` at each scanned internal degree.
#[derive(Clone, Debug)]
pub struct ExtTable {
    pub field: Field,
    pub q_max: usize,
    pub d_bound: i64,
    /// `(q, d) -> dim`, listing every scanned bidegree.
    pub dims: BTreeMap<(usize, i64), usize>,
}

impl ExtTable {
    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, i64), usize)> + '_ {
        self.dims.iter().filter(|(_, n)| **n > 0).map(|(k, n)| (*k, *n))
    }

    pub fn total(&self, q: usize) -> usize {
        self.dims.range((q, i64::MIN)..=(q, i64::MAX)).map(|(_, n)| n).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.to_json(),
            "q_max": self.q_max,
            "d_bound": self.d_bound,
            "nonzero": self.nonzero().map(|((q, d), n)| json!({"q": q, "degree": d, "dim": n})).collect::<Vec<_>>(),
        })
    }
}

/// `Ext^q_UL(M, UL)` for `q <= q_max` and internal degrees `<= d_bound`.
pub fn ext_against_ul(
    l: &GradedLieAlgebra,
    m: &ModuleSpec,
    q_max: usize,
    d_bound: i64,
) -> Result<ExtTable, HomologyError> {
    if let Some(t) = l.truncation() {
        return Err(HomologyError::Truncated { truncation: t });
    }
    let mut dims = BTreeMap::new();
    match m {
        ModuleSpec::Free => {
            let u = Enveloping::new(l, d_bound.max(0) as u32)?;
            for q in 0..=q_max {
                for d in 0..=d_bound {
                    dims.insert((q, d), if q == 0 { u.dim_in_degree(d) } else { 0 });
                }
            }
        }
        ModuleSpec::Finite(m) => {
            let mut hc = HomComplex::new(l, m, q_max + 1, d_bound)?;
            for q in 0..=q_max {
                for d in hc.min_d(q)..=d_bound {
                    dims.insert((q, d), hc.ext_dim(q, d));
                }
            }
        }
    }
    Ok(ExtTable { field: l.field(), q_max, d_bound, dims })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradeValue {
    Exact(usize),
    /// No class found in the scanned region.
    AtLeast(usize),
    /// Truncated algebra: top homological degree with nonzero homology in
    /// the window. Not a certificate.
    UpperCandidate(usize),
}

impl GradeValue {
    pub fn to_json(&self) -> Value {
        match self {
            GradeValue::Exact(q) => json!(q),
            GradeValue::AtLeast(q) => json!({"at_least": q}),
            GradeValue::UpperCandidate(q) => json!({"at_most_candidate": q}),
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match self {
            GradeValue::Exact(q) => Some(*q),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub q: usize,
    pub degree: i64,
    /// Generator label of the resolution and its value in `UL`.
    pub cocycle: Vec<(String, Vec<(String, Scalar)>)>,
    /// Coordinates in the canonical basis of `C^{q,d}`.
    pub coords: Vector,
}

impl Witness {
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "degree": self.degree,
            "cocycle": self.cocycle.iter().map(|(g, vals)| json!({
                "generator": g,
                "value": vals.iter().map(|(m, c)| json!({"monomial": m, "coeff": c.to_string()})).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct DepthCertificate {
    pub grade: GradeValue,
    pub witness: Option<Witness>,
    /// Internal-degree ceiling scanned.
    pub search_bound: i64,
    /// Homological degrees scanned, with the lowest internal degree per `q`.
    pub scanned: Vec<(usize, i64)>,
    pub field: Field,
    pub caveat: Option<String>,
}

impl DepthCertificate {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "grade": self.grade.to_json(),
            "witness": self.witness.as_ref().map(Witness::to_json),
            "search_bound": self.search_bound,
            "scanned": self.scanned.iter().map(|(q, lo)| json!({"q": q, "d_from": lo, "d_to": self.search_bound})).collect::<Vec<_>>(),
            "field": self.field.to_json(),
        });
        if let Some(c) = &self.caveat {
            v["caveat"] = json!(c);
        }
        v
    }
}

/// Least `q` with `Ext^q_UL(M, UL) != 0` within the scanned region.
pub fn grade(
    l: &GradedLieAlgebra,
    m: &ModuleSpec,
    q_max: Option<usize>,
    d_bound: Option<i64>,
) -> Result<DepthCertificate, HomologyError> {
    let field = l.field();
    let q_max = q_max.unwrap_or_else(|| default_q_max(l));
    let d_bound = d_bound.unwrap_or_else(|| default_d_bound(l, m));
    let module = match m {
        ModuleSpec::Free => {
            let witness = Witness {
                q: 0,
                degree: 0,
                cocycle: vec![("1".to_string(), vec![("1".to_string(), field.one())])],
                coords: Vector::unit(0, field),
            };
            return Ok(DepthCertificate {
                grade: GradeValue::Exact(0),
                witness: Some(witness),
                search_bound: d_bound,
                scanned: vec![(0, 0)],
                field,
                caveat: None,
            });
        }
        ModuleSpec::Finite(m) => m,
    };
    if let Some(n) = l.truncation() {
        return truncated_candidate(l, module, q_max, n);
    }
    let mut scanned = Vec::new();
    for q in 0..=q_max {
        let mut hc = HomComplex::new(l, module, q + 1, d_bound)?;
        let lo = hc.min_d(q);
        scanned.push((q, lo));
        for d in lo..=d_bound {
            if hc.ext_dim(q, d) > 0 {
                let coords = hc.witness(q, d).expect("nonzero Ext has a representative");
                let cocycle = hc.describe(q, d, &coords);
                return Ok(DepthCertificate {
                    grade: GradeValue::Exact(q),
                    witness: Some(Witness { q, degree: d, cocycle, coords }),
                    search_bound: d_bound,
                    scanned,
                    field,
                    caveat: None,
                });
            }
        }
    }
    Ok(DepthCertificate {
        grade: GradeValue::AtLeast(q_max + 1),
        witness: None,
        search_bound: d_bound,
        scanned,
        field,
        caveat: Some("no class in the scanned region; the value is a lower bound".into()),
    })
}

fn truncated_candidate(
    l: &GradedLieAlgebra,
    m: &GradedModule,
    q_max: usize,
    n: u32,
) -> Result<DepthCertificate, HomologyError> {
    let cx = ce_chain_complex(l, m, q_max, n as i64)?;
    let table = homology_dims(&cx);
    let top = table.iter().filter(|(_, k)| **k > 0).map(|((q, _), _)| *q).max().unwrap_or(0);
    Ok(DepthCertificate {
        grade: GradeValue::UpperCandidate(top),
        witness: None,
        search_bound: n as i64,
        scanned: (0..=q_max).map(|q| (q, 0)).collect(),
        field: l.field(),
        caveat: Some(format!(
            "algebra known only through degree {n}: Ext against UL is not computed; \
             the value is the top q with H_q(L; M) != 0 in weights <= {n}, \
             a candidate upper bound, not a certificate"
        )),
    })
}

/// Grade of the trivial module.
pub fn depth(l: &GradedLieAlgebra, q_max: Option<usize>, d_bound: Option<i64>) -> Result<DepthCertificate, HomologyError> {
    grade(l, &ModuleSpec::trivial(l.field()), q_max, d_bound)
}

/// Re-checks that a witness is a cocycle and not a coboundary.
pub fn verify_witness(l: &GradedLieAlgebra, m: &ModuleSpec, w: &Witness) -> Result<bool, HomologyError> {
    let module = match m {
        ModuleSpec::Free => return Ok(w.q == 0 && w.degree == 0 && !w.coords.is_zero()),
        ModuleSpec::Finite(m) => m,
    };
    let hc = HomComplex::new(l, module, w.q + 1, w.degree.max(0))?;
    let (_, n) = hc.layout(w.q, w.degree);
    if w.coords.indices().any(|i| i >= n) || w.coords.is_zero() {
        return Ok(false);
    }
    let mut image = Vector::zero();
    for (i, c) in w.coords.iter() {
        image.add_scaled(c, &hc.delta(w.q, w.degree)[i]);
    }
    if !image.is_zero() {
        return Ok(false);
    }
    if w.q == 0 {
        return Ok(true);
    }
    let mut bd = Rref::new(l.field());
    for v in hc.delta(w.q - 1, w.degree) {
        bd.insert(&v);
    }
    Ok(!bd.contains(&w.coords))
}

/// Tor on the chain side: `UL^# ⊗_UL P` with `φ ⊗ g ↦ Σ φ·a ⊗ h`, where
/// `(φ·a)(v) = φ(a v)`. Returns `dim Tor_q` at each internal degree, to be
/// compared with Ext at the same bidegree.
pub fn tor_dual_dims(
    l: &GradedLieAlgebra,
    m: &GradedModule,
    q_max: usize,
    d_bound: i64,
) -> Result<BTreeMap<(usize, i64), usize>, HomologyError> {
    let hc = HomComplex::new(l, m, q_max + 1, d_bound)?;
    let f = l.field();
    // chain boundary T_{q+1,d} -> T_{q,d}, one image per dual basis vector
    let boundary = |q: usize, d: i64| -> Vec<Vector> {
        let (offs_hi, _) = hc.layout(q + 1, d);
        let (offs_lo, _) = hc.layout(q, d);
        let mut out = Vec::new();
        for (g, gen) in hc.res.gens[q + 1].iter().enumerate() {
            if offs_hi[g].is_none() {
                continue;
            }
            for &phi in hc.u.of_degree(gen.weight + d) {
                let mut v = Vector::zero();
                for t in &hc.res.boundary[q + 1][g] {
                    let Some(base) = offs_lo[t.target] else { continue };
                    let hdeg = hc.res.gens[q][t.target].weight + d;
                    for &w in hc.u.of_degree(hdeg) {
                        // coefficient of phi in a·w
                        let c = match t.lie {
                            None => (w == phi).then(|| f.one()),
                            Some(e) => hc.u.left_mul(e, w).and_then(|p| p.get(phi).cloned()),
                        };
                        if let Some(c) = c {
                            v.add_at(base + hc.local(w), &(&t.coeff * &c));
                        }
                    }
                }
                out.push(v);
            }
        }
        out
    };
    let mut out = BTreeMap::new();
    for q in 0..=q_max {
        for d in hc.min_d(q)..=d_bound {
            let (_, n) = hc.layout(q, d);
            if n == 0 {
                out.insert((q, d), 0);
                continue;
            }
            let r_in = rank(f, &boundary(q, d));
            let r_out = if q == 0 { 0 } else { rank(f, &boundary(q - 1, d)) };
            out.insert((q, d), n - r_in - r_out);
        }
    }
    Ok(out)
}

/// Grade, growth of `M` and the resulting bracket on polydepth.
#[derive(Clone, Debug)]
pub struct PolygradeReport {
    pub certificate: DepthCertificate,
    pub module_growth: GrowthReport,
    pub depth: DepthCertificate,
    pub ul_growth: GrowthReport,
    /// `(lower, upper)`; `None` for an unknown side.
    pub polydepth: (Option<u32>, Option<u32>),
    pub exact: bool,
    pub caveats: Vec<String>,
}

fn verdict_bound(v: &Verdict) -> Option<u32> {
    match v {
        Verdict::PolynomialLe(d) => Some(*d),
        _ => None,
    }
}

pub fn polygrade_report(
    l: &GradedLieAlgebra,
    m: &ModuleSpec,
    d_bound: Option<i64>,
    window: (usize, usize),
) -> Result<PolygradeReport, HomologyError> {
    let certificate = grade(l, m, None, d_bound)?;
    let depth_cert = if matches!(m, ModuleSpec::Finite(x) if x.dim() == 1 && x.top_degree() == 0) {
        certificate.clone()
    } else {
        depth(l, None, d_bound)?
    };
    let n_ul = match l.truncation() {
        Some(n) => n,
        None => window.1 as u32,
    };
    let ul_dims = pbw_series(&l.dims_through(n_ul)?)?;
    let hi = window.1.min(n_ul as usize);
    let ul_growth = polybd_estimate(&ul_dims, (window.0.min(hi), hi))?;
    // a finite module is known in every degree
    let module_dims = match m {
        ModuleSpec::Free => ul_dims.clone(),
        ModuleSpec::Finite(x) => DimensionSequence::from_degrees(
            window.1.max(x.top_degree() as usize),
            x.basis().iter().map(|b| (b.1 as usize, 1)),
        ),
    };
    let mhi = window.1.min(module_dims.truncation());
    let module_growth = polybd_estimate(&module_dims, (window.0.min(mhi), mhi))
        ?;

    let mut caveats = vec!["growth verdicts are window estimates".to_string()];
    caveats.extend(certificate.caveat.clone());
    let finite = l.is_complete();
    let depth_exact = depth_cert.grade.exact().map(|q| q as u32);
    let mut upper: Option<u32> = None;
    let mut take = |b: Option<u32>| {
        if let Some(b) = b {
            upper = Some(upper.map_or(b, |u: u32| u.min(b)));
        }
    };
    // (1): polydepth <= depth; (2): polydepth <= polybd UL
    take(depth_exact);
    take(verdict_bound(&ul_growth.verdict));
    if let (Some(g), Some(p)) = (certificate.grade.exact(), verdict_bound(&module_growth.verdict)) {
        take(Some(g as u32 + p));
    }
    let lower = if finite {
        depth_exact
    } else {
        // zero polydepth forces a finite odd-concentrated algebra
        Some(u32::from(l.even_dim() > 0))
    };
    let exact = finite && depth_exact.is_some();
    if !finite {
        caveats.push("upper bounds rest on window estimates; lower bound is the zero-polydepth criterion".into());
    }
    Ok(PolygradeReport {
        certificate,
        module_growth,
        depth: depth_cert,
        ul_growth,
        polydepth: (lower, upper),
        exact,
        caveats,
    })
}

impl PolygradeReport {
    pub fn polygrade(&self) -> Option<u32> {
        Some(self.certificate.grade.exact()? as u32 + verdict_bound(&self.module_growth.verdict)?)
    }

    pub fn to_json(&self) -> Value {
        let side = |x: Option<u32>| x.map_or(Value::Null, |v| json!(v.to_string()));
        json!({
            "grade": self.certificate.to_json(),
            "module_growth": self.module_growth.to_json(),
            "polygrade": self.polygrade().map(|p| p.to_string()),
            "depth": self.depth.to_json(),
            "ul_growth": self.ul_growth.to_json(),
            "polydepth": {"lower": side(self.polydepth.0), "upper": side(self.polydepth.1), "exact": self.exact},
            "caveats": self.caveats,
        })
    }
}
