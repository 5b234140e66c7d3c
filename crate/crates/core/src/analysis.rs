//! Per-instance checks of the structural results on depth, polydepth, growth
//! and solvability. Each check records its two sides and whether they are
//! exact or rest on a finite window.

use serde_json::{json, Value};

use crate::error::AnalysisError;
use crate::homology::{
    depth, grade, polygrade_report, DepthCertificate, GradeValue, GradedModule, ModuleSpec,
};
use crate::lie::{
    derived_series, e_of_l, orbit_dims, subalgebra_generated, GradedLieAlgebra, SeriesReport,
    SeriesVerdict, Subspace,
};
use crate::linalg::Vector;
use crate::series::{
    log2_bound_check, pbw_series, polybd_estimate, theorem5_window, DimensionSequence,
    GrowthReport, Verdict, WindowOutcome,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Exact,
    Window,
}

impl Provenance {
    fn as_str(self) -> &'static str {
        match self {
            Provenance::Exact => "exact",
            Provenance::Window => "window",
        }
    }
}

/// One inequality with both sides evaluated. `holds == None` means the check
/// could not be evaluated or does not apply (see the notes).
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub lhs: String,
    pub relation: &'static str,
    pub rhs: String,
    pub holds: Option<bool>,
    pub provenance: Provenance,
}

impl Check {
    fn new(
        name: &str,
        lhs: impl ToString,
        relation: &'static str,
        rhs: impl ToString,
        holds: Option<bool>,
        provenance: Provenance,
    ) -> Self {
        Check {
            name: name.to_string(),
            lhs: lhs.to_string(),
            relation,
            rhs: rhs.to_string(),
            holds,
            provenance,
        }
    }

    fn le(name: &str, lhs: u64, rhs: Option<u64>, provenance: Provenance) -> Self {
        match rhs {
            Some(r) => Check::new(name, lhs, "<=", r, Some(lhs <= r), provenance),
            None => Check::new(name, lhs, "<=", "unknown", None, provenance),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "lhs": self.lhs,
            "relation": self.relation,
            "rhs": self.rhs,
            "holds": self.holds,
            "provenance": self.provenance.as_str(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremVerdict {
    Holds,
    Violated,
    TruncationLimited,
}

impl TheoremVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremVerdict::Holds => "holds",
            TheoremVerdict::Violated => "violated",
            TheoremVerdict::TruncationLimited => "truncation-limited",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub theorem: String,
    pub instance: String,
    pub checks: Vec<Check>,
    pub verdict: TheoremVerdict,
    pub notes: Vec<String>,
    /// Present when an exact check fails: enough data to re-verify.
    pub counterexample: Option<Value>,
    pub details: Value,
}

impl TheoremReport {
    /// Violated if an exact check fails; holds if every evaluated check is
    /// exact and holds; truncation-limited otherwise. Exact checks that could
    /// not be evaluated are reported but do not decide the verdict.
    fn new(theorem: &str, instance: &str, checks: Vec<Check>, notes: Vec<String>, details: Value) -> Self {
        let violated = checks.iter().any(|c| c.provenance == Provenance::Exact && c.holds == Some(false));
        let windowed = checks.iter().any(|c| c.provenance == Provenance::Window);
        let verdict = if violated {
            TheoremVerdict::Violated
        } else if windowed || checks.iter().all(|c| c.holds.is_none()) {
            TheoremVerdict::TruncationLimited
        } else {
            TheoremVerdict::Holds
        };
        let counterexample = violated.then(|| {
            json!({
                "failed": checks.iter().filter(|c| c.provenance == Provenance::Exact && c.holds == Some(false))
                    .map(Check::to_json).collect::<Vec<_>>(),
                "details": details.clone(),
            })
        });
        TheoremReport {
            theorem: theorem.to_string(),
            instance: instance.to_string(),
            checks,
            verdict,
            notes,
            counterexample,
            details,
        }
    }

    pub fn is_exact_violation(&self) -> bool {
        self.verdict == TheoremVerdict::Violated
    }

    pub fn to_json(&self) -> Value {
        json!({
            "theorem": self.theorem,
            "instance": self.instance,
            "verdict": self.verdict.as_str(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "notes": self.notes,
            "counterexample": self.counterexample,
            "details": self.details,
        })
    }
}

fn verdict_bound(v: &Verdict) -> Option<u32> {
    match v {
        Verdict::PolynomialLe(d) => Some(*d),
        _ => None,
    }
}

fn describe(l: &GradedLieAlgebra) -> String {
    let mode = match l.truncation() {
        Some(n) => format!("truncated at {n}"),
        None => "finite-dimensional".to_string(),
    };
    format!("dim {} ({} even), {mode}, field {}", l.dim(), l.even_dim(), l.field())
}

/// Default growth window for a sequence known through `n`.
pub fn default_window(n: usize) -> (usize, usize) {
    ((n / 4).max(1), n)
}

/// `dim E(L) <= polydepth L`. For a finite-dimensional algebra the right side
/// is its depth; otherwise the upper end of the polydepth bracket.
pub fn check_theorem2(l: &GradedLieAlgebra, d_bound: Option<i64>) -> Result<TheoremReport, AnalysisError> {
    let e = e_of_l(l)?;
    let mut notes = Vec::new();
    let mut details = json!({ "E": e.to_json(l) });
    let check = if l.is_complete() {
        let cert = depth(l, None, d_bound)?;
        details["depth"] = cert.to_json();
        notes.push("finite-dimensional: polydepth equals depth".into());
        match cert.grade {
            GradeValue::Exact(q) => Check::le("dim E(L) <= depth", e.dim() as u64, Some(q as u64), Provenance::Exact),
            _ => {
                notes.push("depth not found inside the search bound".into());
                Check::le("dim E(L) <= depth", e.dim() as u64, None, Provenance::Window)
            }
        }
    } else {
        let n = l.truncation().unwrap_or(0) as usize;
        let report = polygrade_report(l, &ModuleSpec::trivial(l.field()), d_bound, default_window(n))?;
        details["polygrade"] = report.to_json();
        if e.truncation_limited {
            notes.push("some even elements could not be certified ad-nilpotent within the truncation".into());
        }
        let upper = report.polydepth.1.map(u64::from);
        if upper.is_none() {
            notes.push("no finite polydepth upper bound on this window".into());
        }
        Check::le("dim E(L) <= polydepth upper bound", e.dim() as u64, upper, Provenance::Window)
    };
    Ok(TheoremReport::new("theorem2", &describe(l), vec![check], notes, details))
}

/// How the derived series of a truncated algebra ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solvability {
    Certified(usize),
    /// Reached zero through brackets that were computable.
    WithinTruncation(usize),
    /// Reached zero only because the remaining brackets lie above the
    /// truncation, or stayed nonzero.
    NotWithinTruncation,
}

pub fn solvability(l: &GradedLieAlgebra) -> Result<(Solvability, SeriesReport), AnalysisError> {
    let series = derived_series(l, &Subspace::whole(l))?;
    let s = match series.verdict {
        SeriesVerdict::Certified(k) => Solvability::Certified(k),
        SeriesVerdict::Stabilized(_) => Solvability::NotWithinTruncation,
        SeriesVerdict::ZeroWithinTruncation(k) => {
            let n = l.truncation().unwrap_or(u32::MAX);
            let last = &series.terms[k - 1].space;
            let low = last.degrees().min().unwrap_or(n);
            if 2 * low <= n {
                Solvability::WithinTruncation(k)
            } else {
                Solvability::NotWithinTruncation
            }
        }
    };
    Ok((s, series))
}

/// Conditions on growth of `UL`, on `L_even` and the `C log2 n` bound, and
/// solvability, evaluated on the window and compared.
pub fn check_theorem3(l: &GradedLieAlgebra, n: Option<u32>) -> Result<TheoremReport, AnalysisError> {
    let n = l.truncation().or(n).unwrap_or(40);
    let dims = l.dims_through(n)?;
    let ul = pbw_series(&dims)?;
    let growth = polybd_estimate(&ul, default_window(n as usize))?;
    let ii = match growth.verdict {
        Verdict::PolynomialLe(_) => Some(true),
        Verdict::SuperpolynomialOnWindow => Some(false),
        Verdict::Inconclusive => None,
    };
    // even part: nothing even in the upper half of the window
    let even_top = (0..l.dim()).filter(|&i| !l.is_odd(i)).map(|i| l.degree(i)).max();
    let even_finite = l.is_complete() || even_top.is_none_or(|d| 2 * d <= n);
    let log2 = log2_bound_check(&dims)?;
    let iii = even_finite && log2.holds;
    let (solv, series) = solvability(l)?;
    let solvable = !matches!(solv, Solvability::NotWithinTruncation);
    let consistent = match ii {
        Some(ii) => ii == iii && (!ii || solvable),
        None => !iii || solvable,
    };
    let checks = vec![
        Check::new("(ii) UL grows polynomially", growth.verdict.to_json(), "is", "polynomial_le(d)", ii, Provenance::Window),
        Check::new("(iii) L_even finite and cumulative dims <= C log2 n", iii, "is", true, Some(iii), Provenance::Window),
        Check::new("solvable", format!("{solv:?}"), "is", "solvable", Some(solvable), Provenance::Window),
        Check::new("(ii) <=> (iii), both => solvable", consistent, "is", true, Some(consistent), Provenance::Window),
    ];
    let notes = vec![
        "all three conditions are evaluated on a finite window; a failed condition is an observation, not a violation".into(),
    ];
    let details = json!({
        "truncation": n,
        "ul_growth": growth.to_json(),
        "even_part_finite": even_finite,
        "log2": log2.to_json(),
        "derived_series": series.to_json(),
        "consistent": consistent,
    });
    Ok(TheoremReport::new("theorem3", &describe(l), checks, notes, details))
}

/// Flags a measured growth verdict against a claimed value.
pub fn discrepancy_vs_claim(report: &GrowthReport, claimed: u32) -> Value {
    let measured = verdict_bound(&report.verdict);
    json!({
        "claimed_polybd": claimed.to_string(),
        "measured_verdict": report.verdict.to_json(),
        "discrepancy": measured != Some(claimed),
        "window_limited": true,
    })
}

/// Window inequality `sum_{i=k+1}^{k+d} dim L_i >= k^r` for every `r`.
/// `solvable` records what is known about the hypothesis.
pub fn check_theorem5(
    lie_dims: &DimensionSequence,
    d: usize,
    rs: &[u32],
    solvable: Option<bool>,
) -> Result<TheoremReport, AnalysisError> {
    let mut notes = Vec::new();
    if lie_dims.top_degree().is_none() {
        notes.push("zero algebra: solvable, the statement is vacuous and the windows fail".into());
    } else if solvable == Some(true) {
        notes.push("the hypothesis excludes solvable algebras; failing windows are expected".into());
    }
    let mut checks = Vec::new();
    let mut table = Vec::new();
    for &r in rs {
        let w = theorem5_window(lie_dims, d, r)?;
        let (holds, k) = match w.outcome {
            WindowOutcome::Found { k0 } => (true, k0.to_string()),
            WindowOutcome::Failure { largest_violation, .. } => (false, format!("fails at k = {largest_violation}")),
        };
        checks.push(Check::new(&format!("k({r}) exists for d = {d}"), k, "within", format!("[1, {}]", w.k_range.1), Some(holds), Provenance::Window));
        table.push(w.to_json());
    }
    let single_d = checks.iter().all(|c| c.holds == Some(true));
    let details = json!({
        "d": d,
        "truncation": lie_dims.truncation(),
        "windows": table,
        "single_d_serves_all_r": single_d,
    });
    Ok(TheoremReport::new("theorem5", &format!("dims through {}", lie_dims.truncation()), checks, notes, details))
}

/// Direct sums: `n <= polydepth(⊕ L_i) <= Σ polydepth L_i`. Exact for
/// finite-dimensional components, where polydepth is depth and the sum side
/// is the grade of the tensor product of trivial modules.
pub fn check_prop4(components: &[GradedLieAlgebra], d_bound: Option<i64>) -> Result<TheoremReport, AnalysisError> {
    let (first, rest) = components
        .split_first()
        .ok_or_else(|| AnalysisError::Invalid("need at least one component".into()))?;
    let n = components.len() as u64;
    let field = first.field();
    let mut sum = first.clone();
    let mut module = GradedModule::trivial(field);
    for c in rest {
        let (s, m1, m2) = sum.direct_sum_with_maps(c)?;
        module = GradedModule::tensor(&module, &GradedModule::trivial(field), &s, &m1, &m2)?;
        sum = s;
    }
    let exact = components.iter().all(GradedLieAlgebra::is_complete);
    let mut notes = vec![
        "the lower bound assumes non-solvable components; finite-dimensional components are solvable".to_string(),
    ];
    let prov = if exact { Provenance::Exact } else { Provenance::Window };
    let mut parts = Vec::new();
    let mut part_values = Vec::new();
    for c in components {
        let value = if exact {
            depth(c, None, d_bound)?.grade.exact().map(|q| q as u64)
        } else {
            let w = default_window(c.truncation().unwrap_or(40) as usize);
            polygrade_report(c, &ModuleSpec::trivial(field), d_bound, w)?.polydepth.1.map(u64::from)
        };
        part_values.push(value);
        parts.push(json!(value.map(|v| v.to_string())));
    }
    let total: Option<u64> = part_values.iter().copied().sum();
    let (sum_value, sum_json) = if exact {
        let cert: DepthCertificate = grade(&sum, &ModuleSpec::Finite(module), None, d_bound)?;
        (cert.grade.exact().map(|q| q as u64), cert.to_json())
    } else {
        let w = default_window(sum.truncation().unwrap_or(40) as usize);
        let r = polygrade_report(&sum, &ModuleSpec::trivial(field), d_bound, w)?;
        (r.polydepth.1.map(u64::from), r.to_json())
    };
    let mut checks = Vec::new();
    match sum_value {
        Some(v) => {
            // a failing lower bound is outside the hypothesis, not a violation
            let lower_ok = n <= v;
            if !lower_ok {
                notes.push("lower bound not asserted: hypothesis not met".into());
            }
            checks.push(Check::new("n <= polydepth(sum)", n, "<=", v, lower_ok.then_some(true), prov));
            checks.push(Check::le("polydepth(sum) <= sum of polydepths", v, total, prov));
        }
        None => {
            notes.push("polydepth of the sum not determined".into());
            checks.push(Check::new("n <= polydepth(sum)", n, "<=", "unknown", None, prov));
        }
    }
    let details = json!({
        "components": parts,
        "sum_of_components": total.map(|t| t.to_string()),
        "polydepth_sum": sum_value.map(|v| v.to_string()),
        "bracket": [n.to_string(), total.map(|t| t.to_string())],
        "certificate": sum_json,
    });
    Ok(TheoremReport::new("prop4", &format!("{n} components"), checks, notes, details))
}

/// Input for [`check_prop1`].
#[derive(Clone, Debug)]
pub enum Prop1Input {
    /// (i): an ideal, checked against the whole algebra.
    Ideal(Subspace),
    /// (ii): a subalgebra and elements whose orbits are measured in `L / E`.
    Orbit { subalgebra: Subspace, elements: Vec<Vector>, through: u32 },
    /// (iii): the subalgebra generated by `L_{<= n}`.
    GeneratedBy(u32),
}

pub fn check_prop1(l: &GradedLieAlgebra, input: &Prop1Input, d_bound: Option<i64>) -> Result<TheoremReport, AnalysisError> {
    let exact = l.is_complete();
    let prov = if exact { Provenance::Exact } else { Provenance::Window };
    let whole_depth = |notes: &mut Vec<String>| -> Result<Option<u64>, AnalysisError> {
        if !exact {
            notes.push("algebra truncated: depths are not certified".into());
            return Ok(None);
        }
        Ok(depth(l, None, d_bound)?.grade.exact().map(|q| q as u64))
    };
    let mut notes = Vec::new();
    let (part, checks, details) = match input {
        Prop1Input::Ideal(ideal) => {
            let sub = ideal.to_algebra(l)?;
            let lhs = if exact { depth(&sub, None, d_bound)?.grade.exact().map(|q| q as u64) } else { None };
            let rhs = whole_depth(&mut notes)?;
            let c = match lhs {
                Some(v) => Check::le("polydepth I <= polydepth L", v, rhs, prov),
                None => Check::new("polydepth I <= polydepth L", "unknown", "<=", "unknown", None, prov),
            };
            ("i", vec![c], json!({ "ideal_dim": ideal.dim() }))
        }
        Prop1Input::Orbit { subalgebra, elements, through } => {
            let mut checks = Vec::new();
            let mut orbits = Vec::new();
            for x in elements {
                let dims = orbit_dims(l, subalgebra, x, *through, Some(subalgebra))?;
                let growth = polybd_estimate(&dims, default_window(*through as usize))?;
                let poly = matches!(growth.verdict, Verdict::PolynomialLe(_));
                let size: u64 = dims.to_u64_vec().iter().sum();
                checks.push(Check::new("orbit UE.x grows polynomially", growth.verdict.to_json(), "is", "polynomial_le(d)", Some(poly), Provenance::Window));
                orbits.push(json!({ "orbit_dims": dims.to_json(), "orbit_size": size.to_string(), "growth": growth.to_json() }));
            }
            let sub = subalgebra.to_algebra(l)?;
            if exact {
                let e_depth = depth(&sub, None, d_bound)?.grade.exact();
                notes.push(format!("conclusion: E has finite polydepth (depth {})", e_depth.map_or("unknown".into(), |q| q.to_string())));
            } else {
                notes.push("hypothesis tested on the given elements only".into());
            }
            ("ii", checks, json!({ "subalgebra_dim": subalgebra.dim(), "orbits": orbits }))
        }
        Prop1Input::GeneratedBy(n) => {
            let gens: Vec<Vector> = (0..l.dim()).filter(|&i| l.degree(i) <= *n).map(|i| Vector::unit(i, l.field())).collect();
            let closure = subalgebra_generated(l, &gens)?;
            let sub = closure.space.to_algebra(l)?;
            let lhs = if exact { depth(&sub, None, d_bound)?.grade.exact().map(|q| q as u64) } else { None };
            let rhs = whole_depth(&mut notes)?;
            let c = match lhs {
                Some(v) => Check::le("polydepth E <= polydepth L", v, rhs, prov),
                None => Check::new("polydepth E <= polydepth L", "unknown", "<=", "unknown", None, prov),
            };
            ("iii", vec![c], json!({ "generated_by_degree": n, "subalgebra_dim": closure.space.dim(), "closure_exact": closure.exact }))
        }
    };
    Ok(TheoremReport::new(&format!("prop1({part})"), &describe(l), checks, notes, details))
}
