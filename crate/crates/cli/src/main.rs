use std::fmt;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gla_core::analysis::{
    check_prop1, check_prop4, check_theorem2, check_theorem3, check_theorem5, discrepancy_vs_claim,
    solvability, Prop1Input, Solvability, TheoremReport,
};
use gla_core::error::{HomologyError, IoError};
use gla_core::field::{parse_field_str, Field};
use gla_core::homology::{depth, grade, polygrade_report, ModuleSpec};
use gla_core::io::{algebra_to_json, module_from_json, read_input, Input};
use gla_core::lie::{e_of_l, ideal_generated, GradedLieAlgebra};
use gla_core::linalg::Vector;
use gla_core::presentation::{builtin, free_lie, quotient, Builtin, Presentation, QuotientResult, BUILTIN_NAMES};
use gla_core::series::{
    free_lie_dims, inverse_pbw, log2_bound_check, pbw_series, polybd_estimate, theorem5_window, DimensionSequence,
};

mod format;

const MAX_DEGREE_VAR: &str = "GLA_MAX_DEGREE";
/// Degree through which growth of a finite-dimensional algebra is measured
/// when `--through` is absent.
const GROWTH_DEGREE: u32 = 40;

#[derive(Parser)]
#[command(name = "gla", version, about = "Exact computations for graded Lie algebras")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Md,
}

/// Where an algebra comes from and how to read it.
#[derive(Args, Clone)]
struct Source {
    /// Truncation degree. Required for builtins; lowers the truncation of a file input.
    #[arg(long)]
    truncate: Option<u32>,
    /// Coefficient field, `Q` or `Fp:p` with p an odd prime.
    #[arg(long, value_parser = parse_field_arg)]
    field: Option<Field>,
}

#[derive(Args, Clone, Copy)]
struct Bounds {
    /// Internal-degree bound for Ext scans.
    #[arg(long, allow_hyphen_values = true)]
    d_bound: Option<i64>,
    /// Highest homological degree scanned.
    #[arg(long)]
    q_max: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the axioms of an algebra (and optionally a module).
    Validate {
        input: String,
        #[arg(long)]
        module: Option<String>,
        #[command(flatten)]
        src: Source,
    },
    /// Dimension series through the PBW transform or its inverse.
    #[command(group(ArgGroup::new("dir").required(true).args(["pbw", "inverse_pbw"])))]
    Series {
        input: String,
        #[arg(long)]
        pbw: bool,
        #[arg(long)]
        inverse_pbw: bool,
        /// For a finite-dimensional algebra, report through this degree.
        #[arg(long)]
        through: Option<u32>,
        #[command(flatten)]
        src: Source,
    },
    /// Growth diagnostics on a window.
    #[command(group(ArgGroup::new("kind").required(true).args(["polybd", "log2", "thm5"])))]
    Growth {
        input: String,
        /// Polynomial growth bound of UL (or of a given sequence).
        #[arg(long)]
        polybd: bool,
        /// The `C log2 n` bound on cumulative dimensions.
        #[arg(long)]
        log2: bool,
        /// Sliding-window lower bound with width D and exponent R.
        #[arg(long, num_args = 2, value_names = ["D", "R"])]
        thm5: Option<Vec<u32>>,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        window: Option<Vec<usize>>,
        /// Measure the Lie algebra itself instead of its enveloping algebra.
        #[arg(long)]
        lie: bool,
        /// Compare the polybd verdict with this claimed exponent.
        #[arg(long)]
        claim: Option<u32>,
        #[arg(long)]
        through: Option<u32>,
        #[command(flatten)]
        src: Source,
    },
    /// Free graded Lie algebra, e.g. `--gens x:1,y:1` or `--gens 1,1`.
    Free {
        #[arg(long)]
        gens: String,
        #[arg(long)]
        truncate: u32,
        #[arg(long, value_parser = parse_field_arg)]
        field: Option<Field>,
        /// Only the dimension series, computed from the PBW inversion of the
        /// tensor algebra; no basis is built.
        #[arg(long)]
        dims_only: bool,
    },
    /// Quotient of a free algebra by a presentation.
    Quotient {
        input: String,
        #[command(flatten)]
        src: Source,
    },
    /// A builtin algebra or presentation.
    Example {
        name: String,
        #[arg(long)]
        truncate: u32,
        #[arg(long, value_parser = parse_field_arg)]
        field: Option<Field>,
    },
    /// Depth of UL, with a certificate.
    Depth {
        input: String,
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        src: Source,
    },
    /// Grade of a module: a file, or one of `trivial`, `free`, `adjoint`.
    Grade {
        input: String,
        #[arg(long)]
        module: String,
        /// Also report the polygrade bracket.
        #[arg(long)]
        polygrade: bool,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        window: Option<Vec<usize>>,
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        src: Source,
    },
    /// Evaluate one of the structural statements on the given input(s).
    Check {
        #[arg(long, value_parser = ["2", "3", "5", "p1", "p4"])]
        theorem: String,
        /// One input; `p4` takes the direct-sum components.
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Window width for `--theorem 5`.
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Exponents for `--theorem 5`.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        r: Vec<u32>,
        /// p1 (i): basis elements generating the ideal.
        #[arg(long, value_delimiter = ',')]
        ideal: Option<Vec<String>>,
        /// p1 (ii): elements whose orbits under E are measured.
        #[arg(long, value_delimiter = ',')]
        orbit: Option<Vec<String>>,
        /// p1 (iii): subalgebra generated by the degrees up to this bound.
        #[arg(long)]
        generated_by: Option<u32>,
        /// Degree window for statements evaluated on finite algebras.
        #[arg(long)]
        through: Option<u32>,
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        src: Source,
    },
}

fn parse_field_arg(s: &str) -> Result<Field, String> {
    parse_field_str(s).map_err(|e| e.to_string())
}

/// An error carrying its exit code.
#[derive(Debug)]
struct Exit {
    code: u8,
    message: String,
}

impl fmt::Display for Exit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for Exit {}

fn usage(message: impl Into<String>) -> anyhow::Error {
    Exit { code: 1, message: message.into() }.into()
}

fn malformed(message: impl Into<String>) -> anyhow::Error {
    Exit { code: 2, message: message.into() }.into()
}

fn exit_code(e: &anyhow::Error) -> u8 {
    for c in e.chain() {
        if let Some(x) = c.downcast_ref::<Exit>() {
            return x.code;
        }
        if c.is::<IoError>() || c.is::<serde_json::Error>() {
            return 2;
        }
        if let Some(HomologyError::BoundarySquaredNonzero { .. }) = c.downcast_ref::<HomologyError>() {
            return 3;
        }
    }
    1
}

/// A finished command: its report and exit code.
struct Outcome {
    result: Value,
    code: u8,
}

impl From<Value> for Outcome {
    fn from(result: Value) -> Self {
        Outcome { result, code: 0 }
    }
}

/// Resolved configuration echoed into every report.
struct Config {
    cap: Option<u32>,
    entries: serde_json::Map<String, Value>,
}

impl Config {
    fn new() -> Result<Self> {
        let cap = match std::env::var(MAX_DEGREE_VAR) {
            Ok(s) => Some(s.trim().parse::<u32>().map_err(|_| usage(format!("{MAX_DEGREE_VAR} must be a nonnegative integer, got `{s}`")))?),
            Err(_) => None,
        };
        let mut entries = serde_json::Map::new();
        entries.insert("max_degree_cap".into(), json!(cap));
        Ok(Config { cap, entries })
    }

    fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.entries.insert(key.to_string(), v.into());
    }

    /// Applies the degree cap to a requested truncation.
    fn capped(&mut self, n: u32) -> u32 {
        match self.cap {
            Some(c) if n > c => {
                self.set("truncation_requested", n);
                c
            }
            _ => n,
        }
    }
}

/// Unwraps reports produced by this tool so that their algebra can be fed
/// back in.
fn unwrap_report(v: Value) -> Value {
    let mut v = v;
    if let Some(r) = v.get("result").cloned() {
        v = r;
    }
    for key in ["algebra", "presentation", "dims"] {
        if let Some(x) = v.get(key) {
            if x.is_object() {
                return x.clone();
            }
        }
    }
    v
}

fn read_json(path: &str) -> Result<Value> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read `{path}`: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| malformed(format!("`{path}` is not valid JSON: {e}")))
}

fn load(name: &str, src: &Source, cfg: &mut Config) -> Result<Input> {
    let field = src.field;
    if BUILTIN_NAMES.contains(&name) && !Path::new(name).exists() {
        let n = src.truncate.ok_or_else(|| usage(format!("builtin `{name}` needs --truncate N")))?;
        let n = cfg.capped(n);
        let f = field.unwrap_or(Field::Rational);
        cfg.set("field", f.to_json());
        cfg.set("truncation", n);
        return Ok(match builtin(name, f, n)? {
            Builtin::Algebra(l) => Input::Algebra(l),
            Builtin::Presentation(p) => Input::Presentation(p),
        });
    }
    let mut v = unwrap_report(read_json(name)?);
    if let (Some(f), Some(obj)) = (field, v.as_object_mut()) {
        obj.insert("field".into(), f.to_json());
    }
    let input = read_input(&v).with_context(|| format!("reading `{name}`"))?;
    let input = match input {
        Input::Algebra(l) => {
            let current = l.truncation();
            let mut want = src.truncate.filter(|&n| current.is_none_or(|t| n < t));
            if let Some(t) = current.or(want) {
                let c = cfg.capped(t);
                if c < t {
                    want = Some(c);
                }
            }
            let l = match want {
                Some(n) if current.is_some() || n < l.top_degree() => l.restrict(n)?,
                _ => l,
            };
            cfg.set("field", l.field().to_json());
            cfg.set("truncation", json!(l.truncation()));
            Input::Algebra(l)
        }
        Input::Presentation(p) => {
            let n = cfg.capped(src.truncate.unwrap_or(p.truncation()));
            let p = if n != p.truncation() { p.with_truncation(n)? } else { p };
            cfg.set("field", p.field().to_json());
            cfg.set("truncation", p.truncation());
            Input::Presentation(p)
        }
        Input::Sequence(s) => {
            cfg.set("truncation", s.truncation());
            Input::Sequence(s)
        }
    };
    Ok(input)
}

fn load_algebra(name: &str, src: &Source, cfg: &mut Config) -> Result<GradedLieAlgebra> {
    match load(name, src, cfg)? {
        Input::Algebra(l) => Ok(l),
        Input::Presentation(p) => Ok(quotient(&p)?.algebra),
        Input::Sequence(_) => Err(malformed(format!("`{name}` is a dimension sequence; an algebra is needed"))),
    }
}

/// Lie dimensions of an input: through the truncation, or through `through`
/// (default: top degree) for a finite-dimensional algebra.
fn lie_dims(input: &Input, through: Option<u32>) -> Result<DimensionSequence> {
    Ok(match input {
        Input::Sequence(s) => s.clone(),
        Input::Algebra(l) => algebra_dims(l, through)?,
        Input::Presentation(p) => quotient(p)?.algebra.dims(),
    })
}

fn algebra_dims(l: &GradedLieAlgebra, through: Option<u32>) -> Result<DimensionSequence> {
    Ok(match (l.truncation(), through) {
        (None, Some(n)) => l.dims_through(n)?,
        _ => l.dims(),
    })
}

fn words_json(q: &QuotientResult, p: &Presentation) -> Value {
    let gens = p.generators();
    Value::Array(
        q.words
            .iter()
            .enumerate()
            .map(|(i, w)| json!({ "basis": q.algebra.name(i), "word": w.display(gens).to_string() }))
            .collect(),
    )
}

fn quotient_report(p: &Presentation) -> Result<Value> {
    let q = quotient(p)?;
    Ok(json!({
        "presentation": p.to_json(),
        "algebra": algebra_to_json(&q.algebra),
        "dims": q.algebra.dims().to_json(),
        "words": words_json(&q, p),
    }))
}

fn max_entry(s: &DimensionSequence) -> String {
    s.dims().iter().max().map_or("0".into(), |d| d.to_string())
}

fn window_of(w: &Option<Vec<usize>>, n: usize) -> (usize, usize) {
    match w {
        Some(v) => (v[0], v[1]),
        None => gla_core::analysis::default_window(n),
    }
}

fn parse_gens(spec: &str) -> Result<Vec<(String, u32)>> {
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .enumerate()
        .map(|(i, item)| {
            let (name, deg) = match item.split_once(':') {
                Some((n, d)) => (n.trim().to_string(), d),
                None => (format!("x{}", i + 1), item),
            };
            let d = deg.trim().parse::<u32>().map_err(|_| usage(format!("bad generator `{item}`; expected name:degree or degree")))?;
            Ok((name, d))
        })
        .collect()
}

fn basis_vectors(l: &GradedLieAlgebra, names: &[String]) -> Result<Vec<Vector>> {
    names.iter().map(|n| Ok(Vector::unit(l.index_of(n).map_err(|e| usage(e.to_string()))?, l.field()))).collect()
}

fn theorem_outcome(r: TheoremReport) -> Outcome {
    let code = if r.is_exact_violation() { 3 } else { 0 };
    Outcome { result: r.to_json(), code }
}

fn bounds_config(cfg: &mut Config, b: &Bounds) {
    cfg.set("d_bound", json!(b.d_bound.map(|d| d.to_string())));
    cfg.set("q_max", json!(b.q_max));
}

fn run(cmd: &Cmd, cfg: &mut Config) -> Result<(&'static str, Outcome)> {
    Ok(match cmd {
        Cmd::Validate { input, module, src } => {
            let loaded = load(input, src, cfg)?;
            let mut report = serde_json::Map::new();
            let mut code = 0;
            match &loaded {
                Input::Algebra(l) => {
                    let v = l.validate();
                    report.insert("kind".into(), json!("algebra"));
                    report.insert("dims".into(), l.dims().to_json());
                    report.insert("valid".into(), json!(v.is_empty()));
                    report.insert("violations".into(), Value::Array(v.iter().map(|x| x.to_json()).collect()));
                    if !v.is_empty() {
                        code = 2;
                    }
                    if let Some(m) = module {
                        let ok = load_module(m, l, src)
                            .map(|_| Value::Null)
                            .or_else(|e| if exit_code(&e) == 2 { Ok(json!(format!("{e:#}"))) } else { Err(e) })?;
                        report.insert("module_valid".into(), json!(ok.is_null()));
                        report.insert("module_error".into(), ok);
                        if !report["module_valid"].as_bool().unwrap_or(false) {
                            code = 2;
                        }
                    }
                }
                Input::Presentation(p) => {
                    report.insert("kind".into(), json!("presentation"));
                    report.insert("valid".into(), json!(true));
                    report.insert("relators".into(), json!(p.relators().len()));
                }
                Input::Sequence(s) => {
                    report.insert("kind".into(), json!("sequence"));
                    report.insert("valid".into(), json!(true));
                    report.insert("truncation".into(), json!(s.truncation()));
                }
            }
            ("validate", Outcome { result: Value::Object(report), code })
        }
        Cmd::Series { input, pbw, through, src, .. } => {
            let loaded = load(input, src, cfg)?;
            cfg.set("through", json!(through));
            let result = if *pbw {
                let lie = lie_dims(&loaded, *through)?;
                let ul = pbw_series(&lie)?;
                json!({ "direction": "pbw", "lie_dims": lie.to_json(), "ul_dims": ul.to_json(), "max_ul_dim": max_entry(&ul) })
            } else {
                match &loaded {
                    Input::Sequence(s) => {
                        let lie = inverse_pbw(s)?;
                        json!({ "direction": "inverse_pbw", "ul_dims": s.to_json(), "lie_dims": lie.to_json() })
                    }
                    other => {
                        let lie = lie_dims(other, *through)?;
                        let ul = pbw_series(&lie)?;
                        let back = inverse_pbw(&ul)?;
                        json!({
                            "direction": "inverse_pbw",
                            "ul_dims": ul.to_json(),
                            "lie_dims": back.to_json(),
                            "round_trip_exact": back == lie,
                        })
                    }
                }
            };
            ("series", result.into())
        }
        Cmd::Growth { input, polybd, log2, thm5, window, lie, claim, through, src } => {
            let loaded = load(input, src, cfg)?;
            let dims = lie_dims(&loaded, Some(through.unwrap_or(GROWTH_DEGREE)))?;
            let is_seq = matches!(loaded, Input::Sequence(_));
            let result = if *polybd {
                let (seq, of) = if is_seq || *lie { (dims.clone(), "input") } else { (pbw_series(&dims)?, "ul") };
                let w = window_of(window, seq.truncation());
                cfg.set("window", json!([w.0, w.1]));
                let g = polybd_estimate(&seq, w)?;
                let mut r = json!({ "measured": of, "growth": g.to_json() });
                if let Some(c) = claim {
                    r["claim"] = discrepancy_vs_claim(&g, *c);
                }
                r
            } else if *log2 {
                json!({ "log2": log2_bound_check(&dims)?.to_json() })
            } else {
                let t = thm5.as_deref().unwrap_or_default();
                let (d, r) = (t[0] as usize, t[1]);
                json!({ "thm5": theorem5_window(&dims, d, r)?.to_json() })
            };
            ("growth", result.into())
        }
        Cmd::Free { gens, truncate, field, dims_only } => {
            let f = field.unwrap_or(Field::Rational);
            let n = cfg.capped(*truncate);
            cfg.set("field", f.to_json());
            cfg.set("truncation", n);
            let gens = parse_gens(gens)?;
            if *dims_only {
                let degs: Vec<usize> = gens.iter().map(|g| g.1 as usize).collect();
                return Ok(("free", json!({ "dims": free_lie_dims(&degs, n as usize).to_json() }).into()));
            }
            let (basis, l) = free_lie(f, &gens, n)?;
            let words: Vec<Value> = basis
                .by_degree
                .iter()
                .flatten()
                .map(|w| json!(w.display(&basis.generators).to_string()))
                .collect();
            let result = json!({ "algebra": algebra_to_json(&l), "dims": basis.dims().to_json(), "words": words });
            ("free", result.into())
        }
        Cmd::Quotient { input, src } => match load(input, src, cfg)? {
            Input::Presentation(p) => ("quotient", quotient_report(&p)?.into()),
            _ => return Err(malformed(format!("`{input}` is not a presentation"))),
        },
        Cmd::Example { name, truncate, field } => {
            let f = field.unwrap_or(Field::Rational);
            let n = cfg.capped(*truncate);
            cfg.set("field", f.to_json());
            cfg.set("truncation", n);
            cfg.set("builtin", name.as_str());
            let result = match builtin(name, f, n).map_err(|e| usage(format!("{e}; known: {}", BUILTIN_NAMES.join(", "))))? {
                Builtin::Algebra(l) => json!({ "algebra": algebra_to_json(&l), "dims": l.dims().to_json() }),
                Builtin::Presentation(p) => quotient_report(&p)?,
            };
            ("example", result.into())
        }
        Cmd::Depth { input, bounds, src } => {
            let l = load_algebra(input, src, cfg)?;
            bounds_config(cfg, bounds);
            let cert = depth(&l, bounds.q_max, bounds.d_bound)?;
            let result = json!({ "certificate": cert.to_json(), "even_dim": l.even_dim() });
            ("depth", result.into())
        }
        Cmd::Grade { input, module, polygrade, window, bounds, src } => {
            let l = load_algebra(input, src, cfg)?;
            bounds_config(cfg, bounds);
            let m = load_module(module, &l, src)?;
            cfg.set("module", module.as_str());
            let result = if *polygrade {
                let n = l.truncation().unwrap_or(40) as usize;
                let w = window_of(window, n);
                cfg.set("window", json!([w.0, w.1]));
                polygrade_report(&l, &m, bounds.d_bound, w)?.to_json()
            } else {
                json!({ "certificate": grade(&l, &m, bounds.q_max, bounds.d_bound)?.to_json() })
            };
            ("grade", result.into())
        }
        Cmd::Check { theorem, inputs, d, r, ideal, orbit, generated_by, through, bounds, src } => {
            bounds_config(cfg, bounds);
            cfg.set("theorem", theorem.as_str());
            if theorem != "p4" && inputs.len() != 1 {
                return Err(usage(format!("theorem {theorem} takes exactly one input")));
            }
            let report = match theorem.as_str() {
                "2" => check_theorem2(&load_algebra(&inputs[0], src, cfg)?, bounds.d_bound)?,
                "3" => {
                    cfg.set("through", json!(through));
                    check_theorem3(&load_algebra(&inputs[0], src, cfg)?, *through)?
                }
                "5" => {
                    cfg.set("d", *d);
                    cfg.set("r", json!(r));
                    let loaded = load(&inputs[0], src, cfg)?;
                    let (dims, solvable) = match &loaded {
                        Input::Sequence(s) => (s.clone(), None),
                        other => {
                            let l = match other {
                                Input::Algebra(l) => l.clone(),
                                Input::Presentation(p) => quotient(p)?.algebra,
                                Input::Sequence(_) => unreachable!(),
                            };
                            let s = match solvability(&l)?.0 {
                                Solvability::Certified(_) => Some(true),
                                Solvability::WithinTruncation(_) => None,
                                Solvability::NotWithinTruncation => Some(false),
                            };
                            (algebra_dims(&l, Some(through.unwrap_or(GROWTH_DEGREE)))?, s)
                        }
                    };
                    check_theorem5(&dims, *d, r, solvable)?
                }
                "p1" => {
                    let l = load_algebra(&inputs[0], src, cfg)?;
                    let chosen = [ideal.is_some(), orbit.is_some(), generated_by.is_some()].iter().filter(|x| **x).count();
                    if chosen > 1 {
                        return Err(usage("choose one of --ideal, --orbit, --generated-by"));
                    }
                    let input = if let Some(names) = ideal {
                        cfg.set("ideal", json!(names));
                        Prop1Input::Ideal(ideal_generated(&l, &basis_vectors(&l, names)?)?.space)
                    } else if let Some(names) = orbit {
                        cfg.set("orbit", json!(names));
                        let through = l.truncation().or(*through).unwrap_or_else(|| l.top_degree());
                        Prop1Input::Orbit { subalgebra: e_of_l(&l)?.space, elements: basis_vectors(&l, names)?, through }
                    } else {
                        let n = generated_by.unwrap_or(1);
                        cfg.set("generated_by", n);
                        Prop1Input::GeneratedBy(n)
                    };
                    check_prop1(&l, &input, bounds.d_bound)?
                }
                _ => {
                    let comps = inputs.iter().map(|i| load_algebra(i, src, cfg)).collect::<Result<Vec<_>>>()?;
                    cfg.set("components", inputs.len());
                    check_prop4(&comps, bounds.d_bound)?
                }
            };
            ("check", theorem_outcome(report))
        }
    })
}

fn load_module(spec: &str, l: &GradedLieAlgebra, src: &Source) -> Result<ModuleSpec> {
    let mut v = match spec {
        "trivial" | "free" | "adjoint" if !Path::new(spec).exists() => json!({ "kind": spec }),
        path => read_json(path)?,
    };
    if let (Some(f), Some(obj)) = (src.field, v.as_object_mut()) {
        if obj.contains_key("field") {
            obj.insert("field".into(), f.to_json());
        }
    }
    module_from_json(&v, l).with_context(|| format!("reading module `{spec}`"))
}

fn render(v: &Value, f: Format) -> String {
    match f {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
            s.push('\n');
            s
        }
        Format::Tsv => format::tsv(v),
        Format::Md => format::markdown(v),
    }
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<()> {
    match output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = Config::new().and_then(|mut cfg| {
        let (command, outcome) = run(&cli.cmd, &mut cfg)?;
        let report = json!({
            "command": command,
            "version": env!("CARGO_PKG_VERSION"),
            "config": Value::Object(cfg.entries),
            "result": outcome.result,
        });
        emit(&render(&report, cli.format), &cli.output)?;
        Ok(outcome.code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
