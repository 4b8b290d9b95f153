//! Command-line front end for the `amcodes` library: parameter tables,
//! generator-matrix export, verification suites, fiber censuses and code
//! comparisons.
//!
//! [`run`] is the whole program; `main` only wires it to the process.

pub mod export;
pub mod par;
pub mod text;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;

use amcodes::bounds::{self, CensusMode, DEFAULT_SCAN_CAP};
use amcodes::codes::{self, CodeKind, CodeParams, DistanceKind, DEFAULT_BUDGET};
use amcodes::sym::{self, SymComboClass};
use amcodes::Field;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use export::{fixed, Doc, ExperimentConfig, Format};
use verify::{Suite, VerifyOptions};

#[derive(Parser, Debug)]
#[command(name = "amcodes", version, about = "Evaluation codes from alternating-group invariants")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Field order, as `9` or `3^2`.
    #[arg(long)]
    q: String,
    /// Number of variables.
    #[arg(long)]
    m: usize,
    /// Defining polynomial coefficients, constant term first (e.g. `1,0,1`).
    #[arg(long)]
    modulus: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Worker threads (default: available cores). Never affects results.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct Limits {
    /// Largest exhaustive scan, in evaluations.
    #[arg(long, default_value_t = DEFAULT_SCAN_CAP)]
    cap: u128,
    /// Ignore the scan cap.
    #[arg(long)]
    force: bool,
}

impl Limits {
    fn effective(&self) -> u128 {
        if self.force {
            u128::MAX
        } else {
            self.cap
        }
    }

    fn options(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("cap".into(), json!(self.cap.to_string()));
        m.insert("force".into(), json!(self.force));
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Am,
    Dj,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Parameters and bounds of the A_m code, the Datta-Johnsen code and GRM(t = m).
    Params {
        #[command(flatten)]
        common: Common,
        /// Largest exact distance search, in coordinate evaluations.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[command(flatten)]
        limits: Limits,
    },
    /// Export a generator matrix.
    Build {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Run a verification suite; exit 1 if any check fails.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        suite: Suite,
        /// Sample count for sampled suites (or to sample the dependent family).
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        limits: Limits,
    },
    /// Fiber sizes of the Vandermonde map.
    Census {
        #[command(flatten)]
        common: Common,
        /// Scan all q^m tuples instead of the distinguished ones.
        #[arg(long)]
        all_tuples: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Classify a combination a0*sigma^0 + ... + am*sigma^m.
    Classify {
        #[command(flatten)]
        common: Common,
        /// Coefficients a0,...,am as element indices.
        #[arg(long)]
        coeffs: String,
    },
    /// Split an A_m-invariant polynomial as s1*v_m + s2.
    Decompose {
        #[command(flatten)]
        common: Common,
        /// Polynomial such as `x1^2*x2 + 3*x3`.
        #[arg(long)]
        poly: String,
    },
    /// Compare the codes over a list of q (`--q 9,11,13`).
    Compare {
        #[command(flatten)]
        common: Common,
    },
    /// Exact minimum distance by exhaustive search within a budget.
    Mindist {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
}

/// Invalid parameters or usage (exit 2).
struct Failure(String);

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure(s)
    }
}

/// Runs the program on `args` (including the program name) and returns the
/// exit code: 0 success, 1 failed verification, 2 invalid usage.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let (common, result) = dispatch(cli.cmd, err);
    let (doc, failed) = match result {
        Ok(r) => r,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    };
    let text = doc.render();
    if out.write_all(text.as_bytes()).is_err() {
        return 2;
    }
    if let Some(path) = &common.out {
        if let Err(e) = export::write_atomic(path, text.as_bytes()) {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return 2;
        }
    }
    i32::from(failed)
}

/// A document and whether any verification check failed (exit 1; the
/// report is still written).
type Outcome = Result<(Doc, bool), Failure>;

fn dispatch(cmd: Cmd, err: &mut dyn Write) -> (Common, Outcome) {
    match cmd {
        Cmd::Params { common, budget, limits } => {
            let r = jobs(&common, || params(&common, budget, &limits));
            (common, r)
        }
        Cmd::Build { common, kind } => {
            let r = build(&common, kind);
            (common, r)
        }
        Cmd::Verify { common, suite, samples, seed, limits } => {
            let r = jobs(&common, || verify_cmd(&common, suite, samples, seed, &limits));
            (common, r)
        }
        Cmd::Census { common, all_tuples, limits } => {
            let r = jobs(&common, || census(&common, all_tuples, &limits));
            (common, r)
        }
        Cmd::Classify { common, coeffs } => {
            let r = classify(&common, &coeffs);
            (common, r)
        }
        Cmd::Decompose { common, poly } => {
            let r = decompose(&common, &poly);
            (common, r)
        }
        Cmd::Compare { common } => {
            let r = compare(&common, err);
            (common, r)
        }
        Cmd::Mindist { common, kind, budget } => {
            let r = jobs(&common, || mindist(&common, kind, budget));
            (common, r)
        }
    }
}

fn jobs(common: &Common, f: impl FnOnce() -> Outcome + Send) -> Outcome {
    par::with_pool(common.jobs.unwrap_or_else(par::default_jobs), f)
}

fn config(command: &'static str, common: &Common, options: Map<String, Value>) -> ExperimentConfig {
    ExperimentConfig {
        command,
        q: Some(common.q.clone()),
        m: Some(common.m),
        modulus: common.modulus.clone(),
        options,
        format: common.format,
    }
}

fn field_of(common: &Common) -> Result<Field, String> {
    text::parse_field(&common.q, common.modulus.as_deref())
}

/// The field, after checking `q` odd (if asked) and `m <= q`.
fn setup(common: &Common, odd: bool, min_m: usize) -> Result<Field, String> {
    let field = field_of(common)?;
    let q = field.order();
    if odd && q % 2 == 0 {
        return Err(format!("q must be odd (got {q})"));
    }
    if common.m > q as usize {
        return Err(format!("m exceeds q ({} > {q})", common.m));
    }
    if common.m < min_m {
        return Err(format!("m must be at least {min_m} (got {})", common.m));
    }
    Ok(field)
}

fn distance_label(kind: DistanceKind) -> &'static str {
    match kind {
        DistanceKind::Exact => "exact",
        DistanceKind::LowerBound => "lower_bound",
    }
}

fn opt<T: ToString>(v: Option<T>) -> Value {
    v.map_or(Value::Null, |x| Value::String(x.to_string()))
}

const CODE_HEADER: [&str; 9] = ["kind", "q", "m", "n", "k", "d", "d_kind", "delta", "rho"];

fn code_row(doc: &mut Doc, kind: &str, m: usize, p: &CodeParams) {
    doc.row(
        &CODE_HEADER,
        vec![
            json!(kind),
            json!(p.q),
            json!(m),
            json!(p.n.to_string()),
            json!(p.k.to_string()),
            json!(p.d.to_string()),
            json!(distance_label(p.distance)),
            fixed(p.relative_distance()),
            fixed(p.rate()),
        ],
    );
}

const BOUND_HEADER: [&str; 15] = [
    "q",
    "m",
    "M",
    "d",
    "gcd_m",
    "weil_degree",
    "weil_lo",
    "weil_hi",
    "indep_bound",
    "dep_bound",
    "main_bound",
    "main_flag",
    "dist_bound",
    "max_fiber",
    "fibers_uniform",
];

fn params(common: &Common, budget: u128, limits: &Limits) -> Outcome {
    let field = setup(common, true, 2)?;
    let (q, m) = (field.order() as u64, common.m);
    let mut options = limits.options();
    options.insert("budget".into(), json!(budget.to_string()));
    let mut doc = Doc::new(&config("params", common, options));

    let am = codes::build_am_code(&field, m).map_err(|e| e.to_string())?;
    let dj = codes::build_dj_code(&field, m).map_err(|e| e.to_string())?;
    let am_d = par::min_distance(&am, budget).map_err(|e| e.to_string())?;
    let dj_d = par::min_distance(&dj, budget).map_err(|e| e.to_string())?;
    doc.header(&CODE_HEADER);
    code_row(&mut doc, "am", m, &am_d.params);
    code_row(&mut doc, "dj", m, &dj_d.params);
    if (m as u64) < q {
        let grm = codes::grm_params(q, m as u64, m as u64).map_err(|e| e.to_string())?;
        code_row(&mut doc, "grm", m, &grm);
    }

    let mut report = bounds::bound_report(q, m as u64);
    if bounds::census_size(q, m as u64, CensusMode::Distinguished).is_some_and(|s| s <= limits.effective()) {
        let c = par::fiber_census(&field, m, CensusMode::Distinguished, limits.effective())
            .map_err(|e| e.to_string())?;
        report.max_fiber = Some(c.max_nonzero());
        report.fibers_uniform = Some(c.is_uniform());
    }
    if am_d.params.distance == DistanceKind::Exact {
        report.min_weight = Some(am_d.params.d);
    }
    doc.header(&BOUND_HEADER);
    doc.row(
        &BOUND_HEADER,
        vec![
            json!(report.q),
            json!(report.m),
            json!(report.pairs),
            json!(report.d),
            json!(report.gcd_m),
            json!(report.weil_degree),
            json!(report.weil_lo),
            json!(report.weil_hi),
            opt(report.indep_bound),
            opt(report.dep_bound),
            opt(report.main_bound),
            json!(report.main_flag),
            opt(report.dist_bound),
            opt(report.max_fiber),
            report.fibers_uniform.map_or(Value::Null, Value::Bool),
        ],
    );
    if let Some(w) = report.min_weight {
        doc.note(&format!("measured minimum distance of the am code: {w}"));
    }
    Ok((doc, false))
}

fn build_code(field: &Field, m: usize, kind: Kind) -> Result<codes::EvalCode, String> {
    match kind {
        Kind::Am => codes::build_am_code(field, m),
        Kind::Dj => codes::build_dj_code(field, m),
    }
    .map_err(|e| e.to_string())
}

fn kind_options(kind: Kind) -> Map<String, Value> {
    let mut o = Map::new();
    o.insert("kind".into(), json!(kind_label(kind)));
    o
}

fn kind_label(kind: Kind) -> &'static str {
    match kind {
        Kind::Am => CodeKind::Am.label(),
        Kind::Dj => CodeKind::DattaJohnsen.label(),
    }
}

fn build(common: &Common, kind: Kind) -> Outcome {
    let field = setup(common, kind == Kind::Am, if kind == Kind::Am { 2 } else { 1 })?;
    let code = build_code(&field, common.m, kind)?;
    let mut doc = Doc::new(&config("build", common, kind_options(kind)));
    let (q, m, n, k) = (field.order(), common.m, code.n(), code.k());
    match doc.format() {
        Format::Csv => {
            doc.csv(["q", "m", "kind", "n", "k"]);
            doc.csv([q.to_string(), m.to_string(), kind_label(kind).to_string(), n.to_string(), k.to_string()]);
            for row in code.generator() {
                doc.csv(row.iter().map(|x| x.index()));
            }
        }
        Format::Json => {
            doc.record(json!({ "q": q, "m": m, "kind": kind_label(kind), "n": n, "k": k }));
            for (i, row) in code.generator().iter().enumerate() {
                let vals: Vec<u32> = row.iter().map(|x| x.index()).collect();
                doc.record(json!({ "row": i, "values": vals }));
            }
        }
    }
    Ok((doc, false))
}

fn verify_cmd(common: &Common, suite: Suite, samples: Option<u64>, seed: u64, limits: &Limits) -> Outcome {
    let field = field_of(common)?;
    if common.m > field.order() as usize {
        return Err(format!("m exceeds q ({} > {})", common.m, field.order()).into());
    }
    let mut options = limits.options();
    options.insert("suite".into(), json!(suite.name()));
    options.insert("samples".into(), json!(samples));
    options.insert("seed".into(), json!(seed));
    let mut doc = Doc::new(&config("verify", common, options));
    let opts = VerifyOptions { samples, seed, cap: limits.effective() };
    let checks = verify::run_suite(suite, &field, common.m, &opts)?;
    let header = ["result", "suite", "check", "detail"];
    doc.header(&header);
    let mut failed = false;
    for c in &checks {
        failed |= !c.pass;
        let result = if c.pass { "PASS" } else { "FAIL" };
        doc.row(&header, vec![json!(result), json!(suite.name()), json!(c.name), json!(c.detail)]);
    }
    Ok((doc, failed))
}

fn census(common: &Common, all_tuples: bool, limits: &Limits) -> Outcome {
    let field = setup(common, false, 1)?;
    let (q, m) = (field.order() as u64, common.m as u64);
    let mode = if all_tuples { CensusMode::AllTuples } else { CensusMode::Distinguished };
    let mut options = limits.options();
    options.insert("all_tuples".into(), json!(all_tuples));
    let mut doc = Doc::new(&config("census", common, options));
    let c = par::fiber_census(&field, common.m, mode, limits.effective()).map_err(|e| e.to_string())?;
    let header = ["lambda", "size"];
    doc.header(&header);
    for (lambda, size) in c.fibers.iter().enumerate() {
        doc.row(&header, vec![json!(lambda), json!(size.to_string())]);
    }
    let summary = [
        ("scanned", c.scanned.to_string()),
        ("nonzero_total", c.nonzero_total().to_string()),
        ("max_fiber", c.max_nonzero().to_string()),
        ("min_fiber", c.min_nonzero().to_string()),
        ("fibers_uniform", c.is_uniform().to_string()),
        ("gcd", bounds::pair_gcd(q, m).to_string()),
        ("fiber_bound", opt(bounds::fiber_bound(q, m)).as_str().unwrap_or("").to_string()),
    ];
    match doc.format() {
        Format::Csv => {
            for (k, v) in summary {
                doc.note(&format!("{k} = {v}"));
            }
        }
        Format::Json => {
            let obj: Map<String, Value> = summary.into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            doc.record(json!({ "summary": obj }));
        }
    }
    Ok((doc, false))
}

fn classify(common: &Common, coeffs: &str) -> Outcome {
    let field = setup(common, false, 1)?;
    let s = text::parse_sym_combo(&field, common.m, coeffs)?;
    let mut options = Map::new();
    options.insert("coeffs".into(), json!(coeffs));
    let mut doc = Doc::new(&config("classify", common, options));
    let (class, a, alpha) = match sym::classify_sym_combo(&s) {
        SymComboClass::Type1 => ("type1", None, None),
        SymComboClass::Type2 { a, alpha } => ("type2", Some(a.index()), Some(alpha.index())),
        SymComboClass::Degenerate => ("degenerate", None, None),
    };
    let header = ["coeffs", "class", "a", "alpha", "poly"];
    doc.header(&header);
    let idx: Vec<u32> = s.coeffs().iter().map(|x| x.index()).collect();
    doc.row(&header, vec![json!(idx), json!(class), opt(a), opt(alpha), json!(s.to_poly().to_string())]);
    Ok((doc, false))
}

fn decompose(common: &Common, poly: &str) -> Outcome {
    let field = setup(common, true, 2)?;
    let g = text::parse_poly(&field, common.m, poly)?;
    let pair = sym::decompose_am_invariant(&g).map_err(|e| e.to_string())?;
    let mut options = Map::new();
    options.insert("poly".into(), json!(poly));
    let mut doc = Doc::new(&config("decompose", common, options));
    let header = ["part", "poly"];
    doc.header(&header);
    doc.row(&header, vec![json!("s1"), json!(pair.s1.to_string())]);
    doc.row(&header, vec![json!("s2"), json!(pair.s2.to_string())]);
    Ok((doc, false))
}

const COMPARE_HEADER: [&str; 17] = [
    "q",
    "m",
    "n_C",
    "k_C",
    "d_C",
    "n_DJ",
    "k_DJ",
    "d_DJ",
    "n_RM",
    "k_RM",
    "d_RM",
    "delta_C",
    "delta_DJ",
    "rho_C",
    "rho_RM",
    "delta_C/delta_DJ",
    "rho_C/rho_RM",
];

fn compare(common: &Common, err: &mut dyn Write) -> Outcome {
    let qs: Vec<&str> = common.q.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if qs.is_empty() {
        return Err("empty q list".to_string().into());
    }
    let mut doc = Doc::new(&config("compare", common, Map::new()));
    doc.header(&COMPARE_HEADER);
    let m = common.m as u64;
    let mut ratios = Vec::new();
    for spec in qs {
        let q = match text::parse_order(spec).and_then(|(p, e)| p.checked_pow(e).ok_or_else(|| "overflow".into())) {
            Ok(q) => q as u64,
            Err(e) => {
                let _ = writeln!(err, "warning: skipping q = {spec}: {e}");
                continue;
            }
        };
        let c = match bounds::compare_codes(q, m) {
            Ok(c) if m < q => c,
            Ok(_) => {
                let _ = writeln!(err, "warning: skipping q = {q}: GRM(t = m) needs m < q");
                continue;
            }
            Err(e) => {
                let _ = writeln!(err, "warning: skipping q = {q}: {e}");
                continue;
            }
        };
        ratios.push(c.delta_ratio);
        let s = |x: u128| json!(x.to_string());
        doc.row(
            &COMPARE_HEADER,
            vec![
                json!(q),
                json!(m),
                s(c.am.params.n),
                s(c.am.params.k),
                s(c.am.params.d),
                s(c.dj.params.n),
                s(c.dj.params.k),
                s(c.dj.params.d),
                s(c.grm.params.n),
                s(c.grm.params.k),
                s(c.grm.params.d),
                fixed(c.am.delta),
                fixed(c.dj.delta),
                fixed(c.am.rho),
                fixed(c.grm.rho),
                fixed(c.delta_ratio),
                fixed(c.rho_ratio),
            ],
        );
    }
    if ratios.len() > 1 {
        doc.note(&format!("delta_C/delta_DJ moves toward 1: {}", bounds::approaches(&ratios, 1.0)));
    }
    Ok((doc, false))
}

fn mindist(common: &Common, kind: Kind, budget: u128) -> Outcome {
    let field = setup(common, kind == Kind::Am, if kind == Kind::Am { 2 } else { 1 })?;
    let code = build_code(&field, common.m, kind)?;
    let mut options = kind_options(kind);
    options.insert("budget".into(), json!(budget.to_string()));
    let mut doc = Doc::new(&config("mindist", common, options));
    let md = par::min_distance(&code, budget).map_err(|e| e.to_string())?;
    let header = ["kind", "q", "m", "n", "k", "d", "d_kind", "classes", "witness", "codeword"];
    let (witness, word) = match &md.witness {
        Some(w) => {
            let cw = codes::encode(&code, w).map_err(|e| e.to_string())?;
            (
                json!(w.iter().map(|x| x.index()).collect::<Vec<_>>()),
                json!(cw.iter().map(|x| x.index()).collect::<Vec<_>>()),
            )
        }
        None => (Value::Null, Value::Null),
    };
    doc.header(&header);
    doc.row(
        &header,
        vec![
            json!(kind_label(kind)),
            json!(field.order()),
            json!(common.m),
            json!(code.n()),
            json!(code.k()),
            json!(md.params.d.to_string()),
            json!(distance_label(md.params.distance)),
            json!(md.classes),
            witness,
            word,
        ],
    );
    Ok((doc, false))
}
