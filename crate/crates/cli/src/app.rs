//! Command-line interface.
//!
//! Exit codes: 0 success, 1 a check or required flag failed, 2 usage error,
//! 3 input could not be read or parsed.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use homnorden_core::classify::{
    classify, format_bindings, render_report, ClassifyError, Flag, Instance, ParametricStructure, ReportFormat,
    Status,
};
use homnorden_core::curvature::{self, FlatTheorem};
use homnorden_core::discovery::{search_j, search_metric, Predicate, SearchError};
use homnorden_core::exactnum::{parse_bindings, Bindings};
use homnorden_core::geometry;
use homnorden_core::homalg::singular_phi_witness;
use homnorden_core::report::{format_vector, Check, ValidationReport};
use homnorden_core::{Matrix, Rational};
use serde_json::json;

use crate::corpus;
use crate::document;
use crate::render::{self, RenderError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Environment variable holding default `NAME=VALUE,...` overrides.
pub const BINDINGS_ENV: &str = "HOMNORDEN_BINDINGS";

#[derive(Parser, Debug)]
#[command(name = "homnorden", version, about = "Exact checks for Hom-Lie algebras with Norden structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Structure file, or the name of a bundled example
    file: String,
    /// Parameter value NAME=VALUE; repeatable, comma-separated lists accepted
    #[arg(long = "bind", value_name = "NAME=VALUE")]
    bind: Vec<String>,
    /// Print JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PredicateArg {
    Norden,
    Kahler,
    Holomorphic,
    Abelian,
}

impl From<PredicateArg> for Predicate {
    fn from(p: PredicateArg) -> Self {
        match p {
            PredicateArg::Norden => Predicate::Norden,
            PredicateArg::Kahler => Predicate::Kahler,
            PredicateArg::Holomorphic => Predicate::Holomorphic,
            PredicateArg::Abelian => Predicate::Abelian,
        }
    }
}

fn parse_flag(s: &str) -> Result<Flag, String> {
    Flag::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Flag::ALL.iter().map(|f| f.name()).collect();
        format!("unknown flag `{}` (expected one of {})", s, names.join(", "))
    })
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Hom-Lie axioms and the metric and complex structure axioms
    Validate(Input),
    /// Evaluate every structural flag
    Classify {
        #[command(flatten)]
        input: Input,
        /// Exit with status 1 unless FLAG passes; repeatable
        #[arg(long, value_name = "FLAG", value_parser = parse_flag)]
        require: Vec<Flag>,
    },
    /// Print the Levi-Civita connection
    Connection(Input),
    /// Print the curvature and check its identities
    Curvature(Input),
    /// Search signed-permutation complex structures, or diagonal metrics
    Discover {
        #[command(flatten)]
        input: Input,
        /// Condition the complex structure must meet; repeatable (default: norden)
        #[arg(long = "predicate", value_enum)]
        predicates: Vec<PredicateArg>,
        /// Search diagonal metrics with entries from this list instead
        #[arg(long, value_name = "VALUES", value_delimiter = ',', allow_hyphen_values = true)]
        metric_entries: Vec<String>,
    },
    /// Run the bundled examples against their frozen expectations
    Corpus {
        /// List the bundled examples
        #[arg(long, conflicts_with = "show")]
        list: bool,
        /// Print the file of one bundled example
        #[arg(long, value_name = "NAME")]
        show: Option<String>,
        /// Print JSON instead of text
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
    Check(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Input(_) => EXIT_INPUT,
            Failure::Check(_) => EXIT_CHECK,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Check(m) => m,
        }
    }
}

/// Output of a successful command: text for stdout and whether every
/// check held.
struct Outcome {
    text: String,
    ok: bool,
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code. `env_bindings` is the value of [`BINDINGS_ENV`].
pub fn run<I, T>(args: I, env_bindings: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e);
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e);
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, env_bindings) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.text.as_bytes());
            if outcome.ok {
                EXIT_OK
            } else {
                EXIT_CHECK
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn dispatch(command: Command, env: Option<&str>) -> Result<Outcome, Failure> {
    match command {
        Command::Validate(input) => validate(&input, env),
        Command::Classify { input, require } => classify_cmd(&input, &require, env),
        Command::Connection(input) => connection(&input, env),
        Command::Curvature(input) => curvature_cmd(&input, env),
        Command::Discover { input, predicates, metric_entries } => discover(&input, &predicates, &metric_entries, env),
        Command::Corpus { list, show, json } => corpus_cmd(list, show.as_deref(), json),
    }
}

fn load(file: &str) -> Result<ParametricStructure, Failure> {
    let path = Path::new(file);
    if !path.exists() {
        if let Some(text) = corpus::source(file) {
            return document::parse(text).map_err(|e| Failure::Input(format!("{}: {}", file, e)));
        }
    }
    document::load(path).map_err(|e| Failure::Input(format!("{}: {}", file, e)))
}

/// Overrides from the environment, then from `--bind`, checked against the
/// declared parameters. `None` when nothing was overridden.
fn overrides(s: &ParametricStructure, input: &Input, env: Option<&str>) -> Result<Option<Bindings>, Failure> {
    let mut merged = Bindings::new();
    let sources = env
        .filter(|e| !e.trim().is_empty())
        .map(|e| (BINDINGS_ENV.to_string(), e.to_string()))
        .into_iter()
        .chain(input.bind.iter().map(|b| ("--bind".to_string(), b.clone())));
    for (origin, text) in sources {
        let parsed = parse_bindings(&text).map_err(|e| Failure::Usage(format!("{} `{}`: {}", origin, text, e)))?;
        for (name, value) in parsed {
            if !s.parameters.contains_key(&name) {
                let declared: Vec<&str> = s.parameters.keys().map(String::as_str).collect();
                return Err(Failure::Usage(format!(
                    "{}: unknown parameter `{}` (declared: {})",
                    origin,
                    name,
                    if declared.is_empty() { "none".to_string() } else { declared.join(", ") }
                )));
            }
            merged.insert(name, value);
        }
    }
    Ok((!merged.is_empty()).then_some(merged))
}

fn defaults(s: &ParametricStructure) -> Result<Bindings, Failure> {
    s.default_bindings().map_err(|e| Failure::Input(format!("default parameters: {}", e)))
}

fn single_binding(s: &ParametricStructure, input: &Input, env: Option<&str>) -> Result<Bindings, Failure> {
    let mut b = defaults(s)?;
    if let Some(o) = overrides(s, input, env)? {
        b.extend(o);
    }
    Ok(b)
}

fn instantiate(s: &ParametricStructure, b: &Bindings) -> Result<Instance, Failure> {
    s.instantiate(b).map_err(|e| Failure::Input(format!("at binding {}: {}", format_bindings(b), e)))
}

fn setup(input: &Input, env: Option<&str>) -> Result<(ParametricStructure, Bindings, Instance), Failure> {
    let s = load(&input.file)?;
    let b = single_binding(&s, input, env)?;
    let inst = instantiate(&s, &b)?;
    Ok((s, b, inst))
}

fn header(s: &ParametricStructure, b: &Bindings) -> String {
    format!("structure: {}\nbinding: {}\n", s.name, format_bindings(b))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn validation_report(inst: &Instance) -> ValidationReport {
    let alg = &inst.algebra;
    let mut report = alg.validate();
    report.push(match singular_phi_witness(alg) {
        Some(w) => Check::fail("phi is invertible", vec![w]),
        None => Check::pass("phi is invertible"),
    });
    if let Some(g) = &inst.metric {
        report.extend(geometry::check_metric(alg, g));
    }
    if let Some(j) = &inst.j {
        report.extend(geometry::check_complex(alg, j));
    }
    report
}

fn validate(input: &Input, env: Option<&str>) -> Result<Outcome, Failure> {
    let (s, b, inst) = setup(input, env)?;
    let report = validation_report(&inst);
    let ok = report.passed();
    let text = if input.json {
        pretty(&json!({ "structure": s.name, "binding": b, "passed": ok, "report": report }))
    } else {
        format!("{}{}", header(&s, &b), render::report_text(&report))
    };
    Ok(Outcome { text, ok })
}

fn classify_cmd(input: &Input, require: &[Flag], env: Option<&str>) -> Result<Outcome, Failure> {
    let s = load(&input.file)?;
    let bindings = match overrides(&s, input, env)? {
        Some(o) => {
            let mut b = defaults(&s)?;
            b.extend(o);
            vec![b]
        }
        None => {
            let mut list = vec![defaults(&s)?];
            for b in s.default_grid() {
                if !list.contains(&b) {
                    list.push(b);
                }
            }
            list
        }
    };
    let c = classify(&s, &bindings).map_err(|e| match e {
        ClassifyError::Inconsistent { .. } => Failure::Check(e.to_string()),
        other => Failure::Input(other.to_string()),
    })?;
    let mut text = render_report(&c, if input.json { ReportFormat::Json } else { ReportFormat::Text });
    if input.json {
        text.push('\n');
    }
    let mut ok = true;
    for f in require {
        let st = c.status(*f);
        if st != Status::Pass {
            ok = false;
            if !input.json {
                text.push_str(&format!("required flag {} is {}\n", f, st.name()));
            }
        }
    }
    Ok(Outcome { text, ok })
}

fn render_failure(e: RenderError) -> Failure {
    match e {
        RenderError::NoMetric => Failure::Input("structure has no metric".into()),
        RenderError::Geometry(g) => Failure::Check(g.to_string()),
    }
}

fn connection(input: &Input, env: Option<&str>) -> Result<Outcome, Failure> {
    let (s, b, inst) = setup(input, env)?;
    let conn = render::connection(&inst).map_err(render_failure)?;
    let g = inst.metric.as_ref().expect("connection needs a metric");
    let mut report = ValidationReport::new();
    report.push(geometry::check_torsion_free(&inst.algebra, &conn));
    report.push(geometry::check_metric_compat(&inst.algebra, g, &conn));
    let ok = report.passed();
    let text = if input.json {
        pretty(&json!({
            "structure": s.name,
            "binding": b,
            "connection": render::connection_components(&conn),
            "report": report,
        }))
    } else {
        let mut t = header(&s, &b);
        for line in render::connection_table(&conn) {
            t.push_str(&line);
            t.push('\n');
        }
        t.push_str(&render::report_text(&report));
        t
    };
    Ok(Outcome { text, ok })
}

fn curvature_cmd(input: &Input, env: Option<&str>) -> Result<Outcome, Failure> {
    let (s, b, inst) = setup(input, env)?;
    let (conn, k) = render::curvature_of(&inst).map_err(render_failure)?;
    let alg = &inst.algebra;
    let g = inst.metric.as_ref().expect("curvature needs a metric");
    let mut notes = Vec::new();
    let kahler_j = inst.j.as_ref().filter(|j| match geometry::check_kahler(alg, g, j) {
        Ok(r) => r.passed(),
        Err(_) => false,
    });
    if inst.j.is_some() && kahler_j.is_none() {
        notes.push("identities involving phi∘J skipped: structure is not Kähler-Norden".to_string());
    }
    let mut report = curvature::check_curvature_identities(alg, kahler_j, &conn, &k);
    let defect = curvature::left_symmetric_defect(alg, &conn);
    report.push(curvature::check_defect_is_minus_curvature(&defect, &k));
    let mut info = ValidationReport::new();
    info.push(curvature::check_flat(&k).informational());
    info.push(curvature::check_left_symmetric(&defect).informational());
    if let Some(j) = &inst.j {
        match curvature::check_flat_theorem(alg, g, j) {
            FlatTheorem::Checked(r) => report.extend(r),
            FlatTheorem::NotApplicable { reason } => notes.push(format!("flatness criterion not applicable: {}", reason)),
        }
    }
    let ok = report.passed();
    for c in info.checks {
        if report.get(&c.name).is_none() {
            report.push(c);
        }
    }
    let text = if input.json {
        pretty(&json!({
            "structure": s.name,
            "binding": b,
            "curvature": render::curvature_components(&k),
            "report": report,
            "notes": notes,
        }))
    } else {
        let mut t = header(&s, &b);
        for line in render::curvature_table(&k) {
            t.push_str(&line);
            t.push('\n');
        }
        if k.is_zero() {
            t.push_str("curvature vanishes\n");
        }
        t.push_str(&render::report_text(&report));
        for n in &notes {
            t.push_str(&format!("note: {}\n", n));
        }
        t
    };
    Ok(Outcome { text, ok })
}

/// `e1 -> -e4, e2 -> -e3, ...`
fn images(m: &Matrix) -> String {
    (0..m.cols()).map(|j| format!("e{} -> {}", j + 1, format_vector(&m.column(j)))).collect::<Vec<_>>().join(", ")
}

fn search_failure(e: SearchError) -> Failure {
    match e {
        SearchError::DimensionGuard(_) => Failure::Usage(e.to_string()),
        _ => Failure::Check(e.to_string()),
    }
}

fn discover(input: &Input, predicates: &[PredicateArg], entries: &[String], env: Option<&str>) -> Result<Outcome, Failure> {
    let (s, b, inst) = setup(input, env)?;
    let alg = &inst.algebra;
    let mut t = header(&s, &b);
    if !entries.is_empty() {
        if !predicates.is_empty() {
            return Err(Failure::Usage("--predicate applies to complex structure search only".into()));
        }
        let values: Vec<Rational> = entries
            .iter()
            .map(|e| e.trim().parse::<Rational>().map_err(|err| Failure::Usage(format!("--metric-entries `{}`: {}", e, err))))
            .collect::<Result<_, _>>()?;
        let j = inst.j.as_ref().ok_or_else(|| Failure::Input("metric search needs a complex structure J".into()))?;
        let found = search_metric(alg, j, &values).map_err(search_failure)?;
        let diagonals: Vec<Vec<String>> = found
            .found
            .iter()
            .map(|g| (0..g.dim()).map(|i| g.matrix().get(i, i).to_string()).collect())
            .collect();
        if input.json {
            let text = pretty(&json!({ "structure": s.name, "binding": b, "examined": found.examined, "metrics": diagonals }));
            return Ok(Outcome { text, ok: true });
        }
        t.push_str(&format!("examined {} diagonal metrics, found {}\n", found.examined, found.found.len()));
        for d in &diagonals {
            t.push_str(&format!("g = diag({})\n", d.join(", ")));
        }
        return Ok(Outcome { text: t, ok: true });
    }
    let g = inst.metric.as_ref().ok_or_else(|| Failure::Input("complex structure search needs a metric".into()))?;
    let mut preds: Vec<Predicate> = predicates.iter().map(|&p| p.into()).collect();
    if preds.is_empty() {
        preds.push(Predicate::Norden);
    }
    preds.sort();
    preds.dedup();
    let found = search_j(alg, g, &preds).map_err(search_failure)?;
    let names: Vec<&str> = preds
        .iter()
        .map(|p| match p {
            Predicate::Norden => "norden",
            Predicate::Kahler => "kahler",
            Predicate::Holomorphic => "holomorphic",
            Predicate::Abelian => "abelian",
        })
        .collect();
    if input.json {
        let js: Vec<Vec<Vec<String>>> = found
            .found
            .iter()
            .map(|j| j.matrix().to_rows().into_iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect())
            .collect();
        let text = pretty(&json!({
            "structure": s.name,
            "binding": b,
            "predicates": names,
            "examined": found.examined,
            "J": js,
        }));
        return Ok(Outcome { text, ok: true });
    }
    t.push_str(&format!("predicates: {}\n", names.join(", ")));
    t.push_str(&format!("examined {} signed permutations, found {}\n", found.examined, found.found.len()));
    for j in &found.found {
        t.push_str(&format!("J: {}\n", images(j.matrix())));
    }
    Ok(Outcome { text: t, ok: true })
}

fn corpus_cmd(list: bool, show: Option<&str>, json_out: bool) -> Result<Outcome, Failure> {
    if list {
        let names: Vec<&str> = corpus::names().collect();
        let text = if json_out { pretty(&json!(names)) } else { names.iter().map(|n| format!("{}\n", n)).collect() };
        return Ok(Outcome { text, ok: true });
    }
    if let Some(name) = show {
        let text = corpus::source(name).ok_or_else(|| Failure::Usage(format!("no bundled example named `{}`", name)))?;
        return Ok(Outcome { text: text.to_string(), ok: true });
    }
    let outcomes = corpus::run_all().map_err(|e| Failure::Input(e.to_string()))?;
    let ok = outcomes.iter().all(|o| o.passed());
    if json_out {
        return Ok(Outcome { text: pretty(&json!({ "passed": ok, "entries": outcomes })), ok });
    }
    let mut t = String::new();
    for o in &outcomes {
        t.push_str(&format!(
            "{} {} ({} cases, {} expectations, {:.1} ms)\n",
            if o.passed() { "PASS" } else { "FAIL" },
            o.name,
            o.cases,
            o.checked,
            o.elapsed.as_secs_f64() * 1000.0
        ));
        if let Some(e) = &o.error {
            t.push_str(&format!("    error: {}\n", e));
        }
        for m in &o.mismatches {
            let origin = serde_json::to_value(m.origin).expect("serializable");
            t.push_str(&format!(
                "    at {}: {} [{}]: expected {}, got {}\n",
                m.binding,
                m.item,
                origin.as_str().unwrap_or_default(),
                m.expected,
                m.actual
            ));
        }
    }
    Ok(Outcome { text: t, ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str], env: Option<&str>) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["homnorden"];
        full.extend_from_slice(args);
        let code = run(full, env, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn help_and_version_exit_zero() {
        assert_eq!(run_args(&["--help"], None).0, EXIT_OK);
        assert_eq!(run_args(&["--version"], None).0, EXIT_OK);
        assert_eq!(run_args(&["classify", "--help"], None).0, EXIT_OK);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&[], None).0, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"], None).0, EXIT_USAGE);
        let (code, _, err) = run_args(&["classify", "abelian_4d", "--require", "shiny"], None);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("unknown flag"));
        assert_eq!(run_args(&["validate", "kahler_norden_4d", "--bind", "Z=1"], None).0, EXIT_USAGE);
        assert_eq!(run_args(&["validate", "kahler_norden_4d", "--bind", "A"], None).0, EXIT_USAGE);
    }

    #[test]
    fn env_bindings_are_overridden_by_flags() {
        let (_, out, _) = run_args(&["validate", "kahler_norden_4d"], Some("A=2,B=3"));
        assert!(out.contains("binding: {A=2, B=3}"), "{}", out);
        let (_, out, _) = run_args(&["validate", "kahler_norden_4d", "--bind", "B=5"], Some("A=2,B=3"));
        assert!(out.contains("binding: {A=2, B=5}"), "{}", out);
    }

    #[test]
    fn images_lists_columns() {
        let m = Matrix::from_i64_rows(&[&[0, -1], &[1, 0]]);
        assert_eq!(images(&m), "e1 -> e2, e2 -> -e1");
    }
}
