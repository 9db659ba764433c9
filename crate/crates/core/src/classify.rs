//! Classification certificates for parametric structures.
//!
//! A [`ParametricStructure`] holds expression-valued entries. It is
//! instantiated at one or more parameter bindings and every flag is
//! evaluated at each binding; a flag passes only if it passes everywhere.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::curvature;
use crate::exactnum::{eval_expr, Bindings, ExprError, ParamExpr, Rational};
use crate::geometry::{self, ComplexStructure, GeometryError, Metric};
use crate::homalg::{self, HomLieAlgebra, StructureError};
use crate::linalg::{self, Matrix};
use crate::report::{Check, ValidationReport, Witness};

/// Values tried for each parameter when no bindings are given.
pub const DEFAULT_GRID: [i64; 5] = [1, 2, 3, 5, 7];

/// Number of bindings in the default grid.
pub const GRID_POINTS: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketExpr {
    /// 0-based basis indices.
    pub i: usize,
    pub j: usize,
    /// `(k, coefficient)` pairs, `k` 0-based; unlisted coefficients are zero.
    pub coefficients: Vec<(usize, ParamExpr)>,
}

pub type MatrixExpr = Vec<Vec<ParamExpr>>;

/// Structure data with expression entries, as read from an input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricStructure {
    pub name: String,
    pub dimension: usize,
    /// Declared parameters with their default values.
    pub parameters: BTreeMap<String, ParamExpr>,
    pub brackets: Vec<BracketExpr>,
    pub phi: MatrixExpr,
    pub metric: Option<MatrixExpr>,
    pub j: Option<MatrixExpr>,
}

/// A structure with all parameters substituted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub algebra: HomLieAlgebra,
    pub metric: Option<Metric>,
    pub j: Option<ComplexStructure>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstantiationError {
    #[error("{location}: {source}")]
    Expr { location: String, source: ExprError },
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn lit_matrix(m: &Matrix) -> MatrixExpr {
    m.to_rows().into_iter().map(|r| r.into_iter().map(ParamExpr::Lit).collect()).collect()
}

impl ParametricStructure {
    /// Wraps concrete data as a structure with no parameters.
    pub fn from_instance(name: &str, instance: &Instance) -> Self {
        let alg = &instance.algebra;
        let n = alg.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let coefficients: Vec<(usize, ParamExpr)> = alg
                    .basis_bracket(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, ParamExpr::Lit(c.clone())))
                    .collect();
                if !coefficients.is_empty() {
                    brackets.push(BracketExpr { i, j, coefficients });
                }
            }
        }
        ParametricStructure {
            name: name.to_string(),
            dimension: n,
            parameters: BTreeMap::new(),
            brackets,
            phi: lit_matrix(alg.phi()),
            metric: instance.metric.as_ref().map(|g| lit_matrix(g.matrix())),
            j: instance.j.as_ref().map(|j| lit_matrix(j.matrix())),
        }
    }

    fn entries(&self) -> impl Iterator<Item = &ParamExpr> {
        let matrices = core::iter::once(&self.phi).chain(self.metric.iter()).chain(self.j.iter());
        self.brackets
            .iter()
            .flat_map(|b| b.coefficients.iter().map(|(_, e)| e))
            .chain(matrices.flat_map(|m| m.iter().flatten()))
    }

    /// Declared parameters together with any name referenced by an entry.
    pub fn parameter_names(&self) -> BTreeSet<String> {
        let mut names: BTreeSet<String> = self.parameters.keys().cloned().collect();
        for e in self.entries() {
            names.extend(e.parameters());
        }
        names
    }

    pub fn is_parametric(&self) -> bool {
        !self.parameter_names().is_empty()
    }

    /// Default bindings, evaluated in declaration order so that a default
    /// may refer to parameters declared earlier (alphabetically).
    pub fn default_bindings(&self) -> Result<Bindings, InstantiationError> {
        let mut out = Bindings::new();
        for (name, expr) in &self.parameters {
            let v = eval_expr(expr, &out)
                .map_err(|source| InstantiationError::Expr { location: format!("parameters/{}", name), source })?;
            out.insert(name.clone(), v);
        }
        Ok(out)
    }

    fn eval_matrix(&self, m: &MatrixExpr, label: &str, b: &Bindings) -> Result<Matrix, InstantiationError> {
        let rows = m
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(|(c, e)| {
                        eval_expr(e, b).map_err(|source| InstantiationError::Expr {
                            location: format!("{}/{}/{}", label, r, c),
                            source,
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::from_rows(rows).map_err(|_| {
            GeometryError::NotSquare { rows: m.len(), cols: m.first().map_or(0, Vec::len) }.into()
        })
    }

    pub fn instantiate(&self, bindings: &Bindings) -> Result<Instance, InstantiationError> {
        let n = self.dimension;
        let mut brackets = Vec::with_capacity(self.brackets.len());
        for (index, b) in self.brackets.iter().enumerate() {
            let mut coeffs = linalg::zero_vector(n);
            for (k, e) in &b.coefficients {
                if *k >= n {
                    return Err(StructureError::IndexOutOfRange { index: *k, dim: n }.into());
                }
                coeffs[*k] = eval_expr(e, bindings).map_err(|source| InstantiationError::Expr {
                    location: format!("brackets/{}/coefficients/{}", index, k + 1),
                    source,
                })?;
            }
            brackets.push((b.i, b.j, coeffs));
        }
        let phi = self.eval_matrix(&self.phi, "phi", bindings)?;
        let algebra = HomLieAlgebra::new(n, brackets, phi)?;
        let metric = match &self.metric {
            Some(m) => Some(Metric::new(self.eval_matrix(m, "metric", bindings)?)?),
            None => None,
        };
        let j = match &self.j {
            Some(m) => Some(ComplexStructure::new(self.eval_matrix(m, "J", bindings)?)?),
            None => None,
        };
        for found in metric.iter().map(Metric::dim).chain(j.iter().map(ComplexStructure::dim)) {
            if found != n {
                return Err(GeometryError::Dimension { expected: n, found }.into());
            }
        }
        Ok(Instance { algebra, metric, j })
    }

    /// Up to [`GRID_POINTS`] bindings drawn from [`DEFAULT_GRID`]. Binding
    /// `k` gives the `p`-th parameter (in name order) the value
    /// `DEFAULT_GRID[(k + p) % 5]`, so every parameter takes five distinct
    /// values. Points where instantiation fails or the metric is degenerate
    /// are replaced by further points of the full product grid.
    pub fn default_grid(&self) -> Vec<Bindings> {
        let names: Vec<String> = self.parameter_names().into_iter().collect();
        if names.is_empty() {
            return alloc::vec![Bindings::new()];
        }
        let grid: Vec<Rational> = DEFAULT_GRID.iter().map(|&v| Rational::from(v)).collect();
        let make = |choice: &[usize]| -> Bindings {
            names.iter().cloned().zip(choice.iter().map(|&c| grid[c].clone())).collect()
        };
        let usable = |b: &Bindings| match self.instantiate(b) {
            Ok(inst) => inst.metric.is_none_or(|g| !g.matrix().determinant().is_zero()),
            Err(_) => false,
        };
        let mut out: Vec<Bindings> = Vec::new();
        for k in 0..grid.len() {
            let choice: Vec<usize> = (0..names.len()).map(|p| (k + p) % grid.len()).collect();
            let b = make(&choice);
            if usable(&b) {
                out.push(b);
            }
        }
        let mut choice = alloc::vec![0usize; names.len()];
        'fill: while out.len() < GRID_POINTS {
            let b = make(&choice);
            if !out.contains(&b) && usable(&b) {
                out.push(b);
            }
            for slot in (0..choice.len()).rev() {
                choice[slot] += 1;
                if choice[slot] < grid.len() {
                    continue 'fill;
                }
                choice[slot] = 0;
            }
            break;
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flag {
    ValidHomLie,
    Proper,
    Involutive,
    Regular,
    MetricOk,
    AlmostComplex,
    Integrable,
    Norden,
    KahlerNorden,
    Holomorphic,
    #[serde(rename = "abelian_J")]
    AbelianJ,
    Flat,
    HomLeftSymmetric,
}

impl Flag {
    pub const ALL: [Flag; 13] = [
        Flag::ValidHomLie,
        Flag::Proper,
        Flag::Involutive,
        Flag::Regular,
        Flag::MetricOk,
        Flag::AlmostComplex,
        Flag::Integrable,
        Flag::Norden,
        Flag::KahlerNorden,
        Flag::Holomorphic,
        Flag::AbelianJ,
        Flag::Flat,
        Flag::HomLeftSymmetric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flag::ValidHomLie => "valid_hom_lie",
            Flag::Proper => "proper",
            Flag::Involutive => "involutive",
            Flag::Regular => "regular",
            Flag::MetricOk => "metric_ok",
            Flag::AlmostComplex => "almost_complex",
            Flag::Integrable => "integrable",
            Flag::Norden => "norden",
            Flag::KahlerNorden => "kahler_norden",
            Flag::Holomorphic => "holomorphic",
            Flag::AbelianJ => "abelian_J",
            Flag::Flat => "flat",
            Flag::HomLeftSymmetric => "hom_left_symmetric",
        }
    }

    pub fn from_name(name: &str) -> Option<Flag> {
        Flag::ALL.into_iter().find(|f| f.name() == name)
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotEvaluated,
}

impl Status {
    fn from_bool(b: bool) -> Self {
        if b {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotEvaluated => "not_evaluated",
        }
    }
}

/// Where and why a flag failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagWitness {
    pub binding: Bindings,
    /// Name of the failing check.
    pub check: String,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagResult {
    pub flag: Flag,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<FlagWitness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub name: String,
    pub bindings: Vec<Bindings>,
    pub flags: Vec<FlagResult>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl Classification {
    pub fn flag(&self, flag: Flag) -> &FlagResult {
        self.flags.iter().find(|r| r.flag == flag).expect("all flags present")
    }

    pub fn status(&self, flag: Flag) -> Status {
        self.flag(flag).status
    }

    pub fn passes(&self, flag: Flag) -> bool {
        self.status(flag) == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("classification serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("structure has parameters {0:?} but no bindings were given")]
    NoBindings(Vec<String>),
    #[error("at binding {}: {source}", format_bindings(binding))]
    Instantiation { binding: Bindings, source: InstantiationError },
    #[error("at binding {}: metric is degenerate (det g = 0)", format_bindings(binding))]
    DegenerateMetric { binding: Bindings },
    #[error("internal inconsistency at binding {}: {message}", format_bindings(binding))]
    Inconsistent { binding: Bindings, message: String },
}

pub fn format_bindings(b: &Bindings) -> String {
    let parts: Vec<String> = b.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
    format!("{{{}}}", parts.join(", "))
}

#[derive(Clone, Debug)]
struct Verdict {
    status: Status,
    witness: Option<(String, Witness)>,
    reason: Option<String>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict { status: Status::Pass, witness: None, reason: None }
    }

    fn from_check(check: &Check) -> Self {
        if check.passed {
            Self::pass()
        } else {
            Self::fail(check)
        }
    }

    fn fail(check: &Check) -> Self {
        let w = check.first_witness().cloned().unwrap_or_else(|| Witness::note_only("no witness"));
        Verdict { status: Status::Fail, witness: Some((check.name.clone(), w)), reason: None }
    }

    fn from_report(report: &ValidationReport) -> Self {
        match report.failures().next() {
            Some(c) => Self::fail(c),
            None => Self::pass(),
        }
    }

    fn not_evaluated(reason: &str) -> Self {
        Verdict { status: Status::NotEvaluated, witness: None, reason: Some(reason.to_string()) }
    }

    /// Failure inherited from a failed prerequisite flag.
    fn prerequisite(flag: Flag, of: &Verdict) -> Self {
        Verdict {
            status: Status::Fail,
            witness: of.witness.clone(),
            reason: Some(format!("requires {}", flag)),
        }
    }
}

struct Evaluation {
    verdicts: BTreeMap<Flag, Verdict>,
    notes: Vec<String>,
}

fn evaluate(instance: &Instance, binding: &Bindings) -> Result<Evaluation, ClassifyError> {
    let alg = &instance.algebra;
    let n = alg.dim();
    let mut v: BTreeMap<Flag, Verdict> = BTreeMap::new();
    let mut notes = Vec::new();
    let inconsistent = |message: String| ClassifyError::Inconsistent { binding: binding.clone(), message };

    let hom = alg.validate();
    v.insert(Flag::ValidHomLie, Verdict::from_report(&hom));

    let phi_flags = homalg::classify_phi(alg);
    v.insert(
        Flag::Proper,
        if phi_flags.proper {
            Verdict::pass()
        } else {
            Verdict::fail(&Check::fail("phi differs from identity", alloc::vec![Witness::note_only("phi = Id")]))
        },
    );
    let square_defect = alg.phi().mul(alg.phi()).sub(&Matrix::identity(n));
    let involution_witnesses: Vec<Witness> = (0..n)
        .map(|j| (j, square_defect.column(j)))
        .filter(|(_, c)| !linalg::is_zero_vector(c))
        .map(|(j, c)| Witness::at(&[j], c))
        .collect();
    v.insert(Flag::Involutive, Verdict::from_check(&Check::from_witnesses("phi² = Id", involution_witnesses)));
    v.insert(
        Flag::Regular,
        match homalg::singular_phi_witness(alg) {
            None => Verdict::pass(),
            Some(w) => Verdict::fail(&Check::fail("phi is invertible", alloc::vec![w])),
        },
    );

    let metric_report = instance.metric.as_ref().map(|g| geometry::check_metric(alg, g));
    v.insert(
        Flag::MetricOk,
        match &metric_report {
            Some(r) => Verdict::from_report(r),
            None => Verdict::not_evaluated("no metric"),
        },
    );
    let complex_report = instance.j.as_ref().map(|j| geometry::check_complex(alg, j));
    v.insert(
        Flag::AlmostComplex,
        match &complex_report {
            Some(r) => Verdict::from_report(r),
            None => Verdict::not_evaluated("no complex structure"),
        },
    );
    v.insert(
        Flag::Integrable,
        match &instance.j {
            Some(j) => Verdict::from_check(&geometry::check_integrable(alg, j)),
            None => Verdict::not_evaluated("no complex structure"),
        },
    );

    let complex_ok = v[&Flag::AlmostComplex].status == Status::Pass;
    let metric_ok = v[&Flag::MetricOk].status == Status::Pass;

    v.insert(
        Flag::AbelianJ,
        match &instance.j {
            None => Verdict::not_evaluated("no complex structure"),
            Some(_) if !complex_ok => Verdict::prerequisite(Flag::AlmostComplex, &v[&Flag::AlmostComplex]),
            Some(j) => Verdict::from_check(&geometry::check_abelian(alg, j)),
        },
    );

    // Norden and everything built on it.
    match (&instance.metric, &instance.j) {
        (Some(g), Some(j)) => {
            let norden = geometry::check_norden(alg, g, j);
            let primary = norden.get(geometry::NORDEN).expect("norden check");
            let symmetric = norden.get(geometry::NORDEN_SYMMETRIC_FORM).expect("norden check");
            if primary.passed != symmetric.passed && metric_ok && complex_ok {
                notes.push(format!(
                    "at {}: Norden identity {} but g-symmetry of phi∘J {}",
                    format_bindings(binding),
                    Status::from_bool(primary.passed).name(),
                    Status::from_bool(symmetric.passed).name()
                ));
            }
            let norden_verdict = if !metric_ok {
                Verdict::prerequisite(Flag::MetricOk, &v[&Flag::MetricOk])
            } else if !complex_ok {
                Verdict::prerequisite(Flag::AlmostComplex, &v[&Flag::AlmostComplex])
            } else {
                Verdict::from_check(primary)
            };
            let norden_ok = norden_verdict.status == Status::Pass;
            v.insert(Flag::Norden, norden_verdict);

            let conn = if phi_flags.regular { geometry::levi_civita(alg, g).ok() } else { None };
            let (kahler, holomorphic) = match (&conn, norden_ok) {
                (None, _) => (
                    Verdict::not_evaluated("connection undefined: singular metric or phi"),
                    Verdict::not_evaluated("connection undefined: singular metric or phi"),
                ),
                (Some(_), false) => (
                    Verdict::prerequisite(Flag::Norden, &v[&Flag::Norden]),
                    Verdict::prerequisite(Flag::Norden, &v[&Flag::Norden]),
                ),
                (Some(conn), true) => {
                    let k = geometry::kahler_checks(conn, &j.composite(alg));
                    let zero = k.get(geometry::KAHLER).expect("kahler check");
                    let anti = k.get(geometry::KAHLER_ANTICOMMUTING_FORM).expect("kahler check");
                    if zero.passed && !anti.passed {
                        return Err(inconsistent("nabla(phi∘J) vanishes but its anticommuting form does not".into()));
                    }
                    let h = geometry::check_holomorphic_metric(alg, g, j);
                    (Verdict::from_check(zero), Verdict::from_report(&h))
                }
            };
            if kahler.status != Status::NotEvaluated
                && holomorphic.status != Status::NotEvaluated
                && norden_ok
                && kahler.status != holomorphic.status
            {
                return Err(inconsistent(format!(
                    "kahler_norden={} but holomorphic={}",
                    kahler.status.name(),
                    holomorphic.status.name()
                )));
            }
            if kahler.status == Status::Pass && v[&Flag::Integrable].status != Status::Pass {
                return Err(inconsistent("kahler_norden passes but J is not integrable".into()));
            }
            v.insert(Flag::KahlerNorden, kahler);
            v.insert(Flag::Holomorphic, holomorphic);
        }
        (g, j) => {
            let reason = match (g, j) {
                (None, None) => "no metric and no complex structure",
                (None, _) => "no metric",
                _ => "no complex structure",
            };
            for f in [Flag::Norden, Flag::KahlerNorden, Flag::Holomorphic] {
                v.insert(f, Verdict::not_evaluated(reason));
            }
        }
    }

    // Curvature flags need only a connection.
    let conn = match &instance.metric {
        Some(g) if phi_flags.regular => geometry::levi_civita(alg, g).ok().map(|c| (g, c)),
        _ => None,
    };
    match conn {
        Some((g, conn)) => {
            let k = curvature::curvature(alg, g, &conn);
            let d = curvature::left_symmetric_defect(alg, &conn);
            let flat = curvature::check_flat(&k);
            let left = curvature::check_left_symmetric(&d);
            notes.push(format!(
                "at {}: flat {} and hom_left_symmetric {} {}",
                format_bindings(binding),
                Status::from_bool(flat.passed).name(),
                Status::from_bool(left.passed).name(),
                if flat.passed == left.passed { "agree" } else { "disagree" }
            ));
            v.insert(Flag::Flat, Verdict::from_check(&flat));
            v.insert(Flag::HomLeftSymmetric, Verdict::from_check(&left));
        }
        None => {
            let reason = if instance.metric.is_none() { "no metric" } else { "connection undefined: singular metric or phi" };
            v.insert(Flag::Flat, Verdict::not_evaluated(reason));
            v.insert(Flag::HomLeftSymmetric, Verdict::not_evaluated(reason));
        }
    }

    Ok(Evaluation { verdicts: v, notes })
}

/// Classifies `structure` at every binding in `bindings`, or at the default
/// grid when `bindings` is empty.
pub fn classify(structure: &ParametricStructure, bindings: &[Bindings]) -> Result<Classification, ClassifyError> {
    let grid;
    let bindings = if bindings.is_empty() {
        grid = structure.default_grid();
        if grid.is_empty() {
            return Err(ClassifyError::NoBindings(structure.parameter_names().into_iter().collect()));
        }
        &grid[..]
    } else {
        bindings
    };
    let mut evaluations = Vec::with_capacity(bindings.len());
    for b in bindings {
        let instance = structure
            .instantiate(b)
            .map_err(|source| ClassifyError::Instantiation { binding: b.clone(), source })?;
        if let Some(g) = &instance.metric {
            if g.matrix().determinant().is_zero() {
                return Err(ClassifyError::DegenerateMetric { binding: b.clone() });
            }
        }
        evaluations.push(evaluate(&instance, b)?);
    }

    let mut flags = Vec::with_capacity(Flag::ALL.len());
    let mut notes: Vec<String> = Vec::new();
    for flag in Flag::ALL {
        let per: Vec<&Verdict> = evaluations.iter().map(|e| &e.verdicts[&flag]).collect();
        let failing = per.iter().position(|v| v.status == Status::Fail);
        let result = if let Some(at) = failing {
            let v = per[at];
            FlagResult {
                flag,
                status: Status::Fail,
                witness: v.witness.clone().map(|(check, witness)| FlagWitness { binding: bindings[at].clone(), check, witness }),
                reason: v.reason.clone(),
            }
        } else if per.iter().all(|v| v.status == Status::Pass) {
            FlagResult { flag, status: Status::Pass, witness: None, reason: None }
        } else {
            let v = per.iter().find(|v| v.status == Status::NotEvaluated).expect("some verdict not evaluated");
            FlagResult { flag, status: Status::NotEvaluated, witness: None, reason: v.reason.clone() }
        };
        let statuses: BTreeSet<&'static str> = per.iter().map(|v| v.status.name()).collect();
        if statuses.len() > 1 {
            let detail: Vec<String> = bindings
                .iter()
                .zip(&per)
                .map(|(b, v)| format!("{} at {}", v.status.name(), format_bindings(b)))
                .collect();
            notes.push(format!("{} varies across bindings: {}", flag, detail.join("; ")));
        }
        flags.push(result);
    }
    for e in evaluations {
        for note in e.notes {
            if !notes.contains(&note) {
                notes.push(note);
            }
        }
    }
    Ok(Classification { name: structure.name.clone(), bindings: bindings.to_vec(), flags, notes })
}

/// Classification of concrete data with no parameters.
pub fn classify_instance(name: &str, instance: &Instance) -> Result<Classification, ClassifyError> {
    classify(&ParametricStructure::from_instance(name, instance), &[Bindings::new()])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

pub fn render_report(c: &Classification, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => c.to_json(),
        ReportFormat::Text => render_text(c),
    }
}

fn render_text(c: &Classification) -> String {
    let mut out = String::new();
    out.push_str(&format!("structure: {}\n", c.name));
    let bindings: Vec<String> = c.bindings.iter().map(format_bindings).collect();
    out.push_str(&format!("bindings: {}\n", bindings.join(" ")));
    for r in &c.flags {
        out.push_str(&format!("{}={}", r.flag, r.status.name()));
        if let Some(reason) = &r.reason {
            out.push_str(&format!(" ({})", reason));
        }
        if let Some(w) = &r.witness {
            out.push_str(&format!("\n    {} at {}: {}", w.check, format_bindings(&w.binding), w.witness));
        }
        out.push('\n');
    }
    if !c.notes.is_empty() {
        out.push_str("notes:\n");
        for n in &c.notes {
            out.push_str(&format!("  - {}\n", n));
        }
    }
    out
}
