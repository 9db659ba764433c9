//! Text and JSON renderings of connections, curvature and reports.

use homnorden_core::classify::Instance;
use homnorden_core::curvature::{self, CurvatureTensor};
use homnorden_core::geometry::{self, Connection, GeometryError};
use homnorden_core::report::{format_vector, ValidationReport};
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum RenderError {
    #[error("structure has no metric")]
    NoMetric,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

pub fn connection(instance: &Instance) -> Result<Connection, RenderError> {
    let g = instance.metric.as_ref().ok_or(RenderError::NoMetric)?;
    Ok(geometry::levi_civita(&instance.algebra, g)?)
}

/// Nonzero `∇_{e_i} e_j`, one line each.
pub fn connection_table(conn: &Connection) -> Vec<String> {
    conn.nonzero().map(|(i, j, v)| format!("∇_{{e{}}} e{} = {}", i + 1, j + 1, format_vector(v))).collect()
}

pub fn connection_lines(instance: &Instance) -> Result<Vec<String>, RenderError> {
    Ok(connection_table(&connection(instance)?))
}

/// Nonzero `K(e_i,e_j)e_k` with `i < j`, one line each.
pub fn curvature_table(k: &CurvatureTensor) -> Vec<String> {
    let n = k.dim();
    let mut lines = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let op = k.operator(i, j);
            for z in 0..n {
                let v = op.column(z);
                if v.iter().any(|c| !c.is_zero()) {
                    lines.push(format!("K(e{},e{})e{} = {}", i + 1, j + 1, z + 1, format_vector(&v)));
                }
            }
        }
    }
    lines
}

pub fn curvature_of(instance: &Instance) -> Result<(Connection, CurvatureTensor), RenderError> {
    let conn = connection(instance)?;
    let g = instance.metric.as_ref().expect("connection needs a metric");
    let k = curvature::curvature(&instance.algebra, g, &conn);
    Ok((conn, k))
}

pub fn curvature_lines(instance: &Instance) -> Result<Vec<String>, RenderError> {
    Ok(curvature_table(&curvature_of(instance)?.1))
}

/// One nonzero coefficient vector, 1-based, as exact strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub indices: Vec<usize>,
    pub value: Vec<String>,
}

pub fn connection_components(conn: &Connection) -> Vec<Component> {
    conn.nonzero()
        .map(|(i, j, v)| Component { indices: vec![i + 1, j + 1], value: v.iter().map(|c| c.to_string()).collect() })
        .collect()
}

pub fn curvature_components(k: &CurvatureTensor) -> Vec<Component> {
    let n = k.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let op = k.operator(i, j);
            for z in 0..n {
                let v = op.column(z);
                if v.iter().any(|c| !c.is_zero()) {
                    out.push(Component { indices: vec![i + 1, j + 1, z + 1], value: v.iter().map(|c| c.to_string()).collect() });
                }
            }
        }
    }
    out
}

/// Report lines: `PASS name`, `FAIL name` followed by indented witnesses,
/// `INFO` for informational checks.
pub fn report_text(report: &ValidationReport) -> String {
    let mut out = String::new();
    for c in &report.checks {
        let tag = match (c.passed, c.informational) {
            (true, _) => "PASS",
            (false, true) => "INFO",
            (false, false) => "FAIL",
        };
        out.push_str(&format!("{} {}\n", tag, c.name));
        for w in &c.witnesses {
            out.push_str(&format!("    {}\n", w));
        }
    }
    out
}
