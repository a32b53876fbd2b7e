use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::solvers::Variant;
use crate::spatial::{DEFAULT_ERROR_ORDER, DEFAULT_RHS_ORDER};
use crate::temporal::{TemporalMesh, DEFAULT_JMAX};

/// Settings of the refinement experiments.
///
/// The text format has one `key = value` per line; `#` starts a comment.
/// Keys: `max_level`, `solvers` (comma separated), `j_max`, `quad_order`,
/// `rhs_order`, `threads`, `T`, `time_nodes` (comma separated, fractions
/// such as `1/32` allowed), `out`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub max_level: usize,
    pub solvers: Vec<Variant>,
    pub j_max: usize,
    /// Order of the space-time rule for the error norms.
    pub quad_order: usize,
    /// Order of the space-time rule for the source projection.
    pub rhs_order: usize,
    /// Worker threads, `0` for one per core.
    pub threads: usize,
    pub end_time: f64,
    /// Base temporal mesh; level `ℓ` bisects every element `ℓ` times.
    pub time_nodes: Vec<f64>,
    pub out: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            max_level: 3,
            solvers: Variant::ALL.to_vec(),
            j_max: DEFAULT_JMAX,
            quad_order: DEFAULT_ERROR_ORDER,
            rhs_order: DEFAULT_RHS_ORDER,
            threads: 0,
            end_time: 0.5,
            time_nodes: vec![0.0, 1.0 / 32.0, 1.0 / 16.0, 1.0 / 8.0, 0.5],
            out: None,
        }
    }
}

fn parse_number(s: &str) -> Option<f64> {
    match s.split_once('/') {
        Some((num, den)) => Some(num.trim().parse::<f64>().ok()? / den.trim().parse::<f64>().ok()?),
        None => s.trim().parse().ok(),
    }
}

pub fn parse_solvers(s: &str) -> Result<Vec<Variant>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: Variant = item.parse()?;
        if !out.contains(&v) {
            out.push(v);
        }
    }
    if out.is_empty() {
        return Err(Error::Usage("no solver selected".into()));
    }
    Ok(out)
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut nodes_given = false;
        for (no, raw) in text.lines().enumerate() {
            let line = no + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| Error::Config { line, message: format!("expected `key = value`, found `{content}`") })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| Error::Config { line, message: format!("invalid {what} `{value}`") };
            let int = || value.parse::<usize>().map_err(|_| bad("integer"));
            match key {
                "max_level" => cfg.max_level = int()?,
                "solvers" | "solver" => {
                    cfg.solvers = parse_solvers(value).map_err(|e| Error::Config { line, message: e.to_string() })?
                }
                "j_max" | "jmax" => cfg.j_max = int()?,
                "quad_order" => cfg.quad_order = int()?,
                "rhs_order" => cfg.rhs_order = int()?,
                "threads" => cfg.threads = int()?,
                "T" | "end_time" => cfg.end_time = parse_number(value).ok_or_else(|| bad("number"))?,
                "time_nodes" => {
                    cfg.time_nodes = value
                        .split(',')
                        .map(|s| parse_number(s).ok_or_else(|| bad("node list")))
                        .collect::<Result<_>>()?;
                    nodes_given = true;
                }
                "out" => cfg.out = Some(PathBuf::from(value)),
                other => return Err(Error::Config { line, message: format!("unknown key `{other}`") }),
            }
        }
        if !nodes_given {
            // the default nodes scale with the end time
            let scale = cfg.end_time / 0.5;
            cfg.time_nodes.iter_mut().for_each(|t| *t *= scale);
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let nodes = &self.time_nodes;
        if nodes.len() < 2 || nodes[0] != 0.0 || nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Usage("time_nodes must increase strictly from 0".into()));
        }
        if (nodes[nodes.len() - 1] - self.end_time).abs() > 1e-14 * self.end_time.abs().max(1.0) {
            return Err(Error::Usage(format!("time_nodes must end at T = {}", self.end_time)));
        }
        if self.solvers.is_empty() {
            return Err(Error::Usage("no solver selected".into()));
        }
        if self.quad_order == 0 || self.rhs_order == 0 {
            return Err(Error::Usage("quadrature orders must be positive".into()));
        }
        Ok(())
    }

    pub fn base_time_mesh(&self) -> Result<TemporalMesh> {
        TemporalMesh::new(self.time_nodes.clone())
    }

    /// Temporal mesh of refinement level `level`.
    pub fn time_mesh(&self, level: usize) -> Result<TemporalMesh> {
        Ok(self.base_time_mesh()?.bisected(level))
    }
}
