//! Scenario files (TOML). Polynomial and rational values are strings in the
//! polynomial grammar, indices are 1-based.

use std::ops::Range;

use serde::Deserialize;
use toml::Spanned;

use crate::algebra::{parse_xpoly, Rational, XPoly, MAX_DIM};
use crate::fedosov::Connection;
use crate::quantization::ConstPoisson;

/// Largest fiber truncation accepted.
pub const MAX_NY: u32 = 10;
/// Largest `ħ` truncation accepted.
pub const MAX_NHBAR: usize = 6;
/// Largest arity for L∞ relation checks.
pub const MAX_ARITY: usize = 4;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid `{param}`: {message}")]
    Invalid { param: String, message: String },
    #[error("capacity exceeded: `{param}` = {value} is above the limit {limit}")]
    Capacity { param: String, value: u64, limit: u64 },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: Option<String>,
    dim: usize,
    ny: u32,
    nhbar: Option<usize>,
    seed: Option<u64>,
    suites: Option<Vec<String>>,
    #[serde(default)]
    connection: RawConnection,
    #[serde(default)]
    moyal: RawMoyal,
    #[serde(default)]
    probes: Probes,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConnection {
    #[serde(default)]
    christoffel: Vec<RawChristoffel>,
    /// Also resolve a random connection with this many nonzero symbols.
    #[serde(default)]
    random_entries: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChristoffel {
    k: usize,
    i: usize,
    j: usize,
    value: Spanned<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMoyal {
    #[serde(default)]
    theta: Vec<RawTheta>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTheta {
    i: usize,
    j: usize,
    value: Spanned<String>,
}

/// Probe counts per suite.
#[derive(Debug, Clone, Deserialize, serde::Serialize, PartialEq, Eq)]
#[serde(default, deny_unknown_fields)]
pub struct Probes {
    pub homotopy: usize,
    pub chain_homotopy: usize,
    pub brackets: usize,
    pub comparison: usize,
    pub lifts: usize,
    pub linfty: usize,
    pub max_arity: usize,
    pub moyal_chains: usize,
}

impl Default for Probes {
    fn default() -> Self {
        Probes {
            homotopy: 50,
            chain_homotopy: 25,
            brackets: 20,
            comparison: 20,
            lifts: 10,
            linfty: 4,
            max_arity: 3,
            moyal_chains: 20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Check,
    Fedosov,
    Moyal,
    Linfty,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Check, Suite::Fedosov, Suite::Moyal, Suite::Linfty];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Check => "check",
            Suite::Fedosov => "fedosov",
            Suite::Moyal => "moyal",
            Suite::Linfty => "linfty",
        }
    }
}

/// Parses a comma-separated or listed suite selection; `all` expands.
pub fn parse_suites<'a>(names: impl IntoIterator<Item = &'a str>) -> Result<Vec<Suite>, ConfigError> {
    let mut out = Vec::new();
    for n in names {
        let n = n.trim();
        let add: &[Suite] = match n {
            "all" => &Suite::ALL,
            "check" => &[Suite::Check],
            "fedosov" => &[Suite::Fedosov],
            "moyal" => &[Suite::Moyal],
            "linfty" => &[Suite::Linfty],
            _ => {
                return Err(ConfigError::Invalid {
                    param: "suites".into(),
                    message: format!("unknown suite `{n}` (expected check, fedosov, moyal, linfty or all)"),
                })
            }
        };
        out.extend_from_slice(add);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// A validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub dim: usize,
    pub ny: u32,
    pub nhbar: usize,
    pub seed: u64,
    pub suites: Vec<Suite>,
    pub connection: Connection,
    /// Text form of the Christoffel symbols, for echoing in reports.
    pub christoffel_text: Vec<(usize, usize, usize, String)>,
    pub random_entries: usize,
    pub theta: Option<ConstPoisson>,
    pub probes: Probes,
}

/// 1-based line and column of a byte offset.
fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn parse_value(src: &str, v: &Spanned<String>, dim: usize) -> Result<XPoly, ConfigError> {
    parse_xpoly(v.get_ref(), dim).map_err(|e| {
        // the span covers the quotes; the string body starts one byte later
        let Range { start, .. } = v.span();
        let inner = v.get_ref().char_indices().nth(e.column.saturating_sub(1)).map_or(v.get_ref().len(), |(b, _)| b);
        let (line, column) = line_col(src, start + 1 + inner);
        ConfigError::Syntax { line, column, message: e.message }
    })
}

fn check_index(param: &str, idx: usize, dim: usize) -> Result<usize, ConfigError> {
    if idx == 0 || idx > dim {
        return Err(ConfigError::Invalid { param: param.into(), message: format!("index {idx} outside 1..{dim}") });
    }
    Ok(idx - 1)
}

impl Scenario {
    pub fn load(path: &str) -> Result<Self, ConfigError> {
        let src = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?;
        Self::parse(&src)
    }

    pub fn parse(src: &str) -> Result<Self, ConfigError> {
        let raw: RawScenario = toml::from_str(src).map_err(|e| {
            let (line, column) = e.span().map_or((1, 1), |s| line_col(src, s.start));
            ConfigError::Syntax { line, column, message: e.message().to_string() }
        })?;
        let dim = raw.dim;
        if dim == 0 {
            return Err(ConfigError::Invalid { param: "dim".into(), message: "must be at least 1".into() });
        }
        if dim > MAX_DIM {
            return Err(ConfigError::Capacity { param: "dim".into(), value: dim as u64, limit: MAX_DIM as u64 });
        }
        if raw.ny < 2 {
            return Err(ConfigError::Invalid { param: "ny".into(), message: "must be at least 2".into() });
        }
        let mut entries = Vec::new();
        let mut christoffel_text = Vec::new();
        for c in &raw.connection.christoffel {
            let (i, j, k) = (
                check_index("christoffel.i", c.i, dim)?,
                check_index("christoffel.j", c.j, dim)?,
                check_index("christoffel.k", c.k, dim)?,
            );
            entries.push((i, j, k, parse_value(src, &c.value, dim)?));
            christoffel_text.push((c.k, c.i, c.j, c.value.get_ref().clone()));
        }
        let connection = Connection::new(dim, entries)
            .map_err(|e| ConfigError::Invalid { param: "connection.christoffel".into(), message: e.to_string() })?;
        let theta = if raw.moyal.theta.is_empty() {
            None
        } else {
            let mut t = Vec::new();
            for e in &raw.moyal.theta {
                let (i, j) = (check_index("moyal.theta.i", e.i, dim)?, check_index("moyal.theta.j", e.j, dim)?);
                let v = parse_value(src, &e.value, dim)?;
                let Some(c) = v.as_constant() else {
                    let (line, column) = line_col(src, e.value.span().start);
                    return Err(ConfigError::Syntax { line, column, message: "θ entries must be constants".into() });
                };
                t.push((i, j, c));
            }
            Some(ConstPoisson::from_upper(dim, t).map_err(|e| ConfigError::Invalid {
                param: "moyal.theta".into(),
                message: format!("{e}; give upper-triangular entries i < j"),
            })?)
        };
        let mut sc = Scenario {
            name: raw.name.unwrap_or_else(|| "scenario".into()),
            dim,
            ny: raw.ny,
            nhbar: raw.nhbar.unwrap_or(3),
            seed: raw.seed.unwrap_or(0),
            suites: match &raw.suites {
                Some(s) => parse_suites(s.iter().map(String::as_str))?,
                None => Suite::ALL.to_vec(),
            },
            connection,
            christoffel_text,
            random_entries: raw.connection.random_entries,
            theta,
            probes: raw.probes,
        };
        sc.validate()?;
        Ok(sc)
    }

    /// Checks limits; also called after command-line overrides.
    pub fn validate(&mut self) -> Result<(), ConfigError> {
        if self.ny < 2 {
            return Err(ConfigError::Invalid { param: "ny".into(), message: "must be at least 2".into() });
        }
        if self.ny > MAX_NY {
            return Err(ConfigError::Capacity { param: "ny".into(), value: self.ny as u64, limit: MAX_NY as u64 });
        }
        if self.nhbar > MAX_NHBAR {
            return Err(ConfigError::Capacity {
                param: "nhbar".into(),
                value: self.nhbar as u64,
                limit: MAX_NHBAR as u64,
            });
        }
        if self.probes.max_arity > MAX_ARITY {
            return Err(ConfigError::Capacity {
                param: "probes.max_arity".into(),
                value: self.probes.max_arity as u64,
                limit: MAX_ARITY as u64,
            });
        }
        Ok(())
    }

    /// The Poisson tensor for the Moyal suite; defaults to `θ^{12} = 1`.
    pub fn theta_or_default(&self) -> Option<ConstPoisson> {
        match &self.theta {
            Some(t) => Some(t.clone()),
            None if self.dim >= 2 => {
                Some(ConstPoisson::from_upper(self.dim, [(0, 1, Rational::one())]).expect("valid"))
            }
            None => None,
        }
    }
}
