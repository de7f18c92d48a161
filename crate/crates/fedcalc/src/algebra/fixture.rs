//! Text fixtures for elements: TOML records of 1-based index lists and polynomial strings.
//!
//! ```toml
//! family = "diffop"
//! dim = 2
//! order = 6
//!
//! [[term]]
//! dx = [1]
//! y = [2, 2]
//! slots = [[1], []]
//! coeff = "x1 - 1/2"
//! ```

use serde::{Deserialize, Serialize};

use super::parse::parse_xpoly;
use super::series::{AlgebraError, Family, Key, RawKey, Series, UNTRUNCATED};

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("malformed fixture: {0}")]
    Syntax(#[from] toml::de::Error),
    #[error("fixture holds a {found:?} element, expected {expected:?}")]
    Family { expected: Family, found: Family },
    #[error("term {term}: index 0 is not valid (indices are 1-based)")]
    ZeroIndex { term: usize },
    #[error("term {term}: {source}")]
    Coefficient { term: usize, source: super::parse::PolyParseError },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Serialize, Deserialize)]
struct Doc {
    family: Family,
    dim: usize,
    #[serde(default)]
    order: Option<u32>,
    #[serde(default)]
    term: Vec<Term>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Term {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    dx: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    y: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    dy: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    c: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    slots: Vec<Vec<usize>>,
    coeff: String,
}

fn up(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn down(v: &[usize], term: usize) -> Result<Vec<usize>, FixtureError> {
    v.iter().map(|&i| i.checked_sub(1).ok_or(FixtureError::ZeroIndex { term })).collect()
}

impl<K: Key> Series<K> {
    /// Writes the element as a fixture; `from_fixture` reads it back unchanged.
    pub fn to_fixture(&self) -> String {
        let term = self
            .terms()
            .map(|(k, c)| {
                let r = k.to_raw();
                Term {
                    dx: up(&r.dx),
                    y: up(&r.y),
                    dy: up(&r.dy),
                    c: up(&r.c),
                    slots: r.slots.iter().map(|s| up(s)).collect(),
                    coeff: c.to_string(),
                }
            })
            .collect();
        let order = (self.order() != UNTRUNCATED).then_some(self.order());
        let doc = Doc { family: K::FAMILY, dim: self.dim(), order, term };
        toml::to_string(&doc).expect("fixture documents are always representable")
    }

    /// Reads a fixture; terms are normalized, so unordered index lists are accepted.
    pub fn from_fixture(src: &str) -> Result<Self, FixtureError> {
        let doc: Doc = toml::from_str(src)?;
        if doc.family != K::FAMILY {
            return Err(FixtureError::Family { expected: K::FAMILY, found: doc.family });
        }
        let mut raw = Vec::with_capacity(doc.term.len());
        for (n, t) in doc.term.iter().enumerate() {
            let term = n + 1;
            let key = RawKey {
                dx: down(&t.dx, term)?,
                y: down(&t.y, term)?,
                dy: down(&t.dy, term)?,
                c: down(&t.c, term)?,
                slots: t.slots.iter().map(|s| down(s, term)).collect::<Result<_, _>>()?,
            };
            let c = parse_xpoly(&t.coeff, doc.dim).map_err(|source| FixtureError::Coefficient { term, source })?;
            raw.push((key, c));
        }
        Ok(Self::normalize(doc.dim, doc.order.unwrap_or(UNTRUNCATED), raw)?)
    }
}
