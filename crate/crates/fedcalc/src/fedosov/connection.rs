//! Torsion-free affine connections, their curvature and the covariant derivative `∇`.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraError, PolyVector, Rational, RawKey, XPoly, MAX_DIM};
use crate::random::Probe;

use super::homotopy::Fiberwise;

/// Christoffel symbols `Γ^k_{ij}`, stored once per unordered pair `i ≤ j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Connection {
    dim: usize,
    gamma: BTreeMap<(usize, usize, usize), XPoly>,
}

impl Connection {
    pub fn flat(dim: usize) -> Self {
        assert!(dim <= MAX_DIM);
        Connection { dim, gamma: BTreeMap::new() }
    }

    /// Builds a connection from 0-based entries `(i, j, k, Γ^k_{ij})`.
    ///
    /// Entries for `(i, j)` and `(j, i)` describe the same symbol; giving both with
    /// different values is an error.
    pub fn new(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, XPoly)>,
    ) -> Result<Self, AlgebraError> {
        if dim > MAX_DIM {
            return Err(AlgebraError::DimensionTooLarge(dim));
        }
        let mut gamma: BTreeMap<(usize, usize, usize), XPoly> = BTreeMap::new();
        for (i, j, k, v) in entries {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(AlgebraError::IndexOutOfRange { index: idx + 1, dim });
                }
            }
            if v.used_dim() > dim {
                return Err(AlgebraError::IndexOutOfRange { index: v.used_dim(), dim });
            }
            let key = (i.min(j), i.max(j), k);
            if let Some(old) = gamma.get(&key) {
                if *old != v {
                    return Err(AlgebraError::Incompatible(format!(
                        "Γ^{}_{{{}{}}} given twice with different values",
                        k + 1,
                        i + 1,
                        j + 1
                    )));
                }
            }
            if !v.is_zero() {
                gamma.insert(key, v);
            }
        }
        Ok(Connection { dim, gamma })
    }

    /// The curved fixture `Γ¹₂₂ = x¹` in dimension 2.
    pub fn curved_fixture() -> Self {
        Connection::new(2, [(1, 1, 0, XPoly::var(0))]).unwrap()
    }

    /// A random torsion-free connection with coefficients of x-degree ≤ `deg`.
    pub fn random(p: &mut Probe, dim: usize, entries: usize, deg: u32) -> Self {
        let mut v = Vec::new();
        for _ in 0..entries {
            let i = p.below(dim as u32 - 1) as usize;
            let j = p.below(dim as u32 - 1) as usize;
            let k = p.below(dim as u32 - 1) as usize;
            v.push(((i.min(j), i.max(j), k), p.xpoly(dim, deg)));
        }
        let mut gamma = BTreeMap::new();
        for (key, val) in v {
            gamma.insert(key, val);
        }
        Connection { dim, gamma }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_trivial(&self) -> bool {
        self.gamma.is_empty()
    }

    /// `Γ^k_{ij}`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> XPoly {
        self.gamma.get(&(i.min(j), i.max(j), k)).cloned().unwrap_or_default()
    }

    /// Nonzero symbols with `i ≤ j`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &XPoly)> {
        self.gamma.iter().map(|(&(i, j, k), v)| (i, j, k, v))
    }

    /// `(R_{ij})^k_l = ∂_iΓ^k_{jl} − ∂_jΓ^k_{il} + Γ^k_{im}Γ^m_{jl} − Γ^k_{jm}Γ^m_{il}`.
    pub fn riemann(&self, i: usize, j: usize, k: usize, l: usize) -> XPoly {
        let mut r = self.get(j, l, k).partial(i).sub(&self.get(i, l, k).partial(j));
        for m in 0..self.dim {
            r.add_assign(&self.get(i, m, k).mul(&self.get(j, l, m)));
            r.add_assign(&self.get(j, m, k).mul(&self.get(i, l, m)).neg());
        }
        r
    }

    /// The connection form `Γ = −dx^i Γ^k_{ij} y^j ∂/∂y^k`.
    pub fn gamma_form(&self, order: u32) -> PolyVector {
        let mut raw = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let g = self.get(i, j, k);
                    if !g.is_zero() {
                        raw.push((RawKey { dx: vec![i], y: vec![j], dy: vec![k], ..Default::default() }, g.neg()));
                    }
                }
            }
        }
        PolyVector::normalize(self.dim, order, raw).unwrap()
    }

    /// The curvature element `𝓡 = −½ dx^i dx^j (R_{ij})^k_l y^l ∂/∂y^k`.
    pub fn curvature(&self, order: u32) -> PolyVector {
        let half = Rational::new(-1, 2);
        let mut raw = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i == j {
                    continue;
                }
                for k in 0..self.dim {
                    for l in 0..self.dim {
                        let r = self.riemann(i, j, k, l);
                        if !r.is_zero() {
                            raw.push((
                                RawKey { dx: vec![i, j], y: vec![l], dy: vec![k], ..Default::default() },
                                r.scale(&half),
                            ));
                        }
                    }
                }
            }
        }
        PolyVector::normalize(self.dim, order, raw).unwrap()
    }

    /// `∇ = d + Γ·` on any family.
    pub fn nabla<T: Fiberwise>(&self, a: &T) -> T {
        a.d_x().plus(&a.act(&self.gamma_form(a.truncation())))
    }
}
