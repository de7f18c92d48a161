//! Moyal quantization of a constant Poisson structure in the fiber variables,
//! its Maurer–Cartan property and the twisted chain and form differentials.

use smallvec::smallvec;
use std::collections::BTreeMap;

use crate::algebra::rational::factorial;
use crate::algebra::{
    ChainElement, DoKey, EForm, GradedMul, Mask, Multi, PolyDiffOp, PolyVector, PvKey, Rational, SmElement, XPoly,
};
use crate::linfty::instances::diffops;
use crate::linfty::{mc_residual, Element, Filtration, HbarSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuantError {
    #[error("θ is not antisymmetric at ({i}, {j})")]
    NotAntisymmetric { i: usize, j: usize },
    #[error("θ must be a {dim}×{dim} matrix")]
    Shape { dim: usize },
    #[error("α is not Poisson: [α, α] ≠ 0 at ħ^{order}")]
    NotPoisson { order: usize },
}

/// A constant Poisson tensor `θ^{ij}` (0-based indices).
#[derive(Debug, Clone, PartialEq)]
pub struct ConstPoisson {
    theta: Vec<Vec<Rational>>,
}

impl ConstPoisson {
    pub fn new(theta: Vec<Vec<Rational>>) -> Result<Self, QuantError> {
        let dim = theta.len();
        if theta.iter().any(|r| r.len() != dim) {
            return Err(QuantError::Shape { dim });
        }
        for (i, row) in theta.iter().enumerate() {
            for (j, t) in row.iter().enumerate() {
                if *t != -&theta[j][i] {
                    return Err(QuantError::NotAntisymmetric { i, j });
                }
            }
        }
        Ok(ConstPoisson { theta })
    }

    /// From the strictly upper-triangular entries `θ^{ij}`, `i < j`.
    pub fn from_upper(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self, QuantError> {
        let mut theta = vec![vec![Rational::zero(); dim]; dim];
        for (i, j, c) in entries {
            if i >= j || j >= dim {
                return Err(QuantError::NotAntisymmetric { i, j });
            }
            theta[j][i] = -&c;
            theta[i][j] = c;
        }
        Ok(ConstPoisson { theta })
    }

    /// The standard symplectic `θ^{12} = 1` in dimension 2.
    pub fn standard() -> Self {
        Self::from_upper(2, [(0, 1, Rational::one())]).expect("valid")
    }

    pub fn dim(&self) -> usize {
        self.theta.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.theta[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.theta.iter().flatten().all(|c| c.is_zero())
    }

    /// The bivector `Σ_{i<j} θ^{ij} ∂_i ∧ ∂_j`, so that `{f, g} = θ^{ij} ∂_i f ∂_j g`.
    pub fn bivector(&self, order: u32) -> PolyVector {
        let mut p = PolyVector::new(self.dim(), order);
        for i in 0..self.dim() {
            for j in (i + 1)..self.dim() {
                let dy = Mask::single(i).wedge(&Mask::single(j)).expect("distinct").0;
                p.add_term(PvKey { dx: Mask::EMPTY, dy, y: Multi::ZERO }, &XPoly::constant(self.theta[i][j].clone()));
            }
        }
        p
    }

    /// `{f, g} = θ^{ij} ∂_i f ∂_j g` on fiber functions.
    pub fn bracket(&self, f: &SmElement, g: &SmElement) -> SmElement {
        let mut out = f.zero_like();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if self.theta[i][j].is_zero() {
                    continue;
                }
                out.add_scaled(&f.partial_y(i).graded_mul(&g.partial_y(j)), &self.theta[i][j]);
            }
        }
        out
    }
}

/// A formal deformation `Π = μ₀ + ħΠ₁ + …` of the fiber product.
#[derive(Debug, Clone, PartialEq)]
pub struct StarProduct {
    pub pi: HbarSeries<PolyDiffOp>,
}

/// `Π_k = (1/k!)(1/2)^k θ^{i₁j₁}⋯θ^{i_kj_k} ∂_{i₁…i_k} ⊗ ∂_{j₁…j_k}`.
pub fn moyal_product(theta: &ConstPoisson, n_hbar: usize, order: u32) -> StarProduct {
    let dim = theta.dim();
    let mut coeffs = Vec::with_capacity(n_hbar + 1);
    let mut power: BTreeMap<(Multi, Multi), Rational> = BTreeMap::from([((Multi::ZERO, Multi::ZERO), Rational::one())]);
    for k in 0..=n_hbar {
        let norm = (&factorial(k as u32) * &Rational::from_int(2).pow(k as u32)).recip();
        let mut op = PolyDiffOp::new(dim, order);
        for ((a, b), c) in &power {
            op.add_term(
                DoKey { dx: Mask::EMPTY, slots: smallvec![*a, *b], y: Multi::ZERO },
                &XPoly::constant(c * &norm),
            );
        }
        coeffs.push(op);
        let mut next = BTreeMap::new();
        for ((a, b), c) in &power {
            for i in 0..dim {
                for j in 0..dim {
                    let t = theta.get(i, j);
                    if t.is_zero() {
                        continue;
                    }
                    *next.entry((a.inc(i), b.inc(j))).or_insert_with(Rational::zero) += &(c * t);
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        power = next;
    }
    StarProduct { pi: HbarSeries::new(coeffs) }
}

impl StarProduct {
    pub fn order(&self) -> usize {
        self.pi.order()
    }

    /// `Ψ = Π − μ₀`.
    pub fn psi(&self) -> HbarSeries<PolyDiffOp> {
        let mut c = self.pi.coeffs().to_vec();
        c[0] = c[0].zero_like();
        HbarSeries::new(c)
    }

    /// `f ⋆ g` as a series in `ħ`.
    pub fn star(&self, f: &SmElement, g: &SmElement) -> HbarSeries<SmElement> {
        HbarSeries::new(self.pi.coeffs().iter().map(|p| p.eval(&[f.clone(), g.clone()])).collect())
    }

    /// `⋆` extended to series.
    pub fn star_series(&self, f: &HbarSeries<SmElement>, g: &HbarSeries<SmElement>) -> HbarSeries<SmElement> {
        let zero = f.coeff(0).zero_like();
        let mut out = HbarSeries::monomial(&zero, 0, self.order().min(f.order()).min(g.order()));
        for (k, p) in self.pi.coeffs().iter().enumerate() {
            let part = HbarSeries::multilinear(&[f, g], &zero, |a| p.eval(a));
            out = out.add_shifted(&part, k);
        }
        out
    }

    /// `(f⋆g)⋆h − f⋆(g⋆h)`.
    pub fn associator(&self, f: &SmElement, g: &SmElement, h: &SmElement) -> HbarSeries<SmElement> {
        let n = self.order();
        let lift = |a: &SmElement| HbarSeries::monomial(a, 0, n);
        let l = self.star_series(&self.star(f, g), &lift(h));
        let r = self.star_series(&lift(f), &self.star(g, h));
        l.sub(&r)
    }
}

/// `∂Ψ + ½[Ψ, Ψ]_G` truncated at the order of `Π`.
pub fn star_mc_check(pi: &StarProduct) -> HbarSeries<PolyDiffOp> {
    let n = pi.order();
    let first = pi.pi.coeff(0);
    let q = diffops(first.dim(), first.order()).over_hbar(n);
    mc_residual(&q, &pi.psi(), Filtration::Hbar(n)).expect("Ψ has degree 1")
}

/// `R_Π = Σ_k ħ^k R_{Π_k}`; the `ħ⁰` part is the Hochschild boundary.
pub fn twisted_chain_differential(pi: &StarProduct, a: &HbarSeries<ChainElement>) -> HbarSeries<ChainElement> {
    let zero = a.coeff(0).zero_like();
    let mut out = HbarSeries::monomial(&zero, 0, pi.order().min(a.order()));
    for (k, p) in pi.pi.coeffs().iter().enumerate() {
        let part = HbarSeries::multilinear(&[a], &zero, |v| p.chain_action(&v[0]));
        out = out.add_shifted(&part, k);
    }
    out
}

/// `L_α` on form-valued series, after checking `[α, α]_SN = 0` through the truncation order.
pub fn twisted_form_differential(
    alpha: &HbarSeries<PolyVector>,
) -> Result<impl Fn(&HbarSeries<EForm>) -> HbarSeries<EForm> + '_, QuantError> {
    let sq = HbarSeries::multilinear(&[alpha, alpha], alpha.coeff(0), |a| a[0].schouten(&a[1]));
    if let Some(order) = sq.valuation() {
        return Err(QuantError::NotPoisson { order });
    }
    Ok(move |w: &HbarSeries<EForm>| {
        let zero = w.coeff(0).zero_like();
        HbarSeries::multilinear_with(&[alpha], w, &zero, |a, v| a[0].lie_derivative(v))
    })
}
