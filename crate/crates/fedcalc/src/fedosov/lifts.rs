//! Lifts of base objects to `D`-flat sections (`τ`, `ϱ`), the projections `ν`,
//! and the local conjugator `𝔓`.

use std::collections::BTreeMap;

use smallvec::SmallVec;

use crate::algebra::{ChainElement, DoKey, Mask, Multi, PolyDiffOp, PolyVector, PvKey, Rational, SmElement, XPoly};

use super::base::{function, value_at_zero};
use super::homotopy::Contractible;
use super::resolution::FedosovData;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LiftError {
    #[error("input is not a base object: it depends on y or dx")]
    NotFlat,
    #[error("base chains need constant coefficients and no dx")]
    NotBaseChain,
}

impl FedosovData {
    /// `τ(a) = a + δ⁻¹(∇τ(a) + A·τ(a))`, iterated to its fixed point.
    ///
    /// The map is affine, so only the latest increment `Δ ↦ δ⁻¹(∇Δ + A·Δ)` is iterated.
    pub fn tau<T: Contractible>(&self, a: &T) -> Result<T, LiftError> {
        if a.sigma() != *a {
            return Err(LiftError::NotFlat);
        }
        let mut t = a.clone();
        let mut inc = a.clone();
        for _ in 0..=self.order() + 1 {
            inc = self.nabla_plus_a(&inc).delta_inv();
            if inc.vanishes() {
                return Ok(t);
            }
            t = t.plus(&inc);
        }
        unreachable!("τ-iteration raises y-degree at every step")
    }

    /// `τ` of a base function.
    pub fn tau_function(&self, f: &XPoly) -> SmElement {
        self.tau(&function(self.dim(), self.order(), f)).expect("base function")
    }

    /// `ϱ` on a polynomial chain over `(x₀, …, x_k)`.
    ///
    /// The chain is given as a `ChainElement` with constant coefficients whose slot
    /// monomials are read as monomials in `x_j`.
    pub fn varrho(&self, a: &ChainElement) -> Result<ChainElement, LiftError> {
        let mut cache: BTreeMap<Multi, SmElement> = BTreeMap::new();
        let mut out = ChainElement::new(self.dim(), self.order());
        for (k, c) in a.terms() {
            let Some(r) = c.as_constant() else { return Err(LiftError::NotBaseChain) };
            if !k.dx.is_empty() {
                return Err(LiftError::NotBaseChain);
            }
            let parts: Vec<SmElement> = k
                .slots
                .iter()
                .map(|m| {
                    cache.entry(*m).or_insert_with(|| self.tau_function(&XPoly::monomial(*m, Rational::one()))).clone()
                })
                .collect();
            out.add_scaled(&ChainElement::tensor(&parts), &r);
        }
        Ok(out)
    }

    /// `ν` on `ker δ ∩ 𝒟_poly`: `(νv)(a₀,…,a_k) = σ v(τa₀, …, τa_k)`, recovered from
    /// monomial probes by triangular inversion. The result is a base operator.
    pub fn nu_diffop(&self, v: &PolyDiffOp) -> Result<PolyDiffOp, LiftError> {
        if v.sigma() != *v {
            return Err(LiftError::NotFlat);
        }
        let dim = self.dim();
        let mut out = PolyDiffOp::new(dim, crate::algebra::UNTRUNCATED);
        let mut ranks: Vec<usize> = v.terms().map(|(k, _)| k.slots.len()).collect();
        ranks.sort_unstable();
        ranks.dedup();
        let mut cache: BTreeMap<Multi, SmElement> = BTreeMap::new();
        for rank in ranks {
            let part = v.rank_part(rank);
            if rank == 0 {
                out.add_assign(&PolyDiffOp::from_function(&part.to_function()).with_order(out.order()));
                continue;
            }
            let m = part.max_slot_order();
            let singles: Vec<Multi> = (0..=m).flat_map(|p| Multi::all_of_degree(dim, p)).collect();
            let mut tuples: Vec<SmallVec<[Multi; 3]>> = vec![SmallVec::new()];
            for _ in 0..rank {
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        singles.iter().map(move |s| {
                            let mut t2 = t.clone();
                            t2.push(*s);
                            t2
                        })
                    })
                    .collect();
            }
            tuples.sort_by_key(|t| t.iter().map(|b| b.degree()).sum::<u32>());
            let mut found: Vec<(SmallVec<[Multi; 3]>, XPoly)> = Vec::new();
            for beta in tuples {
                let args: Vec<SmElement> = beta
                    .iter()
                    .map(|b| {
                        cache
                            .entry(*b)
                            .or_insert_with(|| self.tau_function(&XPoly::monomial(*b, Rational::one())))
                            .clone()
                    })
                    .collect();
                let mut val = value_at_zero(&part.eval(&args));
                for (alpha, c) in &found {
                    let mut w = 1u64;
                    let mut mono = Multi::ZERO;
                    let mut ok = true;
                    for (a, b) in alpha.iter().zip(&beta) {
                        match b.falling(a) {
                            Some((f, rest)) => {
                                w *= f;
                                mono = mono.add(&rest);
                            }
                            None => {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if ok {
                        val.add_scaled(&c.mul(&XPoly::monomial(mono, Rational::one())), &-Rational::from(w));
                    }
                }
                if val.is_zero() {
                    continue;
                }
                let fact: u64 = beta.iter().map(|b| b.factorial()).product();
                let c = val.scale(&Rational::from(fact).recip());
                out.add_term(DoKey { dx: Mask::EMPTY, slots: beta.clone(), y: Multi::ZERO }, &c);
                found.push((beta, c));
            }
        }
        Ok(out)
    }

    /// `ν⁻¹` on base operators, by iterative correction of the leading symbol.
    pub fn nu_inv_diffop(&self, b: &PolyDiffOp) -> Result<PolyDiffOp, LiftError> {
        let mut v = b.with_order(self.order());
        for _ in 0..=(b.max_slot_order() as usize * b.terms().map(|(k, _)| k.slots.len()).max().unwrap_or(0) + 1) {
            let r = b.sub(&self.nu_diffop(&v)?);
            if r.is_zero() {
                return Ok(v);
            }
            v.add_assign(&r.with_order(self.order()));
        }
        let r = b.sub(&self.nu_diffop(&v)?);
        assert!(r.is_zero(), "ν⁻¹ correction did not terminate");
        Ok(v)
    }

    /// `ν` on `ker δ ∩ 𝒯_poly`, probing with coordinate functions.
    pub fn nu_polyvector(&self, v: &PolyVector) -> Result<PolyVector, LiftError> {
        if v.sigma() != *v {
            return Err(LiftError::NotFlat);
        }
        let dim = self.dim();
        let coords: Vec<SmElement> = (0..dim).map(|i| self.tau_function(&XPoly::var(i))).collect();
        let mut out = PolyVector::new(dim, crate::algebra::UNTRUNCATED);
        let mut arities: Vec<u32> = v.terms().map(|(k, _)| k.dy.len()).collect();
        arities.sort_unstable();
        arities.dedup();
        for m in arities {
            let h = v.arity_part(m).hkr();
            for bits in 0u16..(1 << dim) {
                let s = Mask(bits);
                if s.len() != m {
                    continue;
                }
                let args: Vec<SmElement> = s.iter().map(|i| coords[i].clone()).collect();
                let val =
                    if m == 0 { value_at_zero(&v.arity_part(0).to_function()) } else { value_at_zero(&h.eval(&args)) };
                out.add_term(PvKey { dx: Mask::EMPTY, dy: s, y: Multi::ZERO }, &val);
            }
        }
        Ok(out)
    }

    /// `ν⁻¹` on base polyvectors.
    pub fn nu_inv_polyvector(&self, b: &PolyVector) -> Result<PolyVector, LiftError> {
        let mut v = b.with_order(self.order());
        for _ in 0..=self.dim() + 1 {
            let r = b.sub(&self.nu_polyvector(&v)?);
            if r.is_zero() {
                return Ok(v);
            }
            v.add_assign(&r.with_order(self.order()));
        }
        Err(LiftError::NotFlat)
    }

    /// The conjugator `𝔓 = I + δ⁻¹(d𝔓 − 𝔓∘T)` with `D = d − δ + T`, iterated on increments.
    pub fn conjugator(&self) -> PolyDiffOp {
        let t = self.t_field().hkr();
        let mut p = PolyDiffOp::identity(self.dim(), self.order());
        let mut inc = p.clone();
        for _ in 0..=self.order() + 1 {
            inc = inc.d().sub(&inc.insert_compose(0, &t)).delta_inv();
            if inc.is_zero() {
                return p;
            }
            p.add_assign(&inc);
        }
        unreachable!("conjugator iteration raises y-degree at every step")
    }

    /// `d𝔓 − δ𝔓 − 𝔓∘T`, the operator form of `D₀∘𝔓 − 𝔓∘D`.
    pub fn conjugator_residual(&self, p: &PolyDiffOp) -> PolyDiffOp {
        let t = self.t_field().hkr();
        p.d().sub(&p.delta()).sub(&p.insert_compose(0, &t))
    }
}
