//! Schouten–Nijenhuis bracket on fiberwise polyvector fields.
//!
//! A polyvector `f(y) ∂_{i₁}∧…∧∂_{i_m}` is treated as a function of `y` and odd
//! variables `θ_i = ∂/∂y^i`; the bracket is
//! `[P,Q] = Σ_j (P ∂⃖/∂θ_j)(∂Q/∂y^j) − (∂P/∂y^j)(∂⃗Q/∂θ_j)`.

use crate::algebra::{Mask, Multi, PolyVector, PvKey, Rational, SmElement, SmKey, XPoly};

use super::koszul_neg;

/// Fiber-level bracket of two monomial polyvectors; calls `emit(y, θ-set, weight)`.
pub(crate) fn schouten_terms(
    dim: usize,
    (y1, s1): (&Multi, Mask),
    (y2, s2): (&Multi, Mask),
    mut emit: impl FnMut(Multi, Mask, i64),
) {
    for j in 0..dim {
        // (P ∂⃖θ_j)(∂_{y^j} Q)
        if let (Some((r1, n1)), e) = (s1.contract_right(j), y2.get(j)) {
            if e > 0 {
                if let Some((s, n2)) = r1.wedge(&s2) {
                    let w = e as i64 * if n1 ^ n2 { -1 } else { 1 };
                    emit(y1.add(&y2.dec(j).unwrap()), s, w);
                }
            }
        }
        // −(∂_{y^j} P)(∂⃗θ_j Q)
        if let (Some((r2, n1)), e) = (s2.contract_left(j), y1.get(j)) {
            if e > 0 {
                if let Some((s, n2)) = s1.wedge(&r2) {
                    let w = -(e as i64) * if n1 ^ n2 { -1 } else { 1 };
                    emit(y1.dec(j).unwrap().add(y2), s, w);
                }
            }
        }
    }
}

impl PolyVector {
    /// Regards an `SM` element as a degree −1 polyvector.
    pub fn from_function(a: &SmElement) -> Self {
        let mut s = PolyVector::new(a.dim(), a.order());
        for (k, c) in a.terms() {
            s.add_term(PvKey { dx: k.dx, dy: Mask::EMPTY, y: k.y }, c);
        }
        s
    }

    pub fn to_function(&self) -> SmElement {
        let mut s = SmElement::new(self.dim(), self.order());
        for (k, c) in self.terms() {
            if k.dy.is_empty() {
                s.add_term(SmKey { dx: k.dx, y: k.y }, c);
            }
        }
        s
    }

    /// The constant vector field `∂/∂y^i`.
    pub fn dy(dim: usize, order: u32, i: usize) -> Self {
        Self::from_key(dim, order, PvKey { dx: Mask::EMPTY, dy: Mask::single(i), y: Multi::ZERO }, XPoly::one())
    }

    /// Terms with exactly `m` ∂/∂y factors.
    pub fn arity_part(&self, m: u32) -> Self {
        self.filter(|k| k.dy.len() == m)
    }

    /// Schouten–Nijenhuis bracket, extended to dx-valued polyvectors by the Koszul rule.
    pub fn schouten(&self, o: &PolyVector) -> PolyVector {
        let mut out = PolyVector::new(self.dim(), self.order().min(o.order()));
        for (k1, c1) in self.terms() {
            let kk1 = k1.dy.len() as i32 - 1;
            for (k2, c2) in o.terms() {
                let Some((dx, n0)) = k1.dx.wedge(&k2.dx) else { continue };
                let neg = n0 ^ koszul_neg(kk1, k2.dx);
                let c = c1.mul(c2);
                schouten_terms(self.dim(), (&k1.y, k1.dy), (&k2.y, k2.dy), |y, dy, w| {
                    let w = if neg { -w } else { w };
                    out.add_term_scaled(PvKey { dx, dy, y }, &c, &Rational::from_int(w));
                });
            }
        }
        out
    }

    /// Applies the vector-field part (one ∂/∂y factor) as a derivation of `SM`.
    ///
    /// Equals `[self, a]_SN` for vector fields.
    pub fn apply_vector(&self, a: &SmElement) -> SmElement {
        self.schouten(&PolyVector::from_function(a)).to_function()
    }
}
