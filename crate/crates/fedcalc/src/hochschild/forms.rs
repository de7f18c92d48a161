//! Fiberwise exterior forms in the generators `C^i`: contraction, `δ^f` and the Lie derivative.

use crate::algebra::{EForm, EfKey, Mask, Multi, PolyVector, Rational, SmElement, SmKey};

use super::koszul_neg;

/// `i_{θ_S}` on `C^J` with `i_{∂_a∧∂_b} = i_{∂_a} i_{∂_b}`: apply `∂/∂C^{s}` for `s ∈ S`
/// in decreasing order.
pub(crate) fn contract_set(s: Mask, j: Mask) -> Option<(Mask, bool)> {
    let mut cur = j;
    let mut neg = false;
    for i in s.indices().into_iter().rev() {
        let (m, n) = cur.contract_left(i)?;
        cur = m;
        neg ^= n;
    }
    Some((cur, neg))
}

/// Fiber-level `δ^f(y^m C^J) = Σ m_i y^{m-e_i} C^i C^J`.
fn fiber_deriv(dim: usize, y: &Multi, c: Mask, w: i64, out: &mut Vec<(Multi, Mask, i64)>) {
    for i in 0..dim {
        let e = y.get(i);
        if e == 0 {
            continue;
        }
        if let Some((c2, n)) = c.insert_left(i) {
            out.push((y.dec(i).unwrap(), c2, if n { -w } else { w } * e as i64));
        }
    }
}

/// Fiber-level Lie derivative `L_P ω = δ^f i_P ω + (−1)^k i_P δ^f ω` for monomials.
pub(crate) fn lie_terms(dim: usize, (yp, sp): (&Multi, Mask), (yw, cw): (&Multi, Mask)) -> Vec<(Multi, Mask, i64)> {
    let k = sp.len() as i64 - 1;
    let mut out = Vec::new();
    if let Some((c1, n)) = contract_set(sp, cw) {
        fiber_deriv(dim, &yp.add(yw), c1, if n { -1 } else { 1 }, &mut out);
    }
    let mut dw = Vec::new();
    fiber_deriv(dim, yw, cw, 1, &mut dw);
    let sk = if k.rem_euclid(2) == 1 { -1 } else { 1 };
    for (y, c, w) in dw {
        if let Some((c1, n)) = contract_set(sp, c) {
            out.push((yp.add(&y), c1, sk * w * if n { -1 } else { 1 }));
        }
    }
    out
}

impl EForm {
    /// Regards an `SM` element as a 0-form in `C`.
    pub fn from_function(a: &SmElement) -> Self {
        let mut s = EForm::new(a.dim(), a.order());
        for (k, c) in a.terms() {
            s.add_term(EfKey { dx: k.dx, y: k.y, c: Mask::EMPTY }, c);
        }
        s
    }

    pub fn to_function(&self) -> SmElement {
        let mut s = SmElement::new(self.dim(), self.order());
        for (k, c) in self.terms() {
            if k.c.is_empty() {
                s.add_term(SmKey { dx: k.dx, y: k.y }, c);
            }
        }
        s
    }

    /// Fiberwise de Rham differential `δ^f = C^i ∂/∂y^i` (odd; passes dx with a sign).
    pub fn fiber_d(&self) -> EForm {
        let mut out = self.zero_like();
        for (k, c) in self.terms() {
            let mut v = Vec::new();
            fiber_deriv(self.dim(), &k.y, k.c, if k.dx.len() % 2 == 1 { -1 } else { 1 }, &mut v);
            for (y, cm, w) in v {
                out.add_term_scaled(EfKey { dx: k.dx, y, c: cm }, c, &Rational::from_int(w));
            }
        }
        out
    }

    /// Base de Rham differential in `C`: `d_C = C^i ∂/∂x^i` (for y-free, dx-free forms).
    pub fn base_d(&self) -> EForm {
        let mut out = self.zero_like();
        for (k, c) in self.terms() {
            for i in 0..self.dim() {
                let dc = c.partial(i);
                if dc.is_zero() {
                    continue;
                }
                if let Some((cm, n)) = k.c.insert_left(i) {
                    let neg = n ^ (k.dx.len() % 2 == 1);
                    out.add_term_signed(EfKey { c: cm, ..*k }, &dc, neg);
                }
            }
        }
        out
    }

    /// Terms of C-degree `m`.
    pub fn c_part(&self, m: u32) -> Self {
        self.filter(|k| k.c.len() == m)
    }
}

impl PolyVector {
    /// Contraction `i_γ ω`, so that `i_{∂_{i₀}∧…∧∂_{i_k}}(C^{i_k}…C^{i₀}) = 1`.
    pub fn contract(&self, w: &EForm) -> EForm {
        let mut out = EForm::new(w.dim(), self.order().min(w.order()));
        for (kp, cp) in self.terms() {
            for (kw, cw) in w.terms() {
                let Some((dx, n0)) = kp.dx.wedge(&kw.dx) else { continue };
                let Some((c, n1)) = contract_set(kp.dy, kw.c) else { continue };
                let neg = n0 ^ n1 ^ koszul_neg(kp.dy.len() as i32, kw.dx);
                out.add_term_signed(EfKey { dx, y: kp.y.add(&kw.y), c }, &cp.mul(cw), neg);
            }
        }
        out
    }

    /// Lie derivative `L_γ = δ^f i_γ + (−1)^k i_γ δ^f`, extended to dx-valued arguments by the Koszul rule.
    pub fn lie_derivative(&self, w: &EForm) -> EForm {
        let mut out = EForm::new(w.dim(), self.order().min(w.order()));
        for (kp, cp) in self.terms() {
            let k = kp.dy.len() as i32 - 1;
            for (kw, cw) in w.terms() {
                let Some((dx, n0)) = kp.dx.wedge(&kw.dx) else { continue };
                let neg = n0 ^ koszul_neg(k, kw.dx);
                let c = cp.mul(cw);
                for (y, cm, r) in lie_terms(self.dim(), (&kp.y, kp.dy), (&kw.y, kw.c)) {
                    let r = if neg { -r } else { r };
                    out.add_term_scaled(EfKey { dx, y, c: cm }, &c, &Rational::from_int(r));
                }
            }
        }
        out
    }
}
