//! Hochschild chains: the action `R_Φ` of cochains on chains and `𝔟 = R_μ`.

use smallvec::SmallVec;

use crate::algebra::{ChKey, ChainElement, Mask, Multi, PolyDiffOp, Rational, SmElement, XPoly};

use super::koszul_neg;

/// Applies the fiber monomial operator `y^yφ ∂^{α₀}⊗…⊗∂^{α_k}` to the monomials `args`;
/// returns the merged monomial and its integer weight.
fn merge(yphi: &Multi, alphas: &[Multi], args: &[&Multi]) -> Option<(Multi, u64)> {
    let mut m = *yphi;
    let mut w = 1u64;
    for (a, arg) in alphas.iter().zip(args) {
        let (c, rest) = arg.falling(a)?;
        w *= c;
        m = m.add(&rest);
    }
    Some((m, w))
}

impl ChainElement {
    /// Single-slot tensor `a₀ ⊗ … ⊗ a_k` of dx-free `SM` elements.
    pub fn tensor(parts: &[SmElement]) -> ChainElement {
        assert!(!parts.is_empty());
        let dim = parts[0].dim();
        let order = parts.iter().map(|p| p.order()).min().unwrap();
        let mut acc: Vec<(SmallVec<[Multi; 4]>, XPoly)> = vec![(SmallVec::new(), XPoly::one())];
        for p in parts {
            let mut next = Vec::new();
            for (k, c) in p.terms() {
                assert!(k.dx.is_empty(), "tensor expects dx-free factors");
                for (s, a) in &acc {
                    let deg: u32 = s.iter().map(|m| m.degree()).sum::<u32>() + k.y.degree();
                    if deg > order {
                        continue;
                    }
                    let mut s2 = s.clone();
                    s2.push(k.y);
                    next.push((s2, a.mul(c)));
                }
            }
            acc = next;
        }
        let mut out = ChainElement::new(dim, order);
        for (slots, c) in acc {
            out.add_term(ChKey { dx: Mask::EMPTY, slots }, &c);
        }
        out
    }

    /// Number of tensor slots if homogeneous.
    pub fn slot_count(&self) -> Option<usize> {
        let mut it = self.terms().map(|(k, _)| k.slots.len());
        let f = it.next()?;
        it.all(|n| n == f).then_some(f)
    }

    /// `∂/∂y_j^i` in slot `j`.
    pub fn partial_slot(&self, j: usize, i: usize) -> ChainElement {
        let mut out = self.zero_like();
        for (k, c) in self.terms() {
            if j >= k.slots.len() {
                continue;
            }
            let e = k.slots[j].get(i);
            if e == 0 {
                continue;
            }
            let mut k2 = k.clone();
            k2.slots[j] = k.slots[j].dec(i).unwrap();
            out.add_term_scaled(k2, c, &Rational::from_int(e as i64));
        }
        out
    }

    /// Evaluates all fiber variables at the diagonal `y₀ = … = y_k = y`, returning an `SM` element.
    pub fn diagonal(&self) -> SmElement {
        let mut out = SmElement::new(self.dim(), self.order());
        for (k, c) in self.terms() {
            let y = k.slots.iter().fold(Multi::ZERO, |a, m| a.add(m));
            out.add_term(crate::algebra::SmKey { dx: k.dx, y }, c);
        }
        out
    }

    /// Hochschild differential `𝔟 = R_μ`.
    pub fn hochschild_b(&self) -> ChainElement {
        PolyDiffOp::mu(self.dim(), self.order()).chain_action(self)
    }
}

impl PolyDiffOp {
    /// The action `R_Φ` of cochains on chains, including the cyclic wrap-around terms.
    pub fn chain_action(&self, a: &ChainElement) -> ChainElement {
        let mut out = ChainElement::new(a.dim(), self.order().min(a.order()));
        for (kp, cp) in self.terms() {
            let k = kp.slots.len() as i64 - 1;
            for (ka, ca) in a.terms() {
                let n = ka.slots.len() as i64 - 1;
                if n < k {
                    continue;
                }
                let Some((dx, n0)) = kp.dx.wedge(&ka.dx) else { continue };
                let form_neg = n0 ^ koszul_neg(k as i32, ka.dx);
                let c = cp.mul(ca);
                let slots = &ka.slots;
                let mut emit = |s: SmallVec<[Multi; 4]>, w: u64, neg: bool| {
                    let r = Rational::from(w);
                    out.add_term_scaled(ChKey { dx, slots: s }, &c, &if neg ^ form_neg { -r } else { r });
                };
                // interior insertions; a function is inserted after a₀ only
                let first = if k < 0 { 1 } else { 0 };
                for i in first..=(n - k) {
                    let iu = i as usize;
                    let ku = (k + 1) as usize;
                    let args: SmallVec<[&Multi; 4]> = slots[iu..iu + ku].iter().collect();
                    let Some((m, w)) = merge(&kp.y, &kp.slots, &args) else { continue };
                    let mut s: SmallVec<[Multi; 4]> = SmallVec::new();
                    s.extend_from_slice(&slots[..iu]);
                    s.push(m);
                    s.extend_from_slice(&slots[iu + ku..]);
                    emit(s, w, (k * i).rem_euclid(2) == 1);
                }
                // cyclic terms: Φ(a_{j+1}, …, a_n, a_0, …, a_{k+j−n}) ⊗ a_{k+j+1−n} ⊗ … ⊗ a_j
                for j in (n - k).max(0)..n {
                    let mut args: SmallVec<[&Multi; 4]> = SmallVec::new();
                    for t in (j + 1)..=n {
                        args.push(&slots[t as usize]);
                    }
                    for t in 0..=(k + j - n) {
                        args.push(&slots[t as usize]);
                    }
                    let Some((m, w)) = merge(&kp.y, &kp.slots, &args) else { continue };
                    let mut s: SmallVec<[Multi; 4]> = SmallVec::new();
                    s.push(m);
                    for t in (k + j + 1 - n)..=j {
                        s.push(slots[t as usize]);
                    }
                    emit(s, w, (n * (j + 1)).rem_euclid(2) == 1);
                }
            }
        }
        out
    }
}
