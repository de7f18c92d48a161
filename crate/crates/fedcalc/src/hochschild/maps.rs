//! Comparison maps: HKR from polyvectors to cochains and Connes from chains to forms.

use smallvec::SmallVec;

use crate::algebra::{ChainElement, DoKey, EForm, EfKey, Mask, Multi, PolyDiffOp, PolyVector, Rational};

/// All permutations of `v` with their signs (Heap's algorithm order is irrelevant here).
pub(crate) fn signed_permutations(v: &[usize]) -> Vec<(Vec<usize>, bool)> {
    if v.len() <= 1 {
        return vec![(v.to_vec(), false)];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let head = rest.remove(i);
        for (mut p, neg) in signed_permutations(&rest) {
            p.insert(0, head);
            out.push((p, neg ^ (i % 2 == 1)));
        }
    }
    out
}

impl PolyVector {
    /// HKR map `γ ↦ (a₀,…,a_k) ↦ i_γ(da₀∧…∧da_k)`: first order in each slot, antisymmetric.
    pub fn hkr(&self) -> PolyDiffOp {
        let mut out = PolyDiffOp::new(self.dim(), self.order());
        for (k, c) in self.terms() {
            for (perm, neg) in signed_permutations(&k.dy.indices()) {
                let slots: SmallVec<[Multi; 3]> = perm.iter().map(|&i| Multi::unit(i)).collect();
                out.add_term_signed(DoKey { dx: k.dx, slots, y: k.y }, c, neg);
            }
        }
        out
    }
}

impl ChainElement {
    /// Fiberwise Connes map `a₀⊗…⊗a_k ↦ a₀ δ^f a₁ ⋯ δ^f a_k` with all slots identified.
    pub fn connes(&self) -> EForm {
        let mut out = EForm::new(self.dim(), self.order());
        let dim = self.dim();
        for (k, c) in self.terms() {
            // (y, C-list, weight) accumulated slot by slot
            let mut acc: Vec<(Multi, Vec<usize>, i64)> = vec![(k.slots[0], Vec::new(), 1)];
            for m in &k.slots[1..] {
                let mut next = Vec::new();
                for (y, cs, w) in &acc {
                    for i in 0..dim {
                        let e = m.get(i);
                        if e == 0 || cs.contains(&i) {
                            continue;
                        }
                        let mut cs2 = cs.clone();
                        cs2.push(i);
                        next.push((y.add(&m.dec(i).unwrap()), cs2, w * e as i64));
                    }
                }
                acc = next;
            }
            for (y, cs, w) in acc {
                let (cm, neg) = Mask::from_list(&cs).expect("distinct");
                out.add_term_scaled(EfKey { dx: k.dx, y, c: cm }, c, &Rational::from_int(if neg { -w } else { w }));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_signs() {
        let p = signed_permutations(&[0, 1, 2]);
        assert_eq!(p.len(), 6);
        let odd = p.iter().filter(|x| x.1).count();
        assert_eq!(odd, 3);
        assert!(p.contains(&(vec![1, 0, 2], true)));
        assert!(p.contains(&(vec![1, 2, 0], false)));
    }
}
