//! Polydifferential operators: slot insertion, the Gerstenhaber bracket and `∂ = [μ, ·]`.

use smallvec::{smallvec, SmallVec};

use crate::algebra::{DoKey, Mask, Multi, PolyDiffOp, Rational, SmElement, SmKey, XPoly};

use super::koszul_neg;

/// `Σ` over ways to split `alpha` into `parts` multi-indices, with multinomial weights.
pub(crate) fn distributions(alpha: &Multi, parts: usize, dim: usize) -> Vec<(SmallVec<[Multi; 4]>, u64)> {
    let mut out: Vec<(SmallVec<[Multi; 4]>, u64)> = vec![(smallvec![Multi::ZERO; parts], 1)];
    for l in 0..dim {
        let n = alpha.get(l);
        if n == 0 {
            continue;
        }
        let comps = compositions(n, parts);
        let mut next = Vec::with_capacity(out.len() * comps.len());
        for (base, w) in &out {
            for (comp, cw) in &comps {
                let mut b = base.clone();
                for (p, &e) in comp.iter().enumerate() {
                    b[p].0[l] = e;
                }
                next.push((b, w * cw));
            }
        }
        out = next;
    }
    out
}

/// Compositions of `n` into `parts` non-negative integers, with multinomial coefficients.
fn compositions(n: u8, parts: usize) -> Vec<(SmallVec<[u8; 4]>, u64)> {
    fn rec(left: u8, idx: usize, parts: usize, cur: &mut SmallVec<[u8; 4]>, out: &mut Vec<SmallVec<[u8; 4]>>) {
        if idx + 1 == parts {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(left - e, idx + 1, parts, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(n, 0, parts, &mut SmallVec::new(), &mut raw);
    let fact = |k: u8| (1..=k as u64).product::<u64>();
    raw.into_iter()
        .map(|c| {
            let w = fact(n) / c.iter().map(|&e| fact(e)).product::<u64>();
            (c, w)
        })
        .collect()
}

/// Fiber-level insertion of the monomial operator `(y2, s2)` into slot `i` of `(y1, s1)`.
/// Calls `emit(y, slots, weight)` for every resulting term.
pub(crate) fn insert_terms(
    dim: usize,
    y1: &Multi,
    s1: &[Multi],
    i: usize,
    y2: &Multi,
    s2: &[Multi],
    mut emit: impl FnMut(Multi, SmallVec<[Multi; 3]>, u64),
) {
    let alpha = &s1[i];
    for (parts, w) in distributions(alpha, s2.len() + 1, dim) {
        // parts[0] hits the coefficient of the inner operator
        let Some((fc, rest)) = y2.falling(&parts[0]) else { continue };
        let mut slots: SmallVec<[Multi; 3]> = SmallVec::with_capacity(s1.len() + s2.len());
        slots.extend_from_slice(&s1[..i]);
        for (j, b) in s2.iter().enumerate() {
            slots.push(b.add(&parts[j + 1]));
        }
        slots.extend_from_slice(&s1[i + 1..]);
        emit(y1.add(&rest), slots, w * fc);
    }
}

fn rank_degree(k: &DoKey) -> i32 {
    k.slots.len() as i32 - 1
}

fn sgn(e: i64) -> bool {
    e.rem_euclid(2) == 1
}

impl PolyDiffOp {
    /// The fiberwise multiplication `μ(a, b) = ab`.
    pub fn mu(dim: usize, order: u32) -> Self {
        Self::from_key(
            dim,
            order,
            DoKey { dx: Mask::EMPTY, slots: smallvec![Multi::ZERO, Multi::ZERO], y: Multi::ZERO },
            XPoly::one(),
        )
    }

    /// The identity operator (rank 1, no derivatives, coefficient 1).
    pub fn identity(dim: usize, order: u32) -> Self {
        Self::from_key(
            dim,
            order,
            DoKey { dx: Mask::EMPTY, slots: smallvec![Multi::ZERO], y: Multi::ZERO },
            XPoly::one(),
        )
    }

    /// Regards an `SM` element as a degree −1 operator (a function).
    pub fn from_function(a: &SmElement) -> Self {
        let mut s = PolyDiffOp::new(a.dim(), a.order());
        for (k, c) in a.terms() {
            s.add_term(DoKey { dx: k.dx, slots: SmallVec::new(), y: k.y }, c);
        }
        s
    }

    /// The degree −1 part as an `SM` element.
    pub fn to_function(&self) -> SmElement {
        let mut s = SmElement::new(self.dim(), self.order());
        for (k, c) in self.terms() {
            if k.slots.is_empty() {
                s.add_term(SmKey { dx: k.dx, y: k.y }, c);
            }
        }
        s
    }

    /// Terms of a fixed rank (number of argument slots).
    pub fn rank_part(&self, rank: usize) -> Self {
        self.filter(|k| k.slots.len() == rank)
    }

    /// Largest total derivative order in a single slot.
    pub fn max_slot_order(&self) -> u32 {
        self.terms().flat_map(|(k, _)| k.slots.iter().map(|m| m.degree())).max().unwrap_or(0)
    }

    /// `Φ₁ ∘_i Φ₂`: insert `Φ₂` into argument `i` of `Φ₁` (Leibniz expansion).
    ///
    /// Terms of `Φ₁` with fewer than `i + 1` slots contribute nothing.
    pub fn insert_compose(&self, i: usize, o: &PolyDiffOp) -> PolyDiffOp {
        let mut out = PolyDiffOp::new(self.dim(), self.order().min(o.order()));
        let dim = self.dim();
        for (k1, c1) in self.terms() {
            if k1.slots.len() <= i {
                continue;
            }
            let kk1 = rank_degree(k1);
            for (k2, c2) in o.terms() {
                let Some((dx, n0)) = k1.dx.wedge(&k2.dx) else { continue };
                let neg = n0 ^ koszul_neg(kk1, k2.dx);
                let c = c1.mul(c2);
                insert_terms(dim, &k1.y, &k1.slots, i, &k2.y, &k2.slots, |y, slots, w| {
                    let r = Rational::from(w);
                    let key = DoKey { dx, slots, y };
                    out.add_term_scaled(key, &c, &if neg { -r } else { r });
                });
            }
        }
        out
    }

    /// Gerstenhaber bracket, extended to dx-valued operators by the Koszul rule.
    pub fn gerstenhaber(&self, o: &PolyDiffOp) -> PolyDiffOp {
        let mut out = PolyDiffOp::new(self.dim(), self.order().min(o.order()));
        let dim = self.dim();
        for (k1, c1) in self.terms() {
            let kk1 = rank_degree(k1) as i64;
            for (k2, c2) in o.terms() {
                let Some((dx, n0)) = k1.dx.wedge(&k2.dx) else { continue };
                let kk2 = rank_degree(k2) as i64;
                let form_neg = n0 ^ koszul_neg(kk1 as i32, k2.dx);
                let c = c1.mul(c2);
                let mut push = |y: Multi, slots: SmallVec<[Multi; 3]>, w: u64, neg: bool| {
                    let r = Rational::from(w);
                    out.add_term_scaled(DoKey { dx, slots, y }, &c, &if neg ^ form_neg { -r } else { r });
                };
                for i in 0..k1.slots.len() {
                    let neg = sgn(i as i64 * kk2);
                    insert_terms(dim, &k1.y, &k1.slots, i, &k2.y, &k2.slots, |y, s, w| push(y, s, w, neg));
                }
                for j in 0..k2.slots.len() {
                    let neg = !sgn(kk1 * kk2) ^ sgn(j as i64 * kk1);
                    insert_terms(dim, &k2.y, &k2.slots, j, &k1.y, &k1.slots, |y, s, w| push(y, s, w, neg));
                }
            }
        }
        out
    }

    /// Hochschild differential `∂Φ = [μ, Φ]_G`.
    pub fn hochschild_d(&self) -> PolyDiffOp {
        PolyDiffOp::mu(self.dim(), self.order()).gerstenhaber(self)
    }

    /// Evaluates on dx-free `SM` arguments: `Φ(a₀, …, a_k)`; terms of other ranks are ignored.
    pub fn eval(&self, args: &[SmElement]) -> SmElement {
        let order = args.iter().map(|a| a.order()).fold(self.order(), u32::min);
        let mut out = SmElement::new(self.dim(), order);
        for (k, c) in self.terms() {
            if k.slots.len() != args.len() {
                continue;
            }
            // running product of differentiated arguments
            let mut acc: Vec<(Multi, XPoly)> = vec![(k.y, c.clone())];
            for (alpha, a) in k.slots.iter().zip(args) {
                let mut next = Vec::new();
                for (ka, ca) in a.terms() {
                    assert!(ka.dx.is_empty(), "eval expects dx-free arguments");
                    let Some((w, rest)) = ka.y.falling(alpha) else { continue };
                    let cw = ca.scale(&Rational::from(w));
                    for (m, p) in &acc {
                        next.push((m.add(&rest), p.mul(&cw)));
                    }
                }
                acc = next;
            }
            for (m, p) in acc {
                out.add_term(SmKey { dx: k.dx, y: m }, &p);
            }
        }
        out
    }

    /// Applies a rank-1 even operator to an `SM` element that may carry dx factors.
    pub fn apply(&self, a: &SmElement) -> SmElement {
        let mut out = SmElement::new(self.dim(), self.order().min(a.order()));
        for (k, c) in self.terms() {
            if k.slots.len() != 1 {
                continue;
            }
            let alpha = k.slots[0];
            for (ka, ca) in a.terms() {
                let Some((dx, neg)) = k.dx.wedge(&ka.dx) else { continue };
                let Some((w, rest)) = ka.y.falling(&alpha) else { continue };
                out.add_term_scaled(
                    SmKey { dx, y: k.y.add(&rest) },
                    &c.mul(ca),
                    &Rational::from(if neg { -(w as i64) } else { w as i64 }),
                );
            }
        }
        out
    }
}
