//! Seeded generators of random homogeneous probe elements.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallvec::SmallVec;

use crate::algebra::{
    ChKey, ChainElement, DoKey, EForm, EfKey, Mask, Multi, PolyDiffOp, PolyVector, PvKey, Rational, SmElement, SmKey,
    XPoly,
};

/// Size parameters shared by all families.
#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub dim: usize,
    /// Truncation order of the produced element.
    pub order: u32,
    /// Number of random terms drawn (before merging).
    pub terms: usize,
    /// Maximal x-degree of coefficients.
    pub x_deg: u32,
    /// Maximal total y-degree of a term.
    pub y_deg: u32,
    /// Exterior degree (number of dx factors) of every term.
    pub dx: u32,
}

impl Shape {
    pub fn new(dim: usize, order: u32) -> Self {
        Shape { dim, order, terms: 3, x_deg: 2, y_deg: order.min(4), dx: 0 }
    }
    pub fn terms(mut self, n: usize) -> Self {
        self.terms = n;
        self
    }
    pub fn x_deg(mut self, n: u32) -> Self {
        self.x_deg = n;
        self
    }
    pub fn y_deg(mut self, n: u32) -> Self {
        self.y_deg = n;
        self
    }
    pub fn dx(mut self, n: u32) -> Self {
        self.dx = n;
        self
    }
}

pub struct Probe {
    rng: ChaCha8Rng,
}

impl Probe {
    pub fn new(seed: u64) -> Self {
        Probe { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: u32) -> u32 {
        self.rng.gen_range(0..=n)
    }

    /// Small nonzero rational, mostly integers.
    pub fn rational(&mut self) -> Rational {
        let mut n = self.rng.gen_range(1..=4i64);
        if self.rng.gen_bool(0.5) {
            n = -n;
        }
        let d = if self.rng.gen_bool(0.2) { self.rng.gen_range(2..=3i64) } else { 1 };
        Rational::new(n, d)
    }

    pub fn multi(&mut self, dim: usize, deg: u32) -> Multi {
        let idx: Vec<usize> = (0..deg).map(|_| self.rng.gen_range(0..dim)).collect();
        Multi::from_indices(&idx)
    }

    pub fn mask(&mut self, dim: usize, size: u32) -> Mask {
        let mut all: Vec<usize> = (0..dim).collect();
        all.shuffle(&mut self.rng);
        all.truncate(size as usize);
        Mask::from_list(&all).expect("distinct").0
    }

    pub fn xpoly(&mut self, dim: usize, max_deg: u32) -> XPoly {
        let mut p = XPoly::zero();
        let n = self.rng.gen_range(1..=2);
        for _ in 0..n {
            let d = self.below(max_deg);
            let m = self.multi(dim, d);
            let c = self.rational();
            p.add_term(m, &c);
        }
        if p.is_zero() {
            XPoly::one()
        } else {
            p
        }
    }

    fn build<K: crate::algebra::Key>(
        &mut self,
        s: &Shape,
        mut key: impl FnMut(&mut Self, Mask) -> K,
    ) -> crate::algebra::Series<K> {
        let mut out = crate::algebra::Series::new(s.dim, s.order);
        for _ in 0..s.terms {
            let dx = self.mask(s.dim, s.dx);
            let k = key(self, dx);
            let c = self.xpoly(s.dim, s.x_deg);
            out.add_term(k, &c);
        }
        out
    }

    pub fn sm(&mut self, s: &Shape) -> SmElement {
        self.build(s, |p, dx| {
            let d = p.below(s.y_deg);
            SmKey { dx, y: p.multi(s.dim, d) }
        })
    }

    /// Polyvector with exactly `arity` ∂/∂y factors.
    pub fn polyvector(&mut self, s: &Shape, arity: u32) -> PolyVector {
        self.build(s, |p, dx| {
            let d = p.below(s.y_deg);
            PvKey { dx, dy: p.mask(s.dim, arity), y: p.multi(s.dim, d) }
        })
    }

    /// Operator with `rank` slots, each of derivative order ≤ `slot_order`.
    pub fn diffop(&mut self, s: &Shape, rank: usize, slot_order: u32) -> PolyDiffOp {
        self.build(s, |p, dx| {
            let d = p.below(s.y_deg);
            let slots = (0..rank)
                .map(|_| {
                    let o = p.below(slot_order);
                    p.multi(s.dim, o)
                })
                .collect();
            DoKey { dx, slots, y: p.multi(s.dim, d) }
        })
    }

    /// Form with exactly `cdeg` generators `C`.
    pub fn eform(&mut self, s: &Shape, cdeg: u32) -> EForm {
        self.build(s, |p, dx| {
            let d = p.below(s.y_deg);
            EfKey { dx, y: p.multi(s.dim, d), c: p.mask(s.dim, cdeg) }
        })
    }

    /// Chain with `slots` tensor factors and total y-degree ≤ `y_deg`.
    pub fn chain(&mut self, s: &Shape, slots: usize) -> ChainElement {
        self.build(s, |p, dx| {
            let total = p.below(s.y_deg);
            let mut parts: SmallVec<[Multi; 4]> = SmallVec::from_elem(Multi::ZERO, slots);
            for _ in 0..total {
                let j = p.rng.gen_range(0..slots);
                let i = p.rng.gen_range(0..s.dim);
                parts[j] = parts[j].inc(i);
            }
            ChKey { dx, slots: parts }
        })
    }
}
