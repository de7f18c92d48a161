//! Koszul differential `δ`, its homotopies `δ⁻¹` and `h`, and the projection `σ`.

use smallvec::SmallVec;

use crate::algebra::{
    ChKey, ChainElement, EForm, FiberKey, Multi, PolyDiffOp, PolyVector, Rational, Series, SmElement,
};

/// Elements on which fiberwise vector fields act (the five families).
pub trait Fiberwise: Clone + PartialEq + std::fmt::Debug {
    /// Action of a (possibly dx-valued) fiberwise vector field: the bracket, Lie derivative or `R`.
    fn act(&self, v: &PolyVector) -> Self;
    /// `δ = dx^i ∂/∂y^i` (summed over all slots for chains).
    fn delta(&self) -> Self;
    /// Base de Rham differential `d = dx^i ∂/∂x^i`.
    fn d_x(&self) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn vanishes(&self) -> bool;
    /// Terms of total y-degree at most `n`.
    fn below(&self, n: u32) -> Self;
    fn truncation(&self) -> u32;
}

/// Families with a single fiber variable, where `δ⁻¹` and `σ` are defined.
pub trait Contractible: Fiberwise {
    fn delta_inv(&self) -> Self;
    fn sigma(&self) -> Self;
}

impl<K: FiberKey> Series<K> {
    /// `δ⁻¹`: rescales bidegree `(p, q)` by `1/(p+q)` after trading one dx for one y.
    pub fn delta_inv(&self) -> Self {
        let mut out = self.zero_like();
        for (k, c) in self.terms() {
            let p = k.y().degree();
            let q = k.dx().len();
            if p + q == 0 || q == 0 {
                continue;
            }
            let w = Rational::new(1, (p + q) as i64);
            for i in k.dx().iter() {
                let (m, neg) = k.dx().contract_left(i).unwrap();
                let key = k.with_dx(m).with_y(k.y().inc(i));
                out.add_term_scaled(key, c, &if neg { -w.clone() } else { w.clone() });
            }
        }
        out
    }

    /// `σ a = a|_{y = dx = 0}`.
    pub fn sigma(&self) -> Self {
        self.filter(|k| k.y().is_zero() && k.dx().is_empty())
    }

    /// Fiberwise Koszul differential `δ = dx^i ∂/∂y^i`.
    pub fn delta(&self) -> Self {
        let mut out = self.zero_like();
        for i in 0..self.dim() {
            out.add_assign(&self.partial_y(i).dx_left(i));
        }
        out
    }
}

macro_rules! fiberwise_common {
    () => {
        fn d_x(&self) -> Self {
            self.d()
        }
        fn plus(&self, o: &Self) -> Self {
            self.add(o)
        }
        fn minus(&self, o: &Self) -> Self {
            self.sub(o)
        }
        fn vanishes(&self) -> bool {
            self.is_zero()
        }
        fn below(&self, n: u32) -> Self {
            self.up_to_degree(n)
        }
        fn truncation(&self) -> u32 {
            self.order()
        }
    };
}

macro_rules! contractible {
    ($t:ty) => {
        impl Contractible for $t {
            fn delta_inv(&self) -> Self {
                Series::delta_inv(self)
            }
            fn sigma(&self) -> Self {
                Series::sigma(self)
            }
        }
    };
}

impl Fiberwise for SmElement {
    fn act(&self, v: &PolyVector) -> Self {
        v.apply_vector(self)
    }
    fn delta(&self) -> Self {
        Series::delta(self)
    }
    fiberwise_common!();
}

impl Fiberwise for PolyVector {
    fn act(&self, v: &PolyVector) -> Self {
        v.schouten(self)
    }
    fn delta(&self) -> Self {
        Series::delta(self)
    }
    fiberwise_common!();
}

impl Fiberwise for PolyDiffOp {
    fn act(&self, v: &PolyVector) -> Self {
        v.arity_part(1).hkr().gerstenhaber(self)
    }
    fn delta(&self) -> Self {
        Series::delta(self)
    }
    fiberwise_common!();
}

impl Fiberwise for EForm {
    fn act(&self, v: &PolyVector) -> Self {
        v.lie_derivative(self)
    }
    fn delta(&self) -> Self {
        Series::delta(self)
    }
    fiberwise_common!();
}

impl Fiberwise for ChainElement {
    fn act(&self, v: &PolyVector) -> Self {
        v.arity_part(1).hkr().chain_action(self)
    }
    fn delta(&self) -> Self {
        let mut out = self.zero_like();
        for (k, c) in self.terms() {
            for (j, m) in k.slots.iter().enumerate() {
                for i in 0..self.dim() {
                    let e = m.get(i);
                    if e == 0 {
                        continue;
                    }
                    let Some((dx, neg)) = k.dx.insert_left(i) else { continue };
                    let mut slots = k.slots.clone();
                    slots[j] = m.dec(i).unwrap();
                    let r = Rational::from_int(if neg { -(e as i64) } else { e as i64 });
                    out.add_term_scaled(ChKey { dx, slots }, c, &r);
                }
            }
        }
        out
    }
    fiberwise_common!();
}

contractible!(SmElement);
contractible!(PolyVector);
contractible!(PolyDiffOp);
contractible!(EForm);

/// Expansion of `(y_j − y₀ + t y₀)^e` in one coordinate: `(a, b, c, weight)` for
/// `y_j^a (−y₀)^b (t y₀)^c` with `a + b + c = e`.
fn trinomial(e: u8) -> Vec<(u8, u8, u8, i64)> {
    let fact = |n: u8| (1..=n as i64).product::<i64>();
    let mut out = Vec::new();
    for a in 0..=e {
        for b in 0..=(e - a) {
            let c = e - a - b;
            let w = fact(e) / (fact(a) * fact(b) * fact(c));
            out.push((a, b, c, if b % 2 == 1 { -w } else { w }));
        }
    }
    out
}

impl ChainElement {
    /// Chain homotopy `h`: substitute `y₀ → t y₀`, `dx → t dx`, `y_j → y_j + (t−1) y₀`,
    /// contract with `y₀^k i(∂/∂x^k)` and integrate `dt/t`.
    pub fn h_chain(&self) -> ChainElement {
        let mut out = self.zero_like();
        let dim = self.dim();
        for (k, c) in self.terms() {
            let q = k.dx.len();
            if q == 0 {
                continue;
            }
            // (slot-0 monomial, other slots, t-power, weight)
            let mut acc: Vec<(Multi, SmallVec<[Multi; 4]>, u32, i64)> =
                vec![(k.slots[0], SmallVec::from_elem(Multi::ZERO, k.slots.len() - 1), q + k.slots[0].degree(), 1)];
            for (j, m) in k.slots.iter().enumerate().skip(1) {
                for i in 0..dim {
                    let e = m.get(i);
                    if e == 0 {
                        continue;
                    }
                    let tri = trinomial(e);
                    let mut next = Vec::with_capacity(acc.len() * tri.len());
                    for (y0, rest, tp, w) in &acc {
                        for &(a, b, cc, tw) in &tri {
                            let mut y0n = *y0;
                            y0n.0[i] += b + cc;
                            let mut r = rest.clone();
                            r[j - 1].0[i] += a;
                            next.push((y0n, r, tp + cc as u32, w * tw));
                        }
                    }
                    acc = next;
                }
            }
            for (y0, rest, tp, w) in acc {
                let base = Rational::new(w, tp as i64);
                for i in k.dx.iter() {
                    let (dx, neg) = k.dx.contract_left(i).unwrap();
                    let mut slots: SmallVec<[Multi; 4]> = SmallVec::with_capacity(rest.len() + 1);
                    slots.push(y0.inc(i));
                    slots.extend_from_slice(&rest);
                    out.add_term_scaled(ChKey { dx, slots }, c, &if neg { -base.clone() } else { base.clone() });
                }
            }
        }
        out
    }
}
