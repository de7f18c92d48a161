//! Symmetric multi-indices and antisymmetric index sets.
//!
//! Indices are 0-based in the Rust API; text formats use 1-based indices.

use std::fmt;

/// Largest supported dimension.
pub const MAX_DIM: usize = 6;

/// Exponent vector of a monomial in `d` commuting variables.
///
/// Equivalent to a sorted multiset of indices; entries past `d` are always zero.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Multi(pub [u8; MAX_DIM]);

impl Multi {
    pub const ZERO: Multi = Multi([0; MAX_DIM]);

    pub fn unit(i: usize) -> Self {
        let mut m = Self::ZERO;
        m.0[i] = 1;
        m
    }

    /// From a list of (0-based) indices with repetition, in any order.
    pub fn from_indices(idx: &[usize]) -> Self {
        let mut m = Self::ZERO;
        for &i in idx {
            m.0[i] += 1;
        }
        m
    }

    pub fn from_exponents(e: &[u8]) -> Self {
        let mut m = Self::ZERO;
        m.0[..e.len()].copy_from_slice(e);
        m
    }

    /// Non-decreasing list of indices.
    pub fn indices(&self) -> Vec<usize> {
        let mut v = Vec::with_capacity(self.degree() as usize);
        for (i, &e) in self.0.iter().enumerate() {
            for _ in 0..e {
                v.push(i);
            }
        }
        v
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        self.0[i]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.0 == [0; MAX_DIM]
    }

    #[inline]
    pub fn add(&self, o: &Multi) -> Multi {
        let mut r = *self;
        for i in 0..MAX_DIM {
            r.0[i] += o.0[i];
        }
        r
    }

    /// `self - o` if `o ≤ self` componentwise.
    #[inline]
    pub fn checked_sub(&self, o: &Multi) -> Option<Multi> {
        let mut r = *self;
        for i in 0..MAX_DIM {
            r.0[i] = self.0[i].checked_sub(o.0[i])?;
        }
        Some(r)
    }

    #[inline]
    pub fn inc(&self, i: usize) -> Multi {
        let mut r = *self;
        r.0[i] += 1;
        r
    }

    #[inline]
    pub fn dec(&self, i: usize) -> Option<Multi> {
        let mut r = *self;
        r.0[i] = r.0[i].checked_sub(1)?;
        Some(r)
    }

    pub fn le(&self, o: &Multi) -> bool {
        (0..MAX_DIM).all(|i| self.0[i] <= o.0[i])
    }

    /// Coefficient of `∂^α y^m = c · y^{m-α}`, i.e. `∏ m_i!/(m_i-α_i)!`; `None` if it vanishes.
    pub fn falling(&self, alpha: &Multi) -> Option<(u64, Multi)> {
        let rest = self.checked_sub(alpha)?;
        let mut c: u64 = 1;
        for i in 0..MAX_DIM {
            for t in 0..alpha.0[i] {
                c *= (self.0[i] - t) as u64;
            }
        }
        Some((c, rest))
    }

    /// `∏ m_i!`.
    pub fn factorial(&self) -> u64 {
        let mut c: u64 = 1;
        for &e in &self.0 {
            for t in 2..=e as u64 {
                c *= t;
            }
        }
        c
    }

    /// Writes `v1^2*v3` style text with the given variable stem (1-based), or `""` for the zero multi-index.
    pub fn fmt_with(&self, stem: &str) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("{stem}{}", i + 1)),
                _ => parts.push(format!("{stem}{}^{e}", i + 1)),
            }
        }
        parts.join("*")
    }

    /// All multi-indices in `d` variables of total degree exactly `p`, in increasing order.
    pub fn all_of_degree(d: usize, p: u32) -> Vec<Multi> {
        fn rec(d: usize, i: usize, left: u32, cur: &mut Multi, out: &mut Vec<Multi>) {
            if i + 1 == d {
                cur.0[i] = left as u8;
                out.push(*cur);
                cur.0[i] = 0;
                return;
            }
            for e in 0..=left {
                cur.0[i] = e as u8;
                rec(d, i + 1, left - e, cur, out);
            }
            cur.0[i] = 0;
        }
        let mut out = Vec::new();
        if d == 0 {
            if p == 0 {
                out.push(Multi::ZERO);
            }
            return out;
        }
        let mut cur = Multi::ZERO;
        rec(d, 0, p, &mut cur, &mut out);
        out.sort();
        out
    }
}

impl fmt::Debug for Multi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.indices())
    }
}

/// A strictly increasing set of anticommuting generator indices, stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mask(pub u16);

impl Mask {
    pub const EMPTY: Mask = Mask(0);

    pub fn single(i: usize) -> Self {
        Mask(1 << i)
    }

    #[inline]
    pub fn len(&self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..16).filter(move |&i| self.contains(i))
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Number of elements strictly below `i`.
    #[inline]
    fn below(&self, i: usize) -> u32 {
        (self.0 & ((1u16 << i) - 1)).count_ones()
    }

    #[inline]
    fn above(&self, i: usize) -> u32 {
        (self.0 >> (i + 1)).count_ones()
    }

    /// `e_i ∧ self`: the new set and the sign, or `None` if `i` is present.
    #[inline]
    pub fn insert_left(&self, i: usize) -> Option<(Mask, bool)> {
        if self.contains(i) {
            return None;
        }
        Some((Mask(self.0 | (1 << i)), self.below(i) % 2 == 1))
    }

    /// Left contraction `ι_i self` (remove `i` after moving it to the front).
    #[inline]
    pub fn contract_left(&self, i: usize) -> Option<(Mask, bool)> {
        if !self.contains(i) {
            return None;
        }
        Some((Mask(self.0 & !(1 << i)), self.below(i) % 2 == 1))
    }

    /// Right derivative: move `i` to the back, then remove it.
    #[inline]
    pub fn contract_right(&self, i: usize) -> Option<(Mask, bool)> {
        if !self.contains(i) {
            return None;
        }
        Some((Mask(self.0 & !(1 << i)), self.above(i) % 2 == 1))
    }

    /// `self ∧ o`: the union and whether the reordering sign is negative; `None` if they overlap.
    #[inline]
    pub fn wedge(&self, o: &Mask) -> Option<(Mask, bool)> {
        if self.0 & o.0 != 0 {
            return None;
        }
        let mut inv = 0u32;
        let mut b = o.0;
        while b != 0 {
            let j = b.trailing_zeros() as usize;
            inv += self.above(j);
            b &= b - 1;
        }
        Some((Mask(self.0 | o.0), inv % 2 == 1))
    }

    /// Canonical set from an arbitrary index list: returns `None` on repetition,
    /// otherwise the set and whether sorting was an odd permutation.
    pub fn from_list(idx: &[usize]) -> Option<(Mask, bool)> {
        let mut m = Mask::EMPTY;
        let mut neg = false;
        for &i in idx.iter().rev() {
            let (n, s) = m.insert_left(i)?;
            m = n;
            neg ^= s;
        }
        Some((m, neg))
    }

    pub fn fmt_with(&self, stem: &str) -> String {
        self.iter().map(|i| format!("{stem}{}", i + 1)).collect::<Vec<_>>().join("^")
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.indices())
    }
}
