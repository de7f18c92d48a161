//! Truncated keyed series over `XPoly`, shared by all element families.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use super::multi::{Mask, Multi, MAX_DIM};
use super::rational::Rational;
use super::xpoly::XPoly;

/// Truncation order meaning "keep everything".
pub const UNTRUNCATED: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Ω(M, SM): functions of (x, dx, y).
    Sm,
    /// Ω(M, 𝒯_poly): fiberwise polyvector fields.
    Polyvector,
    /// Ω(M, 𝒟_poly): fiberwise polydifferential operators.
    Diffop,
    /// Ω(M, ℰ): fiberwise exterior forms in the generators C.
    Eform,
    /// Ω(M, 𝒞^poly): fiberwise Hochschild chains.
    Chain,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("index {index} outside 1..{dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension {0} exceeds the supported maximum {MAX_DIM}")]
    DimensionTooLarge(usize),
    #[error("incompatible operands: {0}")]
    Incompatible(String),
    #[error("raw term is missing the `{0}` slot for this family")]
    MissingSlot(&'static str),
}

/// Unnormalized key description with 0-based indices in arbitrary order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawKey {
    pub dx: Vec<usize>,
    pub y: Vec<usize>,
    /// ∂/∂y wedge factors (polyvectors).
    pub dy: Vec<usize>,
    /// C generators (forms).
    pub c: Vec<usize>,
    /// Derivative multi-indices (operators) or per-slot monomials (chains).
    pub slots: Vec<Vec<usize>>,
}

/// A term key of one element family.
pub trait Key: Ord + Clone + fmt::Debug + Send + Sync + 'static {
    const FAMILY: Family;
    fn dx(&self) -> Mask;
    fn with_dx(&self, dx: Mask) -> Self;
    /// Total fiber degree (summed over chain slots).
    fn y_degree(&self) -> u32;
    /// Degree inside the fiber complex (shifted conventions).
    fn internal_degree(&self) -> i32;
    /// Canonical key and sign from a raw description; `Ok(None)` if the term vanishes.
    fn from_raw(raw: &RawKey, dim: usize) -> Result<Option<(Self, bool)>, AlgebraError>;
    fn to_raw(&self) -> RawKey;
    /// Human-readable fiber part (without dx).
    fn fmt_fiber(&self) -> String;
}

/// Keys carrying exactly one fiber monomial `y^m`.
pub trait FiberKey: Key {
    fn y(&self) -> Multi;
    fn with_y(&self, y: Multi) -> Self;
}

fn check(idx: &[usize], dim: usize) -> Result<(), AlgebraError> {
    for &i in idx {
        if i >= dim {
            return Err(AlgebraError::IndexOutOfRange { index: i + 1, dim });
        }
    }
    Ok(())
}

fn mask_of(idx: &[usize], dim: usize) -> Result<Option<(Mask, bool)>, AlgebraError> {
    check(idx, dim)?;
    Ok(Mask::from_list(idx))
}

fn multi_of(idx: &[usize], dim: usize) -> Result<Multi, AlgebraError> {
    check(idx, dim)?;
    Ok(Multi::from_indices(idx))
}

fn fmt_mono(parts: &[String]) -> String {
    let v: Vec<&String> = parts.iter().filter(|s| !s.is_empty()).collect();
    if v.is_empty() {
        "1".into()
    } else {
        v.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("*")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SmKey {
    pub dx: Mask,
    pub y: Multi,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PvKey {
    pub dx: Mask,
    /// Set of ∂/∂y factors.
    pub dy: Mask,
    pub y: Multi,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DoKey {
    pub dx: Mask,
    /// Derivative multi-index per argument slot; empty for functions.
    pub slots: SmallVec<[Multi; 3]>,
    pub y: Multi,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EfKey {
    pub dx: Mask,
    pub y: Multi,
    pub c: Mask,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ChKey {
    pub dx: Mask,
    /// Monomial in y_j per tensor slot.
    pub slots: SmallVec<[Multi; 4]>,
}

impl Key for SmKey {
    const FAMILY: Family = Family::Sm;
    fn dx(&self) -> Mask {
        self.dx
    }
    fn with_dx(&self, dx: Mask) -> Self {
        SmKey { dx, ..*self }
    }
    fn y_degree(&self) -> u32 {
        self.y.degree()
    }
    fn internal_degree(&self) -> i32 {
        0
    }
    fn from_raw(raw: &RawKey, dim: usize) -> Result<Option<(Self, bool)>, AlgebraError> {
        let y = multi_of(&raw.y, dim)?;
        Ok(mask_of(&raw.dx, dim)?.map(|(dx, s)| (SmKey { dx, y }, s)))
    }
    fn to_raw(&self) -> RawKey {
        RawKey { dx: self.dx.indices(), y: self.y.indices(), ..Default::default() }
    }
    fn fmt_fiber(&self) -> String {
        fmt_mono(&[self.y.fmt_with("y")])
    }
}

impl FiberKey for SmKey {
    fn y(&self) -> Multi {
        self.y
    }
    fn with_y(&self, y: Multi) -> Self {
        SmKey { y, ..*self }
    }
}

impl Key for PvKey {
    const FAMILY: Family = Family::Polyvector;
    fn dx(&self) -> Mask {
        self.dx
    }
    fn with_dx(&self, dx: Mask) -> Self {
        PvKey { dx, ..*self }
    }
    fn y_degree(&self) -> u32 {
        self.y.degree()
    }
    fn internal_degree(&self) -> i32 {
        self.dy.len() as i32 - 1
    }
    fn from_raw(raw: &RawKey, dim: usize) -> Result<Option<(Self, bool)>, AlgebraError> {
        let y = multi_of(&raw.y, dim)?;
        let Some((dx, s1)) = mask_of(&raw.dx, dim)? else { return Ok(None) };
        let Some((dy, s2)) = mask_of(&raw.dy, dim)? else { return Ok(None) };
        Ok(Some((PvKey { dx, dy, y }, s1 ^ s2)))
    }
    fn to_raw(&self) -> RawKey {
        RawKey { dx: self.dx.indices(), y: self.y.indices(), dy: self.dy.indices(), ..Default::default() }
    }
    fn fmt_fiber(&self) -> String {
        fmt_mono(&[self.y.fmt_with("y"), self.dy.fmt_with("dy")])
    }
}

impl FiberKey for PvKey {
    fn y(&self) -> Multi {
        self.y
    }
    fn with_y(&self, y: Multi) -> Self {
        PvKey { y, ..*self }
    }
}

impl Key for DoKey {
    const FAMILY: Family = Family::Diffop;
    fn dx(&self) -> Mask {
        self.dx
    }
    fn with_dx(&self, dx: Mask) -> Self {
        DoKey { dx, ..self.clone() }
    }
    fn y_degree(&self) -> u32 {
        self.y.degree()
    }
    fn internal_degree(&self) -> i32 {
        self.slots.len() as i32 - 1
    }
    fn from_raw(raw: &RawKey, dim: usize) -> Result<Option<(Self, bool)>, AlgebraError> {
        let y = multi_of(&raw.y, dim)?;
        let mut slots = SmallVec::new();
        for s in &raw.slots {
            slots.push(multi_of(s, dim)?);
        }
        Ok(mask_of(&raw.dx, dim)?.map(|(dx, s)| (DoKey { dx, slots, y }, s)))
    }
    fn to_raw(&self) -> RawKey {
        RawKey {
            dx: self.dx.indices(),
            y: self.y.indices(),
            slots: self.slots.iter().map(|m| m.indices()).collect(),
            ..Default::default()
        }
    }
    fn fmt_fiber(&self) -> String {
        let ops: Vec<String> = self
            .slots
            .iter()
            .map(|m| {
                let s = m.fmt_with("d");
                if s.is_empty() {
                    "1".into()
                } else {
                    s
                }
            })
            .collect();
        let op = if ops.is_empty() { String::new() } else { format!("[{}]", ops.join(" ⊗ ")) };
        fmt_mono(&[self.y.fmt_with("y"), op])
    }
}

impl FiberKey for DoKey {
    fn y(&self) -> Multi {
        self.y
    }
    fn with_y(&self, y: Multi) -> Self {
        DoKey { y, ..self.clone() }
    }
}

impl Key for EfKey {
    const FAMILY: Family = Family::Eform;
    fn dx(&self) -> Mask {
        self.dx
    }
    fn with_dx(&self, dx: Mask) -> Self {
        EfKey { dx, ..*self }
    }
    fn y_degree(&self) -> u32 {
        self.y.degree()
    }
    fn internal_degree(&self) -> i32 {
        -(self.c.len() as i32)
    }
    fn from_raw(raw: &RawKey, dim: usize) -> Result<Option<(Self, bool)>, AlgebraError> {
        let y = multi_of(&raw.y, dim)?;
        let Some((dx, s1)) = mask_of(&raw.dx, dim)? else { return Ok(None) };
        let Some((c, s2)) = mask_of(&raw.c, dim)? else { return Ok(None) };
        Ok(Some((EfKey { dx, y, c }, s1 ^ s2)))
    }
    fn to_raw(&self) -> RawKey {
        RawKey { dx: self.dx.indices(), y: self.y.indices(), c: self.c.indices(), ..Default::default() }
    }
    fn fmt_fiber(&self) -> String {
        fmt_mono(&[self.y.fmt_with("y"), self.c.fmt_with("C")])
    }
}

impl FiberKey for EfKey {
    fn y(&self) -> Multi {
        self.y
    }
    fn with_y(&self, y: Multi) -> Self {
        EfKey { y, ..*self }
    }
}

impl Key for ChKey {
    const FAMILY: Family = Family::Chain;
    fn dx(&self) -> Mask {
        self.dx
    }
    fn with_dx(&self, dx: Mask) -> Self {
        ChKey { dx, ..self.clone() }
    }
    fn y_degree(&self) -> u32 {
        self.slots.iter().map(|m| m.degree()).sum()
    }
    fn internal_degree(&self) -> i32 {
        1 - self.slots.len() as i32
    }
    fn from_raw(raw: &RawKey, dim: usize) -> Result<Option<(Self, bool)>, AlgebraError> {
        if raw.slots.is_empty() {
            return Err(AlgebraError::MissingSlot("slots"));
        }
        let mut slots = SmallVec::new();
        for s in &raw.slots {
            slots.push(multi_of(s, dim)?);
        }
        Ok(mask_of(&raw.dx, dim)?.map(|(dx, s)| (ChKey { dx, slots }, s)))
    }
    fn to_raw(&self) -> RawKey {
        RawKey { dx: self.dx.indices(), slots: self.slots.iter().map(|m| m.indices()).collect(), ..Default::default() }
    }
    fn fmt_fiber(&self) -> String {
        let parts: Vec<String> = self
            .slots
            .iter()
            .enumerate()
            .map(|(j, m)| {
                let s = m.fmt_with(&format!("y{j}_"));
                if s.is_empty() {
                    "1".into()
                } else {
                    s
                }
            })
            .collect();
        parts.join(" ⊗ ")
    }
}

/// A finite sum of keyed terms with `XPoly` coefficients, truncated at total fiber degree `order`.
///
/// Equality compares dimension and terms; the truncation order is bookkeeping only.
#[derive(Clone)]
pub struct Series<K: Key> {
    dim: usize,
    order: u32,
    terms: BTreeMap<K, XPoly>,
}

impl<K: Key> PartialEq for Series<K> {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.terms == o.terms
    }
}

impl<K: Key> Eq for Series<K> {}

pub type SmElement = Series<SmKey>;
pub type PolyVector = Series<PvKey>;
pub type PolyDiffOp = Series<DoKey>;
pub type EForm = Series<EfKey>;
pub type ChainElement = Series<ChKey>;

impl<K: Key> Series<K> {
    pub fn new(dim: usize, order: u32) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Series { dim, order, terms: BTreeMap::new() }
    }

    pub fn zero_like(&self) -> Self {
        Self::new(self.dim, self.order)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn family(&self) -> Family {
        K::FAMILY
    }

    /// Builds an element from raw index lists, folding reordering signs into coefficients.
    pub fn normalize(
        dim: usize,
        order: u32,
        raw: impl IntoIterator<Item = (RawKey, XPoly)>,
    ) -> Result<Self, AlgebraError> {
        if dim > MAX_DIM {
            return Err(AlgebraError::DimensionTooLarge(dim));
        }
        let mut s = Self::new(dim, order);
        for (rk, c) in raw {
            if let Some((k, neg)) = K::from_raw(&rk, dim)? {
                s.add_term_signed(k, &c, neg);
            }
        }
        Ok(s)
    }

    /// Single-term element with a constant coefficient.
    pub fn from_key(dim: usize, order: u32, k: K, c: XPoly) -> Self {
        let mut s = Self::new(dim, order);
        s.add_term(k, &c);
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &XPoly)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (K, XPoly)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, k: &K) -> XPoly {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `self += c·k`, dropping keys beyond the truncation order.
    pub fn add_term(&mut self, k: K, c: &XPoly) {
        if c.is_zero() || k.y_degree() > self.order {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_term_signed(&mut self, k: K, c: &XPoly, neg: bool) {
        if neg {
            self.add_term(k, &c.neg());
        } else {
            self.add_term(k, c);
        }
    }

    /// `self += r·c·k`.
    pub fn add_term_scaled(&mut self, k: K, c: &XPoly, r: &Rational) {
        if r.is_zero() || c.is_zero() || k.y_degree() > self.order {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.scale(r));
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_scaled(c, r);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (k, c) in &o.terms {
            self.add_term(k.clone(), c);
        }
    }

    pub fn add_scaled(&mut self, o: &Self, r: &Rational) {
        for (k, c) in &o.terms {
            self.add_term_scaled(k.clone(), c, r);
        }
    }

    pub fn sub_assign(&mut self, o: &Self) {
        self.add_scaled(o, &Rational::from_int(-1));
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.with_order(self.order.min(o.order));
        r.add_assign(o);
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.with_order(self.order.min(o.order));
        r.sub_assign(o);
        r
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from_int(-1))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut s = self.zero_like();
        if !r.is_zero() {
            s.terms = self.terms.iter().map(|(k, c)| (k.clone(), c.scale(r))).collect();
        }
        s
    }

    /// Multiplies every coefficient by a base function.
    pub fn mul_xpoly(&self, p: &XPoly) -> Self {
        let mut s = self.zero_like();
        for (k, c) in &self.terms {
            s.add_term(k.clone(), &c.mul(p));
        }
        s
    }

    /// Copy with a different truncation order (dropping terms if it decreases).
    pub fn with_order(&self, order: u32) -> Self {
        let mut s = Self::new(self.dim, order);
        for (k, c) in &self.terms {
            s.add_term(k.clone(), c);
        }
        s
    }

    /// Removes all terms of total fiber degree `> n`.
    pub fn truncate(&self, n: u32) -> Self {
        self.with_order(self.order.min(n))
    }

    /// Terms of total fiber degree `≤ n`, keeping the original order.
    pub fn up_to_degree(&self, n: u32) -> Self {
        self.filter(|k| k.y_degree() <= n)
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        let mut s = self.zero_like();
        for (k, c) in &self.terms {
            if keep(k) {
                s.terms.insert(k.clone(), c.clone());
            }
        }
        s
    }

    /// Applies a sign/relabeling map termwise.
    pub fn map_keys(&self, mut f: impl FnMut(&K) -> Option<(K, Rational)>) -> Self {
        let mut s = self.zero_like();
        for (k, c) in &self.terms {
            if let Some((k2, r)) = f(k) {
                s.add_term_scaled(k2, c, &r);
            }
        }
        s
    }

    pub fn max_y_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.y_degree()).max()
    }

    pub fn min_y_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.y_degree()).min()
    }

    /// Total degree `|dx| + internal` if all terms agree.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|k| k.dx().len() as i32 + k.internal_degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// `∂/∂x^i` on coefficients.
    pub fn partial_x(&self, i: usize) -> Self {
        let mut s = self.zero_like();
        for (k, c) in &self.terms {
            s.add_term(k.clone(), &c.partial(i));
        }
        s
    }

    /// `dx^i ∧ self` (left multiplication).
    pub fn dx_left(&self, i: usize) -> Self {
        let mut s = self.zero_like();
        for (k, c) in &self.terms {
            if let Some((m, neg)) = k.dx().insert_left(i) {
                s.add_term_signed(k.with_dx(m), c, neg);
            }
        }
        s
    }

    /// Base de Rham differential `d = dx^i ∂/∂x^i` acting from the left.
    pub fn d(&self) -> Self {
        let mut s = self.zero_like();
        for (k, c) in &self.terms {
            for i in 0..self.dim {
                let dc = c.partial(i);
                if dc.is_zero() {
                    continue;
                }
                if let Some((m, neg)) = k.dx().insert_left(i) {
                    s.add_term_signed(k.with_dx(m), &dc, neg);
                }
            }
        }
        s
    }

    /// Left contraction `i(∂/∂x^i)` on the dx part.
    pub fn contract_dx(&self, i: usize) -> Self {
        let mut s = self.zero_like();
        for (k, c) in &self.terms {
            if let Some((m, neg)) = k.dx().contract_left(i) {
                s.add_term_signed(k.with_dx(m), c, neg);
            }
        }
        s
    }

    /// Multiplies by a dx-monomial from the left, with the reordering sign.
    pub fn wedge_dx_left(&self, m: Mask) -> Self {
        let mut s = self.zero_like();
        for (k, c) in &self.terms {
            if let Some((dx, neg)) = m.wedge(&k.dx()) {
                s.add_term_signed(k.with_dx(dx), c, neg);
            }
        }
        s
    }

    /// Terms with the given exterior degree.
    pub fn exterior_part(&self, q: u32) -> Self {
        self.filter(|k| k.dx().len() == q)
    }

    pub fn fmt_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = Vec::new();
        for (k, c) in &self.terms {
            let dx = k.dx().fmt_with("dx");
            let mut s = format!("({c})");
            if !dx.is_empty() {
                s.push('*');
                s.push_str(&dx);
            }
            s.push('*');
            s.push_str(&k.fmt_fiber());
            out.push(s);
        }
        out.join(" + ")
    }
}

impl<K: FiberKey> Series<K> {
    /// `∂/∂y^i`.
    pub fn partial_y(&self, i: usize) -> Self {
        let mut s = self.zero_like();
        for (k, c) in &self.terms {
            let e = k.y().get(i);
            if e > 0 {
                s.add_term_scaled(k.with_y(k.y().dec(i).unwrap()), c, &Rational::from_int(e as i64));
            }
        }
        s
    }

    /// Multiplies by `y^i`.
    pub fn mul_y(&self, i: usize) -> Self {
        let mut s = self.zero_like();
        for (k, c) in &self.terms {
            s.add_term(k.with_y(k.y().inc(i)), c);
        }
        s
    }
}

impl<K: Key> fmt::Debug for Series<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[d={}, N={}]({})", K::FAMILY, self.dim, self.order, self.fmt_text())
    }
}

impl<K: Key> fmt::Display for Series<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_text())
    }
}

/// Koszul-signed product on the supercommutative families.
pub trait GradedMul: Sized {
    fn graded_mul(&self, o: &Self) -> Self;
    /// Parity of each term as used by the product.
    fn parity(&self) -> Option<u32>;
}

impl GradedMul for SmElement {
    fn graded_mul(&self, o: &Self) -> Self {
        let mut s = Self::new(self.dim, self.order.min(o.order));
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                if k1.y.degree() + k2.y.degree() > s.order {
                    continue;
                }
                if let Some((dx, neg)) = k1.dx.wedge(&k2.dx) {
                    s.add_term_signed(SmKey { dx, y: k1.y.add(&k2.y) }, &c1.mul(c2), neg);
                }
            }
        }
        s
    }

    fn parity(&self) -> Option<u32> {
        self.homogeneous_degree().map(|d| d.rem_euclid(2) as u32)
    }
}

impl GradedMul for EForm {
    fn graded_mul(&self, o: &Self) -> Self {
        let mut s = Self::new(self.dim, self.order.min(o.order));
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                if k1.y.degree() + k2.y.degree() > s.order {
                    continue;
                }
                let Some((dx, n1)) = k1.dx.wedge(&k2.dx) else { continue };
                let Some((c, n2)) = k1.c.wedge(&k2.c) else { continue };
                // C-part of the left factor passes the dx-part of the right factor
                let n3 = (k1.c.len() * k2.dx.len()) % 2 == 1;
                s.add_term_signed(EfKey { dx, y: k1.y.add(&k2.y), c }, &c1.mul(c2), n1 ^ n2 ^ n3);
            }
        }
        s
    }

    fn parity(&self) -> Option<u32> {
        self.homogeneous_degree().map(|d| d.rem_euclid(2) as u32)
    }
}

impl PolyVector {
    /// Wedge product of polyvectors (unshifted grading on the ∂/∂y factors).
    pub fn wedge(&self, o: &Self) -> Self {
        let mut s = Self::new(self.dim, self.order.min(o.order));
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let Some((dx, n1)) = k1.dx.wedge(&k2.dx) else { continue };
                let Some((dy, n2)) = k1.dy.wedge(&k2.dy) else { continue };
                let n3 = (k1.dy.len() * k2.dx.len()) % 2 == 1;
                s.add_term_signed(PvKey { dx, dy, y: k1.y.add(&k2.y) }, &c1.mul(c2), n1 ^ n2 ^ n3);
            }
        }
        s
    }
}
