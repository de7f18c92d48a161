use std::sync::Arc;

use super::decalage_neg;
use super::element::{Element, HbarSeries};
use crate::algebra::Rational;

/// A multilinear map on a list of inputs.
pub type MapFn<E, F> = Arc<dyn Fn(&[E]) -> F + Send + Sync>;
/// A multilinear map on L-inputs and one module vector.
pub type ModFn<E, M, N> = Arc<dyn Fn(&[E], &M) -> N + Send + Sync>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("table `{table}` is known up to arity {available}, arity {needed} was requested")]
    Capacity { table: String, needed: usize, available: usize },
    #[error("probe element is not homogeneous")]
    Inhomogeneous,
    #[error("expected an element of degree {expected}, found {found:?}")]
    DegreeMismatch { expected: i32, found: Option<i32> },
    #[error("element is not Maurer–Cartan ({residual_terms} residual terms)")]
    NotMaurerCartan { residual_terms: usize },
}

/// Shifted degree `deg − 1`; zero elements get 0 (their sign never matters).
pub(crate) fn shifted<E: Element>(e: &E) -> Result<i32, TableError> {
    if e.is_zero() {
        return Ok(0);
    }
    e.degree().map(|d| d - 1).ok_or(TableError::Inhomogeneous)
}

pub(crate) fn degree_of<E: Element>(e: &E) -> i32 {
    if e.is_zero() {
        0
    } else {
        e.degree().unwrap_or(0)
    }
}

fn sign_if<E: Element>(e: E, neg: bool) -> E {
    if neg {
        e.scale(&Rational::from_int(-1))
    } else {
        e
    }
}

fn capacity(table: &str, needed: usize, available: usize) -> TableError {
    TableError::Capacity { table: table.to_string(), needed, available }
}

/// Structure maps `l_1, l_2, …` of an L∞-algebra (shifted convention).
#[derive(Clone)]
pub struct AlgebraTable<E> {
    pub name: String,
    zero: E,
    maps: Vec<MapFn<E, E>>,
    /// If set, all maps beyond the table vanish; otherwise they are unknown.
    complete: bool,
}

impl<E: Element> AlgebraTable<E> {
    pub fn from_shifted(name: &str, zero: E, maps: Vec<MapFn<E, E>>, complete: bool) -> Self {
        AlgebraTable { name: name.into(), zero, maps, complete }
    }

    /// Wraps antisymmetric maps `Q_n` (degree `2 − n`) with the décalage sign.
    pub fn from_antisymmetric(name: &str, zero: E, maps: Vec<MapFn<E, E>>, complete: bool) -> Self {
        let maps = maps.into_iter().map(decalage_wrap).collect();
        AlgebraTable { name: name.into(), zero, maps, complete }
    }

    /// A DGLA `(L, d, [,])` with `Q_1 = d`, `Q_2 = [,]`.
    pub fn from_dgla(
        name: &str,
        zero: E,
        d: impl Fn(&E) -> E + Send + Sync + 'static,
        bracket: impl Fn(&E, &E) -> E + Send + Sync + 'static,
    ) -> Self {
        let q1: MapFn<E, E> = Arc::new(move |a: &[E]| d(&a[0]));
        let q2: MapFn<E, E> = Arc::new(move |a: &[E]| bracket(&a[0], &a[1]));
        Self::from_antisymmetric(name, zero, vec![q1, q2], true)
    }

    pub fn zero(&self) -> &E {
        &self.zero
    }

    /// Number of stored maps.
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Highest arity at which `l_n` is known (unbounded for complete tables).
    pub fn known_arity(&self) -> usize {
        if self.complete {
            usize::MAX
        } else {
            self.maps.len()
        }
    }

    /// `l_n(args)` with `n = args.len()`.
    pub fn l(&self, args: &[E]) -> Result<E, TableError> {
        let n = args.len();
        match self.maps.get(n - 1) {
            Some(f) => Ok(f(args)),
            None if self.complete => Ok(self.zero.zero_like()),
            None => Err(capacity(&self.name, n, self.maps.len())),
        }
    }

    pub(crate) fn maps(&self) -> &[MapFn<E, E>] {
        &self.maps
    }
}

fn decalage_wrap<E: Element, F: Element>(f: MapFn<E, F>) -> MapFn<E, F> {
    Arc::new(move |a: &[E]| {
        let degs: Vec<i32> = a.iter().map(degree_of).collect();
        sign_if(f(a), decalage_neg(&degs))
    })
}

fn decalage_wrap_mod<E: Element, M: Element, N: Element>(f: ModFn<E, M, N>) -> ModFn<E, M, N> {
    Arc::new(move |a: &[E], v: &M| {
        let mut degs: Vec<i32> = a.iter().map(degree_of).collect();
        degs.push(degree_of(v));
        sign_if(f(a, v), decalage_neg(&degs))
    })
}

/// Components `F_1, F_2, …` of an L∞-morphism (shifted convention).
#[derive(Clone)]
pub struct MorphismTable<E, F> {
    pub name: String,
    zero: F,
    maps: Vec<MapFn<E, F>>,
    complete: bool,
}

impl<E: Element, F: Element> MorphismTable<E, F> {
    pub fn from_shifted(name: &str, zero: F, maps: Vec<MapFn<E, F>>, complete: bool) -> Self {
        MorphismTable { name: name.into(), zero, maps, complete }
    }

    /// Wraps antisymmetric components `F_n` (degree `1 − n`) with the décalage sign.
    pub fn from_antisymmetric(name: &str, zero: F, maps: Vec<MapFn<E, F>>, complete: bool) -> Self {
        MorphismTable { name: name.into(), zero, maps: maps.into_iter().map(decalage_wrap).collect(), complete }
    }

    pub fn zero(&self) -> &F {
        &self.zero
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn known_arity(&self) -> usize {
        if self.complete {
            usize::MAX
        } else {
            self.maps.len()
        }
    }

    pub fn f(&self, args: &[E]) -> Result<F, TableError> {
        let n = args.len();
        match self.maps.get(n - 1) {
            Some(f) => Ok(f(args)),
            None if self.complete => Ok(self.zero.zero_like()),
            None => Err(capacity(&self.name, n, self.maps.len())),
        }
    }
}

/// Structure maps `φ_0, φ_1, …` of an L∞-module: `φ_n` takes `n` algebra inputs and one vector.
#[derive(Clone)]
pub struct ModuleTable<E, M> {
    pub name: String,
    zero: M,
    maps: Vec<ModFn<E, M, M>>,
    complete: bool,
}

impl<E: Element, M: Element> ModuleTable<E, M> {
    pub fn from_shifted(name: &str, zero: M, maps: Vec<ModFn<E, M, M>>, complete: bool) -> Self {
        ModuleTable { name: name.into(), zero, maps, complete }
    }

    pub fn from_antisymmetric(name: &str, zero: M, maps: Vec<ModFn<E, M, M>>, complete: bool) -> Self {
        ModuleTable { name: name.into(), zero, maps: maps.into_iter().map(decalage_wrap_mod).collect(), complete }
    }

    /// A DG module: differential `b` and action `ρ`.
    pub fn from_dg_module(
        name: &str,
        zero: M,
        b: impl Fn(&M) -> M + Send + Sync + 'static,
        rho: impl Fn(&E, &M) -> M + Send + Sync + 'static,
    ) -> Self {
        let f0: ModFn<E, M, M> = Arc::new(move |_: &[E], v: &M| b(v));
        let f1: ModFn<E, M, M> = Arc::new(move |a: &[E], v: &M| rho(&a[0], v));
        Self::from_antisymmetric(name, zero, vec![f0, f1], true)
    }

    pub fn zero(&self) -> &M {
        &self.zero
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// `φ_n(args, v)` with `n = args.len()`.
    pub fn phi(&self, args: &[E], v: &M) -> Result<M, TableError> {
        let n = args.len();
        match self.maps.get(n) {
            Some(f) => Ok(f(args, v)),
            None if self.complete => Ok(self.zero.zero_like()),
            None => Err(capacity(&self.name, n, self.maps.len().saturating_sub(1))),
        }
    }

    pub(crate) fn maps(&self) -> &[ModFn<E, M, M>] {
        &self.maps
    }
}

/// Components `κ_0, κ_1, …` of a morphism of L∞-modules over a fixed algebra.
#[derive(Clone)]
pub struct ModuleMorphismTable<E, M, N> {
    pub name: String,
    zero: N,
    maps: Vec<ModFn<E, M, N>>,
    complete: bool,
}

impl<E: Element, M: Element, N: Element> ModuleMorphismTable<E, M, N> {
    pub fn from_shifted(name: &str, zero: N, maps: Vec<ModFn<E, M, N>>, complete: bool) -> Self {
        ModuleMorphismTable { name: name.into(), zero, maps, complete }
    }

    pub fn from_antisymmetric(name: &str, zero: N, maps: Vec<ModFn<E, M, N>>, complete: bool) -> Self {
        ModuleMorphismTable {
            name: name.into(),
            zero,
            maps: maps.into_iter().map(decalage_wrap_mod).collect(),
            complete,
        }
    }

    pub fn zero(&self) -> &N {
        &self.zero
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn kappa(&self, args: &[E], v: &M) -> Result<N, TableError> {
        let n = args.len();
        match self.maps.get(n) {
            Some(f) => Ok(f(args, v)),
            None if self.complete => Ok(self.zero.zero_like()),
            None => Err(capacity(&self.name, n, self.maps.len().saturating_sub(1))),
        }
    }

    pub(crate) fn maps(&self) -> &[ModFn<E, M, N>] {
        &self.maps
    }
}

/// An element of `L ⊕ M`.
#[derive(Debug, Clone)]
pub struct Pair<L, M> {
    pub l: L,
    pub m: M,
}

impl<L: Element, M: Element> Pair<L, M> {
    pub fn left(l: L, zero_m: &M) -> Self {
        Pair { l, m: zero_m.zero_like() }
    }
    pub fn right(zero_l: &L, m: M) -> Self {
        Pair { l: zero_l.zero_like(), m }
    }
}

impl<L: Element, M: Element> Element for Pair<L, M> {
    fn zero_like(&self) -> Self {
        Pair { l: self.l.zero_like(), m: self.m.zero_like() }
    }
    fn add(&self, o: &Self) -> Self {
        Pair { l: self.l.add(&o.l), m: self.m.add(&o.m) }
    }
    fn scale(&self, r: &Rational) -> Self {
        Pair { l: self.l.scale(r), m: self.m.scale(r) }
    }
    fn is_zero(&self) -> bool {
        self.l.is_zero() && self.m.is_zero()
    }
    fn term_count(&self) -> usize {
        self.l.term_count() + self.m.term_count()
    }
    fn max_y_degree(&self) -> Option<u32> {
        self.l.max_y_degree().max(self.m.max_y_degree())
    }
    fn degree(&self) -> Option<i32> {
        match (self.l.is_zero(), self.m.is_zero()) {
            (true, true) => None,
            (false, true) => self.l.degree(),
            (true, false) => self.m.degree(),
            (false, false) => {
                let (a, b) = (self.l.degree()?, self.m.degree()?);
                (a == b).then_some(a)
            }
        }
    }
}

/// Splits a list of pairs into all component choices with at most one `M` entry:
/// calls `f(l_args, Some((position, v)))` or `f(l_args, None)`.
fn expand_pairs<L: Element, M: Element>(args: &[Pair<L, M>], mut f: impl FnMut(Vec<L>, Option<(usize, M)>)) {
    if args.iter().all(|a| !a.l.is_zero()) {
        f(args.iter().map(|a| a.l.clone()).collect(), None);
    }
    for j in 0..args.len() {
        if args[j].m.is_zero() || args.iter().enumerate().any(|(i, a)| i != j && a.l.is_zero()) {
            continue;
        }
        let ls = args.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, a)| a.l.clone()).collect();
        f(ls, Some((j, args[j].m.clone())));
    }
}

/// Koszul sign for moving the vector at position `j` past the later algebra inputs.
fn to_end_neg<L: Element, M: Element>(ls: &[L], j: usize, v: &M) -> bool {
    let sv = shifted(v).unwrap_or(0);
    let after: i32 = ls[j..].iter().map(|e| shifted(e).unwrap_or(0)).sum();
    (sv * after).rem_euclid(2) == 1
}

/// The L∞-algebra `L ⊕ M` encoding a module; its relations with one `M` input are the module relations.
pub fn semidirect<E: Element, M: Element>(q: &AlgebraTable<E>, phi: &ModuleTable<E, M>) -> AlgebraTable<Pair<E, M>> {
    let len = q.maps().len().max(phi.maps().len());
    let complete = q.is_complete() && phi.is_complete();
    let zero = Pair { l: q.zero().clone(), m: phi.zero().clone() };
    let mut maps: Vec<MapFn<Pair<E, M>, Pair<E, M>>> = Vec::new();
    for _ in 1..=len {
        let (q, phi, zero) = (q.clone(), phi.clone(), zero.clone());
        maps.push(Arc::new(move |args: &[Pair<E, M>]| {
            let mut out = zero.clone();
            expand_pairs(args, |ls, mv| match mv {
                None => {
                    if let Ok(r) = q.l(&ls) {
                        out.l = out.l.add(&r);
                    }
                }
                Some((j, v)) => {
                    if let Ok(r) = phi.phi(&ls, &v) {
                        out.m = out.m.add(&sign_if(r, to_end_neg(&ls, j, &v)));
                    }
                }
            });
            out
        }));
    }
    AlgebraTable::from_shifted(&format!("{}⋉{}", q.name, phi.name), zero, maps, complete)
}

/// The morphism `L ⊕ M → L ⊕ N` given by the identity on `L` and `κ` on `M`.
pub fn identity_plus<E: Element, M: Element, N: Element>(
    kappa: &ModuleMorphismTable<E, M, N>,
    zero_l: &E,
) -> MorphismTable<Pair<E, M>, Pair<E, N>> {
    let zero = Pair { l: zero_l.clone(), m: kappa.zero().clone() };
    let len = kappa.maps().len().max(1);
    let mut maps: Vec<MapFn<Pair<E, M>, Pair<E, N>>> = Vec::new();
    for n in 1..=len {
        let (kappa, zero) = (kappa.clone(), zero.clone());
        maps.push(Arc::new(move |args: &[Pair<E, M>]| {
            let mut out = zero.clone();
            expand_pairs(args, |ls, mv| match mv {
                None => {
                    if n == 1 {
                        out.l = out.l.add(&ls[0]);
                    }
                }
                Some((j, v)) => {
                    if let Ok(r) = kappa.kappa(&ls, &v) {
                        out.m = out.m.add(&sign_if(r, to_end_neg(&ls, j, &v)));
                    }
                }
            });
            out
        }));
    }
    MorphismTable::from_shifted(&format!("id+{}", kappa.name), zero, maps, kappa.is_complete())
}

fn hbar_zero<E: Element>(zero: &E, order: usize) -> HbarSeries<E> {
    HbarSeries::monomial(zero, 0, order)
}

impl<E: Element> AlgebraTable<E> {
    /// The same maps extended `ħ`-linearly to series truncated at `order`.
    pub fn over_hbar(&self, order: usize) -> AlgebraTable<HbarSeries<E>> {
        let zero = self.zero.clone();
        let maps = self
            .maps
            .iter()
            .map(|f| {
                let (f, zero) = (f.clone(), zero.clone());
                let g: MapFn<HbarSeries<E>, HbarSeries<E>> = Arc::new(move |a: &[HbarSeries<E>]| {
                    let refs: Vec<&HbarSeries<E>> = a.iter().collect();
                    HbarSeries::multilinear(&refs, &zero, |p| f(p))
                });
                g
            })
            .collect();
        AlgebraTable { name: self.name.clone(), zero: hbar_zero(&self.zero, order), maps, complete: self.complete }
    }
}

impl<E: Element, F: Element> MorphismTable<E, F> {
    pub fn over_hbar(&self, order: usize) -> MorphismTable<HbarSeries<E>, HbarSeries<F>> {
        let maps = self
            .maps
            .iter()
            .map(|f| {
                let (f, zero) = (f.clone(), self.zero.clone());
                let g: MapFn<HbarSeries<E>, HbarSeries<F>> = Arc::new(move |a: &[HbarSeries<E>]| {
                    let refs: Vec<&HbarSeries<E>> = a.iter().collect();
                    HbarSeries::multilinear(&refs, &zero, |p| f(p))
                });
                g
            })
            .collect();
        MorphismTable { name: self.name.clone(), zero: hbar_zero(&self.zero, order), maps, complete: self.complete }
    }
}

fn lift_mod<E: Element, M: Element, N: Element>(
    f: &ModFn<E, M, N>,
    zero: &N,
) -> ModFn<HbarSeries<E>, HbarSeries<M>, HbarSeries<N>> {
    let (f, zero) = (f.clone(), zero.clone());
    Arc::new(move |a: &[HbarSeries<E>], v: &HbarSeries<M>| {
        let refs: Vec<&HbarSeries<E>> = a.iter().collect();
        HbarSeries::multilinear_with(&refs, v, &zero, |p, w| f(p, w))
    })
}

impl<E: Element, M: Element> ModuleTable<E, M> {
    pub fn over_hbar(&self, order: usize) -> ModuleTable<HbarSeries<E>, HbarSeries<M>> {
        let maps = self.maps.iter().map(|f| lift_mod(f, &self.zero)).collect();
        ModuleTable { name: self.name.clone(), zero: hbar_zero(&self.zero, order), maps, complete: self.complete }
    }
}

impl<E: Element, M: Element, N: Element> ModuleMorphismTable<E, M, N> {
    pub fn over_hbar(&self, order: usize) -> ModuleMorphismTable<HbarSeries<E>, HbarSeries<M>, HbarSeries<N>> {
        let maps = self.maps.iter().map(|f| lift_mod(f, &self.zero)).collect();
        ModuleMorphismTable {
            name: self.name.clone(),
            zero: hbar_zero(&self.zero, order),
            maps,
            complete: self.complete,
        }
    }
}
