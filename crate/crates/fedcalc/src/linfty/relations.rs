use super::element::Element;
use super::tables::{
    identity_plus, semidirect, shifted, AlgebraTable, ModuleMorphismTable, ModuleTable, MorphismTable, Pair, TableError,
};
use super::{koszul_perm_neg, set_partitions, unshuffles};
use crate::algebra::Rational;

/// Residual summary of one relation at one arity.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ArityResidual {
    pub arity: usize,
    /// Number of probe tuples evaluated.
    pub tuples: usize,
    pub residual_terms: usize,
    pub max_y_degree: Option<u32>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct RelationReport {
    pub relation: String,
    pub rows: Vec<ArityResidual>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn residual_terms(&self) -> usize {
        self.rows.iter().map(|r| r.residual_terms).sum()
    }

    pub fn max_y_degree(&self) -> Option<u32> {
        self.rows.iter().filter_map(|r| r.max_y_degree).max()
    }

    /// Smallest failing arity.
    pub fn first_failure(&self) -> Option<usize> {
        self.rows.iter().find(|r| !r.passed).map(|r| r.arity)
    }
}

#[derive(Default)]
struct Accumulator {
    tuples: usize,
    terms: usize,
    max_y: Option<u32>,
}

impl Accumulator {
    fn push<E: Element>(&mut self, r: &E) {
        self.tuples += 1;
        self.terms += r.term_count();
        self.max_y = self.max_y.max(r.max_y_degree());
    }

    fn row(self, arity: usize) -> ArityResidual {
        ArityResidual {
            arity,
            tuples: self.tuples,
            residual_terms: self.terms,
            max_y_degree: self.max_y,
            passed: self.terms == 0,
        }
    }
}

/// Non-decreasing index tuples of length `n` drawn from `0..m`.
pub(crate) fn multisets(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(m: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(m, n, i, cur, out);
            cur.pop();
        }
    }
    rec(m, n, 0, &mut cur, &mut out);
    out
}

fn pick<E: Clone>(xs: &[E], idx: &[usize]) -> Vec<E> {
    idx.iter().map(|&i| xs[i].clone()).collect()
}

fn signed<E: Element>(e: E, neg: bool) -> E {
    if neg {
        e.scale(&Rational::from_int(-1))
    } else {
        e
    }
}

fn shifted_all<E: Element>(xs: &[E]) -> Result<Vec<i32>, TableError> {
    xs.iter().map(shifted).collect()
}

/// `Σ_i Σ_unshuffles ε · l_{n−i+1}(l_i(x_first), x_rest)`; zero for an L∞-algebra.
pub fn algebra_residual<E: Element>(q: &AlgebraTable<E>, xs: &[E]) -> Result<E, TableError> {
    let n = xs.len();
    let sh = shifted_all(xs)?;
    let mut total = q.zero().zero_like();
    for i in 1..=n {
        for (first, rest) in unshuffles(n, i) {
            let inner = q.l(&pick(xs, &first))?;
            let mut args = vec![inner];
            args.extend(pick(xs, &rest));
            let outer = q.l(&args)?;
            let order: Vec<usize> = first.iter().chain(&rest).copied().collect();
            total = total.add(&signed(outer, koszul_perm_neg(&order, &sh)));
        }
    }
    Ok(total)
}

/// `Σ ε F(l(…), …) − Σ_partitions ε l⋄(F(…), …, F(…))`; zero for an L∞-morphism.
pub fn morphism_residual<E: Element, F: Element>(
    f: &MorphismTable<E, F>,
    q: &AlgebraTable<E>,
    qd: &AlgebraTable<F>,
    xs: &[E],
) -> Result<F, TableError> {
    let n = xs.len();
    let sh = shifted_all(xs)?;
    let mut total = f.zero().zero_like();
    for i in 1..=n {
        for (first, rest) in unshuffles(n, i) {
            let inner = q.l(&pick(xs, &first))?;
            let mut args = vec![inner];
            args.extend(pick(xs, &rest));
            let outer = f.f(&args)?;
            let order: Vec<usize> = first.iter().chain(&rest).copied().collect();
            total = total.add(&signed(outer, koszul_perm_neg(&order, &sh)));
        }
    }
    for blocks in set_partitions(n) {
        let mut images = Vec::with_capacity(blocks.len());
        for b in &blocks {
            images.push(f.f(&pick(xs, b))?);
        }
        let outer = qd.l(&images)?;
        let order: Vec<usize> = blocks.concat();
        total = total.sub(&signed(outer, koszul_perm_neg(&order, &sh)));
    }
    Ok(total)
}

/// Checks the algebra relations on all multisets of probes up to `max_arity`.
pub fn relation_check_algebra<E: Element>(
    q: &AlgebraTable<E>,
    probes: &[E],
    max_arity: usize,
) -> Result<RelationReport, TableError> {
    let mut rows = Vec::new();
    for n in 1..=max_arity {
        let mut acc = Accumulator::default();
        for idx in multisets(probes.len(), n) {
            acc.push(&algebra_residual(q, &pick(probes, &idx))?);
        }
        rows.push(acc.row(n));
    }
    Ok(RelationReport { relation: format!("algebra {}", q.name), rows })
}

pub fn relation_check_morphism<E: Element, F: Element>(
    f: &MorphismTable<E, F>,
    q: &AlgebraTable<E>,
    qd: &AlgebraTable<F>,
    probes: &[E],
    max_arity: usize,
) -> Result<RelationReport, TableError> {
    let mut rows = Vec::new();
    for n in 1..=max_arity {
        let mut acc = Accumulator::default();
        for idx in multisets(probes.len(), n) {
            acc.push(&morphism_residual(f, q, qd, &pick(probes, &idx))?);
        }
        rows.push(acc.row(n));
    }
    Ok(RelationReport { relation: format!("morphism {}", f.name), rows })
}

fn module_tuples<E: Element, M: Element>(
    probes: &[E],
    vectors: &[M],
    n: usize,
    zl: &E,
    zm: &M,
) -> Vec<Vec<Pair<E, M>>> {
    let mut out = Vec::new();
    for idx in multisets(probes.len(), n) {
        for v in vectors {
            let mut t: Vec<Pair<E, M>> = idx.iter().map(|&i| Pair::left(probes[i].clone(), zm)).collect();
            t.push(Pair::right(zl, v.clone()));
            out.push(t);
        }
    }
    out
}

/// Module relations with `n` algebra inputs, `n = 0..=max_arity`.
pub fn relation_check_module<E: Element, M: Element>(
    phi: &ModuleTable<E, M>,
    q: &AlgebraTable<E>,
    probes: &[E],
    vectors: &[M],
    max_arity: usize,
) -> Result<RelationReport, TableError> {
    let s = semidirect(q, phi);
    let mut rows = Vec::new();
    for n in 0..=max_arity {
        let mut acc = Accumulator::default();
        for t in module_tuples(probes, vectors, n, q.zero(), phi.zero()) {
            acc.push(&algebra_residual(&s, &t)?.m);
        }
        rows.push(acc.row(n));
    }
    Ok(RelationReport { relation: format!("module {}", phi.name), rows })
}

pub fn relation_check_module_morphism<E: Element, M: Element, N: Element>(
    kappa: &ModuleMorphismTable<E, M, N>,
    phi_m: &ModuleTable<E, M>,
    phi_n: &ModuleTable<E, N>,
    q: &AlgebraTable<E>,
    probes: &[E],
    vectors: &[M],
    max_arity: usize,
) -> Result<RelationReport, TableError> {
    let (sm, sn) = (semidirect(q, phi_m), semidirect(q, phi_n));
    let k = identity_plus(kappa, q.zero());
    let mut rows = Vec::new();
    for n in 0..=max_arity {
        let mut acc = Accumulator::default();
        for t in module_tuples(probes, vectors, n, q.zero(), phi_m.zero()) {
            acc.push(&morphism_residual(&k, &sm, &sn, &t)?.m);
        }
        rows.push(acc.row(n));
    }
    Ok(RelationReport { relation: format!("module morphism {}", kappa.name), rows })
}
