//! L∞ machinery at the level of structure maps: relation checks, Maurer–Cartan
//! elements, twisting, pushforward and composition.
//!
//! Internally every table is kept in the shifted-symmetric convention: `l_n` is
//! graded symmetric in the shifted degrees `deg − 1` and has shifted degree +1;
//! morphism components have shifted degree 0. Tables built from ordinary
//! (antisymmetric) maps go through the décalage sign of [`decalage_neg`].

mod element;
pub mod instances;
mod relations;
mod tables;
pub mod toy;
mod twist;

pub use element::{Element, HbarSeries};
pub use relations::{
    algebra_residual, morphism_residual, relation_check_algebra, relation_check_module, relation_check_module_morphism,
    relation_check_morphism, ArityResidual, RelationReport,
};
pub use tables::{
    identity_plus, semidirect, AlgebraTable, MapFn, ModFn, ModuleMorphismTable, ModuleTable, MorphismTable, Pair,
    TableError,
};
pub use twist::{
    compose, mc_pushforward, mc_residual, twist_algebra, twist_differential, twist_module, twist_module_morphism,
    twist_morphism, Filtration,
};

/// Sign turning an antisymmetric map of `N` inputs with degrees `k_i` into its
/// shifted-symmetric counterpart: `(−1)^{Σ_i (N−i)(k_i−1)}` (1-based `i`).
pub fn decalage_neg(degrees: &[i32]) -> bool {
    let n = degrees.len() as i64;
    let e: i64 = degrees.iter().enumerate().map(|(i, &k)| (n - 1 - i as i64) * (k as i64 - 1)).sum();
    e.rem_euclid(2) == 1
}

/// Koszul sign of listing `order` (a permutation of `0..n`) for elements of the
/// given shifted degrees.
pub(crate) fn koszul_perm_neg(order: &[usize], shifted: &[i32]) -> bool {
    let mut neg = false;
    for a in 0..order.len() {
        for b in (a + 1)..order.len() {
            if order[a] > order[b] && (shifted[order[a]] * shifted[order[b]]).rem_euclid(2) == 1 {
                neg = !neg;
            }
        }
    }
    neg
}

/// `(i, n−i)`-unshuffles of `0..n`: the first `i` and remaining indices, each increasing.
pub(crate) fn unshuffles(n: usize, i: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for bits in 0u32..(1 << n) {
        if bits.count_ones() as usize != i {
            continue;
        }
        let first: Vec<usize> = (0..n).filter(|j| bits & (1 << j) != 0).collect();
        let rest: Vec<usize> = (0..n).filter(|j| bits & (1 << j) == 0).collect();
        out.push((first, rest));
    }
    out
}

/// Set partitions of `0..n` into blocks, each block increasing, blocks ordered by minimum.
pub(crate) fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for e in 0..n {
        let mut next = Vec::new();
        for p in out {
            for b in 0..p.len() {
                let mut q = p.clone();
                q[b].push(e);
                next.push(q);
            }
            let mut q = p;
            q.push(vec![e]);
            next.push(q);
        }
        out = next;
    }
    out
}
