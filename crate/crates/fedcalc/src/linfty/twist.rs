use std::sync::Arc;

use super::element::Element;
use super::tables::{AlgebraTable, MapFn, ModFn, ModuleMorphismTable, ModuleTable, MorphismTable, TableError};
use super::{koszul_perm_neg, set_partitions};
use crate::algebra::rational::factorial;
use crate::algebra::Rational;

/// Why twisting sums by a Maurer–Cartan element are finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filtration {
    /// `π` has `ħ`-valuation at least 1 and series are truncated after `ħ^N`.
    Hbar(usize),
    /// `π` has exterior degree at least 1 in `d` base directions.
    Nilpotent(usize),
}

impl Filtration {
    /// Largest number of copies of `π` that can contribute.
    pub fn max_insertions(self) -> usize {
        match self {
            Filtration::Hbar(n) | Filtration::Nilpotent(n) => n,
        }
    }
}

fn inv_factorial(k: usize) -> Rational {
    factorial(k as u32).recip()
}

fn check_degree<E: Element>(pi: &E) -> Result<(), TableError> {
    if pi.is_zero() || pi.degree() == Some(1) {
        Ok(())
    } else {
        Err(TableError::DegreeMismatch { expected: 1, found: pi.degree() })
    }
}

fn with_pi<E: Element>(pi: &E, k: usize, rest: &[E]) -> Vec<E> {
    let mut v: Vec<E> = (0..k).map(|_| pi.clone()).collect();
    v.extend_from_slice(rest);
    v
}

/// Number of twisted maps that stay computable from `len` stored ones.
fn twisted_len(name: &str, len: usize, complete: bool, k: usize) -> Result<usize, TableError> {
    if complete {
        Ok(len)
    } else if len > k {
        Ok(len - k)
    } else {
        Err(TableError::Capacity { table: name.to_string(), needed: k + 1, available: len })
    }
}

/// `Σ_{n ≥ 1} 1/n! l_n(π, …, π)`; for a DGLA this is `𝔡π + ½[π,π]`.
pub fn mc_residual<E: Element>(q: &AlgebraTable<E>, pi: &E, filt: Filtration) -> Result<E, TableError> {
    check_degree(pi)?;
    let mut total = q.zero().zero_like();
    for n in 1..=filt.max_insertions().max(1) {
        total = total.add(&q.l(&with_pi(pi, n, &[]))?.scale(&inv_factorial(n)));
    }
    Ok(total)
}

/// `S = Σ_{n ≥ 1} 1/n! F_n(π, …, π)`.
pub fn mc_pushforward<E: Element, F: Element>(
    f: &MorphismTable<E, F>,
    pi: &E,
    filt: Filtration,
) -> Result<F, TableError> {
    check_degree(pi)?;
    let mut total = f.zero().zero_like();
    for n in 1..=filt.max_insertions().max(1) {
        total = total.add(&f.f(&with_pi(pi, n, &[]))?.scale(&inv_factorial(n)));
    }
    Ok(total)
}

/// `l^π_n(x…) = Σ_k 1/k! l_{n+k}(π^k, x…)`.
pub fn twist_algebra<E: Element>(q: &AlgebraTable<E>, pi: &E, filt: Filtration) -> Result<AlgebraTable<E>, TableError> {
    check_degree(pi)?;
    let kmax = filt.max_insertions();
    let len = twisted_len(&q.name, q.len(), q.is_complete(), kmax)?;
    let maps: Vec<MapFn<E, E>> = (1..=len)
        .map(|_| {
            let (q, pi) = (q.clone(), pi.clone());
            let g: MapFn<E, E> = Arc::new(move |xs: &[E]| {
                let mut total = q.zero().zero_like();
                for k in 0..=kmax {
                    let r = q.l(&with_pi(&pi, k, xs)).expect("within capacity");
                    total = total.add(&r.scale(&inv_factorial(k)));
                }
                total
            });
            g
        })
        .collect();
    Ok(AlgebraTable::from_shifted(&format!("{}^π", q.name), q.zero().clone(), maps, q.is_complete()))
}

/// `𝔡 + [π, ·]`, after checking that `π` is Maurer–Cartan.
pub fn twist_differential<E: Element>(
    q: &AlgebraTable<E>,
    pi: &E,
    filt: Filtration,
) -> Result<impl Fn(&E) -> E, TableError> {
    let res = mc_residual(q, pi, filt)?;
    if !res.is_zero() {
        return Err(TableError::NotMaurerCartan { residual_terms: res.term_count() });
    }
    let t = twist_algebra(q, pi, filt)?;
    Ok(move |x: &E| t.l(std::slice::from_ref(x)).expect("arity one is always known"))
}

/// `F^π_n(x…) = Σ_k 1/k! F_{n+k}(π^k, x…)`.
pub fn twist_morphism<E: Element, F: Element>(
    f: &MorphismTable<E, F>,
    pi: &E,
    filt: Filtration,
) -> Result<MorphismTable<E, F>, TableError> {
    check_degree(pi)?;
    let kmax = filt.max_insertions();
    let len = twisted_len(&f.name, f.len(), f.is_complete(), kmax)?;
    let maps: Vec<MapFn<E, F>> = (1..=len)
        .map(|_| {
            let (f, pi) = (f.clone(), pi.clone());
            let g: MapFn<E, F> = Arc::new(move |xs: &[E]| {
                let mut total = f.zero().zero_like();
                for k in 0..=kmax {
                    let r = f.f(&with_pi(&pi, k, xs)).expect("within capacity");
                    total = total.add(&r.scale(&inv_factorial(k)));
                }
                total
            });
            g
        })
        .collect();
    Ok(MorphismTable::from_shifted(&format!("{}^π", f.name), f.zero().clone(), maps, f.is_complete()))
}

/// `φ^π_n(x…, v) = Σ_k 1/k! φ_{n+k}(π^k, x…, v)`.
pub fn twist_module<E: Element, M: Element>(
    phi: &ModuleTable<E, M>,
    pi: &E,
    filt: Filtration,
) -> Result<ModuleTable<E, M>, TableError> {
    check_degree(pi)?;
    let kmax = filt.max_insertions();
    let len = twisted_len(&phi.name, phi.len(), phi.is_complete(), kmax)?;
    let maps: Vec<ModFn<E, M, M>> = (0..len)
        .map(|_| {
            let (phi, pi) = (phi.clone(), pi.clone());
            let g: ModFn<E, M, M> = Arc::new(move |xs: &[E], v: &M| {
                let mut total = phi.zero().zero_like();
                for k in 0..=kmax {
                    let r = phi.phi(&with_pi(&pi, k, xs), v).expect("within capacity");
                    total = total.add(&r.scale(&inv_factorial(k)));
                }
                total
            });
            g
        })
        .collect();
    Ok(ModuleTable::from_shifted(&format!("{}^π", phi.name), phi.zero().clone(), maps, phi.is_complete()))
}

/// `κ^π_n(x…, v) = Σ_k 1/k! κ_{n+k}(π^k, x…, v)`.
pub fn twist_module_morphism<E: Element, M: Element, N: Element>(
    kappa: &ModuleMorphismTable<E, M, N>,
    pi: &E,
    filt: Filtration,
) -> Result<ModuleMorphismTable<E, M, N>, TableError> {
    check_degree(pi)?;
    let kmax = filt.max_insertions();
    let len = twisted_len(&kappa.name, kappa.len(), kappa.is_complete(), kmax)?;
    let maps: Vec<ModFn<E, M, N>> = (0..len)
        .map(|_| {
            let (kappa, pi) = (kappa.clone(), pi.clone());
            let g: ModFn<E, M, N> = Arc::new(move |xs: &[E], v: &M| {
                let mut total = kappa.zero().zero_like();
                for k in 0..=kmax {
                    let r = kappa.kappa(&with_pi(&pi, k, xs), v).expect("within capacity");
                    total = total.add(&r.scale(&inv_factorial(k)));
                }
                total
            });
            g
        })
        .collect();
    Ok(ModuleMorphismTable::from_shifted(&format!("{}^π", kappa.name), kappa.zero().clone(), maps, kappa.is_complete()))
}

/// `(g ∘ f)_n = Σ_partitions ε g_p(f(…), …, f(…))`.
pub fn compose<E: Element, F: Element, G: Element>(
    f: &MorphismTable<E, F>,
    g: &MorphismTable<F, G>,
) -> MorphismTable<E, G> {
    let complete = f.is_complete() && g.is_complete();
    let len = if complete { f.len() * g.len() } else { f.known_arity().min(g.known_arity()) };
    let maps: Vec<MapFn<E, G>> = (1..=len)
        .map(|_| {
            let (f, g) = (f.clone(), g.clone());
            let h: MapFn<E, G> = Arc::new(move |xs: &[E]| {
                let sh: Vec<i32> = xs.iter().map(|x| super::tables::shifted(x).unwrap_or(0)).collect();
                let mut total = g.zero().zero_like();
                for blocks in set_partitions(xs.len()) {
                    let images: Vec<F> = blocks
                        .iter()
                        .map(|b| f.f(&b.iter().map(|&i| xs[i].clone()).collect::<Vec<_>>()).expect("within capacity"))
                        .collect();
                    let mut r = g.f(&images).expect("within capacity");
                    if koszul_perm_neg(&blocks.concat(), &sh) {
                        r = r.scale(&Rational::from_int(-1));
                    }
                    total = total.add(&r);
                }
                total
            });
            h
        })
        .collect();
    MorphismTable::from_shifted(&format!("{}∘{}", g.name, f.name), g.zero().clone(), maps, complete)
}
