//! Hand-built finite-dimensional DGLAs, morphisms and modules used as fixtures.

use std::sync::Arc;

use super::element::Element;
use super::tables::{AlgebraTable, MapFn, ModFn, ModuleMorphismTable, ModuleTable, MorphismTable};
use crate::algebra::Rational;

/// A vector in a finite graded space with a fixed homogeneous basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FinVec {
    degrees: Arc<[i32]>,
    c: Vec<Rational>,
}

impl FinVec {
    pub fn zero(degrees: &Arc<[i32]>) -> Self {
        FinVec { degrees: degrees.clone(), c: vec![Rational::zero(); degrees.len()] }
    }

    pub fn basis(degrees: &Arc<[i32]>, i: usize) -> Self {
        let mut v = Self::zero(degrees);
        v.c[i] = Rational::one();
        v
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.c[i]
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }

    /// Nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.c.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

impl Element for FinVec {
    fn zero_like(&self) -> Self {
        Self::zero(&self.degrees)
    }
    fn add(&self, o: &Self) -> Self {
        FinVec { degrees: self.degrees.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
    fn scale(&self, r: &Rational) -> Self {
        FinVec { degrees: self.degrees.clone(), c: self.c.iter().map(|a| a * r).collect() }
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|c| c.is_zero())
    }
    fn term_count(&self) -> usize {
        self.support().count()
    }
    fn max_y_degree(&self) -> Option<u32> {
        None
    }
    fn degree(&self) -> Option<i32> {
        let mut it = self.support().map(|(i, _)| self.degrees[i]);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

/// Extends a map given on basis vectors multilinearly.
fn extend<T: Element>(args: &[FinVec], zero: &T, basis_map: &dyn Fn(&[usize]) -> Option<T>) -> T {
    let mut out = zero.zero_like();
    let mut idx = Vec::with_capacity(args.len());
    fn rec<T: Element>(
        args: &[FinVec],
        coeff: Rational,
        idx: &mut Vec<usize>,
        out: &mut T,
        basis_map: &dyn Fn(&[usize]) -> Option<T>,
    ) {
        if idx.len() == args.len() {
            if let Some(v) = basis_map(idx) {
                *out = out.add(&v.scale(&coeff));
            }
            return;
        }
        for (i, c) in args[idx.len()].support() {
            idx.push(i);
            rec(args, &coeff * c, idx, out, basis_map);
            idx.pop();
        }
    }
    rec(args, Rational::one(), &mut idx, &mut out, basis_map);
    out
}

fn space(degrees: &[i32]) -> Arc<[i32]> {
    degrees.to_vec().into()
}

fn linear_map(
    target: &Arc<[i32]>,
    f: impl Fn(usize) -> Option<(usize, Rational)> + Send + Sync + 'static,
) -> MapFn<FinVec, FinVec> {
    let target = target.clone();
    Arc::new(move |a: &[FinVec]| {
        extend(a, &FinVec::zero(&target), &|i: &[usize]| f(i[0]).map(|(j, c)| FinVec::basis(&target, j).scale(&c)))
    })
}

/// Named basis vectors of the target algebra `L⋄ = ⟨x, y | z⟩` (degrees 1, 1, 2).
pub const X: usize = 0;
pub const Y: usize = 1;
pub const Z: usize = 2;
/// The extra central generator of `L♣`.
pub const W: usize = 3;

/// `L⋄`: `d y = z`, `[x, x] = −2z`, all else zero.
pub fn diamond() -> AlgebraTable<FinVec> {
    diamond_like(&[1, 1, 2], "L⋄")
}

/// `L♣ = L⋄ ⊕ ⟨w⟩` with `w` closed and central of degree 1.
pub fn club() -> AlgebraTable<FinVec> {
    diamond_like(&[1, 1, 2, 1], "L♣")
}

fn diamond_like(degrees: &[i32], name: &str) -> AlgebraTable<FinVec> {
    let s = space(degrees);
    let zero = FinVec::zero(&s);
    let (s1, s2) = (s.clone(), s.clone());
    AlgebraTable::from_dgla(
        name,
        zero.clone(),
        move |a| {
            extend(std::slice::from_ref(a), &FinVec::zero(&s1), &|i: &[usize]| {
                (i[0] == Y).then(|| FinVec::basis(&s1, Z))
            })
        },
        move |a, b| {
            extend(&[a.clone(), b.clone()], &FinVec::zero(&s2), &|i: &[usize]| {
                (i[0] == X && i[1] == X).then(|| FinVec::basis(&s2, Z).scale(&Rational::from_int(-2)))
            })
        },
    )
}

/// The abelian algebra `L = ⟨u⟩`, `u` of degree 1.
pub fn line() -> AlgebraTable<FinVec> {
    let s = space(&[1]);
    let zero = FinVec::zero(&s);
    let z1 = zero.clone();
    let z2 = zero.clone();
    AlgebraTable::from_dgla("L", zero, move |_| z1.clone(), move |_, _| z2.clone())
}

/// The generator `u` of [`line`].
pub fn u() -> FinVec {
    FinVec::basis(&space(&[1]), 0)
}

pub fn diamond_basis(i: usize) -> FinVec {
    FinVec::basis(&space(&[1, 1, 2]), i)
}

pub fn club_basis(i: usize) -> FinVec {
    FinVec::basis(&space(&[1, 1, 2, 1]), i)
}

/// `F : L → L⋄` with `F_1(u) = x`, `F_2(u, u) = c·y`.
pub fn two_term_morphism(c: Rational) -> MorphismTable<FinVec, FinVec> {
    let t = space(&[1, 1, 2]);
    let zero = FinVec::zero(&t);
    let f1 = linear_map(&t, |_| Some((X, Rational::one())));
    let t2 = t.clone();
    let f2: MapFn<FinVec, FinVec> = Arc::new(move |a: &[FinVec]| {
        extend(a, &FinVec::zero(&t2), &|_: &[usize]| Some(FinVec::basis(&t2, Y).scale(&c)))
    });
    MorphismTable::from_antisymmetric("F", zero, vec![f1, f2], true)
}

/// `G : L⋄ → L♣` with `G_1` the inclusion and `G_2(x, x) = w`.
pub fn inclusion_morphism() -> MorphismTable<FinVec, FinVec> {
    let t = space(&[1, 1, 2, 1]);
    let zero = FinVec::zero(&t);
    let g1 = linear_map(&t, |i| Some((i, Rational::one())));
    let t2 = t.clone();
    let g2: MapFn<FinVec, FinVec> = Arc::new(move |a: &[FinVec]| {
        extend(a, &FinVec::zero(&t2), &|i: &[usize]| (i[0] == X && i[1] == X).then(|| FinVec::basis(&t2, W)))
    });
    MorphismTable::from_antisymmetric("G", zero, vec![g1, g2], true)
}

/// Module `⟨v₀ | v₁⟩` over [`line`] (degrees 0, 1) with `u · v₀ = v₁`.
pub fn shift_module(name: &str) -> ModuleTable<FinVec, FinVec> {
    let s = space(&[0, 1]);
    let zero = FinVec::zero(&s);
    let z = zero.clone();
    let s1 = s.clone();
    ModuleTable::from_dg_module(
        name,
        zero,
        move |_| z.clone(),
        move |a: &FinVec, v| {
            extend(&[a.clone(), v.clone()], &FinVec::zero(&s1), &|i: &[usize]| {
                (i[1] == 0).then(|| FinVec::basis(&s1, 1))
            })
        },
    )
}

pub fn module_basis(i: usize) -> FinVec {
    FinVec::basis(&space(&[0, 1]), i)
}

/// `κ : M → N` between two copies of [`shift_module`]: `κ_0` the identity,
/// `κ_1(u, v₀) = a·v₀`, `κ_1(u, v₁) = b·v₁`.
pub fn module_morphism(a: Rational, b: Rational) -> ModuleMorphismTable<FinVec, FinVec, FinVec> {
    let s = space(&[0, 1]);
    let zero = FinVec::zero(&s);
    let s0 = s.clone();
    let k0: ModFn<FinVec, FinVec, FinVec> = Arc::new(move |_: &[FinVec], v: &FinVec| v.add(&FinVec::zero(&s0)));
    let s1 = s.clone();
    let k1: ModFn<FinVec, FinVec, FinVec> = Arc::new(move |x: &[FinVec], v: &FinVec| {
        extend(&[x[0].clone(), v.clone()], &FinVec::zero(&s1), &|i: &[usize]| {
            Some(FinVec::basis(&s1, i[1]).scale(if i[1] == 0 { &a } else { &b }))
        })
    });
    ModuleMorphismTable::from_antisymmetric("κ", zero, vec![k0, k1], true)
}
