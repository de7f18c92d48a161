//! Base-level objects (functions, polyvectors, operators and forms on the chart).
//!
//! A base object is stored in the fiber family with `y = 0` and no dx: its
//! coefficients are polynomials in `x`, and `∂/∂y` slots are read as `∂/∂x`.
//! Swapping `x ↔ y` turns it into a constant-coefficient fiber object, so fiber
//! operations can be reused verbatim.

use crate::algebra::{FiberKey, Mask, Multi, Rational, Series, SmElement, SmKey, XPoly, UNTRUNCATED};

/// Base object → constant-coefficient fiber object with `x` renamed to `y`.
pub fn to_fiber<K: FiberKey>(a: &Series<K>) -> Series<K> {
    let mut out = Series::new(a.dim(), UNTRUNCATED);
    for (k, c) in a.terms() {
        assert!(k.y().is_zero() && k.dx().is_empty(), "base objects carry no y or dx");
        for (m, r) in c.terms() {
            out.add_term(k.with_y(*m), &XPoly::constant(r.clone()));
        }
    }
    out
}

/// Inverse of [`to_fiber`]: constant-coefficient fiber object → base object.
pub fn to_base<K: FiberKey>(a: &Series<K>) -> Series<K> {
    let mut out = Series::new(a.dim(), UNTRUNCATED);
    for (k, c) in a.terms() {
        let r = c.as_constant().expect("fiber object with x-dependent coefficients");
        out.add_term(k.with_y(Multi::ZERO), &XPoly::monomial(k.y(), r));
    }
    out
}

/// A base function as a y-free `SM` element.
pub fn function(dim: usize, order: u32, f: &XPoly) -> SmElement {
    SmElement::from_key(dim, order, SmKey { dx: Mask::EMPTY, y: Multi::ZERO }, f.clone())
}

/// Coefficient of `y⁰` without dx.
pub fn value_at_zero(a: &SmElement) -> XPoly {
    a.coeff(&SmKey { dx: Mask::EMPTY, y: Multi::ZERO })
}

/// Taylor expansion `a(x + y)` truncated at y-degree `order`, by direct binomial expansion.
pub fn taylor(dim: usize, order: u32, f: &XPoly) -> SmElement {
    let mut out = SmElement::new(dim, order);
    for (m, c) in f.terms() {
        // Π_i (x^i + y^i)^{m_i}
        let mut acc: Vec<(Multi, Multi, u64)> = vec![(Multi::ZERO, Multi::ZERO, 1)];
        for i in 0..dim {
            let e = m.get(i);
            let mut next = Vec::new();
            for (xm, ym, w) in &acc {
                for b in 0..=e {
                    let mut xm2 = *xm;
                    let mut ym2 = *ym;
                    xm2.0[i] = e - b;
                    ym2.0[i] = b;
                    next.push((xm2, ym2, w * crate::algebra::rational::binomial(e as u32, b as u32)));
                }
            }
            acc = next;
        }
        for (xm, ym, w) in acc {
            let coeff = XPoly::monomial(xm, c.clone() * Rational::from(w));
            out.add_term(SmKey { dx: Mask::EMPTY, y: ym }, &coeff);
        }
    }
    out
}
