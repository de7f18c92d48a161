//! Sparse polynomials in the base coordinates with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use super::multi::Multi;
use super::rational::Rational;

/// A polynomial `Σ c_m x^m`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct XPoly {
    terms: BTreeMap<Multi, Rational>,
}

impl XPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Multi::ZERO, c)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn monomial(m: Multi, c: Rational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The coordinate function `x^i` (0-based).
    pub fn var(i: usize) -> Self {
        Self::monomial(Multi::unit(i), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Multi, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Multi) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// The constant term if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Multi::ZERO).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Multi, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, o: &XPoly) {
        for (m, c) in &o.terms {
            self.add_term(*m, c);
        }
    }

    /// `self += c · o`.
    pub fn add_scaled(&mut self, o: &XPoly, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &o.terms {
            self.add_term(*m, &(a * c));
        }
    }

    pub fn scale(&self, c: &Rational) -> XPoly {
        if c.is_zero() {
            return XPoly::zero();
        }
        XPoly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn neg(&self) -> XPoly {
        XPoly { terms: self.terms.iter().map(|(m, a)| (*m, -a)).collect() }
    }

    pub fn add(&self, o: &XPoly) -> XPoly {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn sub(&self, o: &XPoly) -> XPoly {
        let mut r = self.clone();
        r.add_scaled(o, &Rational::from_int(-1));
        r
    }

    pub fn mul(&self, o: &XPoly) -> XPoly {
        let mut r = XPoly::zero();
        for (m1, a) in &self.terms {
            for (m2, b) in &o.terms {
                r.add_term(m1.add(m2), &(a * b));
            }
        }
        r
    }

    /// `∂/∂x^i`.
    pub fn partial(&self, i: usize) -> XPoly {
        let mut r = XPoly::zero();
        for (m, a) in &self.terms {
            let e = m.get(i);
            if e > 0 {
                r.add_term(m.dec(i).unwrap(), &(a * &Rational::from_int(e as i64)));
            }
        }
        r
    }

    /// `∂^α`.
    pub fn partial_multi(&self, alpha: &Multi) -> XPoly {
        let mut r = XPoly::zero();
        for (m, a) in &self.terms {
            if let Some((c, rest)) = m.falling(alpha) {
                r.add_term(rest, &(a * &Rational::from(c)));
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> XPoly {
        let mut r = XPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Substitutes `x^i ↦ vals[i]`.
    pub fn compose(&self, vals: &[XPoly]) -> XPoly {
        let mut r = XPoly::zero();
        for (m, a) in &self.terms {
            let mut t = XPoly::constant(a.clone());
            for (i, v) in vals.iter().enumerate() {
                if m.get(i) > 0 {
                    t = t.mul(&v.pow(m.get(i) as u32));
                }
            }
            r.add_assign(&t);
        }
        r
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, pt: &[Rational]) -> Rational {
        let mut r = Rational::zero();
        for (m, a) in &self.terms {
            let mut t = a.clone();
            for (i, v) in pt.iter().enumerate() {
                t = &t * &v.pow(m.get(i) as u32);
            }
            r += &t;
        }
        r
    }

    /// Highest variable index used plus one.
    pub fn used_dim(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|m| (0..super::multi::MAX_DIM).filter(move |&i| m.get(i) > 0))
            .map(|i| i + 1)
            .max()
            .unwrap_or(0)
    }

    /// Text form with a custom variable stem, e.g. `3/2*x1^2*x2 - x3`.
    pub fn fmt_with(&self, stem: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        // highest degree first, then lexicographically descending
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(b.0.cmp(a.0)));
        for (k, (m, c)) in items.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.fmt_with(stem);
            if mono.is_empty() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{abs}*{mono}"));
            }
        }
        s
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with("x"))
    }
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XPoly({self})")
    }
}

impl From<Rational> for XPoly {
    fn from(c: Rational) -> Self {
        XPoly::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> XPoly {
        XPoly::var(i)
    }

    #[test]
    fn arithmetic() {
        let p = x(0).mul(&x(1));
        assert_eq!(p.partial(0), x(1));
        assert!(p.partial(2).is_zero());
        let q = x(0).add(&x(1)).pow(2);
        assert_eq!(q.len(), 3);
        assert_eq!(q.sub(&q), XPoly::zero());
        assert_eq!(q.eval(&[Rational::from_int(1), Rational::from_int(2)]), Rational::from_int(9));
    }

    #[test]
    fn display() {
        let p = x(0).pow(2).mul(&x(1)).scale(&Rational::new(3, 2)).sub(&x(2));
        assert_eq!(p.to_string(), "3/2*x1^2*x2 - x3");
        assert_eq!(XPoly::constant(Rational::from_int(-2)).to_string(), "-2");
    }
}
