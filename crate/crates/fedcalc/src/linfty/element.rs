use crate::algebra::{Key, Rational, Series};

/// A vector in a graded space, as seen by the L∞ engine.
pub trait Element: Clone + std::fmt::Debug + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    /// Number of stored terms (for reports).
    fn term_count(&self) -> usize;
    fn max_y_degree(&self) -> Option<u32>;
    /// Degree if homogeneous and nonzero.
    fn degree(&self) -> Option<i32>;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Rational::from_int(-1)))
    }
}

impl<K: Key> Element for Series<K> {
    fn zero_like(&self) -> Self {
        Series::zero_like(self)
    }
    fn add(&self, o: &Self) -> Self {
        Series::add(self, o)
    }
    fn scale(&self, r: &Rational) -> Self {
        Series::scale(self, r)
    }
    fn is_zero(&self) -> bool {
        Series::is_zero(self)
    }
    fn term_count(&self) -> usize {
        self.len()
    }
    fn max_y_degree(&self) -> Option<u32> {
        Series::max_y_degree(self)
    }
    fn degree(&self) -> Option<i32> {
        self.homogeneous_degree()
    }
}

/// Formal power series in `ħ` truncated after `ħ^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct HbarSeries<E> {
    coeffs: Vec<E>,
}

impl<E: Element> HbarSeries<E> {
    /// `Σ_{k ≤ n} ħ^k c_k` from coefficients `c_0, …, c_n`.
    pub fn new(coeffs: Vec<E>) -> Self {
        assert!(!coeffs.is_empty());
        HbarSeries { coeffs }
    }

    /// `ħ^k · e` truncated at order `n`.
    pub fn monomial(e: &E, k: usize, n: usize) -> Self {
        let mut coeffs: Vec<E> = (0..=n).map(|_| e.zero_like()).collect();
        if k <= n {
            coeffs[k] = e.clone();
        }
        HbarSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &E {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    /// Lowest `ħ`-power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Multilinear extension of `f` to `ħ`-series: sums over all ways of splitting the powers.
    pub fn multilinear<F: Element>(args: &[&HbarSeries<E>], zero: &F, f: impl Fn(&[E]) -> F) -> HbarSeries<F> {
        let n = args.iter().map(|a| a.order()).min().unwrap_or(0);
        let mut out: Vec<F> = (0..=n).map(|_| zero.zero_like()).collect();
        let mut idx = vec![0usize; args.len()];
        loop {
            let total: usize = idx.iter().sum();
            if total <= n && idx.iter().zip(args).all(|(&k, a)| !a.coeffs[k].is_zero()) {
                let parts: Vec<E> = idx.iter().zip(args).map(|(&k, a)| a.coeffs[k].clone()).collect();
                out[total] = out[total].add(&f(&parts));
            }
            // odometer over powers
            let mut p = 0;
            loop {
                if p == idx.len() {
                    return HbarSeries { coeffs: out };
                }
                idx[p] += 1;
                if idx[p] <= n && idx.iter().sum::<usize>() <= n {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
        }
    }
}

impl<E: Element> Element for HbarSeries<E> {
    fn zero_like(&self) -> Self {
        HbarSeries { coeffs: self.coeffs.iter().map(|c| c.zero_like()).collect() }
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        HbarSeries { coeffs: (0..=n).map(|k| self.coeffs[k].add(&o.coeffs[k])).collect() }
    }
    fn scale(&self, r: &Rational) -> Self {
        HbarSeries { coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn term_count(&self) -> usize {
        self.coeffs.iter().map(|c| c.term_count()).sum()
    }
    fn max_y_degree(&self) -> Option<u32> {
        self.coeffs.iter().filter_map(|c| c.max_y_degree()).max()
    }
    fn degree(&self) -> Option<i32> {
        let mut d = None;
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            let cd = c.degree()?;
            match d {
                None => d = Some(cd),
                Some(x) if x != cd => return None,
                _ => {}
            }
        }
        d
    }
}

impl<E: Element> HbarSeries<E> {
    /// `self + ħ^k · o`, truncated at the lower of the two orders.
    pub fn add_shifted(&self, o: &HbarSeries<E>, k: usize) -> Self {
        let n = self.order().min(o.order());
        let coeffs = (0..=n)
            .map(|j| if j >= k { self.coeffs[j].add(&o.coeffs[j - k]) } else { self.coeffs[j].clone() })
            .collect();
        HbarSeries { coeffs }
    }

    /// Multilinear extension of a map taking `args` and one extra vector.
    pub fn multilinear_with<M: Element, F: Element>(
        args: &[&HbarSeries<E>],
        v: &HbarSeries<M>,
        zero: &F,
        f: impl Fn(&[E], &M) -> F,
    ) -> HbarSeries<F> {
        let n = args.iter().map(|a| a.order()).min().unwrap_or(usize::MAX).min(v.order());
        let mut out = HbarSeries::monomial(zero, 0, n);
        for (k, vk) in v.coeffs.iter().enumerate().take(n + 1) {
            if vk.is_zero() {
                continue;
            }
            let part = if args.is_empty() {
                HbarSeries::monomial(&f(&[], vk), 0, n)
            } else {
                HbarSeries::multilinear(args, zero, |parts| f(parts, vk))
            };
            out = out.add_shifted(&part, k);
        }
        out
    }
}
