//! Laurent polynomials and truncated series in two spectral variables.

use std::collections::BTreeMap;

use super::{QScalar, Ring, ZetaSeries};

/// Sum of `c x^i y^j` over Q(t).
///
/// With `order = Some(n)` only terms of total degree `i + j <= n` are kept and
/// everything above is unknown; `None` is exact.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Bivar {
    terms: BTreeMap<(i32, i32), QScalar>,
    order: Option<i32>,
}

fn min_opt(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Bivar {
    pub fn zero_with(order: Option<i32>) -> Self {
        Bivar { terms: BTreeMap::new(), order }
    }

    pub fn monomial(c: QScalar, i: i32, j: i32, order: Option<i32>) -> Self {
        let mut b = Bivar::zero_with(order);
        b.insert(i, j, c);
        b
    }

    pub fn constant(c: QScalar, order: Option<i32>) -> Self {
        Bivar::monomial(c, 0, 0, order)
    }

    fn insert(&mut self, i: i32, j: i32, c: QScalar) {
        if c.is_zero() || matches!(self.order, Some(n) if i + j > n) {
            return;
        }
        match self.terms.get_mut(&(i, j)) {
            Some(x) => {
                *x = x.add(&c);
                if x.is_zero() {
                    self.terms.remove(&(i, j));
                }
            }
            None => {
                self.terms.insert((i, j), c);
            }
        }
    }

    pub fn order(&self) -> Option<i32> {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), &QScalar)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Image of a univariate value under `ζ -> c x^a y^b`.
    ///
    /// A truncated input keeps its precision only when `a + b >= 1`.
    pub fn from_series(s: &ZetaSeries, a: i32, b: i32, order: Option<i32>) -> Bivar {
        let src = s.order().map(|n| {
            let k = a + b;
            assert!(k >= 1, "truncated series needs a positive total-degree substitution");
            n * k + (k - 1)
        });
        let mut out = Bivar::zero_with(min_opt(order, src));
        for (d, c) in s.terms() {
            out.insert(a * d, b * d, c.clone());
        }
        out
    }

    fn valuation(&self) -> Option<i32> {
        self.terms
            .keys()
            .map(|(i, j)| i + j)
            .min()
            .or(self.order.map(|n| n + 1))
    }

    /// Keeps only total degrees `<= n`.
    pub fn truncate(&self, n: i32) -> Bivar {
        let order = min_opt(self.order, Some(n));
        let mut out = Bivar::zero_with(order);
        for ((i, j), c) in &self.terms {
            out.insert(*i, *j, c.clone());
        }
        out
    }

    /// First term of total degree `<= min order` where the two values differ.
    pub fn first_difference(&self, o: &Bivar) -> Option<(i32, i32)> {
        let d = Ring::sub(self, o);
        let n = min_opt(self.order, o.order);
        d.terms
            .keys()
            .filter(|(i, j)| n.is_none_or(|n| i + j <= n))
            .min_by_key(|(i, j)| (i + j, *i))
            .copied()
    }

    /// `x -> 1/x, y -> 1/y`; exact values only.
    pub fn invert_variables(&self) -> Bivar {
        assert!(self.order.is_none(), "cannot invert variables of a truncated value");
        let mut out = Bivar::zero_with(None);
        for ((i, j), c) in &self.terms {
            out.insert(-i, -j, c.clone());
        }
        out
    }
}

impl Ring for Bivar {
    fn zero() -> Self {
        Bivar::zero_with(None)
    }

    fn one() -> Self {
        Bivar::constant(QScalar::one(), None)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, o: &Self) -> Self {
        let mut out = Bivar { terms: self.terms.clone(), order: min_opt(self.order, o.order) };
        if let Some(n) = out.order {
            out.terms.retain(|(i, j), _| i + j <= n);
        }
        for ((i, j), c) in &o.terms {
            out.insert(*i, *j, c.clone());
        }
        out
    }

    fn mul(&self, o: &Self) -> Self {
        let (va, vb) = match (self.valuation(), o.valuation()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Bivar::zero_with(None),
        };
        let mut order = None;
        if let Some(n) = self.order {
            order = min_opt(order, Some(n + vb));
        }
        if let Some(n) = o.order {
            order = min_opt(order, Some(n + va));
        }
        let cap = match (self.order, o.order) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        order = min_opt(order, cap);
        let mut out = Bivar::zero_with(order);
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &o.terms {
                out.insert(i1 + i2, j1 + j2, c1.mul(c2));
            }
        }
        out
    }

    fn neg(&self) -> Self {
        Bivar {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
            order: self.order,
        }
    }

    fn scale(&self, c: &QScalar) -> Self {
        let mut out = Bivar::zero_with(self.order);
        for ((i, j), x) in &self.terms {
            out.insert(*i, *j, x.mul(c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_substitution_is_homogeneous() {
        let s = ZetaSeries::from_terms([(1, QScalar::one()), (-2, QScalar::int(3))], None);
        let b = Bivar::from_series(&s, 1, -1, None);
        assert!(b.terms().all(|((i, j), _)| i + j == 0));
    }

    #[test]
    fn truncated_product_tracks_total_degree() {
        let x = Bivar::monomial(QScalar::one(), 1, 0, Some(4));
        let y = Bivar::monomial(QScalar::one(), 0, 1, Some(4));
        let p = x.mul(&y);
        assert_eq!(p.order(), Some(4));
        assert_eq!(p.terms().count(), 1);
    }
}
