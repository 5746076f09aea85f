//! Truncated Laurent series in the spectral parameter.

use std::collections::BTreeMap;

use super::{QScalar, ScalarError};

/// Laurent series in `ζ` over Q(t).
///
/// `order = Some(n)` means every coefficient of degree `<= n` is exact and
/// nothing beyond `n` is stored; `None` marks an exact Laurent polynomial.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ZetaSeries {
    terms: BTreeMap<i32, QScalar>,
    order: Option<i32>,
}

fn min_opt(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn max_opt(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl ZetaSeries {
    pub fn zero(order: Option<i32>) -> Self {
        ZetaSeries { terms: BTreeMap::new(), order }
    }

    pub fn exact_zero() -> Self {
        ZetaSeries::zero(None)
    }

    pub fn constant(c: QScalar, order: Option<i32>) -> Self {
        ZetaSeries::monomial(c, 0, order)
    }

    pub fn monomial(c: QScalar, deg: i32, order: Option<i32>) -> Self {
        let mut s = ZetaSeries::zero(order);
        s.insert(deg, c);
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, QScalar)>, order: Option<i32>) -> Self {
        let mut s = ZetaSeries::zero(order);
        for (d, c) in terms {
            let cur = s.terms.remove(&d).unwrap_or_default();
            s.insert(d, cur.add(&c));
        }
        s
    }

    fn insert(&mut self, deg: i32, c: QScalar) {
        if c.is_zero() {
            return;
        }
        if let Some(n) = self.order {
            if deg > n {
                return;
            }
        }
        self.terms.insert(deg, c);
    }

    pub fn order(&self) -> Option<i32> {
        self.order
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    /// Drops everything above degree `n` and marks the result truncated there.
    pub fn truncate(&self, n: i32) -> ZetaSeries {
        let order = min_opt(self.order, Some(n));
        ZetaSeries {
            terms: self.terms.range(..=order.unwrap()).map(|(d, c)| (*d, c.clone())).collect(),
            order,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, deg: i32) -> QScalar {
        self.terms.get(&deg).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &QScalar)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest degree that is not known to vanish, `None` for an exact zero.
    fn valuation(&self) -> Option<i32> {
        self.min_degree().or(self.order.map(|n| n + 1))
    }

    pub fn add(&self, o: &ZetaSeries) -> ZetaSeries {
        let order = min_opt(self.order, o.order);
        let mut terms = self.terms.clone();
        for (d, c) in &o.terms {
            let v = match terms.get(d) {
                Some(x) => x.add(c),
                None => c.clone(),
            };
            if v.is_zero() {
                terms.remove(d);
            } else {
                terms.insert(*d, v);
            }
        }
        if let Some(n) = order {
            terms.retain(|d, _| *d <= n);
        }
        ZetaSeries { terms, order }
    }

    pub fn neg(&self) -> ZetaSeries {
        ZetaSeries {
            terms: self.terms.iter().map(|(d, c)| (*d, c.neg())).collect(),
            order: self.order,
        }
    }

    pub fn sub(&self, o: &ZetaSeries) -> ZetaSeries {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &ZetaSeries) -> ZetaSeries {
        let (va, vb) = match (self.valuation(), o.valuation()) {
            (Some(a), Some(b)) => (a, b),
            _ => return ZetaSeries::exact_zero(),
        };
        let mut order = None;
        if let Some(n) = self.order {
            order = min_opt(order, Some(n + vb));
        }
        if let Some(n) = o.order {
            order = min_opt(order, Some(n + va));
        }
        order = min_opt(order, max_opt(self.order, o.order));
        let mut acc: BTreeMap<i32, QScalar> = BTreeMap::new();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &o.terms {
                let d = d1 + d2;
                if matches!(order, Some(n) if d > n) {
                    break;
                }
                let p = c1.mul(c2);
                match acc.get_mut(&d) {
                    Some(x) => *x = x.add(&p),
                    None => {
                        acc.insert(d, p);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        ZetaSeries { terms: acc, order }
    }

    pub fn scale(&self, c: &QScalar) -> ZetaSeries {
        if c.is_zero() {
            return ZetaSeries::zero(self.order);
        }
        ZetaSeries {
            terms: self.terms.iter().map(|(d, x)| (*d, x.mul(c))).collect(),
            order: self.order,
        }
    }

    /// Multiplies by `ζ^k`; the truncation order moves along with the terms.
    pub fn shift(&self, k: i32) -> ZetaSeries {
        ZetaSeries {
            terms: self.terms.iter().map(|(d, c)| (d + k, c.clone())).collect(),
            order: self.order.map(|n| n + k),
        }
    }

    /// Substitutes `ζ -> c ζ^k` for `k >= 1`.
    pub fn substitute(&self, c: &QScalar, k: i32) -> ZetaSeries {
        assert!(k >= 1, "substitution power must be positive");
        let mut out = ZetaSeries::zero(self.order.map(|n| n * k + (k - 1)));
        for (d, x) in &self.terms {
            out.insert(d * k, x.mul(&c.pow(*d)));
        }
        out
    }

    /// `ζ -> ζ^{-1}`; only meaningful for exact polynomials.
    pub fn invert_variable(&self) -> Result<ZetaSeries, ScalarError> {
        if !self.is_exact() {
            return Err(ScalarError::TruncatedInversion);
        }
        Ok(ZetaSeries {
            terms: self.terms.iter().map(|(d, c)| (-d, c.clone())).collect(),
            order: None,
        })
    }

    pub fn map_coeffs(&self, f: impl Fn(&QScalar) -> QScalar) -> ZetaSeries {
        let mut out = ZetaSeries::zero(self.order);
        for (d, c) in &self.terms {
            out.insert(*d, f(c));
        }
        out
    }

    /// Caps an exact value at `order`; truncated values keep the smaller order.
    pub fn with_order(&self, order: i32) -> ZetaSeries {
        self.truncate(order)
    }

    /// Coefficientwise comparison up to the smaller of the two orders.
    pub fn agrees_with(&self, o: &ZetaSeries) -> Result<(), i32> {
        let n = min_opt(self.order, o.order);
        let diff = self.sub(o);
        match diff.terms.keys().find(|d| n.is_none_or(|n| **d <= n)) {
            Some(d) => Err(*d),
            None => Ok(()),
        }
    }

    /// Formal exponential. Requires positive valuation.
    pub fn exp(&self) -> Result<ZetaSeries, ScalarError> {
        let n = self.order.ok_or(ScalarError::ExactTranscendental)?;
        match self.min_degree() {
            None => return Ok(ZetaSeries::constant(QScalar::one(), Some(n))),
            Some(d) if d < 1 => return Err(ScalarError::ExpConstantTerm),
            _ => {}
        }
        // exp(f) = sum f^k / k!; f^k has valuation >= k.
        let mut acc = ZetaSeries::constant(QScalar::one(), Some(n));
        let mut term = acc.clone();
        for k in 1..=n.max(0) {
            term = term.mul(self).scale(&QScalar::frac(1, k as i64));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(acc.truncate(n))
    }

    /// Formal logarithm. Requires constant term exactly 1 and no negative powers.
    pub fn log(&self) -> Result<ZetaSeries, ScalarError> {
        let n = self.order.ok_or(ScalarError::ExactTranscendental)?;
        if self.min_degree().is_none_or(|d| d < 0) || !self.coeff(0).is_one() {
            return Err(ScalarError::LogConstantTerm);
        }
        let x = self.sub(&ZetaSeries::constant(QScalar::one(), None));
        let mut acc = ZetaSeries::zero(Some(n));
        let mut power = ZetaSeries::constant(QScalar::one(), Some(n));
        for k in 1..=n.max(0) {
            power = power.mul(&x);
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&power.scale(&QScalar::frac(sign, k as i64)));
        }
        Ok(acc.truncate(n))
    }

    /// Multiplicative inverse; the lowest stored term must be a unit.
    pub fn inv(&self) -> Result<ZetaSeries, ScalarError> {
        let v = self.min_degree().ok_or(ScalarError::DivisionByZero)?;
        let n = self.order.ok_or(ScalarError::ExactTranscendental)?;
        let lead = self.coeff(v);
        let unit = self.shift(-v).scale(&lead.inv()?);
        let m = unit.order.unwrap();
        // 1/(1 + y) = sum (-y)^k
        let y = unit.sub(&ZetaSeries::constant(QScalar::one(), None)).neg();
        let mut acc = ZetaSeries::constant(QScalar::one(), Some(m));
        let mut power = acc.clone();
        for _ in 1..=m.max(0) {
            power = power.mul(&y);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        let r = acc.scale(&lead.inv()?).shift(-v);
        Ok(r.truncate(n.min(r.order.unwrap())))
    }

    /// Array of `{deg, coeff}` objects.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(d, c)| serde_json::json!({"deg": d, "coeff": c.to_string()}))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value, order: Option<i32>) -> Result<ZetaSeries, ScalarError> {
        let arr = v.as_array().ok_or_else(|| ScalarError::Parse(v.to_string()))?;
        let mut out = ZetaSeries::zero(order);
        for item in arr {
            let d = item["deg"].as_i64().ok_or_else(|| ScalarError::Parse(item.to_string()))?;
            let c: QScalar = item["coeff"]
                .as_str()
                .ok_or_else(|| ScalarError::Parse(item.to_string()))?
                .parse()?;
            out.insert(d as i32, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_of_one_minus_zeta_is_mercator() {
        let g = ZetaSeries::from_terms([(0, QScalar::one()), (1, QScalar::int(-1))], Some(8));
        let l = g.log().unwrap();
        for m in 1..=8 {
            assert_eq!(l.coeff(m), QScalar::frac(-1, m as i64));
        }
    }

    #[test]
    fn exp_rejects_constant_term() {
        let f = ZetaSeries::constant(QScalar::one(), Some(4));
        assert_eq!(f.exp(), Err(ScalarError::ExpConstantTerm));
    }

    #[test]
    fn exp_of_zero_is_one() {
        let e = ZetaSeries::zero(Some(5)).exp().unwrap();
        assert_eq!(e, ZetaSeries::constant(QScalar::one(), Some(5)));
    }

    #[test]
    fn negative_valuation_loses_precision() {
        let a = ZetaSeries::from_terms([(-2, QScalar::one())], Some(8));
        let b = ZetaSeries::from_terms([(0, QScalar::one()), (5, QScalar::int(3))], Some(8));
        assert_eq!(a.mul(&b).order(), Some(6));
    }

    #[test]
    fn inverse_times_self_is_one() {
        let q = QScalar::q_pow(1);
        let a = ZetaSeries::from_terms([(0, q.clone()), (1, QScalar::int(-1)), (3, q)], Some(8));
        let p = a.mul(&a.inv().unwrap());
        assert!(p.agrees_with(&ZetaSeries::constant(QScalar::one(), Some(8))).is_ok());
    }

    use proptest::prelude::*;

    const N: i32 = 8;

    fn coeff() -> impl Strategy<Value = QScalar> {
        (-3i64..=3, -2i32..=2).prop_map(|(c, k)| QScalar::int(c).mul(&QScalar::q_pow(k)))
    }

    fn series(from: i32) -> impl Strategy<Value = ZetaSeries> {
        prop::collection::vec((from..=N, coeff()), 0..5).prop_map(|t| ZetaSeries::from_terms(t, Some(N)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn ring_laws(a in series(0), b in series(0), c in series(0)) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn log_inverts_exp(g in series(1)) {
            let back = g.exp().unwrap().log().unwrap();
            prop_assert!(back.agrees_with(&g).is_ok());
        }

        #[test]
        fn exp_is_additive(a in series(1), b in series(1)) {
            let lhs = a.add(&b).exp().unwrap();
            let rhs = a.exp().unwrap().mul(&b.exp().unwrap());
            prop_assert!(lhs.agrees_with(&rhs).is_ok());
        }

        #[test]
        fn inverse_is_two_sided(c0 in 1i64..4, rest in series(1)) {
            let a = rest.add(&ZetaSeries::constant(QScalar::int(c0), Some(N)));
            let one = ZetaSeries::constant(QScalar::one(), Some(N));
            prop_assert!(a.mul(&a.inv().unwrap()).agrees_with(&one).is_ok());
        }
    }
}
