//! The coefficient field Q(t), with q = t^6.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{q_int, Poly, Q};
use super::ScalarError;

/// Exponent of `t` representing one power of `q`.
pub const Q_EXP: i32 = 6;

/// Element of Q(t) in lowest terms: the denominator has no `t` factor,
/// constant term nonzero and leading coefficient 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: Poly,
    den: Poly,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        QScalar::int(1)
    }

    pub fn int(n: i64) -> Self {
        QScalar { num: Poly::monomial(q_int(n), 0), den: Poly::one() }
    }

    pub fn frac(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        QScalar {
            num: Poly::monomial(Q::new(BigInt::from(n), BigInt::from(d)), 0),
            den: Poly::one(),
        }
    }

    /// `c * t^k`.
    pub fn t_monomial(c: i64, k: i32) -> Self {
        QScalar { num: Poly::monomial(q_int(c), k), den: Poly::one() }
    }

    pub fn t_pow(k: i32) -> Self {
        QScalar::t_monomial(1, k)
    }

    /// `q^k`.
    pub fn q_pow(k: i32) -> Self {
        QScalar::t_pow(Q_EXP * k)
    }

    /// `q - q^{-1}`.
    pub fn q_minus_qinv() -> Self {
        QScalar::q_pow(1).sub(&QScalar::q_pow(-1))
    }

    /// Laurent polynomial from `(coefficient, t-exponent)` pairs.
    pub fn from_t_terms(terms: &[(i64, i32)]) -> Self {
        let p = Poly::from_terms(terms.iter().map(|&(c, e)| (e, q_int(c))).collect());
        QScalar { num: p, den: Poly::one() }
    }

    pub(crate) fn from_polys(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return QScalar::zero();
        }
        let mut num = num;
        let mut den = den;
        let shift = den.lo;
        num.lo -= shift;
        den.lo = 0;
        let g = Poly::gcd(&num, &den);
        if !g.is_one() {
            num = num.div_exact(&g);
            den = den.div_exact(&g);
        }
        let l = den.lead().clone();
        if !l.is_one() {
            let inv = Q::one() / l;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        QScalar { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_laurent_poly(&self) -> bool {
        self.den.is_one()
    }

    /// `Some((c, k))` when the value is `c * t^k` with integer `c`.
    pub fn as_int_monomial(&self) -> Option<(BigInt, i32)> {
        if self.den.is_one() && self.num.is_monomial() && self.num.c[0].is_integer() {
            Some((self.num.c[0].to_integer(), self.num.lo))
        } else {
            None
        }
    }

    /// True for nonzero `c * t^k`; these are the units of the Laurent ring.
    pub fn is_monomial(&self) -> bool {
        self.den.is_one() && self.num.is_monomial()
    }

    pub fn add(&self, o: &QScalar) -> QScalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && o.den.is_one() {
            return QScalar { num: self.num.add(&o.num), den: Poly::one() };
        }
        if self.den == o.den {
            return QScalar::from_polys(self.num.add(&o.num), self.den.clone());
        }
        let g = Poly::gcd(&self.den, &o.den);
        if g.is_one() {
            let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            return QScalar::from_polys(num, self.den.mul(&o.den));
        }
        let d1 = self.den.div_exact(&g);
        let d2 = o.den.div_exact(&g);
        let num = self.num.mul(&d2).add(&o.num.mul(&d1));
        QScalar::from_polys(num, d1.mul(&o.den))
    }

    pub fn neg(&self) -> QScalar {
        QScalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &QScalar) -> QScalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &QScalar) -> QScalar {
        if self.is_zero() || o.is_zero() {
            return QScalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return QScalar { num: self.num.mul(&o.num), den: Poly::one() };
        }
        if o.is_monomial() {
            return QScalar { num: self.num.mul(&o.num), den: self.den.clone() };
        }
        if self.is_monomial() {
            return QScalar { num: o.num.mul(&self.num), den: o.den.clone() };
        }
        let g1 = Poly::gcd(&self.num, &o.den);
        let g2 = Poly::gcd(&o.num, &self.den);
        let n1 = self.num.div_exact(&g1);
        let d2 = o.den.div_exact(&g1);
        let n2 = o.num.div_exact(&g2);
        let d1 = self.den.div_exact(&g2);
        QScalar::from_polys(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> Result<QScalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(QScalar::from_polys(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &QScalar) -> Result<QScalar, ScalarError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: i32) -> QScalar {
        if k < 0 {
            return self.inv().expect("negative power of zero").pow(-k);
        }
        let mut acc = QScalar::one();
        let mut base = self.clone();
        let mut k = k as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Substitutes `t -> t^k`; `k = -1` is the `q -> q^{-1}` involution.
    pub fn subs_t_power(&self, k: i32) -> QScalar {
        assert!(k != 0);
        QScalar::from_polys(self.num.subs_power(k), self.den.subs_power(k))
    }

    /// `q -> q^{-1}`.
    pub fn bar(&self) -> QScalar {
        self.subs_t_power(-1)
    }

    /// Multiplies by `t^k`.
    pub fn shift_t(&self, k: i32) -> QScalar {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut r = self.clone();
        r.num.lo += k;
        r
    }
}

impl Default for QScalar {
    fn default() -> Self {
        QScalar::zero()
    }
}

fn fmt_poly(p: &Poly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut terms: Vec<(i32, &Q)> = p.terms().collect();
    terms.reverse();
    for (i, (e, c)) in terms.iter().enumerate() {
        if i > 0 {
            write!(f, " + ")?;
        }
        write!(f, "{}*t^{}", c, e)?;
    }
    Ok(())
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        fmt_poly(&self.num, f)?;
        write!(f, ")/(")?;
        fmt_poly(&self.den, f)?;
        write!(f, ")")
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Result<Q, ScalarError> {
    let bad = || ScalarError::Parse(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
    let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

fn parse_poly(s: &str) -> Result<Poly, ScalarError> {
    let s = s.trim();
    if s == "0" {
        return Ok(Poly::zero());
    }
    let mut terms = Vec::new();
    for term in s.split(" + ") {
        let term = term.trim();
        let (c, e) = match term.split_once("*t^") {
            Some((c, e)) => (c, e),
            None => match term.strip_prefix("t^") {
                Some(e) => ("1", e),
                None => (term, "0"),
            },
        };
        let e: i32 = e.trim().parse().map_err(|_| ScalarError::Parse(term.to_string()))?;
        terms.push((e, parse_rational(c)?));
    }
    Ok(Poly::from_terms(terms))
}

fn strip_parens(s: &str) -> &str {
    let s = s.trim();
    s.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(s)
}

impl FromStr for QScalar {
    type Err = ScalarError;

    /// Accepts `(num)/(den)` as produced by `Display`, or a bare numerator.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (n, d) = match s.find(")/(") {
            Some(i) => (&s[..=i], &s[i + 2..]),
            None => (s, "1"),
        };
        let num = parse_poly(strip_parens(n))?;
        let den = parse_poly(strip_parens(d))?;
        if den.is_zero() {
            return Err(ScalarError::Parse(s.to_string()));
        }
        Ok(QScalar::from_polys(num, den))
    }
}

impl std::ops::Add for &QScalar {
    type Output = QScalar;
    fn add(self, o: &QScalar) -> QScalar {
        QScalar::add(self, o)
    }
}

impl std::ops::Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, o: &QScalar) -> QScalar {
        QScalar::sub(self, o)
    }
}

impl std::ops::Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, o: &QScalar) -> QScalar {
        QScalar::mul(self, o)
    }
}

impl std::ops::Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_minus_qinv_inverse() {
        let x = QScalar::q_minus_qinv();
        assert!(x.mul(&x.inv().unwrap()).is_one());
    }

    #[test]
    fn canonical_denominator_is_monic_without_t_factor() {
        // 1 / (2 t^3 - 2 t^9)
        let d = QScalar::from_t_terms(&[(2, 3), (-2, 9)]);
        let x = d.inv().unwrap();
        assert_eq!(x.to_string(), "(-1/2*t^-3)/(1*t^6 + -1*t^0)");
    }

    #[test]
    fn string_round_trip() {
        let x = QScalar::from_t_terms(&[(3, -2), (1, 5)])
            .div(&QScalar::from_t_terms(&[(1, 0), (7, 12)]))
            .unwrap();
        let y: QScalar = x.to_string().parse().unwrap();
        assert_eq!(x, y);
        let z: QScalar = "(0)/(1*t^0)".parse().unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn bar_inverts_q() {
        assert_eq!(QScalar::q_pow(3).bar(), QScalar::q_pow(-3));
    }

    use proptest::prelude::*;

    fn laurent() -> impl Strategy<Value = QScalar> {
        prop::collection::vec((-4i64..=4, -8i32..=8), 0..4).prop_map(|t| QScalar::from_t_terms(&t))
    }

    fn scalar() -> impl Strategy<Value = QScalar> {
        (laurent(), laurent()).prop_map(|(n, d)| if d.is_zero() { n } else { n.div(&d).unwrap() })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn display_parses_back(a in scalar()) {
            let b: QScalar = a.to_string().parse().unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
