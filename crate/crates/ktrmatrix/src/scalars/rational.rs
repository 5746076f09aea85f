//! Rational functions in the spectral parameter.

use super::{QScalar, ScalarError, ZetaSeries};

/// `num / den` with exact Laurent-polynomial parts.
///
/// Reduced form: the gcd over Q(t) is divided out, the denominator has
/// lowest degree 0 and lowest coefficient 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZetaRational {
    num: ZetaSeries,
    den: ZetaSeries,
}

/// Polynomial remainder over Q(t); both operands exact with lowest degree 0.
fn poly_rem(a: &ZetaSeries, b: &ZetaSeries) -> ZetaSeries {
    let bd = b.max_degree().expect("remainder by zero");
    let bl = b.coeff(bd).inv().expect("nonzero lead");
    let mut r = a.clone();
    while let Some(rd) = r.max_degree() {
        if rd < bd {
            break;
        }
        let f = r.coeff(rd).mul(&bl);
        r = r.sub(&b.shift(rd - bd).scale(&f));
    }
    r
}

fn poly_div_exact(a: &ZetaSeries, b: &ZetaSeries) -> ZetaSeries {
    let bd = b.max_degree().expect("division by zero");
    let bl = b.coeff(bd).inv().expect("nonzero lead");
    let mut r = a.clone();
    let mut q = ZetaSeries::exact_zero();
    while let Some(rd) = r.max_degree() {
        if rd < bd {
            break;
        }
        let f = r.coeff(rd).mul(&bl);
        let m = ZetaSeries::monomial(f, rd - bd, None);
        r = r.sub(&b.mul(&m));
        q = q.add(&m);
    }
    assert!(r.is_zero(), "inexact division of ζ-polynomials");
    q
}

fn normalize_low(p: &ZetaSeries) -> ZetaSeries {
    match p.min_degree() {
        Some(d) => p.shift(-d),
        None => p.clone(),
    }
}

fn poly_gcd(a: &ZetaSeries, b: &ZetaSeries) -> ZetaSeries {
    let mut a = normalize_low(a);
    let mut b = normalize_low(b);
    while !b.is_zero() {
        let r = poly_rem(&a, &b);
        a = b;
        b = normalize_low(&r);
    }
    a
}

impl ZetaRational {
    pub fn new(num: ZetaSeries, den: ZetaSeries) -> Result<Self, ScalarError> {
        assert!(num.is_exact() && den.is_exact(), "rational parts must be exact");
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(ZetaRational::from_poly(ZetaSeries::exact_zero()));
        }
        let shift = den.min_degree().unwrap();
        let mut num = num.shift(-shift);
        let mut den = den.shift(-shift);
        let g = poly_gcd(&num, &den);
        if g.max_degree().unwrap_or(0) > 0 {
            num = poly_div_exact(&normalize_low(&num), &g).shift(num.min_degree().unwrap());
            den = poly_div_exact(&den, &g);
        }
        let c = den.coeff(0).inv()?;
        Ok(ZetaRational { num: num.scale(&c), den: den.scale(&c) })
    }

    pub fn from_poly(p: ZetaSeries) -> Self {
        assert!(p.is_exact());
        ZetaRational { num: p, den: ZetaSeries::constant(QScalar::one(), None) }
    }

    pub fn numerator(&self) -> &ZetaSeries {
        &self.num
    }

    pub fn denominator(&self) -> &ZetaSeries {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &ZetaRational) -> ZetaRational {
        if self.den == o.den {
            return ZetaRational::new(self.num.add(&o.num), self.den.clone()).unwrap();
        }
        ZetaRational::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
        .unwrap()
    }

    pub fn neg(&self) -> ZetaRational {
        ZetaRational { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &ZetaRational) -> ZetaRational {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &ZetaRational) -> ZetaRational {
        ZetaRational::new(self.num.mul(&o.num), self.den.mul(&o.den)).unwrap()
    }

    pub fn inv(&self) -> Result<ZetaRational, ScalarError> {
        ZetaRational::new(self.den.clone(), self.num.clone())
    }

    /// Expansion at `ζ = 0` to degree `order`; the denominator is a unit there
    /// by the reduced form.
    pub fn to_series(&self, order: i32) -> ZetaSeries {
        let d = self.den.truncate(order).inv().expect("reduced denominator is a unit at 0");
        self.num.truncate(order).mul(&d).truncate(order)
    }

    /// `num` and `den` as `{deg, coeff}` arrays.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"num": self.num.to_json(), "den": self.den.to_json()})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<ZetaRational, ScalarError> {
        let num = ZetaSeries::from_json(&v["num"], None)?;
        let den = ZetaSeries::from_json(&v["den"], None)?;
        ZetaRational::new(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_minus(c: QScalar, k: i32) -> ZetaSeries {
        ZetaSeries::from_terms([(0, QScalar::one()), (k, c.neg())], None)
    }

    #[test]
    fn common_factor_cancels() {
        let a = one_minus(QScalar::q_pow(-2), 1);
        let b = one_minus(QScalar::one(), 2);
        let r = ZetaRational::new(a.mul(&b), b.mul(&one_minus(QScalar::one(), 1))).unwrap();
        let s = ZetaRational::new(a, one_minus(QScalar::one(), 1)).unwrap();
        assert_eq!(r, s);
    }

    #[test]
    fn expansion_times_reciprocal_is_one() {
        let r = ZetaRational::new(
            one_minus(QScalar::q_pow(1), 1),
            one_minus(QScalar::q_pow(-2), 2),
        )
        .unwrap();
        let p = r.to_series(8).mul(&r.inv().unwrap().to_series(8));
        assert!(p.agrees_with(&ZetaSeries::constant(QScalar::one(), Some(8))).is_ok());
    }
}
