//! q-numbers, q-factorials and the λ-functions.

use super::{QScalar, ScalarError, ZetaSeries, Q_EXP};

/// `[n]_q = (q^n - q^{-n}) / (q - q^{-1})`, a Laurent polynomial in `q`.
pub fn qint(n: i32) -> QScalar {
    qint_base(n, 1)
}

/// `[n]_{q^k}`.
pub fn qint_base(n: i32, k: i32) -> QScalar {
    assert!(k != 0);
    if n == 0 {
        return QScalar::zero();
    }
    let sign = if n < 0 { -1 } else { 1 };
    let n = n.abs();
    // q^{k(n-1)} + q^{k(n-3)} + ... + q^{-k(n-1)}
    let terms: Vec<(i64, i32)> = (0..n)
        .map(|j| (sign, Q_EXP * k * (n - 1 - 2 * j)))
        .collect();
    QScalar::from_t_terms(&terms)
}

/// `[n]_q!`.
pub fn q_factorial(n: u32) -> QScalar {
    (1..=n as i32).fold(QScalar::one(), |acc, j| acc.mul(&qint(j)))
}

/// Symmetric q-binomial `[n choose k]_q`.
pub fn q_binomial(n: u32, k: u32) -> QScalar {
    if k > n {
        return QScalar::zero();
    }
    q_factorial(n)
        .div(&q_factorial(k).mul(&q_factorial(n - k)))
        .expect("q-factorials are nonzero")
}

/// `(n)_x = (x^n - 1) / (x - 1) = 1 + x + ... + x^{n-1}`.
pub fn small_qint(n: u32, x: &QScalar) -> QScalar {
    let mut acc = QScalar::zero();
    let mut p = QScalar::one();
    for _ in 0..n {
        acc = acc.add(&p);
        p = p.mul(x);
    }
    acc
}

/// `(n)_x!`.
pub fn small_qint_factorial(n: u32, x: &QScalar) -> QScalar {
    (1..=n).fold(QScalar::one(), |acc, j| acc.mul(&small_qint(j, x)))
}

/// Coefficient `1/(n)_x!` of `x`-exponential.
pub fn exp_q_coeff(n: u32, x: &QScalar) -> Result<QScalar, ScalarError> {
    small_qint_factorial(n, x).inv()
}

/// `λ_n(c ζ^p) = Σ_{m>=1} c^m ζ^{pm} / ([n]_{q^m} m)`, truncated at degree `order`.
pub fn lambda_level(n: u32, scale: &QScalar, power: i32, order: i32) -> Result<ZetaSeries, ScalarError> {
    if n != 2 && n != 3 {
        return Err(ScalarError::LambdaLevel(n));
    }
    assert!(power >= 1, "λ-series needs a positive ζ power");
    let mut out = Vec::new();
    let mut m = 1;
    while power * m <= order {
        let c = scale
            .pow(m)
            .div(&qint_base(n as i32, m).mul(&QScalar::int(m as i64)))?;
        out.push((power * m, c));
        m += 1;
    }
    Ok(ZetaSeries::from_terms(out, Some(order)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qint_small_values() {
        assert!(qint(0).is_zero());
        assert_eq!(qint(1), QScalar::one());
        assert_eq!(qint(3), QScalar::q_pow(2).add(&QScalar::one()).add(&QScalar::q_pow(-2)));
        assert_eq!(qint(-2), QScalar::q_pow(1).add(&QScalar::q_pow(-1)).neg());
    }

    #[test]
    fn qint_matches_quotient() {
        for n in -5..=5 {
            let direct = QScalar::q_pow(n)
                .sub(&QScalar::q_pow(-n))
                .div(&QScalar::q_minus_qinv())
                .unwrap();
            assert_eq!(qint(n), direct);
        }
    }

    #[test]
    fn q_binomial_pascal() {
        // [n,k] = q^{-k}[n-1,k] + q^{n-k}[n-1,k-1]
        for n in 1..6u32 {
            for k in 1..n {
                let rhs = QScalar::q_pow(-(k as i32))
                    .mul(&q_binomial(n - 1, k))
                    .add(&QScalar::q_pow((n - k) as i32).mul(&q_binomial(n - 1, k - 1)));
                assert_eq!(q_binomial(n, k), rhs);
            }
        }
    }

    #[test]
    fn lambda_level_first_coefficients() {
        let l2 = lambda_level(2, &QScalar::one(), 1, 4).unwrap();
        let expect = QScalar::q_pow(1).add(&QScalar::q_pow(-1)).inv().unwrap();
        assert_eq!(l2.coeff(1), expect);
        let l3 = lambda_level(3, &QScalar::q_pow(2), 1, 4).unwrap();
        assert_eq!(l3.coeff(1), QScalar::q_pow(2).div(&qint(3)).unwrap());
        assert_eq!(lambda_level(4, &QScalar::one(), 1, 4), Err(ScalarError::LambdaLevel(4)));
    }

    use proptest::prelude::*;

    /// `-log(1 - ζ^p)` to degree `order`.
    fn minus_log(p: i32, order: i32) -> ZetaSeries {
        ZetaSeries::from_terms([(0, QScalar::one()), (p, QScalar::int(-1))], Some(order))
            .log()
            .unwrap()
            .neg()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn lambda_sums_to_log(p in 1i32..=3, order in 1i32..=12) {
            let l = |n, k| lambda_level(n, &QScalar::q_pow(k), p, order).unwrap();
            let two = l(2, 1).add(&l(2, -1));
            prop_assert!(two.agrees_with(&minus_log(p, order)).is_ok());
            let three = l(3, 2).add(&l(3, 0)).add(&l(3, -2));
            prop_assert!(three.agrees_with(&minus_log(p, order)).is_ok());
        }
    }
}
