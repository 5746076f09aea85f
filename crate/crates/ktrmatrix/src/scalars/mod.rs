//! Exact scalars: Q(t) with `q = t^6`, Laurent series and rational functions
//! in the spectral parameter, and q-number helpers.

mod bivar;
mod poly;
mod qnum;
mod qscalar;
mod rational;
mod series;

pub use bivar::Bivar;
pub use qnum::{exp_q_coeff, lambda_level, q_binomial, q_factorial, qint, qint_base, small_qint, small_qint_factorial};
pub use qscalar::{QScalar, Q_EXP};
pub use rational::ZetaRational;
pub use series::ZetaSeries;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar from {0:?}")]
    Parse(String),
    #[error("exp requires a series without constant or negative-degree terms")]
    ExpConstantTerm,
    #[error("log requires a series with constant term 1 and no negative-degree terms")]
    LogConstantTerm,
    #[error("exp/log/inverse of an exact Laurent polynomial needs a truncation order")]
    ExactTranscendental,
    #[error("cannot invert the spectral variable of a truncated series")]
    TruncatedInversion,
    #[error("lambda level must be 2 or 3, got {0}")]
    LambdaLevel(u32),
}

/// Associative ring containing Q(t) as central scalars.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    /// Exact additive identity.
    fn zero() -> Self;
    /// Exact multiplicative identity.
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &QScalar) -> Self;
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
}

impl Ring for QScalar {
    fn zero() -> Self {
        QScalar::zero()
    }
    fn one() -> Self {
        QScalar::one()
    }
    fn is_zero(&self) -> bool {
        QScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        QScalar::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        QScalar::mul(self, o)
    }
    fn neg(&self) -> Self {
        QScalar::neg(self)
    }
    fn scale(&self, c: &QScalar) -> Self {
        QScalar::mul(self, c)
    }
}

impl Ring for ZetaSeries {
    fn zero() -> Self {
        ZetaSeries::exact_zero()
    }
    fn one() -> Self {
        ZetaSeries::constant(QScalar::one(), None)
    }
    fn is_zero(&self) -> bool {
        ZetaSeries::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        ZetaSeries::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        ZetaSeries::mul(self, o)
    }
    fn neg(&self) -> Self {
        ZetaSeries::neg(self)
    }
    fn scale(&self, c: &QScalar) -> Self {
        ZetaSeries::scale(self, c)
    }
}
