//! Closed-form R-matrices and L-operators, stored as a scalar prefactor times
//! a matrix of Laurent polynomials in ζ with oscillator-valued entries.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ktfactory::{scale_series, SeriesMat};
use crate::linalg::OpMatrix;
use crate::oscillator::{OscError, OscOp};
use crate::qgroup::OpMat;
use crate::rootsys::Algebra;
use crate::scalars::{lambda_level, QScalar, Ring, ScalarError, ZetaSeries};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RefError {
    #[error("unsupported combination {0}; supported: {1}")]
    Unsupported(String, String),
    #[error("expected {expected} exponents, got {got}")]
    ExponentCount { expected: usize, got: usize },
    #[error("prefactor has no power-series expansion in this variable")]
    NoExpansion,
    #[error("matrix is not triangular with invertible monomial diagonal")]
    NotTriangular,
    #[error("entry ({0}, {1}) has ζ-degree {2} outside {{-1, 1}}")]
    NotLinear(usize, usize, i32),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Osc(#[from] OscError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Kind {
    R,
    LHat,
    LCheck,
    R0,
    RHat0,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::R => "r",
            Kind::LHat => "l-hat",
            Kind::LCheck => "l-check",
            Kind::R0 => "r0",
            Kind::RHat0 => "r-hat0",
        })
    }
}

impl FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "r" => Ok(Kind::R),
            "l-hat" => Ok(Kind::LHat),
            "l-check" => Ok(Kind::LCheck),
            "r0" => Ok(Kind::R0),
            "r-hat0" => Ok(Kind::RHat0),
            _ => Err(format!("unknown kind {s:?}")),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Variant {
    Plain,
    /// Precomposed with the Dynkin automorphism (A1 only).
    Twisted,
    Family1,
    Family2,
    /// The Ľ obtained by inverting the first L̂ family.
    InverseDerived,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Plain => "plain",
            Variant::Twisted => "twisted",
            Variant::Family1 => "family1",
            Variant::Family2 => "family2",
            Variant::InverseDerived => "inverse-derived",
        })
    }
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plain" => Ok(Variant::Plain),
            "twisted" => Ok(Variant::Twisted),
            "family1" | "1" => Ok(Variant::Family1),
            "family2" | "2" => Ok(Variant::Family2),
            "inverse-derived" => Ok(Variant::InverseDerived),
            _ => Err(format!("unknown variant {s:?}")),
        }
    }
}

/// Every `(kind, algebra, variant)` with a closed form.
pub fn supported() -> Vec<(Kind, Algebra, Variant)> {
    use Algebra::*;
    use Kind::*;
    use Variant::*;
    vec![
        (R, A1, Plain),
        (R, A2, Plain),
        (LHat, A1, Plain),
        (LHat, A1, Twisted),
        (LCheck, A1, Plain),
        (LCheck, A1, Twisted),
        (LHat, A2, Family1),
        (LHat, A2, Family2),
        (LCheck, A2, Family1),
        (LCheck, A2, Family2),
        (LCheck, A2, InverseDerived),
        (R0, A1, Plain),
        (R0, A2, Plain),
        (RHat0, A1, Plain),
        (RHat0, A2, Plain),
    ]
}

fn supported_list() -> String {
    supported()
        .iter()
        .map(|(k, a, v)| format!("{k}/{a}/{v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// `sign · λ_level(q^{q_power} ζ^{zeta_sign · s})`.
#[derive(Clone, PartialEq, Debug)]
pub struct Lambda {
    pub level: u32,
    pub sign: i32,
    pub q_power: i32,
    pub zeta_sign: i32,
}

/// `t^{t_power} · exp(Σ λ-terms) / denominator`.
#[derive(Clone, PartialEq, Debug)]
pub struct Prefactor {
    pub t_power: i32,
    pub lambdas: Vec<Lambda>,
    /// Exact Laurent polynomial in ζ.
    pub denominator: Option<ZetaSeries>,
    pub s: i32,
}

impl Prefactor {
    fn unit() -> Self {
        Prefactor { t_power: 0, lambdas: Vec::new(), denominator: None, s: 1 }
    }

    /// Expansion to `order` in ζ, or in `w = 1/ζ` when `inverted`.
    pub fn series(&self, order: i32, inverted: bool) -> Result<ZetaSeries, RefError> {
        let flip = if inverted { -1 } else { 1 };
        let mut exponent = ZetaSeries::zero(Some(order));
        for l in &self.lambdas {
            let power = l.zeta_sign * self.s * flip;
            if power < 1 {
                return Err(RefError::NoExpansion);
            }
            let term = lambda_level(l.level, &QScalar::q_pow(l.q_power), power, order)?;
            exponent = exponent.add(&term.scale(&QScalar::int(l.sign as i64)));
        }
        let mut out = exponent.exp()?.scale(&QScalar::t_pow(self.t_power));
        if let Some(d) = &self.denominator {
            let d = if inverted { d.invert_variable()? } else { d.clone() };
            let v = d.min_degree().unwrap_or(0);
            out = out.mul(&d.with_order(order + 2 * v.abs()).inv()?).truncate(order);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "q_power_sixths": self.t_power,
            "lambdas": self.lambdas.iter().map(|l| serde_json::json!({
                "level": l.level, "sign": l.sign, "q_power": l.q_power, "zeta_power": l.zeta_sign * self.s,
            })).collect::<Vec<_>>(),
            "denominator": self.denominator.as_ref().map(|d| d.to_json()),
        })
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct ReferenceObject {
    pub kind: Kind,
    pub algebra: Algebra,
    pub variant: Variant,
    pub exps: Vec<i32>,
    pub prefactor: Prefactor,
    /// Prefactor-stripped matrix; entries are exact Laurent polynomials in ζ.
    pub matrix: SeriesMat,
}

impl ReferenceObject {
    /// Prefactor times matrix, expanded to `order` in ζ (or in `1/ζ`).
    pub fn series(&self, order: i32, inverted: bool) -> Result<SeriesMat, RefError> {
        let m = if inverted { invert_zeta(&self.matrix)? } else { self.matrix.clone() };
        let low = m
            .entries()
            .flat_map(|(_, _, e)| e.terms().filter_map(|(_, c)| c.min_degree()).collect::<Vec<_>>())
            .min()
            .unwrap_or(0);
        let p = self.prefactor.series(order + (-low).max(0), inverted)?;
        Ok(scale_series(&m, &p).map(|e| e.map_coeffs(|c| c.truncate(order))))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind.to_string(),
            "algebra": self.algebra.to_string(),
            "variant": self.variant.to_string(),
            "exponents": self.exps,
            "prefactor": self.prefactor.to_json(),
            "matrix": self.matrix.to_json("laurent"),
        })
    }
}

/// `ζ -> 1/ζ` in every coefficient of an exact matrix.
pub fn invert_zeta(m: &SeriesMat) -> Result<SeriesMat, RefError> {
    if m.entries().any(|(_, _, e)| e.terms().any(|(_, c)| !c.is_exact())) {
        return Err(ScalarError::TruncatedInversion.into());
    }
    Ok(m.map(|e| e.map_coeffs(|c| c.invert_variable().expect("exact"))))
}

type E = OscOp<ZetaSeries>;

fn z(k: i32) -> E {
    OscOp::constant(ZetaSeries::monomial(QScalar::one(), k, None))
}

fn qs(k: i32) -> E {
    OscOp::from_scalar(QScalar::q_pow(k))
}

fn qd(c1: i32, c2: i32) -> E {
    OscOp::q_pow_d([c1, c2])
}

fn a(i: usize) -> E {
    OscOp::a(i)
}

fn ad(i: usize) -> E {
    OscOp::adag(i)
}

fn prod(xs: &[E]) -> E {
    xs.iter().fold(E::one(), |acc, x| acc.mul(x))
}

fn scalar_poly(terms: &[(i32, QScalar)]) -> ZetaSeries {
    ZetaSeries::from_terms(terms.iter().cloned(), None)
}

fn from_rows(rows: Vec<Vec<E>>) -> SeriesMat {
    let n = rows.len();
    OpMatrix::from_fn(n, |i, j| rows[i][j].clone())
}

/// Index of `E_ab ⊗ E_cd` in the Kronecker layout.
fn pair(n: usize, a: usize, b: usize, c: usize, d: usize) -> (usize, usize) {
    (a * n + c, b * n + d)
}

fn r_matrix(alg: Algebra, e: &[i32]) -> (Prefactor, SeriesMat) {
    let q = QScalar::q_pow;
    let s = e[0];
    let n = alg.rank() + 1;
    let (t_power, level, qp) = match alg {
        Algebra::A1 => (3, 2, 1),
        Algebra::A2 => (4, 3, 2),
    };
    let pre = Prefactor {
        t_power,
        lambdas: vec![
            Lambda { level, sign: 1, q_power: qp, zeta_sign: 1 },
            Lambda { level, sign: -1, q_power: -qp, zeta_sign: 1 },
        ],
        denominator: Some(scalar_poly(&[(0, QScalar::one()), (s, q(-2).neg())])),
        s,
    };
    let diag = OscOp::constant(scalar_poly(&[(0, QScalar::one()), (s, q(-2).neg())]));
    let mixed = OscOp::constant(scalar_poly(&[(0, q(-1)), (s, q(-1).neg())]));
    let off = QScalar::one().sub(&q(-2));
    // ζ-exponent of E_ab ⊗ E_ba for a < b, and of E_ba ⊗ E_ab
    let up = |a: usize, b: usize| e[a + 1..=b].iter().sum::<i32>();
    let mut m = OpMatrix::zeros(n * n);
    for x in 0..n {
        for y in 0..n {
            let (i, j) = pair(n, x, x, y, y);
            m.set(i, j, if x == y { diag.clone() } else { mixed.clone() });
            if x < y {
                let (i, j) = pair(n, x, y, y, x);
                m.set(i, j, OscOp::constant(ZetaSeries::monomial(off.clone(), up(x, y), None)));
                let (i, j) = pair(n, y, x, x, y);
                m.set(i, j, OscOp::constant(ZetaSeries::monomial(off.clone(), s - up(x, y), None)));
            }
        }
    }
    (pre, m)
}

fn lambda_pre(level: u32, sign: i32, q_power: i32, zeta_sign: i32, s: i32, den: Option<ZetaSeries>) -> Prefactor {
    Prefactor { t_power: 0, lambdas: vec![Lambda { level, sign, q_power, zeta_sign }], denominator: den, s }
}

fn a1_l(kind: Kind, twisted: bool, e: &[i32]) -> (Prefactor, SeriesMat) {
    let (s, s1) = (e[0], e[1]);
    let pre = lambda_pre(2, 1, -1, 1, s, None);
    let tail = qd(-1, 0).sub(&qd(1, 0).mul(&z(s)));
    // exponents on the (1,2) and (2,1) corners
    let (up, down) = match kind {
        Kind::LHat => (s - s1, s1),
        _ => (s1, s - s1),
    };
    let m = if !twisted {
        from_rows(vec![
            vec![qd(1, 0), prod(&[a(0), qd(-1, 0), z(up)])],
            vec![prod(&[ad(0), qd(1, 0), z(down)]), tail],
        ])
    } else {
        from_rows(vec![
            vec![tail, prod(&[ad(0), qd(1, 0), z(up)])],
            vec![prod(&[a(0), qd(-1, 0), z(down)]), qd(1, 0)],
        ])
    };
    (pre, m)
}

fn a2_l(kind: Kind, variant: Variant, e: &[i32]) -> (Prefactor, SeriesMat) {
    let (s, s1, s2) = (e[0], e[1], e[2]);
    let one_minus = Some(scalar_poly(&[(0, QScalar::one()), (s, QScalar::int(-1))]));
    let zero = E::zero();
    match (kind, variant) {
        (Kind::LHat, Variant::Family1) => (
            lambda_pre(3, 1, -2, 1, s, None),
            from_rows(vec![
                vec![
                    qd(1, 0),
                    prod(&[qs(-2), a(0), qd(-1, -1), z(s - s1)]),
                    prod(&[a(0), a(1), qd(-1, -3), z(s - s1 - s2)]),
                ],
                vec![
                    prod(&[ad(0), qd(1, 0), z(s1)]),
                    qd(-1, 1).sub(&prod(&[qs(-2), qd(1, -1), z(s)])),
                    prod(&[a(1), qd(1, -3), z(s - s2)]).neg(),
                ],
                vec![zero.clone(), prod(&[ad(1), qd(0, 1), z(s2)]), qd(0, -1)],
            ]),
        ),
        (Kind::LHat, Variant::Family2) => (
            lambda_pre(3, -1, 2, 1, s, one_minus),
            from_rows(vec![
                vec![
                    qd(1, 0).sub(&prod(&[qs(-2), qd(-1, 0), z(s)])),
                    prod(&[a(0), qd(-3, 1), z(s - s1)]).neg(),
                    prod(&[a(0), a(1), qd(-1, -1), z(s - s1 - s2)]).neg(),
                ],
                vec![
                    prod(&[ad(0), qd(1, 0), z(s1)]),
                    qd(-1, 1),
                    prod(&[a(1), qd(1, -1), z(s - s2)]),
                ],
                vec![
                    prod(&[qs(-1), ad(0), ad(1), z(s1 + s2)]),
                    prod(&[ad(1), qd(-2, 1), z(s2)]),
                    qd(0, -1).sub(&qd(0, 1).mul(&z(s))),
                ],
            ]),
        ),
        (Kind::LCheck, Variant::Family1) => (
            lambda_pre(3, 1, -2, 1, s, None),
            from_rows(vec![
                vec![qd(1, 0), prod(&[a(0), qd(-1, 1), z(s1)]), zero.clone()],
                vec![
                    prod(&[qs(-2), ad(0), qd(1, -2), z(s - s1)]),
                    qd(-1, 1).sub(&prod(&[qs(-2), qd(1, -1), z(s)])),
                    prod(&[a(1), qd(1, -1), z(s2)]),
                ],
                vec![
                    prod(&[qs(-3), ad(0), ad(1), qd(0, -2), z(s - s1 - s2)]),
                    prod(&[qs(-2), ad(1), qd(0, -1), z(s - s2)]).neg(),
                    qd(0, -1),
                ],
            ]),
        ),
        (Kind::LCheck, Variant::Family2) => (
            lambda_pre(3, -1, 2, 1, s, one_minus),
            from_rows(vec![
                vec![
                    qd(1, 0).sub(&prod(&[qs(-2), qd(-1, 0), z(s)])),
                    prod(&[a(0), qd(-1, 1), z(s1)]),
                    prod(&[a(0), a(1), qd(-1, -1), z(s1 + s2)]),
                ],
                vec![
                    prod(&[qs(-2), ad(0), qd(-1, 0), z(s - s1)]).neg(),
                    qd(-1, 1),
                    prod(&[a(1), qd(-1, -1), z(s2)]),
                ],
                vec![
                    prod(&[qs(-1), ad(0), ad(1), z(s - s1 - s2)]).neg(),
                    prod(&[ad(1), qd(0, 1), z(s - s2)]),
                    qd(0, -1).sub(&qd(0, 1).mul(&z(s))),
                ],
            ]),
        ),
        (Kind::LCheck, Variant::InverseDerived) => (
            lambda_pre(3, -1, -2, -1, s, one_minus),
            from_rows(vec![
                vec![
                    prod(&[qs(2), qd(1, 0)]).sub(&qd(-1, 0).mul(&z(s))),
                    prod(&[a(0), qd(1, 0), z(s1)]),
                    prod(&[qs(-1), a(0), a(1), z(s1 + s2)]),
                ],
                vec![
                    prod(&[ad(0), qd(-1, -1), z(s - s1)]),
                    prod(&[qd(1, -1), z(s)]).neg(),
                    prod(&[a(1), qd(0, -1), z(s2)]).neg(),
                ],
                vec![
                    prod(&[ad(0), ad(1), qd(-1, -1), z(s - s1 - s2)]).neg(),
                    prod(&[ad(1), qd(1, -1), z(s - s2)]),
                    qd(0, -1).sub(&qd(0, 1).mul(&z(s))),
                ],
            ]),
        ),
        _ => unreachable!("checked against the supported list"),
    }
}

/// `R_0 = Σ q^{δ_ab} E_aa ⊗ E_bb + (q - q^{-1}) Σ_{a<b} E_ab ⊗ E_ba`.
pub fn r0(n: usize) -> OpMat {
    let mut m = OpMatrix::zeros(n * n);
    let k = QScalar::q_minus_qinv();
    for x in 0..n {
        for y in 0..n {
            let (i, j) = pair(n, x, x, y, y);
            m.set(i, j, OscOp::constant(QScalar::q_pow(if x == y { 1 } else { 0 })));
            if x < y {
                let (i, j) = pair(n, x, y, y, x);
                m.set(i, j, OscOp::constant(k.clone()));
            }
        }
    }
    m
}

/// `R̂_0 = Σ q^{δ_ab} E_ab ⊗ E_ba + (q - q^{-1}) Σ_{a<b} E_aa ⊗ E_bb`.
pub fn r_hat0(n: usize) -> OpMat {
    let mut m = OpMatrix::zeros(n * n);
    let k = QScalar::q_minus_qinv();
    for x in 0..n {
        for y in 0..n {
            let (i, j) = pair(n, x, y, y, x);
            m.set(i, j, OscOp::constant(QScalar::q_pow(if x == y { 1 } else { 0 })));
            if x < y {
                let (i, j) = pair(n, x, x, y, y);
                m.set(i, j, OscOp::constant(k.clone()));
            }
        }
    }
    m
}

/// The closed form for `(kind, algebra, variant)` at exponents `(s, s_1[, s_2])`.
pub fn reference_matrix(kind: Kind, algebra: Algebra, variant: Variant, exps: &[i32]) -> Result<ReferenceObject, RefError> {
    if !supported().contains(&(kind, algebra, variant)) {
        return Err(RefError::Unsupported(format!("{kind}/{algebra}/{variant}"), supported_list()));
    }
    let r = algebra.rank();
    let (prefactor, matrix) = match kind {
        Kind::R0 | Kind::RHat0 => {
            let m = if kind == Kind::R0 { r0(r + 1) } else { r_hat0(r + 1) };
            (Prefactor::unit(), crate::ktfactory::lift_exact(&m))
        }
        _ => {
            if exps.len() != r + 1 {
                return Err(RefError::ExponentCount { expected: r + 1, got: exps.len() });
            }
            match (kind, algebra) {
                (Kind::R, _) => r_matrix(algebra, exps),
                (_, Algebra::A1) => a1_l(kind, variant == Variant::Twisted, exps),
                (_, Algebra::A2) => a2_l(kind, variant, exps),
            }
        }
    };
    Ok(ReferenceObject { kind, algebra, variant, exps: exps.to_vec(), prefactor, matrix })
}

/// `G(ζ) = diag(1, ζ^{-s_1}, ζ^{-s_1-s_2})` with `ζ -> x^i y^j`, as Bivar entries.
pub fn gauge_diag(exps: &[i32]) -> Vec<i32> {
    let mut out = vec![0];
    let mut acc = 0;
    for s in &exps[1..] {
        acc -= s;
        out.push(acc);
    }
    out
}

/// Inverse of a triangular matrix whose diagonal entries are single
/// shift-free monomials `u^b c`.
pub fn triangular_inverse(m: &OpMat) -> Result<OpMat, RefError> {
    let n = m.dim();
    let lower = (0..n).all(|i| (i + 1..n).all(|j| m.get(i, j).is_zero()));
    let upper = (0..n).all(|i| (0..i).all(|j| m.get(i, j).is_zero()));
    if !lower && !upper {
        return Err(RefError::NotTriangular);
    }
    let mut inv_diag = Vec::with_capacity(n);
    for i in 0..n {
        let d = m.get(i, i);
        let mut it = d.terms();
        let ((shift, u), c) = match (it.next(), it.next()) {
            (Some(t), None) => t,
            _ => return Err(RefError::NotTriangular),
        };
        if *shift != [0; 2] || c.is_zero() {
            return Err(RefError::NotTriangular);
        }
        inv_diag.push(OscOp::term([0; 2], [-u[0], -u[1]], c.inv()?));
    }
    let mut x: OpMat = OpMatrix::zeros(n);
    for i in 0..n {
        x.set(i, i, inv_diag[i].clone());
    }
    if lower {
        for i in 0..n {
            for j in (0..i).rev() {
                let mut acc = OscOp::zero();
                for k in j..i {
                    acc = acc.add(&m.get(i, k).mul(x.get(k, j)));
                }
                x.set(i, j, inv_diag[i].mul(&acc).neg());
            }
        }
    } else {
        for i in (0..n).rev() {
            for j in i + 1..n {
                let mut acc = OscOp::zero();
                for k in i + 1..=j {
                    acc = acc.add(&m.get(i, k).mul(x.get(k, j)));
                }
                x.set(i, j, inv_diag[i].mul(&acc).neg());
            }
        }
    }
    Ok(x)
}

/// Degree-`d` coefficient matrix of a series matrix.
pub fn coefficient(m: &SeriesMat, d: i32) -> OpMat {
    m.map(|e| e.map_coeffs(|c| c.coeff(d)))
}

/// Inverse of a series matrix with triangular invertible constant term,
/// truncated at `order`.
pub fn series_inverse(m: &SeriesMat, order: i32) -> Result<SeriesMat, RefError> {
    let m = m.map(|e| e.map_coeffs(|c| c.truncate(order)));
    let m0 = coefficient(&m, 0);
    let x0 = lift_truncated(&triangular_inverse(&m0)?, order);
    let rest = m.sub(&lift_truncated(&m0, order));
    let step = x0.mul(&rest).neg();
    let mut acc = x0.clone();
    let mut term = x0;
    loop {
        term = step.mul(&term);
        if term.is_zero() {
            return Ok(acc);
        }
        acc = acc.add(&term);
    }
}

fn lift_truncated(m: &OpMat, order: i32) -> SeriesMat {
    m.map(|e| e.map_coeffs(|c| ZetaSeries::constant(c.clone(), Some(order))))
}

/// The ζ-linear decomposition `M = ζ M_+ - ζ^{-1} M_-` of `ζ^k M`.
pub fn decompose(m: &SeriesMat, k: i32) -> Result<(OpMat, OpMat), RefError> {
    for (i, j, e) in m.entries() {
        for (_, c) in e.terms() {
            for (d, _) in c.terms() {
                if d + k != 1 && d + k != -1 {
                    return Err(RefError::NotLinear(i, j, d + k));
                }
            }
        }
    }
    Ok((coefficient(m, 1 - k), coefficient(m, -1 - k).neg()))
}

fn is_upper(m: &OpMat) -> bool {
    let n = m.dim();
    (0..n).all(|i| (0..i).all(|j| m.get(i, j).is_zero()))
}

fn is_lower(m: &OpMat) -> bool {
    let n = m.dim();
    (0..n).all(|i| (i + 1..n).all(|j| m.get(i, j).is_zero()))
}

fn has_zero_diagonal(m: &OpMat) -> bool {
    (0..m.dim()).any(|i| m.get(i, i).is_zero())
}

/// The ζ-linear pieces of an L-operator at its special exponents.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub exps: Vec<i32>,
    /// Overall rescale `ζ^k`.
    pub k: i32,
    pub plus: OpMat,
    pub minus: OpMat,
    /// `L̂_-^{-1} L̂_+` for L̂, `Ľ_+^{-1} Ľ_-` for Ľ.
    pub projector: OpMat,
}

/// Scans `s ∈ {-2,-1,1,2}`, `s_i ∈ {-1,0,1}` and rescales `ζ^k` for the first
/// exponents where the L-operator is ζ-linear with the required shape:
/// for L̂, `L_+` upper triangular and degenerate, `L_-` lower triangular and
/// invertible; for Ľ, `L_-` triangular and degenerate, `L_+` triangular and invertible.
pub fn special_decomposition(kind: Kind, alg: Algebra, variant: Variant) -> Result<Decomposition, RefError> {
    let r = alg.rank();
    let mut grid: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..r {
        grid = grid
            .into_iter()
            .flat_map(|v| (-1..=1).map(move |x| [v.clone(), vec![x]].concat()))
            .collect();
    }
    for s in [-2, -1, 1, 2] {
        for fin in &grid {
            let exps = [vec![s], fin.clone()].concat();
            let obj = reference_matrix(kind, alg, variant, &exps)?;
            for k in -3..=3 {
                let Ok((plus, minus)) = decompose(&obj.matrix, k) else { continue };
                let found = match kind {
                    Kind::LHat => {
                        if is_upper(&plus) && has_zero_diagonal(&plus) && is_lower(&minus) {
                            triangular_inverse(&minus).ok().map(|mi| mi.mul(&plus))
                        } else {
                            None
                        }
                    }
                    _ => {
                        let tri = |m: &OpMat| is_upper(m) || is_lower(m);
                        if tri(&plus) && tri(&minus) && has_zero_diagonal(&minus) {
                            triangular_inverse(&plus).ok().map(|pi| pi.mul(&minus))
                        } else {
                            None
                        }
                    }
                };
                if let Some(projector) = found {
                    return Ok(Decomposition { exps, k, plus, minus, projector });
                }
            }
        }
    }
    Err(RefError::Unsupported(format!("{kind}/{alg}/{variant} has no special exponents"), supported_list()))
}

/// A Fock-space vector: occupation numbers to coefficients.
pub type FockVector = std::collections::BTreeMap<[i32; 2], QScalar>;

/// Applies an oscillator element to a Fock vector (states with negative
/// occupation are discarded; for elements of the algebra they carry zero).
pub fn apply(op: &OscOp<QScalar>, v: &FockVector) -> FockVector {
    let mut out = FockVector::new();
    for (n, x) in v {
        for ((k, u), c) in op.terms() {
            let m = [n[0] + k[0], n[1] + k[1]];
            if m[0] < 0 || m[1] < 0 {
                continue;
            }
            let w = c.mul(x).mul(&QScalar::t_pow(u[0] * n[0] + u[1] * n[1]));
            let slot = out.entry(m).or_insert_with(QScalar::zero);
            *slot = slot.add(&w);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Matrix of oscillator elements applied to a column of Fock vectors.
pub fn apply_matrix(m: &OpMat, v: &[FockVector]) -> Vec<FockVector> {
    (0..m.dim())
        .map(|i| {
            let mut acc = FockVector::new();
            for (j, vj) in v.iter().enumerate() {
                for (st, c) in apply(m.get(i, j), vj) {
                    let slot = acc.entry(st).or_insert_with(QScalar::zero);
                    *slot = slot.add(&c);
                }
            }
            acc.retain(|_, c| !c.is_zero());
            acc
        })
        .collect()
}

/// A nonzero vector `Π x` in the image of the projector, with `x` a basis
/// vector tensored with a Fock state.
pub fn projector_image(p: &OpMat) -> Option<Vec<FockVector>> {
    let n = p.dim();
    for state in [[0, 0], [1, 0], [0, 1], [1, 1], [2, 0]] {
        for j in 0..n {
            let mut x = vec![FockVector::new(); n];
            x[j].insert(state, QScalar::one());
            let v = apply_matrix(p, &x);
            if v.iter().any(|c| !c.is_empty()) {
                return Some(v);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i32) -> QScalar {
        QScalar::q_pow(k)
    }

    #[test]
    fn a1_r_symmetric_corner() {
        let r = reference_matrix(Kind::R, Algebra::A1, Variant::Plain, &[-2, -1]).unwrap();
        // E12 ⊗ E21 sits at (1, 2)
        let e = r.matrix.get(1, 2).as_constant().unwrap();
        assert_eq!(e, ZetaSeries::monomial(QScalar::one().sub(&q(-2)), -1, None));
        let den = r.prefactor.denominator.unwrap();
        assert_eq!(den, ZetaSeries::from_terms([(0, QScalar::one()), (-2, q(-2).neg())], None));
    }

    #[test]
    fn a1_l_hat_corner() {
        let l = reference_matrix(Kind::LHat, Algebra::A1, Variant::Plain, &[1, 0]).unwrap();
        let expect = qd(-1, 0).sub(&qd(1, 0).mul(&z(1)));
        assert_eq!(l.matrix.get(1, 1), &expect);
    }

    #[test]
    fn twisted_a1_corners() {
        let l = reference_matrix(Kind::LHat, Algebra::A1, Variant::Twisted, &[1, 0]).unwrap();
        assert_eq!(l.matrix.get(1, 1), &qd(1, 0));
        assert_eq!(l.matrix.get(0, 1), &prod(&[ad(0), qd(1, 0), z(1)]));
    }

    #[test]
    fn r0_a2_shape() {
        let m = r0(3);
        assert_eq!(m.entries().filter(|(_, _, e)| !e.is_zero()).count(), 9 + 3);
        assert_eq!(m.get(0, 0), &OscOp::constant(q(1)));
        assert_eq!(m.get(1, 3), &OscOp::constant(QScalar::q_minus_qinv()));
    }

    #[test]
    fn unsupported_lists_variants() {
        let e = reference_matrix(Kind::LHat, Algebra::A1, Variant::Family2, &[1, 0]).unwrap_err();
        match e {
            RefError::Unsupported(_, list) => assert!(list.contains("l-check/a2/inverse-derived")),
            _ => panic!("{e:?}"),
        }
    }

    #[test]
    fn series_inverse_roundtrip() {
        let l = reference_matrix(Kind::LHat, Algebra::A2, Variant::Family1, &[1, 0, 0]).unwrap();
        let m = l.series(4, false).unwrap();
        let inv = series_inverse(&m, 4).unwrap();
        let id = crate::ktfactory::lift_exact(&OpMatrix::identity(3));
        assert_eq!(crate::ktfactory::series_difference(&m.mul(&inv), &id, 4), None);
    }

    #[test]
    fn gauge_diag_exponents() {
        assert_eq!(gauge_diag(&[2, 1, -3]), vec![0, -1, 2]);
    }

    #[test]
    fn apply_annihilation() {
        let mut v = FockVector::new();
        v.insert([0, 0], QScalar::one());
        assert!(apply(&OscOp::a(0), &v).is_empty());
        let up = apply(&OscOp::adag(0), &v);
        assert_eq!(up.get(&[1, 0]), Some(&QScalar::one()));
    }
}
