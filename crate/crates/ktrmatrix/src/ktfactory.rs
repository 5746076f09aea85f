//! Universal R-matrix evaluated on a pair of legs: root vectors by the
//! Cartan–Weyl recursion, q-exponential factors in the normal order,
//! the imaginary factor and the Cartan factor, assembled as a power series
//! in ζ truncated at a fixed degree.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::linalg::OpMatrix;
use crate::oscillator::{oscillator_image, OscError, OscOp, OscParams, Side};
use crate::qgroup::{phi, Cartan, GeneratorImage, OpMat, QGroupError};
use crate::rootsys::{positive_roots, regrouped_roots, root_form, Algebra, AffineRoot, RootKind};
use crate::scalars::{exp_q_coeff, qint, QScalar, ZetaSeries};

/// Matrix with oscillator entries whose coefficients are series in ζ.
pub type SeriesMat = OpMatrix<OscOp<ZetaSeries>>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KtError {
    #[error("invalid exponents {0:?}: need s >= 1 and every node exponent >= 0")]
    Exponents(Vec<i32>),
    #[error("expected {expected} exponents, got {got}")]
    ExponentCount { expected: usize, got: usize },
    #[error("generator {half}_{node} has no image on this leg")]
    MissingGenerator { half: &'static str, node: usize },
    #[error("normalization of root vector {0} differs from 1")]
    Normalization(String),
    #[error("q-exponential for root {0} does not terminate")]
    NonTerminating(String),
    #[error("Cartan factor with oscillators on both legs is not supported")]
    BothOscillator,
    #[error("truncation order must be non-negative, got {0}")]
    Order(i32),
    #[error("leg scale ({0}, {1}) must satisfy a - b = 1")]
    Scale(i32, i32),
    #[error(transparent)]
    Osc(#[from] OscError),
    #[error(transparent)]
    QGroup(#[from] QGroupError),
}

/// Which representations sit on the two tensor legs.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum LegPair {
    /// φ ⊗ φ: the R-matrix.
    PhiPhi,
    /// χ ⊗ φ: the L-operator with oscillators on the left.
    ChiPhi,
    /// φ ⊗ ψ: the L-operator with oscillators on the right.
    PhiPsi,
}

impl fmt::Display for LegPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LegPair::PhiPhi => "phi-phi",
            LegPair::ChiPhi => "chi-phi",
            LegPair::PhiPsi => "phi-psi",
        })
    }
}

impl FromStr for LegPair {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "phi-phi" => Ok(LegPair::PhiPhi),
            "chi-phi" => Ok(LegPair::ChiPhi),
            "phi-psi" => Ok(LegPair::PhiPsi),
            _ => Err(format!("unknown leg pair {s:?} (expected phi-phi, chi-phi or phi-psi)")),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RootOrder {
    Normal,
    Regrouped,
}

#[derive(Clone, PartialEq, Debug)]
pub struct KtParams {
    pub algebra: Algebra,
    pub pair: LegPair,
    /// Oscillator family (1 or 2); ignored for A1.
    pub family: u8,
    /// Diagram automorphism applied to the oscillator leg (both legs for φ ⊗ φ).
    pub twist: Option<Vec<usize>>,
    /// `(s, s_1[, s_2])`.
    pub exps: Vec<i32>,
    /// Truncation degree in ζ.
    pub order: i32,
    /// Oscillator parameters; `None` takes the standard ones.
    pub osc: Option<OscParams>,
    /// `ζ_1 = ζ^a`, `ζ_2 = ζ^b`.
    pub scale: (i32, i32),
    pub root_order: RootOrder,
}

impl KtParams {
    pub fn new(algebra: Algebra, pair: LegPair, exps: &[i32], order: i32) -> Self {
        KtParams {
            algebra,
            pair,
            family: 1,
            twist: None,
            exps: exps.to_vec(),
            order,
            osc: None,
            scale: (1, 0),
            root_order: RootOrder::Normal,
        }
    }

    pub fn validate(&self) -> Result<(), KtError> {
        let r = self.algebra.rank();
        if self.exps.len() != r + 1 {
            return Err(KtError::ExponentCount { expected: r + 1, got: self.exps.len() });
        }
        let s = self.exps[0];
        let rest: i32 = self.exps[1..].iter().sum();
        if s < 1 || self.exps[1..].iter().any(|&x| x < 0) || rest > s {
            return Err(KtError::Exponents(self.exps.clone()));
        }
        if self.order < 0 {
            return Err(KtError::Order(self.order));
        }
        if self.scale.0 - self.scale.1 != 1 {
            return Err(KtError::Scale(self.scale.0, self.scale.1));
        }
        Ok(())
    }

    /// The left and right leg images.
    pub fn legs(&self) -> Result<(GeneratorImage, GeneratorImage), KtError> {
        let alg = self.algebra;
        let osc = |side| -> Result<GeneratorImage, KtError> {
            let p = self.osc.clone().unwrap_or_else(|| OscParams::standard(alg, side, self.family));
            let img = oscillator_image(alg, side, self.family, &p, &self.exps)?;
            self.twisted(img)
        };
        let ph = || phi(alg, &self.exps);
        Ok(match self.pair {
            LegPair::PhiPhi => (self.twisted(ph())?, self.twisted(ph())?),
            LegPair::ChiPhi => (osc(Side::Chi)?, ph()),
            LegPair::PhiPsi => (ph(), osc(Side::Psi)?),
        })
    }

    fn twisted(&self, img: GeneratorImage) -> Result<GeneratorImage, KtError> {
        match &self.twist {
            Some(t) => Ok(img.twist(t)?),
            None => Ok(img),
        }
    }

    /// Largest δ-multiplicity that can contribute below the truncation.
    pub fn delta_cutoff(&self) -> i32 {
        self.order / self.exps[0]
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Half {
    E,
    F,
}

impl Half {
    fn name(self) -> &'static str {
        match self {
            Half::E => "e",
            Half::F => "f",
        }
    }
}

/// Root vector images on one leg.
#[derive(Clone, Debug)]
pub struct RootVectors {
    pub half: Half,
    pub real: BTreeMap<AffineRoot, OpMat>,
    /// `e'_{mδ,γ}` (or `f'`), keyed by `(m, γ)`.
    pub prime: BTreeMap<(i32, Vec<i32>), OpMat>,
    /// `e_{mδ,α_i}` (or `f`), keyed by `(m, i)` with `i` counted from 1.
    pub imaginary: BTreeMap<(i32, usize), OpMat>,
}

fn unit_root(r: usize, i: usize) -> Vec<i32> {
    let mut g = vec![0; r];
    g[i] = 1;
    g
}

fn inv2() -> QScalar {
    qint(2).inv().unwrap()
}

/// Graded `log(1 + X)` with `X = Σ_{m>=1} X_m x^m`, returning components `1..=n`.
fn graded_log(x: &[OpMat], n: usize, dim: usize) -> Vec<OpMat> {
    let mut out = vec![OpMatrix::zeros(dim); n + 1];
    // power[m] holds the degree-m part of X^k
    let mut power: Vec<OpMat> = x.to_vec();
    for k in 1..=n {
        let c = QScalar::frac(if k % 2 == 1 { 1 } else { -1 }, k as i64);
        for m in k..=n {
            out[m] = out[m].add(&power[m].scale(&c));
        }
        let mut next = vec![OpMatrix::zeros(dim); n + 1];
        for i in k..=n {
            if power[i].is_zero() {
                continue;
            }
            for j in 1..=(n - i) {
                next[i + j] = next[i + j].add(&power[i].mul(&x[j]));
            }
        }
        power = next;
    }
    out
}

/// Root vectors of one Borel half on a leg, up to δ-multiplicity `cutoff`.
pub fn root_vectors(img: &GeneratorImage, half: Half, cutoff: i32) -> Result<RootVectors, KtError> {
    let alg = img.algebra;
    let r = alg.rank();
    let dim = img.dim;
    let theta = alg.theta();
    let gens = match half {
        Half::E => &img.e,
        Half::F => &img.f,
    };
    let gen = |i: usize| -> Result<OpMat, KtError> {
        gens[i].clone().ok_or(KtError::MissingGenerator { half: half.name(), node: i })
    };
    // q-commutator with the coefficient q^{±(x,y)}
    let qc = |x: &OpMat, rx: &AffineRoot, y: &OpMat, ry: &AffineRoot| {
        let p = root_form(alg, rx, ry);
        let p = if half == Half::E { p } else { -p };
        x.q_commutator(y, &QScalar::q_pow(p))
    };
    // ordered pair: E keeps (x, y), F swaps to (y, x)
    let ordered = |x: &OpMat, rx: &AffineRoot, y: &OpMat, ry: &AffineRoot| match half {
        Half::E => qc(x, rx, y, ry),
        Half::F => qc(y, ry, x, rx),
    };

    let mut real = BTreeMap::new();
    let finite = alg.finite_positive_roots();
    for i in 0..r {
        real.insert(AffineRoot::plus(&unit_root(r, i), 0), gen(i + 1)?);
    }
    let top = AffineRoot::minus(&theta, 0);
    real.insert(top.clone(), gen(0)?);
    if alg == Algebra::A2 {
        let (a, b) = (AffineRoot::plus(&[1, 0], 0), AffineRoot::plus(&[0, 1], 0));
        let v = ordered(&real[&a], &a, &real[&b], &b);
        real.insert(AffineRoot::plus(&[1, 1], 0), v);
        for g in [[1, 0], [0, 1]] {
            let rest = AffineRoot::plus(&[1 - g[0], 1 - g[1]], 0);
            let v = ordered(&real[&rest], &rest, &real[&top], &top);
            real.insert(AffineRoot::minus(&g, 0), v);
        }
    }

    let mut prime = BTreeMap::new();
    for g in &finite {
        let (p, n) = (AffineRoot::plus(g, 0), AffineRoot::minus(g, 0));
        prime.insert((1, g.clone()), ordered(&real[&p], &p, &real[&n], &n));
    }
    for m in 1..=cutoff {
        for g in &finite {
            let d = &prime[&(1, g.clone())];
            let prev_p = &real[&AffineRoot::plus(g, m - 1)];
            let prev_n = &real[&AffineRoot::minus(g, m - 1)];
            let (vp, vn) = match half {
                Half::E => (prev_p.commutator(d), d.commutator(prev_n)),
                Half::F => (d.commutator(prev_p), prev_n.commutator(d)),
            };
            real.insert(AffineRoot::plus(g, m), vp.scale(&inv2()));
            real.insert(AffineRoot::minus(g, m), vn.scale(&inv2()));
        }
        if m >= 2 {
            for g in &finite {
                let p = AffineRoot::plus(g, m - 1);
                let n = AffineRoot::minus(g, 0);
                prime.insert((m, g.clone()), ordered(&real[&p], &p, &real[&n], &n));
            }
        }
    }

    let k = QScalar::q_minus_qinv();
    let sign = if half == Half::E { k.clone() } else { k.neg() };
    let sign_inv = sign.inv().unwrap();
    let mut imaginary = BTreeMap::new();
    let n = cutoff.max(0) as usize;
    for i in 0..r {
        let g = unit_root(r, i);
        let mut x = vec![OpMatrix::zeros(dim); n + 1];
        for m in 1..=n {
            x[m] = prime[&(m as i32, g.clone())].scale(&sign);
        }
        let l = graded_log(&x, n, dim);
        for m in 1..=n {
            imaginary.insert((m as i32, i + 1), l[m].scale(&sign_inv));
        }
    }
    Ok(RootVectors { half, real, prime, imaginary })
}

/// Image of the coroot `h_γ` for a real root, through the node coefficients.
fn coroot(img: &GeneratorImage, root: &AffineRoot) -> Cartan {
    let coeffs = root.node_coeffs(&img.algebra.theta());
    coeffs
        .iter()
        .zip(&img.h)
        .fold(Cartan::zero(img.dim), |acc, (c, h)| acc.add(&h.scaled(*c)))
}

/// Checks `[e_γ, f_γ] = (q^{h_γ} - q^{-h_γ}) / (q - q^{-1})` for every real
/// root up to the cutoff, in the evaluation representation.
pub fn check_normalization(alg: Algebra, cutoff: i32) -> Result<(), KtError> {
    let mut exps = vec![1];
    exps.extend(std::iter::repeat_n(0, alg.rank()));
    let img = phi(alg, &exps);
    let e = root_vectors(&img, Half::E, cutoff)?;
    let f = root_vectors(&img, Half::F, cutoff)?;
    for (root, x) in &e.real {
        let lhs = x.commutator(&f.real[root]);
        let rhs = coroot(&img, root).q_number();
        if lhs != rhs {
            return Err(KtError::Normalization(root.label()));
        }
    }
    Ok(())
}

/// `u_m`, the inverse of `t_{m,ij} = (-1)^{m(1-δ_ij)} [m a_ij]_q / m`.
pub fn imaginary_weights(alg: Algebra, m: i32) -> Vec<Vec<QScalar>> {
    let a = alg.finite_cartan().matrix;
    let r = alg.rank();
    let t = |i: usize, j: usize| {
        let sign = if i != j && m % 2 == 1 { -1 } else { 1 };
        qint(m * a[i][j]).mul(&QScalar::frac(sign, m as i64))
    };
    match r {
        1 => vec![vec![t(0, 0).inv().unwrap()]],
        _ => {
            let det = t(0, 0).mul(&t(1, 1)).sub(&t(0, 1).mul(&t(1, 0)));
            let di = det.inv().unwrap();
            vec![
                vec![t(1, 1).mul(&di), t(0, 1).neg().mul(&di)],
                vec![t(1, 0).neg().mul(&di), t(0, 0).mul(&di)],
            ]
        }
    }
}

fn promote(m: &OpMat, deg: i32, order: i32) -> SeriesMat {
    m.map(|e| e.map_coeffs(|c| ZetaSeries::monomial(c.clone(), deg, Some(order))))
}

/// The constant-coefficient lift of a matrix, exact in ζ.
pub fn lift_exact(m: &OpMat) -> SeriesMat {
    m.map(|e| e.map_coeffs(|c| ZetaSeries::constant(c.clone(), None)))
}

fn root_degree(root: &AffineRoot, img: &GeneratorImage) -> i32 {
    root.node_coeffs(&img.algebra.theta())
        .iter()
        .zip(&img.zeta)
        .map(|(c, z)| c * z)
        .sum()
}

/// `exp_x(Y) = Σ Y^n / (n)_x!`; stops when a power vanishes.
fn q_exp(y: &SeriesMat, x: &QScalar, cap: usize, label: &str) -> Result<SeriesMat, KtError> {
    let mut out = OpMatrix::identity(y.dim());
    let mut p = OpMatrix::identity(y.dim());
    for n in 1.. {
        p = p.mul(y);
        if p.is_zero() {
            return Ok(out);
        }
        if n > cap {
            return Err(KtError::NonTerminating(label.to_string()));
        }
        out = out.add(&p.scale(&exp_q_coeff(n as u32, x).unwrap()));
    }
    unreachable!()
}

fn plain_exp(z: &SeriesMat) -> SeriesMat {
    let mut out = OpMatrix::identity(z.dim());
    let mut p = OpMatrix::identity(z.dim());
    for n in 1.. {
        p = p.mul(z).scale(&QScalar::frac(1, n));
        if p.is_zero() {
            break;
        }
        out = out.add(&p);
    }
    out
}

/// `q^{Σ b_ij h_i ⊗ h_j}` over the finite Cartan generators.
pub fn cartan_factor(left: &GeneratorImage, right: &GeneratorImage) -> Result<SeriesMat, KtError> {
    let alg = left.algebra;
    let r = alg.rank();
    let b6 = alg.inverse_cartan_t_units();
    let (h1, h2) = (&left.h[1..=r], &right.h[1..=r]);
    if h1.iter().any(|h| h.dcoef != [0; 2]) && h2.iter().any(|h| h.dcoef != [0; 2]) {
        return Err(KtError::BothOscillator);
    }
    let (n1, n2) = (left.dim, right.dim);
    let mut diag = Vec::with_capacity(n1 * n2);
    for a in 0..n1 {
        for b in 0..n2 {
            let mut t = 0;
            let mut u = [0; 2];
            for i in 0..r {
                for j in 0..r {
                    let w = b6[i][j];
                    t += w * h1[i].diag[a] * h2[j].diag[b];
                    for c in 0..2 {
                        u[c] += w * (h1[i].dcoef[c] * h2[j].diag[b] + h1[i].diag[a] * h2[j].dcoef[c]);
                    }
                }
            }
            diag.push(OscOp::term([0; 2], u, ZetaSeries::constant(QScalar::t_pow(t), None)));
        }
    }
    Ok(OpMatrix::diag(diag))
}

/// The factors of the assembled R-matrix, in multiplication order.
#[derive(Clone, Debug)]
pub struct Factors {
    pub positive: Vec<(AffineRoot, SeriesMat)>,
    pub imaginary: SeriesMat,
    pub negative: Vec<(AffineRoot, SeriesMat)>,
    pub cartan: SeriesMat,
}

impl Factors {
    pub fn product(&self) -> SeriesMat {
        let mut acc = OpMatrix::identity(self.cartan.dim());
        for (_, f) in &self.positive {
            acc = acc.mul(f);
        }
        acc = acc.mul(&self.imaginary);
        for (_, f) in &self.negative {
            acc = acc.mul(f);
        }
        acc.mul(&self.cartan)
    }
}

/// Builds every factor of the R-matrix on the chosen legs.
pub fn factors(p: &KtParams) -> Result<Factors, KtError> {
    p.validate()?;
    let alg = p.algebra;
    let cutoff = p.delta_cutoff();
    check_normalization(alg, cutoff)?;
    let (left, right) = p.legs()?;
    let e = root_vectors(&left, Half::E, cutoff)?;
    let f = root_vectors(&right, Half::F, cutoff)?;
    let n = p.order;
    let k = QScalar::q_minus_qinv();
    let pair_degree = |root: &AffineRoot| p.scale.0 * root_degree(root, &left) - p.scale.1 * root_degree(root, &right);
    let cap = (left.dim * right.dim).max(4) * 4;

    let roots = match p.root_order {
        RootOrder::Normal => positive_roots(alg, cutoff),
        RootOrder::Regrouped => regrouped_roots(alg, cutoff),
    };
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for root in roots.iter().filter(|r| r.is_real()) {
        let d = pair_degree(root);
        if d > n {
            continue;
        }
        let y = promote(&e.real[root].kron(&f.real[root]).scale(&k), d, n);
        if y.is_zero() {
            continue;
        }
        let base = QScalar::q_pow(-root_form(alg, root, root));
        let factor = q_exp(&y, &base, cap, &root.label())?;
        match root.kind {
            RootKind::RealPlus => positive.push((root.clone(), factor)),
            _ => negative.push((root.clone(), factor)),
        }
    }

    let dim = left.dim * right.dim;
    let mut z = OpMatrix::zeros(dim);
    let r = alg.rank();
    for m in 1..=cutoff {
        let d = pair_degree(&AffineRoot::imaginary(r, m));
        if d > n {
            continue;
        }
        let u = imaginary_weights(alg, m);
        for i in 0..r {
            for j in 0..r {
                let t = e.imaginary[&(m, i + 1)].kron(&f.imaginary[&(m, j + 1)]);
                z = z.add(&promote(&t.scale(&u[i][j].mul(&k)), d, n));
            }
        }
    }
    Ok(Factors {
        positive,
        imaginary: plain_exp(&z),
        negative,
        cartan: cartan_factor(&left, &right)?,
    })
}

/// The R-matrix (or L-operator) on the chosen legs, truncated at `p.order`.
pub fn assemble(p: &KtParams) -> Result<SeriesMat, KtError> {
    Ok(factors(p)?.product())
}

/// First `(row, col, degree)` where two series matrices differ below `order`.
pub fn series_difference(a: &SeriesMat, b: &SeriesMat, order: i32) -> Option<(usize, usize, i32)> {
    let diff = a.sub(b);
    let mut best: Option<(usize, usize, i32)> = None;
    for (i, j, e) in diff.entries() {
        for (_, s) in e.terms() {
            if let Some(d) = s.terms().map(|(d, _)| d).find(|d| *d <= order) {
                if best.is_none_or(|(_, _, bd)| d < bd) {
                    best = Some((i, j, d));
                }
            }
        }
    }
    best
}

/// Scalar power series times a matrix.
pub fn scale_series(m: &SeriesMat, s: &ZetaSeries) -> SeriesMat {
    m.map(|e| e.mul_coeff(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{lambda_level, Ring};

    fn q(k: i32) -> QScalar {
        QScalar::q_pow(k)
    }

    fn unit(dim: usize, a: usize, b: usize, c: OscOp<QScalar>) -> OpMat {
        OpMatrix::unit(dim, a, b, c)
    }

    fn scalar(c: QScalar) -> OscOp<QScalar> {
        OscOp::constant(c)
    }

    #[test]
    fn phi_imaginary_first_vector() {
        for alg in [Algebra::A1, Algebra::A2] {
            let mut exps = vec![2];
            exps.extend(std::iter::repeat_n(0, alg.rank()));
            let img = phi(alg, &exps);
            let e = root_vectors(&img, Half::E, 1).unwrap();
            // e'_{δ,α} = E11 - q^{-2} E22 (the ζ^s travels separately)
            let n = img.dim;
            let expect = unit(n, 0, 0, scalar(q(0))).add(&unit(n, 1, 1, scalar(q(-2).neg())));
            assert_eq!(e.prime[&(1, unit_root(alg.rank(), 0))], expect);
        }
    }

    #[test]
    fn chi_imaginary_first_vector() {
        let p = KtParams::new(Algebra::A1, LegPair::ChiPhi, &[1, 0], 2);
        let (left, _) = p.legs().unwrap();
        let e = root_vectors(&left, Half::E, 1).unwrap();
        let expect = QScalar::q_pow(-1).div(&QScalar::q_minus_qinv()).unwrap();
        assert_eq!(e.prime[&(1, vec![1])], unit(1, 0, 0, scalar(expect)));
    }

    #[test]
    fn a2_phi_imaginary_beta_vectors() {
        let img = phi(Algebra::A2, &[1, 0, 0]);
        let e = root_vectors(&img, Half::E, 4).unwrap();
        for m in 1..=4 {
            // -([m]/m) q^{-m} (E22 - q^{-2m} E33)
            let c = qint(m).mul(&QScalar::frac(-1, m as i64)).mul(&q(-m));
            let expect = unit(3, 1, 1, scalar(c.clone())).add(&unit(3, 2, 2, scalar(c.mul(&q(-2 * m)).neg())));
            assert_eq!(e.imaginary[&(m, 2)], expect, "m = {m}");
        }
    }

    #[test]
    fn a2_phi_real_vectors() {
        let img = phi(Algebra::A2, &[1, 0, 0]);
        let e = root_vectors(&img, Half::E, 3).unwrap();
        let f = root_vectors(&img, Half::F, 3).unwrap();
        for m in 0..=3 {
            let sign = if m % 2 == 0 { QScalar::one() } else { QScalar::int(-1) };
            let a = AffineRoot::plus(&[1, 0], m);
            assert_eq!(e.real[&a], unit(3, 0, 1, scalar(sign.mul(&q(-m)))));
            assert_eq!(f.real[&a], unit(3, 1, 0, scalar(sign.mul(&q(m)))));
        }
    }

    #[test]
    fn normalizations_are_one() {
        check_normalization(Algebra::A1, 4).unwrap();
        check_normalization(Algebra::A2, 3).unwrap();
    }

    #[test]
    fn a1_weights() {
        for m in 1..4 {
            let u = imaginary_weights(Algebra::A1, m);
            assert_eq!(u[0][0], QScalar::int(m as i64).div(&qint(2 * m)).unwrap());
        }
    }

    fn a1_closed_form(s: i32, order: i32) -> SeriesMat {
        let n = order;
        let z = |c: QScalar, d: i32| OscOp::constant(ZetaSeries::monomial(c, d, None));
        let one_minus = ZetaSeries::from_terms([(0, QScalar::one()), (s, q(-2).neg())], None);
        let den = one_minus.with_order(n).inv().unwrap();
        let lam = lambda_level(2, &q(1), s, n)
            .unwrap()
            .sub(&lambda_level(2, &q(-1), s, n).unwrap())
            .exp()
            .unwrap()
            .scale(&QScalar::t_pow(3));
        let mut m: SeriesMat = OpMatrix::zeros(4);
        m.set(0, 0, z(QScalar::one(), 0));
        m.set(3, 3, z(QScalar::one(), 0));
        let mid = OscOp::constant(
            ZetaSeries::from_terms([(0, q(-1)), (s, q(-1).neg())], None).mul(&den),
        );
        m.set(1, 1, mid.clone());
        m.set(2, 2, mid);
        let off = OscOp::constant(den.scale(&QScalar::one().sub(&q(-2))));
        // E12 ⊗ E21 sits at (0·2+1, 1·2+0) = (1, 2)
        m.set(1, 2, off.clone());
        m.set(2, 1, off.mul(&OscOp::constant(ZetaSeries::monomial(QScalar::one(), s, None))));
        scale_series(&m, &lam)
    }

    #[test]
    fn a1_phi_phi_matches_closed_form() {
        for s in [1, 2] {
            let n = 5;
            let r = assemble(&KtParams::new(Algebra::A1, LegPair::PhiPhi, &[s, 0], n)).unwrap();
            assert_eq!(series_difference(&r, &a1_closed_form(s, n), n), None, "s = {s}");
        }
    }

    #[test]
    fn leg_scale_offset_is_invisible() {
        let mut p = KtParams::new(Algebra::A2, LegPair::PhiPhi, &[1, 0, 0], 3);
        let base = assemble(&p).unwrap();
        p.scale = (3, 2);
        assert_eq!(series_difference(&assemble(&p).unwrap(), &base, 3), None);
    }

    #[test]
    fn rejects_bad_exponents() {
        let p = KtParams::new(Algebra::A1, LegPair::PhiPhi, &[1, 2], 3);
        assert!(matches!(assemble(&p), Err(KtError::Exponents(_))));
        let p = KtParams::new(Algebra::A2, LegPair::PhiPhi, &[1, 0], 3);
        assert!(matches!(assemble(&p), Err(KtError::ExponentCount { .. })));
    }

    #[test]
    fn order_zero_keeps_constant_term() {
        let r = assemble(&KtParams::new(Algebra::A1, LegPair::ChiPhi, &[1, 0], 0)).unwrap();
        let c = |x: &OscOp<ZetaSeries>| x.map_coeffs(|s| ZetaSeries::constant(s.coeff(0), None));
        // K on the diagonal; at s1 = 0 the a^dag entry also sits in degree 0.
        let mut k = OpMatrix::diag(vec![OscOp::q_pow_d([1, 0]), OscOp::q_pow_d([-1, 0])]);
        k.set(1, 0, OscOp::adag(0).mul(&OscOp::q_pow_d([1, 0])));
        assert_eq!(r.map(c), k);
    }
}
