//! Identity checks returning structured verdicts with the first failing
//! coefficient.
//!
//! Yang–Baxter, RLL and gauge identities are homogeneous in the scalar
//! prefactor, so they are checked on the prefactor-stripped matrices as exact
//! Laurent polynomials in two variables. Checks involving inverses use
//! truncated two-variable series.

use std::fmt;
use std::str::FromStr;
#[cfg(not(target_arch = "wasm32"))]
use std::time::Instant;
#[cfg(target_arch = "wasm32")]
use web_time::Instant;

use thiserror::Error;

use crate::ktfactory::{assemble, series_difference, KtError, KtParams, LegPair, SeriesMat};
use crate::linalg::{embed_legs, hat_and_check, LinalgError, OpMatrix};
use crate::oscillator::{OscError, OscOp};
use crate::qgroup::OpMat;
use crate::reference::{
    apply_matrix, gauge_diag, invert_zeta, projector_image, r_hat0, reference_matrix, series_inverse,
    special_decomposition, Kind, RefError, ReferenceObject, Variant,
};
use crate::rootsys::Algebra;
use crate::scalars::{Bivar, QScalar, Ring, ZetaSeries, Q_EXP};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("{0} objects have no {1} check")]
    Mismatch(String, &'static str),
    #[error("no engine construction for {0}")]
    NoEngine(String),
    #[error(transparent)]
    Ref(#[from] RefError),
    #[error(transparent)]
    Kt(#[from] KtError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Osc(#[from] OscError),
}

/// Location of the first disagreement: matrix entry and the degree of the
/// offending coefficient (one or two variables).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Failure {
    pub entry: (usize, usize),
    pub degree: Vec<i32>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Verdict {
    pub check: String,
    /// Name of the identity being tested.
    pub identity: String,
    pub algebra: Algebra,
    pub variant: String,
    pub exponents: Vec<i32>,
    pub pass: bool,
    pub first_failure: Option<Failure>,
    pub wall_time_ms: u128,
}

impl Verdict {
    fn new(check: &str, identity: &str, algebra: Algebra, variant: impl fmt::Display, exps: &[i32]) -> Self {
        Verdict {
            check: check.into(),
            identity: identity.into(),
            algebra,
            variant: variant.to_string(),
            exponents: exps.to_vec(),
            pass: true,
            first_failure: None,
            wall_time_ms: 0,
        }
    }

    fn fail_at(mut self, f: Option<Failure>) -> Self {
        self.pass = f.is_none();
        self.first_failure = f;
        self
    }

    fn timed(mut self, start: Instant) -> Self {
        self.wall_time_ms = start.elapsed().as_millis();
        self
    }

    /// Sort key used for deterministic reports.
    pub fn id(&self) -> String {
        format!("{}/{}/{}/{}/{:?}", self.check, self.algebra, self.variant, self.identity, self.exponents)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "check": self.check,
            "identity": self.identity,
            "algebra": self.algebra.to_string(),
            "variant": self.variant,
            "exponents": self.exponents,
            "pass": self.pass,
            "first_failure": self.first_failure.as_ref().map(|f| serde_json::json!({
                "entry": [f.entry.0, f.entry.1],
                "degree": f.degree,
            })),
            "wall_time_ms": self.wall_time_ms,
        })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<8} {:<22} {} {:<16} {:?}",
            if self.pass { "PASS" } else { "FAIL" },
            self.check,
            self.identity,
            self.algebra,
            self.variant,
            self.exponents
        )?;
        if let Some(x) = &self.first_failure {
            write!(f, "  first failure at entry ({}, {}) degree {:?}", x.entry.0, x.entry.1, x.degree)?;
        }
        Ok(())
    }
}

/// Matrix with oscillator entries over Laurent polynomials in two variables.
pub type BiMat = OpMatrix<OscOp<Bivar>>;

/// `ζ -> x^a y^b` in every coefficient.
pub fn to_bivar(m: &SeriesMat, a: i32, b: i32, order: Option<i32>) -> BiMat {
    m.map(|e| e.map_coeffs(|c| Bivar::from_series(c, a, b, order)))
}

/// First entry and total-degree-minimal monomial where two matrices differ.
pub fn bi_difference(x: &BiMat, y: &BiMat) -> Option<Failure> {
    let d = x.sub(y);
    let mut best: Option<Failure> = None;
    for (i, j, e) in d.entries() {
        for (_, c) in e.terms() {
            if let Some((a, b)) = c.first_difference(&Bivar::zero_with(None)) {
                let better = best.as_ref().is_none_or(|f| a + b < f.degree[0] + f.degree[1]);
                if better {
                    best = Some(Failure { entry: (i, j), degree: vec![a, b] });
                }
            }
        }
    }
    best
}

fn op_difference(x: &OpMat, y: &OpMat) -> Option<Failure> {
    x.first_difference(y).map(|entry| Failure { entry, degree: vec![] })
}

fn leg_dim(m: &SeriesMat) -> usize {
    (1..=m.dim()).find(|v| v * v >= m.dim()).unwrap()
}

/// Yang–Baxter equation in the two-variable form, plus the braid form
/// `Ř_23(x) Ř_12(xy) Ř_23(y) = Ř_12(y) Ř_23(xy) Ř_12(x)`.
pub fn check_ybe(r: &ReferenceObject) -> Result<Vec<Verdict>, VerifyError> {
    if r.kind != Kind::R {
        return Err(VerifyError::Mismatch(r.kind.to_string(), "Yang-Baxter"));
    }
    let start = Instant::now();
    let n = leg_dim(&r.matrix);
    let dims = [n, n, n];
    let at = |a, b| to_bivar(&r.matrix, a, b, None);
    let (x, xy, y) = (at(1, 0), at(1, 1), at(0, 1));
    let emb = |m: &BiMat, t: &[usize]| embed_legs(m, t, &dims);
    let lhs = emb(&x, &[0, 1])?.mul(&emb(&xy, &[0, 2])?).mul(&emb(&y, &[1, 2])?);
    let rhs = emb(&y, &[1, 2])?.mul(&emb(&xy, &[0, 2])?).mul(&emb(&x, &[0, 1])?);
    let plain = Verdict::new("ybe", "yang-baxter", r.algebra, r.variant, &r.exps)
        .fail_at(bi_difference(&lhs, &rhs))
        .timed(start);

    let start = Instant::now();
    let chk = |m: &BiMat| hat_and_check(m).map(|p| p.1);
    let (cx, cxy, cy) = (chk(&x)?, chk(&xy)?, chk(&y)?);
    let lhs = emb(&cx, &[1, 2])?.mul(&emb(&cxy, &[0, 1])?).mul(&emb(&cy, &[1, 2])?);
    let rhs = emb(&cy, &[0, 1])?.mul(&emb(&cxy, &[1, 2])?).mul(&emb(&cx, &[0, 1])?);
    let braid = Verdict::new("ybe", "yang-baxter-braid", r.algebra, r.variant, &r.exps)
        .fail_at(bi_difference(&lhs, &rhs))
        .timed(start);
    Ok(vec![plain, braid])
}

/// `X(ζ_12) (L(ζ_1) × L(ζ_2)) = (L(ζ_2) × L(ζ_1)) X(ζ_12)` for given two-variable data.
fn rll_residual(x: &BiMat, l1: &BiMat, l2: &BiMat) -> Option<Failure> {
    let lhs = x.mul(&l1.kron(l2));
    let rhs = l2.kron(l1).mul(x);
    bi_difference(&lhs, &rhs)
}

/// `R̂` for L̂-type objects, `Ř` for Ľ-type objects.
fn exchange_matrix(r: &BiMat, kind: Kind) -> Result<BiMat, VerifyError> {
    let (hat, check) = hat_and_check(r)?;
    Ok(if kind == Kind::LHat { hat } else { check })
}

fn r_for(alg: Algebra, exps: &[i32]) -> Result<ReferenceObject, VerifyError> {
    Ok(reference_matrix(Kind::R, alg, Variant::Plain, exps)?)
}

/// RLL relation of the L-operator's own type against the R-matrix with the
/// same exponents.
pub fn check_rll(l: &ReferenceObject) -> Result<Verdict, VerifyError> {
    if !matches!(l.kind, Kind::LHat | Kind::LCheck) {
        return Err(VerifyError::Mismatch(l.kind.to_string(), "RLL"));
    }
    let start = Instant::now();
    let r = r_for(l.algebra, &l.exps)?;
    let x = exchange_matrix(&to_bivar(&r.matrix, 1, -1, None), l.kind)?;
    let l1 = to_bivar(&l.matrix, 1, 0, None);
    let l2 = to_bivar(&l.matrix, 0, 1, None);
    let id = if l.kind == Kind::LHat { "rll-hat" } else { "rll-check" };
    Ok(Verdict::new("rll", id, l.algebra, l.variant, &l.exps)
        .fail_at(rll_residual(&x, &l1, &l2))
        .timed(start))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DualityMode {
    /// `L^{-1}(ζ^{-1})`
    Inversion,
    /// `τ(L(ζ^{-1}))`
    Tau,
}

impl fmt::Display for DualityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DualityMode::Inversion => "inversion",
            DualityMode::Tau => "tau",
        })
    }
}

fn opposite(kind: Kind) -> Kind {
    if kind == Kind::LHat {
        Kind::LCheck
    } else {
        Kind::LHat
    }
}

/// Builds `L^{-1}(ζ^{-1})` or `τ(L(ζ^{-1}))` and checks the RLL relation of
/// the opposite type. Inverses are series in `w = 1/ζ` truncated at `order`.
pub fn check_duality(l: &ReferenceObject, mode: DualityMode, order: i32) -> Result<Verdict, VerifyError> {
    if !matches!(l.kind, Kind::LHat | Kind::LCheck) {
        return Err(VerifyError::Mismatch(l.kind.to_string(), "duality"));
    }
    let start = Instant::now();
    let r = r_for(l.algebra, &l.exps)?;
    let target = opposite(l.kind);
    let residual = match mode {
        DualityMode::Inversion => {
            // In w_i = 1/ζ_i the object is P(w)^{-1}, and ζ_12 = w_2 / w_1.
            let inv = series_inverse(&l.matrix.map(|e| e.map_coeffs(|c| c.truncate(order))), order)?;
            let x = exchange_matrix(&to_bivar(&r.matrix, -1, 1, None), target)?;
            rll_residual(&x, &to_bivar(&inv, 1, 0, Some(order)), &to_bivar(&inv, 0, 1, Some(order)))
        }
        DualityMode::Tau => {
            let m = invert_zeta(&l.matrix)?;
            let t = m.try_map(|e| e.tau())?;
            let x = exchange_matrix(&to_bivar(&r.matrix, 1, -1, None), target)?;
            rll_residual(&x, &to_bivar(&t, 1, 0, None), &to_bivar(&t, 0, 1, None))
        }
    };
    let id = format!("duality-{mode}-{}", if target == Kind::LHat { "hat" } else { "check" });
    Ok(Verdict::new("duality", &id, l.algebra, format!("{}-{}", l.kind, l.variant), &l.exps)
        .fail_at(residual)
        .timed(start))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GaugeFamily {
    /// R-matrix: conjugation by `G(ζ_1) ⊗ G(ζ_2)`.
    R,
    /// L̂: `γ_{ζ_1}(G(ζ_2) L̂ G^{-1}(ζ_2))`.
    LHat,
    /// Ľ: `G(ζ_1) γ_{ζ_2}(Ľ) G^{-1}(ζ_1)`.
    LCheck,
}

impl fmt::Display for GaugeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GaugeFamily::R => "gauge-r",
            GaugeFamily::LHat => "gauge-l-hat",
            GaugeFamily::LCheck => "gauge-l-check",
        })
    }
}

impl FromStr for GaugeFamily {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "r" => Ok(GaugeFamily::R),
            "l-hat" => Ok(GaugeFamily::LHat),
            "l-check" => Ok(GaugeFamily::LCheck),
            _ => Err(format!("unknown gauge family {s:?}")),
        }
    }
}

fn zeta_mono(i: i32, j: i32) -> OscOp<Bivar> {
    OscOp::constant(Bivar::monomial(QScalar::one(), i, j, None))
}

/// Multiplies the shift-`k` part of every entry by `x^{i·(s·k)} y^{j·(s·k)}`.
fn gamma_bi(m: &BiMat, s: &[i32], var: (i32, i32)) -> BiMat {
    let s = [s[0], *s.get(1).unwrap_or(&0)];
    m.map(|e| e.gamma(s, |p, c| c.mul(&Bivar::monomial(QScalar::one(), var.0 * p, var.1 * p, None))))
}

/// Exact two-variable check of the gauge relation between exponents `exps`
/// and the base exponents `(1, 0[, 0])`.
pub fn check_gauge(family: GaugeFamily, alg: Algebra, variant: Variant, exps: &[i32]) -> Result<Verdict, VerifyError> {
    let start = Instant::now();
    let kind = match family {
        GaugeFamily::R => Kind::R,
        GaugeFamily::LHat => Kind::LHat,
        GaugeFamily::LCheck => Kind::LCheck,
    };
    let mut base_exps = vec![1];
    base_exps.extend(std::iter::repeat_n(0, alg.rank()));
    let obj = reference_matrix(kind, alg, variant, exps)?;
    let base = reference_matrix(kind, alg, variant, &base_exps)?;
    let s = exps[0];
    let g = gauge_diag(exps);
    let fin = &exps[1..];
    let lhs = to_bivar(&obj.matrix, 1, -1, None);
    let b = to_bivar(&base.matrix, s, -s, None);
    let n = alg.rank() + 1;
    let rhs = match family {
        GaugeFamily::R => b.map_indexed(|r, c, e| {
            let (a1, a2, b1, b2) = (r / n, r % n, c / n, c % n);
            e.mul(&zeta_mono(g[a1] - g[b1], g[a2] - g[b2]))
        }),
        GaugeFamily::LHat => {
            let conj = b.map_indexed(|r, c, e| e.mul(&zeta_mono(0, g[r] - g[c])));
            gamma_bi(&conj, fin, (1, 0))
        }
        GaugeFamily::LCheck => {
            let inner = gamma_bi(&b, fin, (0, 1));
            inner.map_indexed(|r, c, e| e.mul(&zeta_mono(g[r] - g[c], 0)))
        }
    };
    Ok(Verdict::new("gauge", &family.to_string(), alg, variant, exps)
        .fail_at(bi_difference(&lhs, &rhs))
        .timed(start))
}

/// Engine parameters reproducing a closed form at `exps`.
pub fn engine_params(kind: Kind, alg: Algebra, variant: Variant, exps: &[i32], order: i32) -> Result<KtParams, VerifyError> {
    let pair = match kind {
        Kind::R => LegPair::PhiPhi,
        Kind::LHat => LegPair::ChiPhi,
        Kind::LCheck if variant == Variant::InverseDerived => LegPair::ChiPhi,
        Kind::LCheck => LegPair::PhiPsi,
        _ => return Err(VerifyError::NoEngine(kind.to_string())),
    };
    let mut p = KtParams::new(alg, pair, exps, order);
    match variant {
        Variant::Twisted => p.twist = Some(vec![1, 0]),
        Variant::Family2 => p.family = 2,
        _ => {}
    }
    Ok(p)
}

/// `a_i -> q^{-1} a_i q^{2 D_i}` applied to every entry.
pub fn inversion_automorphism(m: &SeriesMat) -> Result<SeriesMat, VerifyError> {
    let kappa = [QScalar::q_pow(-1), QScalar::q_pow(-1)];
    let xi = [[2 * Q_EXP, 0], [0, 2 * Q_EXP]];
    Ok(m.try_map(|e| e.automorphism(&kappa, &xi))?)
}

fn series_failure(a: &SeriesMat, b: &SeriesMat, order: i32) -> Option<Failure> {
    series_difference(a, b, order).map(|(i, j, d)| Failure { entry: (i, j), degree: vec![d] })
}

/// Engine output against the expanded closed form, coefficientwise to `order`.
///
/// The inverse-derived Ľ is compared after inverting the engine's first L̂
/// family as a series in `w = 1/ζ` and applying the oscillator automorphism
/// `a_i -> q^{-1} a_i q^{2D_i}`.
pub fn check_engine(kind: Kind, alg: Algebra, variant: Variant, exps: &[i32], order: i32) -> Result<Verdict, VerifyError> {
    let start = Instant::now();
    let reference = reference_matrix(kind, alg, variant, exps)?;
    let p = engine_params(kind, alg, variant, exps, order)?;
    let eng = assemble(&p)?;
    let failure = if variant == Variant::InverseDerived {
        let inv = inversion_automorphism(&series_inverse(&eng, order)?)?;
        series_failure(&inv, &reference.series(order, true)?, order)
    } else {
        series_failure(&eng, &reference.series(order, false)?, order)
    };
    Ok(Verdict::new("engine", &format!("{}-{}", kind, p.pair), alg, variant, exps)
        .fail_at(failure)
        .timed(start))
}

/// The second L̂ family inverted: engine series inverse against the inverse
/// of the expanded closed form, both in `w = 1/ζ`.
pub fn check_engine_family2_inverse(exps: &[i32], order: i32) -> Result<Verdict, VerifyError> {
    let start = Instant::now();
    let alg = Algebra::A2;
    let reference = reference_matrix(Kind::LHat, alg, Variant::Family2, exps)?;
    let eng = assemble(&engine_params(Kind::LHat, alg, Variant::Family2, exps, order)?)?;
    let a = series_inverse(&eng, order)?;
    let b = series_inverse(&reference.series(order, false)?, order)?;
    Ok(Verdict::new("engine", "l-hat-inverse", alg, "family2-inverse", exps)
        .fail_at(series_failure(&a, &b, order))
        .timed(start))
}

fn pass_if(v: Verdict, ok: bool) -> Verdict {
    let mut v = v;
    v.pass = ok;
    v
}

/// ζ-linear decomposition at the special exponents, exchange relations with
/// `R̂_0`, idempotency of the projectors and null vectors of `L(1)`.
pub fn check_structure(alg: Algebra) -> Result<Vec<Verdict>, VerifyError> {
    let variant = if alg == Algebra::A1 { Variant::Plain } else { Variant::Family1 };
    let n = alg.rank() + 1;
    let mut out = Vec::new();
    for kind in [Kind::LHat, Kind::LCheck] {
        let start = Instant::now();
        let d = special_decomposition(kind, alg, variant)?;
        let v = |id: &str| Verdict::new("structure", id, alg, format!("{kind}-{variant}"), &d.exps);
        let tag = if kind == Kind::LHat { "hat" } else { "check" };
        out.push(v(&format!("decomposition-{tag}")).timed(start));

        if kind == Kind::LHat {
            let r = r_hat0(n);
            let (p, m) = (&d.plus, &d.minus);
            let pairs = [("plus-plus", p, p, p, p), ("minus-minus", m, m, m, m), ("minus-plus", m, p, p, m)];
            for (name, a, b, c, e) in pairs {
                let start = Instant::now();
                let lhs = r.mul(&a.kron(b));
                let rhs = c.kron(e).mul(&r);
                out.push(v(&format!("exchange-{name}")).fail_at(op_difference(&lhs, &rhs)).timed(start));
            }
        }

        let start = Instant::now();
        let pi = &d.projector;
        out.push(v(&format!("idempotent-{tag}")).fail_at(op_difference(&pi.mul(pi), pi)).timed(start));

        let start = Instant::now();
        let at_one = d.plus.sub(&d.minus);
        let ok = match projector_image(pi) {
            Some(x) => apply_matrix(&at_one, &x).iter().all(|c| c.is_empty()),
            None => false,
        };
        out.push(pass_if(v(&format!("null-vector-{tag}")), ok).timed(start));
    }
    Ok(out)
}

/// Exponent choices used for the Yang–Baxter checks.
pub fn ybe_exponents(alg: Algebra) -> Vec<Vec<i32>> {
    match alg {
        Algebra::A1 => vec![vec![1, 0], vec![-2, -1], vec![3, 2]],
        Algebra::A2 => vec![vec![1, 0, 0], vec![-2, 0, 0], vec![3, 1, 1]],
    }
}

/// Fixed exponent tuples used for the gauge checks in the full suite.
pub fn gauge_exponents(alg: Algebra) -> Vec<Vec<i32>> {
    match alg {
        Algebra::A1 => vec![vec![-2, -1], vec![2, 1], vec![3, -2]],
        Algebra::A2 => vec![vec![-2, 0, 0], vec![2, 1, 0], vec![3, -1, 2]],
    }
}

/// The L-operator variants with a closed form, per algebra.
pub fn l_variants(alg: Algebra) -> Vec<(Kind, Variant)> {
    match alg {
        Algebra::A1 => vec![
            (Kind::LHat, Variant::Plain),
            (Kind::LHat, Variant::Twisted),
            (Kind::LCheck, Variant::Plain),
            (Kind::LCheck, Variant::Twisted),
        ],
        Algebra::A2 => vec![
            (Kind::LHat, Variant::Family1),
            (Kind::LHat, Variant::Family2),
            (Kind::LCheck, Variant::Family1),
            (Kind::LCheck, Variant::Family2),
            (Kind::LCheck, Variant::InverseDerived),
        ],
    }
}

pub fn base_exponents(alg: Algebra) -> Vec<i32> {
    let mut e = vec![1];
    e.extend(std::iter::repeat_n(0, alg.rank()));
    e
}

/// Names of the check groups in the full suite.
pub const CHECKS: [&str; 6] = ["ybe", "rll", "gauge", "engine", "duality", "structure"];

/// Runs one check group for an algebra; `order` is the series truncation.
pub fn run_group(group: &str, alg: Algebra, order: i32) -> Result<Vec<Verdict>, VerifyError> {
    let base = base_exponents(alg);
    let mut out = Vec::new();
    match group {
        "ybe" => {
            for e in ybe_exponents(alg) {
                out.extend(check_ybe(&r_for(alg, &e)?)?);
            }
        }
        "rll" => {
            for (kind, variant) in l_variants(alg) {
                out.push(check_rll(&reference_matrix(kind, alg, variant, &base)?)?);
            }
        }
        "gauge" => {
            for e in gauge_exponents(alg) {
                out.push(check_gauge(GaugeFamily::R, alg, Variant::Plain, &e)?);
                for (kind, variant) in l_variants(alg) {
                    let fam = if kind == Kind::LHat { GaugeFamily::LHat } else { GaugeFamily::LCheck };
                    // The σ-twisted A1 operators gauge with the inverse γ; only the plain ones are checked.
                    if matches!(variant, Variant::InverseDerived | Variant::Twisted) {
                        continue;
                    }
                    out.push(check_gauge(fam, alg, variant, &e)?);
                }
            }
        }
        "engine" => {
            out.push(check_engine(Kind::R, alg, Variant::Plain, &base, order)?);
            for (kind, variant) in l_variants(alg) {
                out.push(check_engine(kind, alg, variant, &base, order)?);
            }
            if alg == Algebra::A2 {
                out.push(check_engine_family2_inverse(&base, order)?);
            }
        }
        "duality" => {
            let variant = if alg == Algebra::A1 { Variant::Plain } else { Variant::Family1 };
            for kind in [Kind::LHat, Kind::LCheck] {
                let l = reference_matrix(kind, alg, variant, &base)?;
                out.push(check_duality(&l, DualityMode::Inversion, order)?);
                out.push(check_duality(&l, DualityMode::Tau, order)?);
            }
            if alg == Algebra::A2 {
                let l = reference_matrix(Kind::LHat, alg, Variant::Family2, &base)?;
                out.push(check_duality(&l, DualityMode::Inversion, order)?);
            }
        }
        "structure" => out.extend(check_structure(alg)?),
        _ => return Err(VerifyError::NoEngine(group.to_string())),
    }
    Ok(out)
}

/// Multiplies one entry of an R-matrix by `q`; used to confirm that the
/// checks detect errors.
pub fn perturbed(r: &ReferenceObject) -> ReferenceObject {
    let mut out = r.clone();
    let e = out.matrix.get(0, 0).map_coeffs(|c: &ZetaSeries| c.scale(&QScalar::q_pow(1)));
    out.matrix.set(0, 0, e);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ybe_a1_base() {
        let r = r_for(Algebra::A1, &[1, 0]).unwrap();
        for v in check_ybe(&r).unwrap() {
            assert!(v.pass, "{v}");
        }
    }

    #[test]
    fn ybe_detects_perturbation() {
        let r = perturbed(&r_for(Algebra::A1, &[1, 0]).unwrap());
        let v = &check_ybe(&r).unwrap()[0];
        assert!(!v.pass);
        assert!(v.first_failure.is_some());
    }

    #[test]
    fn gauge_trivial_exponents() {
        let v = check_gauge(GaugeFamily::R, Algebra::A1, Variant::Plain, &[1, 0]).unwrap();
        assert!(v.pass);
    }

    #[test]
    fn rll_a1_plain() {
        let l = reference_matrix(Kind::LHat, Algebra::A1, Variant::Plain, &[1, 0]).unwrap();
        assert!(check_rll(&l).unwrap().pass);
    }

    #[test]
    fn engine_a1_chi() {
        let v = check_engine(Kind::LHat, Algebra::A1, Variant::Plain, &[1, 0], 4).unwrap();
        assert!(v.pass, "{v}");
    }

    #[test]
    fn verdict_json_fields() {
        let v = check_gauge(GaugeFamily::R, Algebra::A1, Variant::Plain, &[1, 0]).unwrap();
        let j = v.to_json();
        for k in ["check", "algebra", "variant", "exponents", "pass", "first_failure", "wall_time_ms"] {
            assert!(j.get(k).is_some(), "{k}");
        }
    }

    #[test]
    fn mismatched_kind_rejected() {
        let l = reference_matrix(Kind::LHat, Algebra::A1, Variant::Plain, &[1, 0]).unwrap();
        assert!(check_ybe(&l).is_err());
    }
}
