//! The q-oscillator algebra, its truncated Fock realization, and the
//! oscillator homomorphisms χ (positive Borel) and ψ (negative Borel).

mod op;

pub use op::*;

use crate::linalg::{JsonEntry, OpMatrix};
use crate::qgroup::{node_exponents, Cartan, GeneratorImage, OpMat};
use crate::rootsys::Algebra;
use crate::scalars::{QScalar, Ring, Q_EXP};

/// Dense single-copy Fock matrices: `a†|n⟩ = |n+1⟩`, `a|n⟩ = (1 - q^{2n})|n-1⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockRep {
    d: usize,
    pub a: Vec<Vec<QScalar>>,
    pub adag: Vec<Vec<QScalar>>,
}

type Dense = Vec<Vec<QScalar>>;

fn dense_mul(x: &Dense, y: &Dense) -> Dense {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(QScalar::zero(), |acc, k| acc.add(&x[i][k].mul(&y[k][j]))))
                .collect()
        })
        .collect()
}

pub fn fock_rep(d: usize) -> Result<FockRep, OscError> {
    if d < 2 {
        return Err(OscError::FockDim(d));
    }
    Ok(FockRep {
        d,
        a: OscOp::<QScalar>::a(0).to_fock(1, d),
        adag: OscOp::<QScalar>::adag(0).to_fock(1, d),
    })
}

impl FockRep {
    pub fn dim(&self) -> usize {
        self.d
    }

    /// `q^{cD}` with `c` given in sixths (`t`-units).
    pub fn q_pow_d(&self, c_t: i32) -> Dense {
        (0..self.d)
            .map(|i| {
                (0..self.d)
                    .map(|j| if i == j { QScalar::t_pow(c_t * i as i32) } else { QScalar::zero() })
                    .collect()
            })
            .collect()
    }

    /// Checks the oscillator relations on the states where truncation cannot interfere.
    pub fn check_relations(&self) -> Result<(), String> {
        let d = self.d;
        let q2d = self.q_pow_d(2 * Q_EXP);
        let ada = dense_mul(&self.adag, &self.a);
        let aad = dense_mul(&self.a, &self.adag);
        let q2 = QScalar::q_pow(2);
        for i in 0..d {
            for j in 0..d {
                let id = if i == j { QScalar::one() } else { QScalar::zero() };
                if ada[i][j] != id.sub(&q2d[i][j]) {
                    return Err(format!("a^dag a at ({i},{j})"));
                }
                if i < d - 1 && j < d - 1 && aad[i][j] != id.sub(&q2.mul(&q2d[i][j])) {
                    return Err(format!("a a^dag at ({i},{j})"));
                }
                // D a - a D = -a and D a^dag - a^dag D = a^dag
                let n = |k: usize| QScalar::int(k as i64);
                if self.a[i][j].mul(&n(i).sub(&n(j))) != self.a[i][j].neg() {
                    return Err(format!("[D, a] at ({i},{j})"));
                }
                if self.adag[i][j].mul(&n(i).sub(&n(j))) != self.adag[i][j] {
                    return Err(format!("[D, a^dag] at ({i},{j})"));
                }
            }
        }
        Ok(())
    }
}

/// Which Borel half an oscillator homomorphism is defined on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// Positive Borel subalgebra, images of `e_i`.
    Chi,
    /// Negative Borel subalgebra, images of `f_i`.
    Psi,
}

/// Free parameters `ρ`, `μ_i`, `ν_i` of a homomorphism family. `ν` is stored
/// in sixths so that `q^{ν D}` stays inside Q(t).
#[derive(Clone, Debug, PartialEq)]
pub struct OscParams {
    pub rho: QScalar,
    pub mu: [QScalar; 2],
    pub nu_t: [i32; 3],
}

impl OscParams {
    /// The parameter values that reproduce the printed L-operators.
    pub fn standard(alg: Algebra, side: Side, family: u8) -> OscParams {
        let k = QScalar::q_minus_qinv();
        let kinv = k.inv().unwrap();
        let (rho, mu) = match (alg, side) {
            (Algebra::A1, Side::Chi) => (kinv.pow(2), k.clone()),
            (Algebra::A1, Side::Psi) => (kinv.pow(2), kinv.clone()),
            (Algebra::A2, Side::Chi) => {
                let r = kinv.pow(3);
                (if family == 2 { r.neg() } else { r }, k.clone())
            }
            (Algebra::A2, Side::Psi) => {
                let r = kinv.pow(3);
                (if family == 2 { r.neg() } else { r }, kinv.clone())
            }
        };
        OscParams { rho, mu: [mu.clone(), mu], nu_t: [0; 3] }
    }
}

fn qd(x: i32, y: i32) -> OscOp<QScalar> {
    OscOp::t_pow_d([x, y])
}

fn osc(x: OscOp<QScalar>) -> OpMat {
    OpMatrix::from_fn(1, |_, _| x.clone())
}

fn cartan(c: [i32; 2]) -> Cartan {
    Cartan { diag: vec![0], dcoef: c }
}

/// Oscillator images of the generators of one Borel half.
///
/// `family` selects between the two Serre-compatible families for A2 and is
/// ignored for A1. `exps` is `(s, s_1[, s_2])`.
pub fn oscillator_image(
    alg: Algebra,
    side: Side,
    family: u8,
    p: &OscParams,
    exps: &[i32],
) -> Result<GeneratorImage, OscError> {
    for (i, m) in p.mu.iter().enumerate().take(alg.rank()) {
        if m.is_zero() {
            return Err(OscError::ZeroParameter(if i == 0 { "mu1" } else { "mu2" }));
        }
    }
    if p.rho.is_zero() {
        return Err(OscError::ZeroParameter("rho"));
    }
    let n = p.nu_t;
    let q = Q_EXP;
    let (h, ops): (Vec<Cartan>, Vec<OscOp<QScalar>>) = match alg {
        Algebra::A1 => {
            let mu = &p.mu[0];
            let mu_inv = mu.inv().unwrap();
            let h = vec![cartan([-2, 0]), cartan([2, 0])];
            let ops = match side {
                Side::Chi => vec![
                    OscOp::a(0).mul(&qd(n[0], 0)).scale(&p.rho.mul(mu)),
                    qd(-n[0], 0).mul(&OscOp::adag(0)).scale(&mu_inv),
                ],
                Side::Psi => vec![
                    qd(-n[0], 0).mul(&OscOp::adag(0)).scale(&p.rho.mul(&mu_inv)),
                    OscOp::a(0).mul(&qd(n[0], 0)).scale(mu),
                ],
            };
            (h, ops)
        }
        Algebra::A2 => {
            let (m1, m2) = (&p.mu[0], &p.mu[1]);
            let (i1, i2) = (m1.inv().unwrap(), m2.inv().unwrap());
            let h = vec![cartan([-1, -1]), cartan([2, -1]), cartan([-1, 2])];
            let a12 = OscOp::a(0).mul(&OscOp::a(1));
            let ad12 = OscOp::adag(0).mul(&OscOp::adag(1));
            let ops = match (side, family) {
                (Side::Chi, 1) => vec![
                    a12.mul(&qd(n[0] + n[1] - q, n[1] + n[2] - 2 * q)).scale(&p.rho.mul(m1).mul(m2)),
                    qd(-n[0], -n[1]).mul(&OscOp::adag(0)).scale(&i1),
                    qd(q - n[1], -n[2]).mul(&OscOp::adag(1)).scale(&i2),
                ],
                (Side::Chi, _) => vec![
                    a12.mul(&qd(n[0] + n[1] - q, n[1] + n[2])).scale(&p.rho.mul(m1).mul(m2)),
                    qd(-n[0], -n[1]).mul(&OscOp::adag(0)).scale(&i1),
                    qd(-q - n[1], -n[2]).mul(&OscOp::adag(1)).scale(&i2),
                ],
                (Side::Psi, 1) => vec![
                    qd(-n[0] - n[1] - q, -n[1] - n[2] - 2 * q).mul(&ad12).scale(&p.rho.mul(&i1).mul(&i2)),
                    OscOp::a(0).mul(&qd(n[0], n[1])).scale(m1),
                    OscOp::a(1).mul(&qd(n[1] + q, n[2])).scale(m2),
                ],
                (Side::Psi, _) => vec![
                    qd(-n[0] - n[1] - q, -n[1] - n[2]).mul(&ad12).scale(&p.rho.mul(&i1).mul(&i2)),
                    OscOp::a(0).mul(&qd(n[0], n[1])).scale(m1),
                    OscOp::a(1).mul(&qd(n[1] - q, n[2])).scale(m2),
                ],
            };
            (h, ops)
        }
    };
    let ops: Vec<Option<OpMat>> = ops.into_iter().map(|x| Some(osc(x))).collect();
    let none = vec![None; ops.len()];
    let (e, f) = match side {
        Side::Chi => (ops, none),
        Side::Psi => (none, ops),
    };
    Ok(GeneratorImage {
        algebra: alg,
        dim: 1,
        copies: alg.rank(),
        h,
        e,
        f,
        zeta: node_exponents(exps[0], &exps[1..=alg.rank()]),
    })
}

impl<S: Ring + JsonEntry> JsonEntry for OscOp<S> {
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms()
                .map(|((k, u), c)| serde_json::json!({"shift": k, "u": u, "coeff": c.to_json()}))
                .collect(),
        )
    }

    fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        let arr = v.as_array().ok_or("oscillator term list expected")?;
        let pair = |x: &serde_json::Value| -> Result<[i32; 2], String> {
            let a = x.as_array().filter(|a| a.len() == 2).ok_or("pair expected")?;
            let g = |i: usize| a[i].as_i64().map(|n| n as i32).ok_or("integer expected".to_string());
            Ok([g(0)?, g(1)?])
        };
        let mut out = OscOp::default();
        for t in arr {
            out = out.add(&OscOp::term(pair(&t["shift"])?, pair(&t["u"])?, S::from_json(&t["coeff"])?));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qgroup::check_relations;

    #[test]
    fn fock_realization() {
        assert!(fock_rep(1).is_err());
        let f = fock_rep(6).unwrap();
        f.check_relations().unwrap();
        assert!(f.a[0][0].is_zero());
        // a^dag a |2> = (1 - q^4)|2>
        let ada = dense_mul(&f.adag, &f.a);
        assert_eq!(ada[2][2], QScalar::one().sub(&QScalar::q_pow(4)));
    }

    #[test]
    fn standard_images_satisfy_borel_relations() {
        for (alg, fams) in [(Algebra::A1, vec![1]), (Algebra::A2, vec![1, 2])] {
            for side in [Side::Chi, Side::Psi] {
                for &fam in &fams {
                    let p = OscParams::standard(alg, side, fam);
                    let img = oscillator_image(alg, side, fam, &p, &[1, 0, 0]).unwrap();
                    let done = check_relations(&img).unwrap();
                    assert!(done.iter().any(|s| s.starts_with("Serre")), "{alg} {side:?} {fam}");
                }
            }
        }
    }

    #[test]
    fn general_parameters_satisfy_relations() {
        let p = OscParams {
            rho: QScalar::int(5),
            mu: [QScalar::q_pow(3), QScalar::frac(2, 7)],
            nu_t: [6, -12, 3],
        };
        for side in [Side::Chi, Side::Psi] {
            for fam in [1, 2] {
                let img = oscillator_image(Algebra::A2, side, fam, &p, &[1, 0, 0]).unwrap();
                check_relations(&img).unwrap();
            }
            let img = oscillator_image(Algebra::A1, side, 1, &p, &[1, 0]).unwrap();
            check_relations(&img).unwrap();
            check_relations(&img.twist(&[1, 0]).unwrap()).unwrap();
        }
    }

    #[test]
    fn printed_images() {
        let k = QScalar::q_minus_qinv().inv().unwrap();
        let chi = oscillator_image(Algebra::A1, Side::Chi, 1, &OscParams::standard(Algebra::A1, Side::Chi, 1), &[1, 0])
            .unwrap();
        assert_eq!(chi.e[1].as_ref().unwrap().get(0, 0), &OscOp::adag(0).scale(&k));
        let sigma = chi.twist(&[1, 0]).unwrap();
        assert_eq!(sigma.e[1].as_ref().unwrap().get(0, 0), &OscOp::a(0).scale(&k));
        let psi2 = oscillator_image(Algebra::A2, Side::Psi, 2, &OscParams::standard(Algebra::A2, Side::Psi, 2), &[1, 0, 0])
            .unwrap();
        let want = OscOp::a(1).mul(&OscOp::q_pow_d([-1, 0])).scale(&k);
        assert_eq!(psi2.f[2].as_ref().unwrap().get(0, 0), &want);
        assert_eq!(psi2.h[2], Cartan { diag: vec![0], dcoef: [-1, 2] });
    }

    #[test]
    fn zero_mu_rejected() {
        let mut p = OscParams::standard(Algebra::A1, Side::Chi, 1);
        p.mu[0] = QScalar::zero();
        assert!(oscillator_image(Algebra::A1, Side::Chi, 1, &p, &[1, 0]).is_err());
    }

    #[test]
    fn symbolic_and_dense_agree() {
        let f = fock_rep(5).unwrap();
        let x = OscOp::<QScalar>::a(0).mul(&OscOp::adag(0)).mul(&OscOp::q_pow_d([1, 0]));
        let dense = dense_mul(&dense_mul(&f.a, &f.adag), &f.q_pow_d(Q_EXP));
        let sym = x.to_fock(1, 5);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(sym[i][j], dense[i][j]);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let x = OscOp::<QScalar>::a(0).mul(&OscOp::adag(1)).scale(&QScalar::frac(3, 4));
        assert_eq!(OscOp::<QScalar>::from_json(&x.to_json()).unwrap(), x);
    }
}
