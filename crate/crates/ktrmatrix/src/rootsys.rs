//! Cartan data, affine positive roots and the normal orders used by the
//! factorized universal R-matrix.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("unsupported algebra label {0:?}")]
    Unsupported(String),
}

/// The two affine algebras handled here.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Algebra {
    A1,
    A2,
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algebra::A1 => "a1",
            Algebra::A2 => "a2",
        })
    }
}

impl FromStr for Algebra {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "a1" | "a1(1)" => Ok(Algebra::A1),
            "a2" | "a2(1)" => Ok(Algebra::A2),
            _ => Err(RootError::Unsupported(s.to_string())),
        }
    }
}

/// Cartan matrix with symmetrizers and, for finite types, its inverse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CartanData {
    pub label: String,
    pub matrix: Vec<Vec<i32>>,
    pub symmetrizers: Vec<i32>,
    pub inverse: Option<Vec<Vec<Rational64>>>,
}

impl CartanData {
    pub fn finite(label: &str) -> Result<CartanData, RootError> {
        let (matrix, inverse) = match label.to_ascii_uppercase().as_str() {
            "A1" => (vec![vec![2]], vec![vec![Rational64::new(1, 2)]]),
            "A2" => (
                vec![vec![2, -1], vec![-1, 2]],
                vec![
                    vec![Rational64::new(2, 3), Rational64::new(1, 3)],
                    vec![Rational64::new(1, 3), Rational64::new(2, 3)],
                ],
            ),
            _ => return Err(RootError::Unsupported(label.to_string())),
        };
        let r = matrix.len();
        Ok(CartanData {
            label: label.to_ascii_uppercase(),
            matrix,
            symmetrizers: vec![1; r],
            inverse: Some(inverse),
        })
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    /// `(α_i, α_j) = d_i a_ij`.
    pub fn form(&self, i: usize, j: usize) -> i32 {
        self.symmetrizers[i] * self.matrix[i][j]
    }
}

/// Adds the node for `α_0 = δ - θ` with `a_0i = -2(θ, α_i)/(θ, θ)`.
pub fn extend_cartan(finite: &CartanData) -> Result<CartanData, RootError> {
    let r = finite.rank();
    let theta = highest_root(r).ok_or_else(|| RootError::Unsupported(finite.label.clone()))?;
    let pair = |i: usize| -> i32 { (0..r).map(|k| theta[k] * finite.form(k, i)).sum() };
    let tt: i32 = (0..r).map(|i| theta[i] * pair(i)).sum();
    let mut m = vec![vec![0; r + 1]; r + 1];
    m[0][0] = 2;
    for i in 0..r {
        let v = -2 * pair(i) / tt;
        m[0][i + 1] = v;
        m[i + 1][0] = v;
        for j in 0..r {
            m[i + 1][j + 1] = finite.matrix[i][j];
        }
    }
    Ok(CartanData {
        label: format!("{}(1)", finite.label),
        matrix: m,
        symmetrizers: vec![1; r + 1],
        inverse: None,
    })
}

fn highest_root(rank: usize) -> Option<Vec<i32>> {
    match rank {
        1 => Some(vec![1]),
        2 => Some(vec![1, 1]),
        _ => None,
    }
}

impl Algebra {
    pub fn rank(self) -> usize {
        match self {
            Algebra::A1 => 1,
            Algebra::A2 => 2,
        }
    }

    pub fn finite_cartan(self) -> CartanData {
        CartanData::finite(match self {
            Algebra::A1 => "A1",
            Algebra::A2 => "A2",
        })
        .unwrap()
    }

    pub fn affine_cartan(self) -> Vec<Vec<i32>> {
        extend_cartan(&self.finite_cartan()).unwrap().matrix
    }

    /// Positive roots of the finite system as coefficient vectors over the simple roots.
    pub fn finite_positive_roots(self) -> Vec<Vec<i32>> {
        match self {
            Algebra::A1 => vec![vec![1]],
            Algebra::A2 => vec![vec![1, 0], vec![1, 1], vec![0, 1]],
        }
    }

    pub fn theta(self) -> Vec<i32> {
        highest_root(self.rank()).unwrap()
    }

    /// `6 b_ij`, an integer matrix: the K-factor exponent in units of `t`.
    pub fn inverse_cartan_t_units(self) -> Vec<Vec<i32>> {
        let inv = self.finite_cartan().inverse.unwrap();
        inv.iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let y = *x * Rational64::from_integer(6);
                        assert!(y.is_integer());
                        *y.numer() as i32
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum RootKind {
    /// `γ + mδ`
    RealPlus,
    /// `mδ`
    Imaginary,
    /// `(δ - γ) + mδ`
    RealMinus,
}

/// An affine positive root, stored by its finite part and δ-multiplicity.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub kind: RootKind,
    /// `γ` over the finite simple roots (zero for imaginary roots).
    pub gamma: Vec<i32>,
    pub m: i32,
}

impl AffineRoot {
    pub fn plus(gamma: &[i32], m: i32) -> Self {
        AffineRoot { kind: RootKind::RealPlus, gamma: gamma.to_vec(), m }
    }

    pub fn minus(gamma: &[i32], m: i32) -> Self {
        AffineRoot { kind: RootKind::RealMinus, gamma: gamma.to_vec(), m }
    }

    pub fn imaginary(rank: usize, m: i32) -> Self {
        AffineRoot { kind: RootKind::Imaginary, gamma: vec![0; rank], m }
    }

    /// Coefficients over `(α_0, α_1, ..., α_r)`, using `δ = α_0 + θ`.
    pub fn node_coeffs(&self, theta: &[i32]) -> Vec<i32> {
        let (k0, sign, extra) = match self.kind {
            RootKind::RealPlus => (self.m, 1, self.m),
            RootKind::Imaginary => (self.m, 0, self.m),
            RootKind::RealMinus => (self.m + 1, -1, self.m + 1),
        };
        let mut v = vec![k0];
        for (g, t) in self.gamma.iter().zip(theta) {
            v.push(sign * g + extra * t);
        }
        v
    }

    /// Finite part of the root (`γ`, `0`, or `-γ`) and its δ-count.
    fn finite_and_delta(&self) -> (Vec<i32>, i32) {
        match self.kind {
            RootKind::RealPlus => (self.gamma.clone(), self.m),
            RootKind::Imaginary => (self.gamma.clone(), self.m),
            RootKind::RealMinus => (self.gamma.iter().map(|g| -g).collect(), self.m + 1),
        }
    }

    pub fn is_real(&self) -> bool {
        self.kind != RootKind::Imaginary
    }

    /// Label such as `a+b+2d` or `(d-a)+1d`.
    pub fn label(&self) -> String {
        let g = finite_label(&self.gamma);
        match self.kind {
            RootKind::RealPlus if self.m == 0 => g,
            RootKind::RealPlus => format!("{g}+{}d", self.m),
            RootKind::Imaginary => format!("{}d", self.m),
            RootKind::RealMinus if self.m == 0 => format!("d-{g}"),
            RootKind::RealMinus => format!("(d-{g})+{}d", self.m),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"label": self.label(), "kind": format!("{:?}", self.kind), "gamma": self.gamma, "m": self.m})
    }
}

fn finite_label(g: &[i32]) -> String {
    let names = ["a", "b"];
    let parts: Vec<&str> = g
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, _)| names[i])
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// Symmetric bilinear form on affine roots: `(δ, ·) = 0` and the finite form on `γ`.
pub fn root_form(alg: Algebra, x: &AffineRoot, y: &AffineRoot) -> i32 {
    let c = alg.finite_cartan();
    let (gx, _) = x.finite_and_delta();
    let (gy, _) = y.finite_and_delta();
    let r = alg.rank();
    (0..r).map(|i| (0..r).map(|j| gx[i] * c.form(i, j) * gy[j]).sum::<i32>()).sum()
}

/// Positive roots with δ-multiplicity up to `cutoff`, in the normal order:
/// real roots `γ + mδ`, then imaginary roots `mδ`, then `(δ - γ) + mδ`.
pub fn positive_roots(alg: Algebra, cutoff: i32) -> Vec<AffineRoot> {
    let mut out = Vec::new();
    match alg {
        Algebra::A1 => {
            for m in 0..=cutoff {
                out.push(AffineRoot::plus(&[1], m));
            }
            for m in 1..=cutoff {
                out.push(AffineRoot::imaginary(1, m));
            }
            for m in (0..=cutoff).rev() {
                out.push(AffineRoot::minus(&[1], m));
            }
        }
        Algebra::A2 => {
            let (a, ab, b) = ([1, 0], [1, 1], [0, 1]);
            for m in 0..=cutoff {
                out.push(AffineRoot::plus(&a, m));
                out.push(AffineRoot::plus(&ab, m));
            }
            for m in 0..=cutoff {
                out.push(AffineRoot::plus(&b, m));
            }
            for m in 1..=cutoff {
                out.push(AffineRoot::imaginary(2, m));
            }
            for m in (0..=cutoff).rev() {
                out.push(AffineRoot::minus(&b, m));
            }
            for m in (0..=cutoff).rev() {
                out.push(AffineRoot::minus(&a, m));
                out.push(AffineRoot::minus(&ab, m));
            }
        }
    }
    out
}

/// The alternative order in which commuting factors are regrouped:
/// all `α + mδ`, then `α + β + mδ`, then `β + mδ`; and on the other side
/// `(δ - β) + mδ`, then `(δ - α) + mδ`, then `(δ - α - β) + mδ`.
pub fn regrouped_roots(alg: Algebra, cutoff: i32) -> Vec<AffineRoot> {
    match alg {
        Algebra::A1 => positive_roots(alg, cutoff),
        Algebra::A2 => {
            let mut out = Vec::new();
            for g in [[1, 0], [1, 1], [0, 1]] {
                for m in 0..=cutoff {
                    out.push(AffineRoot::plus(&g, m));
                }
            }
            for m in 1..=cutoff {
                out.push(AffineRoot::imaginary(2, m));
            }
            for g in [[0, 1], [1, 0], [1, 1]] {
                for m in (0..=cutoff).rev() {
                    out.push(AffineRoot::minus(&g, m));
                }
            }
            out
        }
    }
}

/// Checks `γ + mδ ≺ kδ ≺ (δ - γ) + ℓδ` and the convexity property on the list:
/// whenever two real roots in the list sum to a root in the list, the sum
/// sits between them. Returns the first violation.
pub fn check_normal_order(alg: Algebra, order: &[AffineRoot]) -> Result<(), String> {
    let theta = alg.theta();
    let coeffs: Vec<Vec<i32>> = order.iter().map(|r| r.node_coeffs(&theta)).collect();
    let pos = |kind: RootKind| order.iter().enumerate().filter(move |(_, r)| r.kind == kind).map(|(i, _)| i);
    let last_plus = pos(RootKind::RealPlus).max();
    let first_im = pos(RootKind::Imaginary).min();
    let last_im = pos(RootKind::Imaginary).max();
    let first_minus = pos(RootKind::RealMinus).min();
    if let (Some(a), Some(b)) = (last_plus, first_im) {
        if a > b {
            return Err("a real root γ+mδ follows an imaginary root".into());
        }
    }
    if let (Some(a), Some(b)) = (last_im.or(last_plus), first_minus) {
        if a > b {
            return Err("a root (δ-γ)+mδ precedes an earlier block".into());
        }
    }
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if !order[i].is_real() || !order[j].is_real() {
                continue;
            }
            let sum: Vec<i32> = coeffs[i].iter().zip(&coeffs[j]).map(|(a, b)| a + b).collect();
            for (k, c) in coeffs.iter().enumerate() {
                if *c == sum && !(i < k && k < j) {
                    return Err(format!(
                        "{} = {} + {} is not between its summands",
                        order[k].label(),
                        order[i].label(),
                        order[j].label()
                    ));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extended_matrices() {
        let a1 = extend_cartan(&CartanData::finite("A1").unwrap()).unwrap();
        assert_eq!(a1.matrix, vec![vec![2, -2], vec![-2, 2]]);
        let a2 = extend_cartan(&CartanData::finite("A2").unwrap()).unwrap();
        assert_eq!(a2.matrix, vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        assert!(CartanData::finite("B2").is_err());
    }

    #[test]
    fn form_matches_symmetrized_cartan() {
        for alg in [Algebra::A1, Algebra::A2] {
            let m = alg.affine_cartan();
            let theta = alg.theta();
            let r = alg.rank();
            let simple: Vec<AffineRoot> = (0..=r)
                .map(|i| {
                    if i == 0 {
                        AffineRoot::minus(&theta, 0)
                    } else {
                        let mut g = vec![0; r];
                        g[i - 1] = 1;
                        AffineRoot::plus(&g, 0)
                    }
                })
                .collect();
            for i in 0..=r {
                for j in 0..=r {
                    assert_eq!(root_form(alg, &simple[i], &simple[j]), m[i][j]);
                }
            }
        }
    }

    #[test]
    fn delta_is_isotropic() {
        let d = AffineRoot::imaginary(2, 1);
        let a = AffineRoot::plus(&[1, 0], 0);
        assert_eq!(root_form(Algebra::A2, &d, &d), 0);
        assert_eq!(root_form(Algebra::A2, &d, &a), 0);
        assert_eq!(root_form(Algebra::A2, &a, &AffineRoot::plus(&[0, 1], 0)), -1);
    }

    #[test]
    fn orders_are_normal() {
        for alg in [Algebra::A1, Algebra::A2] {
            for cutoff in 0..4 {
                check_normal_order(alg, &positive_roots(alg, cutoff)).unwrap();
            }
        }
        assert_eq!(positive_roots(Algebra::A1, 0).len(), 2);
        assert_eq!(Algebra::A2.finite_positive_roots().len(), 3);
    }

    #[test]
    fn coroot_decomposition() {
        let theta = Algebra::A2.theta();
        assert_eq!(AffineRoot::minus(&[0, 1], 2).node_coeffs(&theta), vec![3, 3, 2]);
        for m in 0..4 {
            assert_eq!(AffineRoot::minus(&[1, 1], m).node_coeffs(&theta), vec![m + 1, m, m]);
            assert_eq!(AffineRoot::plus(&[1, 0], m).node_coeffs(&theta)[0], m);
        }
        assert_eq!(AffineRoot::plus(&[1], 3).node_coeffs(&Algebra::A1.theta()), vec![3, 4]);
    }
}
