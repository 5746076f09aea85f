//! Dense square matrices over an arbitrary ring, matrix units, Kronecker
//! products, leg permutations and leg embeddings.
//!
//! Flattening convention everywhere: leg 1 is the slowest-varying index.

use thiserror::Error;

use crate::scalars::{QScalar, Ring, ZetaSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0} vs {1}")]
    Dim(usize, usize),
    #[error("leg permutation requires equal leg dimensions, got {0:?}")]
    UnequalLegs(Vec<usize>),
    #[error("not a permutation of {n} legs: {perm:?}")]
    NotPermutation { n: usize, perm: Vec<usize> },
    #[error("matrix on V⊗V needs a square dimension, got {0}")]
    NotSquareDim(usize),
    #[error("leg embedding targets {0:?} invalid")]
    Targets(Vec<usize>),
    #[error("malformed matrix JSON: {0}")]
    Json(String),
}

#[derive(Clone, PartialEq, Debug)]
pub struct OpMatrix<E> {
    dim: usize,
    entries: Vec<E>,
}

impl<E: Ring> OpMatrix<E> {
    pub fn zeros(dim: usize) -> Self {
        OpMatrix { dim, entries: vec![E::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = OpMatrix::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = E::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        OpMatrix { dim, entries }
    }

    /// Matrix unit `E_ab` (0-based) carrying `c`.
    pub fn unit(dim: usize, a: usize, b: usize, c: E) -> Self {
        let mut m = OpMatrix::zeros(dim);
        m.entries[a * dim + b] = c;
        m
    }

    pub fn diag(d: Vec<E>) -> Self {
        let dim = d.len();
        let mut m = OpMatrix::zeros(dim);
        for (i, x) in d.into_iter().enumerate() {
            m.entries[i * dim + i] = x;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &E)> {
        let d = self.dim;
        self.entries.iter().enumerate().map(move |(k, e)| (k / d, k % d, e))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn map<F: Ring>(&self, f: impl Fn(&E) -> F) -> OpMatrix<F> {
        OpMatrix { dim: self.dim, entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map<F: Ring, X>(&self, f: impl Fn(&E) -> Result<F, X>) -> Result<OpMatrix<F>, X> {
        Ok(OpMatrix { dim: self.dim, entries: self.entries.iter().map(f).collect::<Result<_, _>>()? })
    }

    pub fn map_indexed<F: Ring>(&self, f: impl Fn(usize, usize, &E) -> F) -> OpMatrix<F> {
        let d = self.dim;
        OpMatrix {
            dim: d,
            entries: self.entries.iter().enumerate().map(|(k, e)| f(k / d, k % d, e)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "matrix dimension mismatch");
        OpMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|e| e.neg())
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        self.map(|e| e.scale(c))
    }

    /// Left multiplication of every entry by `c`.
    pub fn lmul_entry(&self, c: &E) -> Self {
        self.map(|e| c.mul(e))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "matrix dimension mismatch");
        let n = self.dim;
        let mut out = OpMatrix::<E>::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &o.entries[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    out.entries[idx] = out.entries[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// `x y - c y x`.
    pub fn q_commutator(&self, o: &Self, c: &QScalar) -> Self {
        self.mul(o).sub(&o.mul(self).scale(c))
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        OpMatrix::from_fn(n, |i, j| self.entries[j * n + i].clone())
    }

    /// Generalized Kronecker product `(A × B)_{(a,i),(b,j)} = A_ab B_ij`.
    /// Entry order matters for noncommuting entries.
    pub fn kron(&self, o: &Self) -> Self {
        let (n, m) = (self.dim, o.dim);
        OpMatrix::from_fn(n * m, |r, c| {
            let (a, i) = (r / m, r % m);
            let (b, j) = (c / m, c % m);
            let x = &self.entries[a * n + b];
            let y = &o.entries[i * m + j];
            if x.is_zero() || y.is_zero() {
                E::zero()
            } else {
                x.mul(y)
            }
        })
    }

    /// First nonzero entry of `self - o` in row-major order.
    pub fn first_difference(&self, o: &Self) -> Option<(usize, usize)> {
        assert_eq!(self.dim, o.dim, "matrix dimension mismatch");
        let n = self.dim;
        (0..n * n)
            .find(|&k| !self.entries[k].sub(&o.entries[k]).is_zero())
            .map(|k| (k / n, k % n))
    }
}

/// Flat index of a multi-index on legs of dimension `dims`.
fn flatten(idx: &[usize], dims: &[usize]) -> usize {
    idx.iter().zip(dims).fold(0, |acc, (i, d)| acc * d + i)
}

fn unflatten(mut k: usize, dims: &[usize]) -> Vec<usize> {
    let mut idx = vec![0; dims.len()];
    for (slot, d) in idx.iter_mut().zip(dims).rev() {
        *slot = k % d;
        k /= d;
    }
    idx
}

fn check_perm(perm: &[usize]) -> Result<(), LinalgError> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return Err(LinalgError::NotPermutation { n: perm.len(), perm: perm.to_vec() });
        }
        seen[p] = true;
    }
    Ok(())
}

/// `P_s` on `V^{⊗n}`: the tensor factor in leg `i` moves to leg `s(i)`.
pub fn perm_operator<E: Ring>(perm: &[usize], leg_dims: &[usize]) -> Result<OpMatrix<E>, LinalgError> {
    check_perm(perm)?;
    if perm.len() != leg_dims.len() {
        return Err(LinalgError::NotPermutation { n: leg_dims.len(), perm: perm.to_vec() });
    }
    if leg_dims.windows(2).any(|w| w[0] != w[1]) {
        return Err(LinalgError::UnequalLegs(leg_dims.to_vec()));
    }
    let total: usize = leg_dims.iter().product();
    let mut m = OpMatrix::zeros(total);
    for k in 0..total {
        let src = unflatten(k, leg_dims);
        let mut dst = vec![0; src.len()];
        for (i, &p) in perm.iter().enumerate() {
            dst[p] = src[i];
        }
        m.set(flatten(&dst, leg_dims), k, E::one());
    }
    Ok(m)
}

/// `M_{i1...ik}`: places a matrix acting on legs `targets` (in that order)
/// into `V_1 ⊗ ... ⊗ V_n`, identity elsewhere.
pub fn embed_legs<E: Ring>(
    m: &OpMatrix<E>,
    targets: &[usize],
    leg_dims: &[usize],
) -> Result<OpMatrix<E>, LinalgError> {
    let n = leg_dims.len();
    let mut seen = vec![false; n];
    for &t in targets {
        if t >= n || seen[t] {
            return Err(LinalgError::Targets(targets.to_vec()));
        }
        seen[t] = true;
    }
    let sub_dims: Vec<usize> = targets.iter().map(|&t| leg_dims[t]).collect();
    let sub_total: usize = sub_dims.iter().product();
    if sub_total != m.dim() {
        return Err(LinalgError::Dim(sub_total, m.dim()));
    }
    let total: usize = leg_dims.iter().product();
    let mut out = OpMatrix::zeros(total);
    for r in 0..total {
        let ri = unflatten(r, leg_dims);
        for c in 0..total {
            let ci = unflatten(c, leg_dims);
            if (0..n).any(|l| !seen[l] && ri[l] != ci[l]) {
                continue;
            }
            let rs: Vec<usize> = targets.iter().map(|&t| ri[t]).collect();
            let cs: Vec<usize> = targets.iter().map(|&t| ci[t]).collect();
            let v = m.get(flatten(&rs, &sub_dims), flatten(&cs, &sub_dims));
            if !v.is_zero() {
                out.set(r, c, v.clone());
            }
        }
    }
    Ok(out)
}

/// `(R̂, Ř) = (R P, P R)` for `R` on `V ⊗ V`.
pub fn hat_and_check<E: Ring>(r: &OpMatrix<E>) -> Result<(OpMatrix<E>, OpMatrix<E>), LinalgError> {
    let n = r.dim();
    let v = (1..=n).find(|v| v * v >= n).unwrap_or(0);
    if v * v != n {
        return Err(LinalgError::NotSquareDim(n));
    }
    let p = perm_operator::<E>(&[1, 0], &[v, v])?;
    Ok((r.mul(&p), p.mul(r)))
}

/// Serialization of a matrix entry.
pub trait JsonEntry: Sized {
    fn to_json(&self) -> serde_json::Value;
    fn from_json(v: &serde_json::Value) -> Result<Self, String>;
}

impl JsonEntry for QScalar {
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }

    fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        v.as_str().ok_or("string expected")?.parse().map_err(|e: crate::scalars::ScalarError| e.to_string())
    }
}

impl JsonEntry for ZetaSeries {
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"order": self.order(), "terms": ZetaSeries::to_json(self)})
    }

    fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        let order = match &v["order"] {
            serde_json::Value::Null => None,
            o => Some(o.as_i64().ok_or("order must be an integer or null")? as i32),
        };
        ZetaSeries::from_json(&v["terms"], order).map_err(|e| e.to_string())
    }
}

impl<E: Ring + JsonEntry> OpMatrix<E> {
    /// `{"dim", "scalar", "entries": [{"i","j","value"}]}` with zeros omitted.
    pub fn to_json(&self, scalar: &str) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries()
            .filter(|(_, _, e)| !e.is_zero())
            .map(|(i, j, e)| serde_json::json!({"i": i, "j": j, "value": e.to_json()}))
            .collect();
        serde_json::json!({"dim": self.dim, "scalar": scalar, "entries": entries})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, LinalgError> {
        let bad = |s: &str| LinalgError::Json(s.to_string());
        let dim = v["dim"].as_u64().ok_or_else(|| bad("dim"))? as usize;
        let mut m = OpMatrix::zeros(dim);
        for e in v["entries"].as_array().ok_or_else(|| bad("entries"))? {
            let i = e["i"].as_u64().ok_or_else(|| bad("i"))? as usize;
            let j = e["j"].as_u64().ok_or_else(|| bad("j"))? as usize;
            if i >= dim || j >= dim {
                return Err(bad("index out of range"));
            }
            m.set(i, j, E::from_json(&e["value"]).map_err(LinalgError::Json)?);
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = OpMatrix<QScalar>;

    fn e(dim: usize, a: usize, b: usize) -> M {
        M::unit(dim, a, b, QScalar::one())
    }

    #[test]
    fn matrix_units_multiply() {
        for dim in 1..=4 {
            for a in 0..dim {
                for b in 0..dim {
                    for c in 0..dim {
                        for d in 0..dim {
                            let lhs = e(dim, a, b).mul(&e(dim, c, d));
                            let rhs = if b == c { e(dim, a, d) } else { M::zeros(dim) };
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn kron_of_units() {
        let k = e(2, 0, 0).kron(&e(2, 1, 1));
        assert_eq!(k, e(4, 1, 1));
        assert_eq!(M::identity(2).kron(&M::identity(2)), M::identity(4));
    }

    #[test]
    fn swap_acts_on_basis() {
        let p: M = perm_operator(&[1, 0], &[2, 2]).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(p.get(b * 2 + a, a * 2 + b), &QScalar::one());
            }
        }
        assert!(perm_operator::<QScalar>(&[1, 0], &[2, 3]).is_err());
    }

    #[test]
    fn braid_relation_for_transpositions() {
        let dims = [2, 2, 2];
        let p12: M = perm_operator(&[1, 0, 2], &dims).unwrap();
        let p13: M = perm_operator(&[2, 1, 0], &dims).unwrap();
        let p23: M = perm_operator(&[0, 2, 1], &dims).unwrap();
        assert_eq!(p12.mul(&p13).mul(&p23), p23.mul(&p13).mul(&p12));
    }

    #[test]
    fn hat_and_check_of_identity() {
        let (h, c) = hat_and_check(&M::identity(4)).unwrap();
        let p: M = perm_operator(&[1, 0], &[2, 2]).unwrap();
        assert_eq!(h, p);
        assert_eq!(c, p);
        assert!(hat_and_check(&M::identity(3)).is_err());
    }

    use proptest::prelude::*;

    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

    fn int_matrix(dim: usize) -> impl Strategy<Value = M> {
        prop::collection::vec(-3i64..=3, dim * dim)
            .prop_map(move |v| M::from_fn(dim, |i, j| QScalar::int(v[i * dim + j])))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn permutation_conjugates_legs(m in int_matrix(8), pair in int_matrix(4), legs in 0usize..6) {
            let dims = [2, 2, 2];
            for s in PERMS {
                let p: M = perm_operator(&s, &dims).unwrap();
                let conj = |x: &M| p.mul(x).mul(&p.transpose());
                let full = embed_legs(&m, &[0, 1, 2], &dims).unwrap();
                prop_assert_eq!(conj(&full), embed_legs(&m, &s, &dims).unwrap());
                let (i, j) = [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)][legs];
                let two = embed_legs(&pair, &[i, j], &dims).unwrap();
                prop_assert_eq!(conj(&two), embed_legs(&pair, &[s[i], s[j]], &dims).unwrap());
            }
        }

        #[test]
        fn permutations_compose(a in 0usize..6, b in 0usize..6) {
            let dims = [2, 2, 2];
            let (s, t) = (PERMS[a], PERMS[b]);
            let st: Vec<usize> = (0..3).map(|i| s[t[i]]).collect();
            let ps: M = perm_operator(&s, &dims).unwrap();
            let pt: M = perm_operator(&t, &dims).unwrap();
            prop_assert_eq!(ps.mul(&pt), perm_operator(&st, &dims).unwrap());
        }
    }
}
