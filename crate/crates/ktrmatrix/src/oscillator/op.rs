//! Normal-ordered elements of one or two commuting q-oscillator copies.
//!
//! With `S_i = a_i^†` and `u_i = t^{D_i}` every element is a finite sum
//! `Σ S^k u^b c` (function of `D` on the right). On Fock states
//! `S^k u^b |n⟩ = t^{b·n} |n + k⟩`, and
//!
//! ```text
//! a_i = S_i^{-1} (1 - u_i^12),    a_i^† = S_i,    q^{x D_i} = u_i^{6x}.
//! ```
//!
//! Two elements are equal exactly when they act identically on the whole
//! (untruncated) Fock space.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalars::{QScalar, Ring, Q_EXP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OscError {
    #[error("oscillator copy index {0} out of range")]
    Copy(usize),
    #[error("automorphism scale factor must be nonzero")]
    ZeroKappa,
    #[error("parameter {0} must be nonzero")]
    ZeroParameter(&'static str),
    #[error("element is not in the oscillator algebra (no a-power factorization of shift {0:?})")]
    NotInAlgebra([i32; 2]),
    #[error("Fock dimension must be at least 2, got {0}")]
    FockDim(usize),
}

/// `(shift, u-exponent)`; exponents are in units of `t`.
pub type OscKey = ([i32; 2], [i32; 2]);

#[derive(Clone, PartialEq, Debug)]
pub struct OscOp<S> {
    terms: BTreeMap<OscKey, S>,
}

impl<S: Ring> Default for OscOp<S> {
    fn default() -> Self {
        OscOp { terms: BTreeMap::new() }
    }
}

fn dot(a: [i32; 2], b: [i32; 2]) -> i32 {
    a[0] * b[0] + a[1] * b[1]
}

fn unit_vec(i: usize, v: i32) -> [i32; 2] {
    let mut k = [0; 2];
    k[i] = v;
    k
}

impl<S: Ring> OscOp<S> {
    pub fn term(shift: [i32; 2], u: [i32; 2], c: S) -> Self {
        let mut op = OscOp::default();
        op.insert((shift, u), c);
        op
    }

    pub fn constant(c: S) -> Self {
        OscOp::term([0; 2], [0; 2], c)
    }

    pub fn from_scalar(c: QScalar) -> Self {
        OscOp::constant(S::one().scale(&c))
    }

    fn insert(&mut self, key: OscKey, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(x) => {
                *x = x.add(&c);
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// `a_i`.
    pub fn a(i: usize) -> Self {
        let mut op = OscOp::term(unit_vec(i, -1), [0; 2], S::one());
        op.insert((unit_vec(i, -1), unit_vec(i, 2 * Q_EXP)), S::one().neg());
        op
    }

    /// `a_i^†`.
    pub fn adag(i: usize) -> Self {
        OscOp::term(unit_vec(i, 1), [0; 2], S::one())
    }

    /// `t^{e·D}`, i.e. `q^{(e/6)·D}`.
    pub fn t_pow_d(e: [i32; 2]) -> Self {
        OscOp::term([0; 2], e, S::one())
    }

    /// `q^{c·D}` for integer `c`.
    pub fn q_pow_d(c: [i32; 2]) -> Self {
        OscOp::t_pow_d([Q_EXP * c[0], Q_EXP * c[1]])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OscKey, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant coefficient when the element is a plain scalar.
    pub fn as_constant(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => self.terms.get(&([0; 2], [0; 2])).cloned(),
            _ => None,
        }
    }

    pub fn map_coeffs<T: Ring>(&self, f: impl Fn(&S) -> T) -> OscOp<T> {
        let mut out = OscOp::default();
        for (k, c) in &self.terms {
            out.insert(*k, f(c));
        }
        out
    }

    /// Coefficient map that may depend on the shift of the component.
    pub fn map_by_shift<T: Ring>(&self, f: impl Fn([i32; 2], &S) -> T) -> OscOp<T> {
        let mut out = OscOp::default();
        for (k, c) in &self.terms {
            out.insert(*k, f(k.0, c));
        }
        out
    }

    pub fn mul_coeff(&self, c: &S) -> Self {
        self.map_coeffs(|x| x.mul(c))
    }

    /// Largest creation/annihilation count per copy, used for Fock sizing.
    pub fn max_shift(&self) -> i32 {
        self.terms.keys().map(|(k, _)| k[0].abs().max(k[1].abs())).max().unwrap_or(0)
    }

    /// `⟨m|X|n⟩` on the Fock space of the given number of copies.
    pub fn matrix_element(&self, m: [i32; 2], n: [i32; 2]) -> S {
        let k = [m[0] - n[0], m[1] - n[1]];
        let mut acc = S::zero();
        for ((shift, u), c) in self.terms.range((k, [i32::MIN; 2])..=(k, [i32::MAX; 2])) {
            debug_assert_eq!(*shift, k);
            acc = acc.add(&c.scale(&QScalar::t_pow(dot(*u, n))));
        }
        acc
    }

    /// Image under `a_i -> κ_i a_i t^{x_i·D}`, `a_i^† -> κ_i^{-1} t^{-x_i·D} a_i^†`.
    pub fn automorphism(&self, kappa: &[QScalar; 2], xi: &[[i32; 2]; 2]) -> Result<Self, OscError> {
        let mut up = Vec::new();
        let mut down = Vec::new();
        for i in 0..2 {
            let k = kappa[i].inv().map_err(|_| OscError::ZeroKappa)?;
            let neg = [-xi[i][0], -xi[i][1]];
            up.push(OscOp::term([0; 2], neg, S::one().scale(&k)).mul(&OscOp::term(unit_vec(i, 1), [0; 2], S::one())));
            down.push(
                OscOp::term(unit_vec(i, -1), [0; 2], S::one())
                    .mul(&OscOp::term([0; 2], xi[i], S::one().scale(&kappa[i]))),
            );
        }
        let mut out = OscOp::default();
        for ((shift, u), c) in &self.terms {
            let mut acc = OscOp::constant(c.clone());
            for i in 0..2 {
                let g = if shift[i] >= 0 { &up[i] } else { &down[i] };
                for _ in 0..shift[i].abs() {
                    acc = acc.mul(g);
                }
            }
            out = out.add(&acc.mul(&OscOp::t_pow_d(*u)));
        }
        Ok(out)
    }

    /// Multiplies the shift-`k` part by `w^{s·k}` through `f(s·k, coeff)`.
    pub fn gamma(&self, s: [i32; 2], f: impl Fn(i32, &S) -> S) -> Self {
        self.map_by_shift(|k, c| f(dot(s, k), c))
    }

    /// The anti-involution `a <-> a^†`, `D -> D`, applied copywise.
    pub fn tau(&self) -> Result<Self, OscError> {
        let mut by_shift: BTreeMap<[i32; 2], BTreeMap<[i32; 2], S>> = BTreeMap::new();
        for ((k, u), c) in &self.terms {
            by_shift.entry(*k).or_default().insert(*u, c.clone());
        }
        let mut out = OscOp::default();
        for (k, mut f) in by_shift {
            // S^k f = (a or a^†)-monomial · g(u); only negative shifts need division.
            for i in 0..2 {
                for j in 0..(-k[i]).max(0) {
                    f = divide_one_minus(&f, i, QScalar::t_pow(-2 * Q_EXP * j))
                        .ok_or(OscError::NotInAlgebra(k))?;
                }
            }
            let mut g = OscOp::default();
            for (u, c) in f {
                g.insert(([0; 2], u), c);
            }
            // τ(A g) = g τ(A), with τ(a^†) = a and τ(a) = a^†.
            let mut acc = g;
            for i in 0..2 {
                let gen = if k[i] >= 0 { OscOp::a(i) } else { OscOp::adag(i) };
                for _ in 0..k[i].abs() {
                    acc = acc.mul(&gen);
                }
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// Dense matrix on the truncated Fock space, row-major in `(m, n)` with
    /// copies flattened copy 0 outermost. Only `copies` leading copies are used.
    pub fn to_fock(&self, copies: usize, d: usize) -> Vec<Vec<S>> {
        let states = fock_states(copies, d);
        states
            .iter()
            .map(|m| states.iter().map(|n| self.matrix_element(*m, *n)).collect())
            .collect()
    }
}

/// Fock basis labels for `copies` oscillators truncated at `d` states each.
pub fn fock_states(copies: usize, d: usize) -> Vec<[i32; 2]> {
    let d = d as i32;
    match copies {
        0 => vec![[0, 0]],
        1 => (0..d).map(|n| [n, 0]).collect(),
        _ => (0..d).flat_map(|m| (0..d).map(move |n| [m, n])).collect(),
    }
}

/// Exact quotient of `f(u)` by `1 - c u_i^12`, or `None` if it does not divide.
fn divide_one_minus<S: Ring>(
    f: &BTreeMap<[i32; 2], S>,
    i: usize,
    c: QScalar,
) -> Option<BTreeMap<[i32; 2], S>> {
    let step = 2 * Q_EXP;
    // Group by the exponent of the other copy and by residue mod 12.
    let mut lines: BTreeMap<([i32; 2], i32), BTreeMap<i32, S>> = BTreeMap::new();
    for (u, x) in f {
        let mut other = *u;
        other[i] = 0;
        lines
            .entry((other, u[i].rem_euclid(step)))
            .or_default()
            .insert(u[i].div_euclid(step), x.clone());
    }
    let mut out = BTreeMap::new();
    for ((other, r), line) in lines {
        let lo = *line.keys().next().unwrap();
        let hi = *line.keys().next_back().unwrap();
        // g_e = f_e + c g_{e-1}; the tail above hi-1 must vanish.
        let mut prev = S::zero();
        for e in lo..=hi {
            let fe = line.get(&e).cloned().unwrap_or_else(S::zero);
            let ge = fe.add(&prev.scale(&c));
            if e == hi {
                if !ge.is_zero() {
                    return None;
                }
                break;
            }
            if !ge.is_zero() {
                let mut u = other;
                u[i] = e * step + r;
                out.insert(u, ge.clone());
            }
            prev = ge;
        }
    }
    Some(out)
}

impl<S: Ring> Ring for OscOp<S> {
    fn zero() -> Self {
        OscOp::default()
    }

    fn one() -> Self {
        OscOp::constant(S::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.insert(*k, c.clone());
        }
        out
    }

    fn mul(&self, o: &Self) -> Self {
        let mut out = OscOp::default();
        for ((k1, u1), c1) in &self.terms {
            for ((k2, u2), c2) in &o.terms {
                let shift = [k1[0] + k2[0], k1[1] + k2[1]];
                let u = [u1[0] + u2[0], u1[1] + u2[1]];
                let tw = dot(*k2, *u1);
                let c = c1.mul(c2);
                let c = if tw == 0 { c } else { c.scale(&QScalar::t_pow(tw)) };
                out.insert((shift, u), c);
            }
        }
        out
    }

    fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    fn scale(&self, c: &QScalar) -> Self {
        if c.is_zero() {
            return OscOp::default();
        }
        self.map_coeffs(|x| x.scale(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Op = OscOp<QScalar>;

    fn q(k: i32) -> QScalar {
        QScalar::q_pow(k)
    }

    #[test]
    fn oscillator_relations() {
        let a = Op::a(0);
        let ad = Op::adag(0);
        let q2d = Op::q_pow_d([2, 0]);
        assert_eq!(ad.mul(&a), Op::one().sub(&q2d));
        assert_eq!(a.mul(&ad), Op::one().sub(&q2d.scale(&q(2))));
        // q^D a q^{-D} = q^{-1} a
        let conj = Op::q_pow_d([1, 0]).mul(&a).mul(&Op::q_pow_d([-1, 0]));
        assert_eq!(conj, a.scale(&q(-1)));
    }

    #[test]
    fn copies_commute() {
        let x = Op::a(0).mul(&Op::adag(1));
        let y = Op::adag(1).mul(&Op::a(0));
        assert_eq!(x, y);
    }

    #[test]
    fn fock_action() {
        let a = Op::a(0);
        assert!(a.matrix_element([0, 0], [0, 0]).is_zero());
        assert_eq!(a.matrix_element([1, 0], [2, 0]), QScalar::one().sub(&q(4)));
        let n = Op::adag(0).mul(&a);
        assert_eq!(n.matrix_element([2, 0], [2, 0]), QScalar::one().sub(&q(4)));
    }

    #[test]
    fn tau_swaps_and_reverses() {
        let a = Op::a(0);
        let ad = Op::adag(0);
        assert_eq!(a.tau().unwrap(), ad);
        assert_eq!(ad.tau().unwrap(), a);
        let x = a.mul(&ad).mul(&Op::q_pow_d([1, 0])).mul(&a).mul(&a);
        let tx = Op::adag(0).mul(&Op::adag(0)).mul(&Op::q_pow_d([1, 0])).mul(&a).mul(&ad);
        assert_eq!(x.tau().unwrap(), tx);
        assert_eq!(x.tau().unwrap().tau().unwrap(), x);
    }

    #[test]
    fn tau_rejects_bare_inverse_shift() {
        let s_inv = Op::term([-1, 0], [0, 0], QScalar::one());
        assert!(s_inv.tau().is_err());
    }

    #[test]
    fn automorphism_preserves_relations() {
        let kappa = [q(-1), QScalar::int(3)];
        let xi = [[12, 6], [6, -6]];
        let a = Op::a(0).automorphism(&kappa, &xi).unwrap();
        let ad = Op::adag(0).automorphism(&kappa, &xi).unwrap();
        let b = Op::a(1).automorphism(&kappa, &xi).unwrap();
        let bd = Op::adag(1).automorphism(&kappa, &xi).unwrap();
        assert_eq!(ad.mul(&a), Op::one().sub(&Op::q_pow_d([2, 0])));
        assert_eq!(a.mul(&ad), Op::one().sub(&Op::q_pow_d([2, 0]).scale(&q(2))));
        assert_eq!(bd.mul(&b), Op::one().sub(&Op::q_pow_d([0, 2])));
        assert_eq!(a.mul(&bd), bd.mul(&a));
        assert_eq!(a.mul(&b), b.mul(&a));
    }
}
