//! Laurent polynomials in `t` with rational coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) type Q = BigRational;

pub(crate) fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `c[i]` is the coefficient of `t^(lo + i)`. Zero is the empty vector;
/// otherwise the first and last coefficients are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Poly {
    pub lo: i32,
    pub c: Vec<Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { lo: 0, c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::monomial(Q::one(), 0)
    }

    pub fn monomial(coef: Q, exp: i32) -> Self {
        if coef.is_zero() {
            return Poly::zero();
        }
        Poly { lo: exp, c: vec![coef] }
    }

    pub fn from_coeffs(lo: i32, c: Vec<Q>) -> Self {
        let mut p = Poly { lo, c };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while matches!(self.c.last(), Some(x) if x.is_zero()) {
            self.c.pop();
        }
        let lead_zeros = self.c.iter().take_while(|x| x.is_zero()).count();
        if lead_zeros == self.c.len() {
            self.c.clear();
            self.lo = 0;
            return;
        }
        if lead_zeros > 0 {
            self.c.drain(..lead_zeros);
            self.lo += lead_zeros as i32;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.c.len() == 1
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.c.len() as i32 - 1
    }

    pub fn lead(&self) -> &Q {
        self.c.last().expect("leading coefficient of zero polynomial")
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Q)> {
        let lo = self.lo;
        self.c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(i, x)| (lo + i as i32, x))
    }

    pub fn add(&self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(o.lo);
        let hi = self.hi().max(o.hi());
        let mut c = vec![Q::zero(); (hi - lo + 1) as usize];
        for (i, x) in self.c.iter().enumerate() {
            c[(self.lo - lo) as usize + i] += x;
        }
        for (i, x) in o.c.iter().enumerate() {
            c[(o.lo - lo) as usize + i] += x;
        }
        Poly::from_coeffs(lo, c)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            lo: self.lo,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.is_monomial() {
            return self.mul_monomial(&o.c[0], o.lo);
        }
        if self.is_monomial() {
            return o.mul_monomial(&self.c[0], self.lo);
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        Poly::from_coeffs(self.lo + o.lo, c)
    }

    pub fn mul_monomial(&self, coef: &Q, exp: i32) -> Poly {
        if coef.is_zero() || self.is_zero() {
            return Poly::zero();
        }
        Poly {
            lo: self.lo + exp,
            c: if coef.is_one() {
                self.c.clone()
            } else {
                self.c.iter().map(|x| x * coef).collect()
            },
        }
    }

    pub fn scale(&self, coef: &Q) -> Poly {
        self.mul_monomial(coef, 0)
    }

    /// Substitutes `t -> t^k` for `k != 0`.
    pub fn subs_power(&self, k: i32) -> Poly {
        let mut terms: Vec<(i32, Q)> = self.terms().map(|(e, x)| (e * k, x.clone())).collect();
        terms.sort_by_key(|(e, _)| *e);
        Poly::from_terms(terms)
    }

    pub fn from_terms(terms: Vec<(i32, Q)>) -> Poly {
        if terms.is_empty() {
            return Poly::zero();
        }
        let lo = terms.iter().map(|(e, _)| *e).min().unwrap();
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut c = vec![Q::zero(); (hi - lo + 1) as usize];
        for (e, x) in terms {
            c[(e - lo) as usize] += x;
        }
        Poly::from_coeffs(lo, c)
    }

    /// Largest `g` such that every exponent offset from `lo` is a multiple of `g`.
    fn stride(&self) -> usize {
        let mut g = 0usize;
        for (i, x) in self.c.iter().enumerate() {
            if !x.is_zero() {
                g = g.gcd(&i);
            }
        }
        g
    }

    fn compress(&self, g: usize) -> Vec<Q> {
        self.c.iter().step_by(g).cloned().collect()
    }

    /// Monic gcd of the polynomial parts (powers of `t` are units).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic_part();
        }
        if b.is_zero() {
            return a.monic_part();
        }
        if a.is_monomial() || b.is_monomial() {
            return Poly::one();
        }
        let g = a.stride().gcd(&b.stride()).max(1);
        let r = dense_gcd(a.compress(g), b.compress(g));
        let mut c = vec![Q::zero(); (r.len() - 1) * g + 1];
        for (i, x) in r.into_iter().enumerate() {
            c[i * g] = x;
        }
        Poly::from_coeffs(0, c)
    }

    fn monic_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = self.lead().clone();
        Poly::from_coeffs(0, self.c.iter().map(|x| x / &l).collect())
    }

    /// Exact division; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        if d.is_monomial() {
            return self.mul_monomial(&(Q::one() / &d.c[0]), -d.lo);
        }
        let (q, r) = dense_divrem(&self.c, &d.c);
        assert!(r.iter().all(|x| x.is_zero()), "inexact polynomial division");
        Poly::from_coeffs(self.lo - d.lo, q)
    }
}

fn dense_divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r: Vec<Q> = a.to_vec();
    if a.len() < b.len() {
        return (vec![Q::zero()], r);
    }
    let bl = b.last().unwrap();
    let mut q = vec![Q::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let top = &r[k + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let f = top / bl;
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                r[k + j] -= &f * y;
            }
        }
        q[k] = f;
    }
    r.truncate(b.len() - 1);
    (q, r)
}

fn trim(v: &mut Vec<Q>) {
    while matches!(v.last(), Some(x) if x.is_zero()) {
        v.pop();
    }
}

fn make_monic(v: &mut [Q]) {
    let l = v.last().unwrap().clone();
    if !l.is_one() {
        for x in v.iter_mut() {
            *x /= &l;
        }
    }
}

fn dense_gcd(mut a: Vec<Q>, mut b: Vec<Q>) -> Vec<Q> {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        make_monic(&mut b);
        if b.len() == 1 {
            return vec![Q::one()];
        }
        let (_, mut r) = dense_divrem(&a, &b);
        trim(&mut r);
        a = b;
        b = r;
    }
    make_monic(&mut a);
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(lo: i32, c: &[i64]) -> Poly {
        Poly::from_coeffs(lo, c.iter().map(|&x| q_int(x)).collect())
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (t^2-1)(t^2+1) and (t^2-1)(t^4+1)
        let a = p(0, &[-1, 0, 1]).mul(&p(0, &[1, 0, 1]));
        let b = p(0, &[-1, 0, 1]).mul(&p(0, &[1, 0, 0, 0, 1]));
        assert_eq!(Poly::gcd(&a, &b), p(0, &[-1, 0, 1]));
    }

    #[test]
    fn exact_division_round_trips() {
        let a = p(-3, &[2, 1, 0, 5]);
        let b = p(0, &[1, 0, -7]);
        assert_eq!(a.mul(&b).div_exact(&b), a);
    }

    #[test]
    fn stride_gcd_matches_plain() {
        let a = p(0, &[1, 0, 0, 0, 0, 0, -1]);
        let b = p(0, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1]);
        assert_eq!(Poly::gcd(&a, &b), p(0, &[-1, 0, 0, 0, 0, 0, 1]));
    }
}
