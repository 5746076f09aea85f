//! Plain-text rendering of scalars, series and matrices with `E_ab` labels.
//!
//! Powers of `t` that are whole powers of `q` are written as `q^k`. Oscillator
//! entries are written in normal order with `S = a†`, `S^-1` its inverse and
//! `t^(b D)` for `q^{b D / 6}`; `a = S^-1 (1 - q^2 q^(2D))`.

use std::fmt::Write;

use crate::linalg::OpMatrix;
use crate::oscillator::OscOp;
use crate::reference::{Prefactor, ReferenceObject};
use crate::scalars::{QScalar, Ring, ZetaSeries, Q_EXP};

fn poly(s: &str) -> String {
    s.split(" + ")
        .map(|term| match term.split_once("*t^") {
            Some((c, e)) => {
                let e: i32 = e.parse().unwrap_or(0);
                let c = if c == "1" && e != 0 { String::new() } else if c == "-1" && e != 0 { "-".into() } else { c.to_string() };
                let sep = if c.is_empty() || c == "-" { "" } else { "*" };
                match e {
                    0 => if c.is_empty() { "1".into() } else if c == "-" { "-1".into() } else { c },
                    e if e % Q_EXP == 0 => format!("{c}{sep}q^{}", e / Q_EXP),
                    e => format!("{c}{sep}t^{e}"),
                }
            }
            None => term.to_string(),
        })
        .collect::<Vec<_>>()
        .join(" + ")
        .replace("+ -", "- ")
}

pub fn scalar(x: &QScalar) -> String {
    let s = x.to_string();
    let (n, d) = s.split_once(")/(").unwrap_or((&s, "1*t^0)"));
    let n = poly(n.trim_start_matches('('));
    let d = d.trim_end_matches(')');
    if d == "1*t^0" {
        n
    } else {
        format!("({n})/({})", poly(d))
    }
}

fn wrapped(x: &QScalar) -> String {
    let s = scalar(x);
    if s.contains(" + ") || s.contains(" - ") || s.contains('/') {
        format!("({s})")
    } else {
        s
    }
}

pub fn series(x: &ZetaSeries) -> String {
    let mut parts: Vec<String> = x
        .terms()
        .map(|(k, c)| match k {
            0 => scalar(c),
            k => match wrapped(c).as_str() {
                "1" => format!("z^{k}"),
                "-1" => format!("-z^{k}"),
                w => format!("{w}*z^{k}"),
            },
        })
        .collect();
    if let Some(n) = x.order() {
        parts.push(format!("O(z^{})", n + 1));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

fn osc_key(shift: [i32; 2], u: [i32; 2]) -> String {
    let mut out = Vec::new();
    for i in 0..2 {
        let n = i + 1;
        match shift[i] {
            0 => {}
            1 => out.push(format!("S{n}")),
            k => out.push(format!("S{n}^{k}")),
        }
        if u[i] != 0 {
            out.push(if u[i] % Q_EXP == 0 {
                format!("q^({} D{n})", u[i] / Q_EXP)
            } else {
                format!("t^({} D{n})", u[i])
            });
        }
    }
    out.join(" ")
}

/// Renders an oscillator entry whose coefficients are rendered by `coeff`.
pub fn osc<S: Ring>(x: &OscOp<S>, coeff: impl Fn(&S) -> String) -> String {
    let parts: Vec<String> = x
        .terms()
        .map(|((shift, u), c)| {
            let k = osc_key(*shift, *u);
            let c = coeff(c);
            match (k.is_empty(), c.as_str()) {
                (true, _) => c,
                (false, "1") => k,
                (false, _) => format!("({c}) {k}"),
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// `E_ab` for `n x n` matrices, `E_ab⊗E_cd` for matrices on `V ⊗ V`.
pub fn label(i: usize, j: usize, dim: usize, legs: usize) -> String {
    if legs == 2 {
        let n = (1..=dim).find(|n| n * n >= dim).unwrap_or(1);
        format!("E{}{}⊗E{}{}", i / n + 1, j / n + 1, i % n + 1, j % n + 1)
    } else {
        format!("E{}{}", i + 1, j + 1)
    }
}

/// One line per nonzero entry.
pub fn matrix<E: Ring>(m: &OpMatrix<E>, legs: usize, entry: impl Fn(&E) -> String) -> String {
    let mut out = String::new();
    for (i, j, e) in m.entries().filter(|(_, _, e)| !e.is_zero()) {
        let _ = writeln!(out, "{:<10} {}", label(i, j, m.dim(), legs), entry(e));
    }
    out
}

pub fn prefactor(p: &Prefactor) -> String {
    let mut parts = Vec::new();
    if p.t_power != 0 {
        let q = QScalar::t_pow(p.t_power);
        parts.push(scalar(&q));
    }
    for l in &p.lambdas {
        let sign = if l.sign < 0 { "-" } else { "" };
        let z = l.zeta_sign * p.s;
        parts.push(format!("exp({sign}lambda{}(q^{} z^{z}))", l.level, l.q_power));
    }
    if let Some(d) = &p.denominator {
        parts.push(format!("/ ({})", series(d)));
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// Closed-form object: header, prefactor and the polynomial matrix.
pub fn reference(r: &ReferenceObject) -> String {
    let legs = if r.matrix.dim() > 3 { 2 } else { 1 };
    let mut out = format!(
        "{} {} {} exponents {:?}\nprefactor: {}\n",
        r.kind,
        r.algebra,
        r.variant,
        r.exps,
        prefactor(&r.prefactor)
    );
    out.push_str(&matrix(&r.matrix, legs, |e| osc(e, series)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_powers_are_named() {
        assert_eq!(scalar(&QScalar::q_pow(2)), "q^2");
        assert_eq!(scalar(&QScalar::t_pow(3)), "t^3");
        assert_eq!(scalar(&QScalar::int(-3)), "-3");
        assert_eq!(scalar(&QScalar::q_minus_qinv().inv().unwrap()), "(q^1)/(q^2 - 1)");
    }

    #[test]
    fn labels() {
        assert_eq!(label(1, 2, 4, 2), "E12⊗E21");
        assert_eq!(label(2, 0, 3, 1), "E31");
    }

    #[test]
    fn series_with_order() {
        let s = ZetaSeries::from_terms([(0, QScalar::one()), (2, QScalar::q_pow(-1))], Some(3));
        assert_eq!(series(&s), "1 + q^-1*z^2 + O(z^4)");
        let s = ZetaSeries::from_terms([(1, QScalar::int(-1)), (2, QScalar::one())], None);
        assert_eq!(series(&s), "-z^1 + z^2");
        let s = ZetaSeries::from_terms([(1, QScalar::one().sub(&QScalar::q_pow(-2)))], None);
        assert_eq!(series(&s), "(1 - q^-2)*z^1");
    }
}
