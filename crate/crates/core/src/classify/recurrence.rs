//! Minimal linear recurrences over the rationals (Berlekamp–Massey) and the
//! exact integer-root and Vandermonde steps used by reconstruction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Connection polynomial `C(x) = 1 + c_1 x + … + c_d x^d` of the shortest
/// recurrence `s_n + c_1 s_{n-1} + … + c_d s_{n-d} = 0` generating `s`.
///
/// The returned vector has length `d + 1` (trailing coefficients may be zero).
pub fn berlekamp_massey(s: &[Rational]) -> Vec<Rational> {
    let mut c = vec![Rational::one()];
    let mut b = vec![Rational::one()];
    let mut len = 0usize;
    let mut shift = 1usize;
    let mut last_disc = Rational::one();

    for n in 0..s.len() {
        let mut disc = s[n].clone();
        for i in 1..=len {
            if let Some(ci) = c.get(i) {
                disc += ci * &s[n - i];
            }
        }
        if disc.is_zero() {
            shift += 1;
            continue;
        }
        let coef = &disc / &last_disc;
        let previous = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, Rational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            let v = &coef * bi;
            c[i + shift] -= v;
        }
        if 2 * len <= n {
            len = n + 1 - len;
            b = previous;
            last_disc = disc;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    c.resize(len + 1, Rational::zero());
    c
}

/// Integer polynomial evaluated by Horner's rule; coefficients are given
/// highest degree first.
pub fn eval_poly(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs.iter().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn derivative(coeffs: &[BigInt]) -> Vec<BigInt> {
    let deg = coeffs.len() - 1;
    coeffs[..deg]
        .iter()
        .enumerate()
        .map(|(i, c)| c * BigInt::from(deg - i))
        .collect()
}

/// Largest integer root of a monic integer polynomial (highest degree
/// first), if the polynomial's largest real root is an integer.
///
/// Integer Newton iteration from the Cauchy bound: for real-rooted
/// polynomials the iterates decrease monotonically and never pass below the
/// largest root, so the loop either lands on it exactly or detects that the
/// polynomial does not have an integer largest root.
pub fn largest_integer_root(coeffs: &[BigInt]) -> Option<BigInt> {
    if coeffs.len() < 2 {
        return None;
    }
    let bound = coeffs[1..]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default()
        + BigInt::one();
    let deriv = derivative(coeffs);
    let mut x = bound;
    // Far above the roots each step shrinks x by roughly a factor (1 - 1/deg);
    // the cap only trips for polynomials that are not real-rooted.
    for _ in 0..MAX_NEWTON_STEPS {
        let p = eval_poly(coeffs, &x);
        if p.is_zero() {
            return Some(x);
        }
        if p.is_negative() {
            return None;
        }
        let dp = eval_poly(&deriv, &x);
        if !dp.is_positive() {
            return None;
        }
        let step = p.div_ceil(&dp);
        x -= step;
    }
    None
}

const MAX_NEWTON_STEPS: usize = 100_000;

/// Divides a monic polynomial by `(x - root)`, assuming exact divisibility.
pub fn deflate(coeffs: &[BigInt], root: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(coeffs.len() - 1);
    let mut acc = BigInt::zero();
    for c in &coeffs[..coeffs.len() - 1] {
        acc = acc * root + c;
        out.push(acc.clone());
    }
    out
}

/// All roots of a monic integer polynomial, provided every root is an
/// integer; roots are returned ascending.
pub fn integer_roots(coeffs: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut poly = coeffs.to_vec();
    let mut roots = Vec::new();
    while poly.len() > 1 {
        let r = largest_integer_root(&poly)?;
        poly = deflate(&poly, &r);
        roots.push(r);
    }
    roots.reverse();
    Some(roots)
}

/// Solves `Σ_j x_j · nodes_j^i = rhs_i` for `i = 0..n`, with distinct nodes.
#[allow(clippy::needless_range_loop)]
pub fn solve_vandermonde(nodes: &[BigInt], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = nodes.len();
    assert_eq!(rhs.len(), n);
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = nodes
                .iter()
                .map(|m| Rational::from(num_traits::pow(m.clone(), i)))
                .collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for v in rows[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r == col || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for k in col..=n {
                let v = &factor * &rows[col][k];
                rows[r][k] -= v;
            }
        }
    }
    Some(rows.into_iter().map(|row| row[n].clone()).collect())
}
