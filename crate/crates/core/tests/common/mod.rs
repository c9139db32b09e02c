#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

pub type Q = BigRational;
pub type QC = Complex<BigRational>;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qc(re: Q, im: Q) -> QC {
    QC::new(re, im)
}

pub fn qcr(re: Q) -> QC {
    QC::new(re, Q::zero())
}

/// Small random rational with numerator in [-lim, lim] and denominator in 1..=den.
pub fn rand_q<R: Rng>(rng: &mut R, lim: i64, den: i64) -> Q {
    q(rng.gen_range(-lim..=lim), rng.gen_range(1..=den))
}

/// Distinct random rationals.
pub fn distinct_q<R: Rng>(rng: &mut R, k: usize, lim: i64, den: i64) -> Vec<Q> {
    let mut out: Vec<Q> = Vec::new();
    while out.len() < k {
        let x = rand_q(rng, lim, den);
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

/// Determinant by cofactor expansion along the first row.
pub fn det_cofactor<T>(m: &[Vec<T>]) -> T
where
    T: Clone + Zero + One + std::ops::Sub<Output = T> + std::ops::Mul<Output = T>,
{
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = T::zero();
    for c in 0..n {
        let sub: Vec<Vec<T>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != c)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = m[0][c].clone() * det_cofactor(&sub);
        acc = if c % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Solve `a x = b` exactly by Gaussian elimination with nonzero pivots.
pub fn gauss_solve(a: &[Vec<QC>], b: &[QC]) -> Option<Vec<QC>> {
    let n = a.len();
    let mut m: Vec<Vec<QC>> = a
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = QC::one() / m[col][col].clone();
        for k in col..=n {
            m[col][k] = m[col][k].clone() * inv.clone();
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in col..=n {
                    let t = m[col][k].clone() * f.clone();
                    m[r][k] = m[r][k].clone() - t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Remove row `r` and column `c` (0-based).
pub fn delete_row_col<T: Clone>(m: &[Vec<T>], r: usize, c: usize) -> Vec<Vec<T>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != c)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

/// Sequence terms `u_0..u_{len-1}` of the recurrence with monic characteristic
/// coefficients `c` (low order first), computed directly.
pub fn recurrence_terms(c: &[QC], u: &[QC], len: usize) -> Vec<QC> {
    let n = c.len();
    let mut out = u.to_vec();
    while out.len() < len {
        let j = out.len();
        let mut acc = QC::zero();
        for i in 0..n {
            acc = acc - c[i].clone() * out[j - n + i].clone();
        }
        out.push(acc);
    }
    out.truncate(len);
    out
}

/// Monic coefficients of `prod (z - r)`, expanded directly.
pub fn poly_from_roots(roots: &[QC]) -> Vec<QC> {
    // full coefficient vector, high degree last
    let mut p = vec![QC::one()];
    for r in roots {
        let mut next = vec![QC::zero(); p.len() + 1];
        for (k, a) in p.iter().enumerate() {
            next[k + 1] = next[k + 1].clone() + a.clone();
            next[k] = next[k].clone() - a.clone() * r.clone();
        }
        p = next;
    }
    p.pop();
    p
}
