use super::tableau::QTableau;
use crate::scalar::{binomial, factorial, Scalar};

/// The `n x (n-1)` echelon matrix whose row-deleted determinants are the
/// coefficients `A_{n,m1,j}`. Entry `(p, c)` (1-based) is a polynomial of degree
/// `p - c`, so the matrix vanishes above the diagonal and has a unit diagonal.
///
/// `lambda` is `(lambda_1, t_1, .., t_{n-m1})`: the distinguished root followed
/// by the trailing simple roots.
pub fn echelon_matrix<T: Scalar>(n: usize, m1: usize, lambda: &[T]) -> Vec<Vec<T>> {
    assert!(m1 >= 1 && m1 <= n, "need 1 <= m1 <= n");
    assert_eq!(lambda.len(), n - m1 + 1, "lambda must hold lambda_1 and the trailing roots");
    let zero = lambda[0].zero_like();
    let mut w = vec![vec![zero.clone(); n.saturating_sub(1)]; n];
    if n == 1 {
        return w;
    }
    if m1 == 1 {
        let tab = QTableau::build(&lambda[1..], n, 0);
        for (p, row) in w.iter_mut().enumerate().map(|(k, r)| (k + 1, r)) {
            for c in 1..n {
                row[c - 1] = tab.get(c, p as i64 - c as i64, 0);
            }
        }
        return w;
    }
    let tab = QTableau::build(lambda, n, m1 - 2);
    let mut powers = vec![lambda[0].one_like()];
    for k in 1..n {
        let next = powers[k - 1].mul(&lambda[0]);
        powers.push(next);
    }
    for p in 1..=n {
        for c in 1..m1 {
            if p >= c {
                let b = lambda[0].from_bigint_like(&binomial((p - 1) as u64, (c - 1) as u64));
                w[p - 1][c - 1] = b.mul(&powers[p - c]);
            }
        }
        for c in m1..n {
            w[p - 1][c - 1] = tab.get(c - m1 + 2, p as i64 - c as i64, m1 - 2);
        }
    }
    w
}

/// Determinant of a lower-Hessenberg matrix with unit superdiagonal,
/// by the division-free expansion along the last row.
fn unit_hessenberg_det<T: Scalar>(h: &[Vec<T>], one: &T) -> T {
    let k = h.len();
    let mut dets: Vec<T> = vec![one.clone()];
    for r in 1..=k {
        let mut acc = one.zero_like();
        for i in 1..=r {
            let term = h[r - 1][i - 1].mul(&dets[i - 1]);
            if (r - i) % 2 == 0 {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
        }
        dets.push(acc);
    }
    dets[k].clone()
}

/// `A_{n,m1,j}` for `j = 1..n`: determinants of the echelon matrix with row `j` removed.
pub fn a_coefficients<T: Scalar>(n: usize, m1: usize, lambda: &[T]) -> Vec<T> {
    let w = echelon_matrix(n, m1, lambda);
    let one = lambda[0].one_like();
    (1..=n)
        .map(|j| {
            // rows j+1..n, columns j..n-1 form a unit lower-Hessenberg block
            let h: Vec<Vec<T>> = (j + 1..=n)
                .map(|p| (j..n).map(|c| w[p - 1][c - 1].clone()).collect())
                .collect();
            unit_hessenberg_det(&h, &one)
        })
        .collect()
}

/// Determinant of the modified Vandermonde matrix of signature `(m1, 1, .., 1)`
/// with row `j` and column `m1` deleted.
pub fn minor_det<T: Scalar>(n: usize, m1: usize, j: usize, lambda: &[T]) -> T {
    assert!(j >= 1 && j <= n);
    let a = a_coefficients(n, m1, lambda);
    let one = lambda[0].one_like();
    let mut scale = one.clone();
    for k in 0..m1.saturating_sub(1) {
        scale = scale.mul(&one.from_bigint_like(&factorial(k as u64)));
    }
    // det V_{m1-1,1,..,1} = prod_t (t - l1)^(m1-1) * prod_{s<t} (t - s)
    let l1 = &lambda[0];
    let trailing = &lambda[1..];
    for (idx, t) in trailing.iter().enumerate() {
        let d = t.sub(l1);
        for _ in 0..m1 - 1 {
            scale = scale.mul(&d);
        }
        for s in &trailing[..idx] {
            scale = scale.mul(&t.sub(s));
        }
    }
    scale.mul(&a[j - 1])
}
