use crate::scalar::{binomial, Scalar};

/// `Q[l][m][i]` for the prefixes `X_1..X_l` of a fixed point.
///
/// `Q_{l,m,i}(X_1..X_l) = sum_{k_1+..+k_l = m} binom(k_1+i, i) X_1^k_1 ... X_l^k_l`.
#[derive(Clone, Debug)]
pub struct QTableau<T> {
    values: Vec<Vec<Vec<T>>>,
    zero: T,
}

impl<T: Scalar> QTableau<T> {
    /// Tableau for `l = 1..point.len()`, `m = 0..=max_m`, `i = 0..=max_i`.
    pub fn build(point: &[T], max_m: usize, max_i: usize) -> Self {
        assert!(!point.is_empty(), "tableau needs at least one variable");
        let zero = point[0].zero_like();
        let mut values: Vec<Vec<Vec<T>>> = Vec::with_capacity(point.len());
        // l = 1: binom(m+i, i) X_1^m
        let mut first = Vec::with_capacity(max_m + 1);
        let mut power = point[0].one_like();
        for m in 0..=max_m {
            let row: Vec<T> = (0..=max_i)
                .map(|i| {
                    let b = point[0].from_bigint_like(&binomial((m + i) as u64, i as u64));
                    b.mul(&power)
                })
                .collect();
            first.push(row);
            power = power.mul(&point[0]);
        }
        values.push(first);
        // Q_{l+1,m,i} = Q_{l,m,i} + X_{l+1} Q_{l+1,m-1,i}
        for x in &point[1..] {
            let prev = values.last().unwrap();
            let mut cur: Vec<Vec<T>> = Vec::with_capacity(max_m + 1);
            for m in 0..=max_m {
                let row: Vec<T> = (0..=max_i)
                    .map(|i| {
                        if m == 0 {
                            prev[0][i].clone()
                        } else {
                            prev[m][i].add(&x.mul(&cur[m - 1][i]))
                        }
                    })
                    .collect();
                cur.push(row);
            }
            values.push(cur);
        }
        QTableau { values, zero }
    }

    /// `Q_{l,m,i}` on the first `l` variables; zero for negative `m`.
    pub fn get(&self, l: usize, m: i64, i: usize) -> T {
        if m < 0 {
            return self.zero.clone();
        }
        self.values[l - 1][m as usize][i].clone()
    }
}

/// `Q_{l,m,i}(point)` where `point` has exactly `l` entries.
pub fn q_eval<T: Scalar>(l: usize, m: i64, i: usize, point: &[T]) -> T {
    assert_eq!(point.len(), l, "point must have l entries");
    if m < 0 {
        return point[0].zero_like();
    }
    QTableau::build(point, m as usize, i).get(l, m, i)
}

/// Both shift identities of the Q family at one exact point.
///
/// `xs` holds `X_1..X_{n-1}` followed by `Y, Z` (so `n + 1` entries); the second
/// identity reads the same vector as `X_1..X_{n+1}`.
pub fn check_q_recursions<T: Scalar + PartialEq>(xs: &[T], n: usize, m: i64, i: usize) -> bool {
    assert_eq!(xs.len(), n + 1);
    if n == 0 || m < 1 {
        return true;
    }
    let (y, z) = (&xs[n - 1], &xs[n]);
    let mut with_y: Vec<T> = xs[..n - 1].to_vec();
    with_y.push(y.clone());
    let mut with_z: Vec<T> = xs[..n - 1].to_vec();
    with_z.push(z.clone());
    let lhs1 = q_eval(n, m, 0, &with_y).sub(&q_eval(n, m, 0, &with_z));
    let rhs1 = y.sub(z).mul(&q_eval(n + 1, m - 1, 0, xs));
    let lhs2 = q_eval(n + 1, m, i, xs).sub(&q_eval(n, m, i + 1, &xs[..n]));
    let rhs2 = xs[n].sub(&xs[0]).mul(&q_eval(n + 1, m - 1, i + 1, xs));
    lhs1 == rhs1 && lhs2 == rhs2
}
