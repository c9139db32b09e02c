use num_traits::Zero;

use crate::scalar::{qc_int, QComplex};

/// Residuals `u_k + c_{n-1} u_{k-1} + .. + c_0 u_{k-n}` for `k = n..len-1`.
pub fn recurrence_defect(c: &[QComplex], u: &[QComplex]) -> Vec<QComplex> {
    let n = c.len();
    (n..u.len())
        .map(|k| {
            let mut acc = u[k].clone();
            for i in 0..n {
                acc += &c[i] * &u[k - n + i];
            }
            acc
        })
        .collect()
}

/// Monic coefficients of `(z - alpha) chi_c`.
pub fn add_root(c: &[QComplex], alpha: &QComplex) -> Vec<QComplex> {
    let n = c.len();
    let coef = |i: usize| if i == n { qc_int(1, 0) } else { c[i].clone() };
    (0..=n)
        .map(|i| {
            let shifted = if i >= 1 { coef(i - 1) } else { QComplex::zero() };
            shifted - coef(i) * alpha
        })
        .collect()
}

/// Monic coefficients of `chi_c / (z - alpha)`, or `None` if `alpha` is not a root.
pub fn remove_root(c: &[QComplex], alpha: &QComplex) -> Option<Vec<QComplex>> {
    let n = c.len();
    if n == 0 {
        return None;
    }
    // synthetic division from the top
    let mut q = vec![QComplex::zero(); n];
    let mut carry = qc_int(1, 0);
    for i in (0..n).rev() {
        q[i] = carry.clone();
        carry = &c[i] + &carry * alpha;
    }
    if !carry.is_zero() {
        return None;
    }
    // q holds the quotient with leading 1 at q[n-1]
    q.pop();
    Some(q)
}
