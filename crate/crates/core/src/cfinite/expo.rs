use serde::Serialize;

use crate::error::CFiniteError;
use crate::poly::RootList;
use crate::realnum::{BallSummary, ComplexBall, Dyadic};
use crate::vandermonde::{build_vandermonde, Signature};

use super::CauchyProblem;

/// One block `(a_0 + a_1 t + .. + a_{m-1} t^{m-1}) e^{root t}`.
#[derive(Clone, Debug)]
pub struct ExpTerm {
    pub root: ComplexBall,
    pub coeffs: Vec<ComplexBall>,
}

impl ExpTerm {
    pub fn multiplicity(&self) -> usize {
        self.coeffs.len()
    }
}

#[derive(Clone, Debug, Default)]
pub struct ExponentialPolynomial {
    pub terms: Vec<ExpTerm>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TermSummary {
    pub root: BallSummary,
    pub coeffs: Vec<BallSummary>,
}

impl ExponentialPolynomial {
    pub fn order(&self) -> usize {
        self.terms.iter().map(|t| t.multiplicity()).sum()
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.terms.iter().map(|t| t.multiplicity()).collect())
    }

    /// `d/dt`, keeping the block structure.
    pub fn derivative(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let m = t.coeffs.len();
                let coeffs = (0..m)
                    .map(|k| {
                        let mut v = t.coeffs[k].mul(&t.root);
                        if k + 1 < m {
                            v = v.add(&t.coeffs[k + 1].mul_int(k as i64 + 1));
                        }
                        v
                    })
                    .collect();
                ExpTerm {
                    root: t.root.clone(),
                    coeffs,
                }
            })
            .collect();
        ExponentialPolynomial { terms }
    }

    /// `Ṽ a - u` for the given initial values.
    pub fn residual(&self, u: &[ComplexBall]) -> Vec<ComplexBall> {
        if self.terms.is_empty() {
            return u.to_vec();
        }
        let roots: Vec<ComplexBall> = self.terms.iter().map(|t| t.root.clone()).collect();
        let v = build_vandermonde(&self.signature(), &roots, true);
        let a: Vec<&ComplexBall> = self.terms.iter().flat_map(|t| t.coeffs.iter()).collect();
        v.iter()
            .zip(u)
            .map(|(row, uj)| {
                row.iter()
                    .zip(&a)
                    .fold(uj.neg(), |acc, (x, y)| acc.add(&x.mul(y)))
            })
            .collect()
    }

    pub fn summary(&self) -> Vec<TermSummary> {
        self.terms
            .iter()
            .map(|t| TermSummary {
                root: (&t.root).into(),
                coeffs: t.coeffs.iter().map(Into::into).collect(),
            })
            .collect()
    }
}

/// Solve `Ṽ a = u` for the coefficients of the exponential-polynomial solution.
///
/// Balls shared by several indices of `roots` form one block of that
/// multiplicity. Distinct blocks must be disjoint.
pub fn solve_exponential(
    p: &CauchyProblem,
    roots: &RootList,
    m: i64,
) -> Result<ExponentialPolynomial, CFiniteError> {
    if roots.len() != p.order() {
        return Err(CFiniteError::Dimension(format!(
            "{} roots for an order {} problem",
            roots.len(),
            p.order()
        )));
    }
    if p.order() == 0 {
        return Ok(ExponentialPolynomial::default());
    }
    let clusters = roots.clusters();
    let points: Vec<ComplexBall> = clusters
        .iter()
        .map(|g| roots.roots[g[0]].with_prec(m.max(roots.roots[g[0]].prec())))
        .collect();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i].intersects(&points[j]) {
                return Err(CFiniteError::PrecisionExhausted(m));
            }
        }
    }
    let sig = Signature::new(clusters.iter().map(|g| g.len()).collect());
    let v = build_vandermonde(&sig, &points, true);
    let u = p.init_balls(m + 8);
    let a = solve_linear_balls(&v, &u).ok_or(CFiniteError::PrecisionExhausted(m))?;
    let mut terms = Vec::new();
    let mut k = 0;
    for (g, root) in clusters.iter().zip(points) {
        terms.push(ExpTerm {
            root,
            coeffs: a[k..k + g.len()].to_vec(),
        });
        k += g.len();
    }
    Ok(ExponentialPolynomial { terms })
}

/// Gaussian elimination with partial pivoting on balls; `None` when no pivot
/// can be certified nonzero.
pub fn solve_linear_balls(a: &[Vec<ComplexBall>], b: &[ComplexBall]) -> Option<Vec<ComplexBall>> {
    let n = a.len();
    let mut m: Vec<Vec<ComplexBall>> = a
        .iter()
        .zip(b)
        .map(|(row, x)| row.iter().cloned().chain(std::iter::once(x.clone())).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&r, &s| m[r][col].abs_lower().cmp(&m[s][col].abs_lower()))?;
        if !m[piv][col].excludes_zero() {
            return None;
        }
        m.swap(col, piv);
        let inv = m[col][col].inv().ok()?;
        for k in col..=n {
            m[col][k] = m[col][k].mul(&inv);
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col].clone();
                if f.is_exact() && f.contains_zero() {
                    continue;
                }
                for k in col..=n {
                    let t = m[col][k].mul(&f);
                    m[r][k] = m[r][k].sub(&t);
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Ball containing `sum_j sum_k a_{j,k} t^k e^{lambda_j t}`.
pub fn eval_solution(e: &ExponentialPolynomial, t: &Dyadic, m: i64) -> ComplexBall {
    let mag = t.abs().log2_ceil().max(0);
    let wp = m + 16 + 2 * mag + e.order() as i64 * (mag + 2);
    let tb = ComplexBall::real(t.clone(), Dyadic::zero(), wp);
    let mut acc = ComplexBall::zero(wp);
    for term in &e.terms {
        let ex = term.root.with_prec(wp).mul(&tb).exp();
        let mut poly = ComplexBall::zero(wp);
        for a in term.coeffs.iter().rev() {
            poly = poly.mul(&tb).add(&a.with_prec(wp));
        }
        acc = acc.add(&poly.mul(&ex));
    }
    acc.with_prec(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::find_roots;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn r(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn solve(c: &[i64], u: &[i64]) -> ExponentialPolynomial {
        let c: Vec<BigRational> = c.iter().map(|&x| r(x)).collect();
        let u: Vec<BigRational> = u.iter().map(|&x| r(x)).collect();
        let p = CauchyProblem::from_rationals(&c, &u).unwrap();
        let roots = find_roots(&p.char_poly(120), 60).unwrap();
        let e = solve_exponential(&p, &roots, 80).unwrap();
        assert!(e.residual(&p.init_balls(80)).iter().all(|x| x.contains_zero()));
        e
    }

    #[test]
    fn cosh_coefficients() {
        let e = solve(&[-1, 0], &[2, 0]);
        assert_eq!(e.terms.len(), 2);
        for t in &e.terms {
            assert!(t.coeffs[0].contains(&r(1), &BigRational::zero()));
        }
        let v = eval_solution(&e, &Dyadic::zero(), 60);
        assert!(v.contains(&r(2), &r(0)));
    }

    #[test]
    fn double_root() {
        // f'' - 2f' + f = 0, u = (1, 3): (1 + 2t) e^t
        let e = solve(&[1, -2], &[1, 3]);
        assert_eq!(e.terms.len(), 1);
        assert!(e.terms[0].coeffs[0].contains(&r(1), &r(0)));
        assert!(e.terms[0].coeffs[1].contains(&r(2), &r(0)));
        let v = eval_solution(&e, &Dyadic::one(), 50);
        let three_e = 3.0 * std::f64::consts::E;
        assert!((v.re().to_f64() - three_e).abs() < 1e-12);
        assert!(v.radius().to_f64() < 1e-12);
    }

    #[test]
    fn first_order() {
        let e = solve(&[-5], &[7]);
        assert!(e.terms[0].root.contains(&r(5), &r(0)));
        assert!(e.terms[0].coeffs[0].contains(&r(7), &r(0)));
    }

    #[test]
    fn zero_function() {
        let p = CauchyProblem::zero();
        let roots = find_roots(&p.char_poly(40), 20).unwrap();
        let e = solve_exponential(&p, &roots, 40).unwrap();
        assert!(eval_solution(&e, &Dyadic::from_i64(9), 30).contains_zero());
    }

    #[test]
    fn derivatives_hit_initial_values() {
        let e = solve(&[6, -1, -4], &[1, -2, 5]);
        let mut d = e.clone();
        for want in [1, -2, 5] {
            let v = eval_solution(&d, &Dyadic::zero(), 40);
            assert!(v.contains(&r(want), &r(0)), "{v:?} vs {want}");
            d = d.derivative();
        }
    }
}
