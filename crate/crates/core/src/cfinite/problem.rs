use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::CFiniteError;
use crate::poly::{from_roots_exact, CharPoly};
use crate::realnum::{ComplexBall, ComplexName, RealName};
use crate::scalar::{qc_to_ball, QComplex, Scalar};
use crate::vandermonde::{build_vandermonde, Signature};

/// `f^(n) = -(c_{n-1} f^(n-1) + ... + c_0 f)` with `f^(k)(0) = u_k`.
///
/// Equivalently the recurrence `u_{j+n} = -(c_{n-1} u_{j+n-1} + ... + c_0 u_j)`
/// on the derivative values at zero. Order zero is the constant zero function.
#[derive(Clone, Debug)]
pub struct CauchyProblem {
    coeffs: Vec<ComplexName>,
    init: Vec<ComplexName>,
}

impl CauchyProblem {
    pub fn new(coeffs: Vec<ComplexName>, init: Vec<ComplexName>) -> Result<Self, CFiniteError> {
        if coeffs.len() != init.len() {
            return Err(CFiniteError::Dimension(format!(
                "{} coefficients but {} initial values",
                coeffs.len(),
                init.len()
            )));
        }
        Ok(CauchyProblem { coeffs, init })
    }

    pub fn zero() -> Self {
        CauchyProblem {
            coeffs: vec![],
            init: vec![],
        }
    }

    pub fn from_real_names(coeffs: Vec<RealName>, init: Vec<RealName>) -> Result<Self, CFiniteError> {
        Self::new(
            coeffs.into_iter().map(ComplexName::real).collect(),
            init.into_iter().map(ComplexName::real).collect(),
        )
    }

    pub fn from_rationals(coeffs: &[BigRational], init: &[BigRational]) -> Result<Self, CFiniteError> {
        Self::from_real_names(
            coeffs.iter().cloned().map(RealName::rational).collect(),
            init.iter().cloned().map(RealName::rational).collect(),
        )
    }

    pub fn from_exact(coeffs: &[QComplex], init: &[QComplex]) -> Result<Self, CFiniteError> {
        let name = |z: &QComplex| {
            if z.im.is_zero() {
                ComplexName::real(RealName::rational(z.re.clone()))
            } else {
                ComplexName::rational(z.re.clone(), z.im.clone())
            }
        };
        Self::new(coeffs.iter().map(name).collect(), init.iter().map(name).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[ComplexName] {
        &self.coeffs
    }

    pub fn init(&self) -> &[ComplexName] {
        &self.init
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().chain(&self.init).all(|z| z.is_real())
    }

    pub fn char_poly(&self, prec: i64) -> CharPoly {
        CharPoly::new(self.coeffs.iter().map(|c| c.to_ball(prec)).collect())
    }

    pub fn init_balls(&self, prec: i64) -> Vec<ComplexBall> {
        self.init.iter().map(|u| u.to_ball(prec)).collect()
    }

    pub fn exact_coeffs(&self) -> Option<Vec<QComplex>> {
        self.coeffs
            .iter()
            .map(|z| z.exact().map(|(a, b)| QComplex::new(a, b)))
            .collect()
    }

    pub fn exact_init(&self) -> Option<Vec<QComplex>> {
        self.init
            .iter()
            .map(|z| z.exact().map(|(a, b)| QComplex::new(a, b)))
            .collect()
    }

    /// Same values, answered through adversarially shifted oracles.
    pub fn adversarial(&self) -> Self {
        CauchyProblem {
            coeffs: self.coeffs.iter().map(|z| z.adversarial()).collect(),
            init: self.init.iter().map(|z| z.adversarial()).collect(),
        }
    }
}

/// A problem whose characteristic roots are known exactly as Gaussian rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct RootedProblem {
    /// Roots listed with multiplicity.
    pub roots: Vec<QComplex>,
    pub init: Vec<QComplex>,
}

/// An exponential polynomial with exact data: `(root, [a_0, .., a_{m-1}])` per distinct root.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactExpPoly {
    pub terms: Vec<(QComplex, Vec<QComplex>)>,
}

impl RootedProblem {
    pub fn new(roots: Vec<QComplex>, init: Vec<QComplex>) -> Self {
        assert_eq!(roots.len(), init.len(), "one initial value per root");
        RootedProblem { roots, init }
    }

    pub fn zero() -> Self {
        RootedProblem {
            roots: vec![],
            init: vec![],
        }
    }

    /// The problem solved by `sum_j sum_k a_{j,k} t^k e^{lambda_j t}`, with the
    /// multiplicity of each root equal to the length of its coefficient list.
    pub fn from_terms(terms: &[(QComplex, Vec<QComplex>)]) -> Self {
        let mut roots = Vec::new();
        for (l, a) in terms {
            assert!(!a.is_empty(), "empty coefficient list");
            for _ in 0..a.len() {
                roots.push(l.clone());
            }
        }
        if roots.is_empty() {
            return Self::zero();
        }
        let sig = Signature::new(terms.iter().map(|(_, a)| a.len()).collect());
        let points: Vec<QComplex> = terms.iter().map(|(l, _)| l.clone()).collect();
        let v = build_vandermonde(&sig, &points, true);
        let a: Vec<QComplex> = terms.iter().flat_map(|(_, a)| a.iter().cloned()).collect();
        let init = v
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&a)
                    .fold(QComplex::zero(), |acc, (x, y)| acc + x * y)
            })
            .collect();
        RootedProblem { roots, init }
    }

    pub fn order(&self) -> usize {
        self.roots.len()
    }

    /// Distinct roots with multiplicities, in order of first appearance.
    pub fn distinct_roots(&self) -> Vec<(QComplex, usize)> {
        let mut out: Vec<(QComplex, usize)> = Vec::new();
        for r in &self.roots {
            match out.iter_mut().find(|(x, _)| x == r) {
                Some(e) => e.1 += 1,
                None => out.push((r.clone(), 1)),
            }
        }
        out
    }

    pub fn coeffs(&self) -> Vec<QComplex> {
        from_roots_exact(&self.roots)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs().iter().chain(&self.init).all(|z| z.im.is_zero())
    }

    pub fn to_cauchy(&self) -> CauchyProblem {
        CauchyProblem::from_exact(&self.coeffs(), &self.init).expect("consistent lengths")
    }

    /// Exact sequence terms `u_0..u_{len-1}`.
    pub fn prefix(&self, len: usize) -> Vec<QComplex> {
        recurrence_exact(&self.coeffs(), &self.init, len)
    }

    /// Root balls at precision `prec`, with multiplicity.
    pub fn root_balls(&self, prec: i64) -> Vec<ComplexBall> {
        self.roots.iter().map(|r| qc_to_ball(r, prec)).collect()
    }

    /// Exact coefficients of the exponential-polynomial solution.
    pub fn solve(&self) -> ExactExpPoly {
        let distinct = self.distinct_roots();
        if distinct.is_empty() {
            return ExactExpPoly { terms: vec![] };
        }
        let sig = Signature::new(distinct.iter().map(|(_, m)| *m).collect());
        let points: Vec<QComplex> = distinct.iter().map(|(l, _)| l.clone()).collect();
        let v = build_vandermonde(&sig, &points, true);
        let a = solve_linear_exact(&v, &self.init).expect("confluent Vandermonde matrices are invertible");
        let mut terms = Vec::new();
        let mut k = 0;
        for (l, m) in distinct {
            terms.push((l, a[k..k + m].to_vec()));
            k += m;
        }
        ExactExpPoly { terms }
    }
}

/// Exact recurrence extension with monic coefficients `c` (low order first).
pub fn recurrence_exact(c: &[QComplex], u: &[QComplex], len: usize) -> Vec<QComplex> {
    let n = c.len();
    let mut out: Vec<QComplex> = u.iter().take(len).cloned().collect();
    while out.len() < len {
        let j = out.len();
        let mut acc = QComplex::zero();
        for i in 0..n {
            acc -= &c[i] * &out[j - n + i];
        }
        out.push(acc);
    }
    out
}

/// Gaussian elimination over Gaussian rationals; `None` if singular.
pub fn solve_linear_exact(a: &[Vec<QComplex>], b: &[QComplex]) -> Option<Vec<QComplex>> {
    let n = a.len();
    let mut m: Vec<Vec<QComplex>> = a
        .iter()
        .zip(b)
        .map(|(row, x)| row.iter().cloned().chain(std::iter::once(x.clone())).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = QComplex::one() / &m[col][col];
        for k in col..=n {
            m[col][k] = &m[col][k] * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in col..=n {
                    let t = &m[col][k] * &f;
                    m[r][k] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

impl ExactExpPoly {
    /// Termwise difference, merging equal roots.
    pub fn sub(&self, o: &ExactExpPoly) -> ExactExpPoly {
        let mut terms = self.terms.clone();
        for (l, b) in &o.terms {
            match terms.iter_mut().find(|(x, _)| x == l) {
                Some((_, a)) => {
                    if a.len() < b.len() {
                        a.resize(b.len(), QComplex::zero());
                    }
                    for (k, bk) in b.iter().enumerate() {
                        a[k] = &a[k] - bk;
                    }
                }
                None => terms.push((l.clone(), b.iter().map(|x| x.neg()).collect())),
            }
        }
        ExactExpPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|(_, a)| a.iter().all(|x| x.is_zero()))
    }
}
