use serde::{Deserialize, Serialize};

use crate::cfinite::{oracle_eventual_compare, EventualOrder, RootedProblem};
use crate::scalar::{qc, qc_int, QComplex};

use super::rat;

/// A pair `(f, g)` with its exact eventual-order label.
#[derive(Clone, Debug)]
pub struct Pair {
    pub f: RootedProblem,
    pub g: RootedProblem,
    pub label: EventualOrder,
}

impl Pair {
    /// Labels the pair with the oracle; panics if the oracle cannot decide it.
    pub fn labelled(f: RootedProblem, g: RootedProblem) -> Self {
        let label = oracle_eventual_compare(&f, &g).expect("family members are oracle-decidable");
        Pair { f, g, label }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryKind {
    /// `e^t + e^-t` against `e^t`.
    SharedDominant,
    /// `e^t` written with roots `{1, 2}` against `e^t` with root `{1}`.
    IdenticallyEqual,
    /// `e^{-t/2}` written with roots `{i, -i, -1/2}` against zero.
    ZeroComplex,
}

impl BoundaryKind {
    pub const ALL: [BoundaryKind; 3] = [
        BoundaryKind::SharedDominant,
        BoundaryKind::IdenticallyEqual,
        BoundaryKind::ZeroComplex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundaryKind::SharedDominant => "shared-dominant",
            BoundaryKind::IdenticallyEqual => "identically-equal",
            BoundaryKind::ZeroComplex => "zero-complex",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// A boundary instance with one perturbation of size `2^-k` on each side of it.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub k: u32,
    pub boundary: Pair,
    /// Perturbation labelled `f >= g` eventually.
    pub yes: Pair,
    /// Perturbation labelled not `f >= g` eventually.
    pub no: Pair,
}

#[derive(Clone, Copy, Debug)]
pub struct InstanceFamily {
    pub kind: BoundaryKind,
}

pub fn make_boundary_family(kind: BoundaryKind) -> InstanceFamily {
    InstanceFamily { kind }
}

fn exp_term(root: QComplex, coeffs: Vec<QComplex>) -> (QComplex, Vec<QComplex>) {
    (root, coeffs)
}

fn cosh_like() -> RootedProblem {
    RootedProblem::new(vec![qc_int(1, 0), qc_int(-1, 0)], vec![qc_int(2, 0), qc_int(0, 0)])
}

fn single(root: QComplex, init: QComplex) -> RootedProblem {
    RootedProblem::new(vec![root], vec![init])
}

impl InstanceFamily {
    pub fn member(&self, k: u32) -> FamilyMember {
        let h = rat(1, 1) / num_rational::BigRational::from_integer(num_bigint::BigInt::from(1u8) << k);
        let zero = rat(0, 1);
        let one = rat(1, 1);
        let (boundary, yes, no) = match self.kind {
            BoundaryKind::SharedDominant => {
                let g = |r: num_rational::BigRational| single(qc(r, zero.clone()), qc_int(1, 0));
                (
                    Pair::labelled(cosh_like(), g(one.clone())),
                    Pair::labelled(cosh_like(), g(&one - &h)),
                    Pair::labelled(cosh_like(), g(&one + &h)),
                )
            }
            BoundaryKind::IdenticallyEqual => {
                let f = |u1: num_rational::BigRational| {
                    RootedProblem::new(vec![qc_int(1, 0), qc_int(2, 0)], vec![qc_int(1, 0), qc(u1, zero.clone())])
                };
                let g = single(qc_int(1, 0), qc_int(1, 0));
                (
                    Pair::labelled(f(one.clone()), g.clone()),
                    Pair::labelled(f(&one + &h), g.clone()),
                    Pair::labelled(f(&one - &h), g),
                )
            }
            BoundaryKind::ZeroComplex => {
                let f = |a: num_rational::BigRational, b: num_rational::BigRational| {
                    RootedProblem::from_terms(&[
                        exp_term(qc_int(0, 1), vec![qc(b.clone(), zero.clone())]),
                        exp_term(qc_int(0, -1), vec![qc(b, zero.clone())]),
                        exp_term(qc(rat(-1, 2), zero.clone()), vec![qc(a, zero.clone())]),
                    ])
                };
                let half_h = &h / rat(2, 1);
                (
                    Pair::labelled(f(one.clone(), zero.clone()), RootedProblem::zero()),
                    Pair::labelled(f(&one + &h, zero.clone()), RootedProblem::zero()),
                    Pair::labelled(f(one.clone(), half_h), RootedProblem::zero()),
                )
            }
        };
        assert!(yes.label.holds() && !no.label.holds(), "perturbations straddle the boundary");
        FamilyMember { k, boundary, yes, no }
    }
}
