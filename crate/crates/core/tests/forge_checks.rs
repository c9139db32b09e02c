use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ultineq_core::cfinite::RootedProblem;
use ultineq_core::forge::{forge_corpus, forge_equal, perturb_to_simpler, prefixes_equal};
use ultineq_core::scalar::{qc_int, qc_ratio};
use ultineq_core::{Dyadic, ForgeError, QComplex, Round};

fn small(num: i64, den_pow10: u32) -> QComplex {
    QComplex::new(
        BigRational::new(BigInt::from(num), BigInt::from(10).pow(den_pow10)),
        BigRational::from_integer(0.into()),
    )
}

fn dy(num: i64, den: i64) -> Dyadic {
    Dyadic::from_rational(&BigRational::new(num.into(), den.into()), 128, Round::Down)
}

fn et_order(n: usize) -> RootedProblem {
    // e^t written with roots 1..=n
    let roots: Vec<QComplex> = (1..=n as i64).map(|r| qc_int(r, 0)).collect();
    RootedProblem::new(roots, vec![qc_int(1, 0); n])
}

#[test]
fn already_equal_pair_is_left_alone() {
    let (p, q) = (et_order(2), et_order(1));
    let out = forge_equal(&p, &q, &dy(1, 1000)).unwrap();
    assert_eq!(out.p, p);
    assert_eq!(out.q, q);
    assert!(out.dist_p.is_zero() && out.dist_q.is_zero());
}

#[test]
fn near_equal_roots_are_merged() {
    let shifted = qc_int(2, 0) + small(1, 6);
    let jitter = small(1, 7);
    let p = RootedProblem::new(vec![qc_int(1, 0), shifted], vec![qc_int(1, 0), qc_int(1, 0) + jitter]);
    let q = et_order(2);
    let eps = dy(1, 1 << 16);
    let out = forge_equal(&p, &q, &eps).unwrap();
    assert!(prefixes_equal(&out.p, &out.q, 4));
    assert!(out.p.solve().sub(&out.q.solve()).is_zero());
    assert!(out.dist_p <= out.budget.bound && out.dist_q <= out.budget.bound);
    assert!(out.dist_q.is_positive());
}

#[test]
fn large_defect_respects_bound_or_is_rejected() {
    let p = RootedProblem::new(vec![qc_int(3, 0), qc_int(-2, 0)], vec![qc_int(5, 0), qc_int(-1, 0)]);
    let q = RootedProblem::new(vec![qc_ratio(1, 2)], vec![qc_int(4, 0)]);
    match forge_equal(&p, &q, &dy(1, 2)) {
        Err(ForgeError::HypothesisViolated(_)) => {}
        Ok(out) => {
            assert!(prefixes_equal(&out.p, &out.q, 3));
            assert!(out.dist_p <= out.budget.bound && out.dist_q <= out.budget.bound);
        }
        Err(e) => panic!("{e}"),
    }
    assert!(matches!(forge_equal(&p, &q, &Dyadic::one()), Err(ForgeError::HypothesisViolated(_)) | Err(ForgeError::BadEpsilon)));
}

#[test]
fn corpus_forges_within_bound() {
    for (i, case) in forge_corpus(7, 60, 24).iter().enumerate() {
        let out = forge_equal(&case.p, &case.q, &case.eps).unwrap();
        let len = out.p.order() + out.q.order();
        assert!(prefixes_equal(&out.p, &out.q, len), "case {i}");
        assert!(out.dist_p <= out.budget.bound && out.dist_q <= out.budget.bound, "case {i}");
    }
}

#[test]
fn simpler_with_identical_factor() {
    // e^{2t} written with roots {1, 2}
    let p = RootedProblem::from_terms(&[(qc_int(1, 0), vec![qc_int(0, 0)]), (qc_int(2, 0), vec![qc_int(1, 0)])]);
    let s = perturb_to_simpler(&p, &[qc_int(2, 0)], &[qc_int(1, 0)], &dy(1, 1000)).unwrap();
    assert_eq!(s.problem, p);
    assert!(s.distance.is_zero());
}

#[test]
fn simpler_with_moved_root() {
    let p = RootedProblem::from_terms(&[(qc_int(1, 0), vec![qc_int(0, 0)]), (qc_int(2, 0), vec![qc_int(1, 0)])]);
    let target = qc_int(2, 0) + small(1, 8);
    let eps = dy(1, 1 << 20);
    let s = perturb_to_simpler(&p, &[target.clone()], &[qc_int(1, 0)], &eps).unwrap();
    let simple = RootedProblem::new(vec![target], vec![qc_int(1, 0)]);
    assert!(s.problem.solve().sub(&simple.solve()).is_zero());
    assert!(s.distance <= s.envelope);
    assert!(s.distance.is_positive());
}

#[test]
fn simpler_rejects_unsatisfied_recurrence() {
    // e^t + e^{2t} does not follow the order-1 recurrence of e^{2t}
    let p = RootedProblem::from_terms(&[(qc_int(1, 0), vec![qc_int(1, 0)]), (qc_int(2, 0), vec![qc_int(1, 0)])]);
    let r = perturb_to_simpler(&p, &[qc_int(2, 0)], &[qc_int(2, 0)], &dy(1, 8));
    assert!(matches!(r, Err(ForgeError::HypothesisViolated(_))));
    let r = perturb_to_simpler(&p, &[qc_int(5, 0)], &[qc_int(2, 0)], &dy(1, 8));
    assert!(matches!(r, Err(ForgeError::HypothesisViolated(_))));
}

#[test]
fn simpler_envelope_on_random_factors() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let tiny = |rng: &mut ChaCha8Rng| small(rng.gen_range(-9..=9), 9);
    for i in 0..40 {
        let n = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=n);
        let mut roots: Vec<QComplex> = Vec::new();
        while roots.len() < n {
            let r = qc_ratio(rng.gen_range(-12..=12), 4);
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        let terms: Vec<(QComplex, Vec<QComplex>)> = roots
            .iter()
            .enumerate()
            .map(|(j, r)| (r.clone(), vec![if j < k { qc_ratio(rng.gen_range(-8..=8), 3) } else { qc_int(0, 0) }]))
            .collect();
        let exact = RootedProblem::from_terms(&terms);
        let init: Vec<QComplex> = exact.init.iter().map(|x| x + &tiny(&mut rng)).collect();
        let p = RootedProblem::new(exact.roots.clone(), init);
        let target: Vec<QComplex> = roots[..k].iter().map(|r| r + &tiny(&mut rng)).collect();
        let w: Vec<QComplex> = p.prefix(k).iter().map(|x| x + &tiny(&mut rng)).collect();
        let s = perturb_to_simpler(&p, &target, &w, &dy(1, 1 << 16)).unwrap();
        let simple = RootedProblem::new(target.clone(), w.clone());
        assert!(s.problem.solve().sub(&simple.solve()).is_zero(), "case {i}");
        assert!(s.distance <= s.envelope, "case {i}");
    }
}
