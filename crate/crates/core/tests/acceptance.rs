mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ultineq_core::cfinite::{solve_exponential, CauchyProblem, EventualOrder, RootedProblem};
use ultineq_core::decide::{decide_equality, decide_ultimate_inequality, DecideOptions, Outcome};
use ultineq_core::forge::{
    add_root, equality_corpus, forge_corpus, forge_equal, make_boundary_family, prefixes_equal, scaling_family,
    soundness_corpus, BoundaryKind,
};
use ultineq_core::poly::{check_spectral_vs_coefficient_bound, find_roots};
use ultineq_core::vandermonde::{
    a_coefficients, build_vandermonde, check_prop3_identity, check_q_recursions, f_function, minor_det,
    Signature,
};

const IDENTITY_BUDGET: Duration = Duration::from_secs(60);
const CORPUS_BUDGET: Duration = Duration::from_secs(300);
const SCALING_INSTANCE_BUDGET: Duration = Duration::from_secs(10);
const ROBUST_MARGIN: (i64, i64) = (1, 256);
const ROBUST_HALT_PERCENT: usize = 95;
const SOUNDNESS_FUEL: u32 = 40;
const BOUNDARY_FUELS: [u32; 4] = [10, 20, 40, 60];
const EQUALITY_FUEL: u32 = 40;
const SCALING_FUEL: u32 = 80;
const AFFINE_RESIDUAL: f64 = 2.0;

type CheckResult = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn report(line: &str) {
    // written to the raw handle so the line survives output capture
    let mut out = std::io::stdout();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

#[test]
fn acceptance() {
    let checks: [(u32, &str, fn() -> CheckResult); 8] = [
        (1, "identity suite", identities),
        (2, "exponential-polynomial coefficients", coefficient_consistency),
        (3, "decision soundness corpus", soundness),
        (4, "boundary non-halting", boundary),
        (5, "equality tester", equality),
        (6, "forge correctness", forge),
        (7, "root versus coefficient perturbation", spectral_bound),
        (8, "scaling", scaling),
    ];
    let mut failed = Vec::new();
    report("");
    for (id, name, check) in checks {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => report(&format!("PASS criterion {id} ({name}): {detail} [{secs:.2}s]")),
            Err(why) => {
                report(&format!("FAIL criterion {id} ({name}): {why} [{secs:.2}s]"));
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

fn rand_qc<R: Rng>(rng: &mut R, lim: i64, den: i64) -> QC {
    qcr(rand_q(rng, lim, den))
}

/// Confluent matrix with entries `d^r/dt^r [t^k e^(lambda t)]` at `t = 0`.
fn confluent(blocks: &[(QC, usize)]) -> Vec<Vec<QC>> {
    let n: usize = blocks.iter().map(|b| b.1).sum();
    let mut rows = vec![Vec::new(); n];
    for (lambda, mult) in blocks {
        for k in 0..*mult {
            for (r, row) in rows.iter_mut().enumerate() {
                let entry = if r < k {
                    QC::zero()
                } else {
                    let mut falling = BigInt::one();
                    for i in 0..k {
                        falling *= BigInt::from(r - i);
                    }
                    let mut pow = QC::one();
                    for _ in 0..r - k {
                        pow = pow * lambda.clone();
                    }
                    qcr(Q::from_integer(falling)) * pow
                };
                row.push(entry);
            }
        }
    }
    rows
}

fn identities() -> CheckResult {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1001);

    for t in 0..100 {
        let n = rng.gen_range(1..=5);
        let m = rng.gen_range(1..=5);
        let i = rng.gen_range(0..=3);
        let xs: Vec<Q> = (0..=n).map(|_| rand_q(&mut rng, 12, 7)).collect();
        ensure(check_q_recursions(&xs, n, m, i), || format!("Q recursions fail at point {t}"))?;
    }

    for n in 1..=8 {
        for m1 in 1..=n {
            let lambda = distinct_q(&mut rng, n - m1 + 1, 20, 7);
            ensure(a_coefficients(n, m1, &lambda)[n - 1] == qi(1), || format!("top coefficient n={n} m1={m1}"))?;
        }
    }

    let mut minors = 0;
    for n in 1..=6 {
        for m1 in 1..=n {
            for _ in 0..50 {
                let lambda = distinct_q(&mut rng, n - m1 + 1, 9, 4);
                let mut sig = vec![m1];
                sig.extend(std::iter::repeat(1).take(n - m1));
                let v = build_vandermonde(&Signature::new(sig), &lambda, true);
                for j in 1..=n {
                    let brute = det_cofactor(&delete_row_col(&v, j - 1, m1 - 1));
                    ensure(minor_det(n, m1, j, &lambda) == brute, || format!("minor n={n} m1={m1} j={j}"))?;
                    minors += 1;
                }
            }
        }
    }

    for t in 0..100 {
        let blocks_n = rng.gen_range(1..=3);
        let points = distinct_q(&mut rng, blocks_n, 9, 3);
        let mults: Vec<usize> = (0..blocks_n).map(|_| rng.gen_range(1..=3)).collect();
        let n: usize = mults.iter().sum();
        let u: Vec<Q> = (0..n).map(|_| rand_q(&mut rng, 10, 4)).collect();
        let blocks: Vec<(QC, usize)> = points.iter().cloned().map(qcr).zip(mults.iter().copied()).collect();
        let a = gauss_solve(&confluent(&blocks), &u.iter().cloned().map(qcr).collect::<Vec<_>>())
            .ok_or("singular confluent system")?;
        let collapsed = f_function(&Signature::new(mults.clone()), &points, &u).map_err(|e| e.to_string())?;
        ensure(qcr(collapsed) == a[mults[0] - 1], || format!("collapse instance {t}"))?;
    }

    for t in 0..100 {
        let n1 = rng.gen_range(1..=6);
        let n2 = rng.gen_range(1..=n1);
        let m = rng.gen_range(1..=n2);
        let lambda = distinct_q(&mut rng, n1 - m + 1, 9, 4);
        let u: Vec<Q> = (0..n2).map(|_| rand_q(&mut rng, 10, 4)).collect();
        ensure(check_prop3_identity(m, n1, n2, &lambda, &u), || format!("extension identity instance {t}"))?;
    }

    let took = start.elapsed();
    ensure(took < IDENTITY_BUDGET, || format!("took {took:?}"))?;
    Ok(format!("100 Q points, A top coefficients n<=8, {minors} minors, 100 collapse, 100 extension"))
}

fn coefficient_consistency() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    for t in 0..100 {
        let n = rng.gen_range(1..=5);
        let roots = distinct_q(&mut rng, n, 8, 3);
        let u: Vec<Q> = (0..n).map(|_| rand_q(&mut rng, 10, 3)).collect();
        let uc: Vec<QC> = u.iter().cloned().map(qcr).collect();
        let blocks: Vec<(QC, usize)> = roots.iter().cloned().map(|r| (qcr(r), 1)).collect();
        let a = gauss_solve(&confluent(&blocks), &uc).ok_or("singular Vandermonde")?;
        let f = f_function(&Signature::new(vec![1; n]), &roots, &u).map_err(|e| e.to_string())?;
        ensure(qcr(f) == a[0], || format!("leading coefficient instance {t}"))?;

        let p = RootedProblem::new(roots.iter().cloned().map(qcr).collect(), uc.clone()).to_cauchy();
        let list = find_roots(&p.char_poly(600), 128).map_err(|e| e.to_string())?;
        let e = solve_exponential(&p, &list, 128).map_err(|e| e.to_string())?;
        let residual = e.residual(&p.init_balls(160));
        ensure(residual.iter().all(|r| r.contains_zero()), || format!("residual excludes zero, instance {t}"))?;
    }
    let cosh = f_function(&Signature::new(vec![1, 1]), &[qi(1), qi(-1)], &[qi(2), qi(0)]).map_err(|e| e.to_string())?;
    ensure(cosh == qi(1), || format!("cosh leading coefficient {cosh}"))?;
    Ok("100 instances agree with elimination, residuals contain 0, cosh gives 1".into())
}

fn soundness() -> CheckResult {
    let start = Instant::now();
    let corpus = soundness_corpus(2024, 240);
    ensure(corpus.len() >= 200, || format!("corpus has {} cases", corpus.len()))?;
    for class in ["complex-dominant", "multiple-real", "positivity", "boundary"] {
        ensure(corpus.iter().any(|c| c.class == class), || format!("no {class} cases"))?;
    }
    ensure(
        corpus.iter().any(|c| c.f.order() == 0 || c.g.order() == 0),
        || "no positivity (order 0) cases".into(),
    )?;
    ensure(
        corpus.iter().all(|c| c.f.order() <= 4 && c.g.order() <= 4),
        || "orders above 4".into(),
    )?;
    let threshold = Q::new(BigInt::from(ROBUST_MARGIN.0), BigInt::from(ROBUST_MARGIN.1));
    let opts = DecideOptions::with_fuel(SOUNDNESS_FUEL);
    let (mut robust, mut halted_robust, mut halted, mut yes, mut no) = (0, 0, 0, 0, 0);
    for (i, case) in corpus.iter().enumerate() {
        let v = decide_ultimate_inequality(&case.f.to_cauchy(), &case.g.to_cauchy(), &opts).map_err(|e| e.to_string())?;
        match v.outcome {
            Outcome::True => ensure(case.label.holds(), || format!("case {i} ({}) decided true", case.class))?,
            Outcome::False => ensure(case.label == EventualOrder::NotGeEventually, || {
                format!("case {i} ({}) decided false", case.class)
            })?,
            Outcome::Exhausted => {}
        }
        if v.outcome != Outcome::Exhausted {
            halted += 1;
        }
        if case.margin >= threshold {
            robust += 1;
            if case.label.holds() {
                yes += 1;
            } else {
                no += 1;
            }
            if v.outcome != Outcome::Exhausted {
                halted_robust += 1;
            }
        }
    }
    ensure(yes > 0 && no > 0, || "robust cases not mixed".into())?;
    ensure(halted_robust * 100 >= robust * ROBUST_HALT_PERCENT, || {
        format!("{halted_robust}/{robust} robust cases halted")
    })?;
    let took = start.elapsed();
    ensure(took < CORPUS_BUDGET, || format!("took {took:?}"))?;
    Ok(format!(
        "{} cases, {halted} halted, all agree with the oracle; robust {halted_robust}/{robust} halted ({yes} yes, {no} no)",
        corpus.len()
    ))
}

fn boundary() -> CheckResult {
    let mut runs = 0;
    for kind in BoundaryKind::ALL {
        let m = make_boundary_family(kind).member(4);
        let (f, g) = (m.boundary.f.to_cauchy(), m.boundary.g.to_cauchy());
        for fuel in BOUNDARY_FUELS {
            let opts = DecideOptions {
                fuel,
                record_trace: true,
                ..Default::default()
            };
            let v = decide_ultimate_inequality(&f, &g, &opts).map_err(|e| e.to_string())?;
            ensure(v.outcome == Outcome::Exhausted, || format!("{} at fuel {fuel}: {:?}", kind.name(), v.outcome))?;
            let trace = v.trace.ok_or("missing trace")?;
            ensure(trace.iterations.len() == fuel as usize, || format!("{} trace length", kind.name()))?;
            ensure(trace.iterations.iter().all(|r| r.fired.is_none()), || {
                format!("{} trace shows a halting step", kind.name())
            })?;
            runs += 1;
        }
    }
    Ok(format!("{runs} runs exhausted with no halting step"))
}

fn equality() -> CheckResult {
    let corpus = equality_corpus(1005, 100, 40);
    let opts = DecideOptions::with_fuel(EQUALITY_FUEL);
    let (mut unequal, mut late, mut equal) = (0, 0, 0);
    for (i, case) in corpus.iter().enumerate() {
        let v = decide_equality(&case.f.to_cauchy(), &case.g.to_cauchy(), &opts).map_err(|e| e.to_string())?;
        if case.equal {
            ensure(v.outcome == Outcome::Exhausted, || format!("equal pair {i} gave {:?}", v.outcome))?;
            equal += 1;
        } else {
            ensure(v.outcome == Outcome::True, || format!("unequal pair {i} gave {:?}", v.outcome))?;
            unequal += 1;
            if case.late {
                late += 1;
            }
        }
    }
    ensure(unequal == 100 && late > 0, || format!("{unequal} unequal, {late} late"))?;
    Ok(format!("{unequal} unequal pairs true ({late} differing only at the last index), {equal} equal pairs exhausted"))
}

fn abs_q(x: &QC) -> Q {
    assert!(x.im.is_zero());
    x.re.abs()
}

/// Residual of the monic recurrence `c` ending at index `k`.
fn defect_at(c: &[QC], u: &[QC], k: usize) -> QC {
    let n = c.len();
    let mut acc = u[k].clone();
    for i in 0..n {
        acc = acc + c[i].clone() * u[k - n + i].clone();
    }
    acc
}

fn forge() -> CheckResult {
    let cases = forge_corpus(1006, 100, 30);
    ensure(cases.len() == 100, || format!("{} forge cases", cases.len()))?;
    let mut worst_ratio = 0f64;
    for (i, case) in cases.iter().enumerate() {
        let out = forge_equal(&case.p, &case.q, &case.eps).map_err(|e| format!("case {i}: {e}"))?;
        let len = out.p.order() + out.q.order();
        ensure(prefixes_equal(&out.p, &out.q, len), || format!("case {i} prefixes differ"))?;
        ensure(
            out.p.solve().sub(&out.q.solve()).is_zero(),
            || format!("case {i} solutions differ"),
        )?;
        for d in [&out.dist_p, &out.dist_q] {
            ensure(*d <= out.budget.bound, || format!("case {i} distance above bound"))?;
            worst_ratio = worst_ratio.max(d.to_f64() / out.budget.bound.to_f64());
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1007);
    let tiny = |rng: &mut ChaCha8Rng| Q::new(BigInt::from(rng.gen_range(-50..=50)), BigInt::from(1_000_000));
    let slack = Q::new(BigInt::one(), BigInt::from(1_000_000_000));
    for t in 0..100 {
        let n = rng.gen_range(1..=4);
        let roots: Vec<QC> = (0..n).map(|_| rand_qc(&mut rng, 6, 2)).collect();
        let c = poly_from_roots(&roots);
        let init: Vec<QC> = (0..n).map(|_| rand_qc(&mut rng, 5, 2)).collect();
        let mut u = recurrence_terms(&c, &init, 2 * n + 1);
        for x in u.iter_mut() {
            *x = x.clone() + qcr(tiny(&mut rng));
        }
        let eps = (n..u.len()).map(|k| abs_q(&defect_at(&c, &u, k))).fold(Q::zero(), |a, b| a.max(b)) + &slack;
        let alpha = rand_qc(&mut rng, 6, 2);
        let d = add_root(&c, &alpha);
        let mut expected = roots.clone();
        expected.push(alpha.clone());
        ensure(d == poly_from_roots(&expected), || format!("added root instance {t}"))?;
        let bound = (Q::one() + abs_q(&alpha)) * &eps;
        for k in n + 1..u.len() {
            ensure(abs_q(&defect_at(&d, &u, k)) < bound, || format!("added root bound instance {t} k={k}"))?;
        }
    }

    for t in 0..100 {
        let n = rng.gen_range(2..=5);
        let shared: Vec<QC> = (0..n - 1).map(|_| rand_qc(&mut rng, 6, 2)).collect();
        let ab = distinct_q(&mut rng, 2, 6, 2);
        let (alpha, beta) = (qcr(ab[0].clone()), qcr(ab[1].clone()));
        let e = poly_from_roots(&shared);
        let mut with_a = shared.clone();
        with_a.push(alpha.clone());
        let mut with_b = shared.clone();
        with_b.push(beta.clone());
        let (c, d) = (poly_from_roots(&with_a), poly_from_roots(&with_b));
        let init: Vec<QC> = (0..n - 1).map(|_| rand_qc(&mut rng, 5, 2)).collect();
        let mut u = recurrence_terms(&e, &init, n + 1);
        for x in u.iter_mut() {
            *x = x.clone() + qcr(tiny(&mut rng));
        }
        let eps = abs_q(&defect_at(&c, &u, n)) + &slack;
        let delta = abs_q(&defect_at(&d, &u, n)) + &slack;
        let lhs = abs_q(&defect_at(&e, &u, n - 1));
        let rhs = (eps + delta) / abs_q(&(alpha - beta));
        ensure(lhs < rhs, || format!("eliminated root bound instance {t}"))?;
    }

    Ok(format!(
        "100 forged pairs equal, worst distance/bound {worst_ratio:.2e}; 100 added-root and 100 eliminated-root bounds hold"
    ))
}

fn spectral_bound() -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(1008);
    for t in 0..100 {
        let n = rng.gen_range(1..=5);
        let c: Vec<Q> = (0..n).map(|_| rand_q(&mut rng, 6, 4)).collect();
        let mut c2 = c.clone();
        loop {
            for x in c2.iter_mut() {
                if rng.gen_bool(0.5) {
                    let den = 1i64 << rng.gen_range(2..20);
                    *x = x.clone() + Q::new(BigInt::from(rng.gen_range(-3..=3)), BigInt::from(den));
                }
            }
            if c2 != c {
                break;
            }
        }
        ensure(check_spectral_vs_coefficient_bound(&c, &c2), || format!("pair {t} (n={n}) {c:?} {c2:?}"))?;
    }
    Ok("100 coefficient pairs satisfy the bound".into())
}

fn fit(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    let slope = if denom == 0.0 { 0.0 } else { (n * sxy - sx * sy) / denom };
    (slope, (sy - slope * sx) / n)
}

fn scaling_run(k: u32) -> Result<(u32, Duration), String> {
    let pair = scaling_family(k);
    let (f, g): (CauchyProblem, CauchyProblem) = (pair.f.to_cauchy(), pair.g.to_cauchy());
    let start = Instant::now();
    let v = decide_ultimate_inequality(&f, &g, &DecideOptions::with_fuel(SCALING_FUEL)).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(v.outcome == Outcome::True, || format!("k={k} gave {:?}", v.outcome))?;
    Ok((v.fuel_used, took))
}

fn scaling() -> CheckResult {
    let mut pts = Vec::new();
    let mut last = 0;
    let mut slowest = Duration::ZERO;
    for k in 1..=20 {
        let (iters, took) = scaling_run(k)?;
        ensure(iters >= last, || format!("iterations drop at k={k}"))?;
        ensure(took < SCALING_INSTANCE_BUDGET, || format!("k={k} took {took:?}"))?;
        last = iters;
        slowest = slowest.max(took);
        pts.push((k as f64, iters as f64));
    }
    let (slope, icpt) = fit(&pts);
    let resid = pts.iter().map(|(x, y)| (y - slope * x - icpt).abs()).fold(0.0, f64::max);
    ensure(resid <= AFFINE_RESIDUAL, || format!("affine residual {resid:.2}"))?;

    let mut tail = Vec::new();
    for k in 21..=40 {
        let (iters, _) = scaling_run(k)?;
        ensure(iters >= last, || format!("iterations drop at k={k}"))?;
        last = iters;
        tail.push((k as f64, iters as f64));
    }
    let rising: Vec<(f64, f64)> = tail.iter().copied().filter(|p| p.1 > 1.0).collect();
    let (tail_slope, _) = fit(&rising);
    Ok(format!(
        "k=1..20 iterations {}..{} fit slope {slope:.3} intercept {icpt:.2} max residual {resid:.2}, slowest {slowest:?}; \
         k=21..40 reach {last} iterations, slope {tail_slope:.3} once past the initial precision",
        pts[0].1, pts[19].1
    ))
}

