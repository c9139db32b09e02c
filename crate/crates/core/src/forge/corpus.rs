use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cfinite::{oracle_eventual_compare, EventualOrder, RootedProblem};
use crate::realnum::Dyadic;
use crate::scalar::{qc, QComplex};

use super::family::{make_boundary_family, BoundaryKind, Pair};
use super::{prefix_defect, rat};

type Terms = Vec<(QComplex, Vec<QComplex>)>;

/// An oracle-labelled pair together with the size of the construction's
/// separation: the smallest gap or leading coefficient that keeps it away from
/// the boundary. Zero for boundary constructions.
#[derive(Clone, Debug)]
pub struct LabeledPair {
    pub f: RootedProblem,
    pub g: RootedProblem,
    pub label: EventualOrder,
    pub margin: BigRational,
    pub class: &'static str,
}

fn real(x: BigRational) -> QComplex {
    qc(x, BigRational::zero())
}

fn quarter<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> BigRational {
    rat(rng.gen_range(lo..=hi), 4)
}

fn nonzero_quarter<R: Rng>(rng: &mut R, lim: i64) -> BigRational {
    loop {
        let x = quarter(rng, -lim, lim);
        if !x.is_zero() {
            return x;
        }
    }
}

fn contains_root(terms: &Terms, r: &QComplex) -> bool {
    terms.iter().any(|(x, _)| x == r)
}

/// Simple roots (real or conjugate pairs) with real part at most `ceiling`,
/// `slots` in total, avoiding the roots in `avoid`.
fn lower_terms<R: Rng>(rng: &mut R, slots: usize, ceiling: &BigRational, avoid: &Terms) -> Terms {
    let mut out: Terms = Vec::new();
    let mut left = slots;
    let mut guard = 0;
    while left > 0 && guard < 100 {
        guard += 1;
        let re = ceiling - quarter(rng, 0, 8);
        if left >= 2 && rng.gen_bool(0.4) {
            let im = quarter(rng, 1, 8);
            let z = qc(re.clone(), im.clone());
            if contains_root(&out, &z) || contains_root(avoid, &z) {
                continue;
            }
            let a = nonzero_quarter(rng, 8);
            let b = quarter(rng, -8, 8);
            out.push((z, vec![qc(a.clone(), b.clone())]));
            out.push((qc(re, -im), vec![qc(a, -b)]));
            left -= 2;
        } else {
            let z = real(re);
            if contains_root(&out, &z) || contains_root(avoid, &z) {
                continue;
            }
            out.push((z, vec![real(nonzero_quarter(rng, 8))]));
            left -= 1;
        }
    }
    out
}

fn order(t: &Terms) -> usize {
    t.iter().map(|(_, a)| a.len()).sum()
}

fn min_abs(xs: &[BigRational]) -> BigRational {
    xs.iter().map(|x| x.abs()).min().unwrap_or_else(BigRational::zero)
}

/// One random pair from the construction class `class`.
fn sample<R: Rng>(rng: &mut R, class: usize) -> (Terms, Terms, BigRational, &'static str) {
    let top = quarter(rng, -4, 8);
    let gap = [rat(1, 4), rat(1, 2), rat(1, 1)].choose(rng).unwrap().clone();
    let below = &top - &gap;
    let mut f: Terms = Vec::new();
    let mut g: Terms = Vec::new();
    let (margin, name) = match class {
        // simple real root of f dominates
        0 | 1 => {
            let a = nonzero_quarter(rng, 8);
            f.push((real(top.clone()), vec![real(a.clone())]));
            let nf = rng.gen_range(0..=3);
            let ng = if class == 1 { 0 } else { rng.gen_range(0..=4) };
            f.extend(lower_terms(rng, nf, &below, &f.clone()));
            g = lower_terms(rng, ng, &below, &f);
            (min_abs(&[a, gap.clone()]), if class == 1 { "positivity" } else { "first-dominant" })
        }
        // simple real root of g dominates
        2 => {
            let b = nonzero_quarter(rng, 8);
            g.push((real(top.clone()), vec![real(b.clone())]));
            let ng = rng.gen_range(0..=3);
            g.extend(lower_terms(rng, ng, &below, &g.clone()));
            let nf = rng.gen_range(0..=4);
            f = lower_terms(rng, nf, &below, &g);
            (min_abs(&[b, gap.clone()]), "second-dominant")
        }
        // shared simple dominant root, coefficients of opposite signs
        3 => {
            let a = nonzero_quarter(rng, 8);
            let b = -a.signum() * quarter(rng, 1, 8);
            f.push((real(top.clone()), vec![real(a.clone())]));
            g.push((real(top.clone()), vec![real(b.clone())]));
            let nf = rng.gen_range(0..=3);
            f.extend(lower_terms(rng, nf, &below, &f.clone()));
            let ng = rng.gen_range(0..=3);
            g.extend(lower_terms(rng, ng, &below, &f));
            (min_abs(&[a, b, gap.clone()]), "shared-opposite")
        }
        // conjugate pair above every real root with a nonzero coefficient
        4 | 5 => {
            let im = quarter(rng, 2, 8);
            let a = quarter(rng, -8, 8);
            let b = if a.is_zero() { nonzero_quarter(rng, 8) } else { quarter(rng, -8, 8) };
            let side = rng.gen_bool(0.5);
            let pair: Terms = vec![
                (qc(top.clone(), im.clone()), vec![qc(a.clone(), b.clone())]),
                (qc(top.clone(), -im), vec![qc(a.clone(), -b.clone())]),
            ];
            let (own, other) = if side { (&mut f, &mut g) } else { (&mut g, &mut f) };
            own.extend(pair);
            let n_own = rng.gen_range(0..=2);
            let extra = lower_terms(rng, n_own, &below, own);
            own.extend(extra);
            if class == 4 {
                let n_other = rng.gen_range(0..=4);
                *other = lower_terms(rng, n_other, &below, own);
            }
            let size = if a.abs() > b.abs() { a.abs() } else { b.abs() };
            (min_abs(&[size, gap.clone()]), if class == 5 { "positivity-oscillating" } else { "complex-dominant" })
        }
        // repeated dominant real root whose leading contribution to f - g is negative
        6 | 7 => {
            let mu_f = rng.gen_range(0..=3usize);
            let mu_g = if mu_f < 2 { rng.gen_range(2..=3usize) } else { rng.gen_range(0..=3usize) };
            let mu_g = if class == 7 { 0 } else { mu_g };
            let mu_f = if class == 7 { mu_f.max(2) } else { mu_f };
            let mut leads = vec![gap.clone()];
            if mu_f > 0 {
                let mut a: Vec<QComplex> = (0..mu_f - 1).map(|_| real(quarter(rng, -8, 8))).collect();
                let lead = -quarter(rng, 1, 8);
                leads.push(lead.clone());
                a.push(real(lead));
                f.push((real(top.clone()), a));
            }
            if mu_g > 0 {
                let mut b: Vec<QComplex> = (0..mu_g - 1).map(|_| real(quarter(rng, -8, 8))).collect();
                let lead = quarter(rng, 1, 8);
                leads.push(lead.clone());
                b.push(real(lead));
                g.push((real(top.clone()), b));
            }
            let nf = rng.gen_range(0..=4usize.saturating_sub(mu_f).min(2));
            let fo = f.clone();
            f.extend(lower_terms(rng, nf, &below, &fo));
            let ng = rng.gen_range(0..=4usize.saturating_sub(mu_g).min(2));
            let mut avoid = f.clone();
            avoid.extend(g.clone());
            g.extend(lower_terms(rng, ng, &below, &avoid));
            (min_abs(&leads), if class == 7 { "positivity-multiple" } else { "multiple-real" })
        }
        // boundary constructions
        _ => {
            match rng.gen_range(0..5) {
                0 => {
                    // the same function twice, with extra zero blocks
                    let k = rng.gen_range(1..=3);
                    let base = lower_terms(rng, k, &top, &Vec::new());
                    f = base.clone();
                    g = base;
                    let extra = lower_terms(rng, 1, &top, &f);
                    f.extend(extra.into_iter().map(|(r, a)| (r, vec![QComplex::zero(); a.len()])));
                }
                1 => {
                    // shared dominant root, same-sign coefficients
                    let a = quarter(rng, 1, 8);
                    let b = quarter(rng, 1, 8);
                    f.push((real(top.clone()), vec![real(a)]));
                    g.push((real(top.clone()), vec![real(b)]));
                    let extra = lower_terms(rng, 2, &below, &f);
                    f.extend(extra);
                }
                2 => {
                    // repeated dominant root with positive leading coefficient
                    f.push((real(top.clone()), vec![real(quarter(rng, -4, 4)), real(quarter(rng, 1, 8))]));
                    let k = rng.gen_range(0..=2);
                    g = lower_terms(rng, k, &below, &f);
                }
                3 => {
                    // dominant conjugate pair with zero coefficient
                    let im = quarter(rng, 2, 8);
                    f.push((qc(top.clone(), im.clone()), vec![QComplex::zero()]));
                    f.push((qc(top.clone(), -im), vec![QComplex::zero()]));
                    f.push((real(below.clone()), vec![real(quarter(rng, 1, 8))]));
                }
                _ => {
                    // real root and oscillation with equal real parts
                    let im = quarter(rng, 2, 8);
                    let a = quarter(rng, 1, 4);
                    f.push((real(top.clone()), vec![real(rat(4, 1) + a)]));
                    f.push((qc(top.clone(), im.clone()), vec![real(rat(1, 2))]));
                    f.push((qc(top.clone(), -im), vec![real(rat(1, 2))]));
                }
            }
            (BigRational::zero(), "boundary")
        }
    };
    (f, g, margin, name)
}

/// At least `count` oracle-labelled pairs with orders at most 4, cycling through
/// dominant-real, shared-root, oscillating, repeated-root, zero-side and
/// boundary constructions.
pub fn soundness_corpus(seed: u64, count: usize) -> Vec<LabeledPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut class = 0;
    while out.len() < count {
        let (mut tf, mut tg, margin, name) = sample(&mut rng, class % 9);
        class += 1;
        if order(&tf) > 4 || order(&tg) > 4 {
            continue;
        }
        if name.starts_with("positivity") && rng.gen_bool(0.5) {
            std::mem::swap(&mut tf, &mut tg);
            if name == "positivity-multiple" {
                // keep the repeated root's contribution to f - g negative
                for (_, a) in tf.iter_mut().chain(tg.iter_mut()) {
                    for x in a.iter_mut() {
                        *x = -x.clone();
                    }
                }
            }
        }
        let f = RootedProblem::from_terms(&tf);
        let g = RootedProblem::from_terms(&tg);
        let Ok(label) = oracle_eventual_compare(&f, &g) else {
            continue;
        };
        out.push(LabeledPair {
            f,
            g,
            label,
            margin,
            class: name,
        });
    }
    out
}

#[derive(Clone, Debug)]
pub struct EqualityCase {
    pub f: RootedProblem,
    pub g: RootedProblem,
    pub equal: bool,
    /// Set when the prefixes agree on every index below `n + m - 1`.
    pub late: bool,
}

fn random_roots<R: Rng>(rng: &mut R, k: usize, avoid: &[QComplex]) -> Vec<QComplex> {
    let mut out: Vec<QComplex> = Vec::new();
    while out.len() < k {
        let z = if rng.gen_bool(0.6) {
            real(quarter(rng, -8, 8))
        } else {
            qc(quarter(rng, -8, 8), quarter(rng, -8, 8))
        };
        if !avoid.contains(&z) && (rng.gen_bool(0.15) || !out.contains(&z)) {
            out.push(z);
        }
    }
    out
}

/// `unequal` pairs that differ as functions (about a third of them agreeing on
/// all prefix terms but the last one compared) followed by `equal` pairs
/// describing one function in two ways. Values may be complex.
pub fn equality_corpus(seed: u64, unequal: usize, equal: usize) -> Vec<EqualityCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut made = 0;
    while made < unequal {
        let n = rng.gen_range(0..=4);
        let m = rng.gen_range(0..=4);
        if n + m == 0 {
            continue;
        }
        let late = made % 3 == 0;
        let (f, g) = if late {
            let c = random_roots(&mut rng, n, &[]);
            let d = random_roots(&mut rng, m, &c);
            let mut all = c.clone();
            all.extend(d.iter().cloned());
            let mut init = vec![QComplex::zero(); n + m];
            init[n + m - 1] = real(rat(1, 1));
            let h = RootedProblem::new(all, init).solve();
            let (fc, gc): (Terms, Terms) = h.terms.into_iter().partition(|(r, _)| c.contains(r));
            let gc: Terms = gc
                .into_iter()
                .map(|(r, a)| (r, a.into_iter().map(|x| -x).collect()))
                .collect();
            (RootedProblem::from_terms(&fc), RootedProblem::from_terms(&gc))
        } else {
            let c = random_roots(&mut rng, n, &[]);
            let d = random_roots(&mut rng, m, &[]);
            let u = (0..n).map(|_| qc(quarter(&mut rng, -8, 8), quarter(&mut rng, -2, 2))).collect();
            let v = (0..m).map(|_| qc(quarter(&mut rng, -8, 8), quarter(&mut rng, -2, 2))).collect();
            (RootedProblem::new(c, u), RootedProblem::new(d, v))
        };
        let len = n + m;
        let (pu, pv) = (f.prefix(len), g.prefix(len));
        if pu == pv {
            continue;
        }
        if late && pu[..len - 1] != pv[..len - 1] {
            continue;
        }
        out.push(EqualityCase {
            f,
            g,
            equal: false,
            late,
        });
        made += 1;
    }
    for i in 0..equal {
        let k = rng.gen_range(0..=3);
        let base: Terms = random_roots(&mut rng, k, &[])
            .into_iter()
            .fold(Vec::new(), |mut t: Terms, r| {
                match t.iter_mut().find(|(x, _)| *x == r) {
                    Some((_, a)) => a.push(qc(quarter(&mut rng, -8, 8), BigRational::zero())),
                    None => t.push((r, vec![qc(quarter(&mut rng, -8, 8), quarter(&mut rng, -4, 4))])),
                }
                t
            });
        let roots_in: Vec<QComplex> = base.iter().map(|(r, _)| r.clone()).collect();
        let pad = |rng: &mut ChaCha8Rng, t: &Terms| -> Terms {
            let mut t = t.clone();
            let k = rng.gen_range(0..=1);
            let extra = random_roots(rng, k, &roots_in);
            for r in extra {
                if !t.iter().any(|(x, _)| *x == r) {
                    t.push((r, vec![QComplex::zero()]));
                }
            }
            t
        };
        let (tf, tg) = if i % 4 == 0 { (base.clone(), base.clone()) } else { (pad(&mut rng, &base), pad(&mut rng, &base)) };
        out.push(EqualityCase {
            f: RootedProblem::from_terms(&tf),
            g: RootedProblem::from_terms(&tg),
            equal: true,
            late: false,
        });
    }
    out
}

/// A nearly equal pair and a defect bound covering its prefix differences.
#[derive(Clone, Debug)]
pub struct ForgeCase {
    pub p: RootedProblem,
    pub q: RootedProblem,
    pub eps: Dyadic,
}

/// Pairs obtained from one function written twice, with the roots and initial
/// values of the second copy moved by about `2^-shift`.
pub fn forge_corpus(seed: u64, count: usize, shift: u32) -> Vec<ForgeCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tiny = |rng: &mut ChaCha8Rng| {
        BigRational::new(BigInt::from(rng.gen_range(-64..=64)), BigInt::from(64) << shift)
    };
    let mut out = Vec::new();
    while out.len() < count {
        let k = rng.gen_range(1..=3);
        let shared = random_roots(&mut rng, k, &[]);
        let mut base: Terms = Vec::new();
        for r in shared {
            if !base.iter().any(|(x, _)| *x == r) {
                base.push((r, vec![qc(quarter(&mut rng, -8, 8), BigRational::zero())]));
            }
        }
        let roots_in: Vec<QComplex> = base.iter().map(|(r, _)| r.clone()).collect();
        let mut tf = base.clone();
        let k = rng.gen_range(0..=1);
        for r in random_roots(&mut rng, k, &roots_in) {
            if !tf.iter().any(|(x, _)| *x == r) {
                tf.push((r, vec![QComplex::zero()]));
            }
        }
        let mut tg: Terms = base
            .iter()
            .map(|(r, a)| (r + qc(tiny(&mut rng), tiny(&mut rng)), a.clone()))
            .collect();
        let k = rng.gen_range(0..=1);
        for r in random_roots(&mut rng, k, &roots_in) {
            if !tg.iter().any(|(x, _)| *x == r) {
                tg.push((r, vec![QComplex::zero()]));
            }
        }
        let p = RootedProblem::from_terms(&tf);
        let mut q = RootedProblem::from_terms(&tg);
        for u in q.init.iter_mut() {
            *u += qc(tiny(&mut rng), BigRational::zero());
        }
        let defect = prefix_defect(&p, &q, p.order() + q.order() + 1);
        let eps = Dyadic::max(&defect.mul_pow2(1), &Dyadic::pow2(-(2 * shift as i64)));
        if eps >= Dyadic::one() {
            continue;
        }
        out.push(ForgeCase { p, q, eps });
    }
    out
}

/// The robust side of the shared-dominant family at distance `2^-k`.
pub fn scaling_family(k: u32) -> Pair {
    make_boundary_family(BoundaryKind::SharedDominant).member(k).yes
}
