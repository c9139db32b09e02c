use num_complex::Complex64;
use serde::Serialize;

use super::CharPoly;
use crate::error::PolyError;
use crate::realnum::{ComplexBall, Dyadic, Round};

/// Root enclosures listed with multiplicity.
///
/// `pairing[i]` is the index of the ball mirroring `roots[i]` across the real
/// axis (`i` itself for balls snapped onto the axis, and for every ball when the
/// input polynomial was not real).
#[derive(Clone, Debug, Serialize)]
pub struct RootList {
    #[serde(skip)]
    pub roots: Vec<ComplexBall>,
    pub pairing: Vec<usize>,
    pub symmetric: bool,
}

impl RootList {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Indices grouped by identical enclosure (clusters share one ball).
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.roots.len() {
            match groups.iter_mut().find(|g| self.roots[g[0]] == self.roots[i]) {
                Some(g) => g.push(i),
                None => groups.push(vec![i]),
            }
        }
        groups
    }
}

/// A complex point with dyadic coordinates, rounded to a fixed absolute precision.
#[derive(Clone, Debug)]
struct Pt {
    re: Dyadic,
    im: Dyadic,
}

impl Pt {
    fn zero() -> Self {
        Pt {
            re: Dyadic::zero(),
            im: Dyadic::zero(),
        }
    }

    fn from_c64(z: Complex64) -> Self {
        Pt {
            re: Dyadic::from_f64(z.re),
            im: Dyadic::from_f64(z.im),
        }
    }

    fn round(&self, w: i64) -> Self {
        Pt {
            re: self.re.round_abs(w, Round::Nearest),
            im: self.im.round_abs(w, Round::Nearest),
        }
    }

    fn add(&self, o: &Pt) -> Pt {
        Pt {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    fn sub(&self, o: &Pt) -> Pt {
        Pt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn mul(&self, o: &Pt, w: i64) -> Pt {
        Pt {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
        .round(w)
    }

    fn norm_sq(&self) -> Dyadic {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn div(&self, o: &Pt, w: i64) -> Option<Pt> {
        let d = o.norm_sq();
        if d.is_zero() {
            return None;
        }
        let num_re = &(&self.re * &o.re) + &(&self.im * &o.im);
        let num_im = &(&self.im * &o.re) - &(&self.re * &o.im);
        Some(Pt {
            re: num_re.div_abs(&d, w, Round::Nearest),
            im: num_im.div_abs(&d, w, Round::Nearest),
        })
    }

    fn to_ball(&self, prec: i64) -> ComplexBall {
        ComplexBall::exact(self.re.clone(), self.im.clone(), prec)
    }
}

fn center(b: &ComplexBall) -> Pt {
    Pt {
        re: b.re().clone(),
        im: b.im().clone(),
    }
}

/// `p(z)` and `p'(z)` at the coefficient centers.
fn horner_pt(coeffs: &[Pt], z: &Pt, w: i64) -> (Pt, Pt) {
    let mut p = Pt {
        re: Dyadic::one(),
        im: Dyadic::zero(),
    };
    let mut dp = Pt::zero();
    for c in coeffs.iter().rev() {
        dp = dp.mul(z, w).add(&p);
        p = p.mul(z, w).add(c);
    }
    (p, dp)
}

fn aberth_f64(coeffs: &[Complex64], bound: f64) -> Vec<Complex64> {
    let n = coeffs.len();
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(bound.max(1e-3) * 0.8, theta)
        })
        .collect();
    for _ in 0..200 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut p = Complex64::new(1.0, 0.0);
            let mut dp = Complex64::new(0.0, 0.0);
            for c in coeffs.iter().rev() {
                dp = dp * z[i] + p;
                p = p * z[i] + c;
            }
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let step = ratio / (1.0 - ratio * s);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm());
            }
        }
        if moved < 1e-15 * bound.max(1.0) {
            break;
        }
    }
    z
}

fn aberth_refine(coeffs: &[Pt], z: &mut [Pt], w: i64, max_iter: usize) {
    let n = z.len();
    let one = Pt {
        re: Dyadic::one(),
        im: Dyadic::zero(),
    };
    let tol = Dyadic::pow2(-(w - 6));
    for _ in 0..max_iter {
        let mut moved = Dyadic::zero();
        for i in 0..n {
            let (p, dp) = horner_pt(coeffs, &z[i], w);
            if p.is_zero() {
                continue;
            }
            let Some(ratio) = p.div(&dp, w) else { continue };
            let mut s = Pt::zero();
            for j in 0..n {
                if j != i {
                    if let Some(inv) = one.div(&z[i].sub(&z[j]), w) {
                        s = s.add(&inv);
                    }
                }
            }
            let denom = one.sub(&ratio.mul(&s, w));
            let Some(step) = ratio.div(&denom, w) else { continue };
            z[i] = z[i].sub(&step).round(w);
            let m = Dyadic::max(&step.re.abs(), &step.im.abs());
            if m > moved {
                moved = m;
            }
        }
        if moved <= tol {
            break;
        }
    }
}

/// Smith disks: `n |p(z_i)| / |prod_{j != i} (z_i - z_j)|` over the whole coefficient family.
fn smith_radii(p: &CharPoly, z: &[Pt], w: i64) -> Option<Vec<Dyadic>> {
    let n = z.len();
    let nb = Dyadic::from_i64(n as i64);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let zi = z[i].to_ball(w);
        let val = p.eval(&zi).abs_upper();
        let mut prod = ComplexBall::one(w);
        for j in 0..n {
            if j != i {
                prod = prod.mul(&zi.sub(&z[j].to_ball(w)));
            }
        }
        let low = prod.abs_lower();
        if low.is_zero() {
            return None;
        }
        out.push((&nb * &val).div_rel(&low, 30, Round::Up));
    }
    Some(out)
}

fn dist_upper(a: &Pt, b: &Pt) -> Dyadic {
    a.sub(b).norm_sq().sqrt_rel(30, Round::Up)
}

/// Connected components of the disk-overlap graph.
fn components(z: &[Pt], r: &[Dyadic]) -> Vec<Vec<usize>> {
    let n = z.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        let mut i = i;
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let s = &r[i] + &r[j];
            if z[i].sub(&z[j]).norm_sq() <= &s * &s {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        match root_of[root] {
            Some(g) => groups[g].push(i),
            None => {
                root_of[root] = Some(groups.len());
                groups.push(vec![i]);
            }
        }
    }
    groups
}

/// One ball per index: singletons keep their Smith disk, clusters share an enclosing disk.
fn enclose(z: &[Pt], r: &[Dyadic], groups: &[Vec<usize>], w: i64) -> Vec<(Pt, Dyadic)> {
    let mut out = vec![(Pt::zero(), Dyadic::zero()); z.len()];
    for g in groups {
        if g.len() == 1 {
            out[g[0]] = (z[g[0]].clone(), r[g[0]].clone());
            continue;
        }
        let k = Dyadic::from_i64(g.len() as i64);
        let mut sum = Pt::zero();
        for &i in g {
            sum = sum.add(&z[i]);
        }
        let c = Pt {
            re: sum.re.div_abs(&k, w, Round::Nearest),
            im: sum.im.div_abs(&k, w, Round::Nearest),
        };
        let mut rad = Dyadic::zero();
        for &i in g {
            let d = &dist_upper(&c, &z[i]) + &r[i];
            if d > rad {
                rad = d;
            }
        }
        for &i in g {
            out[i] = (c.clone(), rad.clone());
        }
    }
    out
}

/// Coefficients (centers) of the `k`-th derivative of the monic polynomial.
fn derivative_coeffs(coeffs: &[Pt], k: usize) -> (Vec<Pt>, Dyadic) {
    let n = coeffs.len();
    let falling = |j: usize| -> i64 { ((j - k + 1)..=j).map(|x| x as i64).product() };
    // p^(k)(z) = sum_{j>=k} c_j * j!/(j-k)! z^(j-k), leading c_n = 1
    let lead = Dyadic::from_i64(falling(n));
    let mut out = Vec::new();
    for j in k..n {
        let f = Dyadic::from_i64(falling(j));
        out.push(Pt {
            re: &coeffs[j].re * &f,
            im: &coeffs[j].im * &f,
        });
    }
    (out, lead)
}

/// Newton iteration on a (not necessarily monic) polynomial given by
/// low coefficients and a leading coefficient.
fn newton(low: &[Pt], lead: &Dyadic, start: &Pt, w: i64) -> Pt {
    let mut z = start.clone();
    let tol = Dyadic::pow2(-(w - 6));
    for _ in 0..200 {
        let mut p = Pt {
            re: lead.clone(),
            im: Dyadic::zero(),
        };
        let mut dp = Pt::zero();
        for c in low.iter().rev() {
            dp = dp.mul(&z, w).add(&p);
            p = p.mul(&z, w).add(c);
        }
        let Some(step) = p.div(&dp, w) else { break };
        z = z.sub(&step).round(w);
        if Dyadic::max(&step.re.abs(), &step.im.abs()) <= tol {
            break;
        }
    }
    z
}

/// Replace the approximants of a suspected `k`-fold cluster by `k` points on a
/// small circle around the zero of the `(k-1)`-th derivative.
fn respread_cluster(coeffs: &[Pt], z: &mut [Pt], group: &[usize], radius: &Dyadic, w: i64) {
    let k = group.len();
    let mut sum = Pt::zero();
    for &i in group {
        sum = sum.add(&z[i]);
    }
    let kd = Dyadic::from_i64(k as i64);
    let mean = Pt {
        re: sum.re.div_abs(&kd, w, Round::Nearest),
        im: sum.im.div_abs(&kd, w, Round::Nearest),
    };
    let (low, lead) = derivative_coeffs(coeffs, k - 1);
    let centroid = newton(&low, &lead, &mean, w);
    for (t, &i) in group.iter().enumerate() {
        let theta = 2.0 * std::f64::consts::PI * (t as f64) / (k as f64) + 0.25;
        let (s, c) = theta.sin_cos();
        let off = Pt {
            re: &Dyadic::from_f64(c) * radius,
            im: &Dyadic::from_f64(s) * radius,
        };
        z[i] = centroid.add(&off).round(w);
    }
}

/// Snap near-real balls onto the axis and mirror the others in conjugate pairs.
fn symmetrize(balls: &mut [(Pt, Dyadic)]) -> Option<Vec<usize>> {
    let n = balls.len();
    let mut pairing: Vec<usize> = (0..n).collect();
    let mut open: Vec<usize> = Vec::new();
    for (i, (c, r)) in balls.iter_mut().enumerate() {
        if c.im.abs() <= *r {
            *r = &*r + &c.im.abs();
            c.im = Dyadic::zero();
        } else {
            open.push(i);
        }
    }
    while !open.is_empty() {
        if open.len() == 1 {
            return None;
        }
        let mut best: Option<(usize, usize, Dyadic)> = None;
        for a in 0..open.len() {
            for b in a + 1..open.len() {
                let (i, j) = (open[a], open[b]);
                let conj_j = Pt {
                    re: balls[j].0.re.clone(),
                    im: -&balls[j].0.im,
                };
                let d = balls[i].0.sub(&conj_j).norm_sq();
                if best.as_ref().map_or(true, |(_, _, bd)| d < *bd) {
                    best = Some((a, b, d));
                }
            }
        }
        let (a, b, _) = best.unwrap();
        let (i, j) = (open[a], open[b]);
        let conj_j = Pt {
            re: balls[j].0.re.clone(),
            im: -&balls[j].0.im,
        };
        let diff = balls[i].0.sub(&conj_j);
        let mid = Pt {
            re: (&balls[i].0.re + &conj_j.re).mul_pow2(-1),
            im: (&balls[i].0.im + &conj_j.im).mul_pow2(-1),
        };
        let half = diff.norm_sq().sqrt_rel(30, Round::Up).mul_pow2(-1);
        let r = &Dyadic::max(&balls[i].1, &balls[j].1) + &half;
        balls[i] = (mid.clone(), r.clone());
        balls[j] = (
            Pt {
                re: mid.re.clone(),
                im: -&mid.im,
            },
            r,
        );
        pairing[i] = j;
        pairing[j] = i;
        open.remove(b);
        open.remove(a);
    }
    Some(pairing)
}

/// Certified root enclosures of radius at most `2^-m`.
///
/// The coefficient balls should be much tighter than `2^-m`: clustered roots
/// of multiplicity `k` move by about the `k`-th root of the coefficient error.
pub fn find_roots(p: &CharPoly, m: i64) -> Result<RootList, PolyError> {
    let n = p.degree();
    if n == 0 {
        return Ok(RootList {
            roots: vec![],
            pairing: vec![],
            symmetric: true,
        });
    }
    let bound = p.root_bound();
    let mag = bound.log2_ceil().max(1);
    let log_n = 64 - (n as u64).leading_zeros() as i64;
    // A k-fold cluster spread at radius 2^-(m+8+log n) needs about k times that many bits.
    let w = (n as i64) * (m + 12 + log_n + mag + 2) + 40;
    let coeffs: Vec<Pt> = p.coeffs().iter().map(center).collect();

    let start: Vec<Pt> = if mag < 900 {
        let c64: Vec<Complex64> = coeffs
            .iter()
            .map(|c| Complex64::new(c.re.to_f64(), c.im.to_f64()))
            .collect();
        aberth_f64(&c64, bound.to_f64())
            .into_iter()
            .map(|z| {
                if z.is_finite() {
                    Pt::from_c64(z)
                } else {
                    Pt::from_c64(Complex64::new(0.5, 0.5))
                }
            })
            .collect()
    } else {
        (0..n)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
                let (s, c) = theta.sin_cos();
                Pt {
                    re: &Dyadic::from_f64(c) * &bound,
                    im: &Dyadic::from_f64(s) * &bound,
                }
            })
            .collect()
    };
    let mut z: Vec<Pt> = start.iter().map(|s| s.round(w)).collect();
    // Nudge exact coincidences apart so the Aberth sums are defined.
    for i in 0..n {
        for j in 0..i {
            if z[i].sub(&z[j]).is_zero() {
                z[i].im = &z[i].im + &Dyadic::pow2(-20 - i as i64);
            }
        }
    }
    aberth_refine(&coeffs, &mut z, w, 60 + m as usize);

    let target = Dyadic::pow2(-(m + 1));
    let mut balls = certify(p, &z, w, &target);
    if balls.is_none() {
        // Suspected multiple roots: respread every cluster and try again.
        if let Some(radii) = smith_radii(p, &z, w).or_else(|| Some(vec![Dyadic::pow2(-20); n])) {
            let groups = components(&z, &radii);
            let spread = Dyadic::pow2(-(m + 8 + log_n));
            let mut z2 = z.clone();
            for g in &groups {
                if g.len() > 1 {
                    respread_cluster(&coeffs, &mut z2, g, &spread, w);
                }
            }
            balls = certify(p, &z2, w, &target);
        }
    }
    let mut balls = balls.ok_or(PolyError::PrecisionExhausted(m))?;

    let symmetric = p.is_real();
    let pairing = if symmetric {
        symmetrize(&mut balls).ok_or(PolyError::PrecisionExhausted(m))?
    } else {
        (0..n).collect()
    };
    let limit = Dyadic::pow2(-m);
    if balls.iter().any(|(_, r)| *r > limit) {
        return Err(PolyError::PrecisionExhausted(m));
    }
    Ok(RootList {
        roots: balls
            .into_iter()
            .map(|(c, r)| ComplexBall::new(c.re, c.im, r, w))
            .collect(),
        pairing,
        symmetric,
    })
}

fn certify(p: &CharPoly, z: &[Pt], w: i64, target: &Dyadic) -> Option<Vec<(Pt, Dyadic)>> {
    let radii = smith_radii(p, z, w)?;
    let groups = components(z, &radii);
    let balls = enclose(z, &radii, &groups, w);
    if balls.iter().all(|(_, r)| r <= target) {
        Some(balls)
    } else {
        None
    }
}
