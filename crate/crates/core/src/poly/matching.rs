use crate::error::PolyError;
use crate::realnum::{ComplexBall, Dyadic, Round};

/// Optimal min-max pairing between two root lists.
///
/// The true spectral distance of any root selection from the balls lies in
/// `[lower, upper]`; `matching[i]` is the partner in the second list of entry `i`
/// of the first, realizing `upper`.
#[derive(Clone, Debug)]
pub struct SpectralMetric {
    pub lower: Dyadic,
    pub upper: Dyadic,
    pub matching: Vec<usize>,
}

impl SpectralMetric {
    pub fn value(&self) -> ComplexBall {
        let mid = (&self.lower + &self.upper).mul_pow2(-1);
        let rad = (&self.upper - &self.lower).mul_pow2(-1);
        let prec = -mid.exponent().min(rad.exponent()).min(0) + 2;
        ComplexBall::real(mid, rad, prec)
    }
}

fn try_kuhn(
    u: usize,
    adj: &[Vec<bool>],
    seen: &mut [bool],
    match_right: &mut [Option<usize>],
) -> bool {
    for v in 0..adj[u].len() {
        if adj[u][v] && !seen[v] {
            seen[v] = true;
            if match_right[v].map_or(true, |w| try_kuhn(w, adj, seen, match_right)) {
                match_right[v] = Some(u);
                return true;
            }
        }
    }
    false
}

/// Perfect matching in a bipartite graph given by an adjacency matrix, if one exists.
/// Left vertices are tried in index order, so ties resolve toward small indices.
pub fn perfect_matching(adj: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    for u in 0..n {
        let mut seen = vec![false; n];
        if !try_kuhn(u, adj, &mut seen, &mut match_right) {
            return None;
        }
    }
    let mut out = vec![0; n];
    for (v, u) in match_right.iter().enumerate() {
        out[u.unwrap()] = v;
    }
    Some(out)
}

/// Maximum matching size and pairs (left, right) in a bipartite graph.
pub fn maximum_matching(adj: &[Vec<bool>], right: usize) -> Vec<(usize, usize)> {
    let mut match_right: Vec<Option<usize>> = vec![None; right];
    for u in 0..adj.len() {
        let mut seen = vec![false; right];
        try_kuhn(u, adj, &mut seen, &mut match_right);
    }
    let mut pairs: Vec<(usize, usize)> = match_right
        .iter()
        .enumerate()
        .filter_map(|(v, u)| u.map(|u| (u, v)))
        .collect();
    pairs.sort();
    pairs
}

/// Bottleneck assignment: the permutation minimizing the largest weight used,
/// found by binary search over the distinct weights with a perfect-matching test.
pub fn bottleneck_assignment<T: Ord + Clone>(w: &[Vec<T>]) -> (Option<T>, Vec<usize>) {
    let n = w.len();
    if n == 0 {
        return (None, vec![]);
    }
    let mut values: Vec<T> = w.iter().flatten().cloned().collect();
    values.sort();
    values.dedup();
    let (mut lo, mut hi) = (0usize, values.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        let adj: Vec<Vec<bool>> = w
            .iter()
            .map(|row| row.iter().map(|x| *x <= values[mid]).collect())
            .collect();
        if perfect_matching(&adj).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let adj: Vec<Vec<bool>> = w
        .iter()
        .map(|row| row.iter().map(|x| *x <= values[lo]).collect())
        .collect();
    let perm = perfect_matching(&adj).expect("full threshold admits a matching");
    (Some(values[lo].clone()), perm)
}

/// Spectral distance `min_pi max_i |a_i - b_pi(i)|` between two enclosed root lists.
pub fn spectral_distance(a: &[ComplexBall], b: &[ComplexBall]) -> Result<SpectralMetric, PolyError> {
    if a.len() != b.len() {
        return Err(PolyError::LengthMismatch(a.len(), b.len()));
    }
    let n = a.len();
    let mut upper = vec![vec![Dyadic::zero(); n]; n];
    let mut lower = vec![vec![Dyadic::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let dre = a[i].re() - b[j].re();
            let dim = a[i].im() - b[j].im();
            let sq = &(&dre * &dre) + &(&dim * &dim);
            let rad = a[i].radius() + b[j].radius();
            upper[i][j] = &sq.sqrt_rel(40, Round::Up) + &rad;
            let lo = &sq.sqrt_rel(40, Round::Down) - &rad;
            lower[i][j] = if lo.is_positive() { lo } else { Dyadic::zero() };
        }
    }
    let (up, matching) = bottleneck_assignment(&upper);
    let (low, _) = bottleneck_assignment(&lower);
    Ok(SpectralMetric {
        lower: low.unwrap_or_else(Dyadic::zero),
        upper: up.unwrap_or_else(Dyadic::zero),
        matching,
    })
}
