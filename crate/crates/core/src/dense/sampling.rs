//! Seeded `G(n,p)` and `G(n,m)` samplers.
//!
//! Dense graphs are produced by sampling the complement and complementing, so
//! the `*_complement` variants and the plain samplers draw the same graph for
//! the same seed.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Seed for the experiment generator. The same seed and parameters always
/// yield the same sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RngSeed {
    pub seed: u64,
}

impl RngSeed {
    pub const GENERATOR: &'static str = "rand_chacha::ChaCha8Rng::seed_from_u64";

    pub fn new(seed: u64) -> Self {
        RngSeed { seed }
    }

    pub fn generator(&self) -> &'static str {
        Self::GENERATOR
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Each pair independently with probability `q`, by geometric skipping over
/// the pairs in column order. Expected work `O(n + q n^2)`.
fn sample_sparse<R: Rng>(n: usize, q: f64, rng: &mut R) -> Graph {
    if q <= 0.0 || n < 2 {
        return Graph::empty(n);
    }
    if q >= 1.0 {
        return Graph::complete(n);
    }
    let log_miss = (1.0 - q).ln();
    let mut edges = Vec::new();
    let mut v: usize = 1;
    let mut w: i64 = -1;
    while v < n {
        let r: f64 = rng.random();
        let skip = ((1.0 - r).ln() / log_miss).floor();
        w += 1 + if skip.is_finite() { skip.min(i64::MAX as f64 / 4.0) as i64 } else { i64::MAX / 4 };
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as usize, v));
        }
    }
    edges.sort_unstable();
    Graph::from_canonical(n, edges)
}

/// Pairs for sorted row-major pair indices (`(0,1), (0,2), ..., (1,2), ...`).
fn pairs_from_indices(n: usize, sorted: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(sorted.len());
    let (mut u, mut row_start, mut row_len) = (0usize, 0usize, n.saturating_sub(1));
    for &k in sorted {
        while k >= row_start + row_len {
            row_start += row_len;
            u += 1;
            row_len -= 1;
        }
        out.push((u, u + 1 + (k - row_start)));
    }
    out
}

fn sample_uniform_pairs<R: Rng>(n: usize, count: usize, rng: &mut R) -> Graph {
    let mut idx = index::sample(rng, pair_count(n), count).into_vec();
    idx.sort_unstable();
    Graph::from_canonical(n, pairs_from_indices(n, &idx))
}

/// `G(n,p)`. For `p > 1/2` the complement is drawn at rate `1-p`.
pub fn sample_gnp(n: usize, p: f64, seed: RngSeed) -> Result<Graph> {
    check_probability(p)?;
    let mut rng = seed.rng();
    Ok(if p > 0.5 { sample_sparse(n, 1.0 - p, &mut rng).complement() } else { sample_sparse(n, p, &mut rng) })
}

/// Complement of the graph [`sample_gnp`] returns for the same arguments.
pub fn sample_gnp_complement(n: usize, p: f64, seed: RngSeed) -> Result<Graph> {
    check_probability(p)?;
    let mut rng = seed.rng();
    Ok(if p > 0.5 { sample_sparse(n, 1.0 - p, &mut rng) } else { sample_sparse(n, p, &mut rng).complement() })
}

/// `G(n,m)`, uniform over graphs with `m` edges. For `m > C(n,2)/2` the
/// complement is drawn with `C(n,2) - m` edges.
pub fn sample_gnm(n: usize, m: usize, seed: RngSeed) -> Result<Graph> {
    let total = pair_count(n);
    if m > total {
        return Err(Error::InvalidParameter(format!("m = {m} exceeds C({n},2) = {total}")));
    }
    let mut rng = seed.rng();
    Ok(if 2 * m > total {
        sample_uniform_pairs(n, total - m, &mut rng).complement()
    } else {
        sample_uniform_pairs(n, m, &mut rng)
    })
}

/// Complement of the graph [`sample_gnm`] returns for the same arguments.
pub fn sample_gnm_complement(n: usize, m: usize, seed: RngSeed) -> Result<Graph> {
    let total = pair_count(n);
    if m > total {
        return Err(Error::InvalidParameter(format!("m = {m} exceeds C({n},2) = {total}")));
    }
    let mut rng = seed.rng();
    Ok(if 2 * m > total {
        sample_uniform_pairs(n, total - m, &mut rng)
    } else {
        sample_uniform_pairs(n, m, &mut rng).complement()
    })
}
