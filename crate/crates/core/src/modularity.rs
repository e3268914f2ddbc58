//! Exact modularity scores, the `p(U)` positivity test and exact `q*` for small graphs.
//!
//! For a graph with `m >= 1` edges and volume `nu = 2m`, a partition scores
//!
//! ```text
//! q = (1/m) * sum e(A)  -  (1/nu^2) * sum vol(A)^2
//! ```
//!
//! and every score is a rational with denominator dividing `nu^2`. For a vertex
//! set `U`, `p(U) = 2 e(U) nu - vol(U)^2 = vol(U) vol(V\U) - e(U, V\U) nu`; a
//! bipartition `{U, V\U}` scores `2 p(U) / nu^2`, so `q* > 0` iff some `p(U) > 0`.
//! All positivity decisions below are integer sign tests.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph, VertexSet};
use crate::scalar::{int, ratio, ExactInt};

/// Default vertex cap for the bipartition scan.
pub const SUBSET_SCAN_CAP: usize = 26;
/// Default vertex cap for full set-partition enumeration.
pub const PARTITION_ENUM_CAP: usize = 12;
/// Bitmask search kernels use 64-bit words; no cap override may exceed this.
pub const MASK_LIMIT: usize = 63;

/// Coverage, degree tax and their difference for one partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreBreakdown<T: ExactInt> {
    pub coverage: Ratio<T>,
    pub degree_tax: Ratio<T>,
    pub score: Ratio<T>,
}

impl<T: ExactInt> ScoreBreakdown<T> {
    fn zero() -> Self {
        ScoreBreakdown {
            coverage: Ratio::from_integer(T::zero()),
            degree_tax: Ratio::from_integer(T::zero()),
            score: Ratio::from_integer(T::zero()),
        }
    }

    /// Breakdown from integer counts: `internal` edges inside parts, `sum_vol_sq`
    /// the sum of squared part volumes, on a graph with `m` edges.
    pub(crate) fn from_counts(m: i128, internal: i128, sum_vol_sq: i128) -> Result<Self> {
        if m == 0 {
            return Ok(Self::zero());
        }
        let nu = 2 * m;
        let nu_sq = nu.checked_mul(nu).ok_or(Error::Overflow)?;
        let num = nu
            .checked_mul(2)
            .and_then(|x| x.checked_mul(internal))
            .and_then(|x| x.checked_sub(sum_vol_sq))
            .ok_or(Error::Overflow)?;
        Ok(ScoreBreakdown {
            coverage: ratio(internal, m)?,
            degree_tax: ratio(sum_vol_sq, nu_sq)?,
            score: ratio(num, nu_sq)?,
        })
    }
}

/// Scores a partition given as a list of disjoint vertex sets covering `0..n`.
/// Graphs without edges score 0 for every partition.
pub fn modularity_score<T: ExactInt>(g: &Graph, parts: &[VertexSet]) -> Result<ScoreBreakdown<T>> {
    let owner = part_owner(g.n(), parts)?;
    let mut vol = vec![0i128; parts.len()];
    let mut internal = 0i128;
    for &(u, v) in g.edges() {
        if owner[u] == owner[v] {
            internal += 1;
        }
    }
    for v in 0..g.n() {
        vol[owner[v]] += g.degree(v) as i128;
    }
    if g.m() == 0 {
        return Ok(ScoreBreakdown::zero());
    }
    // Work in T directly so that BigInt callers are never limited by i128.
    let m: T = int(g.m() as i128)?;
    let nu = m.clone() + m.clone();
    let mut sum_sq = T::zero();
    for x in vol {
        let x: T = int(x)?;
        sum_sq = sum_sq + x.clone() * x;
    }
    let internal: T = int(internal)?;
    let nu_sq = nu.clone() * nu.clone();
    let two = T::one() + T::one();
    let num = two * nu * internal.clone() - sum_sq.clone();
    Ok(ScoreBreakdown {
        coverage: Ratio::new(internal, m),
        degree_tax: Ratio::new(sum_sq, nu_sq.clone()),
        score: Ratio::new(num, nu_sq),
    })
}

/// Scores the two sides of a bipartition (or the single part if trivial).
pub fn bipartition_score<T: ExactInt>(g: &Graph, b: &Bipartition) -> Result<ScoreBreakdown<T>> {
    b.check_host(g.n())?;
    modularity_score(g, &b.parts())
}

fn part_owner(n: usize, parts: &[VertexSet]) -> Result<Vec<usize>> {
    let mut owner = vec![usize::MAX; n];
    for (i, part) in parts.iter().enumerate() {
        if part.universe() != n {
            return Err(Error::VertexRangeMismatch { expected: n, found: part.universe() });
        }
        for v in part.iter() {
            if owner[v] != usize::MAX {
                return Err(Error::NotAPartition(format!("vertex {v} lies in parts {} and {i}", owner[v])));
            }
            owner[v] = i;
        }
    }
    if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::NotAPartition(format!("vertex {v} is in no part")));
    }
    Ok(owner)
}

/// `p(U) = 2 e(U) nu - vol(U)^2` for a proper nonempty `U`.
pub fn p_value<T: ExactInt>(g: &Graph, u: &VertexSet) -> Result<T> {
    if u.universe() != g.n() {
        return Err(Error::VertexRangeMismatch { expected: g.n(), found: u.universe() });
    }
    if u.is_empty() || u.len() == g.n() {
        return Err(Error::ImproperSubset);
    }
    let stats = g.partition_stats(&Bipartition::new(u.clone())?)?;
    let nu: T = int(g.volume() as i128)?;
    let e_u: T = int(stats.internal_edges_a as i128)?;
    let cut: T = int(stats.cut_edges as i128)?;
    let vol_u: T = int(stats.vol_a as i128)?;
    let vol_rest: T = int(stats.vol_b as i128)?;
    let two = T::one() + T::one();
    let inside_form = two * e_u * nu.clone() - vol_u.clone() * vol_u.clone();
    let cut_form = vol_u * vol_rest - cut * nu;
    debug_assert_eq!(inside_form, cut_form);
    Ok(cut_form)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Positive,
    Zero,
}

/// Outcome of the bipartition scan: a set `U` with `p(U) > 0`, or exhaustion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityWitness {
    pub verdict: Verdict,
    pub witness_set: Option<VertexSet>,
    pub p_value: Option<i64>,
}

impl PositivityWitness {
    pub fn is_positive(&self) -> bool {
        self.verdict == Verdict::Positive
    }

    /// The witness as a bipartition `{U, V\U}`.
    pub fn bipartition(&self) -> Option<Bipartition> {
        self.witness_set.clone().map(|u| Bipartition::new(u).expect("witness is proper"))
    }
}

/// Adjacency bitmasks for graphs with at most [`MASK_LIMIT`] vertices.
#[derive(Clone, Debug)]
pub(crate) struct MaskGraph {
    pub n: usize,
    pub adj: Vec<u64>,
    pub deg: Vec<i64>,
    pub m: i64,
}

impl MaskGraph {
    pub fn new(g: &Graph) -> Self {
        assert!(g.n() <= MASK_LIMIT);
        let mut adj = vec![0u64; g.n()];
        for &(u, v) in g.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        MaskGraph {
            n: g.n(),
            adj,
            deg: g.degrees().iter().map(|&d| d as i64).collect(),
            m: g.m() as i64,
        }
    }

    /// Adds the edge if absent, removes it if present.
    pub fn toggle(&mut self, u: usize, v: usize) {
        let bit = 1u64 << v;
        let delta = if self.adj[u] & bit != 0 { -1 } else { 1 };
        self.adj[u] ^= bit;
        self.adj[v] ^= 1 << u;
        self.deg[u] += delta;
        self.deg[v] += delta;
        self.m += delta;
    }

    /// Walks all proper subsets containing vertex 0 in binary-reflected Gray
    /// code order, updating `vol(U)` and `e(U, V\U)` per single-vertex move,
    /// and returns the first `U` (as a mask) with `p(U) > 0`.
    pub fn first_positive_subset(&self) -> Option<(u64, i64)> {
        let n = self.n;
        if self.m == 0 || n < 2 {
            return None;
        }
        let nu = 2 * self.m;
        let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
        let mut mask: u64 = 1;
        let mut vol = self.deg[0];
        let mut cut = self.deg[0];
        let p = vol * (nu - vol) - cut * nu;
        if p > 0 {
            return Some((mask, p));
        }
        for step in 1u64..(1u64 << (n - 1)) {
            let v = step.trailing_zeros() as usize + 1;
            let inside = (self.adj[v] & mask).count_ones() as i64;
            let outside = self.deg[v] - inside;
            if mask >> v & 1 == 1 {
                // v leaves U
                cut += inside - outside;
                vol -= self.deg[v];
            } else {
                cut += outside - inside;
                vol += self.deg[v];
            }
            mask ^= 1 << v;
            if mask == full {
                continue;
            }
            let p = vol * (nu - vol) - cut * nu;
            if p > 0 {
                return Some((mask, p));
            }
        }
        None
    }
}

fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(MASK_LIMIT);
    if n > cap {
        return Err(Error::CapExceeded { what, n, cap });
    }
    Ok(())
}

/// Decides `q* > 0` with the default cap of [`SUBSET_SCAN_CAP`] vertices.
pub fn has_positive_modularity(g: &Graph) -> Result<PositivityWitness> {
    has_positive_modularity_capped(g, SUBSET_SCAN_CAP)
}

/// Decides `q* > 0` by scanning all `2^(n-1) - 1` proper subsets containing
/// vertex 0. Refuses graphs with more than `cap` vertices.
pub fn has_positive_modularity_capped(g: &Graph, cap: usize) -> Result<PositivityWitness> {
    check_cap("bipartition scan", g.n(), cap)?;
    Ok(scan_mask_graph(&MaskGraph::new(g)))
}

pub(crate) fn scan_mask_graph(mg: &MaskGraph) -> PositivityWitness {
    match mg.first_positive_subset() {
        Some((mask, p)) => PositivityWitness {
            verdict: Verdict::Positive,
            witness_set: Some(VertexSet::from_mask(mg.n, mask)),
            p_value: Some(p),
        },
        None => PositivityWitness { verdict: Verdict::Zero, witness_set: None, p_value: None },
    }
}

/// Maximum modularity over all partitions together with one maximising partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactModularity<T: ExactInt> {
    pub value: Ratio<T>,
    pub argmax_partition: Vec<Vec<usize>>,
}

impl<T: ExactInt> ExactModularity<T> {
    pub fn argmax_sets(&self, n: usize) -> Vec<VertexSet> {
        self.argmax_partition
            .iter()
            .map(|p| VertexSet::from_vertices(n, p.iter().copied()).expect("argmax parts are in range"))
            .collect()
    }
}

/// Exact `q*` with the default cap of [`PARTITION_ENUM_CAP`] vertices.
pub fn exact_modularity<T: ExactInt>(g: &Graph) -> Result<ExactModularity<T>> {
    exact_modularity_capped(g, PARTITION_ENUM_CAP)
}

/// Exact `q*` by enumerating every set partition as a restricted-growth
/// string. The first maximiser in restricted-growth order is returned.
pub fn exact_modularity_capped<T: ExactInt>(g: &Graph, cap: usize) -> Result<ExactModularity<T>> {
    check_cap("partition enumeration", g.n(), cap)?;
    let n = g.n();
    if g.m() == 0 || n == 0 {
        return Ok(ExactModularity {
            value: Ratio::from_integer(T::zero()),
            argmax_partition: if n == 0 { Vec::new() } else { vec![(0..n).collect()] },
        });
    }
    let mg = MaskGraph::new(g);
    let mut search = PartitionSearch {
        mg: &mg,
        nu: 2 * mg.m,
        block_mask: Vec::with_capacity(n),
        block_vol: Vec::with_capacity(n),
        labels: vec![0; n],
        best: None,
    };
    search.descend(0, 0, 0);
    let (best_num, labels) = search.best.expect("at least one partition");
    let blocks = labels.iter().copied().max().unwrap_or(0) + 1;
    let mut parts = vec![Vec::new(); blocks];
    for (v, &b) in labels.iter().enumerate() {
        parts[b].push(v);
    }
    let nu = 2 * g.m() as i128;
    Ok(ExactModularity { value: ratio(best_num as i128, nu * nu)?, argmax_partition: parts })
}

struct PartitionSearch<'a> {
    mg: &'a MaskGraph,
    nu: i64,
    block_mask: Vec<u64>,
    block_vol: Vec<i64>,
    labels: Vec<usize>,
    best: Option<(i64, Vec<usize>)>,
}

impl PartitionSearch<'_> {
    /// Assigns vertex `v` to each existing block and to a fresh one.
    fn descend(&mut self, v: usize, internal: i64, sum_sq: i64) {
        if v == self.mg.n {
            let num = 2 * self.nu * internal - sum_sq;
            if self.best.as_ref().is_none_or(|(b, _)| num > *b) {
                self.best = Some((num, self.labels.clone()));
            }
            return;
        }
        let d = self.mg.deg[v];
        let adj = self.mg.adj[v];
        for b in 0..=self.block_mask.len() {
            let fresh = b == self.block_mask.len();
            if fresh {
                self.block_mask.push(0);
                self.block_vol.push(0);
            }
            let gained = (adj & self.block_mask[b]).count_ones() as i64;
            let old = self.block_vol[b];
            let sq = sum_sq + 2 * old * d + d * d;
            self.block_mask[b] |= 1 << v;
            self.block_vol[b] += d;
            self.labels[v] = b;
            self.descend(v + 1, internal + gained, sq);
            self.block_mask[b] &= !(1 << v);
            self.block_vol[b] = old;
            if fresh {
                self.block_mask.pop();
                self.block_vol.pop();
            }
        }
    }
}

/// Upper bound `q* <= 2 (C(n,2) - n/2 - m)^+ / m`, computed as `(n^2 - 2n - 2m)^+ / m`.
pub fn near_complete_upper_bound<T: ExactInt>(g: &Graph) -> Result<Ratio<T>> {
    near_complete_bound_from_counts(g.n(), g.m())
}

pub(crate) fn near_complete_bound_from_counts<T: ExactInt>(n: usize, m: usize) -> Result<Ratio<T>> {
    if m == 0 {
        return Err(Error::EmptyGraph);
    }
    let n = n as i128;
    let m = m as i128;
    let slack = (n * n - 2 * n - 2 * m).max(0);
    ratio(slack, m)
}

/// Formats parts as comma-separated vertex lists joined by `|`.
pub fn format_partition(parts: &[Vec<usize>]) -> String {
    parts
        .iter()
        .map(|p| p.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("|")
}

pub fn format_vertex_sets(parts: &[VertexSet]) -> String {
    format_partition(&parts.iter().map(VertexSet::to_vec).collect::<Vec<_>>())
}

/// Parses the `|`-separated partition format over `0..n`. Coverage and
/// disjointness are checked when the partition is scored.
pub fn parse_partition(text: &str, n: usize) -> Result<Vec<VertexSet>> {
    text.trim()
        .split('|')
        .map(|part| {
            let mut vs = Vec::new();
            for tok in part.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                vs.push(tok.parse::<usize>().map_err(|_| {
                    crate::ParseError::Malformed { what: "partition", text: text.to_string() }
                })?);
            }
            VertexSet::from_vertices(n, vs)
        })
        .collect()
}
