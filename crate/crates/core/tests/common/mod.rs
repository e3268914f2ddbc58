//! Independent reference computations used only by tests.
#![allow(dead_code)]

use modq::{Graph, Rational};
use proptest::prelude::*;

/// Modularity of the partition given by `labels`, straight from the definition.
pub fn oracle_score(n: usize, edges: &[(usize, usize)], labels: &[usize]) -> Rational {
    let m = edges.len() as i128;
    if m == 0 {
        return Rational::from_integer(0);
    }
    let mut deg = vec![0i128; n];
    let mut internal = 0i128;
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
        if labels[u] == labels[v] {
            internal += 1;
        }
    }
    let k = labels.iter().max().map_or(0, |&l| l + 1);
    let mut vol = vec![0i128; k];
    for v in 0..n {
        vol[labels[v]] += deg[v];
    }
    let tax: i128 = vol.iter().map(|x| x * x).sum();
    Rational::new(internal, m) - Rational::new(tax, 4 * m * m)
}

pub fn oracle_bipartition(g: &Graph, in_a: &[bool]) -> Rational {
    let labels: Vec<usize> = in_a.iter().map(|&a| usize::from(!a)).collect();
    oracle_score(g.n(), g.edges(), &labels)
}

/// Every set partition of `0..n` as a label vector, by inserting each
/// vertex into an existing block or a new one.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            let blocks = p.iter().max().map_or(0, |&b| b + 1);
            for b in 0..=blocks {
                let mut q = p.clone();
                q.push(b);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// `q*` by scoring every set partition.
pub fn oracle_qstar(g: &Graph) -> Rational {
    all_partitions(g.n())
        .iter()
        .map(|l| oracle_score(g.n(), g.edges(), l))
        .max()
        .unwrap_or_else(|| Rational::from_integer(0))
}

/// Best score over partitions with at most two parts (including the trivial one).
pub fn oracle_best_bipartition(g: &Graph) -> Rational {
    let n = g.n();
    (0u64..1 << n)
        .map(|mask| {
            let in_a: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
            oracle_bipartition(g, &in_a)
        })
        .max()
        .unwrap()
}

/// `p(U) = 2 e(U) vol(G) - vol(U)^2`.
pub fn oracle_p(g: &Graph, in_u: &[bool]) -> i128 {
    let mut e_u = 0i128;
    let mut vol_u = 0i128;
    for &(u, v) in g.edges() {
        if in_u[u] && in_u[v] {
            e_u += 1;
        }
        if in_u[u] {
            vol_u += 1;
        }
        if in_u[v] {
            vol_u += 1;
        }
    }
    2 * e_u * 2 * g.m() as i128 - vol_u * vol_u
}

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Random graph on `lo..=hi` vertices with edge density drawn per graph.
pub fn arb_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi, 0.05f64..0.95).prop_flat_map(|(n, density)| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(proptest::bool::weighted(density), pairs)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

/// Random graph with a random proper subset (given as membership flags).
pub fn arb_graph_and_set(lo: usize, hi: usize) -> impl Strategy<Value = (Graph, Vec<bool>)> {
    arb_graph(lo, hi).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), proptest::collection::vec(any::<bool>(), n)).prop_filter_map("proper nonempty subset", |(g, s)| {
            let k = s.iter().filter(|&&b| b).count();
            (k > 0 && k < s.len()).then_some((g, s))
        })
    })
}

pub fn set_of(flags: &[bool]) -> modq::VertexSet {
    modq::VertexSet::from_vertices(flags.len(), (0..flags.len()).filter(|&v| flags[v])).unwrap()
}
