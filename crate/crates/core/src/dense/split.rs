//! Splitting sparse graphs into small trees and balancing their 2-colourings.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use super::peel::{two_core, CoreInfo};
use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph, VertexSet};

/// Component-size fraction `rho` in `(0, 1]`; trees end up with at most `rho * n` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rho(Ratio<i64>);

impl Rho {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den <= 0 || num <= 0 || num > den {
            return Err(Error::InvalidParameter(format!("rho = {num}/{den} outside (0, 1]")));
        }
        Ok(Rho(Ratio::new(num, den)))
    }

    /// `n^(-1/3)` rounded to six decimals, raised to `1/n` if smaller.
    pub fn default_for(n: usize) -> Self {
        const SCALE: i64 = 1_000_000;
        let n_i = n.max(1) as i64;
        let approx = ((n_i as f64).powf(-1.0 / 3.0) * SCALE as f64).round() as i64;
        let r = Ratio::new(approx.clamp(1, SCALE), SCALE);
        Rho(r.max(Ratio::new(1, n_i)))
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }

    /// `size <= rho * n`.
    pub fn fits(&self, size: usize, n: usize) -> bool {
        size as i128 * *self.0.denom() as i128 <= *self.0.numer() as i128 * n as i128
    }

    /// `count < d / rho`.
    pub fn below_d_over_rho(&self, count: i128, d: usize) -> bool {
        count * (*self.0.numer() as i128) < d as i128 * *self.0.denom() as i128
    }

    fn at_least_one_over(&self, n: usize) -> bool {
        *self.0.numer() as i128 * n as i128 >= *self.0.denom() as i128
    }
}

impl fmt::Display for Rho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Rho {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("cannot parse rho from {s:?}"));
        if let Some(r) = crate::scalar::parse_rational::<i64>(s) {
            return Rho::new(*r.numer(), *r.denom());
        }
        let x: f64 = s.trim().parse().map_err(|_| bad())?;
        let r = Ratio::<i64>::approximate_float(x).ok_or_else(bad)?;
        Rho::new(*r.numer(), *r.denom())
    }
}

/// Parameters of one forest split.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitParams {
    pub rho: Rho,
    pub max_degree_observed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestSplit {
    /// Removed edges, sorted.
    pub removed: Vec<(usize, usize)>,
    pub params: SplitParams,
    pub largest_component: usize,
}

struct Forest {
    adj: Vec<Vec<usize>>,
}

impl Forest {
    fn new(g: &Graph) -> Self {
        Forest { adj: (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect() }
    }

    fn component(&self, start: usize) -> Vec<usize> {
        let mut out = vec![start];
        let mut i = 0;
        let mut prev = vec![usize::MAX];
        while i < out.len() {
            let v = out[i];
            for &w in &self.adj[v] {
                if w != prev[i] {
                    out.push(w);
                    prev.push(v);
                }
            }
            i += 1;
        }
        out
    }

    fn cut_all(&mut self, v: usize, removed: &mut Vec<(usize, usize)>) -> Vec<usize> {
        let nbrs = std::mem::take(&mut self.adj[v]);
        for &w in &nbrs {
            self.adj[w].retain(|&x| x != v);
            removed.push((v.min(w), v.max(w)));
        }
        nbrs
    }

    /// Roots the tree containing `root` there and returns, for each visited
    /// vertex, its parent and subtree size.
    fn rooted_sizes(&self, root: usize, parent: &mut [usize], size: &mut [usize]) {
        let mut order = vec![root];
        parent[root] = usize::MAX;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for &w in &self.adj[v] {
                if w != parent[v] {
                    parent[w] = v;
                    order.push(w);
                }
            }
            i += 1;
        }
        for &v in order.iter().rev() {
            size[v] = 1 + self.adj[v].iter().filter(|&&w| w != parent[v]).map(|&w| size[w]).sum::<usize>();
        }
    }
}

fn components(n: usize, adj: impl Fn(usize) -> Vec<usize>) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            for w in adj(comp[i]) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        out.push(comp);
    }
    out
}

/// Cuts a forest into trees of at most `rho * n` vertices. While some tree is
/// too large, walk from its smallest leaf, always stepping to the smallest
/// neighbour whose side is still too large, and delete every edge at the
/// first vertex where no such neighbour remains. Fewer than `d / rho` edges
/// are removed, `d` being the maximum degree.
pub fn split_forest(f: &Graph, rho: Rho) -> Result<ForestSplit> {
    let n = f.n();
    if n == 0 || !rho.at_least_one_over(n) {
        return Err(Error::InvalidParameter(format!("rho = {rho} is below 1/n for n = {n}")));
    }
    let comps = components(n, |v| f.neighbors(v).to_vec());
    if f.m() + comps.len() != n {
        return Err(Error::NotAForest);
    }
    let d = f.max_degree();
    let mut forest = Forest::new(f);
    let mut removed = Vec::new();
    let mut pending: Vec<Vec<usize>> = comps.into_iter().filter(|c| !rho.fits(c.len(), n)).collect();
    let mut parent = vec![usize::MAX; n];
    let mut size = vec![0usize; n];

    while let Some(comp) = pending.pop() {
        let root = *comp
            .iter()
            .filter(|&&v| forest.adj[v].len() == 1)
            .min()
            .expect("a tree with two or more vertices has a leaf");
        forest.rooted_sizes(root, &mut parent, &mut size);
        let mut v = root;
        loop {
            let next = forest.adj[v]
                .iter()
                .copied()
                .filter(|&w| w != parent[v] && !rho.fits(size[w], n))
                .min();
            match next {
                Some(w) => v = w,
                None => break,
            }
        }
        for w in forest.cut_all(v, &mut removed) {
            let piece = forest.component(w);
            if !rho.fits(piece.len(), n) {
                pending.push(piece);
            }
        }
    }

    removed.sort_unstable();
    let largest_component =
        components(n, |v| forest.adj[v].clone()).iter().map(Vec::len).max().unwrap_or(0);
    if !rho.fits(largest_component, n) {
        return Err(Error::Postcondition(format!("component of {largest_component} vertices exceeds rho*n")));
    }
    if !removed.is_empty() && !rho.below_d_over_rho(removed.len() as i128, d) {
        return Err(Error::Postcondition(format!("removed {} edges, not below d/rho", removed.len())));
    }
    Ok(ForestSplit { removed, params: SplitParams { rho, max_degree_observed: d }, largest_component })
}

/// Balanced bipartition of a sparse graph cutting almost all of its edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseBipartition {
    pub bipartition: Bipartition,
    /// `e(G) - e(A, B)`.
    pub sacrificed: usize,
    pub cut_edges: usize,
    /// Non-tree edges dropped to reach a spanning forest.
    pub forest_removed: usize,
    pub split: ForestSplit,
    pub core: CoreInfo,
    pub max_degree: usize,
}

impl SparseBipartition {
    /// `||A| - |B||`.
    pub fn imbalance(&self) -> usize {
        let a = self.bipartition.part_a().len();
        let b = self.bipartition.n() - a;
        a.abs_diff(b)
    }

    /// Edges removed in total before 2-colouring.
    pub fn edges_removed(&self) -> usize {
        self.forest_removed + self.split.removed.len()
    }
}

/// Balanced bipartition `(A, B)` of a graph with at least `rho*n - 1`
/// isolated vertices such that `e(G) - e(A,B) < s + j + d/rho`, where `s` and
/// `j` are the excess and component count of the 2-core and `d` the maximum
/// degree.
///
/// Non-tree edges of a breadth-first spanning forest are dropped, the forest
/// is split with [`split_forest`], each tree is properly 2-coloured and,
/// largest tree first, its larger colour class joins the lighter side.
/// Isolated vertices then even out the sides.
pub fn balanced_bipartition_sparse(g: &Graph, rho: Rho) -> Result<SparseBipartition> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two vertices".into()));
    }
    let isolated = g.isolated_vertices();
    if (isolated as i128 + 1) * (*rho.ratio().denom() as i128) < *rho.ratio().numer() as i128 * n as i128 {
        return Err(Error::HypothesisUnmet { isolated, required: format!("{rho} * {n} - 1") });
    }
    let core = two_core(g);

    // breadth-first spanning forest rooted at the smallest vertex of each component
    let mut seen = vec![false; n];
    let mut tree = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    tree.push((v.min(w), v.max(w)));
                    queue.push_back(w);
                }
            }
        }
    }
    tree.sort_unstable();
    let forest_removed = g.m() - tree.len();
    if forest_removed as i64 != core.excess + core.components as i64 {
        return Err(Error::Postcondition(format!(
            "dropped {forest_removed} edges, core excess + components is {}",
            core.excess + core.components as i64
        )));
    }
    let forest = Graph::from_canonical(n, tree);
    let split = split_forest(&forest, rho)?;

    let mut pieces = Forest::new(&forest);
    for &(u, v) in &split.removed {
        pieces.adj[u].retain(|&x| x != v);
        pieces.adj[v].retain(|&x| x != u);
    }
    let mut trees = components(n, |v| pieces.adj[v].clone());
    let (mut singles, mut trees): (Vec<_>, Vec<_>) = trees.drain(..).partition(|c| c.len() == 1);
    for t in &mut trees {
        t.sort_unstable();
    }
    trees.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));

    let mut in_a = vec![false; n];
    let (mut size_a, mut size_b) = (0usize, 0usize);
    let mut colour = vec![0u8; n];
    for t in &trees {
        let root = t[0];
        colour[root] = 0;
        let mut order = vec![root];
        let mut visited = std::collections::HashSet::from([root]);
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for &w in &pieces.adj[v] {
                if visited.insert(w) {
                    colour[w] = 1 - colour[v];
                    order.push(w);
                }
            }
            i += 1;
        }
        let zeros = t.iter().filter(|&&v| colour[v] == 0).count();
        let ones = t.len() - zeros;
        let big: u8 = if ones > zeros { 1 } else { 0 };
        let to_a = size_a <= size_b;
        for &v in t {
            let joins_lighter = colour[v] == big;
            in_a[v] = joins_lighter == to_a;
        }
        let (big_n, small_n) = (zeros.max(ones), zeros.min(ones));
        if to_a {
            size_a += big_n;
            size_b += small_n;
        } else {
            size_b += big_n;
            size_a += small_n;
        }
    }
    singles.sort_unstable();
    for s in singles {
        let v = s[0];
        if size_a <= size_b {
            in_a[v] = true;
            size_a += 1;
        } else {
            size_b += 1;
        }
    }

    let part_a = VertexSet::from_vertices(n, (0..n).filter(|&v| in_a[v]))?;
    let bipartition = Bipartition::new(part_a)?;
    let cut_edges = g.edges().iter().filter(|&&(u, v)| in_a[u] != in_a[v]).count();
    let sacrificed = g.m() - cut_edges;
    let max_degree = g.max_degree();

    let out = SparseBipartition {
        bipartition,
        sacrificed,
        cut_edges,
        forest_removed,
        split,
        core,
        max_degree,
    };
    if out.imbalance() > 1 {
        return Err(Error::Postcondition(format!("sides differ by {}", out.imbalance())));
    }
    let over = sacrificed as i128 - out.core.excess as i128 - out.core.components as i128;
    let ok = if g.m() == 0 { sacrificed == 0 } else { over <= 0 || rho.below_d_over_rho(over, max_degree) };
    if !ok {
        return Err(Error::Postcondition(format!("sacrificed {sacrificed} edges, not below s + j + d/rho")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rho(a: i64, b: i64) -> Rho {
        Rho::new(a, b).unwrap()
    }

    #[test]
    fn path_of_ten() {
        let s = split_forest(&Graph::path(10), rho(3, 10)).unwrap();
        assert!(s.removed.len() <= 6);
        assert!(s.largest_component <= 3);
        assert_eq!(s.removed, vec![(1, 2), (2, 3), (5, 6), (6, 7)]);
    }

    #[test]
    fn star_is_cut_at_its_centre() {
        let star = Graph::complete_bipartite(1, 9).unwrap();
        let s = split_forest(&star, rho(1, 2)).unwrap();
        assert_eq!(s.removed.len(), 9);
        assert!(s.removed.iter().all(|&(u, _)| u == 0));
        assert_eq!(s.largest_component, 1);
    }

    #[test]
    fn small_forest_untouched() {
        let f = Graph::new(10, [(0, 1), (2, 3), (3, 4)]).unwrap();
        assert!(split_forest(&f, rho(1, 2)).unwrap().removed.is_empty());
    }

    #[test]
    fn rejects_cycles_and_tiny_rho() {
        assert!(matches!(split_forest(&Graph::cycle(5).unwrap(), rho(1, 2)), Err(Error::NotAForest)));
        assert!(split_forest(&Graph::path(10), rho(1, 20)).is_err());
    }

    #[test]
    fn empty_graph_balances() {
        let b = balanced_bipartition_sparse(&Graph::empty(10), rho(1, 2)).unwrap();
        assert_eq!(b.bipartition.part_a().len(), 5);
        assert_eq!(b.sacrificed, 0);
    }

    #[test]
    fn path_plus_isolated() {
        let n = 12;
        let g = Graph::new(2 * n, (1..n).map(|v| (v - 1, v))).unwrap();
        let b = balanced_bipartition_sparse(&g, rho(1, 2)).unwrap();
        assert!(b.imbalance() <= 1);
        assert!(b.sacrificed <= 5);
    }

    #[test]
    fn hypothesis_checked() {
        let g = Graph::path(10);
        assert!(matches!(balanced_bipartition_sparse(&g, rho(1, 2)), Err(Error::HypothesisUnmet { .. })));
    }

    #[test]
    fn rho_parsing_and_default() {
        assert_eq!("1/4".parse::<Rho>().unwrap(), rho(1, 4));
        assert_eq!("0.25".parse::<Rho>().unwrap(), rho(1, 4));
        assert!("2".parse::<Rho>().is_err());
        let r = Rho::default_for(1000);
        assert_eq!(r, rho(1, 10));
        assert!(Rho::default_for(1).fits(1, 1));
    }
}
