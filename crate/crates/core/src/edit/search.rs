//! Iterative-deepening search for the fewest edits reaching `q* > 0`.

use num_traits::Signed;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Bipartition, Edit, EditKind, Graph, VertexSet};
use crate::modularity::{bipartition_score, MaskGraph, MASK_LIMIT, SUBSET_SCAN_CAP};
use crate::Score;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EditMode {
    RemoveOnly,
    AddOnly,
    Both,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Largest number of edits tried.
    pub budget: usize,
    /// Decide each level on orbit representatives of single edits before
    /// locating the lexicographically first witness. Results are identical.
    pub prune_symmetric: bool,
    /// Fan the first edit of each level out over worker threads.
    pub parallel: bool,
    /// Vertex cap for the inner bipartition scan.
    pub cap: usize,
}

impl SearchOptions {
    pub fn new(budget: usize) -> Self {
        SearchOptions { budget, prune_symmetric: false, parallel: true, cap: SUBSET_SCAN_CAP }
    }
}

/// A minimal edit set together with the bipartition certifying positivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EditCertificate {
    pub distance: usize,
    pub edits: Vec<Edit>,
    pub edited: Graph,
    pub witness: Bipartition,
    pub score: Score,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EditSearchResult {
    Found(EditCertificate),
    /// No edit set of size at most the budget yields positive modularity.
    NoneWithinBudget(usize),
}

impl EditSearchResult {
    pub fn distance(&self) -> Option<usize> {
        match self {
            EditSearchResult::Found(c) => Some(c.distance),
            EditSearchResult::NoneWithinBudget(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&EditCertificate> {
        match self {
            EditSearchResult::Found(c) => Some(c),
            EditSearchResult::NoneWithinBudget(_) => None,
        }
    }
}

/// Exact edit distance to positive modularity with default options.
pub fn edit_distance_to_positive(g: &Graph, mode: EditMode, budget: usize) -> Result<EditSearchResult> {
    edit_distance_with(g, mode, &SearchOptions::new(budget))
}

/// Tries edit counts `0, 1, ..., budget` in turn. At each level, edit sets
/// are enumerated lexicographically over candidate indices (edges for
/// removal, non-edges for addition, all pairs for mixed edits) and the first
/// one whose result has a positive bipartition is returned.
pub fn edit_distance_with(g: &Graph, mode: EditMode, opts: &SearchOptions) -> Result<EditSearchResult> {
    let cap = opts.cap.min(MASK_LIMIT);
    if g.n() > cap {
        return Err(Error::CapExceeded { what: "edit search", n: g.n(), cap });
    }
    if opts.budget < 1 {
        return Err(Error::InvalidParameter("budget must be at least 1".into()));
    }
    let base = MaskGraph::new(g);
    let cands = candidates(g, mode);

    if let Some((mask, _)) = base.first_positive_subset() {
        return certify(g, &cands, &[], mask).map(EditSearchResult::Found);
    }
    let reps = if opts.prune_symmetric { orbit_representatives(&base, &cands) } else { Vec::new() };
    for k in 1..=opts.budget.min(cands.len()) {
        if opts.prune_symmetric && !level_exists_pruned(&base, &cands, &reps, k, opts.parallel) {
            continue;
        }
        if let Some((chosen, mask)) = level_first(&base, &cands, k, opts.parallel) {
            return certify(g, &cands, &chosen, mask).map(EditSearchResult::Found);
        }
        debug_assert!(!opts.prune_symmetric, "pruned search found a level the full search missed");
    }
    Ok(EditSearchResult::NoneWithinBudget(opts.budget))
}

fn candidates(g: &Graph, mode: EditMode) -> Vec<Edit> {
    match mode {
        EditMode::RemoveOnly => g.edges().iter().map(|&(u, v)| Edit::remove(u, v)).collect(),
        EditMode::AddOnly => g.non_edges().into_iter().map(|(u, v)| Edit::add(u, v)).collect(),
        EditMode::Both => {
            let mut all = Vec::with_capacity(g.n() * g.n().saturating_sub(1) / 2);
            for u in 0..g.n() {
                for v in u + 1..g.n() {
                    all.push(if g.has_edge(u, v) { Edit::remove(u, v) } else { Edit::add(u, v) });
                }
            }
            all
        }
    }
}

fn certify(g: &Graph, cands: &[Edit], chosen: &[usize], mask: u64) -> Result<EditCertificate> {
    let edits: Vec<Edit> = chosen.iter().map(|&i| cands[i]).collect();
    let edited = g.with_edits(&edits)?;
    let witness = Bipartition::new(VertexSet::from_mask(g.n(), mask))?;
    let score = bipartition_score(&edited, &witness)?;
    if !score.score.is_positive() {
        return Err(Error::Postcondition("witness bipartition does not score positively".into()));
    }
    Ok(EditCertificate { distance: edits.len(), edits, edited, witness, score })
}

/// Lexicographically first `k`-subset of candidates giving positive modularity.
fn level_first(base: &MaskGraph, cands: &[Edit], k: usize, parallel: bool) -> Option<(Vec<usize>, u64)> {
    let n_cands = cands.len();
    let try_first = |i: usize| {
        let mut g = base.clone();
        toggle(&mut g, &cands[i]);
        let mut chosen = vec![i];
        dfs(&mut g, cands, i + 1, k - 1, None, &mut chosen).map(|mask| (chosen, mask))
    };
    let firsts = 0..=n_cands - k;
    if parallel {
        firsts.into_par_iter().find_map_first(try_first)
    } else {
        firsts.into_iter().find_map(try_first)
    }
}

/// Whether any `k`-subset gives positive modularity, trying only sets that
/// contain an orbit representative. Every edit set maps, under an automorphism
/// taking one of its edits to that edit's representative, onto such a set.
fn level_exists_pruned(base: &MaskGraph, cands: &[Edit], reps: &[usize], k: usize, parallel: bool) -> bool {
    let try_rep = |&r: &usize| {
        let mut g = base.clone();
        toggle(&mut g, &cands[r]);
        let mut chosen = vec![r];
        dfs(&mut g, cands, 0, k - 1, Some(r), &mut chosen).is_some()
    };
    if parallel {
        reps.par_iter().any(try_rep)
    } else {
        reps.iter().any(try_rep)
    }
}

fn dfs(
    g: &mut MaskGraph,
    cands: &[Edit],
    start: usize,
    remaining: usize,
    skip: Option<usize>,
    chosen: &mut Vec<usize>,
) -> Option<u64> {
    if remaining == 0 {
        return g.first_positive_subset().map(|(mask, _)| mask);
    }
    for j in start..cands.len() {
        if Some(j) == skip {
            continue;
        }
        if cands.len() - j < remaining {
            break;
        }
        toggle(g, &cands[j]);
        chosen.push(j);
        if let Some(mask) = dfs(g, cands, j + 1, remaining - 1, skip, chosen) {
            return Some(mask);
        }
        chosen.pop();
        let (u, v) = cands[j].pair();
        g.toggle(u, v);
    }
    None
}

fn toggle(g: &mut MaskGraph, e: &Edit) {
    let (u, v) = e.pair();
    debug_assert_eq!(g.adj[u] >> v & 1 == 1, e.kind == EditKind::Remove);
    g.toggle(u, v);
}

/// Twin classes: vertices with equal open neighbourhoods (non-adjacent twins)
/// or equal closed neighbourhoods (adjacent twins). Any permutation inside a
/// class is an automorphism. Returns the class label (smallest member) per vertex.
fn twin_classes(g: &MaskGraph) -> Vec<usize> {
    let n = g.n;
    let mut label: Vec<usize> = (0..n).collect();
    for u in 0..n {
        if label[u] != u {
            continue;
        }
        for v in u + 1..n {
            if label[v] != v {
                continue;
            }
            let open = g.adj[u] == g.adj[v];
            let closed = g.adj[u] | (1 << u) == g.adj[v] | (1 << v);
            if open || closed {
                label[v] = u;
            }
        }
    }
    label
}

/// First candidate (in candidate order) of each orbit of single edits under
/// the twin-class permutation group.
fn orbit_representatives(g: &MaskGraph, cands: &[Edit]) -> Vec<usize> {
    let label = twin_classes(g);
    let mut seen = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for (i, e) in cands.iter().enumerate() {
        let (u, v) = e.pair();
        let (a, b) = (label[u].min(label[v]), label[u].max(label[v]));
        if seen.insert((e.kind, a, b)) {
            reps.push(i);
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn complete_four_needs_three_removals() {
        let r = edit_distance_to_positive(&Graph::complete(4), EditMode::RemoveOnly, 5).unwrap();
        let c = r.certificate().unwrap();
        assert_eq!(c.distance, 3);
        assert!(c.score.score > Rational::from_integer(0));
        assert_eq!(
            edit_distance_to_positive(&Graph::complete(4), EditMode::RemoveOnly, 2).unwrap(),
            EditSearchResult::NoneWithinBudget(2)
        );
    }

    #[test]
    fn star_k13_mixed_edits() {
        let g = Graph::complete_bipartite(1, 3).unwrap();
        let r = edit_distance_to_positive(&g, EditMode::Both, 4).unwrap();
        let c = r.certificate().unwrap();
        assert_eq!(c.distance, 2);
        assert_eq!(c.score.score, Rational::new(1, 6));
        // the edited graph is a path on four vertices
        let mut degs = c.edited.degrees().to_vec();
        degs.sort();
        assert_eq!(degs, vec![1, 1, 2, 2]);
        assert_eq!(c.edited.m(), 3);
    }

    #[test]
    fn k22_cannot_gain_by_adding() {
        let g = Graph::complete_bipartite(2, 2).unwrap();
        assert_eq!(
            edit_distance_to_positive(&g, EditMode::AddOnly, 2).unwrap(),
            EditSearchResult::NoneWithinBudget(2)
        );
    }

    #[test]
    fn k133_single_removal() {
        let g = Graph::complete_multipartite(&[1, 3, 3]).unwrap();
        let r = edit_distance_to_positive(&g, EditMode::RemoveOnly, 2).unwrap();
        let c = r.certificate().unwrap();
        assert_eq!(c.distance, 1);
        assert_eq!(c.score.score, Rational::new(1, 56));
    }

    #[test]
    fn already_positive_is_distance_zero() {
        let r = edit_distance_to_positive(&Graph::path(4), EditMode::Both, 1).unwrap();
        assert_eq!(r.distance(), Some(0));
        assert!(r.certificate().unwrap().edits.is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            edit_distance_to_positive(&Graph::complete(4), EditMode::Both, 0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            edit_distance_to_positive(&Graph::empty(27), EditMode::Both, 1),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn pruning_and_parallelism_do_not_change_results() {
        let graphs = [
            Graph::complete(6),
            Graph::complete_multipartite(&[1, 3, 3]).unwrap(),
            Graph::complete_multipartite(&[2, 2, 2]).unwrap(),
            Graph::complete_bipartite(1, 3).unwrap(),
            Graph::complete_bipartite(2, 3).unwrap(),
        ];
        for g in &graphs {
            for mode in [EditMode::RemoveOnly, EditMode::AddOnly, EditMode::Both] {
                let mut reference = SearchOptions::new(3);
                reference.parallel = false;
                let expected = edit_distance_with(g, mode, &reference).unwrap();
                for (prune, parallel) in [(true, false), (false, true), (true, true)] {
                    let opts = SearchOptions { prune_symmetric: prune, parallel, ..reference.clone() };
                    assert_eq!(edit_distance_with(g, mode, &opts).unwrap(), expected, "{g:?} {mode:?}");
                }
            }
        }
    }

    #[test]
    fn twin_classes_of_multipartite() {
        let g = MaskGraph::new(&Graph::complete_multipartite(&[1, 3, 3]).unwrap());
        assert_eq!(twin_classes(&g), vec![0, 1, 1, 1, 4, 4, 4]);
        let k5 = MaskGraph::new(&Graph::complete(5));
        assert_eq!(twin_classes(&k5), vec![0; 5]);
    }
}
