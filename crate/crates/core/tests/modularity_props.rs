mod common;

use common::*;
use modq::modularity::{bipartition_score, exact_modularity_capped};
use modq::{
    exact_modularity, has_positive_modularity, modularity_score, near_complete_upper_bound, p_value, Bipartition,
    Edit, Graph, Modularity, Rational, Score, Verdict,
};
use proptest::prelude::*;

fn zero() -> Rational {
    Rational::from_integer(0)
}

fn qstar(g: &Graph) -> Rational {
    let q: Modularity = exact_modularity(g).unwrap();
    q.value
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, max_global_rejects: 100_000, ..ProptestConfig::default() })]

    #[test]
    fn partition_scores_match_definition((g, flags) in arb_graph_and_set(2, 9), extra in any::<u64>()) {
        let n = g.n();
        // split the complement of the set into two further parts at random
        let labels: Vec<usize> = (0..n).map(|v| if flags[v] { 0 } else if extra >> v & 1 == 1 { 1 } else { 2 }).collect();
        let k = *labels.iter().max().unwrap() + 1;
        let parts: Vec<_> = (0..k)
            .filter(|&l| labels.contains(&l))
            .map(|l| modq::VertexSet::from_vertices(n, (0..n).filter(|&v| labels[v] == l)).unwrap())
            .collect();
        let s: Score = modularity_score(&g, &parts).unwrap();
        prop_assert_eq!(s.score, oracle_score(n, g.edges(), &labels));
        prop_assert_eq!(s.score, s.coverage - s.degree_tax);
    }

    #[test]
    fn partition_stats_are_consistent((g, flags) in arb_graph_and_set(2, 12)) {
        let stats = g.partition_stats(&Bipartition::new(set_of(&flags)).unwrap()).unwrap();
        prop_assert!(stats.is_consistent(g.m()));
    }

    #[test]
    fn complement_is_an_involution(g in arb_graph(1, 12)) {
        let h = g.complement();
        prop_assert_eq!(h.n(), g.n());
        prop_assert_eq!(g.m() + h.m(), g.n() * (g.n() - 1) / 2);
        prop_assert_eq!(h.complement(), g);
    }

    #[test]
    fn p_is_symmetric_and_matches_definition((g, flags) in arb_graph_and_set(2, 14)) {
        prop_assume!(g.m() > 0);
        let u = set_of(&flags);
        let p: i128 = p_value(&g, &u).unwrap();
        prop_assert_eq!(p, p_value::<i128>(&g, &u.complement()).unwrap());
        prop_assert_eq!(p, oracle_p(&g, &flags));
        // a bipartition scores 2 p(U) / vol(G)^2
        let nu = g.volume() as i128;
        let s: Score = bipartition_score(&g, &Bipartition::new(u).unwrap()).unwrap();
        prop_assert_eq!(s.score, Rational::new(2 * p, nu * nu));
    }

    #[test]
    fn exact_value_matches_brute_force(g in arb_graph(1, 7)) {
        let q: Modularity = exact_modularity(&g).unwrap();
        prop_assert_eq!(q.value, oracle_qstar(&g));
        let argmax: Score = modularity_score(&g, &q.argmax_sets(g.n())).unwrap();
        prop_assert_eq!(argmax.score, q.value);
    }

    #[test]
    fn positivity_agrees_with_exact_value(g in arb_graph(1, 10)) {
        let w = has_positive_modularity(&g).unwrap();
        prop_assert_eq!(w.verdict == Verdict::Positive, qstar(&g) > zero());
        if let Some(b) = w.bipartition() {
            prop_assert!(oracle_bipartition(&g, &(0..g.n()).map(|v| b.part_a().contains(v)).collect::<Vec<_>>()) > zero());
        }
    }

    #[test]
    fn removing_edges_moves_modularity_by_less_than_twice_the_fraction(
        g in arb_graph(2, 10),
        pick in proptest::collection::vec(any::<bool>(), 45),
    ) {
        prop_assume!(g.m() >= 2);
        let mut removed: Vec<Edit> = g.edges().iter().zip(&pick).filter(|(_, &p)| p).map(|(&(u, v), _)| Edit::remove(u, v)).collect();
        if removed.is_empty() {
            let (u, v) = g.edges()[0];
            removed.push(Edit::remove(u, v));
        }
        let h = g.with_edits(&removed).unwrap();
        let diff = qstar(&g) - qstar(&h);
        let diff = if diff < zero() { -diff } else { diff };
        prop_assert!(diff < Rational::new(2 * removed.len() as i128, g.m() as i128));
    }

    #[test]
    fn half_of_the_optimum_is_reached_by_two_parts(g in arb_graph(1, 7)) {
        let best = oracle_best_bipartition(&g);
        prop_assert!(best * Rational::from_integer(2) >= qstar(&g));
    }

    #[test]
    fn near_complete_bound_dominates(g in arb_graph(2, 8)) {
        prop_assume!(g.m() > 0);
        let bound: Rational = near_complete_upper_bound(&g).unwrap();
        prop_assert!(oracle_qstar(&g) <= bound);
    }

    #[test]
    fn moving_a_cut_edge_inside_raises_p((g, flags) in arb_graph_and_set(3, 12), a in any::<usize>(), b in any::<usize>()) {
        let cut: Vec<_> = g.edges().iter().copied().filter(|&(u, v)| flags[u] != flags[v]).collect();
        let slots: Vec<_> = g.non_edges().into_iter().filter(|&(u, v)| flags[u] == flags[v]).collect();
        prop_assume!(!cut.is_empty() && !slots.is_empty());
        let (cu, cv) = cut[a % cut.len()];
        let (su, sv) = slots[b % slots.len()];
        let moved = g.with_edits(&[Edit::remove(cu, cv), Edit::add(su, sv)]).unwrap();
        // p is measured on the part that receives the edge
        let side: Vec<bool> = flags.iter().map(|&f| f == flags[su]).collect();
        let u = set_of(&side);
        let before: i128 = p_value(&g, &u).unwrap();
        let after: i128 = p_value(&moved, &u).unwrap();
        prop_assert!(after > before);
    }

    #[test]
    fn removing_a_cut_edge_improves_a_nonnegative_bipartition(
        n in 3usize..=10,
        flags_bits in any::<u16>(),
        inside in proptest::collection::vec(proptest::bool::weighted(0.7), 45),
        across in proptest::collection::vec(proptest::bool::weighted(0.15), 45),
        pick in any::<usize>(),
    ) {
        let flags: Vec<bool> = (0..n).map(|v| flags_bits >> v & 1 == 1).collect();
        let k = flags.iter().filter(|&&f| f).count();
        prop_assume!(k > 0 && k < n);
        let mut edges = Vec::new();
        let mut i = 0;
        for u in 0..n {
            for v in u + 1..n {
                let keep = if flags[u] == flags[v] { inside[i] } else { across[i] };
                if keep {
                    edges.push((u, v));
                }
                i += 1;
            }
        }
        let g = Graph::new(n, edges).unwrap();
        let bip = Bipartition::new(set_of(&flags)).unwrap();
        let before = oracle_bipartition(&g, &flags);
        let cut: Vec<_> = g.edges().iter().copied().filter(|&(u, v)| flags[u] != flags[v]).collect();
        prop_assume!(before >= zero() && !cut.is_empty());
        let (u, v) = cut[pick % cut.len()];
        let h = g.with_edits(&[Edit::remove(u, v)]).unwrap();
        let after: Score = bipartition_score(&h, &bip).unwrap();
        prop_assert!(after.score > before);
        let m = g.m() as i128;
        prop_assert!(after.score - before >= Rational::new(1, 2 * (m - 1) * m));
    }
}

#[test]
fn known_values() {
    assert_eq!(qstar(&Graph::path(4)), Rational::new(1, 6));
    assert_eq!(qstar(&Graph::new(4, [(0, 1), (2, 3)]).unwrap()), Rational::new(1, 2));
    assert_eq!(qstar(&Graph::complete(3)), zero());
    let k4_minus_adjacent = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2)]).unwrap();
    assert_eq!(k4_minus_adjacent.m(), 4);
    assert_eq!(qstar(&k4_minus_adjacent), zero());
}

#[test]
fn caps_are_enforced() {
    assert!(exact_modularity::<i128>(&Graph::path(13)).is_err());
    assert!(exact_modularity_capped::<i128>(&Graph::path(5), 4).is_err());
    assert!(exact_modularity_capped::<i128>(&Graph::path(5), 5).is_ok());
    assert!(has_positive_modularity(&Graph::path(27)).is_err());
}
