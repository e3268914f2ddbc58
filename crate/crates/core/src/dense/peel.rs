use std::collections::VecDeque;

use crate::graph::{Graph, VertexSet};

/// The 2-core of a graph with its excess and component count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreInfo {
    pub core_vertices: VertexSet,
    pub core_edges: usize,
    /// Core edges minus core vertices.
    pub excess: i64,
    /// Connected components of the core.
    pub components: usize,
}

/// Repeatedly deletes vertices of degree at most one, using a FIFO queue.
/// What remains is empty or has minimum degree two.
pub fn two_core(g: &Graph) -> CoreInfo {
    let n = g.n();
    let mut deg: Vec<usize> = g.degrees().to_vec();
    let mut removed = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut queued: Vec<bool> = deg.iter().map(|&d| d <= 1).collect();
    while let Some(v) = queue.pop_front() {
        removed[v] = true;
        for &w in g.neighbors(v) {
            if removed[w] {
                continue;
            }
            deg[w] -= 1;
            if deg[w] <= 1 && !queued[w] {
                queued[w] = true;
                queue.push_back(w);
            }
        }
    }

    let core_vertices =
        VertexSet::from_vertices(n, (0..n).filter(|&v| !removed[v])).expect("vertices are in range");
    let core_edges = g.edges().iter().filter(|&&(u, v)| !removed[u] && !removed[v]).count();

    let mut components = 0;
    let mut seen = removed.clone();
    let mut stack = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        components += 1;
        seen[start] = true;
        stack.push(start);
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }

    CoreInfo {
        excess: core_edges as i64 - core_vertices.len() as i64,
        core_vertices,
        core_edges,
        components,
    }
}
