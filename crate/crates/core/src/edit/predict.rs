//! Closed-form edit distances for complete and complete bipartite graphs.

use std::fmt;

use crate::error::{Error, Result};

/// An edit distance, or `Infinite` when no edited graph has positive modularity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Delta {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Delta::Finite(k) => write!(f, "{k}"),
            Delta::Infinite => f.write_str("inf"),
        }
    }
}

/// Removal, addition and mixed distances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DeltaTriple {
    pub remove: Delta,
    pub add: Delta,
    pub both: Delta,
}

/// Fewest removals from `K_n` reaching positive modularity: `floor(n/2) + 1`.
pub fn predicted_delta_complete(n: usize) -> Result<usize> {
    if n <= 3 {
        return Err(Error::InvalidParameter(format!(
            "graphs on {n} <= 3 vertices never have positive modularity"
        )));
    }
    Ok(n / 2 + 1)
}

/// Distances for `K_{s,t}`. The arguments are taken in either order.
pub fn predicted_deltas_bipartite(s: usize, t: usize) -> Result<DeltaTriple> {
    let (s, t) = (s.min(t), s.max(t));
    if s == 0 {
        return Err(Error::InvalidParameter("both sides of K_{s,t} must be nonempty".into()));
    }
    use Delta::{Finite, Infinite};
    let remove = if s == 1 { Infinite } else { Finite(1) };
    let add = if (s == 1 && t >= 4) || (s >= 2 && t >= 3) { Finite(1) } else { Infinite };
    let both = match (s, t) {
        (1, 1) | (1, 2) => Infinite,
        (1, 3) => Finite(2),
        _ => Finite(1),
    };
    Ok(DeltaTriple { remove, add, both })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Delta::{Finite, Infinite};

    #[test]
    fn complete_graph_values() {
        assert_eq!(predicted_delta_complete(4).unwrap(), 3);
        assert_eq!(predicted_delta_complete(5).unwrap(), 3);
        assert_eq!(predicted_delta_complete(10).unwrap(), 6);
        assert!(predicted_delta_complete(3).is_err());
    }

    #[test]
    fn bipartite_table() {
        let t = |s, t| predicted_deltas_bipartite(s, t).unwrap();
        assert_eq!(t(1, 3), DeltaTriple { remove: Infinite, add: Infinite, both: Finite(2) });
        assert_eq!(t(2, 2), DeltaTriple { remove: Finite(1), add: Infinite, both: Finite(1) });
        assert_eq!(t(3, 7), DeltaTriple { remove: Finite(1), add: Finite(1), both: Finite(1) });
        assert_eq!(t(1, 1), DeltaTriple { remove: Infinite, add: Infinite, both: Infinite });
        assert_eq!(t(4, 1), DeltaTriple { remove: Infinite, add: Finite(1), both: Finite(1) });
        assert!(predicted_deltas_bipartite(0, 3).is_err());
        assert_eq!(Infinite.to_string(), "inf");
    }
}
