//! Immutable simple undirected graphs, vertex sets and bipartition bookkeeping.

use std::fmt;
use std::io::{BufRead, Write};

use fixedbitset::FixedBitSet;

use crate::error::{Error, ParseError, Result};

/// Simple undirected graph on vertices `0..n`.
///
/// Edges are kept in canonical form: every pair is `(u, v)` with `u < v` and
/// the list is strictly increasing, so structurally equal graphs compare equal.
/// Degrees and sorted adjacency lists are stored alongside the edge list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    degrees: Vec<usize>,
    adjacency: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.edges.len())
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an arbitrary list of pairs. Pairs may be given in
    /// either orientation and any order; loops and duplicates are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut canon = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_canonical(n, canon))
    }

    /// `edges` must already be strictly sorted with `u < v < n`.
    pub(crate) fn from_canonical(n: usize, edges: Vec<(usize, usize)>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|&(u, v)| u < v && v < n));
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let degrees = adjacency.iter().map(Vec::len).collect();
        Graph { n, edges, degrees, adjacency }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_canonical(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::from_canonical(n, edges)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::from_canonical(n, (1..n).map(|v| (v - 1, v)).collect())
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
        }
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// Complete multipartite graph. Parts occupy consecutive index ranges in
    /// the order given; an edge joins two vertices iff they lie in different
    /// parts. All-ones sizes give `K_n`, two sizes give `K_{s,t}`.
    pub fn complete_multipartite(part_sizes: &[usize]) -> Result<Self> {
        if part_sizes.is_empty() {
            return Err(Error::InvalidParameter("empty part list".into()));
        }
        if let Some(i) = part_sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidParameter(format!("part {i} has size zero")));
        }
        let n: usize = part_sizes.iter().sum();
        let mut label = Vec::with_capacity(n);
        for (i, &s) in part_sizes.iter().enumerate() {
            label.extend(std::iter::repeat_n(i, s));
        }
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if label[u] != label[v] {
                    edges.push((u, v));
                }
            }
        }
        Ok(Self::from_canonical(n, edges))
    }

    /// `K_{s,t}` with the size-`s` side on `0..s`.
    pub fn complete_bipartite(s: usize, t: usize) -> Result<Self> {
        Self::complete_multipartite(&[s, t])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Sum of degrees, `2m`.
    pub fn volume(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Canonical index of an edge in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Missing pairs `(u, v)`, `u < v`, in lexicographic order.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            let mut nb = self.adjacency[u].iter().copied().filter(|&w| w > u).peekable();
            for v in u + 1..self.n {
                if nb.peek() == Some(&v) {
                    nb.next();
                } else {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        Graph::from_canonical(self.n, self.non_edges())
    }

    pub fn isolated_vertices(&self) -> usize {
        self.degrees.iter().filter(|&&d| d == 0).count()
    }

    /// Applies a set of edits, producing a new graph.
    pub fn with_edits(&self, edits: &[Edit]) -> Result<Graph> {
        let mut present: std::collections::BTreeSet<(usize, usize)> =
            self.edges.iter().copied().collect();
        for e in edits {
            let (u, v) = e.pair();
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            let ok = match e.kind {
                EditKind::Add => present.insert((u, v)),
                EditKind::Remove => present.remove(&(u, v)),
            };
            if !ok {
                return Err(Error::InvalidParameter(format!("edit {e} does not apply")));
            }
        }
        Ok(Graph::from_canonical(self.n, present.into_iter().collect()))
    }

    /// Exact edge and volume counts for a bipartition.
    pub fn partition_stats(&self, b: &Bipartition) -> Result<PartitionStats> {
        b.check_host(self.n)?;
        let a = b.part_a();
        let mut stats = PartitionStats::default();
        for &(u, v) in &self.edges {
            match (a.contains(u), a.contains(v)) {
                (true, true) => stats.internal_edges_a += 1,
                (false, false) => stats.internal_edges_b += 1,
                _ => stats.cut_edges += 1,
            }
        }
        stats.vol_a = a.iter().map(|v| self.degrees[v]).sum();
        stats.vol_b = self.volume() - stats.vol_a;
        debug_assert!(stats.is_consistent(self.m()));
        Ok(stats)
    }

    /// Reads the edge-list format: a header line `n m` followed by `m` lines `u v`.
    pub fn parse<R: BufRead>(reader: R) -> Result<Graph> {
        let mut lines = reader.lines().enumerate();
        let header = loop {
            match lines.next() {
                Some((_, line)) => {
                    let line = line?;
                    if !line.trim().is_empty() {
                        break line;
                    }
                }
                None => return Err(ParseError::MalformedHeader(String::new()).into()),
            }
        };
        let head: Vec<&str> = header.split_whitespace().collect();
        let (n, m) = match head.as_slice() {
            [a, b] => match (a.parse::<usize>(), b.parse::<usize>()) {
                (Ok(n), Ok(m)) => (n, m),
                _ => return Err(ParseError::MalformedHeader(header.clone()).into()),
            },
            _ => return Err(ParseError::MalformedHeader(header.clone()).into()),
        };
        let mut edges = Vec::with_capacity(m);
        let mut lineno = Vec::with_capacity(m);
        for (idx, line) in lines {
            let line = line?;
            let text = line.trim();
            if text.is_empty() {
                continue;
            }
            let line_no = idx + 1;
            let fields: Vec<&str> = text.split_whitespace().collect();
            let (u, v) = match fields.as_slice() {
                [a, b] => match (a.parse::<usize>(), b.parse::<usize>()) {
                    (Ok(u), Ok(v)) => (u, v),
                    _ => {
                        return Err(ParseError::MalformedEdge { line: line_no, text: text.into() }.into())
                    }
                },
                _ => return Err(ParseError::MalformedEdge { line: line_no, text: text.into() }.into()),
            };
            for w in [u, v] {
                if w >= n {
                    return Err(ParseError::VertexOutOfRange { line: line_no, vertex: w, n }.into());
                }
            }
            if u == v {
                return Err(ParseError::Loop { line: line_no, vertex: u }.into());
            }
            edges.push((u.min(v), u.max(v)));
            lineno.push(line_no);
        }
        if edges.len() != m {
            return Err(ParseError::EdgeCount { declared: m, found: edges.len() }.into());
        }
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_unstable_by_key(|&i| (edges[i], lineno[i]));
        for w in order.windows(2) {
            if edges[w[0]] == edges[w[1]] {
                let (u, v) = edges[w[1]];
                return Err(ParseError::DuplicateEdge { line: lineno[w[1]], u, v }.into());
            }
        }
        edges.sort_unstable();
        Ok(Graph::from_canonical(n, edges))
    }

    pub fn parse_str(text: &str) -> Result<Graph> {
        Self::parse(text.as_bytes())
    }

    /// Writes the canonical edge-list form.
    pub fn write<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{} {}", self.n, self.m())?;
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }

    pub fn to_edge_list(&self) -> String {
        let mut buf = Vec::new();
        self.write(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("edge list is ASCII")
    }
}

/// Subset of the vertex range `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet { bits: FixedBitSet::with_capacity(n) }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        VertexSet { bits }
    }

    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = Self::new(n);
        for v in vertices {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            set.bits.insert(v);
        }
        Ok(set)
    }

    /// Set whose members are the low `n` bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut set = Self::new(n);
        for v in 0..n.min(64) {
            if mask >> v & 1 == 1 {
                set.bits.insert(v);
            }
        }
        set
    }

    /// Size of the host vertex range.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    pub fn insert(&mut self, v: usize) {
        self.bits.insert(v);
    }

    pub fn remove(&mut self, v: usize) {
        self.bits.set(v, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn complement(&self) -> VertexSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        VertexSet { bits }
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Two-part vertex partition stored as one side; the other side is implied.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bipartition {
    part_a: VertexSet,
    trivial: bool,
}

impl Bipartition {
    /// Proper bipartition: both sides must be nonempty.
    pub fn new(part_a: VertexSet) -> Result<Self> {
        if part_a.is_empty() || part_a.len() == part_a.universe() {
            return Err(Error::ImproperSubset);
        }
        Ok(Bipartition { part_a, trivial: false })
    }

    pub fn from_vertices(n: usize, part_a: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(VertexSet::from_vertices(n, part_a)?)
    }

    /// The one-part partition, `A = V`.
    pub fn trivial(n: usize) -> Self {
        Bipartition { part_a: VertexSet::full(n), trivial: true }
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn n(&self) -> usize {
        self.part_a.universe()
    }

    pub fn part_a(&self) -> &VertexSet {
        &self.part_a
    }

    pub fn part_b(&self) -> VertexSet {
        self.part_a.complement()
    }

    /// Both sides as a list of parts (one part if trivial).
    pub fn parts(&self) -> Vec<VertexSet> {
        if self.trivial {
            vec![self.part_a.clone()]
        } else {
            vec![self.part_a.clone(), self.part_b()]
        }
    }

    pub(crate) fn check_host(&self, n: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::VertexRangeMismatch { expected: n, found: self.n() });
        }
        Ok(())
    }
}

/// Exact edge and volume counts of a bipartition `(A, B)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PartitionStats {
    pub internal_edges_a: usize,
    pub internal_edges_b: usize,
    pub cut_edges: usize,
    pub vol_a: usize,
    pub vol_b: usize,
}

impl PartitionStats {
    pub fn is_consistent(&self, m: usize) -> bool {
        self.internal_edges_a + self.internal_edges_b + self.cut_edges == m
            && self.vol_a == 2 * self.internal_edges_a + self.cut_edges
            && self.vol_b == 2 * self.internal_edges_b + self.cut_edges
            && self.vol_a + self.vol_b == 2 * m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EditKind {
    Add,
    Remove,
}

/// Addition or removal of the pair `{u, v}`; stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edit {
    pub kind: EditKind,
    u: usize,
    v: usize,
}

impl Edit {
    pub fn new(kind: EditKind, u: usize, v: usize) -> Self {
        Edit { kind, u: u.min(v), v: u.max(v) }
    }

    pub fn add(u: usize, v: usize) -> Self {
        Self::new(EditKind::Add, u, v)
    }

    pub fn remove(u: usize, v: usize) -> Self {
        Self::new(EditKind::Remove, u, v)
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.u, self.v)
    }
}

impl fmt::Display for Edit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.kind {
            EditKind::Add => '+',
            EditKind::Remove => '-',
        };
        write!(f, "{sign}{} {}", self.u, self.v)
    }
}
