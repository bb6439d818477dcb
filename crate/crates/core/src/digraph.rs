//! Simple finite digraphs over dense vertex ids, bit-vector vertex sets, and
//! the reachability primitives the game engine is built on.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use thiserror::Error;

/// Largest vertex count representable by [`VertexSet`].
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate arc {u} -> {v}")]
    DuplicateArc { line: usize, u: usize, v: usize },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("{n} vertices exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices { n: usize },
    #[error("arc {u} -> {v} is not present")]
    ArcNotPresent { u: usize, v: usize },
}

/// A set of vertex ids `< 64`, stored as a bit vector.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1 << v)
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lexicographic order on the ascending member lists, so `{0,2} < {1}`
    /// and `{0} < {0,1}`. This is the tie-break order for cop moves.
    pub fn lex_cmp(self, other: VertexSet) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> Self {
        VertexSet(!self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for VertexIter {}

/// An immutable simple digraph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    out: Vec<VertexSet>,
    inc: Vec<VertexSet>,
}

impl Digraph {
    /// Arcless digraph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        Ok(Digraph {
            n,
            out: vec![VertexSet::EMPTY; n],
            inc: vec![VertexSet::EMPTY; n],
        })
    }

    /// Builds a digraph, rejecting self-loops, duplicates and out-of-range ids.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut d = Digraph::empty(n)?;
        for (i, &(u, v)) in arcs.iter().enumerate() {
            d.add_arc_checked(i + 1, u, v)?;
        }
        Ok(d)
    }

    /// Builds a digraph from out-neighbourhood bit masks. Bits at or above
    /// `n` and diagonal bits are rejected.
    pub fn from_adjacency(out: Vec<VertexSet>) -> Result<Self, GraphError> {
        let n = out.len();
        let mut d = Digraph::empty(n)?;
        for (u, row) in out.into_iter().enumerate() {
            for v in row.iter() {
                d.add_arc_checked(u + 1, u, v)?;
            }
        }
        Ok(d)
    }

    fn add_arc_checked(&mut self, line: usize, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n;
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { line, vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop { line, vertex: u });
        }
        if self.out[u].contains(v) {
            return Err(GraphError::DuplicateArc { line, u, v });
        }
        self.out[u].insert(v);
        self.inc[v].insert(u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|s| s.len()).sum()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn out_neighbours(&self, v: usize) -> VertexSet {
        self.out[v]
    }

    pub fn in_neighbours(&self, v: usize) -> VertexSet {
        self.inc[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out[u].contains(v)
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().map(move |v| (u, v)))
    }

    /// Parses the line-oriented edge-list format (see `docs/formats.md`).
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut declared: Option<usize> = None;
        let mut seen_arc = false;
        let mut arcs: Vec<(usize, usize, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let first = tokens.next().unwrap_or_default();
            if first == "n" {
                if declared.is_some() || seen_arc {
                    return Err(GraphError::Malformed {
                        line: line_no,
                        reason: "`n` header must be the first non-comment line".into(),
                    });
                }
                let count = tokens.next().ok_or_else(|| GraphError::Malformed {
                    line: line_no,
                    reason: "`n` header without a count".into(),
                })?;
                let count = parse_id(count, line_no)?;
                if tokens.next().is_some() {
                    return Err(GraphError::Malformed {
                        line: line_no,
                        reason: "trailing tokens after `n` header".into(),
                    });
                }
                if count > MAX_VERTICES {
                    return Err(GraphError::TooManyVertices { n: count });
                }
                declared = Some(count);
                continue;
            }
            let u = parse_id(first, line_no)?;
            let v = tokens
                .next()
                .ok_or_else(|| GraphError::Malformed {
                    line: line_no,
                    reason: "expected two vertex ids".into(),
                })
                .and_then(|t| parse_id(t, line_no))?;
            if tokens.next().is_some() {
                return Err(GraphError::Malformed {
                    line: line_no,
                    reason: "expected exactly two vertex ids".into(),
                });
            }
            seen_arc = true;
            arcs.push((line_no, u, v));
        }
        let n = match declared {
            Some(n) => n,
            None => arcs
                .iter()
                .map(|&(_, u, v)| u.max(v) + 1)
                .max()
                .unwrap_or(0),
        };
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        let mut d = Digraph::empty(n)?;
        for (line, u, v) in arcs {
            d.add_arc_checked(line, u, v)?;
        }
        Ok(d)
    }

    /// Writes the header followed by all arcs in lexicographic order.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for (u, v) in self.arcs() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    /// Vertices not in `forbidden` reachable from `sources ∖ forbidden` in
    /// `self ∖ forbidden`.
    pub fn reach(&self, sources: VertexSet, forbidden: VertexSet) -> VertexSet {
        let allowed = self.vertices() - forbidden;
        let mut seen = sources & allowed;
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next | self.out[v];
            }
            frontier = (next & allowed) - seen;
            seen = seen | frontier;
        }
        seen
    }

    /// Like [`Digraph::reach`] but along reversed arcs.
    pub fn reach_backward(&self, targets: VertexSet, forbidden: VertexSet) -> VertexSet {
        let allowed = self.vertices() - forbidden;
        let mut seen = targets & allowed;
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next | self.inc[v];
            }
            frontier = (next & allowed) - seen;
            seen = seen | frontier;
        }
        seen
    }

    /// Strongly connected components, ordered by smallest member.
    pub fn scc(&self) -> Vec<VertexSet> {
        self.scc_avoiding(VertexSet::EMPTY)
    }

    /// Strongly connected components of `self ∖ forbidden`.
    pub fn scc_avoiding(&self, forbidden: VertexSet) -> Vec<VertexSet> {
        let mut left = self.vertices() - forbidden;
        let mut classes = Vec::new();
        while let Some(v) = left.min() {
            let s = VertexSet::singleton(v);
            let class = self.reach(s, forbidden) & self.reach_backward(s, forbidden);
            classes.push(class);
            left = left - class;
        }
        classes
    }

    /// The strong component of `v` in `self ∖ forbidden`; empty if `v` is forbidden.
    pub fn scc_of(&self, v: usize, forbidden: VertexSet) -> VertexSet {
        let s = VertexSet::singleton(v);
        self.reach(s, forbidden) & self.reach_backward(s, forbidden)
    }

    pub fn is_acyclic(&self) -> bool {
        self.scc().iter().all(|c| c.len() == 1)
    }

    /// Induced subgraph on `keep`, relabelled densely in increasing id order.
    /// The returned map sends new ids to old ids.
    pub fn induced_subgraph(&self, keep: VertexSet) -> (Digraph, Vec<usize>) {
        let keep = keep & self.vertices();
        let map: Vec<usize> = keep.iter().collect();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &old) in map.iter().enumerate() {
            new_id[old] = i;
        }
        let out = map
            .iter()
            .map(|&u| (self.out[u] & keep).iter().map(|v| new_id[v]).collect())
            .collect();
        let d = Digraph::from_adjacency(out).expect("induced subgraph of a simple digraph");
        (d, map)
    }

    /// `self` with the arcs in `removed` deleted.
    pub fn delete_arcs(&self, removed: &[(usize, usize)]) -> Result<Digraph, GraphError> {
        let mut out = self.out.clone();
        for &(u, v) in removed {
            if !self.has_arc(u, v) {
                return Err(GraphError::ArcNotPresent { u, v });
            }
            out[u].remove(v);
        }
        Digraph::from_adjacency(out)
    }

    /// Reflexive reachability matrix: row `u` holds every `v` with `u → v`.
    pub fn transitive_closure(&self) -> Vec<VertexSet> {
        (0..self.n)
            .map(|u| self.reach(VertexSet::singleton(u), VertexSet::EMPTY))
            .collect()
    }

    /// The digraph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Digraph {
        assert_eq!(perm.len(), self.n, "permutation length");
        let mut out = vec![VertexSet::EMPTY; self.n];
        for (u, v) in self.arcs() {
            out[perm[u]].insert(perm[v]);
        }
        Digraph::from_adjacency(out).expect("relabelling preserves simplicity")
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Digraph(n={}, arcs={:?})",
            self.n,
            self.arcs().collect::<Vec<_>>()
        )
    }
}

fn parse_id(token: &str, line: usize) -> Result<usize, GraphError> {
    token.parse::<usize>().map_err(|_| GraphError::Malformed {
        line,
        reason: format!("`{token}` is not a non-negative integer"),
    })
}

/// A simple undirected graph, used as input to [`bidirect`] and the tree-width oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl UndirectedGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        let mut adj = vec![VertexSet::EMPTY; n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            let line = i + 1;
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { line, vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { line, vertex: u });
            }
            if adj[u].contains(v) {
                return Err(GraphError::DuplicateArc { line, u, v });
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(UndirectedGraph { n, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn neighbours(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = VertexSet::singleton(0);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next | self.adj[v];
            }
            frontier = next - seen;
            seen = seen | frontier;
        }
        seen == VertexSet::full(self.n)
    }

    /// Replaces every edge `{u, v}` by the arcs `(u, v)` and `(v, u)`.
    pub fn bidirect(&self) -> Digraph {
        Digraph::from_adjacency(self.adj.clone()).expect("undirected graph is simple")
    }
}

/// Bidirected digraph of the undirected edge list on `n` vertices.
pub fn bidirect(n: usize, edges: &[(usize, usize)]) -> Result<Digraph, GraphError> {
    Ok(UndirectedGraph::new(n, edges)?.bidirect())
}
