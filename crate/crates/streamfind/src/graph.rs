//! In-memory graph representations: simple undirected graphs and oriented
//! graphs over dense vertex ids `0..n`, plus the elementary operations the
//! pattern analysis, generators and oracle are built on.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Default cap for operations that materialize O(n^2) structure.
pub const DEFAULT_SCALE_LIMIT: usize = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range (n = {1})")]
    OutOfRange(u32, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(u32, u32),
    #[error("pair {{{0}, {1}}} carries two arcs; oriented graphs allow at most one")]
    TwinArc(u32, u32),
    #[error("scale exceeded: n = {0} over limit {1}")]
    ScaleExceeded(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Simple undirected graph. Edges are stored as `(u, v)` with `u < v`;
/// neighbor lists are sorted.
#[derive(Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    edges: BTreeSet<(u32, u32)>,
    adj: Vec<Vec<u32>>,
}

impl fmt::Debug for UndirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UndirectedGraph(n={}, m={}, {:?})", self.n, self.edges.len(), self.edges)
    }
}

impl UndirectedGraph {
    pub fn new(n: usize) -> Self {
        UndirectedGraph { n, edges: BTreeSet::new(), adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: u32, v: u32) -> Result<(), GraphError> {
        if u as usize >= self.n {
            return Err(GraphError::OutOfRange(u, self.n));
        }
        if v as usize >= self.n {
            return Err(GraphError::OutOfRange(v, self.n));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let key = (u.min(v), u.max(v));
        if !self.edges.insert(key) {
            return Err(GraphError::DuplicateEdge(key.0, key.1));
        }
        let pos = self.adj[u as usize].binary_search(&v).unwrap_err();
        self.adj[u as usize].insert(pos, v);
        let pos = self.adj[v as usize].binary_search(&u).unwrap_err();
        self.adj[v as usize].insert(pos, u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_vec(&self) -> Vec<(u32, u32)> {
        self.edges.iter().copied().collect()
    }

    /// Complement within the configured scale limit.
    pub fn complement(&self, limit: usize) -> Result<UndirectedGraph, GraphError> {
        if self.n > limit {
            return Err(GraphError::ScaleExceeded(self.n, limit));
        }
        let mut g = UndirectedGraph::new(self.n);
        for u in 0..self.n as u32 {
            for v in (u + 1)..self.n as u32 {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        Ok(g)
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn connected_components(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n as u32 {
            if seen[s as usize] {
                continue;
            }
            let mut comp = vec![s];
            seen[s as usize] = true;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in self.neighbors(x) {
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on `verts`; returns the subgraph together with the
    /// map from new ids to original ids (sorted order of `verts`).
    pub fn induced(&self, verts: &[u32]) -> (UndirectedGraph, Vec<u32>) {
        let mut ids: Vec<u32> = verts.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let index = |v: u32| ids.binary_search(&v).unwrap() as u32;
        let mut g = UndirectedGraph::new(ids.len());
        for &(u, v) in &self.edges {
            if ids.binary_search(&u).is_ok() && ids.binary_search(&v).is_ok() {
                g.add_edge(index(u), index(v)).unwrap();
            }
        }
        (g, ids)
    }

    /// Proper 2-coloring per component, or None if some component is odd.
    pub fn bipartition(&self) -> Option<(Vec<u32>, Vec<u32>)> {
        let mut color = vec![-1i8; self.n];
        for s in 0..self.n as u32 {
            if color[s as usize] >= 0 {
                continue;
            }
            color[s as usize] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in self.neighbors(x) {
                    if color[y as usize] < 0 {
                        color[y as usize] = 1 - color[x as usize];
                        queue.push_back(y);
                    } else if color[y as usize] == color[x as usize] {
                        return None;
                    }
                }
            }
        }
        let mut a = Vec::new();
        let mut b = Vec::new();
        for v in 0..self.n as u32 {
            if color[v as usize] == 0 {
                a.push(v)
            } else {
                b.push(v)
            }
        }
        Some((a, b))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// BFS distances from `s`; unreachable vertices get `usize::MAX`.
    pub fn bfs_dist(&self, s: u32) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[s as usize] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in self.neighbors(x) {
                if dist[y as usize] == usize::MAX {
                    dist[y as usize] = dist[x as usize] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// True when the graph is a forest (acyclic).
    pub fn is_forest(&self) -> bool {
        self.m() + self.connected_components().len() == self.n
    }
}

/// Oriented graph: at most one arc per vertex pair, no loops.
#[derive(Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    n: usize,
    arcs: BTreeSet<(u32, u32)>,
    out_adj: Vec<Vec<u32>>,
    in_adj: Vec<Vec<u32>>,
}

impl fmt::Debug for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrientedGraph(n={}, m={}, {:?})", self.n, self.arcs.len(), self.arcs)
    }
}

impl OrientedGraph {
    pub fn new(n: usize) -> Self {
        OrientedGraph {
            n,
            arcs: BTreeSet::new(),
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
        }
    }

    pub fn from_arcs(n: usize, arcs: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut g = Self::new(n);
        for &(u, v) in arcs {
            g.add_arc(u, v)?;
        }
        Ok(g)
    }

    pub fn add_arc(&mut self, u: u32, v: u32) -> Result<(), GraphError> {
        if u as usize >= self.n {
            return Err(GraphError::OutOfRange(u, self.n));
        }
        if v as usize >= self.n {
            return Err(GraphError::OutOfRange(v, self.n));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.arcs.contains(&(v, u)) {
            return Err(GraphError::TwinArc(u.min(v), u.max(v)));
        }
        if !self.arcs.insert((u, v)) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        let pos = self.out_adj[u as usize].binary_search(&v).unwrap_err();
        self.out_adj[u as usize].insert(pos, v);
        let pos = self.in_adj[v as usize].binary_search(&u).unwrap_err();
        self.in_adj[v as usize].insert(pos, u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, u: u32, v: u32) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn out_neighbors(&self, v: u32) -> &[u32] {
        &self.out_adj[v as usize]
    }

    pub fn in_neighbors(&self, v: u32) -> &[u32] {
        &self.in_adj[v as usize]
    }

    pub fn out_degree(&self, v: u32) -> usize {
        self.out_adj[v as usize].len()
    }

    pub fn in_degree(&self, v: u32) -> usize {
        self.in_adj[v as usize].len()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn arc_vec(&self) -> Vec<(u32, u32)> {
        self.arcs.iter().copied().collect()
    }

    /// Underlying undirected simple graph: one edge per arc.
    pub fn underlying(&self) -> UndirectedGraph {
        let mut g = UndirectedGraph::new(self.n);
        for &(u, v) in &self.arcs {
            g.add_edge(u, v).unwrap();
        }
        g
    }

    /// Reverse every arc.
    pub fn reversed(&self) -> OrientedGraph {
        let mut g = OrientedGraph::new(self.n);
        for &(u, v) in &self.arcs {
            g.add_arc(v, u).unwrap();
        }
        g
    }

    /// Vertex has both an in-arc and an out-arc.
    pub fn is_nwo_vertex(&self, v: u32) -> bool {
        self.in_degree(v) > 0 && self.out_degree(v) > 0
    }

    pub fn nwo_vertices(&self) -> Vec<u32> {
        (0..self.n as u32).filter(|&v| self.is_nwo_vertex(v)).collect()
    }

    pub fn induced(&self, verts: &[u32]) -> (OrientedGraph, Vec<u32>) {
        let mut ids: Vec<u32> = verts.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let index = |v: u32| ids.binary_search(&v).unwrap() as u32;
        let mut g = OrientedGraph::new(ids.len());
        for &(u, v) in &self.arcs {
            if ids.binary_search(&u).is_ok() && ids.binary_search(&v).is_ok() {
                g.add_arc(index(u), index(v)).unwrap();
            }
        }
        (g, ids)
    }
}

/// Either kind of graph, for interfaces that accept both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyGraph {
    Undirected(UndirectedGraph),
    Oriented(OrientedGraph),
}

impl AnyGraph {
    pub fn n(&self) -> usize {
        match self {
            AnyGraph::Undirected(g) => g.n(),
            AnyGraph::Oriented(g) => g.n(),
        }
    }

    pub fn m(&self) -> usize {
        match self {
            AnyGraph::Undirected(g) => g.m(),
            AnyGraph::Oriented(g) => g.m(),
        }
    }

    pub fn underlying(&self) -> UndirectedGraph {
        match self {
            AnyGraph::Undirected(g) => g.clone(),
            AnyGraph::Oriented(g) => g.underlying(),
        }
    }
}

/// Injective map pattern vertex -> host vertex. `map[i]` is the host image of
/// pattern vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub map: Vec<u32>,
}

impl Embedding {
    pub fn new(map: Vec<u32>) -> Self {
        Embedding { map }
    }

    fn injective(&self) -> bool {
        let mut sorted = self.map.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// Every pattern edge maps to a host edge; in induced mode every pattern
    /// non-edge maps to a host non-edge.
    pub fn is_valid_undirected(
        &self,
        pattern: &UndirectedGraph,
        host: &UndirectedGraph,
        induced: bool,
    ) -> bool {
        if self.map.len() != pattern.n() || !self.injective() {
            return false;
        }
        if self.map.iter().any(|&v| v as usize >= host.n()) {
            return false;
        }
        for u in 0..pattern.n() as u32 {
            for v in (u + 1)..pattern.n() as u32 {
                let pe = pattern.has_edge(u, v);
                let he = host.has_edge(self.map[u as usize], self.map[v as usize]);
                if pe && !he {
                    return false;
                }
                if induced && !pe && he {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_valid_oriented(
        &self,
        pattern: &OrientedGraph,
        host: &OrientedGraph,
        induced: bool,
    ) -> bool {
        if self.map.len() != pattern.n() || !self.injective() {
            return false;
        }
        if self.map.iter().any(|&v| v as usize >= host.n()) {
            return false;
        }
        for u in 0..pattern.n() as u32 {
            for v in 0..pattern.n() as u32 {
                if u == v {
                    continue;
                }
                let pa = pattern.has_arc(u, v);
                let ha = host.has_arc(self.map[u as usize], self.map[v as usize]);
                if pa && !ha {
                    return false;
                }
                if induced && !pa && ha {
                    return false;
                }
            }
        }
        true
    }
}

/// Text edge-list format. First line `n m mode` with mode `u` or `d`, then
/// one `u v` line per edge/arc in stored order.
pub fn write_edge_list(g: &AnyGraph) -> String {
    let mut s = String::new();
    match g {
        AnyGraph::Undirected(g) => {
            s.push_str(&format!("{} {} u\n", g.n(), g.m()));
            for (u, v) in g.edges() {
                s.push_str(&format!("{} {}\n", u, v));
            }
        }
        AnyGraph::Oriented(g) => {
            s.push_str(&format!("{} {} d\n", g.n(), g.m()));
            for (u, v) in g.arcs() {
                s.push_str(&format!("{} {}\n", u, v));
            }
        }
    }
    s
}

pub fn parse_edge_list(text: &str) -> Result<AnyGraph, GraphError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| GraphError::Parse("empty input".into()))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(GraphError::Parse(format!("bad header `{}`", header)));
    }
    let n: usize =
        parts[0].parse().map_err(|_| GraphError::Parse(format!("bad n `{}`", parts[0])))?;
    let m: usize =
        parts[1].parse().map_err(|_| GraphError::Parse(format!("bad m `{}`", parts[1])))?;
    let mode = parts[2];
    let mut pairs = Vec::with_capacity(m);
    for line in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let u: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GraphError::Parse(format!("bad edge line `{}`", line)))?;
        let v: u32 = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| GraphError::Parse(format!("bad edge line `{}`", line)))?;
        pairs.push((u, v));
    }
    if pairs.len() != m {
        return Err(GraphError::Parse(format!("expected {} lines, got {}", m, pairs.len())));
    }
    match mode {
        "u" => Ok(AnyGraph::Undirected(UndirectedGraph::from_edges(n, &pairs)?)),
        "d" => Ok(AnyGraph::Oriented(OrientedGraph::from_arcs(n, &pairs)?)),
        other => Err(GraphError::Parse(format!("bad mode `{}`", other))),
    }
}

/// Small named patterns used across tests and the CLI.
pub mod patterns {
    use super::UndirectedGraph;

    pub fn path(len_vertices: usize) -> UndirectedGraph {
        let edges: Vec<(u32, u32)> = (0..len_vertices - 1).map(|i| (i as u32, i as u32 + 1)).collect();
        UndirectedGraph::from_edges(len_vertices, &edges).unwrap()
    }

    pub fn cycle(len: usize) -> UndirectedGraph {
        let mut edges: Vec<(u32, u32)> = (0..len - 1).map(|i| (i as u32, i as u32 + 1)).collect();
        edges.push((len as u32 - 1, 0));
        UndirectedGraph::from_edges(len, &edges).unwrap()
    }

    pub fn complete(n: usize) -> UndirectedGraph {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                edges.push((u, v));
            }
        }
        UndirectedGraph::from_edges(n, &edges).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> UndirectedGraph {
        let mut edges = Vec::new();
        for u in 0..a as u32 {
            for v in 0..b as u32 {
                edges.push((u, a as u32 + v));
            }
        }
        UndirectedGraph::from_edges(a + b, &edges).unwrap()
    }

    /// Matching with `ell` edges.
    pub fn matching(ell: usize) -> UndirectedGraph {
        let edges: Vec<(u32, u32)> = (0..ell).map(|i| (2 * i as u32, 2 * i as u32 + 1)).collect();
        UndirectedGraph::from_edges(2 * ell, &edges).unwrap()
    }

    /// Complement of P3: one edge plus an isolated vertex.
    pub fn co_p3() -> UndirectedGraph {
        UndirectedGraph::from_edges(3, &[(0, 1)]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn underlying_counts_arcs() {
        let g = OrientedGraph::from_arcs(3, &[(0, 1), (2, 1)]).unwrap();
        let u = g.underlying();
        assert_eq!(u.m(), 2);
        assert!(u.has_edge(0, 1) && u.has_edge(1, 2));
    }

    #[test]
    fn underlying_empty() {
        let g = OrientedGraph::new(3);
        let u = g.underlying();
        assert_eq!(u.n(), 3);
        assert_eq!(u.m(), 0);
    }

    #[test]
    fn oriented_pair_rule() {
        let mut g = OrientedGraph::new(2);
        g.add_arc(0, 1).unwrap();
        assert_eq!(g.add_arc(1, 0), Err(GraphError::TwinArc(0, 1)));
    }

    #[test]
    fn complement_c4_is_matching() {
        let c4 = patterns::cycle(4);
        let comp = c4.complement(DEFAULT_SCALE_LIMIT).unwrap();
        assert_eq!(comp.edge_vec(), vec![(0, 2), (1, 3)]);
    }

    #[test]
    fn complement_k4_is_edgeless() {
        let k4 = patterns::complete(4);
        assert_eq!(k4.complement(DEFAULT_SCALE_LIMIT).unwrap().m(), 0);
    }

    #[test]
    fn complement_scale_limit() {
        let g = UndirectedGraph::new(50);
        assert!(matches!(g.complement(10), Err(GraphError::ScaleExceeded(50, 10))));
    }

    #[test]
    fn components_2k2() {
        let g = patterns::matching(2);
        assert_eq!(g.connected_components(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn components_c5() {
        let g = patterns::cycle(5);
        assert_eq!(g.connected_components().len(), 1);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = AnyGraph::Oriented(OrientedGraph::from_arcs(4, &[(0, 1), (3, 2)]).unwrap());
        let text = write_edge_list(&g);
        let back = parse_edge_list(&text).unwrap();
        assert_eq!(g, back);
        assert_eq!(write_edge_list(&back), text);
    }

    #[test]
    fn embedding_validity() {
        let p3 = patterns::path(3);
        let k4 = patterns::complete(4);
        let e = Embedding::new(vec![0, 1, 2]);
        assert!(e.is_valid_undirected(&p3, &k4, false));
        assert!(!e.is_valid_undirected(&p3, &k4, true)); // chord 0-2 present
    }
}
