//! Directed follow graph.
//!
//! An edge `u -> v` means "u follows v": `v` is one of u's *friends* and `u`
//! is one of v's *followers*. Both adjacency directions are stored in
//! compressed sparse row form so friend and follower enumeration are slice
//! lookups.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense node index in `0..n_nodes`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[repr(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Friends: the nodes `u` follows.
    Out,
    /// Followers: the nodes following `u`.
    In,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::Out => Direction::In,
            Direction::In => Direction::Out,
        }
    }
}

/// What ingestion discarded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestStats {
    pub self_loops: usize,
    pub duplicates: usize,
}

/// Accumulates edges keyed by external id, assigning [`NodeId`]s in order of
/// first appearance.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    ids: Vec<String>,
    lookup: HashMap<String, NodeId>,
    edges: Vec<(u32, u32)>,
    self_loops: usize,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, external: &str) -> NodeId {
        if let Some(&id) = self.lookup.get(external) {
            return id;
        }
        let id = NodeId(u32::try_from(self.ids.len()).expect("node count fits in u32"));
        self.ids.push(external.to_owned());
        self.lookup.insert(external.to_owned(), id);
        id
    }

    pub fn add_edge(&mut self, src: &str, dst: &str) {
        let u = self.add_node(src);
        let v = self.add_node(dst);
        if u == v {
            self.self_loops += 1;
        } else {
            self.edges.push((u.0, v.0));
        }
    }

    pub fn build(self) -> Result<DirectedGraph> {
        if self.ids.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if self.self_loops > 0 {
            log::warn!("dropped {} self-loop(s)", self.self_loops);
        }
        let mut g = DirectedGraph::from_parts(self.ids, Some(self.lookup), self.edges);
        g.stats.self_loops = self.self_loops;
        Ok(g)
    }
}

#[derive(Clone, Debug)]
pub struct DirectedGraph {
    out_offsets: Vec<usize>,
    out_targets: Vec<NodeId>,
    in_offsets: Vec<usize>,
    in_sources: Vec<NodeId>,
    ids: Vec<String>,
    lookup: HashMap<String, NodeId>,
    stats: IngestStats,
}

impl DirectedGraph {
    /// Builds a graph from `(src, dst)` external-id pairs. Self-loops are
    /// dropped and duplicate edges collapsed; both are counted in
    /// [`DirectedGraph::ingest_stats`].
    pub fn from_edge_list<I, S>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut b = GraphBuilder::new();
        for (s, d) in pairs {
            b.add_edge(s.as_ref(), d.as_ref());
        }
        b.build()
    }

    /// Parses edge-list text: one `src dst` pair per line, whitespace
    /// separated. Blank lines and lines starting with `#` are skipped.
    pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Self> {
        let mut b = GraphBuilder::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut tokens = trimmed.split_whitespace();
            match (tokens.next(), tokens.next(), tokens.next()) {
                (Some(s), Some(d), None) => b.add_edge(s, d),
                _ => {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: format!("expected two tokens, got {trimmed:?}"),
                    })
                }
            }
        }
        b.build()
    }

    pub fn parse_edge_str(text: &str) -> Result<Self> {
        Self::parse_edge_list(text.as_bytes())
    }

    /// Graph on `n_nodes` nodes named `"0".."n-1"` from dense index pairs.
    pub fn from_index_edges(n_nodes: usize, edges: Vec<(u32, u32)>) -> Result<Self> {
        if n_nodes == 0 {
            return Err(Error::EmptyGraph);
        }
        if let Some(&(u, v)) = edges
            .iter()
            .find(|&&(u, v)| u as usize >= n_nodes || v as usize >= n_nodes)
        {
            return Err(Error::NodeOutOfRange {
                node: u.max(v) as usize,
                n_nodes,
            });
        }
        let (loops, edges): (Vec<_>, Vec<_>) = edges.into_iter().partition(|&(u, v)| u == v);
        let ids = (0..n_nodes).map(|i| i.to_string()).collect();
        let mut g = Self::from_parts(ids, None, edges);
        g.stats.self_loops = loops.len();
        Ok(g)
    }

    /// Every ordered pair of distinct nodes.
    pub fn complete(n_nodes: usize) -> Result<Self> {
        let n = u32::try_from(n_nodes).map_err(|_| Error::Size("too many nodes".into()))?;
        let edges = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        Self::from_index_edges(n_nodes, edges)
    }

    fn from_parts(
        ids: Vec<String>,
        lookup: Option<HashMap<String, NodeId>>,
        mut edges: Vec<(u32, u32)>,
    ) -> Self {
        let n = ids.len();
        let before = edges.len();
        edges.sort_unstable();
        edges.dedup();
        let duplicates = before - edges.len();

        let mut out_offsets = vec![0usize; n + 1];
        let mut in_offsets = vec![0usize; n + 1];
        for &(u, v) in &edges {
            out_offsets[u as usize + 1] += 1;
            in_offsets[v as usize + 1] += 1;
        }
        for i in 0..n {
            out_offsets[i + 1] += out_offsets[i];
            in_offsets[i + 1] += in_offsets[i];
        }
        let out_targets = edges.iter().map(|&(_, v)| NodeId(v)).collect();
        // Edges are sorted by source, so each follower list comes out sorted.
        let mut in_sources = vec![NodeId(0); edges.len()];
        let mut cursor = in_offsets.clone();
        for &(u, v) in &edges {
            let slot = &mut cursor[v as usize];
            in_sources[*slot] = NodeId(u);
            *slot += 1;
        }
        let lookup = lookup.unwrap_or_else(|| {
            ids.iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), NodeId(i as u32)))
                .collect()
        });
        if duplicates > 0 {
            log::warn!("collapsed {duplicates} duplicate edge(s)");
        }
        DirectedGraph {
            out_offsets,
            out_targets,
            in_offsets,
            in_sources,
            ids,
            lookup,
            stats: IngestStats {
                self_loops: 0,
                duplicates,
            },
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.ids.len()
    }

    pub fn n_edges(&self) -> usize {
        self.out_targets.len()
    }

    pub fn ingest_stats(&self) -> IngestStats {
        self.stats
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        (0..self.n_nodes() as u32).map(NodeId)
    }

    fn check(&self, u: NodeId) -> Result<()> {
        if u.index() < self.n_nodes() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: u.index(),
                n_nodes: self.n_nodes(),
            })
        }
    }

    /// Nodes `u` follows, in ascending id order.
    pub fn friends(&self, u: NodeId) -> Result<&[NodeId]> {
        self.check(u)?;
        Ok(self.out_slice(u.index()))
    }

    /// Nodes following `u`, in ascending id order.
    pub fn followers(&self, u: NodeId) -> Result<&[NodeId]> {
        self.check(u)?;
        Ok(self.in_slice(u.index()))
    }

    pub fn neighbors(&self, u: NodeId, dir: Direction) -> Result<&[NodeId]> {
        match dir {
            Direction::Out => self.friends(u),
            Direction::In => self.followers(u),
        }
    }

    pub fn degree(&self, u: NodeId, dir: Direction) -> Result<usize> {
        self.neighbors(u, dir).map(<[NodeId]>::len)
    }

    #[inline]
    pub(crate) fn out_slice(&self, u: usize) -> &[NodeId] {
        &self.out_targets[self.out_offsets[u]..self.out_offsets[u + 1]]
    }

    #[inline]
    pub(crate) fn in_slice(&self, u: usize) -> &[NodeId] {
        &self.in_sources[self.in_offsets[u]..self.in_offsets[u + 1]]
    }

    #[inline]
    pub(crate) fn adjacency(&self, u: usize, dir: Direction) -> &[NodeId] {
        match dir {
            Direction::Out => self.out_slice(u),
            Direction::In => self.in_slice(u),
        }
    }

    /// Degrees of every node, indexed by [`NodeId::index`].
    pub fn degrees(&self, dir: Direction) -> Vec<usize> {
        let offsets = match dir {
            Direction::Out => &self.out_offsets,
            Direction::In => &self.in_offsets,
        };
        offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// All edges `(follower, friend)` in source-major order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes()
            .flat_map(move |u| self.out_slice(u.index()).iter().map(move |&v| (u, v)))
    }

    pub fn external_id(&self, u: NodeId) -> Result<&str> {
        self.check(u)?;
        Ok(&self.ids[u.index()])
    }

    pub fn node_of(&self, external: &str) -> Option<NodeId> {
        self.lookup.get(external).copied()
    }

    /// Copy with every edge present in both directions.
    pub fn symmetrized(&self) -> Self {
        let edges = self
            .edges()
            .flat_map(|(u, v)| [(u.0, v.0), (v.0, u.0)])
            .collect();
        let mut g = Self::from_parts(self.ids.clone(), Some(self.lookup.clone()), edges);
        g.stats = self.stats;
        g
    }

    /// Subgraph induced by the nodes with `keep[u] == true`, with ids
    /// renumbered densely in the original order. External ids are retained.
    pub fn induced_subgraph(&self, keep: &[bool]) -> Result<Self> {
        if keep.len() != self.n_nodes() {
            return Err(Error::Size(format!(
                "mask has {} entries for {} nodes",
                keep.len(),
                self.n_nodes()
            )));
        }
        let mut remap = vec![u32::MAX; self.n_nodes()];
        let mut ids = Vec::new();
        for (i, _) in keep.iter().enumerate().filter(|(_, &k)| k) {
            remap[i] = ids.len() as u32;
            ids.push(self.ids[i].clone());
        }
        if ids.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let edges = self
            .edges()
            .filter_map(|(u, v)| {
                let (a, b) = (remap[u.index()], remap[v.index()]);
                (a != u32::MAX && b != u32::MAX).then_some((a, b))
            })
            .collect();
        Ok(Self::from_parts(ids, None, edges))
    }

    /// Edge-list text accepted by [`DirectedGraph::parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(self.n_edges() * 8);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", self.ids[u.index()], self.ids[v.index()]);
        }
        out
    }
}

const KARATE_EDGES: &str = include_str!("../data/karate.edges");

/// Zachary's karate club: 34 members (external ids `"1".."34"`, so member
/// `k` is `NodeId(k - 1)`) and 78 friendships, each stored in both
/// directions.
pub fn karate_club() -> DirectedGraph {
    let mut b = GraphBuilder::new();
    for k in 1..=34 {
        b.add_node(&k.to_string());
    }
    for line in KARATE_EDGES.lines().filter(|l| !l.starts_with('#')) {
        let mut t = line.split_whitespace();
        if let (Some(u), Some(v)) = (t.next(), t.next()) {
            b.add_edge(u, v);
            b.add_edge(v, u);
        }
    }
    b.build().expect("bundled karate data is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(g: &DirectedGraph, nodes: &[NodeId]) -> Vec<String> {
        nodes
            .iter()
            .map(|&n| g.external_id(n).unwrap().to_owned())
            .collect()
    }

    #[test]
    fn small_edge_list() {
        let g = DirectedGraph::from_edge_list([("A", "B"), ("B", "A"), ("A", "C")]).unwrap();
        assert_eq!((g.n_nodes(), g.n_edges()), (3, 3));
        let a = g.node_of("A").unwrap();
        assert_eq!(ids(&g, g.friends(a).unwrap()), ["B", "C"]);
    }

    #[test]
    fn duplicates_and_loops_are_dropped() {
        let g = DirectedGraph::from_edge_list([("A", "B"), ("A", "B")]).unwrap();
        assert_eq!(g.n_edges(), 1);
        assert_eq!(g.ingest_stats().duplicates, 1);

        let g = DirectedGraph::parse_edge_str("A A\nA B\n").unwrap();
        assert_eq!(g.n_edges(), 1);
        assert_eq!(g.ingest_stats().self_loops, 1);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = DirectedGraph::parse_edge_str("# header\nA B\nA B C\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = DirectedGraph::parse_edge_str("A\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        assert!(matches!(
            DirectedGraph::parse_edge_str("# nothing\n\n"),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn path_graph_neighbors() {
        let g = DirectedGraph::parse_edge_str("A B\nB C\n").unwrap();
        let [a, b, c] = ["A", "B", "C"].map(|s| g.node_of(s).unwrap());
        assert_eq!(g.friends(a).unwrap(), &[b]);
        assert!(g.friends(c).unwrap().is_empty());
        assert_eq!(g.followers(b).unwrap(), &[a]);
        assert!(g.followers(a).unwrap().is_empty());
        assert!(matches!(
            g.friends(NodeId(3)),
            Err(Error::NodeOutOfRange {
                node: 3,
                n_nodes: 3
            })
        ));
    }

    #[test]
    fn star_degrees() {
        let k = 5;
        let edges: Vec<_> = (1..=k)
            .map(|i| ("hub".to_owned(), format!("s{i}")))
            .collect();
        let g = DirectedGraph::from_edge_list(edges).unwrap();
        let hub = g.node_of("hub").unwrap();
        let spoke = g.node_of("s3").unwrap();
        assert_eq!(g.degree(hub, Direction::Out).unwrap(), k);
        assert_eq!(g.degree(spoke, Direction::Out).unwrap(), 0);
        assert_eq!(g.degree(spoke, Direction::In).unwrap(), 1);
    }

    #[test]
    fn first_appearance_ids() {
        let g = DirectedGraph::parse_edge_str("z y\nx z\n").unwrap();
        assert_eq!(g.node_of("z"), Some(NodeId(0)));
        assert_eq!(g.node_of("y"), Some(NodeId(1)));
        assert_eq!(g.node_of("x"), Some(NodeId(2)));
    }

    #[test]
    fn karate_shape() {
        let g = karate_club();
        assert_eq!(g.n_nodes(), 34);
        assert_eq!(g.n_edges(), 156);
        for u in g.nodes() {
            assert_eq!(g.friends(u).unwrap(), g.followers(u).unwrap());
        }
        let deg = g.degrees(Direction::Out);
        assert_eq!(deg.iter().max(), Some(&17));
        // Member 34 is the hub with 17 ties, member 1 has 16.
        assert_eq!(deg[33], 17);
        assert_eq!(deg[0], 16);
        let friends_of_1 = ids(&g, g.friends(NodeId(0)).unwrap());
        assert_eq!(
            friends_of_1,
            [
                "2", "3", "4", "5", "6", "7", "8", "9", "11", "12", "13", "14", "18", "20", "22",
                "32"
            ]
        );
    }

    #[test]
    fn induced_subgraph_keeps_external_ids() {
        let g = DirectedGraph::parse_edge_str("a b\nb c\nc a\n").unwrap();
        let keep = [true, false, true];
        let h = g.induced_subgraph(&keep).unwrap();
        assert_eq!(h.n_nodes(), 2);
        assert_eq!(h.to_edge_list(), "c a\n");
    }

    #[test]
    fn complete_graph() {
        let g = DirectedGraph::complete(5).unwrap();
        assert_eq!(g.n_edges(), 20);
        assert!(g.degrees(Direction::In).iter().all(|&d| d == 4));
    }
}
