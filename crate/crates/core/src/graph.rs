//! Undirected graphs with bitmask adjacency, the soccer ball graph, and a
//! plain-text edge-list format.
//!
//! Node sets are bitsets that stay inline for graphs of up to 64 nodes and
//! spill to the heap beyond that.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;
use thiserror::Error;

/// Dense node index in `[0, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

impl NodeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of nodes stored as a bitmask.
///
/// Trailing zero words are always trimmed, so two sets with the same members
/// compare equal regardless of how they were built.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet {
    words: SmallVec<[u64; 1]>,
}

impl NodeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(v: NodeId) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    pub fn from_u64(mask: u64) -> Self {
        let mut s = Self {
            words: SmallVec::from_buf([mask]),
        };
        s.trim();
        s
    }

    /// The set as a single machine word, if every member is below 64.
    pub fn as_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, v: NodeId) -> bool {
        let (w, b) = (v.0 / 64, v.0 % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, v: NodeId) -> bool {
        let (w, b) = (v.0 / 64, v.0 % 64);
        if w >= self.words.len() {
            return false;
        }
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        self.trim();
        present
    }

    pub fn contains(&self, v: NodeId) -> bool {
        let (w, b) = (v.0 / 64, v.0 % 64);
        self.words.get(w).is_some_and(|word| word & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(NodeId(wi * 64 + b))
            })
        })
    }

    fn zip_with(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        let len = self.words.len().max(other.words.len());
        let mut words = SmallVec::with_capacity(len);
        for i in 0..len {
            let a = self.words.get(i).copied().unwrap_or(0);
            let b = other.words.get(i).copied().unwrap_or(0);
            words.push(op(a, b));
        }
        let mut s = Self { words };
        s.trim();
        s
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|v| v.0)).finish()
    }
}

impl FromIterator<NodeId> for NodeSet {
    fn from_iter<I: IntoIterator<Item = NodeId>>(iter: I) -> Self {
        let mut s = Self::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// Patch shape of a soccer ball node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Patch {
    /// Pentagonal patch, degree five.
    P,
    /// Hexagonal patch, degree six.
    H,
}

/// Layered name of a soccer ball node, rendered as `P1_1`, `H2_3` and so on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SbgLabel {
    kind: Patch,
    layer: u8,
    position: u8,
}

impl SbgLabel {
    /// Builds a label, checking that the (kind, layer, position) triple names
    /// one of the 32 soccer ball nodes.
    pub fn new(kind: Patch, layer: u8, position: u8) -> Option<Self> {
        let valid = match (kind, layer) {
            (Patch::P, 1 | 6) => position == 1,
            (Patch::P, 3 | 4) | (Patch::H, 2..=5) => (1..=5).contains(&position),
            _ => false,
        };
        valid.then_some(Self {
            kind,
            layer,
            position,
        })
    }

    /// Label with the position taken through [`wrap_position`].
    ///
    /// Panics if the kind and layer do not name a soccer ball ring.
    pub fn ring(kind: Patch, layer: u8, k: i32) -> Self {
        let position = if matches!(layer, 1 | 6) {
            1
        } else {
            wrap_position(k)
        };
        Self::new(kind, layer, position).expect("invalid soccer ball ring")
    }

    pub fn kind(self) -> Patch {
        self.kind
    }

    pub fn layer(self) -> u8 {
        self.layer
    }

    pub fn position(self) -> u8 {
        self.position
    }

    /// Index of this node in the canonical ordering used by [`build_sbg`].
    pub fn canonical_index(self) -> usize {
        let p = usize::from(self.position) - 1;
        match (self.kind, self.layer) {
            (Patch::P, 1) => 0,
            (Patch::H, 2) => 1 + p,
            (Patch::H, 3) => 6 + p,
            (Patch::P, 3) => 11 + p,
            (Patch::P, 4) => 16 + p,
            (Patch::H, 4) => 21 + p,
            (Patch::H, 5) => 26 + p,
            (Patch::P, 6) => 31,
            _ => unreachable!("label invariants exclude this combination"),
        }
    }

    /// The label with the top and bottom halves swapped.
    ///
    /// Layer `l` maps to `7 - l` and ring position `j` to `pos(2 - j)`; this
    /// is an automorphism of the soccer ball graph.
    pub fn mirror(self) -> Self {
        Self::ring(self.kind, 7 - self.layer, 2 - i32::from(self.position))
    }

    /// All 32 labels in canonical order.
    pub fn all() -> Vec<SbgLabel> {
        let mut out = vec![Self::ring(Patch::P, 1, 1)];
        for (kind, layer) in [
            (Patch::H, 2),
            (Patch::H, 3),
            (Patch::P, 3),
            (Patch::P, 4),
            (Patch::H, 4),
            (Patch::H, 5),
        ] {
            out.extend((1..=5).map(|j| Self::ring(kind, layer, j)));
        }
        out.push(Self::ring(Patch::P, 6, 1));
        out
    }
}

impl fmt::Display for SbgLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Patch::P => 'P',
            Patch::H => 'H',
        };
        write!(f, "{k}{}_{}", self.layer, self.position)
    }
}

impl FromStr for SbgLabel {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::BadLabel(s.to_string());
        let mut chars = s.chars();
        let kind = match chars.next() {
            Some('P') => Patch::P,
            Some('H') => Patch::H,
            _ => return Err(bad()),
        };
        let (layer, position) = chars.as_str().split_once('_').ok_or_else(bad)?;
        let layer = layer.parse().map_err(|_| bad())?;
        let position = position.parse().map_err(|_| bad())?;
        Self::new(kind, layer, position).ok_or_else(bad)
    }
}

/// Maps any integer onto a ring position in `1..=5`: `((k - 1) mod 5) + 1`.
pub fn wrap_position(k: i32) -> u8 {
    ((k - 1).rem_euclid(5) + 1) as u8
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("node {0} out of range for graph with {1} nodes")]
    NodeOutOfRange(usize, usize),
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("a node cannot be paired with itself ({0})")]
    InvalidPair(usize),
    #[error("not a soccer ball label: {0:?}")]
    BadLabel(String),
    #[error("node count mismatch: {names} names for {nodes} nodes")]
    NameCount { names: usize, nodes: usize },
}

/// Immutable simple undirected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<NodeSet>,
    edges: Vec<(NodeId, NodeId)>,
    names: Vec<String>,
    sbg_labels: Option<Vec<SbgLabel>>,
}

impl Graph {
    /// Builds a graph on `n` nodes named `v1..vn`.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let names = (1..=n).map(|i| format!("v{i}")).collect();
        Self::with_names(names, edges)
    }

    /// Builds a graph whose node count is the length of `names`.
    pub fn with_names(
        names: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let n = names.len();
        let mut adjacency = vec![NodeSet::new(); n];
        let mut edge_list = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::NodeOutOfRange(x, n));
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !adjacency[u].insert(NodeId(v)) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adjacency[v].insert(NodeId(u));
            edge_list.push((NodeId(u.min(v)), NodeId(u.max(v))));
        }
        edge_list.sort_unstable();
        let sbg_labels = names
            .iter()
            .map(|s| s.parse::<SbgLabel>().ok())
            .collect::<Option<Vec<_>>>()
            .filter(|labels| !labels.is_empty());
        Ok(Self {
            adjacency,
            edges: edge_list,
            names,
            sbg_labels,
        })
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.node_count()).map(NodeId)
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn node_by_name(&self, name: &str) -> Option<NodeId> {
        self.names.iter().position(|n| n == name).map(NodeId)
    }

    /// Soccer ball labels, present when every node name is one.
    pub fn sbg_label(&self, v: NodeId) -> Option<SbgLabel> {
        self.sbg_labels.as_ref().map(|l| l[v.0])
    }

    /// Node carrying the given soccer ball label, if any.
    pub fn sbg_node(&self, label: SbgLabel) -> Option<NodeId> {
        self.sbg_labels
            .as_ref()?
            .iter()
            .position(|&l| l == label)
            .map(NodeId)
    }

    fn check(&self, v: NodeId) -> Result<(), GraphError> {
        if v.0 < self.node_count() {
            Ok(())
        } else {
            Err(GraphError::NodeOutOfRange(v.0, self.node_count()))
        }
    }

    pub fn neighbors(&self, v: NodeId) -> Result<&NodeSet, GraphError> {
        self.check(v)?;
        Ok(&self.adjacency[v.0])
    }

    pub fn degree(&self, v: NodeId) -> Result<usize, GraphError> {
        self.neighbors(v).map(NodeSet::len)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency.get(u.0).is_some_and(|s| s.contains(v))
    }

    /// `N+(v) = {v} ∪ N(v)`.
    pub fn closed_neighborhood(&self, v: NodeId) -> Result<NodeSet, GraphError> {
        let mut s = self.neighbors(v)?.clone();
        s.insert(v);
        Ok(s)
    }

    /// All nodes within distance two of `v`, including `v`.
    pub fn closed_two_neighborhood(&self, v: NodeId) -> Result<NodeSet, GraphError> {
        let first = self.closed_neighborhood(v)?;
        let mut out = first.clone();
        for u in first.iter() {
            out = out.union(&self.adjacency[u.0]);
        }
        Ok(out)
    }

    /// `DS(u, v) = N+(u) △ N+(v)`.
    pub fn distinguishing_set(&self, u: NodeId, v: NodeId) -> Result<NodeSet, GraphError> {
        if u == v {
            self.check(u)?;
            return Err(GraphError::InvalidPair(u.0));
        }
        Ok(self
            .closed_neighborhood(u)?
            .symmetric_difference(&self.closed_neighborhood(v)?))
    }

    /// Closed neighborhoods as machine words, for graphs with at most 64 nodes.
    pub fn closed_masks_u64(&self) -> Option<Vec<u64>> {
        if self.node_count() > 64 {
            return None;
        }
        Some(
            self.nodes()
                .map(|v| self.adjacency[v.0].as_u64().unwrap_or(0) | (1u64 << v.0))
                .collect(),
        )
    }
}

/// The 17 edge families of the soccer ball graph, as label pairs.
///
/// Ring indices wrap through [`wrap_position`].
pub fn sbg_edge_sets() -> Vec<Vec<(SbgLabel, SbgLabel)>> {
    use Patch::{H, P};
    let r = SbgLabel::ring;
    let rule = |f: &dyn Fn(i32) -> (SbgLabel, SbgLabel)| (1..=5).map(f).collect::<Vec<_>>();
    vec![
        rule(&|j| (r(P, 1, 1), r(H, 2, j))),
        rule(&|j| (r(P, 6, 1), r(H, 5, j))),
        (1..=5)
            .map(|j| (r(H, 2, j), r(H, 2, j + 1)))
            .chain((1..=5).map(|j| (r(H, 5, j), r(H, 5, j + 1))))
            .collect(),
        rule(&|j| (r(H, 3, j), r(P, 3, j))),
        rule(&|j| (r(P, 3, j), r(H, 3, j + 1))),
        rule(&|j| (r(H, 4, j), r(P, 4, j + 1))),
        rule(&|j| (r(P, 4, j), r(H, 4, j))),
        rule(&|j| (r(H, 2, j), r(H, 3, j))),
        rule(&|j| (r(H, 2, j), r(P, 3, j - 1))),
        rule(&|j| (r(H, 2, j), r(P, 3, j))),
        rule(&|j| (r(H, 3, j), r(P, 4, j))),
        rule(&|j| (r(H, 3, j), r(H, 4, j - 1))),
        rule(&|j| (r(H, 3, j), r(H, 4, j))),
        rule(&|j| (r(P, 3, j), r(H, 4, j))),
        rule(&|j| (r(H, 4, j), r(H, 5, j))),
        rule(&|j| (r(P, 4, j), r(H, 5, j))),
        rule(&|j| (r(P, 4, j), r(H, 5, j - 1))),
    ]
}

/// Builds the soccer ball graph: 32 nodes, 90 edges, nodes in canonical order
/// `P1_1; H2_*; H3_*; P3_*; P4_*; H4_*; H5_*; P6_1`.
pub fn build_sbg() -> Graph {
    let names = SbgLabel::all().iter().map(ToString::to_string).collect();
    let edges = sbg_edge_sets()
        .into_iter()
        .flatten()
        .map(|(a, b)| (a.canonical_index(), b.canonical_index()));
    Graph::with_names(names, edges).expect("soccer ball edge families are disjoint")
}

/// Ten-node graph in which `v1..v4` are pairwise non-adjacent and each of
/// `v5..v10` is joined to one distinct pair of them (the subdivided K4).
///
/// `{v1, v2, v3, v4}` is an identifying code of this graph.
pub fn build_subdivided_k4() -> Graph {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let edges = pairs
        .iter()
        .enumerate()
        .flat_map(|(i, &(a, b))| [(4 + i, a), (4 + i, b)]);
    Graph::from_edges(10, edges).expect("static graph")
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EdgeListError {
    #[error("line {line}: expected \"u v\", found {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: self-loop at {name}")]
    SelfLoop { line: usize, name: String },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: String, v: String },
    #[error("line {line}: node {name} declared twice")]
    DuplicateNode { line: usize, name: String },
}

const NODE_DIRECTIVE: &str = "# node ";

/// Parses an edge list: one `u v` pair per line, `#` comments, and an
/// optional name table of `# node <name>` lines fixing the id order.
///
/// Names not in the table get ids in order of first appearance.
pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut names: Vec<String> = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();

    let mut intern = |name: &str, names: &mut Vec<String>| -> usize {
        *ids.entry(name.to_string()).or_insert_with(|| {
            names.push(name.to_string());
            names.len() - 1
        })
    };

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if let Some(name) = raw.strip_prefix(NODE_DIRECTIVE) {
            let name = name.trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(EdgeListError::Malformed {
                    line,
                    text: raw.to_string(),
                });
            }
            let before = names.len();
            intern(name, &mut names);
            if names.len() == before {
                return Err(EdgeListError::DuplicateNode {
                    line,
                    name: name.to_string(),
                });
            }
            continue;
        }
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let [a, b] = tokens[..] else {
            return Err(EdgeListError::Malformed {
                line,
                text: raw.to_string(),
            });
        };
        if a == b {
            return Err(EdgeListError::SelfLoop {
                line,
                name: a.to_string(),
            });
        }
        let (u, v) = (intern(a, &mut names), intern(b, &mut names));
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(EdgeListError::DuplicateEdge {
                line,
                u: a.to_string(),
                v: b.to_string(),
            });
        }
        edges.push((u, v));
    }
    Ok(Graph::with_names(names, edges).expect("edges validated while parsing"))
}

/// Renders a graph in the format read by [`parse_edge_list`], including the
/// name table so ids survive a round trip.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!(
        "# undirected graph: {} nodes, {} edges\n",
        g.node_count(),
        g.edge_count()
    );
    for name in g.names() {
        out.push_str(NODE_DIRECTIVE);
        out.push_str(name);
        out.push('\n');
    }
    for &(u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", g.name(u), g.name(v)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sbg_id(g: &Graph, s: &str) -> NodeId {
        g.node_by_name(s).unwrap()
    }

    fn names(g: &Graph, s: &NodeSet) -> Vec<String> {
        let mut v: Vec<String> = s.iter().map(|n| g.name(n).to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn wrap_position_stays_in_ring() {
        assert_eq!(wrap_position(0), 5);
        assert_eq!(wrap_position(6), 1);
        assert_eq!(wrap_position(-1), 4);
        assert_eq!(wrap_position(3), 3);
    }

    #[test]
    fn label_invariants() {
        assert!(SbgLabel::new(Patch::P, 2, 1).is_none());
        assert!(SbgLabel::new(Patch::H, 1, 1).is_none());
        assert!(SbgLabel::new(Patch::P, 1, 2).is_none());
        assert!(SbgLabel::new(Patch::H, 3, 6).is_none());
        assert_eq!("H2_3".parse::<SbgLabel>().unwrap().to_string(), "H2_3");
        assert!("P2_1".parse::<SbgLabel>().is_err());
        let all = SbgLabel::all();
        assert_eq!(all.len(), 32);
        for (i, l) in all.iter().enumerate() {
            assert_eq!(l.canonical_index(), i);
        }
    }

    #[test]
    fn sbg_size_and_degrees() {
        let g = build_sbg();
        assert_eq!(g.node_count(), 32);
        assert_eq!(g.edge_count(), 90);
        for v in g.nodes() {
            let expected = match g.sbg_label(v).unwrap().kind() {
                Patch::P => 5,
                Patch::H => 6,
            };
            assert_eq!(g.degree(v).unwrap(), expected, "{}", g.name(v));
        }
    }

    #[test]
    fn sbg_edge_families() {
        let sets = sbg_edge_sets();
        assert_eq!(sets.len(), 17);
        let mut all = std::collections::HashSet::new();
        for (i, s) in sets.iter().enumerate() {
            assert_eq!(s.len(), if i == 2 { 10 } else { 5 }, "E{}", i + 1);
            for &(a, b) in s {
                let key = (a.min(b), a.max(b));
                assert!(all.insert(key), "E{} repeats {a}-{b}", i + 1);
            }
        }
        assert_eq!(all.len(), 90);
    }

    #[test]
    fn mirror_is_an_automorphism() {
        let g = build_sbg();
        for &(u, v) in g.edges() {
            let mu = g.sbg_node(g.sbg_label(u).unwrap().mirror()).unwrap();
            let mv = g.sbg_node(g.sbg_label(v).unwrap().mirror()).unwrap();
            assert!(g.has_edge(mu, mv));
        }
        for l in SbgLabel::all() {
            assert_eq!(l.mirror().mirror(), l);
        }
    }

    #[test]
    fn sbg_neighborhoods() {
        let g = build_sbg();
        let top = g.closed_neighborhood(sbg_id(&g, "P1_1")).unwrap();
        assert_eq!(
            names(&g, &top),
            ["H2_1", "H2_2", "H2_3", "H2_4", "H2_5", "P1_1"]
        );
        // E4, E5, E8, E11, E12, E13 each contribute one neighbor of H3_1.
        let h31 = g.closed_neighborhood(sbg_id(&g, "H3_1")).unwrap();
        assert_eq!(
            names(&g, &h31),
            ["H2_1", "H3_1", "H4_1", "H4_5", "P3_1", "P3_5", "P4_1"]
        );
        let two = g.closed_two_neighborhood(sbg_id(&g, "P1_1")).unwrap();
        assert_eq!(two.len(), 16);
        assert!(top.is_subset(&two));
        for v in g.nodes() {
            let n1 = g.closed_neighborhood(v).unwrap();
            assert!(n1.contains(v));
            assert!(n1.is_subset(&g.closed_two_neighborhood(v).unwrap()));
        }
    }

    #[test]
    fn sbg_distinguishing_set() {
        let g = build_sbg();
        let (a, b) = (sbg_id(&g, "H2_1"), sbg_id(&g, "H2_2"));
        let ds = g.distinguishing_set(a, b).unwrap();
        // Shared: P1_1, H2_1, H2_2, P3_1.
        assert_eq!(
            names(&g, &ds),
            ["H2_3", "H2_5", "H3_1", "H3_2", "P3_2", "P3_5"]
        );
        assert_eq!(ds, g.distinguishing_set(b, a).unwrap());
    }

    #[test]
    fn small_graph_neighborhoods() {
        let single = Graph::from_edges(1, []).unwrap();
        assert_eq!(
            single.closed_neighborhood(NodeId(0)).unwrap(),
            NodeSet::singleton(NodeId(0))
        );
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.closed_two_neighborhood(NodeId(0)).unwrap().len(), 3);
        let ds = path.distinguishing_set(NodeId(0), NodeId(2)).unwrap();
        assert_eq!(ds, [NodeId(0), NodeId(2)].into_iter().collect());
        assert_eq!(
            path.distinguishing_set(NodeId(1), NodeId(1)),
            Err(GraphError::InvalidPair(1))
        );
        assert_eq!(
            path.closed_neighborhood(NodeId(3)),
            Err(GraphError::NodeOutOfRange(3, 3))
        );
        let twins = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert!(twins
            .distinguishing_set(NodeId(0), NodeId(1))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn graph_construction_errors() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(2, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(1, 0))
        );
        assert_eq!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::NodeOutOfRange(2, 2))
        );
    }

    #[test]
    fn node_set_beyond_one_word() {
        let mut s = NodeSet::new();
        s.insert(NodeId(3));
        s.insert(NodeId(130));
        assert_eq!(s.len(), 2);
        assert_eq!(s.as_u64(), None);
        assert_eq!(s.iter().collect::<Vec<_>>(), [NodeId(3), NodeId(130)]);
        s.remove(NodeId(130));
        assert_eq!(s, NodeSet::from_u64(1 << 3));
        assert_eq!(s.as_u64(), Some(8));
    }

    #[test]
    fn edge_list_parse_errors() {
        assert!(matches!(
            parse_edge_list("a b\nc\n"),
            Err(EdgeListError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("# hi\na a\n"),
            Err(EdgeListError::SelfLoop { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("a b\n\nb a\n"),
            Err(EdgeListError::DuplicateEdge { line: 3, .. })
        ));
        assert!(matches!(
            parse_edge_list("# node a\n# node a\n"),
            Err(EdgeListError::DuplicateNode { line: 2, .. })
        ));
    }

    #[test]
    fn edge_list_keeps_isolated_nodes_and_order() {
        let g = parse_edge_list("# node z\n# node y\ny x # trailing\n").unwrap();
        assert_eq!(g.names(), ["z", "y", "x"]);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn sbg_round_trips_with_labels() {
        let g = build_sbg();
        let back = parse_edge_list(&write_edge_list(&g)).unwrap();
        assert_eq!(back, g);
        assert!(back.sbg_label(NodeId(0)).is_some());
    }
}
