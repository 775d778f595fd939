//! Typed ZX-diagram storage and the low-level mutation primitives the
//! rewrite rules are built from.
//!
//! The diagram is a simple undirected graph. Parallel edges and self-loops
//! are never stored: [`Diagram::connect`] resolves them on creation using
//! the Hopf law, spider fusion and the Hadamard self-loop identity, so every
//! stored diagram has at most one edge per node pair.

mod graph_like;
mod json;

use std::fmt;

use thiserror::Error;

use crate::phase::Phase;

pub use graph_like::{has_graph_like_interior, is_graph_like, to_graph_like};
pub use json::LoadError;

/// Node identifier. Ids are handed out by a monotone counter and never
/// reused within one diagram.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Z,
    X,
    /// Boundary: the endpoint of an input or output wire.
    B,
}

impl NodeKind {
    pub fn is_spider(self) -> bool {
        !matches!(self, NodeKind::B)
    }

    pub fn letter(self) -> &'static str {
        match self {
            NodeKind::Z => "Z",
            NodeKind::X => "X",
            NodeKind::B => "B",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Simple,
    Hadamard,
}

impl EdgeKind {
    pub fn toggled(self) -> EdgeKind {
        match self {
            EdgeKind::Simple => EdgeKind::Hadamard,
            EdgeKind::Hadamard => EdgeKind::Simple,
        }
    }

    /// Kind of the wire obtained by joining two wires end to end (H·H = I).
    pub fn compose(self, other: EdgeKind) -> EdgeKind {
        if self == other {
            EdgeKind::Simple
        } else {
            EdgeKind::Hadamard
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            EdgeKind::Simple => "S",
            EdgeKind::Hadamard => "H",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BoundaryRole {
    Input,
    Output,
}

impl fmt::Display for BoundaryRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryRole::Input => f.write_str("input"),
            BoundaryRole::Output => f.write_str("output"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("node {0} does not exist")]
    UnknownNode(NodeId),
    #[error("boundary nodes are created with add_boundary, not add_spider")]
    BoundaryAsSpider,
    #[error("{role} position {position} is past the end of a list of length {len}")]
    PositionOutOfRange {
        role: BoundaryRole,
        position: usize,
        len: usize,
    },
    #[error("unsupported duplicate edge between {0} and {1}; normalize with to_graph_like first")]
    UnsupportedEdgeResolution(NodeId, NodeId),
    #[error("boundary node {0} already has its single edge")]
    BoundaryDegreeViolation(NodeId),
    #[error("cannot merge {absorb} ({absorb_kind:?}) into {keep} ({keep_kind:?})")]
    KindMismatch {
        keep: NodeId,
        keep_kind: NodeKind,
        absorb: NodeId,
        absorb_kind: NodeKind,
    },
    #[error("{0} is not a Z spider")]
    NotZSpider(NodeId),
    #[error("invalid diagram: {0}")]
    Invalid(String),
}

pub type Result<T, E = DiagramError> = std::result::Result<T, E>;

/// What [`Diagram::connect`] did with the requested edge.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EdgeResolution {
    Added,
    /// Duplicate edge of the same kind was already present and one copy is kept.
    Kept,
    /// Hopf law: the duplicate pair cancelled and no edge remains.
    Cancelled,
    /// Simple + Hadamard between same-coloured spiders: `absorbed` was fused
    /// into `kept` and the Hadamard self-loop added π.
    Merged { kept: NodeId, absorbed: NodeId },
    SelfLoopDropped,
    /// Hadamard self-loop: π added to the spider.
    SelfLoopPhase,
}

#[derive(Clone, Debug)]
struct NodeData {
    kind: NodeKind,
    phase: Phase,
    /// Sorted by neighbour id.
    adj: Vec<(NodeId, EdgeKind)>,
}

/// A ZX-diagram: typed spiders and boundaries, typed edges, and ordered
/// input/output boundary lists.
#[derive(Clone, Debug, Default)]
pub struct Diagram {
    nodes: Vec<Option<NodeData>>,
    inputs: Vec<NodeId>,
    outputs: Vec<NodeId>,
    live: usize,
    edges: usize,
    /// When set, every node whose adjacency or phase changes is recorded.
    journal: Option<Vec<NodeId>>,
}

impl Diagram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(nodes: usize) -> Self {
        Diagram {
            nodes: Vec::with_capacity(nodes),
            ..Default::default()
        }
    }

    fn data(&self, v: NodeId) -> Result<&NodeData> {
        self.nodes
            .get(v.0)
            .and_then(Option::as_ref)
            .ok_or(DiagramError::UnknownNode(v))
    }

    fn data_mut(&mut self, v: NodeId) -> Result<&mut NodeData> {
        self.nodes
            .get_mut(v.0)
            .and_then(Option::as_mut)
            .ok_or(DiagramError::UnknownNode(v))
    }

    fn push_node(&mut self, kind: NodeKind, phase: Phase) -> NodeId {
        let id = NodeId(self.nodes.len());
        self.nodes.push(Some(NodeData {
            kind,
            phase,
            adj: Vec::new(),
        }));
        self.live += 1;
        id
    }

    /// Inserts a node under a caller-chosen id (used by the JSON loader).
    fn insert_node_at(&mut self, id: NodeId, kind: NodeKind, phase: Phase) -> Result<()> {
        if self.nodes.len() <= id.0 {
            self.nodes.resize(id.0 + 1, None);
        }
        if self.nodes[id.0].is_some() {
            return Err(DiagramError::Invalid(format!("duplicate node id {}", id.0)));
        }
        self.nodes[id.0] = Some(NodeData {
            kind,
            phase,
            adj: Vec::new(),
        });
        self.live += 1;
        Ok(())
    }

    pub fn add_spider(&mut self, kind: NodeKind, phase: Phase) -> Result<NodeId> {
        if kind == NodeKind::B {
            return Err(DiagramError::BoundaryAsSpider);
        }
        Ok(self.push_node(kind, phase))
    }

    pub fn add_boundary(&mut self, role: BoundaryRole, position: usize) -> Result<NodeId> {
        let len = self.boundary_list(role).len();
        if position > len {
            return Err(DiagramError::PositionOutOfRange {
                role,
                position,
                len,
            });
        }
        let id = self.push_node(NodeKind::B, Phase::zero());
        match role {
            BoundaryRole::Input => self.inputs.insert(position, id),
            BoundaryRole::Output => self.outputs.insert(position, id),
        }
        Ok(id)
    }

    pub fn add_input(&mut self) -> NodeId {
        let n = self.inputs.len();
        self.add_boundary(BoundaryRole::Input, n).expect("append is in range")
    }

    pub fn add_output(&mut self) -> NodeId {
        let n = self.outputs.len();
        self.add_boundary(BoundaryRole::Output, n).expect("append is in range")
    }

    fn boundary_list(&self, role: BoundaryRole) -> &[NodeId] {
        match role {
            BoundaryRole::Input => &self.inputs,
            BoundaryRole::Output => &self.outputs,
        }
    }

    pub fn inputs(&self) -> &[NodeId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[NodeId] {
        &self.outputs
    }

    pub fn contains(&self, v: NodeId) -> bool {
        matches!(self.nodes.get(v.0), Some(Some(_)))
    }

    pub fn kind(&self, v: NodeId) -> Result<NodeKind> {
        Ok(self.data(v)?.kind)
    }

    pub fn phase(&self, v: NodeId) -> Result<Phase> {
        Ok(self.data(v)?.phase)
    }

    pub fn set_phase(&mut self, v: NodeId, phase: Phase) -> Result<()> {
        self.data_mut(v)?.phase = phase;
        self.touch(v);
        Ok(())
    }

    pub fn add_to_phase(&mut self, v: NodeId, delta: Phase) -> Result<()> {
        self.data_mut(v)?.phase += delta;
        self.touch(v);
        Ok(())
    }

    fn touch(&mut self, v: NodeId) {
        if let Some(j) = self.journal.as_mut() {
            j.push(v);
        }
    }

    /// Starts recording touched nodes (see [`Diagram::take_journal`]).
    pub(crate) fn start_journal(&mut self) {
        self.journal = Some(Vec::new());
    }

    /// Stops recording and returns the sorted, deduplicated set of
    /// pre-existing nodes that were deleted or had their phase or
    /// adjacency changed.
    pub(crate) fn take_journal(&mut self, id_bound_before: usize) -> Vec<NodeId> {
        let mut j = self.journal.take().unwrap_or_default();
        j.retain(|v| v.0 < id_bound_before);
        j.sort_unstable();
        j.dedup();
        j
    }

    pub fn is_boundary(&self, v: NodeId) -> bool {
        matches!(self.kind(v), Ok(NodeKind::B))
    }

    /// Adjacency snapshot, sorted by neighbour id.
    pub fn neighbors(&self, v: NodeId) -> Result<&[(NodeId, EdgeKind)]> {
        Ok(&self.data(v)?.adj)
    }

    pub fn neighbor_ids(&self, v: NodeId) -> Result<impl Iterator<Item = NodeId> + '_> {
        Ok(self.data(v)?.adj.iter().map(|&(w, _)| w))
    }

    pub fn degree(&self, v: NodeId) -> Result<usize> {
        Ok(self.data(v)?.adj.len())
    }

    pub fn edge(&self, u: NodeId, v: NodeId) -> Option<EdgeKind> {
        let adj = &self.data(u).ok()?.adj;
        adj.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| adj[i].1)
    }

    /// Upper bound (exclusive) on every id ever issued.
    pub fn id_bound(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_nodes(&self) -> usize {
        self.live
    }

    pub fn num_edges(&self) -> usize {
        self.edges
    }

    pub fn num_spiders(&self) -> usize {
        self.live - self.inputs.len() - self.outputs.len()
    }

    /// Live node ids in ascending order.
    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| n.as_ref().map(|_| NodeId(i)))
    }

    pub fn spider_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes.iter().enumerate().filter_map(|(i, n)| match n {
            Some(d) if d.kind.is_spider() => Some(NodeId(i)),
            _ => None,
        })
    }

    /// Every edge once as `(u, v, kind)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, EdgeKind)> + '_ {
        self.nodes.iter().enumerate().flat_map(|(i, n)| {
            n.iter().flat_map(move |d| {
                d.adj
                    .iter()
                    .filter(move |&&(w, _)| w.0 > i)
                    .map(move |&(w, k)| (NodeId(i), w, k))
            })
        })
    }

    fn insert_half(&mut self, u: NodeId, v: NodeId, kind: EdgeKind) {
        self.touch(u);
        let adj = &mut self.nodes[u.0].as_mut().expect("live node").adj;
        match adj.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => adj[i].1 = kind,
            Err(i) => adj.insert(i, (v, kind)),
        }
    }

    fn remove_half(&mut self, u: NodeId, v: NodeId) -> Option<EdgeKind> {
        self.touch(u);
        let adj = &mut self.nodes.get_mut(u.0)?.as_mut()?.adj;
        let i = adj.binary_search_by_key(&v, |&(w, _)| w).ok()?;
        Some(adj.remove(i).1)
    }

    fn insert_edge_raw(&mut self, u: NodeId, v: NodeId, kind: EdgeKind) {
        self.insert_half(u, v, kind);
        self.insert_half(v, u, kind);
        self.edges += 1;
    }

    /// Removes the `(u, v)` edge if present and returns its kind.
    pub fn disconnect(&mut self, u: NodeId, v: NodeId) -> Option<EdgeKind> {
        let k = self.remove_half(u, v)?;
        self.remove_half(v, u);
        self.edges -= 1;
        Some(k)
    }

    /// Whether `connect(u, v, kind)` would succeed without error, judged on
    /// the direct duplicate only.
    pub fn can_connect(&self, u: NodeId, v: NodeId, kind: EdgeKind) -> bool {
        let (Ok(ku), Ok(kv)) = (self.kind(u), self.kind(v)) else {
            return false;
        };
        if u == v {
            return ku.is_spider();
        }
        match self.edge(u, v) {
            Some(existing) => {
                ku.is_spider()
                    && kv.is_spider()
                    && duplicate_supported(ku == kv, existing, kind)
            }
            None => {
                (ku.is_spider() || self.degree(u).unwrap_or(1) == 0)
                    && (kv.is_spider() || self.degree(v).unwrap_or(1) == 0)
            }
        }
    }

    /// Adds an edge, resolving duplicates and self-loops:
    ///
    /// | endpoints          | existing + new | result                      |
    /// |--------------------|----------------|-----------------------------|
    /// | same colour        | H + H          | both removed                |
    /// | same colour        | S + S          | one S kept                  |
    /// | same colour        | S + H          | spiders fused, +π           |
    /// | different colours  | S + S          | both removed                |
    /// | self-loop          | S              | dropped                     |
    /// | self-loop          | H              | +π on the spider            |
    ///
    /// Any other duplicate is [`DiagramError::UnsupportedEdgeResolution`].
    pub fn connect(&mut self, u: NodeId, v: NodeId, kind: EdgeKind) -> Result<EdgeResolution> {
        let ku = self.kind(u)?;
        let kv = self.kind(v)?;
        if u == v {
            if !ku.is_spider() {
                return Err(DiagramError::BoundaryDegreeViolation(u));
            }
            return Ok(match kind {
                EdgeKind::Simple => EdgeResolution::SelfLoopDropped,
                EdgeKind::Hadamard => {
                    self.add_to_phase(u, Phase::pi())?;
                    EdgeResolution::SelfLoopPhase
                }
            });
        }
        let Some(existing) = self.edge(u, v) else {
            for (w, k) in [(u, ku), (v, kv)] {
                if !k.is_spider() && self.degree(w)? > 0 {
                    return Err(DiagramError::BoundaryDegreeViolation(w));
                }
            }
            self.insert_edge_raw(u, v, kind);
            return Ok(EdgeResolution::Added);
        };
        for (w, k) in [(u, ku), (v, kv)] {
            if !k.is_spider() {
                return Err(DiagramError::BoundaryDegreeViolation(w));
            }
        }
        use EdgeKind::{Hadamard as H, Simple as S};
        match (ku == kv, existing, kind) {
            (true, H, H) | (false, S, S) => {
                self.disconnect(u, v);
                Ok(EdgeResolution::Cancelled)
            }
            (true, S, S) => Ok(EdgeResolution::Kept),
            (true, _, _) => {
                // One of the pair fuses the spiders, the other becomes an H self-loop.
                self.merge_spiders(u, v)?;
                if kind == H {
                    self.add_to_phase(u, Phase::pi())?;
                }
                Ok(EdgeResolution::Merged {
                    kept: u,
                    absorbed: v,
                })
            }
            _ => Err(DiagramError::UnsupportedEdgeResolution(u, v)),
        }
    }

    /// Toggles a Hadamard edge between two distinct Z spiders.
    pub fn toggle_h_edge(&mut self, u: NodeId, v: NodeId) -> Result<()> {
        for w in [u, v] {
            if self.kind(w)? != NodeKind::Z {
                return Err(DiagramError::NotZSpider(w));
            }
        }
        if u == v {
            return Err(DiagramError::Invalid(format!("cannot toggle a self-loop on {u}")));
        }
        match self.edge(u, v) {
            Some(EdgeKind::Hadamard) => {
                self.disconnect(u, v);
            }
            Some(EdgeKind::Simple) => return Err(DiagramError::UnsupportedEdgeResolution(u, v)),
            None => self.insert_edge_raw(u, v, EdgeKind::Hadamard),
        }
        Ok(())
    }

    /// Fuses `absorb` into `keep`: phases add, `absorb`'s edges move to
    /// `keep` through [`Diagram::connect`], and edges between the two
    /// become self-loops.
    pub fn merge_spiders(&mut self, keep: NodeId, absorb: NodeId) -> Result<()> {
        let kk = self.kind(keep)?;
        let ka = self.kind(absorb)?;
        if kk != ka || !kk.is_spider() || keep == absorb {
            return Err(DiagramError::KindMismatch {
                keep,
                keep_kind: kk,
                absorb,
                absorb_kind: ka,
            });
        }
        // Reject before mutating when a direct duplicate has no resolution.
        for &(w, k) in &self.data(absorb)?.adj {
            if w == keep {
                continue;
            }
            if let Some(existing) = self.edge(keep, w) {
                let kw = self.kind(w)?;
                if !duplicate_supported(kw == kk, existing, k) {
                    return Err(DiagramError::UnsupportedEdgeResolution(keep, w));
                }
            }
        }
        let removed = self.remove_node(absorb)?;
        self.add_to_phase(keep, removed.phase)?;
        for (w, k) in removed.neighbors {
            if w == keep || !self.contains(w) {
                // Either a direct keep-absorb edge or a neighbour that an
                // earlier cascade already fused into `keep`.
                if k == EdgeKind::Hadamard {
                    self.add_to_phase(keep, Phase::pi())?;
                }
            } else {
                self.connect(keep, w, k)?;
            }
        }
        Ok(())
    }

    /// Deletes a node with all its edges. Boundary nodes are also removed
    /// from their input/output list.
    pub fn remove_node(&mut self, v: NodeId) -> Result<RemovedNode> {
        let data = self
            .nodes
            .get_mut(v.0)
            .and_then(Option::take)
            .ok_or(DiagramError::UnknownNode(v))?;
        self.touch(v);
        for &(w, _) in &data.adj {
            self.remove_half(w, v);
        }
        self.edges -= data.adj.len();
        self.live -= 1;
        if data.kind == NodeKind::B {
            self.inputs.retain(|&b| b != v);
            self.outputs.retain(|&b| b != v);
        }
        Ok(RemovedNode {
            kind: data.kind,
            phase: data.phase,
            neighbors: data.adj,
        })
    }

    /// Degrees of all non-boundary nodes, largest first.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = self
            .nodes
            .iter()
            .flatten()
            .filter(|d| d.kind.is_spider())
            .map(|d| d.adj.len())
            .collect();
        seq.sort_unstable_by(|a, b| b.cmp(a));
        seq
    }

    /// Checks the structural invariants: boundary lists are disjoint and
    /// cover exactly the B nodes, every B node has degree one, adjacency is
    /// symmetric without self-loops, and the edge/node counters agree.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(DiagramError::Invalid(m));
        let mut seen = vec![false; self.nodes.len()];
        for &b in self.inputs.iter().chain(&self.outputs) {
            if self.kind(b)? != NodeKind::B {
                return bad(format!("{b} is listed as a boundary but is a spider"));
            }
            if std::mem::replace(&mut seen[b.0], true) {
                return bad(format!("{b} appears twice in the boundary lists"));
            }
        }
        let mut live = 0;
        let mut half_edges = 0;
        for (i, n) in self.nodes.iter().enumerate() {
            let Some(d) = n else { continue };
            let v = NodeId(i);
            live += 1;
            half_edges += d.adj.len();
            if d.kind == NodeKind::B {
                if !seen[i] {
                    return bad(format!("boundary {v} is in neither list"));
                }
                if d.adj.len() != 1 {
                    return bad(format!("boundary {v} has degree {}", d.adj.len()));
                }
            }
            if !d.adj.windows(2).all(|w| w[0].0 < w[1].0) {
                return bad(format!("adjacency of {v} is unsorted or has duplicates"));
            }
            for &(w, k) in &d.adj {
                if w == v {
                    return bad(format!("self-loop on {v}"));
                }
                if self.edge(w, v) != Some(k) {
                    return bad(format!("edge {v}-{w} is not symmetric"));
                }
            }
        }
        if live != self.live || half_edges != 2 * self.edges {
            return bad("node or edge counter out of sync".into());
        }
        Ok(())
    }
}

fn duplicate_supported(same_colour: bool, existing: EdgeKind, new: EdgeKind) -> bool {
    same_colour || (existing == EdgeKind::Simple && new == EdgeKind::Simple)
}

/// A node taken out of a diagram by [`Diagram::remove_node`].
#[derive(Clone, Debug)]
pub struct RemovedNode {
    pub kind: NodeKind,
    pub phase: Phase,
    pub neighbors: Vec<(NodeId, EdgeKind)>,
}
