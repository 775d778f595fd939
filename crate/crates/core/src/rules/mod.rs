//! Pattern matchers and rewriters for the eight simplification rules.
//!
//! Every matcher returns [`Match`] records in a deterministic order. Each
//! record carries the node bindings the rewrite needs and a footprint: the
//! set of nodes the rewrite deletes, re-wires or re-phases, plus the nodes
//! its applicability depends on. Rewriters re-check the pattern before
//! mutating and report [`RewriteError::StaleMatch`] instead of applying a
//! rewrite whose bindings have gone out of date.

mod bialgebra;
mod fusion;
mod gadget;
mod identity;
mod lcomp;
mod pivot;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{has_graph_like_interior, Diagram, DiagramError, EdgeKind, NodeId};

pub use bialgebra::apply_block as apply_bialgebra_block;
pub use gadget::GadgetForm;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    IdentityRemoval,
    SpiderFusion,
    Bialgebra,
    GadgetFusion,
    LocalComplementation,
    Pivot,
    PivotGadget,
    PivotBoundary,
}

impl RuleId {
    pub const ALL: [RuleId; 8] = [
        RuleId::IdentityRemoval,
        RuleId::SpiderFusion,
        RuleId::Bialgebra,
        RuleId::GadgetFusion,
        RuleId::LocalComplementation,
        RuleId::Pivot,
        RuleId::PivotGadget,
        RuleId::PivotBoundary,
    ];

    /// Short name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            RuleId::IdentityRemoval => "identity",
            RuleId::SpiderFusion => "fusion",
            RuleId::Bialgebra => "bialgebra",
            RuleId::GadgetFusion => "gadget",
            RuleId::LocalComplementation => "lcomp",
            RuleId::Pivot => "pivot",
            RuleId::PivotGadget => "pivot_gadget",
            RuleId::PivotBoundary => "pivot_boundary",
        }
    }

    fn long_name(self) -> &'static str {
        match self {
            RuleId::IdentityRemoval => "identity_removal",
            RuleId::SpiderFusion => "spider_fusion",
            RuleId::Bialgebra => "bialgebra",
            RuleId::GadgetFusion => "gadget_fusion",
            RuleId::LocalComplementation => "local_complementation",
            RuleId::Pivot => "pivot",
            RuleId::PivotGadget => "pivot_gadget",
            RuleId::PivotBoundary => "pivot_boundary",
        }
    }

    /// Rules whose matcher requires every spider to be Z and every
    /// spider–spider edge to be Hadamard.
    pub fn needs_graph_like(self) -> bool {
        matches!(
            self,
            RuleId::LocalComplementation
                | RuleId::Pivot
                | RuleId::PivotGadget
                | RuleId::PivotBoundary
        )
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown rule `{0}`")]
pub struct UnknownRule(pub String);

impl FromStr for RuleId {
    type Err = UnknownRule;

    /// Accepts both the short and the long rule names.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.name() == s || r.long_name() == s)
            .ok_or_else(|| UnknownRule(s.to_string()))
    }
}

/// A phase gadget: a degree-one hub spider hanging off an axis spider.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GadgetRef {
    pub hub: NodeId,
    pub axis: NodeId,
}

/// Rule-specific node bindings of a match.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Binding {
    /// `v` is removed and its two neighbours joined.
    Identity {
        v: NodeId,
        a: (NodeId, EdgeKind),
        b: (NodeId, EdgeKind),
    },
    /// `absorb` is fused into `keep`.
    Fusion { keep: NodeId, absorb: NodeId },
    /// `z_ext[i]` is the single outside neighbour of `zs[i]`, likewise for X.
    Bialgebra {
        zs: Vec<NodeId>,
        xs: Vec<NodeId>,
        z_ext: Vec<NodeId>,
        x_ext: Vec<NodeId>,
    },
    Gadget {
        form: GadgetForm,
        keep: GadgetRef,
        drop: GadgetRef,
        legs: Vec<NodeId>,
    },
    LocalComplementation { u: NodeId, neighbors: Vec<NodeId> },
    /// Pivot pair and its neighbour groups: `a` only next to `u`, `c` only
    /// next to `v`, `b` next to both. Boundary nodes are not grouped.
    Pivot {
        u: NodeId,
        v: NodeId,
        a: Vec<NodeId>,
        b: Vec<NodeId>,
        c: Vec<NodeId>,
    },
}

impl Binding {
    /// The nodes that identify the match, ascending.
    pub fn primary_ids(&self) -> Vec<NodeId> {
        let mut ids = match self {
            Binding::Identity { v, .. } => vec![*v],
            Binding::Fusion { keep, absorb } => vec![*keep, *absorb],
            Binding::Bialgebra { zs, xs, .. } => zs.iter().chain(xs).copied().collect(),
            Binding::Gadget { keep, drop, .. } => vec![keep.hub, keep.axis, drop.hub, drop.axis],
            Binding::LocalComplementation { u, .. } => vec![*u],
            Binding::Pivot { u, v, .. } => vec![*u, *v],
        };
        ids.sort_unstable();
        ids
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Match {
    pub rule: RuleId,
    pub binding: Binding,
    /// Sorted and deduplicated.
    pub footprint: Vec<NodeId>,
}

impl Match {
    fn new(rule: RuleId, binding: Binding, footprint: impl IntoIterator<Item = NodeId>) -> Match {
        let mut footprint: Vec<NodeId> = footprint.into_iter().collect();
        footprint.sort_unstable();
        footprint.dedup();
        Match {
            rule,
            binding,
            footprint,
        }
    }

    /// Order key: smallest bound id, then the bound ids lexicographically.
    fn order_key(&self) -> (NodeId, Vec<NodeId>) {
        let ids = self.binding.primary_ids();
        (ids[0], ids)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RewriteError {
    #[error("{0} match is stale")]
    StaleMatch(RuleId),
    #[error("{0} requires a graph-like diagram")]
    GraphLikeRequired(RuleId),
    #[error("binding does not belong to rule {0}")]
    BindingMismatch(RuleId),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// All occurrences of `rule`'s left-hand side in `d`.
pub fn find_matches(rule: RuleId, d: &Diagram) -> Result<Vec<Match>, RewriteError> {
    if rule.needs_graph_like() && !has_graph_like_interior(d) {
        return Err(RewriteError::GraphLikeRequired(rule));
    }
    let mut found = match rule {
        RuleId::IdentityRemoval => identity::find(d),
        RuleId::SpiderFusion => fusion::find(d),
        RuleId::Bialgebra => bialgebra::find(d),
        RuleId::GadgetFusion => gadget::find(d),
        RuleId::LocalComplementation => lcomp::find(d),
        RuleId::Pivot | RuleId::PivotGadget | RuleId::PivotBoundary => pivot::find(rule, d),
    };
    found.sort_by_cached_key(Match::order_key);
    Ok(found)
}

/// Applies one match. On error other than [`RewriteError::Diagram`] the
/// diagram is unchanged.
pub fn apply(d: &mut Diagram, m: &Match) -> Result<(), RewriteError> {
    match (&m.binding, m.rule) {
        (Binding::Identity { .. }, RuleId::IdentityRemoval) => identity::apply(d, &m.binding),
        (Binding::Fusion { .. }, RuleId::SpiderFusion) => fusion::apply(d, &m.binding),
        (Binding::Bialgebra { .. }, RuleId::Bialgebra) => bialgebra::apply(d, &m.binding),
        (Binding::Gadget { .. }, RuleId::GadgetFusion) => gadget::apply(d, &m.binding),
        (Binding::LocalComplementation { .. }, RuleId::LocalComplementation) => {
            lcomp::apply(d, &m.binding)
        }
        (Binding::Pivot { .. }, RuleId::Pivot | RuleId::PivotGadget | RuleId::PivotBoundary) => {
            pivot::apply(m.rule, d, &m.binding)
        }
        (_, rule) => Err(RewriteError::BindingMismatch(rule)),
    }
}

/// Runs `f` on a copy of `d` and returns the pre-existing nodes it touched,
/// or `None` if it failed. Used for footprints of rewrites whose edge
/// resolution cascades beyond the immediate neighbourhood.
fn simulated_footprint(
    d: &Diagram,
    f: impl FnOnce(&mut Diagram) -> Result<(), DiagramError>,
) -> Option<Vec<NodeId>> {
    let mut g = d.clone();
    let bound = g.id_bound();
    g.start_journal();
    f(&mut g).ok()?;
    Some(g.take_journal(bound))
}

/// Outcome of adding an edge on top of an existing one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Resolution {
    /// No existing edge, or the pair cancels / collapses locally.
    Local,
    /// The endpoints get fused, possibly cascading.
    Merge,
    /// Not representable.
    Unsupported,
}

/// How `d.connect(u, w, kind)` would resolve against the current `(u, w)`
/// edge, both endpoints being spiders.
fn resolution(d: &Diagram, u: NodeId, w: NodeId, kind: EdgeKind) -> Resolution {
    let Some(existing) = d.edge(u, w) else {
        return Resolution::Local;
    };
    let same = d.kind(u).ok() == d.kind(w).ok();
    match (same, existing == kind) {
        (true, true) => Resolution::Local,
        (true, false) => Resolution::Merge,
        (false, _) if existing == EdgeKind::Simple && kind == EdgeKind::Simple => Resolution::Local,
        (false, _) => Resolution::Unsupported,
    }
}

fn neighbor_set(d: &Diagram, v: NodeId) -> Vec<NodeId> {
    d.neighbor_ids(v).map(Iterator::collect).unwrap_or_default()
}
