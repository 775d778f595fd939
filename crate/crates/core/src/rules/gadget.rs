//! Phase-gadget fusion. Two gadgets on the same legs merge into one whose
//! hub carries the sum of the phases.
//!
//! Two shapes are recognised: the circuit-level shape (phase-free X axis,
//! simple edges throughout) and its graph-like counterpart (phase-free Z
//! axis, Hadamard edges throughout). Legs are Z spiders in both.

use std::collections::BTreeMap;

use super::{Binding, GadgetRef, Match, RewriteError, RuleId};
use crate::diagram::{Diagram, EdgeKind, NodeId, NodeKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GadgetForm {
    /// X(0) axis, simple edges.
    XAxis,
    /// Z(0) axis, Hadamard edges.
    ZAxis,
}

impl GadgetForm {
    fn axis_kind(self) -> NodeKind {
        match self {
            GadgetForm::XAxis => NodeKind::X,
            GadgetForm::ZAxis => NodeKind::Z,
        }
    }

    fn edge_kind(self) -> EdgeKind {
        match self {
            GadgetForm::XAxis => EdgeKind::Simple,
            GadgetForm::ZAxis => EdgeKind::Hadamard,
        }
    }
}

/// Reads the gadget hanging off `hub`: its form, axis and sorted legs.
fn gadget_at(d: &Diagram, hub: NodeId) -> Option<(GadgetForm, GadgetRef, Vec<NodeId>)> {
    if d.kind(hub).ok()? != NodeKind::Z {
        return None;
    }
    let &[(axis, k)] = d.neighbors(hub).ok()? else {
        return None;
    };
    let form = [GadgetForm::XAxis, GadgetForm::ZAxis]
        .into_iter()
        .find(|f| f.axis_kind() == d.kind(axis).ok().unwrap_or(NodeKind::B) && f.edge_kind() == k)?;
    if !d.phase(axis).ok()?.is_zero() {
        return None;
    }
    let mut legs = Vec::new();
    for &(w, kw) in d.neighbors(axis).ok()? {
        if w == hub {
            continue;
        }
        if kw != form.edge_kind() || d.kind(w).ok()? != NodeKind::Z {
            return None;
        }
        if d.degree(w).ok()? == 1 {
            // A second degree-one neighbour makes the hub ambiguous.
            return None;
        }
        legs.push(w);
    }
    if legs.is_empty() {
        return None;
    }
    Some((form, GadgetRef { hub, axis }, legs))
}

pub(super) fn find(d: &Diagram) -> Vec<Match> {
    let mut groups: BTreeMap<(GadgetForm, Vec<NodeId>), Vec<GadgetRef>> = BTreeMap::new();
    for hub in d.spider_ids() {
        if let Some((form, g, legs)) = gadget_at(d, hub) {
            groups.entry((form, legs)).or_default().push(g);
        }
    }
    let mut out = Vec::new();
    for ((form, legs), gadgets) in groups {
        // Hubs arrive in ascending order; pair them off without overlap.
        for pair in gadgets.chunks_exact(2) {
            let (keep, drop) = (pair[0], pair[1]);
            let fp: Vec<NodeId> = [keep.hub, keep.axis, drop.hub, drop.axis]
                .into_iter()
                .chain(legs.iter().copied())
                .collect();
            out.push(Match::new(
                RuleId::GadgetFusion,
                Binding::Gadget {
                    form,
                    keep,
                    drop,
                    legs: legs.clone(),
                },
                fp,
            ));
        }
    }
    out
}

pub(super) fn apply(d: &mut Diagram, binding: &Binding) -> Result<(), RewriteError> {
    let Binding::Gadget { form, keep, drop, legs } = binding else {
        return Err(RewriteError::BindingMismatch(RuleId::GadgetFusion));
    };
    let current = |g: &GadgetRef| gadget_at(d, g.hub);
    let expected = |g: &GadgetRef| Some((*form, *g, legs.clone()));
    if keep.axis == drop.axis || current(keep) != expected(keep) || current(drop) != expected(drop) {
        return Err(RewriteError::StaleMatch(RuleId::GadgetFusion));
    }
    let removed = d.remove_node(drop.hub)?;
    d.remove_node(drop.axis)?;
    d.add_to_phase(keep.hub, removed.phase)?;
    Ok(())
}
