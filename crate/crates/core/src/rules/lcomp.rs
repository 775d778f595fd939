use super::{Binding, Match, RewriteError, RuleId};
use crate::diagram::{Diagram, EdgeKind, NodeId, NodeKind};

/// Interior Z spider with phase ±π/2 whose edges are all Hadamard edges to
/// Z spiders. Returns its sorted neighbour list.
fn neighbors_if_candidate(d: &Diagram, u: NodeId) -> Option<Vec<NodeId>> {
    if d.kind(u).ok()? != NodeKind::Z || !d.phase(u).ok()?.is_half_pi() {
        return None;
    }
    let adj = d.neighbors(u).ok()?;
    adj.iter()
        .all(|&(w, k)| k == EdgeKind::Hadamard && d.kind(w) == Ok(NodeKind::Z))
        .then(|| adj.iter().map(|&(w, _)| w).collect())
}

pub(super) fn find(d: &Diagram) -> Vec<Match> {
    d.spider_ids()
        .filter_map(|u| {
            let neighbors = neighbors_if_candidate(d, u)?;
            let fp: Vec<NodeId> = neighbors.iter().copied().chain([u]).collect();
            Some(Match::new(
                RuleId::LocalComplementation,
                Binding::LocalComplementation { u, neighbors },
                fp,
            ))
        })
        .collect()
}

/// Complements the Hadamard graph on `N(u)`, shifts every neighbour by
/// `-phase(u)` and removes `u`.
pub(super) fn apply(d: &mut Diagram, binding: &Binding) -> Result<(), RewriteError> {
    let Binding::LocalComplementation { u, neighbors } = binding else {
        return Err(RewriteError::BindingMismatch(RuleId::LocalComplementation));
    };
    if neighbors_if_candidate(d, *u).as_ref() != Some(neighbors) {
        return Err(RewriteError::StaleMatch(RuleId::LocalComplementation));
    }
    let pairs_ok = neighbors.iter().enumerate().all(|(i, &a)| {
        neighbors[i + 1..]
            .iter()
            .all(|&b| d.edge(a, b) != Some(EdgeKind::Simple))
    });
    if !pairs_ok {
        return Err(RewriteError::StaleMatch(RuleId::LocalComplementation));
    }
    for (i, &a) in neighbors.iter().enumerate() {
        for &b in &neighbors[i + 1..] {
            d.toggle_h_edge(a, b)?;
        }
    }
    let shift = -d.phase(*u)?;
    for &n in neighbors {
        d.add_to_phase(n, shift)?;
    }
    d.remove_node(*u)?;
    Ok(())
}
