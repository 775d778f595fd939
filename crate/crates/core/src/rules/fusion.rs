//! Spider fusion: two same-colour spiders joined by a simple edge merge and
//! their phases add.

use super::{
    neighbor_set, resolution, simulated_footprint, Binding, Match, Resolution, RewriteError,
    RuleId,
};
use crate::diagram::{Diagram, EdgeKind, NodeId};

/// `None` if re-attaching `absorb`'s edges to `keep` hits an unsupported
/// duplicate; otherwise whether a duplicate triggers a further merge.
fn cascades(d: &Diagram, keep: NodeId, absorb: NodeId) -> Option<bool> {
    let mut cascade = false;
    for &(w, k) in d.neighbors(absorb).ok()? {
        if w == keep || d.is_boundary(w) {
            continue;
        }
        match resolution(d, keep, w, k) {
            Resolution::Local => {}
            Resolution::Merge => cascade = true,
            Resolution::Unsupported => return None,
        }
    }
    Some(cascade)
}

fn is_candidate(d: &Diagram, keep: NodeId, absorb: NodeId) -> bool {
    let (Ok(kk), Ok(ka)) = (d.kind(keep), d.kind(absorb)) else {
        return false;
    };
    kk.is_spider() && kk == ka && d.edge(keep, absorb) == Some(EdgeKind::Simple)
}

pub(super) fn find(d: &Diagram) -> Vec<Match> {
    d.edges()
        .filter(|&(u, v, _)| is_candidate(d, u, v))
        .filter_map(|(keep, absorb, _)| {
            let binding = Binding::Fusion { keep, absorb };
            let fp = if cascades(d, keep, absorb)? {
                let mut fp = simulated_footprint(d, |g| g.merge_spiders(keep, absorb))?;
                fp.extend([keep, absorb]);
                fp
            } else {
                let mut fp = neighbor_set(d, keep);
                fp.extend(neighbor_set(d, absorb));
                fp.extend([keep, absorb]);
                fp
            };
            Some(Match::new(RuleId::SpiderFusion, binding, fp))
        })
        .collect()
}

pub(super) fn apply(d: &mut Diagram, binding: &Binding) -> Result<(), RewriteError> {
    let Binding::Fusion { keep, absorb } = *binding else {
        return Err(RewriteError::BindingMismatch(RuleId::SpiderFusion));
    };
    if !is_candidate(d, keep, absorb) || cascades(d, keep, absorb).is_none() {
        return Err(RewriteError::StaleMatch(RuleId::SpiderFusion));
    }
    d.merge_spiders(keep, absorb)?;
    Ok(())
}
