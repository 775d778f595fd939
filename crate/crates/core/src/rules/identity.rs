//! Identity removal: a phase-free spider of degree two (either colour) is a
//! plain wire. The two edge kinds compose, so `H·H` becomes a simple edge.

use super::{resolution, simulated_footprint, Binding, Match, Resolution, RewriteError, RuleId};
use crate::diagram::{Diagram, DiagramError, NodeId};

fn binding_at(d: &Diagram, v: NodeId) -> Option<Binding> {
    if !d.kind(v).ok()?.is_spider() || !d.phase(v).ok()?.is_zero() {
        return None;
    }
    match *d.neighbors(v).ok()? {
        [a, b] => Some(Binding::Identity { v, a, b }),
        _ => None,
    }
}

/// Footprint of removing `v`, or `None` if the joining edge cannot be
/// represented.
fn footprint(d: &Diagram, binding: &Binding) -> Option<Vec<NodeId>> {
    let Binding::Identity { v, a: (a, ka), b: (b, kb) } = *binding else {
        return None;
    };
    let local = || Some(vec![v, a, b]);
    if d.is_boundary(a) || d.is_boundary(b) {
        return local();
    }
    match resolution(d, a, b, ka.compose(kb)) {
        Resolution::Local => local(),
        Resolution::Unsupported => None,
        Resolution::Merge => {
            let mut fp = simulated_footprint(d, |g| rewrite(g, binding))?;
            fp.push(v);
            Some(fp)
        }
    }
}

pub(super) fn find(d: &Diagram) -> Vec<Match> {
    d.spider_ids()
        .filter_map(|v| {
            let b = binding_at(d, v)?;
            let fp = footprint(d, &b)?;
            Some(Match::new(RuleId::IdentityRemoval, b, fp))
        })
        .collect()
}

fn rewrite(d: &mut Diagram, binding: &Binding) -> Result<(), DiagramError> {
    let Binding::Identity { v, a: (a, ka), b: (b, kb) } = *binding else {
        unreachable!("identity binding");
    };
    d.remove_node(v)?;
    d.connect(a, b, ka.compose(kb))?;
    Ok(())
}

pub(super) fn apply(d: &mut Diagram, binding: &Binding) -> Result<(), RewriteError> {
    let Binding::Identity { v, .. } = *binding else {
        return Err(RewriteError::BindingMismatch(RuleId::IdentityRemoval));
    };
    if binding_at(d, v).as_ref() != Some(binding) {
        return Err(RewriteError::StaleMatch(RuleId::IdentityRemoval));
    }
    let Binding::Identity { a: (a, ka), b: (b, kb), .. } = *binding else {
        unreachable!();
    };
    let both_spiders = !d.is_boundary(a) && !d.is_boundary(b);
    if both_spiders && resolution(d, a, b, ka.compose(kb)) == Resolution::Unsupported {
        return Err(RewriteError::StaleMatch(RuleId::IdentityRemoval));
    }
    rewrite(d, binding)?;
    Ok(())
}
