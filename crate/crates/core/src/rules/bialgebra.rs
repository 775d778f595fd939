//! Bialgebra, simplifying direction: a complete bipartite block of `m`
//! phase-free Z spiders and `n` phase-free X spiders, each with exactly one
//! outside wire, collapses to a single Z–X pair.

use std::collections::HashSet;

use super::{Binding, Match, RewriteError, RuleId};
use crate::diagram::{Diagram, EdgeKind, NodeId, NodeKind};
use crate::phase::Phase;

fn plain(d: &Diagram, v: NodeId, kind: NodeKind) -> bool {
    d.kind(v) == Ok(kind)
        && d.phase(v).is_ok_and(Phase::is_zero)
        && d
            .neighbors(v)
            .is_ok_and(|n| n.iter().all(|&(_, k)| k == EdgeKind::Simple))
}

/// Checks a candidate block and returns the external neighbour of every
/// member, or `None` if the block is not an instance of the pattern.
fn externals(d: &Diagram, zs: &[NodeId], xs: &[NodeId]) -> Option<(Vec<NodeId>, Vec<NodeId>)> {
    if zs.len() + xs.len() <= 2 {
        return None;
    }
    externals_any_size(d, zs, xs)
}

fn externals_any_size(
    d: &Diagram,
    zs: &[NodeId],
    xs: &[NodeId],
) -> Option<(Vec<NodeId>, Vec<NodeId>)> {
    if zs.is_empty() || xs.is_empty() {
        return None;
    }
    let block: HashSet<NodeId> = zs.iter().chain(xs).copied().collect();
    let ext_of = |v: NodeId, kind: NodeKind, other: &[NodeId]| -> Option<NodeId> {
        if !plain(d, v, kind) || d.degree(v).ok()? != other.len() + 1 {
            return None;
        }
        if !other.iter().all(|&w| d.edge(v, w).is_some()) {
            return None;
        }
        d.neighbor_ids(v)
            .ok()?
            .find(|w| !other.contains(w))
            .filter(|w| !block.contains(w))
    };
    let z_ext = zs
        .iter()
        .map(|&z| ext_of(z, NodeKind::Z, xs))
        .collect::<Option<Vec<_>>>()?;
    let x_ext = xs
        .iter()
        .map(|&x| ext_of(x, NodeKind::X, zs))
        .collect::<Option<Vec<_>>>()?;
    Some((z_ext, x_ext))
}

/// Given the X side, the Z side is every plain Z spider adjacent to all of it.
fn z_side(d: &Diagram, xs: &[NodeId]) -> Vec<NodeId> {
    let mut zs: Vec<NodeId> = d
        .neighbor_ids(xs[0])
        .into_iter()
        .flatten()
        .filter(|&z| plain(d, z, NodeKind::Z))
        .filter(|&z| xs.iter().all(|&x| d.edge(z, x).is_some()))
        .collect();
    zs.sort_unstable();
    zs
}

fn block_from_seed(d: &Diagram, z: NodeId) -> Option<Binding> {
    if !plain(d, z, NodeKind::Z) {
        return None;
    }
    let (xs, others): (Vec<NodeId>, Vec<NodeId>) = d
        .neighbor_ids(z)
        .ok()?
        .partition(|&x| plain(d, x, NodeKind::X));
    let attempts: Vec<Vec<NodeId>> = match others.len() {
        1 => vec![xs],
        // The outside wire of `z` is itself a plain X spider: try each.
        0 => (0..xs.len())
            .map(|i| [&xs[..i], &xs[i + 1..]].concat())
            .collect(),
        _ => vec![],
    };
    attempts.into_iter().find_map(|xs| {
        if xs.is_empty() {
            return None;
        }
        let zs = z_side(d, &xs);
        if zs.first() != Some(&z) {
            // Reported from the block's smallest Z spider only.
            return None;
        }
        let (z_ext, x_ext) = externals(d, &zs, &xs)?;
        Some(Binding::Bialgebra {
            zs,
            xs,
            z_ext,
            x_ext,
        })
    })
}

pub(super) fn find(d: &Diagram) -> Vec<Match> {
    d.spider_ids()
        .filter_map(|z| block_from_seed(d, z))
        .map(|b| {
            let Binding::Bialgebra { zs, xs, z_ext, x_ext } = &b else {
                unreachable!()
            };
            let fp: Vec<NodeId> = zs.iter().chain(xs).chain(z_ext).chain(x_ext).copied().collect();
            Match::new(RuleId::Bialgebra, b, fp)
        })
        .collect()
}

pub(super) fn apply(d: &mut Diagram, binding: &Binding) -> Result<(), RewriteError> {
    let Binding::Bialgebra { zs, xs, z_ext, x_ext } = binding else {
        return Err(RewriteError::BindingMismatch(RuleId::Bialgebra));
    };
    if externals(d, zs, xs).as_ref() != Some(&(z_ext.clone(), x_ext.clone())) {
        return Err(RewriteError::StaleMatch(RuleId::Bialgebra));
    }
    rewrite(d, zs, xs, z_ext, x_ext)
}

/// Rewrites a block without the matcher's size guard, so a 1×1 block is
/// replaced by a fresh pair of the same shape.
pub fn apply_block(d: &mut Diagram, zs: &[NodeId], xs: &[NodeId]) -> Result<(), RewriteError> {
    let (z_ext, x_ext) =
        externals_any_size(d, zs, xs).ok_or(RewriteError::StaleMatch(RuleId::Bialgebra))?;
    rewrite(d, zs, xs, &z_ext, &x_ext)
}

fn rewrite(
    d: &mut Diagram,
    zs: &[NodeId],
    xs: &[NodeId],
    z_ext: &[NodeId],
    x_ext: &[NodeId],
) -> Result<(), RewriteError> {
    for &v in zs.iter().chain(xs) {
        d.remove_node(v)?;
    }
    let nz = d.add_spider(NodeKind::Z, Phase::zero())?;
    let nx = d.add_spider(NodeKind::X, Phase::zero())?;
    d.connect(nz, nx, EdgeKind::Simple)?;
    for &w in x_ext {
        d.connect(nz, w, EdgeKind::Simple)?;
    }
    for &w in z_ext {
        d.connect(nx, w, EdgeKind::Simple)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{apply, find_matches};

    /// `m` Z(0) and `n` X(0) spiders, complete bipartite, each with its own
    /// boundary wire.
    fn block(m: usize, n: usize) -> (Diagram, Vec<NodeId>, Vec<NodeId>) {
        let mut d = Diagram::new();
        let zs: Vec<NodeId> = (0..m)
            .map(|_| d.add_spider(NodeKind::Z, Phase::zero()).unwrap())
            .collect();
        let xs: Vec<NodeId> = (0..n)
            .map(|_| d.add_spider(NodeKind::X, Phase::zero()).unwrap())
            .collect();
        for &z in &zs {
            let b = d.add_input();
            d.connect(b, z, EdgeKind::Simple).unwrap();
            for &x in &xs {
                d.connect(z, x, EdgeKind::Simple).unwrap();
            }
        }
        for &x in &xs {
            let b = d.add_output();
            d.connect(x, b, EdgeKind::Simple).unwrap();
        }
        (d, zs, xs)
    }

    #[test]
    fn three_by_two_collapses() {
        let (mut d, zs, xs) = block(3, 2);
        let ms = find_matches(RuleId::Bialgebra, &d).unwrap();
        assert_eq!(ms.len(), 1);
        let Binding::Bialgebra { zs: mz, xs: mx, .. } = &ms[0].binding else {
            panic!()
        };
        assert_eq!((mz, mx), (&zs, &xs));
        apply(&mut d, &ms[0]).unwrap();
        assert_eq!(d.num_spiders(), 2);
        assert_eq!(d.num_edges(), 1 + 5);
        d.validate().unwrap();
        // The new Z spider carries the wires that used to hang off the X side.
        for &o in d.outputs() {
            let (w, _) = d.neighbors(o).unwrap()[0];
            assert_eq!(d.kind(w).unwrap(), NodeKind::Z);
        }
    }

    #[test]
    fn one_by_one_is_not_reported_but_applies() {
        let (mut d, zs, xs) = block(1, 1);
        assert!(find_matches(RuleId::Bialgebra, &d).unwrap().is_empty());
        apply_block(&mut d, &zs, &xs).unwrap();
        assert_eq!(d.num_spiders(), 2);
        assert!(!d.contains(zs[0]));
        d.validate().unwrap();
    }

    #[test]
    fn phase_blocks_the_pattern() {
        let (mut d, zs, _) = block(2, 2);
        d.set_phase(zs[0], Phase::pi()).unwrap();
        assert!(find_matches(RuleId::Bialgebra, &d).unwrap().is_empty());
    }
}
