//! Pivoting on a Hadamard edge `(u, v)` between two Pauli spiders, plus the
//! two variants that first move a non-Pauli phase into a fresh gadget
//! (`pivot_gadget`) or first push a boundary wire away from `v`
//! (`pivot_boundary`).

use super::{neighbor_set, Binding, Match, RewriteError, RuleId};
use crate::diagram::{Diagram, EdgeKind, NodeId, NodeKind};
use crate::phase::Phase;

/// Z spider whose edges are all Hadamard edges to Z spiders.
fn interior(d: &Diagram, v: NodeId) -> bool {
    d.kind(v) == Ok(NodeKind::Z)
        && d.neighbors(v).is_ok_and(|adj| {
            adj.iter()
                .all(|&(w, k)| k == EdgeKind::Hadamard && d.kind(w) == Ok(NodeKind::Z))
        })
}

/// Z spider with at least one boundary wire whose other edges are Hadamard
/// edges to Z spiders.
fn on_boundary(d: &Diagram, v: NodeId) -> bool {
    let Ok(adj) = d.neighbors(v) else {
        return false;
    };
    d.kind(v) == Ok(NodeKind::Z)
        && adj.iter().any(|&(w, _)| d.is_boundary(w))
        && adj.iter().all(|&(w, k)| {
            d.is_boundary(w) || (k == EdgeKind::Hadamard && d.kind(w) == Ok(NodeKind::Z))
        })
}

/// Hub or axis of a phase gadget. Excluded from the two variants so that
/// the gadgets they create are never pivoted away again.
fn gadget_node(d: &Diagram, v: NodeId) -> bool {
    d.degree(v) == Ok(1)
        || d.neighbor_ids(v).is_ok_and(|mut it| {
            it.any(|w| d.kind(w) == Ok(NodeKind::Z) && d.degree(w) == Ok(1))
        })
}

fn pauli(d: &Diagram, v: NodeId) -> bool {
    d.phase(v).is_ok_and(Phase::is_pi_multiple)
}

/// Neighbour groups of the pair, boundaries excluded: exclusive to `u`,
/// shared, exclusive to `v`.
fn groups(d: &Diagram, u: NodeId, v: NodeId) -> (Vec<NodeId>, Vec<NodeId>, Vec<NodeId>) {
    let nu: Vec<NodeId> = neighbor_set(d, u).into_iter().filter(|&w| w != v && !d.is_boundary(w)).collect();
    let nv: Vec<NodeId> = neighbor_set(d, v).into_iter().filter(|&w| w != u && !d.is_boundary(w)).collect();
    let a = nu.iter().copied().filter(|w| !nv.contains(w)).collect();
    let b = nu.iter().copied().filter(|w| nv.contains(w)).collect();
    let c = nv.iter().copied().filter(|w| !nu.contains(w)).collect();
    (a, b, c)
}

fn binding_at(rule: RuleId, d: &Diagram, u: NodeId, v: NodeId) -> Option<Binding> {
    if u == v || d.edge(u, v) != Some(EdgeKind::Hadamard) {
        return None;
    }
    let ok = match rule {
        RuleId::Pivot => interior(d, u) && interior(d, v) && pauli(d, u) && pauli(d, v),
        RuleId::PivotGadget => {
            interior(d, u)
                && interior(d, v)
                && !pauli(d, u)
                && pauli(d, v)
                && !gadget_node(d, u)
                && !gadget_node(d, v)
        }
        RuleId::PivotBoundary => {
            interior(d, u)
                && pauli(d, u)
                && on_boundary(d, v)
                && !gadget_node(d, u)
                && !gadget_node(d, v)
        }
        _ => false,
    };
    if !ok {
        return None;
    }
    let (a, b, c) = groups(d, u, v);
    Some(Binding::Pivot { u, v, a, b, c })
}

pub(super) fn find(rule: RuleId, d: &Diagram) -> Vec<Match> {
    let mut out = Vec::new();
    for (x, y, k) in d.edges() {
        if k != EdgeKind::Hadamard {
            continue;
        }
        let orientations: &[(NodeId, NodeId)] = match rule {
            RuleId::Pivot => &[(x, y)],
            _ => &[(x, y), (y, x)],
        };
        for &(u, v) in orientations {
            if let Some(b) = binding_at(rule, d, u, v) {
                let mut fp = neighbor_set(d, u);
                fp.extend(neighbor_set(d, v));
                out.push(Match::new(rule, b, fp));
            }
        }
    }
    out
}

/// Toggles `A×C`, `A×B`, `B×C`, shifts `A` by `k`, `C` by `j` and `B` by
/// `j + k + π`, then removes `u` and `v`.
fn pivot_core(
    d: &mut Diagram,
    (u, v): (NodeId, NodeId),
    (a, b, c): (&[NodeId], &[NodeId], &[NodeId]),
    j: Phase,
    k: Phase,
) -> Result<(), RewriteError> {
    for (xs, ys) in [(a, c), (a, b), (b, c)] {
        for &x in xs {
            for &y in ys {
                d.toggle_h_edge(x, y)?;
            }
        }
    }
    for &x in a {
        d.add_to_phase(x, k)?;
    }
    for &x in c {
        d.add_to_phase(x, j)?;
    }
    let jk1 = j + k + Phase::pi();
    for &x in b {
        d.add_to_phase(x, jk1)?;
    }
    d.remove_node(u)?;
    d.remove_node(v)?;
    Ok(())
}

/// Moves `w`'s phase onto a fresh gadget `hub(φ)–H–axis(0)–H–w`, leaving
/// `w` phase-free. Returns the axis.
fn unfuse_phase(d: &mut Diagram, w: NodeId) -> Result<NodeId, RewriteError> {
    let phi = d.phase(w)?;
    let hub = d.add_spider(NodeKind::Z, phi)?;
    let axis = d.add_spider(NodeKind::Z, Phase::zero())?;
    d.connect(hub, axis, EdgeKind::Hadamard)?;
    d.connect(axis, w, EdgeKind::Hadamard)?;
    d.set_phase(w, Phase::zero())?;
    Ok(axis)
}

pub(super) fn apply(rule: RuleId, d: &mut Diagram, binding: &Binding) -> Result<(), RewriteError> {
    let Binding::Pivot { u, v, a, b, c } = binding else {
        return Err(RewriteError::BindingMismatch(rule));
    };
    let (u, v) = (*u, *v);
    if binding_at(rule, d, u, v).as_ref() != Some(binding) {
        return Err(RewriteError::StaleMatch(rule));
    }
    let (mut a, mut c) = (a.clone(), c.clone());
    match rule {
        RuleId::Pivot => {}
        RuleId::PivotGadget => a.push(unfuse_phase(d, u)?),
        RuleId::PivotBoundary => {
            let wires: Vec<(NodeId, EdgeKind)> = d
                .neighbors(v)?
                .iter()
                .copied()
                .filter(|&(w, _)| d.is_boundary(w))
                .collect();
            for (bnd, kind) in wires {
                // v–S–b becomes v–H–Z(0)–H–b; v–H–b becomes v–H–Z(0)–S–b.
                d.disconnect(v, bnd);
                let nv = d.add_spider(NodeKind::Z, Phase::zero())?;
                d.connect(v, nv, EdgeKind::Hadamard)?;
                d.connect(nv, bnd, kind.toggled())?;
                c.push(nv);
            }
            if !pauli(d, v) {
                c.push(unfuse_phase(d, v)?);
            }
        }
        _ => return Err(RewriteError::BindingMismatch(rule)),
    }
    let j = d.phase(u)?;
    let k = d.phase(v)?;
    pivot_core(d, (u, v), (&a, b, &c), j, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{apply, find_matches};

    /// u–v pivot pair with `na` exclusive u-neighbours, `nb` shared and
    /// `nc` exclusive v-neighbours, each neighbour on its own boundary wire.
    fn instance(j: i64, k: i64, na: usize, nb: usize, nc: usize) -> (Diagram, NodeId, NodeId, [Vec<NodeId>; 3]) {
        let mut d = Diagram::new();
        let u = d.add_spider(NodeKind::Z, Phase::pi_multiple(j)).unwrap();
        let v = d.add_spider(NodeKind::Z, Phase::pi_multiple(k)).unwrap();
        d.connect(u, v, EdgeKind::Hadamard).unwrap();
        let mk = |d: &mut Diagram, n: usize, to: &[NodeId], q: i64| -> Vec<NodeId> {
            (0..n)
                .map(|i| {
                    let w = d.add_spider(NodeKind::Z, Phase::exact(q + i as i64, 8)).unwrap();
                    for &t in to {
                        d.connect(w, t, EdgeKind::Hadamard).unwrap();
                    }
                    let bnd = d.add_input();
                    d.connect(bnd, w, EdgeKind::Simple).unwrap();
                    w
                })
                .collect()
        };
        let a = mk(&mut d, na, &[u], 1);
        let b = mk(&mut d, nb, &[u, v], 3);
        let c = mk(&mut d, nc, &[v], 5);
        (d, u, v, [a, b, c])
    }

    #[test]
    fn phase_labels_for_all_j_k() {
        for j in 0..2 {
            for k in 0..2 {
                let (mut d, u, v, [a, b, c]) = instance(j, k, 2, 2, 2);
                let before: Vec<Phase> = a.iter().chain(&b).chain(&c).map(|&w| d.phase(w).unwrap()).collect();
                let ms = find_matches(RuleId::Pivot, &d).unwrap();
                assert_eq!(ms.len(), 1);
                assert_eq!(ms[0].binding, Binding::Pivot { u, v, a: a.clone(), b: b.clone(), c: c.clone() });
                apply(&mut d, &ms[0]).unwrap();
                let shift = |g: usize| match g {
                    0 => Phase::pi_multiple(k),
                    1 => Phase::pi_multiple(j + k + 1),
                    _ => Phase::pi_multiple(j),
                };
                let all: Vec<(usize, NodeId)> = [&a, &b, &c]
                    .iter()
                    .enumerate()
                    .flat_map(|(g, ws)| ws.iter().map(move |&w| (g, w)))
                    .collect();
                for ((g, w), p) in all.iter().zip(before) {
                    assert_eq!(d.phase(*w).unwrap(), p + shift(*g));
                }
                for &x in &a {
                    for &y in c.iter().chain(&b) {
                        assert_eq!(d.edge(x, y), Some(EdgeKind::Hadamard));
                    }
                }
                assert_eq!(d.edge(b[0], b[1]), None);
                assert!(!d.contains(u) && !d.contains(v));
                d.validate().unwrap();
            }
        }
    }

    #[test]
    fn gadget_variant_keeps_node_count() {
        let (mut d, u, _, _) = instance(0, 1, 1, 1, 1);
        d.set_phase(u, Phase::exact(1, 4)).unwrap();
        assert!(find_matches(RuleId::Pivot, &d).unwrap().is_empty());
        let ms = find_matches(RuleId::PivotGadget, &d).unwrap();
        assert_eq!(ms.len(), 1);
        let n = d.num_nodes();
        apply(&mut d, &ms[0]).unwrap();
        assert_eq!(d.num_nodes(), n);
        let hubs: Vec<NodeId> = d.spider_ids().filter(|&w| d.degree(w) == Ok(1)).collect();
        assert_eq!(hubs.len(), 1);
        assert_eq!(d.phase(hubs[0]).unwrap(), Phase::exact(1, 4));
        let (axis, _) = d.neighbors(hubs[0]).unwrap()[0];
        assert_eq!(d.phase(axis).unwrap(), Phase::pi());
        assert!(find_matches(RuleId::PivotGadget, &d).unwrap().is_empty());
    }

    #[test]
    fn boundary_variant_pushes_wire() {
        let mut d = Diagram::new();
        let i = d.add_input();
        let o = d.add_output();
        let u = d.add_spider(NodeKind::Z, Phase::zero()).unwrap();
        let v = d.add_spider(NodeKind::Z, Phase::zero()).unwrap();
        let w = d.add_spider(NodeKind::Z, Phase::exact(1, 4)).unwrap();
        d.connect(i, v, EdgeKind::Simple).unwrap();
        d.connect(u, v, EdgeKind::Hadamard).unwrap();
        d.connect(u, w, EdgeKind::Hadamard).unwrap();
        d.connect(w, o, EdgeKind::Simple).unwrap();
        // (u, w) is a candidate too: w also sits on a wire.
        let ms = find_matches(RuleId::PivotBoundary, &d).unwrap();
        assert_eq!(ms.len(), 2);
        assert_eq!(ms[0].binding.primary_ids(), vec![u, v]);
        apply(&mut d, &ms[0]).unwrap();
        d.validate().unwrap();
        let (nv, k) = d.neighbors(i).unwrap()[0];
        assert_eq!(k, EdgeKind::Hadamard);
        assert_eq!(d.edge(nv, w), Some(EdgeKind::Hadamard));
        assert_eq!(d.num_spiders(), 2);
    }
}
