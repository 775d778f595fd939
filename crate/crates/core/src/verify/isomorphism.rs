//! Structural comparison of diagrams.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use crate::diagram::{Diagram, EdgeKind, NodeId, NodeKind};
use crate::phase::INEXACT_EQ_TOL;

/// Node invariants that any isomorphism must preserve.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Signature {
    kind: NodeKind,
    degree: usize,
    neighbors: Vec<(NodeKind, EdgeKind)>,
}

fn signature(d: &Diagram, v: NodeId) -> Signature {
    let nbrs = d.neighbors(v).expect("live node");
    let mut neighbors: Vec<(NodeKind, EdgeKind)> = nbrs
        .iter()
        .map(|&(w, e)| (d.kind(w).expect("live node"), e))
        .collect();
    neighbors.sort_unstable();
    Signature {
        kind: d.kind(v).expect("live node"),
        degree: nbrs.len(),
        neighbors,
    }
}

/// Searches for a bijection of nodes preserving kinds, phases, edges and
/// edge kinds, with input `i` sent to input `i` and output `j` to output
/// `j`. Returns the mapping from `g1` to `g2` when one exists.
pub fn labeled_isomorphic(g1: &Diagram, g2: &Diagram) -> Option<BTreeMap<NodeId, NodeId>> {
    if g1.num_nodes() != g2.num_nodes()
        || g1.num_edges() != g2.num_edges()
        || g1.inputs().len() != g2.inputs().len()
        || g1.outputs().len() != g2.outputs().len()
    {
        return None;
    }
    let sig1: HashMap<NodeId, Signature> = g1.node_ids().map(|v| (v, signature(g1, v))).collect();
    let sig2: HashMap<NodeId, Signature> = g2.node_ids().map(|v| (v, signature(g2, v))).collect();
    let mut by_sig: HashMap<&Signature, Vec<NodeId>> = HashMap::new();
    for v in g2.node_ids() {
        by_sig.entry(&sig2[&v]).or_default().push(v);
    }
    {
        let mut counts: HashMap<&Signature, usize> = HashMap::new();
        for s in sig1.values() {
            *counts.entry(s).or_default() += 1;
        }
        if counts.iter().any(|(s, &n)| by_sig.get(s).map_or(0, Vec::len) != n) {
            return None;
        }
    }

    let fixed: HashMap<NodeId, NodeId> = g1
        .inputs()
        .iter()
        .zip(g2.inputs())
        .chain(g1.outputs().iter().zip(g2.outputs()))
        .map(|(&a, &b)| (a, b))
        .collect();
    let order = search_order(g1, &sig1, &by_sig);
    if order.is_empty() {
        return Some(BTreeMap::new());
    }

    let mut fwd: HashMap<NodeId, NodeId> = HashMap::with_capacity(order.len());
    let mut bwd: HashMap<NodeId, NodeId> = HashMap::with_capacity(order.len());
    // Per depth: remaining candidates, tried from the back.
    let mut stack: Vec<Vec<NodeId>> = Vec::with_capacity(order.len());
    let candidates = |x: NodeId, fwd: &HashMap<NodeId, NodeId>, bwd: &HashMap<NodeId, NodeId>| {
        let pool: Vec<NodeId> = if let Some(&t) = fixed.get(&x) {
            vec![t]
        } else if let Some(&(y, _)) = g1
            .neighbors(x)
            .expect("live node")
            .iter()
            .find(|(y, _)| fwd.contains_key(y))
        {
            g2.neighbor_ids(fwd[&y]).expect("live node").collect()
        } else {
            by_sig[&sig1[&x]].clone()
        };
        let mut ok: Vec<NodeId> = pool
            .into_iter()
            .filter(|&c| !bwd.contains_key(&c) && consistent(g1, g2, x, c, &sig1, &sig2, fwd, bwd))
            .collect();
        ok.reverse();
        ok
    };

    stack.push(candidates(order[0], &fwd, &bwd));
    loop {
        let depth = stack.len() - 1;
        let x = order[depth];
        if let Some(prev) = fwd.remove(&x) {
            bwd.remove(&prev);
        }
        match stack[depth].pop() {
            Some(c) => {
                fwd.insert(x, c);
                bwd.insert(c, x);
                if depth + 1 == order.len() {
                    return Some(fwd.into_iter().collect());
                }
                stack.push(candidates(order[depth + 1], &fwd, &bwd));
            }
            None => {
                stack.pop();
                if stack.is_empty() {
                    return None;
                }
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn consistent(
    g1: &Diagram,
    g2: &Diagram,
    x: NodeId,
    c: NodeId,
    sig1: &HashMap<NodeId, Signature>,
    sig2: &HashMap<NodeId, Signature>,
    fwd: &HashMap<NodeId, NodeId>,
    bwd: &HashMap<NodeId, NodeId>,
) -> bool {
    if sig1[&x] != sig2[&c] {
        return false;
    }
    let (p1, p2) = (g1.phase(x).expect("live node"), g2.phase(c).expect("live node"));
    if !p1.approx_eq(p2, INEXACT_EQ_TOL) {
        return false;
    }
    let mut mapped = 0;
    for &(y, e) in g1.neighbors(x).expect("live node") {
        if let Some(&fy) = fwd.get(&y) {
            if g2.edge(c, fy) != Some(e) {
                return false;
            }
            mapped += 1;
        }
    }
    let mapped2 = g2
        .neighbor_ids(c)
        .expect("live node")
        .filter(|w| bwd.contains_key(w))
        .count();
    mapped == mapped2
}

/// Boundaries first, then breadth-first from each boundary; components
/// without boundaries start at their rarest signature.
fn search_order(
    g1: &Diagram,
    sig1: &HashMap<NodeId, Signature>,
    by_sig: &HashMap<&Signature, Vec<NodeId>>,
) -> Vec<NodeId> {
    let mut seen: HashSet<NodeId> = HashSet::new();
    let mut order = Vec::with_capacity(g1.num_nodes());
    let mut roots: Vec<NodeId> = g1.inputs().iter().chain(g1.outputs()).copied().collect();
    let mut rest: Vec<NodeId> = g1.node_ids().filter(|v| !g1.is_boundary(*v)).collect();
    rest.sort_by_key(|v| (by_sig.get(&sig1[v]).map_or(0, Vec::len), *v));
    roots.extend(rest);
    for &b in g1.inputs().iter().chain(g1.outputs()) {
        seen.insert(b);
        order.push(b);
    }
    let mut queue = VecDeque::new();
    for r in roots {
        if !g1.is_boundary(r) {
            if !seen.insert(r) {
                continue;
            }
            order.push(r);
        }
        queue.push_back(r);
        while let Some(v) = queue.pop_front() {
            for w in g1.neighbor_ids(v).expect("live node") {
                if seen.insert(w) {
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// Whether the sorted degree sequences agree. A cheap necessary condition
/// for isomorphism.
pub fn degree_sequence_equal(g1: &Diagram, g2: &Diagram) -> bool {
    g1.degree_sequence() == g2.degree_sequence()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::Phase;

    fn cycle(d: &mut Diagram, n: usize) {
        let vs: Vec<NodeId> = (0..n).map(|_| d.add_spider(NodeKind::Z, Phase::zero()).unwrap()).collect();
        for i in 0..n {
            d.connect(vs[i], vs[(i + 1) % n], EdgeKind::Hadamard).unwrap();
        }
    }

    #[test]
    fn hexagon_is_not_two_triangles() {
        let mut c6 = Diagram::new();
        cycle(&mut c6, 6);
        let mut two = Diagram::new();
        cycle(&mut two, 3);
        cycle(&mut two, 3);
        assert!(degree_sequence_equal(&c6, &two));
        assert!(labeled_isomorphic(&c6, &two).is_none());
        assert!(labeled_isomorphic(&c6, &c6).is_some());
        assert!(labeled_isomorphic(&two, &two).is_some());
    }

    #[test]
    fn phases_and_boundary_order_matter() {
        let build = |p: Phase, swap: bool| {
            let mut d = Diagram::new();
            let i0 = d.add_input();
            let i1 = d.add_input();
            let z = d.add_spider(NodeKind::Z, p).unwrap();
            let x = d.add_spider(NodeKind::X, Phase::zero()).unwrap();
            let (a, b) = if swap { (x, z) } else { (z, x) };
            d.connect(i0, a, EdgeKind::Simple).unwrap();
            d.connect(i1, b, EdgeKind::Simple).unwrap();
            d
        };
        let base = build(Phase::pi(), false);
        assert!(labeled_isomorphic(&base, &build(Phase::pi(), false)).is_some());
        assert!(labeled_isomorphic(&base, &build(Phase::half_pi(), false)).is_none());
        assert!(labeled_isomorphic(&base, &build(Phase::pi(), true)).is_none());
    }

    #[test]
    fn empty_diagrams_match() {
        let m = labeled_isomorphic(&Diagram::new(), &Diagram::new());
        assert!(m.is_some_and(|m| m.is_empty()));
    }
}
