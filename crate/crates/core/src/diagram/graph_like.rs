use super::{Diagram, EdgeKind, NodeId, NodeKind};
use crate::phase::Phase;

/// Strict graph-like form: every spider is Z, every spider–spider edge is
/// Hadamard and every boundary edge is simple.
pub fn is_graph_like(d: &Diagram) -> bool {
    has_graph_like_interior(d)
        && d.edges().all(|(u, v, k)| {
            let boundary = d.is_boundary(u) || d.is_boundary(v);
            !boundary || k == EdgeKind::Simple
        })
}

/// Graph-like up to boundary wires: every spider is Z and every
/// spider–spider edge is Hadamard. Boundary edges may be of either kind.
/// This is the precondition of local complementation and the pivot family;
/// identity removal next to a boundary keeps diagrams in this class.
pub fn has_graph_like_interior(d: &Diagram) -> bool {
    d.spider_ids().all(|v| d.kind(v) == Ok(NodeKind::Z))
        && d.edges().all(|(u, v, k)| {
            d.is_boundary(u) || d.is_boundary(v) || k == EdgeKind::Hadamard
        })
}

/// Returns an equivalent diagram (up to a global scalar) in strict
/// graph-like form.
///
/// X spiders become Z spiders with every incident edge kind flipped, simply
/// connected spiders are fused, and each Hadamard boundary edge gets a
/// `Z(0)` spider so the boundary sees a simple wire.
pub fn to_graph_like(d: &Diagram) -> Diagram {
    let mut g = d.clone();

    let flips: Vec<(NodeId, NodeId, EdgeKind)> = g
        .edges()
        .filter(|&(u, v, _)| {
            let xu = g.kind(u) == Ok(NodeKind::X);
            let xv = g.kind(v) == Ok(NodeKind::X);
            xu ^ xv
        })
        .collect();
    for (u, v, k) in flips {
        let t = k.toggled();
        g.insert_half(u, v, t);
        g.insert_half(v, u, t);
    }
    for v in 0..g.nodes.len() {
        if let Some(n) = g.nodes[v].as_mut() {
            if n.kind == NodeKind::X {
                n.kind = NodeKind::Z;
            }
        }
    }

    for i in 0..g.nodes.len() {
        let v = NodeId(i);
        while g.contains(v) && g.kind(v) == Ok(NodeKind::Z) {
            let next = g
                .neighbors(v)
                .expect("live node")
                .iter()
                .find(|&&(w, k)| k == EdgeKind::Simple && g.kind(w) == Ok(NodeKind::Z))
                .map(|&(w, _)| w);
            match next {
                Some(w) => g.merge_spiders(v, w).expect("Z-Z fusion always resolves"),
                None => break,
            }
        }
    }

    let boundaries: Vec<NodeId> = g.inputs.iter().chain(&g.outputs).copied().collect();
    for b in boundaries {
        let Some(&(w, k)) = g.neighbors(b).expect("boundary is live").first() else {
            continue;
        };
        if k != EdgeKind::Hadamard {
            continue;
        }
        g.disconnect(b, w);
        let z = g.add_spider(NodeKind::Z, Phase::zero()).expect("Z spider");
        g.connect(b, z, EdgeKind::Simple).expect("fresh edge");
        if g.is_boundary(w) {
            // B–H–B: two buffers so both ends see a simple edge.
            let z2 = g.add_spider(NodeKind::Z, Phase::zero()).expect("Z spider");
            g.connect(z, z2, EdgeKind::Hadamard).expect("fresh edge");
            g.connect(z2, w, EdgeKind::Simple).expect("fresh edge");
        } else {
            g.connect(z, w, EdgeKind::Hadamard).expect("fresh edge");
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use EdgeKind::{Hadamard as H, Simple as S};

    #[test]
    fn x_spider_becomes_buffered_z() {
        let mut d = Diagram::new();
        let i = d.add_input();
        let o = d.add_output();
        let x = d.add_spider(NodeKind::X, Phase::exact(1, 4)).unwrap();
        d.connect(i, x, S).unwrap();
        d.connect(x, o, S).unwrap();
        let g = to_graph_like(&d);
        assert!(is_graph_like(&g));
        assert_eq!(g.kind(x).unwrap(), NodeKind::Z);
        assert_eq!(g.phase(x).unwrap(), Phase::exact(1, 4));
        assert_eq!(g.num_spiders(), 3);
        g.validate().unwrap();
    }

    #[test]
    fn already_graph_like_is_unchanged() {
        let mut d = Diagram::new();
        let i = d.add_input();
        let o = d.add_output();
        let a = d.add_spider(NodeKind::Z, Phase::half_pi()).unwrap();
        let b = d.add_spider(NodeKind::Z, Phase::zero()).unwrap();
        d.connect(i, a, S).unwrap();
        d.connect(a, b, H).unwrap();
        d.connect(b, o, S).unwrap();
        assert!(is_graph_like(&d));
        let g = to_graph_like(&d);
        assert_eq!(g.edges().collect::<Vec<_>>(), d.edges().collect::<Vec<_>>());
    }

    #[test]
    fn cnot_becomes_graph_like() {
        let mut d = Diagram::new();
        let (i0, i1) = (d.add_input(), d.add_input());
        let (o0, o1) = (d.add_output(), d.add_output());
        let c = d.add_spider(NodeKind::Z, Phase::zero()).unwrap();
        let t = d.add_spider(NodeKind::X, Phase::zero()).unwrap();
        d.connect(i0, c, S).unwrap();
        d.connect(c, o0, S).unwrap();
        d.connect(i1, t, S).unwrap();
        d.connect(t, o1, S).unwrap();
        d.connect(c, t, S).unwrap();
        let g = to_graph_like(&d);
        assert!(is_graph_like(&g));
        assert_eq!(g.edge(c, t), Some(H));
        g.validate().unwrap();
    }

    #[test]
    fn hadamard_wire_between_boundaries() {
        let mut d = Diagram::new();
        let i = d.add_input();
        let o = d.add_output();
        d.connect(i, o, H).unwrap();
        let g = to_graph_like(&d);
        assert!(is_graph_like(&g));
        assert_eq!(g.num_spiders(), 2);
    }
}
