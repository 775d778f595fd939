use super::{Circuit, Gate};
use crate::diagram::{Diagram, EdgeKind, NodeId, NodeKind};
use crate::phase::Phase;

struct Wire {
    frontier: NodeId,
    pending: EdgeKind,
}

/// Builds the ZX-diagram of a circuit.
///
/// Each qubit gets an input and an output boundary. Phase gates append a Z
/// (or X for `x`/`rx`) spider to the wire, `h` flips the kind of the wire's
/// next edge, `cx` is `Z(0)–X(0)` and `cz` is `Z(0)–H–Z(0)`. A wire that
/// ends on a pending Hadamard gets a `Z(0)` so that its output edge carries
/// the H.
pub fn circuit_to_diagram(c: &Circuit) -> Diagram {
    let mut d = Diagram::with_capacity(2 * c.num_qubits() + 2 * c.gates().len());
    let mut wires: Vec<Wire> = (0..c.num_qubits())
        .map(|_| Wire {
            frontier: d.add_input(),
            pending: EdgeKind::Simple,
        })
        .collect();

    let append = |d: &mut Diagram, w: &mut Wire, kind: NodeKind, phase: Phase| -> NodeId {
        let v = d.add_spider(kind, phase).expect("spider kind");
        d.connect(w.frontier, v, w.pending).expect("fresh spider");
        w.frontier = v;
        w.pending = EdgeKind::Simple;
        v
    };

    for g in c.gates() {
        match *g {
            Gate::H(q) => wires[q].pending = wires[q].pending.toggled(),
            Gate::X(q) | Gate::Rx(q, _) => {
                let p = g.spider_phase().expect("phase gate");
                append(&mut d, &mut wires[q], NodeKind::X, p);
            }
            Gate::Z(q) | Gate::S(q) | Gate::Sdg(q) | Gate::T(q) | Gate::Tdg(q) | Gate::Rz(q, _) => {
                let p = g.spider_phase().expect("phase gate");
                append(&mut d, &mut wires[q], NodeKind::Z, p);
            }
            Gate::Cx(c, t) => {
                let a = append(&mut d, &mut wires[c], NodeKind::Z, Phase::zero());
                let b = append(&mut d, &mut wires[t], NodeKind::X, Phase::zero());
                d.connect(a, b, EdgeKind::Simple).expect("fresh spiders");
            }
            Gate::Cz(c, t) => {
                let a = append(&mut d, &mut wires[c], NodeKind::Z, Phase::zero());
                let b = append(&mut d, &mut wires[t], NodeKind::Z, Phase::zero());
                d.connect(a, b, EdgeKind::Hadamard).expect("fresh spiders");
            }
        }
    }

    for mut w in wires {
        if w.pending == EdgeKind::Hadamard {
            // frontier –S– Z(0) –H– output
            w.pending = EdgeKind::Simple;
            append(&mut d, &mut w, NodeKind::Z, Phase::zero());
            w.pending = EdgeKind::Hadamard;
        }
        let out = d.add_output();
        d.connect(w.frontier, out, w.pending).expect("fresh boundary");
    }
    d
}
