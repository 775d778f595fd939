//! Seeded generators: random circuits over the supported gate set, and
//! diagrams packed with disjoint occurrences of one rule's pattern.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{Circuit, Gate};
use crate::diagram::{Diagram, EdgeKind, NodeId, NodeKind};
use crate::phase::Phase;
use crate::rules::RuleId;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenerateError {
    #[error("a circuit needs at least one qubit")]
    NoQubits,
    #[error("instance size must be at least 1")]
    ZeroSize,
}

/// One of the eight multiples of π/4, or an inexact angle.
fn random_phase(rng: &mut impl Rng) -> Phase {
    match rng.random_range(0..9) {
        8 => Phase::from_radians(rng.random_range(0.0..std::f64::consts::TAU)),
        k => Phase::exact(k, 4),
    }
}

pub fn gen_random_circuit(num_qubits: usize, num_gates: usize, seed: u64) -> Result<Circuit, GenerateError> {
    if num_qubits == 0 {
        return Err(GenerateError::NoQubits);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut c = Circuit::new(num_qubits);
    while c.gates().len() < num_gates {
        let kind = rng.random_range(0..Gate::NAMES.len());
        let q = rng.random_range(0..num_qubits);
        let gate = match kind {
            0 => Gate::H(q),
            1 => Gate::X(q),
            2 => Gate::Z(q),
            3 => Gate::S(q),
            4 => Gate::Sdg(q),
            5 => Gate::T(q),
            6 => Gate::Tdg(q),
            7 => Gate::Rz(q, random_phase(&mut rng)),
            8 => Gate::Rx(q, random_phase(&mut rng)),
            _ if num_qubits == 1 => continue,
            k => {
                let t = (q + rng.random_range(1..num_qubits)) % num_qubits;
                if k == 9 {
                    Gate::Cx(q, t)
                } else {
                    Gate::Cz(q, t)
                }
            }
        };
        c.push(gate).expect("generated gate is in range");
    }
    Ok(c)
}

/// Builds a diagram with `size` disjoint occurrences of `rule`'s pattern,
/// each on its own boundary wires.
///
/// | rule             | one occurrence                                               |
/// |------------------|--------------------------------------------------------------|
/// | `identity`       | `B–X(a)–Z(0)–Z(0)–X(b)–B`, `a, b ≠ 0`                        |
/// | `fusion`         | a wire through 2–3 same-colour spiders, sometimes a side spider |
/// | `bialgebra`      | `m×n` phase-free Z/X block, `m + n ≥ 3`, `m, n ≤ 3`          |
/// | `gadget`         | two gadgets on the same 1–3 legs                             |
/// | `lcomp`          | graph-like star around a `±π/2` spider                       |
/// | `pivot` family   | graph-like pivot pair with neighbour groups on wires         |
pub fn gen_rule_instance(rule: RuleId, size: usize, seed: u64) -> Result<Diagram, GenerateError> {
    if size == 0 {
        return Err(GenerateError::ZeroSize);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = Diagram::new();
    for _ in 0..size {
        match rule {
            RuleId::IdentityRemoval => identity_chain(&mut d, &mut rng),
            RuleId::SpiderFusion => fusion_run(&mut d, &mut rng),
            RuleId::Bialgebra => bialgebra_block(&mut d, &mut rng),
            RuleId::GadgetFusion => gadget_pair(&mut d, &mut rng),
            RuleId::LocalComplementation => lcomp_star(&mut d, &mut rng),
            RuleId::Pivot | RuleId::PivotGadget | RuleId::PivotBoundary => {
                pivot_pair(&mut d, &mut rng, rule)
            }
        }
    }
    Ok(d)
}

fn spider(d: &mut Diagram, kind: NodeKind, phase: Phase) -> NodeId {
    d.add_spider(kind, phase).expect("spider kind")
}

fn link(d: &mut Diagram, a: NodeId, b: NodeId, kind: EdgeKind) {
    d.connect(a, b, kind).expect("generator edges are fresh");
}

/// Puts `v` on its own wire: `input–S–v–S–output`.
fn on_wire(d: &mut Diagram, v: NodeId) {
    let i = d.add_input();
    let o = d.add_output();
    link(d, i, v, EdgeKind::Simple);
    link(d, v, o, EdgeKind::Simple);
}

fn pauli_phase(rng: &mut impl Rng) -> Phase {
    Phase::pi_multiple(rng.random_range(0..2))
}

fn nonzero_quarter(rng: &mut impl Rng) -> Phase {
    Phase::exact(rng.random_range(1..8), 4)
}

fn identity_chain(d: &mut Diagram, rng: &mut impl Rng) {
    let i = d.add_input();
    let o = d.add_output();
    let xa = spider(d, NodeKind::X, nonzero_quarter(rng));
    let z1 = spider(d, NodeKind::Z, Phase::zero());
    let z2 = spider(d, NodeKind::Z, Phase::zero());
    let xb = spider(d, NodeKind::X, nonzero_quarter(rng));
    for (a, b) in [(i, xa), (xa, z1), (z1, z2), (z2, xb), (xb, o)] {
        link(d, a, b, EdgeKind::Simple);
    }
}

fn fusion_run(d: &mut Diagram, rng: &mut impl Rng) {
    let (kind, other) = if rng.random_bool(0.5) {
        (NodeKind::Z, NodeKind::X)
    } else {
        (NodeKind::X, NodeKind::Z)
    };
    let len = rng.random_range(2..=3);
    let run: Vec<NodeId> = (0..len).map(|_| spider(d, kind, random_phase(rng))).collect();
    let i = d.add_input();
    let o = d.add_output();
    link(d, i, run[0], EdgeKind::Simple);
    for w in run.windows(2) {
        link(d, w[0], w[1], EdgeKind::Simple);
    }
    link(d, run[len - 1], o, EdgeKind::Simple);
    if rng.random_bool(0.5) {
        // Opposite colour joins through simple edges, same colour through
        // Hadamard edges; attaching to two run spiders makes fusion meet a
        // parallel pair.
        let (side_kind, k) = if rng.random_bool(0.5) {
            (other, EdgeKind::Simple)
        } else {
            (kind, EdgeKind::Hadamard)
        };
        let side = spider(d, side_kind, random_phase(rng));
        let o2 = d.add_output();
        link(d, side, o2, EdgeKind::Simple);
        link(d, side, run[0], k);
        if rng.random_bool(0.5) {
            link(d, side, run[1], k);
        }
    }
}

fn bialgebra_block(d: &mut Diagram, rng: &mut impl Rng) {
    let (m, n) = loop {
        let (m, n) = (rng.random_range(1..=3), rng.random_range(1..=3));
        if m + n >= 3 {
            break (m, n);
        }
    };
    let zs: Vec<NodeId> = (0..m).map(|_| spider(d, NodeKind::Z, Phase::zero())).collect();
    let xs: Vec<NodeId> = (0..n).map(|_| spider(d, NodeKind::X, Phase::zero())).collect();
    for &z in &zs {
        let i = d.add_input();
        link(d, i, z, EdgeKind::Simple);
        for &x in &xs {
            link(d, z, x, EdgeKind::Simple);
        }
    }
    for &x in &xs {
        let o = d.add_output();
        link(d, x, o, EdgeKind::Simple);
    }
}

fn gadget_pair(d: &mut Diagram, rng: &mut impl Rng) {
    let legs: Vec<NodeId> = (0..rng.random_range(1..=3))
        .map(|_| {
            let l = spider(d, NodeKind::Z, random_phase(rng));
            on_wire(d, l);
            l
        })
        .collect();
    let (axis_kind, k) = if rng.random_bool(0.5) {
        (NodeKind::X, EdgeKind::Simple)
    } else {
        (NodeKind::Z, EdgeKind::Hadamard)
    };
    for _ in 0..2 {
        let axis = spider(d, axis_kind, Phase::zero());
        let hub = spider(d, NodeKind::Z, random_phase(rng));
        link(d, hub, axis, k);
        for &l in &legs {
            link(d, axis, l, k);
        }
    }
}

/// `count` Z spiders on their own wires with random Hadamard edges among
/// them.
fn wired_group(d: &mut Diagram, rng: &mut impl Rng, count: usize) -> Vec<NodeId> {
    let ws: Vec<NodeId> = (0..count)
        .map(|_| {
            let w = spider(d, NodeKind::Z, random_phase(rng));
            on_wire(d, w);
            w
        })
        .collect();
    for (i, &a) in ws.iter().enumerate() {
        for &b in &ws[i + 1..] {
            if rng.random_bool(0.5) {
                link(d, a, b, EdgeKind::Hadamard);
            }
        }
    }
    ws
}

fn lcomp_star(d: &mut Diagram, rng: &mut impl Rng) {
    let sign = *[1, 3].choose(rng).expect("non-empty");
    let u = spider(d, NodeKind::Z, Phase::exact(sign, 2));
    let count = rng.random_range(1..=4);
    for w in wired_group(d, rng, count) {
        link(d, u, w, EdgeKind::Hadamard);
    }
}

fn pivot_pair(d: &mut Diagram, rng: &mut impl Rng, rule: RuleId) {
    let (na, nb, nc) = loop {
        let s = (
            rng.random_range(0..=2usize),
            rng.random_range(0..=2usize),
            rng.random_range(0..=2usize),
        );
        let ok = match rule {
            RuleId::Pivot => true,
            // Neither pivot spider may end up as a gadget hub.
            RuleId::PivotGadget => s.0 + s.1 >= 1 && s.1 + s.2 >= 1,
            _ => s.0 + s.1 >= 1 && s.0 + s.1 + s.2 <= 4,
        };
        if ok {
            break s;
        }
    };
    let u_phase = match rule {
        RuleId::PivotGadget => loop {
            let p = random_phase(rng);
            if !p.is_pi_multiple() {
                break p;
            }
        },
        _ => pauli_phase(rng),
    };
    let v_phase = match rule {
        RuleId::PivotBoundary => random_phase(rng),
        _ => pauli_phase(rng),
    };
    let u = spider(d, NodeKind::Z, u_phase);
    let v = spider(d, NodeKind::Z, v_phase);
    link(d, u, v, EdgeKind::Hadamard);
    if rule == RuleId::PivotBoundary {
        on_wire(d, v);
    }
    let group = wired_group(d, rng, na + nb + nc);
    for (i, &w) in group.iter().enumerate() {
        if i < na + nb {
            link(d, u, w, EdgeKind::Hadamard);
        }
        if i >= na {
            link(d, v, w, EdgeKind::Hadamard);
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::find_matches;

    #[test]
    fn circuits_are_deterministic() {
        let a = gen_random_circuit(3, 40, 7).unwrap();
        let b = gen_random_circuit(3, 40, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, gen_random_circuit(3, 40, 8).unwrap());
        assert!(gen_random_circuit(2, 0, 1).unwrap().gates().is_empty());
        assert_eq!(gen_random_circuit(0, 3, 1), Err(GenerateError::NoQubits));
    }

    #[test]
    fn single_qubit_circuits_have_no_two_qubit_gates() {
        let c = gen_random_circuit(1, 100, 3).unwrap();
        assert!(c.gates().iter().all(|g| g.qubits().len() == 1));
    }

    #[test]
    fn every_instance_matches_its_rule() {
        for rule in RuleId::ALL {
            for seed in 0..20 {
                for size in [1, 3] {
                    let d = gen_rule_instance(rule, size, seed).unwrap();
                    d.validate().unwrap();
                    let n = find_matches(rule, &d).unwrap().len();
                    assert!(n >= size, "{rule} seed {seed} size {size}: {n} matches");
                    assert!(d.inputs().len() <= 6 * size && d.outputs().len() <= 6 * size);
                }
            }
        }
    }

    #[test]
    fn identity_instance_counts() {
        let d = gen_rule_instance(RuleId::IdentityRemoval, 1000, 1).unwrap();
        let z = d.spider_ids().filter(|&v| d.kind(v) == Ok(NodeKind::Z)).count();
        assert_eq!(z, 2000);
        assert_eq!(d.num_nodes(), 6000);
    }

    #[test]
    fn instances_are_deterministic() {
        for rule in RuleId::ALL {
            let a = gen_rule_instance(rule, 5, 11).unwrap().to_json();
            let b = gen_rule_instance(rule, 5, 11).unwrap().to_json();
            assert_eq!(a, b);
        }
    }
}
