//! Shared test helpers, including a brute-force tensor oracle that shares
//! no code with the contraction engine.

#![allow(dead_code)]

use std::collections::HashMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use zxdb_core::diagram::{Diagram, EdgeKind, NodeId, NodeKind};
use zxdb_core::verify::{
    diagram_to_operator, diagram_to_operator_with_caps, equal_up_to_scalar, DenseOperator, TensorCaps,
};
use zxdb_core::Phase;

/// Free variables the oracle may enumerate per entry.
pub const ORACLE_MAX_VARS: usize = 18;

/// Where an edge end reads its bit from.
#[derive(Clone, Copy)]
enum Src {
    Var(usize),
    Boundary(usize),
}

/// Evaluates every operator entry as a sum over assignments: one bit per
/// Z spider, one bit per X spider leg. Z spiders contribute 1 or `e^{iα}`,
/// X spiders the closed form `2^{-n/2}(1 + e^{iα}(−1)^{|b|})`, simple edges
/// a Kronecker delta and Hadamard edges the 2×2 Hadamard matrix. Returns
/// `None` when too many variables would be enumerated.
pub fn oracle_operator(d: &Diagram) -> Option<Vec<Vec<Complex64>>> {
    let mut nvars = 0;
    let mut z_var: HashMap<NodeId, usize> = HashMap::new();
    let mut x_leg: HashMap<(NodeId, NodeId), usize> = HashMap::new();
    let mut boundary_slot: HashMap<NodeId, usize> = HashMap::new();
    let nout = d.outputs().len();
    for (k, &b) in d.outputs().iter().enumerate() {
        boundary_slot.insert(b, k);
    }
    for (k, &b) in d.inputs().iter().enumerate() {
        boundary_slot.insert(b, nout + k);
    }
    for v in d.node_ids() {
        match d.kind(v).unwrap() {
            NodeKind::Z => {
                z_var.insert(v, nvars);
                nvars += 1;
            }
            NodeKind::X => {
                for w in d.neighbor_ids(v).unwrap() {
                    x_leg.insert((v, w), nvars);
                    nvars += 1;
                }
            }
            NodeKind::B => {}
        }
    }
    if nvars > ORACLE_MAX_VARS {
        return None;
    }
    let end = |v: NodeId, w: NodeId| -> Src {
        match d.kind(v).unwrap() {
            NodeKind::Z => Src::Var(z_var[&v]),
            NodeKind::X => Src::Var(x_leg[&(v, w)]),
            NodeKind::B => Src::Boundary(boundary_slot[&v]),
        }
    };
    let edges: Vec<(Src, Src, EdgeKind)> = d.edges().map(|(u, v, k)| (end(u, v), end(v, u), k)).collect();
    let spiders: Vec<(NodeKind, f64, Vec<usize>)> = d
        .spider_ids()
        .map(|v| {
            let kind = d.kind(v).unwrap();
            let vars = match kind {
                NodeKind::Z => vec![z_var[&v]],
                _ => d.neighbor_ids(v).unwrap().map(|w| x_leg[&(v, w)]).collect(),
            };
            (kind, d.phase(v).unwrap().to_radians(), vars)
        })
        .collect();

    let nb = nout + d.inputs().len();
    let (rows, cols) = (1usize << nout, 1usize << d.inputs().len());
    let mut out = vec![vec![Complex64::new(0.0, 0.0); cols]; rows];
    for r in 0..rows {
        for c in 0..cols {
            // Boundary slot k reads bit (nb - 1 - k) of (r, c) concatenated.
            let bits = (r << d.inputs().len()) | c;
            let bval = |k: usize| (bits >> (nb - 1 - k)) & 1;
            let mut total = Complex64::new(0.0, 0.0);
            for assign in 0..(1usize << nvars) {
                let var = |i: usize| (assign >> i) & 1;
                let val = |s: Src| match s {
                    Src::Var(i) => var(i),
                    Src::Boundary(k) => bval(k),
                };
                let mut term = Complex64::new(1.0, 0.0);
                for &(a, b, kind) in &edges {
                    let (x, y) = (val(a), val(b));
                    match kind {
                        EdgeKind::Simple if x != y => term = Complex64::new(0.0, 0.0),
                        EdgeKind::Simple => {}
                        EdgeKind::Hadamard => {
                            term *= if x == 1 && y == 1 { -FRAC_1_SQRT_2 } else { FRAC_1_SQRT_2 }
                        }
                    }
                    if term.norm() == 0.0 {
                        break;
                    }
                }
                if term.norm() == 0.0 {
                    continue;
                }
                for (kind, alpha, vars) in &spiders {
                    let e = Complex64::from_polar(1.0, *alpha);
                    let f = match kind {
                        NodeKind::Z if var(vars[0]) == 0 => Complex64::new(1.0, 0.0),
                        NodeKind::Z => e,
                        _ => {
                            let n = vars.len() as i32;
                            let parity = vars.iter().map(|&i| var(i)).sum::<usize>() % 2;
                            let sign = if parity == 1 { -1.0 } else { 1.0 };
                            (Complex64::new(1.0, 0.0) + e * sign) * 2f64.powf(-n as f64 / 2.0)
                        }
                    };
                    term *= f;
                }
                total += term;
            }
            out[r][c] = total;
        }
    }
    Some(out)
}

pub fn assert_close(a: Complex64, b: Complex64, tol: f64, what: &str) {
    assert!((a - b).norm() <= tol, "{what}: {a} vs {b}");
}

/// Panics unless the engine's operator for `d` matches the oracle
/// entry-wise. Returns false when the oracle declines the diagram.
pub fn check_engine_against_oracle(d: &Diagram) -> bool {
    let Some(expected) = oracle_operator(d) else {
        return false;
    };
    let op = diagram_to_operator::<f64>(d).expect("engine contracts");
    for (r, row) in expected.iter().enumerate() {
        for (c, &e) in row.iter().enumerate() {
            assert_close(op.get(r, c), e, 1e-9, &format!("entry ({r},{c})"));
        }
    }
    true
}

/// Caps for test diagrams, above the verification defaults.
pub const TEST_CAPS: TensorCaps = TensorCaps {
    max_boundaries: 18,
    max_nodes: 400,
};

/// Whether `d` is small enough for [`tensor_equal`].
pub fn fits(d: &Diagram) -> bool {
    TEST_CAPS.admits(d)
}

/// Tensor equivalence of two diagrams up to a nonzero scalar.
pub fn tensor_equal(a: &Diagram, b: &Diagram, tol: f64) -> bool {
    let oa = diagram_to_operator_with_caps::<f64>(a, &TEST_CAPS).expect("contract before");
    let ob = diagram_to_operator_with_caps::<f64>(b, &TEST_CAPS).expect("contract after");
    equal_up_to_scalar(&oa, &ob, tol).map(|c| c.equal).unwrap_or(false)
}

/// `B – spider(α) – B` on one wire.
pub fn one_spider_wire(kind: NodeKind, phase: Phase) -> Diagram {
    let mut d = Diagram::new();
    let i = d.add_input();
    let o = d.add_output();
    let s = d.add_spider(kind, phase).unwrap();
    d.connect(i, s, EdgeKind::Simple).unwrap();
    d.connect(s, o, EdgeKind::Simple).unwrap();
    d
}

/// Textbook unitary as complex rows.
pub fn unitary(rows: &[&[Complex64]]) -> DenseOperator<f64> {
    let n = rows.len().trailing_zeros() as usize;
    DenseOperator::new(n, n, rows.iter().flat_map(|r| r.iter().copied()).collect())
}

/// Every supported gate on its lowest qubits, with its textbook matrix.
/// Qubit 0 is the most significant bit; `cx` has control 0 and target 1.
pub fn textbook_gates() -> Vec<(zxdb_core::circuit::Gate, DenseOperator<f64>)> {
    use std::f64::consts::PI;
    use zxdb_core::circuit::Gate;
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let ph = |t: f64| Complex64::from_polar(1.0, t);
    let theta = 0.3 * PI;
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let ci = Complex64::new(c, 0.0);
    let msi = Complex64::new(0.0, -s);
    vec![
        (Gate::H(0), unitary(&[&[h, h], &[h, -h]])),
        (Gate::X(0), unitary(&[&[o, l], &[l, o]])),
        (Gate::Z(0), unitary(&[&[l, o], &[o, -l]])),
        (Gate::S(0), unitary(&[&[l, o], &[o, ph(PI / 2.0)]])),
        (Gate::Sdg(0), unitary(&[&[l, o], &[o, ph(-PI / 2.0)]])),
        (Gate::T(0), unitary(&[&[l, o], &[o, ph(PI / 4.0)]])),
        (Gate::Tdg(0), unitary(&[&[l, o], &[o, ph(-PI / 4.0)]])),
        (
            Gate::Rz(0, Phase::exact(3, 10)),
            unitary(&[&[ph(-theta / 2.0), o], &[o, ph(theta / 2.0)]]),
        ),
        (Gate::Rx(0, Phase::exact(3, 10)), unitary(&[&[ci, msi], &[msi, ci]])),
        (
            Gate::Cx(0, 1),
            unitary(&[&[l, o, o, o], &[o, l, o, o], &[o, o, o, l], &[o, o, l, o]]),
        ),
        (
            Gate::Cz(0, 1),
            unitary(&[&[l, o, o, o], &[o, l, o, o], &[o, o, l, o], &[o, o, o, -l]]),
        ),
    ]
}

/// Rebuilds `d` with nodes created in a shuffled order, so every spider
/// gets a different id. Boundary order is preserved.
pub fn relabel(d: &Diagram, rng: &mut ChaCha8Rng) -> (Diagram, HashMap<NodeId, NodeId>) {
    let mut spiders: Vec<NodeId> = d.spider_ids().collect();
    spiders.shuffle(rng);
    let mut queue: Vec<NodeId> = Vec::new();
    let (mut ins, mut outs) = (d.inputs().iter().copied().peekable(), d.outputs().iter().copied().peekable());
    let mut sp = spiders.into_iter().peekable();
    while ins.peek().is_some() || outs.peek().is_some() || sp.peek().is_some() {
        let pick = rng.random_range(0..3);
        let next = match pick {
            0 => ins.next(),
            1 => outs.next(),
            _ => sp.next(),
        };
        if let Some(v) = next {
            queue.push(v);
        }
    }
    let mut g = Diagram::new();
    let mut map = HashMap::new();
    for v in queue {
        let w = if d.inputs().contains(&v) {
            g.add_input()
        } else if d.outputs().contains(&v) {
            g.add_output()
        } else {
            g.add_spider(d.kind(v).unwrap(), d.phase(v).unwrap()).unwrap()
        };
        map.insert(v, w);
    }
    let mut edges: Vec<(NodeId, NodeId, EdgeKind)> = d.edges().collect();
    edges.shuffle(rng);
    for (u, v, k) in edges {
        g.connect(map[&v], map[&u], k).unwrap();
    }
    (g, map)
}

/// Disjoint Hadamard cycles of plain Z spiders.
pub fn cycles(sizes: &[usize]) -> Diagram {
    let mut d = Diagram::new();
    for &n in sizes {
        let vs: Vec<NodeId> = (0..n).map(|_| d.add_spider(NodeKind::Z, Phase::zero()).unwrap()).collect();
        for i in 0..n {
            d.connect(vs[i], vs[(i + 1) % n], EdgeKind::Hadamard).unwrap();
        }
    }
    d
}
