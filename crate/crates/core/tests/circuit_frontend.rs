mod common;

use common::{tensor_equal, textbook_gates};
use zxdb_core::circuit::{circuit_to_diagram, gen_random_circuit, parse_qasm, Circuit, Gate, QasmError};
use zxdb_core::verify::{diagram_to_operator, equal_up_to_scalar};

#[test]
fn single_gates_match_textbook_unitaries() {
    let gates = textbook_gates();
    assert_eq!(gates.len(), Gate::NAMES.len());
    for (g, u) in gates {
        let n = g.qubits().into_iter().max().unwrap() + 1;
        let c = Circuit::with_gates(n, [g]).unwrap();
        let op = diagram_to_operator::<f64>(&circuit_to_diagram(&c)).unwrap();
        let cmp = equal_up_to_scalar(&u, &op, 1e-10).unwrap();
        assert!(cmp.equal, "{g}: residual {}", cmp.residual);
    }
}

#[test]
fn reversed_cx_is_a_different_gate() {
    let c = Circuit::with_gates(2, [Gate::Cx(1, 0)]).unwrap();
    let op = diagram_to_operator::<f64>(&circuit_to_diagram(&c)).unwrap();
    let (_, cx01) = textbook_gates().into_iter().find(|(g, _)| g.name() == "cx").unwrap();
    assert!(!equal_up_to_scalar(&cx01, &op, 1e-8).unwrap().equal);
    assert!(equal_up_to_scalar(&cx01.permute_qubits(&[1, 0]), &op, 1e-8).unwrap().equal);
}

#[test]
fn composition_matches_matrix_product() {
    for seed in 0..20 {
        let a = gen_random_circuit(3, 8, seed).unwrap();
        let b = gen_random_circuit(3, 8, seed + 100).unwrap();
        let ab = a.then(&b).unwrap();
        let oa = diagram_to_operator::<f64>(&circuit_to_diagram(&a)).unwrap();
        let ob = diagram_to_operator::<f64>(&circuit_to_diagram(&b)).unwrap();
        let oab = diagram_to_operator::<f64>(&circuit_to_diagram(&ab)).unwrap();
        assert!(equal_up_to_scalar(&ob.matmul(&oa), &oab, 1e-8).unwrap().equal, "seed {seed}");
    }
}

#[test]
fn qasm_round_trip_preserves_semantics() {
    for seed in 0..20 {
        let c = gen_random_circuit(4, 25, seed).unwrap();
        let back = parse_qasm(&c.to_qasm()).unwrap();
        assert_eq!(back.num_qubits(), c.num_qubits());
        assert!(tensor_equal(&circuit_to_diagram(&c), &circuit_to_diagram(&back), 1e-8));
    }
}

#[test]
fn qasm_errors_carry_lines() {
    let src = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\nh q[0];\nccx q[0],q[1],q[0];\n";
    assert!(matches!(parse_qasm(src), Err(QasmError::UnsupportedGate { line: 5, .. })));
    let src = "qreg q[2];\ncx q[0],q[2];\n";
    assert!(matches!(parse_qasm(src), Err(QasmError::Index { line: 2, .. })));
}
