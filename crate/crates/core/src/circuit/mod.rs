//! Gate-list circuits over a single qubit register: the QASM subset, the
//! conversion to ZX-diagrams, and the seeded generators used by the
//! benchmarks and property tests.

mod convert;
mod generate;
mod qasm;

use std::fmt;

use thiserror::Error;

use crate::phase::Phase;

pub use convert::circuit_to_diagram;
pub use generate::{gen_random_circuit, gen_rule_instance, GenerateError};
pub use qasm::{parse_qasm, QasmError};

/// A gate from the supported set. Rotation angles are spider phases.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    Z(usize),
    S(usize),
    Sdg(usize),
    T(usize),
    Tdg(usize),
    Rz(usize, Phase),
    Rx(usize, Phase),
    Cx(usize, usize),
    Cz(usize, usize),
}

impl Gate {
    pub const NAMES: [&'static str; 11] =
        ["h", "x", "z", "s", "sdg", "t", "tdg", "rz", "rx", "cx", "cz"];

    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::X(_) => "x",
            Gate::Z(_) => "z",
            Gate::S(_) => "s",
            Gate::Sdg(_) => "sdg",
            Gate::T(_) => "t",
            Gate::Tdg(_) => "tdg",
            Gate::Rz(..) => "rz",
            Gate::Rx(..) => "rx",
            Gate::Cx(..) => "cx",
            Gate::Cz(..) => "cz",
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Cx(a, b) | Gate::Cz(a, b) => vec![a, b],
            Gate::H(q)
            | Gate::X(q)
            | Gate::Z(q)
            | Gate::S(q)
            | Gate::Sdg(q)
            | Gate::T(q)
            | Gate::Tdg(q)
            | Gate::Rz(q, _)
            | Gate::Rx(q, _) => vec![q],
        }
    }

    pub fn angle(&self) -> Option<Phase> {
        match *self {
            Gate::Rz(_, a) | Gate::Rx(_, a) => Some(a),
            _ => None,
        }
    }

    /// Phase of the single spider a discrete or rotation gate becomes.
    pub(crate) fn spider_phase(&self) -> Option<Phase> {
        Some(match *self {
            Gate::X(_) | Gate::Z(_) => Phase::pi(),
            Gate::S(_) => Phase::exact(1, 2),
            Gate::Sdg(_) => Phase::exact(3, 2),
            Gate::T(_) => Phase::exact(1, 4),
            Gate::Tdg(_) => Phase::exact(7, 4),
            Gate::Rz(_, a) | Gate::Rx(_, a) => a,
            _ => return None,
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CircuitError {
    #[error("gate {gate} acts on qubit {qubit} of a {num_qubits}-qubit circuit")]
    QubitOutOfRange {
        gate: &'static str,
        qubit: usize,
        num_qubits: usize,
    },
    #[error("two-qubit gate {gate} uses qubit {qubit} twice")]
    RepeatedQubit { gate: &'static str, qubit: usize },
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit {
            num_qubits,
            gates: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn push(&mut self, gate: Gate) -> Result<(), CircuitError> {
        let qs = gate.qubits();
        for &q in &qs {
            if q >= self.num_qubits {
                return Err(CircuitError::QubitOutOfRange {
                    gate: gate.name(),
                    qubit: q,
                    num_qubits: self.num_qubits,
                });
            }
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(CircuitError::RepeatedQubit {
                gate: gate.name(),
                qubit: qs[0],
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn with_gates(num_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self, CircuitError> {
        let mut c = Circuit::new(num_qubits);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    /// `self` followed by `other` on the same register.
    pub fn then(&self, other: &Circuit) -> Result<Circuit, CircuitError> {
        let n = self.num_qubits.max(other.num_qubits);
        Circuit::with_gates(n, self.gates.iter().chain(&other.gates).copied())
    }

    /// OpenQASM 2 text that [`parse_qasm`] reads back to the same circuit.
    pub fn to_qasm(&self) -> String {
        let mut out = format!(
            "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[{}];\n",
            self.num_qubits
        );
        for g in &self.gates {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }
}

fn format_angle(p: Phase) -> String {
    match p {
        Phase::Exact(r) => match (*r.numer(), *r.denom()) {
            (1, 1) => "pi".to_string(),
            (n, 1) => format!("{n}*pi"),
            (1, d) => format!("pi/{d}"),
            (n, d) => format!("{n}*pi/{d}"),
        },
        Phase::Inexact(x) => format!("{x}"),
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let qs = self.qubits();
        match self.angle() {
            Some(a) => write!(f, "{}({}) ", self.name(), format_angle(a))?,
            None => write!(f, "{} ", self.name())?,
        }
        let ops: Vec<String> = qs.iter().map(|q| format!("q[{q}]")).collect();
        write!(f, "{};", ops.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_checks_invariants() {
        let mut c = Circuit::new(2);
        c.push(Gate::Cx(0, 1)).unwrap();
        assert!(matches!(c.push(Gate::H(2)), Err(CircuitError::QubitOutOfRange { qubit: 2, .. })));
        assert!(matches!(c.push(Gate::Cz(1, 1)), Err(CircuitError::RepeatedQubit { .. })));
        assert_eq!(c.gates().len(), 1);
    }

    #[test]
    fn display_forms() {
        assert_eq!(Gate::Rz(0, Phase::exact(1, 4)).to_string(), "rz(pi/4) q[0];");
        assert_eq!(Gate::Rx(1, Phase::exact(3, 4)).to_string(), "rx(3*pi/4) q[1];");
        assert_eq!(Gate::Rz(0, Phase::zero()).to_string(), "rz(0*pi) q[0];");
        assert_eq!(Gate::Cx(0, 1).to_string(), "cx q[0],q[1];");
    }
}
