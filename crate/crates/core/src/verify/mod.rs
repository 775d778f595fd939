//! Equivalence checking for rewritten diagrams.
//!
//! Small diagrams are contracted to dense operators and compared up to a
//! global scalar and, failing that, a relabelling of qubits. Larger ones
//! fall back to a labelled isomorphism test against a reference rewrite,
//! and past that to comparing degree sequences.

mod compare;
mod isomorphism;
mod operator;
mod tensor;

use num_complex::Complex64;
use serde_json::{json, Value};
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, NodeId};

pub use compare::{
    equal_up_to_qubit_permutation, equal_up_to_scalar, operator_fingerprint, Fingerprint,
    ScalarComparison, MAX_PERMUTATION_QUBITS,
};
pub use isomorphism::{degree_sequence_equal, labeled_isomorphic};
pub use operator::DenseOperator;
pub use tensor::{diagram_to_operator, diagram_to_operator_with_caps, MAX_INTERMEDIATE_RANK};

/// Default relative tolerance of the tensor comparison.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Largest diagram handed to the isomorphism search by [`verify`].
pub const DEFAULT_MAX_ISOMORPHISM_NODES: usize = 20_000;

/// Size limits for dense tensor conversion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorCaps {
    pub max_boundaries: usize,
    pub max_nodes: usize,
}

impl Default for TensorCaps {
    fn default() -> Self {
        TensorCaps {
            max_boundaries: 12,
            max_nodes: 200,
        }
    }
}

impl TensorCaps {
    /// Environment variable holding `boundaries,nodes`.
    pub const ENV_VAR: &'static str = "ZXDB_TENSOR_CAP";

    /// Parses `"boundaries,nodes"`.
    pub fn parse(s: &str) -> Result<Self, VerifyError> {
        let bad = || VerifyError::BadCap(s.to_string());
        let (b, n) = s.split_once(',').ok_or_else(bad)?;
        Ok(TensorCaps {
            max_boundaries: b.trim().parse().map_err(|_| bad())?,
            max_nodes: n.trim().parse().map_err(|_| bad())?,
        })
    }

    /// The caps from [`Self::ENV_VAR`], or the defaults when it is unset.
    pub fn from_env() -> Result<Self, VerifyError> {
        match std::env::var(Self::ENV_VAR) {
            Ok(s) => Self::parse(&s),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn admits(&self, d: &Diagram) -> bool {
        d.inputs().len() + d.outputs().len() <= self.max_boundaries && d.num_nodes() <= self.max_nodes
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("diagram with {boundaries} boundaries and {nodes} nodes exceeds tensor caps ({}, {})", caps.max_boundaries, caps.max_nodes)]
    CapExceeded {
        boundaries: usize,
        nodes: usize,
        caps: TensorCaps,
    },
    #[error("contraction would build a rank-{0} tensor")]
    RankExceeded(usize),
    #[error("boundary {0} must have exactly one edge")]
    DanglingBoundary(NodeId),
    #[error("operator shapes differ: {left:?} vs {right:?} (outputs, inputs)")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("tensor cap `{0}` is not of the form boundaries,nodes")]
    BadCap(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Tensor,
    Isomorphism,
    DegreeSequence,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Tensor => "tensor",
            Method::Isomorphism => "isomorphism",
            Method::DegreeSequence => "degree_sequence",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceVerdict {
    pub equal: bool,
    pub method: Method,
    /// Tensor method only.
    pub scalar: Option<Complex64>,
    /// Tensor method only: qubit `k` of the rewritten side is qubit
    /// `permutation[k]` of the original.
    pub permutation: Option<Vec<usize>>,
    /// Tensor method only; infinite when the shapes differ.
    pub residual: Option<f64>,
}

impl EquivalenceVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "equal": self.equal,
            "method": self.method.name(),
            "scalar": self.scalar.map(|s| [s.re, s.im]),
            "permutation": self.permutation,
            "residual": self.residual.filter(|r| r.is_finite()),
        })
    }
}

/// Limits and inputs of [`verify`].
#[derive(Clone, Debug)]
pub struct VerifyBudget<'a> {
    pub caps: TensorCaps,
    pub max_isomorphism_nodes: usize,
    pub tol: f64,
    /// An independently produced rewrite of the same input, compared
    /// against structurally when the tensor method is out of reach.
    pub reference: Option<&'a Diagram>,
}

impl Default for VerifyBudget<'_> {
    fn default() -> Self {
        VerifyBudget {
            caps: TensorCaps::default(),
            max_isomorphism_nodes: DEFAULT_MAX_ISOMORPHISM_NODES,
            tol: DEFAULT_TOL,
            reference: None,
        }
    }
}

/// Checks that `after` is a sound rewrite of `before`, using the
/// strongest method the budget allows.
pub fn verify(
    before: &Diagram,
    after: &Diagram,
    budget: &VerifyBudget<'_>,
) -> Result<EquivalenceVerdict, VerifyError> {
    if budget.caps.admits(before) && budget.caps.admits(after) {
        match tensor_verdict(before, after, budget) {
            Err(VerifyError::RankExceeded(_)) => {}
            other => return other,
        }
    }
    if let Some(reference) = budget.reference {
        if after.num_nodes().max(reference.num_nodes()) <= budget.max_isomorphism_nodes {
            return Ok(structural(Method::Isomorphism, labeled_isomorphic(after, reference).is_some()));
        }
    }
    let target = budget.reference.unwrap_or(before);
    Ok(structural(Method::DegreeSequence, degree_sequence_equal(after, target)))
}

fn structural(method: Method, equal: bool) -> EquivalenceVerdict {
    EquivalenceVerdict {
        equal,
        method,
        scalar: None,
        permutation: None,
        residual: None,
    }
}

fn tensor_verdict(
    before: &Diagram,
    after: &Diagram,
    budget: &VerifyBudget<'_>,
) -> Result<EquivalenceVerdict, VerifyError> {
    let a = diagram_to_operator_with_caps::<f64>(before, &budget.caps)?;
    let b = diagram_to_operator_with_caps::<f64>(after, &budget.caps)?;
    match equal_up_to_qubit_permutation(&a, &b, budget.tol) {
        Ok((cmp, sigma)) => Ok(EquivalenceVerdict {
            equal: cmp.equal,
            method: Method::Tensor,
            scalar: cmp.scalar,
            permutation: Some(sigma),
            residual: Some(cmp.residual),
        }),
        Err(VerifyError::DimensionMismatch { .. }) => Ok(EquivalenceVerdict {
            equal: false,
            method: Method::Tensor,
            scalar: None,
            permutation: None,
            residual: Some(f64::INFINITY),
        }),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{EdgeKind, NodeKind};
    use crate::phase::Phase;

    fn wire(p: Phase) -> Diagram {
        let mut d = Diagram::new();
        let i = d.add_input();
        let o = d.add_output();
        let z = d.add_spider(NodeKind::Z, p).unwrap();
        d.connect(i, z, EdgeKind::Simple).unwrap();
        d.connect(z, o, EdgeKind::Simple).unwrap();
        d
    }

    #[test]
    fn caps_parse() {
        assert_eq!(
            TensorCaps::parse("4, 50").unwrap(),
            TensorCaps {
                max_boundaries: 4,
                max_nodes: 50
            }
        );
        assert!(TensorCaps::parse("4").is_err());
        assert!(TensorCaps::parse("a,b").is_err());
    }

    #[test]
    fn tiers() {
        let a = wire(Phase::pi());
        let b = wire(Phase::half_pi());
        let v = verify(&a, &a, &VerifyBudget::default()).unwrap();
        assert!(v.equal && v.method == Method::Tensor);
        assert!(!verify(&a, &b, &VerifyBudget::default()).unwrap().equal);

        let tiny = TensorCaps {
            max_boundaries: 1,
            max_nodes: 1,
        };
        let budget = VerifyBudget {
            caps: tiny,
            reference: Some(&b),
            ..Default::default()
        };
        let v = verify(&a, &a, &budget).unwrap();
        assert_eq!(v.method, Method::Isomorphism);
        assert!(!v.equal);

        let budget = VerifyBudget {
            caps: tiny,
            max_isomorphism_nodes: 0,
            reference: Some(&b),
            ..Default::default()
        };
        let v = verify(&a, &a, &budget).unwrap();
        assert_eq!(v.method, Method::DegreeSequence);
        assert!(v.equal);
    }

    #[test]
    fn shape_mismatch_is_unequal() {
        let a = wire(Phase::zero());
        let mut b = Diagram::new();
        b.add_spider(NodeKind::Z, Phase::zero()).unwrap();
        let v = verify(&a, &b, &VerifyBudget::default()).unwrap();
        assert!(!v.equal);
        assert_eq!(v.to_json()["residual"], Value::Null);
    }

    #[test]
    fn verdict_json_shape() {
        let a = wire(Phase::pi());
        let v = verify(&a, &a, &VerifyBudget::default()).unwrap();
        let j = v.to_json();
        assert_eq!(j["method"], "tensor");
        assert_eq!(j["scalar"][0], 1.0);
        assert_eq!(j["permutation"], json!([0]));
    }
}
