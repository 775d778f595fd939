//! A ZX-calculus diagram rewriting engine.
//!
//! Diagrams ([`diagram::Diagram`]) are built directly or from quantum
//! circuits ([`circuit`]), simplified by pattern-matching rewrite rules
//! ([`rules`]) under a scheduler that applies non-overlapping matches in
//! batches ([`scheduler`]), and checked for soundness ([`verify`]).

pub mod bench;
pub mod circuit;
pub mod diagram;
pub mod phase;
pub mod rules;
pub mod scalar;
pub mod scheduler;
pub mod verify;

pub use diagram::{Diagram, EdgeKind, NodeId, NodeKind};
pub use phase::Phase;
pub use rules::{Match, RuleId};
pub use scalar::Scalar;

pub type DenseOperatorF64 = verify::DenseOperator<f64>;
pub type DenseOperatorF32 = verify::DenseOperator<f32>;
