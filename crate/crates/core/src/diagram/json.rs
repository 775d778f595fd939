//! JSON interchange format.
//!
//! ```json
//! {"nodes":[{"id":0,"kind":"B"},{"id":1,"kind":"Z","phase":"1/2"}],
//!  "edges":[{"s":0,"t":1,"kind":"S"}],"inputs":[0],"outputs":[]}
//! ```
//!
//! Exact phases are reduced fraction strings in units of π; inexact phases
//! are `{"inexact": radians}`. Nodes are written in ascending id order and
//! edges in ascending `(s, t)` order with `s < t`, so saving is
//! deterministic and `load ∘ save` is the identity.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Diagram, DiagramError, EdgeKind, NodeId, NodeKind};
use crate::phase::Phase;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("malformed diagram JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("bad phase on node {id}: {msg}")]
    Phase { id: usize, msg: String },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Serialize, Deserialize)]
struct DiagramDoc {
    nodes: Vec<NodeDoc>,
    edges: Vec<EdgeDoc>,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct NodeDoc {
    id: usize,
    kind: KindDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phase: Option<PhaseDoc>,
}

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq)]
enum KindDoc {
    Z,
    X,
    B,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PhaseDoc {
    Fraction(String),
    Inexact { inexact: f64 },
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    s: usize,
    t: usize,
    kind: EdgeKindDoc,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
enum EdgeKindDoc {
    S,
    H,
}

impl From<NodeKind> for KindDoc {
    fn from(k: NodeKind) -> Self {
        match k {
            NodeKind::Z => KindDoc::Z,
            NodeKind::X => KindDoc::X,
            NodeKind::B => KindDoc::B,
        }
    }
}

impl From<KindDoc> for NodeKind {
    fn from(k: KindDoc) -> Self {
        match k {
            KindDoc::Z => NodeKind::Z,
            KindDoc::X => NodeKind::X,
            KindDoc::B => NodeKind::B,
        }
    }
}

fn phase_doc(p: Phase) -> PhaseDoc {
    match p {
        Phase::Exact(r) => PhaseDoc::Fraction(format!("{}/{}", r.numer(), r.denom())),
        Phase::Inexact(x) => PhaseDoc::Inexact { inexact: x },
    }
}

impl Diagram {
    fn to_doc(&self) -> DiagramDoc {
        let nodes = self
            .node_ids()
            .map(|v| {
                let kind = self.kind(v).expect("live node");
                NodeDoc {
                    id: v.0,
                    kind: kind.into(),
                    phase: kind
                        .is_spider()
                        .then(|| phase_doc(self.phase(v).expect("live node"))),
                }
            })
            .collect();
        let edges = self
            .edges()
            .map(|(s, t, k)| EdgeDoc {
                s: s.0,
                t: t.0,
                kind: match k {
                    EdgeKind::Simple => EdgeKindDoc::S,
                    EdgeKind::Hadamard => EdgeKindDoc::H,
                },
            })
            .collect();
        DiagramDoc {
            nodes,
            edges,
            inputs: self.inputs.iter().map(|b| b.0).collect(),
            outputs: self.outputs.iter().map(|b| b.0).collect(),
        }
    }

    /// Compact JSON encoding.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("diagram serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("diagram serializes")
    }

    /// Parses and validates a diagram. Duplicate edges in the input are
    /// resolved with [`Diagram::connect`].
    pub fn from_json(text: &str) -> Result<Diagram, LoadError> {
        let doc: DiagramDoc = serde_json::from_str(text)?;
        let mut d = Diagram::new();
        for n in &doc.nodes {
            let kind: NodeKind = n.kind.into();
            let phase = match (&n.phase, kind) {
                (_, NodeKind::B) | (None, _) => Phase::zero(),
                (Some(PhaseDoc::Fraction(s)), _) => {
                    Phase::parse_fraction(s).map_err(|e| LoadError::Phase {
                        id: n.id,
                        msg: e.to_string(),
                    })?
                }
                (Some(PhaseDoc::Inexact { inexact }), _) => {
                    if !inexact.is_finite() {
                        return Err(LoadError::Phase {
                            id: n.id,
                            msg: "non-finite radians".into(),
                        });
                    }
                    Phase::from_radians(*inexact)
                }
            };
            d.insert_node_at(NodeId(n.id), kind, phase)?;
        }
        for (list, ids) in [(&mut d.inputs, &doc.inputs), (&mut d.outputs, &doc.outputs)] {
            list.extend(ids.iter().map(|&i| NodeId(i)));
        }
        for e in &doc.edges {
            let kind = match e.kind {
                EdgeKindDoc::S => EdgeKind::Simple,
                EdgeKindDoc::H => EdgeKind::Hadamard,
            };
            d.connect(NodeId(e.s), NodeId(e.t), kind)?;
        }
        d.validate()?;
        Ok(d)
    }
}
