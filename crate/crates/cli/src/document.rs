//! JSON voltage graph documents.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use voltlift::{spanning_tree, Element, GroupSpec, Int, Multigraph, TreeSet, VertexId, VoltageGraph};

#[derive(Debug, thiserror::Error)]
pub enum DocError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid document: {0}")]
    Validation(String),
}

fn invalid(msg: impl Into<String>) -> DocError {
    DocError::Validation(msg.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub rank: usize,
    pub moduli: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub from: String,
    pub to: String,
    pub voltage: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VoltageGraphDocument {
    pub group: GroupDoc,
    pub graph: GraphDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
}

/// A validated document.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub vg: VoltageGraph,
    pub tree: Option<TreeSet>,
    pub base: Option<VertexId>,
}

/// Parses, validates and normalizes a document.
pub fn parse(text: &str) -> Result<VoltageGraphDocument, DocError> {
    let doc: VoltageGraphDocument = serde_json::from_str(text)
        .map_err(|e| DocError::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    let loaded = doc.load()?;
    Ok(VoltageGraphDocument::from_loaded(&loaded))
}

/// Pretty JSON with a trailing newline.
pub fn serialize(doc: &VoltageGraphDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn load_str(text: &str) -> Result<Loaded, DocError> {
    parse(text)?.load()
}

impl VoltageGraphDocument {
    pub fn load(&self) -> Result<Loaded, DocError> {
        let moduli = self
            .group
            .moduli
            .iter()
            .map(|&d| if d < 2 { Err(invalid(format!("modulus {d} is less than 2"))) } else { Ok(Int::from(d)) })
            .collect::<Result<Vec<_>, _>>()?;
        let spec = GroupSpec::new(self.group.rank, moduli).map_err(|e| invalid(e.to_string()))?;
        let mut g = Multigraph::new();
        for v in &self.graph.vertices {
            g.add_vertex(v.clone()).map_err(|_| invalid(format!("duplicate vertex id {v:?}")))?;
        }
        let endpoint = |g: &Multigraph, edge: &str, v: &str| {
            g.vertex_by_name(v).map_err(|_| invalid(format!("edge {edge:?} has unknown endpoint {v:?}")))
        };
        let mut voltages = Vec::with_capacity(self.graph.edges.len());
        for e in &self.graph.edges {
            let (a, b) = (endpoint(&g, &e.id, &e.from)?, endpoint(&g, &e.id, &e.to)?);
            g.add_edge(e.id.clone(), a, b).map_err(|_| invalid(format!("duplicate edge id {:?}", e.id)))?;
            if e.voltage.len() != spec.dim() {
                return Err(invalid(format!(
                    "edge {:?} has a voltage of length {}, expected {}",
                    e.id,
                    e.voltage.len(),
                    spec.dim()
                )));
            }
            voltages.push(spec.element_from_i64(&e.voltage).map_err(|err| invalid(err.to_string()))?);
        }
        let base = match &self.base {
            Some(v) => Some(g.vertex_by_name(v).map_err(|_| invalid(format!("unknown base vertex {v:?}")))?),
            None => None,
        };
        let tree = match &self.tree {
            Some(ids) => {
                let edges = ids
                    .iter()
                    .map(|id| g.edge_by_name(id).map_err(|_| invalid(format!("unknown tree edge {id:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                if g.vertex_count() == 0 {
                    return Err(invalid("a tree needs at least one vertex"));
                }
                let tree = TreeSet::from_edges(&g, base.unwrap_or(0), &edges)
                    .map_err(|e| invalid(format!("tree is not a spanning tree set: {e}")))?;
                Some(tree)
            }
            None => None,
        };
        let vg = VoltageGraph::new(g, spec, voltages).map_err(|e| invalid(e.to_string()))?;
        Ok(Loaded { vg, tree, base })
    }

    pub fn from_loaded(l: &Loaded) -> Self {
        Self::from_parts(&l.vg, l.tree.as_ref(), l.base)
    }

    /// Document for a voltage graph; coordinates must fit in `i64`.
    pub fn from_parts(vg: &VoltageGraph, tree: Option<&TreeSet>, base: Option<VertexId>) -> Self {
        let g = vg.graph();
        let spec = vg.spec();
        let edges = g
            .edges()
            .map(|e| EdgeDoc {
                id: g.edge_name(e).to_string(),
                from: g.vertex_name(g.src(e)).to_string(),
                to: g.vertex_name(g.dst(e)).to_string(),
                voltage: coords(vg.voltage(e)),
            })
            .collect();
        VoltageGraphDocument {
            group: GroupDoc {
                rank: spec.rank(),
                moduli: spec.moduli().iter().map(|d| d.to_i64().expect("modulus fits i64")).collect(),
            },
            graph: GraphDoc { vertices: g.vertices().map(|v| g.vertex_name(v).to_string()).collect(), edges },
            tree: tree.map(|t| t.edges().iter().map(|&e| g.edge_name(e).to_string()).collect()),
            base: base.or(tree.map(|t| t.base())).map(|v| g.vertex_name(v).to_string()),
        }
    }
}

pub fn coords(x: &Element) -> Vec<i64> {
    x.coords().iter().map(|c| c.to_i64().expect("coordinate fits i64")).collect()
}

impl Loaded {
    /// The document's tree, or a breadth-first one from the base (or first vertex).
    pub fn tree_or_spanning(&self) -> Result<TreeSet, DocError> {
        match &self.tree {
            Some(t) => Ok(t.clone()),
            None => spanning_tree(self.vg.graph(), self.base.unwrap_or(0)).map_err(|e| invalid(e.to_string())),
        }
    }
}
