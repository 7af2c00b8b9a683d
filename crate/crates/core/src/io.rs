//! JSON file formats.

use crate::error::{Error, Result};
use crate::graph::{EmbeddedMultigraph, VertexKind};
use crate::slicing::Slice;
use serde::{de::DeserializeOwned, Deserialize, Serialize};
use std::path::Path;

/// `{"n":..,"edges":[[u,v],..],"rotation":[[e,..],..]|null,"outer_face":f|null}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub rotation: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub outer_face: Option<usize>,
}

impl GraphFile {
    pub fn from_graph(g: &EmbeddedMultigraph) -> Self {
        GraphFile {
            n: g.vertex_count(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            rotation: Some(g.rotations().to_vec()),
            outer_face: Some(g.outer_face()),
        }
    }

    /// Builds the graph. Parallel classes larger than three are accepted
    /// here; the solver caps them.
    pub fn to_graph(&self) -> Result<EmbeddedMultigraph> {
        let edges = self.edges.iter().map(|e| (e[0], e[1])).collect();
        EmbeddedMultigraph::build_lenient(self.n, edges, self.rotation.clone(), self.outer_face)
    }
}

/// A slice: the graph fields plus per-vertex kinds and per-edge weights and
/// origins.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceFile {
    #[serde(flatten)]
    pub graph: GraphFile,
    pub kinds: Vec<VertexKind>,
    pub weights: Vec<u32>,
    pub origins: Vec<Option<usize>>,
}

impl SliceFile {
    pub fn from_slice(s: &Slice) -> Self {
        SliceFile {
            graph: GraphFile::from_graph(&s.graph),
            kinds: s.kinds.clone(),
            weights: s.weights.clone(),
            origins: s.origins.iter().map(|r| r.origin).collect(),
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

/// Serializes compactly with a trailing newline.
pub fn to_json_line<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, to_json_line(value)?)?;
    Ok(())
}

pub fn read_graph(path: &Path) -> Result<EmbeddedMultigraph> {
    read_json::<GraphFile>(path)?.to_graph()
}

pub fn write_graph(path: &Path, g: &EmbeddedMultigraph) -> Result<()> {
    write_json(path, &GraphFile::from_graph(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let g = EmbeddedMultigraph::build(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], None, None).unwrap();
        let text = to_json_line(&GraphFile::from_graph(&g)).unwrap();
        let back: GraphFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_graph().unwrap(), g);
    }

    #[test]
    fn null_rotation_is_embedded() {
        let text = r#"{"n":3,"edges":[[0,1],[1,2],[2,0]],"rotation":null,"outer_face":null}"#;
        let f: GraphFile = serde_json::from_str(text).unwrap();
        let g = f.to_graph().unwrap();
        assert_eq!(g.faces().len(), 2);
    }

    #[test]
    fn malformed_input_is_a_format_error() {
        let bad = serde_json::from_str::<GraphFile>(r#"{"n":3,"edges":[[0]]}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn vertex_kind_encoding() {
        let kinds = vec![VertexKind::Original(4), VertexKind::InnerNode(9), VertexKind::OuterNode];
        let s = serde_json::to_string(&kinds).unwrap();
        assert_eq!(s, r#"[{"original":4},{"inner_node":9},"outer_node"]"#);
    }
}
