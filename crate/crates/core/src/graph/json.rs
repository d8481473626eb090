use std::sync::Arc;

use serde_json::{json, Map, Value};

use super::{Color, Edge, Network, PlanarBipartiteGraph, Vertex};
use crate::exact::MultiPoly;

/// A schema violation, located by a JSON path such as `edges[3].weight`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{path}: {message}")]
pub struct JsonError {
    pub path: String,
    pub message: String,
}

impl JsonError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        JsonError { path: path.into(), message: message.into() }
    }
}

pub(crate) fn field<'a>(obj: &'a Value, key: &str, path: &str) -> Result<&'a Value, JsonError> {
    obj.as_object()
        .ok_or_else(|| JsonError::new(path, "expected an object"))?
        .get(key)
        .ok_or_else(|| JsonError::new(join(path, key), "missing field"))
}

pub(crate) fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

pub(crate) fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str, JsonError> {
    v.as_str().ok_or_else(|| JsonError::new(path, "expected a string"))
}

pub(crate) fn as_usize(v: &Value, path: &str) -> Result<usize, JsonError> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| JsonError::new(path, "expected a nonnegative integer"))
}

pub(crate) fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, JsonError> {
    v.as_array().ok_or_else(|| JsonError::new(path, "expected an array"))
}

/// Vertices, edges (with their raw objects) and rotation shared by the network
/// and tagged-web schemas.
pub(crate) struct RawGraph<'a> {
    pub graph: PlanarBipartiteGraph,
    pub edge_objects: Vec<&'a Value>,
}

pub(crate) fn parse_graph(root: &Value) -> Result<RawGraph<'_>, JsonError> {
    let n = as_usize(field(root, "n", "")?, "n")?;
    let mut vertices = Vec::new();
    for (i, v) in as_array(field(root, "vertices", "")?, "vertices")?.iter().enumerate() {
        let p = format!("vertices[{i}]");
        let id = as_str(field(v, "id", &p)?, &join(&p, "id"))?.to_string();
        let color = match as_str(field(v, "color", &p)?, &join(&p, "color"))? {
            "black" => Color::Black,
            "white" => Color::White,
            other => return Err(JsonError::new(join(&p, "color"), format!("unknown color {other:?}"))),
        };
        let boundary = match v.get("boundary") {
            None | Some(Value::Null) => None,
            Some(b) => Some(as_usize(b, &join(&p, "boundary"))?),
        };
        vertices.push(Vertex { id, color, boundary });
    }
    let index = |id: &str, path: String| {
        vertices
            .iter()
            .position(|v| v.id == id)
            .ok_or_else(|| JsonError::new(path, format!("unknown vertex {id:?}")))
    };
    let mut edges = Vec::new();
    let mut edge_objects = Vec::new();
    for (i, e) in as_array(field(root, "edges", "")?, "edges")?.iter().enumerate() {
        let p = format!("edges[{i}]");
        let id = as_str(field(e, "id", &p)?, &join(&p, "id"))?.to_string();
        let u = index(as_str(field(e, "u", &p)?, &join(&p, "u"))?, join(&p, "u"))?;
        let v = index(as_str(field(e, "v", &p)?, &join(&p, "v"))?, join(&p, "v"))?;
        edges.push(Edge { id, u, v });
        edge_objects.push(e);
    }
    let rot_obj = field(root, "rotation", "")?
        .as_object()
        .ok_or_else(|| JsonError::new("rotation", "expected an object"))?;
    let mut rotation = vec![Vec::new(); vertices.len()];
    for (vid, list) in rot_obj {
        let p = format!("rotation.{vid}");
        let vi = index(vid, p.clone())?;
        for (j, eid) in as_array(list, &p)?.iter().enumerate() {
            let ep = format!("{p}[{j}]");
            let eid = as_str(eid, &ep)?;
            let ei = edges
                .iter()
                .position(|e| e.id == eid)
                .ok_or_else(|| JsonError::new(ep.clone(), format!("unknown edge {eid:?}")))?;
            rotation[vi].push(ei);
        }
    }
    let graph = PlanarBipartiteGraph::from_parts(n, vertices, edges, rotation)
        .map_err(|e| JsonError::new("", e.to_string()))?;
    Ok(RawGraph { graph, edge_objects })
}

/// Parses the network JSON schema. Structural validity is checked separately
/// by [`PlanarBipartiteGraph::validate`].
pub fn parse_network(text: &str) -> Result<Network, JsonError> {
    let root: Value = serde_json::from_str(text).map_err(|e| JsonError::new("", e.to_string()))?;
    let raw = parse_graph(&root)?;
    let mut weights = Vec::new();
    for (i, e) in raw.edge_objects.iter().enumerate() {
        let p = format!("edges[{i}]");
        let w = as_str(field(e, "weight", &p)?, &join(&p, "weight"))?;
        let poly = MultiPoly::parse(w).map_err(|err| JsonError::new(join(&p, "weight"), err.to_string()))?;
        weights.push(poly);
    }
    Network::new(Arc::new(raw.graph), weights).map_err(|e| JsonError::new("edges", e.to_string()))
}

pub(crate) fn graph_json(g: &PlanarBipartiteGraph, edge_extra: impl Fn(usize, &mut Map<String, Value>)) -> Value {
    let order: Vec<usize> = (0..g.vertices().len()).collect();
    let vertices: Vec<Value> = order
        .iter()
        .map(|&v| {
            let x = g.vertex(v);
            json!({"id": x.id, "color": x.color.name(), "boundary": x.boundary})
        })
        .collect();
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let mut m = Map::new();
            m.insert("id".into(), json!(e.id));
            m.insert("u".into(), json!(g.vertex(e.u).id));
            m.insert("v".into(), json!(g.vertex(e.v).id));
            edge_extra(i, &mut m);
            Value::Object(m)
        })
        .collect();
    let mut rotation = Map::new();
    for &v in &order {
        let ids: Vec<Value> = g.rotation(v).iter().map(|&e| json!(g.edge(e).id)).collect();
        rotation.insert(g.vertex(v).id.clone(), Value::Array(ids));
    }
    json!({"n": g.n(), "vertices": vertices, "edges": edges, "rotation": rotation})
}

pub fn serialize_network(net: &Network) -> String {
    let v = graph_json(net.graph(), |i, m| {
        m.insert("weight".into(), json!(net.weight(i).to_string()));
    });
    serde_json::to_string_pretty(&v).expect("JSON values always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    const STAR: &str = r#"{"n":1,"vertices":[{"id":"b1","color":"black","boundary":1},
        {"id":"w","color":"white","boundary":null}],
        "edges":[{"id":"e","u":"b1","v":"w","weight":"5"}],
        "rotation":{"b1":["e"],"w":["e"]}}"#;

    #[test]
    fn parse_star() {
        let net = parse_network(STAR).unwrap();
        assert_eq!(net.graph().n(), 1);
        assert_eq!(net.weight(0).to_string(), "5");
        let again = parse_network(&serialize_network(&net)).unwrap();
        assert_eq!(again, net);
    }

    #[test]
    fn missing_weight_has_path() {
        let text = r#"{"n":1,"vertices":[{"id":"b1","color":"black","boundary":1},
            {"id":"w","color":"white"}],
            "edges":[{"id":"e","u":"b1","v":"w"}],"rotation":{"b1":["e"],"w":["e"]}}"#;
        let err = parse_network(text).unwrap_err();
        assert_eq!(err.path, "edges[0].weight");
    }

    #[test]
    fn bad_color_and_unknown_vertex() {
        let text = STAR.replace("\"white\"", "\"green\"");
        assert_eq!(parse_network(&text).unwrap_err().path, "vertices[1].color");
        let text = STAR.replace("\"v\":\"w\"", "\"v\":\"q\"");
        assert_eq!(parse_network(&text).unwrap_err().path, "edges[0].v");
    }
}
