use std::collections::HashMap;

use serde_json::{json, Map, Value};

use super::{Side, TEdge, TVertex, Tag, TagKind, TaggedWeb};
use crate::graph::json::{as_array, as_str, as_usize, field, join};
use crate::graph::{Color, JsonError};

pub fn serialize_tagged_web(web: &TaggedWeb) -> String {
    let vid = |v: usize| web.vertices[v].id.clone();
    let vertices: Vec<Value> = web
        .vertices
        .iter()
        .map(|x| json!({"id": x.id, "color": x.color.map(Color::name), "boundary": x.boundary}))
        .collect();
    let edges: Vec<Value> = web
        .edges
        .iter()
        .map(|e| json!({"id": e.id, "u": vid(e.u), "v": vid(e.v), "mult": e.mult_u}))
        .collect();
    let mut rotation = Map::new();
    for (v, rot) in web.rotation.iter().enumerate() {
        rotation.insert(vid(v), rot.iter().map(|&e| json!(web.edges[e].id)).collect());
    }
    let direction: Map<String, Value> = web.edges.iter().map(|e| (e.id.clone(), json!(vid(e.u)))).collect();
    let tags: Vec<Value> = web
        .edges
        .iter()
        .filter_map(|e| {
            e.tag.map(|t| {
                let kind = match t.kind {
                    TagKind::Pair => "pair",
                    TagKind::Source => "source",
                };
                let side = match t.side {
                    Side::Left => "left",
                    Side::Right => "right",
                };
                json!({"edge": e.id, "kind": kind, "side": side})
            })
        })
        .collect();
    let v = json!({
        "r": web.r, "n": web.n, "vertices": vertices, "edges": edges,
        "rotation": rotation, "direction": direction, "tags": tags,
    });
    serde_json::to_string_pretty(&v).expect("JSON values always serialize")
}

fn lookup(map: &HashMap<&str, usize>, id: &str, path: &str, what: &str) -> Result<usize, JsonError> {
    map.get(id).copied().ok_or_else(|| JsonError::new(path, format!("unknown {what} {id:?}")))
}

pub fn parse_tagged_web(text: &str) -> Result<TaggedWeb, JsonError> {
    let root: Value = serde_json::from_str(text).map_err(|e| JsonError::new("", e.to_string()))?;
    let r = as_usize(field(&root, "r", "")?, "r")?;
    let n = as_usize(field(&root, "n", "")?, "n")?;
    let mut vertices = Vec::new();
    for (i, x) in as_array(field(&root, "vertices", "")?, "vertices")?.iter().enumerate() {
        let p = format!("vertices[{i}]");
        let id = as_str(field(x, "id", &p)?, &join(&p, "id"))?.to_string();
        let color = match x.get("color") {
            None | Some(Value::Null) => None,
            Some(c) => Some(match as_str(c, &join(&p, "color"))? {
                "black" => Color::Black,
                "white" => Color::White,
                other => return Err(JsonError::new(join(&p, "color"), format!("unknown color {other:?}"))),
            }),
        };
        let boundary = match x.get("boundary") {
            None | Some(Value::Null) => None,
            Some(b) => Some(as_usize(b, &join(&p, "boundary"))?),
        };
        vertices.push(TVertex { id, color, boundary });
    }
    let vindex: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect();
    if vindex.len() != vertices.len() {
        return Err(JsonError::new("vertices", "duplicate vertex id"));
    }
    let direction = field(&root, "direction", "")?
        .as_object()
        .ok_or_else(|| JsonError::new("direction", "expected an object"))?;
    let mut edges = Vec::new();
    for (i, x) in as_array(field(&root, "edges", "")?, "edges")?.iter().enumerate() {
        let p = format!("edges[{i}]");
        let id = as_str(field(x, "id", &p)?, &join(&p, "id"))?.to_string();
        let u = lookup(&vindex, as_str(field(x, "u", &p)?, &join(&p, "u"))?, &join(&p, "u"), "vertex")?;
        let v = lookup(&vindex, as_str(field(x, "v", &p)?, &join(&p, "v"))?, &join(&p, "v"), "vertex")?;
        let mult_u = as_usize(field(x, "mult", &p)?, &join(&p, "mult"))?;
        let dp = format!("direction.{id}");
        let tail = direction.get(&id).ok_or_else(|| JsonError::new(&dp, "missing field"))?;
        let tail = lookup(&vindex, as_str(tail, &dp)?, &dp, "vertex")?;
        let (u, v) = if tail == u {
            (u, v)
        } else if tail == v {
            (v, u)
        } else {
            return Err(JsonError::new(dp, "tail is not an endpoint of the edge"));
        };
        edges.push(TEdge { id, u, v, mult_u, tag: None });
    }
    let eindex: HashMap<String, usize> = edges.iter().enumerate().map(|(i, e)| (e.id.clone(), i)).collect();
    if eindex.len() != edges.len() {
        return Err(JsonError::new("edges", "duplicate edge id"));
    }
    let eindex: HashMap<&str, usize> = eindex.iter().map(|(k, &v)| (k.as_str(), v)).collect();
    let rot_obj = field(&root, "rotation", "")?
        .as_object()
        .ok_or_else(|| JsonError::new("rotation", "expected an object"))?;
    let mut rotation = Vec::with_capacity(vertices.len());
    for x in &vertices {
        let p = join("rotation", &x.id);
        let list = rot_obj.get(&x.id).ok_or_else(|| JsonError::new(&p, "missing field"))?;
        let mut rot = Vec::new();
        for (j, e) in as_array(list, &p)?.iter().enumerate() {
            let ep = format!("{p}[{j}]");
            rot.push(lookup(&eindex, as_str(e, &ep)?, &ep, "edge")?);
        }
        rotation.push(rot);
    }
    let mut tagged = vec![None; edges.len()];
    for (i, t) in as_array(field(&root, "tags", "")?, "tags")?.iter().enumerate() {
        let p = format!("tags[{i}]");
        let ep = join(&p, "edge");
        let e = lookup(&eindex, as_str(field(t, "edge", &p)?, &ep)?, &ep, "edge")?;
        let kind = match as_str(field(t, "kind", &p)?, &join(&p, "kind"))? {
            "pair" => TagKind::Pair,
            "source" => TagKind::Source,
            other => return Err(JsonError::new(join(&p, "kind"), format!("unknown tag kind {other:?}"))),
        };
        let side = match as_str(field(t, "side", &p)?, &join(&p, "side"))? {
            "left" => Side::Left,
            "right" => Side::Right,
            other => return Err(JsonError::new(join(&p, "side"), format!("unknown side {other:?}"))),
        };
        if tagged[e].replace(Tag { kind, side }).is_some() {
            return Err(JsonError::new(ep, "edge tagged twice"));
        }
    }
    for (e, t) in edges.iter_mut().zip(tagged) {
        e.tag = t;
    }
    TaggedWeb::new(r, n, vertices, edges, rotation).map_err(|e| JsonError::new("", e.to_string()))
}
