//! DOT and JSON output for crystal graphs.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::affine_kr::KrCrystal;
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonNode {
    pub id: usize,
    pub c: Vec<u32>,
    pub wt: Vec<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonEdge {
    pub src: usize,
    pub dst: usize,
    pub label: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonGraph {
    pub model: String,
    pub s: u32,
    pub nodes: Vec<JsonNode>,
    pub edges: Vec<JsonEdge>,
}

pub fn to_json_graph(kr: &KrCrystal) -> Result<JsonGraph, Error> {
    if kr.is_empty() {
        return Err(Error::Mismatch("empty crystal".into()));
    }
    let nodes = kr
        .elements
        .iter()
        .enumerate()
        .map(|(id, c)| JsonNode {
            id,
            c: c.clone(),
            wt: kr.wt(id),
        })
        .collect();
    let mut edges = Vec::new();
    for label in 0..=kr.rank() {
        for v in 0..kr.len() {
            if let Some(w) = kr.f(label, v) {
                edges.push(JsonEdge {
                    src: v,
                    dst: w,
                    label,
                });
            }
        }
    }
    Ok(JsonGraph {
        model: kr.model.to_string(),
        s: kr.s,
        nodes,
        edges,
    })
}

pub fn to_json(kr: &KrCrystal) -> Result<String, Error> {
    Ok(serde_json::to_string_pretty(&to_json_graph(kr)?)?)
}

pub fn from_json(text: &str) -> Result<JsonGraph, Error> {
    Ok(serde_json::from_str(text)?)
}

const COLORS: [&str; 8] = [
    "black",
    "red",
    "blue",
    "darkgreen",
    "orange",
    "purple",
    "brown",
    "cyan4",
];

pub fn to_dot(kr: &KrCrystal) -> Result<String, Error> {
    let g = to_json_graph(kr)?;
    let mut s = String::new();
    writeln!(s, "digraph kr {{").unwrap();
    writeln!(s, "  // {} s={}", g.model, g.s).unwrap();
    for n in &g.nodes {
        let label: Vec<String> = n.c.iter().map(|x| x.to_string()).collect();
        writeln!(s, "  n{} [label=\"{}\"];", n.id, label.join("")).unwrap();
    }
    for e in &g.edges {
        writeln!(
            s,
            "  n{} -> n{} [label=\"{}\", color={}];",
            e.src,
            e.dst,
            e.label,
            COLORS[e.label % COLORS.len()]
        )
        .unwrap();
    }
    s.push_str("}\n");
    Ok(s)
}
