use std::fmt::Write;
use std::str::FromStr;

use serde_json::{json, Value};

use super::{Graph, GraphMetrics};
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format, Error> {
        match s {
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

pub fn to_dot(g: &Graph) -> String {
    if g.is_empty() {
        return "graph G { }\n".to_string();
    }
    let mut out = String::from("graph G {\n");
    for (i, label) in g.labels().iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{}\"];", label.replace('"', "\\\"")).expect("string write");
    }
    for (a, b) in g.edges() {
        writeln!(out, "  n{a} -- n{b};").expect("string write");
    }
    out.push_str("}\n");
    out
}

/// `{"vertices": [labels], "edges": [[i, j], ...], "metrics": {...} | null}`.
pub fn to_json(g: &Graph, metrics: Option<&GraphMetrics>) -> Value {
    let edges: Vec<[usize; 2]> = g.edges().into_iter().map(|(a, b)| [a, b]).collect();
    json!({
        "vertices": g.labels(),
        "edges": edges,
        "metrics": metrics,
    })
}
