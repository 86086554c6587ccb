use std::collections::HashMap;

use serde_json::Value;

use super::CellGraph;
use crate::error::{Error, Result};

/// Parsed form of a cell file before structural validation.
#[derive(Debug, Default)]
pub(crate) struct RawCell {
    pub vertices: usize,
    pub boundary: Vec<String>,
    pub edges: Vec<(String, String, usize)>,
    pub origin: Option<String>,
    pub labels: Vec<(String, String)>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses a cell from either the line-based text grammar or its JSON form.
///
/// Text grammar: `vertices <n>`, `boundary <id>...`, `edge <id> <id>`, plus
/// optional `origin <id>` and `label <id> <name>` lines; `#` starts a comment.
/// When every id is an integer below `n` the integers are the vertex ids;
/// otherwise ids are names numbered in order of first appearance.
pub fn parse_cell(text: &str) -> Result<CellGraph> {
    let raw = if text.trim_start().starts_with('{') { parse_json(text)? } else { parse_text(text)? };
    build(raw)
}

pub(crate) fn parse_text(text: &str) -> Result<RawCell> {
    let mut raw = RawCell::default();
    let mut seen_vertices = false;
    let mut seen_boundary = false;
    for (idx, full) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = full.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let key = toks.next().unwrap();
        let args: Vec<&str> = toks.collect();
        match key {
            "vertices" => {
                if seen_vertices {
                    return Err(perr(line_no, "duplicate 'vertices' line"));
                }
                let [n] = args[..] else { return Err(perr(line_no, "expected 'vertices <n>'")) };
                raw.vertices = n.parse().map_err(|_| perr(line_no, format!("invalid vertex count '{n}'")))?;
                seen_vertices = true;
            }
            "boundary" => {
                if seen_boundary {
                    return Err(perr(line_no, "duplicate 'boundary' line"));
                }
                if args.is_empty() {
                    return Err(perr(line_no, "boundary needs at least one vertex"));
                }
                raw.boundary = args.iter().map(|s| s.to_string()).collect();
                seen_boundary = true;
            }
            "edge" => {
                let [a, b] = args[..] else { return Err(perr(line_no, "expected 'edge <id> <id>'")) };
                raw.edges.push((a.to_string(), b.to_string(), line_no));
            }
            "origin" => {
                let [o] = args[..] else { return Err(perr(line_no, "expected 'origin <id>'")) };
                raw.origin = Some(o.to_string());
            }
            "label" => {
                let [id, name] = args[..] else { return Err(perr(line_no, "expected 'label <id> <name>'")) };
                raw.labels.push((id.to_string(), name.to_string()));
            }
            other => return Err(perr(line_no, format!("unknown directive '{other}'"))),
        }
    }
    if !seen_vertices {
        return Err(perr(0, "missing 'vertices' line"));
    }
    if !seen_boundary {
        return Err(perr(0, "missing 'boundary' line"));
    }
    Ok(raw)
}

fn json_id(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => n.as_u64().map(|x| x.to_string()),
        _ => None,
    }
}

pub(crate) fn parse_json(text: &str) -> Result<RawCell> {
    let v: Value = serde_json::from_str(text).map_err(|e| perr(e.line(), e.to_string()))?;
    let vertices = v
        .get("vertices")
        .and_then(Value::as_u64)
        .ok_or_else(|| perr(0, "'vertices' must be a non-negative integer"))? as usize;
    let boundary = v
        .get("boundary")
        .and_then(Value::as_array)
        .ok_or_else(|| perr(0, "'boundary' must be an array"))?
        .iter()
        .map(|x| json_id(x).ok_or_else(|| perr(0, "boundary ids must be strings or integers")))
        .collect::<Result<Vec<_>>>()?;
    let mut edges = Vec::new();
    for (k, e) in v.get("edges").and_then(Value::as_array).ok_or_else(|| perr(0, "'edges' must be an array"))?.iter().enumerate() {
        let pair = e.as_array().filter(|p| p.len() == 2).ok_or_else(|| perr(0, format!("edge {k} must be a pair")))?;
        let a = json_id(&pair[0]).ok_or_else(|| perr(0, format!("edge {k}: bad id")))?;
        let b = json_id(&pair[1]).ok_or_else(|| perr(0, format!("edge {k}: bad id")))?;
        edges.push((a, b, 0));
    }
    let origin = v.get("origin").and_then(json_id);
    Ok(RawCell { vertices, boundary, edges, origin, labels: Vec::new() })
}

/// Maps ids to `0..n` and returns `(boundary, edges, labels)`.
pub(crate) fn resolve(raw: &RawCell) -> Result<(Vec<usize>, Vec<(usize, usize)>, Vec<String>)> {
    let n = raw.vertices;
    let all = raw.boundary.iter().chain(raw.edges.iter().flat_map(|(a, b, _)| [a, b]));
    let numeric = all.clone().all(|t| t.parse::<usize>().is_ok_and(|x| x < n));
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    if numeric {
        labels = (0..n).map(|i| i.to_string()).collect();
        for t in all {
            ids.insert(t, t.parse().unwrap());
        }
    } else {
        for t in all {
            if !ids.contains_key(t.as_str()) {
                if labels.len() == n {
                    return Err(perr(0, format!("more than {n} distinct vertex ids (at '{t}')")));
                }
                ids.insert(t, labels.len());
                labels.push(t.clone());
            }
        }
        while labels.len() < n {
            labels.push(format!("_{}", labels.len()));
        }
    }
    let boundary = raw.boundary.iter().map(|t| ids[t.as_str()]).collect();
    let edges = raw.edges.iter().map(|(a, b, _)| (ids[a.as_str()], ids[b.as_str()])).collect();
    for (id, name) in &raw.labels {
        let v = *ids.get(id.as_str()).ok_or_else(|| perr(0, format!("label for unknown vertex '{id}'")))?;
        labels[v] = name.clone();
    }
    Ok((boundary, edges, labels))
}

fn build(raw: RawCell) -> Result<CellGraph> {
    if let Some(o) = &raw.origin {
        if raw.boundary.first() != Some(o) {
            return Err(perr(0, format!("origin '{o}' must be the first boundary vertex")));
        }
    }
    let (boundary, edges, labels) = resolve(&raw)?;
    CellGraph::new(raw.vertices, &boundary, &edges, Some(labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIAMOND: &str = "# diamond\nvertices 6\nboundary v1 v2\nedge v1 w1\nedge v2 w2\nedge w1 w3\nedge w1 w4\nedge w2 w3\nedge w2 w4\n";

    #[test]
    fn named_ids_follow_first_appearance() {
        let g = parse_cell(DIAMOND).unwrap();
        assert_eq!(g.labels(), &["v1", "v2", "w1", "w2", "w3", "w4"]);
        assert_eq!(g.theta(), 2);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn json_form_matches_text() {
        let json = r#"{"vertices": 6, "boundary": ["v1", "v2"],
            "edges": [["v1","w1"],["v2","w2"],["w1","w3"],["w1","w4"],["w2","w3"],["w2","w4"]]}"#;
        assert_eq!(parse_cell(json).unwrap(), parse_cell(DIAMOND).unwrap());
        let numeric = r#"{"vertices": 3, "boundary": [0, 2], "edges": [[0, 1], [1, 2]]}"#;
        assert!(parse_cell(numeric).unwrap().is_path());
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        match parse_cell("vertices 3\nboundary 0 2\nedge 0\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse_cell("vertices x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_cell("boundary 0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_cell("vertices 2\nboundary a\nedge a b\nedge b c\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_cell("vertices 3\nboundary 0 2\nfoo 1\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn origin_must_lead_boundary() {
        let ok = "vertices 3\nboundary 0 2\norigin 0\nedge 0 1\nedge 1 2\n";
        assert!(parse_cell(ok).is_ok());
        let bad = "vertices 3\nboundary 0 2\norigin 2\nedge 0 1\nedge 1 2\n";
        assert!(matches!(parse_cell(bad), Err(Error::Parse { .. })));
    }

    #[test]
    fn axiom_violations_are_rejected() {
        assert!(matches!(parse_cell("vertices 2\nboundary 0 1\nedge 0 1\n"), Err(Error::InvalidCell(_))));
        assert!(matches!(parse_cell("vertices 4\nboundary 0 2\nedge 0 1\nedge 1 2\n"), Err(Error::InvalidCell(_))));
    }
}
