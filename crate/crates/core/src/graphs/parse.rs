use super::{Edge, StructureGraph};
use crate::error::{Error, Result};

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses the line-oriented graph format:
///
/// ```text
/// vertices 3
/// edge B 0 1
/// edge C 1 2
/// rotation 1: C B
/// outer_face: B,C
/// ```
///
/// `#` starts a comment. Rotation lines are optional, but if any is given
/// every vertex with edges needs one.
pub fn parse_graph(text: &str) -> Result<StructureGraph> {
    let mut vertex_count: Option<usize> = None;
    let mut edges: Vec<Edge> = Vec::new();
    let mut rotation_lines: Vec<(usize, usize, Vec<String>)> = Vec::new();
    let mut outer: Option<Vec<String>> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = match line.find(|c: char| c.is_whitespace() || c == ':') {
            Some(p) => (&line[..p], line[p..].trim_start()),
            None => (line, ""),
        };
        match keyword {
            "vertices" => {
                if vertex_count.is_some() {
                    return Err(perr(line_no, "repeated `vertices` header"));
                }
                let n = rest.parse::<usize>().map_err(|_| perr(line_no, "expected a vertex count"))?;
                vertex_count = Some(n);
            }
            "edge" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(perr(line_no, "expected `edge LABEL a b`"));
                }
                let a = parse_vertex(parts[1], line_no)?;
                let b = parse_vertex(parts[2], line_no)?;
                edges.push(Edge { a, b, label: parts[0].to_string() });
            }
            "rotation" => {
                let (v, labels) = rest.split_once(':').ok_or_else(|| perr(line_no, "expected `rotation v: LABEL ...`"))?;
                let v = parse_vertex(v.trim(), line_no)?;
                let labels = labels.split_whitespace().map(str::to_string).collect();
                rotation_lines.push((line_no, v, labels));
            }
            "outer_face" => {
                let body = rest.strip_prefix(':').ok_or_else(|| perr(line_no, "expected `outer_face: ...`"))?;
                let labels: Vec<String> = body.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(str::to_string).collect();
                if labels.is_empty() {
                    return Err(perr(line_no, "empty outer face"));
                }
                outer = Some(labels);
            }
            other => return Err(perr(line_no, format!("unknown keyword `{other}`"))),
        }
    }

    let n = vertex_count.ok_or_else(|| perr(1, "missing `vertices` header"))?;
    for (i, e) in edges.iter().enumerate() {
        if e.a >= n || e.b >= n {
            return Err(perr(0, format!("edge #{} `{}` uses a vertex out of range", i, e.label)));
        }
    }

    let rotation = if rotation_lines.is_empty() {
        None
    } else {
        let mut rot: Vec<Option<Vec<usize>>> = vec![None; n];
        for (line_no, v, labels) in rotation_lines {
            if v >= n {
                return Err(perr(line_no, format!("vertex {v} out of range")));
            }
            if rot[v].is_some() {
                return Err(perr(line_no, format!("repeated rotation for vertex {v}")));
            }
            let mut order = Vec::with_capacity(labels.len());
            for l in &labels {
                let e = edges.iter().position(|e| &e.label == l).ok_or_else(|| perr(line_no, format!("unknown edge label `{l}`")))?;
                order.push(e);
            }
            rot[v] = Some(order);
        }
        Some(rot.into_iter().map(Option::unwrap_or_default).collect())
    };

    StructureGraph::new(n, edges, rotation, outer)
}

fn parse_vertex(s: &str, line: usize) -> Result<usize> {
    s.parse::<usize>().map_err(|_| perr(line, format!("bad vertex id `{s}`")))
}
