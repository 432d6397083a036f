use std::fmt::Write as _;

use super::{GraphError, LabeledGraph, VertexLabel};

/// Reads the PACE 2020 `.gr` format (`p tdp n m`, then 1-based edges).
///
/// Comment lines of the form `c label <v> <role>` restore vertex labels;
/// other comments are ignored.
pub fn read_pace_gr(text: &str) -> Result<LabeledGraph, GraphError> {
    let mut graph: Option<LabeledGraph> = None;
    let mut declared = 0;
    let mut edges_read = 0;
    let mut pending_labels = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let malformed = || GraphError::MalformedLine { line: line_no, text: line.to_string() };
        match fields[0] {
            "c" => {
                if fields.get(1) == Some(&"label") {
                    if fields.len() != 4 {
                        return Err(malformed());
                    }
                    let v: usize = fields[2].parse().map_err(|_| malformed())?;
                    let label: VertexLabel = fields[3].parse()?;
                    pending_labels.push((line_no, v, label));
                }
            }
            "p" => {
                let bad = |reason: &str| GraphError::MalformedHeader { line: line_no, reason: reason.to_string() };
                if graph.is_some() {
                    return Err(bad("duplicate header"));
                }
                if fields.len() != 4 || fields[1] != "tdp" {
                    return Err(bad("expected \"p tdp <vertices> <edges>\""));
                }
                let n = fields[2].parse().map_err(|_| bad("vertex count is not a number"))?;
                declared = fields[3].parse().map_err(|_| bad("edge count is not a number"))?;
                graph = Some(LabeledGraph::new(n));
            }
            _ => {
                let g = graph.as_mut().ok_or_else(|| GraphError::MalformedHeader {
                    line: line_no,
                    reason: "edge before header".into(),
                })?;
                if fields.len() != 2 {
                    return Err(malformed());
                }
                let u: usize = fields[0].parse().map_err(|_| malformed())?;
                let v: usize = fields[1].parse().map_err(|_| malformed())?;
                let n = g.num_vertices();
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(GraphError::VertexOutOfRange { vertex: x, num_vertices: n });
                    }
                }
                g.add_edge(u - 1, v - 1).map_err(|e| match e {
                    GraphError::SelfLoop(_) => GraphError::SelfLoop(u),
                    other => other,
                })?;
                edges_read += 1;
            }
        }
    }

    let mut g = graph.ok_or_else(|| GraphError::MalformedHeader { line: 0, reason: "missing header".into() })?;
    if edges_read != declared {
        return Err(GraphError::EdgeCountMismatch { declared, found: edges_read });
    }
    for (_, v, label) in pending_labels {
        if v == 0 || v > g.num_vertices() {
            return Err(GraphError::VertexOutOfRange { vertex: v, num_vertices: g.num_vertices() });
        }
        g.set_label(v - 1, label);
    }
    Ok(g)
}

/// Writes `.gr` text. Non-plain labels go in `c label` lines after the header.
pub fn write_pace_gr(graph: &LabeledGraph) -> String {
    let mut out = String::new();
    writeln!(out, "p tdp {} {}", graph.num_vertices(), graph.num_edges()).unwrap();
    for (v, label) in graph.labels().iter().enumerate() {
        if *label != VertexLabel::Plain {
            writeln!(out, "c label {} {}", v + 1, label).unwrap();
        }
    }
    for (u, v) in graph.edges() {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}
