//! Edge-list and DOT-subset graph formats, plus table rendering.
//!
//! Edge list: one `u v` pair per line, a lone label declares an isolated
//! vertex, `#` starts a comment. DOT: `graph [name] { ... }` with `a -- b`
//! chains and bare node statements; no attributes.

use std::collections::HashMap;
use std::fmt::Write;

use super::graph::FiniteGraph;
use super::solve::EtaTable;
use super::GameError;

#[derive(Default)]
struct Builder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize, usize)>,
}

impl Builder {
    fn vertex(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        i
    }

    fn finish(self) -> Result<FiniteGraph, GameError> {
        let mut g = FiniteGraph::with_labels(self.labels);
        for (line, u, v) in self.edges {
            if u == v {
                return Err(GameError::Parse {
                    line,
                    message: format!("self-loop at {}", g.label(u)),
                });
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }
}

/// Parses either format, choosing DOT when the first token is `graph` or `strict`.
pub fn parse_graph(text: &str) -> Result<FiniteGraph, GameError> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty() && !l.starts_with("//"));
    match first {
        Some(l) if l.starts_with("graph") || l.starts_with("strict") || l.starts_with("digraph") => {
            parse_dot(text)
        }
        _ => parse_edge_list(text),
    }
}

pub fn parse_edge_list(text: &str) -> Result<FiniteGraph, GameError> {
    let mut b = Builder::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match tokens.as_slice() {
            [a] => {
                b.vertex(a);
            }
            [a, c] => {
                let u = b.vertex(a);
                let v = b.vertex(c);
                b.edges.push((line, u, v));
            }
            _ => {
                return Err(GameError::Parse {
                    line,
                    message: format!("expected `u v` or a single label, found {} tokens", tokens.len()),
                })
            }
        }
    }
    b.finish()
}

pub fn parse_dot(text: &str) -> Result<FiniteGraph, GameError> {
    // Strip comments but keep line structure so errors carry line numbers.
    let mut stmts: Vec<(usize, String)> = Vec::new();
    let mut opened = false;
    let mut closed = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut body = raw;
        for marker in ["//", "#"] {
            if let Some(p) = body.find(marker) {
                body = &body[..p];
            }
        }
        let mut body = body.trim().to_string();
        if !opened {
            if body.is_empty() {
                continue;
            }
            if body.starts_with("digraph") {
                return Err(GameError::Parse { line, message: "directed graphs are not supported".into() });
            }
            let header = body.strip_prefix("strict").map(str::trim_start).unwrap_or(&body);
            if !header.starts_with("graph") {
                return Err(GameError::Parse { line, message: "expected `graph {`".into() });
            }
            let Some(p) = body.find('{') else {
                return Err(GameError::Parse { line, message: "expected `{` on the header line".into() });
            };
            opened = true;
            body = body[p + 1..].to_string();
        }
        if let Some(p) = body.find('}') {
            if !body[p + 1..].trim().is_empty() {
                return Err(GameError::Parse { line, message: "text after closing `}`".into() });
            }
            body.truncate(p);
            closed = true;
        }
        for s in body.split(';') {
            let s = s.trim();
            if !s.is_empty() {
                stmts.push((line, s.to_string()));
            }
        }
        if closed {
            break;
        }
    }
    if !opened {
        return Err(GameError::Parse { line: 1, message: "empty DOT input".into() });
    }
    if !closed {
        return Err(GameError::Parse { line: text.lines().count().max(1), message: "missing `}`".into() });
    }

    let mut b = Builder::default();
    for (line, s) in stmts {
        if s.contains('[') || s.contains('=') {
            return Err(GameError::Parse { line, message: "attributes are not supported".into() });
        }
        if s.contains("->") {
            return Err(GameError::Parse { line, message: "directed edge in undirected graph".into() });
        }
        let ids: Vec<String> = s.split("--").map(|p| unquote(p.trim())).collect();
        for id in &ids {
            if id.is_empty() || id.split_whitespace().count() != 1 {
                return Err(GameError::Parse { line, message: format!("bad node id in {s:?}") });
            }
        }
        let vs: Vec<usize> = ids.iter().map(|id| b.vertex(id)).collect();
        for w in vs.windows(2) {
            b.edges.push((line, w[0], w[1]));
        }
    }
    b.finish()
}

fn unquote(s: &str) -> String {
    s.strip_prefix('"').and_then(|t| t.strip_suffix('"')).unwrap_or(s).to_string()
}

pub fn write_edge_list(g: &FiniteGraph) -> String {
    let mut out = String::new();
    let mut touched = vec![false; g.vertex_count()];
    for (u, v) in g.edges() {
        touched[u] = true;
        touched[v] = true;
        let _ = writeln!(out, "{} {}", g.label(u), g.label(v));
    }
    for (v, t) in touched.iter().enumerate() {
        if !t {
            let _ = writeln!(out, "{}", g.label(v));
        }
    }
    out
}

pub fn write_dot(g: &FiniteGraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "  \"{}\";", g.label(v));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  \"{}\" -- \"{}\";", g.label(u), g.label(v));
    }
    out.push_str("}\n");
    out
}

/// Human-readable matrix: rows are robber starts, columns cop starts.
pub fn render_table(t: &EtaTable) -> String {
    let cell = |s: String| if s == "ROBBER_WINS" { "R".to_string() } else { s };
    let width = t
        .labels
        .iter()
        .map(|l| l.len())
        .chain(std::iter::once("eta(v)".len()))
        .max()
        .unwrap_or(3);
    let mut out = String::new();
    let _ = write!(out, "{:>width$} |", "r\\c");
    for l in &t.labels {
        let _ = write!(out, " {l:>width$}");
    }
    out.push('\n');
    let _ = writeln!(out, "{}", "-".repeat((width + 1) * (t.labels.len() + 1) + 1));
    for (u, row) in t.values.iter().enumerate() {
        let _ = write!(out, "{:>width$} |", t.labels[u]);
        for v in row {
            let _ = write!(out, " {:>width$}", cell(v.to_string()));
        }
        out.push('\n');
    }
    let _ = write!(out, "{:>width$} |", "eta(v)");
    for v in &t.eta_per_cop_start {
        let _ = write!(out, " {:>width$}", cell(v.to_string()));
    }
    out.push('\n');
    let _ = writeln!(out, "eta(G)={}, rho(G)={}", t.capture_time, t.max_capture_time);
    out.push_str("(R = robber wins)\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;

    #[test]
    fn edge_list_round_trip() {
        let g = gen::path(4);
        let text = write_edge_list(&g);
        assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn edge_list_comments_and_isolated() {
        let g = parse_graph("# a graph\na b  # edge\n\nc\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.label(2), "c");
    }

    #[test]
    fn edge_list_errors_carry_line() {
        let err = parse_edge_list("a b\na b c\n").unwrap_err();
        assert!(matches!(err, GameError::Parse { line: 2, .. }));
        let err = parse_edge_list("a b\n\nx x\n").unwrap_err();
        assert!(matches!(err, GameError::Parse { line: 3, .. }));
    }

    #[test]
    fn dot_round_trip_and_chains() {
        let g = gen::cycle(5);
        assert_eq!(parse_graph(&write_dot(&g)).unwrap(), g);
        let h = parse_dot("graph {\n a -- b -- c; d\n}\n").unwrap();
        assert_eq!(h.vertex_count(), 4);
        assert_eq!(h.edge_count(), 2);
    }

    #[test]
    fn dot_rejects_attributes_and_direction() {
        assert!(matches!(
            parse_dot("graph {\n a -- b [color=red];\n}"),
            Err(GameError::Parse { line: 2, .. })
        ));
        assert!(parse_graph("digraph { a -> b }").is_err());
        assert!(parse_dot("graph {\n a -- b;\n").is_err());
    }
}
