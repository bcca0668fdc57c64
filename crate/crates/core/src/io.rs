//! Text formats for graphs and monotone 2-CNF formulas.
//!
//! Both follow the DIMACS style: `c` lines are comments, a single `p` line
//! announces the instance size, and one line per edge or clause follows.
//! Vertex ids and variables are 1-based on disk; graphs use 0-based ids in
//! memory, so parsing shifts them down and serializing shifts them back up.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;
use crate::oracles::MonotoneFormula;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(line, format!("invalid {what} `{token}`")))
}

/// Parse a graph in `p edge` format.
///
/// ```text
/// c optional comments
/// p edge <n> <m>
/// e <u> <v>      (m lines, 1-based, u != v)
/// ```
pub fn parse_graph(input: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(ParseError::new(lineno, "second problem line"));
                }
                if tokens.next() != Some("edge") {
                    return Err(ParseError::new(lineno, "expected `p edge <n> <m>`"));
                }
                let n = parse_usize(lineno, tokens.next().unwrap_or(""), "vertex count")?;
                let m = parse_usize(lineno, tokens.next().unwrap_or(""), "edge count")?;
                if tokens.next().is_some() {
                    return Err(ParseError::new(lineno, "trailing tokens after problem line"));
                }
                header = Some((n, m));
            }
            Some("e") => {
                let Some((n, m)) = header else {
                    return Err(ParseError::new(lineno, "edge before problem line"));
                };
                let u = parse_usize(lineno, tokens.next().unwrap_or(""), "vertex id")?;
                let v = parse_usize(lineno, tokens.next().unwrap_or(""), "vertex id")?;
                if tokens.next().is_some() {
                    return Err(ParseError::new(lineno, "trailing tokens after edge"));
                }
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(ParseError::new(
                            lineno,
                            format!("vertex {x} out of range 1..={n}"),
                        ));
                    }
                }
                if u == v {
                    return Err(ParseError::new(lineno, format!("self-loop at vertex {u}")));
                }
                if edges.len() == m {
                    return Err(ParseError::new(lineno, format!("more than {m} edges")));
                }
                edges.push((u - 1, v - 1));
            }
            Some(other) => {
                return Err(ParseError::new(
                    lineno,
                    format!("unrecognized line type `{other}`"),
                ));
            }
            None => unreachable!("blank lines are skipped"),
        }
    }
    let Some((n, m)) = header else {
        return Err(ParseError::new(last_line.max(1), "missing problem line"));
    };
    if edges.len() != m {
        return Err(ParseError::new(
            last_line.max(1),
            format!("expected {m} edges, found {}", edges.len()),
        ));
    }
    Graph::new(n, edges).map_err(|e| ParseError::new(last_line.max(1), e.to_string()))
}

/// Serialize a graph in `p edge` format with edges in lexicographic order.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count());
    for e in g.edges() {
        let _ = writeln!(out, "e {} {}", e.u() + 1, e.v() + 1);
    }
    out
}

/// Parse a monotone 2-CNF formula in `p cnf` format.
///
/// ```text
/// c optional comments
/// p cnf <vars> <clauses>
/// <u> <v> 0       (one line per clause, both literals positive)
/// ```
///
/// Negative literals, repeated literals within a clause, and clauses with
/// other than two literals are errors; duplicate clauses are allowed.
pub fn parse_formula(input: &str) -> Result<MonotoneFormula, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<(usize, usize)> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p ") {
            if header.is_some() {
                return Err(ParseError::new(lineno, "second problem line"));
            }
            let mut tokens = rest.split_whitespace();
            if tokens.next() != Some("cnf") {
                return Err(ParseError::new(lineno, "expected `p cnf <vars> <clauses>`"));
            }
            let vars = parse_usize(lineno, tokens.next().unwrap_or(""), "variable count")?;
            let ncl = parse_usize(lineno, tokens.next().unwrap_or(""), "clause count")?;
            if tokens.next().is_some() {
                return Err(ParseError::new(lineno, "trailing tokens after problem line"));
            }
            header = Some((vars, ncl));
            continue;
        }
        let Some((vars, ncl)) = header else {
            return Err(ParseError::new(lineno, "clause before problem line"));
        };
        let mut lits = Vec::new();
        for token in line.split_whitespace() {
            let lit: i64 = token
                .parse()
                .map_err(|_| ParseError::new(lineno, format!("invalid literal `{token}`")))?;
            if lit < 0 {
                return Err(ParseError::new(
                    lineno,
                    format!("negative literal {lit}; formulas must be monotone"),
                ));
            }
            lits.push(lit as usize);
        }
        if lits.last() != Some(&0) {
            return Err(ParseError::new(lineno, "clause line must end with 0"));
        }
        lits.pop();
        if lits.contains(&0) {
            return Err(ParseError::new(lineno, "literal 0 inside clause"));
        }
        let [u, v] = lits[..] else {
            return Err(ParseError::new(
                lineno,
                format!("clause has {} literals, expected 2", lits.len()),
            ));
        };
        if u == v {
            return Err(ParseError::new(
                lineno,
                format!("clause repeats variable {u}"),
            ));
        }
        for x in [u, v] {
            if x > vars {
                return Err(ParseError::new(
                    lineno,
                    format!("variable {x} out of range 1..={vars}"),
                ));
            }
        }
        if clauses.len() == ncl {
            return Err(ParseError::new(lineno, format!("more than {ncl} clauses")));
        }
        clauses.push((u, v));
    }
    let Some((vars, ncl)) = header else {
        return Err(ParseError::new(last_line.max(1), "missing problem line"));
    };
    if clauses.len() != ncl {
        return Err(ParseError::new(
            last_line.max(1),
            format!("expected {ncl} clauses, found {}", clauses.len()),
        ));
    }
    MonotoneFormula::new(vars, clauses).map_err(|e| ParseError::new(last_line.max(1), e.to_string()))
}

/// Serialize a formula in `p cnf` format, keeping clause order.
pub fn serialize_formula(f: &MonotoneFormula) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p cnf {} {}", f.num_vars(), f.clauses().len());
    for &(u, v) in f.clauses() {
        let _ = writeln!(out, "{u} {v} 0");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    #[test]
    fn graph_roundtrip() {
        let text = "c triangle plus pendant\np edge 4 4\ne 3 1\ne 1 2\ne 2 3\ne 3 4\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(
            g.edges(),
            [Edge::new(0, 1), Edge::new(0, 2), Edge::new(1, 2), Edge::new(2, 3)]
                .map(|e| e.unwrap())
        );
        let round = serialize_graph(&g);
        assert_eq!(
            round,
            "p edge 4 4\ne 1 2\ne 1 3\ne 2 3\ne 3 4\n"
        );
        assert_eq!(parse_graph(&round).unwrap(), g);
    }

    #[test]
    fn graph_parse_errors_carry_line_numbers() {
        let e = parse_graph("p edge 2 1\ne 1 3\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("out of range"));

        let e = parse_graph("p edge 2 1\ne 1 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("self-loop"));

        let e = parse_graph("e 1 2\n").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(e.message.contains("before problem line"));

        let e = parse_graph("p edge 3 2\ne 1 2\n").unwrap_err();
        assert!(e.message.contains("expected 2 edges, found 1"));

        let e = parse_graph("p edge 3 1\ne 1 2\ne 2 3\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("more than 1"));

        let e = parse_graph("p edge 2 2\ne 1 2\ne 2 1\n").unwrap_err();
        assert!(e.message.contains("duplicate edge"));

        assert!(parse_graph("").unwrap_err().message.contains("missing problem"));
    }

    #[test]
    fn empty_graph_roundtrip() {
        let g = parse_graph("p edge 1 0\n").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(serialize_graph(&g), "p edge 1 0\n");
    }

    #[test]
    fn formula_roundtrip() {
        let text = "c two clauses, one repeated\np cnf 3 3\n2 1 0\n1 3 0\n1 2 0\n";
        let f = parse_formula(text).unwrap();
        assert_eq!(f.num_vars(), 3);
        assert_eq!(f.clauses(), &[(1, 2), (1, 3), (1, 2)]);
        let round = serialize_formula(&f);
        assert_eq!(round, "p cnf 3 3\n1 2 0\n1 3 0\n1 2 0\n");
        assert_eq!(parse_formula(&round).unwrap(), f);
    }

    #[test]
    fn formula_parse_errors() {
        let e = parse_formula("p cnf 2 1\n1 -2 0\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("monotone"));

        let e = parse_formula("p cnf 2 1\n1 1 0\n").unwrap_err();
        assert!(e.message.contains("repeats variable 1"));

        let e = parse_formula("p cnf 2 1\n1 3 0\n").unwrap_err();
        assert!(e.message.contains("out of range"));

        let e = parse_formula("p cnf 3 1\n1 2 3 0\n").unwrap_err();
        assert!(e.message.contains("3 literals"));

        let e = parse_formula("p cnf 2 1\n1 2\n").unwrap_err();
        assert!(e.message.contains("end with 0"));
    }
}
