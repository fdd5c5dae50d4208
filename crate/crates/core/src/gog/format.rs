//! Text format for graphs of groups.
//!
//! ```text
//! gbs rank=2
//! vertex v0
//! vertex v1
//! edge e1 from=v0 to=v1 alpha=[[1,0],[0,1]] omega=[[2,0],[0,2]]
//! ```
//!
//! or the shorthand `hnn rank=2 phi=[[3,0],[0,3]]` for an ascending HNN
//! extension. `#` starts a comment.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::{Edge, GraphOfGroups};
use crate::error::ParseError;
use crate::lattice::IntMatrix;

fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn key_values<'a>(line: usize, tokens: &[&'a str], keys: &[&str]) -> Result<HashMap<String, &'a str>, ParseError> {
    let mut out = HashMap::new();
    for tok in tokens {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| ParseError::new(line, format!("expected key=value, found `{tok}`")))?;
        if !keys.contains(&k) {
            return Err(ParseError::new(line, format!("unknown key `{k}`")));
        }
        if out.insert(k.to_string(), v).is_some() {
            return Err(ParseError::new(line, format!("duplicate key `{k}`")));
        }
    }
    for k in keys {
        if !out.contains_key(*k) {
            return Err(ParseError::new(line, format!("missing `{k}=`")));
        }
    }
    Ok(out)
}

fn parse_rank(line: usize, s: &str) -> Result<usize, ParseError> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(ParseError::new(
            line,
            format!("rank must be a positive integer, found `{s}`"),
        )),
    }
}

fn parse_matrix(line: usize, s: &str) -> Result<IntMatrix, ParseError> {
    s.parse::<IntMatrix>().map_err(|e| ParseError::new(line, e.message))
}

/// Matrix literals contain no spaces once whitespace inside brackets is
/// dropped, so a line can be tokenized on whitespace after squeezing it.
fn squeeze_brackets(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut depth = 0usize;
    for c in s.chars() {
        match c {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            _ => {}
        }
        if depth > 0 && c.is_whitespace() {
            continue;
        }
        out.push(c);
    }
    out
}

impl FromStr for GraphOfGroups {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, ParseError> {
        let mut rank: Option<usize> = None;
        let mut vertices: Vec<String> = Vec::new();
        let mut edges: Vec<Edge> = Vec::new();
        let mut shorthand: Option<GraphOfGroups> = None;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = squeeze_brackets(raw.split('#').next().unwrap_or(""));
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let Some((&keyword, rest)) = tokens.split_first() else {
                continue;
            };
            if shorthand.is_some() {
                return Err(ParseError::new(line, "nothing may follow an `hnn` line"));
            }
            match keyword {
                "gbs" | "hnn" if rank.is_some() => {
                    return Err(ParseError::new(line, "duplicate header"));
                }
                "gbs" => {
                    let kv = key_values(line, rest, &["rank"])?;
                    rank = Some(parse_rank(line, kv["rank"])?);
                }
                "hnn" => {
                    let kv = key_values(line, rest, &["rank", "phi"])?;
                    let n = parse_rank(line, kv["rank"])?;
                    let phi = parse_matrix(line, kv["phi"])?;
                    if phi.rows() != n || phi.cols() != n {
                        return Err(ParseError::new(line, format!("phi must be {n}x{n}")));
                    }
                    rank = Some(n);
                    shorthand = Some(GraphOfGroups::ascending_hnn(phi));
                }
                _ if rank.is_none() => {
                    return Err(ParseError::new(
                        line,
                        "file must start with `gbs rank=N` or `hnn rank=N phi=...`",
                    ));
                }
                "vertex" => {
                    let [name] = rest else {
                        return Err(ParseError::new(line, "expected `vertex NAME`"));
                    };
                    if !is_identifier(name) {
                        return Err(ParseError::new(line, format!("bad vertex name `{name}`")));
                    }
                    if vertices.iter().any(|v| v == name) {
                        return Err(ParseError::new(line, format!("duplicate vertex `{name}`")));
                    }
                    vertices.push(name.to_string());
                }
                "edge" => {
                    let Some((&name, kvs)) = rest.split_first() else {
                        return Err(ParseError::new(
                            line,
                            "expected `edge NAME from=.. to=.. alpha=.. omega=..`",
                        ));
                    };
                    if !is_identifier(name) || name.contains('=') {
                        return Err(ParseError::new(line, format!("bad edge name `{name}`")));
                    }
                    if edges.iter().any(|e| e.name == name) {
                        return Err(ParseError::new(line, format!("duplicate edge `{name}`")));
                    }
                    let kv = key_values(line, kvs, &["from", "to", "alpha", "omega"])?;
                    let lookup = |v: &str| {
                        vertices
                            .iter()
                            .position(|x| x == v)
                            .ok_or_else(|| ParseError::new(line, format!("unknown vertex `{v}`")))
                    };
                    edges.push(Edge {
                        name: name.to_string(),
                        from: lookup(kv["from"])?,
                        to: lookup(kv["to"])?,
                        alpha: parse_matrix(line, kv["alpha"])?,
                        omega: parse_matrix(line, kv["omega"])?,
                    });
                }
                other => {
                    return Err(ParseError::new(line, format!("unknown keyword `{other}`")));
                }
            }
        }
        if let Some(g) = shorthand {
            return Ok(g);
        }
        let rank = rank.ok_or_else(|| ParseError::new(1, "empty input"))?;
        Ok(GraphOfGroups::new(rank, vertices, edges))
    }
}

impl fmt::Display for GraphOfGroups {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gbs rank={}", self.rank)?;
        for v in &self.vertices {
            writeln!(f, "vertex {v}")?;
        }
        for e in &self.edges {
            writeln!(
                f,
                "edge {} from={} to={} alpha={} omega={}",
                e.name, self.vertices[e.from], self.vertices[e.to], e.alpha, e.omega
            )?;
        }
        Ok(())
    }
}
