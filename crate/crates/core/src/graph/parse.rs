//! Graph descriptions: the family DSL and plain edge lists.
//!
//! Family terms, joined by `+` for disjoint union and optionally prefixed by a
//! multiplicity (`2K1,2` is `K1,2+K1,2`):
//!
//! | term       | graph                                   | numbering                     |
//! |------------|-----------------------------------------|-------------------------------|
//! | `Kn`       | complete graph                          | `0..n`                        |
//! | `Ka,b`     | complete bipartite; `K1,s` is a star    | side `a` first (centre first) |
//! | `Pd`       | path with `d` edges                     | along the path                |
//! | `Mk`       | matching with `k` edges                 | edge `i` is `(2i, 2i+1)`      |
//! | `SF(a,..)` | star forest with the given star sizes   | each star centre then leaves  |
//! | `T(d,h)`   | complete `d`-ary tree of height `h`     | level order, root `0`         |
//! | `Bh`       | complete binary tree of height `h`      | level order, root `0`         |
//!
//! Union operands are numbered left to right. The inline edge-list form is
//! `n; u v; u v; ...`.

use thiserror::Error;

use super::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at `{token}`: {reason}")]
pub struct ParseError {
    pub token: String,
    pub reason: String,
}

impl ParseError {
    fn new(token: impl Into<String>, reason: impl Into<String>) -> Self {
        ParseError {
            token: token.into(),
            reason: reason.into(),
        }
    }
}

const MAX_DSL_VERTICES: usize = 5_000_000;

/// Parses a DSL term or an inline edge list.
pub fn parse_graph(input: &str) -> Result<Graph, ParseError> {
    let input = input.trim();
    if input.is_empty() {
        return Err(ParseError::new("", "empty graph description"));
    }
    if input.contains(';') || input.contains('\n') {
        return parse_edge_list(&input.replace(';', "\n"));
    }
    let mut acc = Graph::empty(0);
    for term in split_union(input) {
        let g = parse_term(term.trim())?;
        if acc.n() + g.n() > MAX_DSL_VERTICES {
            return Err(ParseError::new(term, "graph too large"));
        }
        acc = acc.disjoint_union(&g);
    }
    Ok(acc)
}

/// Parses `n` followed by `u v` lines; `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty());
    let first = lines.next().ok_or_else(|| ParseError::new("", "missing vertex count"))?;
    let n = parse_num(first)?;
    let mut edges = Vec::new();
    for line in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(ParseError::new(line, "expected `u v`"));
        }
        edges.push((parse_num(parts[0])?, parse_num(parts[1])?));
    }
    Graph::new(n, edges).map_err(|e| match e {
        GraphError::SelfLoop(v) => ParseError::new(format!("{v} {v}"), e.to_string()),
        GraphError::DuplicateEdge(u, v) | GraphError::OutOfRange(u, v, _) => ParseError::new(format!("{u} {v}"), e.to_string()),
    })
}

/// Splits on `+` outside parentheses.
fn split_union(input: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in input.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&input[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&input[start..]);
    out
}

fn parse_num(tok: &str) -> Result<usize, ParseError> {
    let tok = tok.trim();
    tok.parse::<usize>().map_err(|_| ParseError::new(tok, "expected a non-negative integer"))
}

fn parse_args(term: &str, body: &str) -> Result<Vec<usize>, ParseError> {
    let inner = body
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .ok_or_else(|| ParseError::new(term, "expected a parenthesised argument list"))?;
    inner.split(',').map(parse_num).collect()
}

fn parse_term(term: &str) -> Result<Graph, ParseError> {
    if term.is_empty() {
        return Err(ParseError::new("+", "empty union operand"));
    }
    let digits = term.chars().take_while(char::is_ascii_digit).count();
    if digits > 0 {
        let mult = parse_num(&term[..digits])?;
        let g = parse_family(term, &term[digits..])?;
        let mut acc = Graph::empty(0);
        for _ in 0..mult {
            if acc.n() + g.n() > MAX_DSL_VERTICES {
                return Err(ParseError::new(term, "graph too large"));
            }
            acc = acc.disjoint_union(&g);
        }
        return Ok(acc);
    }
    parse_family(term, term)
}

fn parse_family(term: &str, body: &str) -> Result<Graph, ParseError> {
    let body = body.trim();
    if let Some(rest) = body.strip_prefix("SF") {
        let sizes = parse_args(term, rest)?;
        let mut acc = Graph::empty(0);
        for s in sizes {
            acc = acc.disjoint_union(&complete_bipartite(1, s));
        }
        return Ok(acc);
    }
    if let Some(rest) = body.strip_prefix('T') {
        let args = parse_args(term, rest)?;
        if args.len() != 2 {
            return Err(ParseError::new(term, "T takes (arity, height)"));
        }
        return complete_tree(args[0], args[1]).ok_or_else(|| ParseError::new(term, "tree too large or zero arity"));
    }
    let mut chars = body.chars();
    let head = chars.next().ok_or_else(|| ParseError::new(term, "empty term"))?;
    let rest = chars.as_str();
    match head {
        'K' => {
            if let Some((a, b)) = rest.split_once(',') {
                let (a, b) = (parse_num(a)?, parse_num(b)?);
                if a + b > MAX_DSL_VERTICES {
                    return Err(ParseError::new(term, "graph too large"));
                }
                Ok(complete_bipartite(a, b))
            } else {
                let n = parse_num(rest)?;
                if n > 5000 {
                    return Err(ParseError::new(term, "graph too large"));
                }
                Ok(Graph::complete(n))
            }
        }
        'P' => {
            let d = parse_num(rest)?;
            if d >= MAX_DSL_VERTICES {
                return Err(ParseError::new(term, "graph too large"));
            }
            Ok(Graph::new(d + 1, (0..d).map(|i| (i, i + 1))).expect("path is simple"))
        }
        'M' => {
            let k = parse_num(rest)?;
            if 2 * k > MAX_DSL_VERTICES {
                return Err(ParseError::new(term, "graph too large"));
            }
            Ok(Graph::new(2 * k, (0..k).map(|i| (2 * i, 2 * i + 1))).expect("matching is simple"))
        }
        'B' => {
            let h = parse_num(rest)?;
            complete_tree(2, h).ok_or_else(|| ParseError::new(term, "tree too large"))
        }
        _ => Err(ParseError::new(term, "unknown graph family")),
    }
}

fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a).flat_map(|u| (0..b).map(move |w| (u, a + w)));
    Graph::new(a + b, edges).expect("complete bipartite graph is simple")
}

/// `T(d,h)` in level order: the children of `v` are `d*v+1 ..= d*v+d`.
pub(crate) fn complete_tree(d: usize, h: usize) -> Option<Graph> {
    if d == 0 {
        return None;
    }
    let mut n: usize = 1;
    let mut level: usize = 1;
    for _ in 0..h {
        level = level.checked_mul(d)?;
        n = n.checked_add(level)?;
        if n > MAX_DSL_VERTICES {
            return None;
        }
    }
    Some(Graph::new(n, (1..n).map(|v| ((v - 1) / d, v))).expect("tree is simple"))
}
