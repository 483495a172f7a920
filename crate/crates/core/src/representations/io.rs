//! Text formats for binary matrices, graphs and uniform specs.
//!
//! Binary matrix: a line `r n`, then `r` lines of `n` space-separated bits. An
//! optional `# names: a b c` line names the columns; other `#` lines are comments.
//!
//! Graph: a line `V E`, then `E` lines `u v name` with 0-based vertices.
//!
//! Uniform: `n,r`.

use crate::error::{MatroidError, Result};
use crate::ground::GroundSet;
use crate::representations::{BinaryRep, GraphRep, UniformRep};

const NAMES_HEADER: &str = "# names:";

fn parse_err(line: usize, msg: impl Into<String>) -> MatroidError {
    MatroidError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Non-comment lines with their 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_pair(line: usize, s: &str) -> Result<(usize, usize)> {
    let nums: Vec<&str> = s.split_whitespace().collect();
    if nums.len() != 2 {
        return Err(parse_err(line, format!("expected two integers, got {s:?}")));
    }
    let a = nums[0]
        .parse()
        .map_err(|_| parse_err(line, format!("not an integer: {}", nums[0])))?;
    let b = nums[1]
        .parse()
        .map_err(|_| parse_err(line, format!("not an integer: {}", nums[1])))?;
    Ok((a, b))
}

pub fn parse_binary(text: &str) -> Result<(BinaryRep, GroundSet)> {
    let names: Option<Vec<String>> = text
        .lines()
        .map(str::trim)
        .find_map(|l| l.strip_prefix(NAMES_HEADER))
        .map(|rest| rest.split_whitespace().map(String::from).collect());
    let mut lines = data_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "empty matrix file"))?;
    let (r, n) = parse_pair(hl, header)?;
    let mut rows = Vec::with_capacity(r);
    for _ in 0..r {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| parse_err(hl, format!("expected {r} matrix rows")))?;
        let row: Vec<u8> = l
            .split_whitespace()
            .map(|t| match t {
                "0" => Ok(0),
                "1" => Ok(1),
                _ => Err(parse_err(ln, format!("not a bit: {t}"))),
            })
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(parse_err(ln, format!("row has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "trailing data after the matrix"));
    }
    let rep = if r == 0 {
        BinaryRep::zeros(0, n)
    } else {
        BinaryRep::from_rows(&rows)?
    };
    let ground = match names {
        Some(names) if names.len() != n => {
            return Err(parse_err(1, format!("{} names for {n} columns", names.len())))
        }
        Some(names) => GroundSet::new(names)?,
        None => GroundSet::numbered(n)?,
    };
    Ok((rep, ground))
}

pub fn write_binary(rep: &BinaryRep, ground: &GroundSet) -> String {
    let mut out = String::new();
    let default = GroundSet::numbered(ground.len()).ok();
    if default.as_ref() != Some(ground) {
        out.push_str(NAMES_HEADER);
        for name in ground.names() {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
    }
    out.push_str(&format!("{} {}\n", rep.rows(), rep.cols()));
    for i in 0..rep.rows() {
        let row: Vec<&str> = (0..rep.cols())
            .map(|j| if rep.entry(i, j) { "1" } else { "0" })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_graph(text: &str) -> Result<GraphRep> {
    let mut lines = data_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "empty graph file"))?;
    let (v, e) = parse_pair(hl, header)?;
    let mut edges = Vec::with_capacity(e);
    for _ in 0..e {
        let (ln, l) = lines
            .next()
            .ok_or_else(|| parse_err(hl, format!("expected {e} edge lines")))?;
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(parse_err(ln, format!("expected `u v name`, got {l:?}")));
        }
        let (a, b) = parse_pair(ln, &format!("{} {}", parts[0], parts[1]))?;
        edges.push((a, b, parts[2].to_string()));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "trailing data after the edge list"));
    }
    GraphRep::new(v, edges).map_err(|e| match e {
        MatroidError::Domain(msg) => parse_err(hl, msg),
        other => other,
    })
}

pub fn write_graph(g: &GraphRep) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edges().len());
    for (&(u, v), name) in g.edges().iter().zip(g.names()) {
        out.push_str(&format!("{u} {v} {name}\n"));
    }
    out
}

/// Parses `n,r` (whitespace and `#` comment lines allowed).
pub fn parse_uniform(text: &str) -> Result<UniformRep> {
    let (ln, line) = data_lines(text)
        .next()
        .ok_or_else(|| parse_err(1, "empty uniform spec"))?;
    let (n, r) = line
        .split_once(',')
        .ok_or_else(|| parse_err(ln, format!("expected `n,r`, got {line:?}")))?;
    let n: usize = n
        .trim()
        .parse()
        .map_err(|_| parse_err(ln, format!("not an integer: {n}")))?;
    let r: usize = r
        .trim()
        .parse()
        .map_err(|_| parse_err(ln, format!("not an integer: {r}")))?;
    UniformRep::new(n, r).map_err(|e| match e {
        MatroidError::Domain(msg) => parse_err(ln, msg),
        other => other,
    })
}

pub fn write_uniform(u: &UniformRep) -> String {
    format!("{},{}\n", u.n(), u.r())
}
