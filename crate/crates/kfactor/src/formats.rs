//! Text formats. Vertices and colors are 1-based on disk.
//!
//! Blank lines and `#` comments are ignored by every reader.

use std::fmt::Write as _;

use kfactor_core::exchange::ExchangeList;
use kfactor_core::matching::GallaiEdmondsDecomposition;
use kfactor_core::packer::{FactorPack, PackTrace, TraceStep};
use kfactor_core::{DegreeSequence, EdgeColoring, Matching, SimpleGraph};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unexpected end of input: {0}")]
    Eof(String),
    #[error(transparent)]
    Core(#[from] kfactor_core::Error),
}

impl FormatError {
    fn at(line: usize, msg: impl Into<String>) -> Self {
        FormatError::Syntax {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, FormatError>;

/// Non-empty, non-comment lines with their 1-based line numbers.
pub struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
}

impl<'a> Lines<'a> {
    pub fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)> + 'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
                .filter(|(_, l)| !l.is_empty()),
        );
        Self {
            inner: it.peekable(),
        }
    }

    pub fn next_line(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.inner
            .next()
            .ok_or_else(|| FormatError::Eof(format!("expected {what}")))
    }

    pub fn peek(&mut self) -> Option<(usize, &'a str)> {
        self.inner.peek().copied()
    }

    pub fn is_done(&mut self) -> bool {
        self.inner.peek().is_none()
    }
}

fn numbers(line: usize, text: &str) -> Result<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| FormatError::at(line, format!("'{t}' is not a non-negative integer")))
        })
        .collect()
}

fn vertex(line: usize, x: usize, n: usize) -> Result<usize> {
    if x == 0 || x > n {
        return Err(FormatError::at(line, format!("vertex {x} outside 1..={n}")));
    }
    Ok(x - 1)
}

/// A degree sequence, comma- or whitespace-separated, in any order.
///
/// Entries are sorted non-increasingly; `order[i]` is the input position of
/// sorted vertex `i`.
pub fn parse_sequence(text: &str) -> Result<(DegreeSequence, Vec<usize>)> {
    let mut lines = Lines::new(text);
    let (ln, l) = lines.next_line("a degree sequence")?;
    if let Some((extra, _)) = lines.peek() {
        return Err(FormatError::at(extra, "a sequence takes a single line"));
    }
    let v = numbers(ln, l)?;
    let c = DegreeSequence::canonicalize(&v).map_err(|e| FormatError::at(ln, e.to_string()))?;
    Ok((c.seq, c.order))
}

pub fn write_sequence(s: &DegreeSequence) -> String {
    let v: Vec<String> = s.values().iter().map(|d| d.to_string()).collect();
    v.join(",")
}

fn read_edge(lines: &mut Lines<'_>, n: usize) -> Result<(usize, usize, usize)> {
    let (ln, l) = lines.next_line("an edge line")?;
    let v = numbers(ln, l)?;
    if v.len() != 2 {
        return Err(FormatError::at(ln, "expected 'u v'"));
    }
    let (u, w) = (vertex(ln, v[0], n)?, vertex(ln, v[1], n)?);
    if u >= w {
        return Err(FormatError::at(ln, "edges need u < v"));
    }
    Ok((ln, u, w))
}

/// Graph block: `n m` then `m` lines `u v` with `u < v`.
pub fn read_graph(lines: &mut Lines<'_>) -> Result<SimpleGraph> {
    let (ln, l) = lines.next_line("'n m'")?;
    let h = numbers(ln, l)?;
    if h.len() != 2 {
        return Err(FormatError::at(ln, "expected 'n m'"));
    }
    let (n, m) = (h[0], h[1]);
    if m > n * n.saturating_sub(1) / 2 {
        return Err(FormatError::at(
            ln,
            format!("{m} edges do not fit on {n} vertices"),
        ));
    }
    let mut g = SimpleGraph::new(n);
    for _ in 0..m {
        let (ln, u, v) = read_edge(lines, n)?;
        if !g.add_edge(u, v) {
            return Err(FormatError::at(
                ln,
                format!("duplicate edge {} {}", u + 1, v + 1),
            ));
        }
    }
    Ok(g)
}

pub fn parse_graph(text: &str) -> Result<SimpleGraph> {
    let mut lines = Lines::new(text);
    let g = read_graph(&mut lines)?;
    trailing(&mut lines)?;
    Ok(g)
}

fn trailing(lines: &mut Lines<'_>) -> Result<()> {
    match lines.peek() {
        Some((ln, _)) => Err(FormatError::at(ln, "unexpected trailing content")),
        None => Ok(()),
    }
}

pub fn write_graph(g: &SimpleGraph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{} {}", u + 1, v + 1);
    }
    s
}

/// Coloring: `n t`, then one `u v c` line per edge of `K_n`.
pub fn parse_coloring(text: &str) -> Result<EdgeColoring> {
    let mut lines = Lines::new(text);
    let (ln, l) = lines.next_line("'n t'")?;
    let h = numbers(ln, l)?;
    if h.len() != 2 || h[1] == 0 {
        return Err(FormatError::at(ln, "expected 'n t' with t >= 1"));
    }
    let (n, t) = (h[0], h[1]);
    let mut c = EdgeColoring::uniform(n, t);
    let mut seen = vec![false; n * n];
    for _ in 0..n * n.saturating_sub(1) / 2 {
        let (ln, l) = lines.next_line("a 'u v c' line")?;
        let v = numbers(ln, l)?;
        if v.len() != 3 {
            return Err(FormatError::at(ln, "expected 'u v c'"));
        }
        let (a, b) = (vertex(ln, v[0], n)?, vertex(ln, v[1], n)?);
        if a == b {
            return Err(FormatError::at(ln, "loop"));
        }
        if v[2] == 0 || v[2] > t {
            return Err(FormatError::at(
                ln,
                format!("color {} outside 1..={t}", v[2]),
            ));
        }
        let (a, b) = (a.min(b), a.max(b));
        if seen[a * n + b] {
            return Err(FormatError::at(
                ln,
                format!("pair {} {} listed twice", a + 1, b + 1),
            ));
        }
        seen[a * n + b] = true;
        c.set_color(a, b, v[2] - 1);
    }
    trailing(&mut lines)?;
    Ok(c)
}

pub fn write_coloring(c: &EdgeColoring) -> String {
    let n = c.n();
    let mut s = format!("{} {}\n", n, c.t());
    for u in 0..n {
        for v in u + 1..n {
            let _ = writeln!(s, "{} {} {}", u + 1, v + 1, c.color(u, v) + 1);
        }
    }
    s
}

/// Exchange list: `v u x_0 ... x_{l-1}` on one line.
pub fn parse_exchange(text: &str, n: usize) -> Result<ExchangeList> {
    let mut lines = Lines::new(text);
    let (ln, l) = lines.next_line("an exchange line")?;
    let l = exchange_from(ln, l, n)?;
    trailing(&mut lines)?;
    Ok(l)
}

fn exchange_from(ln: usize, text: &str, n: usize) -> Result<ExchangeList> {
    let v = numbers(ln, text)?;
    if v.len() < 3 {
        return Err(FormatError::at(ln, "expected 'v u x_0 ...'"));
    }
    let ids: Vec<usize> = v.iter().map(|&x| vertex(ln, x, n)).collect::<Result<_>>()?;
    Ok(ExchangeList::new(ids[0], ids[1], ids[2..].to_vec()))
}

pub fn write_decomposition(d: &GallaiEdmondsDecomposition) -> String {
    let list = |v: &[usize]| {
        v.iter()
            .map(|x| (x + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut s = String::new();
    let _ = writeln!(s, "A: {}", list(&d.a));
    let _ = writeln!(s, "C: {}", list(&d.c));
    let _ = writeln!(s, "D: {}", list(&d.d));
    for comp in &d.components_of_d {
        let _ = writeln!(s, "component: {}", list(comp));
    }
    s
}

/// A pack as read back from disk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackFile {
    pub method: Option<String>,
    pub g: SimpleGraph,
    pub one_factors: Vec<Matching>,
    pub leftover: Option<SimpleGraph>,
    pub notes: Vec<String>,
    pub trace: Option<Vec<TraceStep>>,
}

impl PackFile {
    /// Checks the pack against per-vertex degrees: `G` has them, the
    /// matchings are perfect, disjoint and inside `G`, and the leftover is
    /// inside `G`, regular, and disjoint from the matchings.
    pub fn validate(&self, degrees: &[usize]) -> std::result::Result<(), String> {
        let n = self.g.n();
        if degrees.len() != n {
            return Err(format!("{} degrees for {n} vertices", degrees.len()));
        }
        if let Some(v) = (0..n).find(|&v| self.g.degree(v) != degrees[v]) {
            return Err(format!(
                "vertex {} has degree {} not {}",
                v + 1,
                self.g.degree(v),
                degrees[v]
            ));
        }
        let mut used = SimpleGraph::new(n);
        for (i, m) in self.one_factors.iter().enumerate() {
            if !m.is_perfect() {
                return Err(format!("matching {} is not perfect", i + 1));
            }
            for (u, v) in m.edges() {
                if !self.g.has_edge(u, v) || !used.add_edge(u, v) {
                    return Err(format!(
                        "matching {} edge {} {} is misplaced",
                        i + 1,
                        u + 1,
                        v + 1
                    ));
                }
            }
        }
        if let Some(l) = &self.leftover {
            if l.n() > 0 && !l.is_k_regular(l.degree(0)) {
                return Err("leftover is not regular".into());
            }
            if let Some((u, v)) = l
                .edges()
                .find(|&(u, v)| !self.g.has_edge(u, v) || used.has_edge(u, v))
            {
                return Err(format!("leftover edge {} {} is misplaced", u + 1, v + 1));
            }
        }
        Ok(())
    }
}

/// Pack file sections, in order:
///
/// ```text
/// method eq1            (or: method none)
/// note <free text>      (any number)
/// graph                 followed by a graph block
/// matching <size>       followed by that many 'u v' lines, once per matching
/// leftover              optional, followed by a graph block
/// trace <steps>         optional, then 'exchange v u x..' or 'refine c u v u v ..' lines
/// ```
pub fn write_pack(
    pack: &FactorPack,
    method: Option<&str>,
    notes: &[String],
    with_trace: bool,
) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "method {}", method.unwrap_or("none"));
    for n in notes {
        let _ = writeln!(s, "note {}", n.replace('\n', " "));
    }
    s.push_str("graph\n");
    s.push_str(&write_graph(&pack.g));
    for m in &pack.one_factors {
        let _ = writeln!(s, "matching {}", m.size());
        for (u, v) in m.edges() {
            let _ = writeln!(s, "{} {}", u + 1, v + 1);
        }
    }
    if let Some(l) = &pack.leftover {
        s.push_str("leftover\n");
        s.push_str(&write_graph(l));
    }
    if with_trace {
        s.push_str(&write_trace(&pack.trace));
    }
    s
}

pub fn write_trace(t: &PackTrace) -> String {
    let mut s = format!("trace {}\n", t.steps.len());
    for step in &t.steps {
        match step {
            TraceStep::Exchange(l) => {
                let _ = writeln!(s, "exchange {l}");
            }
            TraceStep::Refine { from, edges } => {
                let _ = write!(s, "refine {}", from + 1);
                for (u, v) in edges {
                    let _ = write!(s, " {} {}", u + 1, v + 1);
                }
                s.push('\n');
            }
        }
    }
    s
}

pub fn parse_pack(text: &str) -> Result<PackFile> {
    let mut lines = Lines::new(text);
    let (ln, l) = lines.next_line("'method ...'")?;
    let method = match l.strip_prefix("method") {
        Some(m) if m.starts_with(' ') => match m.trim() {
            "none" => None,
            m => Some(m.to_string()),
        },
        _ => return Err(FormatError::at(ln, "expected 'method <tag>'")),
    };
    let mut notes = Vec::new();
    loop {
        let (ln, l) = lines.next_line("'graph'")?;
        if let Some(n) = l.strip_prefix("note ") {
            notes.push(n.trim().to_string());
        } else if l == "graph" {
            break;
        } else {
            return Err(FormatError::at(ln, "expected 'note ...' or 'graph'"));
        }
    }
    let g = read_graph(&mut lines)?;
    let n = g.n();
    let mut one_factors = Vec::new();
    let mut leftover = None;
    let mut trace = None;
    while let Some((ln, l)) = lines.peek() {
        let mut words = l.split_whitespace();
        let head = words.next().unwrap_or("");
        let arg = words.next();
        lines.next_line("section")?;
        match (head, arg) {
            ("matching", Some(size)) if leftover.is_none() && trace.is_none() => {
                let size = numbers(ln, size)?[0];
                let mut edges = Vec::with_capacity(size);
                for _ in 0..size {
                    let (_, u, v) = read_edge(&mut lines, n)?;
                    edges.push((u, v));
                }
                let m = Matching::from_edges(n, edges)
                    .map_err(|e| FormatError::at(ln, e.to_string()))?;
                one_factors.push(m);
            }
            ("leftover", None) if leftover.is_none() && trace.is_none() => {
                let l = read_graph(&mut lines)?;
                if l.n() != n {
                    return Err(FormatError::at(ln, "leftover has a different vertex count"));
                }
                leftover = Some(l);
            }
            ("trace", Some(len)) if trace.is_none() => {
                let len = numbers(ln, len)?[0];
                let mut steps = Vec::with_capacity(len);
                for _ in 0..len {
                    let (sl, s) = lines.next_line("a trace step")?;
                    steps.push(trace_step(sl, s, n)?);
                }
                trace = Some(steps);
            }
            _ => return Err(FormatError::at(ln, format!("unexpected '{l}'"))),
        }
    }
    Ok(PackFile {
        method,
        g,
        one_factors,
        leftover,
        notes,
        trace,
    })
}

fn trace_step(ln: usize, s: &str, n: usize) -> Result<TraceStep> {
    if let Some(rest) = s.strip_prefix("exchange ") {
        return Ok(TraceStep::Exchange(exchange_from(ln, rest, n)?));
    }
    if let Some(rest) = s.strip_prefix("refine ") {
        let v = numbers(ln, rest)?;
        if v.is_empty() || v[0] == 0 || v.len() % 2 == 0 {
            return Err(FormatError::at(ln, "expected 'refine c u v ...'"));
        }
        let mut edges = Vec::new();
        for p in v[1..].chunks(2) {
            edges.push((vertex(ln, p[0], n)?, vertex(ln, p[1], n)?));
        }
        return Ok(TraceStep::Refine {
            from: v[0] - 1,
            edges,
        });
    }
    Err(FormatError::at(
        ln,
        "expected 'exchange ...' or 'refine ...'",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequences_parse_both_separators() {
        let (s, order) = parse_sequence("1, 3 3,1\n").unwrap();
        assert_eq!(s.values(), &[3, 3, 1, 1]);
        assert_eq!(order, vec![1, 2, 0, 3]);
        assert_eq!(write_sequence(&s), "3,3,1,1");
        assert!(matches!(
            parse_sequence("3 x"),
            Err(FormatError::Syntax { line: 1, .. })
        ));
        assert!(parse_sequence("5 1").is_err());
    }

    #[test]
    fn graph_round_trip_and_diagnostics() {
        let g = SimpleGraph::complete(4);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        let err = parse_graph("3 2\n1 2\n1 2\n").unwrap_err();
        assert_eq!(err.to_string(), "line 3: duplicate edge 1 2");
        let err = parse_graph("3 1\n# comment\n2 1\n").unwrap_err();
        assert_eq!(err.to_string(), "line 3: edges need u < v");
        assert!(matches!(
            parse_graph("3 2\n1 2\n"),
            Err(FormatError::Eof(_))
        ));
        assert!(parse_graph("2 1\n1 3\n").is_err());
    }

    #[test]
    fn coloring_round_trip_and_rejects() {
        let mut c = EdgeColoring::uniform(4, 3);
        c.set_color(0, 1, 2);
        c.set_color(2, 3, 1);
        assert_eq!(parse_coloring(&write_coloring(&c)).unwrap(), c);
        let missing = "3 2\n1 2 1\n1 3 1\n";
        assert!(matches!(parse_coloring(missing), Err(FormatError::Eof(_))));
        let dup = "3 2\n1 2 1\n2 1 2\n1 3 1\n";
        assert_eq!(
            parse_coloring(dup).unwrap_err().to_string(),
            "line 3: pair 1 2 listed twice"
        );
        assert!(parse_coloring("3 2\n1 2 3\n1 3 1\n2 3 1\n").is_err());
    }

    #[test]
    fn exchange_lines() {
        let l = parse_exchange("1 2 3 4", 4).unwrap();
        assert_eq!((l.v, l.u, l.xs.clone()), (0, 1, vec![2, 3]));
        assert!(parse_exchange("1 2", 4).is_err());
        assert!(parse_exchange("1 2 5", 4).is_err());
    }
}
