//! Generalized edge exchanges on colorings of `K_n`.
//!
//! An exchange `(v, u; x_0, ..., x_{l-1})` lists the edges
//! `v x_0, x_0 u, v x_1, x_1 u, ...` where `x_i u` and `v x_{i+1}` share a
//! color for every `i` taken modulo `l`. Applying it swaps the colors of
//! `v x_i` and `x_i u`, which keeps the degree sequence of every class.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashSet;

use crate::error::Error;
use crate::graphs::{Color, EdgeColoring};
use crate::sequences::{Comparison, Witness};

/// Largest `n` the support bitsets can hold.
pub const MAX_VERTICES: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExchangeKind {
    Exchange,
    NearExchange,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExchangeList {
    pub v: usize,
    pub u: usize,
    pub xs: Vec<usize>,
    pub kind: ExchangeKind,
}

impl ExchangeList {
    pub fn new(v: usize, u: usize, xs: Vec<usize>) -> Self {
        Self {
            v,
            u,
            xs,
            kind: ExchangeKind::Exchange,
        }
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// `X(L)`, sorted.
    pub fn support(&self) -> Vec<usize> {
        let mut s = self.xs.clone();
        s.sort_unstable();
        s
    }

    /// The exchange that undoes this one once applied.
    pub fn reversed(&self) -> Self {
        Self {
            v: self.u,
            u: self.v,
            xs: self.xs.clone(),
            kind: self.kind,
        }
    }

    /// The `2l` edges in list order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.xs
            .iter()
            .flat_map(move |&x| [(self.v, x), (x, self.u)])
    }
}

impl fmt::Display for ExchangeList {
    /// `v u x_0 ... x_{l-1}`, 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.v + 1, self.u + 1)?;
        for x in &self.xs {
            write!(f, " {}", x + 1)?;
        }
        Ok(())
    }
}

/// Roles of the classes during a search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeConstraints {
    /// Color of `v x_0`; plays `H_1`.
    pub start_class: Color,
    /// Plays `H_2`.
    pub partner_class: Color,
    /// Classes that must be spanning regular.
    pub regular_classes: Vec<Color>,
    /// Upper bound on search nodes before giving up with [`Error::Guard`].
    pub node_budget: usize,
}

pub const DEFAULT_NODE_BUDGET: usize = 4_000_000;

impl ExchangeConstraints {
    /// `H_1` = color 0, `H_2` = color 1, every later class regular.
    pub fn standard(t: usize) -> Self {
        Self {
            start_class: 0,
            partner_class: 1,
            regular_classes: (2..t).collect(),
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }

    /// Same hypothesis with the roles of `H_1` and `H_2` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            start_class: self.partner_class,
            partner_class: self.start_class,
            ..self.clone()
        }
    }

    pub fn check(&self, c: &EdgeColoring) -> Result<(), Error> {
        for &j in &self.regular_classes {
            if j >= c.t() {
                return Err(Error::ColorOutOfRange {
                    color: j + 1,
                    t: c.t(),
                });
            }
            if !c.is_class_regular(j) {
                return Err(Error::Hypothesis(format!("class {} is not regular", j + 1)));
            }
        }
        if c.n() > MAX_VERTICES {
            return Err(Error::Precondition(format!(
                "exchange search supports at most {MAX_VERTICES} vertices"
            )));
        }
        Ok(())
    }
}

/// Checks the list against the coloring and reports the first violation.
pub fn validate(c: &EdgeColoring, l: &ExchangeList) -> Result<(), Error> {
    let n = c.n();
    let (v, u) = (l.v, l.u);
    for &x in [v, u].iter().chain(&l.xs) {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x + 1, n });
        }
    }
    if v == u {
        return Err(Error::InvalidExchange("v and u coincide"));
    }
    if l.xs.is_empty() {
        return Err(Error::InvalidExchange("empty list"));
    }
    let mut seen = vec![false; n];
    for &x in &l.xs {
        if x == v || x == u {
            return Err(Error::InvalidExchange("some x_i equals v or u"));
        }
        if seen[x] {
            return Err(Error::InvalidExchange("repeated x_i"));
        }
        seen[x] = true;
    }
    let len = l.xs.len();
    let start = c.color(v, l.xs[0]);
    match l.kind {
        ExchangeKind::Exchange => {
            for i in 0..len {
                if c.color(l.xs[i], u) != c.color(v, l.xs[(i + 1) % len]) {
                    return Err(Error::InvalidExchange(
                        "x_i u and v x_(i+1) differ in color",
                    ));
                }
            }
        }
        ExchangeKind::NearExchange => {
            for i in 0..len - 1 {
                if c.color(l.xs[i], u) != c.color(v, l.xs[i + 1]) {
                    return Err(Error::InvalidExchange(
                        "x_i u and v x_(i+1) differ in color",
                    ));
                }
            }
            if l.xs.iter().any(|&x| c.color(x, u) == start) {
                return Err(Error::InvalidExchange("some x_j u has the color of v x_0"));
            }
        }
    }
    Ok(())
}

pub fn is_valid(c: &EdgeColoring, l: &ExchangeList) -> bool {
    validate(c, l).is_ok()
}

/// Applies the exchange in place.
pub fn apply_in_place(c: &mut EdgeColoring, l: &ExchangeList) -> Result<(), Error> {
    if l.kind != ExchangeKind::Exchange {
        return Err(Error::InvalidExchange("near exchanges cannot be applied"));
    }
    validate(c, l)?;
    for &x in &l.xs {
        let a = c.color(l.v, x);
        let b = c.color(x, l.u);
        c.set_color(l.v, x, b);
        c.set_color(x, l.u, a);
    }
    Ok(())
}

pub fn apply(c: &EdgeColoring, l: &ExchangeList) -> Result<EdgeColoring, Error> {
    let mut out = c.clone();
    apply_in_place(&mut out, l)?;
    Ok(out)
}

/// True when no two `v x_j` share a color.
pub fn is_simplified(c: &EdgeColoring, l: &ExchangeList) -> bool {
    let mut seen = vec![false; c.t()];
    for &x in &l.xs {
        let col = c.color(l.v, x);
        if seen[col] {
            return false;
        }
        seen[col] = true;
    }
    true
}

/// Shortens an exchange until no two `v x_j` share a color, keeping the first pair.
pub fn simplify(c: &EdgeColoring, l: &ExchangeList) -> Result<ExchangeList, Error> {
    if l.kind != ExchangeKind::Exchange {
        return Err(Error::InvalidExchange("only exchanges can be simplified"));
    }
    validate(c, l)?;
    let start = c.color(l.v, l.xs[0]);
    if c.color(l.xs[0], l.u) == start {
        return Err(Error::Precondition(
            "x_0 u must not share the color of v x_0".into(),
        ));
    }
    let mut xs = l.xs.clone();
    loop {
        // a later v x_t in the start class closes the cycle at t-1
        if let Some(t) = (1..xs.len()).find(|&t| c.color(l.v, xs[t]) == start) {
            xs.truncate(t);
            continue;
        }
        let mut spliced = false;
        'outer: for t in 1..xs.len() {
            for j in 1..t {
                if c.color(l.v, xs[j]) == c.color(l.v, xs[t]) {
                    xs.drain(j..t);
                    spliced = true;
                    break 'outer;
                }
            }
        }
        if !spliced {
            break;
        }
    }
    let out = ExchangeList::new(l.v, l.u, xs);
    debug_assert!(is_valid(c, &out) && is_simplified(c, &out));
    Ok(out)
}

fn check_endpoints(c: &EdgeColoring, v: usize, x0: usize, u: usize) -> Result<(), Error> {
    let n = c.n();
    for x in [v, x0, u] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x + 1, n });
        }
    }
    if v == u || x0 == v || x0 == u {
        return Err(Error::Precondition("v, x_0, u must be distinct".into()));
    }
    Ok(())
}

#[derive(Clone, Copy)]
struct Node {
    parent: usize,
    x: usize,
    support: u128,
    last: Color,
}

/// Breadth-first search over near exchanges beginning `(v x_0, x_0 u)`.
///
/// States are deduplicated on `(support, color of the last x u)` because the
/// remaining extensions depend on nothing else. `on_close` is called with the
/// node index of each distinct closing support and returns true to stop.
struct Search<'a> {
    c: &'a EdgeColoring,
    v: usize,
    u: usize,
    nodes: Vec<Node>,
}

impl<'a> Search<'a> {
    fn run(
        c: &'a EdgeColoring,
        v: usize,
        x0: usize,
        u: usize,
        forbidden: u128,
        budget: usize,
        mut on_close: impl FnMut(&Search<'a>, usize) -> bool,
    ) -> Result<Search<'a>, Error> {
        let start = c.color(v, x0);
        let mut s = Search {
            c,
            v,
            u,
            nodes: Vec::new(),
        };
        let root = Node {
            parent: usize::MAX,
            x: x0,
            support: 1u128 << x0,
            last: c.color(x0, u),
        };
        s.nodes.push(root);
        if root.last == start {
            on_close(&s, 0);
            return Ok(s);
        }
        let mut seen: HashSet<(u128, Color)> = HashSet::new();
        let mut closed: HashSet<u128> = HashSet::new();
        seen.insert((root.support, root.last));
        let blocked = forbidden | (1u128 << v) | (1u128 << u);
        let mut head = 0;
        while head < s.nodes.len() {
            let node = s.nodes[head];
            head += 1;
            if node.last == start {
                continue;
            }
            for x in 0..c.n() {
                let bit = 1u128 << x;
                if (node.support | blocked) & bit != 0 || c.color(v, x) != node.last {
                    continue;
                }
                let child = Node {
                    parent: head - 1,
                    x,
                    support: node.support | bit,
                    last: c.color(x, u),
                };
                if child.last == start {
                    if closed.insert(child.support) {
                        s.nodes.push(child);
                        if on_close(&s, s.nodes.len() - 1) {
                            return Ok(s);
                        }
                    }
                } else if seen.insert((child.support, child.last)) {
                    if s.nodes.len() >= budget {
                        return Err(Error::Guard(format!(
                            "exchange search exceeded {budget} nodes"
                        )));
                    }
                    s.nodes.push(child);
                }
            }
        }
        Ok(s)
    }

    fn list(&self, mut idx: usize, kind: ExchangeKind) -> ExchangeList {
        let mut xs = Vec::new();
        while idx != usize::MAX {
            xs.push(self.nodes[idx].x);
            idx = self.nodes[idx].parent;
        }
        xs.reverse();
        ExchangeList {
            v: self.v,
            u: self.u,
            xs,
            kind,
        }
    }

    fn is_closed(&self, idx: usize) -> bool {
        let first = self.first_x(idx);
        self.nodes[idx].last == self.c.color(self.v, first)
    }

    fn first_x(&self, mut idx: usize) -> usize {
        while self.nodes[idx].parent != usize::MAX {
            idx = self.nodes[idx].parent;
        }
        self.nodes[idx].x
    }
}

fn support_mask(xs: &[usize]) -> u128 {
    xs.iter().fold(0u128, |m, &x| m | (1u128 << x))
}

/// Searches without re-checking the regularity hypothesis.
pub(crate) fn find_exchange_unchecked(
    c: &EdgeColoring,
    v: usize,
    x0: usize,
    u: usize,
    forbidden: &[usize],
    budget: usize,
) -> Result<Option<ExchangeList>, Error> {
    let mut found = None;
    let s = Search::run(c, v, x0, u, support_mask(forbidden), budget, |_, idx| {
        found = Some(idx);
        true
    })?;
    Ok(found.map(|idx| s.list(idx, ExchangeKind::Exchange)))
}

/// A shortest exchange beginning `(v x_0, x_0 u)`, or `None` if none exists.
///
/// Shortest exchanges are automatically simplified.
pub fn find_exchange(
    c: &EdgeColoring,
    v: usize,
    x0: usize,
    u: usize,
    k: &ExchangeConstraints,
) -> Result<Option<ExchangeList>, Error> {
    k.check(c)?;
    check_endpoints(c, v, x0, u)?;
    if c.color(v, x0) != k.start_class {
        return Err(Error::Precondition(format!(
            "v x_0 is not in class {}",
            k.start_class + 1
        )));
    }
    if c.color(x0, u) == k.start_class {
        return Err(Error::Precondition(format!(
            "x_0 u is already in class {}",
            k.start_class + 1
        )));
    }
    find_exchange_unchecked(c, v, x0, u, &[], k.node_budget)
}

/// Every exchange beginning `(v x_0, x_0 u)` with a distinct support, in
/// order of length, at most `limit` of them.
pub fn enumerate_exchanges(
    c: &EdgeColoring,
    v: usize,
    x0: usize,
    u: usize,
    forbidden: &[usize],
    limit: usize,
    budget: usize,
) -> Result<Vec<ExchangeList>, Error> {
    check_endpoints(c, v, x0, u)?;
    if c.n() > MAX_VERTICES {
        return Err(Error::Precondition(format!(
            "exchange search supports at most {MAX_VERTICES} vertices"
        )));
    }
    let mut hits = Vec::new();
    let s = Search::run(c, v, x0, u, support_mask(forbidden), budget, |_, idx| {
        hits.push(idx);
        hits.len() >= limit
    })?;
    Ok(hits
        .into_iter()
        .map(|idx| s.list(idx, ExchangeKind::Exchange))
        .collect())
}

/// A near exchange of maximum length beginning `(v x_0, x_0 u)`, returned
/// only when no exchange exists.
pub fn longest_near_exchange(
    c: &EdgeColoring,
    v: usize,
    x0: usize,
    u: usize,
    k: &ExchangeConstraints,
) -> Result<Option<ExchangeList>, Error> {
    k.check(c)?;
    check_endpoints(c, v, x0, u)?;
    let mut any = false;
    let s = Search::run(c, v, x0, u, 0, k.node_budget, |_, _| {
        any = true;
        true
    })?;
    if any {
        return Ok(None);
    }
    let best = (0..s.nodes.len())
        .filter(|&i| !s.is_closed(i))
        .max_by_key(|&i| (s.nodes[i].support.count_ones(), core::cmp::Reverse(i)))
        .expect("root is always present");
    Ok(Some(s.list(best, ExchangeKind::NearExchange)))
}

/// The premise of the guaranteed-exchange lemma for the pair `(v, u)`.
pub fn guaranteed_exchange_premise(
    c: &EdgeColoring,
    v: usize,
    u: usize,
    k: &ExchangeConstraints,
) -> bool {
    let (h1, h2) = (k.start_class, k.partner_class);
    let n = c.n();
    let others = || (0..n).filter(move |&y| y != u && y != v);
    if others().any(|y| c.color(v, y) == h2 && c.color(y, u) == h1) {
        return true;
    }
    others().any(|y| {
        c.color(v, y) == h2
            && c.color(y, u) != h2
            && others().any(|y2| {
                c.color(u, y2) == h1 && c.color(v, y2) != h1 && c.color(y, u) == c.color(v, y2)
            })
    })
}

/// Result of a lemma-driven search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaOutcome<T> {
    Found(T),
    /// The lemma's inequality fails; the instantiated sides are attached.
    HypothesisFails(Witness),
    NotApplicable(&'static str),
}

fn neighbors_in(c: &EdgeColoring, v: usize, class: Color) -> Vec<bool> {
    let mut out = vec![false; c.n()];
    for y in c.class_neighbors(v, class) {
        out[y] = true;
    }
    out
}

fn check_x_set(
    c: &EdgeColoring,
    v: usize,
    u: usize,
    xs: &[usize],
    k: &ExchangeConstraints,
) -> Result<(), Error> {
    let n = c.n();
    for &x in [v, u].iter().chain(xs) {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x + 1, n });
        }
    }
    if v == u {
        return Err(Error::Precondition("v and u coincide".into()));
    }
    let mut seen = vec![false; n];
    for &x in xs {
        if x == u || c.color(v, x) != k.start_class || c.color(x, u) == k.start_class {
            return Err(Error::Precondition(format!(
                "{} is not in N_H{}(v) - N_H{}(u)",
                x + 1,
                k.start_class + 1,
                k.start_class + 1
            )));
        }
        if seen[x] {
            return Err(Error::Precondition(format!("{} repeated in X", x + 1)));
        }
        seen[x] = true;
    }
    Ok(())
}

/// The large-degree inequality
/// `deg_H1(u) >= deg_H1(v) - |N_H2(u) ∩ N_H1(v)| + |X ∩ N_H2(u)|`.
pub fn large_degree_witness(
    c: &EdgeColoring,
    v: usize,
    u: usize,
    xs: &[usize],
    k: &ExchangeConstraints,
) -> Witness {
    let (h1, h2) = (k.start_class, k.partner_class);
    let n1v = neighbors_in(c, v, h1);
    let n2u = neighbors_in(c, u, h2);
    let common = (0..c.n()).filter(|&y| n2u[y] && n1v[y]).count();
    let x_in = xs.iter().filter(|&&x| n2u[x]).count();
    let lhs = c.class_degree(u, h1) as i64;
    let rhs = c.class_degree(v, h1) as i64 - common as i64 + x_in as i64;
    Witness::new(lhs, Comparison::Ge, rhs)
}

/// `|X|` exchanges with pairwise disjoint supports, the `j`-th beginning
/// `(v x^(j), x^(j) u)`, whenever the large-degree inequality holds.
pub fn find_disjoint_exchanges(
    c: &EdgeColoring,
    v: usize,
    u: usize,
    xs: &[usize],
    k: &ExchangeConstraints,
) -> Result<LemmaOutcome<Vec<ExchangeList>>, Error> {
    k.check(c)?;
    check_x_set(c, v, u, xs, k)?;
    let w = large_degree_witness(c, v, u, xs, k);
    if !w.holds() {
        return Ok(LemmaOutcome::HypothesisFails(w));
    }
    let mut budget = k.node_budget;
    let mut chosen = Vec::new();
    if disjoint_backtrack(c, v, u, xs, 0, 0, &mut chosen, &mut budget)? {
        Ok(LemmaOutcome::Found(chosen))
    } else {
        Err(Error::InternalDefect(format!(
            "no disjoint exchanges for v={} u={} although {} >= {}",
            v + 1,
            u + 1,
            w.lhs,
            w.rhs
        )))
    }
}

#[allow(clippy::too_many_arguments)]
fn disjoint_backtrack(
    c: &EdgeColoring,
    v: usize,
    u: usize,
    xs: &[usize],
    idx: usize,
    used: u128,
    chosen: &mut Vec<ExchangeList>,
    budget: &mut usize,
) -> Result<bool, Error> {
    if idx == xs.len() {
        return Ok(true);
    }
    let x0 = xs[idx];
    let others = xs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != idx)
        .fold(used, |m, (_, &x)| m | (1u128 << x));
    let mut spent = 0;
    let s = Search::run(c, v, x0, u, others, *budget, |s, _| {
        spent = s.nodes.len();
        false
    })?;
    *budget = budget.saturating_sub(s.nodes.len().max(spent)).max(1);
    let closings: Vec<usize> = (0..s.nodes.len()).filter(|&i| s.is_closed(i)).collect();
    for i in closings {
        let l = s.list(i, ExchangeKind::Exchange);
        let mask = support_mask(&l.xs);
        chosen.push(l);
        if disjoint_backtrack(c, v, u, xs, idx + 1, used | mask, chosen, budget)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

/// The inequality `|X - N_H2(u)| + |N_H2(v) - N_H2(u)| > |N_H2(u) - N_H1(v) - N_H2(v)|`.
pub fn lemma35_witness(
    c: &EdgeColoring,
    v: usize,
    u: usize,
    xs: &[usize],
    k: &ExchangeConstraints,
) -> Witness {
    let (h1, h2) = (k.start_class, k.partner_class);
    let n1v = neighbors_in(c, v, h1);
    let n2v = neighbors_in(c, v, h2);
    let n2u = neighbors_in(c, u, h2);
    let x_out = xs.iter().filter(|&&x| !n2u[x]).count();
    let v_only = (0..c.n()).filter(|&y| n2v[y] && !n2u[y]).count();
    let u_only = (0..c.n())
        .filter(|&y| n2u[y] && !n1v[y] && !n2v[y])
        .count();
    Witness::new((x_out + v_only) as i64, Comparison::Gt, u_only as i64)
}

/// An exchange beginning at some `x ∈ X` whenever the lemma's inequality holds.
pub fn find_exchange_lemma35(
    c: &EdgeColoring,
    v: usize,
    u: usize,
    xs: &[usize],
    k: &ExchangeConstraints,
) -> Result<LemmaOutcome<ExchangeList>, Error> {
    k.check(c)?;
    if xs.is_empty() {
        return Ok(LemmaOutcome::NotApplicable("X is empty"));
    }
    check_x_set(c, v, u, xs, k)?;
    let n2v = neighbors_in(c, v, k.partner_class);
    let n2u = neighbors_in(c, u, k.partner_class);
    let x_in = xs.iter().filter(|&&x| n2u[x]).count();
    let v_only = (0..c.n()).filter(|&y| n2v[y] && !n2u[y]).count();
    if x_in > v_only {
        return Err(Error::Precondition(format!(
            "|X ∩ N_H2(u)| = {x_in} exceeds |N_H2(v) - N_H2(u)| = {v_only}"
        )));
    }
    let w = lemma35_witness(c, v, u, xs, k);
    if !w.holds() {
        return Ok(LemmaOutcome::HypothesisFails(w));
    }
    let mut sorted = xs.to_vec();
    sorted.sort_unstable();
    for x in sorted {
        if let Some(l) = find_exchange_unchecked(c, v, x, u, &[], k.node_budget)? {
            return Ok(LemmaOutcome::Found(l));
        }
    }
    Err(Error::InternalDefect(format!(
        "no exchange from X for v={} u={} although {} > {}",
        v + 1,
        u + 1,
        w.lhs,
        w.rhs
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::SimpleGraph;

    fn coloring(n: usize, classes: &[&[(usize, usize)]]) -> EdgeColoring {
        // classes listed explicitly; everything else goes to class 1 (H_2)
        let mut parts: Vec<SimpleGraph> = classes
            .iter()
            .map(|es| SimpleGraph::from_edges(n, es.iter().copied()).unwrap())
            .collect();
        let mut rest = SimpleGraph::complete(n);
        for p in &parts {
            rest.subtract(p);
        }
        parts.insert(1, rest);
        EdgeColoring::build(&parts).unwrap()
    }

    fn degree_sequences(c: &EdgeColoring) -> Vec<Vec<usize>> {
        (0..c.t()).map(|j| c.class_degrees(j)).collect()
    }

    #[test]
    fn two_switch_is_valid_and_preserves_degrees() {
        // H_1 = C6 on 0..6: edges 01 12 23 34 45 50
        let h1 = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)];
        let c = coloring(6, &[&h1]);
        // v=0, x0=1, u=2? 12 is in H_1, so use u=3: v x0 = 01 (H1), x0 u = 13 (H2),
        // v x1 = 0 x1 must be H2 and x1 u in H1: x1 = 4 (04 H2, 43 H1)
        let l = ExchangeList::new(0, 3, vec![1, 4]);
        assert!(is_valid(&c, &l));
        let c2 = apply(&c, &l).unwrap();
        assert_eq!(degree_sequences(&c), degree_sequences(&c2));
        assert!(c2.extract_class(0).unwrap().is_k_regular(2));
        assert_eq!(apply(&c2, &l.reversed()).unwrap(), c);
    }

    #[test]
    fn length_four_exchange() {
        // v=0, u=1, x = 2,3,4,5 with colors v x_i = a_i and x_i u = a_{i+1}
        let n = 6;
        let cols = [0usize, 2, 3, 1];
        let mut parts = vec![SimpleGraph::new(n); 4];
        let (v, u) = (0, 1);
        for i in 0..4 {
            parts[cols[i]].add_edge(v, 2 + i);
            parts[cols[(i + 1) % 4]].add_edge(2 + i, u);
        }
        parts[1].add_edge(v, u);
        for a in 2..n {
            for b in a + 1..n {
                parts[1].add_edge(a, b);
            }
        }
        let c = EdgeColoring::build(&parts).unwrap();
        let l = ExchangeList::new(v, u, vec![2, 3, 4, 5]);
        assert!(is_valid(&c, &l));
        assert!(is_simplified(&c, &l));
        let c2 = apply(&c, &l).unwrap();
        assert_eq!(degree_sequences(&c), degree_sequences(&c2));
        let k = ExchangeConstraints {
            regular_classes: vec![],
            ..ExchangeConstraints::standard(4)
        };
        assert_eq!(find_exchange(&c, v, 2, u, &k).unwrap(), Some(l));
    }

    #[test]
    fn repeated_x_is_invalid() {
        let c = EdgeColoring::uniform(6, 2);
        assert!(!is_valid(&c, &ExchangeList::new(0, 1, vec![2, 2])));
        assert!(!is_valid(&c, &ExchangeList::new(0, 1, vec![2, 1])));
    }

    #[test]
    fn simplify_splices_and_truncates() {
        // v=0,u=1; colors a = [0,2,2,3] so v x1 and v x2 share class 2
        let n = 7;
        let cols = [0usize, 2, 2, 1];
        let mut parts = vec![SimpleGraph::new(n); 4];
        for i in 0..4 {
            parts[cols[i]].add_edge(0, 2 + i);
            parts[cols[(i + 1) % 4]].add_edge(2 + i, 1);
        }
        let mut rest = SimpleGraph::complete(n);
        for p in &parts {
            rest.subtract(p);
        }
        parts[3].union_with(&rest);
        let c = EdgeColoring::build(&parts).unwrap();
        let l = ExchangeList::new(0, 1, vec![2, 3, 4, 5]);
        assert!(is_valid(&c, &l));
        assert!(!is_simplified(&c, &l));
        let s = simplify(&c, &l).unwrap();
        assert_eq!(s.xs, vec![2, 4, 5]);
        assert!(is_valid(&c, &s) && is_simplified(&c, &s));
        assert_eq!(simplify(&c, &s).unwrap(), s);
    }

    #[test]
    fn guaranteed_premise_yields_exchange() {
        // v=0,u=1; 02 in H1 (x0), 2-1 in H2; y=3 with 03 in H2 and 31 in H1
        let h1 = [(0, 2), (1, 3), (4, 5)];
        let c = coloring(6, &[&h1]);
        let k = ExchangeConstraints::standard(2);
        assert!(guaranteed_exchange_premise(&c, 0, 1, &k));
        let l = find_exchange(&c, 0, 2, 1, &k).unwrap().unwrap();
        assert!(is_valid(&c, &l));
        assert!(l.len() <= 2);
    }

    #[test]
    fn no_exchange_gives_near_exchange_ending_in_h2() {
        // H_1 = single edge 0-2; nothing in H_1 at u=1 so no exchange can close
        let c = coloring(5, &[&[(0, 2)]]);
        let k = ExchangeConstraints::standard(2);
        assert_eq!(find_exchange(&c, 0, 2, 1, &k).unwrap(), None);
        let near = longest_near_exchange(&c, 0, 2, 1, &k).unwrap().unwrap();
        assert!(is_valid(&c, &near));
        let last = *near.xs.last().unwrap();
        assert_eq!(c.color(last, 1), 1);
    }

    #[test]
    fn hypothesis_violation_is_rejected() {
        let c = coloring(5, &[&[(0, 2)], &[(3, 4)]]);
        let k = ExchangeConstraints::standard(3);
        assert!(matches!(
            find_exchange(&c, 0, 2, 1, &k),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn lemma35_empty_x_not_applicable() {
        let c = coloring(5, &[&[(0, 2)]]);
        let k = ExchangeConstraints::standard(2);
        assert!(matches!(
            find_exchange_lemma35(&c, 0, 1, &[], &k).unwrap(),
            LemmaOutcome::NotApplicable(_)
        ));
    }
}
