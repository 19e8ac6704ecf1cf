//! Brute-force ground truth at small `n`.
//!
//! Everything here works on bitmask graphs and shares no search code with
//! the packers, so its answers can be used to check them.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::construct::petersen_2factorization;
use crate::error::Error;
use crate::graphs::{Matching, SimpleGraph};
use crate::packer::FactorPack;
use crate::matching::{gallai_edmonds_with, max_matching, verify_ge_properties};
use crate::sequences::{
    check_eq1, check_eq3, check_main_fixed, check_mid, is_graphic_values, li_barrus_expected,
    li_barrus_sum, split_bound, DegreeSequence,
};

/// Largest `n` the oracle accepts.
pub const ORACLE_MAX_N: usize = 12;

/// Adjacency rows as bitmasks; `n <= 16`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitGraph {
    n: usize,
    adj: [u16; 16],
}

impl BitGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= 16);
        Self { n, adj: [0; 16] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        let full = ((1u32 << n) - 1) as u16;
        for v in 0..n {
            g.adj[v] = full & !(1 << v);
        }
        g
    }

    pub fn from_graph(g: &SimpleGraph) -> Self {
        let mut b = Self::empty(g.n());
        for (u, v) in g.edges() {
            b.add(u, v);
        }
        b
    }

    pub fn to_graph(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.n, self.edges()).expect("bit graph is simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has(&self, u: usize, v: usize) -> bool {
        self.adj[u] & (1 << v) != 0
    }

    #[inline]
    pub fn add(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    #[inline]
    pub fn remove(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn row(&self, v: usize) -> u16 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n).filter_map(move |v| if self.has(u, v) { Some((u, v)) } else { None })
        })
    }

    pub fn complement(&self) -> Self {
        let full = BitGraph::complete(self.n);
        let mut g = *self;
        for v in 0..self.n {
            g.adj[v] = full.adj[v] & !self.adj[v];
        }
        g
    }

    /// Graph number `mask` in the enumeration of all labeled graphs on `n`
    /// vertices, pairs ordered `(0,1), (0,2), ..., (n-2,n-1)`.
    pub fn from_pair_mask(n: usize, mask: u64) -> Self {
        let mut g = Self::empty(n);
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask & (1 << bit) != 0 {
                    g.add(u, v);
                }
                bit += 1;
            }
        }
        g
    }

    fn pair_bit(&self, u: usize, v: usize) -> u128 {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        1u128 << (a * (2 * self.n - a - 1) / 2 + (b - a - 1))
    }

    fn without_mask(&self, mask: u128) -> Self {
        let mut g = *self;
        for (u, v) in self.edges() {
            if mask & self.pair_bit(u, v) != 0 {
                g.remove(u, v);
            }
        }
        g
    }
}

fn guard_n(n: usize) -> Result<(), Error> {
    if n > ORACLE_MAX_N {
        return Err(Error::Guard(format!(
            "oracle searches need n <= {ORACLE_MAX_N}, got {n}"
        )));
    }
    Ok(())
}

/// Calls `visit` on every graph with per-vertex degrees `degrees` whose
/// edges lie in `allowed`. Stops and returns true as soon as `visit` does.
pub fn for_each_realization(
    degrees: &[usize],
    allowed: &BitGraph,
    visit: &mut dyn FnMut(&BitGraph) -> bool,
) -> bool {
    let n = degrees.len();
    assert!(n <= 16 && allowed.n == n);
    if degrees.iter().sum::<usize>() % 2 == 1 {
        return false;
    }
    let mut rem = [0usize; 16];
    rem[..n].copy_from_slice(degrees);
    let mut g = BitGraph::empty(n);
    if !rest_feasible(&rem[..n], allowed, 0) {
        return false;
    }
    realize_rec(0, n, &mut rem, &mut g, allowed, visit)
}

/// Necessary condition for the remaining degrees of vertices `from..` to be
/// realizable: they form a graphic sequence and fit within the allowed pairs.
fn rest_feasible(rem: &[usize], allowed: &BitGraph, from: usize) -> bool {
    let n = rem.len();
    let later: u16 = if from >= 16 { 0 } else { (!0u16) << from };
    if (from..n).any(|v| rem[v] > (allowed.adj[v] & later).count_ones() as usize) {
        return false;
    }
    let mut tail: Vec<usize> = rem[from..].to_vec();
    tail.sort_unstable_by(|a, b| b.cmp(a));
    is_graphic_values(&tail)
}

fn realize_rec(
    i: usize,
    n: usize,
    rem: &mut [usize; 16],
    g: &mut BitGraph,
    allowed: &BitGraph,
    visit: &mut dyn FnMut(&BitGraph) -> bool,
) -> bool {
    if i == n {
        return visit(g);
    }
    if rem[i] == 0 {
        return realize_rec(i + 1, n, rem, g, allowed, visit);
    }
    let cands: Vec<usize> = (i + 1..n)
        .filter(|&j| allowed.has(i, j) && rem[j] > 0)
        .collect();
    let need = rem[i];
    if cands.len() < need {
        return false;
    }
    // combinations of `need` candidates in lexicographic order
    let mut idx: Vec<usize> = (0..need).collect();
    loop {
        for &c in &idx {
            let j = cands[c];
            g.add(i, j);
            rem[j] -= 1;
        }
        rem[i] = 0;
        let stop = rest_feasible(&rem[..n], allowed, i + 1)
            && realize_rec(i + 1, n, rem, g, allowed, visit);
        rem[i] = need;
        for &c in &idx {
            let j = cands[c];
            g.remove(i, j);
            rem[j] += 1;
        }
        if stop {
            return true;
        }
        // advance combination
        let mut p = need;
        loop {
            if p == 0 {
                return false;
            }
            p -= 1;
            if idx[p] < cands.len() - need + p {
                break;
            }
        }
        idx[p] += 1;
        for q in p + 1..need {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// All labeled realizations, at most `cap` of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realizations {
    pub graphs: Vec<SimpleGraph>,
    pub truncated: bool,
}

pub fn enumerate_realizations(seq: &DegreeSequence, cap: usize) -> Result<Realizations, Error> {
    guard_n(seq.len())?;
    let mut graphs = Vec::new();
    let mut truncated = false;
    for_each_realization(seq.values(), &BitGraph::complete(seq.len()), &mut |g| {
        if graphs.len() == cap {
            truncated = true;
            return true;
        }
        graphs.push(g.to_graph());
        false
    });
    Ok(Realizations { graphs, truncated })
}

/// Number of labeled realizations (no cap).
pub fn count_realizations(seq: &DegreeSequence) -> Result<u64, Error> {
    guard_n(seq.len())?;
    let mut count = 0u64;
    for_each_realization(seq.values(), &BitGraph::complete(seq.len()), &mut |_| {
        count += 1;
        false
    });
    Ok(count)
}

/// Every perfect matching, as pair bitmasks, in lexicographic edge order.
fn perfect_matchings(g: &BitGraph) -> Vec<u128> {
    let mut out = Vec::new();
    if g.n % 2 == 1 {
        return out;
    }
    fn rec(g: &BitGraph, free: u16, acc: u128, out: &mut Vec<u128>) {
        if free == 0 {
            out.push(acc);
            return;
        }
        let v = free.trailing_zeros() as usize;
        let mut cand = g.adj[v] & free;
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            rec(g, free & !(1 << v) & !(1 << w), acc | g.pair_bit(v, w), out);
        }
    }
    let free = if g.n == 16 { u16::MAX } else { (1u16 << g.n) - 1 };
    rec(g, free, 0, &mut out);
    out
}

fn mask_to_matching(g: &BitGraph, mask: u128) -> Matching {
    Matching::from_edges(
        g.n,
        g.edges().filter(|&(u, v)| mask & g.pair_bit(u, v) != 0),
    )
    .expect("mask encodes a matching")
}

/// Searches for `target` pairwise disjoint perfect matchings, or the most
/// possible when `target` is `None`. Returns the best set found.
fn disjoint_matchings(g: &BitGraph, target: Option<usize>) -> Vec<u128> {
    let n = g.n;
    if n == 0 {
        return Vec::new();
    }
    let pms = perfect_matchings(g);
    if pms.is_empty() {
        return Vec::new();
    }
    // every perfect matching uses exactly one edge at vertex 0
    let mut groups: Vec<Vec<u128>> = Vec::new();
    for w in 1..n {
        if !g.has(0, w) {
            continue;
        }
        let bit = g.pair_bit(0, w);
        let grp: Vec<u128> = pms.iter().copied().filter(|m| m & bit != 0).collect();
        if !grp.is_empty() {
            groups.push(grp);
        }
    }
    let goal = target.unwrap_or(usize::MAX).min(groups.len());
    let mut best: Vec<u128> = Vec::new();
    let mut cur: Vec<u128> = Vec::new();
    fn rec(
        groups: &[Vec<u128>],
        gi: usize,
        used: u128,
        cur: &mut Vec<u128>,
        best: &mut Vec<u128>,
        goal: usize,
    ) -> bool {
        if cur.len() > best.len() {
            *best = cur.clone();
            if best.len() >= goal {
                return true;
            }
        }
        if gi == groups.len() || cur.len() + (groups.len() - gi) <= best.len() {
            return false;
        }
        for &m in &groups[gi] {
            if m & used == 0 {
                cur.push(m);
                if rec(groups, gi + 1, used | m, cur, best, goal) {
                    return true;
                }
                cur.pop();
            }
        }
        rec(groups, gi + 1, used, cur, best, goal)
    }
    if goal > 0 {
        rec(&groups, 0, 0, &mut cur, &mut best, goal);
    }
    best
}

/// The largest number of pairwise edge-disjoint perfect matchings in `g`.
pub fn max_disjoint_one_factors(g: &SimpleGraph) -> Result<usize, Error> {
    guard_n(g.n())?;
    if g.n() % 2 == 1 {
        return Ok(0);
    }
    Ok(disjoint_matchings(&BitGraph::from_graph(g), None).len())
}

/// `k` disjoint perfect matchings of `g`, if they exist.
pub fn find_disjoint_one_factors(g: &SimpleGraph, k: usize) -> Result<Option<Vec<Matching>>, Error> {
    guard_n(g.n())?;
    if k == 0 {
        return Ok(Some(Vec::new()));
    }
    if g.n() % 2 == 1 {
        return Ok(None);
    }
    let b = BitGraph::from_graph(g);
    let found = disjoint_matchings(&b, Some(k));
    Ok((found.len() >= k).then(|| found.iter().map(|&m| mask_to_matching(&b, m)).collect()))
}

/// A `k`-regular spanning subgraph of `allowed`, if any.
fn regular_subgraph(allowed: &BitGraph, k: usize) -> Option<BitGraph> {
    let n = allowed.n;
    let mut out = None;
    for_each_realization(&vec![k; n], allowed, &mut |f| {
        out = Some(*f);
        true
    });
    out
}

/// A graph `H` with per-vertex degrees `reduced` plus a `k`-regular `F`
/// edge-disjoint from it, by exhaustive search.
pub fn find_realization_with_k_factor(
    reduced: &[usize],
    k: usize,
) -> Result<Option<(SimpleGraph, SimpleGraph)>, Error> {
    let n = reduced.len();
    guard_n(n)?;
    let mut out = None;
    for_each_realization(reduced, &BitGraph::complete(n), &mut |h| {
        if let Some(f) = regular_subgraph(&h.complement(), k) {
            out = Some((h.to_graph(), f.to_graph()));
            return true;
        }
        false
    });
    Ok(out)
}

/// A realization of `seq` with `k` disjoint perfect matchings, if any.
pub fn find_packing(
    seq: &DegreeSequence,
    k: usize,
) -> Result<Option<(SimpleGraph, Vec<Matching>)>, Error> {
    let n = seq.len();
    guard_n(n)?;
    if n % 2 == 1 && k > 0 {
        return Ok(None);
    }
    let mut out = None;
    for_each_realization(seq.values(), &BitGraph::complete(n), &mut |g| {
        let found = disjoint_matchings(g, Some(k));
        if found.len() >= k {
            out = Some((
                g.to_graph(),
                found.iter().map(|&m| mask_to_matching(g, m)).collect(),
            ));
            return true;
        }
        false
    });
    Ok(out)
}

/// A realization of `seq` with a `k`-factor containing `r` disjoint perfect
/// matchings; returns `(G, matchings, F_0)`.
#[allow(clippy::type_complexity)]
pub fn find_kfactor_with_r(
    seq: &DegreeSequence,
    k: usize,
    r: usize,
) -> Result<Option<(SimpleGraph, Vec<Matching>, SimpleGraph)>, Error> {
    let n = seq.len();
    guard_n(n)?;
    if r > k || (n % 2 == 1 && r > 0) || (n * k) % 2 == 1 {
        return Ok(None);
    }
    let mut out = None;
    for_each_realization(seq.values(), &BitGraph::complete(n), &mut |g| {
        let pms = perfect_matchings(g);
        let mut chosen: Vec<u128> = Vec::new();
        let mut hit = None;
        #[allow(clippy::too_many_arguments)]
        fn rec(
            g: &BitGraph,
            pms: &[u128],
            start: usize,
            used: u128,
            need: usize,
            rest: usize,
            chosen: &mut Vec<u128>,
            hit: &mut Option<BitGraph>,
        ) -> bool {
            if need == 0 {
                if let Some(f0) = regular_subgraph(&g.without_mask(used), rest) {
                    *hit = Some(f0);
                    return true;
                }
                return false;
            }
            for i in start..pms.len() {
                if pms[i] & used == 0 {
                    chosen.push(pms[i]);
                    if rec(g, pms, i + 1, used | pms[i], need - 1, rest, chosen, hit) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        if rec(g, &pms, 0, 0, r, k - r, &mut chosen, &mut hit) {
            out = Some((
                g.to_graph(),
                chosen.iter().map(|&m| mask_to_matching(g, m)).collect(),
                hit.expect("set on success").to_graph(),
            ));
            return true;
        }
        false
    });
    Ok(out)
}

/// A graph containing `f` with per-vertex degrees `degrees` whose deficiency
/// after deleting `E(f)` is at most `max_def`.
pub fn find_fixed_realization(
    degrees: &[usize],
    f: &SimpleGraph,
    max_def: usize,
) -> Result<Option<SimpleGraph>, Error> {
    let n = degrees.len();
    guard_n(n)?;
    let mut rest = Vec::with_capacity(n);
    for (v, &d) in degrees.iter().enumerate() {
        match d.checked_sub(f.degree(v)) {
            Some(r) => rest.push(r),
            None => return Ok(None),
        }
    }
    let allowed = BitGraph::from_graph(f).complement();
    let mut out = None;
    for_each_realization(&rest, &allowed, &mut |h| {
        let hg = h.to_graph();
        if n - 2 * max_matching(&hg).size() <= max_def {
            let mut g = hg;
            g.union_with(f);
            out = Some(g);
            return true;
        }
        false
    });
    Ok(out)
}

/// Checks a pack directly: `g` realizes `seq` vertex by vertex, the
/// matchings are perfect, pairwise disjoint and inside `g`, and the leftover
/// is `left`-regular, inside `g` and disjoint from them.
pub fn validate_pack(
    seq: &DegreeSequence,
    pack: &FactorPack,
    matchings: usize,
    left: Option<usize>,
) -> Result<(), Error> {
    let bad = |m: String| Err(Error::InternalDefect(m));
    let n = seq.len();
    if pack.g.n() != n {
        return bad(format!("graph has {} vertices, sequence {n}", pack.g.n()));
    }
    for v in 0..n {
        if pack.g.degree(v) != seq.values()[v] {
            return bad(format!(
                "vertex {} has degree {} instead of {}",
                v + 1,
                pack.g.degree(v),
                seq.values()[v]
            ));
        }
    }
    if pack.one_factors.len() != matchings {
        return bad(format!("{} matchings instead of {matchings}", pack.one_factors.len()));
    }
    let mut used = SimpleGraph::new(n);
    for (i, m) in pack.one_factors.iter().enumerate() {
        if !m.is_perfect() {
            return bad(format!("matching {} is not perfect", i + 1));
        }
        for (u, v) in m.edges() {
            if !pack.g.has_edge(u, v) {
                return bad(format!("matching edge {} {} is not in G", u + 1, v + 1));
            }
            if !used.add_edge(u, v) {
                return bad(format!("edge {} {} is used twice", u + 1, v + 1));
            }
        }
    }
    match (left, &pack.leftover) {
        (Some(r), Some(l)) => {
            if !l.is_k_regular(r) {
                return bad(format!("leftover is not {r}-regular"));
            }
            for (u, v) in l.edges() {
                if !pack.g.has_edge(u, v) || used.has_edge(u, v) {
                    return bad(format!("leftover edge {} {} is misplaced", u + 1, v + 1));
                }
            }
        }
        (Some(0), None) | (None, None) => {}
        (None, Some(l)) if l.edge_count() == 0 => {}
        _ => return bad("leftover does not match".into()),
    }
    Ok(())
}

/// Outcome of checking the conjecture on one `(seq, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub sequence: DegreeSequence,
    pub k: usize,
    pub reduced_graphic: bool,
    /// Whether some realization has `k` disjoint perfect matchings.
    pub packing_exists: bool,
    /// The realization search hit its cap before finishing.
    pub truncated: bool,
    pub witness: Option<(SimpleGraph, Vec<Matching>)>,
}

impl ConjectureReport {
    pub fn agrees(&self) -> bool {
        self.truncated || self.reduced_graphic == self.packing_exists
    }
}

/// Realizations inspected before giving up when `D_k` is not graphic.
pub const CONJECTURE_REALIZATION_CAP: usize = 2_000_000;

pub fn verify_conjecture(seq: &DegreeSequence, k: usize) -> Result<ConjectureReport, Error> {
    let n = seq.len();
    guard_n(n)?;
    if n % 2 == 1 {
        return Err(Error::Precondition("the conjecture concerns even n".into()));
    }
    if !seq.is_graphic() {
        return Err(Error::NotGraphic(format!("{seq}")));
    }
    let reduced_graphic = k <= seq.min_degree()
        && seq.reduce_by_k(k).map(|s| s.is_graphic()).unwrap_or(false);
    let mut seen = 0usize;
    let mut truncated = false;
    let mut witness = None;
    for_each_realization(seq.values(), &BitGraph::complete(n), &mut |g| {
        seen += 1;
        if seen > CONJECTURE_REALIZATION_CAP {
            truncated = true;
            return true;
        }
        let found = disjoint_matchings(g, Some(k));
        if found.len() >= k {
            witness = Some((
                g.to_graph(),
                found.iter().map(|&m| mask_to_matching(g, m)).collect(),
            ));
            return true;
        }
        false
    });
    Ok(ConjectureReport {
        sequence: seq.clone(),
        k,
        reduced_graphic,
        packing_exists: witness.is_some(),
        truncated,
        witness,
    })
}

/// All graphic non-increasing sequences of length `n` accepted by `keep`,
/// lexicographically descending.
pub fn enumerate_sequences(
    n: usize,
    keep: &dyn Fn(&DegreeSequence) -> bool,
) -> Result<Vec<DegreeSequence>, Error> {
    guard_n(n)?;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(
        n: usize,
        hi: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<DegreeSequence>,
        keep: &dyn Fn(&DegreeSequence) -> bool,
    ) {
        if cur.len() == n {
            if is_graphic_values(cur) {
                let s = DegreeSequence::from_sorted_unchecked(cur.clone());
                if keep(&s) {
                    out.push(s);
                }
            }
            return;
        }
        for d in (0..=hi).rev() {
            cur.push(d);
            rec(n, d, cur, out, keep);
            cur.pop();
        }
    }
    if n == 0 {
        out.push(DegreeSequence::from_sorted_unchecked(Vec::new()));
        return Ok(out);
    }
    rec(n, n - 1, &mut cur, &mut out, keep);
    Ok(out)
}

/// Theorems the oracle can sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    Eq1,
    Eq3,
    Mid,
    Split,
    Fixed,
    LiBarrus,
    BergeTutte,
    GeProperties,
    Petersen,
    BergeEdgeConnectivity,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::Eq1,
        TheoremId::Eq3,
        TheoremId::Mid,
        TheoremId::Split,
        TheoremId::Fixed,
        TheoremId::LiBarrus,
        TheoremId::BergeTutte,
        TheoremId::GeProperties,
        TheoremId::Petersen,
        TheoremId::BergeEdgeConnectivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Eq1 => "eq1",
            TheoremId::Eq3 => "eq3",
            TheoremId::Mid => "mid",
            TheoremId::Split => "split",
            TheoremId::Fixed => "fixed",
            TheoremId::LiBarrus => "li_barrus",
            TheoremId::BergeTutte => "berge_tutte",
            TheoremId::GeProperties => "ge_properties",
            TheoremId::Petersen => "petersen",
            TheoremId::BergeEdgeConnectivity => "berge_edge_connectivity",
        }
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown theorem '{s}'")))
    }

    /// True for statements about all graphs rather than about sequences.
    pub fn is_graph_statement(self) -> bool {
        matches!(
            self,
            TheoremId::BergeTutte
                | TheoremId::GeProperties
                | TheoremId::Petersen
                | TheoremId::BergeEdgeConnectivity
        )
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One unit of work in a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Sequence { seq: DegreeSequence, k: usize },
    /// Sequence together with a fixed subgraph `F` (its edges, 0-based).
    Fixed { seq: DegreeSequence, f: Vec<(usize, usize)> },
    /// Graph number `mask` on `n` vertices, see [`BitGraph::from_pair_mask`].
    Graph { n: usize, mask: u64 },
    /// An explicit graph.
    Explicit(SimpleGraph),
}

/// One line of a sweep report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub sequence: DegreeSequence,
    pub k: Option<usize>,
    pub hypothesis_holds: bool,
    /// `None` when the hypothesis fails and the conclusion was not evaluated.
    pub conclusion_holds: Option<bool>,
    pub witness: String,
}

impl Record {
    pub fn is_violation(&self) -> bool {
        self.hypothesis_holds && self.conclusion_holds == Some(false)
    }
}

fn edges_text(g: &SimpleGraph) -> String {
    let parts: Vec<String> = g.edges().map(|(u, v)| format!("{}-{}", u + 1, v + 1)).collect();
    parts.join(" ")
}

fn positive_even(seq: &DegreeSequence) -> bool {
    seq.len() % 2 == 0 && !seq.is_empty() && seq.min_degree() >= 1
}

fn reduced_graphic(seq: &DegreeSequence, k: usize) -> bool {
    k <= seq.min_degree() && seq.reduce_by_k(k).is_ok_and(|s| s.is_graphic())
}

/// Families of fixed subgraphs swept for the appendix theorem: the empty
/// graph, matchings on the first `2j` vertices, and stars at each center.
pub fn fixed_families(seq: &DegreeSequence, r_max: usize) -> Vec<Vec<(usize, usize)>> {
    let n = seq.len();
    let mut out = vec![Vec::new()];
    for j in 1..=n / 2 {
        out.push((0..j).map(|i| (2 * i, 2 * i + 1)).collect());
    }
    for r in 2..=r_max.min(n.saturating_sub(1)) {
        for c in 0..n {
            let leaves: Vec<usize> = (0..n).filter(|&x| x != c).take(r).collect();
            out.push(leaves.iter().map(|&x| (c.min(x), c.max(x))).collect());
        }
    }
    out
}

/// Units of work for a sweep of `id` up to `n_max` vertices and `k <= k_max`.
pub fn theorem_instances(id: TheoremId, n_max: usize, k_max: usize) -> Result<Vec<Instance>, Error> {
    guard_n(n_max)?;
    let mut out = Vec::new();
    match id {
        TheoremId::BergeTutte | TheoremId::GeProperties => {
            if n_max > 8 {
                return Err(Error::Guard("all-graph sweeps need n <= 8".into()));
            }
            for n in 1..=n_max {
                let pairs = n * (n - 1) / 2;
                for mask in 0..(1u64 << pairs) {
                    out.push(Instance::Graph { n, mask });
                }
            }
        }
        TheoremId::Petersen => {
            for n in 3..=n_max {
                for d in (2..n).step_by(2) {
                    let s = DegreeSequence::from_sorted_unchecked(vec![d; n]);
                    for_each_realization(s.values(), &BitGraph::complete(n), &mut |g| {
                        out.push(Instance::Explicit(g.to_graph()));
                        false
                    });
                }
            }
        }
        TheoremId::BergeEdgeConnectivity => {
            for n in (2..=n_max).step_by(2) {
                for d in 1..n {
                    let s = DegreeSequence::from_sorted_unchecked(vec![d; n]);
                    for_each_realization(s.values(), &BitGraph::complete(n), &mut |g| {
                        out.push(Instance::Explicit(g.to_graph()));
                        false
                    });
                }
            }
        }
        TheoremId::LiBarrus => {
            for n in 1..=n_max {
                for seq in enumerate_sequences(n, &|_| true)? {
                    out.push(Instance::Sequence { seq, k: 0 });
                }
            }
        }
        TheoremId::Fixed => {
            for n in 2..=n_max {
                for seq in enumerate_sequences(n, &|s| s.min_degree() >= 1)? {
                    for f in fixed_families(&seq, k_max) {
                        out.push(Instance::Fixed { seq: seq.clone(), f });
                    }
                }
            }
        }
        TheoremId::Eq1 | TheoremId::Eq3 | TheoremId::Mid | TheoremId::Split => {
            for n in (2..=n_max).step_by(2) {
                for seq in enumerate_sequences(n, &positive_even)? {
                    for k in 1..=k_max.min(seq.min_degree()) {
                        out.push(Instance::Sequence { seq: seq.clone(), k });
                    }
                }
            }
        }
    }
    Ok(out)
}

fn edge_connectivity_at_least(g: &SimpleGraph, c: usize) -> bool {
    let n = g.n();
    if n <= 1 {
        return true;
    }
    // every proper nonempty S containing vertex 0
    for mask in 0u32..(1 << (n - 1)) {
        let inside = |v: usize| v == 0 || mask & (1 << (v - 1)) != 0;
        if (1..n).all(inside) {
            continue;
        }
        let cut = g.edges().filter(|&(u, v)| inside(u) != inside(v)).count();
        if cut < c {
            return false;
        }
    }
    true
}

/// `max_S o(G-S) - |S|` over every vertex subset.
fn max_tutte_deficit(b: &BitGraph) -> isize {
    let n = b.n();
    let all: u32 = (1u32 << n) - 1;
    let mut best = isize::MIN;
    for s in 0..=all {
        let mut rest = all & !s;
        let mut odd = 0isize;
        while rest != 0 {
            let start = rest & rest.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = u32::from(b.row(v)) & rest & !comp;
                comp |= new;
                frontier |= new;
            }
            rest &= !comp;
            odd += (comp.count_ones() % 2) as isize;
        }
        best = best.max(odd - s.count_ones() as isize);
    }
    best
}

/// Checks one instance; the conclusion never consults a packer.
pub fn check_instance(id: TheoremId, inst: &Instance) -> Result<Record, Error> {
    let graph_of = |inst: &Instance| -> Option<SimpleGraph> {
        match inst {
            Instance::Graph { n, mask } => Some(BitGraph::from_pair_mask(*n, *mask).to_graph()),
            Instance::Explicit(g) => Some(g.clone()),
            _ => None,
        }
    };
    if id.is_graph_statement() {
        let g = graph_of(inst)
            .ok_or_else(|| Error::Precondition(format!("{id} sweeps graphs, not sequences")))?;
        let sequence = g.degree_sequence_of();
        let n = g.n();
        let (hyp, concl) = match id {
            TheoremId::BergeTutte => {
                let nu = max_matching(&g).size();
                let best = max_tutte_deficit(&BitGraph::from_graph(&g));
                (true, n as isize - 2 * nu as isize == best)
            }
            TheoremId::GeProperties => {
                let m = max_matching(&g);
                let dec = gallai_edmonds_with(&g, &m);
                (true, verify_ge_properties(&g, &dec, &m).all_pass())
            }
            TheoremId::Petersen => {
                let ok = match petersen_2factorization(&g) {
                    Ok(parts) => {
                        let mut union = SimpleGraph::new(n);
                        parts.iter().all(|p| p.is_k_regular(2) && union.union_with(p))
                            && union == g
                            && parts.len() * 2 == g.degree(0)
                    }
                    Err(_) => false,
                };
                (true, ok)
            }
            TheoremId::BergeEdgeConnectivity => {
                let d = g.degree(0);
                let hyp = n % 2 == 0 && g.is_k_regular(d) && edge_connectivity_at_least(&g, d.saturating_sub(1));
                let concl = !hyp || max_matching(&g).is_perfect();
                (hyp, concl)
            }
            _ => unreachable!(),
        };
        return Ok(Record {
            sequence,
            k: None,
            hypothesis_holds: hyp,
            conclusion_holds: hyp.then_some(concl),
            witness: if hyp && !concl { edges_text(&g) } else { String::new() },
        });
    }
    match (id, inst) {
        (TheoremId::LiBarrus, Instance::Sequence { seq, .. }) => {
            let (m, mbar) = li_barrus_sum(seq);
            let want = li_barrus_expected(seq);
            Ok(Record {
                sequence: seq.clone(),
                k: None,
                hypothesis_holds: true,
                conclusion_holds: Some(m + mbar == want),
                witness: format!("m={m} m_bar={mbar} expected_sum={want}"),
            })
        }
        (TheoremId::Fixed, Instance::Fixed { seq, f }) => {
            let fg = SimpleGraph::from_edges(seq.len(), f.iter().copied())?;
            let r = fg.max_degree();
            let cond = check_main_fixed(seq, r).holds();
            // F must sit inside some realization
            let realizable = cond && find_fixed_realization(seq.values(), &fg, usize::MAX)?.is_some();
            let hyp = cond && realizable;
            let (concl, witness) = if hyp {
                match find_fixed_realization(seq.values(), &fg, 1)? {
                    Some(g) => (true, edges_text(&g)),
                    None => (false, format!("F = {}", edges_text(&fg))),
                }
            } else {
                (false, String::new())
            };
            Ok(Record {
                sequence: seq.clone(),
                k: Some(r),
                hypothesis_holds: hyp,
                conclusion_holds: hyp.then_some(concl),
                witness,
            })
        }
        (_, Instance::Sequence { seq, k }) => {
            let k = *k;
            let hyp = match id {
                TheoremId::Eq1 => positive_even(seq) && k <= seq.min_degree() && check_eq1(seq, k).holds(),
                TheoremId::Eq3 => positive_even(seq) && reduced_graphic(seq, k) && check_eq3(seq, k).holds(),
                TheoremId::Mid => positive_even(seq) && reduced_graphic(seq, k) && check_mid(seq, k).holds(),
                TheoremId::Split => positive_even(seq) && reduced_graphic(seq, k),
                _ => return Err(Error::Precondition(format!("{id} does not take a sequence"))),
            };
            if !hyp {
                return Ok(Record {
                    sequence: seq.clone(),
                    k: Some(k),
                    hypothesis_holds: false,
                    conclusion_holds: None,
                    witness: String::new(),
                });
            }
            let (concl, witness) = if id == TheoremId::Split {
                let r = split_bound(k, 0).min(k);
                match find_kfactor_with_r(seq, k, r)? {
                    Some((g, _, _)) => (true, format!("r={r} G: {}", edges_text(&g))),
                    None => (false, format!("r={r}")),
                }
            } else {
                match find_packing(seq, k)? {
                    Some((g, _)) => (true, edges_text(&g)),
                    None => (false, String::new()),
                }
            };
            Ok(Record {
                sequence: seq.clone(),
                k: Some(k),
                hypothesis_holds: true,
                conclusion_holds: Some(concl),
                witness,
            })
        }
        _ => Err(Error::Precondition(format!("instance does not fit {id}"))),
    }
}

/// Summary of a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub checked: usize,
    pub hypothesis_true: usize,
    pub violations: Vec<Record>,
}

impl TheoremReport {
    /// Folds records in; violations are kept sorted so the smallest comes first.
    pub fn from_records(theorem: TheoremId, records: &[Record]) -> Self {
        let mut violations: Vec<Record> = records.iter().filter(|r| r.is_violation()).cloned().collect();
        violations.sort_by(|a, b| {
            (a.sequence.len(), a.k, a.sequence.values()).cmp(&(b.sequence.len(), b.k, b.sequence.values()))
        });
        Self {
            theorem,
            checked: records.len(),
            hypothesis_true: records.iter().filter(|r| r.hypothesis_holds).count(),
            violations,
        }
    }

    /// The smallest counterexample, if any.
    pub fn minimal_counterexample(&self) -> Option<&Record> {
        self.violations.first()
    }
}

/// Serial sweep; the std companion runs the same instances in parallel.
pub fn verify_theorem(id: TheoremId, n_max: usize, k_max: usize) -> Result<TheoremReport, Error> {
    let records = theorem_instances(id, n_max, k_max)?
        .iter()
        .map(|inst| check_instance(id, inst))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TheoremReport::from_records(id, &records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::test_graphs::*;

    fn seq(v: &[usize]) -> DegreeSequence {
        DegreeSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn bitmask_deficit_matches_dense_count() {
        for n in 0..=5usize {
            for mask in 0u64..1 << (n * n.saturating_sub(1) / 2) {
                let b = BitGraph::from_pair_mask(n, mask);
                let g = b.to_graph();
                let dense = (0u32..1 << n)
                    .map(|m| {
                        let s: Vec<usize> = (0..n).filter(|&i| m & (1 << i) != 0).collect();
                        g.deficiency_of_set(&s)
                    })
                    .max()
                    .unwrap();
                assert_eq!(max_tutte_deficit(&b), dense);
            }
        }
    }

    #[test]
    fn realization_counts() {
        assert_eq!(count_realizations(&seq(&[2, 2, 2])).unwrap(), 1);
        assert_eq!(count_realizations(&seq(&[1, 1, 1, 1])).unwrap(), 3);
        assert_eq!(count_realizations(&seq(&[2, 2, 2, 2])).unwrap(), 3);
        let r = enumerate_realizations(&seq(&[1, 1, 1, 1]), 2).unwrap();
        assert!(r.truncated);
        assert_eq!(r.graphs.len(), 2);
    }

    #[test]
    fn realization_counts_match_adjacency_enumeration() {
        for n in 1..=6usize {
            let pairs = n * (n - 1) / 2;
            let mut counts: hashbrown::HashMap<Vec<usize>, u64> = hashbrown::HashMap::new();
            for mask in 0..(1u64 << pairs) {
                let g = BitGraph::from_pair_mask(n, mask);
                let degs: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
                let mut sorted = degs.clone();
                sorted.sort_unstable_by(|a, b| b.cmp(a));
                if sorted == degs {
                    *counts.entry(degs).or_default() += 1;
                }
            }
            for s in enumerate_sequences(n, &|_| true).unwrap() {
                assert_eq!(
                    count_realizations(&s).unwrap(),
                    counts.get(s.values()).copied().unwrap_or(0),
                    "{s}"
                );
            }
        }
    }

    #[test]
    fn disjoint_one_factor_examples() {
        assert_eq!(max_disjoint_one_factors(&SimpleGraph::complete(4)).unwrap(), 3);
        assert_eq!(max_disjoint_one_factors(&two_triangles()).unwrap(), 0);
        assert_eq!(max_disjoint_one_factors(&cycle(6)).unwrap(), 2);
        assert_eq!(max_disjoint_one_factors(&SimpleGraph::complete(6)).unwrap(), 5);
        assert_eq!(max_disjoint_one_factors(&cycle(5)).unwrap(), 0);
    }

    #[test]
    fn conjecture_examples() {
        let r = verify_conjecture(&seq(&[3, 3, 3, 3]), 3).unwrap();
        assert!(r.agrees() && r.reduced_graphic && r.packing_exists);
        let r = verify_conjecture(&seq(&[3, 1, 1, 1]), 1).unwrap();
        assert!(r.agrees() && !r.reduced_graphic && !r.packing_exists);
        let r = verify_conjecture(&seq(&[2, 2, 2, 2, 2, 2]), 2).unwrap();
        assert!(r.agrees() && r.packing_exists);
        let (g, _) = r.witness.unwrap();
        assert!(g.is_k_regular(2));
        assert_eq!(g.components().len(), 1);
    }

    #[test]
    fn sequence_enumeration() {
        let s2: Vec<Vec<usize>> = enumerate_sequences(2, &|_| true)
            .unwrap()
            .into_iter()
            .map(|s| s.into_values())
            .collect();
        assert_eq!(s2, vec![vec![1, 1], vec![0, 0]]);
        let s3: Vec<Vec<usize>> = enumerate_sequences(3, &|_| true)
            .unwrap()
            .into_iter()
            .map(|s| s.into_values())
            .collect();
        assert_eq!(s3, vec![vec![2, 2, 2], vec![2, 1, 1], vec![1, 1, 0], vec![0, 0, 0]]);
        assert_eq!(enumerate_sequences(4, &|s| s.min_degree() >= 1).unwrap().len(), 7);
    }

    #[test]
    fn kfactor_search() {
        let (h, f) = find_realization_with_k_factor(&[2; 6], 2).unwrap().unwrap();
        assert!(h.is_k_regular(2) && f.is_k_regular(2) && h.is_edge_disjoint(&f));
        assert!(find_realization_with_k_factor(&[2, 0, 0, 0], 1).unwrap().is_none());
        let (g, ms, f0) = find_kfactor_with_r(&seq(&[6; 8]), 6, 3).unwrap().unwrap();
        assert_eq!(ms.len(), 3);
        assert!(f0.is_k_regular(3));
        assert!(g.is_k_regular(6));
    }

    #[test]
    fn small_theorem_sweeps() {
        for (id, n, k) in [
            (TheoremId::Eq1, 6, 3),
            (TheoremId::Eq3, 6, 3),
            (TheoremId::Mid, 6, 3),
            (TheoremId::Split, 6, 3),
            (TheoremId::Fixed, 6, 2),
            (TheoremId::LiBarrus, 8, 0),
            (TheoremId::BergeTutte, 5, 0),
            (TheoremId::GeProperties, 5, 0),
            (TheoremId::Petersen, 7, 0),
            (TheoremId::BergeEdgeConnectivity, 6, 0),
        ] {
            let rep = verify_theorem(id, n, k).unwrap();
            assert!(rep.violations.is_empty(), "{id}: {:?}", rep.minimal_counterexample());
            assert!(rep.hypothesis_true > 0, "{id}");
        }
    }

    #[test]
    fn unknown_theorem_rejected() {
        assert!(TheoremId::parse("nope").is_err());
        assert_eq!(TheoremId::parse("li_barrus").unwrap(), TheoremId::LiBarrus);
    }
}
