//! Packing perfect matchings and k-factors into realizations.
//!
//! Every packer keeps an edge coloring of `K_n` (class 0 is `G` minus the
//! structure being built, class 1 is the complement of `G`, later classes
//! are the pieces found so far) and improves it one exchange at a time.
//! Exchanges keep the degree sequence of every class, so `G` always
//! realizes the input and finished pieces stay perfect matchings.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::construct::{
    cycles_of_2factor, havel_hakimi, havel_hakimi_keyed, petersen_2factorization,
    realize_avoiding, realize_with_k_factor, split_even_2factor, KunduConfig,
};
use crate::error::Error;
use crate::exchange::{enumerate_exchanges, find_exchange_unchecked, ExchangeList};
use crate::graphs::{Color, EdgeColoring, Matching, SimpleGraph};
use crate::matching::{gallai_edmonds_with, matching_number_without, max_matching, max_matching_within};
use crate::oracle;
use crate::sequences::{
    check_eq1, check_eq3, check_main_fixed, check_mid, split_bound, DegreeSequence,
};

const H1: Color = 0;
const H2: Color = 1;

/// One recorded change to the coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceStep {
    Exchange(ExchangeList),
    /// The listed edges of class `from` moved into a new last class.
    Refine { from: Color, edges: Vec<(usize, usize)> },
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceStep::Exchange(l) => write!(f, "exchange {l}"),
            TraceStep::Refine { from, edges } => {
                write!(f, "refine {}", from + 1)?;
                for (u, v) in edges {
                    write!(f, " {}-{}", u + 1, v + 1)?;
                }
                Ok(())
            }
        }
    }
}

/// Starting coloring plus every change made to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackTrace {
    pub initial: EdgeColoring,
    pub steps: Vec<TraceStep>,
}

impl PackTrace {
    /// Re-applies the steps to the initial coloring.
    pub fn replay(&self) -> Result<EdgeColoring, Error> {
        let mut c = self.initial.clone();
        for step in &self.steps {
            match step {
                TraceStep::Exchange(l) => crate::exchange::apply_in_place(&mut c, l)?,
                TraceStep::Refine { from, edges } => {
                    c.split_class(*from, edges)?;
                }
            }
        }
        Ok(c)
    }

    pub fn exchanges(&self) -> impl Iterator<Item = &ExchangeList> {
        self.steps.iter().filter_map(|s| match s {
            TraceStep::Exchange(l) => Some(l),
            TraceStep::Refine { .. } => None,
        })
    }
}

/// How the improving exchanges were found.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PackStats {
    pub exchanges: usize,
    /// Found among the candidates the structure of the current state points at.
    pub guided: usize,
    /// Found only by the shortest-exchange scan over all triples.
    pub fallback: usize,
    /// Found only after listing longer exchanges per triple.
    pub deep: usize,
    /// Needed a neutral exchange first.
    pub lookahead: usize,
    pub refinements: usize,
    /// Searches abandoned at the node budget.
    pub budget_skips: usize,
}

impl PackStats {
    fn absorb(&mut self, o: &PackStats) {
        self.exchanges += o.exchanges;
        self.guided += o.guided;
        self.fallback += o.fallback;
        self.deep += o.deep;
        self.lookahead += o.lookahead;
        self.refinements += o.refinements;
        self.budget_skips += o.budget_skips;
    }
}

/// A realization with edge-disjoint perfect matchings and an optional
/// leftover regular piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorPack {
    pub g: SimpleGraph,
    pub one_factors: Vec<Matching>,
    pub leftover: Option<SimpleGraph>,
    /// Changes made by the search. For routes through the complement
    /// sequence this describes the complement instance.
    pub trace: PackTrace,
    /// Coloring at the end of the search; `trace.replay()` reproduces it.
    pub coloring: EdgeColoring,
    pub stats: PackStats,
}

impl FactorPack {
    /// Union of the matchings and the leftover.
    pub fn factor(&self) -> SimpleGraph {
        let mut f = SimpleGraph::new(self.g.n());
        for m in &self.one_factors {
            f.union_with(&m.to_graph());
        }
        if let Some(l) = &self.leftover {
            f.union_with(l);
        }
        f
    }
}

#[derive(Debug, Clone)]
pub struct PackOptions {
    pub seed: u64,
    pub kundu: KunduConfig,
    /// Node budget for a single exchange search.
    pub node_budget: usize,
    /// Exchanges listed per triple once the shortest ones fail.
    pub deep_limit: usize,
    /// Allow a neutral exchange followed by an improving one.
    pub lookahead: bool,
    /// Improvement steps allowed per stage before giving up.
    pub max_steps: usize,
}

impl Default for PackOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            kundu: KunduConfig::default(),
            node_budget: 200_000,
            deep_limit: 64,
            lookahead: true,
            max_steps: 100_000,
        }
    }
}

impl PackOptions {
    fn kundu(&self) -> KunduConfig {
        KunduConfig {
            seed: self.seed,
            ..self.kundu.clone()
        }
    }
}

type Triple = (usize, usize, usize);

/// What the search tries to lower.
trait Objective {
    type Score: Ord + Clone + fmt::Debug;

    fn score(&self, c: &EdgeColoring) -> Self::Score;

    /// The new score when `c` beats `current`.
    fn improves(&self, c: &EdgeColoring, current: &Self::Score) -> Option<Self::Score> {
        let s = self.score(c);
        (s < *current).then_some(s)
    }
}

/// Which moves the search may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Moves {
    /// Any exchange.
    Exchanges,
    /// Only 2-switches between classes 0 and 1.
    TwoSwitches,
}

fn swap_raw(c: &mut EdgeColoring, l: &ExchangeList) {
    for &x in &l.xs {
        let a = c.color(l.v, x);
        let b = c.color(x, l.u);
        c.set_color(l.v, x, b);
        c.set_color(x, l.u, a);
    }
}

struct Session {
    c: EdgeColoring,
    trace: PackTrace,
    stats: PackStats,
    opts: PackOptions,
    /// Degree sequence of every class; exchanges must keep these.
    baseline: Vec<Vec<usize>>,
}

enum Found<S> {
    Better(S),
    None,
}

impl Session {
    fn new(c: EdgeColoring, opts: &PackOptions) -> Self {
        let baseline = (0..c.t()).map(|j| c.class_degrees(j)).collect();
        Self {
            trace: PackTrace {
                initial: c.clone(),
                steps: Vec::new(),
            },
            c,
            stats: PackStats::default(),
            opts: opts.clone(),
            baseline,
        }
    }

    fn class(&self, j: Color) -> SimpleGraph {
        self.c.extract_class(j).expect("class in range")
    }

    fn refine(&mut self, from: Color, edges: Vec<(usize, usize)>) -> Result<Color, Error> {
        let new = self.c.split_class(from, &edges)?;
        self.baseline[from] = self.c.class_degrees(from);
        self.baseline.push(self.c.class_degrees(new));
        self.trace.steps.push(TraceStep::Refine { from, edges });
        self.stats.refinements += 1;
        Ok(new)
    }

    fn commit(&mut self, l: ExchangeList) -> Result<(), Error> {
        for j in 0..self.c.t() {
            if self.c.class_degrees(j) != self.baseline[j] {
                return Err(Error::InternalDefect(format!(
                    "exchange {l} changed the degrees of class {}",
                    j + 1
                )));
            }
        }
        self.trace.steps.push(TraceStep::Exchange(l));
        self.stats.exchanges += 1;
        Ok(())
    }

    fn triples(&self) -> Vec<Triple> {
        let n = self.c.n();
        let mut out = Vec::new();
        for v in 0..n {
            for x0 in 0..n {
                if x0 == v {
                    continue;
                }
                for u in 0..n {
                    if u != v && u != x0 && self.c.color(v, x0) != self.c.color(x0, u) {
                        out.push((v, x0, u));
                    }
                }
            }
        }
        out
    }

    /// Every 2-switch between classes 0 and 1 as a length-2 exchange.
    fn two_switches(&self) -> Vec<ExchangeList> {
        let n = self.c.n();
        let mut out = Vec::new();
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.c.color(a, b) == H1)
            .collect();
        for (i, &(a0, b0)) in edges.iter().enumerate() {
            for &(c0, d0) in &edges[i + 1..] {
                for (p, q) in [(a0, b0), (b0, a0)] {
                    // remove pq and rs, add pr and qs
                    let (r, s) = (c0, d0);
                    for (r, s) in [(r, s), (s, r)] {
                        if p == r || p == s || q == r || q == s {
                            continue;
                        }
                        if self.c.color(p, r) == H2 && self.c.color(q, s) == H2 {
                            out.push(ExchangeList::new(p, s, vec![q, r]));
                        }
                    }
                }
            }
        }
        out
    }

    fn probe<O: Objective>(
        &mut self,
        obj: &O,
        current: &O::Score,
        l: &ExchangeList,
    ) -> Option<O::Score> {
        swap_raw(&mut self.c, l);
        let hit = obj.improves(&self.c, current);
        if hit.is_none() {
            swap_raw(&mut self.c, l);
        }
        hit
    }

    fn shortest(&mut self, t: Triple) -> Option<ExchangeList> {
        match find_exchange_unchecked(&self.c, t.0, t.1, t.2, &[], self.opts.node_budget) {
            Ok(found) => found,
            Err(_) => {
                self.stats.budget_skips += 1;
                None
            }
        }
    }

    /// Tries shortest exchanges for `triples`; applies and returns the first improving one.
    fn scan<O: Objective>(
        &mut self,
        obj: &O,
        current: &O::Score,
        triples: &[Triple],
    ) -> Option<(ExchangeList, O::Score)> {
        for &t in triples {
            if let Some(l) = self.shortest(t) {
                if let Some(s) = self.probe(obj, current, &l) {
                    return Some((l, s));
                }
            }
        }
        None
    }

    /// Finds and applies one improving move.
    fn improve<O: Objective>(
        &mut self,
        obj: &O,
        current: &O::Score,
        guided: &[Triple],
        moves: Moves,
    ) -> Result<Found<O::Score>, Error> {
        if moves == Moves::TwoSwitches {
            return self.improve_switches(obj, current, guided);
        }
        if let Some((l, s)) = self.scan(obj, current, guided) {
            self.stats.guided += 1;
            self.commit(l)?;
            return Ok(Found::Better(s));
        }
        let all = self.triples();
        if let Some((l, s)) = self.scan(obj, current, &all) {
            self.stats.fallback += 1;
            self.commit(l)?;
            return Ok(Found::Better(s));
        }
        for &(v, x0, u) in &all {
            let lists = match enumerate_exchanges(
                &self.c,
                v,
                x0,
                u,
                &[],
                self.opts.deep_limit,
                self.opts.node_budget,
            ) {
                Ok(ls) => ls,
                Err(_) => {
                    self.stats.budget_skips += 1;
                    continue;
                }
            };
            for l in lists.into_iter().skip(1) {
                if let Some(s) = self.probe(obj, current, &l) {
                    self.stats.deep += 1;
                    self.commit(l)?;
                    return Ok(Found::Better(s));
                }
            }
        }
        if self.opts.lookahead {
            for &t in &all {
                let Some(first) = self.shortest(t) else { continue };
                swap_raw(&mut self.c, &first);
                if obj.score(&self.c) == *current {
                    let again = self.triples();
                    if let Some((second, s)) = self.scan(obj, current, &again) {
                        self.stats.lookahead += 1;
                        self.commit(first)?;
                        self.commit(second)?;
                        return Ok(Found::Better(s));
                    }
                }
                swap_raw(&mut self.c, &first);
            }
        }
        Ok(Found::None)
    }

    fn improve_switches<O: Objective>(
        &mut self,
        obj: &O,
        current: &O::Score,
        focus: &[Triple],
    ) -> Result<Found<O::Score>, Error> {
        let focus: BTreeSet<usize> = focus.iter().map(|t| t.0).collect();
        let mut all = self.two_switches();
        // switches touching the focus vertices go first
        all.sort_by_key(|l| {
            !(focus.contains(&l.v)
                || focus.contains(&l.u)
                || l.xs.iter().any(|x| focus.contains(x)))
        });
        let guided_end = all
            .iter()
            .position(|l| {
                !(focus.contains(&l.v)
                    || focus.contains(&l.u)
                    || l.xs.iter().any(|x| focus.contains(x)))
            })
            .unwrap_or(all.len());
        for (i, l) in all.iter().enumerate() {
            if let Some(s) = self.probe(obj, current, l) {
                if i < guided_end {
                    self.stats.guided += 1;
                } else {
                    self.stats.fallback += 1;
                }
                self.commit(l.clone())?;
                return Ok(Found::Better(s));
            }
        }
        if self.opts.lookahead {
            for first in &all {
                swap_raw(&mut self.c, first);
                if obj.score(&self.c) == *current {
                    for second in self.two_switches() {
                        if let Some(s) = self.probe(obj, current, &second) {
                            self.stats.lookahead += 1;
                            self.commit(first.clone())?;
                            self.commit(second)?;
                            return Ok(Found::Better(s));
                        }
                    }
                }
                swap_raw(&mut self.c, first);
            }
        }
        Ok(Found::None)
    }

    fn matching_of(&self, j: Color) -> Matching {
        let g = self.class(j);
        Matching::from_edges(g.n(), g.edges()).expect("class is a matching")
    }

    fn into_pack(self, factors: &[Color], leftover: Option<Color>) -> FactorPack {
        let g = self.class(H2).complement();
        let one_factors = factors.iter().map(|&j| self.matching_of(j)).collect();
        let leftover = leftover.map(|j| self.class(j));
        FactorPack {
            g,
            one_factors,
            leftover,
            coloring: self.c,
            trace: self.trace,
            stats: self.stats,
        }
    }
}

fn dedup(triples: Vec<Triple>, c: &EdgeColoring) -> Vec<Triple> {
    let mut seen = BTreeSet::new();
    triples
        .into_iter()
        .filter(|&(v, x0, u)| {
            v != x0 && v != u && x0 != u && c.color(v, x0) != c.color(x0, u)
        })
        .filter(|t| seen.insert(*t))
        .collect()
}

fn stuck(what: &str, score: &dyn fmt::Debug) -> Error {
    Error::InternalDefect(format!(
        "no improving exchange found while {what} (score {score:?})"
    ))
}

/// `(def(H), t)` with `v_t` the first vertex some maximum matching of `H` misses.
struct DefIndex {
    class: Color,
}

impl DefIndex {
    fn first_missable(h: &SimpleGraph, m: &Matching, below: usize) -> Option<usize> {
        (0..below.min(h.n())).find(|&v| !m.covers(v) || matching_number_without(h, m, &[v]) == m.size())
    }
}

impl Objective for DefIndex {
    type Score = (usize, usize);

    fn score(&self, c: &EdgeColoring) -> (usize, usize) {
        let h = c.extract_class(self.class).expect("class in range");
        let m = max_matching(&h);
        let def = h.n() - 2 * m.size();
        if def == 0 {
            return (0, 0);
        }
        let t = Self::first_missable(&h, &m, h.n()).expect("some vertex is missed");
        (def, t)
    }

    fn improves(&self, c: &EdgeColoring, current: &(usize, usize)) -> Option<(usize, usize)> {
        let h = c.extract_class(self.class).expect("class in range");
        let m = max_matching(&h);
        let def = h.n() - 2 * m.size();
        if def < current.0 {
            return Some(if def == 0 {
                (0, 0)
            } else {
                (def, Self::first_missable(&h, &m, h.n()).expect("some vertex is missed"))
            });
        }
        if def > current.0 || def == 0 {
            return None;
        }
        Self::first_missable(&h, &m, current.1).map(|t| (def, t))
    }
}

/// `def` of one class.
struct Deficiency {
    class: Color,
}

impl Objective for Deficiency {
    type Score = usize;

    fn score(&self, c: &EdgeColoring) -> usize {
        let h = c.extract_class(self.class).expect("class in range");
        h.n() - 2 * max_matching(&h).size()
    }
}

/// Number of cycles of a 2-factor class.
struct CycleCount {
    class: Color,
}

impl Objective for CycleCount {
    type Score = usize;

    fn score(&self, c: &EdgeColoring) -> usize {
        cycles_of_2factor(&c.extract_class(self.class).expect("class in range")).len()
    }
}

/// `(def(H), total - best exposed weight)` for `H` = class 0, weights being
/// the degrees in `G`.
struct ExposedWeight {
    weights: Vec<usize>,
}

impl ExposedWeight {
    /// Largest total weight of the vertices a maximum matching can miss.
    /// Covered sets of maximum matchings are the bases of the matching
    /// matroid, so covering light vertices first is optimal.
    fn best_exposed(&self, h: &SimpleGraph, nu: usize) -> usize {
        let n = h.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (self.weights[v], v));
        let mut covered: Vec<usize> = Vec::new();
        for v in order {
            if covered.len() == 2 * nu {
                break;
            }
            covered.push(v);
            if !coverable(h, &covered) {
                covered.pop();
            }
        }
        let total: usize = self.weights.iter().sum();
        total - covered.iter().map(|&v| self.weights[v]).sum::<usize>()
    }
}

/// Whether some matching of `h` covers every vertex of `set`.
fn coverable(h: &SimpleGraph, set: &[usize]) -> bool {
    let n = h.n();
    let mut inside = vec![false; n];
    for &v in set {
        inside[v] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&v| !inside[v]).collect();
    let mut z = free.len();
    if (n + z) % 2 == 1 {
        z += 1;
    }
    // gadget: z extra vertices forming a clique, each joined to every free vertex
    let mut g = SimpleGraph::new(n + z);
    for (a, b) in h.edges() {
        g.add_edge(a, b);
    }
    for i in 0..z {
        for j in i + 1..z {
            g.add_edge(n + i, n + j);
        }
        for &f in &free {
            g.add_edge(n + i, f);
        }
    }
    max_matching(&g).is_perfect()
}

impl Objective for ExposedWeight {
    type Score = (usize, usize);

    fn score(&self, c: &EdgeColoring) -> (usize, usize) {
        let h = c.extract_class(H1).expect("class 0");
        let nu = max_matching(&h).size();
        let total: usize = self.weights.iter().sum();
        (h.n() - 2 * nu, total - self.best_exposed(&h, nu))
    }

    fn improves(&self, c: &EdgeColoring, current: &(usize, usize)) -> Option<(usize, usize)> {
        let h = c.extract_class(H1).expect("class 0");
        let nu = max_matching(&h).size();
        let def = h.n() - 2 * nu;
        if def > current.0 {
            return None;
        }
        let total: usize = self.weights.iter().sum();
        let s = (def, total - self.best_exposed(&h, nu));
        (s < *current).then_some(s)
    }
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), Error> {
    if cond {
        Ok(())
    } else {
        Err(Error::ConditionNotMet(msg()))
    }
}

fn require_even_positive(seq: &DegreeSequence, k: usize) -> Result<(), Error> {
    if !seq.is_graphic() {
        return Err(Error::NotGraphic(format!("{seq}")));
    }
    require(seq.len() % 2 == 0, || format!("n = {} is odd", seq.len()))?;
    require(k >= 1, || "k must be positive".into())?;
    require(k <= seq.min_degree(), || {
        format!("k = {k} exceeds the minimum degree {}", seq.min_degree())
    })
}

fn reduced_is_graphic(seq: &DegreeSequence, k: usize) -> bool {
    seq.reduce_by_k(k).is_ok_and(|s| s.is_graphic())
}

fn initial_realization(seq: &DegreeSequence, seed: u64) -> Result<SimpleGraph, Error> {
    if seed == 0 {
        return havel_hakimi(seq);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let key: Vec<u64> = (0..seq.len()).map(|_| rng.random()).collect();
    havel_hakimi_keyed(seq.values(), &key).ok_or_else(|| Error::NotGraphic(format!("{seq}")))
}

/// Grows perfect matchings inside class 0 until there are `k`; returns their classes.
fn one_factor_stage(s: &mut Session, k: usize, mut factors: Vec<Color>) -> Result<Vec<Color>, Error> {
    let obj = DefIndex { class: H1 };
    let mut steps = 0;
    while factors.len() < k {
        let h1 = s.class(H1);
        let m = max_matching(&h1);
        if m.is_perfect() {
            factors.push(s.refine(H1, m.edges().collect())?);
            continue;
        }
        let current = obj.score(&s.c);
        let guided = one_factor_guided(&s.c, &h1, &m, current.1);
        match s.improve(&obj, &current, &guided, Moves::Exchanges)? {
            Found::Better(next) => {
                if next >= current {
                    return Err(Error::InternalDefect(format!(
                        "score did not decrease: {current:?} -> {next:?}"
                    )));
                }
            }
            Found::None => {
                return Err(stuck(
                    &format!("packing matching {} of {k}", factors.len() + 1),
                    &current,
                ))
            }
        }
        steps += 1;
        if steps > s.opts.max_steps {
            return Err(Error::InternalDefect("step limit reached".into()));
        }
    }
    Ok(factors)
}

/// Candidates around the missed vertex `v_t` and the vertices missable together with it.
fn one_factor_guided(c: &EdgeColoring, h1: &SimpleGraph, m: &Matching, t: usize) -> Vec<Triple> {
    let n = h1.n();
    let mut dp = Vec::new();
    for u in 0..n {
        if u == t {
            continue;
        }
        let alive: Vec<bool> = (0..n).map(|x| x != u && x != t).collect();
        if max_matching_within(h1, &alive, Some(m)).size() == m.size() {
            dp.push(u);
        }
    }
    let mut out = Vec::new();
    for &u in &dp {
        for w in h1.neighbors(u) {
            out.push((t, u, w));
            out.push((t, w, u));
        }
    }
    for &x in &dp {
        for s in h1.neighbors(x) {
            out.push((t, x, s));
        }
    }
    for w in 0..t {
        if let Some(x0) = m.mate(w) {
            for &u in &dp {
                out.push((w, x0, u));
            }
        }
    }
    dedup(out, c)
}

/// `k` disjoint perfect matchings in a realization of `seq`.
pub fn pack_one_factors(seq: &DegreeSequence, k: usize, opts: &PackOptions) -> Result<FactorPack, Error> {
    require_even_positive(seq, k)?;
    let rep = check_eq1(seq, k);
    require(rep.holds(), || format!("{rep}"))?;
    let g = initial_realization(seq, opts.seed)?;
    let c = EdgeColoring::build(&[g.clone(), g.complement()])?;
    let mut s = Session::new(c, opts);
    let factors = one_factor_stage(&mut s, k, Vec::new())?;
    Ok(s.into_pack(&factors, None))
}

/// `(n-1-d_n+k, ..., n-1-d_1+k)`, vertex `i` standing for vertex `n-1-i` of `seq`.
fn lifted_complement(seq: &DegreeSequence, k: usize) -> Result<DegreeSequence, Error> {
    let n = seq.len();
    let v: Vec<usize> = (0..n).map(|i| n - 1 - seq.values()[n - 1 - i] + k).collect();
    DegreeSequence::new(v)
}

/// Moves a pack for the lifted complement back: `G = complement(G') + M`.
fn transfer_from_complement(seq: &DegreeSequence, inner: FactorPack) -> FactorPack {
    let n = seq.len();
    let perm: Vec<usize> = (0..n).map(|i| n - 1 - i).collect();
    let mut g = inner.g.relabel(&perm).complement();
    let mut one_factors = Vec::with_capacity(inner.one_factors.len());
    for m in &inner.one_factors {
        let moved = m.to_graph().relabel(&perm);
        g.union_with(&moved);
        one_factors.push(Matching::from_edges(n, moved.edges()).expect("relabeled matching"));
    }
    FactorPack {
        g,
        one_factors,
        leftover: None,
        trace: inner.trace,
        coloring: inner.coloring,
        stats: inner.stats,
    }
}

/// `k` disjoint perfect matchings built in the lifted complement of `D_k(seq)`.
pub fn pack_via_complement(seq: &DegreeSequence, k: usize, opts: &PackOptions) -> Result<FactorPack, Error> {
    require_even_positive(seq, k)?;
    require(reduced_is_graphic(seq, k), || format!("D_{k} of {seq} is not graphic"))?;
    let rep = check_eq3(seq, k);
    require(rep.holds(), || format!("{rep}"))?;
    let q = lifted_complement(seq, k)?;
    if !check_eq1(&q, k).holds() {
        return Err(Error::InternalDefect(format!(
            "the lifted complement {q} misses the one-factor condition"
        )));
    }
    let inner = pack_one_factors(&q, k, opts)?;
    Ok(transfer_from_complement(seq, inner))
}

/// Guided candidates for lowering `def(F_0)`: moves through a vertex of `D`
/// and one of its `F_0` neighbors toward another vertex of `D`.
fn split_guided(c: &EdgeColoring, f0: &SimpleGraph, m: &Matching) -> Vec<Triple> {
    let dec = gallai_edmonds_with(f0, m);
    let mut out = Vec::new();
    for &a in &dec.d {
        for b in f0.neighbors(a) {
            for &z in &dec.d {
                out.push((a, b, z));
                out.push((b, a, z));
            }
        }
    }
    dedup(out, c)
}

/// Peels perfect matchings out of class `f0` until `r` matchings exist.
fn split_stage(
    s: &mut Session,
    f0: Color,
    r: usize,
    mut factors: Vec<Color>,
) -> Result<Vec<Color>, Error> {
    let obj = Deficiency { class: f0 };
    let mut steps = 0;
    while factors.len() < r {
        let g0 = s.class(f0);
        let m = max_matching(&g0);
        if m.is_perfect() {
            factors.push(s.refine(f0, m.edges().collect())?);
            continue;
        }
        let current = obj.score(&s.c);
        let guided = split_guided(&s.c, &g0, &m);
        match s.improve(&obj, &current, &guided, Moves::Exchanges)? {
            Found::Better(next) if next < current => {}
            Found::Better(next) => {
                return Err(Error::InternalDefect(format!(
                    "score did not decrease: {current} -> {next}"
                )))
            }
            Found::None => {
                return Err(stuck(
                    &format!("splitting matching {} of {r} off the factor", factors.len() + 1),
                    &current,
                ))
            }
        }
        steps += 1;
        if steps > s.opts.max_steps {
            return Err(Error::InternalDefect("step limit reached".into()));
        }
    }
    Ok(factors)
}

/// Session on a realization of `seq` with a `k`-factor: classes `G - F`,
/// complement, `F`.
fn kfactor_session(seq: &DegreeSequence, k: usize, opts: &PackOptions) -> Result<Session, Error> {
    let kr = realize_with_k_factor(seq, k, &opts.kundu())?;
    let mut rest = kr.g.clone();
    rest.subtract(&kr.f);
    let c = EdgeColoring::build(&[rest, kr.g.complement(), kr.f])?;
    Ok(Session::new(c, opts))
}

fn split_preconditions(seq: &DegreeSequence, k: usize) -> Result<(), Error> {
    require_even_positive(seq, k)?;
    require(reduced_is_graphic(seq, k), || format!("D_{k} of {seq} is not graphic"))
}

/// A `k`-factor of a realization of `seq` containing `r` disjoint perfect matchings;
/// the rest of the factor is the `(k-r)`-regular leftover.
pub fn pack_kfactor_with_r(
    seq: &DegreeSequence,
    k: usize,
    r: usize,
    opts: &PackOptions,
) -> Result<FactorPack, Error> {
    split_preconditions(seq, k)?;
    let bound = split_bound(k, 0).min(k);
    require(r <= bound, || format!("r = {r} exceeds the bound {bound} for k = {k}"))?;
    let mut s = kfactor_session(seq, k, opts)?;
    let factors = split_stage(&mut s, 2, r, Vec::new())?;
    Ok(s.into_pack(&factors, Some(2)))
}

/// `pack_kfactor_with_r` run on `(d_1+k', ..., d_n+k')` at `k+k'`, then
/// `k'/2` of the leftover's 2-factors dropped from `G`.
pub fn pack_with_petersen_boost(
    seq: &DegreeSequence,
    k: usize,
    kprime: usize,
    r: usize,
    opts: &PackOptions,
) -> Result<FactorPack, Error> {
    split_preconditions(seq, k)?;
    let n = seq.len();
    require(kprime % 2 == 0, || format!("k' = {kprime} is odd"))?;
    require(kprime + seq.max_degree() < n, || {
        format!("k' = {kprime} exceeds n-1-d_1 = {}", n - 1 - seq.max_degree())
    })?;
    require(r <= k, || format!("r = {r} exceeds k = {k}"))?;
    require((k - r) % 2 == 0, || format!("r = {r} and k = {k} differ in parity"))?;
    let lifted = seq.lift_by_k(kprime)?;
    require(lifted.is_graphic(), || format!("the lifted sequence {lifted} is not graphic"))?;
    let bound = split_bound(k, kprime).min(k);
    require(r <= bound, || format!("r = {r} exceeds the bound {bound}"))?;
    let mut inner = pack_kfactor_with_r(&lifted, k + kprime, r, opts)?;
    let f0 = inner.leftover.take().expect("split packs carry a leftover");
    let parts = if f0.edge_count() == 0 {
        Vec::new()
    } else {
        petersen_2factorization(&f0)?
    };
    let keep = (k - r) / 2;
    let mut leftover = SimpleGraph::new(n);
    for p in &parts[..keep] {
        leftover.union_with(p);
    }
    for p in &parts[keep..] {
        inner.g.subtract(p);
    }
    inner.leftover = Some(leftover);
    Ok(inner)
}

/// Merges cycles of each 2-factor class until it splits into two matchings.
fn merge_stage(
    s: &mut Session,
    mut two_factors: Vec<Color>,
    mut factors: Vec<Color>,
) -> Result<Vec<Color>, Error> {
    while let Some(q) = two_factors.pop() {
        let obj = CycleCount { class: q };
        let mut steps = 0;
        loop {
            let tq = s.class(q);
            if let Some((a, _)) = split_even_2factor(&tq)? {
                factors.push(s.refine(q, a.edges().collect())?);
                factors.push(q);
                break;
            }
            let cycles = cycles_of_2factor(&tq);
            let current = cycles.len();
            let mut which = vec![0usize; tq.n()];
            for (i, cyc) in cycles.iter().enumerate() {
                for &v in cyc {
                    which[v] = i;
                }
            }
            let mut guided = Vec::new();
            for v in 0..tq.n() {
                for u in 0..tq.n() {
                    if which[u] == which[v] {
                        continue;
                    }
                    for x0 in tq.neighbors(v).chain(tq.neighbors(u)) {
                        guided.push((v, x0, u));
                    }
                }
            }
            let guided = dedup(guided, &s.c);
            match s.improve(&obj, &current, &guided, Moves::Exchanges)? {
                Found::Better(next) if next < current => {}
                Found::Better(next) => {
                    return Err(Error::InternalDefect(format!(
                        "cycle count did not decrease: {current} -> {next}"
                    )))
                }
                Found::None => return Err(stuck("merging cycles of a 2-factor", &current)),
            }
            steps += 1;
            if steps > s.opts.max_steps {
                return Err(Error::InternalDefect("step limit reached".into()));
            }
        }
    }
    Ok(factors)
}

/// Splits class `f0` (even regular, possibly empty) into 2-factor classes.
fn petersen_refine(s: &mut Session, f0: Color) -> Result<Vec<Color>, Error> {
    let g0 = s.class(f0);
    if g0.edge_count() == 0 {
        return Ok(Vec::new());
    }
    let parts = petersen_2factorization(&g0)?;
    let mut classes = Vec::with_capacity(parts.len());
    for p in &parts[..parts.len() - 1] {
        classes.push(s.refine(f0, p.edges().collect())?);
    }
    classes.push(f0);
    Ok(classes)
}

fn merge_direct(seq: &DegreeSequence, k: usize, opts: &PackOptions) -> Result<FactorPack, Error> {
    let mut s = kfactor_session(seq, k, opts)?;
    let factors = split_stage(&mut s, 2, k % 2, Vec::new())?;
    let two = petersen_refine(&mut s, 2)?;
    let factors = merge_stage(&mut s, two, factors)?;
    if factors.len() != k {
        return Err(Error::InternalDefect(format!(
            "built {} matchings instead of {k}",
            factors.len()
        )));
    }
    Ok(s.into_pack(&factors, None))
}

/// `k` disjoint perfect matchings from a k-factor split into matchings and
/// 2-factors whose cycles are merged by exchanges.
pub fn merge_cycles_pack(seq: &DegreeSequence, k: usize, opts: &PackOptions) -> Result<FactorPack, Error> {
    split_preconditions(seq, k)?;
    let rep = check_mid(seq, k);
    require(rep.holds(), || format!("{rep}"))?;
    if rep.clause(1).holds() {
        return merge_direct(seq, k, opts);
    }
    let q = lifted_complement(seq, k)?;
    let inner = merge_direct(&q, k, opts)?;
    Ok(transfer_from_complement(seq, inner))
}

/// Which construction produced a pack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PackMethod {
    Eq1,
    Eq3,
    Mid,
    Split,
}

impl PackMethod {
    pub fn name(self) -> &'static str {
        match self {
            PackMethod::Eq1 => "eq1",
            PackMethod::Eq3 => "eq3",
            PackMethod::Mid => "mid",
            PackMethod::Split => "split",
        }
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        match s {
            "eq1" => Ok(PackMethod::Eq1),
            "eq3" => Ok(PackMethod::Eq3),
            "mid" => Ok(PackMethod::Mid),
            "split" => Ok(PackMethod::Split),
            _ => Err(Error::Precondition(format!("unknown method '{s}'"))),
        }
    }
}

impl fmt::Display for PackMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestPack {
    pub pack: FactorPack,
    pub count: usize,
    pub method: Option<PackMethod>,
    /// `2 floor(k/3)`.
    pub target: usize,
    /// Why routes were skipped or fell short.
    pub notes: Vec<String>,
}

/// The split route: `r` matchings from the factor, then every even 2-factor
/// of the leftover split into two more.
fn split_route(seq: &DegreeSequence, k: usize, opts: &PackOptions) -> Result<FactorPack, Error> {
    let bound = split_bound(k, 0).min(k);
    let r = (0..=bound).rev().find(|r| (k - r) % 2 == 0).expect("r = k mod 2 qualifies");
    let mut s = kfactor_session(seq, k, opts)?;
    let mut factors = split_stage(&mut s, 2, r, Vec::new())?;
    let two = petersen_refine(&mut s, 2)?;
    let mut odd = Vec::new();
    for q in two {
        match split_even_2factor(&s.class(q))? {
            Some((a, _)) => {
                factors.push(s.refine(q, a.edges().collect())?);
                factors.push(q);
            }
            None => odd.push(q),
        }
    }
    let mut pack = s.into_pack(&factors, None);
    if !odd.is_empty() {
        let mut left = SimpleGraph::new(seq.len());
        for &q in &odd {
            left.union_with(&pack.coloring.extract_class(q)?);
        }
        pack.leftover = Some(left);
    }
    Ok(pack)
}

/// The largest packing among the available routes, tried in order
/// eq1, eq3, mid, split.
pub fn pack_best(seq: &DegreeSequence, k: usize, opts: &PackOptions) -> Result<BestPack, Error> {
    if !seq.is_graphic() {
        return Err(Error::NotGraphic(format!("{seq}")));
    }
    let target = 2 * (k / 3);
    let mut notes = Vec::new();
    let fallback = || -> Result<BestPack, Error> {
        let g = havel_hakimi(seq)?;
        let c = EdgeColoring::build(&[g.clone(), g.complement()])?;
        let s = Session::new(c, opts);
        let mut pack = s.into_pack(&[], None);
        pack.leftover = Some(g);
        Ok(BestPack {
            pack,
            count: 0,
            method: None,
            target,
            notes: Vec::new(),
        })
    };
    let n = seq.len();
    if n % 2 == 1 || k == 0 || k > seq.min_degree() || !reduced_is_graphic(seq, k) {
        let mut out = fallback()?;
        out.notes.push(if n % 2 == 1 {
            format!("n = {n} is odd")
        } else if k == 0 || k > seq.min_degree() {
            format!("k = {k} is outside 1..=d_n")
        } else {
            format!("D_{k} of {seq} is not graphic")
        });
        return Ok(out);
    }
    let routes: [(PackMethod, bool); 3] = [
        (PackMethod::Eq1, check_eq1(seq, k).holds()),
        (PackMethod::Eq3, check_eq3(seq, k).holds()),
        (PackMethod::Mid, check_mid(seq, k).holds()),
    ];
    for (method, holds) in routes {
        if !holds {
            notes.push(format!("{method}: condition fails"));
            continue;
        }
        let res = match method {
            PackMethod::Eq1 => pack_one_factors(seq, k, opts),
            PackMethod::Eq3 => pack_via_complement(seq, k, opts),
            _ => merge_cycles_pack(seq, k, opts),
        };
        match res {
            Ok(pack) => {
                return Ok(BestPack {
                    count: pack.one_factors.len(),
                    pack,
                    method: Some(method),
                    target,
                    notes,
                })
            }
            Err(e) => notes.push(format!("{method}: {e}")),
        }
    }
    match split_route(seq, k, opts) {
        Ok(pack) => {
            let count = pack.one_factors.len();
            if count < target {
                notes.push(format!(
                    "split: {count} matchings, short of 2 floor(k/3) = {target} because odd 2-factors remain"
                ));
            }
            Ok(BestPack {
                count,
                pack,
                method: Some(PackMethod::Split),
                target,
                notes,
            })
        }
        Err(e) => {
            notes.push(format!("split: {e}"));
            let mut out = fallback()?;
            out.notes = notes;
            Ok(out)
        }
    }
}

/// A realization containing `F` whose remainder `G - E(F)` has deficiency at most one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPack {
    pub g: SimpleGraph,
    /// Maximum matching of `G - E(F)`.
    pub matching: Matching,
    pub trace: PackTrace,
    pub stats: PackStats,
}

/// Lowers `def(class 0)` to at most one with 2-switches between classes 0 and 1.
fn avoid_stage(s: &mut Session, weights: &[usize]) -> Result<Matching, Error> {
    let obj = ExposedWeight {
        weights: weights.to_vec(),
    };
    let mut steps = 0;
    loop {
        let h = s.class(H1);
        let m = max_matching(&h);
        if h.n() - 2 * m.size() <= 1 {
            return Ok(m);
        }
        let current = obj.score(&s.c);
        let focus: Vec<Triple> = m.exposed().map(|x| (x, x, x)).collect();
        match s.improve(&obj, &current, &focus, Moves::TwoSwitches)? {
            Found::Better(next) if next < current => {}
            Found::Better(next) => {
                return Err(Error::InternalDefect(format!(
                    "score did not decrease: {current:?} -> {next:?}"
                )))
            }
            Found::None => return Err(stuck("removing exposed vertices around F", &current)),
        }
        steps += 1;
        if steps > s.opts.max_steps {
            return Err(Error::InternalDefect("step limit reached".into()));
        }
    }
}

/// Some `G` with the given degrees containing `f`.
fn realize_containing(seq: &DegreeSequence, f: &SimpleGraph, opts: &PackOptions) -> Result<SimpleGraph, Error> {
    let n = seq.len();
    let mut rest = Vec::with_capacity(n);
    for v in 0..n {
        let d = seq.values()[v];
        if f.degree(v) > d {
            return Err(Error::Infeasible(format!(
                "vertex {} has degree {} in F but {d} in the sequence",
                v + 1,
                f.degree(v)
            )));
        }
        rest.push(d - f.degree(v));
    }
    let k = &opts.kundu;
    if let Some(mut h) = realize_avoiding(&rest, f, opts.seed, k.restarts, k.steps_per_restart) {
        h.union_with(f);
        return Ok(h);
    }
    if n <= k.oracle_max_n.min(oracle::ORACLE_MAX_N) {
        if let Some(g) = oracle::find_fixed_realization(seq.values(), f, usize::MAX)? {
            return Ok(g);
        }
        return Err(Error::Infeasible("no realization of the sequence contains F".into()));
    }
    Err(Error::Infeasible(
        "no realization containing F was found".into(),
    ))
}

/// A realization containing `f` in which `G - E(f)` has a matching missing at most one vertex.
pub fn pack_avoiding_fixed(
    seq: &DegreeSequence,
    f: &SimpleGraph,
    opts: &PackOptions,
) -> Result<FixedPack, Error> {
    if f.n() != seq.len() {
        return Err(Error::VertexCountMismatch);
    }
    if !seq.is_graphic() {
        return Err(Error::NotGraphic(format!("{seq}")));
    }
    require(!seq.is_empty() && seq.min_degree() >= 1, || "the sequence has a zero".into())?;
    let r = f.max_degree();
    let rep = check_main_fixed(seq, r);
    require(rep.holds(), || format!("{rep}"))?;
    let g = realize_containing(seq, f, opts)?;
    let mut h = g.clone();
    h.subtract(f);
    let c = EdgeColoring::build(&[h, g.complement(), f.clone()])?;
    let mut s = Session::new(c, opts);
    let m = avoid_stage(&mut s, seq.values())?;
    Ok(FixedPack {
        g: s.class(H2).complement(),
        matching: m,
        trace: s.trace,
        stats: s.stats,
    })
}

/// `r + 1` disjoint perfect matchings, the first one `first` when given.
pub fn iterate_fixed_corollary(
    seq: &DegreeSequence,
    r: usize,
    first: Option<&Matching>,
    opts: &PackOptions,
) -> Result<FactorPack, Error> {
    if !seq.is_graphic() {
        return Err(Error::NotGraphic(format!("{seq}")));
    }
    let n = seq.len();
    require(n % 2 == 0, || format!("n = {n} is odd"))?;
    require(n > 0 && seq.min_degree() >= 1, || "the sequence has a zero".into())?;
    let rep = check_main_fixed(seq, r);
    require(rep.holds(), || format!("{rep}"))?;
    let mut stats = PackStats::default();
    let (g0, m0) = match first {
        Some(m) => {
            if m.n() != n || !m.is_perfect() {
                return Err(Error::Precondition("the chosen 1-factor is not perfect".into()));
            }
            (realize_containing(seq, &m.to_graph(), opts)?, m.clone())
        }
        None => {
            let p = pack_one_factors(seq, 1, opts)?;
            stats.absorb(&p.stats);
            (p.g, p.one_factors[0].clone())
        }
    };
    let mut h = g0.clone();
    h.subtract(&m0.to_graph());
    let c = EdgeColoring::build(&[h, g0.complement(), m0.to_graph()])?;
    let mut s = Session::new(c, opts);
    s.stats = stats;
    let mut factors = vec![2];
    for _ in 0..r {
        // every later stage fixes the matchings found so far
        let m = avoid_stage(&mut s, seq.values())?;
        if !m.is_perfect() {
            return Err(Error::InternalDefect("even n but the matching is not perfect".into()));
        }
        factors.push(s.refine(H1, m.edges().collect())?);
    }
    Ok(s.into_pack(&factors, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::validate_pack;

    fn seq(v: &[usize]) -> DegreeSequence {
        DegreeSequence::new(v.to_vec()).unwrap()
    }

    fn opts() -> PackOptions {
        PackOptions::default()
    }

    fn assert_pack(s: &DegreeSequence, p: &FactorPack, k: usize, left: Option<usize>) {
        validate_pack(s, p, k, left).unwrap();
        assert_eq!(p.trace.replay().unwrap(), p.coloring);
    }

    #[test]
    fn one_factor_examples() {
        for (v, k) in [(&[3, 3, 3, 3][..], 3), (&[2; 6][..], 2), (&[5; 6][..], 5)] {
            let s = seq(v);
            let p = pack_one_factors(&s, k, &opts()).unwrap();
            assert_pack(&s, &p, k, None);
        }
        let p = pack_one_factors(&seq(&[2; 6]), 2, &opts()).unwrap();
        assert_eq!(p.g.components().len(), 1);
    }

    #[test]
    fn one_factor_rejects() {
        assert!(matches!(
            pack_one_factors(&seq(&[3, 1, 1, 1]), 1, &opts()),
            Err(Error::ConditionNotMet(_))
        ));
        assert!(matches!(
            pack_one_factors(&seq(&[2, 2, 2]), 1, &opts()),
            Err(Error::ConditionNotMet(_))
        ));
    }

    #[test]
    fn one_factor_from_two_triangles() {
        // start at 2K3 by seeding; any start must end with a C6
        for seed in 0..8 {
            let o = PackOptions { seed, ..opts() };
            let s = seq(&[2; 6]);
            let p = pack_one_factors(&s, 2, &o).unwrap();
            assert_pack(&s, &p, 2, None);
        }
    }

    #[test]
    fn complement_examples() {
        for (v, k) in [(&[3, 3, 3, 3][..], 1), (&[3, 3, 3, 3][..], 3), (&[4; 6][..], 2)] {
            let s = seq(v);
            let p = pack_via_complement(&s, k, &opts()).unwrap();
            assert_pack(&s, &p, k, None);
        }
    }

    #[test]
    fn merge_examples() {
        for (v, k) in [(&[2; 6][..], 2), (&[3; 8][..], 3)] {
            let s = seq(v);
            let p = merge_cycles_pack(&s, k, &opts()).unwrap();
            assert_pack(&s, &p, k, None);
        }
    }

    #[test]
    fn merge_from_two_triangles() {
        let s = seq(&[2; 6]);
        let g = SimpleGraph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let c = EdgeColoring::build(&[SimpleGraph::new(6), g.complement(), g]).unwrap();
        let mut sess = Session::new(c, &opts());
        let f = merge_stage(&mut sess, vec![2], Vec::new()).unwrap();
        assert_eq!(f.len(), 2);
        assert!(sess.stats.exchanges >= 1);
        let p = sess.into_pack(&f, None);
        assert_pack(&s, &p, 2, None);
    }

    #[test]
    fn split_examples() {
        let s = seq(&[3, 3, 3, 3]);
        let p = pack_kfactor_with_r(&s, 3, 3, &opts()).unwrap();
        assert_pack(&s, &p, 3, Some(0));
        let s = seq(&[6; 8]);
        let p = pack_kfactor_with_r(&s, 6, 3, &opts()).unwrap();
        assert_pack(&s, &p, 3, Some(3));
        let s = seq(&[4; 6]);
        let p = pack_kfactor_with_r(&s, 4, 4, &opts()).unwrap();
        assert_pack(&s, &p, 4, Some(0));
        assert!(matches!(
            pack_kfactor_with_r(&seq(&[4; 6]), 4, 5, &opts()),
            Err(Error::ConditionNotMet(_))
        ));
    }

    #[test]
    fn boost_examples() {
        let s = seq(&[2; 6]);
        let p = pack_with_petersen_boost(&s, 2, 2, 2, &opts()).unwrap();
        assert_eq!(p.one_factors.len(), 2);
        oracle::validate_pack(&s, &p, 2, Some(0)).unwrap();
        assert!(matches!(
            pack_with_petersen_boost(&s, 2, 2, 1, &opts()),
            Err(Error::ConditionNotMet(_))
        ));
        let s = seq(&[4; 8]);
        let a = pack_with_petersen_boost(&s, 4, 0, 2, &opts()).unwrap();
        oracle::validate_pack(&s, &a, 2, Some(2)).unwrap();
    }

    #[test]
    fn best_examples() {
        let b = pack_best(&seq(&[5; 6]), 5, &opts()).unwrap();
        assert_eq!((b.count, b.method), (5, Some(PackMethod::Eq1)));
        let b = pack_best(&seq(&[3, 1, 1, 1]), 1, &opts()).unwrap();
        assert_eq!((b.count, b.method), (0, None));
        assert_eq!(b.pack.leftover.as_ref().unwrap().degree_sequence_of(), seq(&[3, 1, 1, 1]));
        let b = pack_best(&seq(&[3, 3, 3, 3]), 3, &opts()).unwrap();
        assert_eq!(b.count, 3);
    }

    #[test]
    fn fixed_examples() {
        let s = seq(&[3, 3, 3, 3]);
        let f = SimpleGraph::from_edges(4, [(0, 1)]).unwrap();
        let p = pack_avoiding_fixed(&s, &f, &opts()).unwrap();
        assert!(p.matching.is_perfect() && f.is_subgraph_of(&p.g));
        assert!(p.matching.edges().all(|(u, v)| !f.has_edge(u, v)));
        let f = SimpleGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let p = pack_avoiding_fixed(&s, &f, &opts()).unwrap();
        assert!(p.matching.is_perfect());
        let s = seq(&[2; 6]);
        let p = pack_avoiding_fixed(&s, &SimpleGraph::new(6), &opts()).unwrap();
        assert!(p.matching.is_perfect());
    }

    #[test]
    fn corollary_examples() {
        for (v, r) in [(&[3, 3, 3, 3][..], 1), (&[5; 6][..], 2), (&[1, 1][..], 0)] {
            let s = seq(v);
            let p = iterate_fixed_corollary(&s, r, None, &opts()).unwrap();
            assert_pack(&s, &p, r + 1, None);
        }
        let s = seq(&[3, 3, 3, 3]);
        let m = Matching::from_edges(4, [(0, 2), (1, 3)]).unwrap();
        let p = iterate_fixed_corollary(&s, 1, Some(&m), &opts()).unwrap();
        assert_eq!(p.one_factors[0], m);
    }

    #[test]
    fn every_route_packs_small_sequences() {
        for n in [2usize, 4, 6, 8] {
            for s in oracle::enumerate_sequences(n, &|s| s.min_degree() >= 1).unwrap() {
                for k in 1..=s.min_degree() {
                    if check_eq1(&s, k).holds() {
                        let p = pack_one_factors(&s, k, &opts()).unwrap();
                        validate_pack(&s, &p, k, None).unwrap();
                    }
                    if !reduced_is_graphic(&s, k) {
                        continue;
                    }
                    if check_eq3(&s, k).holds() {
                        let p = pack_via_complement(&s, k, &opts()).unwrap();
                        validate_pack(&s, &p, k, None).unwrap();
                    }
                    if check_mid(&s, k).holds() {
                        let p = merge_cycles_pack(&s, k, &opts()).unwrap();
                        validate_pack(&s, &p, k, None).unwrap();
                    }
                    let b = split_bound(k, 0).min(k);
                    let p = pack_kfactor_with_r(&s, k, b, &opts()).unwrap();
                    validate_pack(&s, &p, b, Some(k - b)).unwrap();
                }
            }
        }
    }

    #[test]
    fn fixed_packs_small_sequences() {
        for n in 2usize..=7 {
            for s in oracle::enumerate_sequences(n, &|s| s.min_degree() >= 1).unwrap() {
                for fam in oracle::fixed_families(&s, s.max_degree()) {
                    let f = SimpleGraph::from_edges(n, fam).unwrap();
                    if !check_main_fixed(&s, f.max_degree()).holds() {
                        continue;
                    }
                    match pack_avoiding_fixed(&s, &f, &opts()) {
                        Ok(p) => {
                            assert!(f.is_subgraph_of(&p.g));
                            assert_eq!(p.g.degree_sequence_of(), s);
                            assert!(n - 2 * p.matching.size() <= 1);
                            assert!(p.matching.edges().all(|(u, v)| !f.has_edge(u, v)));
                        }
                        // only when no realization contains F at all
                        Err(Error::Infeasible(_)) => {
                            assert!(oracle::find_fixed_realization(s.values(), &f, usize::MAX)
                                .unwrap()
                                .is_none());
                        }
                        Err(e) => panic!("{s}: {e}"),
                    }
                }
                if n % 2 == 0 {
                    for r in 0..s.min_degree() {
                        if check_main_fixed(&s, r).holds() {
                            let p = iterate_fixed_corollary(&s, r, None, &opts()).unwrap();
                            validate_pack(&s, &p, r + 1, None).unwrap();
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn random_starts_still_pack() {
        for seed in 1..4u64 {
            let o = PackOptions { seed, ..opts() };
            for s in oracle::enumerate_sequences(8, &|s| s.min_degree() >= 1).unwrap() {
                for k in 1..=s.min_degree() {
                    if check_eq1(&s, k).holds() {
                        let p = pack_one_factors(&s, k, &o).unwrap_or_else(|e| panic!("eq1 {s} {k} {seed}: {e}"));
                        validate_pack(&s, &p, k, None).unwrap();
                    }
                    if reduced_is_graphic(&s, k) && check_mid(&s, k).holds() {
                        let p = merge_cycles_pack(&s, k, &o).unwrap_or_else(|e| panic!("mid {s} {k} {seed}: {e}"));
                        validate_pack(&s, &p, k, None).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn exposed_weight_prefers_heavy() {
        // path a-b-c: a maximum matching misses a or c; the heavier one should be missed
        let h = SimpleGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let w = ExposedWeight {
            weights: vec![1, 5, 7],
        };
        assert_eq!(w.best_exposed(&h, 1), 7);
        assert!(coverable(&h, &[0, 1]));
        assert!(!coverable(&h, &[0, 2, 1]));
    }
}
