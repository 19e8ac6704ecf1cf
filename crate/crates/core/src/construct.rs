//! Realizations: Havel–Hakimi, realizations carrying a k-factor, Petersen
//! 2-factorizations, and splitting even 2-factors.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graphs::{Matching, SimpleGraph};
use crate::matching::{k_factor, max_matching};
use crate::oracle;
use crate::sequences::{is_graphic_values, DegreeSequence};

/// Havel–Hakimi on per-vertex target degrees. Ties go to `key` (lower
/// first), so a random key gives a random realization.
pub(crate) fn havel_hakimi_keyed(degrees: &[usize], key: &[u64]) -> Option<SimpleGraph> {
    let n = degrees.len();
    let mut g = SimpleGraph::new(n);
    let mut rem: Vec<usize> = degrees.to_vec();
    let mut done = vec![false; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !done[v])
            .max_by(|&a, &b| rem[a].cmp(&rem[b]).then(key[b].cmp(&key[a])))?;
        done[v] = true;
        let mut others: Vec<usize> = (0..n).filter(|&u| !done[u]).collect();
        others.sort_by(|&a, &b| rem[b].cmp(&rem[a]).then(key[a].cmp(&key[b])));
        if rem[v] > others.len() {
            return None;
        }
        for &u in &others[..rem[v]] {
            if rem[u] == 0 {
                return None;
            }
            rem[u] -= 1;
            g.add_edge(u, v);
        }
        rem[v] = 0;
    }
    Some(g)
}

fn identity_key(n: usize) -> Vec<u64> {
    (0..n as u64).collect()
}

/// A realization with vertex `i` of degree `d_{i+1}`.
pub fn havel_hakimi(seq: &DegreeSequence) -> Result<SimpleGraph, Error> {
    realize_degrees(seq.values())
}

/// A realization of per-vertex degrees (any order).
pub fn realize_degrees(degrees: &[usize]) -> Result<SimpleGraph, Error> {
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    if sorted.first().is_some_and(|&d| d >= degrees.len()) || !is_graphic_values(&sorted) {
        return Err(Error::NotGraphic(format_degrees(degrees)));
    }
    havel_hakimi_keyed(degrees, &identity_key(degrees.len()))
        .ok_or_else(|| Error::InternalDefect("Havel–Hakimi failed on a graphic sequence".into()))
}

fn format_degrees(d: &[usize]) -> alloc::string::String {
    let parts: Vec<alloc::string::String> = d.iter().map(|x| format!("{x}")).collect();
    parts.join(",")
}

/// The circulant `k`-regular graph with offsets `1..=k/2`, plus `n/2` when `k` is odd.
pub fn circulant(n: usize, k: usize) -> Result<SimpleGraph, Error> {
    if (n * k) % 2 == 1 {
        return Err(Error::Precondition(format!("n·k = {} is odd", n * k)));
    }
    if k >= n.max(1) && !(n == 0 && k == 0) {
        return Err(Error::Precondition(format!("k = {k} must be below n = {n}")));
    }
    let mut g = SimpleGraph::new(n);
    for off in 1..=k / 2 {
        for i in 0..n {
            g.add_edge(i, (i + off) % n);
        }
    }
    if k % 2 == 1 {
        for i in 0..n / 2 {
            g.add_edge(i, i + n / 2);
        }
    }
    debug_assert!(g.is_k_regular(k));
    Ok(g)
}

/// Tuning for [`realize_with_k_factor`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KunduConfig {
    pub seed: u64,
    /// Randomized restarts of the collision repair.
    pub restarts: usize,
    /// Switch attempts per restart; 0 skips the local search entirely.
    pub steps_per_restart: usize,
    /// Largest n for which exhaustive search backs up the local search.
    pub oracle_max_n: usize,
}

impl Default for KunduConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            restarts: 24,
            steps_per_restart: 4000,
            oracle_max_n: 10,
        }
    }
}

/// How a construction was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionPath {
    /// Collision repair converged after this many restarts.
    LocalSearch { restarts: usize },
    /// A k-factor was found inside a realization after this many random walks.
    FactorSearch { walks: usize },
    /// Local search stalled and the exhaustive search produced the answer.
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KFactorRealization {
    pub g: SimpleGraph,
    pub f: SimpleGraph,
    pub path: ConstructionPath,
}

/// Number of edges shared by `a` and `b`.
fn collisions(a: &SimpleGraph, b: &SimpleGraph) -> usize {
    a.edges().filter(|&(u, v)| b.has_edge(u, v)).count()
}

/// Tries to make `moving` edge-disjoint from `other` by 2-switches inside
/// `moving`; when `both` is set, `other` may switch too. Returns true on success.
fn repair_collisions(
    moving: &mut SimpleGraph,
    other: &mut SimpleGraph,
    both: bool,
    rng: &mut ChaCha8Rng,
    steps: usize,
) -> bool {
    let mut count = collisions(moving, other);
    for _ in 0..steps {
        if count == 0 {
            return true;
        }
        let clash: Vec<(usize, usize)> = moving
            .edges()
            .filter(|&(u, v)| other.has_edge(u, v))
            .collect();
        let (a, b) = clash[rng.random_range(0..clash.len())];
        let switch_other = both && rng.random_bool(0.5);
        let (x, y): (&mut SimpleGraph, &SimpleGraph) = if switch_other {
            (other, moving)
        } else {
            (moving, other)
        };
        // replace ab, cd in x with ac, bd (or ad, bc) when that does not raise collisions
        let (a, b) = if rng.random_bool(0.5) { (a, b) } else { (b, a) };
        let mut edges: Vec<(usize, usize)> = x.edges().collect();
        edges.shuffle(rng);
        let mut best: Option<(isize, usize, usize)> = None;
        for &(c0, d0) in &edges {
            for (c, d) in [(c0, d0), (d0, c0)] {
                if c == a || c == b || d == a || d == b || x.has_edge(a, c) || x.has_edge(b, d) {
                    continue;
                }
                let delta = y.has_edge(a, c) as isize + y.has_edge(b, d) as isize
                    - 1
                    - y.has_edge(c, d) as isize;
                if best.is_none_or(|(bd, _, _)| delta < bd) {
                    best = Some((delta, c, d));
                }
                if delta < 0 {
                    break;
                }
            }
            if best.is_some_and(|(bd, _, _)| bd < 0) {
                break;
            }
        }
        let Some((delta, c, d)) = best else { continue };
        if delta > 0 && rng.random_range(0..4) != 0 {
            continue;
        }
        x.remove_edge(a, b);
        x.remove_edge(c, d);
        x.add_edge(a, c);
        x.add_edge(b, d);
        count = (count as isize + delta) as usize;
        debug_assert_eq!(count, collisions(x, y));
    }
    count == 0
}

/// Up to `steps` random degree-preserving 2-switches.
fn random_switches(g: &mut SimpleGraph, rng: &mut ChaCha8Rng, steps: usize) {
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    if edges.len() < 2 {
        return;
    }
    for _ in 0..steps {
        let i = rng.random_range(0..edges.len());
        let j = rng.random_range(0..edges.len());
        let (a, b) = edges[i];
        let (c, d) = if rng.random_bool(0.5) { edges[j] } else { (edges[j].1, edges[j].0) };
        if i == j || a == c || a == d || b == c || b == d || g.has_edge(a, c) || g.has_edge(b, d) {
            continue;
        }
        g.remove_edge(a, b);
        g.remove_edge(c, d);
        g.add_edge(a, c);
        g.add_edge(b, d);
        edges[i] = (a, c);
        edges[j] = (b, d);
    }
}

fn random_key(n: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    (0..n).map(|_| rng.random()).collect()
}

fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// A realization `G` of `seq` with a `k`-factor `F`, vertex `i` having degree `d_{i+1}`.
pub fn realize_with_k_factor(
    seq: &DegreeSequence,
    k: usize,
    config: &KunduConfig,
) -> Result<KFactorRealization, Error> {
    let n = seq.len();
    if (n * k) % 2 == 1 {
        return Err(Error::Infeasible(format!("n·k = {} is odd", n * k)));
    }
    if k > seq.min_degree() {
        return Err(Error::Infeasible(format!(
            "k = {k} exceeds the minimum degree {}",
            seq.min_degree()
        )));
    }
    let reduced = seq.reduce_by_k(k)?;
    if !reduced.is_graphic() {
        return Err(Error::Infeasible(format!("D_{k} = ({reduced}) is not graphic")));
    }
    let finish = |h: SimpleGraph, f: SimpleGraph, path| {
        let mut g = h;
        let disjoint = g.union_with(&f);
        debug_assert!(disjoint);
        KFactorRealization { g, f, path }
    };
    if k == 0 {
        return Ok(finish(
            havel_hakimi(seq)?,
            SimpleGraph::new(n),
            ConstructionPath::LocalSearch { restarts: 0 },
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    if config.steps_per_restart > 0 {
        for attempt in 0..=config.restarts {
            let key = if attempt == 0 {
                identity_key(n)
            } else {
                random_key(n, &mut rng)
            };
            let mut h = havel_hakimi_keyed(reduced.values(), &key).ok_or_else(|| {
                Error::InternalDefect("Havel–Hakimi failed on a graphic sequence".into())
            })?;
            let mut f = circulant(n, k)?;
            if attempt > 0 {
                f = f.relabel(&random_perm(n, &mut rng));
            }
            if repair_collisions(&mut h, &mut f, true, &mut rng, config.steps_per_restart) {
                return Ok(finish(h, f, ConstructionPath::LocalSearch { restarts: attempt }));
            }
        }
        let mut g = havel_hakimi(seq)?;
        for walk in 0..=config.restarts {
            if walk > 0 {
                random_switches(&mut g, &mut rng, config.steps_per_restart);
            }
            if let Some(f) = k_factor(&g, k) {
                let mut h = g;
                h.subtract(&f);
                return Ok(finish(h, f, ConstructionPath::FactorSearch { walks: walk }));
            }
        }
    }
    if n <= config.oracle_max_n {
        if let Some((h, f)) = oracle::find_realization_with_k_factor(reduced.values(), k)? {
            return Ok(finish(h, f, ConstructionPath::Exhaustive));
        }
        return Err(Error::InternalDefect(format!(
            "no realization of ({seq}) carries a {k}-factor although D_{k} is graphic"
        )));
    }
    Err(Error::Guard(format!(
        "collision repair did not converge after {} restarts",
        config.restarts
    )))
}

/// A graph with the given per-vertex degrees and no edge of `forbidden`.
///
/// Local search only; `None` means the search gave up, not that no such
/// graph exists.
pub fn realize_avoiding(
    degrees: &[usize],
    forbidden: &SimpleGraph,
    seed: u64,
    restarts: usize,
    steps: usize,
) -> Option<SimpleGraph> {
    let n = degrees.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fixed = forbidden.clone();
    for attempt in 0..=restarts {
        let key = if attempt == 0 {
            identity_key(n)
        } else {
            random_key(n, &mut rng)
        };
        let mut h = havel_hakimi_keyed(degrees, &key)?;
        if repair_collisions(&mut h, &mut fixed, false, &mut rng, steps) {
            return Some(h);
        }
    }
    None
}

/// Hierholzer: an Euler circuit of each component with edges, returned as arcs.
fn euler_orientation(g: &SimpleGraph) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for (id, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, id));
        adj[b].push((a, id));
    }
    let mut used = vec![false; edges.len()];
    let mut ptr = vec![0usize; n];
    let mut arcs = Vec::with_capacity(edges.len());
    for s in 0..n {
        if ptr[s] >= adj[s].len() {
            continue;
        }
        let mut stack: Vec<usize> = vec![s];
        let mut circuit: Vec<(usize, usize)> = Vec::new();
        while let Some(&v) = stack.last() {
            let mut advanced = false;
            while ptr[v] < adj[v].len() {
                let (w, id) = adj[v][ptr[v]];
                ptr[v] += 1;
                if !used[id] {
                    used[id] = true;
                    stack.push(w);
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                stack.pop();
                if let Some(&prev) = stack.last() {
                    circuit.push((prev, v));
                }
            }
        }
        arcs.extend(circuit);
    }
    arcs
}

/// Splits a `2r`-regular graph into `r` edge-disjoint 2-factors.
pub fn petersen_2factorization(g: &SimpleGraph) -> Result<Vec<SimpleGraph>, Error> {
    let n = g.n();
    let deg = g.degrees().first().copied().unwrap_or(0);
    if !g.is_k_regular(deg) {
        return Err(Error::Precondition("graph is not regular".into()));
    }
    if deg % 2 == 1 || deg == 0 {
        return Err(Error::Precondition(format!(
            "degree {deg} is not a positive even number"
        )));
    }
    let arcs = euler_orientation(g);
    debug_assert_eq!(arcs.len(), g.edge_count());
    // bipartite graph: tail a on the left as a, head b on the right as n + b
    let mut bip = SimpleGraph::new(2 * n);
    for &(a, b) in &arcs {
        bip.add_edge(a, n + b);
    }
    let mut out = Vec::with_capacity(deg / 2);
    for _ in 0..deg / 2 {
        let m = max_matching(&bip);
        if !m.is_perfect() {
            return Err(Error::InternalDefect(
                "regular bipartite graph without a perfect matching".into(),
            ));
        }
        let mut f = SimpleGraph::new(n);
        for (a, nb) in m.edges() {
            bip.remove_edge(a, nb);
            f.add_edge(a, nb - n);
        }
        debug_assert!(f.is_k_regular(2));
        out.push(f);
    }
    Ok(out)
}

/// Two perfect matchings partitioning a 2-factor, or `None` if it has an odd cycle.
pub fn split_even_2factor(f: &SimpleGraph) -> Result<Option<(Matching, Matching)>, Error> {
    if !f.is_k_regular(2) {
        return Err(Error::Precondition("not a 2-factor".into()));
    }
    let n = f.n();
    let mut a = Matching::empty(n);
    let mut b = Matching::empty(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut cycle = vec![s];
        seen[s] = true;
        let mut prev = s;
        let mut cur = f.neighbors(s).next().expect("2-regular");
        while cur != s {
            seen[cur] = true;
            cycle.push(cur);
            let next = f.neighbors(cur).find(|&w| w != prev).expect("2-regular");
            prev = cur;
            cur = next;
        }
        if cycle.len() % 2 == 1 {
            return Ok(None);
        }
        for i in 0..cycle.len() {
            let (x, y) = (cycle[i], cycle[(i + 1) % cycle.len()]);
            if i % 2 == 0 {
                a.add(x, y);
            } else {
                b.add(x, y);
            }
        }
    }
    Ok(Some((a, b)))
}

/// The cycles of a 2-regular graph, each as a vertex list in traversal order.
pub fn cycles_of_2factor(f: &SimpleGraph) -> Vec<Vec<usize>> {
    let n = f.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] || f.degree(s) != 2 {
            continue;
        }
        let mut cycle = vec![s];
        seen[s] = true;
        let mut prev = s;
        let mut cur = f.neighbors(s).next().expect("degree 2");
        while cur != s {
            seen[cur] = true;
            cycle.push(cur);
            let next = f.neighbors(cur).find(|&w| w != prev).expect("degree 2");
            prev = cur;
            cur = next;
        }
        out.push(cycle);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::test_graphs::*;

    fn seq(v: &[usize]) -> DegreeSequence {
        DegreeSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn havel_hakimi_examples() {
        assert_eq!(havel_hakimi(&seq(&[3, 3, 3, 3])).unwrap(), SimpleGraph::complete(4));
        assert_eq!(havel_hakimi(&seq(&[2, 2, 2])).unwrap(), SimpleGraph::complete(3));
        assert!(matches!(
            havel_hakimi(&seq(&[3, 3, 1, 1])),
            Err(Error::NotGraphic(_))
        ));
    }

    #[test]
    fn circulant_examples() {
        assert_eq!(circulant(6, 2).unwrap(), cycle(6));
        assert_eq!(circulant(4, 3).unwrap(), SimpleGraph::complete(4));
        assert!(circulant(5, 3).is_err());
        assert!(circulant(4, 0).unwrap().is_k_regular(0));
    }

    fn check_kundu(s: &DegreeSequence, k: usize, r: &KFactorRealization) {
        assert_eq!(r.g.degree_sequence_of(), *s);
        assert!(r.f.is_k_regular(k));
        assert!(r.f.is_subgraph_of(&r.g));
        let mut h = r.g.clone();
        h.subtract(&r.f);
        assert_eq!(h.degree_sequence_of(), s.reduce_by_k(k).unwrap());
        for v in 0..s.len() {
            assert_eq!(r.g.degree(v), s.d(v + 1));
        }
    }

    #[test]
    fn kundu_examples() {
        let cfg = KunduConfig::default();
        for (v, k) in [
            (&[3, 3, 3, 3][..], 1),
            (&[2, 2, 2, 2, 2, 2][..], 2),
            (&[4, 4, 4, 4, 4, 4][..], 2),
            (&[5, 4, 4, 3, 3, 3][..], 2),
        ] {
            let s = seq(v);
            let r = realize_with_k_factor(&s, k, &cfg).unwrap();
            check_kundu(&s, k, &r);
        }
        assert!(matches!(
            realize_with_k_factor(&seq(&[3, 1, 1, 1]), 1, &cfg),
            Err(Error::Infeasible(_))
        ));
        assert!(matches!(
            realize_with_k_factor(&seq(&[2, 2, 2]), 1, &cfg),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn kundu_stall_falls_back_to_exhaustive_search() {
        let cfg = KunduConfig {
            steps_per_restart: 0,
            ..KunduConfig::default()
        };
        let s = seq(&[4, 4, 4, 4, 4, 4]);
        let r = realize_with_k_factor(&s, 2, &cfg).unwrap();
        assert_eq!(r.path, ConstructionPath::Exhaustive);
        check_kundu(&s, 2, &r);
    }

    #[test]
    fn petersen_examples() {
        let parts = petersen_2factorization(&SimpleGraph::complete(5)).unwrap();
        assert_eq!(parts.len(), 2);
        let parts7 = petersen_2factorization(&SimpleGraph::complete(7)).unwrap();
        assert_eq!(parts7.len(), 3);
        let mut union = SimpleGraph::new(7);
        for p in &parts7 {
            assert!(p.is_k_regular(2));
            assert!(union.union_with(p));
        }
        assert_eq!(union, SimpleGraph::complete(7));
        assert_eq!(petersen_2factorization(&cycle(6)).unwrap(), vec![cycle(6)]);
        assert!(petersen_2factorization(&SimpleGraph::complete(4)).is_err());
    }

    #[test]
    fn split_even_examples() {
        let (a, b) = split_even_2factor(&cycle(6)).unwrap().unwrap();
        assert!(a.is_perfect() && b.is_perfect());
        let two_c4 =
            SimpleGraph::from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)])
                .unwrap();
        assert!(split_even_2factor(&two_c4).unwrap().is_some());
        assert!(split_even_2factor(&two_triangles()).unwrap().is_none());
        assert!(split_even_2factor(&path(4)).is_err());
    }

    #[test]
    fn realize_avoiding_matching() {
        let forbidden = SimpleGraph::from_edges(6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        let h = realize_avoiding(&[2; 6], &forbidden, 0, 8, 2000).unwrap();
        assert!(h.is_k_regular(2));
        assert!(h.is_edge_disjoint(&forbidden));
    }
}
