//! Maximum matchings, Berge–Tutte deficiency, and the Gallai–Edmonds
//! decomposition.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graphs::{Matching, SimpleGraph};

const NONE: usize = usize::MAX;

/// Edmonds' blossom search restricted to the vertices with `alive[v]`.
struct Blossom<'a> {
    g: &'a SimpleGraph,
    alive: &'a [bool],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a SimpleGraph, alive: &'a [bool], mate: Vec<usize>) -> Self {
        let n = g.n();
        Self {
            g,
            alive,
            mate,
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Searches for an augmenting path from the exposed vertex `root` and
    /// returns its other end.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for to in 0..n {
                if !self.g.has_edge(v, to) || !self.alive[to] {
                    continue;
                }
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.alive[i] && self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }

    fn run(&mut self) {
        for root in 0..self.g.n() {
            if self.alive[root] && self.mate[root] == NONE {
                if let Some(end) = self.find_path(root) {
                    self.augment(end);
                }
            }
        }
    }

    fn into_matching(self) -> Matching {
        Matching::from_mates(
            self.mate
                .into_iter()
                .map(|m| if m == NONE { None } else { Some(m) })
                .collect(),
        )
    }
}

fn greedy_mates(g: &SimpleGraph, alive: &[bool]) -> Vec<usize> {
    let mut mate = vec![NONE; g.n()];
    for u in 0..g.n() {
        if !alive[u] || mate[u] != NONE {
            continue;
        }
        if let Some(v) = g.neighbors(u).find(|&v| alive[v] && mate[v] == NONE) {
            mate[u] = v;
            mate[v] = u;
        }
    }
    mate
}

/// A maximum matching of `g`.
pub fn max_matching(g: &SimpleGraph) -> Matching {
    let alive = vec![true; g.n()];
    max_matching_within(g, &alive, None)
}

/// A maximum matching of the subgraph induced on `alive`, optionally grown
/// from a matching `start` whose edges must lie inside that subgraph.
pub fn max_matching_within(g: &SimpleGraph, alive: &[bool], start: Option<&Matching>) -> Matching {
    let mate = match start {
        Some(m) => (0..g.n())
            .map(|v| match m.mate(v) {
                Some(u) if alive[v] && alive[u] && g.has_edge(u, v) => u,
                _ => NONE,
            })
            .collect(),
        None => greedy_mates(g, alive),
    };
    let mut b = Blossom::new(g, alive, mate);
    b.run();
    b.into_matching()
}

/// A `k`-regular spanning subgraph of `g`, found as a perfect matching of
/// Tutte's gadget: each vertex becomes one port per incident edge plus
/// `deg - k` hubs joined to all of its ports.
pub(crate) fn k_factor(g: &SimpleGraph, k: usize) -> Option<SimpleGraph> {
    let n = g.n();
    if (0..n).any(|v| g.degree(v) < k) {
        return None;
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    // port of v for edge i, stored per endpoint
    let mut next = 0;
    let mut ports: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut ends = Vec::with_capacity(edges.len());
    for &(u, v) in &edges {
        ends.push((next, next + 1));
        ports[u].push(next);
        ports[v].push(next + 1);
        next += 2;
    }
    let mut hubs = Vec::with_capacity(n);
    for v in 0..n {
        hubs.push(next..next + g.degree(v) - k);
        next += g.degree(v) - k;
    }
    let mut h = SimpleGraph::new(next);
    for &(a, b) in &ends {
        h.add_edge(a, b);
    }
    for v in 0..n {
        for hub in hubs[v].clone() {
            for &p in &ports[v] {
                h.add_edge(hub, p);
            }
        }
    }
    let m = max_matching(&h);
    if !m.is_perfect() {
        return None;
    }
    let mut f = SimpleGraph::new(n);
    for (i, &(a, b)) in ends.iter().enumerate() {
        if m.mate(a) == Some(b) {
            f.add_edge(edges[i].0, edges[i].1);
        }
    }
    Some(f)
}

/// Size of a maximum matching of `g`.
pub fn matching_number(g: &SimpleGraph) -> usize {
    max_matching(g).size()
}

/// Matching number of `g - removed`, warm-started from a maximum matching `m` of `g`.
pub fn matching_number_without(g: &SimpleGraph, m: &Matching, removed: &[usize]) -> usize {
    let mut alive = vec![true; g.n()];
    for &r in removed {
        alive[r] = false;
    }
    max_matching_within(g, &alive, Some(m)).size()
}

/// `def(G)` with a set `S` attaining `o(G - S) - |S| = def(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeficiencyCertificate {
    pub def_value: usize,
    pub witness_set: Vec<usize>,
}

pub fn deficiency(g: &SimpleGraph) -> DeficiencyCertificate {
    let m = max_matching(g);
    let dec = gallai_edmonds_with(g, &m);
    DeficiencyCertificate {
        def_value: g.n() - 2 * m.size(),
        witness_set: dec.a,
    }
}

/// True iff `g - v` has a perfect matching for every vertex `v`.
pub fn is_factor_critical(g: &SimpleGraph) -> bool {
    let n = g.n();
    if n % 2 == 0 {
        return false;
    }
    let m = max_matching(g);
    if m.size() != (n - 1) / 2 {
        return false;
    }
    (0..n).all(|v| matching_number_without(g, &m, &[v]) == (n - 1) / 2)
}

/// The partition `V = A ∪ C ∪ D` of the Gallai–Edmonds structure theorem.
///
/// All vertex lists are sorted; components are ordered by their least vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GallaiEdmondsDecomposition {
    pub a: Vec<usize>,
    pub c: Vec<usize>,
    pub d: Vec<usize>,
    pub components_of_d: Vec<Vec<usize>>,
}

impl GallaiEdmondsDecomposition {
    /// Index of the component of `G[D]` containing `v`, if `v ∈ D`.
    pub fn component_of(&self, v: usize) -> Option<usize> {
        self.components_of_d.iter().position(|c| c.contains(&v))
    }
}

pub fn gallai_edmonds(g: &SimpleGraph) -> GallaiEdmondsDecomposition {
    gallai_edmonds_with(g, &max_matching(g))
}

/// Decomposition computed by per-vertex probes against a known maximum matching `m`.
pub fn gallai_edmonds_with(g: &SimpleGraph, m: &Matching) -> GallaiEdmondsDecomposition {
    let n = g.n();
    let nu = m.size();
    let in_d: Vec<bool> = (0..n)
        .map(|v| !m.covers(v) || matching_number_without(g, m, &[v]) == nu)
        .collect();
    let mut a = Vec::new();
    let mut c = Vec::new();
    let mut d = Vec::new();
    for v in 0..n {
        if in_d[v] {
            d.push(v);
        } else if g.neighbors(v).any(|u| in_d[u]) {
            a.push(v);
        } else {
            c.push(v);
        }
    }
    let components_of_d = g.components_within(&in_d);
    GallaiEdmondsDecomposition {
        a,
        c,
        d,
        components_of_d,
    }
}

/// Properties (I)–(IV) of the structure theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GeProperty {
    I,
    II,
    III,
    IV,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeReport {
    pub entries: Vec<(GeProperty, CheckStatus)>,
}

impl GeReport {
    /// True when no entry failed (skipped entries do not count as failures).
    pub fn all_pass(&self) -> bool {
        self.entries
            .iter()
            .all(|(_, s)| !matches!(s, CheckStatus::Fail(_)))
    }

    pub fn status(&self, p: GeProperty) -> &CheckStatus {
        &self
            .entries
            .iter()
            .find(|(q, _)| *q == p)
            .expect("every property is reported")
            .1
    }
}

/// Largest `|A|` for which property (III) is checked over all subsets.
pub const GE_SUBSET_CAP: usize = 20;

pub fn verify_ge_properties(
    g: &SimpleGraph,
    dec: &GallaiEdmondsDecomposition,
    m: &Matching,
) -> GeReport {
    let n = g.n();
    let mut entries = Vec::with_capacity(4);

    let mut part = vec![0u8; n];
    let mut partition_ok = true;
    for (tag, set) in [(1u8, &dec.a), (2, &dec.c), (3, &dec.d)] {
        for &v in set.iter() {
            partition_ok &= v < n && part[v] == 0;
            if v < n {
                part[v] = tag;
            }
        }
    }
    partition_ok &= part.iter().all(|&p| p != 0);
    let comp_of: Vec<Option<usize>> = {
        let mut c = vec![None; n];
        for (i, comp) in dec.components_of_d.iter().enumerate() {
            for &v in comp {
                if v < n {
                    c[v] = Some(i);
                }
            }
        }
        c
    };

    // (I)
    let status = (|| {
        if !partition_ok {
            return CheckStatus::Fail("A, C, D do not partition V".into());
        }
        for &v in &dec.c {
            match m.mate(v) {
                None => return CheckStatus::Fail(format!("vertex {} of C is exposed", v + 1)),
                Some(u) if part[u] != 2 => {
                    return CheckStatus::Fail(format!(
                        "vertex {} of C is matched outside C to {}",
                        v + 1,
                        u + 1
                    ))
                }
                _ => {}
            }
        }
        let mut hit = vec![false; dec.components_of_d.len()];
        for &v in &dec.a {
            let Some(u) = m.mate(v) else {
                return CheckStatus::Fail(format!("vertex {} of A is exposed", v + 1));
            };
            let Some(ci) = comp_of[u] else {
                return CheckStatus::Fail(format!(
                    "vertex {} of A is matched outside D to {}",
                    v + 1,
                    u + 1
                ));
            };
            if hit[ci] {
                return CheckStatus::Fail(format!(
                    "two vertices of A are matched into the component containing {}",
                    u + 1
                ));
            }
            hit[ci] = true;
        }
        CheckStatus::Pass
    })();
    entries.push((GeProperty::I, status));

    // (II)
    let status = (|| {
        for comp in &dec.components_of_d {
            let sub = g.induced(comp);
            if !is_factor_critical(&sub) {
                return CheckStatus::Fail(format!(
                    "component containing {} is not factor-critical",
                    comp[0] + 1
                ));
            }
            let inside = comp
                .iter()
                .filter(|&&v| m.mate(v).is_some_and(|u| comp.contains(&u)))
                .count()
                / 2;
            if 2 * inside + 1 != comp.len() {
                return CheckStatus::Fail(format!(
                    "matching is not near-perfect on the component containing {}",
                    comp[0] + 1
                ));
            }
        }
        CheckStatus::Pass
    })();
    entries.push((GeProperty::II, status));

    // (III)
    let status = if dec.a.len() > GE_SUBSET_CAP {
        CheckStatus::Skipped(format!("|A| = {} exceeds {}", dec.a.len(), GE_SUBSET_CAP))
    } else {
        let touched: Vec<u64> = dec
            .a
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .filter_map(|u| comp_of[u])
                    .fold(0u64, |acc, ci| acc | (1u64 << (ci % 64)))
            })
            .collect();
        let wide = dec.components_of_d.len() > 64;
        let mut status = CheckStatus::Pass;
        if wide {
            status = CheckStatus::Skipped("more than 64 components of D".into());
        } else {
            for mask in 1u32..(1u32 << dec.a.len()) {
                let reach = (0..dec.a.len())
                    .filter(|&i| mask & (1 << i) != 0)
                    .fold(0u64, |acc, i| acc | touched[i]);
                if reach.count_ones() < mask.count_ones() + 1 {
                    let s: Vec<usize> = (0..dec.a.len())
                        .filter(|&i| mask & (1 << i) != 0)
                        .map(|i| dec.a[i] + 1)
                        .collect();
                    status = CheckStatus::Fail(format!(
                        "S = {:?} reaches only {} components",
                        s,
                        reach.count_ones()
                    ));
                    break;
                }
            }
        }
        status
    };
    entries.push((GeProperty::III, status));

    // (IV)
    let def_g = n as isize - 2 * m.size() as isize;
    let def_a = g.deficiency_of_set(&dec.a);
    let k_minus_a = dec.components_of_d.len() as isize - dec.a.len() as isize;
    let status = if def_a == def_g && def_g == k_minus_a {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail(format!(
            "def(A) = {def_a}, def(G) = {def_g}, k - |A| = {k_minus_a}"
        ))
    };
    entries.push((GeProperty::IV, status));

    GeReport { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::test_graphs::*;

    fn brute_deficiency(g: &SimpleGraph) -> isize {
        let n = g.n();
        (0u32..1 << n)
            .map(|mask| {
                let s: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
                g.deficiency_of_set(&s)
            })
            .max()
            .unwrap()
    }

    #[test]
    fn max_matching_examples() {
        assert_eq!(matching_number(&SimpleGraph::complete(4)), 2);
        assert_eq!(matching_number(&star(3)), 1);
        assert_eq!(matching_number(&cycle(5)), 2);
    }

    #[test]
    fn deficiency_examples() {
        let c = deficiency(&star(3));
        assert_eq!(c.def_value, 2);
        assert_eq!(c.witness_set, vec![0]);
        assert_eq!(brute_deficiency(&star(3)), 2);
        let c = deficiency(&SimpleGraph::complete(4));
        assert_eq!((c.def_value, c.witness_set.len()), (0, 0));
        let c = deficiency(&two_triangles());
        assert_eq!((c.def_value, c.witness_set.len()), (2, 0));
        assert_eq!(brute_deficiency(&two_triangles()), 2);
    }

    #[test]
    fn factor_critical_examples() {
        assert!(is_factor_critical(&SimpleGraph::complete(3)));
        assert!(is_factor_critical(&cycle(5)));
        assert!(!is_factor_critical(&path(3)));
        assert!(is_factor_critical(&SimpleGraph::new(1)));
        assert!(!is_factor_critical(&SimpleGraph::complete(4)));
    }

    #[test]
    fn gallai_edmonds_examples() {
        let dec = gallai_edmonds(&star(3));
        assert_eq!(dec.a, vec![0]);
        assert!(dec.c.is_empty());
        assert_eq!(dec.d, vec![1, 2, 3]);
        assert_eq!(dec.components_of_d.len(), 3);

        let dec = gallai_edmonds(&path(4));
        assert!(dec.a.is_empty() && dec.d.is_empty());
        assert_eq!(dec.c, vec![0, 1, 2, 3]);

        let dec = gallai_edmonds(&SimpleGraph::complete(3));
        assert!(dec.a.is_empty() && dec.c.is_empty());
        assert_eq!(dec.components_of_d, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn ge_properties_pass_and_detect_corruption() {
        let g = star(3);
        let m = max_matching(&g);
        let dec = gallai_edmonds(&g);
        assert!(verify_ge_properties(&g, &dec, &m).all_pass());

        let k4 = SimpleGraph::complete(4);
        let r = verify_ge_properties(&k4, &gallai_edmonds(&k4), &max_matching(&k4));
        assert!(r.all_pass());

        let mut bad = dec.clone();
        let leaf = bad.d.pop().unwrap();
        bad.components_of_d.retain(|c| c != &vec![leaf]);
        bad.c.push(leaf);
        let r = verify_ge_properties(&g, &bad, &m);
        assert!(matches!(r.status(GeProperty::I), CheckStatus::Fail(_)));
    }

    #[test]
    fn exhaustive_berge_tutte_and_ge_small() {
        // every labeled graph on 6 vertices
        let n = 6;
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        for mask in 0u32..(1 << pairs.len()) {
            let g = SimpleGraph::from_edges(
                n,
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &e)| e),
            )
            .unwrap();
            let m = max_matching(&g);
            assert_eq!(n as isize - 2 * m.size() as isize, brute_deficiency(&g));
            let dec = gallai_edmonds_with(&g, &m);
            assert!(verify_ge_properties(&g, &dec, &m).all_pass(), "{mask}");
            assert!(m.exposed().all(|v| dec.d.contains(&v)));
        }
    }
}
