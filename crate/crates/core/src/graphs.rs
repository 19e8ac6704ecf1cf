//! Simple graphs, matchings, and edge colorings of the complete graph.
//!
//! Vertices are `0..n` internally; the text formats shift them to `1..=n`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::sequences::DegreeSequence;

/// A loopless graph without multi-edges, stored as a dense adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<bool>,
    deg: Vec<usize>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            adj: vec![false; n * n],
            deg: vec![0; n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Builds a graph from 0-based edges, rejecting loops, duplicates, and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::new(n);
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x + 1, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u + 1));
            }
            if !g.add_edge(u, v) {
                return Err(Error::DuplicateEdge(u.min(v) + 1, u.max(v) + 1));
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    /// Inserts `uv`; returns false if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        debug_assert!(u != v);
        if self.has_edge(u, v) {
            return false;
        }
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
        self.deg[u] += 1;
        self.deg[v] += 1;
        true
    }

    /// Deletes `uv`; returns false if it was absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if !self.has_edge(u, v) {
            return false;
        }
        self.adj[u * self.n + v] = false;
        self.adj[v * self.n + u] = false;
        self.deg[u] -= 1;
        self.deg[v] -= 1;
        true
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.deg[v]
    }

    /// Degrees indexed by vertex (not sorted).
    pub fn degrees(&self) -> &[usize] {
        &self.deg
    }

    pub fn max_degree(&self) -> usize {
        self.deg.iter().copied().max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.adj[v * self.n..(v + 1) * self.n];
        row.iter()
            .enumerate()
            .filter_map(|(u, &b)| if b { Some(u) } else { None })
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n).filter_map(move |v| {
                if self.has_edge(u, v) {
                    Some((u, v))
                } else {
                    None
                }
            })
        })
    }

    pub fn edge_count(&self) -> usize {
        self.deg.iter().sum::<usize>() / 2
    }

    /// Degrees sorted non-increasing.
    pub fn degree_sequence_of(&self) -> DegreeSequence {
        let mut d = self.deg.clone();
        d.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence::from_sorted_unchecked(d)
    }

    pub fn complement(&self) -> Self {
        let mut g = Self::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn is_k_regular(&self, k: usize) -> bool {
        self.deg.iter().all(|&d| d == k)
    }

    /// Connected components of the subgraph induced on vertices with `alive[v]`,
    /// each sorted, ordered by smallest vertex.
    pub fn components_within(&self, alive: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.n {
            if seen[s] || !alive[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for u in self.neighbors(v) {
                    if alive[u] && !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_within(&vec![true; self.n])
    }

    /// `o(G)`: number of components with an odd number of vertices.
    pub fn odd_components(&self) -> usize {
        self.components()
            .iter()
            .filter(|c| c.len() % 2 == 1)
            .count()
    }

    /// `o(G - S) - |S|`.
    pub fn deficiency_of_set(&self, set: &[usize]) -> isize {
        let mut alive = vec![true; self.n];
        for &s in set {
            alive[s] = false;
        }
        let odd = self
            .components_within(&alive)
            .iter()
            .filter(|c| c.len() % 2 == 1)
            .count();
        odd as isize - set.len() as isize
    }

    /// Subgraph induced on `vertices`, relabeled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut g = Self::new(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut g = Self::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn is_subgraph_of(&self, other: &Self) -> bool {
        self.n == other.n && self.edges().all(|(u, v)| other.has_edge(u, v))
    }

    pub fn is_edge_disjoint(&self, other: &Self) -> bool {
        self.edges().all(|(u, v)| !other.has_edge(u, v))
    }

    /// Adds every edge of `other`; returns false if some edge was already present.
    pub fn union_with(&mut self, other: &Self) -> bool {
        let mut disjoint = true;
        for (u, v) in other.edges() {
            disjoint &= self.add_edge(u, v);
        }
        disjoint
    }

    /// Removes every edge of `other`; returns false if some edge was absent.
    pub fn subtract(&mut self, other: &Self) -> bool {
        let mut contained = true;
        for (u, v) in other.edges() {
            contained &= self.remove_edge(u, v);
        }
        contained
    }
}

/// A set of pairwise vertex-disjoint edges on `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Self {
            mate: vec![None; n],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut m = Self::empty(n);
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x + 1, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u + 1));
            }
            if m.mate[u].is_some() || m.mate[v].is_some() {
                return Err(Error::Precondition(alloc::format!(
                    "edges of a matching share a vertex at {} {}",
                    u + 1,
                    v + 1
                )));
            }
            m.mate[u] = Some(v);
            m.mate[v] = Some(u);
        }
        Ok(m)
    }

    /// Builds a matching from an explicit mate array; caller guarantees symmetry.
    pub(crate) fn from_mates(mate: Vec<Option<usize>>) -> Self {
        debug_assert!(mate
            .iter()
            .enumerate()
            .all(|(v, m)| m.is_none_or(|u| mate[u] == Some(v))));
        Self { mate }
    }

    pub fn n(&self) -> usize {
        self.mate.len()
    }

    /// The partner of `v`, if covered.
    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate[v]
    }

    pub fn covers(&self, v: usize) -> bool {
        self.mate[v].is_some()
    }

    pub fn size(&self) -> usize {
        self.mate.iter().filter(|m| m.is_some()).count() / 2
    }

    pub fn is_perfect(&self) -> bool {
        self.mate.iter().all(Option::is_some)
    }

    pub fn exposed(&self) -> impl Iterator<Item = usize> + '_ {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(v, m)| if m.is_none() { Some(v) } else { None })
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mate.iter().enumerate().filter_map(|(v, m)| match m {
            Some(u) if v < *u => Some((v, *u)),
            _ => None,
        })
    }

    pub fn add(&mut self, u: usize, v: usize) {
        debug_assert!(self.mate[u].is_none() && self.mate[v].is_none());
        self.mate[u] = Some(v);
        self.mate[v] = Some(u);
    }

    pub fn remove(&mut self, u: usize, v: usize) {
        debug_assert!(self.mate[u] == Some(v));
        self.mate[u] = None;
        self.mate[v] = None;
    }

    pub fn to_graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.n());
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        g
    }

    pub fn is_within(&self, g: &SimpleGraph) -> bool {
        self.edges().all(|(u, v)| g.has_edge(u, v))
    }
}

/// Color index of an edge class, 0-based (`H_1` is color 0).
pub type Color = usize;

/// A partition of `E(K_n)` into `t` color classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    n: usize,
    t: usize,
    colors: Vec<u16>,
}

#[inline]
fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

impl EdgeColoring {
    /// Uniform coloring: every edge of `K_n` in class 0 of `t` classes.
    pub fn uniform(n: usize, t: usize) -> Self {
        assert!(t >= 1);
        Self {
            n,
            t,
            colors: vec![0; n * n.saturating_sub(1) / 2],
        }
    }

    /// Class `i` becomes `parts[i]`; the parts must partition `E(K_n)` exactly.
    pub fn build(parts: &[SimpleGraph]) -> Result<Self, Error> {
        let first = parts
            .first()
            .ok_or(Error::Precondition("at least one class is required".into()))?;
        let n = first.n();
        if parts.iter().any(|p| p.n() != n) {
            return Err(Error::VertexCountMismatch);
        }
        const UNSET: u16 = u16::MAX;
        let mut colors = vec![UNSET; n * n.saturating_sub(1) / 2];
        for (c, part) in parts.iter().enumerate() {
            for (u, v) in part.edges() {
                let slot = &mut colors[pair_index(n, u, v)];
                if *slot != UNSET {
                    return Err(Error::ClassOverlap(u + 1, v + 1));
                }
                *slot = c as u16;
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                if colors[pair_index(n, u, v)] == UNSET {
                    return Err(Error::ClassMissing(u + 1, v + 1));
                }
            }
        }
        Ok(Self {
            n,
            t: parts.len(),
            colors,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        self.colors[pair_index(self.n, u, v)] as Color
    }

    pub fn set_color(&mut self, u: usize, v: usize, c: Color) {
        assert!(c < self.t);
        self.colors[pair_index(self.n, u, v)] = c as u16;
    }

    /// `H_j` as a spanning subgraph.
    pub fn extract_class(&self, j: Color) -> Result<SimpleGraph, Error> {
        if j >= self.t {
            return Err(Error::ColorOutOfRange {
                color: j + 1,
                t: self.t,
            });
        }
        let mut g = SimpleGraph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.color(u, v) == j {
                    g.add_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    pub fn classes(&self) -> Vec<SimpleGraph> {
        (0..self.t)
            .map(|j| self.extract_class(j).expect("in range"))
            .collect()
    }

    pub fn class_neighbors(&self, v: usize, c: Color) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| u != v && self.color(u, v) == c)
    }

    pub fn class_degree(&self, v: usize, c: Color) -> usize {
        self.class_neighbors(v, c).count()
    }

    /// Per-vertex degrees inside class `c`.
    pub fn class_degrees(&self, c: Color) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.color(u, v) == c {
                    d[u] += 1;
                    d[v] += 1;
                }
            }
        }
        d
    }

    /// True when every vertex has the same degree in class `c`.
    pub fn is_class_regular(&self, c: Color) -> bool {
        let d = self.class_degrees(c);
        d.windows(2).all(|w| w[0] == w[1])
    }

    /// Appends a new class and moves the given edges of class `from` into it.
    pub fn split_class(&mut self, from: Color, edges: &[(usize, usize)]) -> Result<Color, Error> {
        if from >= self.t {
            return Err(Error::ColorOutOfRange {
                color: from + 1,
                t: self.t,
            });
        }
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| self.color(u, v) != from) {
            return Err(Error::Precondition(alloc::format!(
                "edge {} {} is not in class {}",
                u + 1,
                v + 1,
                from + 1
            )));
        }
        let new = self.t;
        self.t += 1;
        for &(u, v) in edges {
            self.set_color(u, v, new);
        }
        Ok(new)
    }

    /// Moves every edge of class `from` into class `into`, then removes `from`
    /// and shifts later classes down by one.
    pub fn merge_class(&mut self, from: Color, into: Color) {
        assert!(from < self.t && into < self.t && from != into);
        for c in self.colors.iter_mut() {
            let cur = *c as usize;
            let mut next = if cur == from { into } else { cur };
            if next > from {
                next -= 1;
            }
            *c = next as u16;
        }
        self.t -= 1;
    }

    /// Exchanges the labels of two classes.
    pub fn swap_classes(&mut self, a: Color, b: Color) {
        for c in self.colors.iter_mut() {
            if *c as usize == a {
                *c = b as u16;
            } else if *c as usize == b {
                *c = a as u16;
            }
        }
    }
}

#[cfg(test)]
pub(crate) mod test_graphs {
    use super::SimpleGraph;

    pub fn cycle(n: usize) -> SimpleGraph {
        SimpleGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn star(leaves: usize) -> SimpleGraph {
        SimpleGraph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    pub fn path(n: usize) -> SimpleGraph {
        SimpleGraph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    /// Two disjoint triangles.
    pub fn two_triangles() -> SimpleGraph {
        SimpleGraph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::test_graphs::*;
    use super::*;

    #[test]
    fn degree_sequences() {
        assert_eq!(SimpleGraph::complete(4).degree_sequence_of().values(), &[3, 3, 3, 3]);
        assert_eq!(star(3).degree_sequence_of().values(), &[3, 1, 1, 1]);
        assert_eq!(SimpleGraph::new(2).degree_sequence_of().values(), &[0, 0]);
    }

    #[test]
    fn complement_examples() {
        assert_eq!(SimpleGraph::complete(4).complement(), SimpleGraph::new(4));
        let c4 = cycle(4).complement();
        assert_eq!(c4.edge_count(), 2);
        assert!(c4.has_edge(0, 2) && c4.has_edge(1, 3));
        // C5 is self-complementary up to isomorphism: the complement is again 2-regular and connected
        let c5 = cycle(5).complement();
        assert!(c5.is_k_regular(2));
        assert_eq!(c5.components().len(), 1);
    }

    #[test]
    fn regularity() {
        assert!(SimpleGraph::complete(4).is_k_regular(3));
        assert!(cycle(6).is_k_regular(2));
        assert!(!star(3).is_k_regular(1));
    }

    #[test]
    fn odd_components_examples() {
        assert_eq!(two_triangles().odd_components(), 2);
        assert_eq!(cycle(6).odd_components(), 0);
        let leaves = star(3).induced(&[1, 2, 3]);
        assert_eq!(leaves.odd_components(), 3);
    }

    #[test]
    fn deficiency_of_set_examples() {
        assert_eq!(star(3).deficiency_of_set(&[0]), 2);
        assert_eq!(SimpleGraph::complete(4).deficiency_of_set(&[]), 0);
        assert_eq!(cycle(6).deficiency_of_set(&[]), 0);
        let g = two_triangles();
        assert_eq!(g.deficiency_of_set(&[]), g.odd_components() as isize);
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(SimpleGraph::from_edges(3, [(0, 0)]), Err(Error::Loop(1)));
        assert_eq!(
            SimpleGraph::from_edges(3, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(1, 2))
        );
        assert!(matches!(
            SimpleGraph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn coloring_roundtrip_and_classes() {
        let c4 = cycle(4);
        let co = c4.complement();
        let coloring = EdgeColoring::build(&[c4.clone(), co.clone()]).unwrap();
        assert_eq!(coloring.extract_class(0).unwrap(), c4);
        assert_eq!(coloring.extract_class(1).unwrap(), co);
        assert!(matches!(
            coloring.extract_class(2),
            Err(Error::ColorOutOfRange { .. })
        ));
        let single = EdgeColoring::build(&[SimpleGraph::complete(5)]).unwrap();
        assert_eq!(single.extract_class(0).unwrap(), SimpleGraph::complete(5));
    }

    #[test]
    fn coloring_rejects_overlap_and_gaps() {
        let c4 = cycle(4);
        assert!(matches!(
            EdgeColoring::build(&[c4.clone(), c4.clone()]),
            Err(Error::ClassOverlap(_, _))
        ));
        assert!(matches!(
            EdgeColoring::build(&[c4]),
            Err(Error::ClassMissing(1, 3))
        ));
    }

    #[test]
    fn split_and_merge_classes() {
        let mut c = EdgeColoring::uniform(4, 1);
        let m = [(0, 1), (2, 3)];
        let new = c.split_class(0, &m).unwrap();
        assert_eq!(new, 1);
        assert!(c.is_class_regular(1));
        assert_eq!(c.class_degrees(0), vec![2, 2, 2, 2]);
        c.merge_class(1, 0);
        assert_eq!(c.t(), 1);
        assert_eq!(c.extract_class(0).unwrap(), SimpleGraph::complete(4));
    }

    #[test]
    fn matching_rules() {
        assert!(Matching::from_edges(4, [(0, 1), (1, 2)]).is_err());
        let m = Matching::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(m.is_perfect());
        assert_eq!(m.size(), 2);
        assert_eq!(m.mate(3), Some(2));
    }
}
