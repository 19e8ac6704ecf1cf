//! Degree sequences and the closed-form sufficient conditions evaluated on them.
//!
//! Every formula here indexes the sequence 1-based (`d_1 >= ... >= d_n`) through
//! [`DegreeSequence::d`]; storage is 0-based.

use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// A non-increasing sequence of vertex degrees with every entry in `[0, n-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSequence {
    values: Vec<usize>,
}

/// A sequence sorted on ingestion, together with the permutation that sorted it.
///
/// `order[i]` is the caller's position of the entry that landed at sorted position `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub seq: DegreeSequence,
    pub order: Vec<usize>,
}

impl Canonical {
    /// Maps a sorted-position vertex to the caller's vertex.
    pub fn to_caller(&self, sorted_vertex: usize) -> usize {
        self.order[sorted_vertex]
    }
}

impl DegreeSequence {
    /// Accepts an already non-increasing sequence.
    pub fn new(values: Vec<usize>) -> Result<Self, Error> {
        let n = values.len();
        if let Some(w) = values.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::NotSorted { position: w + 1 });
        }
        if let Some(&d) = values.first() {
            if n > 0 && d > n - 1 {
                return Err(Error::DegreeOutOfRange { degree: d, n });
            }
        }
        Ok(Self { values })
    }

    /// Sorts caller input into non-increasing order, recording the permutation.
    pub fn canonicalize(values: &[usize]) -> Result<Canonical, Error> {
        let mut order: Vec<usize> = (0..values.len()).collect();
        // stable: ties keep caller order
        order.sort_by(|&a, &b| values[b].cmp(&values[a]));
        let sorted = order.iter().map(|&i| values[i]).collect();
        Ok(Canonical {
            seq: Self::new(sorted)?,
            order,
        })
    }

    /// Builds a sequence without range checks; used for shifted sequences
    /// whose entries are known to be valid.
    pub(crate) fn from_sorted_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] >= w[1]));
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }

    /// `d_i` with 1-based `i`.
    pub fn d(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn max_degree(&self) -> usize {
        self.values.first().copied().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.values.last().copied().unwrap_or(0)
    }

    pub fn degree_sum(&self) -> usize {
        self.values.iter().sum()
    }

    /// `d_1 - d_n`.
    pub fn spread(&self) -> usize {
        self.max_degree() - self.min_degree()
    }

    /// Erdős–Gallai test, O(n) after prefix sums.
    pub fn is_graphic(&self) -> bool {
        is_graphic_values(&self.values)
    }

    /// `(d_1 - k, ..., d_n - k)`.
    pub fn reduce_by_k(&self, k: usize) -> Result<Self, Error> {
        if k > self.min_degree() && !self.is_empty() {
            return Err(Error::ReductionTooLarge {
                k,
                min_degree: self.min_degree(),
            });
        }
        Ok(Self::from_sorted_unchecked(
            self.values.iter().map(|&d| d - k).collect(),
        ))
    }

    /// `(d_1 + k, ..., d_n + k)`; fails if an entry would exceed `n - 1`.
    pub fn lift_by_k(&self, k: usize) -> Result<Self, Error> {
        Self::new(self.values.iter().map(|&d| d + k).collect())
    }

    /// `(n-1-d_n, ..., n-1-d_1)`.
    pub fn complement_sequence(&self) -> Self {
        let n = self.len();
        Self::from_sorted_unchecked(self.values.iter().rev().map(|&d| n - 1 - d).collect())
    }

    /// Modified Durfee number `max{i : d_i >= i-1}`.
    pub fn durfee_m(&self) -> usize {
        (1..=self.len())
            .filter(|&i| self.d(i) + 1 >= i)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Erdős–Gallai on a non-increasing slice.
pub(crate) fn is_graphic_values(d: &[usize]) -> bool {
    let n = d.len();
    if d.iter().sum::<usize>() % 2 != 0 {
        return false;
    }
    if n == 0 {
        return true;
    }
    if d[0] > n - 1 {
        return false;
    }
    let mut prefix = 0usize;
    let mut tail = vec_suffix_sums(d);
    tail.push(0);
    // p = first index (0-based) with d[p] <= k, maintained as k grows
    let mut p = n;
    for k in 1..=n {
        prefix += d[k - 1];
        while p > 0 && d[p - 1] <= k {
            p -= 1;
        }
        // entries i in [k, n): min(d_i, k); those with index < p have d_i > k
        let start = p.max(k);
        let big = start - k;
        let rhs = k * (k - 1) + big * k + tail[start];
        if prefix > rhs {
            return false;
        }
    }
    true
}

fn vec_suffix_sums(d: &[usize]) -> Vec<usize> {
    let mut out = alloc::vec![0; d.len()];
    let mut acc = 0;
    for i in (0..d.len()).rev() {
        acc += d[i];
        out[i] = acc;
    }
    out
}

/// Which closed-form condition a report belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConditionId {
    /// `d_{d1-dn+k} >= d1-dn+k-1`
    Eq1,
    /// `d_{d1-dn+1} >= d1-dn+k-1`
    Conjecture6,
    /// `d_{n+1-(d1-dn+k)} <= n-(d1-dn)`
    Eq3,
    /// The two alternatives involving the modified Durfee number.
    Mid,
    /// `k >= d1/2 + r - 1` or `k >= n-1-dn + 2(r-1)`
    LargeK,
    /// `d_{d1-dn+2r+1} >= d1-dn+2r`
    MainFixed,
}

impl ConditionId {
    pub fn name(self) -> &'static str {
        match self {
            ConditionId::Eq1 => "eq1",
            ConditionId::Conjecture6 => "conjecture6",
            ConditionId::Eq3 => "eq3",
            ConditionId::Mid => "mid",
            ConditionId::LargeK => "largek",
            ConditionId::MainFixed => "main_fixed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Ge,
    Gt,
    Le,
    Lt,
}

impl Comparison {
    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::Ge => ">=",
            Comparison::Gt => ">",
            Comparison::Le => "<=",
            Comparison::Lt => "<",
        }
    }
}

/// An inequality instantiated with concrete numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub lhs: i64,
    pub cmp: Comparison,
    pub rhs: i64,
}

impl Witness {
    pub fn new(lhs: i64, cmp: Comparison, rhs: i64) -> Self {
        Self { lhs, cmp, rhs }
    }

    pub fn holds(&self) -> bool {
        match self.cmp {
            Comparison::Ge => self.lhs >= self.rhs,
            Comparison::Gt => self.lhs > self.rhs,
            Comparison::Le => self.lhs <= self.rhs,
            Comparison::Lt => self.lhs < self.rhs,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.cmp.symbol(), self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evaluation {
    Evaluated(Witness),
    NotApplicable(&'static str),
}

/// One inequality of a (possibly disjunctive) condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub label: &'static str,
    pub evaluation: Evaluation,
}

impl Clause {
    fn evaluated(label: &'static str, w: Witness) -> Self {
        Self {
            label,
            evaluation: Evaluation::Evaluated(w),
        }
    }

    fn not_applicable(label: &'static str, why: &'static str) -> Self {
        Self {
            label,
            evaluation: Evaluation::NotApplicable(why),
        }
    }

    pub fn holds(&self) -> bool {
        matches!(&self.evaluation, Evaluation::Evaluated(w) if w.holds())
    }

    pub fn witness(&self) -> Option<Witness> {
        match self.evaluation {
            Evaluation::Evaluated(w) => Some(w),
            Evaluation::NotApplicable(_) => None,
        }
    }
}

/// Result of evaluating a condition: it holds iff some clause holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub condition: ConditionId,
    pub clauses: Vec<Clause>,
}

impl ConditionReport {
    fn single(condition: ConditionId, clause: Clause) -> Self {
        Self {
            condition,
            clauses: alloc::vec![clause],
        }
    }

    pub fn holds(&self) -> bool {
        self.clauses.iter().any(Clause::holds)
    }

    /// True when no clause could be evaluated.
    pub fn not_applicable(&self) -> bool {
        self.clauses
            .iter()
            .all(|c| matches!(c.evaluation, Evaluation::NotApplicable(_)))
    }

    pub fn clause(&self, i: usize) -> &Clause {
        &self.clauses[i]
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.holds() {
            "holds"
        } else if self.not_applicable() {
            "not-applicable"
        } else {
            "fails"
        };
        write!(f, "{}: {}", self.condition.name(), verdict)?;
        for c in &self.clauses {
            match &c.evaluation {
                Evaluation::Evaluated(w) => write!(f, " [{}: {}]", c.label, w)?,
                Evaluation::NotApplicable(why) => write!(f, " [{}: n/a, {}]", c.label, why)?,
            }
        }
        Ok(())
    }
}

fn as_i64(x: usize) -> i64 {
    x as i64
}

/// `ceil(a / 2)` for signed `a`.
fn ceil_half(a: i64) -> i64 {
    -((-a).div_euclid(2))
}

/// Evaluates `d_index >= rhs`-style clauses with range checks on the 1-based index.
fn indexed_clause(
    seq: &DegreeSequence,
    label: &'static str,
    index: i64,
    cmp: Comparison,
    rhs: i64,
) -> Clause {
    if index < 1 || index > as_i64(seq.len()) {
        return Clause::not_applicable(label, "subscript outside 1..n");
    }
    Clause::evaluated(label, Witness::new(as_i64(seq.d(index as usize)), cmp, rhs))
}

fn k_in_range(seq: &DegreeSequence, k: usize) -> bool {
    !seq.is_empty() && k >= 1 && k <= seq.min_degree()
}

/// `d_{d1-dn+k} >= d1-dn+k-1`.
pub fn check_eq1(seq: &DegreeSequence, k: usize) -> ConditionReport {
    let label = "d[d1-dn+k] >= d1-dn+k-1";
    if !k_in_range(seq, k) {
        return ConditionReport::single(
            ConditionId::Eq1,
            Clause::not_applicable(label, "requires 1 <= k <= d_n"),
        );
    }
    let s = as_i64(seq.spread());
    let k = as_i64(k);
    ConditionReport::single(
        ConditionId::Eq1,
        indexed_clause(seq, label, s + k, Comparison::Ge, s + k - 1),
    )
}

/// `d_{d1-dn+1} >= d1-dn+k-1`.
pub fn check_conjecture6(seq: &DegreeSequence, k: usize) -> ConditionReport {
    let label = "d[d1-dn+1] >= d1-dn+k-1";
    if !k_in_range(seq, k) {
        return ConditionReport::single(
            ConditionId::Conjecture6,
            Clause::not_applicable(label, "requires 1 <= k <= d_n"),
        );
    }
    let s = as_i64(seq.spread());
    ConditionReport::single(
        ConditionId::Conjecture6,
        indexed_clause(seq, label, s + 1, Comparison::Ge, s + as_i64(k) - 1),
    )
}

/// `d_{n+1-(d1-dn+k)} <= n-(d1-dn)`. Graphicality of `D_k` is the caller's concern.
pub fn check_eq3(seq: &DegreeSequence, k: usize) -> ConditionReport {
    let label = "d[n+1-(d1-dn+k)] <= n-(d1-dn)";
    if seq.is_empty() || k == 0 {
        return ConditionReport::single(
            ConditionId::Eq3,
            Clause::not_applicable(label, "requires n >= 1 and k >= 1"),
        );
    }
    let n = as_i64(seq.len());
    let s = as_i64(seq.spread());
    ConditionReport::single(
        ConditionId::Eq3,
        indexed_clause(seq, label, n + 1 - (s + as_i64(k)), Comparison::Le, n - s),
    )
}

/// The two alternatives `d_{min(n/2, m-1)} > ceil((n+3k-8)/2)` and
/// `ceil((n+5-k)/2) > d_{max(n/2+1, n+2-m(complement of D_k))}`.
/// Clause 0 is the first alternative, clause 1 the second.
pub fn check_mid(seq: &DegreeSequence, k: usize) -> ConditionReport {
    let first_label = "d[min(n/2,m-1)] > ceil((n+3k-8)/2)";
    let second_label = "ceil((n+5-k)/2) > d[max(n/2+1,n+2-m(co-Dk))]";
    let n = seq.len();
    if n == 0 || n % 2 != 0 {
        return ConditionReport {
            condition: ConditionId::Mid,
            clauses: alloc::vec![
                Clause::not_applicable(first_label, "requires even n >= 2"),
                Clause::not_applicable(second_label, "requires even n >= 2"),
            ],
        };
    }
    let ni = as_i64(n);
    let ki = as_i64(k);
    let m = as_i64(seq.durfee_m());
    let first = indexed_clause(
        seq,
        first_label,
        (ni / 2).min(m - 1),
        Comparison::Gt,
        ceil_half(ni + 3 * ki - 8),
    );
    let second = match seq.reduce_by_k(k) {
        Ok(dk) => {
            let mc = as_i64(dk.complement_sequence().durfee_m());
            let index = (ni / 2 + 1).max(ni + 2 - mc);
            let threshold = ceil_half(ni + 5 - ki);
            if index < 1 || index > ni {
                Clause::not_applicable(second_label, "subscript outside 1..n")
            } else {
                Clause::evaluated(
                    second_label,
                    Witness::new(threshold, Comparison::Gt, as_i64(seq.d(index as usize))),
                )
            }
        }
        Err(_) => Clause::not_applicable(second_label, "requires k <= d_n"),
    };
    ConditionReport {
        condition: ConditionId::Mid,
        clauses: alloc::vec![first, second],
    }
}

/// `(m(pi), m(complement of pi))`.
pub fn li_barrus_sum(seq: &DegreeSequence) -> (usize, usize) {
    (seq.durfee_m(), seq.complement_sequence().durfee_m())
}

/// The value `m(pi) + m(co-pi)` must take: `n+1` if `d_m = m-1`, else `n`.
pub fn li_barrus_expected(seq: &DegreeSequence) -> usize {
    let m = seq.durfee_m();
    if m >= 1 && seq.d(m) + 1 == m {
        seq.len() + 1
    } else {
        seq.len()
    }
}

/// `floor((d_n - 2 + sqrt(n(2 d_n - n - 4))) / 4)`, defined when `d_n >= n/2 + 2`.
/// Exact: the integer square root stands in for the real one since the other
/// numerator terms are integers.
pub fn hartke_seacrest_f(min_degree: usize, n: usize) -> Option<usize> {
    if 2 * min_degree < n + 4 {
        return None;
    }
    let radicand = (n * (2 * min_degree - n - 4)) as u64;
    let root = radicand.isqrt() as usize;
    Some((min_degree - 2 + root) / 4)
}

/// `k >= d1/2 + r - 1` (evaluated doubled: `2k >= d1 + 2r - 2`) or
/// `k >= n-1-dn + 2(r-1)`.
pub fn check_largek(seq: &DegreeSequence, k: usize, r: usize) -> ConditionReport {
    let first_label = "2k >= d1 + 2(r-1)";
    let second_label = "k >= n-1-dn + 2(r-1)";
    if seq.is_empty() || r == 0 {
        return ConditionReport {
            condition: ConditionId::LargeK,
            clauses: alloc::vec![
                Clause::not_applicable(first_label, "requires n >= 1 and r >= 1"),
                Clause::not_applicable(second_label, "requires n >= 1 and r >= 1"),
            ],
        };
    }
    let k = as_i64(k);
    let r = as_i64(r);
    let n = as_i64(seq.len());
    let d1 = as_i64(seq.max_degree());
    let dn = as_i64(seq.min_degree());
    ConditionReport {
        condition: ConditionId::LargeK,
        clauses: alloc::vec![
            Clause::evaluated(
                first_label,
                Witness::new(2 * k, Comparison::Ge, d1 + 2 * (r - 1))
            ),
            Clause::evaluated(
                second_label,
                Witness::new(k, Comparison::Ge, n - 1 - dn + 2 * (r - 1))
            ),
        ],
    }
}

/// `d_{d1-dn+2r+1} >= d1-dn+2r`, the hypothesis for packing around a fixed
/// subgraph of maximum degree `r`.
pub fn check_main_fixed(seq: &DegreeSequence, r: usize) -> ConditionReport {
    let label = "d[d1-dn+2r+1] >= d1-dn+2r";
    if seq.is_empty() {
        return ConditionReport::single(
            ConditionId::MainFixed,
            Clause::not_applicable(label, "requires n >= 1"),
        );
    }
    let s = as_i64(seq.spread());
    let r = as_i64(r);
    ConditionReport::single(
        ConditionId::MainFixed,
        indexed_clause(seq, label, s + 2 * r + 1, Comparison::Ge, s + 2 * r),
    )
}

/// Upper bound on `r` for a `k`-factor containing `r` disjoint 1-factors:
/// `max(min(k, 4), floor((k + extra + 3) / 3))`, `extra` being the Petersen lift.
pub fn split_bound(k: usize, extra: usize) -> usize {
    k.min(4).max((k + extra + 3) / 3)
}
