//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::time::Instant;

use kfactor::sweep::{sweep_conjecture, sweep_theorem};
use kfactor_core::construct::{realize_with_k_factor, KunduConfig};
use kfactor_core::exchange::{
    apply, enumerate_exchanges, find_disjoint_exchanges, find_exchange, find_exchange_lemma35,
    guaranteed_exchange_premise, is_simplified, large_degree_witness, lemma35_witness, simplify,
    ExchangeConstraints, LemmaOutcome,
};
use kfactor_core::matching::{gallai_edmonds_with, max_matching, verify_ge_properties};
use kfactor_core::oracle::{
    enumerate_sequences, find_fixed_realization, fixed_families, validate_pack, TheoremId,
};
use kfactor_core::packer::{
    iterate_fixed_corollary, merge_cycles_pack, pack_avoiding_fixed, pack_kfactor_with_r,
    pack_one_factors, pack_via_complement, PackOptions,
};
use kfactor_core::sequences::{check_eq1, check_eq3, check_main_fixed, check_mid, split_bound};
use kfactor_core::{DegreeSequence, EdgeColoring, Error, SimpleGraph};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn theorem(id: TheoremId, n_max: usize, k_max: usize) -> Outcome {
    let (rep, _) = sweep_theorem(id, n_max, k_max, 0).map_err(|e| e.to_string())?;
    match rep.minimal_counterexample() {
        None => Ok(format!(
            "{} instances, {} with hypothesis",
            rep.checked, rep.hypothesis_true
        )),
        Some(r) => Err(format!(
            "{} violations, smallest {} k={:?} {}",
            rep.violations.len(),
            r.sequence,
            r.k,
            r.witness
        )),
    }
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> SimpleGraph {
    let p: f64 = rng.random_range(0.1..0.9);
    let mut g = SimpleGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// A random 1-factorization of `K_n`, `n` even: the round-robin one under a random relabeling.
fn one_factorization(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<(usize, usize)>> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let m = n - 1;
    let mut out: Vec<Vec<(usize, usize)>> = (0..m)
        .map(|r| {
            let mut f = vec![(perm[r], perm[m])];
            for i in 1..n / 2 {
                f.push((perm[(r + i) % m], perm[(r + m - i) % m]));
            }
            f
        })
        .collect();
    out.shuffle(rng);
    out
}

/// Coloring with classes 2.. regular (unions of 1-factors) and the rest split
/// at random between classes 0 and 1.
fn regular_coloring(rng: &mut ChaCha8Rng) -> EdgeColoring {
    let n = 2 * rng.random_range(2..=5usize);
    let factors = one_factorization(rng, n);
    let t_max = 5.min(n - 1);
    let t = rng.random_range(2..=t_max);
    let regular = t - 2;
    // leave at least two 1-factors for the two free classes
    let spare = factors.len() - 2;
    let mut sizes = vec![1usize; regular];
    let mut budget = spare.saturating_sub(regular);
    for s in sizes.iter_mut() {
        let extra = rng.random_range(0..=budget / 2);
        *s += extra;
        budget -= extra;
    }
    let mut c = EdgeColoring::uniform(n, t);
    let mut it = factors.into_iter();
    for (j, &s) in sizes.iter().enumerate() {
        for f in it.by_ref().take(s) {
            for (u, v) in f {
                c.set_color(u, v, j + 2);
            }
        }
    }
    let bias: f64 = rng.random_range(0.2..0.8);
    for f in it {
        for (u, v) in f {
            c.set_color(u, v, if rng.random_bool(bias) { 0 } else { 1 });
        }
    }
    c
}

fn arbitrary_coloring(rng: &mut ChaCha8Rng) -> EdgeColoring {
    let n = rng.random_range(3..=10usize);
    let t = rng.random_range(2..=5usize);
    let mut c = EdgeColoring::uniform(n, t);
    for u in 0..n {
        for v in u + 1..n {
            c.set_color(u, v, rng.random_range(0..t));
        }
    }
    c
}

fn c1_berge_tutte() -> Outcome {
    theorem(TheoremId::BergeTutte, 7, 0)
}

fn c2_gallai_edmonds() -> Outcome {
    let exhaustive = theorem(TheoremId::GeProperties, 7, 0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..1000 {
        let g = random_graph(&mut rng, 12);
        let m = max_matching(&g);
        let dec = gallai_edmonds_with(&g, &m);
        let rep = verify_ge_properties(&g, &dec, &m);
        ensure(rep.all_pass(), || format!("random graph {i}: {rep:?}"))?;
    }
    Ok(format!("{exhaustive}; 1000 random graphs at n=12"))
}

fn c3_exchange_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut applied, mut simplified) = (0usize, 0usize);
    while applied < 10_000 {
        let regular = applied % 2 == 0;
        let c = if regular {
            regular_coloring(&mut rng)
        } else {
            arbitrary_coloring(&mut rng)
        };
        let n = c.n();
        let v = rng.random_range(0..n);
        let x0 = rng.random_range(0..n);
        let u = rng.random_range(0..n);
        if v == x0 || x0 == u || u == v || c.color(v, x0) == c.color(x0, u) {
            continue;
        }
        let found =
            enumerate_exchanges(&c, v, x0, u, &[], 16, 200_000).map_err(|e| e.to_string())?;
        let Some(l) = found.choose(&mut rng) else {
            continue;
        };
        let next = apply(&c, l).map_err(|e| format!("{l}: {e}"))?;
        for j in 0..c.t() {
            ensure(next.class_degrees(j) == c.class_degrees(j), || {
                format!("class {} degrees changed by {l}", j + 1)
            })?;
        }
        ensure(
            apply(&next, &l.reversed()).ok().as_ref() == Some(&c),
            || format!("{l} not undone"),
        )?;
        applied += 1;
        if regular {
            let s = simplify(&c, l).map_err(|e| format!("simplify {l}: {e}"))?;
            let support = l.support();
            ensure(
                is_simplified(&c, &s)
                    && s.xs[0] == l.xs[0]
                    && s.xs.iter().all(|x| support.binary_search(x).is_ok())
                    && apply(&c, &s).is_ok(),
                || format!("simplify {l} gave {s}"),
            )?;
            simplified += 1;
        }
    }
    Ok(format!(
        "{applied} exchanges applied, {simplified} simplified"
    ))
}

fn random_subset(rng: &mut ChaCha8Rng, pool: &[usize]) -> Vec<usize> {
    let mut xs: Vec<usize> = pool
        .iter()
        .copied()
        .filter(|_| rng.random_bool(0.5))
        .collect();
    if xs.is_empty() && !pool.is_empty() {
        xs.push(*pool.choose(rng).unwrap());
    }
    xs.shuffle(rng);
    xs
}

fn c4_lemma_guarantees() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut premise, mut large, mut l35) = (0usize, 0usize, 0usize);
    for i in 0..1000 {
        let c = regular_coloring(&mut rng);
        let n = c.n();
        let base = ExchangeConstraints::standard(c.t());
        for k in [base.clone(), base.swapped()] {
            let h1 = k.start_class;
            for (v, u) in (0..n).flat_map(|v| (0..n).filter(move |&u| u != v).map(move |u| (v, u)))
            {
                let pool: Vec<usize> = (0..n)
                    .filter(|&x| x != u && x != v && c.color(v, x) == h1 && c.color(x, u) != h1)
                    .collect();
                if guaranteed_exchange_premise(&c, v, u, &k) {
                    for &x0 in &pool {
                        premise += 1;
                        let got = find_exchange(&c, v, x0, u, &k)
                            .map_err(|e| format!("coloring {i}: {e}"))?;
                        ensure(got.is_some(), || {
                            format!("coloring {i}: no exchange v={v} x0={x0} u={u}")
                        })?;
                    }
                }
                if pool.is_empty() {
                    continue;
                }
                let xs = random_subset(&mut rng, &pool);
                if large_degree_witness(&c, v, u, &xs, &k).holds() {
                    large += 1;
                    match find_disjoint_exchanges(&c, v, u, &xs, &k) {
                        Ok(LemmaOutcome::Found(ls)) => {
                            let mut seen = vec![false; n];
                            for l in &ls {
                                for &x in &l.xs {
                                    ensure(!seen[x], || format!("coloring {i}: supports overlap"))?;
                                    seen[x] = true;
                                }
                                apply(&c, l).map_err(|e| e.to_string())?;
                            }
                            ensure(ls.len() == xs.len(), || {
                                format!("coloring {i}: wrong count")
                            })?;
                        }
                        other => return Err(format!("coloring {i}: disjoint exchanges {other:?}")),
                    }
                }
                let xs = random_subset(&mut rng, &pool);
                match find_exchange_lemma35(&c, v, u, &xs, &k) {
                    Ok(LemmaOutcome::Found(l)) => {
                        l35 += 1;
                        apply(&c, &l).map_err(|e| e.to_string())?;
                    }
                    Ok(LemmaOutcome::HypothesisFails(_)) | Ok(LemmaOutcome::NotApplicable(_)) => {
                        ensure(!lemma35_witness(&c, v, u, &xs, &k).holds(), || {
                            format!("coloring {i}: inequality holds but no exchange")
                        })?;
                    }
                    Err(Error::Precondition(_)) => {}
                    Err(e) => return Err(format!("coloring {i}: {e}")),
                }
            }
        }
    }
    Ok(format!(
        "1000 colorings; premise cases {premise}, large-degree cases {large}, inequality cases {l35}"
    ))
}

fn even_sequences(n_max: usize) -> Result<Vec<DegreeSequence>, String> {
    let mut out = Vec::new();
    for n in (2..=n_max).step_by(2) {
        out.extend(enumerate_sequences(n, &|s| s.min_degree() >= 1).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

fn reduced_graphic(s: &DegreeSequence, k: usize) -> bool {
    s.reduce_by_k(k).is_ok_and(|d| d.is_graphic())
}

fn c5_eq1() -> Outcome {
    let opts = PackOptions::default();
    let mut cases = 0;
    for s in even_sequences(10)? {
        for k in 1..=4.min(s.min_degree()) {
            if check_eq1(&s, k).holds() {
                let p = pack_one_factors(&s, k, &opts).map_err(|e| format!("{s} k={k}: {e}"))?;
                validate_pack(&s, &p, k, None).map_err(|e| format!("{s} k={k}: {e}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} sequences packed"))
}

fn c6_other_packers() -> Outcome {
    let opts = PackOptions::default();
    let (mut eq3, mut mid, mut split) = (0, 0, 0);
    for s in even_sequences(10)? {
        for k in 1..=4.min(s.min_degree()) {
            if !reduced_graphic(&s, k) {
                continue;
            }
            let tag = |what: &str, e: Error| format!("{what} {s} k={k}: {e}");
            if check_eq3(&s, k).holds() {
                let p = pack_via_complement(&s, k, &opts).map_err(|e| tag("eq3", e))?;
                validate_pack(&s, &p, k, None).map_err(|e| tag("eq3", e))?;
                eq3 += 1;
            }
            if check_mid(&s, k).holds() {
                let p = merge_cycles_pack(&s, k, &opts).map_err(|e| tag("mid", e))?;
                validate_pack(&s, &p, k, None).map_err(|e| tag("mid", e))?;
                mid += 1;
            }
            let r = split_bound(k, 0).min(k);
            let p = pack_kfactor_with_r(&s, k, r, &opts).map_err(|e| tag("split", e))?;
            validate_pack(&s, &p, r, Some(k - r)).map_err(|e| tag("split", e))?;
            ensure(
                p.factor().is_k_regular(k) && p.factor().is_subgraph_of(&p.g),
                || format!("split {s} k={k}: union is not a {k}-factor"),
            )?;
            split += 1;
        }
    }
    Ok(format!(
        "eq3 {eq3}, mid {mid}, split {split} sequences packed"
    ))
}

fn c7_kundu_petersen() -> Outcome {
    let config = KunduConfig::default();
    let mut cases = 0;
    for n in 1..=10 {
        for s in enumerate_sequences(n, &|_| true).map_err(|e| e.to_string())? {
            for k in 1..=4.min(s.min_degree()) {
                if (n * k) % 2 == 1 || !reduced_graphic(&s, k) {
                    continue;
                }
                let r =
                    realize_with_k_factor(&s, k, &config).map_err(|e| format!("{s} k={k}: {e}"))?;
                let mut rest = r.g.clone();
                let removed = rest.subtract(&r.f);
                ensure(
                    r.g.degree_sequence_of() == s
                        && r.f.is_k_regular(k)
                        && removed
                        && r.f.is_subgraph_of(&r.g)
                        && rest.degree_sequence_of() == s.reduce_by_k(k).unwrap(),
                    || format!("{s} k={k}: postconditions fail"),
                )?;
                cases += 1;
            }
        }
    }
    let petersen = theorem(TheoremId::Petersen, 8, 0)?;
    Ok(format!("{cases} realizations; petersen {petersen}"))
}

fn c8_fixed() -> Outcome {
    let opts = PackOptions::default();
    let (mut packed, mut unembeddable, mut corollary) = (0, 0, 0);
    for n in 2..=8 {
        for s in enumerate_sequences(n, &|s| s.min_degree() >= 1).map_err(|e| e.to_string())? {
            for fam in fixed_families(&s, s.max_degree()) {
                let f = SimpleGraph::from_edges(n, fam).map_err(|e| e.to_string())?;
                if !check_main_fixed(&s, f.max_degree()).holds() {
                    continue;
                }
                match pack_avoiding_fixed(&s, &f, &opts) {
                    Ok(p) => {
                        ensure(
                            f.is_subgraph_of(&p.g)
                                && p.g.degree_sequence_of() == s
                                && n - 2 * p.matching.size() <= 1
                                && p.matching.is_within(&p.g)
                                && p.matching.edges().all(|(u, v)| !f.has_edge(u, v)),
                            || format!("{s} F={f:?}: bad pack"),
                        )?;
                        packed += 1;
                    }
                    Err(Error::Infeasible(_)) => {
                        let none = find_fixed_realization(s.values(), &f, usize::MAX)
                            .map_err(|e| e.to_string())?
                            .is_none();
                        ensure(none, || format!("{s}: infeasible although F embeds"))?;
                        unembeddable += 1;
                    }
                    Err(e) => return Err(format!("{s}: {e}")),
                }
            }
            if n % 2 == 0 {
                for r in 0..s.min_degree() {
                    if check_main_fixed(&s, r).holds() {
                        let p = iterate_fixed_corollary(&s, r, None, &opts)
                            .map_err(|e| format!("corollary {s} r={r}: {e}"))?;
                        validate_pack(&s, &p, r + 1, None)
                            .map_err(|e| format!("corollary {s} r={r}: {e}"))?;
                        corollary += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{packed} fixed packs, {unembeddable} with F in no realization, {corollary} corollary packs"
    ))
}

fn c9_conjecture() -> Outcome {
    let s = sweep_conjecture(10, 3, 0).map_err(|e| e.to_string())?;
    match s.minimal_counterexample() {
        None => Ok(format!(
            "{} cases, 0 counterexamples, {} truncated",
            s.records.len(),
            s.truncated
        )),
        Some(r) => Err(format!(
            "{} counterexamples, smallest {} k={:?}: {}",
            s.counterexamples.len(),
            r.sequence,
            r.k,
            r.witness
        )),
    }
}

fn c10_durfee() -> Outcome {
    theorem(TheoremId::LiBarrus, 12, 0)
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("berge-tutte formula, all graphs n<=7", c1_berge_tutte),
        ("gallai-edmonds properties", c2_gallai_edmonds),
        ("exchange soundness", c3_exchange_soundness),
        ("exchange lemma guarantees", c4_lemma_guarantees),
        ("one-factor packing", c5_eq1),
        ("complement, mid-degree and split packing", c6_other_packers),
        ("kundu realizations and petersen", c7_kundu_petersen),
        ("fixed subgraph packing", c8_fixed),
        ("conjecture sweep n<=10, k<=3", c9_conjecture),
        ("durfee sum lemma n<=12", c10_durfee),
    ];
    let only: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {id:>2} {name} ({detail}) [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {id:>2} {name}: {detail} [{secs:.1}s]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
