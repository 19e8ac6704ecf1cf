//! Parallel oracle sweeps and their JSONL records.

use std::io::Write;

use kfactor_core::oracle::{
    check_instance, enumerate_sequences, theorem_instances, verify_conjecture, Record, TheoremId,
    TheoremReport,
};
use kfactor_core::{DegreeSequence, Error};
use rayon::prelude::*;
use serde::Serialize;

/// One report line. Field names are fixed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JsonRecord {
    pub sequence: Vec<usize>,
    pub k: Option<usize>,
    pub hypothesis_holds: bool,
    pub conclusion_holds: Option<bool>,
    pub witness: String,
}

impl From<&Record> for JsonRecord {
    fn from(r: &Record) -> Self {
        Self {
            sequence: r.sequence.values().to_vec(),
            k: r.k,
            hypothesis_holds: r.hypothesis_holds,
            conclusion_holds: r.conclusion_holds,
            witness: r.witness.clone(),
        }
    }
}

pub fn write_jsonl<W: Write>(out: &mut W, records: &[Record]) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut *out, &JsonRecord::from(r))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, Error> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Precondition(format!("cannot start {jobs} workers: {e}")))
}

/// Records in a fixed order: by `n`, then `k`, then sequence, then witness.
fn sort_records(records: &mut [Record]) {
    records.sort_by(|a, b| {
        (a.sequence.len(), a.k, b.sequence.values(), &a.witness).cmp(&(
            b.sequence.len(),
            b.k,
            a.sequence.values(),
            &b.witness,
        ))
    });
}

/// Sweep of one theorem with `jobs` workers (0 means one per core).
pub fn sweep_theorem(
    id: TheoremId,
    n_max: usize,
    k_max: usize,
    jobs: usize,
) -> Result<(TheoremReport, Vec<Record>), Error> {
    let instances = theorem_instances(id, n_max, k_max)?;
    let mut records = pool(jobs)?.install(|| {
        instances
            .par_iter()
            .map(|inst| check_instance(id, inst))
            .collect::<Result<Vec<_>, _>>()
    })?;
    sort_records(&mut records);
    Ok((TheoremReport::from_records(id, &records), records))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureSweep {
    pub records: Vec<Record>,
    /// Disagreements, smallest first.
    pub counterexamples: Vec<Record>,
    /// Cases whose realization search was cut off.
    pub truncated: usize,
}

impl ConjectureSweep {
    pub fn minimal_counterexample(&self) -> Option<&Record> {
        self.counterexamples.first()
    }
}

/// Every graphic sequence of even length `2..=n_max` against every `k <= min(k_max, d_n)`.
pub fn sweep_conjecture(n_max: usize, k_max: usize, jobs: usize) -> Result<ConjectureSweep, Error> {
    let mut work: Vec<(DegreeSequence, usize)> = Vec::new();
    for n in (2..=n_max).step_by(2) {
        for s in enumerate_sequences(n, &|s| s.min_degree() >= 1)? {
            for k in 1..=k_max.min(s.min_degree()) {
                work.push((s.clone(), k));
            }
        }
    }
    let results = pool(jobs)?.install(|| {
        work.par_iter()
            .map(|(s, k)| verify_conjecture(s, *k))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let mut truncated = 0;
    let mut records: Vec<Record> = results
        .iter()
        .map(|r| {
            truncated += r.truncated as usize;
            let witness = match &r.witness {
                Some((g, ms)) => {
                    let mut w = edges(g);
                    for m in ms {
                        w.push_str(" |");
                        for (u, v) in m.edges() {
                            w.push_str(&format!(" {}-{}", u + 1, v + 1));
                        }
                    }
                    w
                }
                None if r.truncated => "truncated".into(),
                None => String::new(),
            };
            Record {
                sequence: r.sequence.clone(),
                k: Some(r.k),
                hypothesis_holds: r.reduced_graphic,
                conclusion_holds: (!r.truncated).then_some(r.packing_exists),
                witness,
            }
        })
        .collect();
    sort_records(&mut records);
    let mut counterexamples: Vec<Record> = records
        .iter()
        .filter(|r| r.conclusion_holds.is_some_and(|c| c != r.hypothesis_holds))
        .cloned()
        .collect();
    minimize(&mut counterexamples);
    Ok(ConjectureSweep {
        records,
        counterexamples,
        truncated,
    })
}

/// Smallest `n`, then smallest `k`, then smallest degree sum, then lexicographically smallest.
fn minimize(rs: &mut [Record]) {
    rs.sort_by(|a, b| {
        (
            a.sequence.len(),
            a.k,
            a.sequence.degree_sum(),
            a.sequence.values(),
        )
            .cmp(&(
                b.sequence.len(),
                b.k,
                b.sequence.degree_sum(),
                b.sequence.values(),
            ))
    });
}

fn edges(g: &kfactor_core::SimpleGraph) -> String {
    let v: Vec<String> = g
        .edges()
        .map(|(u, w)| format!("{}-{}", u + 1, w + 1))
        .collect();
    v.join(" ")
}
