//! Command-line front end.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use kfactor_core::construct::{
    havel_hakimi, petersen_2factorization, realize_with_k_factor, KunduConfig,
};
use kfactor_core::exchange::{
    apply, find_exchange, is_simplified, simplify, ExchangeConstraints, ExchangeList,
};
use kfactor_core::matching::{
    gallai_edmonds_with, max_matching, verify_ge_properties, CheckStatus,
};
use kfactor_core::oracle::{self, TheoremId};
use kfactor_core::packer::{
    iterate_fixed_corollary, merge_cycles_pack, pack_avoiding_fixed, pack_best,
    pack_kfactor_with_r, pack_one_factors, pack_via_complement, pack_with_petersen_boost,
    FactorPack, PackOptions, PackTrace, TraceStep,
};
use kfactor_core::sequences::{
    check_conjecture6, check_eq1, check_eq3, check_largek, check_main_fixed, check_mid,
    hartke_seacrest_f, li_barrus_expected, li_barrus_sum, split_bound,
};
use kfactor_core::{DegreeSequence, Error, Matching, SimpleGraph};
use thiserror::Error as ThisError;

use crate::formats::{self, FormatError};
use crate::sweep;

#[derive(Debug, Parser)]
#[command(
    name = "kfactor",
    version,
    about = "Realizations of degree sequences with edge-disjoint 1-factors"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every sufficient condition for a sequence.
    Check {
        #[command(flatten)]
        input: Input,
        /// Size of the factor to test
        #[arg(long)]
        k: usize,
        /// Number of 1-factors for the fixed-subgraph and large-k conditions.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long = "k-prime", default_value_t = 0)]
        k_prime: usize,
    },
    /// Realize a sequence, optionally with a k-factor.
    Realize {
        #[command(flatten)]
        input: Input,
        /// Also build a k-factor inside the realization
        #[arg(long)]
        k: Option<usize>,
        /// Seed for the random walks
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Realize a sequence with edge-disjoint perfect matchings.
    Pack(PackArgs),
    /// Gallai–Edmonds decomposition of a graph.
    Ge {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Split an even regular graph into 2-factors.
    Petersen {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Edge exchanges on colorings.
    #[command(subcommand)]
    Exchange(ExchangeCommand),
    /// Exhaustive checks at small n.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Args)]
pub struct Input {
    /// Input file; standard input when absent or '-'.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PackArgs {
    #[command(flatten)]
    pub input: Input,
    /// Number of perfect matchings (size of the k-factor for split)
    #[arg(long)]
    pub k: Option<usize>,
    /// eq1, eq3, mid, split, best, fixed or corollary.
    #[arg(long, default_value = "best")]
    pub method: String,
    /// Matchings inside the k-factor (split) or extra matchings (corollary).
    #[arg(long)]
    pub r: Option<usize>,
    /// Lift for the split method.
    #[arg(long = "k-prime", default_value_t = 0)]
    pub k_prime: usize,
    /// Graph file with the fixed subgraph F (fixed method), or the first
    /// 1-factor (corollary method).
    #[arg(long)]
    pub fixed: Option<PathBuf>,
    /// Seed for the starting realization
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Include the exchange log.
    #[arg(long)]
    pub trace: bool,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Subcommand)]
pub enum ExchangeCommand {
    /// Apply an exchange list to a coloring.
    Apply {
        coloring: PathBuf,
        /// File holding one 'v u x_0 ...' line.
        list: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Shortest exchange starting with v x_0 and ending at u.
    Find {
        coloring: PathBuf,
        /// First endpoint (1-based)
        #[arg(long)]
        v: usize,
        /// Vertex whose edge to v starts the exchange
        #[arg(long)]
        x0: usize,
        /// Second endpoint
        #[arg(long)]
        u: usize,
    },
    /// Shrink an exchange to one with at most one v-edge per class.
    Simplify { coloring: PathBuf, list: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Sweep a theorem over all small instances.
    Verify {
        /// eq1, eq3, mid, split, fixed, li_barrus, berge_tutte, ge_properties, petersen or berge_edge_connectivity
        #[arg(long)]
        theorem: String,
        /// Largest vertex count
        #[arg(long = "n-max")]
        n_max: usize,
        /// Largest k (largest star degree for fixed)
        #[arg(long = "k-max", default_value_t = 0)]
        k_max: usize,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// JSONL records, one per instance.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare graphicality of D_k with exhaustive packing search.
    Conjecture {
        /// Largest vertex count (even counts only)
        #[arg(long = "n-max")]
        n_max: usize,
        /// Largest k
        #[arg(long = "k-max")]
        k_max: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count realizations and the most disjoint 1-factors any of them has.
    Count {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    /// A proven statement failed; the payload is the report.
    #[error("{0}")]
    Defect(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => e.exit_code(),
            CliError::Format(FormatError::Core(Error::InternalDefect(_))) => 3,
            CliError::Defect(_) => 3,
            _ => 2,
        }
    }
}

type Res<T> = Result<T, CliError>;

fn read_text(path: Option<&PathBuf>, stdin: &mut dyn Read) -> Res<String> {
    let mut s = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            s = std::fs::read_to_string(p).map_err(|e| CliError::Io {
                path: p.display().to_string(),
                source: e,
            })?;
        }
        _ => {
            stdin.read_to_string(&mut s).map_err(|e| CliError::Io {
                path: "<stdin>".into(),
                source: e,
            })?;
        }
    }
    Ok(s)
}

fn read_path(p: &PathBuf) -> Res<String> {
    std::fs::read_to_string(p).map_err(|e| CliError::Io {
        path: p.display().to_string(),
        source: e,
    })
}

fn emit(out: &Output, text: &str, stdout: &mut dyn Write) -> Res<()> {
    match &out.out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io {
            path: p.display().to_string(),
            source: e,
        }),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Io {
            path: "<stdout>".into(),
            source: e,
        }),
    }
}

/// Parses `argv` (program name first), runs, and returns the exit status.
pub fn run<I, T>(
    argv: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(text.as_bytes());
            } else {
                let _ = stderr.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match dispatch(cli.command, stdin, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(
    cmd: Command,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Res<()> {
    match cmd {
        Command::Check {
            input,
            k,
            r,
            k_prime,
        } => {
            let (s, order) = formats::parse_sequence(&read_text(input.input.as_ref(), stdin)?)?;
            note_order(&order, stderr);
            let text = check_report(&s, k, r, k_prime);
            stdout.write_all(text.as_bytes()).map_err(io_out)?;
            Ok(())
        }
        Command::Realize {
            input,
            k,
            seed,
            out,
        } => {
            let (s, order) = formats::parse_sequence(&read_text(input.input.as_ref(), stdin)?)?;
            note_order(&order, stderr);
            let text = match k {
                None => {
                    let g = havel_hakimi(&s)?;
                    formats::write_graph(&g.relabel(&order))
                }
                Some(k) => {
                    let cfg = KunduConfig {
                        seed,
                        ..KunduConfig::default()
                    };
                    let r = realize_with_k_factor(&s, k, &cfg).map_err(infeasible_is_condition)?;
                    format!(
                        "# G\n{}# F ({k}-factor)\n{}",
                        formats::write_graph(&r.g.relabel(&order)),
                        formats::write_graph(&r.f.relabel(&order))
                    )
                }
            };
            emit(&out, &text, stdout)
        }
        Command::Pack(args) => {
            let (s, order) =
                formats::parse_sequence(&read_text(args.input.input.as_ref(), stdin)?)?;
            note_order(&order, stderr);
            let text = run_pack(&s, &order, &args)?;
            emit(&args.out, &text, stdout)
        }
        Command::Ge { input, out } => {
            let g = formats::parse_graph(&read_text(input.input.as_ref(), stdin)?)?;
            let m = max_matching(&g);
            let dec = gallai_edmonds_with(&g, &m);
            let mut text = formats::write_decomposition(&dec);
            let _ = writeln!(text, "# def {}", g.n() - 2 * m.size());
            let report = verify_ge_properties(&g, &dec, &m);
            for (p, st) in &report.entries {
                let st = match st {
                    CheckStatus::Pass => "pass".to_string(),
                    CheckStatus::Fail(w) => format!("FAIL {w}"),
                    CheckStatus::Skipped(w) => format!("skipped {w}"),
                };
                let _ = writeln!(text, "# property {p:?}: {st}");
            }
            emit(&out, &text, stdout)?;
            if !report.all_pass() {
                return Err(CliError::Defect("Gallai–Edmonds properties failed".into()));
            }
            Ok(())
        }
        Command::Petersen { input, out } => {
            let g = formats::parse_graph(&read_text(input.input.as_ref(), stdin)?)?;
            let parts = petersen_2factorization(&g)?;
            let mut text = String::new();
            for (i, p) in parts.iter().enumerate() {
                let _ = writeln!(text, "# 2-factor {}", i + 1);
                text.push_str(&formats::write_graph(p));
            }
            emit(&out, &text, stdout)
        }
        Command::Exchange(cmd) => run_exchange(cmd, stdout),
        Command::Oracle(cmd) => run_oracle(cmd, stdin, stdout),
    }
}

fn io_out(e: std::io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source: e,
    }
}

fn note_order(order: &[usize], stderr: &mut dyn Write) {
    if order.iter().enumerate().any(|(i, &o)| i != o) {
        let _ = writeln!(
            stderr,
            "note: sequence sorted into non-increasing order; output keeps the input vertex order"
        );
    }
}

fn infeasible_is_condition(e: Error) -> Error {
    match e {
        Error::Infeasible(m) => Error::ConditionNotMet(m),
        e => e,
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn check_report(s: &DegreeSequence, k: usize, r: Option<usize>, k_prime: usize) -> String {
    let mut t = String::new();
    let n = s.len();
    let _ = writeln!(t, "sequence {}", formats::write_sequence(s));
    let _ = writeln!(t, "n {n} k {k}");
    let _ = writeln!(t, "graphic {}", yes(s.is_graphic()));
    match s.reduce_by_k(k) {
        Ok(d) => {
            let _ = writeln!(
                t,
                "D_k {} graphic {}",
                formats::write_sequence(&d),
                yes(d.is_graphic())
            );
        }
        Err(e) => {
            let _ = writeln!(t, "D_k undefined: {e}");
        }
    }
    let bound = split_bound(k, k_prime);
    let r = r.unwrap_or(bound.min(k));
    for rep in [
        check_eq1(s, k),
        check_conjecture6(s, k),
        check_eq3(s, k),
        check_mid(s, k),
        check_largek(s, k, r),
        check_main_fixed(s, r),
    ] {
        let _ = writeln!(t, "{rep}");
    }
    let _ = writeln!(
        t,
        "split: r <= {bound} (k' = {k_prime}), r = {r} {}",
        if r <= bound.min(k) {
            "within"
        } else {
            "outside"
        }
    );
    if !s.is_empty() {
        let (m, mc) = li_barrus_sum(s);
        let _ = writeln!(
            t,
            "durfee m {m} complement {mc} sum {} expected {}",
            m + mc,
            li_barrus_expected(s)
        );
        match hartke_seacrest_f(s.min_degree(), n) {
            Some(f) => {
                let _ = writeln!(t, "hartke_seacrest f {f}");
            }
            None => {
                let _ = writeln!(t, "hartke_seacrest n/a (needs d_n >= n/2 + 2)");
            }
        }
        let _ = writeln!(t, "target 2*floor(k/3) = {}", 2 * (k / 3));
    }
    t
}

fn need_k(args: &PackArgs) -> Res<usize> {
    args.k
        .ok_or_else(|| CliError::Usage(format!("--k is required for method {}", args.method)))
}

fn run_pack(s: &DegreeSequence, order: &[usize], args: &PackArgs) -> Res<String> {
    let opts = PackOptions {
        seed: args.seed,
        ..PackOptions::default()
    };
    let (pack, method, notes) = match args.method.as_str() {
        "eq1" => (
            pack_one_factors(s, need_k(args)?, &opts)?,
            "eq1".to_string(),
            vec![],
        ),
        "eq3" => (
            pack_via_complement(s, need_k(args)?, &opts)?,
            "eq3".into(),
            vec![],
        ),
        "mid" => (
            merge_cycles_pack(s, need_k(args)?, &opts)?,
            "mid".into(),
            vec![],
        ),
        "split" => {
            let k = need_k(args)?;
            let r = args.r.unwrap_or_else(|| {
                let b = split_bound(k, args.k_prime).min(k);
                if args.k_prime == 0 {
                    b
                } else {
                    (0..=b).rev().find(|r| (k - r) % 2 == 0).unwrap_or(0)
                }
            });
            let p = if args.k_prime == 0 {
                pack_kfactor_with_r(s, k, r, &opts)?
            } else {
                pack_with_petersen_boost(s, k, args.k_prime, r, &opts)?
            };
            (
                p,
                "split".into(),
                vec![format!("r {r} leftover {}-regular", k - r)],
            )
        }
        "best" => {
            let k = need_k(args)?;
            if !s.is_graphic() {
                return Err(Error::NotGraphic(formats::write_sequence(s)).into());
            }
            if s.len() % 2 == 1 {
                return Err(Error::ConditionNotMet(format!("n = {} is odd", s.len())).into());
            }
            match s.reduce_by_k(k) {
                Ok(d) if d.is_graphic() => {}
                Ok(d) => {
                    return Err(Error::ConditionNotMet(format!(
                        "D_{k} = {} is not graphic",
                        formats::write_sequence(&d)
                    ))
                    .into())
                }
                Err(e) => return Err(Error::ConditionNotMet(e.to_string()).into()),
            }
            let b = pack_best(s, k, &opts)?;
            let mut notes = vec![format!("count {} target {}", b.count, b.target)];
            notes.extend(b.notes);
            let tag = b.method.map_or("none".to_string(), |m| m.to_string());
            (b.pack, tag, notes)
        }
        "fixed" => {
            let path = args
                .fixed
                .as_ref()
                .ok_or_else(|| CliError::Usage("--fixed is required for method fixed".into()))?;
            let f = formats::parse_graph(&read_path(path)?)?;
            let f = to_sorted_labels(&f, order)?;
            let fp = pack_avoiding_fixed(s, &f, &opts)?;
            let mut one_factors = Vec::new();
            let mut leftover = None;
            if fp.matching.is_perfect() {
                one_factors.push(fp.matching.clone());
            } else {
                leftover = Some(fp.matching.to_graph());
            }
            let notes = vec![format!(
                "fixed subgraph kept, matching of G-E(F) misses {} vertices",
                s.len() - 2 * fp.matching.size()
            )];
            let coloring = fp.trace.replay()?;
            let pack = FactorPack {
                g: fp.g,
                one_factors,
                leftover,
                trace: fp.trace,
                coloring,
                stats: fp.stats,
            };
            (pack, "fixed".into(), notes)
        }
        "corollary" => {
            let r = args
                .r
                .ok_or_else(|| CliError::Usage("--r is required for method corollary".into()))?;
            let first = match &args.fixed {
                Some(p) => {
                    let g = to_sorted_labels(&formats::parse_graph(&read_path(p)?)?, order)?;
                    Some(Matching::from_edges(g.n(), g.edges())?)
                }
                None => None,
            };
            let p = iterate_fixed_corollary(s, r, first.as_ref(), &opts)?;
            (p, "corollary".into(), vec![])
        }
        m => return Err(CliError::Usage(format!("unknown method '{m}'"))),
    };
    let mut notes = notes;
    let st = pack.stats;
    notes.push(format!(
        "exchanges {} guided {} fallback {} deep {} lookahead {}",
        st.exchanges, st.guided, st.fallback, st.deep, st.lookahead
    ));
    let pack = relabel_pack(pack, order);
    Ok(formats::write_pack(
        &pack,
        Some(&method),
        &notes,
        args.trace,
    ))
}

/// Moves a graph given in input labels to sorted labels.
fn to_sorted_labels(g: &SimpleGraph, order: &[usize]) -> Res<SimpleGraph> {
    if g.n() != order.len() {
        return Err(CliError::Core(Error::VertexCountMismatch));
    }
    let mut inv = vec![0; order.len()];
    for (i, &o) in order.iter().enumerate() {
        inv[o] = i;
    }
    Ok(g.relabel(&inv))
}

/// Sorted labels back to input labels.
pub fn relabel_pack(mut p: FactorPack, order: &[usize]) -> FactorPack {
    if order.iter().enumerate().all(|(i, &o)| i == o) {
        return p;
    }
    let n = order.len();
    let map = |m: &Matching| {
        Matching::from_edges(n, m.edges().map(|(u, v)| (order[u], order[v])))
            .expect("relabeled matching")
    };
    p.g = p.g.relabel(order);
    p.one_factors = p.one_factors.iter().map(map).collect();
    p.leftover = p.leftover.map(|l| l.relabel(order));
    let steps = p
        .trace
        .steps
        .iter()
        .map(|s| match s {
            TraceStep::Exchange(l) => TraceStep::Exchange(ExchangeList::new(
                order[l.v],
                order[l.u],
                l.xs.iter().map(|&x| order[x]).collect(),
            )),
            TraceStep::Refine { from, edges } => TraceStep::Refine {
                from: *from,
                edges: edges.iter().map(|&(u, v)| (order[u], order[v])).collect(),
            },
        })
        .collect();
    let mut initial = kfactor_core::EdgeColoring::uniform(n, p.trace.initial.t());
    for u in 0..n {
        for v in u + 1..n {
            initial.set_color(order[u], order[v], p.trace.initial.color(u, v));
        }
    }
    p.trace = PackTrace { initial, steps };
    p
}

fn run_exchange(cmd: ExchangeCommand, stdout: &mut dyn Write) -> Res<()> {
    match cmd {
        ExchangeCommand::Apply {
            coloring,
            list,
            out,
        } => {
            let c = formats::parse_coloring(&read_path(&coloring)?)?;
            let l = formats::parse_exchange(&read_path(&list)?, c.n())?;
            let next = apply(&c, &l)?;
            emit(&out, &formats::write_coloring(&next), stdout)
        }
        ExchangeCommand::Find { coloring, v, x0, u } => {
            let c = formats::parse_coloring(&read_path(&coloring)?)?;
            let n = c.n();
            for x in [v, x0, u] {
                if x == 0 || x > n {
                    return Err(Error::VertexOutOfRange { vertex: x, n }.into());
                }
            }
            let mut k = ExchangeConstraints::standard(c.t());
            k.start_class = c.color(v - 1, x0 - 1);
            k.partner_class = if k.start_class == 1 { 0 } else { 1 };
            k.regular_classes.clear();
            match find_exchange(&c, v - 1, x0 - 1, u - 1, &k)? {
                Some(l) => {
                    writeln!(stdout, "{l}").map_err(io_out)?;
                    Ok(())
                }
                None => Err(Error::Infeasible("no exchange exists for this triple".into()).into()),
            }
        }
        ExchangeCommand::Simplify { coloring, list } => {
            let c = formats::parse_coloring(&read_path(&coloring)?)?;
            let l = formats::parse_exchange(&read_path(&list)?, c.n())?;
            let s = simplify(&c, &l)?;
            debug_assert!(is_simplified(&c, &s));
            writeln!(stdout, "{s}").map_err(io_out)?;
            Ok(())
        }
    }
}

fn write_records(path: &Option<PathBuf>, records: &[oracle::Record]) -> Res<()> {
    if let Some(p) = path {
        let io = |e| CliError::Io {
            path: p.display().to_string(),
            source: e,
        };
        let file = std::fs::File::create(p).map_err(io)?;
        let mut w = std::io::BufWriter::new(file);
        sweep::write_jsonl(&mut w, records).map_err(io)?;
        w.flush().map_err(io)?;
    }
    Ok(())
}

fn run_oracle(cmd: OracleCommand, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Res<()> {
    match cmd {
        OracleCommand::Verify {
            theorem,
            n_max,
            k_max,
            jobs,
            out,
        } => {
            let id = TheoremId::parse(&theorem)?;
            let (report, records) = sweep::sweep_theorem(id, n_max, k_max, jobs)?;
            write_records(&out, &records)?;
            let mut t = format!(
                "theorem {} checked {} hypothesis-true {} violations {}\n",
                report.theorem,
                report.checked,
                report.hypothesis_true,
                report.violations.len()
            );
            if let Some(r) = report.minimal_counterexample() {
                let _ = writeln!(
                    t,
                    "minimal counterexample: sequence {} k {:?} witness {}",
                    formats::write_sequence(&r.sequence),
                    r.k,
                    r.witness
                );
                stdout.write_all(t.as_bytes()).map_err(io_out)?;
                return Err(CliError::Defect(format!(
                    "{} violated a proven statement",
                    report.theorem
                )));
            }
            stdout.write_all(t.as_bytes()).map_err(io_out)?;
            Ok(())
        }
        OracleCommand::Conjecture {
            n_max,
            k_max,
            jobs,
            out,
        } => {
            let s = sweep::sweep_conjecture(n_max, k_max, jobs)?;
            write_records(&out, &s.records)?;
            let mut t = format!(
                "conjecture checked {} counterexamples {} truncated {}\n",
                s.records.len(),
                s.counterexamples.len(),
                s.truncated
            );
            if let Some(r) = s.minimal_counterexample() {
                let _ = writeln!(
                    t,
                    "minimal counterexample: sequence {} k {:?} D_k graphic {} packing {:?} witness {}",
                    formats::write_sequence(&r.sequence),
                    r.k,
                    r.hypothesis_holds,
                    r.conclusion_holds,
                    r.witness
                );
                stdout.write_all(t.as_bytes()).map_err(io_out)?;
                return Err(CliError::Defect("conjecture sweep disagrees".into()));
            }
            stdout.write_all(t.as_bytes()).map_err(io_out)?;
            Ok(())
        }
        OracleCommand::Count { input } => {
            let (s, _) = formats::parse_sequence(&read_text(input.input.as_ref(), stdin)?)?;
            if !s.is_graphic() {
                return Err(Error::NotGraphic(formats::write_sequence(&s)).into());
            }
            let all = oracle::enumerate_realizations(&s, usize::MAX)?;
            let best = all
                .graphs
                .iter()
                .map(oracle::max_disjoint_one_factors)
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .max()
                .unwrap_or(0);
            writeln!(
                stdout,
                "realizations {} max-disjoint-1-factors {best}",
                all.graphs.len()
            )
            .map_err(io_out)?;
            Ok(())
        }
    }
}
