//! Command-line front end.
//!
//! Every command renders into an [`Outcome`] so the binary only has to
//! print and exit. Exit codes: 0 success, 1 verification mismatch, 2
//! input or usage error.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::atoms::{atom_dfa, atomaton, complexities_of, AtomReport};
use crate::automata::{check_minimal, determinize, reverse, Dfa};
use crate::bounds::{atom_bound, atom_bound_closed, max_bound, with_separators, BigCount, BoundTable};
use crate::error::{Error, Result};
use crate::io;
use crate::oracle::{cross_check, random_minimal_dfas, seed_from_env, Check};
use crate::stateset::StateSet;
use crate::witness::{witness, witness_atomaton_direct, MAX_DIRECT_N};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "atomkit",
    version,
    about = "Atoms of regular languages and their quotient complexity"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the witness DFA D_n.
    Witness {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Enumerate atoms and their quotient complexities.
    Atoms {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        json: bool,
        /// Worker threads; defaults to available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Evaluate the complexity bound f(n, r).
    Bounds {
        #[arg(long)]
        n: u32,
        #[arg(long, conflicts_with = "all")]
        r: Option<u32>,
        /// Print every r together with the maximum.
        #[arg(long)]
        all: bool,
        /// Also evaluate the closed form where one exists (r = 1, 2, 3).
        #[arg(long)]
        closed: bool,
    },
    /// Print the table of bounds with maximum and growth-ratio rows.
    Table {
        #[arg(long, default_value_t = 10)]
        max_n: u32,
        /// Last r row; defaults to max_n / 2.
        #[arg(long)]
        max_r: Option<u32>,
        #[arg(long)]
        csv: bool,
    },
    /// Check that every atom of D_n meets its bound and that the oracles agree.
    Verify {
        #[arg(long)]
        n: usize,
        /// Allow n = 8 and run the tuple-product oracle (n <= 6).
        #[arg(long)]
        deep: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        jobs: Option<usize>,
        /// Also cross-check this many seeded random minimal DFAs (seed from ATOMKIT_SEED).
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
    /// Export an automaton derived from the input.
    Export {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Stage::Dfa)]
        what: Stage,
        /// Atom label for `--what atom`, e.g. `012`, `0,2` or `{}`.
        #[arg(long)]
        label: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct Source {
    /// Automaton file in JSON format.
    #[arg(long, conflicts_with = "n")]
    pub input: Option<PathBuf>,
    /// Use the witness DFA D_n.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Stage {
    Dfa,
    Reverse,
    DeterminizedReverse,
    Atomaton,
    AtomatonDirect,
    Atom,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            ..Default::default()
        }
    }
}

fn in_range(name: &str, value: usize, lo: usize, hi: usize) -> Result<()> {
    if value < lo || value > hi {
        return Err(Error::InvalidArgument(format!(
            "--{name} must be in {lo}..={hi}, got {value}"
        )));
    }
    Ok(())
}

fn load(source: &Source) -> Result<Dfa> {
    match (&source.input, source.n) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
            io::parse_dfa(&text)
        }
        (None, Some(n)) => {
            in_range("n", n, 2, 64)?;
            witness(n)
        }
        _ => Err(Error::InvalidArgument("give exactly one of --input or --n".into())),
    }
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Error::InvalidArgument("--jobs must be positive".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Error::InvalidArgument(e.to_string())),
    }
}

/// Parses `012`, `0,1,2` or `{}` into a label over `n` quotients.
pub fn parse_label(text: &str, n: usize) -> Result<StateSet> {
    let text = text.trim();
    if text == "{}" || text.is_empty() {
        return Ok(StateSet::empty(n));
    }
    let parts: Vec<&str> = if text.contains(',') {
        text.split(',').map(str::trim).collect()
    } else {
        text.split("").filter(|s| !s.is_empty()).collect()
    };
    let mut set = StateSet::empty(n);
    for p in parts {
        let i: usize = p
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad label element {p:?}")))?;
        if i >= n {
            return Err(Error::StateOutOfRange { state: i, n });
        }
        set.insert(i);
    }
    Ok(set)
}

fn render_reports(reports: &[AtomReport]) -> String {
    let rows: Vec<[String; 5]> = reports
        .iter()
        .map(|r| {
            [
                r.label.subscript(),
                r.r.to_string(),
                r.complexity.to_string(),
                r.bound.to_string(),
                if r.tight { "yes" } else { "no" }.to_string(),
            ]
        })
        .collect();
    let header = ["P", "r", "complexity", "bound", "tight"].map(String::from);
    let widths: Vec<usize> = (0..5)
        .map(|c| {
            rows.iter()
                .chain([&header])
                .map(|r| r[c].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in std::iter::once(&header).chain(&rows) {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    let tight = reports.iter().filter(|r| r.tight).count();
    let _ = writeln!(out, "{} atoms, {} tight", reports.len(), tight);
    out
}

pub fn cmd_witness(n: usize, format: Format) -> Result<Outcome> {
    in_range("n", n, 2, 64)?;
    let d = witness(n)?;
    Ok(Outcome::ok(match format {
        Format::Json => io::dfa_to_json(&d) + "\n",
        Format::Dot => io::dfa_to_dot(&d),
    }))
}

pub fn cmd_atoms(source: &Source, json: bool, jobs: Option<usize>) -> Result<Outcome> {
    let d = load(source)?;
    if d.n() > 64 {
        return Err(Error::TooManyStates(d.n()));
    }
    check_minimal(&d)?;
    let atomaton = atomaton(&d)?;
    let reports = with_jobs(jobs, || complexities_of(&atomaton))??;
    Ok(Outcome::ok(if json {
        serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n"
    } else {
        render_reports(&reports)
    }))
}

pub fn cmd_bounds(n: u32, r: Option<u32>, all: bool, closed: bool) -> Result<Outcome> {
    if n == 0 {
        return Err(Error::InvalidArgument("--n must be at least 1".into()));
    }
    if let Some(r) = r {
        if r > n {
            return Err(Error::InvalidArgument(format!("--r must be in 0..={n}, got {r}")));
        }
    }
    let closed_value = |r: u32| -> Option<BigCount> {
        if closed && (1..=3).contains(&r) && n >= 2 && r < n {
            atom_bound_closed(n, r).ok()
        } else {
            None
        }
    };
    let mut out = String::new();
    match (r, all) {
        (Some(r), _) => {
            let _ = writeln!(out, "{}", atom_bound(n, r)?);
            if let Some(c) = closed_value(r) {
                let _ = writeln!(out, "closed form: {c}");
            }
        }
        (None, true) => {
            for r in 0..=n {
                let _ = write!(out, "r={r} {}", atom_bound(n, r)?);
                if let Some(c) = closed_value(r) {
                    let _ = write!(out, " (closed form {c})");
                }
                out.push('\n');
            }
            let (r, v) = max_bound(n)?;
            let _ = writeln!(out, "max r={r} {v}");
        }
        (None, false) => {
            let (r, v) = max_bound(n)?;
            let _ = writeln!(out, "{v} (r={r})");
        }
    }
    Ok(Outcome::ok(out))
}

pub fn cmd_table(max_n: u32, max_r: Option<u32>, csv: bool) -> Result<Outcome> {
    if !(1..=200).contains(&max_n) {
        return Err(Error::InvalidArgument(format!(
            "--max-n must be in 1..=200, got {max_n}"
        )));
    }
    let table = BoundTable::new(max_n, max_r.unwrap_or(max_n / 2))?;
    Ok(Outcome::ok(if csv { table.to_csv() } else { table.to_text() }))
}

#[derive(Debug, Serialize)]
pub struct Verdict {
    pub n: usize,
    pub tier: &'static str,
    pub seed: Option<u64>,
    pub ok: bool,
    pub max_complexity: usize,
    pub checks: Vec<Check>,
    pub atoms: Vec<AtomReport>,
}

/// Runs the witness verification suite for `D_n`.
pub fn verify_witness(n: usize, deep: bool, random: usize) -> Result<Verdict> {
    in_range("n", n, 2, if deep { 8 } else { 7 })?;
    let d = witness(n)?;
    let atomaton = atomaton(&d)?;
    let reports = complexities_of(&atomaton)?;
    let mut checks = Vec::new();

    checks.push(Check::new(
        "atom-count",
        atomaton.len() == 1 << n,
        format!("{} atoms, expected {}", atomaton.len(), 1usize << n),
    ));
    let loose: Vec<String> = reports
        .iter()
        .filter(|r| !r.tight)
        .map(|r| format!("{}: {} < {}", r.label.subscript(), r.complexity, r.bound))
        .collect();
    checks.push(Check::new(
        "tightness",
        loose.is_empty(),
        if loose.is_empty() {
            format!("all {} atoms meet their bound", reports.len())
        } else {
            loose.join("; ")
        },
    ));
    let max_complexity = reports.iter().map(|r| r.complexity).max().unwrap_or(0);
    let (_, expected_max) = max_bound(n as u32)?;
    checks.push(Check::new(
        "max-complexity",
        BigCount::from(max_complexity) == expected_max,
        format!("{max_complexity}, bound {expected_max}"),
    ));
    checks.extend(cross_check(&d, &atomaton, &reports, deep)?);
    if n <= MAX_DIRECT_N {
        let direct = witness_atomaton_direct(n)?;
        checks.push(Check::new(
            "direct-atomaton",
            direct.same_by_labels(&atomaton),
            "rule-based construction against reverse-determinize-reverse",
        ));
    }

    let seed = (random > 0).then(seed_from_env);
    if let Some(seed) = seed {
        let mut failures = Vec::new();
        for (i, r) in random_minimal_dfas(seed, random, 5).iter().enumerate() {
            let a = crate::atoms::atomaton(r)?;
            let rep = complexities_of(&a)?;
            for c in cross_check(r, &a, &rep, true)? {
                if !c.passed {
                    failures.push(format!("dfa #{i} {}: {}", c.name, c.detail));
                }
            }
        }
        checks.push(Check::new(
            "random-suite",
            failures.is_empty(),
            if failures.is_empty() {
                format!("{random} random minimal DFAs agree (seed {seed})")
            } else {
                failures.join("; ")
            },
        ));
    }

    Ok(Verdict {
        n,
        tier: if deep { "deep" } else { "default" },
        seed,
        ok: checks.iter().all(|c| c.passed),
        max_complexity,
        checks,
        atoms: reports,
    })
}

pub fn cmd_verify(n: usize, deep: bool, json: bool, jobs: Option<usize>, random: usize) -> Result<Outcome> {
    in_range("n", n, 2, if deep { 8 } else { 7 })?;
    let verdict = with_jobs(jobs, || verify_witness(n, deep, random))??;
    let code = if verdict.ok { EXIT_OK } else { EXIT_MISMATCH };
    let stdout = if json {
        serde_json::to_string_pretty(&verdict).expect("verdict serializes") + "\n"
    } else {
        let mut out = String::new();
        for c in &verdict.checks {
            let _ = writeln!(
                out,
                "{} {}: {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        let _ = writeln!(
            out,
            "n={} tier={} atoms={} max complexity {}",
            verdict.n,
            verdict.tier,
            verdict.atoms.len(),
            with_separators(&BigCount::from(verdict.max_complexity))
        );
        out
    };
    let stderr = if verdict.ok {
        String::new()
    } else {
        let failed: Vec<&Check> = verdict.checks.iter().filter(|c| !c.passed).collect();
        serde_json::to_string_pretty(&failed).expect("checks serialize") + "\n"
    };
    Ok(Outcome { stdout, stderr, code })
}

pub fn cmd_export(source: &Source, what: Stage, label: Option<&str>, format: Format) -> Result<Outcome> {
    let d = load(source)?;
    let dot = format == Format::Dot;
    let text = match what {
        Stage::Dfa => {
            if dot {
                io::dfa_to_dot(&d)
            } else {
                io::dfa_to_json(&d)
            }
        }
        Stage::Reverse => {
            let r = reverse(&d);
            if dot {
                io::nfa_to_dot(&r)
            } else {
                io::nfa_to_json(&r)
            }
        }
        Stage::DeterminizedReverse => {
            let det = determinize(&reverse(&d))?.dfa;
            if dot {
                io::dfa_to_dot(&det)
            } else {
                io::dfa_to_json(&det)
            }
        }
        Stage::Atomaton | Stage::AtomatonDirect => {
            let a = if what == Stage::Atomaton {
                atomaton(&d)?
            } else {
                let n = source
                    .n
                    .ok_or_else(|| Error::InvalidArgument("atomaton-direct needs --n".into()))?;
                witness_atomaton_direct(n)?
            };
            if dot {
                io::atomaton_to_dot(&a)
            } else {
                io::atomaton_to_json(&a)
            }
        }
        Stage::Atom => {
            let label = label.ok_or_else(|| Error::InvalidArgument("--what atom needs --label".into()))?;
            let label = parse_label(label, d.n())?;
            let a = atomaton(&d)?;
            let m = atom_dfa(&a, &label)?;
            if dot {
                io::dfa_to_dot(&m)
            } else {
                io::dfa_to_json(&m)
            }
        }
    };
    Ok(Outcome::ok(if text.ends_with('\n') { text } else { text + "\n" }))
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Witness { n, format } => cmd_witness(n, format),
        Command::Atoms { source, json, jobs } => cmd_atoms(&source, json, jobs),
        Command::Bounds { n, r, all, closed } => cmd_bounds(n, r, all, closed),
        Command::Table { max_n, max_r, csv } => cmd_table(max_n, max_r, csv),
        Command::Verify {
            n,
            deep,
            json,
            jobs,
            random,
        } => cmd_verify(n, deep, json, jobs, random),
        Command::Export {
            source,
            what,
            label,
            format,
        } => cmd_export(&source, what, label.as_deref(), format),
    }
}
