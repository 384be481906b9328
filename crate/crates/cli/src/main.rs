use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use greenmat::chirotope::{subsets, verify_axioms};
use greenmat::green::{classes_of, enumerate_mgs, verify_bijection};
use greenmat::mtri::{
    enumerate_matroid_triangulations, is_stackable, MtriRecord, SearchLimits, SearchStatus,
};
use greenmat::polygon::enumerate_triangulations;
use greenmat::realize::{realize_search, verify_table1, RealizeParams};
use greenmat::{Chirotope, OrientedMatroid, Sign, Triangulation};

#[derive(Parser)]
#[command(
    name = "greenmat",
    version,
    about = "Oriented matroids of polygon triangulations and maximal green sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone)]
struct Input {
    /// Number of polygon vertices.
    #[arg(long)]
    m: Option<usize>,

    /// Arcs of the triangulation T, e.g. `2-6,3-6,4-6`.
    #[arg(long, conflicts_with = "ct")]
    arcs: Option<String>,

    /// Arcs of the cluster-tilting triangulation; T is this rotated by -1.
    #[arg(long)]
    ct: Option<String>,
}

impl Input {
    fn m(&self) -> Result<usize> {
        self.m.context("--m is required")
    }

    fn triangulation(&self) -> Result<Triangulation> {
        let m = self.m()?;
        match (&self.arcs, &self.ct) {
            (Some(a), None) => Ok(Triangulation::parse(m, a)?),
            (None, Some(c)) => Ok(Triangulation::parse(m, c)?.rotate(-1)),
            _ => bail!("exactly one of --arcs or --ct is required"),
        }
    }

    fn matroid(&self) -> Result<OrientedMatroid> {
        Ok(OrientedMatroid::new(&self.triangulation()?))
    }

    /// The single triangulation given, or every triangulation of the m-gon.
    fn triangulations(&self, all: bool) -> Result<Vec<Triangulation>> {
        if all {
            if self.arcs.is_some() || self.ct.is_some() {
                bail!("--all cannot be combined with --arcs or --ct");
            }
            Ok(enumerate_triangulations(self.m()?)?)
        } else {
            Ok(vec![self.triangulation()?])
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the chirotope on every ascending 4-subset.
    Chirotope(Input),
    /// Check the chirotope axioms by brute force.
    Axioms(Input),
    /// Print the signed circuit on every 5-subset.
    Circuits(Input),
    /// Print the signed cocircuit of every 3-subset.
    Cocircuits(Input),
    /// Print the upper and lower facets.
    Facets(Input),
    /// Enumerate triangulations of the oriented matroid.
    Triangulations {
        #[command(flatten)]
        input: Input,
        /// Search node budget.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Enumerate maximal green sequences.
    Mgs {
        #[command(flatten)]
        input: Input,
        /// Print one record per equivalence class instead of per sequence.
        #[arg(long)]
        classes: bool,
    },
    /// Check the bijection between sequence classes and stackable triangulations.
    Bijection {
        #[command(flatten)]
        input: Input,
        /// Check every triangulation of the m-gon.
        #[arg(long)]
        all: bool,
    },
    /// Recompute the minors of the three hexagon matrices.
    Table1,
    /// Search for a point configuration realising the chirotope.
    Realize {
        #[command(flatten)]
        input: Input,
        /// Total number of search moves.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Sweep all triangulations up to a polygon size for non-stackable
    /// triangulations and failed realisation searches.
    Conjectures {
        /// Largest polygon size.
        #[arg(long, default_value_t = 7)]
        limit: usize,
        /// Node budget per enumeration.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok = 0,
    Mismatch = 1,
    Budget = 3,
}

impl Status {
    /// The more serious of two outcomes; a mismatch outranks an exhausted budget.
    fn max(self, other: Status) -> Status {
        let rank = |s: Status| match s {
            Status::Ok => 0,
            Status::Budget => 1,
            Status::Mismatch => 2,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

struct Out {
    format: Format,
    w: BufWriter<io::Stdout>,
}

impl Out {
    fn emit<T: Serialize>(&mut self, value: &T, text: impl FnOnce() -> String) -> Result<()> {
        match self.format {
            Format::Json => serde_json::to_writer(&mut self.w, value)?,
            Format::Text => write!(self.w, "{}", text())?,
        }
        writeln!(self.w)?;
        Ok(())
    }
}

fn sign_char(s: Sign) -> char {
    match s {
        Sign::Pos => '+',
        Sign::Neg => '-',
        Sign::Zero => '0',
    }
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Serialize)]
struct CircuitRecord {
    support: Vec<u8>,
    positive: Vec<u8>,
    negative: Vec<u8>,
}

#[derive(Serialize)]
struct CocircuitRecord {
    hyperplane: Vec<u8>,
    positive: Vec<u8>,
    negative: Vec<u8>,
}

#[derive(Serialize)]
struct ConjectureRecord {
    m: usize,
    #[serde(rename = "T")]
    t: Vec<greenmat::Arc>,
    triangulations: usize,
    non_stackable: Vec<Vec<greenmat::Simplex>>,
    search: SearchStatus,
    realised: bool,
}

fn run(cli: Cli) -> Result<Status> {
    let mut out = Out {
        format: cli.format,
        w: BufWriter::new(io::stdout()),
    };
    let status = match cli.command {
        Command::Chirotope(input) => {
            let om = input.matroid()?;
            let chi = om.chirotope();
            out.emit(chi, || {
                chi.entries()
                    .iter()
                    .map(|(q, s)| format!("{} {}", join(q), sign_char(*s)))
                    .collect::<Vec<_>>()
                    .join("\n")
            })?;
            Status::Ok
        }
        Command::Axioms(input) => {
            let om = input.matroid()?;
            let report = verify_axioms(om.chirotope())?;
            out.emit(&report, || {
                format!(
                    "axiom1 {} axiom2 {} axiom3 {}",
                    report.axiom1, report.axiom2, report.axiom3
                )
            })?;
            if report.passed() {
                Status::Ok
            } else {
                Status::Mismatch
            }
        }
        Command::Circuits(input) => {
            let om = input.matroid()?;
            for s in subsets(om.m(), 5) {
                let c = om.circuit(&s)?;
                let rec = CircuitRecord {
                    support: s,
                    positive: c.positive.clone(),
                    negative: c.negative.clone(),
                };
                out.emit(&rec, || {
                    format!("+{{{}}} -{{{}}}", join(&c.positive), join(&c.negative))
                })?;
            }
            Status::Ok
        }
        Command::Cocircuits(input) => {
            let om = input.matroid()?;
            for h in subsets(om.m(), 3) {
                let c = om.cocircuit(&h)?;
                let rec = CocircuitRecord {
                    hyperplane: h.clone(),
                    positive: c.positive.clone(),
                    negative: c.negative.clone(),
                };
                out.emit(&rec, || {
                    format!(
                        "{} +{{{}}} -{{{}}}",
                        join(&h),
                        join(&c.positive),
                        join(&c.negative)
                    )
                })?;
            }
            Status::Ok
        }
        Command::Facets(input) => {
            let om = input.matroid()?;
            let f = om.facets();
            out.emit(&f, || {
                format!("upper {}\nlower {}", join(&f.upper), join(&f.lower))
            })?;
            Status::Ok
        }
        Command::Triangulations { input, budget } => {
            let om = input.matroid()?;
            let found = enumerate_matroid_triangulations(&om, SearchLimits { max_nodes: budget })?;
            for d in &found.triangulations {
                let rec = MtriRecord::new(&om, d);
                out.emit(&rec, || {
                    format!(
                        "{}{}",
                        join(rec.simplices.iter()),
                        if rec.stackable { "" } else { " non-stackable" }
                    )
                })?;
            }
            eprintln!(
                "{} triangulations, {} search nodes, {}",
                found.triangulations.len(),
                found.nodes,
                match found.status {
                    SearchStatus::Complete => "complete",
                    SearchStatus::BudgetExhausted => "budget exhausted",
                }
            );
            match found.status {
                SearchStatus::Complete => Status::Ok,
                SearchStatus::BudgetExhausted => Status::Budget,
            }
        }
        Command::Mgs { input, classes } => {
            let om = input.matroid()?;
            let e = enumerate_mgs(&om)?;
            if classes {
                for c in classes_of(&e.sequences) {
                    out.emit(&c, || format!("{} ({})", join(&c.exch), c.len()))?;
                }
            } else {
                for g in &e.sequences {
                    out.emit(g, || join(&g.pairs))?;
                }
            }
            if e.dead_ends.is_empty() {
                Status::Ok
            } else {
                eprintln!("dead ends: {}", join(&e.dead_ends));
                Status::Mismatch
            }
        }
        Command::Bijection { input, all } => {
            let mut status = Status::Ok;
            for t in input.triangulations(all)? {
                let r = verify_bijection(&t)?;
                out.emit(&r, || {
                    format!(
                        "{t}: {} classes, {} stackable of {}, {}",
                        r.classes,
                        r.stackable,
                        r.triangulations,
                        if r.matched { "matched" } else { "MISMATCH" }
                    )
                })?;
                if !r.matched {
                    status = Status::Mismatch;
                }
            }
            status
        }
        Command::Table1 => {
            let r = verify_table1();
            out.emit(&r, || {
                let mut lines: Vec<String> = r
                    .rows
                    .iter()
                    .map(|row| format!("{} {}", join(row.subset), join(row.computed)))
                    .collect();
                lines.push(format!(
                    "{}/45 minors matched, {}/45 signs agree",
                    r.values_matched, r.signs_matched
                ));
                lines.join("\n")
            })?;
            if r.passed() {
                Status::Ok
            } else {
                Status::Mismatch
            }
        }
        Command::Realize {
            input,
            budget,
            seed,
        } => {
            let om = input.matroid()?;
            let params = match budget {
                Some(b) => RealizeParams::with_budget(b, seed),
                None => RealizeParams {
                    seed,
                    ..RealizeParams::default()
                },
            };
            let outcome = realize_search(om.chirotope(), params)?;
            out.emit(&outcome, || {
                let pts: Vec<String> = outcome.certificate.config.points.iter().map(join).collect();
                format!(
                    "{} ({} mismatches)\n{}",
                    if outcome.found() {
                        "realised"
                    } else {
                        "not realised"
                    },
                    outcome.certificate.mismatches.len(),
                    pts.join("\n")
                )
            })?;
            if outcome.found() {
                Status::Ok
            } else {
                Status::Budget
            }
        }
        Command::Conjectures {
            limit,
            budget,
            seed,
        } => {
            let mut status = Status::Ok;
            for m in 4..=limit {
                for t in enumerate_triangulations(m)? {
                    let om = OrientedMatroid::new(&t);
                    let found =
                        enumerate_matroid_triangulations(&om, SearchLimits { max_nodes: budget })?;
                    let non_stackable: Vec<_> = found
                        .triangulations
                        .iter()
                        .filter(|d| !is_stackable(&om, d.simplices()))
                        .map(|d| d.simplices().to_vec())
                        .collect();
                    let realised = realize_search(
                        &Chirotope::from_triangulation(&t),
                        RealizeParams {
                            seed,
                            ..RealizeParams::default()
                        },
                    )?
                    .found();
                    let rec = ConjectureRecord {
                        m,
                        t: t.arcs().to_vec(),
                        triangulations: found.triangulations.len(),
                        non_stackable,
                        search: found.status,
                        realised,
                    };
                    out.emit(&rec, || {
                        format!(
                            "m={m} {t}: {} triangulations, {} non-stackable, realised {}",
                            rec.triangulations,
                            rec.non_stackable.len(),
                            rec.realised
                        )
                    })?;
                    if !rec.non_stackable.is_empty() {
                        status = status.max(Status::Mismatch);
                    }
                    if found.status == SearchStatus::BudgetExhausted || !realised {
                        status = status.max(Status::Budget);
                    }
                }
            }
            status
        }
    };
    out.w.flush()?;
    Ok(status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
