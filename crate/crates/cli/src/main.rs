//! `cocount`: exact counting for cuts, cocircuits, convex two-colourings,
//! and monotone 2-SAT, plus the constructive reductions linking them.
//!
//! Counts print as exact decimal integers, one per line. Instance files use
//! the DIMACS-style formats documented in the core crate's `io` module.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cocount_cli::gen::{gen_random_formula, gen_random_graph};
use cocount_cli::verify::{verify_lemma, Lemma, VerifyOptions, STRETCH_VERTEX_CAP};
use cocount_core::graph::Graph;
use cocount_core::oracles::{
    cocircuit_spectrum, count_cocircuits, count_cocircuits_unbounded,
    count_convex_two_colourings, count_cuts_of_size, count_sat, Count, MonotoneFormula, Spectrum,
};
use cocount_core::reductions::{
    compose_chain, maxcut_to_cocircuits, recover_spectrum, sat_to_maxcut, ConstantTerm,
};
use cocount_core::{parse_formula, parse_graph, serialize_formula, serialize_graph};

#[derive(Parser)]
#[command(
    name = "cocount",
    version,
    about = "Exact counters and counting reductions for cuts, cocircuits, and convex two-colourings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count solutions of an instance exactly
    Count {
        #[command(subcommand)]
        what: CountWhat,
    },
    /// Print the cocircuit counts by size, one "k N_k" line per size
    Spectrum {
        /// Graph file
        #[arg(short = 'i', value_name = "FILE")]
        input: PathBuf,
        /// Count the stretched copies and recover the spectrum through the
        /// exact linear solve instead of filtering by size directly
        #[arg(long)]
        via_stretch: bool,
    },
    /// Construct a reduced instance and write it to a file
    Reduce {
        #[command(subcommand)]
        which: ReduceWhich,
    },
    /// Replace every edge by a path of L edges
    Stretch {
        /// Graph file
        #[arg(short = 'i', value_name = "FILE")]
        input: PathBuf,
        /// Path length per original edge
        #[arg(short = 'l', value_name = "L")]
        length: usize,
        /// Output graph file
        #[arg(short = 'o', value_name = "FILE")]
        output: PathBuf,
    },
    /// Print the full reduction chain for a formula: every constructed
    /// instance, the claimed multipliers, and the count relation
    Chain {
        /// Monotone 2-CNF file
        #[arg(short = 'i', value_name = "FILE")]
        input: PathBuf,
    },
    /// Check a counting identity on seeded random instances; exits 0 only
    /// if no trial fails
    Verify {
        /// Identity to check: 1 clause cycles, 2 blow-up, 3 stretch, 4 convex
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        lemma: u8,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Largest instance size to draw (vertices, or variables for lemma 1)
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Emit a seeded random instance on stdout
    Gen {
        #[command(subcommand)]
        what: GenWhat,
    },
}

#[derive(Subcommand)]
enum CountWhat {
    /// Two-colourings where each colour class induces a connected subgraph
    Convex2 {
        #[arg(short = 'i', value_name = "FILE")]
        input: PathBuf,
    },
    /// Cuts both of whose shores induce connected subgraphs
    Cocircuits {
        /// Restrict to cocircuits with exactly K crossing edges
        #[arg(short = 'k', value_name = "K")]
        k: Option<usize>,
        #[arg(short = 'i', value_name = "FILE")]
        input: PathBuf,
    },
    /// Cuts with exactly K crossing edges
    Cuts {
        #[arg(short = 'k', value_name = "K")]
        k: usize,
        #[arg(short = 'i', value_name = "FILE")]
        input: PathBuf,
    },
    /// Satisfying assignments of a monotone 2-CNF formula
    Sat {
        #[arg(short = 'i', value_name = "FILE")]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum ReduceWhich {
    /// Formula → cut-counting graph; prints the required cut size k
    Sat2cut {
        /// Monotone 2-CNF file
        #[arg(short = 'i', value_name = "FILE")]
        input: PathBuf,
        /// Output graph file
        #[arg(short = 'o', value_name = "FILE")]
        output: PathBuf,
    },
    /// Graph with cut size K → required-size cocircuit instance; prints k′
    Cut2cocirc {
        /// Graph file
        #[arg(short = 'i', value_name = "FILE")]
        input: PathBuf,
        #[arg(short = 'k', value_name = "K")]
        k: usize,
        /// Output graph file
        #[arg(short = 'o', value_name = "FILE")]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenWhat {
    /// Random graph: each vertex pair becomes an edge with probability P
    Graph {
        #[arg(long)]
        n: usize,
        /// Edge probability as NUM/DEN (or a bare 0 or 1)
        #[arg(long, value_parser = parse_probability, value_name = "NUM/DEN")]
        p: (u64, u64),
        #[arg(long)]
        seed: u64,
    },
    /// Random monotone 2-CNF with every variable used
    Formula {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        clauses: usize,
        #[arg(long)]
        seed: u64,
    },
}

fn parse_probability(s: &str) -> Result<(u64, u64), String> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (
            a.trim()
                .parse()
                .map_err(|_| format!("invalid numerator `{a}`"))?,
            b.trim()
                .parse()
                .map_err(|_| format!("invalid denominator `{b}`"))?,
        ),
        None => (
            s.trim()
                .parse()
                .map_err(|_| format!("invalid probability `{s}`"))?,
            1,
        ),
    };
    if den == 0 || num > den {
        return Err(format!("probability {num}/{den} is not in [0, 1]"));
    }
    Ok((num, den))
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph, String> {
    parse_graph(&read_file(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_formula(path: &Path) -> Result<MonotoneFormula, String> {
    parse_formula(&read_file(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn spectrum_via_stretch(g: &Graph) -> Result<Spectrum, String> {
    let m = g.edge_count();
    let b = g.bridges().len();
    let mut totals: Vec<Count> = Vec::with_capacity(m);
    for l in 1..=m {
        let stretched = g.stretch(l).map_err(|e| e.to_string())?;
        let nv = stretched.graph.vertex_count();
        if nv > STRETCH_VERTEX_CAP {
            return Err(format!(
                "stretched copy for l={l} has {nv} vertices, above the practical cap {STRETCH_VERTEX_CAP}"
            ));
        }
        totals.push(count_cocircuits_unbounded(&stretched.graph, None).map_err(|e| e.to_string())?);
    }
    recover_spectrum(&totals, m, b, ConstantTerm::BridgeCorrected).map_err(|e| e.to_string())
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Count { what } => {
            let count = match what {
                CountWhat::Convex2 { input } => {
                    count_convex_two_colourings(&load_graph(&input)?).map_err(|e| e.to_string())?
                }
                CountWhat::Cocircuits { k, input } => {
                    count_cocircuits(&load_graph(&input)?, k).map_err(|e| e.to_string())?
                }
                CountWhat::Cuts { k, input } => {
                    count_cuts_of_size(&load_graph(&input)?, k).map_err(|e| e.to_string())?
                }
                CountWhat::Sat { input } => {
                    count_sat(&load_formula(&input)?).map_err(|e| e.to_string())?
                }
            };
            println!("{count}");
        }
        Command::Spectrum { input, via_stretch } => {
            let g = load_graph(&input)?;
            let spectrum = if via_stretch {
                spectrum_via_stretch(&g)?
            } else {
                cocircuit_spectrum(&g).map_err(|e| e.to_string())?
            };
            for (i, value) in spectrum.values().iter().enumerate() {
                println!("{} {value}", i + 1);
            }
        }
        Command::Reduce { which } => match which {
            ReduceWhich::Sat2cut { input, output } => {
                let f = load_formula(&input)?;
                let inst = sat_to_maxcut(&f).map_err(|e| e.to_string())?;
                write_file(&output, &serialize_graph(&inst.graph))?;
                println!("{}", inst.k);
            }
            ReduceWhich::Cut2cocirc { input, k, output } => {
                let g = load_graph(&input)?;
                let inst = maxcut_to_cocircuits(&g, k).map_err(|e| e.to_string())?;
                write_file(&output, &serialize_graph(&inst.graph))?;
                println!("{}", inst.k);
            }
        },
        Command::Stretch {
            input,
            length,
            output,
        } => {
            let g = load_graph(&input)?;
            let stretched = g.stretch(length).map_err(|e| e.to_string())?;
            write_file(&output, &serialize_graph(&stretched.graph))?;
        }
        Command::Chain { input } => {
            let f = load_formula(&input)?;
            let report = compose_chain(&f).map_err(|e| e.to_string())?;
            print!("{}", report.render());
        }
        Command::Verify {
            lemma,
            trials,
            seed,
            max_n,
        } => {
            let lemma = Lemma::from_number(lemma).expect("clap range-checked the value");
            let report = verify_lemma(lemma, &VerifyOptions { trials, seed, max_n });
            print!("{}", report.render());
            if !report.all_passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Gen { what } => match what {
            GenWhat::Graph { n, p, seed } => {
                let g = gen_random_graph(n, p.0, p.1, seed).map_err(|e| e.to_string())?;
                print!("{}", serialize_graph(&g));
            }
            GenWhat::Formula {
                vars,
                clauses,
                seed,
            } => {
                let f = gen_random_formula(vars, clauses, seed).map_err(|e| e.to_string())?;
                print!("{}", serialize_formula(&f));
            }
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
