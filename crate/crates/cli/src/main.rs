//! `exdir`: solve, analyze, simulate, play and verify Explorer-Director games.

mod cache;
mod play;

use std::fmt::Display;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use exdir_core::formulas::{f_star_cycle, lattice_bounds, lattice_closed_witness, tree_value};
use exdir_core::nonadaptive::{forced_run, forced_run_all_branches, score_with};
use exdir_core::verify::{self, Suite, SuiteParams};
use exdir_core::vertex_set::MAX_SET_VERTICES;
use exdir_core::{
    apsp, is_closed, min_closed_containing, min_closed_size, peel, solve_with, Error, FamilySpec,
    Graph, SolverConfig, StrategySequence, VertexSet,
};

use cache::ResultRecord;

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "exdir", version, about = "Explorer-Director game engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact game value from a start vertex.
    Solve {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        start: usize,
        /// Print a line of optimal play.
        #[arg(long)]
        trace: bool,
        /// Reuse and record results in a cache file (default: $EXDIR_CACHE).
        #[arg(long, num_args = 0..=1, value_name = "PATH")]
        cache: Option<Option<PathBuf>>,
        /// Append the result record to this file.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Closed-set queries.
    Closed {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        query: ClosedQuery,
    },
    /// Closed-form values and bounds.
    Formula {
        #[arg(long, value_enum)]
        family: FormulaFamily,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// Tree for `--family tree`.
        #[arg(long)]
        graph: Option<String>,
        #[arg(long, default_value_t = 0)]
        start: usize,
    },
    /// Score a fixed distance sequence against an adversarial Director.
    Simulate {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        start: usize,
        /// Comma-separated distances, e.g. 1,3,2,3,2.
        #[arg(long, allow_hyphen_values = true)]
        sequence: String,
        /// Report every Director line, not just the smallest replies.
        #[arg(long)]
        all_branches: bool,
    },
    /// Play interactively against the optimal policy.
    Play {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        start: usize,
        #[arg(long, value_enum)]
        role: play::Role,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Args)]
struct GraphArgs {
    /// Family spec (e.g. cycle:6, lattice:4x5, spider:4;5,5) or edge-list file.
    #[arg(long)]
    graph: String,
    /// Solver size limit.
    #[arg(long, value_name = "N")]
    max_vertices: Option<usize>,
    /// Lift the solver size limit to the graph's size.
    #[arg(long)]
    force_cap: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ClosedQuery {
    /// Is this comma-separated set closed?
    #[arg(long, value_name = "SET")]
    check: Option<String>,
    /// Smallest closed set.
    #[arg(long)]
    min: bool,
    /// Smallest closed set containing a vertex.
    #[arg(long, value_name = "V")]
    containing: Option<usize>,
    /// Peel a comma-separated set down to its closed core.
    #[arg(long, value_name = "SET")]
    peel: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormulaFamily {
    Cycle,
    Tree,
    Lattice,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TooLarge { .. } => EXIT_CAP,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        usage(format!("i/o: {e}"))
    }
}

fn usage(message: impl Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

type CliResult<T = ()> = std::result::Result<T, Failure>;

struct Loaded {
    graph: Graph,
    family: Option<String>,
    config: SolverConfig,
}

impl GraphArgs {
    fn load(&self) -> CliResult<Loaded> {
        let (graph, family) = if Path::new(&self.graph).is_file() {
            let text = std::fs::read_to_string(&self.graph)?;
            (Graph::parse_with_cap(&text, MAX_SET_VERTICES)?, None)
        } else {
            let spec: FamilySpec = self.graph.parse()?;
            (
                spec.generate_with_cap(MAX_SET_VERTICES)?,
                Some(spec.to_string()),
            )
        };
        let mut config = SolverConfig::default();
        if let Some(cap) = self.max_vertices {
            config = SolverConfig::with_cap(cap);
        }
        if self.force_cap {
            config = SolverConfig::with_cap(config.max_vertices.max(graph.n()));
        }
        Ok(Loaded {
            graph,
            family,
            config,
        })
    }
}

fn parse_set(text: &str, n: usize) -> CliResult<VertexSet> {
    let mut set = VertexSet::EMPTY;
    for t in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: usize = t.parse().map_err(|_| usage(format!("bad vertex {t:?}")))?;
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n }.into());
        }
        set.insert(v);
    }
    Ok(set)
}

fn cmd_solve(
    args: &GraphArgs,
    start: usize,
    trace: bool,
    cache: Option<Option<PathBuf>>,
    out: Option<PathBuf>,
) -> CliResult {
    let Loaded {
        graph,
        family,
        config,
    } = args.load()?;
    if start >= graph.n() {
        return Err(Error::VertexOutOfRange {
            vertex: start,
            n: graph.n(),
        }
        .into());
    }
    let hash = cache::graph_hash(&graph);
    let cache_path = cache.map(|p| p.unwrap_or_else(cache::default_path));
    let hit = match &cache_path {
        Some(path) if !trace => cache::lookup(path, &hash, start)?,
        _ => None,
    };
    let record = match hit {
        Some(rec) => rec,
        None => {
            let solution = solve_with(&graph, start, &config)?;
            let (closed_min, _) = min_closed_size(solution.distances())?;
            assert!(
                solution.value() as usize >= closed_min,
                "value below the smallest closed set"
            );
            if trace {
                for step in solution.optimal_trace() {
                    println!("{step}");
                }
            }
            let rec = ResultRecord {
                graph_hash: hash,
                family_spec: family.clone(),
                start,
                f_d: solution.value(),
                closed_min,
                timestamp: cache::now(),
            };
            if let Some(path) = &cache_path {
                cache::append(path, &rec)?;
            }
            rec
        }
    };
    println!("f_d={}", record.f_d);
    println!("closed_min={}", record.closed_min);
    if let Some(path) = out {
        cache::append(&path, &record)?;
    }
    Ok(())
}

fn cmd_closed(args: &GraphArgs, query: &ClosedQuery) -> CliResult {
    let Loaded { graph, .. } = args.load()?;
    let dm = apsp(&graph);
    let n = graph.n();
    if let Some(set) = &query.check {
        let set = parse_set(set, n)?;
        println!(
            "{}",
            if is_closed(&dm, set)? {
                "closed"
            } else {
                "not closed"
            }
        );
    } else if query.min {
        let (size, witness) = min_closed_size(&dm)?;
        println!("size {size}");
        println!("witness {witness}");
    } else if let Some(v) = query.containing {
        let (size, witness) = min_closed_containing(&dm, v)?;
        println!("size {size}");
        println!("witness {witness}");
    } else if let Some(set) = &query.peel {
        let result = peel(&dm, parse_set(set, n)?)?;
        println!("core {}", result.core);
        for (i, layer) in result.layers.iter().enumerate() {
            println!("X{} {layer}", i + 1);
        }
    }
    Ok(())
}

fn cmd_formula(
    family: FormulaFamily,
    n: Option<usize>,
    m: Option<usize>,
    graph: Option<String>,
    start: usize,
) -> CliResult {
    let need =
        |x: Option<usize>, flag: &str| x.ok_or_else(|| usage(format!("--{flag} is required")));
    match family {
        FormulaFamily::Cycle => println!("value {}", f_star_cycle(need(n, "n")? as u64)?),
        FormulaFamily::Tree => {
            let spec = graph.ok_or_else(|| usage("--graph is required for trees"))?;
            let loaded = GraphArgs {
                graph: spec,
                max_vertices: None,
                force_cap: false,
            }
            .load()?;
            println!("value {}", tree_value(&loaded.graph, start)?);
        }
        FormulaFamily::Lattice => {
            let (n, m) = (need(n, "n")?, need(m, "m")?);
            let b = lattice_bounds(n, m, start)?;
            if b.is_exact() {
                println!("value {}", b.lower);
            }
            println!("bounds ({},{})", b.lower, b.upper);
            let witness = lattice_closed_witness(n, m, start)?;
            println!("witness size {} {witness}", witness.len());
        }
    }
    Ok(())
}

fn cmd_simulate(args: &GraphArgs, start: usize, sequence: &str, all_branches: bool) -> CliResult {
    let Loaded { graph, config, .. } = args.load()?;
    let seq: StrategySequence = sequence.parse()?;
    let score = score_with(&graph, start, &seq, &config)?;
    println!("score {score}");
    let run = forced_run(&graph, start, &seq)?;
    for (i, step) in run.steps.iter().enumerate() {
        let note = if step.forced() {
            "forced".to_string()
        } else {
            format!("choice of {}", step.replies)
        };
        println!(
            "step {} d={} -> {} {note}",
            i + 1,
            step.distance,
            step.chosen
        );
    }
    match run.first_unforced() {
        None => println!("all forced"),
        Some(k) => println!("first unforced step {k}"),
    }
    if all_branches {
        let runs = forced_run_all_branches(&graph, start, &seq)?;
        println!("{} Director lines", runs.len());
        for r in runs {
            let trace: Vec<String> = r.trace.iter().map(|v| v.to_string()).collect();
            println!("line {} visited={}", trace.join(" "), r.visited().len());
        }
    }
    Ok(())
}

fn cmd_play(args: &GraphArgs, start: usize, role: play::Role) -> CliResult {
    let Loaded { graph, config, .. } = args.load()?;
    let solution = solve_with(&graph, start, &config)?;
    let stdin = io::stdin();
    play::session(&solution, role, stdin.lock(), &mut io::stdout())?;
    Ok(())
}

fn cmd_verify(suite: &str, params: SuiteParams) -> CliResult {
    let suite: Suite = suite.parse()?;
    let report = verify::run(suite, &params)?;
    for case in &report.cases {
        println!("{case}");
    }
    println!("{}", report.summary());
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_VERIFY,
            message: format!("suite {suite} failed"),
        })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Solve {
            graph,
            start,
            trace,
            cache,
            out,
        } => cmd_solve(&graph, start, trace, cache, out),
        Command::Closed { graph, query } => cmd_closed(&graph, &query),
        Command::Formula {
            family,
            n,
            m,
            graph,
            start,
        } => cmd_formula(family, n, m, graph, start),
        Command::Simulate {
            graph,
            start,
            sequence,
            all_branches,
        } => cmd_simulate(&graph, start, &sequence, all_branches),
        Command::Play { graph, start, role } => cmd_play(&graph, start, role),
        Command::Verify {
            suite,
            max_n,
            count,
            seed,
            max_len,
            parallel,
        } => cmd_verify(
            &suite,
            SuiteParams {
                max_n,
                count,
                seed,
                max_len,
                parallel,
            },
        ),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
