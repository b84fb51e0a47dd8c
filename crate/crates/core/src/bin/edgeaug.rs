use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use edgeaug::cuts::DEFAULT_ENUM_THRESHOLD;
use edgeaug::generate::{generate_random, GenKind, GenParams};
use edgeaug::io::{
    parse_instance, parse_solution, serialize_instance, serialize_solution_with, solution_to_text,
    trace_to_json,
};
use edgeaug::kernel::{kernelize_by_one_with, unweight_kernel};
use edgeaug::node_conn::solve_node_1_2;
use edgeaug::oracle::{brute_force_solve_with, Mode, Target, DEFAULT_SEARCH_CAP};
use edgeaug::solver::{solve_with, verify_solution_for};
use edgeaug::zero_two::{branch_solve, solve_no_duplicates};
use edgeaug::{AugError, Instance, Solution, Status};

#[derive(Parser)]
#[command(
    name = "edgeaug",
    version,
    about = "Minimum-cost connectivity augmentation with a link budget"
)]
struct Cli {
    /// Seed for `gen`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest node count for exhaustive cut enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUM_THRESHOLD)]
    max_enum: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Augment a (k-1)-edge-connected graph to k (kernelize, search, lift).
    Solve { input: PathBuf },
    /// Print the kernel instance.
    Kernelize {
        input: PathBuf,
        /// Expand links of weight above 1 into unit-weight emulations.
        #[arg(long)]
        unweighted: bool,
        /// Write the reduction trace as JSON to this file.
        #[arg(long, value_name = "PATH")]
        emit_trace: Option<PathBuf>,
    },
    /// Exhaustive reference search.
    Oracle {
        input: PathBuf,
        /// Allow a link to be chosen repeatedly.
        #[arg(long)]
        multiset: bool,
        /// Target 2-node-connectivity instead of k-edge-connectivity.
        #[arg(long)]
        node2: bool,
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: u64,
    },
    /// Augment an arbitrary graph to 2-edge-connectivity.
    Zero2 {
        input: PathBuf,
        /// Use every link at most once.
        #[arg(long)]
        no_duplicates: bool,
    },
    /// Augment a connected graph to 2-node-connectivity.
    Node12 { input: PathBuf },
    /// Print a seeded random instance.
    Gen {
        #[arg(long, value_enum, default_value_t = KindArg::Tree)]
        kind: KindArg,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 9)]
        max_num: u32,
        #[arg(long, default_value_t = 1)]
        max_den: u32,
        /// Per-mille chance that a (pair, weight) slot carries a link.
        #[arg(long, default_value_t = 400)]
        density: u32,
        #[arg(long, default_value_t = 2)]
        components: usize,
    },
    /// Check a solution against an instance.
    Verify {
        input: PathBuf,
        solution: PathBuf,
        /// Check 2-node-connectivity instead of k-edge-connectivity.
        #[arg(long)]
        node2: bool,
    },
    /// Structural summary of an instance and its kernel.
    Stats { input: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Tree,
    Cactus,
    Forest,
    General,
}

fn read(path: &PathBuf) -> Result<String, AugError> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| AugError::InvalidArgument(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn load(path: &PathBuf) -> Result<Instance, AugError> {
    parse_instance(&read(path)?)
}

fn emit(sol: &Solution, violations: &[String], format: Format) -> ExitCode {
    match format {
        Format::Json => println!("{}", serialize_solution_with(sol, violations)),
        Format::Text => print!("{}", solution_to_text(sol, violations)),
    }
    match sol.status {
        Status::Optimal => ExitCode::SUCCESS,
        Status::Infeasible => ExitCode::from(2),
    }
}

fn run(cli: Cli) -> Result<ExitCode, AugError> {
    let format = cli.format;
    match cli.command {
        Command::Solve { input } => Ok(emit(
            &solve_with(&load(&input)?, cli.max_enum)?,
            &[],
            format,
        )),
        Command::Kernelize {
            input,
            unweighted,
            emit_trace,
        } => {
            let inst = load(&input)?;
            let mut kern = kernelize_by_one_with(&inst, cli.max_enum)?;
            if unweighted {
                kern = unweight_kernel(&kern, &inst)?;
            }
            if let Some(path) = emit_trace {
                std::fs::write(&path, trace_to_json(&kern.trace))
                    .map_err(|e| AugError::InvalidArgument(format!("{}: {e}", path.display())))?;
            }
            let text = serialize_instance(&kern.instance);
            match format {
                Format::Text => print!("{text}"),
                Format::Json => {
                    let corners = kern.corners.as_ref().map(|c| c.corners());
                    let doc = json!({
                        "infeasible": kern.infeasible,
                        "nodes": kern.instance.node_count(),
                        "links": kern.instance.links().len(),
                        "corners": corners,
                        "instance": text,
                    });
                    println!("{doc}");
                }
            }
            Ok(if kern.infeasible {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Oracle {
            input,
            multiset,
            node2,
            cap,
        } => {
            let inst = load(&input)?;
            let mode = if multiset { Mode::Multiset } else { Mode::Set };
            let target = if node2 {
                Target::NodeConn2
            } else {
                Target::EdgeConn(inst.k())
            };
            Ok(emit(
                &brute_force_solve_with(&inst, mode, target, cap)?,
                &[],
                format,
            ))
        }
        Command::Zero2 {
            input,
            no_duplicates,
        } => {
            let inst = load(&input)?;
            let sol = if no_duplicates {
                solve_no_duplicates(&inst)?
            } else {
                branch_solve(&inst)?
            };
            Ok(emit(&sol, &[], format))
        }
        Command::Node12 { input } => Ok(emit(&solve_node_1_2(&load(&input)?)?, &[], format)),
        Command::Gen {
            kind,
            n,
            p,
            k,
            max_num,
            max_den,
            density,
            components,
        } => {
            let params = GenParams {
                kind: match kind {
                    KindArg::Tree => GenKind::Tree,
                    KindArg::Cactus => GenKind::Cactus,
                    KindArg::Forest => GenKind::Forest,
                    KindArg::General => GenKind::General,
                },
                n,
                p,
                k,
                seed: cli.seed,
                max_num,
                max_den,
                density_per_mille: density,
                components,
            };
            print!("{}", serialize_instance(&generate_random(&params)?));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            input,
            solution,
            node2,
        } => {
            let inst = load(&input)?;
            let sol = parse_solution(&read(&solution)?)?;
            let target = if node2 {
                Target::NodeConn2
            } else {
                Target::EdgeConn(inst.k())
            };
            let report = verify_solution_for(&inst, &sol, target)?;
            let violations = report.violations();
            emit(&sol, &violations, format);
            Ok(if report.is_valid() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Stats { input } => {
            let inst = load(&input)?;
            let g = inst.graph();
            let (components, _) = g.components();
            let kernel = kernelize_by_one_with(&inst, cli.max_enum).ok();
            let doc = json!({
                "nodes": g.node_count(),
                "edges": g.edge_count(),
                "links": inst.links().len(),
                "k": inst.k(),
                "p": inst.p(),
                "components": components,
                "edge_connectivity": g.edge_connectivity(),
                "cut_nodes": g.cut_nodes().len(),
                "kernel_nodes": kernel.as_ref().map(|k| k.instance.node_count()),
                "kernel_links": kernel.as_ref().map(|k| k.instance.links().len()),
                "kernel_infeasible": kernel.as_ref().map(|k| k.infeasible),
            });
            match format {
                Format::Json => println!("{doc}"),
                Format::Text => {
                    for (key, value) in doc.as_object().expect("object") {
                        println!("{key} {value}");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
