//! `ilpdg`: duality gap analysis of interval linear programs.
//!
//! Exit codes: 0 Yes (or success), 1 No, 2 Unknown, 3 usage or input error,
//! 4 enumeration cap exceeded, 5 operation unsupported for the input,
//! 6 internal inconsistency.

mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use ilpdg::bounds::bounds_report;
use ilpdg::duality_gap::{reduce_strong_deg, reduce_weak, strongly_zero, weakly_zero, StrongOptions, ThreeValued};
use ilpdg::feasibility::SideSystem;
use ilpdg::format::{parse_problem, write_problem};
use ilpdg::oracle::{enumerate_values, find_weakly_zero, grid_counterexample_strong};
use ilpdg::{Error, IlpProblem, Limits, Side};
use serde_json::{json, Value};

const EXIT_INPUT: u8 = 3;
const EXIT_CAP: u8 = 4;
const EXIT_UNSUPPORTED: u8 = 5;
const EXIT_INTERNAL: u8 = 6;

#[derive(Parser, Debug)]
#[command(name = "ilpdg", version, about = "Duality gap analysis for interval linear programs")]
struct Cli {
    /// Emit a versioned JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest number of cases a single enumeration may visit.
    #[arg(long, global = true, env = "ILPDG_MAX_ENUM", value_name = "N")]
    max_enum: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weak or strong feasibility of the primal or dual constraint system.
    Feas {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Primal)]
        side: SideArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Weak)]
        mode: ModeArg,
    },
    /// Whether the duality gap is weakly or strongly zero.
    Dg {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Weak)]
        mode: ModeArg,
        /// Depth of the grid refuter used when the strong conditions are
        /// inconclusive; 0 samples interval endpoints only.
        #[arg(long, default_value_t = 1, value_name = "D")]
        grid_depth: u32,
        /// Skip the grid refuter.
        #[arg(long)]
        no_grid: bool,
    },
    /// Best and worst optimal values and the dual-side formulas (forms A, C).
    Bounds {
        file: PathBuf,
        #[arg(long, default_value_t = 1, value_name = "D")]
        grid_depth: u32,
    },
    /// Brute-force scenario enumeration.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 1, value_name = "D")]
        depth: u32,
    },
    /// Print the dual program as a problem file.
    Dualize { file: PathBuf },
    /// Print the reduced problem whose zero gap is equivalent.
    Reduce {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: ReduceArg,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SideArg {
    Primal,
    Dual,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ModeArg {
    Weak,
    Strong,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ReduceArg {
    Weak,
    StrongDeg,
}

enum Failure {
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(_) => EXIT_INPUT,
            Failure::Lib(e) => match e {
                Error::CapExceeded { .. } => EXIT_CAP,
                Error::UnsupportedForm { .. } | Error::DualOrientation(_) | Error::NotDegenerate(_) => {
                    EXIT_UNSUPPORTED
                }
                Error::Inconsistency(_) => EXIT_INTERNAL,
                _ => EXIT_INPUT,
            },
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Io(msg) => f.write_str(msg),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

/// What a command produced: a report with an exit code, or a problem file.
enum Output {
    Report { result: Value, code: u8 },
    Problem(String),
}

fn verdict_code(v: ThreeValued) -> u8 {
    match v {
        ThreeValued::Yes => 0,
        ThreeValued::No => 1,
        ThreeValued::Unknown => 2,
    }
}

fn load(path: &PathBuf) -> Result<IlpProblem, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("reading {}: {e}", path.display())))?
    };
    Ok(parse_problem(&text)?)
}

fn run(command: &Command, limits: &Limits) -> Result<(IlpProblem, Value, Output), Failure> {
    let (p, options, output) = match command {
        Command::Feas { file, side, mode } => {
            let p = load(file)?;
            let side = match side {
                SideArg::Primal => Side::Primal,
                SideArg::Dual => Side::Dual,
            };
            let sys = SideSystem::of(&p, side);
            let result = match mode {
                ModeArg::Weak => report::weak_feas(&sys, &sys.weak(limits)?),
                ModeArg::Strong => report::strong_feas(&sys, &sys.strong(limits)?),
            };
            let code = match result["verdict"].as_str() {
                Some("Yes") => 0,
                Some("No") => 1,
                _ => 2,
            };
            let options = json!({ "side": side.to_string(), "mode": mode_name(*mode) });
            (p, options, Output::Report { result, code })
        }
        Command::Dg { file, mode, grid_depth, no_grid } => {
            let p = load(file)?;
            let r = match mode {
                ModeArg::Weak => weakly_zero(&p, limits)?,
                ModeArg::Strong => {
                    let opts = StrongOptions {
                        grid_depth: (!no_grid).then_some(*grid_depth),
                    };
                    strongly_zero(&p, &opts, limits)?
                }
            };
            let mut options = json!({ "mode": mode_name(*mode) });
            if *mode == ModeArg::Strong {
                options["grid_depth"] = if *no_grid { Value::Null } else { json!(grid_depth) };
            }
            let code = verdict_code(r.verdict);
            (p, options, Output::Report { result: report::dg(&r), code })
        }
        Command::Bounds { file, grid_depth } => {
            let p = load(file)?;
            let opts = StrongOptions {
                grid_depth: Some(*grid_depth),
            };
            let r = bounds_report(&p, &opts, limits)?;
            let options = json!({ "grid_depth": grid_depth });
            (p, options, Output::Report { result: report::bounds(&r), code: 0 })
        }
        Command::Oracle { file, depth } => {
            let p = load(file)?;
            let weak = find_weakly_zero(&p, limits)?;
            let counter = grid_counterexample_strong(&p, *depth, limits)?;
            let values = enumerate_values(&p, limits)?;
            let result = report::oracle(weak.as_ref(), counter.as_ref(), *depth, &values);
            (p, json!({ "depth": depth }), Output::Report { result, code: 0 })
        }
        Command::Dualize { file } => {
            let p = load(file)?;
            let out = write_problem(&p.dualize());
            (p, Value::Null, Output::Problem(out))
        }
        Command::Reduce { file, mode } => {
            let p = load(file)?;
            let reduced = match mode {
                ReduceArg::Weak => reduce_weak(&p)?,
                ReduceArg::StrongDeg => reduce_strong_deg(&p)?,
            };
            (p, Value::Null, Output::Problem(write_problem(&reduced)))
        }
    };
    Ok((p, options, output))
}

fn mode_name(m: ModeArg) -> &'static str {
    match m {
        ModeArg::Weak => "weak",
        ModeArg::Strong => "strong",
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Feas { .. } => "feas",
        Command::Dg { .. } => "dg",
        Command::Bounds { .. } => "bounds",
        Command::Oracle { .. } => "oracle",
        Command::Dualize { .. } => "dualize",
        Command::Reduce { .. } => "reduce",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let limits = cli.max_enum.map_or_else(Limits::default, Limits::new);
    let name = command_name(&cli.command);
    let start = Instant::now();
    let outcome = run(&cli.command, &limits);
    let elapsed = start.elapsed();
    match outcome {
        Err(f) => {
            eprintln!("ilpdg {name}: error: {f}");
            ExitCode::from(f.exit_code())
        }
        Ok((_, _, Output::Problem(text))) => {
            print!("{text}");
            eprintln!("ilpdg {name}: {:.3} ms", elapsed.as_secs_f64() * 1e3);
            ExitCode::SUCCESS
        }
        Ok((p, options, Output::Report { result, code })) => {
            let problem = report::digest(&p);
            if cli.json {
                let envelope = json!({
                    "schema_version": report::SCHEMA_VERSION,
                    "command": name,
                    "options": options,
                    "problem": problem,
                    "result": result,
                });
                println!("{}", serde_json::to_string_pretty(&envelope).expect("report serializes"));
            } else {
                println!(
                    "{name}: form ({}), {} x {}, {} non-degenerate entries",
                    p.form(),
                    p.m(),
                    p.n(),
                    p.nondegenerate_entries()
                );
                print!("{}", report::text(&result));
            }
            eprintln!("ilpdg {name}: {:.3} ms", elapsed.as_secs_f64() * 1e3);
            ExitCode::from(code)
        }
    }
}
