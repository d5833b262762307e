//! `ifctp`: solve interval fixed-charge transportation problems from problem
//! files.
//!
//! Exit codes: 0 optimal, 1 internal error or failed oracle check,
//! 2 infeasible, 3 invalid input, 4 resource limit.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ifctp_core::crispify::build_bi_objective;
use ifctp_core::fuzzy::{build_payoff, CompromiseError, PayoffTable};
use ifctp_core::milp::{BranchLimits, SolveError};
use ifctp_core::report::{
    render_comparison, render_machine, render_payoff, render_text, CheckError, Competitor, ReportStatus,
};
use ifctp_core::{
    compute_ideal, parse_instance, run_oracle_check, run_pipeline, CenterWidth, Execution, IfctpInstance, Interval,
    PayoffLevels, PipelineOptions, SolveOptions,
};

#[derive(Parser)]
#[command(name = "ifctp", version, about = "Interval fixed-charge transportation solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compromise plan, ideal point and distance for an instance.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        opts: SolveArgs,
        #[arg(long = "competitor", value_name = "NAME=[LO,HI]", value_parser = parse_competitor)]
        competitors: Vec<Competitor>,
    },
    /// Ideal `<center, width>` point of an instance.
    Ideal {
        file: PathBuf,
        #[command(flatten)]
        opts: SolveArgs,
    },
    /// Distances of named interval costs from the ideal point.
    Compare {
        /// Instance whose compromise and ideal point are used.
        #[arg(required_unless_present = "ideal", conflicts_with = "ideal")]
        file: Option<PathBuf>,
        /// Ideal point given directly as `C,W`.
        #[arg(long, value_name = "C,W", value_parser = parse_ideal)]
        ideal: Option<CenterWidth>,
        #[arg(long = "competitor", value_name = "NAME=[LO,HI]", value_parser = parse_competitor)]
        competitors: Vec<Competitor>,
        #[command(flatten)]
        opts: SolveArgs,
    },
    /// Cross-check branch-and-bound against exhaustive enumeration.
    OracleCheck {
        file: PathBuf,
        #[command(flatten)]
        opts: SolveArgs,
    },
    /// Payoff table of the two crisp objectives.
    Payoff {
        file: PathBuf,
        #[command(flatten)]
        opts: SolveArgs,
    },
}

#[derive(Args)]
struct SolveArgs {
    /// Payoff levels `L1,U1,L2,U2` replacing the computed ones.
    #[arg(long, value_name = "L1,U1,L2,U2", value_parser = parse_payoff)]
    override_payoff: Option<PayoffLevels>,
    /// Feasibility tolerance of the plan check.
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    report: ReportFormat,
    /// Branch-and-bound node limit per solve.
    #[arg(long, default_value_t = ifctp_core::milp::DEFAULT_NODE_LIMIT)]
    node_limit: usize,
    /// Run every solve on the calling thread.
    #[arg(long)]
    sequential: bool,
}

impl SolveArgs {
    fn solve_options(&self) -> SolveOptions {
        SolveOptions {
            exec: if self.sequential {
                Execution::Sequential
            } else {
                Execution::default()
            },
            limits: BranchLimits {
                node_limit: self.node_limit,
            },
        }
    }

    fn machine(&self) -> bool {
        self.report == ReportFormat::Machine
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    #[value(alias = "machine-readable")]
    Machine,
}

fn parse_numbers<const N: usize>(text: &str) -> Result<[f64; N], String> {
    let values: Vec<f64> = text
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|e| format!("`{}`: {e}", v.trim())))
        .collect::<Result<_, _>>()?;
    values
        .try_into()
        .map_err(|v: Vec<f64>| format!("expected {N} comma-separated numbers, found {}", v.len()))
}

fn parse_payoff(text: &str) -> Result<PayoffLevels, String> {
    let [l1, u1, l2, u2] = parse_numbers::<4>(text)?;
    PayoffLevels::new([l1, l2], [u1, u2]).map_err(|e| e.to_string())
}

fn parse_ideal(text: &str) -> Result<CenterWidth, String> {
    let [c, w] = parse_numbers::<2>(text)?;
    CenterWidth::new(c, w).map_err(|e| e.to_string())
}

fn parse_competitor(text: &str) -> Result<Competitor, String> {
    let (name, interval) = text.split_once('=').ok_or("expected NAME=[LO,HI]")?;
    if name.trim().is_empty() {
        return Err("empty competitor name".into());
    }
    let interval: Interval = interval.parse().map_err(|e| format!("{e}"))?;
    Ok(Competitor::new(name.trim(), interval))
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<CompromiseError> for Failure {
    fn from(e: CompromiseError) -> Self {
        let code = match &e {
            CompromiseError::Infeasible | CompromiseError::Unbounded => 2,
            CompromiseError::InvalidPayoff(_) => 3,
            CompromiseError::Solver(s) => solver_code(s),
        };
        Failure::new(code, e.to_string())
    }
}

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Self {
        match e {
            CheckError::OutOfScope { .. } => Failure::new(4, e.to_string()),
            CheckError::Compromise(inner) => inner.into(),
        }
    }
}

fn solver_code(e: &SolveError) -> u8 {
    match e {
        SolveError::NodeLimit { .. } | SolveError::DegeneratePivot | SolveError::OracleOutOfScope { .. } => 4,
        SolveError::Malformed(_) => 1,
    }
}

fn load(path: &Path) -> Result<IfctpInstance, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::new(3, format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| Failure::new(3, format!("{}: {e}", path.display())))
}

fn pipeline_options(opts: &SolveArgs, competitors: Vec<Competitor>) -> PipelineOptions {
    PipelineOptions {
        payoff_override: opts.override_payoff,
        tolerance: opts.tolerance,
        competitors,
        solve: opts.solve_options(),
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Solve {
            file,
            opts,
            competitors,
        } => {
            let instance = load(&file)?;
            let report = run_pipeline(&instance, &pipeline_options(&opts, competitors))?;
            print!(
                "{}",
                if opts.machine() {
                    render_machine(&report)
                } else {
                    render_text(&report)
                }
            );
            Ok(match report.status {
                ReportStatus::Optimal => 0,
                ReportStatus::Infeasible => 2,
            })
        }
        Command::Ideal { file, opts } => {
            let ideal = compute_ideal(&load(&file)?, &opts.solve_options())?;
            if opts.machine() {
                println!("ideal.center={}\nideal.width={}", ideal.zc_star, ideal.zw_star);
            } else {
                println!("ideal         {:.2}", ideal.to_center_width());
            }
            Ok(0)
        }
        Command::Compare {
            file,
            ideal,
            competitors,
            opts,
        } => {
            let (ideal, entries) = match (file, ideal) {
                (_, Some(ideal)) => (ideal, competitors),
                (Some(file), None) => {
                    let instance = load(&file)?;
                    let report = run_pipeline(&instance, &pipeline_options(&opts, Vec::new()))?;
                    let (Some(z), Some(ideal)) = (report.objective, report.ideal) else {
                        eprintln!("ifctp: instance is infeasible");
                        return Ok(2);
                    };
                    let mut entries = vec![Competitor::new("compromise", z)];
                    entries.extend(competitors);
                    (ideal, entries)
                }
                (None, None) => return Err(Failure::new(3, "either FILE or --ideal is required")),
            };
            print!("{}", render_comparison(ideal, &entries, opts.machine()));
            Ok(0)
        }
        Command::OracleCheck { file, opts } => {
            let report = run_oracle_check(&load(&file)?, &opts.solve_options())?;
            print!("{}", report.render());
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Payoff { file, opts } => {
            let instance = load(&file)?;
            let table = match opts.override_payoff {
                Some(levels) => PayoffTable { levels, anchors: None },
                None => build_payoff(&build_bi_objective(&instance), &opts.solve_options())?,
            };
            print!("{}", render_payoff(&table, opts.machine()));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("ifctp: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
