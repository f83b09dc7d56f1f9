mod commands;
mod output;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperstate::Error;
use serde_json::{json, Map, Value};

#[derive(Parser, Debug)]
#[command(name = "hyperstate", version, about = "Entanglement and nonlocality of symmetric hypergraph states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the result to FILE instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Tolerance for dual-path cross-checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args, Debug, Clone, Default)]
pub struct StateArgs {
    /// Number of qubits.
    #[arg(long)]
    pub n: Option<usize>,
    /// Hyperedge cardinalities, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
    /// Explicit hyperedges as JSON, e.g. [[0,2,3],[1,2,3]].
    #[arg(long)]
    pub edges: Option<String>,
    /// State as JSON {"n":..,"k":[..]} or {"n":..,"edges":[[..]]}; prefix with @ to read a file.
    #[arg(long)]
    pub state: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodArg {
    Closed,
    Numeric,
    Oracle,
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliArg {
    X,
    Y,
    Z,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchArg {
    Plus,
    Minus,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantArg {
    Auto,
    M0,
    M1,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig2,
    Fig3,
    FigGem,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Panel {
    A,
    B,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Local Pauli stabilizer of a hypergraph state.
    Classify {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
    /// Amplitudes of a hypergraph state.
    Build {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
    /// Applies sqrt(P)^N and compares with the closed-form coefficients.
    Transform {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum)]
        pauli: Option<PauliArg>,
        #[arg(long, value_enum, default_value = "plus")]
        branch: BranchArg,
    },
    /// GHZ plus odd-weight split of the transformed state.
    Decompose {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum)]
        pauli: Option<PauliArg>,
    },
    /// Geometric measure of entanglement.
    Geomeasure {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum, default_value = "all")]
        method: MethodArg,
        #[arg(long, default_value_t = hyperstate::dense::DEFAULT_RESTARTS)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Qubits that get a Hadamard before the oracle optimization.
        #[arg(long, value_delimiter = ',')]
        hadamard: Vec<usize>,
    },
    /// Geometric measure of the state with one hyperedge on all qubits.
    SingleEdge {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "numeric")]
        method: MethodArg,
        #[arg(long, default_value_t = hyperstate::dense::DEFAULT_RESTARTS)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Mermin operator quantum value.
    Mermin {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum, default_value = "x")]
        pauli: PauliArg,
        #[arg(long, value_enum, default_value = "closed")]
        method: MethodArg,
    },
    /// Bell value of the three-uniform state after losing trailing qubits.
    Robustness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lost: usize,
        #[arg(long, value_enum, default_value = "auto")]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "closed")]
        method: MethodArg,
    },
    /// Residue class and stabilizer of a consecutive cardinality family.
    Families {
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        /// Largest N to list and check.
        #[arg(long, default_value_t = 16)]
        n: usize,
    },
    /// Quick self-check of closed forms against independent paths.
    Verify,
    /// CSV data for the figures.
    Sweep {
        #[arg(value_enum)]
        figure: Figure,
        #[arg(long)]
        from: Option<usize>,
        #[arg(long)]
        to: Option<usize>,
        /// Exponents r for fig3.
        #[arg(long, value_delimiter = ',')]
        r: Vec<u32>,
        #[arg(long, value_enum, default_value = "both")]
        panel: Panel,
        #[arg(long, value_enum, default_value = "numeric")]
        method: MethodArg,
        #[arg(long, default_value_t = hyperstate::dense::DEFAULT_RESTARTS)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Classify { .. } => "classify",
        Command::Build { .. } => "build",
        Command::Transform { .. } => "transform",
        Command::Decompose { .. } => "decompose",
        Command::Geomeasure { .. } => "geomeasure",
        Command::SingleEdge { .. } => "single-edge",
        Command::Mermin { .. } => "mermin",
        Command::Robustness { .. } => "robustness",
        Command::Families { .. } => "families",
        Command::Verify => "verify",
        Command::Sweep { .. } => "sweep",
    }
}

pub enum Output {
    Json(Map<String, Value>),
    Csv(String),
}

fn dispatch(cli: &Cli) -> hyperstate::Result<Output> {
    let tol = cli.tol;
    Ok(match &cli.command {
        Command::Classify { state, method } => Output::Json(commands::classify(state, *method)?),
        Command::Build { state, method } => Output::Json(commands::build(state, *method, tol)?),
        Command::Transform { state, pauli, branch } => Output::Json(commands::transform(state, *pauli, *branch, tol)?),
        Command::Decompose { state, pauli } => Output::Json(commands::decompose(state, *pauli)?),
        Command::Geomeasure { state, method, restarts, seed, hadamard } => {
            Output::Json(commands::geomeasure(state, *method, *restarts, *seed, hadamard, tol)?)
        }
        Command::SingleEdge { n, method, restarts, seed } => {
            Output::Json(commands::single_edge(*n, *method, *restarts, *seed, tol)?)
        }
        Command::Mermin { state, pauli, method } => Output::Json(commands::mermin(state, *pauli, *method, tol)?),
        Command::Robustness { n, lost, variant, method } => {
            Output::Json(commands::robustness(*n, *lost, *variant, *method, tol)?)
        }
        Command::Families { k, n } => Output::Json(commands::families(k, *n)?),
        Command::Verify => Output::Json(commands::verify()?),
        Command::Sweep { figure, from, to, r, panel, method, restarts, seed } => {
            let cfg = sweep::SweepConfig {
                figure: *figure,
                from: *from,
                to: *to,
                r: r.clone(),
                panel: *panel,
                method: *method,
                restarts: *restarts,
                seed: *seed,
                tol,
            };
            Output::Csv(sweep::run(&cfg)?)
        }
    })
}

fn emit(text: &str, out: Option<&PathBuf>) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn error_json(command: &str, e: &Error) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    let kind = match e {
        Error::CrossCheck { .. } => "cross_check",
        Error::UnsupportedFamily { .. } => "unsupported_family",
        Error::UnsupportedCase(_) => "unsupported_case",
        Error::NotGhzOddForm { .. } => "not_ghz_odd_form",
        Error::DenseCapExceeded { .. } | Error::ContractionCapExceeded { .. } => "cap_exceeded",
        _ => "domain_error",
    };
    m.insert("error".into(), json!(kind));
    m.insert("message".into(), json!(e.to_string()));
    if let Error::CrossCheck { what, a, b } = e {
        m.insert("what".into(), json!(what));
        m.insert("a".into(), json!(a));
        m.insert("b".into(), json!(b));
    }
    m
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let start = Instant::now();
    match dispatch(&cli) {
        Ok(Output::Json(mut m)) => {
            let mut head = Map::new();
            head.insert("command".into(), json!(name));
            head.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
            head.append(&mut m);
            head.insert("wall_time_ms".into(), json!(start.elapsed().as_millis() as u64));
            if let Err(e) = emit(&output::render(head), cli.out.as_ref()) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Ok(Output::Csv(text)) => {
            if let Err(e) = emit(&text, cli.out.as_ref()) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            print!("{}", output::render(error_json(name, &e)));
            ExitCode::from(if matches!(e, Error::CrossCheck { .. }) { 3 } else { 2 })
        }
    }
}
