mod commands;

use cantor_core::Error;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use std::process::ExitCode;

pub const SCHEMA_VERSION: u32 = 1;

const GRAMMAR: &str = "\
numbers:   rat:p/q | p/q | 0.45 | 1e-6 | alg:c0,c1,...,ck@[lo,hi] | akl
sequences: [+-0]* optionally followed by (...) repeated forever, e.g. (+-) or +0(0);
           over {0..M} use comma-separated integers, e.g. 2,(1)
t values:  any number, or sum-neg-alpha, or ex52";

#[derive(Parser, Debug)]
#[command(name = "cantor", version, about = "Unique expansions and self-intersections of middle-third-type Cantor sets")]
pub struct Cli {
    /// Emit a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel kernels (1 runs sequentially).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Greedy (or quasi-greedy) expansion of x.
    Expand(commands::ExpandArgs),
    /// Quasi-greedy expansion of the largest attainable value.
    Delta(commands::DeltaArgs),
    /// Lexicographic uniqueness test for a coding sequence.
    Unique(commands::UniqueArgs),
    /// Thue-Morse words and the SFT blocks.
    Tm(commands::TmArgs),
    /// Enclosure of the Komornik-Loreti-type threshold.
    AlphaKl(commands::AlphaKlArgs),
    /// Describe the set of attained dimensions.
    Dset(commands::DsetArgs),
    /// Dimension from the zero frequency of a unique coding.
    Dim(commands::DimArgs),
    /// Expansion automaton, intersection graph and Perron dimension.
    Intersect(commands::IntersectArgs),
    /// Box-counting estimate of the dimension.
    Boxcount(commands::BoxcountArgs),
    /// Self-similarity test for a unique coding.
    Selfsimilar(commands::SelfsimilarArgs),
    /// Block-family sequences hitting target densities.
    DenseTargets(commands::DenseTargetsArgs),
    /// Liouville-type construction for a rational base.
    Liouville(commands::LiouvilleArgs),
    /// Run every reproduction criterion and print a pass/fail table.
    VerifyPaper(commands::VerifyArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Expand(_) => "expand",
            Command::Delta(_) => "delta",
            Command::Unique(_) => "unique",
            Command::Tm(_) => "tm",
            Command::AlphaKl(_) => "alpha-kl",
            Command::Dset(_) => "dset",
            Command::Dim(_) => "dim",
            Command::Intersect(_) => "intersect",
            Command::Boxcount(_) => "boxcount",
            Command::Selfsimilar(_) => "selfsimilar",
            Command::DenseTargets(_) => "dense-targets",
            Command::Liouville(_) => "liouville",
            Command::VerifyPaper(_) => "verify-paper",
        }
    }
}

/// Result of one subcommand: JSON payload, text rendering, and whether the
/// computation itself reports success.
pub struct Outcome {
    pub result: Value,
    pub text: String,
    pub ok: bool,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::NotIsolating { .. } | Error::DigitOutOfAlphabet { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let name = cli.command.name();
    let inputs = commands::inputs_of(&cli.command);

    #[cfg(feature = "parallel")]
    if let Some(n) = cli.jobs {
        if n > 1 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let exec = commands::exec_for(cli.jobs);

    let res = commands::run(&cli.command, exec).map_err(Failure::from);
    let (status, code, result, text) = match res {
        Ok(o) if o.ok => ("ok", 0, o.result, o.text),
        Ok(o) => ("failed", 1, o.result, o.text),
        Err(Failure::Domain(m)) => ("domain_error", 1, json!({ "error": m }), format!("error: {m}")),
        Err(Failure::Usage(m)) => ("usage_error", 2, json!({ "error": m }), format!("error: {m}\n\n{GRAMMAR}")),
    };
    if cli.json {
        let env = json!({
            "schema_version": SCHEMA_VERSION,
            "command": name,
            "inputs": inputs,
            "result": result,
            "status": status,
        });
        println!("{}", serde_json::to_string_pretty(&env).expect("JSON values always serialise"));
    } else if code == 0 || status == "failed" {
        println!("{text}");
    } else {
        eprintln!("{text}");
    }
    ExitCode::from(code)
}

/// Usage errors detected after parsing.
pub fn usage(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}
