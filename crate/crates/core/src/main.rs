use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use sephom::code::DEFAULT_CODE_CAP;
use sephom::report::{run_text, Command, Config, Selection};
use sephom::representation::DEFAULT_SEARCH_CAP;
use sephom::sets::DEFAULT_CLOSURE_CAP;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    /// Hypothesis verdicts for each code.
    CheckCode,
    /// Separating and biseparating verdicts for each homomorphism.
    CheckHom,
    /// Support map and weights for each homomorphism.
    Decompose,
    /// Equivalence decision for every pair of selected codes.
    Equivalent,
    /// Brute-force minimal supports for each target point.
    OracleSupports,
    /// Support and support-map property checks.
    Props,
    /// Print the instance in canonical form.
    Fmt,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::CheckCode => Command::CheckCode,
            Cmd::CheckHom => Command::CheckHom,
            Cmd::Decompose => Command::Decompose,
            Cmd::Equivalent => Command::Equivalent,
            Cmd::OracleSupports => Command::OracleSupports,
            Cmd::Props => Command::Props,
            Cmd::Fmt => Command::Fmt,
        }
    }
}

/// Separating homomorphisms between group-valued codes.
#[derive(Debug, Parser)]
#[command(name = "sephom", version)]
struct Args {
    command: Cmd,
    /// Instance file.
    file: PathBuf,
    /// Restrict to these codes (repeatable).
    #[arg(long = "code", value_name = "NAME")]
    codes: Vec<String>,
    /// Restrict to these homomorphisms (repeatable).
    #[arg(long = "hom", value_name = "NAME")]
    homs: Vec<String>,
    /// Size cap for union/intersection closures.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_CLOSURE_CAP)]
    cap_closure: usize,
    /// Size cap for generated codes.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_CODE_CAP)]
    cap_code: usize,
    /// Candidate budget for the equivalence search.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_SEARCH_CAP)]
    cap_search: u64,
    /// Cross-check support points against the subset-enumeration oracle.
    #[arg(long)]
    oracle: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("sephom: {}: {e}", args.file.display());
            return ExitCode::from(2);
        }
    };
    let selection = Selection { codes: args.codes, homs: args.homs };
    let config = Config {
        closure_cap: args.cap_closure,
        code_cap: args.cap_code,
        search_cap: args.cap_search,
        oracle: args.oracle,
    };
    let report = run_text(args.command.into(), &text, &selection, &config);
    print!("{report}");
    ExitCode::from(report.exit_code())
}
