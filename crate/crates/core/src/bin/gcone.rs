use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use graded_cones::cli::{execute, Command, Options};

/// Exact computations with multigraded ideals and their λ-cones.
///
/// The input document declares a ring, a grading, named ideals and points:
///
///   ring y1 y2 y3 y4;
///   grading [[1,2],[1,0],[0,1],[2,3]];
///   ideal F = y1^2*y2*y3 + y1*y4 + y2*y3^2*y4;
///   point P = (1, 1, 1, 1);
///
/// Exit status: 0 success, 1 mathematical rejection, 2 parse error.
/// GCONE_PAIR_LIMIT caps the S-pairs per Gröbner computation (default 200000).
#[derive(Parser, Debug)]
#[command(name = "gcone", version, verbatim_doc_comment)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Input document; stdin when absent.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
    /// Term order for Gröbner-based commands: lex, degrevlex or weighted.
    #[arg(long)]
    order: Option<String>,
    /// Ideal to operate on (default: first declared).
    #[arg(long)]
    ideal: Option<String>,
    /// Point name or literal such as "(1, 0, 2/3, 1)" (default: first declared).
    #[arg(long)]
    point: Option<String>,
    /// Orbit dimension bound for stratum-mu.
    #[arg(long)]
    mu: Option<usize>,
    /// Variables of the cross-section, e.g. "y2,y3".
    #[arg(long)]
    vars: Option<String>,
    /// Variables to keep in embed.
    #[arg(long)]
    kept: Option<String>,
    /// Tail mode for stratum: homogeneous or full.
    #[arg(long)]
    mode: Option<String>,
    /// Include wall time in the report.
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match &args.file {
        Some(path) => std::fs::read_to_string(path),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("gcone: cannot read input: {e}");
            return ExitCode::from(2);
        }
    };
    let opts = Options {
        order: args.order,
        ideal: args.ideal,
        point: args.point,
        mu: args.mu,
        vars: args.vars,
        kept: args.kept,
        mode: args.mode,
        json: args.json,
        timing: args.timing,
    };
    let report = execute(&text, args.command, &opts);
    if opts.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_human());
    }
    ExitCode::from(report.exit_code() as u8)
}
