use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use cdstrat::cli::{self, Format, JobError, JobSpec, Options};

/// Cohomological dimension of sink/source complements for BB and Bruhat
/// stratifications.
#[derive(Debug, Parser)]
#[command(name = "cdstrat", version)]
struct Args {
    /// Job document (JSON); reads stdin when omitted or "-".
    input: Option<PathBuf>,
    /// Run a bundled example instead of reading a document.
    #[arg(long, conflicts_with = "input")]
    builtin: Option<String>,
    /// Print the bundled examples and exit.
    #[arg(long)]
    list_builtins: bool,
    /// Output format (default: human).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Seed for the random evaluation points of ratmap jobs.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of random evaluation points for ratmap jobs.
    #[arg(long)]
    trials: Option<usize>,
    /// Cap on the Weyl group order for flag jobs.
    #[arg(long)]
    weyl_cap: Option<usize>,
    /// Echo the resolved job to stderr before running it.
    #[arg(short, long, action = clap::ArgAction::Count)]
    verbose: u8,
}

fn load(args: &Args) -> Result<JobSpec, JobError> {
    if let Some(name) = &args.builtin {
        return cli::builtin(name).map(|b| b.job).ok_or_else(|| JobError::UnknownBuiltin(name.clone()));
    }
    let text = match &args.input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)?,
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    JobSpec::from_json(&text)
}

fn list(format: Format) -> String {
    let all = cli::builtins();
    match format {
        Format::Json => serde_json::to_string_pretty(&all).expect("builtins serialize") + "\n",
        Format::Human => all.iter().map(|b| format!("{:<20} {}\n", b.name, b.description)).collect(),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.list_builtins {
        print!("{}", list(args.format.unwrap_or_default()));
        return ExitCode::SUCCESS;
    }
    let overrides = Options {
        format: args.format,
        verbosity: (args.verbose > 0).then_some(args.verbose),
        seed: args.seed,
        trials: args.trials,
        weyl_cap: args.weyl_cap,
    };
    let result = load(&args).and_then(|mut job| {
        job.options = job.options.merged(&overrides);
        if job.options.verbosity.unwrap_or(0) > 0 {
            eprintln!("running {}", serde_json::to_string(&job).unwrap_or_default());
        }
        let report = cli::run(&job)?;
        Ok(cli::render(&report, job.options.format.unwrap_or_default()))
    });
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
