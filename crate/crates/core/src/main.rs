use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use collapse_lab::config::parse_frame_file;
use collapse_lab::frame::validate_frame;
use collapse_lab::poset::{DEFAULT_CENSUS_CAP, DEFAULT_ISO_CAP};
use collapse_lab::suite::{exit_code, render_lines, render_text, run_suite, Caps, Format, Suite};
use collapse_lab::term::DEFAULT_TERM_CAP;

#[derive(Parser)]
#[command(
    name = "collapse-lab",
    version,
    about = "Exhaustive checks on finite collapse posets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checker suites on a frame file.
    Run(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    frame: PathBuf,
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = DEFAULT_TERM_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    cap_term: u64,
    #[arg(long, default_value_t = DEFAULT_ISO_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    cap_iso: u64,
    #[arg(long, default_value_t = DEFAULT_CENSUS_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    cap_census: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Exit with 3 when any check was skipped.
    #[arg(long)]
    strict: bool,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let Command::Run(args) = cli.command;
    ExitCode::from(run(args) as u8)
}

fn run(args: RunArgs) -> i32 {
    let text = match std::fs::read_to_string(&args.frame) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", args.frame.display());
            return 2;
        }
    };
    let frame = match parse_frame_file(&text).and_then(|raw| validate_frame(&raw)) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {}: {e}", args.frame.display());
            return 2;
        }
    };
    let caps = Caps {
        term: args.cap_term as usize,
        iso: args.cap_iso as usize,
        census: args.cap_census as usize,
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(args.workers)
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let reports = pool.install(|| run_suite(&frame, args.suite, caps));
    let out = match args.format {
        Format::Text => render_text(&reports),
        Format::Lines => render_lines(&reports),
    };
    print!("{out}");
    exit_code(&reports, args.strict)
}
