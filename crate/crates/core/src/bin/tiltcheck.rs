use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use tilted_giraud::scenario::{run, Report, RunOptions, Scenario, Verdict};
use tilted_giraud::Error;

/// Runs a JSON scenario and prints its report.
///
/// Exit status: 0 when every verification passes, 1 when one fails, 2 on
/// malformed input, unresolved names or bounds beyond the enumeration limits.
#[derive(Parser)]
#[command(version)]
struct Args {
    /// scenario file
    scenario: PathBuf,
    /// print only the JSON report
    #[arg(long)]
    json_only: bool,
    /// omit per-command timings so reports are byte-identical across runs
    #[arg(long)]
    no_timing: bool,
    /// override the per-vertex dimension bound
    #[arg(long)]
    bound: Option<usize>,
}

fn summarize(report: &Report) {
    for c in &report.commands {
        let verdict = match c.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Info => "done",
        };
        match c.time_ms {
            Some(ms) => eprintln!("{verdict:>4}  {} ({ms} ms)", c.cmd),
            None => eprintln!("{verdict:>4}  {}", c.cmd),
        }
    }
    let b = report.bounds;
    eprintln!(
        "{} commands, dim <= {}, heart <= {}: {}",
        report.commands.len(),
        b.dim,
        b.heart,
        if report.passed { "all verifications passed" } else { "verification failed" }
    );
}

fn main() -> ExitCode {
    let args = Args::parse();
    let outcome = std::fs::read_to_string(&args.scenario)
        .map_err(|e| Error::Scenario(format!("{}: {e}", args.scenario.display())))
        .and_then(|text| Scenario::parse(&text))
        .and_then(|s| run(&s, &RunOptions { bound: args.bound, no_timing: args.no_timing }));
    match outcome {
        Ok(report) => {
            let json = serde_json::to_string_pretty(&report).expect("reports serialize");
            // a closed pipe downstream is not an error of the run
            let _ = writeln!(std::io::stdout(), "{json}");
            if !args.json_only {
                summarize(&report);
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("tiltcheck: {e}");
            ExitCode::from(2)
        }
    }
}
