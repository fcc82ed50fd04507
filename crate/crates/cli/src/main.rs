//! `netparadox`: reproducible network paradox experiments.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use config::{CommonArgs, ConfigError};

#[derive(Parser)]
#[command(
    name = "netparadox",
    version,
    about = "Measure weak and strong network paradoxes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Friendship and skill paradoxes on the bundled Karate Club network
    KarateDemo(CommonArgs),
    /// Paradox suite, attribute histograms and correlation table for a network
    Analyze(CommonArgs),
    /// Paradoxes and correlations before and after shuffling attributes
    ShuffleTest(CommonArgs),
    /// Sample-size scaling of mean and median, and the iid random network
    StatisticalOrigins(CommonArgs),
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
    causes: Vec<String>,
}

fn classify(err: &anyhow::Error) -> (&'static str, u8) {
    if err.downcast_ref::<ConfigError>().is_some() {
        return ("config", 2);
    }
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<netparadox::Error>() {
            return match e {
                netparadox::Error::Io(_) => ("io", 1),
                _ => ("input", 1),
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return ("io", 1);
        }
    }
    ("internal", 1)
}

fn report_error(kind: &str, message: String, causes: Vec<String>) {
    let record = ErrorRecord {
        error: ErrorBody {
            kind,
            message,
            causes,
        },
    };
    eprintln!(
        "{}",
        serde_json::to_string(&record).expect("error record serializes")
    );
}

fn run(command: Command) -> anyhow::Result<Vec<String>> {
    let (name, args) = match &command {
        Command::KarateDemo(a) => ("karate-demo", a),
        Command::Analyze(a) => ("analyze", a),
        Command::ShuffleTest(a) => ("shuffle-test", a),
        Command::StatisticalOrigins(a) => ("statistical-origins", a),
    };
    let (settings, output) = config::resolve(args)?;
    if let Some(n) = output.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| config::config_error(format!("cannot set --threads: {e}")))?;
    }
    log::debug!("running {name}");
    match command {
        Command::KarateDemo(_) => commands::karate_demo(&settings, &output),
        Command::Analyze(_) => commands::analyze(&settings, &output),
        Command::ShuffleTest(_) => commands::shuffle_test(&settings, &output),
        Command::StatisticalOrigins(_) => commands::statistical_origins(&settings, &output),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report_error("usage", e.kind().to_string(), vec![e.to_string()]);
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(lines) => {
            for line in lines {
                println!("{line}");
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            let (kind, code) = classify(&err);
            let causes = err.chain().skip(1).map(|c| c.to_string()).collect();
            report_error(kind, err.to_string(), causes);
            ExitCode::from(code)
        }
    }
}
