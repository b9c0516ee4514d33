use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use svoie_core::io::{
    compare_files, load_config_with, run_to_dir, sweep, ConfigFile, ConfigOverrides, RunOptions, SweepOptions,
};
use svoie_core::stats::ComparisonResult;
use svoie_core::{Error, Mode};

#[derive(Parser)]
#[command(name = "svoie", version, about = "Colored Trails societies of SVO agents with integral emotions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one society and write rounds.csv, summary.json and manifest.json.
    Run(RunArgs),
    /// Compare a stable and a svoie run (summary.json or rounds.csv each).
    Compare(CompareArgs),
    /// Run all four presets under both modes and write the combined table.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct ExecArgs {
    /// Worker threads for games within a time step (0 = all cores).
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Population 60 and 200 steps unless set explicitly.
    #[arg(long)]
    desk: bool,
    #[arg(long)]
    steps: Option<u32>,
    #[arg(long)]
    repeats: Option<u32>,
    /// Skip writing rounds.csv.
    #[arg(long)]
    no_rounds: bool,
}

#[derive(Args)]
struct RunArgs {
    /// JSON config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    society: Option<String>,
    #[arg(long)]
    mode: Option<Mode>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    exec: ExecArgs,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    stable: PathBuf,
    #[arg(long)]
    svoie: PathBuf,
    /// Comparison CSV; the long-format welfare CSV is written beside it.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    exec: ExecArgs,
    #[arg(long)]
    out: PathBuf,
}

fn print_rows(rows: &[ComparisonResult]) {
    println!(
        "{:<10} {:<6} {:>5} {:>9} {:>7} {:>9} {:>7} {:>10} {:>8}",
        "society", "sample", "size", "stable", "cov", "svoie", "cov", "p", "d"
    );
    let opt = |v: Option<f64>| v.map_or_else(|| "-".to_owned(), |v| format!("{v:.4}"));
    for r in rows {
        println!(
            "{:<10} {:<6} {:>5} {:>9.3} {:>7.3} {:>9.3} {:>7.3} {:>10} {:>8}",
            r.society.name(),
            r.sample.to_string(),
            r.size,
            r.stable.mean,
            r.stable.cov,
            r.svoie.mean,
            r.svoie.cov,
            opt(r.p_value),
            opt(r.cohens_d),
        );
    }
}

fn run(args: RunArgs) -> svoie_core::Result<()> {
    let overrides = ConfigOverrides {
        society: args.society,
        mode: args.mode,
        steps: args.exec.steps,
        repeats: args.exec.repeats,
        seed: args.seed,
        desk: args.exec.desk,
    };
    let config = match &args.config {
        Some(path) => load_config_with(path, &overrides)?,
        None => ConfigFile::default().resolve(&overrides)?,
    };
    let opts = RunOptions { threads: args.exec.threads, write_rounds: !args.exec.no_rounds };
    let out = run_to_dir(&config, &args.out, opts)?;
    for s in &out.summary.samples {
        println!(
            "{} {} {:<4} size={} mean={:.3} std={:.3} cov={:.3}",
            out.summary.society, out.summary.mode, s.label, s.size, s.pooled.mean, s.pooled.std, s.pooled.cov
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Compare(args) => {
            compare_files(&args.stable, &args.svoie, &args.out).map(|rows| print_rows(&rows))
        }
        Command::Sweep(args) => {
            let opts = SweepOptions {
                seed: args.seed,
                desk: args.exec.desk,
                steps: args.exec.steps,
                repeats: args.exec.repeats,
                run: RunOptions { threads: args.exec.threads, write_rounds: !args.exec.no_rounds },
            };
            sweep(&args.out, &opts).map(|rows| print_rows(&rows))
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("error[{}]: {msg}", e.class());
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e.class() {
        "config" => 2,
        "io" => 3,
        "format" => 4,
        "mismatch" => 5,
        _ => 1,
    }
}
