//! Batch front end. Usage:
//!
//! nslog <mode> --config <path> [--out <dir>] [--seed <u64>] [--verify <manifest>]
//!
//! Exit codes: 0 success, 1 configuration error, 2 numerical failure,
//! 3 i/o error.

mod commands;
mod config;
mod manifest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;

use commands::CmdError;
use config::{parse_config, Mode, RunConfig};
use manifest::{load_manifest, RunManifest, RunRecorder};

#[derive(Parser)]
#[command(name = "nslog", version, about = "Nested-log regularity laboratory")]
struct Cli {
    /// One of: formulas, ode, simulate, analyze, audit, sweep.
    mode: String,
    /// Configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides out_dir from the configuration).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed override.
    #[arg(long)]
    seed: Option<u64>,
    /// Re-run the given manifest's configuration and compare output digests.
    #[arg(long)]
    verify: Option<PathBuf>,
}

fn dispatch(cfg: &RunConfig, rec: &mut RunRecorder) -> Result<(), CmdError> {
    match cfg.mode {
        Mode::Formulas => commands::formulas::run(cfg, rec),
        Mode::Ode => commands::ode::run(cfg, rec),
        Mode::Simulate => commands::simulate::run(cfg, rec),
        Mode::Analyze => commands::analyze::run(cfg, rec),
        Mode::Audit => commands::audit::run(cfg, rec),
        Mode::Sweep => commands::sweep::run(cfg, rec),
    }
}

fn execute(cfg: &RunConfig, out_dir: &Path) -> Result<RunManifest, CmdError> {
    let mut rec = RunRecorder::new(out_dir)?;
    match dispatch(cfg, &mut rec) {
        Ok(()) => {}
        Err(e) => {
            rec.stage_failed("run", &e.to_string());
            // manifest still lands, then the error propagates
            let _ = rec.finish(cfg.mode.name(), cfg.seed, &cfg.emit());
            return Err(e);
        }
    }
    rec.finish(cfg.mode.name(), cfg.seed, &cfg.emit())
        .map_err(CmdError::Io)
}

fn verify(manifest_path: &Path, out_dir: &Path) -> Result<(), ExitCode> {
    let stored = load_manifest(manifest_path).map_err(|e| {
        eprintln!(
            "nslog: cannot load manifest {}: {e}",
            manifest_path.display()
        );
        ExitCode::from(3)
    })?;
    let cfg = parse_config(&stored.config_echo).map_err(|e| {
        eprintln!("nslog: manifest carries an invalid configuration: {e}");
        ExitCode::from(1)
    })?;
    let rerun_dir = out_dir.join("verify");
    let fresh = execute(&cfg, &rerun_dir).map_err(|e| {
        eprintln!("nslog: verification re-run failed: {e}");
        ExitCode::from(exit_class(&e))
    })?;

    let mut mismatches = Vec::new();
    for want in &stored.outputs {
        match fresh.outputs.iter().find(|f| f.path == want.path) {
            Some(got) if got.sha256 == want.sha256 => {}
            Some(got) => mismatches.push(format!("{}: {} != {}", want.path, got.sha256, want.sha256)),
            None => mismatches.push(format!("{}: missing from re-run", want.path)),
        }
    }
    if mismatches.is_empty() {
        println!(
            "verify ok: {} outputs reproduced bit-identically",
            stored.outputs.len()
        );
        Ok(())
    } else {
        eprintln!("nslog: digest mismatch on re-run:");
        for m in &mismatches {
            eprintln!("  {m}");
        }
        Err(ExitCode::from(2))
    }
}

fn exit_class(e: &CmdError) -> u8 {
    match e {
        CmdError::Numerical(_) => 2,
        CmdError::Io(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    // cap internal parallelism when requested
    if let Ok(threads) = std::env::var("NSLOG_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }

    let Some(mode) = Mode::parse(&cli.mode) else {
        eprintln!(
            "nslog: unknown mode `{}`; expected formulas|ode|simulate|analyze|audit|sweep",
            cli.mode
        );
        return ExitCode::from(1);
    };

    let text = match std::fs::read_to_string(&cli.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("nslog: cannot read {}: {e}", cli.config.display());
            return ExitCode::from(3);
        }
    };
    let mut cfg = match parse_config(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("nslog: {e}");
            return ExitCode::from(1);
        }
    };
    if cfg.mode != mode {
        eprintln!(
            "nslog: mode argument `{}` does not match mode `{}` in the configuration",
            mode.name(),
            cfg.mode.name()
        );
        return ExitCode::from(1);
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    let out_dir = cli
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(&cfg.out_dir));

    if let Some(manifest_path) = &cli.verify {
        return match verify(manifest_path, &out_dir) {
            Ok(()) => ExitCode::SUCCESS,
            Err(code) => code,
        };
    }

    match execute(&cfg, &out_dir) {
        Ok(manifest) => {
            println!(
                "{} complete: {} outputs in {}",
                cfg.mode.name(),
                manifest.outputs.len(),
                out_dir.display()
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("nslog: {e}");
            ExitCode::from(exit_class(&e))
        }
    }
}
