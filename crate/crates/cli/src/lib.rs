//! The `wexp` command line: builders, measures, spokesman selection,
//! broadcast experiments, verification suites and sweeps. Every output
//! carries its [`RunConfig`]; `wexp rerun FILE` replays it.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod sweep;
pub mod verify;

use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use wexp_core::Ratio;

pub use config::RunConfig;
pub use error::CliError;
use output::{Format, Output};

#[derive(Parser, Debug)]
#[command(name = "wexp", version, about = "Wireless expansion toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// set-size fraction, `a/b` or decimal
    #[arg(long, global = true, default_value = "1/2")]
    pub alpha: String,
    /// enumeration cap on the searched ground set
    #[arg(long, global = true, default_value_t = wexp_core::metrics::DEFAULT_CAP)]
    pub cap: usize,
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// json | csv | graph
    #[arg(long, global = true)]
    pub format: Option<String>,
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// add a generation time line (not part of the replayable config)
    #[arg(long, global = true)]
    pub timestamp: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a graph family and its certificate
    Construct(commands::ConstructArgs),
    /// Exact expansion measures of a graph file
    Metrics(commands::MetricsArgs),
    /// Choose transmitters on a bipartite graph file
    Spokesman(commands::SpokesmanArgs),
    /// Decay or all-transmit broadcast on seeded chains
    Broadcast(commands::BroadcastArgs),
    /// Run a named invariant suite
    Verify(verify::VerifyArgs),
    /// Run an experiment over a parameter grid
    Sweep(sweep::SweepArgs),
    /// Re-execute the config embedded in an output file
    Rerun {
        file: String,
    },
}

pub struct Ctx {
    pub cfg: RunConfig,
    pub alpha: Ratio,
    pub format: Option<Format>,
    pub timestamp: Option<u64>,
}

/// Entry point used by the binary; returns the exit code.
pub fn run(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli, &args[1..]) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("wexp: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli, argv: &[String]) -> Result<i32, CliError> {
    if let Command::Rerun { file } = &cli.command {
        let text = std::fs::read_to_string(file)?;
        let cfg = config::extract(&text)?;
        let mut replay = vec!["wexp".to_string()];
        replay.extend(cfg.argv.iter().cloned());
        let inner = Cli::try_parse_from(&replay).map_err(|e| CliError::Usage(e.to_string()))?;
        if matches!(inner.command, Command::Rerun { .. }) {
            return Err(CliError::Usage("config replays another rerun".into()));
        }
        let ctx = context(&inner.global, cfg, false)?;
        let out = execute(inner.command, &ctx)?;
        return emit(&out, cli.global.out.as_deref());
    }
    let recorded: Vec<String> = argv.iter().filter(|a| *a != "--timestamp").cloned().collect();
    let cfg = RunConfig {
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: cli.global.seed,
        alpha: cli.global.alpha.clone(),
        cap: cli.global.cap,
        jobs: cli.global.jobs,
        format: cli.global.format.clone(),
        out: cli.global.out.clone(),
        argv: recorded,
    };
    let ctx = context(&cli.global, cfg, cli.global.timestamp)?;
    let out = execute(cli.command, &ctx)?;
    emit(&out, cli.global.out.as_deref())
}

fn context(g: &Global, cfg: RunConfig, timestamp: bool) -> Result<Ctx, CliError> {
    let alpha = Ratio::parse(&g.alpha).map_err(|e| CliError::Usage(e.to_string()))?;
    let format = g.format.as_deref().map(Format::parse).transpose()?;
    if g.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let timestamp = timestamp.then(|| {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });
    Ok(Ctx { cfg, alpha, format, timestamp })
}

fn execute(cmd: Command, ctx: &Ctx) -> Result<Output, CliError> {
    match cmd {
        Command::Construct(a) => commands::construct(&a, ctx),
        Command::Metrics(a) => commands::metrics(&a, ctx),
        Command::Spokesman(a) => commands::spokesman(&a, ctx),
        Command::Broadcast(a) => commands::broadcast(&a, ctx),
        Command::Verify(a) => verify::run(&a, ctx),
        Command::Sweep(a) => sweep::run(&a, ctx),
        Command::Rerun { .. } => unreachable!("handled by dispatch"),
    }
}

/// Writes the body to `out` (sidecars next to it) or to stdout, then maps a
/// failed assertion to exit 1.
fn emit(out: &Output, path: Option<&str>) -> Result<i32, CliError> {
    match path {
        Some(p) => {
            std::fs::write(p, &out.body)?;
            for (suffix, text) in &out.sidecars {
                std::fs::write(format!("{p}{suffix}"), text)?;
            }
        }
        None => {
            let mut text = out.body.clone();
            for (suffix, side) in &out.sidecars {
                for line in side.lines() {
                    text.push_str(&format!("# {} {line}\n", suffix.trim_start_matches('.')));
                }
            }
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                // a closed pipe (e.g. `| head`) is not an error
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                r => r?,
            }
        }
    }
    match &out.failed {
        Some(msg) => {
            eprintln!("wexp: {msg}");
            Ok(1)
        }
        None => Ok(0),
    }
}

pub(crate) fn read_graph(path: &str) -> Result<wexp_core::Graph, CliError> {
    if !Path::new(path).exists() {
        return Err(CliError::Usage(format!("no such graph file `{path}`")));
    }
    Ok(wexp_core::io::read_graph(path)?)
}
