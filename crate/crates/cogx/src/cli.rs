//! `cogx region | slope | verify`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use cogx_core::regions::{
    bc_outer_dual_mac, cooperative_frontier, sweep_cognitive_ic, sweep_cognitive_x, ChannelKind,
    RegionFrontier, DEFAULT_DUAL_MAC_POINTS,
};
use cogx_core::scaling::{estimate_slope, reference_lines, PowerPolicy, SlopeKind};
use cogx_core::Error;
use toml::Spanned;

use crate::config::{resolve, Command, ConfigError, Format, Overrides, RunConfig, SlopePolicy};
use crate::format::{frontier_csv, frontier_json, RunEcho};
use crate::report::{slope_json, verify_json, verify_summary, Fit};
use crate::verify::{run_all, Formulas};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "cogx", version, about = "Rate regions and multiplexing gain of the Gaussian cognitive X-channel")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Trace rate-region frontiers and write one file per kind and SNR.
    Region(Flags),
    /// Fit high-SNR sum-rate slopes and write slope_<kind>.json.
    Slope(Flags),
    /// Run the randomized equivalence and invariant suites.
    Verify(Flags),
}

#[derive(Args, Debug, Default)]
struct Flags {
    /// TOML file with any of the settings below (kebab-case keys).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    alpha12: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha21: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    n1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    n2: Option<f64>,
    /// Per-transmitter power used for every SNR entry.
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    /// Comma-separated SNR list in dB.
    #[arg(long = "snr-db", value_delimiter = ',', allow_hyphen_values = true)]
    snr_db: Option<Vec<f64>>,
    /// Comma-separated kinds: cogx, cogic, bc, coop (and p2p for slope).
    #[arg(long, alias = "kind", value_delimiter = ',')]
    kinds: Option<Vec<String>>,
    /// Points per power-split dimension of the sweeps.
    #[arg(long)]
    grid: Option<usize>,
    /// Comma-separated beta values (sweep grid, or paper-scaling beta for slope).
    #[arg(long, value_delimiter = ',')]
    beta: Option<Vec<f64>>,
    /// Slope power policy: paper or free.
    #[arg(long)]
    policy: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Frontier file format: csv or json.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    draws: Option<usize>,
}

impl Flags {
    fn overrides(&self) -> Overrides {
        fn sp<T: Clone>(v: &Option<T>) -> Option<Spanned<T>> {
            v.clone().map(|x| Spanned::new(0..0, x))
        }
        Overrides {
            alpha12: sp(&self.alpha12),
            alpha21: sp(&self.alpha21),
            n1: sp(&self.n1),
            n2: sp(&self.n2),
            p: sp(&self.p),
            snr_db: sp(&self.snr_db),
            kinds: sp(&self.kinds),
            grid: sp(&self.grid),
            beta: sp(&self.beta),
            policy: sp(&self.policy),
            out: sp(&self.out),
            format: sp(&self.format),
            seed: sp(&self.seed),
            draws: sp(&self.draws),
        }
    }
}

/// Failure of a command, carrying its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure {
            code: EXIT_CONFIG,
            message: format!("config error: {e}"),
        }
    }
}

fn core_failure(context: &str, e: Error) -> Failure {
    let code = match e {
        Error::BadInput(_) | Error::Invalid(_) => EXIT_CONFIG,
        _ => EXIT_NUMERIC,
    };
    let kind = if code == EXIT_CONFIG { "config error" } else { "numerical failure" };
    Failure {
        code,
        message: format!("{kind}: {context}: {e}"),
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_CONFIG,
        message: format!("config error: {}: {e}", path.display()),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| io_failure(path, e))
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status. Messages go to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let (command, flags) = match &cli.command {
        Sub::Region(f) => (Command::Region, f),
        Sub::Slope(f) => (Command::Slope, f),
        Sub::Verify(f) => (Command::Verify, f),
    };
    let result = resolve(command, flags.config.as_deref(), &flags.overrides())
        .map_err(Failure::from)
        .and_then(|cfg| execute(&cfg, &Formulas::default(), out));
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "{}", f.message);
            f.code
        }
    }
}

/// Runs a resolved configuration.
pub fn execute(cfg: &RunConfig, formulas: &Formulas, out: &mut dyn Write) -> Result<i32, Failure> {
    fs::create_dir_all(&cfg.out).map_err(|e| io_failure(&cfg.out, e))?;
    match cfg.command {
        Command::Region => cmd_region(cfg, out),
        Command::Slope => cmd_slope(cfg, out),
        Command::Verify => cmd_verify(cfg, formulas, out),
    }
}

/// Frontier of `kind` at total per-transmitter power `power`.
pub fn frontier(cfg: &RunConfig, kind: ChannelKind, power: f64) -> Result<RegionFrontier, Error> {
    let ch = cfg.channel.with_power(power);
    match kind {
        ChannelKind::CognitiveX => sweep_cognitive_x(&ch, &cfg.grid),
        ChannelKind::CognitiveInterference => sweep_cognitive_ic(&ch, &cfg.grid),
        ChannelKind::BcOuterDualMac => bc_outer_dual_mac(&ch, ch.p1 + ch.p2, DEFAULT_DUAL_MAC_POINTS),
        ChannelKind::CooperativeOuter => cooperative_frontier(&ch, ch.p1 + ch.p2),
    }
}

pub fn frontier_file_name(kind: ChannelKind, snr_db: f64, format: Format) -> String {
    format!("frontier_{}_{}.{}", kind.short_name(), snr_db, format.extension())
}

fn cmd_region(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut summary: Vec<(f64, Vec<(ChannelKind, f64)>)> = Vec::new();
    for &snr in &cfg.snr_db {
        let power = cfg.power_at(snr);
        let mut row = Vec::new();
        for &kind in &cfg.region_kinds {
            let f = frontier(cfg, kind, power)
                .map_err(|e| core_failure(&format!("{kind} at {snr} dB"), e))?;
            let path = cfg.out.join(frontier_file_name(kind, snr, cfg.format));
            let text = match cfg.format {
                Format::Csv => frontier_csv(&f.points),
                Format::Json => {
                    let echo = RunEcho {
                        alpha12: cfg.channel.alpha12,
                        alpha21: cfg.channel.alpha21,
                        n1: cfg.channel.n1,
                        n2: cfg.channel.n2,
                        power,
                        snr_db: snr,
                    };
                    let mut s = serde_json::to_string_pretty(&frontier_json(&f, &echo))
                        .expect("frontier JSON serializes");
                    s.push('\n');
                    s
                }
            };
            write_file(&path, &text)?;
            row.push((kind, f.max_sum_rate()));
        }
        if !cfg.region_kinds.contains(&ChannelKind::CooperativeOuter) {
            let f = frontier(cfg, ChannelKind::CooperativeOuter, power)
                .map_err(|e| core_failure(&format!("coop at {snr} dB"), e))?;
            row.push((ChannelKind::CooperativeOuter, f.max_sum_rate()));
        }
        summary.push((snr, row));
    }
    let _ = writeln!(out, "max sum-rate (bits per channel use)");
    let mut header = format!("{:>8}", "snr_db");
    if let Some((_, row)) = summary.first() {
        for (k, _) in row {
            header.push_str(&format!(" {:>10}", k.short_name()));
        }
    }
    let _ = writeln!(out, "{header}");
    for (snr, row) in &summary {
        let mut line = format!("{snr:>8}");
        for (_, v) in row {
            line.push_str(&format!(" {v:>10.5}"));
        }
        let _ = writeln!(out, "{line}");
    }
    Ok(EXIT_OK)
}

fn cmd_slope(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let refs = reference_lines(cfg.channel.antennas).map_err(|e| core_failure("reference lines", e))?;
    let template = cfg.channel;
    let policy_name = match cfg.slope_policy {
        SlopePolicy::Paper => "paper",
        SlopePolicy::Free => "free",
    };
    let _ = writeln!(out, "{:>6} {:>10} {:>8} {:>12}", "kind", "beta", "slope", "residual");
    for &kind in &cfg.slope_kinds {
        let runs: Vec<(Option<f64>, PowerPolicy)> = match (cfg.slope_policy, kind) {
            (SlopePolicy::Free, _) => vec![(None, PowerPolicy::Free(cfg.grid.clone()))],
            (SlopePolicy::Paper, SlopeKind::CognitiveX) => cfg
                .beta
                .clone()
                .unwrap_or_else(|| vec![0.5])
                .into_iter()
                .map(|b| (Some(b), PowerPolicy::PaperScaling { beta: b }))
                .collect(),
            (SlopePolicy::Paper, _) => vec![(None, PowerPolicy::default())],
        };
        let mut fits = Vec::new();
        for (beta, policy) in runs {
            let estimate = estimate_slope(kind, &template, &cfg.snr_db, &policy)
                .map_err(|e| core_failure(&format!("slope of {kind}"), e))?;
            let beta_text = beta.map_or("-".to_string(), |b| b.to_string());
            let _ = writeln!(
                out,
                "{:>6} {:>10} {:>8.4} {:>12.3e}",
                kind.short_name(),
                beta_text,
                estimate.slope,
                estimate.residual
            );
            fits.push(Fit { beta, estimate });
        }
        let doc = slope_json(kind, &template, policy_name, &cfg.snr_db, &fits, &refs);
        let path = cfg.out.join(format!("slope_{}.json", kind.short_name()));
        let mut text = serde_json::to_string_pretty(&doc).expect("slope JSON serializes");
        text.push('\n');
        write_file(&path, &text)?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(cfg: &RunConfig, formulas: &Formulas, out: &mut dyn Write) -> Result<i32, Failure> {
    let report = run_all(cfg.seed, cfg.draws, formulas);
    let path = cfg.out.join("verify_report.json");
    let mut text = serde_json::to_string_pretty(&verify_json(&report)).expect("report serializes");
    text.push('\n');
    write_file(&path, &text)?;
    let _ = write!(out, "seed {} draws {}\n{}", report.seed, report.draws, verify_summary(&report));
    if report.passed {
        return Ok(EXIT_OK);
    }
    let mut message = String::from("verification failed");
    for s in report.suites.iter().filter(|s| !s.ok()) {
        if let Some(f) = &s.first_failure {
            let draw = serde_json::to_string(&f.draw).unwrap_or_default();
            message.push_str(&format!(
                "\n{}: {} of {} draws failed; first at seed {} draw {}: {}\n  {}",
                s.name, s.failed, s.draws, f.seed, f.draw.index, f.detail, draw
            ));
        }
    }
    Err(Failure {
        code: EXIT_VERIFY_FAILED,
        message,
    })
}
