//! Run configuration. Command-line flags override values from a TOML file,
//! which override the built-in defaults.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use cogx_core::model::ChannelParams;
use cogx_core::regions::{ChannelKind, SweepGrid};
use cogx_core::scaling::{default_snr_grid, SlopeKind};
use serde::Deserialize;
use toml::Spanned;

pub const DEFAULT_SEED: u64 = 20_260_101;
pub const DEFAULT_DRAWS: usize = 10_000;
pub const DEFAULT_SNR_DB: [f64; 3] = [0.0, 10.0, 50.0];
pub const DEFAULT_REGION_KINDS: [ChannelKind; 3] = [
    ChannelKind::CognitiveX,
    ChannelKind::CognitiveInterference,
    ChannelKind::BcOuterDualMac,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Region,
    Slope,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// How slope estimates set the signaling powers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SlopePolicy {
    #[default]
    Paper,
    Free,
}

/// Where a bad value came from, for error messages.
#[derive(Debug, Clone, PartialEq)]
pub enum Origin {
    File { path: PathBuf, line: usize },
    Flag(&'static str),
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::File { path, line } => write!(f, "{}:{line}", path.display()),
            Origin::Flag(name) => write!(f, "--{name}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("{origin}: {message}")]
    Invalid { origin: Origin, message: String },
    #[error("{path}: cannot read config: {message}")]
    Unreadable { path: String, message: String },
}

/// Fully resolved settings of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub channel: ChannelParams,
    /// Fixed transmit power for every SNR entry instead of `10^(snr/10) N1`.
    pub power: Option<f64>,
    pub snr_db: Vec<f64>,
    pub region_kinds: Vec<ChannelKind>,
    pub slope_kinds: Vec<SlopeKind>,
    pub grid: SweepGrid,
    /// Values given with `--beta`, also used as the paper-scaling `beta` of
    /// slope fits.
    pub beta: Option<Vec<f64>>,
    pub slope_policy: SlopePolicy,
    pub out: PathBuf,
    pub format: Format,
    pub seed: u64,
    pub draws: usize,
}

impl RunConfig {
    pub fn defaults(command: Command) -> Self {
        RunConfig {
            command,
            channel: ChannelParams::default(),
            power: None,
            snr_db: match command {
                Command::Slope => default_snr_grid(),
                _ => DEFAULT_SNR_DB.to_vec(),
            },
            region_kinds: DEFAULT_REGION_KINDS.to_vec(),
            slope_kinds: SlopeKind::ALL.to_vec(),
            grid: SweepGrid::default(),
            beta: None,
            slope_policy: SlopePolicy::Paper,
            out: PathBuf::from("."),
            format: Format::Csv,
            seed: DEFAULT_SEED,
            draws: DEFAULT_DRAWS,
        }
    }

    /// Transmit power used at `snr_db`.
    pub fn power_at(&self, snr_db: f64) -> f64 {
        self.power
            .unwrap_or_else(|| cogx_core::model::snr_to_power(snr_db, self.channel.n1))
    }
}

/// Settings as they appear in a config file or on the command line; `None`
/// leaves the lower-precedence value in place.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Overrides {
    pub alpha12: Option<Spanned<f64>>,
    pub alpha21: Option<Spanned<f64>>,
    pub n1: Option<Spanned<f64>>,
    pub n2: Option<Spanned<f64>>,
    pub p: Option<Spanned<f64>>,
    pub snr_db: Option<Spanned<Vec<f64>>>,
    pub kinds: Option<Spanned<Vec<String>>>,
    pub grid: Option<Spanned<usize>>,
    pub beta: Option<Spanned<Vec<f64>>>,
    pub policy: Option<Spanned<String>>,
    pub out: Option<Spanned<PathBuf>>,
    pub format: Option<Spanned<String>>,
    pub seed: Option<Spanned<u64>>,
    pub draws: Option<Spanned<usize>>,
}

/// Tracks where each value came from so validation can point at it.
struct Source<'a> {
    file: Option<(&'a Path, &'a str)>,
}

impl Source<'_> {
    fn origin<T>(&self, value: &Spanned<T>, flag: &'static str) -> Origin {
        match self.file {
            Some((path, text)) => Origin::File {
                path: path.to_path_buf(),
                line: line_of(text, value.span().start),
            },
            _ => Origin::Flag(flag),
        }
    }
}

/// 1-based line containing byte `offset`.
pub fn line_of(text: &str, offset: usize) -> usize {
    text.as_bytes()[..offset.min(text.len())]
        .iter()
        .filter(|&&b| b == b'\n')
        .count()
        + 1
}

/// Parses a config file. Syntax errors and unknown keys carry the line.
pub fn parse_file(path: &Path, text: &str) -> Result<Overrides, ConfigError> {
    toml::from_str(text).map_err(|e| {
        let line = e.span().map_or(1, |s| line_of(text, s.start));
        ConfigError::Invalid {
            origin: Origin::File {
                path: path.to_path_buf(),
                line,
            },
            message: e.message().to_string(),
        }
    })
}

/// Resolves defaults, then the file at `file` (if any), then `flags`.
pub fn resolve(
    command: Command,
    file: Option<&Path>,
    flags: &Overrides,
) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::defaults(command);
    if let Some(path) = file {
        let text = fs::read_to_string(path).map_err(|e| ConfigError::Unreadable {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let parsed = parse_file(path, &text)?;
        apply(&mut cfg, &parsed, &Source {
            file: Some((path, &text)),
        })?;
    }
    apply(&mut cfg, flags, &Source { file: None })?;
    Ok(cfg)
}

fn invalid(origin: Origin, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        origin,
        message: message.into(),
    }
}

fn apply(cfg: &mut RunConfig, o: &Overrides, src: &Source<'_>) -> Result<(), ConfigError> {
    let gain = |v: &Spanned<f64>, flag| {
        let x = *v.get_ref();
        if x.is_finite() && x >= 0.0 {
            Ok(x)
        } else {
            Err(invalid(src.origin(v, flag), format!("gain must be finite and nonnegative, got {x}")))
        }
    };
    let noise = |v: &Spanned<f64>, flag| {
        let x = *v.get_ref();
        if x.is_finite() && x > 0.0 {
            Ok(x)
        } else {
            Err(invalid(src.origin(v, flag), format!("noise variance must be positive, got {x}")))
        }
    };
    if let Some(v) = &o.alpha12 {
        cfg.channel.alpha12 = gain(v, "alpha12")?;
    }
    if let Some(v) = &o.alpha21 {
        cfg.channel.alpha21 = gain(v, "alpha21")?;
    }
    if let Some(v) = &o.n1 {
        cfg.channel.n1 = noise(v, "n1")?;
    }
    if let Some(v) = &o.n2 {
        cfg.channel.n2 = noise(v, "n2")?;
    }
    if let Some(v) = &o.p {
        let x = *v.get_ref();
        if cfg.command == Command::Slope {
            return Err(invalid(src.origin(v, "p"), "slope fits sweep the SNR grid; a fixed power does not apply"));
        }
        if !(x.is_finite() && x >= 0.0) {
            return Err(invalid(src.origin(v, "p"), format!("power must be finite and nonnegative, got {x}")));
        }
        cfg.power = Some(x);
    }
    if let Some(v) = &o.snr_db {
        let list = v.get_ref();
        if list.is_empty() || list.iter().any(|x| !x.is_finite()) {
            return Err(invalid(src.origin(v, "snr-db"), "SNR list must be nonempty and finite"));
        }
        cfg.snr_db = list.clone();
    }
    if let Some(v) = &o.kinds {
        let names = v.get_ref();
        if names.is_empty() {
            return Err(invalid(src.origin(v, "kinds"), "kind list is empty"));
        }
        match cfg.command {
            Command::Slope => {
                cfg.slope_kinds = names
                    .iter()
                    .map(|n| {
                        SlopeKind::from_short_name(n).ok_or_else(|| {
                            invalid(src.origin(v, "kinds"), format!("unknown kind '{n}' (p2p, cogx, cogic, bc, coop)"))
                        })
                    })
                    .collect::<Result<_, _>>()?;
            }
            _ => {
                cfg.region_kinds = names
                    .iter()
                    .map(|n| {
                        ChannelKind::from_short_name(n).ok_or_else(|| {
                            invalid(src.origin(v, "kinds"), format!("unknown kind '{n}' (cogx, cogic, bc, coop)"))
                        })
                    })
                    .collect::<Result<_, _>>()?;
            }
        }
    }
    if let Some(v) = &o.grid {
        let n = *v.get_ref();
        if n < 2 {
            return Err(invalid(src.origin(v, "grid"), format!("grid resolution must be at least 2, got {n}")));
        }
        let betas = cfg.grid.beta_values.clone();
        let keep_betas = cfg.beta.is_some();
        cfg.grid = SweepGrid::with_resolution(n);
        if keep_betas {
            cfg.grid.beta_values = betas;
        }
    }
    if let Some(v) = &o.beta {
        let list = v.get_ref();
        if list.is_empty() || list.iter().any(|&b| !(b > 0.0 && b <= 1.0)) {
            return Err(invalid(src.origin(v, "beta"), "beta values must lie in (0, 1]"));
        }
        cfg.grid.beta_values = list.clone();
        cfg.beta = Some(list.clone());
    }
    if let Some(v) = &o.policy {
        cfg.slope_policy = match v.get_ref().as_str() {
            "paper" => SlopePolicy::Paper,
            "free" => SlopePolicy::Free,
            other => {
                return Err(invalid(src.origin(v, "policy"), format!("unknown policy '{other}' (paper, free)")))
            }
        };
    }
    if let Some(v) = &o.out {
        cfg.out = v.get_ref().clone();
    }
    if let Some(v) = &o.format {
        cfg.format = match v.get_ref().as_str() {
            "csv" => Format::Csv,
            "json" => Format::Json,
            other => return Err(invalid(src.origin(v, "format"), format!("unknown format '{other}' (csv, json)"))),
        };
    }
    if let Some(v) = &o.seed {
        cfg.seed = *v.get_ref();
    }
    if let Some(v) = &o.draws {
        let n = *v.get_ref();
        if n == 0 {
            return Err(invalid(src.origin(v, "draws"), "draws must be positive"));
        }
        cfg.draws = n;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flags() -> Overrides {
        Overrides::default()
    }

    #[test]
    fn defaults_match_reference_setup() {
        let c = resolve(Command::Region, None, &flags()).unwrap();
        assert_eq!((c.channel.alpha12, c.channel.alpha21), (0.8, 0.2));
        assert_eq!(c.snr_db, vec![0.0, 10.0, 50.0]);
        assert_eq!(c.region_kinds, DEFAULT_REGION_KINDS.to_vec());
    }

    #[test]
    fn file_values_are_overridden_by_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        fs::write(&path, "alpha12 = 0.5\nalpha21 = 0.3\nseed = 7\n").unwrap();
        let mut f = flags();
        f.alpha21 = Some(Spanned::new(0..0, 0.1));
        let c = resolve(Command::Verify, Some(&path), &f).unwrap();
        assert_eq!(c.channel.alpha12, 0.5);
        assert_eq!(c.channel.alpha21, 0.1);
        assert_eq!(c.seed, 7);
    }

    #[test]
    fn file_errors_name_the_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        fs::write(&path, "alpha12 = 0.5\n\nn1 = -1.0\n").unwrap();
        let e = resolve(Command::Region, Some(&path), &flags()).unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("run.toml:3:"), "{msg}");

        fs::write(&path, "alpha12 = 0.5\nbogus = 1\n").unwrap();
        let msg = resolve(Command::Region, Some(&path), &flags()).unwrap_err().to_string();
        assert!(msg.contains("run.toml:2:"), "{msg}");
    }

    #[test]
    fn unknown_kind_is_rejected() {
        let mut f = flags();
        f.kinds = Some(Spanned::new(0..0, vec!["cogz".to_string()]));
        let msg = resolve(Command::Region, None, &f).unwrap_err().to_string();
        assert!(msg.starts_with("--kinds"), "{msg}");
    }

    #[test]
    fn line_counting() {
        assert_eq!(line_of("a\nb\nc", 0), 1);
        assert_eq!(line_of("a\nb\nc", 2), 2);
        assert_eq!(line_of("a\nb\nc", 4), 3);
    }
}
