//! Multiplexing gain as the high-SNR slope of the maximum sum-rate.
//!
//! Rates carry the `1/2` factor and are regressed on `1/2 log2(SNR)`, with
//! `SNR = P / N1` and `P1 = P2 = P`. In these units one point-to-point real
//! Gaussian link has slope 1.

use alloc::vec::Vec;
use core::fmt;

use crate::bounds::{thm1_bounds, with_optimal_gammas};
use crate::model::{snr_to_power, ChannelParams, SignalingParams};
use crate::optim::golden_section_max;
use crate::regions::{bc_outer_dual_mac, cooperative_outer, sweep_cognitive_x, SweepGrid};
use crate::{Error, Result};

/// Which sum-rate is tracked across SNR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SlopeKind {
    /// Tx 1 alone on a decoupled channel (calibration).
    PointToPoint,
    CognitiveX,
    CognitiveInterference,
    /// Dual-MAC sum capacity of the broadcast outer bound, sum power `2P`.
    Broadcast,
    /// Fully cooperative 2×2 link, sum power `2P`.
    Cooperative,
}

impl SlopeKind {
    pub const ALL: [SlopeKind; 5] = [
        SlopeKind::PointToPoint,
        SlopeKind::CognitiveX,
        SlopeKind::CognitiveInterference,
        SlopeKind::Broadcast,
        SlopeKind::Cooperative,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            SlopeKind::PointToPoint => "p2p",
            SlopeKind::CognitiveX => "cogx",
            SlopeKind::CognitiveInterference => "cogic",
            SlopeKind::Broadcast => "bc",
            SlopeKind::Cooperative => "coop",
        }
    }

    pub fn from_short_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.short_name() == name)
    }
}

impl fmt::Display for SlopeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

/// How the free signaling parameters follow the SNR.
#[derive(Debug, Clone, PartialEq)]
pub enum PowerPolicy {
    /// `p11 = p12 = p1 / 2`, `p22 = N2` held fixed, `p21 = beta p2 − N2`.
    /// For the interference channel, `p11 = p1` and `p22 = N2`.
    PaperScaling { beta: f64 },
    /// Maximize the sum-rate over the sweep grid at every SNR. The
    /// interference channel searches `beta` directly.
    Free(SweepGrid),
}

impl Default for PowerPolicy {
    fn default() -> Self {
        PowerPolicy::PaperScaling { beta: 0.5 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlopeEstimate {
    /// Fitted multiplexing gain.
    pub slope: f64,
    /// Fitted offset, bits.
    pub intercept: f64,
    pub snr_grid_db: Vec<f64>,
    /// Largest absolute fit residual, bits.
    pub residual: f64,
    /// `(snr_db, max_sum_rate_bits)`.
    pub per_point_rates: Vec<(f64, f64)>,
}

/// 30 to 70 dB in 5 dB steps.
pub fn default_snr_grid() -> Vec<f64> {
    (0..=8).map(|i| 30.0 + 5.0 * i as f64).collect()
}

/// `1/2 log2(10^(snr_db / 10))`.
pub fn half_log2_snr(snr_db: f64) -> f64 {
    0.5 * core::f64::consts::LOG2_10 * snr_db / 10.0
}

fn point(channel: &ChannelParams, sig: SignalingParams) -> Result<f64> {
    let sig = with_optimal_gammas(channel, &sig).map_err(|e| e.at(&sig))?;
    let b = thm1_bounds(channel, &sig).map_err(|e| e.at(&sig))?;
    Ok(b.rx1_sum() + b.rx2_sum())
}

const BETA_LOG10_MIN: f64 = -10.0;

/// Best sum-rate of the interference configuration over `beta`: a coarse
/// scan in `log10 beta` followed by golden-section refinement.
fn interference_best_over_beta(channel: &ChannelParams) -> Result<f64> {
    let eval = |lb: f64| {
        let beta = libm::pow(10.0, lb).min(1.0);
        point(channel, SignalingParams::from_fractions(channel, 1.0, beta, 0.0))
    };
    let steps = 48;
    let mut best = (f64::NEG_INFINITY, 0.0);
    for i in 0..=steps {
        let lb = BETA_LOG10_MIN * (1.0 - i as f64 / steps as f64);
        let v = eval(lb)?;
        if v > best.0 {
            best = (v, lb);
        }
    }
    let h = -BETA_LOG10_MIN / steps as f64;
    let lo = (best.1 - h).max(BETA_LOG10_MIN);
    let hi = (best.1 + h).min(0.0);
    let refined = golden_section_max(|lb| eval(lb).unwrap_or(f64::NEG_INFINITY), lo, hi, 1e-9);
    Ok(best.0.max(refined.value))
}

/// Maximum sum-rate (bits) of `kind` at `snr_db`, with `template` supplying
/// gains and noise.
pub fn max_sum_rate(
    kind: SlopeKind,
    template: &ChannelParams,
    snr_db: f64,
    policy: &PowerPolicy,
) -> Result<f64> {
    let power = snr_to_power(snr_db, template.n1);
    let ch = template.with_power(power);
    match kind {
        SlopeKind::PointToPoint => {
            let link = ChannelParams {
                alpha12: 0.0,
                alpha21: 0.0,
                ..ch
            };
            let sig = SignalingParams {
                p11: link.p1,
                p12: 0.0,
                p21: 0.0,
                p22: 0.0,
                beta: 1.0,
                gamma1: 0.0,
                gamma2: 0.0,
            };
            point(&link, sig)
        }
        SlopeKind::Broadcast => {
            Ok(bc_outer_dual_mac(&ch, ch.p1 + ch.p2, crate::regions::DEFAULT_DUAL_MAC_POINTS)?
                .max_sum_rate())
        }
        SlopeKind::Cooperative => cooperative_outer(&ch, ch.p1 + ch.p2),
        SlopeKind::CognitiveX => match policy {
            PowerPolicy::PaperScaling { beta } => {
                let p22 = ch.n2;
                let p21 = beta * ch.p2 - p22;
                if p21 < 0.0 {
                    return Err(Error::BadInput(
                        "beta * P below N2: fixed p22 does not fit the power budget",
                    ));
                }
                let sig = SignalingParams {
                    p11: 0.5 * ch.p1,
                    p12: 0.5 * ch.p1,
                    p21,
                    p22,
                    beta: *beta,
                    gamma1: 0.0,
                    gamma2: 0.0,
                };
                point(&ch, sig)
            }
            PowerPolicy::Free(grid) => Ok(sweep_cognitive_x(&ch, grid)?.max_sum_rate()),
        },
        SlopeKind::CognitiveInterference => match policy {
            PowerPolicy::PaperScaling { .. } => {
                let beta = (ch.n2 / ch.p2).min(1.0);
                point(&ch, SignalingParams::from_fractions(&ch, 1.0, beta, 0.0))
            }
            PowerPolicy::Free(_) => interference_best_over_beta(&ch),
        },
    }
}

/// Least-squares slope of the maximum sum-rate of `kind` against
/// `1/2 log2(SNR)` over `snr_grid_db`.
pub fn estimate_slope(
    kind: SlopeKind,
    template: &ChannelParams,
    snr_grid_db: &[f64],
    policy: &PowerPolicy,
) -> Result<SlopeEstimate> {
    if snr_grid_db.len() < 2 {
        return Err(Error::BadInput("slope fit needs at least two SNR points"));
    }
    if snr_grid_db.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::BadInput("SNR grid must be strictly increasing"));
    }
    let mut rates = Vec::with_capacity(snr_grid_db.len());
    for &db in snr_grid_db {
        let r = max_sum_rate(kind, template, db, policy)?;
        if let Some(&(_, prev)) = rates.last() {
            if r < prev - 1e-9 {
                return Err(Error::NonMonotoneRate {
                    snr_db: db,
                    previous: prev,
                    current: r,
                });
            }
        }
        rates.push((db, r));
    }
    let (slope, intercept) = least_squares(
        rates.iter().map(|&(db, r)| (half_log2_snr(db), r)),
    );
    let residual = rates
        .iter()
        .map(|&(db, r)| (r - slope * half_log2_snr(db) - intercept).abs())
        .fold(0.0, f64::max);
    Ok(SlopeEstimate {
        slope,
        intercept,
        snr_grid_db: snr_grid_db.to_vec(),
        residual,
        per_point_rates: rates,
    })
}

fn least_squares(points: impl Iterator<Item = (f64, f64)> + Clone) -> (f64, f64) {
    let n = points.clone().count() as f64;
    let (sx, sy) = points.clone().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let (sxy, sxx) = points.fold((0.0, 0.0), |(a, b), (x, y)| {
        (a + (x - mx) * (y - my), b + (x - mx) * (x - mx))
    });
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Analytic multiplexing gains for `m` antennas at every node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceLines {
    pub interference: f64,
    /// `(floor(4m/3), 4m/3)` for the X-channel without side information.
    pub x_channel_range: (f64, f64),
    pub bc: f64,
    pub cognitive_x: f64,
}

impl ReferenceLines {
    /// `(label, slope)` pairs for plotting; the X-channel range gives two.
    pub fn entries(&self) -> [(&'static str, f64); 5] {
        [
            ("interference", self.interference),
            ("x_channel_low", self.x_channel_range.0),
            ("x_channel_high", self.x_channel_range.1),
            ("bc", self.bc),
            ("cognitive_x", self.cognitive_x),
        ]
    }
}

pub fn reference_lines(m: u32) -> Result<ReferenceLines> {
    if m == 0 {
        return Err(Error::BadInput("antenna count must be at least 1"));
    }
    let m = m as f64;
    Ok(ReferenceLines {
        interference: m,
        x_channel_range: (libm::floor(4.0 * m / 3.0), 4.0 * m / 3.0),
        bc: 2.0 * m,
        cognitive_x: 2.0 * m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        let r = reference_lines(1).unwrap();
        assert_eq!(r.bc, 2.0);
        assert_eq!(r.interference, 1.0);
        assert_eq!(r.x_channel_range, (1.0, 4.0 / 3.0));
        assert_eq!(reference_lines(3).unwrap().x_channel_range, (4.0, 4.0));
        assert_eq!(reference_lines(2).unwrap().bc, 4.0);
        assert!(reference_lines(0).is_err());
    }

    #[test]
    fn least_squares_exact_line() {
        let pts = [(0.0, 1.0), (1.0, 3.0), (2.0, 5.0)];
        let (s, i) = least_squares(pts.iter().copied());
        assert!((s - 2.0).abs() < 1e-15 && (i - 1.0).abs() < 1e-15);
    }

    #[test]
    fn grid_checks() {
        let ch = ChannelParams::default();
        let p = PowerPolicy::default();
        assert!(estimate_slope(SlopeKind::PointToPoint, &ch, &[30.0], &p).is_err());
        assert!(estimate_slope(SlopeKind::PointToPoint, &ch, &[40.0, 30.0], &p).is_err());
    }

    #[test]
    fn point_to_point_rate() {
        let ch = ChannelParams::default();
        let r = max_sum_rate(SlopeKind::PointToPoint, &ch, 30.0, &PowerPolicy::default()).unwrap();
        assert!((r - 0.5 * (1.0f64 + 1000.0).log2()).abs() < 1e-9);
    }

    #[test]
    fn paper_scaling_budget_check() {
        let ch = ChannelParams::default();
        let r = max_sum_rate(
            SlopeKind::CognitiveX,
            &ch,
            0.0,
            &PowerPolicy::PaperScaling { beta: 0.5 },
        );
        assert!(matches!(r, Err(Error::BadInput(_))));
    }
}
