//! Rate-region frontiers in the `(R1, R2)` plane, with `R1 = R11 + R21` and
//! `R2 = R12 + R22`.
//!
//! The achievable regions are traced by sweeping the power split of the
//! Gaussian scheme; the broadcast outer bound comes from the dual MAC under a
//! sum-power constraint.

use alloc::vec::Vec;
use core::fmt;

use crate::bounds::{choose_gammas, GammaPolicy};
use crate::linalg::eig2_symmetric;
use crate::model::{validate, ChannelParams, SignalingParams};
use crate::{Error, Result};

/// Tie tolerance of the Pareto filter.
pub const FRONTIER_TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    CognitiveX,
    CognitiveInterference,
    BcOuterDualMac,
    CooperativeOuter,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 4] = [
        ChannelKind::CognitiveX,
        ChannelKind::CognitiveInterference,
        ChannelKind::BcOuterDualMac,
        ChannelKind::CooperativeOuter,
    ];

    /// Short name used on the command line and in file names.
    pub fn short_name(self) -> &'static str {
        match self {
            ChannelKind::CognitiveX => "cogx",
            ChannelKind::CognitiveInterference => "cogic",
            ChannelKind::BcOuterDualMac => "bc",
            ChannelKind::CooperativeOuter => "coop",
        }
    }

    pub fn from_short_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.short_name() == name)
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

/// `n` values `min^(k/(n-1))`, ascending from `min` to exactly 1.
pub fn log_spaced_betas(n: usize, min: f64) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![1.0],
        _ => {
            let mut v: Vec<f64> = (0..n)
                .map(|k| {
                    let e = (n - 1 - k) as f64 / (n - 1) as f64;
                    if k == n - 1 {
                        1.0
                    } else {
                        libm::pow(min, e)
                    }
                })
                .collect();
            v.sort_by(|a, b| a.total_cmp(b));
            v
        }
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| {
        if n == 1 {
            lo
        } else if i == n - 1 {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    })
}

fn logspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (libm::log(lo), libm::log(hi));
    linspace(a, b, n)
        .enumerate()
        .map(move |(i, x)| if i == n - 1 { hi } else if i == 0 { lo } else { libm::exp(x) })
}

/// Sweep resolution of the achievable-region scans.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    /// Points per power-split dimension (`p11 / p1` and `p21 / (beta p2)`),
    /// both endpoints included.
    pub split_points: usize,
    /// Values of `beta`; must lie in `(0, 1]`.
    pub beta_values: Vec<f64>,
    /// Add a finer local grid around the best sum-rate point.
    pub refine: bool,
    pub gamma_policy: GammaPolicy,
}

impl SweepGrid {
    pub const DEFAULT_SPLIT_POINTS: usize = 33;
    pub const DEFAULT_BETA_POINTS: usize = 17;
    pub const DEFAULT_BETA_MIN: f64 = 1e-8;
    const REFINE_POINTS: usize = 9;

    /// `split_points` per split dimension with `split_points.div_ceil(2)`
    /// log-spaced beta values.
    pub fn with_resolution(split_points: usize) -> Self {
        SweepGrid {
            split_points: split_points.max(2),
            beta_values: log_spaced_betas(split_points.div_ceil(2), Self::DEFAULT_BETA_MIN),
            refine: true,
            gamma_policy: GammaPolicy::Heuristic,
        }
    }

    fn check(&self) -> Result<()> {
        if self.split_points < 2 {
            return Err(Error::BadInput("split_points must be at least 2"));
        }
        if self.beta_values.is_empty() {
            return Err(Error::BadInput("beta grid is empty"));
        }
        if self.beta_values.iter().any(|&b| !(b > 0.0 && b <= 1.0)) {
            return Err(Error::BadInput("beta grid values must lie in (0, 1]"));
        }
        Ok(())
    }

    fn sorted_betas(&self) -> Vec<f64> {
        let mut b = self.beta_values.clone();
        b.sort_by(|x, y| x.total_cmp(y));
        b.dedup();
        b
    }
}

impl Default for SweepGrid {
    fn default() -> Self {
        SweepGrid {
            split_points: Self::DEFAULT_SPLIT_POINTS,
            beta_values: log_spaced_betas(Self::DEFAULT_BETA_POINTS, Self::DEFAULT_BETA_MIN),
            refine: true,
            gamma_policy: GammaPolicy::Heuristic,
        }
    }
}

/// Description of how a frontier was produced.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepConfig {
    Signaling(SweepGrid),
    DualMac { total_power: f64, points: usize },
    WaterFilling { total_power: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePair {
    pub r1: f64,
    pub r2: f64,
}

impl RatePair {
    pub fn sum(&self) -> f64 {
        self.r1 + self.r2
    }

    pub fn weakly_dominates(&self, other: &RatePair, tol: f64) -> bool {
        self.r1 >= other.r1 - tol && self.r2 >= other.r2 - tol
    }
}

/// Strict Pareto frontier of `points`: ascending `r1`, strictly decreasing
/// `r2`. Points within [`FRONTIER_TIE_TOLERANCE`] of a kept point in `r2`
/// are dropped in favour of the one with the larger `r1`.
pub fn pareto_frontier(mut points: Vec<RatePair>) -> Vec<RatePair> {
    points.retain(|p| p.r1.is_finite() && p.r2.is_finite());
    points.sort_by(|a, b| b.r1.total_cmp(&a.r1).then(b.r2.total_cmp(&a.r2)));
    let mut out: Vec<RatePair> = Vec::new();
    for p in points {
        match out.last() {
            Some(last) if p.r2 <= last.r2 + FRONTIER_TIE_TOLERANCE => {}
            _ => out.push(p),
        }
    }
    out.reverse();
    out
}

/// Vertices of the upper concave envelope of a Pareto frontier (ascending
/// `r1`). Points on or below a chord are dropped.
pub fn concave_hull(frontier: &[RatePair]) -> Vec<RatePair> {
    let mut hull: Vec<RatePair> = Vec::with_capacity(frontier.len());
    for &p in frontier {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // b is not above the chord a-p
            let cross = (b.r1 - a.r1) * (p.r2 - a.r2) - (b.r2 - a.r2) * (p.r1 - a.r1);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionFrontier {
    pub points: Vec<RatePair>,
    pub config: SweepConfig,
    pub channel_kind: ChannelKind,
}

impl RegionFrontier {
    /// Frontier point with the largest `r1 + r2` (first on ties).
    pub fn max_sum_point(&self) -> RatePair {
        self.points
            .iter()
            .copied()
            .fold(None::<RatePair>, |best, p| match best {
                Some(b) if b.sum() >= p.sum() => Some(b),
                _ => Some(p),
            })
            .unwrap_or(RatePair { r1: 0.0, r2: 0.0 })
    }

    pub fn max_sum_rate(&self) -> f64 {
        self.max_sum_point().sum()
    }

    pub fn max_r1(&self) -> f64 {
        self.points.last().map_or(0.0, |p| p.r1)
    }

    pub fn max_r2(&self) -> f64 {
        self.points.first().map_or(0.0, |p| p.r2)
    }

    /// Regions whose frontier points are vertices of a convex region, so the
    /// segments between consecutive points are achievable by time sharing.
    pub fn is_convex_hull(&self) -> bool {
        matches!(
            self.channel_kind,
            ChannelKind::BcOuterDualMac | ChannelKind::CooperativeOuter
        )
    }

    /// Largest `r2` in the region with `r1 ≥ r1_min`: among frontier points,
    /// or on the hull segments for convex regions.
    pub fn r2_at(&self, r1_min: f64) -> Option<f64> {
        if self.is_convex_hull() {
            return self.hull_r2(r1_min);
        }
        self.points
            .iter()
            .filter(|p| p.r1 >= r1_min)
            .map(|p| p.r2)
            .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))))
    }

    fn hull_r2(&self, r1: f64) -> Option<f64> {
        let p = &self.points;
        let first = p.first()?;
        if r1 <= first.r1 {
            return Some(first.r2);
        }
        let i = p.iter().position(|q| q.r1 >= r1)?;
        let (a, b) = (p[i - 1], p[i]);
        let w = (r1 - a.r1) / (b.r1 - a.r1);
        Some(a.r2 + w * (b.r2 - a.r2))
    }

    /// Whether `p` lies in the region within `tol`: weakly dominated by a
    /// frontier point, or for convex regions by a point on a hull segment.
    pub fn covers(&self, p: &RatePair, tol: f64) -> bool {
        if self.is_convex_hull() {
            return match self.hull_r2((p.r1 - tol).max(0.0).min(self.max_r1())) {
                Some(r2) => p.r1 <= self.max_r1() + tol && r2 >= p.r2 - tol,
                None => false,
            };
        }
        self.points.iter().any(|q| q.weakly_dominates(p, tol))
    }

    /// First point of `inner` not covered by `self`.
    pub fn first_uncovered(&self, inner: &RegionFrontier, tol: f64) -> Option<RatePair> {
        inner.points.iter().copied().find(|p| !self.covers(p, tol))
    }

    /// Local tangent slope `dR2/dR1` at each frontier point (central
    /// differences, one-sided at the ends). A single point has no slope.
    pub fn tangent_slopes(&self) -> Vec<f64> {
        let p = &self.points;
        let n = p.len();
        if n < 2 {
            return Vec::new();
        }
        (0..n)
            .map(|i| {
                let (a, b) = (i.saturating_sub(1), (i + 1).min(n - 1));
                (p[b].r2 - p[a].r2) / (p[b].r1 - p[a].r1)
            })
            .collect()
    }
}

fn evaluate(
    channel: &ChannelParams,
    sig: &SignalingParams,
    policy: GammaPolicy,
) -> Result<Option<(RatePair, f64)>> {
    if !validate(channel, sig).is_empty() {
        return Ok(None);
    }
    let (_, b) = choose_gammas(channel, sig, policy).map_err(|e| e.at(sig))?;
    let pair = RatePair {
        r1: b.rx1_sum(),
        r2: b.rx2_sum(),
    };
    Ok(Some((pair, pair.sum())))
}

fn neighbours(values: &[f64], i: usize) -> (f64, f64) {
    (values[i.saturating_sub(1)], values[(i + 1).min(values.len() - 1)])
}

/// Achievable `(R1, R2)` frontier of the four-message cognitive X scheme.
///
/// Sweeps `p11 / p1`, `beta` and `p21 / (beta p2)` over `grid` (so `p22` is
/// free), with DPC parameters from `grid.gamma_policy`. Grid points that fail
/// validation are skipped. The interference-channel points of
/// [`sweep_cognitive_ic`] are special cases of the scheme and are included.
pub fn sweep_cognitive_x(channel: &ChannelParams, grid: &SweepGrid) -> Result<RegionFrontier> {
    grid.check()?;
    let splits: Vec<f64> = linspace(0.0, 1.0, grid.split_points).collect();
    let betas = grid.sorted_betas();
    let mut pairs = Vec::new();
    let mut best: Option<(f64, [usize; 3])> = None;
    for (i, &s) in splits.iter().enumerate() {
        for (j, &beta) in betas.iter().enumerate() {
            for (k, &t) in splits.iter().enumerate() {
                let sig = SignalingParams::from_fractions(channel, s, beta, t);
                if let Some((pair, sum)) = evaluate(channel, &sig, grid.gamma_policy)? {
                    pairs.push(pair);
                    if best.is_none_or(|(b, _)| sum > b) {
                        best = Some((sum, [i, j, k]));
                    }
                }
            }
        }
    }
    let Some((_, [i, j, k])) = best else {
        return Err(Error::EmptyFrontier);
    };
    if grid.refine {
        let (s_lo, s_hi) = neighbours(&splits, i);
        let (b_lo, b_hi) = neighbours(&betas, j);
        let (t_lo, t_hi) = neighbours(&splits, k);
        let n = SweepGrid::REFINE_POINTS;
        for s in linspace(s_lo, s_hi, n) {
            for beta in logspace(b_lo, b_hi, n) {
                for t in linspace(t_lo, t_hi, n) {
                    let sig = SignalingParams::from_fractions(channel, s, beta, t);
                    if let Some((pair, _)) = evaluate(channel, &sig, grid.gamma_policy)? {
                        pairs.push(pair);
                    }
                }
            }
        }
    }
    pairs.extend(sweep_cognitive_ic(channel, grid)?.points);
    Ok(RegionFrontier {
        points: pareto_frontier(pairs),
        config: SweepConfig::Signaling(grid.clone()),
        channel_kind: ChannelKind::CognitiveX,
    })
}

/// Achievable frontier of the cognitive interference channel: the same scheme
/// with the cross-over messages removed (`p12 = p21 = 0`), so `R1 = R11` and
/// `R2 = R22`. Only `beta` is swept; Tx 1 puts all its power on `U11`.
///
/// The curve is one-dimensional, so each interval of the grid's `beta` values
/// is subdivided into `split_points - 1` log-spaced steps.
pub fn sweep_cognitive_ic(channel: &ChannelParams, grid: &SweepGrid) -> Result<RegionFrontier> {
    grid.check()?;
    let coarse = grid.sorted_betas();
    let mut betas = alloc::vec![coarse[0]];
    for w in coarse.windows(2) {
        betas.extend(logspace(w[0], w[1], grid.split_points).skip(1));
    }
    let point = |beta: f64| SignalingParams::from_fractions(channel, 1.0, beta, 0.0);
    let mut pairs = Vec::new();
    let mut best: Option<(f64, usize)> = None;
    for (j, &beta) in betas.iter().enumerate() {
        if let Some((pair, sum)) = evaluate(channel, &point(beta), grid.gamma_policy)? {
            pairs.push(pair);
            if best.is_none_or(|(b, _)| sum > b) {
                best = Some((sum, j));
            }
        }
    }
    let Some((_, j)) = best else {
        return Err(Error::EmptyFrontier);
    };
    if grid.refine {
        let (lo, hi) = neighbours(&betas, j);
        for beta in logspace(lo, hi, 2 * SweepGrid::REFINE_POINTS - 1) {
            if let Some((pair, _)) = evaluate(channel, &point(beta), grid.gamma_policy)? {
                pairs.push(pair);
            }
        }
    }
    Ok(RegionFrontier {
        points: pareto_frontier(pairs),
        config: SweepConfig::Signaling(grid.clone()),
        channel_kind: ChannelKind::CognitiveInterference,
    })
}

/// Noise-normalised receive vectors `h1 = (1, α21)/√N1`, `h2 = (α12, 1)/√N2`.
fn receive_vectors(channel: &ChannelParams) -> ([f64; 2], [f64; 2]) {
    let s1 = 1.0 / libm::sqrt(channel.n1);
    let s2 = 1.0 / libm::sqrt(channel.n2);
    (
        [s1, channel.alpha21 * s1],
        [channel.alpha12 * s2, s2],
    )
}

fn check_channel(channel: &ChannelParams) -> Result<()> {
    match channel.violations().into_iter().next() {
        None => Ok(()),
        Some(v) => Err(Error::Invalid(v)),
    }
}

/// Default number of dual-MAC power splits.
pub const DEFAULT_DUAL_MAC_POINTS: usize = 1025;

/// Broadcast-channel outer bound: Tx 1 and Tx 2 act as one two-antenna
/// transmitter with sum power `total_power` serving the two single-antenna
/// receivers.
///
/// Evaluated on the dual MAC: for each split `q1 + q2 = total_power` the
/// pentagon corners under both successive-decoding orders are collected. The
/// union of the pentagons is convex, so the returned points are the vertices
/// of the concave envelope of the corners' Pareto frontier; points on the
/// segments between them are in the region.
pub fn bc_outer_dual_mac(
    channel: &ChannelParams,
    total_power: f64,
    points: usize,
) -> Result<RegionFrontier> {
    check_channel(channel)?;
    if !(total_power >= 0.0) || !total_power.is_finite() {
        return Err(Error::BadInput("total power must be finite and nonnegative"));
    }
    let points = points.max(2);
    let (h1, h2) = receive_vectors(channel);
    let g1 = h1[0] * h1[0] + h1[1] * h1[1];
    let g2 = h2[0] * h2[0] + h2[1] * h2[1];
    let cross = h1[0] * h2[0] + h1[1] * h2[1];
    let gram_det = g1 * g2 - cross * cross;
    let mut pairs = Vec::with_capacity(2 * points);
    for q1 in linspace(0.0, total_power, points) {
        let q2 = (total_power - q1).max(0.0);
        let sum = 0.5 * libm::log2(1.0 + q1 * g1 + q2 * g2 + q1 * q2 * gram_det);
        let alone1 = 0.5 * libm::log2(1.0 + q1 * g1);
        let alone2 = 0.5 * libm::log2(1.0 + q2 * g2);
        pairs.push(RatePair {
            r1: alone1,
            r2: (sum - alone1).max(0.0),
        });
        pairs.push(RatePair {
            r1: (sum - alone2).max(0.0),
            r2: alone2,
        });
    }
    Ok(RegionFrontier {
        points: concave_hull(&pareto_frontier(pairs)),
        config: SweepConfig::DualMac {
            total_power,
            points,
        },
        channel_kind: ChannelKind::BcOuterDualMac,
    })
}

/// Sum capacity of the fully cooperative 2×2 link `H = [[1, α21], [α12, 1]]`
/// under `tr Q ≤ total_power`, by water-filling over the singular values of
/// the noise-normalised channel.
pub fn cooperative_outer(channel: &ChannelParams, total_power: f64) -> Result<f64> {
    check_channel(channel)?;
    if !(total_power >= 0.0) || !total_power.is_finite() {
        return Err(Error::BadInput("total power must be finite and nonnegative"));
    }
    let (h1, h2) = receive_vectors(channel);
    // HᵀH for H with rows h1, h2
    let a = h1[0] * h1[0] + h2[0] * h2[0];
    let b = h1[0] * h1[1] + h2[0] * h2[1];
    let c = h1[1] * h1[1] + h2[1] * h2[1];
    let (weak, strong) = eig2_symmetric(a, b, c);
    Ok(water_fill(&[strong, weak], total_power))
}

/// The cooperative bound as a region: the sum-rate line
/// `R1 + R2 = cooperative_outer(..)`.
pub fn cooperative_frontier(channel: &ChannelParams, total_power: f64) -> Result<RegionFrontier> {
    let c = cooperative_outer(channel, total_power)?;
    Ok(RegionFrontier {
        points: pareto_frontier(alloc::vec![RatePair { r1: 0.0, r2: c }, RatePair { r1: c, r2: 0.0 }]),
        config: SweepConfig::WaterFilling { total_power },
        channel_kind: ChannelKind::CooperativeOuter,
    })
}

/// `max Σ ½ log2(1 + g_i p_i)` subject to `Σ p_i ≤ power`, gains descending.
fn water_fill(gains: &[f64], power: f64) -> f64 {
    let scale = gains.first().copied().unwrap_or(0.0).max(1.0);
    let usable: Vec<f64> = gains
        .iter()
        .copied()
        .filter(|&g| g > 1e-14 * scale)
        .collect();
    for active in (1..=usable.len()).rev() {
        let inv_sum: f64 = usable[..active].iter().map(|g| 1.0 / g).sum();
        let level = (power + inv_sum) / active as f64;
        if level - 1.0 / usable[active - 1] >= 0.0 {
            return usable[..active]
                .iter()
                .map(|g| 0.5 * libm::log2(level * g))
                .sum();
        }
    }
    0.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(r1: f64, r2: f64) -> RatePair {
        RatePair { r1, r2 }
    }

    fn hl(x: f64) -> f64 {
        0.5 * (1.0 + x).log2()
    }

    #[test]
    fn pareto_filter_orders_and_drops_dominated() {
        let f = pareto_frontier(alloc::vec![
            pair(1.0, 1.0),
            pair(0.5, 2.0),
            pair(0.4, 1.5),
            pair(2.0, 0.0),
            pair(1.0, 0.5),
            pair(2.0, 1e-13),
        ]);
        assert_eq!(f, alloc::vec![pair(0.5, 2.0), pair(1.0, 1.0), pair(2.0, 1e-13)]);
    }

    #[test]
    fn pareto_ties_prefer_larger_r1() {
        let f = pareto_frontier(alloc::vec![pair(1.0, 1.0), pair(1.5, 1.0 - 1e-13)]);
        assert_eq!(f, alloc::vec![pair(1.5, 1.0 - 1e-13)]);
    }

    #[test]
    fn beta_grid_shape() {
        let b = log_spaced_betas(17, 1e-8);
        assert_eq!(b.len(), 17);
        assert_eq!(*b.last().unwrap(), 1.0);
        assert!((b[0] - 1e-8).abs() < 1e-20);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn zero_power_gives_origin() {
        let ch = ChannelParams::symmetric(0.8, 0.2, 1.0, 0.0);
        for f in [
            sweep_cognitive_x(&ch, &SweepGrid::default()).unwrap(),
            sweep_cognitive_ic(&ch, &SweepGrid::default()).unwrap(),
        ] {
            assert_eq!(f.points, alloc::vec![pair(0.0, 0.0)]);
        }
    }

    #[test]
    fn decoupled_channels_reach_the_corner() {
        let ch = ChannelParams {
            p1: 10.0,
            p2: 4.0,
            ..ChannelParams::symmetric(0.0, 0.0, 1.0, 0.0)
        };
        let corner = pair(hl(10.0), hl(4.0));
        let grid = SweepGrid::with_resolution(9);
        for f in [
            sweep_cognitive_x(&ch, &grid).unwrap(),
            sweep_cognitive_ic(&ch, &grid).unwrap(),
        ] {
            assert!(f.covers(&corner, 1e-12), "{:?}", f.points);
            assert!((f.max_sum_rate() - corner.sum()).abs() < 1e-12);
        }
    }

    #[test]
    fn bc_orthogonal_users() {
        let ch = ChannelParams::symmetric(0.0, 0.0, 1.0, 5.0);
        let f = bc_outer_dual_mac(&ch, 10.0, 11).unwrap();
        // q1 = 4, q2 = 6 is on the grid
        assert!(f.covers(&pair(hl(4.0), hl(6.0)), 1e-12));
        assert!((f.max_sum_rate() - 2.0 * hl(5.0)).abs() < 1e-12);
        assert!((f.max_r1() - hl(10.0)).abs() < 1e-12);
    }

    #[test]
    fn bc_single_user_end() {
        let ch = ChannelParams::symmetric(0.8, 0.2, 1.0, 5.0);
        let f = bc_outer_dual_mac(&ch, 10.0, 65).unwrap();
        let last = *f.points.last().unwrap();
        assert_eq!(last.r2, 0.0);
        assert!((last.r1 - hl(1.04 * 10.0)).abs() < 1e-12);
    }

    #[test]
    fn cooperative_parallel_and_rank_one() {
        let ch = ChannelParams::symmetric(0.0, 0.0, 1.0, 7.0);
        let c = cooperative_outer(&ch, 14.0).unwrap();
        assert!((c - 2.0 * hl(7.0)).abs() < 1e-12);

        // α12 α21 = 1 with α12 = α21 = 1: H = [[1,1],[1,1]], one mode of gain 4
        let ch = ChannelParams::symmetric(1.0, 1.0, 1.0, 7.0);
        let c = cooperative_outer(&ch, 14.0).unwrap();
        assert!((c - hl(4.0 * 14.0)).abs() < 1e-12);
    }

    #[test]
    fn cooperative_line() {
        let ch = ChannelParams::symmetric(0.8, 0.2, 1.0, 10.0);
        let f = cooperative_frontier(&ch, 20.0).unwrap();
        let c = cooperative_outer(&ch, 20.0).unwrap();
        assert_eq!(f.points, alloc::vec![pair(0.0, c), pair(c, 0.0)]);
        assert!(f.covers(&pair(0.5 * c, 0.5 * c), 1e-12));
        let zero = cooperative_frontier(&ch, 0.0).unwrap();
        assert_eq!(zero.points, alloc::vec![pair(0.0, 0.0)]);
    }

    #[test]
    fn water_fill_drops_weak_mode() {
        // level would sit below 1/0.01, so only the strong mode is active
        let r = water_fill(&[1.0, 0.01], 1.0);
        assert!((r - hl(1.0)).abs() < 1e-15);
    }

    #[test]
    fn tangent_slopes_of_line() {
        let f = RegionFrontier {
            points: alloc::vec![pair(0.0, 2.0), pair(1.0, 1.0), pair(2.0, 0.0)],
            config: SweepConfig::DualMac {
                total_power: 0.0,
                points: 2,
            },
            channel_kind: ChannelKind::CognitiveX,
        };
        assert_eq!(f.tangent_slopes(), alloc::vec![-1.0, -1.0, -1.0]);
        assert_eq!(f.r2_at(0.5), Some(1.0));
        assert_eq!(f.r2_at(2.5), None);
        assert!(!f.covers(&pair(0.5, 1.5), 1e-12));

        let hull = RegionFrontier {
            channel_kind: ChannelKind::BcOuterDualMac,
            ..f
        };
        assert_eq!(hull.r2_at(0.5), Some(1.5));
        assert!(hull.covers(&pair(0.5, 1.5), 1e-12));
        assert!(!hull.covers(&pair(0.5, 1.6), 1e-12));
        assert!(!hull.covers(&pair(2.1, 0.0), 1e-12));
    }

    #[test]
    fn concave_hull_drops_dents() {
        let f = [pair(0.0, 2.0), pair(0.9, 1.0), pair(1.0, 1.5), pair(2.0, 0.0)];
        assert_eq!(
            concave_hull(&f),
            alloc::vec![pair(0.0, 2.0), pair(1.0, 1.5), pair(2.0, 0.0)]
        );
    }

    #[test]
    fn bc_contains_sum_rate_face() {
        let ch = ChannelParams::symmetric(0.8, 0.2, 1.0, 1e5);
        let f = bc_outer_dual_mac(&ch, 2e5, 1025).unwrap();
        // interior of the q1 = q2 pentagon's dominant face
        let (g1, g2, det) = (1.04f64, 1.64f64, 1.04 * 1.64 - 1.0);
        let sum = 0.5 * (1.0 + 1e5 * (g1 + g2) + 1e10 * det).log2();
        let lo = sum - hl(1.64e5);
        let mid = pair(lo + 0.3, sum - lo - 0.3);
        assert!(f.covers(&mid, 1e-9));
    }

    #[test]
    fn empty_grid_rejected() {
        let ch = ChannelParams::default();
        let grid = SweepGrid {
            beta_values: alloc::vec![],
            ..SweepGrid::default()
        };
        assert!(matches!(
            sweep_cognitive_x(&ch, &grid),
            Err(Error::BadInput(_))
        ));
    }

    #[test]
    fn all_invalid_points_is_empty_frontier() {
        // p1 = 0 forces p11 = 0, which needs beta = 1; the grid has none
        let ch = ChannelParams {
            p1: 0.0,
            ..ChannelParams::symmetric(0.8, 0.2, 1.0, 1.0)
        };
        let grid = SweepGrid {
            beta_values: alloc::vec![0.5],
            ..SweepGrid::with_resolution(5)
        };
        assert_eq!(sweep_cognitive_x(&ch, &grid), Err(Error::EmptyFrontier));
    }

    #[test]
    fn kind_names_roundtrip() {
        for k in ChannelKind::ALL {
            assert_eq!(ChannelKind::from_short_name(k.short_name()), Some(k));
        }
        assert_eq!(ChannelKind::from_short_name("x"), None);
    }
}
