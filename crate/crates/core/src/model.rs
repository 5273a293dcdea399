//! Channel and signaling parameters.
//!
//! The channel is the real additive Gaussian interference channel
//!
//! ```text
//! Y1 = X1 + alpha21 * X2 + N1
//! Y2 = alpha12 * X1 + X2 + N2
//! ```
//!
//! with per-transmitter average power constraints `p1`, `p2`. Transmitter 2
//! knows the encoding of message 11 non-causally and spends a fraction
//! `1 - beta` of its power reinforcing it.

use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Relative slack allowed on the per-transmitter power constraints.
pub const POWER_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    /// Cross-over gain from Tx 1 to Rx 2.
    pub alpha12: f64,
    /// Cross-over gain from Tx 2 to Rx 1.
    pub alpha21: f64,
    pub n1: f64,
    pub n2: f64,
    pub p1: f64,
    pub p2: f64,
    pub antennas: u32,
}

impl ChannelParams {
    /// Equal noise and equal power at both ends, single antenna.
    pub fn symmetric(alpha12: f64, alpha21: f64, noise: f64, power: f64) -> Self {
        ChannelParams {
            alpha12,
            alpha21,
            n1: noise,
            n2: noise,
            p1: power,
            p2: power,
            antennas: 1,
        }
    }

    /// Same channel with both power constraints set to `power`.
    pub fn with_power(self, power: f64) -> Self {
        ChannelParams {
            p1: power,
            p2: power,
            ..self
        }
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let finite = [
            self.alpha12,
            self.alpha21,
            self.n1,
            self.n2,
            self.p1,
            self.p2,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite {
            out.push(Violation::NotFinite);
        }
        if !(self.n1 > 0.0) || !(self.n2 > 0.0) {
            out.push(Violation::NoiseNotPositive);
        }
        if self.p1 < 0.0 || self.p2 < 0.0 {
            out.push(Violation::NegativePower);
        }
        if self.antennas != 1 {
            out.push(Violation::UnsupportedAntennas(self.antennas));
        }
        out
    }
}

impl Default for ChannelParams {
    /// Cross-over gains 0.8 / 0.2 with unit noise and unit power (0 dB).
    fn default() -> Self {
        ChannelParams::symmetric(0.8, 0.2, 1.0, 1.0)
    }
}

/// Power split and dirty-paper coding parameters of the Gaussian scheme.
///
/// `p11 + p12` is Tx 1's power, `p21 + p22` is the share `beta * p2` that
/// Tx 2 spends on its own messages; the rest reinforces `U11`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalingParams {
    pub p11: f64,
    pub p12: f64,
    pub p21: f64,
    pub p22: f64,
    pub beta: f64,
    pub gamma1: f64,
    pub gamma2: f64,
}

impl SignalingParams {
    /// Split that meets both power constraints with equality:
    /// `p12 = p1 - p11` and `p22 = beta * p2 - p21`. DPC parameters are zero.
    pub fn with_equality_split(channel: &ChannelParams, p11: f64, p21: f64, beta: f64) -> Self {
        SignalingParams {
            p11,
            p12: channel.p1 - p11,
            p21,
            p22: beta * channel.p2 - p21,
            beta,
            gamma1: 0.0,
            gamma2: 0.0,
        }
    }

    /// Equality split from fractions: `p11 = s * p1`, `p21 = t * beta * p2`.
    /// The endpoints `s = 1` and `t = 1` give exactly zero `p12` / `p22`.
    pub fn from_fractions(channel: &ChannelParams, s: f64, beta: f64, t: f64) -> Self {
        let p11 = if s >= 1.0 { channel.p1 } else { s * channel.p1 };
        let own = beta * channel.p2;
        let p21 = if t >= 1.0 { own } else { t * own };
        Self::with_equality_split(channel, p11, p21, beta)
    }

    pub fn with_gammas(self, gamma1: f64, gamma2: f64) -> Self {
        SignalingParams {
            gamma1,
            gamma2,
            ..self
        }
    }

    /// Amplitude `sqrt((1 - beta) p2 / p11)` with which Tx 2 resends `U11`.
    pub fn reinforcement(&self, channel: &ChannelParams) -> Result<f64> {
        if self.beta >= 1.0 {
            return Ok(0.0);
        }
        if !(self.p11 > 0.0) {
            return Err(Error::ThetaUndefined);
        }
        Ok(libm::sqrt((1.0 - self.beta) * channel.p2 / self.p11))
    }

    /// `theta = alpha21 * sqrt((1 - beta) p2 / p11)`: extra gain on `U11` at Rx 1.
    pub fn theta(&self, channel: &ChannelParams) -> Result<f64> {
        Ok(channel.alpha21 * self.reinforcement(channel)?)
    }

    /// Total gain on `U11` at Rx 2, `alpha12 + sqrt((1 - beta) p2 / p11)`.
    pub fn eta(&self, channel: &ChannelParams) -> Result<f64> {
        Ok(channel.alpha12 + self.reinforcement(channel)?)
    }
}

/// One violated parameter invariant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation {
    NotFinite,
    NoiseNotPositive,
    NegativePower,
    UnsupportedAntennas(u32),
    BetaOutOfRange(f64),
    NegativeComponentPower,
    Tx1PowerExceeded { used: f64, budget: f64 },
    Tx2PowerExceeded { used: f64, budget: f64 },
    ThetaUndefined,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotFinite => f.write_str("non-finite parameter"),
            Violation::NoiseNotPositive => f.write_str("noise variances must be positive"),
            Violation::NegativePower => f.write_str("power constraints must be nonnegative"),
            Violation::UnsupportedAntennas(m) => {
                write!(f, "antennas = {m}, only single-antenna nodes are supported")
            }
            Violation::BetaOutOfRange(b) => write!(f, "beta out of range (0, 1]: {b}"),
            Violation::NegativeComponentPower => f.write_str("component powers must be nonnegative"),
            Violation::Tx1PowerExceeded { used, budget } => {
                write!(f, "p11 + p12 = {used} exceeds p1 = {budget}")
            }
            Violation::Tx2PowerExceeded { used, budget } => {
                write!(f, "p21 + p22 = {used} exceeds beta * p2 = {budget}")
            }
            Violation::ThetaUndefined => f.write_str("theta undefined: p11 = 0 with beta < 1"),
        }
    }
}

/// Every invariant violated by the pair; empty means valid.
pub fn validate(channel: &ChannelParams, sig: &SignalingParams) -> Vec<Violation> {
    let mut out = channel.violations();
    let comps = [sig.p11, sig.p12, sig.p21, sig.p22];
    if !comps
        .iter()
        .chain([sig.beta, sig.gamma1, sig.gamma2].iter())
        .all(|v| v.is_finite())
    {
        if !out.contains(&Violation::NotFinite) {
            out.push(Violation::NotFinite);
        }
        return out;
    }
    if !(sig.beta > 0.0 && sig.beta <= 1.0) {
        out.push(Violation::BetaOutOfRange(sig.beta));
    }
    if comps.iter().any(|&p| p < 0.0) {
        out.push(Violation::NegativeComponentPower);
    }
    let used1 = sig.p11 + sig.p12;
    if used1 > channel.p1 * (1.0 + POWER_TOLERANCE) + f64::MIN_POSITIVE {
        out.push(Violation::Tx1PowerExceeded {
            used: used1,
            budget: channel.p1,
        });
    }
    let budget2 = sig.beta * channel.p2;
    let used2 = sig.p21 + sig.p22;
    if used2 > budget2 * (1.0 + POWER_TOLERANCE) + f64::MIN_POSITIVE {
        out.push(Violation::Tx2PowerExceeded {
            used: used2,
            budget: budget2,
        });
    }
    if sig.beta < 1.0 && !(sig.p11 > 0.0) {
        out.push(Violation::ThetaUndefined);
    }
    out
}

/// `Ok(())` if [`validate`] reports nothing, else the first violation.
pub fn ensure_valid(channel: &ChannelParams, sig: &SignalingParams) -> Result<()> {
    match validate(channel, sig).into_iter().next() {
        None => Ok(()),
        Some(v) => Err(Error::Invalid(v)),
    }
}

/// Rates in bits per real channel use, one per message.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RateTuple {
    pub r11: f64,
    pub r12: f64,
    pub r21: f64,
    pub r22: f64,
}

impl RateTuple {
    pub fn sum(&self) -> f64 {
        self.r11 + self.r12 + self.r21 + self.r22
    }

    pub fn is_nonnegative(&self) -> bool {
        self.r11 >= 0.0 && self.r12 >= 0.0 && self.r21 >= 0.0 && self.r22 >= 0.0
    }
}

/// `noise * 10^(snr_db / 10)`.
pub fn snr_to_power(snr_db: f64, noise: f64) -> f64 {
    noise * libm::pow(10.0, snr_db / 10.0)
}

/// Inverse of [`snr_to_power`].
pub fn power_to_snr(power: f64, noise: f64) -> f64 {
    10.0 * libm::log10(power / noise)
}
