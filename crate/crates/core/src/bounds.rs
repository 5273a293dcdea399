//! The six rate constraints of the cognitive X-channel scheme and their
//! closed forms.
//!
//! At Rx 1 the messages 11 and 21 form a multiple-access channel in which
//! `M11` is dirty-paper coded against `M12`; at Rx 2 the pair 12 and 22 does
//! the same, with `M22` coded against `(M11, M21)`:
//!
//! ```text
//! R11       ≤ I(M11; Y1 | M21) − I(M11; M12)
//! R21       ≤ I(M21; Y1 | M11)
//! R11 + R21 ≤ I(M11, M21; Y1) − I(M11; M12)
//! R12       ≤ I(M12; Y2 | M22)
//! R22       ≤ I(M22; Y2 | M12) − I(M22; M11, M21)
//! R12 + R22 ≤ I(M12, M22; Y2) − I(M22; M11, M21)
//! ```

use crate::gauss::{
    assemble, conditional_mutual_information, Component, ComponentSet, JointCovariance,
};
use crate::model::{ensure_valid, ChannelParams, RateTuple, SignalingParams};
use crate::optim::nelder_mead_max;
use crate::{Error, Result};

use Component::*;

/// Bound values before clamping at zero; penalised bounds may be negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawBounds {
    pub b11: f64,
    pub b21: f64,
    pub b_sum1: f64,
    pub b12: f64,
    pub b22: f64,
    pub b_sum2: f64,
}

impl RawBounds {
    pub fn clamped(&self) -> RateBounds {
        RateBounds {
            b11: self.b11.max(0.0),
            b21: self.b21.max(0.0),
            b_sum1: self.b_sum1.max(0.0),
            b12: self.b12.max(0.0),
            b22: self.b22.max(0.0),
            b_sum2: self.b_sum2.max(0.0),
        }
    }
}

/// The six constraints, each clamped at zero.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RateBounds {
    pub b11: f64,
    pub b21: f64,
    pub b_sum1: f64,
    pub b12: f64,
    pub b22: f64,
    pub b_sum2: f64,
}

impl RateBounds {
    /// Largest `R11 + R21` in the Rx-1 polytope.
    pub fn rx1_sum(&self) -> f64 {
        self.b_sum1.min(self.b11 + self.b21)
    }

    /// Largest `R12 + R22` in the Rx-2 polytope.
    pub fn rx2_sum(&self) -> f64 {
        self.b_sum2.min(self.b12 + self.b22)
    }

    /// A vertex of each receiver's polytope achieving [`Self::rx1_sum`] and
    /// [`Self::rx2_sum`], with the self-coded message getting the most rate.
    pub fn corner(&self) -> RateTuple {
        let s1 = self.rx1_sum();
        let r11 = self.b11.min(s1);
        let s2 = self.rx2_sum();
        let r22 = self.b22.min(s2);
        RateTuple {
            r11,
            r21: (s1 - r11).max(0.0),
            r12: (s2 - r22).max(0.0),
            r22,
        }
    }

    pub fn admits(&self, r: &RateTuple) -> bool {
        let tol = 1e-12;
        r.is_nonnegative()
            && r.r11 <= self.b11 + tol
            && r.r21 <= self.b21 + tol
            && r.r11 + r.r21 <= self.b_sum1 + tol
            && r.r12 <= self.b12 + tol
            && r.r22 <= self.b22 + tol
            && r.r12 + r.r22 <= self.b_sum2 + tol
    }
}

/// `I(A; B | C)` with constant components removed first. A constant carries
/// no information, so a term whose `A` or `B` is entirely constant is zero.
fn info(
    cov: &JointCovariance,
    constants: ComponentSet,
    a: impl Into<ComponentSet>,
    b: impl Into<ComponentSet>,
    c: impl Into<ComponentSet>,
) -> Result<f64> {
    let a = a.into().without(constants);
    let b = b.into().without(constants);
    let c = c.into().without(constants);
    if a.is_empty() || b.is_empty() {
        return Ok(0.0);
    }
    conditional_mutual_information(cov, a, b, c)
}

/// Evaluates the six bounds on the assembled covariance without clamping.
pub fn thm1_bounds_raw(channel: &ChannelParams, sig: &SignalingParams) -> Result<RawBounds> {
    let (_, cov) = assemble(channel, sig)?;
    bounds_from_covariance(&cov)
}

/// The six bounds of an already assembled covariance.
pub fn bounds_from_covariance(cov: &JointCovariance) -> Result<RawBounds> {
    let k = cov.constants();
    let none = ComponentSet::EMPTY;
    let pen1 = info(cov, k, M11, M12, none)?;
    let pen2 = info(cov, k, M22, M11 | M21, none)?;
    Ok(RawBounds {
        b11: info(cov, k, M11, Y1, M21)? - pen1,
        b21: info(cov, k, M21, Y1, M11)?,
        b_sum1: info(cov, k, M11 | M21, Y1, none)? - pen1,
        b12: info(cov, k, M12, Y2, M22)?,
        b22: info(cov, k, M22, Y2, M12)? - pen2,
        b_sum2: info(cov, k, M12 | M22, Y2, none)? - pen2,
    })
}

pub fn thm1_bounds(channel: &ChannelParams, sig: &SignalingParams) -> Result<RateBounds> {
    Ok(thm1_bounds_raw(channel, sig)?.clamped())
}

fn half_log2(arg: f64) -> Result<f64> {
    if arg > 0.0 && arg.is_finite() {
        Ok(0.5 * libm::log2(arg))
    } else {
        Err(Error::Domain(arg))
    }
}

/// Sum-rate bound at Rx 1 in closed form,
///
/// ```text
///            P11 (P11(1+θ)² + P12 + α21²(P21+P22) + N1)
/// ½ log2 ──────────────────────────────────────────────────────────────────
///        γ1² P12 (P11(1+θ)² + α21²P22 + N1) − 2γ1(1+θ) P11 P12 + P11(P12 + α21²P22 + N1)
/// ```
pub fn r1_closed_form(channel: &ChannelParams, sig: &SignalingParams) -> Result<f64> {
    ensure_valid(channel, sig)?;
    let theta = sig.theta(channel)?;
    let a2 = channel.alpha21 * channel.alpha21;
    let (p11, p12, p21, p22, g1) = (sig.p11, sig.p12, sig.p21, sig.p22, sig.gamma1);
    let strong = p11 * (1.0 + theta) * (1.0 + theta);
    let residual = a2 * p22 + channel.n1;
    let num = p11 * (strong + p12 + a2 * (p21 + p22) + channel.n1);
    let den = g1 * g1 * p12 * (strong + residual) - 2.0 * g1 * (1.0 + theta) * p11 * p12
        + p11 * (p12 + residual);
    half_log2(num / den)
}

/// Denominator of the Rx-2 closed form, a quadratic in `γ2`:
/// `(P11 + γ1²P12)·[γ2² S (P22+N2) − 2γ2 P22 S + P22 (S + N2)]`, `S = η²P11 + P21`.
pub fn r2_denominator(channel: &ChannelParams, sig: &SignalingParams) -> Result<f64> {
    let eta = sig.eta(channel)?;
    let s = eta * eta * sig.p11 + sig.p21;
    let (p22, n2, g2) = (sig.p22, channel.n2, sig.gamma2);
    Ok((sig.p11 + sig.gamma1 * sig.gamma1 * sig.p12)
        * (g2 * g2 * s * (p22 + n2) - 2.0 * g2 * p22 * s + p22 * (s + n2)))
}

/// Sum-rate bound at Rx 2 in closed form,
///
/// ```text
///        (η²P11 + α12²P12 + P21 + P22 + N2)(γ1²P12(P22 + γ2²η²P11) + P11 P22)
/// ½ log2 ─────────────────────────────────────────────────────────────────────
///                                 r2_denominator
/// ```
pub fn r2_closed_form(channel: &ChannelParams, sig: &SignalingParams) -> Result<f64> {
    ensure_valid(channel, sig)?;
    let eta = sig.eta(channel)?;
    let (p11, p12, p21, p22) = (sig.p11, sig.p12, sig.p21, sig.p22);
    let (g1, g2) = (sig.gamma1, sig.gamma2);
    let var_y2 = eta * eta * p11 + channel.alpha12 * channel.alpha12 * p12 + p21 + p22 + channel.n2;
    let num = var_y2 * (g1 * g1 * p12 * (p22 + g2 * g2 * eta * eta * p11) + p11 * p22);
    half_log2(num / r2_denominator(channel, sig)?)
}

/// `γ1 = P11(1+θ) / (P11(1+θ)² + α21²P22 + N1)`, the maximizer of
/// [`r1_closed_form`] over `γ1`. The `gamma1` field of `sig` is ignored.
pub fn gamma1_star(channel: &ChannelParams, sig: &SignalingParams) -> Result<f64> {
    let theta = sig.theta(channel)?;
    let lift = 1.0 + theta;
    Ok(sig.p11 * lift
        / (sig.p11 * lift * lift + channel.alpha21 * channel.alpha21 * sig.p22 + channel.n1))
}

/// `γ2 = P22 / (P22 + N2)`, the vertex of [`r2_denominator`] in `γ2`.
pub fn gamma2_star(channel: &ChannelParams, sig: &SignalingParams) -> f64 {
    sig.p22 / (sig.p22 + channel.n2)
}

/// Rx-1 sum-rate bound with `γ1 = gamma1_star` substituted:
///
/// ```text
///        (P11(1+θ)² + P12 + α21²(P21+P22) + N1)(P11(1+θ)² + α21²P22 + N1)
/// ½ log2 ─────────────────────────────────────────────────────────────────
///              (α21²P22 + N1)(P11(1+θ)² + P12 + α21²P22 + N1)
/// ```
pub fn r1sub_closed_form(channel: &ChannelParams, sig: &SignalingParams) -> Result<f64> {
    let theta = sig.theta(channel)?;
    let a2 = channel.alpha21 * channel.alpha21;
    let strong = sig.p11 * (1.0 + theta) * (1.0 + theta);
    let residual = a2 * sig.p22 + channel.n1;
    let num = (strong + sig.p12 + a2 * (sig.p21 + sig.p22) + channel.n1) * (strong + residual);
    let den = residual * (strong + sig.p12 + residual);
    half_log2(num / den)
}

/// `sig` with both DPC parameters replaced by their heuristic choices.
pub fn with_optimal_gammas(channel: &ChannelParams, sig: &SignalingParams) -> Result<SignalingParams> {
    Ok(sig.with_gammas(gamma1_star(channel, sig)?, gamma2_star(channel, sig)))
}

/// How the DPC parameters are chosen at each signaling point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GammaPolicy {
    /// `gamma1_star`, `gamma2_star`.
    #[default]
    Heuristic,
    /// Local 2-D search on `R1 + R2`, started from the heuristic choice.
    JointSearch,
}

/// Picks `(γ1, γ2)` per `policy` and returns the parameters with the
/// resulting clamped bounds.
pub fn choose_gammas(
    channel: &ChannelParams,
    sig: &SignalingParams,
    policy: GammaPolicy,
) -> Result<(SignalingParams, RateBounds)> {
    let start = with_optimal_gammas(channel, sig)?;
    let start_bounds = thm1_bounds(channel, &start)?;
    match policy {
        GammaPolicy::Heuristic => Ok((start, start_bounds)),
        GammaPolicy::JointSearch => {
            let objective = |g: [f64; 2]| {
                thm1_bounds(channel, &sig.with_gammas(g[0], g[1]))
                    .map(|b| b.rx1_sum() + b.rx2_sum())
                    .unwrap_or(f64::NEG_INFINITY)
            };
            let best = nelder_mead_max(objective, [start.gamma1, start.gamma2], 0.05, 1e-12, 400);
            let base = start_bounds.rx1_sum() + start_bounds.rx2_sum();
            if best.value > base {
                let tuned = sig.with_gammas(best.argument[0], best.argument[1]);
                let b = thm1_bounds(channel, &tuned)?;
                Ok((tuned, b))
            } else {
                Ok((start, start_bounds))
            }
        }
    }
}
