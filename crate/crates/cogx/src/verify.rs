//! Randomized equivalence and invariant suites.
//!
//! Draw `i` of a run with seed `s` is generated from ChaCha8 keyed by `s`
//! on stream `i`, so any single draw can be regenerated on its own.

use cogx_core::bounds::{
    gamma1_star, gamma2_star, r1_closed_form, r1sub_closed_form, r2_closed_form, r2_denominator,
};
use cogx_core::gauss::{
    assemble, conditional_mutual_information, mutual_information, Component, ComponentSet,
    JointCovariance,
};
use cogx_core::model::{ChannelParams, SignalingParams};
use cogx_core::optim::golden_section_max;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use Component::*;

pub const CLOSED_FORM_TOLERANCE: f64 = 1e-9;
pub const ARGMAX_TOLERANCE: f64 = 1e-4;
pub const VERTEX_TOLERANCE: f64 = 1e-12;
pub const INFO_TOLERANCE: f64 = 1e-9;

/// Injection point for the formulas under test.
#[derive(Clone, Copy)]
pub struct Formulas {
    pub gamma1: fn(&ChannelParams, &SignalingParams) -> cogx_core::Result<f64>,
}

impl Default for Formulas {
    fn default() -> Self {
        Formulas { gamma1: gamma1_star }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    ClosedFormR1,
    ClosedFormR2,
    Argmax,
    Substitution,
    Gamma2Vertex,
    Nonnegativity,
    Symmetry,
    ChainRule,
    Psd,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::ClosedFormR1,
        Suite::ClosedFormR2,
        Suite::Argmax,
        Suite::Substitution,
        Suite::Gamma2Vertex,
        Suite::Nonnegativity,
        Suite::Symmetry,
        Suite::ChainRule,
        Suite::Psd,
    ];

    pub const GAUSS: [Suite; 4] = [Suite::Nonnegativity, Suite::Symmetry, Suite::ChainRule, Suite::Psd];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ClosedFormR1 => "closed-form R1",
            Suite::ClosedFormR2 => "closed-form R2",
            Suite::Argmax => "argmax property",
            Suite::Substitution => "R1sub substitution",
            Suite::Gamma2Vertex => "gamma2 vertex",
            Suite::Nonnegativity => "mi nonnegativity",
            Suite::Symmetry => "mi symmetry",
            Suite::ChainRule => "chain rule",
            Suite::Psd => "covariance psd",
        }
    }

    pub fn tolerance(self) -> f64 {
        match self {
            Suite::ClosedFormR1 | Suite::ClosedFormR2 | Suite::Substitution => CLOSED_FORM_TOLERANCE,
            Suite::Argmax => ARGMAX_TOLERANCE,
            Suite::Gamma2Vertex => VERTEX_TOLERANCE,
            Suite::Nonnegativity | Suite::Symmetry | Suite::ChainRule | Suite::Psd => INFO_TOLERANCE,
        }
    }
}

/// One random parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Draw {
    pub index: u64,
    pub channel: ChannelParams,
    pub sig: SignalingParams,
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Gains in `[0, 1.5)`, noise in `[0.1, 10)`, powers from -10 to 40 dB
/// over the noise, interior power splits, `beta` in `[1e-3, 1)` and DPC
/// parameters in `[-0.5, 1.5)`. Every component variance is positive.
fn sample(rng: &mut ChaCha8Rng, index: u64) -> Draw {
    let n1 = log_uniform(rng, 0.1, 10.0);
    let n2 = log_uniform(rng, 0.1, 10.0);
    let channel = ChannelParams {
        alpha12: rng.random_range(0.0..1.5),
        alpha21: rng.random_range(0.0..1.5),
        n1,
        n2,
        p1: n1 * log_uniform(rng, 0.1, 1e4),
        p2: n2 * log_uniform(rng, 0.1, 1e4),
        antennas: 1,
    };
    let s = rng.random_range(0.05..0.95);
    let t = rng.random_range(0.05..0.95);
    let beta = log_uniform(rng, 1e-3, 1.0);
    let sig = SignalingParams::from_fractions(&channel, s, beta, t)
        .with_gammas(rng.random_range(-0.5..1.5), rng.random_range(-0.5..1.5));
    Draw {
        index,
        channel,
        sig,
    }
}

pub fn draw(seed: u64, index: u64) -> Draw {
    sample(&mut rng_for(seed, index), index)
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct DrawEcho {
    pub index: u64,
    pub alpha12: f64,
    pub alpha21: f64,
    pub n1: f64,
    pub n2: f64,
    pub p1: f64,
    pub p2: f64,
    pub p11: f64,
    pub p12: f64,
    pub p21: f64,
    pub p22: f64,
    pub beta: f64,
    pub gamma1: f64,
    pub gamma2: f64,
}

impl From<&Draw> for DrawEcho {
    fn from(d: &Draw) -> Self {
        DrawEcho {
            index: d.index,
            alpha12: d.channel.alpha12,
            alpha21: d.channel.alpha21,
            n1: d.channel.n1,
            n2: d.channel.n2,
            p1: d.channel.p1,
            p2: d.channel.p2,
            p11: d.sig.p11,
            p12: d.sig.p12,
            p21: d.sig.p21,
            p22: d.sig.p22,
            beta: d.sig.beta,
            gamma1: d.sig.gamma1,
            gamma2: d.sig.gamma2,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Failure {
    pub seed: u64,
    pub draw: DrawEcho,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub draws: usize,
    pub passed: usize,
    pub failed: usize,
    pub tolerance: f64,
    pub worst_deviation: f64,
    pub first_failure: Option<Failure>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub draws: usize,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

fn cov_of(d: &Draw) -> Result<JointCovariance, String> {
    assemble(&d.channel, &d.sig)
        .map(|(_, c)| c)
        .map_err(|e| e.to_string())
}

/// Random disjoint `(A, B, C)` with `A` nonempty and `B` holding at least
/// `min_b` components.
fn random_sets(rng: &mut ChaCha8Rng, min_b: usize) -> (Vec<Component>, Vec<Component>, Vec<Component>) {
    loop {
        let (mut a, mut b, mut c) = (Vec::new(), Vec::new(), Vec::new());
        for comp in Component::ALL {
            match rng.random_range(0..4u8) {
                0 => a.push(comp),
                1 => b.push(comp),
                2 => c.push(comp),
                _ => {}
            }
        }
        if !a.is_empty() && b.len() >= min_b {
            return (a, b, c);
        }
    }
}

fn set(items: &[Component]) -> ComponentSet {
    ComponentSet::of(items)
}

fn names(items: &[Component]) -> String {
    let v: Vec<&str> = items.iter().map(|c| c.label()).collect();
    format!("{{{}}}", v.join(","))
}

/// Deviation of one draw from the suite's property, or a description of
/// why it could not be evaluated.
fn check(suite: Suite, d: &Draw, rng: &mut ChaCha8Rng, f: &Formulas) -> Result<f64, String> {
    let e = |x: cogx_core::Error| x.to_string();
    match suite {
        Suite::ClosedFormR1 => {
            let cov = cov_of(d)?;
            let direct = mutual_information(&cov, M11 | M21, Y1).map_err(e)?
                - mutual_information(&cov, M11, M12).map_err(e)?;
            let closed = r1_closed_form(&d.channel, &d.sig).map_err(e)?;
            Ok((closed - direct).abs())
        }
        Suite::ClosedFormR2 => {
            let cov = cov_of(d)?;
            let direct = mutual_information(&cov, M12 | M22, Y2).map_err(e)?
                - mutual_information(&cov, M22, M11 | M21).map_err(e)?;
            let closed = r2_closed_form(&d.channel, &d.sig).map_err(e)?;
            Ok((closed - direct).abs())
        }
        Suite::Argmax => {
            let claimed = (f.gamma1)(&d.channel, &d.sig).map_err(e)?;
            let found = golden_section_max(
                |g| r1_closed_form(&d.channel, &d.sig.with_gammas(g, d.sig.gamma2)).unwrap_or(f64::NAN),
                -1.0,
                2.0,
                1e-12,
            );
            Ok((found.argument - claimed).abs())
        }
        Suite::Substitution => {
            let g1 = (f.gamma1)(&d.channel, &d.sig).map_err(e)?;
            let at = r1_closed_form(&d.channel, &d.sig.with_gammas(g1, d.sig.gamma2)).map_err(e)?;
            let sub = r1sub_closed_form(&d.channel, &d.sig).map_err(e)?;
            Ok((at - sub).abs())
        }
        Suite::Gamma2Vertex => {
            let den = |g2: f64| r2_denominator(&d.channel, &d.sig.with_gammas(d.sig.gamma1, g2));
            let (lo, mid, hi) = (den(-1.0).map_err(e)?, den(0.0).map_err(e)?, den(1.0).map_err(e)?);
            let a = 0.5 * (hi + lo) - mid;
            let b = 0.5 * (hi - lo);
            if !(a > 0.0) {
                return Err(format!("denominator is not convex in gamma2 (leading coefficient {a:e})"));
            }
            Ok((-b / (2.0 * a) - gamma2_star(&d.channel, &d.sig)).abs())
        }
        Suite::Nonnegativity => {
            let cov = cov_of(d)?;
            let (a, b, c) = random_sets(rng, 1);
            let v = conditional_mutual_information(&cov, set(&a), set(&b), set(&c))
                .map_err(|x| format!("I({};{}|{}): {x}", names(&a), names(&b), names(&c)))?;
            Ok(if v >= 0.0 { 0.0 } else { -v })
        }
        Suite::Symmetry => {
            let cov = cov_of(d)?;
            let (a, b, c) = random_sets(rng, 1);
            let ab = conditional_mutual_information(&cov, set(&a), set(&b), set(&c)).map_err(e)?;
            let ba = conditional_mutual_information(&cov, set(&b), set(&a), set(&c)).map_err(e)?;
            Ok((ab - ba).abs())
        }
        Suite::ChainRule => {
            let cov = cov_of(d)?;
            let (a, b, c) = random_sets(rng, 2);
            let cut = rng.random_range(1..b.len());
            let (b1, b2) = b.split_at(cut);
            let whole = conditional_mutual_information(&cov, set(&a), set(&b), set(&c)).map_err(e)?;
            let first = conditional_mutual_information(&cov, set(&a), set(b1), set(&c)).map_err(e)?;
            let second =
                conditional_mutual_information(&cov, set(&a), set(b2), set(b1) | set(&c)).map_err(e)?;
            Ok((whole - first - second).abs())
        }
        Suite::Psd => {
            let cov = cov_of(d)?;
            cov.check_psd().map_err(e)?;
            cov.check(&d.channel).map_err(e)?;
            Ok(0.0)
        }
    }
}

/// Runs `suite` on draws `0..draws`.
pub fn run_suite(suite: Suite, seed: u64, draws: usize, formulas: &Formulas) -> SuiteReport {
    let tol = suite.tolerance();
    let mut report = SuiteReport {
        name: suite.name(),
        draws,
        passed: 0,
        failed: 0,
        tolerance: tol,
        worst_deviation: 0.0,
        first_failure: None,
    };
    for i in 0..draws as u64 {
        let mut rng = rng_for(seed, i);
        let d = sample(&mut rng, i);
        let outcome = check(suite, &d, &mut rng, formulas);
        let detail = match outcome {
            Ok(dev) => {
                report.worst_deviation = report.worst_deviation.max(dev);
                if dev <= tol {
                    report.passed += 1;
                    continue;
                }
                format!("deviation {dev:e} exceeds {tol:e}")
            }
            Err(msg) => msg,
        };
        report.failed += 1;
        if report.first_failure.is_none() {
            report.first_failure = Some(Failure {
                seed,
                draw: DrawEcho::from(&d),
                detail,
            });
        }
    }
    report
}

pub fn run_suites(suites: &[Suite], seed: u64, draws: usize, formulas: &Formulas) -> VerifyReport {
    let suites: Vec<SuiteReport> = suites
        .iter()
        .map(|&s| run_suite(s, seed, draws, formulas))
        .collect();
    VerifyReport {
        seed,
        draws,
        passed: suites.iter().all(SuiteReport::ok),
        suites,
    }
}

pub fn run_all(seed: u64, draws: usize, formulas: &Formulas) -> VerifyReport {
    run_suites(&Suite::ALL, seed, draws, formulas)
}
