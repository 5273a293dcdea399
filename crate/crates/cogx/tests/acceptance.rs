//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cogx::config::DEFAULT_SEED;
use cogx::verify::{run_suites, Formulas, Suite, VerifyReport};
use cogx_core::model::{snr_to_power, ChannelParams};
use cogx_core::regions::{
    bc_outer_dual_mac, cooperative_outer, sweep_cognitive_ic, sweep_cognitive_x, RegionFrontier,
    SweepGrid, DEFAULT_DUAL_MAC_POINTS,
};
use cogx_core::scaling::{default_snr_grid, estimate_slope, PowerPolicy, SlopeKind};

struct Outcome {
    pass: bool,
    detail: String,
}

fn suites(list: &[Suite], draws: usize) -> (VerifyReport, Duration) {
    let t = Instant::now();
    let r = run_suites(list, DEFAULT_SEED, draws, &Formulas::default());
    (r, t.elapsed())
}

fn describe(r: &VerifyReport) -> String {
    r.suites
        .iter()
        .map(|s| format!("{} {}/{} worst {:.2e}", s.name, s.passed, s.draws, s.worst_deviation))
        .collect::<Vec<_>>()
        .join("; ")
}

fn closed_forms() -> Outcome {
    let (r, took) = suites(&[Suite::ClosedFormR1, Suite::ClosedFormR2], 10_000);
    let fast = took < Duration::from_secs(30);
    Outcome {
        pass: r.passed && fast,
        detail: format!("{} in {:.1} s", describe(&r), took.as_secs_f64()),
    }
}

fn gamma1_optimality() -> Outcome {
    let (r, _) = suites(&[Suite::Argmax, Suite::Substitution], 1_000);
    Outcome {
        pass: r.passed,
        detail: describe(&r),
    }
}

fn gamma2_vertex() -> Outcome {
    let (r, _) = suites(&[Suite::Gamma2Vertex], 1_000);
    Outcome {
        pass: r.passed,
        detail: describe(&r),
    }
}

fn multiplexing_gains() -> Outcome {
    let t = Instant::now();
    let template = ChannelParams::default();
    let grid = default_snr_grid();
    let policy = PowerPolicy::PaperScaling { beta: 0.5 };
    let wanted = [
        (SlopeKind::CognitiveX, 1.9, 2.1),
        (SlopeKind::CognitiveInterference, 0.9, 1.1),
        (SlopeKind::PointToPoint, 0.98, 1.02),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (kind, lo, hi) in wanted {
        match estimate_slope(kind, &template, &grid, &policy) {
            Ok(est) => {
                pass &= (lo..=hi).contains(&est.slope);
                parts.push(format!("{kind} {:.4} in [{lo}, {hi}]", est.slope));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{kind} error: {e}"));
            }
        }
    }
    let took = t.elapsed();
    pass &= took < Duration::from_secs(120);
    Outcome {
        pass,
        detail: format!("{} in {:.1} s", parts.join(", "), took.as_secs_f64()),
    }
}

fn frontiers(snr_db: f64) -> (RegionFrontier, RegionFrontier, RegionFrontier, f64) {
    let ch = ChannelParams::default().with_power(snr_to_power(snr_db, 1.0));
    let grid = SweepGrid::default();
    let x = sweep_cognitive_x(&ch, &grid).expect("cogx sweep");
    let ic = sweep_cognitive_ic(&ch, &grid).expect("cogic sweep");
    let total = ch.p1 + ch.p2;
    let bc = bc_outer_dual_mac(&ch, total, DEFAULT_DUAL_MAC_POINTS).expect("bc frontier");
    let coop = cooperative_outer(&ch, total).expect("coop");
    (x, ic, bc, coop)
}

// R2 where each region's own R1 is within 5% of its maximum.
fn r2_near_max_r1(f: &RegionFrontier) -> f64 {
    f.r2_at(0.95 * f.max_r1()).unwrap_or(0.0)
}

fn relative_gap(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    if m == 0.0 {
        0.0
    } else {
        (a - b).abs() / m
    }
}

fn figure_shape() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for snr in [0.0, 10.0] {
        let (x, ic, _, _) = frontiers(snr);
        let gap = relative_gap(r2_near_max_r1(&x), r2_near_max_r1(&ic));
        pass &= gap < 0.15;
        parts.push(format!("{snr} dB R2 gap {:.3}% < 15%", 100.0 * gap));
    }
    let (x, ic, _, _) = frontiers(50.0);
    let ratio = x.max_sum_rate() / ic.max_sum_rate();
    pass &= ratio >= 1.5;
    parts.push(format!(
        "50 dB sum-rate ratio {:.4} >= 1.5 ({:.4} / {:.4})",
        ratio,
        x.max_sum_rate(),
        ic.max_sum_rate()
    ));
    Outcome {
        pass,
        detail: parts.join(", "),
    }
}

fn dominance() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for snr in [0.0, 10.0, 50.0] {
        let (x, ic, bc, coop) = frontiers(snr);
        let bad_x = bc.first_uncovered(&x, 0.0);
        let bad_ic = x.first_uncovered(&ic, 0.0);
        let coop_ok = coop >= bc.max_sum_rate();
        pass &= bad_x.is_none() && bad_ic.is_none() && coop_ok;
        let mut s = format!("{snr} dB");
        if let Some(p) = bad_x {
            s += &format!(" cogx point ({}, {}) outside bc", p.r1, p.r2);
        }
        if let Some(p) = bad_ic {
            s += &format!(" cogic point ({}, {}) outside cogx", p.r1, p.r2);
        }
        s += &format!(" coop {:.6} vs bc {:.6}", coop, bc.max_sum_rate());
        parts.push(s);
    }
    Outcome {
        pass,
        detail: parts.join("; "),
    }
}

fn gauss_properties() -> Outcome {
    let (r, _) = suites(&Suite::GAUSS, 10_000);
    Outcome {
        pass: r.passed,
        detail: describe(&r),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("closed-form rates match covariance route", closed_forms),
        ("gamma1 optimum and substitution", gamma1_optimality),
        ("gamma2 vertex", gamma2_vertex),
        ("multiplexing gains", multiplexing_gains),
        ("region shape at 0, 10, 50 dB", figure_shape),
        ("bc >= cogx >= cogic, coop >= bc", dominance),
        ("gaussian property suites", gauss_properties),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} [{}] {name}: {}", i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
