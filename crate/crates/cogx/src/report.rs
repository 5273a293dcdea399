//! Slope and verification reports.

use cogx_core::model::ChannelParams;
use cogx_core::scaling::{ReferenceLines, SlopeEstimate, SlopeKind};
use serde_json::{json, Map, Value};

use crate::verify::VerifyReport;

/// One fitted line; `beta` is `None` for kinds without a free `beta`.
#[derive(Debug, Clone, PartialEq)]
pub struct Fit {
    pub beta: Option<f64>,
    pub estimate: SlopeEstimate,
}

pub fn slope_json(
    kind: SlopeKind,
    channel: &ChannelParams,
    policy: &str,
    snr_grid_db: &[f64],
    fits: &[Fit],
    refs: &ReferenceLines,
) -> Value {
    let mut lines = Map::new();
    for (name, v) in refs.entries() {
        lines.insert(name.to_string(), json!(v));
    }
    let fits: Vec<Value> = fits
        .iter()
        .map(|f| {
            let e = &f.estimate;
            json!({
                "beta": f.beta,
                "slope": e.slope,
                "intercept_bits": e.intercept,
                "residual_bits": e.residual,
                "per_point_rates": e.per_point_rates.iter()
                    .map(|&(db, r)| json!({"snr_db": db, "max_sum_rate_bits": r}))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "kind": kind.short_name(),
        "channel": {
            "alpha12": channel.alpha12,
            "alpha21": channel.alpha21,
            "n1": channel.n1,
            "n2": channel.n2,
        },
        "policy": policy,
        "snr_grid_db": snr_grid_db,
        "fits": fits,
        "reference_lines": lines,
    })
}

pub fn verify_json(report: &VerifyReport) -> Value {
    serde_json::to_value(report).unwrap_or(Value::Null)
}

/// One text line per suite.
pub fn verify_summary(report: &VerifyReport) -> String {
    let mut s = String::new();
    for r in &report.suites {
        s.push_str(&format!(
            "{:<20} {:>7}/{:<7} worst {:.3e} (tol {:.0e})  {}\n",
            r.name,
            r.passed,
            r.draws,
            r.worst_deviation,
            r.tolerance,
            if r.ok() { "PASS" } else { "FAIL" }
        ));
    }
    s
}
