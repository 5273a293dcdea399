//! File formats: frontier CSV/JSON and the plain-text covariance matrix.
//!
//! Numbers are written with Rust's shortest round-trip representation, so a
//! value read back is bit-identical and no locale is involved.

use std::fmt::Write as _;

use cogx_core::gauss::LABELS;
use cogx_core::linalg::{Mat6, MAX_DIM};
use cogx_core::regions::{RatePair, RegionFrontier, SweepConfig};
use serde::Serialize;
use serde_json::{json, Value};

pub const CSV_HEADER: &str = "r1_bits,r2_bits";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

pub fn frontier_csv(points: &[RatePair]) -> String {
    let mut s = String::with_capacity(40 * (points.len() + 1));
    s.push_str(CSV_HEADER);
    s.push('\n');
    for p in points {
        let _ = writeln!(s, "{},{}", p.r1, p.r2);
    }
    s
}

pub fn parse_frontier_csv(text: &str) -> Result<Vec<RatePair>, FormatError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == CSV_HEADER => {}
        _ => return Err(parse_err(1, format!("expected header '{CSV_HEADER}'"))),
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let (a, b) = line
            .split_once(',')
            .ok_or_else(|| parse_err(i + 1, "expected two comma-separated values"))?;
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| parse_err(i + 1, format!("'{t}': {e}")))
        };
        out.push(RatePair {
            r1: num(a)?,
            r2: num(b)?,
        });
    }
    Ok(out)
}

/// Echo of the parameters a frontier was produced with.
#[derive(Debug, Clone, Serialize)]
pub struct RunEcho {
    pub alpha12: f64,
    pub alpha21: f64,
    pub n1: f64,
    pub n2: f64,
    pub power: f64,
    pub snr_db: f64,
}

fn sweep_json(config: &SweepConfig) -> Value {
    match config {
        SweepConfig::Signaling(g) => json!({
            "type": "signaling",
            "split_points": g.split_points,
            "beta_values": g.beta_values,
            "refine": g.refine,
            "gamma_policy": format!("{:?}", g.gamma_policy).to_lowercase(),
        }),
        SweepConfig::DualMac {
            total_power,
            points,
        } => json!({
            "type": "dual_mac",
            "total_power": total_power,
            "points": points,
        }),
        SweepConfig::WaterFilling { total_power } => json!({
            "type": "water_filling",
            "total_power": total_power,
        }),
    }
}

/// JSON document with the run echo, the sweep descriptor, the points and
/// the local tangent slope at each point.
pub fn frontier_json(frontier: &RegionFrontier, echo: &RunEcho) -> Value {
    let slopes = frontier.tangent_slopes();
    let points: Vec<Value> = frontier
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            json!({
                "r1_bits": p.r1,
                "r2_bits": p.r2,
                "tangent_slope": slopes.get(i).copied().filter(|s| s.is_finite()),
            })
        })
        .collect();
    json!({
        "channel_kind": frontier.channel_kind.short_name(),
        "config": {
            "run": echo,
            "sweep": sweep_json(&frontier.config),
        },
        "max_sum_rate_bits": frontier.max_sum_rate(),
        "points": points,
    })
}

/// Six rows of six `{:.16e}` values, preceded by `#` comment lines.
pub fn write_matrix(m: &Mat6, comments: &[&str]) -> String {
    let mut s = String::new();
    for c in comments {
        let _ = writeln!(s, "# {c}");
    }
    for row in m {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:.16e}")).collect();
        let _ = writeln!(s, "{}", cells.join(" "));
    }
    s
}

pub fn read_matrix(text: &str) -> Result<Mat6, FormatError> {
    let mut m = [[0.0; MAX_DIM]; MAX_DIM];
    let mut row = 0;
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if row == MAX_DIM {
            return Err(parse_err(i + 1, "more than six rows"));
        }
        let cells: Vec<&str> = t.split_whitespace().collect();
        if cells.len() != MAX_DIM {
            return Err(parse_err(i + 1, format!("expected 6 values, got {}", cells.len())));
        }
        for (j, c) in cells.iter().enumerate() {
            m[row][j] = c
                .parse()
                .map_err(|e| parse_err(i + 1, format!("'{c}': {e}")))?;
        }
        row += 1;
    }
    if row != MAX_DIM {
        return Err(parse_err(text.lines().count(), format!("expected 6 rows, got {row}")));
    }
    Ok(m)
}

/// Comment line naming the row/column order.
pub fn matrix_order_comment() -> String {
    format!("order: {}", LABELS.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_roundtrip_is_exact() {
        let pts = vec![
            RatePair { r1: 0.0, r2: 1.0 / 3.0 },
            RatePair { r1: 0.1 + 0.2, r2: 5e-324 },
            RatePair { r1: 12.345678901234567, r2: 0.0 },
        ];
        let text = frontier_csv(&pts);
        assert!(text.starts_with("r1_bits,r2_bits\n"));
        assert_eq!(parse_frontier_csv(&text).unwrap(), pts);
    }

    #[test]
    fn origin_only() {
        assert_eq!(
            frontier_csv(&[RatePair { r1: 0.0, r2: 0.0 }]),
            "r1_bits,r2_bits\n0,0\n"
        );
    }

    #[test]
    fn csv_errors_name_the_line() {
        let e = parse_frontier_csv("r1_bits,r2_bits\n1,2\n3;4\n").unwrap_err();
        assert_eq!(e.to_string().split(':').next(), Some("line 3"));
        assert!(parse_frontier_csv("x,y\n").is_err());
    }

    #[test]
    fn matrix_roundtrip() {
        let mut m = [[0.0; 6]; 6];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (i as f64 + 1.0) / (j as f64 + 3.0) * 1e3;
            }
        }
        let text = write_matrix(&m, &[&matrix_order_comment()]);
        assert!(text.starts_with("# order: M11 M21 M12 M22 Y1 Y2\n"));
        assert_eq!(read_matrix(&text).unwrap(), m);
        assert!(read_matrix("1 2 3\n").is_err());
    }
}
