//! The assembled covariance and the bounds at one fixed point against an
//! independent 50-digit evaluation (tests/oracle/golden_bounds.py).

use cogx::format::read_matrix;
use cogx_core::bounds::{bounds_from_covariance, thm1_bounds_raw, with_optimal_gammas};
use cogx_core::gauss::{assemble, JointCovariance};
use cogx_core::model::{ChannelParams, SignalingParams};

const GOLDEN: &str = include_str!("data/golden_covariance.txt");

// printed by the oracle: b11 b21 b_sum1 b12 b22 b_sum2
const ORACLE_BOUNDS: [f64; 6] = [
    1.221_918_961_601_506,
    0.095_867_131_103_137_31,
    1.233_770_696_101_054_4,
    0.661_712_489_417_983_8,
    0.793_990_502_468_641,
    0.938_963_935_046_480_7,
];

fn point() -> (ChannelParams, SignalingParams) {
    let ch = ChannelParams {
        alpha12: 0.8,
        alpha21: 0.2,
        n1: 1.0,
        n2: 1.0,
        p1: 8.0,
        p2: 5.0 / 0.9,
        antennas: 1,
    };
    let sig = SignalingParams {
        p11: 4.0,
        p12: 4.0,
        p21: 4.0,
        p22: 1.0,
        beta: 0.9,
        gamma1: 0.0,
        gamma2: 0.0,
    };
    (ch, with_optimal_gammas(&ch, &sig).unwrap())
}

#[test]
fn assembled_covariance_matches_oracle() {
    let golden = read_matrix(GOLDEN).unwrap();
    let (ch, sig) = point();
    let (_, cov) = assemble(&ch, &sig).unwrap();
    for i in 0..6 {
        for j in 0..6 {
            let (got, want) = (cov.sigma()[i][j], golden[i][j]);
            assert!(
                (got - want).abs() <= 1e-14 * want.abs().max(1.0),
                "entry ({i},{j}): {got:e} vs {want:e}"
            );
        }
    }
}

#[test]
fn bounds_match_oracle_from_both_routes() {
    let (ch, sig) = point();
    let direct = thm1_bounds_raw(&ch, &sig).unwrap();
    let from_file = bounds_from_covariance(&JointCovariance::from_matrix(read_matrix(GOLDEN).unwrap()).unwrap()).unwrap();
    for b in [direct, from_file] {
        let got = [b.b11, b.b21, b.b_sum1, b.b12, b.b22, b.b_sum2];
        for (g, w) in got.iter().zip(ORACLE_BOUNDS) {
            assert!((g - w).abs() < 1e-12, "{got:?}");
        }
    }
}
