use alloc::boxed::Box;

use crate::model::{SignalingParams, Violation};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    Invalid(Violation),

    #[error("theta undefined: p11 = 0 while beta < 1")]
    ThetaUndefined,

    #[error("singular covariance: pivot {pivot:e} below threshold {threshold:e}")]
    SingularCovariance { pivot: f64, threshold: f64 },

    #[error("covariance is not symmetric positive semidefinite: {0}")]
    NotPsd(&'static str),

    #[error("index sets must be nonempty and pairwise disjoint")]
    BadIndexSets,

    #[error("log argument {0:e} is not positive and finite")]
    Domain(f64),

    #[error("no grid point passed validation")]
    EmptyFrontier,

    #[error("max sum-rate decreased from {previous} to {current} bits at {snr_db} dB")]
    NonMonotoneRate {
        snr_db: f64,
        previous: f64,
        current: f64,
    },

    #[error("{0}")]
    BadInput(&'static str),

    #[error("at p11={p11}, p12={p12}, p21={p21}, p22={p22}, beta={beta}: {source}", p11 = point.p11, p12 = point.p12, p21 = point.p21, p22 = point.p22, beta = point.beta)]
    AtPoint {
        point: SignalingParams,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at(self, point: &SignalingParams) -> Self {
        match self {
            e @ Error::AtPoint { .. } => e,
            e => Error::AtPoint {
                point: *point,
                source: Box::new(e),
            },
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
