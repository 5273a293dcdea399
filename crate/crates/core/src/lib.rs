//! Achievable rate regions and high-SNR sum-rate scaling for the real
//! Gaussian cognitive X-channel and the cognitive interference channel.
//!
//! The crate is `no_std` (it needs `alloc` for frontier storage) and is
//! organised bottom-up:
//!
//! | module      | contents                                                       |
//! |-------------|----------------------------------------------------------------|
//! | [`model`]   | channel and signaling parameters, validation, SNR helpers      |
//! | [`gauss`]   | covariance of the Gaussian signaling scheme, log-det MI engine |
//! | [`bounds`]  | the six rate constraints, closed forms, DPC parameter choices  |
//! | [`optim`]   | golden-section and Nelder–Mead scalar/2-D searches             |
//! | [`regions`] | parameter sweeps, Pareto frontiers, BC and cooperative bounds  |
//! | [`scaling`] | multiplexing-gain estimation by high-SNR slope fitting         |
//!
//! Rates are in bits per real channel use and carry the usual `1/2` factor.
//! Multiplexing gains are reported against `1/2 log2(SNR)`, so a single
//! point-to-point real Gaussian link has gain 1.
//!
//! Only single-antenna nodes (`M = 1`) are supported by the achievable-region
//! code; [`scaling::reference_lines`] gives the analytic slopes for any `M`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bounds;
mod error;
pub mod gauss;
pub mod linalg;
pub mod model;
pub mod optim;
pub mod regions;
pub mod scaling;

pub use error::{Error, Result};
pub use model::{ChannelParams, RateTuple, SignalingParams};
