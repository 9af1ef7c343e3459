//! Tunable information leakage on finite alphabets.
//!
//! The crate measures how much an observation `Y` reveals about a secret `X`
//! through α-leakage and maximal α-leakage (orders `1 ≤ α ≤ ∞`), the
//! f-divergence leakage family, and solves privacy-utility tradeoffs when the
//! released `Y` must stay within a hard distortion of `X`.
//!
//! All values are in nats unless a [`LogBase`] conversion is applied.
//!
//! ```
//! use alpha_leakage::{maximal_alpha_leakage, AlphaOrder, Channel, SolverOptions};
//!
//! let bsc = Channel::bsc(0.1)?;
//! let r = maximal_alpha_leakage(&bsc, AlphaOrder::new(2.0)?, None, SolverOptions::default())?;
//! assert!((r.value - 1.64f64.ln()).abs() < 1e-12);
//! # Ok::<(), alpha_leakage::Error>(())
//! ```

// `!(x > 0.0)` style checks are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod avg_hamming;
pub mod datasets;
pub mod error;
pub mod leakage;
pub mod lp;
pub mod measures;
pub mod prob;
pub mod put;
pub mod report;
pub mod sensitive;
mod simplex;

pub use avg_hamming::{avg_hamming_binary_put, AvgHammingPut};
pub use datasets::{hamming_ball_size, hamming_put, type_distance_put, HammingPut, TypeDistancePut, TypeIndexSet};
pub use error::{Error, Result};
pub use leakage::{
    alpha_leakage, binary_maximal_alpha_leakage, f_leakage, maximal_alpha_leakage, maximal_f_leakage, maximal_leakage,
    min_expected_alpha_loss, optimal_strategy, uniform_input_bound, CapacityResult, SolverOptions,
};
pub use measures::{
    arimoto_cond_entropy, arimoto_mi, f_divergence, k_alpha, renyi_divergence, renyi_entropy, shannon_mi, sibson_mi,
    FGenerator, LogBase,
};
pub use prob::{make_joint, AlphaOrder, Alphabet, Channel, Dist, Joint};
pub use put::{distortion_balls, optimal_mechanism, put_max_alpha_leakage, q_star, Balls, DistortionSpec, PutSolution};
pub use sensitive::{sensitive_lower_bound, SensitiveBound, SensitiveJoint};
