//! Two-parameter open quantum walk on the integer line.
//!
//! The walker's coin is a 2×2 density matrix that is updated by the Kraus
//! pair
//!
//! ```text
//! P = [[0, c0], [s0 s1, −s0 c1]]      (step left)
//! Q = [[s0 c1, s0 s1], [c0, 0]]       (step right)
//! ```
//!
//! with `cj = cos θj`, `sj = sin θj`. Starting from the origin with coin
//! `diag(p, 1−p)`, the crate offers
//!
//! * [`simulate`]: exact evolution of the position-resolved density operator;
//! * [`spectral`]: the Fourier picture `Û(k)`, its spectrum, and moments from
//!   derivatives at `k = 0`;
//! * [`phases`]: the ballistic/diffusive classification with closed-form
//!   moments and limit constants;
//! * [`cli`]: the `oqw` command-line front end.
//!
//! ```
//! use oqw::{phases, simulate, walk};
//!
//! let theta0 = 2.0 * std::f64::consts::PI / 7.0;
//! let params = walk::WalkParameters::new(theta0, walk::ballistic_theta1(theta0)?, 0.75)?;
//! let m = simulate::moments(&simulate::evolve(&params, 100));
//! let exact = phases::moments_case_a(&params, 100)?;
//! assert!((m.e2 - exact.e2).abs() < 1e-8 * exact.e2);
//! # Ok::<(), oqw::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod phases;
pub mod simulate;
pub mod smallmat;
pub mod spectral;
pub mod walk;

pub use error::{Error, Result};
pub use phases::{classify, sigma_limit, PhaseClass, PhaseKind, PhaseReport, PhaseSubcase};
pub use simulate::{evolve, DensityState, Distribution, MomentReport};
pub use smallmat::Complex;
pub use walk::{parse_angle, AngleSpec, WalkParameters};
