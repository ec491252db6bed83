//! Numerical radii, generalized norm-radii `w_N` and the Omega norm for dense
//! complex matrices, together with a harness that checks a family of
//! numerical radius inequalities on golden inputs and seeded ensembles.

pub mod eigen;
pub mod ensembles;
pub mod error;
pub mod io;
pub mod lab;
pub mod matrix;
pub mod norms;
pub mod optimize;
pub mod radius;
pub mod rng;

pub use error::{Error, Hypothesis, Result};
pub use matrix::{c, CMat, CScalar};
pub use norms::NormSpec;
