//! Analytical model of artificial pneumatic myofibrils built from
//! sarcomere-like contraction units: material response, kinematics,
//! pressure-to-force pipeline, and curve-agreement metrics.

pub mod actuation;
pub mod cli;
pub mod elliptic;
pub mod error;
pub mod geometry;
pub mod material;
pub mod roots;
pub mod validation;

pub use error::{Error, Result};
pub use geometry::{MyofibrilSpec, SarcomereGeometry, SpaGeometry};
pub use material::YeohMaterial;
