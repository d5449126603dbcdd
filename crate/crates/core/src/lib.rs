//! Geometry of one- and two-qubit pure states through the Hopf fibrations
//! `S³ → S²` and `S⁷ → S⁴`.
//!
//! The crate is organised bottom-up:
//!
//! - [`quaternion`]: Hamilton quaternions, the arithmetic behind every Hopf map.
//! - [`single_qubit`]: qubit states, Bloch coordinates and the `S³` fibration.
//! - [`two_qubit`]: two-qubit states, concurrence, the entanglor, the
//!   `Ω`-decomposition and the Schmidt decomposition.
//! - [`hopf_s7`]: the `S⁷` Hopf maps, base coordinates `x₀..x₄`, the inverse map
//!   and the special-state generators.
//! - [`oracle`]: explicit-matrix linear algebra used as an independent check of
//!   every Hopf-side quantity.
//! - [`viz`]: plot-ready point clouds (unit ball, stereographic fibres,
//!   foliation sweeps).
//! - [`sampling`]: seeded uniform sampling of states and unit quaternions.
//! - [`document`]: the JSON state document and analysis report shared with the CLI.
//!
//! ```
//! use hopfq::hopf_s7::{base_coordinates, bell_state};
//! use hopfq::FibrationChart;
//!
//! let phi_plus = bell_state(0)?;
//! let x = base_coordinates(&phi_plus, FibrationChart::Standard);
//! assert!((x.x3 - 1.0).abs() < 1e-12);
//! assert!((phi_plus.concurrence() - 1.0).abs() < 1e-12);
//! let schmidt = phi_plus.schmidt();
//! assert!(schmidt.fidelity_with(&phi_plus) > 1.0 - 1e-12);
//! # Ok::<(), hopfq::Error>(())
//! ```

pub mod document;
pub mod error;
pub mod hopf_s7;
pub mod oracle;
pub mod quaternion;
pub mod sampling;
pub mod single_qubit;
pub mod two_qubit;
pub mod viz;

pub use num_complex::Complex64 as C64;

pub use error::{Error, Result};
pub use hopf_s7::{FibrationChart, QuaternionOrInfinity, QuaternionPair, S4Point};
pub use oracle::{ComplexMatrix, Matrix2, Matrix4, ReducedDensity};
pub use quaternion::Quaternion;
pub use single_qubit::{BlochVector, ComplexOrInfinity, QubitState};
pub use two_qubit::{HopfInvariants, SchmidtData, TrivialDecomposition, TwoQubitState};
pub use viz::{BallPoint, CloudPoint, PointCloud};

/// Tolerance on `| ‖ψ‖² − 1 |` accepted by the state constructors.
pub const TOL_NORM: f64 = 1e-9;

/// Below this modulus a quaternion (or complex number) is treated as zero and
/// its inverse as the point at infinity.
pub const EPS_SINGULAR: f64 = 1e-12;

/// Distance from `Ω = 0` or `Ω = π/2` at which the `Ω`-decomposition is
/// considered to collapse to a single term.
pub const EPS_POLE: f64 = 1e-9;
