//! The `S⁷ → S⁴` Hopf fibration on two-qubit states.
//!
//! A state is written as the quaternion pair `(q₁, q₂) = (α + βj, γ + δj)`.
//! The map `h₁ : (q₁, q₂) ↦ Q = conj(q₁ q₂⁻¹) = (C₁ + C₂j)/sin²Ω` is constant
//! on the right `S³` fibres `(q₁q, q₂q)`; the inverse stereographic
//! projection `h₂` from the north pole `x₀ = +1` then lands on the unit
//! `S⁴` with
//!
//! ```text
//! x₀ = cos 2Ω,  x₁ + i x₂ = 2 C₁,  x₃ + i x₄ = 2 C₂.
//! ```
//!
//! Separable states have `C₂ = 0`, so their images fill only the
//! `(x₀, x₁, x₂)` sphere: the fibration sees entanglement.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::quaternion::Quaternion;
use crate::single_qubit::{BlochVector, QubitState};
use crate::two_qubit::TwoQubitState;
use crate::{Error, Result, C64, EPS_POLE, EPS_SINGULAR, TOL_NORM};

/// Tolerance on `|Q| = cot Ω` (compared as angles) in [`inverse_hopf`].
pub const OMEGA_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuaternionPair {
    pub q1: Quaternion,
    pub q2: Quaternion,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuaternionOrInfinity {
    Finite(Quaternion),
    Infinity,
}

/// Point of the unit 4-sphere, the base of the `S⁷` fibration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 5]", into = "[f64; 5]")]
pub struct S4Point {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub x4: f64,
}

/// How the four amplitudes are grouped into quaternions and which quotient
/// defines `h₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FibrationChart {
    /// `(α + βj, γ + δj)` with `Q = conj(q₁ q₂⁻¹)`.
    #[default]
    Standard,
    /// `(α + βj, γ + δj)` with `Q = conj(q₂⁻¹ q₁)`.
    Reversed,
    /// `(α + γj, β + δj)` with `Q = conj(q₁ q₂⁻¹)`; exchanges the qubits' roles.
    Swapped,
}

impl FibrationChart {
    pub const ALL: [Self; 3] = [Self::Standard, Self::Reversed, Self::Swapped];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Standard => "standard",
            Self::Reversed => "reversed",
            Self::Swapped => "swapped",
        }
    }
}

impl fmt::Display for FibrationChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FibrationChart {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Self::Standard),
            "reversed" => Ok(Self::Reversed),
            "swapped" => Ok(Self::Swapped),
            other => Err(Error::InvalidParameter(format!("unknown chart `{other}`"))),
        }
    }
}

impl QuaternionPair {
    /// Rejects pairs off the unit `S⁷` by more than [`TOL_NORM`].
    pub fn new(q1: Quaternion, q2: Quaternion) -> Result<Self> {
        let norm_sq = q1.norm_sq() + q2.norm_sq();
        if (norm_sq - 1.0).abs() > TOL_NORM {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { q1, q2 })
    }

    /// Right action `(q₁q, q₂q)`; preserves `h₁`.
    pub fn right_mul(&self, q: Quaternion) -> Self {
        Self {
            q1: self.q1 * q,
            q2: self.q2 * q,
        }
    }

    /// Left action `(q q₁, q q₂)`; generally moves `h₁`.
    pub fn left_mul(&self, q: Quaternion) -> Self {
        Self {
            q1: q * self.q1,
            q2: q * self.q2,
        }
    }
}

impl From<[f64; 5]> for S4Point {
    fn from(x: [f64; 5]) -> Self {
        Self {
            x0: x[0],
            x1: x[1],
            x2: x[2],
            x3: x[3],
            x4: x[4],
        }
    }
}

impl From<S4Point> for [f64; 5] {
    fn from(p: S4Point) -> Self {
        p.to_array()
    }
}

impl S4Point {
    pub const NORTH_POLE: Self = Self {
        x0: 1.0,
        x1: 0.0,
        x2: 0.0,
        x3: 0.0,
        x4: 0.0,
    };

    pub fn to_array(self) -> [f64; 5] {
        [self.x0, self.x1, self.x2, self.x3, self.x4]
    }

    pub fn norm_sq(self) -> f64 {
        self.to_array().iter().map(|x| x * x).sum()
    }

    /// `sin 2Ω = |(x₁, x₂, x₃, x₄)|`.
    pub fn sin_2omega(self) -> f64 {
        self.equatorial().norm()
    }

    pub fn omega(self) -> f64 {
        0.5 * self.sin_2omega().atan2(self.x0)
    }

    /// `(x₁, x₂, x₃, x₄)` read as the quaternion `x₁ + x₂i + x₃j + x₄k`.
    pub fn equatorial(self) -> Quaternion {
        Quaternion::new(self.x1, self.x2, self.x3, self.x4)
    }

    /// `Q′ = Q/|Q|`, undefined at the poles.
    pub fn direction(self) -> Option<Quaternion> {
        self.equatorial().normalize().ok()
    }

    /// `θ ∈ [0, π]` and unit pure imaginary `t` with `Q′ = cos θ + sin θ·t`.
    /// At `sin θ = 0` (and at the poles) `t` defaults to `i`.
    pub fn theta_axis(self) -> (f64, Quaternion) {
        theta_axis(self.direction().unwrap_or(Quaternion::ONE))
    }

    pub fn max_abs_diff(self, other: Self) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }
}

fn theta_axis(direction: Quaternion) -> (f64, Quaternion) {
    let v = direction.vector();
    let sin_theta = v.norm();
    let theta = sin_theta.atan2(direction.scalar());
    let axis = if sin_theta <= EPS_SINGULAR {
        Quaternion::I
    } else {
        v * (1.0 / sin_theta)
    };
    (theta, axis)
}

/// Groups the amplitudes into a quaternion pair according to `chart`.
pub fn to_pair(s: &TwoQubitState, chart: FibrationChart) -> QuaternionPair {
    let [a, b, g, d] = s.amplitudes();
    match chart {
        FibrationChart::Standard | FibrationChart::Reversed => QuaternionPair {
            q1: Quaternion::from_complex_pair(a, b),
            q2: Quaternion::from_complex_pair(g, d),
        },
        FibrationChart::Swapped => QuaternionPair {
            q1: Quaternion::from_complex_pair(a, g),
            q2: Quaternion::from_complex_pair(b, d),
        },
    }
}

/// Inverse of [`to_pair`].
pub fn from_pair(p: &QuaternionPair, chart: FibrationChart) -> Result<TwoQubitState> {
    let (c11, c12) = p.q1.to_complex_pair();
    let (c21, c22) = p.q2.to_complex_pair();
    match chart {
        FibrationChart::Standard | FibrationChart::Reversed => {
            TwoQubitState::new(c11, c12, c21, c22)
        }
        FibrationChart::Swapped => TwoQubitState::new(c11, c21, c12, c22),
    }
}

/// `h₁`: `conj(q₁ q₂⁻¹)` (Standard, Swapped) or `conj(q₂⁻¹ q₁)` (Reversed);
/// `∞` when `|q₂| ≤ EPS_SINGULAR`.
pub fn h1(p: &QuaternionPair, chart: FibrationChart) -> QuaternionOrInfinity {
    match p.q2.inverse() {
        Err(_) => QuaternionOrInfinity::Infinity,
        Ok(inv) => {
            let ratio = match chart {
                FibrationChart::Reversed => inv * p.q1,
                FibrationChart::Standard | FibrationChart::Swapped => p.q1 * inv,
            };
            QuaternionOrInfinity::Finite(ratio.conj())
        }
    }
}

/// `h₂`: inverse stereographic projection `R⁴ ∪ {∞} → S⁴` from the north
/// pole, with `R⁴` cutting `S⁴` along its equator.
pub fn h2(q: QuaternionOrInfinity) -> S4Point {
    match q {
        QuaternionOrInfinity::Infinity => S4Point::NORTH_POLE,
        QuaternionOrInfinity::Finite(q) => {
            let m = q.norm_sq();
            let d = 1.0 + m;
            S4Point {
                x0: (m - 1.0) / d,
                x1: 2.0 * q.x0 / d,
                x2: 2.0 * q.x1 / d,
                x3: 2.0 * q.x2 / d,
                x4: 2.0 * q.x3 / d,
            }
        }
    }
}

/// Base point `h₂(h₁(ψ))` of the state in the given chart.
pub fn base_coordinates(s: &TwoQubitState, chart: FibrationChart) -> S4Point {
    h2(h1(&to_pair(s, chart), chart))
}

fn check_fiber(q: Quaternion) -> Result<()> {
    if !q.is_unit(TOL_NORM) {
        return Err(Error::InvalidFiberPoint { modulus: q.norm() });
    }
    Ok(())
}

/// `(cos Ω exp(−θt/2) q, sin Ω exp(θt/2) q)` for a unit direction `Q′`.
fn assemble(omega: f64, direction: Quaternion, fiber_q: Quaternion) -> Result<TwoQubitState> {
    let (theta, axis) = theta_axis(direction);
    let (sin_o, cos_o) = omega.sin_cos();
    let left = Quaternion::exp_axis(-0.5 * theta, axis)?;
    let right = Quaternion::exp_axis(0.5 * theta, axis)?;
    let pair = QuaternionPair {
        q1: left * fiber_q * cos_o,
        q2: right * fiber_q * sin_o,
    };
    from_pair(&pair, FibrationChart::Standard)
}

/// The state over `Q` (Standard chart) at fibre coordinate `fiber_q`.
///
/// `Ω` is determined by `cot Ω = |Q|`; when `omega` is supplied it must
/// agree to within [`OMEGA_TOL`]. `Q = ∞` corresponds to `Ω = 0`.
pub fn inverse_hopf(
    q: QuaternionOrInfinity,
    omega: Option<f64>,
    fiber_q: Quaternion,
) -> Result<TwoQubitState> {
    check_fiber(fiber_q)?;
    let (derived, modulus, direction) = match q {
        QuaternionOrInfinity::Infinity => (0.0, f64::INFINITY, Quaternion::ONE),
        QuaternionOrInfinity::Finite(q) => {
            let m = q.norm();
            (1.0f64.atan2(m), m, q.normalize().unwrap_or(Quaternion::ONE))
        }
    };
    if let Some(o) = omega {
        if !(0.0..=FRAC_PI_2).contains(&o) || (o - derived).abs() > OMEGA_TOL {
            return Err(Error::InconsistentOmega { modulus, omega: o });
        }
    }
    assemble(derived, direction, fiber_q)
}

/// Lifts a base point back to `S⁷` at fibre coordinate `fiber_q`.
pub fn lift(x: &S4Point, fiber_q: Quaternion) -> Result<TwoQubitState> {
    check_fiber(fiber_q)?;
    if (x.norm_sq() - 1.0).abs() > TOL_NORM {
        return Err(Error::InvalidParameter(format!(
            "base point off the unit 4-sphere (|x|² = {})",
            x.norm_sq()
        )));
    }
    assemble(x.omega(), x.direction().unwrap_or(Quaternion::ONE), fiber_q)
}

/// The fibre states at `q = 1` and `q = j` over `Q`.
pub fn fiber_basis(
    q: QuaternionOrInfinity,
    omega: Option<f64>,
) -> Result<(TwoQubitState, TwoQubitState)> {
    Ok((
        inverse_hopf(q, omega, Quaternion::ONE)?,
        inverse_hopf(q, omega, Quaternion::J)?,
    ))
}

/// Bloch vector of the second qubit of a separable state, obtained by
/// expanding the state in the fibre basis of its own `Q` and applying the
/// `S³` Hopf map to the coefficient pair.
pub fn second_qubit_bloch(s: &TwoQubitState, tol: f64) -> Result<BlochVector> {
    let concurrence = s.concurrence();
    if concurrence > tol {
        return Err(Error::NotSeparable { concurrence });
    }
    let q = h1(
        &to_pair(s, FibrationChart::Standard),
        FibrationChart::Standard,
    );
    let (zero_q, one_q) = fiber_basis(q, None)?;
    let a = zero_q.inner(s);
    let b = one_q.inner(s);
    Ok(crate::single_qubit::hopf_map(&QubitState::normalized_from(
        a, b,
    )?))
}

/// `(cos Ω exp(−(π/4)t) q, sin Ω exp((π/4)t) q)` with `t = e^{iφ}j`,
/// i.e. `t = cos φ·j + sin φ·k`. The result has `C₁ = 0`, `arg C₂ = φ` and
/// concurrence `sin 2Ω`.
pub fn omega_mes_state(omega: f64, c2_phase: f64, fiber_q: Quaternion) -> Result<TwoQubitState> {
    if !omega.is_finite() || omega <= EPS_POLE || omega >= FRAC_PI_2 - EPS_POLE {
        return Err(Error::DegenerateOmega { omega });
    }
    check_fiber(fiber_q)?;
    let (s, c) = c2_phase.sin_cos();
    let axis = Quaternion::new(0.0, 0.0, c, s);
    let left = Quaternion::exp_axis(-FRAC_PI_4, axis)?;
    let right = Quaternion::exp_axis(FRAC_PI_4, axis)?;
    let (sin_o, cos_o) = omega.sin_cos();
    let pair = QuaternionPair {
        q1: left * fiber_q * cos_o,
        q2: right * fiber_q * sin_o,
    };
    from_pair(&pair, FibrationChart::Standard)
}

/// Maximally entangled state with `arg C₂ = c2_phase`.
pub fn mes_state(c2_phase: f64, fiber_q: Quaternion) -> Result<TwoQubitState> {
    omega_mes_state(FRAC_PI_4, c2_phase, fiber_q)
}

/// The four Bell states `Φ⁺, Φ⁻, Ψ⁺, Ψ⁻` (index 0..=3), generated from the
/// fibre points `q = (1 ± j)/√2` and `C₂ = ±½`.
pub fn bell_state(index: usize) -> Result<TwoQubitState> {
    let q_plus = Quaternion::new(1.0 / SQRT_2, 0.0, 1.0 / SQRT_2, 0.0);
    let q_minus = Quaternion::new(1.0 / SQRT_2, 0.0, -1.0 / SQRT_2, 0.0);
    let pi = std::f64::consts::PI;
    let (phase, q) = match index {
        0 => (0.0, q_plus),
        1 => (pi, q_minus),
        2 => (pi, q_plus),
        3 => (0.0, q_minus),
        _ => {
            return Err(Error::InvalidParameter(format!(
                "Bell index {index} out of range 0..=3"
            )))
        }
    };
    mes_state(phase, q)
}

/// `(2|C₁|, 2|C₂|)`: radii of the torus through the base point in the
/// `(x₁, x₂)` and `(x₃, x₄)` planes.
pub fn torus_radii(s: &TwoQubitState) -> (f64, f64) {
    let inv = s.hopf_invariants();
    (2.0 * inv.c1.norm(), 2.0 * inv.c2.norm())
}

impl QuaternionOrInfinity {
    pub fn finite(&self) -> Option<Quaternion> {
        match *self {
            Self::Finite(q) => Some(q),
            Self::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinity)
    }

    /// `Q` read as `C₁' + C₂'j`; a pure complex `Q` marks a separable state.
    pub fn complex_parts(&self) -> Option<(C64, C64)> {
        self.finite().map(Quaternion::to_complex_pair)
    }
}
