//! Single-qubit pure states, the Bloch sphere and the `S³ → S²` Hopf map.
//!
//! A state `α|0⟩ + β|1⟩` is a point of the unit `S³ ⊂ C²`. The Hopf map is
//! the composition of `h₁ : (α, β) ↦ C = conj(α β⁻¹)` with the inverse
//! stereographic projection `h₂` from the north pole onto the unit sphere
//! cut by the plane along its equator. The resulting point is exactly the
//! Bloch vector `(⟨σx⟩, ⟨σy⟩, ⟨σz⟩)`.

use serde::{Deserialize, Serialize};

use crate::oracle::Matrix2;
use crate::quaternion::Quaternion;
use crate::{Error, Result, C64, EPS_SINGULAR, TOL_NORM};

/// Below this modulus a component is skipped when fixing a vector's phase.
pub(crate) const PHASE_FIX_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitState {
    alpha: C64,
    beta: C64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Value of the `h₁` map: a point of the complex plane or the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexOrInfinity {
    Finite(C64),
    Infinity,
}

impl QubitState {
    pub const ZERO_KET: Self = Self {
        alpha: C64::new(1.0, 0.0),
        beta: C64::new(0.0, 0.0),
    };
    pub const ONE_KET: Self = Self {
        alpha: C64::new(0.0, 0.0),
        beta: C64::new(1.0, 0.0),
    };

    /// Rejects amplitudes whose squared norm is off by more than [`TOL_NORM`].
    pub fn new(alpha: C64, beta: C64) -> Result<Self> {
        let norm_sq = alpha.norm_sqr() + beta.norm_sqr();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > TOL_NORM {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { alpha, beta })
    }

    pub fn normalized_from(alpha: C64, beta: C64) -> Result<Self> {
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if !norm.is_finite() || norm <= EPS_SINGULAR {
            return Err(Error::ZeroNorm);
        }
        Ok(Self {
            alpha: alpha / norm,
            beta: beta / norm,
        })
    }

    /// Real-amplitude state `cos t |0⟩ + sin t |1⟩`.
    pub fn from_angle(t: f64) -> Self {
        let (s, c) = t.sin_cos();
        Self {
            alpha: C64::new(c, 0.0),
            beta: C64::new(s, 0.0),
        }
    }

    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    pub fn beta(&self) -> C64 {
        self.beta
    }

    pub fn amplitudes(&self) -> [C64; 2] {
        [self.alpha, self.beta]
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.alpha.conj() * other.alpha + self.beta.conj() * other.beta
    }

    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// The state orthogonal to `self`, with its phase fixed.
    pub fn orthogonal(&self) -> Self {
        Self {
            alpha: -self.beta.conj(),
            beta: self.alpha.conj(),
        }
        .phase_fixed()
    }

    /// Same ray, with the first non-negligible amplitude made real positive.
    pub fn phase_fixed(&self) -> Self {
        let lead = if self.alpha.norm() > PHASE_FIX_EPS {
            self.alpha
        } else {
            self.beta
        };
        let phase = lead.conj() / lead.norm();
        Self {
            alpha: self.alpha * phase,
            beta: self.beta * phase,
        }
    }

    /// Multiplies both amplitudes by `e^{iφ}`. The result stays on the same
    /// Hopf fibre.
    pub fn fiber_sample(&self, phi: f64) -> Self {
        let phase = C64::from_polar(1.0, phi);
        Self {
            alpha: self.alpha * phase,
            beta: self.beta * phase,
        }
    }

    /// `X = 2Re(ᾱβ)`, `Y = 2Im(ᾱβ)`, `Z = |α|² − |β|²`.
    pub fn bloch_coordinates(&self) -> BlochVector {
        let ab = self.alpha.conj() * self.beta;
        BlochVector {
            x: 2.0 * ab.re,
            y: 2.0 * ab.im,
            z: self.alpha.norm_sqr() - self.beta.norm_sqr(),
        }
    }

    /// Pure-state density matrix assembled from the Bloch vector,
    /// `½ [[1+Z, X−iY], [X+iY, 1−Z]]`.
    pub fn density_matrix(&self) -> Matrix2 {
        let b = self.bloch_coordinates();
        Matrix2::from_rows([
            [
                C64::new(0.5 * (1.0 + b.z), 0.0),
                C64::new(0.5 * b.x, -0.5 * b.y),
            ],
            [
                C64::new(0.5 * b.x, 0.5 * b.y),
                C64::new(0.5 * (1.0 - b.z), 0.0),
            ],
        ])
    }

    /// `h₁(α, β) = conj(α β⁻¹)`, or ∞ when `|β| ≤ EPS_SINGULAR`.
    pub fn hopf_h1(&self) -> ComplexOrInfinity {
        if self.beta.norm() <= EPS_SINGULAR {
            ComplexOrInfinity::Infinity
        } else {
            ComplexOrInfinity::Finite((self.alpha / self.beta).conj())
        }
    }

    /// The point `α + βj` of the unit quaternion sphere.
    pub fn to_s3_point(&self) -> Quaternion {
        Quaternion::from_complex_pair(self.alpha, self.beta)
    }

    pub fn from_s3_point(q: Quaternion) -> Result<Self> {
        let (alpha, beta) = q.to_complex_pair();
        Self::new(alpha, beta)
    }
}

impl BlochVector {
    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn max_abs_diff(self, other: Self) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }
}

impl ComplexOrInfinity {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinity)
    }

    pub fn finite(&self) -> Option<C64> {
        match *self {
            Self::Finite(c) => Some(c),
            Self::Infinity => None,
        }
    }

    /// A state on the fibre over this point: `h₁` of the result is `self`.
    pub fn representative_state(&self) -> QubitState {
        match *self {
            Self::Infinity => QubitState::ZERO_KET,
            Self::Finite(c) => {
                // conj(α/β) = c with β real positive
                let beta = 1.0 / (1.0 + c.norm_sqr()).sqrt();
                QubitState {
                    alpha: c.conj() * beta,
                    beta: C64::new(beta, 0.0),
                }
            }
        }
    }
}

/// The `h₂` map: inverse stereographic projection from the north pole
/// `(0, 0, 1)` with the complex plane cutting the unit sphere along its
/// equator. `∞` lands on the pole.
pub fn inverse_stereo_s2(c: ComplexOrInfinity) -> BlochVector {
    match c {
        ComplexOrInfinity::Infinity => BlochVector {
            x: 0.0,
            y: 0.0,
            z: 1.0,
        },
        ComplexOrInfinity::Finite(c) => {
            let m = c.norm_sqr();
            let d = 1.0 + m;
            BlochVector {
                x: 2.0 * c.re / d,
                y: 2.0 * c.im / d,
                z: (m - 1.0) / d,
            }
        }
    }
}

/// Full `S³ → S²` Hopf map, `h₂ ∘ h₁`.
pub fn hopf_map(s: &QubitState) -> BlochVector {
    inverse_stereo_s2(s.hopf_h1())
}
