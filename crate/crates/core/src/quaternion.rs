//! Hamilton quaternions `q = x₀ + x₁i + x₂j + x₃k`.
//!
//! Components are stored and serialized in the order `(1, i, j, k)`. A
//! quaternion is also a pair of complex numbers `q = c₁ + c₂j` with
//! `c₁ = x₀ + x₁i` and `c₂ = x₂ + x₃i`; this is the form the Hopf maps use.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64, EPS_SINGULAR};

/// Tolerance used by [`Quaternion::exp_axis`] to validate its axis.
pub const AXIS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl From<[f64; 4]> for Quaternion {
    fn from(v: [f64; 4]) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        q.to_array()
    }
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self { x0, x1, x2, x3 }
    }

    pub const fn real(x0: f64) -> Self {
        Self::new(x0, 0.0, 0.0, 0.0)
    }

    pub const fn to_array(self) -> [f64; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }

    /// Builds `c₁ + c₂j`.
    pub fn from_complex_pair(c1: C64, c2: C64) -> Self {
        Self::new(c1.re, c1.im, c2.re, c2.im)
    }

    /// Inverse of [`Quaternion::from_complex_pair`].
    pub fn to_complex_pair(self) -> (C64, C64) {
        (C64::new(self.x0, self.x1), C64::new(self.x2, self.x3))
    }

    pub fn conj(self) -> Self {
        Self::new(self.x0, -self.x1, -self.x2, -self.x3)
    }

    pub fn norm_sq(self) -> f64 {
        self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_unit(self, tol: f64) -> bool {
        (self.norm_sq() - 1.0).abs() <= tol
    }

    /// `conj(q) / |q|²`. Fails with [`Error::NearZeroQuaternion`] when
    /// `|q| ≤ EPS_SINGULAR`; Hopf-map callers read that as "maps to ∞".
    pub fn inverse(self) -> Result<Self> {
        let modulus = self.norm();
        if modulus <= EPS_SINGULAR {
            return Err(Error::NearZeroQuaternion { modulus });
        }
        Ok(self.conj() * (1.0 / self.norm_sq()))
    }

    pub fn normalize(self) -> Result<Self> {
        let modulus = self.norm();
        if modulus <= EPS_SINGULAR {
            return Err(Error::NearZeroQuaternion { modulus });
        }
        Ok(self * (1.0 / modulus))
    }

    /// Scalar part `S(q) = (q + q̄)/2`.
    pub fn scalar(self) -> f64 {
        self.x0
    }

    /// Vector part `V(q) = (q − q̄)/2`.
    pub fn vector(self) -> Self {
        Self::new(0.0, self.x1, self.x2, self.x3)
    }

    /// `(S(q), V(q))`; `S(q) + V(q)` reassembles `q`.
    pub fn scalar_vector_split(self) -> (f64, Self) {
        (self.scalar(), self.vector())
    }

    /// Components of `V(q)` along `i`, `j` and `k`.
    pub fn vector_components(self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    /// `exp(φt) = cos φ + sin φ·t` for a unit pure imaginary axis `t`.
    ///
    /// The axis is checked, not renormalized: it must satisfy `|S(t)| ≤ 1e-9`
    /// and `| |t|² − 1 | ≤ 1e-9`.
    pub fn exp_axis(phi: f64, axis: Self) -> Result<Self> {
        if axis.x0.abs() > AXIS_TOL || !axis.is_unit(AXIS_TOL) {
            return Err(Error::InvalidAxis);
        }
        let (s, c) = phi.sin_cos();
        Ok(Self::real(c) + axis * s)
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x0 * other.x0 + self.x1 * other.x1 + self.x2 * other.x2 + self.x3 * other.x3
    }

    pub fn max_abs_diff(self, other: Self) -> f64 {
        (self - other)
            .to_array()
            .iter()
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.x0 + rhs.x0,
            self.x1 + rhs.x1,
            self.x2 + rhs.x2,
            self.x3 + rhs.x3,
        )
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(
            self.x0 - rhs.x0,
            self.x1 - rhs.x1,
            self.x2 - rhs.x2,
            self.x3 - rhs.x3,
        )
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x0, -self.x1, -self.x2, -self.x3)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.x0 * s, self.x1 * s, self.x2 * s, self.x3 * s)
    }
}

/// Hamilton product, `i² = j² = k² = ijk = −1`.
impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a0, a1, a2, a3) = (self.x0, self.x1, self.x2, self.x3);
        let (b0, b1, b2, b3) = (rhs.x0, rhs.x1, rhs.x2, rhs.x3);
        Self::new(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )
    }
}
