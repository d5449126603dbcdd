//! Two-qubit pure states `α|00⟩ + β|01⟩ + γ|10⟩ + δ|11⟩`.
//!
//! Entanglement enters through the two complex numbers
//! `C₁ = ᾱγ + β̄δ` and `C₂ = αδ − βγ`, and the angle `Ω` with
//! `cos Ω = √(|α|²+|β|²)`. Separability is `C₂ = 0`, the concurrence is
//! `2|C₂|`, and the Schmidt weights follow from `|C₂|` alone.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::oracle;
use crate::single_qubit::QubitState;
use crate::{Error, Result, C64, EPS_POLE, EPS_SINGULAR, TOL_NORM};

/// Below this norm an unnormalized first-qubit Schmidt vector is considered
/// degenerate and the oracle eigenbasis is used instead.
const SCHMIDT_VECTOR_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoQubitState {
    amps: [C64; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    X,
    Y,
    Z,
}

/// Which tensor factor an operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Slot {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HopfInvariants {
    pub c1: C64,
    pub c2: C64,
    /// In `[0, π/2]`.
    pub omega: f64,
}

/// `cos Ω |0⟩⊗|u₂⟩ + sin Ω |1⟩⊗|v₂⟩`, generally not a Schmidt form since
/// `⟨u₂|v₂⟩` need not vanish.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrivialDecomposition {
    pub omega: f64,
    pub u2: QubitState,
    pub v2: QubitState,
    pub overlap: C64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchmidtData {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// `cos ε/2 = √λ₊`
    pub weight_cos: f64,
    /// `sin ε/2 = √λ₋`
    pub weight_sin: f64,
    pub basis1_plus: QubitState,
    pub basis1_minus: QubitState,
    pub basis2_plus: QubitState,
    pub basis2_minus: QubitState,
}

impl TwoQubitState {
    pub fn new(alpha: C64, beta: C64, gamma: C64, delta: C64) -> Result<Self> {
        Self::from_amplitudes([alpha, beta, gamma, delta])
    }

    /// Rejects amplitudes whose squared norm is off by more than [`TOL_NORM`].
    pub fn from_amplitudes(amps: [C64; 4]) -> Result<Self> {
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > TOL_NORM {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { amps })
    }

    pub fn normalized_from(amps: [C64; 4]) -> Result<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm <= EPS_SINGULAR {
            return Err(Error::ZeroNorm);
        }
        Ok(Self {
            amps: amps.map(|a| a / norm),
        })
    }

    /// Computational basis state `|00⟩, |01⟩, |10⟩, |11⟩` for `index` 0..=3.
    pub fn basis(index: usize) -> Self {
        let mut amps = [C64::new(0.0, 0.0); 4];
        amps[index] = C64::new(1.0, 0.0);
        Self { amps }
    }

    pub fn product(first: &QubitState, second: &QubitState) -> Self {
        let [a0, a1] = first.amplitudes();
        let [b0, b1] = second.amplitudes();
        Self {
            amps: [a0 * b0, a0 * b1, a1 * b0, a1 * b1],
        }
    }

    pub fn amplitudes(&self) -> [C64; 4] {
        self.amps
    }

    pub fn alpha(&self) -> C64 {
        self.amps[0]
    }

    pub fn beta(&self) -> C64 {
        self.amps[1]
    }

    pub fn gamma(&self) -> C64 {
        self.amps[2]
    }

    pub fn delta(&self) -> C64 {
        self.amps[3]
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn fidelity(&self, other: &Self) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn global_phase(&self, phi: f64) -> Self {
        let p = C64::from_polar(1.0, phi);
        Self {
            amps: self.amps.map(|a| a * p),
        }
    }

    /// `(⟨b|⊗Id)|ψ⟩`, a vector of the second qubit.
    pub fn contract_first(&self, b: &QubitState) -> [C64; 2] {
        let [b0, b1] = b.amplitudes();
        [
            b0.conj() * self.amps[0] + b1.conj() * self.amps[2],
            b0.conj() * self.amps[1] + b1.conj() * self.amps[3],
        ]
    }

    /// `⟨first ⊗ second|ψ⟩`.
    pub fn coefficient(&self, first: &QubitState, second: &QubitState) -> C64 {
        let w = self.contract_first(first);
        let [s0, s1] = second.amplitudes();
        s0.conj() * w[0] + s1.conj() * w[1]
    }

    /// `|q₁|² = |α|² + |β|²`.
    pub fn first_weight(&self) -> f64 {
        self.amps[0].norm_sqr() + self.amps[1].norm_sqr()
    }

    pub fn hopf_invariants(&self) -> HopfInvariants {
        let [a, b, g, d] = self.amps;
        let cos_omega = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let sin_omega = (g.norm_sqr() + d.norm_sqr()).sqrt();
        HopfInvariants {
            c1: a.conj() * g + b.conj() * d,
            c2: a * d - b * g,
            omega: sin_omega.atan2(cos_omega),
        }
    }

    /// `c = 2|αδ − βγ|`, clamped to `[0, 1]`.
    pub fn concurrence(&self) -> f64 {
        let [a, b, g, d] = self.amps;
        (2.0 * (a * d - b * g).norm()).min(1.0)
    }

    pub fn is_separable(&self, tol: f64) -> bool {
        self.concurrence() <= tol
    }

    /// `⟨E⟩ = ψᵀ(−σy⊗σy)ψ = 2(αδ − βγ)`. Its real and imaginary parts are the
    /// base coordinates `x₃`, `x₄`; its modulus is the concurrence.
    pub fn entanglor_expectation(&self) -> C64 {
        let [a, b, g, d] = self.amps;
        (a * d - b * g) * 2.0
    }

    /// Fails with [`Error::PoleState`] when `Ω` is within [`EPS_POLE`] of 0 or π/2.
    pub fn trivial_decomposition(&self) -> Result<TrivialDecomposition> {
        let omega = self.hopf_invariants().omega;
        if !(EPS_POLE..=FRAC_PI_2 - EPS_POLE).contains(&omega) {
            return Err(Error::PoleState { omega });
        }
        let [a, b, g, d] = self.amps;
        let (sin_o, cos_o) = omega.sin_cos();
        let u2 = QubitState::normalized_from(a / cos_o, b / cos_o)?;
        let v2 = QubitState::normalized_from(g / sin_o, d / sin_o)?;
        Ok(TrivialDecomposition {
            omega,
            u2,
            v2,
            overlap: u2.inner(&v2),
        })
    }

    /// `⟨σ⊗Id⟩` or `⟨Id⊗σ⟩`, evaluated with the explicit 4×4 matrices.
    pub fn pauli_expectation(&self, p: Pauli, slot: Slot) -> f64 {
        oracle::expectation(self, &oracle::pauli_operator(p, slot)).re
    }

    /// Schmidt decomposition expressed through the Hopf parameters.
    ///
    /// `λ± = (1 ± √(1 − c²))/2`. The first-qubit vectors come from
    /// normalizing `C̄₁|0⟩ + (λ± − |q₁|²)|1⟩`; when both are degenerate
    /// (`C₁ = 0` on a degenerate spectrum) the oracle eigenbasis of `ρ₁` is
    /// used. The second-qubit vectors are the contractions `⟨b₁±|ψ⟩`,
    /// which makes both reconstruction coefficients real positive.
    pub fn schmidt(&self) -> SchmidtData {
        let c = self.concurrence();
        // √(1 − c²) = |(cos 2Ω, 2C₁)|, free of the square-root loss near c = 1
        let inv = self.hopf_invariants();
        let q1_sq = self.first_weight();
        let disc = (2.0 * q1_sq - 1.0).hypot(2.0 * inv.c1.norm()).min(1.0);
        let lambda_plus = 0.5 * (1.0 + disc);
        // λ₊λ₋ = det ρ₁ = c²/4, without the cancellation in (1 − disc)/2
        let lambda_minus = 0.25 * c * c / lambda_plus;

        let vectors = schmidt_first_qubit_vectors_with(self, lambda_plus, lambda_minus);
        let norms = vectors.map(|v| (v[0].norm_sqr() + v[1].norm_sqr()).sqrt());
        let (b1_plus, b1_minus) = if norms[0].max(norms[1]) > SCHMIDT_VECTOR_EPS {
            let k = usize::from(norms[1] > norms[0]);
            let v = QubitState::normalized_from(vectors[k][0], vectors[k][1])
                .expect("norm checked above")
                .phase_fixed();
            if k == 0 {
                (v, v.orthogonal())
            } else {
                (v.orthogonal(), v)
            }
        } else {
            let rho1 = oracle::partial_trace(&oracle::outer_product(self), Slot::First)
                .expect("pure-state outer product is a density matrix");
            let e = rho1.eig();
            (e.v_plus, e.v_minus)
        };

        let w_plus = self.contract_first(&b1_plus);
        let b2_plus = QubitState::normalized_from(w_plus[0], w_plus[1])
            .expect("contraction with the dominant Schmidt vector has norm ≥ 1/√2");
        let w_minus = self.contract_first(&b1_minus);
        let mut b2_minus = b2_plus.orthogonal();
        let kappa = b2_minus.alpha().conj() * w_minus[0] + b2_minus.beta().conj() * w_minus[1];
        if kappa.norm() > EPS_SINGULAR {
            let phase = kappa / kappa.norm();
            b2_minus = QubitState::new(b2_minus.alpha() * phase, b2_minus.beta() * phase)
                .expect("phase rotation preserves the norm");
        }

        SchmidtData::from_parts(
            lambda_plus,
            lambda_minus,
            [b1_plus, b1_minus],
            [b2_plus, b2_minus],
        )
    }
}

/// The unnormalized first-qubit Schmidt vectors
/// `|φ±⟩ = C̄₁|0⟩ + (λ± − |q₁|²)|1⟩`, in the order `(+, −)`.
pub fn schmidt_first_qubit_vectors(s: &TwoQubitState) -> [[C64; 2]; 2] {
    let sd = s.schmidt();
    schmidt_first_qubit_vectors_with(s, sd.lambda_plus, sd.lambda_minus)
}

fn schmidt_first_qubit_vectors_with(
    s: &TwoQubitState,
    lambda_plus: f64,
    lambda_minus: f64,
) -> [[C64; 2]; 2] {
    let c1_bar = s.hopf_invariants().c1.conj();
    let q1_sq = s.first_weight();
    [
        [c1_bar, C64::new(lambda_plus - q1_sq, 0.0)],
        [c1_bar, C64::new(lambda_minus - q1_sq, 0.0)],
    ]
}

impl TrivialDecomposition {
    pub fn reassemble(&self) -> [C64; 4] {
        let (s, c) = self.omega.sin_cos();
        let [u0, u1] = self.u2.amplitudes();
        let [v0, v1] = self.v2.amplitudes();
        [u0 * c, u1 * c, v0 * s, v1 * s]
    }
}

impl SchmidtData {
    pub fn from_parts(
        lambda_plus: f64,
        lambda_minus: f64,
        basis1: [QubitState; 2],
        basis2: [QubitState; 2],
    ) -> Self {
        Self {
            lambda_plus,
            lambda_minus,
            weight_cos: lambda_plus.max(0.0).sqrt(),
            weight_sin: lambda_minus.max(0.0).sqrt(),
            basis1_plus: basis1[0],
            basis1_minus: basis1[1],
            basis2_plus: basis2[0],
            basis2_minus: basis2[1],
        }
    }

    /// `cos ε/2 · b₁₊⊗b₂₊ + sin ε/2 · b₁₋⊗b₂₋`.
    pub fn reconstruct(&self) -> [C64; 4] {
        let p = TwoQubitState::product(&self.basis1_plus, &self.basis2_plus).amplitudes();
        let m = TwoQubitState::product(&self.basis1_minus, &self.basis2_minus).amplitudes();
        std::array::from_fn(|i| p[i] * self.weight_cos + m[i] * self.weight_sin)
    }

    /// `|⟨ψ|reconstruction⟩|²`.
    pub fn fidelity_with(&self, s: &TwoQubitState) -> f64 {
        let r = self.reconstruct();
        s.amplitudes()
            .iter()
            .zip(r.iter())
            .map(|(a, b)| a.conj() * b)
            .sum::<C64>()
            .norm_sqr()
    }
}
