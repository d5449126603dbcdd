//! Brute-force linear algebra on explicit 2×2 and 4×4 complex matrices.
//!
//! Nothing here goes through quaternions or the Hopf maps: states become
//! outer products, marginals come from index-summing partial traces and
//! spectra from the closed-form 2×2 Hermitian eigensolver. Every Hopf-side
//! quantity in the crate is checked against this path.

use std::ops::{Add, Mul, Sub};

use crate::single_qubit::QubitState;
use crate::two_qubit::{Pauli, SchmidtData, Slot, TwoQubitState};
use crate::{Error, Result, C64};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Half-gap below which a 2×2 Hermitian spectrum is treated as degenerate.
pub const DEGENERACY_EPS: f64 = 1e-12;

const HERMITIAN_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-9;
const POSITIVITY_TOL: f64 = 1e-10;
/// Spectra of the two marginals must agree to this before pairing them.
const COMMON_SPECTRUM_TOL: f64 = 1e-10;
/// Below this eigenvalue gap the marginal eigenvectors are not used for
/// pairing; the second basis is obtained by contraction instead.
const PAIRING_GAP: f64 = 1e-6;
const COLLINEARITY_TOL: f64 = 1e-8;

/// Dense row-major `N × N` complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix<const N: usize> {
    entries: [[C64; N]; N],
}

pub type Matrix2 = ComplexMatrix<2>;
pub type Matrix4 = ComplexMatrix<4>;

impl<const N: usize> ComplexMatrix<N> {
    pub fn zeros() -> Self {
        Self {
            entries: [[ZERO; N]; N],
        }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.entries[i][i] = ONE;
        }
        m
    }

    pub const fn from_rows(entries: [[C64; N]; N]) -> Self {
        Self { entries }
    }

    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        let mut m = Self::zeros();
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m.entries[r][c] = C64::new(*v, 0.0);
            }
        }
        m
    }

    /// `|v⟩⟨v|`.
    pub fn outer(v: [C64; N]) -> Self {
        let mut m = Self::zeros();
        for r in 0..N {
            for c in 0..N {
                m.entries[r][c] = v[r] * v[c].conj();
            }
        }
        m
    }

    pub fn rows(&self) -> &[[C64; N]; N] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row][col]
    }

    pub fn dagger(&self) -> Self {
        let mut m = Self::zeros();
        for r in 0..N {
            for c in 0..N {
                m.entries[r][c] = self.entries[c][r].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for r in 0..N {
            for c in 0..N {
                m.entries[r][c] = self.entries[c][r];
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.entries[i][i]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        m.entries.iter_mut().flatten().for_each(|e| *e *= s);
        m
    }

    pub fn apply(&self, v: &[C64; N]) -> [C64; N] {
        let mut out = [ZERO; N];
        for (r, o) in out.iter_mut().enumerate() {
            *o = (0..N).map(|c| self.entries[r][c] * v[c]).sum();
        }
        out
    }

    /// `⟨u|M|v⟩`.
    pub fn sandwich(&self, u: &[C64; N], v: &[C64; N]) -> C64 {
        let mv = self.apply(v);
        u.iter().zip(mv.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    /// `uᵀ M v`, without conjugating `u`.
    pub fn bilinear(&self, u: &[C64; N], v: &[C64; N]) -> C64 {
        let mv = self.apply(v);
        u.iter().zip(mv.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d = 0.0_f64;
        for r in 0..N {
            for c in 0..N {
                d = d.max((self.entries[r][c] - other.entries[r][c]).norm());
            }
        }
        d
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.dagger()) <= tol
    }
}

impl<const N: usize> Add for ComplexMatrix<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for r in 0..N {
            for c in 0..N {
                self.entries[r][c] += rhs.entries[r][c];
            }
        }
        self
    }
}

impl<const N: usize> Sub for ComplexMatrix<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for r in 0..N {
            for c in 0..N {
                self.entries[r][c] -= rhs.entries[r][c];
            }
        }
        self
    }
}

impl<const N: usize> Mul for ComplexMatrix<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zeros();
        for r in 0..N {
            for c in 0..N {
                m.entries[r][c] = (0..N).map(|k| self.entries[r][k] * rhs.entries[k][c]).sum();
            }
        }
        m
    }
}

impl Matrix2 {
    pub fn det(&self) -> C64 {
        self.entries[0][0] * self.entries[1][1] - self.entries[0][1] * self.entries[1][0]
    }

    /// Kronecker product in the `(|00⟩, |01⟩, |10⟩, |11⟩)` ordering.
    pub fn kron(&self, other: &Matrix2) -> Matrix4 {
        let mut m = Matrix4::zeros();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        m.entries[2 * a + c][2 * b + d] = self.entries[a][b] * other.entries[c][d];
                    }
                }
            }
        }
        m
    }
}

pub const SIGMA_X: Matrix2 = Matrix2::from_rows([[ZERO, ONE], [ONE, ZERO]]);
pub const SIGMA_Y: Matrix2 = Matrix2::from_rows([[ZERO, C64::new(0.0, -1.0)], [I, ZERO]]);
pub const SIGMA_Z: Matrix2 = Matrix2::from_rows([[ONE, ZERO], [ZERO, C64::new(-1.0, 0.0)]]);

pub fn pauli_matrix(p: Pauli) -> Matrix2 {
    match p {
        Pauli::X => SIGMA_X,
        Pauli::Y => SIGMA_Y,
        Pauli::Z => SIGMA_Z,
    }
}

/// `σ ⊗ Id` or `Id ⊗ σ`.
pub fn pauli_operator(p: Pauli, slot: Slot) -> Matrix4 {
    let sigma = pauli_matrix(p);
    match slot {
        Slot::First => sigma.kron(&Matrix2::identity()),
        Slot::Second => Matrix2::identity().kron(&sigma),
    }
}

/// `−σy ⊗ σy`, the linear part of the entanglor.
pub fn entanglor_operator() -> Matrix4 {
    SIGMA_Y.kron(&SIGMA_Y).scale(C64::new(-1.0, 0.0))
}

/// Trace-one, Hermitian, positive semidefinite 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedDensity(Matrix2);

/// Output of [`eig2_hermitian`]: `λ₊ ≥ λ₋` with orthonormal eigenvectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigen2 {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub v_plus: QubitState,
    pub v_minus: QubitState,
}

impl ReducedDensity {
    pub fn new(m: Matrix2) -> Result<Self> {
        if !m.is_hermitian(HERMITIAN_TOL) {
            return Err(Error::BadDensityMatrix("not Hermitian"));
        }
        if (m.trace() - ONE).norm() > TRACE_TOL {
            return Err(Error::BadDensityMatrix("trace differs from 1"));
        }
        if eig2_hermitian(&m).lambda_minus < -POSITIVITY_TOL {
            return Err(Error::BadDensityMatrix("negative eigenvalue"));
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.0
    }

    pub fn det(&self) -> f64 {
        self.0.det().re
    }

    pub fn eig(&self) -> Eigen2 {
        eig2_hermitian(&self.0)
    }
}

/// `|ψ⟩⟨ψ|` as a 4×4 matrix.
pub fn outer_product(s: &TwoQubitState) -> Matrix4 {
    Matrix4::outer(s.amplitudes())
}

/// Traces out the other qubit, keeping `keep`.
pub fn partial_trace(rho: &Matrix4, keep: Slot) -> Result<ReducedDensity> {
    if !rho.is_hermitian(HERMITIAN_TOL) {
        return Err(Error::BadDensityMatrix("not Hermitian"));
    }
    if (rho.trace() - ONE).norm() > TRACE_TOL {
        return Err(Error::BadDensityMatrix("trace differs from 1"));
    }
    let mut m = Matrix2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            m.entries[i][j] = (0..2)
                .map(|k| match keep {
                    Slot::First => rho.entries[2 * i + k][2 * j + k],
                    Slot::Second => rho.entries[2 * k + i][2 * k + j],
                })
                .sum();
        }
    }
    ReducedDensity::new(m)
}

/// Closed-form eigendecomposition of a Hermitian 2×2 matrix
/// `[[a, b̄], [b, d]]`.
///
/// Eigenvalues are `(a+d)/2 ± r` with `r = √(((a−d)/2)² + |b|²)`. For
/// `r ≤ DEGENERACY_EPS` the computational basis is returned. Eigenvectors
/// have their first non-negligible component real positive.
pub fn eig2_hermitian(m: &Matrix2) -> Eigen2 {
    let a = m.entries[0][0].re;
    let d = m.entries[1][1].re;
    let b = m.entries[1][0];
    let mean = 0.5 * (a + d);
    let half_diff = 0.5 * (a - d);
    let r = half_diff.hypot(b.norm());
    if r <= DEGENERACY_EPS {
        return Eigen2 {
            lambda_plus: mean,
            lambda_minus: mean,
            v_plus: QubitState::ZERO_KET,
            v_minus: QubitState::ONE_KET,
        };
    }
    // Both branches avoid cancellation in the non-trivial component.
    let v = if half_diff >= 0.0 {
        [C64::new(half_diff + r, 0.0), b]
    } else {
        [b.conj(), C64::new(r - half_diff, 0.0)]
    };
    let v_plus = QubitState::normalized_from(v[0], v[1])
        .expect("eigenvector has modulus at least r")
        .phase_fixed();
    Eigen2 {
        lambda_plus: mean + r,
        lambda_minus: mean - r,
        v_plus,
        v_minus: v_plus.orthogonal(),
    }
}

/// `⟨ψ|op|ψ⟩`.
pub fn expectation(s: &TwoQubitState, op: &Matrix4) -> C64 {
    let v = s.amplitudes();
    op.sandwich(&v, &v)
}

/// `ψᵀ(−σy⊗σy)ψ` by explicit matrix multiplication (transpose, not adjoint).
pub fn entanglor_matrix_path(s: &TwoQubitState) -> C64 {
    let v = s.amplitudes();
    entanglor_operator().bilinear(&v, &v)
}

/// `2√det ρ₁` from the partial-trace path.
pub fn concurrence_via_det(s: &TwoQubitState) -> f64 {
    let rho1 = partial_trace(&outer_product(s), Slot::First)
        .expect("pure-state outer product is a density matrix");
    2.0 * rho1.det().max(0.0).sqrt()
}

/// Angle between two complex rays in `C²`.
pub fn ray_angle(u: [C64; 2], v: [C64; 2]) -> f64 {
    let nu = (u[0].norm_sqr() + u[1].norm_sqr()).sqrt();
    let nv = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let u = [u[0] / nu, u[1] / nu];
    let v = [v[0] / nv, v[1] / nv];
    let ov = u[0].conj() * v[0] + u[1].conj() * v[1];
    let residual = ((v[0] - ov * u[0]).norm_sqr() + (v[1] - ov * u[1]).norm_sqr()).sqrt();
    residual.atan2(ov.norm())
}

/// Schmidt decomposition from the eigendecompositions of both marginals.
///
/// Checks along the way that the two marginal spectra coincide and that the
/// unnormalized first-qubit vectors `C̄₁|0⟩ + (λ± − |q₁|²)|1⟩` are collinear
/// with the eigenvectors of `ρ₁` wherever both are well conditioned; either
/// failure is reported as [`Error::OracleMismatch`].
pub fn schmidt_via_oracle(s: &TwoQubitState) -> Result<SchmidtData> {
    let rho = outer_product(s);
    let e1 = partial_trace(&rho, Slot::First)?.eig();
    let e2 = partial_trace(&rho, Slot::Second)?.eig();

    let gap = (e1.lambda_plus - e2.lambda_plus)
        .abs()
        .max((e1.lambda_minus - e2.lambda_minus).abs());
    if gap > COMMON_SPECTRUM_TOL {
        return Err(Error::OracleMismatch(format!(
            "marginal spectra differ by {gap:e}"
        )));
    }

    let spread = e1.lambda_plus - e1.lambda_minus;
    if spread >= PAIRING_GAP {
        let closed_form = crate::two_qubit::schmidt_first_qubit_vectors(s);
        for (v, e) in closed_form.iter().zip([e1.v_plus, e1.v_minus]) {
            let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
            if norm >= PAIRING_GAP {
                let angle = ray_angle(*v, e.amplitudes());
                if angle > COLLINEARITY_TOL {
                    return Err(Error::OracleMismatch(format!(
                        "first-qubit Schmidt vector off by {angle:e} rad"
                    )));
                }
            }
        }
    }

    let b1 = [e1.v_plus, e1.v_minus];
    let mut b2 = [e2.v_plus, e2.v_minus];
    if spread >= PAIRING_GAP {
        // Rotate each ρ₂ eigenvector so its reconstruction coefficient is real positive.
        for (b1k, b2k) in b1.iter().zip(b2.iter_mut()) {
            let kappa = s.coefficient(b1k, b2k);
            if kappa.norm() > 1e-12 {
                let phase = kappa / kappa.norm();
                *b2k = QubitState::new(b2k.alpha() * phase, b2k.beta() * phase)
                    .expect("phase rotation preserves the norm");
            }
        }
    } else {
        // Degenerate spectrum: any orthonormal first basis works, the second
        // follows by contraction.
        for (b1k, b2k) in b1.iter().zip(b2.iter_mut()) {
            let w = s.contract_first(b1k);
            *b2k = QubitState::normalized_from(w[0], w[1])?;
        }
    }

    Ok(SchmidtData::from_parts(
        e1.lambda_plus.clamp(0.0, 1.0),
        e1.lambda_minus.clamp(0.0, 1.0),
        b1,
        b2,
    ))
}
