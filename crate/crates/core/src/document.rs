//! The JSON state document read and written by the CLI, and the analysis
//! report built from it.

use serde::{Deserialize, Serialize};

use crate::hopf_s7::{base_coordinates, torus_radii, FibrationChart, S4Point};
use crate::oracle::{self, SIGMA_X, SIGMA_Y, SIGMA_Z};
use crate::single_qubit::{
    hopf_map, inverse_stereo_s2, BlochVector, ComplexOrInfinity, QubitState,
};
use crate::two_qubit::{Pauli, SchmidtData, Slot, TwoQubitState};
use crate::viz::{ball_projection, BallPoint};
use crate::{Error, Result, C64};

pub const DOCUMENT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDocument {
    pub version: String,
    /// `[re, im]` pairs, 2 for one qubit and 4 for two.
    pub amplitudes: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParsedState {
    Qubit(QubitState),
    TwoQubit(TwoQubitState),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisReport {
    pub input: StateDocument,
    pub chart: FibrationChart,
    pub tolerance: f64,
    /// Whether the input amplitudes were rescaled before analysis.
    pub normalized: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qubit: Option<QubitReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_qubit: Option<TwoQubitReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QubitReport {
    pub bloch: BlochVector,
    pub hopf: ComplexOrInfinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoQubitReport {
    /// Base point in the report's chart.
    pub base: S4Point,
    pub c1: C64,
    pub c2: C64,
    pub omega: f64,
    pub concurrence: f64,
    pub separable: bool,
    pub entanglor: C64,
    pub ball: BallPoint,
    pub torus_radii: [f64; 2],
    pub schmidt: SchmidtData,
}

fn c64(z: [f64; 2]) -> C64 {
    C64::new(z[0], z[1])
}

impl StateDocument {
    pub fn new(amplitudes: &[C64], label: Option<String>) -> Self {
        Self {
            version: DOCUMENT_VERSION.into(),
            amplitudes: amplitudes.iter().map(|z| [z.re, z.im]).collect(),
            label,
        }
    }

    pub fn from_qubit(s: &QubitState, label: Option<String>) -> Self {
        Self::new(&s.amplitudes(), label)
    }

    pub fn from_two_qubit(s: &TwoQubitState, label: Option<String>) -> Self {
        Self::new(&s.amplitudes(), label)
    }

    /// Schema checks: version, length, finiteness.
    pub fn validate(&self) -> Result<()> {
        if self.version != DOCUMENT_VERSION {
            return Err(Error::InvalidParameter(format!(
                "unsupported document version {:?}",
                self.version
            )));
        }
        if !matches!(self.amplitudes.len(), 2 | 4) {
            return Err(Error::InvalidParameter(format!(
                "expected 2 or 4 amplitudes, got {}",
                self.amplitudes.len()
            )));
        }
        if self.amplitudes.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("non-finite amplitude".into()));
        }
        Ok(())
    }

    /// Builds the state. Without `normalize` the amplitudes must already be
    /// unit to within [`crate::TOL_NORM`].
    pub fn to_state(&self, normalize: bool) -> Result<ParsedState> {
        self.validate()?;
        let amps: Vec<C64> = self.amplitudes.iter().copied().map(c64).collect();
        Ok(match amps.len() {
            2 if normalize => ParsedState::Qubit(QubitState::normalized_from(amps[0], amps[1])?),
            2 => ParsedState::Qubit(QubitState::new(amps[0], amps[1])?),
            _ => {
                let a = [amps[0], amps[1], amps[2], amps[3]];
                ParsedState::TwoQubit(if normalize {
                    TwoQubitState::normalized_from(a)?
                } else {
                    TwoQubitState::from_amplitudes(a)?
                })
            }
        })
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().flatten().map(|x| x * x).sum()
    }
}

/// Full analysis of a document.
pub fn analyze(
    input: &StateDocument,
    chart: FibrationChart,
    normalize: bool,
    tolerance: f64,
) -> Result<AnalysisReport> {
    let state = input.to_state(normalize)?;
    let mut report = AnalysisReport {
        input: input.clone(),
        chart,
        tolerance,
        normalized: normalize && (input.norm_sq() - 1.0).abs() > 0.0,
        qubit: None,
        two_qubit: None,
    };
    match state {
        ParsedState::Qubit(s) => {
            report.qubit = Some(QubitReport {
                bloch: hopf_map(&s),
                hopf: s.hopf_h1(),
            });
        }
        ParsedState::TwoQubit(s) => {
            let inv = s.hopf_invariants();
            let concurrence = s.concurrence();
            let (r1, r2) = torus_radii(&s);
            report.two_qubit = Some(TwoQubitReport {
                base: base_coordinates(&s, chart),
                c1: inv.c1,
                c2: inv.c2,
                omega: inv.omega,
                concurrence,
                separable: concurrence <= tolerance,
                entanglor: s.entanglor_expectation(),
                ball: ball_projection(&s),
                torus_radii: [r1, r2],
                schmidt: s.schmidt(),
            });
        }
    }
    Ok(report)
}

struct Checker {
    tol: f64,
    mismatches: Vec<String>,
}

impl Checker {
    fn real(&mut self, name: &str, claimed: f64, expected: f64) {
        let diff = (claimed - expected).abs();
        if diff.is_nan() || diff > self.tol {
            self.mismatches
                .push(format!("{name}: reported {claimed:e}, oracle {expected:e}"));
        }
    }

    fn complex(&mut self, name: &str, claimed: C64, expected: C64) {
        let diff = (claimed - expected).norm();
        if diff.is_nan() || diff > self.tol {
            self.mismatches
                .push(format!("{name}: reported {claimed}, oracle {expected}"));
        }
    }

    fn flag(&mut self, name: &str, claimed: bool, expected: bool) {
        if claimed != expected {
            self.mismatches
                .push(format!("{name}: reported {claimed}, oracle {expected}"));
        }
    }
}

/// Recomputes every reported quantity through explicit matrices and
/// compares to within `tolerance`. Returns [`Error::OracleMismatch`]
/// listing every disagreement.
pub fn verify_report(report: &AnalysisReport, tolerance: f64) -> Result<()> {
    let state = report.input.to_state(report.normalized)?;
    let mut ck = Checker {
        tol: tolerance,
        mismatches: Vec::new(),
    };
    match (state, &report.qubit, &report.two_qubit) {
        (ParsedState::Qubit(s), Some(r), None) => check_qubit(&mut ck, &s, r),
        (ParsedState::TwoQubit(s), None, Some(r)) => {
            check_two_qubit(&mut ck, &s, r, report.chart, report.tolerance)?
        }
        _ => {
            return Err(Error::OracleMismatch(
                "report sections do not match the input size".into(),
            ))
        }
    }
    if ck.mismatches.is_empty() {
        Ok(())
    } else {
        Err(Error::OracleMismatch(ck.mismatches.join("; ")))
    }
}

fn check_qubit(ck: &mut Checker, s: &QubitState, r: &QubitReport) {
    let rho = s.density_matrix();
    let tr = |m| (rho * m).trace().re;
    ck.real("bloch.x", r.bloch.x, tr(SIGMA_X));
    ck.real("bloch.y", r.bloch.y, tr(SIGMA_Y));
    ck.real("bloch.z", r.bloch.z, tr(SIGMA_Z));
    // the stereographic image of the reported h1 must be the same point
    let from_hopf = inverse_stereo_s2(r.hopf);
    ck.real("hopf", from_hopf.max_abs_diff(r.bloch), 0.0);
}

fn check_two_qubit(
    ck: &mut Checker,
    s: &TwoQubitState,
    r: &TwoQubitReport,
    chart: FibrationChart,
    separability_tol: f64,
) -> Result<()> {
    let z1 = s.pauli_expectation(Pauli::Z, Slot::First);
    let x1 = s.pauli_expectation(Pauli::X, Slot::First);
    let y1 = s.pauli_expectation(Pauli::Y, Slot::First);
    let entanglor = oracle::entanglor_matrix_path(s);
    // |⟨E⟩| is linear in the amplitudes; 2√det ρ₁ loses half the digits near c = 0
    let concurrence = entanglor.norm();
    let rho1 = oracle::partial_trace(&oracle::outer_product(s), Slot::First)?;

    let expected_base = match chart {
        FibrationChart::Standard => [z1, x1, y1, entanglor.re, entanglor.im],
        FibrationChart::Swapped => [
            s.pauli_expectation(Pauli::Z, Slot::Second),
            s.pauli_expectation(Pauli::X, Slot::Second),
            s.pauli_expectation(Pauli::Y, Slot::Second),
            entanglor.re,
            entanglor.im,
        ],
        FibrationChart::Reversed => {
            let [a, b, g, d] = s.amplitudes();
            let p = (a.conj() * g + b * d.conj()) * 2.0;
            let q = (a.conj() * d - b * g.conj()) * 2.0;
            [z1, p.re, p.im, q.re, q.im]
        }
    };
    for (k, (claimed, expected)) in r.base.to_array().iter().zip(expected_base).enumerate() {
        ck.real(&format!("base.x{k}"), *claimed, expected);
    }

    ck.complex("c1", r.c1, C64::new(x1, y1) * 0.5);
    ck.complex("c2", r.c2, entanglor * 0.5);
    ck.real("omega", (2.0 * r.omega).cos(), z1);
    ck.real("concurrence", r.concurrence, concurrence);
    ck.real(
        "concurrence²",
        r.concurrence * r.concurrence,
        4.0 * rho1.det(),
    );
    ck.real("concurrence vs c2", r.concurrence, 2.0 * r.c2.norm());
    ck.flag("separable", r.separable, concurrence <= separability_tol);
    ck.complex("entanglor", r.entanglor, entanglor);
    ck.real("ball.x0", r.ball.x0, z1);
    ck.real("ball.x1", r.ball.x1, x1);
    ck.real("ball.x2", r.ball.x2, y1);
    ck.real("ball.concurrence", r.ball.concurrence, concurrence);
    ck.real("torus_radii[0]", r.torus_radii[0], x1.hypot(y1));
    ck.real("torus_radii[1]", r.torus_radii[1], concurrence);

    let eig = rho1.eig();
    let sd = &r.schmidt;
    ck.real("schmidt.lambda_plus", sd.lambda_plus, eig.lambda_plus);
    ck.real("schmidt.lambda_minus", sd.lambda_minus, eig.lambda_minus);
    ck.real(
        "schmidt.weight_cos",
        sd.weight_cos * sd.weight_cos,
        eig.lambda_plus,
    );
    ck.real(
        "schmidt.weight_sin",
        sd.weight_sin * sd.weight_sin,
        eig.lambda_minus,
    );
    ck.real("schmidt.reconstruction", sd.fidelity_with(s), 1.0);
    Ok(())
}
