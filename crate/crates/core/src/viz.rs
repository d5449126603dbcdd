//! Plot-ready point sets: the unit-ball picture of two-qubit states, Hopf
//! fibres of `S³` seen through stereographic projection, and foliation
//! sweeps of the `S⁴` base.
//!
//! No rendering happens here; everything is emitted as a [`PointCloud`].

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::hopf_s7::{base_coordinates, lift, FibrationChart, S4Point};
use crate::quaternion::Quaternion;
use crate::sampling::{random_unit_quaternion, stream_rng, unit_vector};
use crate::single_qubit::{hopf_map, ComplexOrInfinity, QubitState};
use crate::two_qubit::TwoQubitState;
use crate::{Error, Result};

/// Distance to the projection pole below which a point cannot be projected.
pub const POLE_EPS: f64 = 1e-9;
const UNIT_TOL: f64 = 1e-9;
/// Samples along one fibre must share their Bloch image to this tolerance.
const FIBRE_BASE_TOL: f64 = 1e-9;

/// First three `S⁴` coordinates `(⟨σz⊗Id⟩, ⟨σx⊗Id⟩, ⟨σy⊗Id⟩)` together with
/// the concurrence. The point lies on the shell of radius `√(1 − c²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallPoint {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub concurrence: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CloudPoint {
    pub xyz: [f64; 3],
    pub slice: usize,
    pub fiber_id: usize,
    pub param: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SliceStats {
    pub slice: usize,
    pub param: f64,
    pub count: usize,
    pub radius_mean: f64,
    pub radius_min: f64,
    pub radius_max: f64,
    /// `max |r² + c² − 1|` over the slice.
    pub max_shell_deviation: f64,
    /// Largest violation of the slice constraint (`x₀ = cos 2Ω` or the
    /// prescribed concurrence).
    pub max_constraint_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PointCloud {
    pub label: String,
    pub points: Vec<CloudPoint>,
    /// Fibres whose image is the exceptional straight line through infinity.
    pub line_fibers: Vec<usize>,
    pub slices: Vec<SliceStats>,
}

/// Stereographic projection pole: `±e_axis` in quaternion coordinates
/// `(1, i, j, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pole {
    axis: usize,
    positive: bool,
}

impl Default for Pole {
    fn default() -> Self {
        Self {
            axis: 0,
            positive: true,
        }
    }
}

impl Pole {
    pub fn new(axis: usize, positive: bool) -> Result<Self> {
        if axis > 3 {
            return Err(Error::InvalidParameter(format!(
                "pole axis {axis} not in 0..=3"
            )));
        }
        Ok(Self { axis, positive })
    }

    pub fn vector(self) -> [f64; 4] {
        let mut v = [0.0; 4];
        v[self.axis] = if self.positive { 1.0 } else { -1.0 };
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Sweep {
    /// Slices of constant `Ω` (equivalently constant `x₀ = cos 2Ω`).
    Omega(Vec<f64>),
    /// Slices of constant concurrence.
    Concurrence(Vec<f64>),
}

impl BallPoint {
    pub fn radius(&self) -> f64 {
        (self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2).sqrt()
    }

    pub fn xyz(&self) -> [f64; 3] {
        [self.x0, self.x1, self.x2]
    }
}

pub fn ball_projection(s: &TwoQubitState) -> BallPoint {
    let x = base_coordinates(s, FibrationChart::Standard);
    BallPoint {
        x0: x.x0,
        x1: x.x1,
        x2: x.x2,
        concurrence: s.concurrence(),
    }
}

/// Stereographic projection `S³ → R³` from `pole`. The image keeps the three
/// coordinates other than the pole axis, in order.
pub fn stereo_s3_to_r3(p: [f64; 4], pole: Pole) -> Result<[f64; 3]> {
    let norm_sq: f64 = p.iter().map(|x| x * x).sum();
    if (norm_sq - 1.0).abs() > UNIT_TOL {
        return Err(Error::InvalidParameter(format!(
            "point off the unit 3-sphere (|p|² = {norm_sq})"
        )));
    }
    let n = pole.vector();
    let dist = p
        .iter()
        .zip(n.iter())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    if dist <= POLE_EPS {
        return Err(Error::AtPole);
    }
    let along: f64 = p.iter().zip(n.iter()).map(|(a, b)| a * b).sum();
    let d = 1.0 - along;
    let mut out = [0.0; 3];
    for (o, k) in out.iter_mut().zip((0..4).filter(|&k| k != pole.axis)) {
        *o = p[k] / d;
    }
    Ok(out)
}

/// Samples the `S³` Hopf fibre over one Bloch point and projects it to `R³`.
pub fn fiber_cloud(base: ComplexOrInfinity, samples: usize) -> Result<PointCloud> {
    fiber_clouds(&[base], samples, Pole::default())
}

/// Several fibres in one cloud, numbered by `fiber_id` in input order.
///
/// Samples are uniform in the phase `φ`. The fibre through the pole is
/// sampled at half-step offsets so that no sample hits the pole; its image
/// is a straight line and its id is recorded in `line_fibers`.
pub fn fiber_clouds(bases: &[ComplexOrInfinity], samples: usize, pole: Pole) -> Result<PointCloud> {
    if samples < 3 {
        return Err(Error::InvalidParameter(format!(
            "a fibre needs at least 3 samples, got {samples}"
        )));
    }
    let pole_q = Quaternion::from(pole.vector());
    let pole_state = QubitState::from_s3_point(pole_q)?;
    let mut cloud = PointCloud {
        label: "fiber".into(),
        ..Default::default()
    };
    for (fiber_id, base) in bases.iter().enumerate() {
        let state = base.representative_state();
        let through_pole = pole_state.fidelity(&state) >= 1.0 - 1e-12;
        let offset = if through_pole { 0.5 } else { 0.0 };
        if through_pole {
            cloud.line_fibers.push(fiber_id);
        }
        let bloch = hopf_map(&state);
        for k in 0..samples {
            let phi = 2.0 * PI * (k as f64 + offset) / samples as f64;
            let sample = state.fiber_sample(phi);
            let deviation = hopf_map(&sample).max_abs_diff(bloch);
            if deviation > FIBRE_BASE_TOL {
                return Err(Error::OracleMismatch(format!(
                    "fibre sample drifted {deviation:e} from its Bloch point"
                )));
            }
            cloud.points.push(CloudPoint {
                xyz: stereo_s3_to_r3(sample.to_s3_point().to_array(), pole)?,
                slice: 0,
                fiber_id,
                param: phi,
            });
        }
    }
    Ok(cloud)
}

/// One point per state: its [`BallPoint`] with the concurrence as `param`.
pub fn ball_cloud(states: &[TwoQubitState]) -> PointCloud {
    PointCloud {
        label: "ball".into(),
        points: states
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let b = ball_projection(s);
                CloudPoint {
                    xyz: b.xyz(),
                    slice: 0,
                    fiber_id: i,
                    param: b.concurrence,
                }
            })
            .collect(),
        ..Default::default()
    }
}

/// Random states on each slice of the sweep, emitted as ball points.
///
/// States are built by lifting base points that satisfy the slice
/// constraint exactly, with a random fibre coordinate. Slice `k` draws from
/// its own stream `(seed, k)`, so the output does not depend on scheduling.
pub fn foliation_sweep(sweep: &Sweep, samples: usize, seed: u64) -> Result<PointCloud> {
    if samples == 0 {
        return Err(Error::InvalidParameter(
            "samples per slice must be ≥ 1".into(),
        ));
    }
    let (label, grid) = match sweep {
        Sweep::Omega(g) => ("foliation-omega", g),
        Sweep::Concurrence(g) => ("foliation-concurrence", g),
    };
    if grid.is_empty() {
        return Err(Error::InvalidParameter("sweep grid is empty".into()));
    }
    for &v in grid {
        let ok = match sweep {
            Sweep::Omega(_) => (0.0..=FRAC_PI_2).contains(&v),
            Sweep::Concurrence(_) => (0.0..=1.0).contains(&v),
        };
        if !ok {
            return Err(Error::InvalidParameter(format!(
                "slice value {v} out of range"
            )));
        }
    }

    let slices: Vec<(Vec<CloudPoint>, SliceStats)> = grid
        .par_iter()
        .enumerate()
        .map(|(k, &value)| {
            let mut rng = stream_rng(seed, k as u64);
            let mut points = Vec::with_capacity(samples);
            let mut stats = SliceStats {
                slice: k,
                param: value,
                count: samples,
                radius_mean: 0.0,
                radius_min: f64::INFINITY,
                radius_max: 0.0,
                max_shell_deviation: 0.0,
                max_constraint_deviation: 0.0,
            };
            for i in 0..samples {
                let x = match sweep {
                    Sweep::Omega(_) => slice_point_omega(value, &mut rng),
                    Sweep::Concurrence(_) => slice_point_concurrence(value, &mut rng),
                };
                let fiber = random_unit_quaternion(&mut rng);
                let state = lift(&x, fiber)?;
                let b = ball_projection(&state);
                let r = b.radius();
                stats.radius_mean += r / samples as f64;
                stats.radius_min = stats.radius_min.min(r);
                stats.radius_max = stats.radius_max.max(r);
                stats.max_shell_deviation = stats
                    .max_shell_deviation
                    .max((r * r + b.concurrence * b.concurrence - 1.0).abs());
                let constraint = match sweep {
                    Sweep::Omega(_) => (b.x0 - (2.0 * value).cos()).abs(),
                    Sweep::Concurrence(_) => (b.concurrence - value).abs(),
                };
                stats.max_constraint_deviation = stats.max_constraint_deviation.max(constraint);
                points.push(CloudPoint {
                    xyz: b.xyz(),
                    slice: k,
                    fiber_id: i,
                    param: value,
                });
            }
            Ok((points, stats))
        })
        .collect::<Result<_>>()?;

    let mut cloud = PointCloud {
        label: label.into(),
        ..Default::default()
    };
    for (points, stats) in slices {
        cloud.points.extend(points);
        cloud.slices.push(stats);
    }
    Ok(cloud)
}

fn slice_point_omega<R: Rng + ?Sized>(omega: f64, rng: &mut R) -> S4Point {
    let (s, c) = (2.0 * omega).sin_cos();
    let d = unit_vector::<4, R>(rng);
    S4Point::from([c, s * d[0], s * d[1], s * d[2], s * d[3]])
}

fn slice_point_concurrence<R: Rng + ?Sized>(c: f64, rng: &mut R) -> S4Point {
    let r = (1.0 - c * c).max(0.0).sqrt();
    let u = unit_vector::<3, R>(rng);
    let psi: f64 = rng.random_range(0.0..2.0 * PI);
    S4Point::from([r * u[0], r * u[1], r * u[2], c * psi.cos(), c * psi.sin()])
}

/// Least-squares circle through a set of points in `R³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleFit {
    pub center: [f64; 3],
    pub normal: [f64; 3],
    pub radius: f64,
    /// `max | |p − center| projected in-plane − radius |`
    pub max_radial_deviation: f64,
    /// `max |(p − center)·normal|`
    pub max_plane_deviation: f64,
}

fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

fn scale3(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}

/// Plane from Newell's method over the closed polygon, then the algebraic
/// (Kåsa) circle fit `x² + y² + Dx + Ey + F = 0` in plane coordinates.
/// Returns `None` for fewer than 3 points or a degenerate configuration.
pub fn fit_circle(points: &[[f64; 3]]) -> Option<CircleFit> {
    let n = points.len();
    if n < 3 {
        return None;
    }
    let centroid = scale3(
        points.iter().fold([0.0; 3], |acc, p| {
            [acc[0] + p[0], acc[1] + p[1], acc[2] + p[2]]
        }),
        1.0 / n as f64,
    );
    let mut normal = [0.0; 3];
    for i in 0..n {
        let a = sub3(points[i], centroid);
        let b = sub3(points[(i + 1) % n], centroid);
        let c = cross3(a, b);
        normal = [normal[0] + c[0], normal[1] + c[1], normal[2] + c[2]];
    }
    let nn = norm3(normal);
    if nn <= f64::EPSILON {
        return None;
    }
    let normal = scale3(normal, 1.0 / nn);
    // in-plane orthonormal frame
    let seed = if normal[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let e1 = cross3(normal, seed);
    let e1 = scale3(e1, 1.0 / norm3(e1));
    let e2 = cross3(normal, e1);

    // normal equations for (D, E, F)
    let mut m = [[0.0; 3]; 3];
    let mut rhs = [0.0; 3];
    for p in points {
        let d = sub3(*p, centroid);
        let (u, v) = (dot3(d, e1), dot3(d, e2));
        let row = [u, v, 1.0];
        let target = -(u * u + v * v);
        for r in 0..3 {
            for c in 0..3 {
                m[r][c] += row[r] * row[c];
            }
            rhs[r] += row[r] * target;
        }
    }
    let [d, e, f] = solve3(m, rhs)?;
    let (cu, cv) = (-0.5 * d, -0.5 * e);
    let radius_sq = cu * cu + cv * cv - f;
    if radius_sq <= 0.0 {
        return None;
    }
    let radius = radius_sq.sqrt();
    let center = [
        centroid[0] + cu * e1[0] + cv * e2[0],
        centroid[1] + cu * e1[1] + cv * e2[1],
        centroid[2] + cu * e1[2] + cv * e2[2],
    ];
    let mut max_radial_deviation = 0.0_f64;
    let mut max_plane_deviation = 0.0_f64;
    for p in points {
        let d = sub3(*p, center);
        let h = dot3(d, normal);
        let in_plane = norm3(sub3(d, scale3(normal, h)));
        max_radial_deviation = max_radial_deviation.max((in_plane - radius).abs());
        max_plane_deviation = max_plane_deviation.max(h.abs());
    }
    Some(CircleFit {
        center,
        normal,
        radius,
        max_radial_deviation,
        max_plane_deviation,
    })
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn solve3(m: [[f64; 3]; 3], rhs: [f64; 3]) -> Option<[f64; 3]> {
    let det = det3(m);
    if det.abs() <= 1e-300 {
        return None;
    }
    let mut out = [0.0; 3];
    for (k, o) in out.iter_mut().enumerate() {
        let mut mk = m;
        for r in 0..3 {
            mk[r][k] = rhs[r];
        }
        *o = det3(mk) / det;
    }
    Some(out)
}

/// Gauss linking number of two closed polylines.
///
/// Each pair of segments contributes its exact signed solid angle
/// (Klenin–Langowski), so the sum is an integer up to rounding for any
/// pair of disjoint closed curves.
pub fn linking_number(a: &[[f64; 3]], b: &[[f64; 3]]) -> f64 {
    let mut total = 0.0;
    for i in 0..a.len() {
        let p1 = a[i];
        let p2 = a[(i + 1) % a.len()];
        for j in 0..b.len() {
            let p3 = b[j];
            let p4 = b[(j + 1) % b.len()];
            total += segment_solid_angle(p1, p2, p3, p4);
        }
    }
    total / (4.0 * PI)
}

fn segment_solid_angle(p1: [f64; 3], p2: [f64; 3], p3: [f64; 3], p4: [f64; 3]) -> f64 {
    let r13 = sub3(p3, p1);
    let r14 = sub3(p4, p1);
    let r23 = sub3(p3, p2);
    let r24 = sub3(p4, p2);
    let faces = [
        cross3(r13, r14),
        cross3(r14, r24),
        cross3(r24, r23),
        cross3(r23, r13),
    ];
    let mut n = [[0.0; 3]; 4];
    for (slot, f) in n.iter_mut().zip(faces) {
        let len = norm3(f);
        if len <= 1e-300 {
            return 0.0;
        }
        *slot = scale3(f, 1.0 / len);
    }
    let omega: f64 = (0..4)
        .map(|k| dot3(n[k], n[(k + 1) % 4]).clamp(-1.0, 1.0).asin())
        .sum();
    let orientation = dot3(cross3(sub3(p4, p3), sub3(p2, p1)), r13);
    omega * orientation.signum()
}
