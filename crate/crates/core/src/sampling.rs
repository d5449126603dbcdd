//! Seeded uniform sampling on spheres.
//!
//! Points on `Sⁿ` are drawn as `n+1` independent standard normals divided by
//! their Euclidean norm, which is uniform by rotational invariance of the
//! Gaussian.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::quaternion::Quaternion;
use crate::single_qubit::QubitState;
use crate::two_qubit::TwoQubitState;
use crate::C64;

pub type StateRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> StateRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `stream` of the generator seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> StateRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform point on the unit sphere `S^{N−1} ⊂ R^N`.
pub fn unit_vector<const N: usize, R: Rng + ?Sized>(rng: &mut R) -> [f64; N] {
    loop {
        let v: [f64; N] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return v.map(|x| x / norm);
        }
    }
}

pub fn random_unit_quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    Quaternion::from(unit_vector::<4, R>(rng))
}

pub fn random_qubit_state<R: Rng + ?Sized>(rng: &mut R) -> QubitState {
    let v = unit_vector::<4, R>(rng);
    QubitState::normalized_from(C64::new(v[0], v[1]), C64::new(v[2], v[3]))
        .expect("unit vector has nonzero norm")
}

/// Uniform on `S⁷`, i.e. Haar-random two-qubit pure state.
pub fn random_two_qubit_state<R: Rng + ?Sized>(rng: &mut R) -> TwoQubitState {
    let v = unit_vector::<8, R>(rng);
    TwoQubitState::normalized_from(std::array::from_fn(|i| C64::new(v[2 * i], v[2 * i + 1])))
        .expect("unit vector has nonzero norm")
}

pub fn random_product_state<R: Rng + ?Sized>(rng: &mut R) -> TwoQubitState {
    let a = random_qubit_state(rng);
    let b = random_qubit_state(rng);
    TwoQubitState::product(&a, &b)
}
