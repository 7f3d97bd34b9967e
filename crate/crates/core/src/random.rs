//! Reproducible random states. Every draw is addressed by `(seed, index)`
//! and owns its own ChaCha stream, so results do not depend on the order
//! in which indices are visited.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::densemath::{ComplexMatrix, DensityMatrix, Qubit, StateVector, C64};
use crate::error::Result;

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn gaussian(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

/// Haar-random pure state: a normalized vector of independent standard
/// complex Gaussians.
pub fn haar_random_state(dim: usize, seed: u64, index: u64) -> StateVector {
    let mut rng = stream(seed, index);
    loop {
        let amps: Vec<C64> = (0..dim).map(|_| gaussian(&mut rng)).collect();
        if let Ok(s) = StateVector::normalized(amps) {
            return s;
        }
    }
}

/// Random full-rank mixed state `G G† / tr(G G†)` with `G` a complex
/// Gaussian matrix (Hilbert–Schmidt measure).
pub fn random_density_matrix(order: &[Qubit], seed: u64, index: u64) -> Result<DensityMatrix> {
    let dim = 1usize << order.len();
    let mut rng = stream(seed, index);
    let g = ComplexMatrix::from_fn(dim, dim, |_, _| gaussian(&mut rng));
    let w = g.matmul(&g.dagger())?;
    let tr = w.trace()?.re;
    // Hermitize explicitly so round-off cannot trip the validation.
    let rho = w.add(&w.dagger())?.scale_real(0.5 / tr);
    DensityMatrix::new(rho, order.to_vec())
}

/// Uniform draw from `[0, 1)` on its own stream.
pub fn uniform(seed: u64, index: u64) -> f64 {
    use rand::Rng;
    stream(seed, index).gen()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_states_are_normalized_and_reproducible() {
        for i in 0..50 {
            let a = haar_random_state(4, 7, i);
            assert!(a.is_normalized());
            assert_eq!(a, haar_random_state(4, 7, i));
        }
        assert_ne!(haar_random_state(4, 7, 0), haar_random_state(4, 7, 1));
        assert_ne!(haar_random_state(4, 7, 0), haar_random_state(4, 8, 0));
    }

    #[test]
    fn haar_moments_match_the_uniform_measure() {
        // E|ψ_k|² = 1/d and E|ψ_k|⁴ = 2/(d(d+1)); for d = 4: 1/4 and 1/10.
        let n = 20_000;
        let (mut m2, mut m4) = (0.0, 0.0);
        for i in 0..n {
            let p = haar_random_state(4, 3, i).amplitudes()[2].norm_sqr();
            m2 += p;
            m4 += p * p;
        }
        assert!((m2 / n as f64 - 0.25).abs() < 0.01);
        assert!((m4 / n as f64 - 0.1).abs() < 0.005);
    }

    #[test]
    fn random_density_matrices_are_valid() {
        let order = [Qubit("a"), Qubit("b"), Qubit("c")];
        for i in 0..20 {
            let rho = random_density_matrix(&order, 5, i).unwrap();
            assert!(rho.validate().is_ok());
            assert!(rho.min_eigenvalue().unwrap() > 0.0);
        }
    }
}
