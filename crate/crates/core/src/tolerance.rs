//! Numerical tolerances used across the crate.
//!
//! Everything that decides whether a matrix "is" Hermitian, normalized or
//! positive semidefinite reads from [`TOL`], so tests and runtime checks
//! agree on a single set of thresholds.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Max entrywise |M - M†| accepted for a density matrix.
    pub hermiticity: f64,
    /// Max |tr ρ - 1| accepted for a density matrix.
    pub trace: f64,
    /// Smallest eigenvalue accepted for a density matrix.
    pub psd_floor: f64,
    /// Max |‖ψ‖² - 1| accepted for a normalized state vector.
    pub norm: f64,
    /// Looser hermiticity bound accepted by the eigenvalue routine.
    pub eigen_hermiticity: f64,
    /// Measurement outcomes with probability below this are dropped.
    pub zero_probability: f64,
    /// Max entrywise deviation of Σ E†E from the identity.
    pub completeness: f64,
}

pub const TOL: Tolerances = Tolerances {
    hermiticity: 1e-12,
    trace: 1e-12,
    psd_floor: -1e-10,
    norm: 1e-12,
    eigen_hermiticity: 1e-10,
    zero_probability: 1e-14,
    completeness: 1e-12,
};
