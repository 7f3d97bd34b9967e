//! Average teleportation fidelity: closed forms, three independent numerical
//! oracles, and optimization over the channel angles.

mod closed;
mod montecarlo;
mod optimize;
mod process;
mod quadrature;

use std::fmt;

pub use closed::{
    avg_fidelity_bell_ab, avg_fidelity_bell_b, avg_fidelity_belllike_opt_ab, avg_fidelity_belllike_opt_b,
    avg_fidelity_closed, optimal_channel, theta_opt, CLASSICAL_LIMIT,
};
pub use montecarlo::{avg_fidelity_monte_carlo, avg_fidelity_monte_carlo_with, MIN_MC_SAMPLES};
pub use optimize::{crossing_gap, find_crossing, optimize_theta_numeric, OptimalChannel};
pub use process::{avg_fidelity_process, avg_fidelity_process_with, choi_state, entanglement_fidelity};
pub use quadrature::{avg_fidelity_quadrature, avg_fidelity_quadrature_with, gauss_legendre, QuadratureNodes};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Quadrature,
    MonteCarlo,
    ProcessMatrix,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Quadrature => "quadrature",
            Method::MonteCarlo => "monte_carlo",
            Method::ProcessMatrix => "process_matrix",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One average-fidelity estimate and how it was obtained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AverageFidelityResult {
    pub value: f64,
    pub method: Method,
    /// Integration nodes, Monte-Carlo samples, or operator-basis elements.
    pub samples_or_nodes: usize,
    /// Standard error of the mean; Monte Carlo only.
    pub std_error: Option<f64>,
}
