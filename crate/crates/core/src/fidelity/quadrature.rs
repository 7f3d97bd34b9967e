//! Tensor-product quadrature of the per-input fidelity over the Hurwitz
//! parametrization of two-qubit pure states.
//!
//! Phases φ₁..φ₃ use the uniform periodic rule. The per-input fidelity is
//! quartic in the amplitudes, so each phase carries Fourier modes |m| ≤ 2 and
//! any N ≥ 3 integrates them exactly.
//!
//! Each η_k integral is mapped to `t = sin²η_k ∈ [0, 1]`, where the weight
//! `cos η sin^{2k−1} η dη` becomes `t^{k−1} dt / 2`. After the exact phase
//! sum the integrand is a polynomial of degree ≤ 4 in every `t_k`, so a
//! Gauss–Legendre rule with three or more nodes is exact as well.

use std::f64::consts::{PI, TAU};

use super::{AverageFidelityResult, Method};
use crate::error::{Error, Result};
use crate::noise::{noisy_channel_state, ScenarioParams};
use crate::protocol::{input_state, CorrectionTable, InputParams, Teleporter};

/// Node counts per dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureNodes {
    /// Gauss–Legendre nodes for each η_k.
    pub eta: usize,
    /// Uniform periodic nodes for each φ_k.
    pub phi: usize,
}

impl QuadratureNodes {
    pub const MIN_ETA: usize = 3;
    pub const MIN_PHI: usize = 3;

    pub fn new(eta: usize, phi: usize) -> Result<Self> {
        let nodes = Self { eta, phi };
        nodes.check()?;
        Ok(nodes)
    }

    fn check(&self) -> Result<()> {
        if self.eta < Self::MIN_ETA || self.phi < Self::MIN_PHI {
            return Err(Error::Config(format!(
                "quadrature needs at least {} η nodes and {} φ nodes, got {} and {}",
                Self::MIN_ETA,
                Self::MIN_PHI,
                self.eta,
                self.phi
            )));
        }
        Ok(())
    }

    pub fn total(&self) -> usize {
        self.eta.pow(3) * self.phi.pow(3)
    }
}

impl Default for QuadratureNodes {
    fn default() -> Self {
        Self { eta: 12, phi: 8 }
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1], by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_n(x) and P_n'(x) via the three-term recurrence.
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// One η_k dimension: node angles and weights including `t^{k−1}/2`.
fn eta_rule(n: usize, k: i32) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(n);
    x.iter()
        .zip(&w)
        .map(|(&xi, &wi)| {
            let t = 0.5 * (xi + 1.0);
            let weight = 0.5 * wi * 0.5 * t.powi(k - 1);
            (t.sqrt().asin(), weight)
        })
        .collect()
}

fn phi_rule(n: usize) -> Vec<(f64, f64)> {
    (0..n).map(|j| (TAU * j as f64 / n as f64, TAU / n as f64)).collect()
}

pub fn avg_fidelity_quadrature(s: &ScenarioParams, nodes: QuadratureNodes) -> Result<AverageFidelityResult> {
    avg_fidelity_quadrature_with(s, nodes, CorrectionTable::standard())
}

/// Average fidelity as `(3!/π³) ∫ f(η, φ) Π cos η_k sin^{2k−1} η_k dη_k dφ_k`,
/// with `f` obtained by simulating the protocol at every node.
pub fn avg_fidelity_quadrature_with(
    s: &ScenarioParams,
    nodes: QuadratureNodes,
    table: CorrectionTable,
) -> Result<AverageFidelityResult> {
    nodes.check()?;
    let teleporter = Teleporter::new(&noisy_channel_state(s)?, table)?;
    let eta1 = eta_rule(nodes.eta, 1);
    let eta2 = eta_rule(nodes.eta, 2);
    let eta3 = eta_rule(nodes.eta, 3);
    let phi = phi_rule(nodes.phi);

    let mut total = 0.0;
    for &(e3, w3) in &eta3 {
        for &(e2, w2) in &eta2 {
            for &(e1, w1) in &eta1 {
                let mut inner = 0.0;
                for &(f1, v1) in &phi {
                    for &(f2, v2) in &phi {
                        for &(f3, v3) in &phi {
                            let params = InputParams {
                                eta1: e1,
                                eta2: e2,
                                eta3: e3,
                                phi1: f1,
                                phi2: f2,
                                phi3: f3,
                            };
                            let psi = input_state(&params);
                            inner += v1 * v2 * v3 * teleporter.fidelity_unchecked(psi.amplitudes());
                        }
                    }
                }
                total += w1 * w2 * w3 * inner;
            }
        }
    }
    Ok(AverageFidelityResult {
        value: 6.0 / PI.powi(3) * total,
        method: Method::Quadrature,
        samples_or_nodes: nodes.total(),
        std_error: None,
    })
}
