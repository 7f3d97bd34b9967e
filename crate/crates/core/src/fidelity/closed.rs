use std::f64::consts::FRAC_PI_4;

use super::optimize::OptimalChannel;
use crate::noise::ScenarioParams;

/// Best average fidelity for two-qubit teleportation without entanglement.
pub const CLASSICAL_LIMIT: f64 = 0.4;

/// One pair's factor `1 + (2 p_A p_B − p_A − p_B) sin²θ + √((1−p_A)(1−p_B)) sin 2θ`.
fn pair_factor(theta: f64, p_a: f64, p_b: f64) -> f64 {
    let s = theta.sin();
    1.0 + (2.0 * p_a * p_b - p_a - p_b) * s * s + ((1.0 - p_a) * (1.0 - p_b)).sqrt() * (2.0 * theta).sin()
}

/// Average fidelity for an arbitrary scenario.
pub fn avg_fidelity_closed(s: &ScenarioParams) -> f64 {
    0.2 + 0.2 * pair_factor(s.theta1, s.p_a, s.p_b) * pair_factor(s.theta2, s.p_a, s.p_b)
}

/// Two Bell pairs, noise on both sides.
pub fn avg_fidelity_bell_ab(p_a: f64, p_b: f64) -> f64 {
    let bracket = 1.0 + p_a * p_b - p_a / 2.0 - p_b / 2.0 + ((1.0 - p_a) * (1.0 - p_b)).sqrt();
    0.2 + 0.2 * bracket * bracket
}

/// Two Bell pairs, noise on Bob's qubits only.
pub fn avg_fidelity_bell_b(p_b: f64) -> f64 {
    (6.0 + 4.0 * (1.0 - p_b).sqrt() - p_b) * (2.0 - p_b) / 20.0
}

/// Stationary channel angle (shared by both pairs), principal branch.
///
/// At `p_A = p_B = 1` every angle is equally good; π/4 is returned.
pub fn theta_opt(p_a: f64, p_b: f64) -> f64 {
    let num = 2.0 * ((1.0 - p_a) * (1.0 - p_b)).sqrt();
    let den = p_a + p_b - 2.0 * p_a * p_b;
    if num == 0.0 && den == 0.0 {
        return FRAC_PI_4;
    }
    // den ≥ 0 on the unit square, so atan2 stays on the principal branch.
    0.5 * num.atan2(den)
}

/// Optimized Bell-like pairs, noise on both sides.
pub fn avg_fidelity_belllike_opt_ab(p_a: f64, p_b: f64) -> f64 {
    let s = p_a + p_b - 2.0 * p_a * p_b;
    let inner = 2.0 - p_a - p_b + 2.0 * p_a * p_b + (4.0 * (1.0 - p_a) * (1.0 - p_b) + s * s).sqrt();
    0.2 + inner * inner / 20.0
}

/// Optimized Bell-like pairs, noise on Bob's qubits only.
pub fn avg_fidelity_belllike_opt_b(p_b: f64) -> f64 {
    0.2 + 0.2 * (2.0 - p_b) * (2.0 - p_b)
}

/// The analytic optimum as an [`OptimalChannel`].
pub fn optimal_channel(p_a: f64, p_b: f64) -> OptimalChannel {
    OptimalChannel {
        theta_opt: theta_opt(p_a, p_b),
        fidelity: avg_fidelity_belllike_opt_ab(p_a, p_b),
        degenerate: p_a == 1.0 && p_b == 1.0,
        asymmetric: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scenario(t1: f64, t2: f64, pa: f64, pb: f64) -> ScenarioParams {
        ScenarioParams::new(t1, t2, pa, pb).unwrap()
    }

    #[test]
    fn general_closed_form_examples() {
        assert!((avg_fidelity_closed(&scenario(FRAC_PI_4, FRAC_PI_4, 0.0, 0.0)) - 1.0).abs() < 1e-15);
        assert!((avg_fidelity_closed(&scenario(FRAC_PI_4, FRAC_PI_4, 0.9, 0.9)) - 0.40402).abs() < 1e-12);
        assert!((avg_fidelity_closed(&scenario(FRAC_PI_4, FRAC_PI_4, 0.0, 1.0)) - 0.25).abs() < 1e-15);
        for p in [0.0, 0.3, 1.0] {
            assert!((avg_fidelity_closed(&scenario(0.0, 0.0, p, 0.5)) - 0.4).abs() < 1e-15);
        }
    }

    #[test]
    fn bell_special_cases() {
        assert!((avg_fidelity_bell_ab(0.0, 0.0) - 1.0).abs() < 1e-15);
        assert!((avg_fidelity_bell_ab(1.0, 1.0) - 0.4).abs() < 1e-15);
        assert!((avg_fidelity_bell_ab(0.9, 0.9) - 0.40402).abs() < 1e-12);
        assert!((avg_fidelity_bell_b(0.0) - 1.0).abs() < 1e-15);
        assert!((avg_fidelity_bell_b(1.0) - 0.25).abs() < 1e-15);
        assert!((avg_fidelity_bell_b(0.5) - 0.624632).abs() < 1e-6);
    }

    #[test]
    fn theta_opt_examples() {
        assert!((theta_opt(0.0, 0.0) - FRAC_PI_4).abs() < 1e-15);
        assert_eq!(theta_opt(0.0, 1.0), 0.0);
        assert!((theta_opt(0.0, 0.5) - 0.61548).abs() < 1e-5);
        assert_eq!(theta_opt(1.0, 1.0), FRAC_PI_4);
        assert!(optimal_channel(1.0, 1.0).degenerate);
        assert!(!optimal_channel(0.9, 1.0).degenerate);
    }

    #[test]
    fn optimized_special_cases() {
        assert!((avg_fidelity_belllike_opt_ab(0.0, 0.0) - 1.0).abs() < 1e-15);
        assert!((avg_fidelity_belllike_opt_ab(0.5, 0.5) - 0.542705).abs() < 1e-6);
        assert!((avg_fidelity_belllike_opt_ab(1.0, 1.0) - 0.4).abs() < 1e-15);
        assert!((avg_fidelity_belllike_opt_b(0.0) - 1.0).abs() < 1e-15);
        assert_eq!(avg_fidelity_belllike_opt_b(1.0), 0.4);
        assert!((avg_fidelity_belllike_opt_b(0.5) - 0.65).abs() < 1e-15);
    }

    #[test]
    fn specialization_chain() {
        for i in 0..=20 {
            for j in 0..=20 {
                let (pa, pb) = (i as f64 / 20.0, j as f64 / 20.0);
                let bell = avg_fidelity_closed(&ScenarioParams::bell(pa, pb).unwrap());
                assert!((bell - avg_fidelity_bell_ab(pa, pb)).abs() < 1e-12);
                let t = theta_opt(pa, pb);
                let opt = avg_fidelity_closed(&scenario(t, t, pa, pb));
                assert!((opt - avg_fidelity_belllike_opt_ab(pa, pb)).abs() < 1e-12, "{pa} {pb}");
                let swapped = avg_fidelity_closed(&scenario(0.3, 1.1, pb, pa));
                assert!((swapped - avg_fidelity_closed(&scenario(0.3, 1.1, pa, pb))).abs() < 1e-15);
            }
            let p = i as f64 / 20.0;
            assert!((avg_fidelity_bell_ab(0.0, p) - avg_fidelity_bell_b(p)).abs() < 1e-12);
            assert!((avg_fidelity_belllike_opt_ab(0.0, p) - avg_fidelity_belllike_opt_b(p)).abs() < 1e-12);
        }
    }

    #[test]
    fn stationarity_at_theta_opt() {
        let h = 1e-4;
        for &(pa, pb) in &[(0.1, 0.2), (0.0, 0.5), (0.7, 0.3), (0.95, 0.4)] {
            let t = theta_opt(pa, pb);
            let f = |t1: f64| {
                avg_fidelity_closed(&ScenarioParams {
                    theta1: t1,
                    theta2: t,
                    p_a: pa,
                    p_b: pb,
                })
            };
            let grad = (f(t + h) - f(t - h)) / (2.0 * h);
            let curv = f(t + h) - 2.0 * f(t) + f(t - h);
            assert!(grad.abs() < 1e-6, "gradient {grad}");
            assert!(curv < 0.0, "curvature {curv}");
        }
    }
}
