use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use super::closed::{avg_fidelity_bell_ab, avg_fidelity_bell_b, avg_fidelity_closed};
use crate::error::{domain, Result};
use crate::noise::{check_strength, ScenarioParams};

const GRID_POINTS: usize = 181;
const REFINE_STEP: f64 = 1e-8;
const CROSSING_TOL: f64 = 1e-10;
/// Separation between θ₁ and θ₂ above which a maximum counts as asymmetric.
const ASYMMETRY_TOL: f64 = 1e-6;

/// Channel angle maximizing the average fidelity for fixed noise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimalChannel {
    /// Shared angle θ₁ = θ₂, in [0, π/2].
    pub theta_opt: f64,
    pub fidelity: f64,
    /// Every angle is optimal (p_A = p_B = 1); `theta_opt` is then π/4.
    pub degenerate: bool,
    /// Set when the numerical search found θ₁ ≠ θ₂.
    pub asymmetric: Option<(f64, f64)>,
}

fn objective(p_a: f64, p_b: f64) -> impl Fn(f64, f64) -> f64 {
    move |t1, t2| {
        avg_fidelity_closed(&ScenarioParams {
            theta1: t1,
            theta2: t2,
            p_a,
            p_b,
        })
    }
}

/// Maximizes the closed-form average fidelity over the full (θ₁, θ₂)
/// square: a 181 × 181 grid followed by compass search down to a step of
/// 1e-8 rad.
pub fn optimize_theta_numeric(p_a: f64, p_b: f64) -> Result<OptimalChannel> {
    check_strength(p_a)?;
    check_strength(p_b)?;
    let f = objective(p_a, p_b);
    let h = FRAC_PI_2 / (GRID_POINTS - 1) as f64;

    let (mut best, mut lowest) = ((0.0, 0.0, f64::NEG_INFINITY), f64::INFINITY);
    for i in 0..GRID_POINTS {
        for j in 0..GRID_POINTS {
            let (t1, t2) = (i as f64 * h, j as f64 * h);
            let v = f(t1, t2);
            lowest = lowest.min(v);
            if v > best.2 {
                best = (t1, t2, v);
            }
        }
    }
    if best.2 - lowest <= 1e-14 {
        return Ok(OptimalChannel {
            theta_opt: FRAC_PI_4,
            fidelity: f(FRAC_PI_4, FRAC_PI_4),
            degenerate: true,
            asymmetric: None,
        });
    }

    let (mut t1, mut t2, mut v) = best;
    let mut step = h;
    let moves = [
        (1.0, 0.0),
        (-1.0, 0.0),
        (0.0, 1.0),
        (0.0, -1.0),
        (1.0, 1.0),
        (-1.0, -1.0),
    ];
    while step >= REFINE_STEP {
        let mut improved = false;
        for (d1, d2) in moves {
            let c1 = (t1 + d1 * step).clamp(0.0, FRAC_PI_2);
            let c2 = (t2 + d2 * step).clamp(0.0, FRAC_PI_2);
            let cv = f(c1, c2);
            if cv > v {
                (t1, t2, v) = (c1, c2, cv);
                improved = true;
                break;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }

    Ok(OptimalChannel {
        theta_opt: 0.5 * (t1 + t2),
        fidelity: v,
        degenerate: false,
        asymmetric: ((t1 - t2).abs() > ASYMMETRY_TOL).then_some((t1, t2)),
    })
}

/// Curve B minus curve A of the first figure, at `p_A = p_B = p`.
pub fn crossing_gap(p: f64) -> f64 {
    avg_fidelity_bell_ab(p, p) - avg_fidelity_bell_b(p)
}

/// Bisection root of [`crossing_gap`] on `[lo, hi]`, to 1e-10.
pub fn find_crossing(lo: f64, hi: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo >= hi {
        return domain(format!("invalid bracket [{lo}, {hi}] for noise strengths"));
    }
    let (mut lo, mut hi) = (lo, hi);
    let (mut g_lo, g_hi) = (crossing_gap(lo), crossing_gap(hi));
    if g_lo == 0.0 {
        return Ok(lo);
    }
    if g_hi == 0.0 {
        return Ok(hi);
    }
    if g_lo.signum() == g_hi.signum() {
        return domain(format!("no sign change of the curve gap on [{lo}, {hi}]"));
    }
    while hi - lo > CROSSING_TOL {
        let mid = 0.5 * (lo + hi);
        let g = crossing_gap(mid);
        if g == 0.0 {
            return Ok(mid);
        }
        if g.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fidelity::{avg_fidelity_belllike_opt_ab, theta_opt};

    #[test]
    fn optimizer_examples() {
        let o = optimize_theta_numeric(0.0, 0.0).unwrap();
        assert!((o.theta_opt - FRAC_PI_4).abs() < 1e-6);
        assert!((o.fidelity - 1.0).abs() < 1e-12);

        let o = optimize_theta_numeric(0.0, 1.0).unwrap();
        assert!(o.theta_opt.abs() < 1e-6);
        assert!((o.fidelity - 0.4).abs() < 1e-12);

        let o = optimize_theta_numeric(0.5, 0.5).unwrap();
        assert!((o.fidelity - 0.542705).abs() < 1e-6);
        assert!((o.theta_opt - theta_opt(0.5, 0.5)).abs() < 1e-4);
        assert!(o.asymmetric.is_none());
    }

    #[test]
    fn degenerate_corner() {
        let o = optimize_theta_numeric(1.0, 1.0).unwrap();
        assert!(o.degenerate);
        assert_eq!(o.theta_opt, FRAC_PI_4);
        assert!((o.fidelity - 0.4).abs() < 1e-15);
    }

    #[test]
    fn optimizer_tracks_analytic_optimum() {
        for &(pa, pb) in &[(0.1, 0.9), (0.33, 0.05), (0.97, 0.99), (0.6, 0.0)] {
            let o = optimize_theta_numeric(pa, pb).unwrap();
            assert!((o.theta_opt - theta_opt(pa, pb)).abs() < 1e-4, "{pa} {pb}");
            assert!((o.fidelity - avg_fidelity_belllike_opt_ab(pa, pb)).abs() < 1e-9);
        }
    }

    #[test]
    fn optimizer_rejects_bad_strength() {
        assert!(optimize_theta_numeric(-0.5, 0.0).is_err());
    }

    #[test]
    fn crossing_examples() {
        let p = find_crossing(0.7, 0.9).unwrap();
        // Independent scipy brentq on the same gap: 0.8058542794976277.
        assert!((p - 0.8058542794976277).abs() < 1e-9);
        assert!(crossing_gap(0.2) < 0.0);
        assert!(crossing_gap(0.9) > 0.0);
    }

    #[test]
    fn crossing_needs_a_sign_change() {
        assert!(matches!(find_crossing(0.1, 0.5), Err(crate::Error::Domain(_))));
        assert!(find_crossing(0.9, 0.7).is_err());
        assert!(find_crossing(-0.1, 0.9).is_err());
    }
}
