//! Self-verification suite: cross-checks the simulator against the closed
//! forms and checks the structural invariants of every module.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

use crate::densemath::{partial_trace, Qubit};
use crate::error::Result;
use crate::fidelity::{
    avg_fidelity_bell_ab, avg_fidelity_bell_b, avg_fidelity_belllike_opt_ab, avg_fidelity_belllike_opt_b,
    avg_fidelity_closed, avg_fidelity_monte_carlo_with, avg_fidelity_process_with, avg_fidelity_quadrature_with,
    crossing_gap, find_crossing, theta_opt, QuadratureNodes, CLASSICAL_LIMIT,
};
use crate::noise::{
    amplitude_damping_kraus, apply_amplitude_damping, noisy_channel_state, ScenarioParams, CHANNEL_ORDER,
};
use crate::protocol::{CorrectionTable, Teleporter};
use crate::random::{haar_random_state, random_density_matrix, uniform};
use crate::tolerance::TOL;

/// Agreement required between the exact oracles and the closed form.
pub const ORACLE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub corrections: CorrectionTable,
    pub quadrature: QuadratureNodes,
    pub mc_samples: usize,
    pub seed: u64,
    pub random_cases: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            corrections: CorrectionTable::standard(),
            quadrature: QuadratureNodes { eta: 4, phi: 4 },
            mc_samples: 20_000,
            seed: 0,
            random_cases: 500,
        }
    }
}

/// θ₁, θ₂ ∈ {0, π/8, π/4, 3π/8, π/2} × p_A, p_B ∈ {0, 0.25, 0.5, 0.75, 1}.
pub fn oracle_grid() -> Vec<ScenarioParams> {
    let thetas = [0.0, FRAC_PI_8, FRAC_PI_4, 3.0 * FRAC_PI_8, FRAC_PI_2];
    let ps = [0.0, 0.25, 0.5, 0.75, 1.0];
    let mut grid = Vec::with_capacity(625);
    for &t1 in &thetas {
        for &t2 in &thetas {
            for &pa in &ps {
                for &pb in &ps {
                    grid.push(ScenarioParams {
                        theta1: t1,
                        theta2: t2,
                        p_a: pa,
                        p_b: pb,
                    });
                }
            }
        }
    }
    grid
}

/// Largest pairwise deviations among closed form, quadrature and process
/// matrix over a set of scenarios.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TriangleDeviation {
    pub quadrature_vs_closed: f64,
    pub process_vs_closed: f64,
    pub quadrature_vs_process: f64,
}

impl TriangleDeviation {
    pub fn max(&self) -> f64 {
        self.quadrature_vs_closed
            .max(self.process_vs_closed)
            .max(self.quadrature_vs_process)
    }
}

pub fn oracle_triangle(
    scenarios: &[ScenarioParams],
    nodes: QuadratureNodes,
    table: CorrectionTable,
) -> Result<TriangleDeviation> {
    let mut dev = TriangleDeviation::default();
    for s in scenarios {
        let closed = avg_fidelity_closed(s);
        let quad = avg_fidelity_quadrature_with(s, nodes, table)?.value;
        let process = avg_fidelity_process_with(s, table)?.value;
        dev.quadrature_vs_closed = dev.quadrature_vs_closed.max((quad - closed).abs());
        dev.process_vs_closed = dev.process_vs_closed.max((process - closed).abs());
        dev.quadrature_vs_process = dev.quadrature_vs_process.max((quad - process).abs());
    }
    Ok(dev)
}

fn unit_grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| i as f64 / (n - 1) as f64)
}

fn check_oracle_triangle(cfg: &VerifyConfig) -> Result<Check> {
    let dev = oracle_triangle(&oracle_grid(), cfg.quadrature, cfg.corrections)?;
    Ok(Check::new(
        "oracle-triangle",
        dev.max() < ORACLE_TOL,
        format!(
            "625 scenarios: max |quad-closed| {:.2e}, |process-closed| {:.2e}, |quad-process| {:.2e}",
            dev.quadrature_vs_closed, dev.process_vs_closed, dev.quadrature_vs_process
        ),
    ))
}

fn check_ideal_teleportation(cfg: &VerifyConfig) -> Result<Check> {
    let t = Teleporter::new(&noisy_channel_state(&ScenarioParams::bell(0.0, 0.0)?)?, cfg.corrections)?;
    let mut worst = 0.0f64;
    for i in 0..200 {
        let psi = haar_random_state(4, cfg.seed, i);
        worst = worst.max((t.fidelity(&psi)? - 1.0).abs());
    }
    Ok(Check::new(
        "ideal-teleportation",
        worst < 1e-10,
        format!("200 Haar inputs: max |f - 1| {worst:.2e}"),
    ))
}

fn check_monte_carlo(cfg: &VerifyConfig) -> Result<Check> {
    let s = ScenarioParams::bell(0.9, 0.9)?;
    let r = avg_fidelity_monte_carlo_with(&s, cfg.mc_samples, cfg.seed, cfg.corrections)?;
    let se = r.std_error.unwrap_or(0.0);
    let dev = (r.value - avg_fidelity_closed(&s)).abs();
    Ok(Check::new(
        "monte-carlo",
        dev <= 5.0 * se,
        format!("mean {:.6} ± {:.2e}, |dev| = {:.2} std errors", r.value, se, dev / se),
    ))
}

fn check_specialization_chain() -> Check {
    let mut worst = 0.0f64;
    for pa in unit_grid(41) {
        for pb in unit_grid(41) {
            let bell = avg_fidelity_closed(&ScenarioParams {
                theta1: FRAC_PI_4,
                theta2: FRAC_PI_4,
                p_a: pa,
                p_b: pb,
            });
            worst = worst.max((bell - avg_fidelity_bell_ab(pa, pb)).abs());
            let t = theta_opt(pa, pb);
            let opt = avg_fidelity_closed(&ScenarioParams {
                theta1: t,
                theta2: t,
                p_a: pa,
                p_b: pb,
            });
            worst = worst.max((opt - avg_fidelity_belllike_opt_ab(pa, pb)).abs());
        }
        worst = worst.max((avg_fidelity_bell_ab(0.0, pa) - avg_fidelity_bell_b(pa)).abs());
        worst = worst.max((avg_fidelity_belllike_opt_ab(0.0, pa) - avg_fidelity_belllike_opt_b(pa)).abs());
    }
    Check::new(
        "specialization-chain",
        worst < 1e-12,
        format!("max deviation {worst:.2e}"),
    )
}

fn check_symmetry() -> Check {
    let mut worst = 0.0f64;
    for t1 in unit_grid(9).map(|x| x * FRAC_PI_2) {
        for t2 in unit_grid(9).map(|x| x * FRAC_PI_2) {
            for pa in unit_grid(9) {
                for pb in unit_grid(9) {
                    let a = avg_fidelity_closed(&ScenarioParams {
                        theta1: t1,
                        theta2: t2,
                        p_a: pa,
                        p_b: pb,
                    });
                    let b = avg_fidelity_closed(&ScenarioParams {
                        theta1: t1,
                        theta2: t2,
                        p_a: pb,
                        p_b: pa,
                    });
                    worst = worst.max((a - b).abs());
                }
            }
        }
    }
    Check::new(
        "noise-symmetry",
        worst < 1e-14,
        format!("max |F(pA,pB) - F(pB,pA)| {worst:.2e}"),
    )
}

fn check_stationarity() -> Check {
    let h = 1e-4;
    let (mut worst_grad, mut worst_curv) = (0.0f64, f64::NEG_INFINITY);
    for pa in unit_grid(11).take(10) {
        for pb in unit_grid(11).take(10) {
            let t = theta_opt(pa, pb);
            let f = |x: f64| {
                avg_fidelity_closed(&ScenarioParams {
                    theta1: x,
                    theta2: t,
                    p_a: pa,
                    p_b: pb,
                })
            };
            let (fp, f0, fm) = (f(t + h), f(t), f(t - h));
            worst_grad = worst_grad.max(((fp - fm) / (2.0 * h)).abs());
            worst_curv = worst_curv.max(fp - 2.0 * f0 + fm);
        }
    }
    Check::new(
        "stationarity",
        worst_grad < 1e-6 && worst_curv < 0.0,
        format!("max |dF/dθ| {worst_grad:.2e}, max second difference {worst_curv:.2e}"),
    )
}

fn check_curve_ordering() -> Check {
    let mut ok = true;
    let mut note = String::from("C ≥ A, C > 2/5 below p=1, C = 2/5 at p=1, D ≤ C, D non-increasing");
    let mut prev_d = f64::INFINITY;
    for (i, p) in unit_grid(1001).enumerate() {
        let a = avg_fidelity_bell_b(p);
        let c = avg_fidelity_belllike_opt_b(p);
        let d = avg_fidelity_belllike_opt_ab(p, p);
        let above_limit = if i == 1000 {
            c == CLASSICAL_LIMIT
        } else {
            c > CLASSICAL_LIMIT
        };
        if c < a || !above_limit || d > c + 1e-15 || d > prev_d + 1e-15 {
            ok = false;
            note = format!("violated at p = {p}");
            break;
        }
        prev_d = d;
    }
    Check::new("curve-ordering", ok, note)
}

fn check_range() -> Check {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut track = |v: f64| {
        lo = lo.min(v);
        hi = hi.max(v);
    };
    for pa in unit_grid(21) {
        for pb in unit_grid(21) {
            track(avg_fidelity_bell_ab(pa, pb));
            track(avg_fidelity_belllike_opt_ab(pa, pb));
            for t1 in unit_grid(9).map(|x| x * FRAC_PI_2) {
                for t2 in unit_grid(9).map(|x| x * FRAC_PI_2) {
                    track(avg_fidelity_closed(&ScenarioParams {
                        theta1: t1,
                        theta2: t2,
                        p_a: pa,
                        p_b: pb,
                    }));
                }
            }
        }
        track(avg_fidelity_bell_b(pa));
        track(avg_fidelity_belllike_opt_b(pa));
    }
    Check::new(
        "fidelity-range",
        lo >= 0.2 - 1e-12 && hi <= 1.0 + 1e-12,
        format!("closed forms span [{lo:.6}, {hi:.6}]"),
    )
}

fn check_crossing() -> Result<Check> {
    let p = find_crossing(0.7, 0.9)?;
    let below = unit_grid(1001)
        .filter(|&x| x > 0.0 && x < p - 1e-6)
        .all(|x| crossing_gap(x) < 0.0);
    let above = unit_grid(1001).filter(|&x| x > p + 1e-6).all(|x| crossing_gap(x) > 0.0);
    let floor = unit_grid(1001).all(|x| avg_fidelity_bell_ab(x, x) >= CLASSICAL_LIMIT);
    Ok(Check::new(
        "figure-1-crossover",
        p > 0.80 && p < 0.81 && below && above && floor,
        format!("p* = {p:.10}"),
    ))
}

fn check_cptp(cfg: &VerifyConfig) -> Result<Check> {
    let mut worst_complete = 0.0f64;
    let mut worst_trace = 0.0f64;
    let mut worst_herm = 0.0f64;
    let mut min_eig = f64::INFINITY;
    for i in 0..cfg.random_cases as u64 {
        let rho = random_density_matrix(&CHANNEL_ORDER, cfg.seed ^ 0x5eed, i)?;
        let strengths: Vec<f64> = (0..4).map(|k| uniform(cfg.seed ^ 0xd1ce, 4 * i + k)).collect();
        for &p in &strengths {
            worst_complete = worst_complete.max(amplitude_damping_kraus(p)?.completeness_defect());
        }
        let assignment: Vec<(Qubit, f64)> = CHANNEL_ORDER.iter().copied().zip(strengths).collect();
        let out = apply_amplitude_damping(&rho, &assignment)?;
        worst_trace = worst_trace.max((out.matrix().trace()?.re - 1.0).abs());
        worst_herm = worst_herm.max(out.matrix().hermiticity_defect());
        min_eig = min_eig.min(out.min_eigenvalue()?);
    }
    Ok(Check::new(
        "channel-cptp",
        worst_complete <= TOL.completeness
            && worst_trace <= TOL.trace
            && worst_herm <= TOL.hermiticity
            && min_eig >= TOL.psd_floor,
        format!(
            "{} cases: completeness {worst_complete:.1e}, trace {worst_trace:.1e}, hermiticity {worst_herm:.1e}, min eigenvalue {min_eig:.2e}",
            cfg.random_cases
        ),
    ))
}

fn check_outcomes(cfg: &VerifyConfig) -> Result<Check> {
    let mut worst_sum = 0.0f64;
    let mut most_negative = 0.0f64;
    let mut worst_trace = 0.0f64;
    for i in 0..100u64 {
        let s = ScenarioParams::new(
            uniform(cfg.seed ^ 0xabc, 4 * i) * FRAC_PI_2,
            uniform(cfg.seed ^ 0xabc, 4 * i + 1) * FRAC_PI_2,
            uniform(cfg.seed ^ 0xabc, 4 * i + 2),
            uniform(cfg.seed ^ 0xabc, 4 * i + 3),
        )?;
        let t = Teleporter::new(&noisy_channel_state(&s)?, cfg.corrections)?;
        let psi = haar_random_state(4, cfg.seed ^ 0xabc, i);
        let outs = t.outcomes(&psi)?;
        let total: f64 = outs.iter().map(|o| o.probability).sum();
        worst_sum = worst_sum.max((total - 1.0).abs());
        most_negative = outs.iter().map(|o| o.probability).fold(most_negative, f64::min);
        let bob = t.teleport(&psi)?;
        worst_trace = worst_trace.max((bob.matrix().trace()?.re - 1.0).abs());
        // Marginal sanity: the output lives on Bob's qubits only.
        partial_trace(&bob, &[Qubit::B1])?;
    }
    Ok(Check::new(
        "outcome-probabilities",
        worst_sum <= 1e-12 && most_negative >= -1e-12 && worst_trace <= 1e-12,
        format!("max |Σp - 1| {worst_sum:.1e}, min p {most_negative:.1e}, max |tr ρ_B - 1| {worst_trace:.1e}"),
    ))
}

fn record(name: &'static str, result: Result<Check>) -> Check {
    result.unwrap_or_else(|e| Check::new(name, false, format!("error: {e}")))
}

/// Runs every check. Never short-circuits: a failing check is reported
/// alongside the rest.
pub fn run(cfg: &VerifyConfig) -> Report {
    let checks = vec![
        record("ideal-teleportation", check_ideal_teleportation(cfg)),
        record("oracle-triangle", check_oracle_triangle(cfg)),
        record("monte-carlo", check_monte_carlo(cfg)),
        check_specialization_chain(),
        check_symmetry(),
        check_stationarity(),
        check_curve_ordering(),
        check_range(),
        record("figure-1-crossover", check_crossing()),
        record("channel-cptp", check_cptp(cfg)),
        record("outcome-probabilities", check_outcomes(cfg)),
    ];
    Report { checks }
}
