//! Bell-like resource states and amplitude-damping noise in operator-sum form.

use std::f64::consts::FRAC_PI_2;

use crate::densemath::{ComplexMatrix, DensityMatrix, Qubit, StateVector, C64, ZERO};
use crate::error::{contract, domain, Result};
use crate::tolerance::TOL;

/// Register layout of the shared resource: pair 1 is (A1, B1), pair 2 is (A2, B2).
pub const CHANNEL_ORDER: [Qubit; 4] = [Qubit::A1, Qubit::B1, Qubit::A2, Qubit::B2];

const ANGLE_SLACK: f64 = 1e-12;

/// An ordered set of Kraus operators describing one CPTP map.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausSet {
    operators: Vec<ComplexMatrix>,
    strength: Option<f64>,
}

impl KrausSet {
    /// Accepts any non-empty list of equal-sized square operators whose
    /// completeness defect is within tolerance.
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let set = Self {
            operators,
            strength: None,
        };
        set.check()?;
        Ok(set)
    }

    fn check(&self) -> Result<()> {
        let Some(first) = self.operators.first() else {
            return contract("Kraus set must not be empty");
        };
        let d = first.rows();
        if self.operators.iter().any(|e| !e.is_square() || e.rows() != d) {
            return contract("Kraus operators must be square and of equal size");
        }
        let defect = self.completeness_defect();
        if defect > TOL.completeness {
            return contract(format!("Kraus set is not trace preserving (defect {defect:.3e})"));
        }
        Ok(())
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    /// Noise strength for single-qubit amplitude damping sets.
    pub fn strength(&self) -> Option<f64> {
        self.strength
    }

    pub fn dim(&self) -> usize {
        self.operators[0].rows()
    }

    /// Largest entrywise deviation of `Σ E†E` from the identity.
    pub fn completeness_defect(&self) -> f64 {
        let d = self.operators[0].rows();
        let mut sum = ComplexMatrix::zeros(d, d);
        for e in &self.operators {
            if let Ok(s) = e.dagger().matmul(e).and_then(|ee| sum.add(&ee)) {
                sum = s;
            } else {
                return f64::INFINITY;
            }
        }
        sum.max_abs_diff(&ComplexMatrix::identity(d)).unwrap_or(f64::INFINITY)
    }

    /// `Σ E ρ E†`
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        let mut out = ComplexMatrix::zeros(rho.rows(), rho.cols());
        for e in &self.operators {
            out = out.add(&rho.conjugate_by(e)?)?;
        }
        Ok(out)
    }
}

/// Channel angles (radians) and noise strengths of one teleportation scenario.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScenarioParams {
    pub theta1: f64,
    pub theta2: f64,
    pub p_a: f64,
    pub p_b: f64,
}

impl ScenarioParams {
    pub fn new(theta1: f64, theta2: f64, p_a: f64, p_b: f64) -> Result<Self> {
        check_angle(theta1)?;
        check_angle(theta2)?;
        check_strength(p_a)?;
        check_strength(p_b)?;
        Ok(Self {
            theta1,
            theta2,
            p_a,
            p_b,
        })
    }

    /// Two Bell pairs (θ₁ = θ₂ = π/4).
    pub fn bell(p_a: f64, p_b: f64) -> Result<Self> {
        let t = std::f64::consts::FRAC_PI_4;
        Self::new(t, t, p_a, p_b)
    }

    /// Same scenario with the two pairs exchanged.
    pub fn swapped_pairs(&self) -> Self {
        Self {
            theta1: self.theta2,
            theta2: self.theta1,
            ..*self
        }
    }
}

fn check_angle(theta: f64) -> Result<()> {
    if !(-ANGLE_SLACK..=FRAC_PI_2 + ANGLE_SLACK).contains(&theta) {
        return domain(format!("channel angle {theta} outside [0, π/2]"));
    }
    Ok(())
}

pub(crate) fn check_strength(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return domain(format!("noise strength {p} outside [0, 1]"));
    }
    Ok(())
}

/// Single-qubit amplitude damping: `E₁ = diag(1, √(1-p))`, `E₂ = √p |0⟩⟨1|`.
pub fn amplitude_damping_kraus(p: f64) -> Result<KrausSet> {
    check_strength(p)?;
    let e1 = ComplexMatrix::from_diag(&[1.0, (1.0 - p).sqrt()]);
    let mut e2 = ComplexMatrix::zeros(2, 2);
    e2[(0, 1)] = C64::new(p.sqrt(), 0.0);
    Ok(KrausSet {
        operators: vec![e1, e2],
        strength: Some(p),
    })
}

fn bell_like_pair(theta: f64) -> Result<StateVector> {
    check_angle(theta)?;
    StateVector::new(vec![C64::new(theta.cos(), 0.0), ZERO, ZERO, C64::new(theta.sin(), 0.0)])
}

/// `(cos θ₁|00⟩ + sin θ₁|11⟩) ⊗ (cos θ₂|00⟩ + sin θ₂|11⟩)` over (A1, B1, A2, B2).
pub fn bell_like_channel_state(theta1: f64, theta2: f64) -> Result<DensityMatrix> {
    let pair1 = bell_like_pair(theta1)?.projector();
    let pair2 = bell_like_pair(theta2)?.projector();
    DensityMatrix::from_parts(pair1.kron(&pair2), CHANNEL_ORDER.to_vec())
}

/// The composite Kraus set `{E_i ⊗ E_j ⊗ …}` over a register, with identity
/// on qubits absent from `assignment`.
pub fn composite_damping_kraus(order: &[Qubit], assignment: &[(Qubit, f64)]) -> Result<KrausSet> {
    let mut per_qubit: Vec<Vec<ComplexMatrix>> = vec![vec![ComplexMatrix::identity(2)]; order.len()];
    for (i, &(q, p)) in assignment.iter().enumerate() {
        if assignment[..i].iter().any(|&(r, _)| r == q) {
            return contract(format!("qubit {q} assigned twice"));
        }
        let Some(pos) = order.iter().position(|&x| x == q) else {
            return contract(format!("unknown qubit label {q}"));
        };
        per_qubit[pos] = amplitude_damping_kraus(p)?.operators;
    }
    // Combinations enumerate with the first register qubit as the slowest index.
    let mut composite = vec![ComplexMatrix::identity(1)];
    for ops in &per_qubit {
        composite = composite
            .iter()
            .flat_map(|acc| ops.iter().map(move |e| acc.kron(e)))
            .collect();
    }
    KrausSet::new(composite)
}

/// Applies independent amplitude damping of the given strength to each
/// assigned qubit, summing over every tensor combination of Kraus operators.
pub fn apply_amplitude_damping(rho: &DensityMatrix, assignment: &[(Qubit, f64)]) -> Result<DensityMatrix> {
    let kraus = composite_damping_kraus(rho.qubit_order(), assignment)?;
    let out = kraus.apply(rho.matrix())?;
    DensityMatrix::from_parts(out, rho.qubit_order().to_vec())
}

/// The resource shared by Alice and Bob after both halves travelled through
/// their amplitude-damping channels.
pub fn noisy_channel_state(s: &ScenarioParams) -> Result<DensityMatrix> {
    let rho = bell_like_channel_state(s.theta1, s.theta2)?;
    apply_amplitude_damping(
        &rho,
        &[
            (Qubit::A1, s.p_a),
            (Qubit::B1, s.p_b),
            (Qubit::A2, s.p_a),
            (Qubit::B2, s.p_b),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densemath::{partial_trace, ONE};
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};

    fn approx(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
        a.max_abs_diff(b).unwrap() <= tol
    }

    #[test]
    fn kraus_limits() {
        let k0 = amplitude_damping_kraus(0.0).unwrap();
        assert_eq!(k0.operators()[0], ComplexMatrix::identity(2));
        assert_eq!(k0.operators()[1], ComplexMatrix::zeros(2, 2));

        let k1 = amplitude_damping_kraus(1.0).unwrap();
        assert_eq!(k1.operators()[0], ComplexMatrix::from_diag(&[1.0, 0.0]));
        assert_eq!(
            k1.operators()[1],
            ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap()
        );

        let k = amplitude_damping_kraus(0.36).unwrap();
        assert!(approx(&k.operators()[0], &ComplexMatrix::from_diag(&[1.0, 0.8]), 1e-15));
        assert!((k.operators()[1][(0, 1)].re - 0.6).abs() < 1e-15);
        assert_eq!(k.strength(), Some(0.36));
    }

    #[test]
    fn kraus_rejects_bad_strength() {
        assert!(matches!(amplitude_damping_kraus(-0.01), Err(crate::Error::Domain(_))));
        assert!(matches!(amplitude_damping_kraus(1.5), Err(crate::Error::Domain(_))));
        assert!(amplitude_damping_kraus(f64::NAN).is_err());
    }

    #[test]
    fn channel_state_examples() {
        let bell = bell_like_channel_state(FRAC_PI_4, FRAC_PI_4).unwrap();
        let m = bell.matrix();
        for r in 0..16 {
            for c in 0..16 {
                let nonzero = [0usize, 3, 12, 15].contains(&r) && [0usize, 3, 12, 15].contains(&c);
                let expected = if nonzero { 0.25 } else { 0.0 };
                assert!((m[(r, c)].re - expected).abs() < 1e-15, "({r},{c})");
            }
        }

        let ground = bell_like_channel_state(0.0, 0.0).unwrap();
        let mut expected = ComplexMatrix::zeros(16, 16);
        expected[(0, 0)] = ONE;
        assert!(approx(ground.matrix(), &expected, 1e-15));

        let mixed = bell_like_channel_state(FRAC_PI_6, FRAC_PI_4).unwrap();
        let first = partial_trace(&mixed, &[Qubit::A1, Qubit::B1]).unwrap();
        let f = first.matrix();
        let s3 = 3f64.sqrt() / 4.0;
        assert!((f[(0, 0)].re - 0.75).abs() < 1e-15);
        assert!((f[(3, 3)].re - 0.25).abs() < 1e-15);
        assert!((f[(0, 3)].re - s3).abs() < 1e-15);
        assert!((f[(3, 0)].re - s3).abs() < 1e-15);
        assert!(f[(1, 1)].norm() < 1e-15 && f[(2, 2)].norm() < 1e-15);
    }

    #[test]
    fn channel_state_rejects_angles() {
        assert!(bell_like_channel_state(-0.1, 0.0).is_err());
        assert!(bell_like_channel_state(0.0, 2.0).is_err());
        assert!(ScenarioParams::new(0.0, 0.0, 0.0, 1.1).is_err());
    }

    #[test]
    fn damping_single_excited_qubit() {
        let q = Qubit("q");
        let rho = DensityMatrix::new(ComplexMatrix::from_diag(&[0.0, 1.0]), vec![q]).unwrap();
        let out = apply_amplitude_damping(&rho, &[(q, 0.36)]).unwrap();
        assert!(approx(out.matrix(), &ComplexMatrix::from_diag(&[0.36, 0.64]), 1e-15));
    }

    #[test]
    fn zero_strength_is_identity() {
        let rho = bell_like_channel_state(0.3, 1.2).unwrap();
        let assignment: Vec<_> = CHANNEL_ORDER.iter().map(|&q| (q, 0.0)).collect();
        let out = apply_amplitude_damping(&rho, &assignment).unwrap();
        assert!(approx(out.matrix(), rho.matrix(), 1e-15));
    }

    #[test]
    fn full_decay_reaches_ground_state() {
        let s = ScenarioParams::bell(1.0, 1.0).unwrap();
        let out = noisy_channel_state(&s).unwrap();
        let mut expected = ComplexMatrix::zeros(16, 16);
        expected[(0, 0)] = ONE;
        assert!(approx(out.matrix(), &expected, 1e-15));
    }

    #[test]
    fn damping_unknown_or_duplicate_label() {
        let rho = bell_like_channel_state(0.3, 1.2).unwrap();
        assert!(matches!(
            apply_amplitude_damping(&rho, &[(Qubit::X1, 0.5)]),
            Err(crate::Error::Contract(_))
        ));
        assert!(apply_amplitude_damping(&rho, &[(Qubit::A1, 0.5), (Qubit::A1, 0.2)]).is_err());
    }

    #[test]
    fn noisy_channel_noiseless_bell() {
        let out = noisy_channel_state(&ScenarioParams::bell(0.0, 0.0).unwrap()).unwrap();
        let ideal = bell_like_channel_state(FRAC_PI_4, FRAC_PI_4).unwrap();
        assert!(approx(out.matrix(), ideal.matrix(), 1e-15));
    }

    #[test]
    fn noisy_channel_bob_fully_damped() {
        // Oracle: direct Kraus sum on one (A, B) pair: |11⟩ → |10⟩, |00⟩ fixed.
        let pair = bell_like_pair(FRAC_PI_4).unwrap().projector();
        let e_b = [
            ComplexMatrix::from_diag(&[1.0, 0.0]),
            ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap(),
        ];
        let mut damped = ComplexMatrix::zeros(4, 4);
        for e in &e_b {
            let full = ComplexMatrix::identity(2).kron(e);
            damped = damped.add(&pair.conjugate_by(&full).unwrap()).unwrap();
        }
        assert!(approx(&damped, &ComplexMatrix::from_diag(&[0.5, 0.0, 0.5, 0.0]), 1e-15));

        let out = noisy_channel_state(&ScenarioParams::bell(0.0, 1.0).unwrap()).unwrap();
        assert!(approx(out.matrix(), &damped.kron(&damped), 1e-15));
    }

    #[test]
    fn bob_marginal_after_damping() {
        // Values from an independent numpy operator-sum computation.
        let alice_damped = noisy_channel_state(&ScenarioParams::bell(0.36, 0.0).unwrap()).unwrap();
        let b1 = partial_trace(&alice_damped, &[Qubit::B1]).unwrap();
        assert!(approx(b1.matrix(), &ComplexMatrix::from_diag(&[0.5, 0.5]), 1e-14));

        let bob_damped = noisy_channel_state(&ScenarioParams::bell(0.0, 0.36).unwrap()).unwrap();
        let b1 = partial_trace(&bob_damped, &[Qubit::B1]).unwrap();
        assert!(approx(b1.matrix(), &ComplexMatrix::from_diag(&[0.68, 0.32]), 1e-14));
    }

    #[test]
    fn composite_set_has_sixteen_complete_operators() {
        let assignment = [(Qubit::A1, 0.2), (Qubit::B1, 0.7), (Qubit::A2, 0.2), (Qubit::B2, 0.7)];
        let k = composite_damping_kraus(&CHANNEL_ORDER, &assignment).unwrap();
        assert_eq!(k.operators().len(), 16);
        assert_eq!(k.dim(), 16);
        assert!(k.completeness_defect() < 1e-14);
    }

    #[test]
    fn kraus_set_rejects_incomplete_operators() {
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(KrausSet::new(vec![half]).is_err());
        assert!(KrausSet::new(vec![]).is_err());
    }
}
