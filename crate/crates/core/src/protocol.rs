//! Two-qubit teleportation through a pair of (possibly noisy) Bell-like
//! resources.
//!
//! Alice holds the input on X1, X2 and measures (X1, A1) and (X2, A2) in the
//! Bell basis. Bob corrects B1 and B2 with a Pauli chosen from a
//! [`CorrectionTable`]. The returned state is the probability-weighted
//! average over all sixteen outcomes, i.e. the deterministic channel the
//! protocol implements.
//!
//! The global register is (X1, X2, A1, B1, A2, B2). Nothing is ever
//! permuted: every contraction addresses qubits through their positions in
//! the resource's own label list.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, TAU};
use std::fmt;

use crate::densemath::{ComplexMatrix, DensityMatrix, Qubit, StateVector, C64, ZERO};
use crate::error::{contract, domain, Result};
use crate::tolerance::TOL;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bell {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl Bell {
    pub const ALL: [Bell; 4] = [Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Amplitudes over |00⟩, |01⟩, |10⟩, |11⟩ of the measured pair (X, A).
    pub fn amplitudes(self) -> [f64; 4] {
        let s = FRAC_1_SQRT_2;
        match self {
            Bell::PhiPlus => [s, 0.0, 0.0, s],
            Bell::PhiMinus => [s, 0.0, 0.0, -s],
            Bell::PsiPlus => [0.0, s, s, 0.0],
            Bell::PsiMinus => [0.0, s, -s, 0.0],
        }
    }

    pub fn state(self) -> StateVector {
        StateVector::new(self.amplitudes().iter().map(|&a| C64::new(a, 0.0)).collect())
            .expect("Bell amplitudes are finite")
    }
}

impl fmt::Display for Bell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bell::PhiPlus => "Φ+",
            Bell::PhiMinus => "Φ-",
            Bell::PsiPlus => "Ψ+",
            Bell::PsiMinus => "Ψ-",
        })
    }
}

/// Rank-one projectors onto Φ⁺, Φ⁻, Ψ⁺, Ψ⁻, in that order.
pub fn bell_projectors() -> [ComplexMatrix; 4] {
    Bell::ALL.map(|b| b.state().projector())
}

/// Single-qubit Pauli corrections. `XZ` is the matrix product X·Z.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Z,
    XZ,
}

impl Pauli {
    pub fn matrix(self) -> ComplexMatrix {
        let m: [f64; 4] = match self {
            Pauli::I => [1.0, 0.0, 0.0, 1.0],
            Pauli::X => [0.0, 1.0, 1.0, 0.0],
            Pauli::Z => [1.0, 0.0, 0.0, -1.0],
            Pauli::XZ => [0.0, -1.0, 1.0, 0.0],
        };
        ComplexMatrix::from_real(2, 2, &m).expect("2x2 Pauli")
    }
}

/// Which Pauli Bob applies for each Bell outcome on a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorrectionTable {
    by_outcome: [Pauli; 4],
}

impl CorrectionTable {
    /// Φ⁺ → I, Φ⁻ → Z, Ψ⁺ → X, Ψ⁻ → X·Z.
    pub const fn standard() -> Self {
        Self {
            by_outcome: [Pauli::I, Pauli::Z, Pauli::X, Pauli::XZ],
        }
    }

    pub fn correction(&self, outcome: Bell) -> Pauli {
        self.by_outcome[outcome.index()]
    }

    /// Exchanges the corrections assigned to two outcomes.
    pub fn with_swapped(mut self, a: Bell, b: Bell) -> Self {
        self.by_outcome.swap(a.index(), b.index());
        self
    }
}

impl Default for CorrectionTable {
    fn default() -> Self {
        Self::standard()
    }
}

/// Hurwitz angles of a two-qubit input state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InputParams {
    pub eta1: f64,
    pub eta2: f64,
    pub eta3: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub phi3: f64,
}

impl InputParams {
    pub fn new(eta: [f64; 3], phi: [f64; 3]) -> Result<Self> {
        if eta.iter().any(|e| !(0.0..=FRAC_PI_2).contains(e)) {
            return domain(format!("input angles η {eta:?} outside [0, π/2]"));
        }
        if phi.iter().any(|p| !(0.0..TAU).contains(p)) {
            return domain(format!("input phases φ {phi:?} outside [0, 2π)"));
        }
        Ok(Self {
            eta1: eta[0],
            eta2: eta[1],
            eta3: eta[2],
            phi1: phi[0],
            phi2: phi[1],
            phi3: phi[2],
        })
    }

    /// Real magnitudes (a, b, c, d); their squares always sum to one.
    pub fn magnitudes(&self) -> [f64; 4] {
        let (s3, c3) = self.eta3.sin_cos();
        let (s2, c2) = self.eta2.sin_cos();
        let (s1, c1) = self.eta1.sin_cos();
        [c3, s3 * c2, s3 * s2 * c1, s3 * s2 * s1]
    }
}

/// `a|00⟩ + b e^{iφ₁}|01⟩ + c e^{iφ₂}|10⟩ + d e^{iφ₃}|11⟩`
pub fn input_state(params: &InputParams) -> StateVector {
    let [a, b, c, d] = params.magnitudes();
    StateVector::new(vec![
        C64::new(a, 0.0),
        C64::from_polar(b, params.phi1),
        C64::from_polar(c, params.phi2),
        C64::from_polar(d, params.phi3),
    ])
    .expect("finite amplitudes")
}

/// `⟨ψ|ρ|ψ⟩`
pub fn state_fidelity(input: &StateVector, rho: &DensityMatrix) -> Result<f64> {
    if input.dim() != rho.dim() {
        return contract(format!(
            "fidelity between a {}-dim state and a {}-dim density matrix",
            input.dim(),
            rho.dim()
        ));
    }
    Ok(input.expectation(rho.matrix())?.re)
}

/// One joint result of Alice's two Bell measurements.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementOutcome {
    pub pair1: Bell,
    pub pair2: Bell,
    pub probability: f64,
}

type Mat4 = [[C64; 4]; 4];

/// Teleportation over a fixed resource state with a fixed correction table.
///
/// Construction validates the resource once; the per-input calls are cheap
/// enough for quadrature and Monte-Carlo loops.
#[derive(Clone, Debug)]
pub struct Teleporter {
    /// Nonzero resource entries `⟨a b|χ|a' b'⟩` as `(a, a', b, b', value)`,
    /// with Alice bits `a = (a1 a2)` and Bob bits `b = (b1 b2)`.
    entries: Vec<(usize, usize, usize, usize, C64)>,
    /// `bell_map[m][x][a] = ⟨x a| β_m⟩` for the joint outcome `m = 4·i + j`.
    bell_map: [Mat4; 16],
    /// Bob's correction `P_i ⊗ P_j` for each joint outcome, stored as a
    /// signed permutation: row `r` has its single entry `sign[r]` in
    /// column `col[r]`.
    corrections: [SignedPermutation; 16],
}

#[derive(Clone, Copy, Debug)]
struct SignedPermutation {
    col: [usize; 4],
    sign: [f64; 4],
}

impl SignedPermutation {
    fn from_matrix(u: &ComplexMatrix) -> Self {
        let mut col = [0; 4];
        let mut sign = [0.0; 4];
        for r in 0..4 {
            let c = (0..4).find(|&c| u[(r, c)] != ZERO).expect("Pauli rows are nonzero");
            col[r] = c;
            sign[r] = u[(r, c)].re;
        }
        Self { col, sign }
    }
}

impl Teleporter {
    pub fn new(channel: &DensityMatrix, table: CorrectionTable) -> Result<Self> {
        if channel.dim() != 16 {
            return contract(format!(
                "resource must be 16x16, got {}x{}",
                channel.dim(),
                channel.dim()
            ));
        }
        // Bit offset of each resource qubit inside the resource's basis index.
        let shift = |q: Qubit| -> Result<usize> { Ok(3 - channel.position(q)?) };
        let (sa1, sb1, sa2, sb2) = (
            shift(Qubit::A1)?,
            shift(Qubit::B1)?,
            shift(Qubit::A2)?,
            shift(Qubit::B2)?,
        );
        let mut index = [[0usize; 4]; 4];
        for (a, row) in index.iter_mut().enumerate() {
            for (b, slot) in row.iter_mut().enumerate() {
                *slot = (a >> 1) << sa1 | (a & 1) << sa2 | (b >> 1) << sb1 | (b & 1) << sb2;
            }
        }
        let m = channel.matrix();
        let mut entries = Vec::new();
        for a in 0..4 {
            for ap in 0..4 {
                for b in 0..4 {
                    for bp in 0..4 {
                        let v = m[(index[a][b], index[ap][bp])];
                        if v != ZERO {
                            entries.push((a, ap, b, bp, v));
                        }
                    }
                }
            }
        }

        let mut bell_map = [[[ZERO; 4]; 4]; 16];
        let mut corrections = [SignedPermutation {
            col: [0; 4],
            sign: [0.0; 4],
        }; 16];
        for (i, &bi) in Bell::ALL.iter().enumerate() {
            for (j, &bj) in Bell::ALL.iter().enumerate() {
                let m = 4 * i + j;
                let (vi, vj) = (bi.amplitudes(), bj.amplitudes());
                for (x, row) in bell_map[m].iter_mut().enumerate() {
                    for (a, slot) in row.iter_mut().enumerate() {
                        let (x1, x2) = (x >> 1, x & 1);
                        let (a1, a2) = (a >> 1, a & 1);
                        *slot = C64::new(vi[x1 << 1 | a1] * vj[x2 << 1 | a2], 0.0);
                    }
                }
                let u = table.correction(bi).matrix().kron(&table.correction(bj).matrix());
                corrections[m] = SignedPermutation::from_matrix(&u);
            }
        }

        Ok(Self {
            entries,
            bell_map,
            corrections,
        })
    }

    /// Bob's unnormalized, uncorrected state for outcome `m`, given Alice's
    /// reduced operator `G = B_m† ρ_in B_m`.
    fn bob_state(&self, g: &Mat4) -> Mat4 {
        let mut out = [[ZERO; 4]; 4];
        for &(a, ap, b, bp, v) in &self.entries {
            out[b][bp] += g[a][ap] * v;
        }
        out
    }

    fn alice_operator_pure(&self, m: usize, psi: &[C64]) -> Mat4 {
        // v_a = Σ_x β*(x, a) ψ_x ; G = v v†
        let mut v = [ZERO; 4];
        for (a, va) in v.iter_mut().enumerate() {
            for (x, &px) in psi.iter().enumerate() {
                *va += self.bell_map[m][x][a].conj() * px;
            }
        }
        let mut g = [[ZERO; 4]; 4];
        for a in 0..4 {
            for a2 in 0..4 {
                g[a][a2] = v[a] * v[a2].conj();
            }
        }
        g
    }

    fn alice_operator(&self, m: usize, rho_in: &ComplexMatrix) -> Mat4 {
        let b = &self.bell_map[m];
        let mut g = [[ZERO; 4]; 4];
        for (a, g_row) in g.iter_mut().enumerate() {
            for (a2, slot) in g_row.iter_mut().enumerate() {
                let mut acc = ZERO;
                for x in 0..4 {
                    let bx = b[x][a].conj();
                    if bx == ZERO {
                        continue;
                    }
                    for x2 in 0..4 {
                        acc += bx * rho_in[(x, x2)] * b[x2][a2];
                    }
                }
                *slot = acc;
            }
        }
        g
    }

    /// `U ρ U†` for the signed permutation `U` of outcome `m`.
    fn correct(&self, m: usize, rho: &Mat4) -> Mat4 {
        let u = &self.corrections[m];
        let mut out = [[ZERO; 4]; 4];
        for r in 0..4 {
            for c in 0..4 {
                out[r][c] = rho[u.col[r]][u.col[c]] * (u.sign[r] * u.sign[c]);
            }
        }
        out
    }

    fn check_input(input: &StateVector) -> Result<()> {
        if input.dim() != 4 {
            return contract(format!("input must be a two-qubit state, got dim {}", input.dim()));
        }
        if !input.is_normalized() {
            return contract("input state must be normalized");
        }
        Ok(())
    }

    /// Probabilities of the sixteen joint outcomes, Φ⁺Φ⁺ first.
    pub fn outcomes(&self, input: &StateVector) -> Result<Vec<MeasurementOutcome>> {
        Self::check_input(input)?;
        Ok((0..16)
            .map(|m| {
                let g = self.alice_operator_pure(m, input.amplitudes());
                let bob = self.bob_state(&g);
                let probability = (0..4).map(|k| bob[k][k].re).sum();
                MeasurementOutcome {
                    pair1: Bell::ALL[m / 4],
                    pair2: Bell::ALL[m % 4],
                    probability,
                }
            })
            .collect())
    }

    /// Outcome-averaged, corrected state of (B1, B2).
    pub fn teleport(&self, input: &StateVector) -> Result<DensityMatrix> {
        Self::check_input(input)?;
        let avg = self.average_state(input.amplitudes());
        let out = ComplexMatrix::from_fn(4, 4, |r, c| avg[r][c]);
        DensityMatrix::from_parts(out, vec![Qubit::B1, Qubit::B2])
    }

    fn average_state(&self, psi: &[C64]) -> Mat4 {
        let mut avg = [[ZERO; 4]; 4];
        for m in 0..16 {
            let g = self.alice_operator_pure(m, psi);
            let bob = self.bob_state(&g);
            let prob: f64 = (0..4).map(|k| bob[k][k].re).sum();
            if prob < TOL.zero_probability {
                continue;
            }
            // prob · (ρ_m / prob) is the unnormalized branch itself.
            let corrected = self.correct(m, &bob);
            for r in 0..4 {
                for c in 0..4 {
                    avg[r][c] += corrected[r][c];
                }
            }
        }
        avg
    }

    /// Same value as [`Teleporter::fidelity`] without validation or
    /// allocation; `psi` must be a normalized 4-vector.
    pub(crate) fn fidelity_unchecked(&self, psi: &[C64]) -> f64 {
        let rho = self.average_state(psi);
        let mut acc = ZERO;
        for r in 0..4 {
            for c in 0..4 {
                acc += psi[r].conj() * rho[r][c] * psi[c];
            }
        }
        acc.re
    }

    /// The protocol as a linear map on arbitrary 4×4 operators (no
    /// renormalization, no outcome dropping), for process reconstruction.
    pub fn apply_linear(&self, rho_in: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho_in.rows() != 4 || rho_in.cols() != 4 {
            return contract("linear teleport map acts on 4x4 operators");
        }
        let mut sum = [[ZERO; 4]; 4];
        for m in 0..16 {
            let g = self.alice_operator(m, rho_in);
            let corrected = self.correct(m, &self.bob_state(&g));
            for r in 0..4 {
                for c in 0..4 {
                    sum[r][c] += corrected[r][c];
                }
            }
        }
        Ok(ComplexMatrix::from_fn(4, 4, |r, c| sum[r][c]))
    }

    /// `⟨ψ|T(|ψ⟩⟨ψ|)|ψ⟩`
    pub fn fidelity(&self, input: &StateVector) -> Result<f64> {
        state_fidelity(input, &self.teleport(input)?)
    }
}

/// Teleports `input` through `channel` with the standard corrections.
pub fn teleport(input: &StateVector, channel: &DensityMatrix) -> Result<DensityMatrix> {
    Teleporter::new(channel, CorrectionTable::standard())?.teleport(input)
}
