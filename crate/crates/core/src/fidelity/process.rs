//! Average fidelity from the process (Choi) matrix of the protocol.

use super::{AverageFidelityResult, Method};
use crate::densemath::{ComplexMatrix, DensityMatrix, Qubit, C64, ZERO};
use crate::error::Result;
use crate::noise::{noisy_channel_state, ScenarioParams};
use crate::protocol::{CorrectionTable, Teleporter};

const DIM: usize = 4;

/// Normalized Choi state `(1/d) Σ_ij |i⟩⟨j| ⊗ T(|i⟩⟨j|)` over a reference
/// register (R1, R2) followed by Bob's (B1, B2). Built from sixteen
/// teleportations of operator-basis elements.
pub fn choi_state(teleporter: &Teleporter) -> Result<DensityMatrix> {
    let mut choi = ComplexMatrix::zeros(DIM * DIM, DIM * DIM);
    for i in 0..DIM {
        for j in 0..DIM {
            let mut unit = ComplexMatrix::zeros(DIM, DIM);
            unit[(i, j)] = C64::new(1.0, 0.0);
            let image = teleporter.apply_linear(&unit)?;
            choi = choi.add(&unit.kron(&image))?;
        }
    }
    DensityMatrix::new(
        choi.scale_real(1.0 / DIM as f64),
        vec![Qubit("R1"), Qubit("R2"), Qubit::B1, Qubit::B2],
    )
}

/// `⟨Φ|J|Φ⟩` with `|Φ⟩ = Σ_i |ii⟩/√d`.
pub fn entanglement_fidelity(choi: &DensityMatrix) -> f64 {
    let m = choi.matrix();
    let mut acc = ZERO;
    for i in 0..DIM {
        for j in 0..DIM {
            acc += m[(i * DIM + i, j * DIM + j)];
        }
    }
    acc.re / DIM as f64
}

pub fn avg_fidelity_process(s: &ScenarioParams) -> Result<AverageFidelityResult> {
    avg_fidelity_process_with(s, CorrectionTable::standard())
}

/// `(d·F_e + 1)/(d + 1)` with `d = 4`.
pub fn avg_fidelity_process_with(s: &ScenarioParams, table: CorrectionTable) -> Result<AverageFidelityResult> {
    let teleporter = Teleporter::new(&noisy_channel_state(s)?, table)?;
    let fe = entanglement_fidelity(&choi_state(&teleporter)?);
    Ok(AverageFidelityResult {
        value: (DIM as f64 * fe + 1.0) / (DIM as f64 + 1.0),
        method: Method::ProcessMatrix,
        samples_or_nodes: DIM * DIM,
        std_error: None,
    })
}
