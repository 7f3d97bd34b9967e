//! Small dense complex linear algebra for Hilbert spaces of at most 64
//! dimensions.
//!
//! Qubit ordering is big-endian: `qubit_order[0]` of a [`DensityMatrix`] is
//! the most significant bit of the basis index, so `|a b c⟩` sits at index
//! `a·4 + b·2 + c`.

use std::fmt;
use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{contract, Result};
use crate::tolerance::TOL;

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting a wrong entry
    /// count or non-finite values.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows * cols != data.len() {
            return contract(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            ));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return contract("matrix entries must be finite");
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// `|u⟩⟨v|`
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        Self::from_fn(u.len(), v.len(), |r, c| u[r] * v[c].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    /// Kronecker product; entry `(i·b.rows + k, j·b.cols + l) = a(i,j)·b(k,l)`.
    pub fn kron(&self, other: &Self) -> Self {
        let (br, bc) = (other.rows, other.cols);
        let mut out = Self::zeros(self.rows * br, self.cols * bc);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..br {
                    for l in 0..bc {
                        out[(i * br + k, j * bc + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return contract(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if self.cols != v.len() {
            return contract(format!(
                "cannot apply {}x{} matrix to a {}-vector",
                self.rows,
                self.cols,
                v.len()
            ));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> Result<C64> {
        if !self.is_square() {
            return contract(format!("trace of non-square {}x{} matrix", self.rows, self.cols));
        }
        Ok((0..self.rows).map(|i| self[(i, i)]).sum())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    /// `U · self · U†`
    pub fn conjugate_by(&self, u: &Self) -> Result<Self> {
        u.matmul(self)?.matmul(&u.dagger())
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.data.iter().map(|z| z.norm()).fold(0.0, f64::max))
    }

    /// Largest entrywise modulus of `M - M†`; infinite for non-square input.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0f64;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return contract(format!(
                "shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    if !m.is_square() {
        return contract("min_eigenvalue needs a square matrix");
    }
    let defect = m.hermiticity_defect();
    if defect > TOL.eigen_hermiticity {
        return contract(format!("matrix is not Hermitian (defect {defect:.3e})"));
    }
    let n = m.rows();
    if n == 0 {
        return contract("min_eigenvalue of an empty matrix");
    }
    // Symmetrize so round-off in the upper/lower halves does not bias the solver.
    let h = DMatrix::from_fn(n, n, |r, c| (m[(r, c)] + m[(c, r)].conj()) * 0.5);
    Ok(h.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min))
}

/// A named qubit. Labels only need to be unique within one register.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Qubit(pub &'static str);

impl Qubit {
    pub const X1: Qubit = Qubit("X1");
    pub const X2: Qubit = Qubit("X2");
    pub const A1: Qubit = Qubit("A1");
    pub const B1: Qubit = Qubit("B1");
    pub const A2: Qubit = Qubit("A2");
    pub const B2: Qubit = Qubit("B2");
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// Pure state amplitudes in the computational basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return contract("state vector must have at least one amplitude");
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return contract("state amplitudes must be finite");
        }
        Ok(Self { amplitudes })
    }

    /// Rescales to unit norm; fails on the zero vector.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let s = Self::new(amplitudes)?;
        let norm = s.norm_sqr().sqrt();
        if norm == 0.0 {
            return contract("cannot normalize the zero vector");
        }
        Ok(Self {
            amplitudes: s.amplitudes.iter().map(|z| z / norm).collect(),
        })
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= TOL.norm
    }

    /// `|ψ⟩⟨ψ|`
    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }

    /// `⟨ψ|M|ψ⟩`
    pub fn expectation(&self, m: &ComplexMatrix) -> Result<C64> {
        let mv = m.matvec(&self.amplitudes)?;
        if mv.len() != self.dim() {
            return contract("expectation needs a square operator");
        }
        Ok(self.amplitudes.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum())
    }
}

/// A trace-one, Hermitian, positive-semidefinite matrix over labelled qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    qubit_order: Vec<Qubit>,
}

impl DensityMatrix {
    /// Validates every invariant: square `2^n` shape, distinct labels,
    /// Hermiticity, unit trace and the PSD floor.
    pub fn new(matrix: ComplexMatrix, qubit_order: Vec<Qubit>) -> Result<Self> {
        let rho = Self::from_parts(matrix, qubit_order)?;
        rho.validate()?;
        Ok(rho)
    }

    /// Checks shape and labels only. For matrices that are states by
    /// construction (outputs of CPTP maps).
    pub(crate) fn from_parts(matrix: ComplexMatrix, qubit_order: Vec<Qubit>) -> Result<Self> {
        let n = qubit_order.len();
        if n > 6 {
            return contract(format!("{n} qubits exceeds the 64-dimensional limit"));
        }
        if !matrix.is_square() || matrix.rows() != 1 << n {
            return contract(format!(
                "{}x{} matrix does not match {n} qubits",
                matrix.rows(),
                matrix.cols()
            ));
        }
        for (i, q) in qubit_order.iter().enumerate() {
            if qubit_order[..i].contains(q) {
                return contract(format!("duplicate qubit label {q}"));
            }
        }
        Ok(Self { matrix, qubit_order })
    }

    pub fn from_pure(state: &StateVector, qubit_order: Vec<Qubit>) -> Result<Self> {
        if !state.is_normalized() {
            return contract("pure state must be normalized");
        }
        Self::from_parts(state.projector(), qubit_order)
    }

    pub fn validate(&self) -> Result<()> {
        let defect = self.matrix.hermiticity_defect();
        if defect > TOL.hermiticity {
            return contract(format!("density matrix not Hermitian (defect {defect:.3e})"));
        }
        let tr = self.matrix.trace()?;
        if (tr - ONE).norm() > TOL.trace {
            return contract(format!("density matrix trace {tr} differs from 1"));
        }
        let min = min_eigenvalue(&self.matrix)?;
        if min < TOL.psd_floor {
            return contract(format!("density matrix has negative eigenvalue {min:.3e}"));
        }
        Ok(())
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn qubit_order(&self) -> &[Qubit] {
        &self.qubit_order
    }

    pub fn num_qubits(&self) -> usize {
        self.qubit_order.len()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn position(&self, q: Qubit) -> Result<usize> {
        match self.qubit_order.iter().position(|&x| x == q) {
            Some(p) => Ok(p),
            None => contract(format!("unknown qubit label {q}")),
        }
    }

    /// Tensor product; the result's label list is `self` then `other`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let mut order = self.qubit_order.clone();
        order.extend_from_slice(&other.qubit_order);
        Self::from_parts(self.matrix.kron(&other.matrix), order)
    }

    /// `alpha·self + (1 - alpha)·other`, for `alpha ∈ [0, 1]`.
    pub fn mix(&self, other: &Self, alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return contract(format!("mixing weight {alpha} outside [0, 1]"));
        }
        if self.qubit_order != other.qubit_order {
            return contract("cannot mix states over different qubit orders");
        }
        let m = self
            .matrix
            .scale_real(alpha)
            .add(&other.matrix.scale_real(1.0 - alpha))?;
        Self::from_parts(m, self.qubit_order.clone())
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        min_eigenvalue(&self.matrix)
    }
}

/// Traces out every qubit not in `keep`. The result lists the kept qubits in
/// their original relative order; keeping nothing yields the 1×1 state `[tr ρ]`.
pub fn partial_trace(rho: &DensityMatrix, keep: &[Qubit]) -> Result<DensityMatrix> {
    let n = rho.num_qubits();
    let mut kept_pos = Vec::with_capacity(keep.len());
    for &q in keep {
        let p = rho.position(q)?;
        if !kept_pos.contains(&p) {
            kept_pos.push(p);
        }
    }
    kept_pos.sort_unstable();
    let traced_pos: Vec<usize> = (0..n).filter(|p| !kept_pos.contains(p)).collect();

    // Scatter a compact index over a set of positions into a full basis index.
    let scatter = |positions: &[usize], value: usize| -> usize {
        let k = positions.len();
        positions.iter().enumerate().fold(0, |acc, (j, &p)| {
            let bit = (value >> (k - 1 - j)) & 1;
            acc | (bit << (n - 1 - p))
        })
    };
    let kept_idx: Vec<usize> = (0..1 << kept_pos.len()).map(|v| scatter(&kept_pos, v)).collect();
    let traced_idx: Vec<usize> = (0..1 << traced_pos.len()).map(|v| scatter(&traced_pos, v)).collect();

    let m = rho.matrix();
    let d = kept_idx.len();
    let out = ComplexMatrix::from_fn(d, d, |r, c| {
        traced_idx.iter().map(|&t| m[(kept_idx[r] | t, kept_idx[c] | t)]).sum()
    });
    let order = kept_pos.iter().map(|&p| rho.qubit_order()[p]).collect();
    DensityMatrix::from_parts(out, order)
}

/// Lifts an operator on `targets` (given as register positions, first target
/// most significant) to the full `n_qubits` register, acting as identity
/// elsewhere.
pub fn embed_operator(op: &ComplexMatrix, targets: &[usize], n_qubits: usize) -> Result<ComplexMatrix> {
    let k = targets.len();
    if !op.is_square() || op.rows() != 1 << k {
        return contract(format!(
            "{}x{} operator does not act on {k} qubits",
            op.rows(),
            op.cols()
        ));
    }
    if targets.iter().any(|&t| t >= n_qubits) {
        return contract("target position outside the register");
    }
    for (i, t) in targets.iter().enumerate() {
        if targets[..i].contains(t) {
            return contract("repeated target position");
        }
    }
    let mask: usize = targets.iter().map(|&t| 1 << (n_qubits - 1 - t)).sum();
    let gather = |full: usize| -> usize {
        targets
            .iter()
            .fold(0, |acc, &t| (acc << 1) | ((full >> (n_qubits - 1 - t)) & 1))
    };
    let dim = 1 << n_qubits;
    Ok(ComplexMatrix::from_fn(dim, dim, |r, c| {
        if r & !mask == c & !mask {
            op[(gather(r), gather(c))]
        } else {
            ZERO
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn phi_plus() -> StateVector {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        StateVector::new(vec![c(s), ZERO, ZERO, c(s)]).unwrap()
    }

    #[test]
    fn kron_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
        let p0 = ComplexMatrix::from_diag(&[1.0, 0.0]);
        assert_eq!(kron(&p0, &p0), ComplexMatrix::from_diag(&[1.0, 0.0, 0.0, 0.0]));
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        let mixed = kron(&half, &half);
        assert!(
            mixed
                .max_abs_diff(&ComplexMatrix::identity(4).scale_real(0.25))
                .unwrap()
                < 1e-15
        );
    }

    #[test]
    fn kron_of_rectangular_shapes() {
        let a = ComplexMatrix::from_real(1, 2, &[1.0, 2.0]).unwrap();
        let b = ComplexMatrix::from_real(2, 1, &[3.0, 4.0]).unwrap();
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 2));
        assert_eq!(k, ComplexMatrix::from_real(2, 2, &[3.0, 6.0, 4.0, 8.0]).unwrap());
    }

    #[test]
    fn basic_ops() {
        let x = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        assert_eq!(x.matmul(&x).unwrap(), ComplexMatrix::identity(2));
        assert_eq!(ComplexMatrix::identity(4).scale_real(0.25).trace().unwrap(), ONE);
        // E2 of amplitude damping at p = 1 is |0⟩⟨1|; its adjoint is |1⟩⟨0|.
        let e2 = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(
            e2.dagger(),
            ComplexMatrix::from_real(2, 2, &[0.0, 0.0, 1.0, 0.0]).unwrap()
        );
    }

    #[test]
    fn dimension_mismatch_is_a_contract_error() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(3);
        assert!(matches!(a.matmul(&b), Err(crate::Error::Contract(_))));
        assert!(matches!(a.add(&b), Err(crate::Error::Contract(_))));
        assert!(ComplexMatrix::zeros(2, 3).trace().is_err());
        assert!(ComplexMatrix::from_vec(2, 2, vec![ZERO; 3]).is_err());
        assert!(ComplexMatrix::from_real(1, 1, &[f64::NAN]).is_err());
    }

    #[test]
    fn min_eigenvalue_examples() {
        assert!((min_eigenvalue(&ComplexMatrix::identity(4)).unwrap() - 1.0).abs() < 1e-14);
        let d = ComplexMatrix::from_diag(&[0.7, 0.3, 0.0, 0.0]);
        assert!(min_eigenvalue(&d).unwrap().abs() < 1e-14);
        assert!(min_eigenvalue(&phi_plus().projector()).unwrap().abs() < 1e-14);
    }

    #[test]
    fn min_eigenvalue_of_complex_hermitian() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let m = ComplexMatrix::from_vec(2, 2, vec![c(2.0), C64::i(), -C64::i(), c(2.0)]).unwrap();
        assert!((min_eigenvalue(&m).unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn min_eigenvalue_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(min_eigenvalue(&m), Err(crate::Error::Contract(_))));
    }

    #[test]
    fn partial_trace_of_bell_state_is_maximally_mixed() {
        let q1 = Qubit("q1");
        let q2 = Qubit("q2");
        let rho = DensityMatrix::from_pure(&phi_plus(), vec![q1, q2]).unwrap();
        let r = partial_trace(&rho, &[q1]).unwrap();
        assert_eq!(r.qubit_order(), &[q1]);
        let expected = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(r.matrix().max_abs_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn partial_trace_factorizes_products() {
        let rho = DensityMatrix::new(
            ComplexMatrix::from_vec(2, 2, vec![c(0.7), C64::new(0.1, 0.2), C64::new(0.1, -0.2), c(0.3)]).unwrap(),
            vec![Qubit("a")],
        )
        .unwrap();
        let sigma = DensityMatrix::new(
            ComplexMatrix::from_diag(&[0.25, 0.25, 0.5, 0.0]),
            vec![Qubit("b"), Qubit("c")],
        )
        .unwrap();
        let joint = rho.tensor(&sigma).unwrap();
        let left = partial_trace(&joint, &[Qubit("a")]).unwrap();
        assert!(left.matrix().max_abs_diff(rho.matrix()).unwrap() < 1e-15);
        let right = partial_trace(&joint, &[Qubit("c"), Qubit("b")]).unwrap();
        assert_eq!(right.qubit_order(), &[Qubit("b"), Qubit("c")]);
        assert!(right.matrix().max_abs_diff(sigma.matrix()).unwrap() < 1e-15);
    }

    #[test]
    fn partial_trace_edge_cases() {
        let rho = DensityMatrix::from_pure(&phi_plus(), vec![Qubit("p"), Qubit("q")]).unwrap();
        let all = partial_trace(&rho, &[Qubit("p"), Qubit("q")]).unwrap();
        assert_eq!(all, rho);
        let none = partial_trace(&rho, &[]).unwrap();
        assert_eq!(none.dim(), 1);
        assert!((none.matrix()[(0, 0)] - ONE).norm() < 1e-15);
        assert!(matches!(
            partial_trace(&rho, &[Qubit("zz")]),
            Err(crate::Error::Contract(_))
        ));
    }

    #[test]
    fn density_matrix_validation() {
        let bad_trace = ComplexMatrix::from_diag(&[0.5, 0.4]);
        assert!(DensityMatrix::new(bad_trace, vec![Qubit("a")]).is_err());
        let negative = ComplexMatrix::from_diag(&[1.2, -0.2]);
        assert!(DensityMatrix::new(negative, vec![Qubit("a")]).is_err());
        let wrong_shape = ComplexMatrix::identity(3).scale_real(1.0 / 3.0);
        assert!(DensityMatrix::new(wrong_shape, vec![Qubit("a")]).is_err());
        let dup = ComplexMatrix::identity(4).scale_real(0.25);
        assert!(DensityMatrix::new(dup, vec![Qubit("a"), Qubit("a")]).is_err());
    }

    #[test]
    fn embed_matches_kron_on_leading_qubits() {
        let x = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        let z = ComplexMatrix::from_diag(&[1.0, -1.0]);
        let i2 = ComplexMatrix::identity(2);
        let xz = x.kron(&z);
        // X on qubit 0, Z on qubit 2 of a 3-qubit register.
        let embedded = embed_operator(&xz, &[0, 2], 3).unwrap();
        assert_eq!(embedded, x.kron(&i2).kron(&z));
        // Reversed target order swaps the roles.
        let swapped = embed_operator(&xz, &[2, 0], 3).unwrap();
        assert_eq!(swapped, z.kron(&i2).kron(&x));
    }
}
