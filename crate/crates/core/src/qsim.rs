//! Statevector replay of a compiled program on `2n` qubits.
//!
//! Block basis vector `k` is computational basis state `|k⟩`; every operator
//! acts as its `d × d` block on the first `d` amplitudes and as the identity
//! elsewhere. Starting from `|0…0⟩`, the program `U = op₀ · op₁ · …` is applied
//! last factor first, and `P_K = |⟨0…0|U|0…0⟩|²`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::evaluator::{compile_word, BlockOperator};
use crate::fusion::Branch;
use crate::qnum::QPoint;

/// Blocks further than this from unitary are rejected.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub n: usize,
    pub amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `2n` qubits.
    pub fn zero(n: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << (2 * n)];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Self { n, amplitudes }
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }
}

/// `block ⊕ 1` on the full register.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedUnitary {
    pub n: usize,
    pub block: DMatrix<Complex64>,
}

impl EmbeddedUnitary {
    pub fn dim(&self) -> usize {
        1 << (2 * self.n)
    }

    pub fn apply(&self, state: &mut StateVector) {
        let d = self.block.nrows();
        let head: Vec<Complex64> = (0..d)
            .map(|r| (0..d).map(|c| self.block[(r, c)] * state.amplitudes[c]).sum())
            .collect();
        state.amplitudes[..d].copy_from_slice(&head);
    }

    /// The full `2^{2n} × 2^{2n}` matrix; only for small registers.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::identity(self.dim(), self.dim());
        let d = self.block.nrows();
        m.view_mut((0, 0), (d, d)).copy_from(&self.block);
        m
    }
}

/// `‖B·B† − I‖_max`.
pub fn unitarity_defect(block: &DMatrix<Complex64>) -> f64 {
    let d = block.nrows();
    (block * block.adjoint() - DMatrix::<Complex64>::identity(d, d))
        .iter()
        .fold(0.0, |m, z| m.max(z.norm()))
}

pub fn embed(op: &BlockOperator, n: usize) -> Result<EmbeddedUnitary> {
    let block = op.to_matrix();
    let deviation = unitarity_defect(&block);
    if deviation > UNITARITY_TOLERANCE {
        return Err(Error::NonUnitaryBlock { deviation });
    }
    Ok(EmbeddedUnitary { n, block })
}

/// Per-operator record of a traced run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceStep {
    pub norm_drift: f64,
    /// Largest amplitude modulus at indices `≥ d`.
    pub leakage: f64,
}

/// Runs the word at `θ`, returning the final state and one record per operator
/// in application order.
pub fn run_traced(word: &BraidWord, theta: f64) -> Result<(StateVector, Vec<TraceStep>)> {
    let program = compile_word(word)?;
    let n = program.n;
    let (_, ops) = program.instantiate(&QPoint::new(theta), Branch::Unitary)?;
    let embedded = ops.iter().map(|op| embed(op, n)).collect::<Result<Vec<_>>>()?;
    let d = crate::fusion::catalan(n);
    let mut state = StateVector::zero(n);
    let mut trace = Vec::with_capacity(embedded.len());
    for u in embedded.iter().rev() {
        u.apply(&mut state);
        trace.push(TraceStep {
            norm_drift: (state.norm_squared() - 1.0).abs(),
            leakage: state.amplitudes[d..].iter().fold(0.0, |m, a| m.max(a.norm())),
        });
    }
    Ok((state, trace))
}

pub fn run(word: &BraidWord, theta: f64) -> Result<StateVector> {
    Ok(run_traced(word, theta)?.0)
}

/// `⟨0…0|U|0…0⟩`.
pub fn amplitude(word: &BraidWord, theta: f64) -> Result<Complex64> {
    Ok(run(word, theta)?.amplitude(0))
}

pub fn p_k(word: &BraidWord, theta: f64) -> Result<f64> {
    Ok(amplitude(word, theta)?.norm_sqr())
}
