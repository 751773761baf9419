//! Brute-force cross-check by sparse state simulation.
//!
//! Encodes each logical basis state, applies the diagonal gate amplitude by
//! amplitude, and compares against the expected result in double precision.
//! Nothing here goes through generator coefficients, so agreement with
//! [`crate::gencoeff`] is an independent confirmation.

use num_complex::Complex64;
use serde::Serialize;

use crate::codespace::CssCode;
use crate::diaggate::DyadicDiagonalGate;
use crate::error::{Error, Result};
use crate::gencoeff::{gc_matrix, LogicalDiagonal};
use crate::gf2::BitVector;
use crate::state::SparseState;

/// Per-amplitude tolerance.
pub const TOLERANCE: f64 = 1e-10;

/// Largest `k` checked exhaustively.
pub const MAX_LOGICAL_QUBITS: usize = 20;

/// Multiplies the amplitude at `u` by `d_u`.
pub fn apply_diagonal(gate: &DyadicDiagonalGate, state: &SparseState) -> Result<SparseState> {
    let mut out = SparseState::new();
    for (u, a) in state.iter() {
        out.insert(u.clone(), a * gate.entry_complex(u)?);
    }
    Ok(out)
}

/// Outcome of a logical-action check.
#[derive(Clone, Debug, Serialize)]
pub struct ActionReport {
    pub passed: bool,
    /// Largest `|out_u - e^{iθ_α} in_u|` seen.
    pub max_residual: f64,
    pub states: u64,
    pub amplitudes_per_state: u64,
    /// First `α` that failed, if any.
    pub first_failure: Option<BitVector>,
}

fn logical_basis(code: &CssCode) -> Result<impl Iterator<Item = BitVector>> {
    let k = code.k();
    if k > MAX_LOGICAL_QUBITS {
        return Err(Error::CapExceeded {
            dim: k,
            cap: MAX_LOGICAL_QUBITS,
        });
    }
    Ok((0..1u64 << k).map(move |i| BitVector::from_index(k, i)))
}

/// Checks `U_Z |ᾱ⟩ = e^{iθ_α} |ᾱ⟩` for every `α`.
pub fn verify_logical_action(
    code: &CssCode,
    gate: &DyadicDiagonalGate,
    claimed: &LogicalDiagonal,
) -> Result<ActionReport> {
    if claimed.k() != code.k() {
        return Err(Error::LengthMismatch {
            expected: code.k(),
            found: claimed.k(),
        });
    }
    let half = (1u64 << (claimed.level() - 1)) as f64;
    let mut report = ActionReport {
        passed: true,
        max_residual: 0.0,
        states: 0,
        amplitudes_per_state: 0,
        first_failure: None,
    };
    for alpha in logical_basis(code)? {
        let phase =
            Complex64::from_polar(1.0, std::f64::consts::PI * claimed.exponent(&alpha) as f64 / half);
        let input = code.encode_basis(&alpha)?;
        let output = apply_diagonal(gate, &input)?;
        let mut worst = 0.0f64;
        for (u, a) in input.iter() {
            worst = worst.max((output.amplitude(u) - phase * a).norm());
        }
        report.states += 1;
        report.amplitudes_per_state = input.len() as u64;
        report.max_residual = report.max_residual.max(worst);
        if worst >= TOLERANCE && report.passed {
            report.passed = false;
            report.first_failure = Some(alpha);
        }
    }
    Ok(report)
}

/// Whether every encoded basis state is mapped to a multiple of itself, i.e.
/// the phase `d_u` is uniform over its support.
pub fn brute_force_preserves(code: &CssCode, gate: &DyadicDiagonalGate) -> Result<bool> {
    for alpha in logical_basis(code)? {
        let input = code.encode_basis(&alpha)?;
        let output = apply_diagonal(gate, &input)?;
        let mut phase: Option<Complex64> = None;
        for (u, a) in input.iter() {
            let r = output.amplitude(u) / a;
            match phase {
                None => phase = Some(r),
                Some(p) if (p - r).norm() >= TOLERANCE => return Ok(false),
                _ => {}
            }
        }
    }
    Ok(true)
}

/// `|Σ_{μ,γ} |A_{μ,γ}|^2 - 1|` as a float. The sum itself is exact, so any
/// nonzero value indicates a bug.
pub fn completeness_check(code: &CssCode, gate: &DyadicDiagonalGate) -> Result<f64> {
    let total = gc_matrix(code, gate)?.total_weight();
    Ok((total.to_complex() - Complex64::new(1.0, 0.0)).norm())
}
