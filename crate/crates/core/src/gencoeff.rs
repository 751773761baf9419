//! Generator coefficients of a diagonal gate on a CSS code.
//!
//! For an X-syndrome `μ` and a Z-logical `γ`,
//!
//! ```text
//! A_{μ,γ} = |C1|^{-1} Σ_{u ∈ C1} (-1)^{(μ ⊕ γ)·u} d_{u ⊕ y}
//! ```
//!
//! The gate preserves the code iff `d_{u⊕y}` is constant on every coset of
//! `C2` in `C1`, and then the induced logical gate has entry
//! `d_{αG_{C1/C2} ⊕ y}` on `|α⟩`. Both facts only need the `2^{k1}` entries on
//! `C1 + y`, so nothing here touches the full `2^n` diagonal. Arithmetic is
//! exact throughout.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::code::{check_cap, coset_reps, LinearCode, DEFAULT_ENUM_CAP};
use crate::codespace::CssCode;
use crate::cyclotomic::CyclotomicNumber;
use crate::diaggate::{lift_exponent, DyadicDiagonalGate};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::symbolic::{LinearForm, SymbolicPhaseGate};

/// Diagonal logical gate `Σ_α ζ^{t_α} |α⟩⟨α|` at level `L`.
///
/// Exponents are indexed by `α` read as a binary number with `α_1` most
/// significant.
#[derive(Clone, Debug)]
pub struct LogicalDiagonal {
    k: usize,
    level: u32,
    exponents: Vec<u32>,
}

impl LogicalDiagonal {
    pub fn new(k: usize, level: u32, exponents: Vec<u32>) -> Result<Self> {
        if level == 0 || level > 30 {
            return Err(Error::InvalidArgument(format!("level {level} out of range")));
        }
        if k >= 32 || exponents.len() != 1usize << k {
            return Err(Error::InvalidArgument(format!(
                "a table for k = {k} needs 2^k entries, got {}",
                exponents.len()
            )));
        }
        let m = 1u32 << level;
        Ok(Self {
            k,
            level,
            exponents: exponents.into_iter().map(|t| t % m).collect(),
        })
    }

    pub fn identity(k: usize) -> Self {
        Self::new(k, 1, vec![0; 1 << k]).expect("valid identity")
    }

    /// Table from `α ↦ t_α`; unlisted `α` get exponent 0.
    pub fn from_map(k: usize, level: u32, map: &BTreeMap<BitVector, u32>) -> Result<Self> {
        let mut ex = vec![0; 1usize << k];
        for (a, &t) in map {
            if a.len() != k {
                return Err(Error::LengthMismatch {
                    expected: k,
                    found: a.len(),
                });
            }
            ex[a.to_index() as usize] = t;
        }
        Self::new(k, level, ex)
    }

    /// Level-3 table with `t_α = 1` for odd `w_H(α)` and `0` otherwise,
    /// i.e. `exp(-iπ/8 Z⊗…⊗Z)` up to global phase.
    pub fn parity_t(k: usize) -> Self {
        let ex = (0..1u64 << k).map(|a| a.count_ones() % 2).collect();
        Self::new(k, 3, ex).expect("valid table")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn exponent(&self, alpha: &BitVector) -> u32 {
        self.exponents[alpha.to_index() as usize]
    }

    pub fn to_map(&self) -> BTreeMap<BitVector, u32> {
        self.exponents
            .iter()
            .enumerate()
            .map(|(i, &t)| (BitVector::from_index(self.k, i as u64), t))
            .collect()
    }

    pub fn at_level(&self, level: u32) -> Self {
        assert!(level >= self.level);
        Self {
            k: self.k,
            level,
            exponents: self
                .exponents
                .iter()
                .map(|&t| lift_exponent(t, self.level, level))
                .collect(),
        }
    }

    /// True when all entries are equal, i.e. the identity up to global phase.
    pub fn is_constant(&self) -> bool {
        self.exponents.windows(2).all(|w| w[0] == w[1])
    }

    /// The table as a gate on `k` qubits.
    pub fn to_gate(&self) -> Result<DyadicDiagonalGate> {
        DyadicDiagonalGate::from_table(
            self.k,
            self.level,
            self.to_map().into_iter().filter(|(_, t)| *t != 0).collect(),
        )
    }
}

impl PartialEq for LogicalDiagonal {
    fn eq(&self, other: &Self) -> bool {
        if self.k != other.k {
            return false;
        }
        let l = self.level.max(other.level);
        self.at_level(l).exponents == other.at_level(l).exponents
    }
}

impl Eq for LogicalDiagonal {}

impl Serialize for LogicalDiagonal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LogicalDiagonal", 3)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("L", &self.level)?;
        st.serialize_field("table", &self.to_map())?;
        st.end()
    }
}

/// Visits every `u ∈ C1` as `(a, label, t(u ⊕ y))`, where `a` packs the
/// coefficients over the C1 generators (row `i` at bit `i`) and `label` is
/// the index of `α(u) = G_{C2^⊥/C1^⊥} u^T`.
fn scan_c1(
    code: &CssCode,
    gate: &DyadicDiagonalGate,
    cap: usize,
    mut f: impl FnMut(u64, usize, u32) -> Result<()>,
) -> Result<()> {
    if gate.n() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            found: gate.n(),
        });
    }
    let rows = code.c1().gen().rows();
    check_cap(rows.len(), cap)?;
    let labels: Vec<usize> = rows
        .iter()
        .map(|r| code.logical_label(r).to_index() as usize)
        .collect();
    let mut cur = code.y().clone();
    let mut a = 0u64;
    let mut label = 0usize;
    f(a, label, gate.entry(&cur)?)?;
    for step in 1..(1u64 << rows.len()) {
        let bit = step.trailing_zeros() as usize;
        cur.xor_assign(&rows[bit]);
        a ^= 1 << bit;
        label ^= labels[bit];
        f(a, label, gate.entry(&cur)?)?;
    }
    Ok(())
}

/// Per-coset exponent if `d_{u⊕y}` is constant on each coset of C2 in C1.
fn constant_coset_exponents(
    code: &CssCode,
    gate: &DyadicDiagonalGate,
    cap: usize,
) -> Result<Option<Vec<u32>>> {
    let mut seen: Vec<Option<u32>> = vec![None; 1usize << code.k()];
    let mut ok = true;
    scan_c1(code, gate, cap, |_, label, t| {
        match seen[label] {
            None => seen[label] = Some(t),
            Some(prev) if prev != t => ok = false,
            _ => {}
        }
        Ok(())
    })?;
    Ok(ok.then(|| seen.into_iter().map(|t| t.expect("every coset visited")).collect()))
}

/// Exact `Σ_t c_t ζ^t / 2^den` from exponent counts `c_t`, `t ∈ Z_{2^L}`.
fn from_counts(level: u32, counts: &[i64], den: u32) -> CyclotomicNumber {
    let half = counts.len() / 2;
    let num = (0..half).map(|j| counts[j] - counts[j + half]).collect();
    CyclotomicNumber::from_parts(level, num, den)
}

/// `A_{μ,γ}` by direct summation over `C1`.
pub fn generator_coeff(
    code: &CssCode,
    gate: &DyadicDiagonalGate,
    mu: &BitVector,
    gamma: &BitVector,
) -> Result<CyclotomicNumber> {
    generator_coeff_with_cap(code, gate, mu, gamma, DEFAULT_ENUM_CAP)
}

pub fn generator_coeff_with_cap(
    code: &CssCode,
    gate: &DyadicDiagonalGate,
    mu: &BitVector,
    gamma: &BitVector,
    cap: usize,
) -> Result<CyclotomicNumber> {
    for v in [mu, gamma] {
        if v.len() != code.n() {
            return Err(Error::LengthMismatch {
                expected: code.n(),
                found: v.len(),
            });
        }
    }
    let probe = mu.xor(gamma);
    let signs = code.c1().gen().mul_vec(&probe);
    let sign_mask: u64 = signs.support().fold(0, |m, i| m | (1 << i));
    let mut counts = vec![0i64; 1usize << gate.level()];
    scan_c1(code, gate, cap, |a, _, t| {
        if (a & sign_mask).count_ones().is_multiple_of(2) {
            counts[t as usize] += 1;
        } else {
            counts[t as usize] -= 1;
        }
        Ok(())
    })?;
    Ok(from_counts(gate.level(), &counts, code.c1().k() as u32))
}

/// Whether the gate preserves the codespace: `d_{u⊕y}` constant on every
/// coset `C2 + w`, `w ∈ C1/C2`.
pub fn preserves(code: &CssCode, gate: &DyadicDiagonalGate) -> Result<bool> {
    Ok(constant_coset_exponents(code, gate, DEFAULT_ENUM_CAP)?.is_some())
}

/// Row `μ = 0` of the generator coefficient matrix, indexed by `β` with
/// column `γ = β G_{C2^⊥/C1^⊥}`.
pub fn zero_syndrome_row(code: &CssCode, gate: &DyadicDiagonalGate) -> Result<Vec<CyclotomicNumber>> {
    let k = code.k();
    let l = gate.level();
    let width = 1usize << l;
    // counts[label][t]
    let mut counts = vec![0i64; (1usize << k) * width];
    scan_c1(code, gate, DEFAULT_ENUM_CAP, |_, label, t| {
        counts[label * width + t as usize] += 1;
        Ok(())
    })?;
    walsh_blocks(&mut counts, width);
    Ok(counts
        .chunks(width)
        .map(|c| from_counts(l, c, code.c1().k() as u32))
        .collect())
}

/// Unnormalised Walsh–Hadamard transform over blocks of `width` integers.
fn walsh_blocks(data: &mut [i64], width: usize) {
    let len = data.len() / width;
    let mut h = 1;
    while h < len {
        for start in (0..len).step_by(2 * h) {
            for i in start..start + h {
                for t in 0..width {
                    let x = data[i * width + t];
                    let y = data[(i + h) * width + t];
                    data[i * width + t] = x + y;
                    data[(i + h) * width + t] = x - y;
                }
            }
        }
        h *= 2;
    }
}

/// Norm-sum preservation test: `Σ_γ |A_{0,γ}|^2 = 1`, evaluated exactly.
pub fn norm_test(code: &CssCode, gate: &DyadicDiagonalGate) -> Result<bool> {
    let row = zero_syndrome_row(code, gate)?;
    let total: CyclotomicNumber = row.iter().map(CyclotomicNumber::norm_sqr).sum();
    Ok(total.is_one())
}

/// Induced diagonal logical gate, `t_α = t(αG_{C1/C2} ⊕ y)`.
pub fn induced_logical(code: &CssCode, gate: &DyadicDiagonalGate) -> Result<LogicalDiagonal> {
    if !preserves(code, gate)? {
        return Err(Error::NotPreserved);
    }
    let k = code.k();
    let exps = (0..1u64 << k)
        .map(|i| {
            let alpha = BitVector::from_index(k, i);
            gate.entry(&code.x_logical(&alpha).xor(code.y()))
        })
        .collect::<Result<Vec<u32>>>()?;
    LogicalDiagonal::new(k, gate.level(), exps)
}

/// Logical identity (up to global phase): `d_{u⊕y}` equal for all `u ∈ C1`.
pub fn is_logical_identity(code: &CssCode, gate: &DyadicDiagonalGate) -> Result<bool> {
    let mut first = None;
    let mut same = true;
    scan_c1(code, gate, DEFAULT_ENUM_CAP, |_, _, t| {
        match first {
            None => first = Some(t),
            Some(f) if f != t => same = false,
            _ => {}
        }
        Ok(())
    })?;
    Ok(same)
}

/// Symbolic version: phases on `C1 + y` equal as linear forms after the
/// gate's constraints are substituted.
pub fn is_logical_identity_symbolic(code: &CssCode, gate: &SymbolicPhaseGate) -> Result<bool> {
    if gate.n() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            found: gate.n(),
        });
    }
    let mut first: Option<LinearForm> = None;
    let mut same = true;
    let mut err = None;
    code.c1().for_each_shifted(code.y(), DEFAULT_ENUM_CAP, |_, u| {
        if !same || err.is_some() {
            return;
        }
        match gate.entry(u) {
            Ok(f) => match &first {
                None => first = Some(f),
                Some(g) if *g != f => same = false,
                _ => {}
            },
            Err(e) => err = Some(e),
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(same),
    }
}

/// Oblivious to homogeneous coherent noise: all weights in `C1 + y` equal.
pub fn oblivious_coherent(code: &CssCode) -> Result<bool> {
    Ok(code.c1().weight_distribution(code.y())?.len() == 1)
}

/// A required phase on a coset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhaseConstraint {
    /// Logical label of the coset; `None` when the constraint covers all of
    /// `C1 + y`.
    pub alpha: Option<BitVector>,
    /// Coset offset: entries on `C2 + offset` (or `C1 + y` when `alpha` is
    /// `None`) must carry the exponent.
    pub offset: BitVector,
    pub exponent: u32,
    #[serde(rename = "L")]
    pub level: u32,
}

/// Constraints on physical entries forced by a target logical gate: entry
/// `d_{u⊕y}` must equal the target's `α(u)` entry. Entries outside `C1 + y`
/// stay free. A constant target yields a single constraint on all of
/// `C1 + y`.
pub fn physical_constraints_for_target(
    code: &CssCode,
    target: &LogicalDiagonal,
) -> Result<Vec<PhaseConstraint>> {
    if target.k() != code.k() {
        return Err(Error::LengthMismatch {
            expected: code.k(),
            found: target.k(),
        });
    }
    if target.is_constant() {
        return Ok(vec![PhaseConstraint {
            alpha: None,
            offset: code.y().clone(),
            exponent: target.exponents()[0],
            level: target.level(),
        }]);
    }
    Ok((0..1u64 << code.k())
        .map(|i| {
            let alpha = BitVector::from_index(code.k(), i);
            PhaseConstraint {
                offset: code.x_logical(&alpha).xor(code.y()),
                exponent: target.exponent(&alpha),
                alpha: Some(alpha),
                level: target.level(),
            }
        })
        .collect())
}

/// A gate meeting `constraints`, with every unconstrained entry set to `1`.
pub fn gate_from_constraints(
    code: &CssCode,
    constraints: &[PhaseConstraint],
) -> Result<DyadicDiagonalGate> {
    let level = constraints.iter().map(|c| c.level).max().unwrap_or(1);
    let mut entries = BTreeMap::new();
    for c in constraints {
        let t = lift_exponent(c.exponent, c.level, level);
        let domain = match c.alpha {
            Some(_) => code.c2(),
            None => code.c1(),
        };
        domain.for_each_shifted(&c.offset, DEFAULT_ENUM_CAP, |_, u| {
            if t != 0 {
                entries.insert(u.clone(), t);
            }
        })?;
    }
    DyadicDiagonalGate::from_table(code.n(), level, entries)
}

/// `A_{μ,γ}` for all syndromes `μ ∈ F_2^n/C2^⊥` and Z-logicals
/// `γ ∈ C2^⊥/C1^⊥`.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorCoefficientMatrix {
    pub syndromes: Vec<BitVector>,
    pub logicals: Vec<BitVector>,
    pub entries: Vec<Vec<CyclotomicNumber>>,
}

impl GeneratorCoefficientMatrix {
    /// `Σ_{μ,γ} |A_{μ,γ}|^2`.
    pub fn total_weight(&self) -> CyclotomicNumber {
        self.entries
            .iter()
            .flatten()
            .map(CyclotomicNumber::norm_sqr)
            .sum()
    }

    pub fn row(&self, mu: usize) -> &[CyclotomicNumber] {
        &self.entries[mu]
    }
}

/// The full generator coefficient matrix via one Walsh–Hadamard transform
/// over the coordinates of `C1`.
pub fn gc_matrix(code: &CssCode, gate: &DyadicDiagonalGate) -> Result<GeneratorCoefficientMatrix> {
    let n = code.n();
    let k1 = code.c1().k();
    check_cap(k1, DEFAULT_ENUM_CAP)?;
    let l = gate.level();
    let width = 1usize << l;
    let mut data = vec![0i64; (1usize << k1) * width];
    scan_c1(code, gate, DEFAULT_ENUM_CAP, |a, _, t| {
        data[a as usize * width + t as usize] += 1;
        Ok(())
    })?;
    walsh_blocks(&mut data, width);

    let c2_perp = code.c2().dual();
    let syndromes = coset_reps(&c2_perp, &LinearCode::full(n))?;
    let logicals: Vec<BitVector> = (0..1u64 << code.k())
        .map(|i| code.gz().combine(&BitVector::from_index(code.k(), i)))
        .collect();
    let g1 = code.c1().gen();
    let entries = syndromes
        .iter()
        .map(|mu| {
            logicals
                .iter()
                .map(|gamma| {
                    let s = g1.mul_vec(&mu.xor(gamma));
                    let idx: usize = s.support().fold(0, |m, i| m | (1 << i));
                    from_counts(l, &data[idx * width..(idx + 1) * width], k1 as u32)
                })
                .collect()
        })
        .collect();
    Ok(GeneratorCoefficientMatrix {
        syndromes,
        logicals,
        entries,
    })
}
