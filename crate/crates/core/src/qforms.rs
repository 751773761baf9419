//! Quadratic forms over `F_2^m` and the simplex-based code family with a
//! transversal `T†`.
//!
//! Points `x ∈ F_2^m` are enumerated lexicographically with `x_1` the most
//! significant bit, so point `x` has index `Σ x_i 2^{m-i}`. Punctured
//! evaluation vectors drop `x = 0`; coordinate `p` holds point `p + 1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::codespace::CssCode;
use crate::diaggate::{DyadicDiagonalGate, LocalFactor};
use crate::error::{Error, Result};
use crate::gencoeff::{induced_logical, preserves, LogicalDiagonal};
use crate::gf2::{BitMatrix, BitVector};

/// Largest `m` for which `2^m` evaluations are attempted.
pub const MAX_M: usize = 16;

fn check_m(m: usize) -> Result<()> {
    if m > MAX_M {
        return Err(Error::CapExceeded { dim: m, cap: MAX_M });
    }
    Ok(())
}

/// Bit of variable `x_i` (0-based `i`) inside a point index.
fn var_bit(m: usize, i: usize) -> u64 {
    1 << (m - 1 - i)
}

/// `Q(x) = x U x^T` with `U` strictly upper triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    m: usize,
    upper: BitMatrix,
    /// Row `i` of `U` as a point mask.
    masks: Vec<u64>,
}

impl QuadraticForm {
    pub fn new(upper: BitMatrix) -> Result<Self> {
        let m = upper.ncols();
        if upper.nrows() != m {
            return Err(Error::InvalidArgument("U must be square".into()));
        }
        if m > 63 {
            return Err(Error::CapExceeded { dim: m, cap: 63 });
        }
        let mut masks = vec![0u64; m];
        for (i, mask) in masks.iter_mut().enumerate() {
            for j in upper.row(i).support() {
                if j <= i {
                    return Err(Error::InvalidArgument(format!(
                        "U has a nonzero entry at ({}, {}) on or below the diagonal",
                        i + 1,
                        j + 1
                    )));
                }
                *mask |= var_bit(m, j);
            }
        }
        Ok(Self { m, upper, masks })
    }

    pub fn zero(m: usize) -> Self {
        Self::new(BitMatrix::from_rows(m, vec![BitVector::zeros(m); m]).expect("square"))
            .expect("zero form")
    }

    /// `Σ x_i x_j` over the given 1-based pairs; repeated pairs cancel.
    pub fn from_monomials(m: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut rows = vec![BitVector::zeros(m); m];
        for &(i, j) in pairs {
            let (a, b) = (i.min(j), i.max(j));
            if a == 0 || b > m || a == b {
                return Err(Error::InvalidArgument(format!(
                    "monomial x{i}x{j} invalid for m = {m}"
                )));
            }
            rows[a - 1].flip(b - 1);
        }
        Self::new(BitMatrix::from_rows(m, rows)?)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn upper(&self) -> &BitMatrix {
        &self.upper
    }

    /// `Q(x)` at point index `x`.
    pub fn eval(&self, x: u64) -> bool {
        let mut acc = 0u32;
        for (i, &mask) in self.masks.iter().enumerate() {
            if x & var_bit(self.m, i) != 0 {
                acc += (x & mask).count_ones();
            }
        }
        acc % 2 == 1
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                found: other.m,
            });
        }
        let rows = self
            .upper
            .rows()
            .iter()
            .zip(other.upper.rows())
            .map(|(a, b)| a.xor(b))
            .collect();
        Self::new(BitMatrix::from_rows(self.m, rows)?)
    }

    /// `R = U + U^T`.
    pub fn symplectic(&self) -> BitMatrix {
        let t = self.upper.transpose();
        let rows = self
            .upper
            .rows()
            .iter()
            .zip(t.rows())
            .map(|(a, b)| a.xor(b))
            .collect();
        BitMatrix::from_rows(self.m, rows).expect("square")
    }

    /// `rank(R) = 2h`.
    pub fn rank_symplectic(&self) -> usize {
        let r = self.symplectic().rank();
        assert!(r.is_multiple_of(2), "alternating matrix with odd rank");
        r
    }

    pub fn h(&self) -> usize {
        self.rank_symplectic() / 2
    }

    /// `[Q(x)]_x`, full length `2^m` or punctured at `x = 0`.
    pub fn evaluation(&self, punctured: bool) -> Result<BitVector> {
        check_m(self.m)?;
        Ok(evaluation(self.m, punctured, |x| self.eval(x)))
    }
}

/// Evaluation vector of `f` over `F_2^m`.
pub fn evaluation(m: usize, punctured: bool, f: impl Fn(u64) -> bool) -> BitVector {
    let start = u64::from(punctured);
    let pts = (start..1u64 << m).filter(|&x| f(x));
    let ones: Vec<usize> = pts.map(|x| (x - start) as usize).collect();
    BitVector::from_support((1usize << m) - start as usize, &ones)
}

/// Character sums `F(a) = Σ_x (-1)^{Q(x) + a·x}` for every `a`.
pub fn character_sums(q: &QuadraticForm) -> Result<Vec<i64>> {
    check_m(q.m)?;
    let mut f: Vec<i64> = (0..1u64 << q.m)
        .map(|x| if q.eval(x) { -1 } else { 1 })
        .collect();
    let mut h = 1;
    while h < f.len() {
        for start in (0..f.len()).step_by(2 * h) {
            for i in start..start + h {
                let (a, b) = (f[i], f[i + h]);
                f[i] = a + b;
                f[i + h] = a - b;
            }
        }
        h *= 2;
    }
    Ok(f)
}

/// Weight distribution of `ε·1 ⊕ L_a ⊕ Q` over all `ε` and `a`, full length.
pub fn coset_weights(q: &QuadraticForm) -> Result<BTreeMap<usize, u64>> {
    let total = 1i64 << q.m;
    let mut dist = BTreeMap::new();
    for f in character_sums(q)? {
        for w in [(total - f) / 2, (total + f) / 2] {
            *dist.entry(w as usize).or_insert(0) += 1;
        }
    }
    Ok(dist)
}

/// The three weights `2^{m-1}`, `2^{m-1} ± 2^{m-h-1}` allowed for rank `2h`.
pub fn allowed_weights(m: usize, h: usize) -> [usize; 3] {
    let mid = 1usize << (m - 1);
    let off = 1usize << (m - h - 1);
    [mid - off, mid, mid + off]
}

/// Result of the punctured congruence check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Congruences {
    /// `2^{m-h-1}`.
    pub modulus: usize,
    /// Every weight in `C(m) + [Q]` is `≡ 0`.
    pub divisible: bool,
    /// Every weight in `1 + C(m) + [Q]` is `≡ modulus - 1`.
    pub shifted: bool,
}

/// Congruences of the punctured cosets `C(m) + [Q]_{x≠0}` and its all-ones
/// shift.
pub fn punctured_congruences(q: &QuadraticForm) -> Result<Congruences> {
    let m = q.m;
    let modulus = 1usize << (m - q.h() - 1);
    let full = 1i64 << m;
    let mut divisible = true;
    let mut shifted = true;
    for f in character_sums(q)? {
        // the dropped point x = 0 evaluates to 0 for every L_a ⊕ Q
        let w = ((full - f) / 2) as usize;
        let w_shift = (1usize << m) - 1 - w;
        divisible &= w.is_multiple_of(modulus);
        shifted &= w_shift % modulus == modulus - 1;
    }
    Ok(Congruences {
        modulus,
        divisible,
        shifted,
    })
}

/// The `[2^m - 1, m]` simplex code; generator row `i` is `[x_{i+1}]_{x≠0}`.
pub fn simplex_code(m: usize) -> Result<LinearCode> {
    if !(2..=MAX_M).contains(&m) {
        return Err(Error::InvalidArgument(format!(
            "simplex code needs 2 <= m <= {MAX_M}, got {m}"
        )));
    }
    let rows = (0..m)
        .map(|i| evaluation(m, true, |x| x & var_bit(m, i) != 0))
        .collect();
    LinearCode::from_rows((1 << m) - 1, rows)
}

/// Choice of monomials `x_i x_j` for the family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub m: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl FamilyDescriptor {
    /// Every pair `(i, j)` with `1 <= i <= m - 4`, `i < j <= m`.
    pub fn all_pairs(m: usize) -> Self {
        let pairs = (1..=m.saturating_sub(4))
            .flat_map(|i| (i + 1..=m).map(move |j| (i, j)))
            .collect();
        Self { m, pairs }
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.m;
        if !(5..=MAX_M).contains(&m) {
            return Err(Error::InvalidArgument(format!(
                "family needs 5 <= m <= {MAX_M}, got {m}"
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &(i, j) in &self.pairs {
            if i < 1 || i > m - 4 || j <= i || j > m {
                return Err(Error::InvalidArgument(format!(
                    "pair ({i}, {j}) outside 1 <= i <= {}, i < j <= {m}",
                    m - 4
                )));
            }
            if !seen.insert((i, j)) {
                return Err(Error::InvalidArgument(format!("pair ({i}, {j}) repeated")));
            }
        }
        Ok(())
    }
}

/// `C2 = C(m)`, `C1 = ⟨C2, 1, [1 ⊕ x_i x_j]⟩`, `y = 0`, X-logicals in that
/// order. Every quadratic form in the span of the selected monomials is
/// checked for rank `<= 2(m - 4)` and every coset for the weight
/// congruences that make `T†` transversal.
pub fn build_family(desc: &FamilyDescriptor) -> Result<CssCode> {
    desc.validate()?;
    let m = desc.m;
    let n = (1usize << m) - 1;
    let c2 = simplex_code(m)?;
    let mut gx = vec![BitVector::ones(n)];
    for &(i, j) in &desc.pairs {
        let (bi, bj) = (var_bit(m, i - 1), var_bit(m, j - 1));
        gx.push(evaluation(m, true, |x| !(x & bi != 0 && x & bj != 0)));
    }
    let c1 = c2.extend(&gx)?;
    let code = CssCode::with_logical_basis(c1, c2, BitVector::zeros(n), gx)?;

    let k = code.k();
    if k > 24 {
        return Err(Error::CapExceeded { dim: k, cap: 24 });
    }
    let monomials: Vec<QuadraticForm> = desc
        .pairs
        .iter()
        .map(|&p| QuadraticForm::from_monomials(m, &[p]))
        .collect::<Result<_>>()?;
    for alpha in 0..1u64 << k {
        // logical 0 is the all-ones row; logical p + 1 carries monomial p
        let mut q = QuadraticForm::zero(m);
        for (p, mono) in monomials.iter().enumerate() {
            if alpha & (1 << (k - 2 - p)) != 0 {
                q = q.add(mono)?;
            }
        }
        if q.rank_symplectic() > 2 * (m - 4) {
            return Err(Error::Validation(format!(
                "quadratic form for logical {alpha:0k$b} has rank {} > {}",
                q.rank_symplectic(),
                2 * (m - 4)
            )));
        }
        let c = punctured_congruences(&q)?;
        let ok = c.modulus % 8 == 0
            && if alpha.count_ones() % 2 == 0 {
                c.divisible
            } else {
                c.shifted
            };
        if !ok {
            return Err(Error::Validation(format!(
                "coset of logical {alpha:0k$b} violates the mod-8 weight congruence"
            )));
        }
    }
    Ok(code)
}

/// Transversal `T†` (`t(u) = 7 w_H(u) mod 8`) preserves the code and induces
/// phase `π/4` on odd-weight `α`, none on even.
pub fn theorem3_verify(code: &CssCode) -> Result<bool> {
    let gate = DyadicDiagonalGate::transversal_t_dag(code.n());
    if !preserves(code, &gate)? {
        return Ok(false);
    }
    Ok(induced_logical(code, &gate)? == LogicalDiagonal::parity_t(code.k()))
}

fn binomial(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `k - 2 C(k,2) + 4 C(k,3) mod 8`, the phase in units of `π/4` picked up by
/// an `α` of weight `k` under the `T`/`CP†`/`CCZ` decomposition.
pub fn lemma3_phase(k: u64) -> u32 {
    let v = k as i128 - 2 * binomial(k, 2) as i128 + 4 * binomial(k, 3) as i128;
    v.rem_euclid(8) as u32
}

/// Gate counts of the decomposition of the parity logical into `T` on every
/// qubit, `CP†` on every pair and `CCZ` on every triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub t: u64,
    pub cp_dag: u64,
    pub ccz: u64,
    /// `lemma3_phase(k)`.
    pub residue: u32,
    /// Whether the composed circuit reproduces the parity table exactly.
    pub matches: bool,
}

/// Builds the circuit on `k` qubits and compares its diagonal against the
/// parity table.
pub fn logical_decomposition(k: usize) -> Result<Decomposition> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if k > 20 {
        return Err(Error::CapExceeded { dim: k, cap: 20 });
    }
    let mut factors = Vec::new();
    for a in 0..k {
        factors.push(LocalFactor::t(a));
        for b in a + 1..k {
            factors.push(LocalFactor::controlled_phase(vec![a, b], 3, 6));
            for c in b + 1..k {
                factors.push(LocalFactor::ccz(a, b, c));
            }
        }
    }
    let circuit = DyadicDiagonalGate::from_factors(k, factors)?.at_level(3)?;
    let target = LogicalDiagonal::parity_t(k);
    let mut matches = true;
    for i in 0..1u64 << k {
        let alpha = BitVector::from_index(k, i);
        matches &= circuit.entry(&alpha)? == target.exponent(&alpha);
    }
    let k64 = k as u64;
    Ok(Decomposition {
        t: k64,
        cp_dag: binomial(k64, 2) as u64,
        ccz: binomial(k64, 3) as u64,
        residue: lemma3_phase(k64),
        matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(QuadraticForm::zero(4).rank_symplectic(), 0);
        let q = QuadraticForm::from_monomials(4, &[(1, 2)]).unwrap();
        assert_eq!(q.rank_symplectic(), 2);
        let q = QuadraticForm::from_monomials(4, &[(1, 2), (3, 4)]).unwrap();
        assert_eq!(q.rank_symplectic(), 4);
    }

    #[test]
    fn monomial_rejects_bad_indices() {
        assert!(QuadraticForm::from_monomials(4, &[(1, 1)]).is_err());
        assert!(QuadraticForm::from_monomials(4, &[(0, 2)]).is_err());
        assert!(QuadraticForm::from_monomials(4, &[(2, 5)]).is_err());
    }

    #[test]
    fn evaluation_ordering() {
        // x1 is the most significant bit: x1 = 1 on the upper half
        let q = QuadraticForm::from_monomials(3, &[(1, 2)]).unwrap();
        assert_eq!(q.evaluation(false).unwrap().to_string(), "00000011");
        assert_eq!(q.evaluation(true).unwrap().to_string(), "0000011");
    }

    #[test]
    fn rm1_weights() {
        let d = coset_weights(&QuadraticForm::zero(4)).unwrap();
        assert_eq!(d, BTreeMap::from([(0, 1), (8, 30), (16, 1)]));
        let d = coset_weights(&QuadraticForm::from_monomials(4, &[(1, 2)]).unwrap()).unwrap();
        assert!(d.keys().all(|w| [4, 8, 12].contains(w)));
    }

    #[test]
    fn simplex_weights() {
        let c = simplex_code(3).unwrap();
        assert_eq!(
            c.weight_distribution(&BitVector::zeros(7)).unwrap(),
            BTreeMap::from([(0, 1), (4, 7)])
        );
        assert_eq!(simplex_code(2).unwrap().k(), 2);
        assert!(simplex_code(1).is_err());
    }

    #[test]
    fn congruences_for_single_monomial() {
        let q = QuadraticForm::from_monomials(5, &[(1, 2)]).unwrap();
        let c = punctured_congruences(&q).unwrap();
        assert_eq!(c.modulus, 8);
        assert!(c.divisible && c.shifted);
        let c = punctured_congruences(&QuadraticForm::zero(5)).unwrap();
        assert_eq!(c.modulus, 16);
        assert!(c.divisible && c.shifted);
    }

    #[test]
    fn family_sizes() {
        let all = FamilyDescriptor::all_pairs(5);
        assert_eq!(all.pairs, vec![(1, 2), (1, 3), (1, 4), (1, 5)]);
        let code = build_family(&all).unwrap();
        assert_eq!((code.n(), code.k()), (31, 5));
        let bare = build_family(&FamilyDescriptor { m: 5, pairs: vec![] }).unwrap();
        assert_eq!(bare.k(), 1);
        assert!(theorem3_verify(&bare).unwrap());
    }

    #[test]
    fn family_rejects_bad_input() {
        assert!(build_family(&FamilyDescriptor { m: 4, pairs: vec![] }).is_err());
        let bad = FamilyDescriptor {
            m: 5,
            pairs: vec![(2, 3)],
        };
        assert!(build_family(&bad).is_err());
        let dup = FamilyDescriptor {
            m: 5,
            pairs: vec![(1, 2), (1, 2)],
        };
        assert!(build_family(&dup).is_err());
    }

    #[test]
    fn lemma3_small() {
        assert_eq!(lemma3_phase(1), 1);
        assert_eq!(lemma3_phase(2), 0);
        assert_eq!(lemma3_phase(12), 0);
        assert_eq!(lemma3_phase(13), 1);
    }

    #[test]
    fn decomposition_counts() {
        let d = logical_decomposition(1).unwrap();
        assert_eq!((d.t, d.cp_dag, d.ccz, d.residue), (1, 0, 0, 1));
        assert!(d.matches);
        let d = logical_decomposition(2).unwrap();
        assert_eq!((d.t, d.cp_dag, d.ccz, d.residue), (2, 1, 0, 0));
        let d = logical_decomposition(5).unwrap();
        assert_eq!((d.t, d.cp_dag, d.ccz), (5, 10, 10));
        assert!(d.matches);
    }
}
