//! Binary linear codes in canonical (reduced row-echelon) form.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gf2::{reduce, BitMatrix, BitVector};

/// Default bound on the dimension of codes that may be enumerated.
pub const DEFAULT_ENUM_CAP: usize = 24;

/// An `[n, k]` binary linear code.
///
/// The generator matrix is kept in reduced row-echelon form, so two codes are
/// equal exactly when they span the same set. The parity-check matrix is
/// computed on first use.
#[derive(Clone, Debug)]
pub struct LinearCode {
    n: usize,
    gen: BitMatrix,
    pivots: Vec<usize>,
    check: OnceLock<BitMatrix>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.gen == other.gen
    }
}

impl Eq for LinearCode {}

impl LinearCode {
    /// Code spanned by the rows of `m` (rows may be dependent).
    pub fn from_generators(m: &BitMatrix) -> Self {
        let r = m.rref();
        let mut gen = r.matrix;
        let rows: Vec<BitVector> = gen.rows()[..r.rank].to_vec();
        gen = BitMatrix::from_rows(m.ncols(), rows).expect("rows keep their length");
        Self {
            n: m.ncols(),
            gen,
            pivots: r.pivots,
            check: OnceLock::new(),
        }
    }

    pub fn from_rows(n: usize, rows: Vec<BitVector>) -> Result<Self> {
        Ok(Self::from_generators(&BitMatrix::from_rows(n, rows)?))
    }

    pub fn parse<S: AsRef<str>>(n: usize, rows: &[S]) -> Result<Self> {
        Ok(Self::from_generators(&BitMatrix::parse_rows(n, rows)?))
    }

    pub fn zero(n: usize) -> Self {
        Self::from_generators(&BitMatrix::empty(n))
    }

    pub fn full(n: usize) -> Self {
        Self::from_generators(&BitMatrix::identity(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.gen.nrows()
    }

    /// Generator matrix in reduced row-echelon form.
    pub fn gen(&self) -> &BitMatrix {
        &self.gen
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Parity-check matrix; its rows span the dual code.
    pub fn check(&self) -> &BitMatrix {
        self.check.get_or_init(|| self.dual_basis())
    }

    fn dual_basis(&self) -> BitMatrix {
        let mut is_pivot = vec![false; self.n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut rows = Vec::with_capacity(self.n - self.k());
        for free in (0..self.n).filter(|&c| !is_pivot[c]) {
            let mut v = BitVector::unit(self.n, free);
            for (row, &p) in self.gen.rows().iter().zip(&self.pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            rows.push(v);
        }
        BitMatrix::from_rows(self.n, rows).expect("dual rows have length n")
    }

    pub fn dual(&self) -> Self {
        Self::from_generators(self.check())
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        let mut r = v.clone();
        reduce(&mut r, self.gen.rows(), &self.pivots);
        Ok(r.is_zero())
    }

    /// Whether every codeword of `self` lies in `other`.
    pub fn is_subcode_of(&self, other: &Self) -> bool {
        self.n == other.n
            && self
                .gen
                .rows()
                .iter()
                .all(|r| other.contains(r).unwrap_or(false))
    }

    /// Canonical representative of `v + self`: zeros in every pivot column.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut r = v.clone();
        reduce(&mut r, self.gen.rows(), &self.pivots);
        r
    }

    /// Span of `self` together with extra vectors.
    pub fn extend(&self, extra: &[BitVector]) -> Result<Self> {
        let mut rows = self.gen.rows().to_vec();
        rows.extend(extra.iter().cloned());
        Self::from_rows(self.n, rows)
    }

    /// Codewords in Gray-code order starting from zero.
    pub fn enumerate(&self) -> Result<Codewords<'_>> {
        self.enumerate_with_cap(DEFAULT_ENUM_CAP)
    }

    pub fn enumerate_with_cap(&self, cap: usize) -> Result<Codewords<'_>> {
        check_cap(self.k(), cap)?;
        Ok(Codewords {
            rows: self.gen.rows(),
            current: BitVector::zeros(self.n),
            step: 0,
            total: 1u64 << self.k(),
        })
    }

    /// Visits `(a, u ⊕ shift)` for every codeword `u = a · gen`, in Gray-code
    /// order. `a` is packed with generator row `i` at bit `i`.
    pub fn for_each_shifted(
        &self,
        shift: &BitVector,
        cap: usize,
        mut f: impl FnMut(u64, &BitVector),
    ) -> Result<()> {
        check_cap(self.k(), cap)?;
        let rows = self.gen.rows();
        let mut cur = shift.clone();
        let mut a = 0u64;
        f(a, &cur);
        for step in 1..(1u64 << rows.len()) {
            let bit = step.trailing_zeros() as usize;
            cur.xor_assign(&rows[bit]);
            a ^= 1 << bit;
            f(a, &cur);
        }
        Ok(())
    }

    /// Distribution of `w_H(u ⊕ shift)` over all codewords `u`.
    pub fn weight_distribution(&self, shift: &BitVector) -> Result<BTreeMap<usize, u64>> {
        self.weight_distribution_with_cap(shift, DEFAULT_ENUM_CAP)
    }

    pub fn weight_distribution_with_cap(
        &self,
        shift: &BitVector,
        cap: usize,
    ) -> Result<BTreeMap<usize, u64>> {
        if shift.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: shift.len(),
            });
        }
        let mut dist = BTreeMap::new();
        self.for_each_shifted(shift, cap, |_, w| {
            *dist.entry(w.weight()).or_insert(0) += 1;
        })?;
        Ok(dist)
    }
}

pub(crate) fn check_cap(dim: usize, cap: usize) -> Result<()> {
    if dim > cap || dim >= 64 {
        Err(Error::CapExceeded { dim, cap })
    } else {
        Ok(())
    }
}

/// Iterator over the codewords of a [`LinearCode`].
pub struct Codewords<'a> {
    rows: &'a [BitVector],
    current: BitVector,
    step: u64,
    total: u64,
}

impl Iterator for Codewords<'_> {
    type Item = BitVector;

    fn next(&mut self) -> Option<BitVector> {
        if self.step >= self.total {
            return None;
        }
        if self.step > 0 {
            let bit = self.step.trailing_zeros() as usize;
            self.current.xor_assign(&self.rows[bit]);
        }
        self.step += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.step) as usize;
        (left, Some(left))
    }
}

/// Basis of coset representatives of `sub` in `sup`: each row of `sup`'s
/// canonical generator matrix reduced modulo `sub`, keeping those independent
/// of `sub` and of each other.
pub fn coset_basis(sub: &LinearCode, sup: &LinearCode) -> Result<Vec<BitVector>> {
    if !sub.is_subcode_of(sup) {
        return Err(Error::NotContained(
            "subcode is not contained in the supercode".into(),
        ));
    }
    let mut acc = sub.clone();
    let mut basis = Vec::new();
    for row in sup.gen().rows() {
        let r = sub.reduce(row);
        if !acc.contains(&r)? {
            acc = acc.extend(std::slice::from_ref(&r))?;
            basis.push(r);
        }
    }
    Ok(basis)
}

/// One representative per coset of `sub` in `sup`, the first being zero.
///
/// Representative `i` is the combination of [`coset_basis`] rows selected by
/// the bits of `i`, most significant bit first.
pub fn coset_reps(sub: &LinearCode, sup: &LinearCode) -> Result<Vec<BitVector>> {
    let basis = coset_basis(sub, sup)?;
    check_cap(basis.len(), DEFAULT_ENUM_CAP)?;
    let m = BitMatrix::from_rows(sup.n(), basis)?;
    let k = m.nrows();
    Ok((0..1u64 << k)
        .map(|i| m.combine(&BitVector::from_index(k, i)))
        .collect())
}

/// Calls `visit` with the support of every vector `v` of weight `1..=w_max`
/// (by increasing weight, lexicographic supports) such that `v ∈ code` and
/// `v ∉ exclude`. Stops early when `visit` returns `false`.
pub fn bounded_search(
    code: &LinearCode,
    exclude: &LinearCode,
    w_max: usize,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<()> {
    if !exclude.is_subcode_of(code) {
        return Err(Error::NotContained(
            "excluded code is not contained in the searched code".into(),
        ));
    }
    let n = code.n();
    let w_max = w_max.min(n);
    // Column syndromes against both parity-check matrices.
    let hc = code.check().transpose();
    let he = exclude.check().transpose();
    let cols: Vec<(BitVector, BitVector)> = (0..n)
        .map(|j| (hc.row(j).clone(), he.row(j).clone()))
        .collect();
    let rc = code.check().nrows();
    let re = exclude.check().nrows();

    for w in 1..=w_max {
        let mut stack: Vec<usize> = Vec::with_capacity(w);
        let mut partial: Vec<(BitVector, BitVector)> =
            vec![(BitVector::zeros(rc), BitVector::zeros(re))];
        let mut next_start = 0usize;
        loop {
            if stack.len() == w {
                let (sc, se) = partial.last().expect("non-empty");
                if sc.is_zero() && !se.is_zero() && !visit(&stack) {
                    return Ok(());
                }
                // advance
                let last = stack.pop().expect("non-empty");
                partial.pop();
                next_start = last + 1;
                continue;
            }
            let remaining = w - stack.len();
            if next_start + remaining > n {
                match stack.pop() {
                    Some(last) => {
                        partial.pop();
                        next_start = last + 1;
                        continue;
                    }
                    None => break,
                }
            }
            let j = next_start;
            let (sc, se) = partial.last().expect("non-empty");
            let next = (sc.xor(&cols[j].0), se.xor(&cols[j].1));
            stack.push(j);
            partial.push(next);
            next_start = j + 1;
        }
    }
    Ok(())
}

/// Minimum weight over `code \ exclude`, searched up to `w_max`.
pub fn min_weight_bounded(
    code: &LinearCode,
    exclude: &LinearCode,
    w_max: usize,
) -> Result<Option<usize>> {
    let mut found = None;
    bounded_search(code, exclude, w_max, |s| {
        found = Some(s.len());
        false
    })?;
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming7() -> LinearCode {
        LinearCode::parse(7, &["1000110", "0100101", "0010011", "0001111"]).unwrap()
    }

    #[test]
    fn dual_of_full_space_is_zero() {
        assert_eq!(LinearCode::full(5).dual(), LinearCode::zero(5));
        assert_eq!(LinearCode::zero(5).dual(), LinearCode::full(5));
    }

    #[test]
    fn dual_of_repetition_is_even_weight() {
        let rep = LinearCode::parse(6, &["111111"]).unwrap();
        let d = rep.dual();
        assert_eq!(d.k(), 5);
        // brute force: every vector orthogonal to 1 has even weight
        for i in 0..64u64 {
            let v = BitVector::from_index(6, i);
            assert_eq!(d.contains(&v).unwrap(), v.weight().is_multiple_of(2));
        }
    }

    #[test]
    fn contains_checks_length() {
        let h = hamming7();
        assert!(h.contains(&BitVector::zeros(7)).unwrap());
        assert!(!h.contains(&BitVector::unit(7, 3)).unwrap());
        assert!(h.contains(&BitVector::zeros(6)).is_err());
    }

    #[test]
    fn enumerate_counts_and_zero_first() {
        let c = LinearCode::parse(5, &["11010", "01101"]).unwrap();
        let words: Vec<_> = c.enumerate().unwrap().collect();
        assert_eq!(words.len(), 4);
        assert!(words[0].is_zero());
        let z: Vec<_> = LinearCode::zero(4).enumerate().unwrap().collect();
        assert_eq!(z, vec![BitVector::zeros(4)]);
        assert!(matches!(
            LinearCode::full(30).enumerate_with_cap(24),
            Err(Error::CapExceeded { dim: 30, cap: 24 })
        ));
    }

    #[test]
    fn coset_reps_even_weight_in_full() {
        let even = LinearCode::parse(4, &["1100", "0110", "0011"]).unwrap();
        let reps = coset_reps(&even, &LinearCode::full(4)).unwrap();
        assert_eq!(reps.len(), 2);
        assert!(reps[0].is_zero());
        assert_eq!(reps[1].weight() % 2, 1);
        let same = coset_reps(&even, &even).unwrap();
        assert_eq!(same, vec![BitVector::zeros(4)]);
        assert!(coset_reps(&LinearCode::full(4), &even).is_err());
    }

    #[test]
    fn min_weight_of_hamming() {
        let h = hamming7();
        assert_eq!(min_weight_bounded(&h, &LinearCode::zero(7), 7).unwrap(), Some(3));
        assert_eq!(min_weight_bounded(&h, &h, 7).unwrap(), None);
        assert_eq!(min_weight_bounded(&h, &LinearCode::zero(7), 2).unwrap(), None);
    }

    #[test]
    fn weight_distribution_of_shifted_zero_code() {
        let d = LinearCode::zero(6)
            .weight_distribution(&"101100".parse().unwrap())
            .unwrap();
        assert_eq!(d, BTreeMap::from([(3, 1)]));
    }
}
