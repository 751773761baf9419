use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::gf2::BitVector;

/// A finitely supported state: computational basis strings to amplitudes.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseState {
    amplitudes: BTreeMap<BitVector, Complex64>,
}

impl SparseState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, basis: BitVector, amp: Complex64) {
        *self.amplitudes.entry(basis).or_insert(Complex64::new(0.0, 0.0)) += amp;
    }

    pub fn amplitude(&self, basis: &BitVector) -> Complex64 {
        self.amplitudes
            .get(basis)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BitVector, &Complex64)> {
        self.amplitudes.iter()
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amplitudes
            .iter()
            .filter_map(|(b, a)| other.amplitudes.get(b).map(|c| a.conj() * c))
            .sum()
    }

    pub fn map_amplitudes(&self, mut f: impl FnMut(&BitVector, Complex64) -> Complex64) -> Self {
        Self {
            amplitudes: self
                .amplitudes
                .iter()
                .map(|(b, &a)| (b.clone(), f(b, a)))
                .collect(),
        }
    }
}

impl FromIterator<(BitVector, Complex64)> for SparseState {
    fn from_iter<I: IntoIterator<Item = (BitVector, Complex64)>>(iter: I) -> Self {
        let mut s = Self::new();
        for (b, a) in iter {
            s.insert(b, a);
        }
        s
    }
}
