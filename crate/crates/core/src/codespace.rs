//! CSS codes, encoded basis states, and the stabilizer standard form used to
//! reduce general stabilizer codes to a tower of classical codes.

use num_complex::Complex64;
use serde::Serialize;

use crate::code::{bounded_search, check_cap, coset_basis, LinearCode, DEFAULT_ENUM_CAP};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::state::SparseState;

/// `CSS(X, C2; Z, C1^⊥, y)` with X-signs fixed to `+1`.
///
/// `gx` holds one X-logical per row (coset representatives of `C1/C2`) and
/// `gz` the matching Z-logicals in `C2^⊥`, normalised so `gx · gz^T = I_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    c1: LinearCode,
    c2: LinearCode,
    y: BitVector,
    gx: BitMatrix,
    gz: BitMatrix,
}

impl CssCode {
    /// Builds the code, choosing the canonical X-logical basis.
    pub fn new(c1: LinearCode, c2: LinearCode, y: BitVector) -> Result<Self> {
        if !c2.is_subcode_of(&c1) {
            return Err(Error::NotContained("C2 is not a subcode of C1".into()));
        }
        let gx = coset_basis(&c2, &c1)?;
        Self::with_logical_basis(c1, c2, y, gx)
    }

    /// Builds the code with caller-chosen X-logicals. Each row must lie in
    /// `C1` and the rows must be independent modulo `C2`, with exactly
    /// `k1 - k2` of them.
    pub fn with_logical_basis(
        c1: LinearCode,
        c2: LinearCode,
        y: BitVector,
        gx_rows: Vec<BitVector>,
    ) -> Result<Self> {
        let n = c1.n();
        if c2.n() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: c2.n(),
            });
        }
        if y.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: y.len(),
            });
        }
        if !c2.is_subcode_of(&c1) {
            return Err(Error::NotContained("C2 is not a subcode of C1".into()));
        }
        let k = c1.k() - c2.k();
        if gx_rows.len() != k {
            return Err(Error::Validation(format!(
                "expected {k} X-logicals, got {}",
                gx_rows.len()
            )));
        }
        for r in &gx_rows {
            if !c1.contains(r)? {
                return Err(Error::NotContained(format!("X-logical {r} is not in C1")));
            }
        }
        if c2.extend(&gx_rows)?.k() != c1.k() {
            return Err(Error::Validation(
                "X-logicals are dependent modulo C2".into(),
            ));
        }
        let gx = BitMatrix::from_rows(n, gx_rows)?;
        let gz = solve_z_logicals(&c1, &c2, &gx)?;
        let code = Self { c1, c2, y, gx, gz };
        code.validate()?;
        Ok(code)
    }

    /// Code defined by the tower of a stabilizer standard form, `y = 0`.
    pub fn from_standard_form(s: &StabilizerStandardForm) -> Result<Self> {
        let (sub, sup) = tower_from_standard_form(s)?;
        let n = sup.n();
        Self::new(sup, sub, BitVector::zeros(n))
    }

    pub fn n(&self) -> usize {
        self.c1.n()
    }

    pub fn k(&self) -> usize {
        self.gx.nrows()
    }

    pub fn c1(&self) -> &LinearCode {
        &self.c1
    }

    pub fn c2(&self) -> &LinearCode {
        &self.c2
    }

    pub fn y(&self) -> &BitVector {
        &self.y
    }

    pub fn gx(&self) -> &BitMatrix {
        &self.gx
    }

    pub fn gz(&self) -> &BitMatrix {
        &self.gz
    }

    /// Same code with a different character vector.
    pub fn with_y(&self, y: BitVector) -> Result<Self> {
        if y.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                found: y.len(),
            });
        }
        Ok(Self { y, ..self.clone() })
    }

    /// `α · G_{C1/C2}` for `α ∈ F_2^k`.
    pub fn x_logical(&self, alpha: &BitVector) -> BitVector {
        self.gx.combine(alpha)
    }

    /// `G_{C2^⊥/C1^⊥} · u^T`, the logical label of a word of `C1`.
    pub fn logical_label(&self, u: &BitVector) -> BitVector {
        self.gz.mul_vec(u)
    }

    pub fn validate(&self) -> Result<()> {
        let prod = self.gx.mul_transpose(&self.gz);
        if prod != BitMatrix::identity(self.k()) {
            return Err(Error::Validation("gx · gz^T is not the identity".into()));
        }
        for g in self.gz.rows() {
            if self.c2.gen().mul_vec(g).weight() != 0 {
                return Err(Error::Validation(format!(
                    "Z-logical {g} is not orthogonal to C2"
                )));
            }
        }
        for w in self.gx.rows() {
            if !self.c1.contains(w)? {
                return Err(Error::Validation(format!("X-logical {w} not in C1")));
            }
        }
        Ok(())
    }

    /// Encoded basis state `|ᾱ⟩`: uniform superposition over `αG ⊕ C2 ⊕ y`.
    pub fn encode_basis(&self, alpha: &BitVector) -> Result<SparseState> {
        self.encode_basis_with_cap(alpha, DEFAULT_ENUM_CAP)
    }

    pub fn encode_basis_with_cap(&self, alpha: &BitVector, cap: usize) -> Result<SparseState> {
        if alpha.len() != self.k() {
            return Err(Error::LengthMismatch {
                expected: self.k(),
                found: alpha.len(),
            });
        }
        check_cap(self.c2.k(), cap)?;
        let amp = Complex64::new((0.5f64).powf(self.c2.k() as f64 / 2.0), 0.0);
        let offset = self.x_logical(alpha).xor(&self.y);
        let mut state = SparseState::new();
        self.c2.for_each_shifted(&offset, cap, |_, v| {
            state.insert(v.clone(), amp);
        })?;
        Ok(state)
    }

    /// Whether a gate supported on `support` (0-based coordinates) is
    /// fault-tolerant in the puncture sense: deleting those columns from the
    /// C2 generator matrix keeps its rank.
    pub fn ft_local_check(&self, support: &[usize]) -> bool {
        self.c2.gen().delete_columns(support).rank() == self.c2.k()
    }

    /// All `v ∈ C2^⊥ \ C1^⊥` with `w_H(v) <= w_max`, by increasing weight.
    pub fn undetectable_z_errors_bounded(&self, w_max: usize) -> Result<Vec<BitVector>> {
        let c2_perp = self.c2.dual();
        let c1_perp = self.c1.dual();
        let n = self.n();
        let mut out = Vec::new();
        bounded_search(&c2_perp, &c1_perp, w_max, |s| {
            out.push(BitVector::from_support(n, s));
            true
        })?;
        Ok(out)
    }

    /// Bounded-search distances: `d_x` over `C2^⊥ \ C1^⊥` (Z-type logicals),
    /// `d_z` over `C1 \ C2` (X-type logicals).
    pub fn distance_bounded(&self, w_max: usize) -> Result<DistanceReport> {
        let c2_perp = self.c2.dual();
        let c1_perp = self.c1.dual();
        let bound = |found: Option<usize>| match found {
            Some(d) => DistanceBound::Exact(d),
            None => DistanceBound::AtLeast(w_max.min(self.n()) + 1),
        };
        let d_x = bound(crate::code::min_weight_bounded(&c2_perp, &c1_perp, w_max)?);
        let d_z = bound(crate::code::min_weight_bounded(&self.c1, &self.c2, w_max)?);
        Ok(DistanceReport {
            d_x,
            d_z,
            d: d_x.min_with(d_z),
        })
    }
}

/// Lexicographically least `γ_i ∈ C2^⊥` with `gx · γ_i^T = e_i`.
fn solve_z_logicals(c1: &LinearCode, c2: &LinearCode, gx: &BitMatrix) -> Result<BitMatrix> {
    let n = c1.n();
    let k = gx.nrows();
    let c2_perp = c2.dual();
    let basis = c2_perp.gen();
    let m = basis.nrows();
    // [M | I_k] with M[j][l] = gx_j · b_l; reduce to [R | T] where T M = R.
    let aug: Vec<BitVector> = gx
        .rows()
        .iter()
        .enumerate()
        .map(|(j, w)| basis.mul_vec(w).concat(&BitVector::unit(k, j)))
        .collect();
    let r = BitMatrix::from_rows(m + k, aug)?.rref();
    if r.rank < k || r.pivots.iter().any(|&p| p >= m) {
        return Err(Error::Validation(
            "no Z-logicals solve gx · gz^T = I".into(),
        ));
    }
    let c1_perp = c1.dual();
    let mut rows = Vec::with_capacity(k);
    for i in 0..k {
        let mut gamma = BitVector::zeros(n);
        for (j, &p) in r.pivots.iter().enumerate() {
            if r.matrix.get(j, m + i) {
                gamma.xor_assign(basis.row(p));
            }
        }
        rows.push(c1_perp.reduce(&gamma));
    }
    BitMatrix::from_rows(n, rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum DistanceBound {
    Exact(usize),
    /// No word found up to `value - 1`.
    AtLeast(usize),
}

impl DistanceBound {
    fn min_with(self, other: Self) -> Self {
        use DistanceBound::*;
        match (self, other) {
            (Exact(a), Exact(b)) => Exact(a.min(b)),
            (Exact(a), AtLeast(b)) | (AtLeast(b), Exact(a)) => {
                if a < b {
                    Exact(a)
                } else {
                    AtLeast(b)
                }
            }
            (AtLeast(a), AtLeast(b)) => AtLeast(a.min(b)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub d_x: DistanceBound,
    pub d_z: DistanceBound,
    pub d: DistanceBound,
}

/// Stabilizer generator matrix `[A 0; 0 B; C D]` with `A` (pure X) and `B`
/// (pure Z) of maximal row count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerStandardForm {
    pub n: usize,
    pub a: BitMatrix,
    pub b: BitMatrix,
    pub c: BitMatrix,
    pub d: BitMatrix,
}

impl StabilizerStandardForm {
    /// All generators as `(x | z)` rows of length `2n`.
    pub fn symplectic_rows(&self) -> Vec<BitVector> {
        let zero = BitVector::zeros(self.n);
        let mut rows: Vec<BitVector> = self.a.rows().iter().map(|a| a.concat(&zero)).collect();
        rows.extend(self.b.rows().iter().map(|b| zero.concat(b)));
        rows.extend(
            self.c
                .rows()
                .iter()
                .zip(self.d.rows())
                .map(|(c, d)| c.concat(d)),
        );
        rows
    }
}

fn symplectic_product(x1: &BitVector, z1: &BitVector, x2: &BitVector, z2: &BitVector) -> bool {
    x1.dot(z2) ^ z1.dot(x2)
}

fn split(v: &BitVector, n: usize) -> (BitVector, BitVector) {
    let left: Vec<usize> = (0..n).collect();
    let right: Vec<usize> = (n..2 * n).collect();
    (v.restrict(&left), v.restrict(&right))
}

/// Rows of the reduced form of `[first | second]` whose `first` half vanished,
/// projected onto `second`.
fn pure_part(first: &BitMatrix, second: &BitMatrix) -> Result<BitMatrix> {
    let n = first.ncols();
    let rows: Vec<BitVector> = first
        .rows()
        .iter()
        .zip(second.rows())
        .map(|(f, s)| f.concat(s))
        .collect();
    let basis = BitMatrix::from_rows(2 * n, rows)?.row_basis();
    let pure = basis
        .rows()
        .iter()
        .map(|r| split(r, n))
        .filter(|(f, _)| f.is_zero())
        .map(|(_, s)| s)
        .collect();
    Ok(BitMatrix::from_rows(n, pure)?.row_basis())
}

/// Row-reduces stabilizer generators `(x_parts[i] | z_parts[i])` into
/// standard form.
pub fn standard_form(x_parts: &BitMatrix, z_parts: &BitMatrix) -> Result<StabilizerStandardForm> {
    let n = x_parts.ncols();
    if z_parts.ncols() != n || x_parts.nrows() != z_parts.nrows() {
        return Err(Error::InvalidStabilizer(
            "X and Z parts must have the same shape".into(),
        ));
    }
    let r = x_parts.nrows();
    for i in 0..r {
        for j in (i + 1)..r {
            if symplectic_product(x_parts.row(i), z_parts.row(i), x_parts.row(j), z_parts.row(j)) {
                return Err(Error::InvalidStabilizer(format!(
                    "generators {} and {} do not commute",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let full: Vec<BitVector> = x_parts
        .rows()
        .iter()
        .zip(z_parts.rows())
        .map(|(x, z)| x.concat(z))
        .collect();
    let full = BitMatrix::from_rows(2 * n, full)?;
    let s_basis = full.row_basis();
    if s_basis.nrows() != r {
        return Err(Error::InvalidStabilizer("generators are dependent".into()));
    }

    let a = pure_part(z_parts, x_parts)?;
    let b = pure_part(x_parts, z_parts)?;

    let zero = BitVector::zeros(n);
    let mut pure_rows: Vec<BitVector> = a.rows().iter().map(|x| x.concat(&zero)).collect();
    pure_rows.extend(b.rows().iter().map(|z| zero.concat(z)));
    let mut acc = LinearCode::from_rows(2 * n, pure_rows)?;
    let mut c_rows = Vec::new();
    let mut d_rows = Vec::new();
    for row in s_basis.rows() {
        let red = acc.reduce(row);
        if !red.is_zero() {
            acc = acc.extend(std::slice::from_ref(&red))?;
            let (c, d) = split(&red, n);
            c_rows.push(c);
            d_rows.push(d);
        }
    }
    Ok(StabilizerStandardForm {
        n,
        a,
        b,
        c: BitMatrix::from_rows(n, c_rows)?,
        d: BitMatrix::from_rows(n, d_rows)?,
    })
}

/// Classical tower `⟨A, C⟩ ⊂ B^⊥` standing in for `C2 ⊂ C1`.
pub fn tower_from_standard_form(s: &StabilizerStandardForm) -> Result<(LinearCode, LinearCode)> {
    let sub = LinearCode::from_generators(&s.a.vstack(&s.c));
    let sup = LinearCode::from_generators(&s.b).dual();
    if !sub.is_subcode_of(&sup) {
        return Err(Error::InvalidStabilizer(
            "X-projection is not orthogonal to the pure-Z part".into(),
        ));
    }
    Ok((sub, sup))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code_512() -> CssCode {
        let c2 = LinearCode::parse(5, &["11010", "01101"]).unwrap();
        let c1 = c2.extend(&["11100".parse().unwrap()]).unwrap();
        CssCode::new(c1, c2, BitVector::zeros(5)).unwrap()
    }

    #[test]
    fn k_zero_code_is_valid() {
        let c = LinearCode::parse(4, &["1100", "0011"]).unwrap();
        let code = CssCode::new(c.clone(), c, BitVector::zeros(4)).unwrap();
        assert_eq!(code.k(), 0);
        let st = code.encode_basis(&BitVector::zeros(0)).unwrap();
        assert_eq!(st.len(), 4);
    }

    #[test]
    fn containment_is_checked() {
        let c1 = LinearCode::parse(4, &["1100"]).unwrap();
        let c2 = LinearCode::parse(4, &["0011"]).unwrap();
        assert!(matches!(
            CssCode::new(c1, c2, BitVector::zeros(4)),
            Err(Error::NotContained(_))
        ));
    }

    #[test]
    fn ft_check_edges() {
        let code = code_512();
        assert!(code.ft_local_check(&[]));
        assert!(code.ft_local_check(&[3, 4]));
        assert!(!code.ft_local_check(&[0, 1, 2, 3, 4]));
        // support of the codeword 11010
        assert!(!code.ft_local_check(&[0, 1, 3]));
    }

    #[test]
    fn encoded_state_of_k2_zero_code_is_a_basis_vector() {
        let c1 = LinearCode::parse(3, &["110", "011"]).unwrap();
        let code = CssCode::new(c1, LinearCode::zero(3), "001".parse().unwrap()).unwrap();
        let st = code.encode_basis(&"11".parse().unwrap()).unwrap();
        assert_eq!(st.len(), 1);
        let (b, a) = st.iter().next().unwrap();
        assert_eq!(*b, code.x_logical(&"11".parse().unwrap()).xor(code.y()));
        assert!((a.re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn non_commuting_generators_rejected() {
        let x = BitMatrix::parse_rows(2, &["10", "00"]).unwrap();
        let z = BitMatrix::parse_rows(2, &["00", "10"]).unwrap();
        assert!(standard_form(&x, &z).is_err());
        let x = BitMatrix::parse_rows(2, &["10", "10"]).unwrap();
        let z = BitMatrix::parse_rows(2, &["00", "00"]).unwrap();
        assert!(standard_form(&x, &z).is_err());
    }

    #[test]
    fn logical_free_code_has_no_undetectable_errors() {
        let c = LinearCode::parse(4, &["1111"]).unwrap();
        let code = CssCode::new(c.clone(), c, BitVector::zeros(4)).unwrap();
        assert!(code.undetectable_z_errors_bounded(4).unwrap().is_empty());
    }
}
