//! Diagonal gates whose entries are `2^L`-th roots of unity.
//!
//! Entry `d_u = exp(iπ t(u) / 2^{L-1})` is stored as the integer exponent
//! `t(u) ∈ Z_{2^L}`. Under this convention `T = (L=3, t=1)`, `P = (L=2, t=1)`,
//! `Z = (L=1, t=1)` and `T† = (L=3, t=7)`.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Largest `n` for which full tables and Pauli expansions are materialised.
pub const DEFAULT_TABLE_CAP: usize = 16;

#[inline]
fn modulus(level: u32) -> u32 {
    1u32 << level
}

/// Rescales an exponent from level `from` to level `to >= from`.
#[inline]
pub fn lift_exponent(t: u32, from: u32, to: u32) -> u32 {
    debug_assert!(to >= from);
    (t << (to - from)) % modulus(to)
}

/// A diagonal gate on the qubits listed in `support`, given by its exponent
/// table over the restricted bits. Missing table entries are `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactor {
    support: Vec<usize>,
    level: u32,
    table: BTreeMap<BitVector, u32>,
}

impl LocalFactor {
    /// `support` uses 0-based qubit indices; table keys are bit strings over
    /// the support, in support order.
    pub fn new(support: Vec<usize>, level: u32, table: BTreeMap<BitVector, u32>) -> Result<Self> {
        if level == 0 || level > 30 {
            return Err(Error::MalformedGate(format!("level {level} out of range")));
        }
        let mut seen = support.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedGate(format!(
                "repeated qubit in support {support:?}"
            )));
        }
        let mut reduced = BTreeMap::new();
        for (k, v) in table {
            if k.len() != support.len() {
                return Err(Error::MalformedGate(format!(
                    "table key {k} does not match support of size {}",
                    support.len()
                )));
            }
            let v = v % modulus(level);
            if v != 0 {
                reduced.insert(k, v);
            }
        }
        Ok(Self {
            support,
            level,
            table: reduced,
        })
    }

    /// Phase `t` on the all-ones pattern of `support`, `C^{(s-1)}Z^{t/2^{L-1}}`.
    pub fn controlled_phase(support: Vec<usize>, level: u32, t: u32) -> Self {
        let ones = BitVector::ones(support.len());
        Self::new(support, level, BTreeMap::from([(ones, t)])).expect("well-formed factor")
    }

    pub fn t(q: usize) -> Self {
        Self::controlled_phase(vec![q], 3, 1)
    }

    pub fn t_dag(q: usize) -> Self {
        Self::controlled_phase(vec![q], 3, 7)
    }

    pub fn p(q: usize) -> Self {
        Self::controlled_phase(vec![q], 2, 1)
    }

    pub fn p_dag(q: usize) -> Self {
        Self::controlled_phase(vec![q], 2, 3)
    }

    pub fn z(q: usize) -> Self {
        Self::controlled_phase(vec![q], 1, 1)
    }

    pub fn cz(a: usize, b: usize) -> Self {
        Self::controlled_phase(vec![a, b], 1, 1)
    }

    pub fn ccz(a: usize, b: usize, c: usize) -> Self {
        Self::controlled_phase(vec![a, b, c], 1, 1)
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn table(&self) -> &BTreeMap<BitVector, u32> {
        &self.table
    }

    fn exponent(&self, u: &BitVector) -> u32 {
        let key = u.restrict(&self.support);
        self.table.get(&key).copied().unwrap_or(0)
    }

    fn negated(&self) -> Self {
        let m = modulus(self.level);
        Self {
            support: self.support.clone(),
            level: self.level,
            table: self
                .table
                .iter()
                .map(|(k, &v)| (k.clone(), (m - v) % m))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GateRepr {
    /// Exponents for listed basis strings; others are `0`.
    Table(BTreeMap<BitVector, u32>),
    /// `t(u) = c · w_H(u)`.
    WeightRule { c: u32 },
    /// Sum of local factor exponents, each rescaled to the gate level.
    Factors(Vec<LocalFactor>),
    /// Exponents specified only on a declared domain (typically `C1 + y`);
    /// entries elsewhere are undefined.
    CosetRule(BTreeMap<BitVector, u32>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicDiagonalGate {
    n: usize,
    level: u32,
    repr: GateRepr,
}

impl DyadicDiagonalGate {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            level: 1,
            repr: GateRepr::Factors(Vec::new()),
        }
    }

    /// Transversal `diag(1, ζ^c)^{⊗n}` at level `level`.
    pub fn weight_rule(n: usize, level: u32, c: u32) -> Result<Self> {
        check_level(level)?;
        Ok(Self {
            n,
            level,
            repr: GateRepr::WeightRule {
                c: c % modulus(level),
            },
        })
    }

    /// Transversal `T`.
    pub fn transversal_t(n: usize) -> Self {
        Self::weight_rule(n, 3, 1).expect("valid level")
    }

    /// Transversal `T†`.
    pub fn transversal_t_dag(n: usize) -> Self {
        Self::weight_rule(n, 3, 7).expect("valid level")
    }

    pub fn from_factors(n: usize, factors: Vec<LocalFactor>) -> Result<Self> {
        for f in &factors {
            if let Some(&q) = f.support.iter().find(|&&q| q >= n) {
                return Err(Error::MalformedGate(format!(
                    "factor qubit {} outside 1..={n}",
                    q + 1
                )));
            }
        }
        let level = factors.iter().map(|f| f.level).max().unwrap_or(1);
        Ok(Self {
            n,
            level,
            repr: GateRepr::Factors(factors),
        })
    }

    pub fn from_table(n: usize, level: u32, entries: BTreeMap<BitVector, u32>) -> Result<Self> {
        check_level(level)?;
        Ok(Self {
            n,
            level,
            repr: GateRepr::Table(reduce_entries(n, level, entries)?),
        })
    }

    pub fn from_coset_rule(
        n: usize,
        level: u32,
        entries: BTreeMap<BitVector, u32>,
    ) -> Result<Self> {
        check_level(level)?;
        let m = modulus(level);
        for k in entries.keys() {
            if k.len() != n {
                return Err(Error::MalformedGate(format!("entry {k} has wrong length")));
            }
        }
        Ok(Self {
            n,
            level,
            repr: GateRepr::CosetRule(entries.into_iter().map(|(k, v)| (k, v % m)).collect()),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn repr(&self) -> &GateRepr {
        &self.repr
    }

    /// Exponent `t(u)` at [`Self::level`].
    pub fn entry(&self, u: &BitVector) -> Result<u32> {
        if u.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: u.len(),
            });
        }
        let m = modulus(self.level);
        Ok(match &self.repr {
            GateRepr::Table(t) => t.get(u).copied().unwrap_or(0),
            GateRepr::WeightRule { c } => ((u.weight() as u64 * *c as u64) % m as u64) as u32,
            GateRepr::Factors(fs) => fs.iter().fold(0u32, |acc, f| {
                (acc + lift_exponent(f.exponent(u), f.level, self.level)) % m
            }),
            GateRepr::CosetRule(t) => *t
                .get(u)
                .ok_or_else(|| Error::OutOfDomain(u.to_string()))?,
        })
    }

    /// `d_u` as an exact cyclotomic number.
    pub fn entry_exact(&self, u: &BitVector) -> Result<CyclotomicNumber> {
        Ok(CyclotomicNumber::root(self.level, self.entry(u)? as i64))
    }

    pub fn entry_complex(&self, u: &BitVector) -> Result<Complex64> {
        let t = self.entry(u)?;
        let angle = std::f64::consts::PI * t as f64 / (1u64 << (self.level - 1)) as f64;
        Ok(Complex64::from_polar(1.0, angle))
    }

    /// Same gate described at a higher level.
    pub fn at_level(&self, level: u32) -> Result<Self> {
        if level < self.level {
            return Err(Error::Incompatible(format!(
                "cannot lower level {} to {level}",
                self.level
            )));
        }
        check_level(level)?;
        let up = |t: u32| lift_exponent(t, self.level, level);
        let repr = match &self.repr {
            GateRepr::Table(t) => GateRepr::Table(t.iter().map(|(k, &v)| (k.clone(), up(v))).collect()),
            GateRepr::WeightRule { c } => GateRepr::WeightRule { c: up(*c) },
            GateRepr::Factors(fs) => GateRepr::Factors(fs.clone()),
            GateRepr::CosetRule(t) => {
                GateRepr::CosetRule(t.iter().map(|(k, &v)| (k.clone(), up(v))).collect())
            }
        };
        Ok(Self {
            n: self.n,
            level,
            repr,
        })
    }

    /// Rewrites the gate as local factors; not available for coset rules.
    pub fn to_factors(&self) -> Result<Vec<LocalFactor>> {
        Ok(match &self.repr {
            GateRepr::Factors(fs) => fs.clone(),
            GateRepr::WeightRule { c } => (0..self.n)
                .filter(|_| *c != 0)
                .map(|q| LocalFactor::controlled_phase(vec![q], self.level, *c))
                .collect(),
            GateRepr::Table(t) => vec![LocalFactor::new(
                (0..self.n).collect(),
                self.level,
                t.clone(),
            )?],
            GateRepr::CosetRule(_) => {
                return Err(Error::Incompatible(
                    "coset rules have no factor form".into(),
                ))
            }
        })
    }

    pub fn inverse(&self) -> Self {
        let m = modulus(self.level);
        let neg = |t: &BTreeMap<BitVector, u32>| -> BTreeMap<BitVector, u32> {
            t.iter().map(|(k, &v)| (k.clone(), (m - v) % m)).collect()
        };
        let repr = match &self.repr {
            GateRepr::Table(t) => GateRepr::Table(neg(t)),
            GateRepr::WeightRule { c } => GateRepr::WeightRule { c: (m - c) % m },
            GateRepr::Factors(fs) => GateRepr::Factors(fs.iter().map(LocalFactor::negated).collect()),
            GateRepr::CosetRule(t) => GateRepr::CosetRule(neg(t)),
        };
        Self {
            n: self.n,
            level: self.level,
            repr,
        }
    }

    /// Pointwise product `g1 · g2`, exponents added at the common level.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Incompatible(format!(
                "gates act on {} and {} qubits",
                self.n, other.n
            )));
        }
        let level = self.level.max(other.level);
        let a = self.at_level(level)?;
        let b = other.at_level(level)?;
        let m = modulus(level);
        match (&a.repr, &b.repr) {
            (GateRepr::WeightRule { c: c1 }, GateRepr::WeightRule { c: c2 }) => {
                Self::weight_rule(self.n, level, (c1 + c2) % m)
            }
            (GateRepr::CosetRule(t1), GateRepr::CosetRule(t2)) => {
                if t1.len() != t2.len() || t1.keys().zip(t2.keys()).any(|(x, y)| x != y) {
                    return Err(Error::Incompatible("coset rule domains differ".into()));
                }
                let t = t1
                    .iter()
                    .zip(t2.values())
                    .map(|((k, v1), v2)| (k.clone(), (v1 + v2) % m))
                    .collect();
                Self::from_coset_rule(self.n, level, t)
            }
            (GateRepr::CosetRule(t), _) | (_, GateRepr::CosetRule(t)) => {
                let other = if matches!(a.repr, GateRepr::CosetRule(_)) { &b } else { &a };
                let mut out = BTreeMap::new();
                for (k, v) in t {
                    out.insert(k.clone(), (v + other.entry(k)?) % m);
                }
                Self::from_coset_rule(self.n, level, out)
            }
            _ => {
                let mut fs = a.to_factors()?;
                fs.extend(b.to_factors()?);
                let mut g = Self::from_factors(self.n, fs)?;
                g.level = level;
                Ok(g)
            }
        }
    }

    /// All `2^n` exponents, indexed by [`BitVector::to_index`].
    pub fn dense_exponents(&self, cap: usize) -> Result<Vec<u32>> {
        if self.n > cap {
            return Err(Error::CapExceeded {
                dim: self.n,
                cap,
            });
        }
        (0..1u64 << self.n)
            .map(|i| self.entry(&BitVector::from_index(self.n, i)))
            .collect()
    }

    /// Materialised table form (entries with exponent 0 omitted).
    pub fn to_table(&self, cap: usize) -> Result<Self> {
        let dense = self.dense_exponents(cap)?;
        let entries = dense
            .into_iter()
            .enumerate()
            .filter(|(_, t)| *t != 0)
            .map(|(i, t)| (BitVector::from_index(self.n, i as u64), t))
            .collect();
        Self::from_table(self.n, self.level, entries)
    }
}

fn check_level(level: u32) -> Result<()> {
    if level == 0 || level > 30 {
        Err(Error::MalformedGate(format!("level {level} out of range")))
    } else {
        Ok(())
    }
}

fn reduce_entries(
    n: usize,
    level: u32,
    entries: BTreeMap<BitVector, u32>,
) -> Result<BTreeMap<BitVector, u32>> {
    let m = modulus(level);
    let mut out = BTreeMap::new();
    for (k, v) in entries {
        if k.len() != n {
            return Err(Error::MalformedGate(format!("entry {k} has wrong length")));
        }
        if v % m != 0 {
            out.insert(k, v % m);
        }
    }
    Ok(out)
}

/// In-place unnormalised Walsh–Hadamard transform over `n` index bits.
fn walsh_hadamard<T: Clone>(data: &mut [T], add: impl Fn(&T, &T) -> T, sub: impl Fn(&T, &T) -> T) {
    let len = data.len();
    let mut h = 1;
    while h < len {
        for start in (0..len).step_by(2 * h) {
            for i in start..start + h {
                let x = data[i].clone();
                let y = data[i + h].clone();
                data[i] = add(&x, &y);
                data[i + h] = sub(&x, &y);
            }
        }
        h *= 2;
    }
}

/// Pauli-basis coefficients `f(v) = 2^{-n} Σ_u (-1)^{u·v} d_u`, exact.
pub fn pauli_coefficients_exact(
    g: &DyadicDiagonalGate,
    cap: usize,
) -> Result<BTreeMap<BitVector, CyclotomicNumber>> {
    let dense = g.dense_exponents(cap)?;
    let mut data: Vec<CyclotomicNumber> = dense
        .iter()
        .map(|&t| CyclotomicNumber::root(g.level(), t as i64))
        .collect();
    walsh_hadamard(&mut data, |a, b| a + b, |a, b| a - b);
    Ok(data
        .into_iter()
        .enumerate()
        .map(|(i, c)| (BitVector::from_index(g.n(), i as u64), c.div_pow2(g.n() as u32)))
        .collect())
}

/// Floating-point Pauli-basis coefficients.
pub fn pauli_coefficients(
    g: &DyadicDiagonalGate,
    cap: usize,
) -> Result<BTreeMap<BitVector, Complex64>> {
    let n = g.n();
    if n > cap {
        return Err(Error::CapExceeded { dim: n, cap });
    }
    let mut data: Vec<Complex64> = (0..1u64 << n)
        .map(|i| g.entry_complex(&BitVector::from_index(n, i)))
        .collect::<Result<_>>()?;
    walsh_hadamard(&mut data, |a, b| a + b, |a, b| a - b);
    let scale = (0.5f64).powi(n as i32);
    Ok(data
        .into_iter()
        .enumerate()
        .map(|(i, c)| (BitVector::from_index(n, i as u64), c * scale))
        .collect())
}

/// Inverse of [`pauli_coefficients_exact`]: `d_u = Σ_v (-1)^{u·v} f(v)`.
pub fn diagonal_from_pauli_exact(
    coeffs: &BTreeMap<BitVector, CyclotomicNumber>,
    n: usize,
) -> Vec<CyclotomicNumber> {
    let mut data: Vec<CyclotomicNumber> = (0..1u64 << n)
        .map(|i| {
            coeffs
                .get(&BitVector::from_index(n, i))
                .cloned()
                .unwrap_or_default()
        })
        .collect();
    walsh_hadamard(&mut data, |a, b| a + b, |a, b| a - b);
    data
}
