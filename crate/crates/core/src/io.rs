//! JSON file formats for codes, stabilizer generators, gates and target
//! logical gates.
//!
//! Bit strings are `'0'`/`'1'` strings. Qubit indices in gate files are
//! 1-based.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::codespace::{standard_form, CssCode};
use crate::diaggate::{DyadicDiagonalGate, LocalFactor};
use crate::error::{Error, Result};
use crate::gencoeff::LogicalDiagonal;
use crate::gf2::{BitMatrix, BitVector};
use crate::symbolic::SymbolicPhaseGate;

/// A CSS code. `y` defaults to zero; `gx_rows` pins the X-logical basis;
/// `gz_rows`, when given, must agree with the computed Z-logicals modulo
/// `C1^⊥`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub c1_rows: Vec<BitVector>,
    pub c2_rows: Vec<BitVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<BitVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gx_rows: Option<Vec<BitVector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gz_rows: Option<Vec<BitVector>>,
}

impl CodeFile {
    pub fn from_code(code: &CssCode) -> Self {
        Self {
            n: code.n(),
            k: Some(code.k()),
            c1_rows: code.c1().gen().rows().to_vec(),
            c2_rows: code.c2().gen().rows().to_vec(),
            y: Some(code.y().clone()),
            gx_rows: Some(code.gx().rows().to_vec()),
            gz_rows: Some(code.gz().rows().to_vec()),
        }
    }

    pub fn to_code(&self) -> Result<CssCode> {
        let c1 = LinearCode::from_rows(self.n, self.c1_rows.clone())?;
        let c2 = LinearCode::from_rows(self.n, self.c2_rows.clone())?;
        let y = self.y.clone().unwrap_or_else(|| BitVector::zeros(self.n));
        let code = match &self.gx_rows {
            Some(rows) => CssCode::with_logical_basis(c1, c2, y, rows.clone())?,
            None => CssCode::new(c1, c2, y)?,
        };
        if let Some(k) = self.k {
            if k != code.k() {
                return Err(Error::Validation(format!(
                    "file says k = {k}, code has k = {}",
                    code.k()
                )));
            }
        }
        if let Some(gz) = &self.gz_rows {
            let c1_perp = code.c1().dual();
            if gz.len() != code.k()
                || gz
                    .iter()
                    .zip(code.gz().rows())
                    .any(|(a, b)| a.len() != self.n || !c1_perp.reduce(&a.xor(b)).is_zero())
            {
                return Err(Error::Validation(
                    "gz_rows are not dual to gx_rows modulo C1^perp".into(),
                ));
            }
        }
        Ok(code)
    }
}

/// Stabilizer generators as separate X and Z parts, row `i` of each
/// describing generator `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerFile {
    pub n: usize,
    pub x_rows: Vec<BitVector>,
    pub z_rows: Vec<BitVector>,
}

impl StabilizerFile {
    /// The CSS code of the tower extracted from the standard form.
    pub fn to_code(&self) -> Result<CssCode> {
        let x = BitMatrix::from_rows(self.n, self.x_rows.clone())?;
        let z = BitMatrix::from_rows(self.n, self.z_rows.clone())?;
        CssCode::from_standard_form(&standard_form(&x, &z)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSpec {
    /// 1-based qubits.
    pub support: Vec<usize>,
    #[serde(rename = "L")]
    pub level: u32,
    pub table: BTreeMap<BitVector, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GateSpec {
    WeightRule {
        #[serde(rename = "L")]
        level: u32,
        c: u32,
    },
    Factors {
        factors: Vec<FactorSpec>,
    },
    Table {
        #[serde(rename = "L")]
        level: u32,
        entries: BTreeMap<BitVector, u32>,
    },
    Symbolic {
        angles: Vec<String>,
        #[serde(default)]
        constraints: Vec<String>,
    },
}

/// A gate file. The qubit count comes from the code it is applied to; an
/// explicit `n` is checked against it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(flatten)]
    pub spec: GateSpec,
}

#[derive(Clone, Debug)]
pub enum LoadedGate {
    Dyadic(DyadicDiagonalGate),
    Symbolic(SymbolicPhaseGate),
}

impl GateFile {
    pub fn build(&self, n: usize) -> Result<LoadedGate> {
        if let Some(m) = self.n {
            if m != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: m,
                });
            }
        }
        Ok(match &self.spec {
            GateSpec::WeightRule { level, c } => {
                LoadedGate::Dyadic(DyadicDiagonalGate::weight_rule(n, *level, *c)?)
            }
            GateSpec::Factors { factors } => {
                let fs = factors
                    .iter()
                    .map(|f| {
                        if let Some(&q) = f.support.iter().find(|&&q| q == 0 || q > n) {
                            return Err(Error::MalformedGate(format!(
                                "qubit {q} outside 1..={n}"
                            )));
                        }
                        LocalFactor::new(
                            f.support.iter().map(|q| q - 1).collect(),
                            f.level,
                            f.table.clone(),
                        )
                    })
                    .collect::<Result<Vec<_>>>()?;
                LoadedGate::Dyadic(DyadicDiagonalGate::from_factors(n, fs)?)
            }
            GateSpec::Table { level, entries } => {
                LoadedGate::Dyadic(DyadicDiagonalGate::from_table(n, *level, entries.clone())?)
            }
            GateSpec::Symbolic {
                angles,
                constraints,
            } => {
                let g = SymbolicPhaseGate::parse(angles, constraints)?;
                if g.n() != n {
                    return Err(Error::LengthMismatch {
                        expected: n,
                        found: g.n(),
                    });
                }
                LoadedGate::Symbolic(g)
            }
        })
    }

    pub fn build_dyadic(&self, n: usize) -> Result<DyadicDiagonalGate> {
        match self.build(n)? {
            LoadedGate::Dyadic(g) => Ok(g),
            LoadedGate::Symbolic(_) => Err(Error::InvalidArgument(
                "symbolic gates are only accepted by the identity check".into(),
            )),
        }
    }
}

/// A target logical gate `{α: exponent}` at level `L`; unlisted `α` get 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(rename = "L")]
    pub level: u32,
    pub table: BTreeMap<BitVector, u32>,
}

impl TargetFile {
    pub fn to_logical(&self) -> Result<LogicalDiagonal> {
        let k = match (self.k, self.table.keys().next()) {
            (Some(k), _) => k,
            (None, Some(a)) => a.len(),
            (None, None) => {
                return Err(Error::InvalidArgument(
                    "empty target table needs an explicit k".into(),
                ))
            }
        };
        LogicalDiagonal::from_map(k, self.level, &self.table)
    }
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}
