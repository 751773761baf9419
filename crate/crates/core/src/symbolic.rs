//! Diagonal gates with symbolic rotation angles.
//!
//! Each qubit carries an angle that is a rational linear combination of named
//! symbols; the phase of basis state `u` is the sum of the angles on its
//! support. Linear constraints among the symbols are applied by substitution,
//! so two phases are equal under the constraints exactly when their reduced
//! forms coincide.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gf2::BitVector;

pub type Rational = Ratio<i64>;

/// `Σ coeff · symbol`, zero coefficients never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    terms: BTreeMap<String, Rational>,
}

impl LinearForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn symbol(name: &str) -> Self {
        Self::term(name, Rational::one())
    }

    pub fn term(name: &str, coeff: Rational) -> Self {
        let mut f = Self::zero();
        f.add_term(name, coeff);
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, name: &str) -> Rational {
        self.terms.get(name).copied().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, &Rational)> {
        self.terms.iter().map(|(k, v)| (k.as_str(), v))
    }

    fn add_term(&mut self, name: &str, coeff: Rational) {
        let entry = self.terms.entry(name.to_string()).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(name);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, -Rational::one())
    }

    pub fn add_scaled(&self, other: &Self, s: Rational) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k, *v * s);
        }
        out
    }

    pub fn scale(&self, s: Rational) -> Self {
        Self::zero().add_scaled(self, s)
    }

    /// Largest symbol name with a nonzero coefficient.
    fn leading(&self) -> Option<&str> {
        self.terms.keys().next_back().map(String::as_str)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (name, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}*{name}")?;
            }
        }
        Ok(())
    }
}

fn parse_coeff(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: i64 = a.trim().parse().map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
        let b: i64 = b.trim().parse().map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
        if b == 0 {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rational::new(a, b))
    } else {
        s.parse::<i64>()
            .map(Rational::from_integer)
            .map_err(|_| Error::Parse(format!("bad number {s:?}")))
    }
}

fn is_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && s.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Parses forms such as `theta1 + theta2`, `2*a - 1/2*b`, `3theta`, `0`.
/// Nonzero constant terms are rejected.
impl FromStr for LinearForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let spaced: String = s
            .chars()
            .flat_map(|c| match c {
                '+' | '-' => vec![' ', c, ' '],
                _ => vec![c],
            })
            .collect();
        let mut form = Self::zero();
        let mut sign = Rational::one();
        let mut expect_term = true;
        for tok in spaced.split_whitespace() {
            match tok {
                "+" => expect_term = true,
                "-" => {
                    sign = -sign;
                    expect_term = true;
                }
                _ if !expect_term => {
                    return Err(Error::Parse(format!("missing operator before {tok:?} in {s:?}")))
                }
                _ => {
                    if tok == "0" {
                        sign = Rational::one();
                        expect_term = false;
                        continue;
                    }
                    let (coeff, name) = match tok.split_once('*') {
                        Some((c, n)) => (parse_coeff(c)?, n.trim()),
                        None => match tok.find(|c: char| c.is_alphabetic() || c == '_') {
                            Some(0) => (Rational::one(), tok),
                            Some(i) => (parse_coeff(&tok[..i])?, &tok[i..]),
                            None => {
                                return Err(Error::Parse(format!(
                                    "constant term {tok:?} not allowed"
                                )))
                            }
                        },
                    };
                    if !is_symbol(name) {
                        return Err(Error::Parse(format!("bad symbol {name:?} in {s:?}")));
                    }
                    form.add_term(name, coeff * sign);
                    sign = Rational::one();
                    expect_term = false;
                }
            }
        }
        if expect_term {
            return Err(Error::Parse(format!("incomplete form {s:?}")));
        }
        Ok(form)
    }
}

/// Linear relations among symbols, kept in reduced echelon form with each
/// relation solved for its largest symbol name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintSystem {
    /// pivot symbol → expression it is replaced by
    rules: BTreeMap<String, LinearForm>,
}

impl ConstraintSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `lhs = rhs`. Redundant relations are ignored.
    pub fn add(&mut self, lhs: &LinearForm, rhs: &LinearForm) {
        let rel = self.reduce(&lhs.sub(rhs));
        let Some(pivot) = rel.leading().map(str::to_string) else {
            return;
        };
        let c = rel.coeff(&pivot);
        // pivot = -(rel - c·pivot)/c
        let expr = rel
            .sub(&LinearForm::term(&pivot, c))
            .scale(-Rational::one() / c);
        for v in self.rules.values_mut() {
            let k = v.coeff(&pivot);
            if !k.is_zero() {
                *v = v.sub(&LinearForm::term(&pivot, k)).add_scaled(&expr, k);
            }
        }
        self.rules.insert(pivot, expr);
    }

    /// Parses `"lhs = rhs"` or chains `"a = b = c"`.
    pub fn add_str(&mut self, s: &str) -> Result<()> {
        let parts: Vec<LinearForm> = s
            .split('=')
            .map(str::parse)
            .collect::<Result<_>>()?;
        if parts.len() < 2 {
            return Err(Error::Parse(format!("constraint {s:?} has no '='")));
        }
        for w in parts.windows(2) {
            self.add(&w[0], &w[1]);
        }
        Ok(())
    }

    pub fn reduce(&self, f: &LinearForm) -> LinearForm {
        let mut out = f.clone();
        for (pivot, expr) in &self.rules {
            let k = out.coeff(pivot);
            if !k.is_zero() {
                out = out.sub(&LinearForm::term(pivot, k)).add_scaled(expr, k);
            }
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

/// Diagonal gate `⊗_j diag(1, e^{i θ_j})` with symbolic `θ_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicPhaseGate {
    angles: Vec<LinearForm>,
    constraints: ConstraintSystem,
}

impl SymbolicPhaseGate {
    pub fn new(angles: Vec<LinearForm>, constraints: ConstraintSystem) -> Self {
        Self {
            angles,
            constraints,
        }
    }

    pub fn parse<S: AsRef<str>>(angles: &[S], constraints: &[S]) -> Result<Self> {
        let angles = angles
            .iter()
            .map(|a| a.as_ref().parse())
            .collect::<Result<Vec<LinearForm>>>()?;
        let mut cs = ConstraintSystem::new();
        for c in constraints {
            cs.add_str(c.as_ref())?;
        }
        Ok(Self::new(angles, cs))
    }

    pub fn n(&self) -> usize {
        self.angles.len()
    }

    pub fn angles(&self) -> &[LinearForm] {
        &self.angles
    }

    pub fn constraints(&self) -> &ConstraintSystem {
        &self.constraints
    }

    /// Same angles, no constraints.
    pub fn unconstrained(&self) -> Self {
        Self::new(self.angles.clone(), ConstraintSystem::new())
    }

    /// Phase of `|u⟩`, reduced under the constraints.
    pub fn entry(&self, u: &BitVector) -> Result<LinearForm> {
        if u.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                found: u.len(),
            });
        }
        let sum = u
            .support()
            .fold(LinearForm::zero(), |acc, j| acc.add(&self.angles[j]));
        Ok(self.constraints.reduce(&sum))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn remark_gate(constrained: bool) -> SymbolicPhaseGate {
        let angles = ["theta1", "theta2", "theta", "theta", "theta1'", "theta2'"];
        let cs: &[&str] = if constrained {
            &["theta1 + theta2 = theta1' + theta2' = theta"]
        } else {
            &[]
        };
        SymbolicPhaseGate::parse(&angles, cs).unwrap()
    }

    #[test]
    fn parse_forms() {
        let f: LinearForm = "2*a - 1/2*b + a".parse().unwrap();
        assert_eq!(f.coeff("a"), Rational::from_integer(3));
        assert_eq!(f.coeff("b"), Rational::new(-1, 2));
        assert!("0".parse::<LinearForm>().unwrap().is_zero());
        assert!("a +".parse::<LinearForm>().is_err());
        assert!("3".parse::<LinearForm>().is_err());
        let g: LinearForm = "3theta".parse().unwrap();
        assert_eq!(g, LinearForm::term("theta", Rational::from_integer(3)));
    }

    #[test]
    fn entries_of_inhomogeneous_gate() {
        let g = remark_gate(false);
        let e = g.entry(&"110000".parse().unwrap()).unwrap();
        assert_eq!(e, "theta1 + theta2".parse().unwrap());
        assert!(g.entry(&BitVector::zeros(6)).unwrap().is_zero());
    }

    #[test]
    fn constraint_substitution() {
        let g = remark_gate(true);
        let e = g.entry(&"111100".parse().unwrap()).unwrap();
        assert_eq!(e, LinearForm::term("theta", Rational::from_integer(3)));
        let a = g.entry(&"111000".parse().unwrap()).unwrap();
        let b = g.entry(&"000111".parse().unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn redundant_constraints_are_ignored() {
        let mut cs = ConstraintSystem::new();
        cs.add_str("a = b").unwrap();
        cs.add_str("2a = 2b").unwrap();
        assert_eq!(cs.rules.len(), 1);
        assert_eq!(cs.reduce(&"a - b".parse().unwrap()), LinearForm::zero());
    }
}
