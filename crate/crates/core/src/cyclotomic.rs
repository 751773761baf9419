//! Exact arithmetic in `Z[ζ][1/2]` for `ζ = exp(iπ / 2^{L-1})`, a primitive
//! `2^L`-th root of unity.
//!
//! Elements are stored over the power basis `1, ζ, …, ζ^{N-1}` with
//! `N = 2^{L-1}` (so `ζ^N = -1`), divided by a power of two. The stored form
//! is canonical: the level is as small as possible and the numerators share
//! no common factor of two with the denominator, so derived equality is exact
//! equality of complex numbers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicNumber {
    #[serde(rename = "L")]
    level: u32,
    num: Vec<i64>,
    log2den: u32,
}

impl CyclotomicNumber {
    pub fn zero() -> Self {
        Self {
            level: 1,
            num: vec![0],
            log2den: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Self {
            level: 1,
            num: vec![v],
            log2den: 0,
        }
    }

    /// `ζ^t` at level `level`.
    pub fn root(level: u32, t: i64) -> Self {
        assert!(level >= 1, "level must be at least 1");
        let order = 1i64 << level;
        let half = (order / 2) as usize;
        let t = t.rem_euclid(order) as usize;
        let mut num = vec![0; half];
        if t < half {
            num[t] = 1;
        } else {
            num[t - half] = -1;
        }
        Self {
            level,
            num,
            log2den: 0,
        }
        .canonical()
    }

    /// Builds `(Σ_j num[j] ζ^j) / 2^log2den`; `num.len()` must be `2^{level-1}`.
    pub fn from_parts(level: u32, num: Vec<i64>, log2den: u32) -> Self {
        assert!(level >= 1);
        assert_eq!(num.len(), 1usize << (level - 1), "numerator length");
        Self {
            level,
            num,
            log2den,
        }
        .canonical()
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn numerators(&self) -> &[i64] {
        &self.num
    }

    pub fn log2den(&self) -> u32 {
        self.log2den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Divides by `2^e`.
    pub fn div_pow2(&self, e: u32) -> Self {
        Self {
            level: self.level,
            num: self.num.clone(),
            log2den: self.log2den + e,
        }
        .canonical()
    }

    /// Complex conjugate, via `ζ^j ↦ ζ^{-j} = -ζ^{N-j}`.
    pub fn conj(&self) -> Self {
        let n = self.num.len();
        let mut out = vec![0; n];
        out[0] = self.num[0];
        for j in 1..n {
            out[n - j] = -self.num[j];
        }
        Self {
            level: self.level,
            num: out,
            log2den: self.log2den,
        }
        .canonical()
    }

    /// `|z|^2` as an exact element.
    pub fn norm_sqr(&self) -> Self {
        self * &self.conj()
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.num.len() as f64;
        let scale = (0.5f64).powi(self.log2den as i32);
        self.num
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| Complex64::from_polar(c as f64, std::f64::consts::PI * j as f64 / n))
            .sum::<Complex64>()
            * scale
    }

    /// Numerators lifted to `level >= self.level` and denominator `2^den`
    /// with `den >= self.log2den`.
    fn lifted(&self, level: u32, den: u32) -> Vec<i64> {
        let step = 1usize << (level - self.level);
        let shift = den - self.log2den;
        let mut out = vec![0; 1usize << (level - 1)];
        for (j, &c) in self.num.iter().enumerate() {
            out[j * step] = c << shift;
        }
        out
    }

    fn canonical(mut self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        while self.level > 1 && self.num.iter().skip(1).step_by(2).all(|&c| c == 0) {
            self.num = self.num.iter().step_by(2).copied().collect();
            self.level -= 1;
        }
        while self.log2den > 0 && self.num.iter().all(|&c| c % 2 == 0) {
            for c in self.num.iter_mut() {
                *c /= 2;
            }
            self.log2den -= 1;
        }
        self
    }
}

impl Default for CyclotomicNumber {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn add(self, rhs: Self) -> CyclotomicNumber {
        let level = self.level.max(rhs.level);
        let den = self.log2den.max(rhs.log2den);
        let a = self.lifted(level, den);
        let b = rhs.lifted(level, den);
        CyclotomicNumber {
            level,
            num: a.iter().zip(&b).map(|(x, y)| x + y).collect(),
            log2den: den,
        }
        .canonical()
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            level: self.level,
            num: self.num.iter().map(|c| -c).collect(),
            log2den: self.log2den,
        }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn sub(self, rhs: Self) -> CyclotomicNumber {
        self + &(-rhs)
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;

    fn mul(self, rhs: Self) -> CyclotomicNumber {
        let level = self.level.max(rhs.level);
        let a = self.lifted(level, self.log2den);
        let b = rhs.lifted(level, rhs.log2den);
        let n = a.len();
        let mut out = vec![0i64; n];
        for (i, &x) in a.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &y) in b.iter().enumerate().filter(|(_, &y)| y != 0) {
                let p = x * y;
                if i + j < n {
                    out[i + j] += p;
                } else {
                    out[i + j - n] -= p;
                }
            }
        }
        CyclotomicNumber {
            level,
            num: out,
            log2den: self.log2den + rhs.log2den,
        }
        .canonical()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $f(self, rhs: Self) -> CyclotomicNumber {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for CyclotomicNumber {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (j, &c) in self.num.iter().enumerate().filter(|(_, &c)| c != 0) {
            let mag = c.unsigned_abs();
            let sign = if c < 0 { "-" } else { "+" };
            let body = match (j, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "ζ".to_string(),
                (_, 1) => format!("ζ^{j}"),
                (1, m) => format!("{m}ζ"),
                (_, m) => format!("{m}ζ^{j}"),
            };
            terms.push((sign, body));
        }
        let mut s = String::new();
        for (i, (sign, body)) in terms.iter().enumerate() {
            match (i, *sign) {
                (0, "-") => s.push('-'),
                (0, _) => {}
                (_, sg) => s.push_str(&format!(" {sg} ")),
            }
            s.push_str(body);
        }
        if terms.is_empty() {
            s.push('0');
        }
        if self.log2den > 0 {
            if terms.len() > 1 {
                s = format!("({s})");
            }
            s.push_str(&format!("/{}", 1u64 << self.log2den));
        }
        if self.level > 1 {
            write!(f, "{s} [ζ^{}=1]", 1u64 << self.level)
        } else {
            f.write_str(&s)
        }
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({self})")
    }
}
