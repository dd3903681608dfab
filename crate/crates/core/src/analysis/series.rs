use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

/// Which grading a series counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variable {
    /// Cohomological degree.
    T,
    /// Weight.
    W,
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variable::T => "t",
            Variable::W => "w",
        })
    }
}

/// Integer power series truncated after `x^trunc`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BigradedSeries {
    pub var: Variable,
    pub trunc: usize,
    coeffs: Vec<i64>,
}

impl BigradedSeries {
    pub fn zero(var: Variable, trunc: usize) -> Self {
        BigradedSeries {
            var,
            trunc,
            coeffs: vec![0; trunc + 1],
        }
    }

    pub fn one(var: Variable, trunc: usize) -> Self {
        Self::monomial(var, trunc, 0, 1)
    }

    /// `c·x^k`, or zero when `k` exceeds the truncation.
    pub fn monomial(var: Variable, trunc: usize, k: usize, c: i64) -> Self {
        let mut s = Self::zero(var, trunc);
        if k <= trunc {
            s.coeffs[k] = c;
        }
        s
    }

    /// Coefficients beyond `trunc` are dropped.
    pub fn from_coeffs(var: Variable, trunc: usize, coeffs: &[i64]) -> Self {
        let mut s = Self::zero(var, trunc);
        for (k, &c) in coeffs.iter().enumerate().take(trunc + 1) {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn set(&mut self, k: usize, c: i64) {
        if k <= self.trunc {
            self.coeffs[k] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Sum of all coefficients up to the truncation.
    pub fn value_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        Self::from_coeffs(self.var, trunc, &self.coeffs)
    }

    fn check(&self, other: &Self) -> usize {
        assert_eq!(self.var, other.var, "series in different variables");
        self.trunc.min(other.trunc)
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut s = self.clone();
        s.coeffs.iter_mut().for_each(|x| *x *= c);
        s
    }

    /// Inverse of a series with constant term `±1`.
    pub fn recip(&self) -> Option<Self> {
        let a0 = self.coeffs[0];
        if a0 != 1 && a0 != -1 {
            return None;
        }
        let mut out = Self::zero(self.var, self.trunc);
        out.coeffs[0] = a0;
        for k in 1..=self.trunc {
            let s: i64 = (1..=k).map(|j| self.coeffs[j] * out.coeffs[k - j]).sum();
            out.coeffs[k] = -a0 * s;
        }
        Some(out)
    }

    /// Integer power; negative exponents need an invertible constant term.
    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut out = Self::one(self.var, self.trunc);
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        Some(out)
    }
}

impl Add for &BigradedSeries {
    type Output = BigradedSeries;
    fn add(self, rhs: &BigradedSeries) -> BigradedSeries {
        let t = self.check(rhs);
        let mut out = BigradedSeries::zero(self.var, t);
        for k in 0..=t {
            out.coeffs[k] = self.coeffs[k] + rhs.coeffs[k];
        }
        out
    }
}

impl Sub for &BigradedSeries {
    type Output = BigradedSeries;
    fn sub(self, rhs: &BigradedSeries) -> BigradedSeries {
        self + &(-rhs)
    }
}

impl Neg for &BigradedSeries {
    type Output = BigradedSeries;
    fn neg(self) -> BigradedSeries {
        self.scale(-1)
    }
}

impl Mul for &BigradedSeries {
    type Output = BigradedSeries;
    fn mul(self, rhs: &BigradedSeries) -> BigradedSeries {
        let t = self.check(rhs);
        let mut out = BigradedSeries::zero(self.var, t);
        for (i, &a) in self.coeffs.iter().enumerate().take(t + 1).filter(|(_, a)| **a != 0) {
            for (j, &b) in rhs.coeffs.iter().enumerate().take(t + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

impl fmt::Display for BigradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().filter(|(_, c)| **c != 0) {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "{}", self.var)?,
                (1, _) => write!(f, "{a}{}", self.var)?,
                (_, 1) => write!(f, "{}^{k}", self.var)?,
                _ => write!(f, "{a}{}^{k}", self.var)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O({}^{})", self.var, self.trunc + 1)
    }
}
