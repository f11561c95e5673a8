//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{self, int, parse_scalar, zero, Scalar};

/// Coefficients in the monomial basis, lowest degree first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^n`.
    pub fn term(c: Scalar, n: usize) -> Self {
        let mut coeffs = vec![zero(); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    pub fn monomial(n: usize) -> Self {
        Self::term(scalar::one(), n)
    }

    pub fn x() -> Self {
        Self::monomial(1)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    /// Coefficient of `x^n` (zero beyond the degree).
    pub fn coeff(&self, n: usize) -> Scalar {
        self.coeffs.get(n).cloned().unwrap_or_else(zero)
    }

    pub fn coeff_ref(&self, n: usize) -> Option<&Scalar> {
        self.coeffs.get(n)
    }

    /// `None` for the zero polynomial (degree -1 by convention).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a signed integer with the zero polynomial at `-1`.
    pub fn signed_degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn evaluate(&self, x0: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(zero(), |acc, c| acc * x0 + c)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(0)
    }

    /// Ordinary `d/dx`.
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c * int(n as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `p(c x)`.
    pub fn dilate(&self, c: &Scalar) -> Self {
        let mut power = scalar::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &power);
            power *= c;
        }
        Self::new(out)
    }

    /// `x^k p(x)`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// Drops every term of degree above `n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n + 1).cloned().collect())
    }

    pub fn multiply(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Product with an upper bound on the result degree.
    pub fn multiply_capped(&self, other: &Self, cap: usize) -> Result<Self> {
        if let (Some(a), Some(b)) = (self.degree(), other.degree()) {
            if a + b > cap {
                return Err(Error::DegreeOverflow { degree: a + b, cap });
            }
        }
        Ok(self.multiply(other))
    }

    /// Product truncated at degree `n`.
    pub fn multiply_truncated(&self, other: &Self, n: usize) -> Self {
        let mut out = vec![zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.multiply(self))
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc.multiply(inner) + Self::constant(c.clone())
        })
    }

    /// Mostly for diagnostics: the first degree where two polynomials differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).find(|&n| self.coeff(n) != other.coeff(n))
    }
}

impl From<Scalar> for Polynomial {
    fn from(c: Scalar) -> Self {
        Self::constant(c)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|n| self.coeff(n) + rhs.coeff(n)).collect())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|n| self.coeff(n) - rhs.coeff(n)).collect())
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        if rhs.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        *self = Polynomial::new(std::mem::take(&mut self.coeffs));
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        if rhs.coeffs.len() > self.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        *self = Polynomial::new(std::mem::take(&mut self.coeffs));
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.multiply(rhs)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        self.multiply(&rhs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let unit = magnitude.is_one();
            match n {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !unit {
                        write!(f, "{magnitude}*")?;
                    }
                    if n == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{n}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Accepts sums of terms `c`, `c*x`, `c*x^k`, `x^k`, `-x`, with `c` an
    /// integer or fraction. Terms may repeat degrees and appear in any order.
    fn from_str(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(i > 0 && current.ends_with('^')) {
                if !current.is_empty() {
                    terms.push((negative, std::mem::take(&mut current)));
                } else if i > 0 {
                    return Err(Error::Parse(format!("dangling sign in {text:?}")));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(Error::Parse(format!("trailing sign in {text:?}")));
        }
        terms.push((negative, current));

        let mut out = Polynomial::zero();
        for (neg, body) in terms {
            let (c, n) = parse_term(&body)?;
            let c = if neg { -c } else { c };
            out += &Polynomial::term(c, n);
        }
        Ok(out)
    }
}

fn parse_term(body: &str) -> Result<(Scalar, usize)> {
    let (coeff, var) = match body.find('x') {
        None => return Ok((parse_scalar(body)?, 0)),
        Some(pos) => (&body[..pos], &body[pos..]),
    };
    let c = match coeff.strip_suffix('*') {
        Some(c) => parse_scalar(c)?,
        None if coeff.is_empty() => scalar::one(),
        None => return Err(Error::Parse(format!("expected '*' before x in {body:?}"))),
    };
    let n = match var {
        "x" => 1,
        _ => var
            .strip_prefix("x^")
            .and_then(|e| e.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("bad power in {body:?}")))?,
    };
    Ok((c, n))
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        scalar::serde_scalar_vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        scalar::serde_scalar_vec::deserialize(d).map(Polynomial::new)
    }
}

/// `p_0, ..., p_N` with `deg p_n = n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTable", into = "RawTable")]
pub struct SequenceTable {
    entries: Vec<Polynomial>,
}

#[derive(Serialize, Deserialize)]
struct RawTable {
    working_degree: usize,
    entries: Vec<Polynomial>,
}

impl TryFrom<RawTable> for SequenceTable {
    type Error = Error;
    fn try_from(raw: RawTable) -> Result<Self> {
        if raw.entries.len() != raw.working_degree + 1 {
            return Err(Error::Parse(format!(
                "table declares degree {} but holds {} entries",
                raw.working_degree,
                raw.entries.len()
            )));
        }
        SequenceTable::new(raw.entries)
    }
}

impl From<SequenceTable> for RawTable {
    fn from(t: SequenceTable) -> Self {
        RawTable {
            working_degree: t.working_degree(),
            entries: t.entries,
        }
    }
}

impl SequenceTable {
    pub fn new(entries: Vec<Polynomial>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::BadParameter("empty sequence table".into()));
        }
        for (n, p) in entries.iter().enumerate() {
            if p.degree() != Some(n) {
                return Err(Error::BadParameter(format!(
                    "entry {n} has degree {}, expected {n}",
                    p.signed_degree()
                )));
            }
        }
        Ok(SequenceTable { entries })
    }

    pub fn monomials(n: usize) -> Self {
        SequenceTable {
            entries: (0..=n).map(Polynomial::monomial).collect(),
        }
    }

    pub fn working_degree(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn get(&self, n: usize) -> &Polynomial {
        &self.entries[n]
    }

    /// Keeps `p_0..p_n`.
    pub fn prefix(&self, n: usize) -> Self {
        SequenceTable {
            entries: self.entries[..=n].to_vec(),
        }
    }
}

impl std::ops::Index<usize> for SequenceTable {
    type Output = Polynomial;
    fn index(&self, n: usize) -> &Polynomial {
        &self.entries[n]
    }
}
