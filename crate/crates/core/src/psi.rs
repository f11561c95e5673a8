//! Admissible sequences and the scalar combinatorics built from them.
//!
//! An admissible sequence is handled entirely through its values `n_psi`
//! (`0_psi = 0` by convention). Factorials, binomial coefficients and the
//! `exp_psi` coefficients are derived from those values and cached when the
//! sequence is built.

use std::fmt;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{self, int, one, pow, zero, Scalar};

/// Description of a built-in or user-supplied family of admissible sequences.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `n_psi = n`.
    Classical,
    /// `n_psi = (1 - q^n) / (1 - q)`.
    QDeformed {
        #[serde(with = "scalar::serde_scalar")]
        q: Scalar,
    },
    /// `n_psi = F_n`.
    Fibonacci,
    /// `n_psi = sum_k beta_k alpha_k^n` with `sum beta = 0`, `sum beta*alpha = 1`.
    Recurrence {
        #[serde(with = "scalar::serde_scalar_vec")]
        alphas: Vec<Scalar>,
        #[serde(with = "scalar::serde_scalar_vec")]
        betas: Vec<Scalar>,
    },
    /// `n_psi = R(q^n)` for the polynomial `R(z) = sum r_i z^i`.
    RSeries {
        #[serde(with = "scalar::serde_scalar_vec")]
        r: Vec<Scalar>,
        #[serde(with = "scalar::serde_scalar")]
        q: Scalar,
    },
    /// `n_psi = 2n(2n - 1)`.
    Hyperbolic,
    /// Raw values `1_psi, 2_psi, ...` in order.
    Custom {
        #[serde(with = "scalar::serde_scalar_vec")]
        values: Vec<Scalar>,
    },
}

impl Family {
    pub fn q(q: Scalar) -> Self {
        Family::QDeformed { q }
    }

    /// `n_psi` for `n >= 1`, or `None` for a custom list that is too short.
    fn raw_value(&self, n: usize) -> Option<Scalar> {
        let n_i = n as i64;
        Some(match self {
            Family::Classical => int(n_i),
            Family::QDeformed { q } => (0..n).fold(zero(), |acc, k| acc + pow(q, k as i64)),
            Family::Fibonacci => {
                let (mut a, mut b) = (zero(), one());
                for _ in 0..n {
                    let next = &a + &b;
                    a = std::mem::replace(&mut b, next);
                }
                a
            }
            Family::Recurrence { alphas, betas } => alphas
                .iter()
                .zip(betas)
                .fold(zero(), |acc, (a, b)| acc + b * pow(a, n_i)),
            Family::RSeries { r, q } => {
                let z = pow(q, n_i);
                r.iter().rev().fold(zero(), |acc, c| acc * &z + c)
            }
            Family::Hyperbolic => int(2 * n_i * (2 * n_i - 1)),
            Family::Custom { values } => return values.get(n - 1).cloned(),
        })
    }

    pub fn check_parameters(&self) -> Result<()> {
        match self {
            Family::QDeformed { q } if q.is_one() => Err(Error::DegenerateFamily {
                index: 0,
                reason: "q = 1 makes (1 - q^n)/(1 - q) undefined".into(),
            }),
            Family::Recurrence { alphas, betas } => {
                if alphas.is_empty() || alphas.len() != betas.len() {
                    return Err(Error::BadParameter(
                        "recurrence needs equally many alphas and betas".into(),
                    ));
                }
                let beta_sum: Scalar = betas.iter().sum();
                let weighted: Scalar = alphas.iter().zip(betas).map(|(a, b)| a * b).sum();
                if !beta_sum.is_zero() {
                    return Err(Error::BadParameter("recurrence needs sum(beta) = 0".into()));
                }
                if !weighted.is_one() {
                    return Err(Error::BadParameter(
                        "recurrence needs sum(beta * alpha) = 1".into(),
                    ));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Classical => write!(f, "classical"),
            Family::QDeformed { q } => write!(f, "q={q}"),
            Family::Fibonacci => write!(f, "fibonacci"),
            Family::Recurrence { alphas, betas } => {
                write!(
                    f,
                    "recurrence(alpha={}; beta={})",
                    join(alphas),
                    join(betas)
                )
            }
            Family::RSeries { r, q } => write!(f, "r_series(R={}; q={q})", join(r)),
            Family::Hyperbolic => write!(f, "hyperbolic"),
            Family::Custom { values } => write!(f, "custom[{}]", join(values)),
        }
    }
}

fn join(values: &[Scalar]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// A validated admissible sequence, immutable after construction.
#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibleSequence {
    family: Family,
    values: Vec<Scalar>,
    factorials: Vec<Scalar>,
}

impl AdmissibleSequence {
    /// Builds the sequence and checks `n_psi != 0` for every `1 <= n <= max_index`.
    ///
    /// Operators on polynomials of degree at most `N` need `N <= max_index`;
    /// raising maps and right inverses on the top degree need `N + 1`.
    pub fn new(family: Family, max_index: usize) -> Result<Self> {
        family.check_parameters()?;
        let mut values = Vec::with_capacity(max_index + 1);
        values.push(zero());
        for n in 1..=max_index {
            let v = family.raw_value(n).ok_or(Error::UndefinedIndex {
                index: n,
                max: match &family {
                    Family::Custom { values } => values.len(),
                    _ => max_index,
                },
            })?;
            if v.is_zero() {
                return Err(Error::DegenerateFamily {
                    index: n,
                    reason: format!("{family} has n_psi = 0"),
                });
            }
            values.push(v);
        }
        let mut factorials = Vec::with_capacity(max_index + 1);
        factorials.push(one());
        for n in 1..=max_index {
            let next = &factorials[n - 1] * &values[n];
            factorials.push(next);
        }
        Ok(AdmissibleSequence {
            family,
            values,
            factorials,
        })
    }

    pub fn classical(max_index: usize) -> Self {
        Self::new(Family::Classical, max_index).expect("classical family is never degenerate")
    }

    /// Custom family from raw values `1_psi, ..., m_psi`.
    pub fn custom(values: Vec<Scalar>) -> Result<Self> {
        let m = values.len();
        Self::new(Family::Custom { values }, m)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn label(&self) -> String {
        self.family.to_string()
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.max_index() {
            Err(Error::UndefinedIndex {
                index: n,
                max: self.max_index(),
            })
        } else {
            Ok(())
        }
    }

    pub fn n_psi(&self, n: usize) -> Result<Scalar> {
        self.check(n)?;
        Ok(self.values[n].clone())
    }

    /// Borrowing accessor for `n_psi`.
    ///
    /// # Panics
    /// If `n > max_index()`.
    pub fn value(&self, n: usize) -> &Scalar {
        &self.values[n]
    }

    /// All cached values `0_psi, 1_psi, ..., max_psi`.
    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn factorial(&self, n: usize) -> Result<Scalar> {
        self.check(n)?;
        Ok(self.factorials[n].clone())
    }

    /// Borrowing accessor for `n_psi!`.
    ///
    /// # Panics
    /// If `n > max_index()`.
    pub fn factorial_ref(&self, n: usize) -> &Scalar {
        &self.factorials[n]
    }

    /// `n_psi (n-1)_psi ... (n-k+1)_psi`.
    pub fn falling(&self, n: usize, k: usize) -> Result<Scalar> {
        self.check(n)?;
        if k > n {
            return Ok(zero());
        }
        Ok(&self.factorials[n] / &self.factorials[n - k])
    }

    pub fn binomial(&self, n: usize, k: usize) -> Result<Scalar> {
        self.check(n)?;
        if k > n {
            return Err(Error::IndexOrder { n, k });
        }
        Ok(&self.factorials[n] / (&self.factorials[k] * &self.factorials[n - k]))
    }

    /// `[1/0_psi!, 1/1_psi!, ..., 1/t_psi!]`.
    pub fn exp_coefficients(&self, truncation: usize) -> Result<Vec<Scalar>> {
        self.check(truncation)?;
        Ok(self.factorials[..=truncation]
            .iter()
            .map(|f| f.recip())
            .collect())
    }

    /// Truncated `exp_psi(alpha x)` as a polynomial of degree `truncation`.
    pub fn exp_polynomial(&self, alpha: &Scalar, truncation: usize) -> Result<Polynomial> {
        let coeffs = self.exp_coefficients(truncation)?;
        Ok(Polynomial::new(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(n, c)| c * pow(alpha, n as i64))
                .collect(),
        ))
    }

    /// The `j`-th psi-hyperbolic function of order `m`, truncated at `truncation`:
    /// the terms `(alpha x)^n / n_psi!` of `exp_psi` with `n = j (mod m)`.
    pub fn hyperbolic_component(
        &self,
        j: usize,
        m: usize,
        alpha: &Scalar,
        truncation: usize,
    ) -> Result<Polynomial> {
        if m < 2 {
            return Err(Error::BadModulus(m));
        }
        if j >= m {
            return Err(Error::BadParameter(format!(
                "residue {j} not below modulus {m}"
            )));
        }
        let full = self.exp_polynomial(alpha, truncation)?;
        Ok(Polynomial::new(
            full.coeffs()
                .iter()
                .enumerate()
                .map(|(n, c)| if n % m == j { c.clone() } else { zero() })
                .collect(),
        ))
    }

    /// True when `n_psi = n` on the whole validated range.
    pub fn is_classical(&self) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(n, v)| *v == int(n as i64))
    }

    /// True when every `n_psi` with `n >= 1` is positive.
    pub fn all_positive(&self) -> bool {
        self.values[1..].iter().all(|v| v.is_positive())
    }
}
