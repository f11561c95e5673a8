//! Truncated formal power series `sum c_k t^k`, read as operators `sum c_k Q^k`.

use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::OperatorMatrix;
use crate::poly::Polynomial;
use crate::psi::AdmissibleSequence;
use crate::scalar::{self, int, one, zero, Scalar};

/// Coefficients `c_0..c_order`; everything above `order` is unknown, not zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaSeries {
    #[serde(with = "scalar::serde_scalar_vec")]
    coeffs: Vec<Scalar>,
}

impl DeltaSeries {
    /// Pads or cuts `coeffs` to exactly `order + 1` entries.
    pub fn new(mut coeffs: Vec<Scalar>, order: usize) -> Self {
        coeffs.resize(order + 1, zero());
        DeltaSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![one()], order)
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        Self::new(vec![zero(), one()], order)
    }

    /// `sum t^k / k!` truncated (the classical shift `e^t`).
    pub fn exp_t(order: usize) -> Self {
        Self::new(
            (0..=order).map(|k| scalar::factorial(k).recip()).collect(),
            order,
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Scalar {
        &self.coeffs[k]
    }

    pub fn is_invertible(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    pub fn is_delta(&self) -> bool {
        self.coeffs[0].is_zero() && self.coeffs.get(1).is_some_and(|c| !c.is_zero())
    }

    pub fn with_order(&self, order: usize) -> Self {
        Self::new(self.coeffs.clone(), order)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::new(
            (0..=order)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
            order,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        DeltaSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        DeltaSeries { coeffs: out }
    }

    pub fn multiplicative_inverse(&self) -> Result<Self> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let c0 = self.coeffs[0].recip();
        let mut out = vec![c0.clone()];
        for n in 1..=self.order() {
            let s: Scalar = (1..=n).map(|k| &self.coeffs[k] * &out[n - k]).sum();
            out.push(-s * &c0);
        }
        Ok(DeltaSeries { coeffs: out })
    }

    /// Integer power; negative exponents need an invertible series.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 {
            self.multiplicative_inverse()?
        } else {
            self.clone()
        };
        let mut out = Self::one(self.order());
        for _ in 0..e.unsigned_abs() {
            out = out.multiply(&base);
        }
        Ok(out)
    }

    /// `self(inner(t))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NotDelta);
        }
        let order = self.order().min(inner.order());
        let mut acc = Self::new(vec![], order);
        for c in self.coeffs[..=order].iter().rev() {
            acc = acc.multiply(inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// The series `g` with `self(g(t)) = t`.
    pub fn compositional_inverse(&self) -> Result<Self> {
        if !self.is_delta() {
            return Err(Error::NotDelta);
        }
        let order = self.order();
        let f1 = self.coeffs[1].clone();
        let mut g = Self::new(vec![zero(), f1.recip()], order);
        for n in 2..=order {
            // Coefficient n of self(g) with g_n still zero; g_n fixes it.
            let current = self.compose(&g.with_order(n))?;
            let c = &current.coeffs[n];
            g.coeffs[n] = -c / &f1;
        }
        Ok(g)
    }

    /// Formal `d/dt`.
    pub fn derivative(&self) -> Self {
        let order = self.order().saturating_sub(1);
        Self::new(
            (1..=self.order())
                .map(|k| &self.coeffs[k] * int(k as i64))
                .collect(),
            order,
        )
    }

    /// `log(1 + R)` where `self = c_0 (1 + R)`; the `log c_0` part is dropped.
    pub fn formal_log_nonconstant(&self) -> Result<Self> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let r = self
            .scale(&self.coeffs[0].recip())
            .sub(&Self::one(self.order()));
        let mut out = Self::new(vec![], self.order());
        let mut power = Self::one(self.order());
        for k in 1..=self.order() {
            power = power.multiply(&r);
            let sign = if k % 2 == 1 { one() } else { -one() };
            out = out.add(&power.scale(&(sign / int(k as i64))));
        }
        Ok(out)
    }

    /// `exp(self)` for a series with zero constant term.
    pub fn exp_nonconstant(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadParameter("exp needs zero constant term".into()));
        }
        Self::exp_t(self.order()).compose(self)
    }

    /// `sum c_k base^k` as an operator matrix, by Horner's rule.
    pub fn realize(&self, base: &OperatorMatrix) -> OperatorMatrix {
        let n = base.degree();
        let top = self.order().min(n);
        let p = Polynomial::new(self.coeffs[..=top].to_vec());
        base.polynomial_in(&p)
    }

    /// `sum c_k partial_psi^k` directly: `x^m -> sum_k c_k m_psi^(k) x^{m-k}`.
    pub fn realize_psi(&self, seq: &AdmissibleSequence, degree: usize) -> Result<OperatorMatrix> {
        seq.n_psi(degree)?;
        let cols = (0..=degree)
            .map(|m| self.apply_psi(seq, &Polynomial::monomial(m)))
            .collect::<Result<Vec<_>>>()?;
        Ok(OperatorMatrix::from_columns(cols, degree))
    }

    /// Applies `sum c_k partial_psi^k` to `p` exactly.
    pub fn apply_psi(&self, seq: &AdmissibleSequence, p: &Polynomial) -> Result<Polynomial> {
        let Some(d) = p.degree() else {
            return Ok(Polynomial::zero());
        };
        seq.n_psi(d)?;
        let mut out = vec![zero(); d + 1];
        for (m, a) in p.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for k in 0..=m.min(self.order()) {
                let c = &self.coeffs[k];
                if !c.is_zero() {
                    out[m - k] += a * c * seq.falling(m, k)?;
                }
            }
        }
        Ok(Polynomial::new(out))
    }

    /// Evaluates the truncated series at a scalar.
    pub fn evaluate(&self, t: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(zero(), |acc, c| acc * t + c)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for DeltaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = Polynomial::new(self.coeffs.clone());
        let text = p.to_string().replace('x', "t");
        write!(f, "{text} + O(t^{})", self.order() + 1)
    }
}
