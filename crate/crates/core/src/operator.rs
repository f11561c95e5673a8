//! Linear maps on polynomials of degree at most `N`.
//!
//! An operator is stored by its action on monomials: column `j` is the image
//! of `x^j`, truncated at degree `N`. Raising maps therefore lose their top
//! column, and every identity involving them holds only on a window of low
//! degrees which the caller states explicitly.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, SequenceTable};
use crate::psi::AdmissibleSequence;
use crate::scalar::{int, one, pow, zero, Scalar};

/// How an operator moves degrees, read off its columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Grading {
    LowersByOne,
    /// Raises every degree below the top; the top column is truncated.
    RaisesByOne,
    Preserves,
    Ungraded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    cols: Vec<Polynomial>,
}

impl OperatorMatrix {
    /// Columns beyond `degree` are dropped and missing ones read as zero.
    pub fn from_columns(mut cols: Vec<Polynomial>, degree: usize) -> Self {
        cols.resize(degree + 1, Polynomial::zero());
        let cols = cols.into_iter().map(|c| c.truncate(degree)).collect();
        OperatorMatrix { cols }
    }

    pub fn from_fn(degree: usize, mut f: impl FnMut(usize) -> Polynomial) -> Self {
        Self::from_columns((0..=degree).map(&mut f).collect(), degree)
    }

    pub fn identity(degree: usize) -> Self {
        Self::from_fn(degree, Polynomial::monomial)
    }

    pub fn zero(degree: usize) -> Self {
        Self::from_fn(degree, |_| Polynomial::zero())
    }

    pub fn scalar(c: &Scalar, degree: usize) -> Self {
        Self::identity(degree).scale(c)
    }

    /// Diagonal in the monomial basis.
    pub fn diagonal(values: &[Scalar]) -> Self {
        let degree = values.len() - 1;
        Self::from_fn(degree, |j| Polynomial::term(values[j].clone(), j))
    }

    pub fn degree(&self) -> usize {
        self.cols.len() - 1
    }

    pub fn column(&self, j: usize) -> &Polynomial {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Polynomial] {
        &self.cols
    }

    /// Coefficient of `x^i` in the image of `x^j`.
    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        self.cols[j].coeff(i)
    }

    /// Row-major dense form.
    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        let n = self.degree();
        (0..=n)
            .map(|i| (0..=n).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    pub fn grading(&self) -> Grading {
        let n = self.degree();
        let deg = |j: usize| self.cols[j].signed_degree();
        if self.cols[0].is_zero() && (1..=n).all(|j| deg(j) == j as i64 - 1) {
            Grading::LowersByOne
        } else if (0..n).all(|j| deg(j) == j as i64 + 1) {
            Grading::RaisesByOne
        } else if (0..=n).all(|j| deg(j) == j as i64) {
            Grading::Preserves
        } else {
            Grading::Ungraded
        }
    }

    /// Applies the operator; terms of `p` above degree `N` are ignored.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (j, c) in p.coeffs().iter().enumerate().take(self.cols.len()) {
            if !c.is_zero() {
                out += &self.cols[j].scale(c);
            }
        }
        out
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.degree(),
            other.degree(),
            "operators live on different working degrees"
        );
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        self.check_same(other);
        OperatorMatrix {
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn try_compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose(other))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        OperatorMatrix {
            cols: self.cols.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::identity(self.degree());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    /// `[self, other] = self other - other self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.compose(other) - &other.compose(self)
    }

    /// `sum_k c_k self^k` by Horner's rule.
    pub fn polynomial_in(&self, p: &Polynomial) -> Self {
        let n = self.degree();
        p.coeffs().iter().rev().fold(Self::zero(n), |acc, c| {
            &self.compose(&acc) + &Self::scalar(c, n)
        })
    }

    /// `sum_{k <= order} self^k t^k / k!` for a scalar `t`.
    pub fn exp_truncated(&self, t: &Scalar, order: usize) -> Self {
        let n = self.degree();
        let mut term = Self::identity(n);
        let mut out = term.clone();
        for k in 1..=order {
            term = self.compose(&term).scale(&(t / int(k as i64)));
            out = &out + &term;
        }
        out
    }

    /// Largest `w` such that the columns `0..=w` agree, or `None` if column 0
    /// already differs.
    pub fn agreement_window(&self, other: &Self) -> Option<usize> {
        self.check_same(other);
        let first = (0..=self.degree()).find(|&j| self.cols[j] != other.cols[j]);
        match first {
            None => Some(self.degree()),
            Some(0) => None,
            Some(j) => Some(j - 1),
        }
    }

    /// True when both operators agree on every polynomial of degree at most `w`.
    pub fn agrees_on(&self, other: &Self, w: usize) -> bool {
        self.check_same(other);
        (0..=w.min(self.degree())).all(|j| self.cols[j] == other.cols[j])
    }

    /// First column `j <= w` where the operators differ.
    pub fn first_difference(&self, other: &Self, w: usize) -> Option<usize> {
        self.check_same(other);
        (0..=w.min(self.degree())).find(|&j| self.cols[j] != other.cols[j])
    }

    /// Restriction to degrees at most `m`.
    pub fn restrict(&self, m: usize) -> Self {
        Self::from_columns(self.cols[..=m.min(self.degree())].to_vec(), m)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.degree() + 1;
        let mut a = self.rows();
        let mut inv: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { one() } else { zero() })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::Singular { n: col })?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].recip();
            for v in a[col].iter_mut() {
                *v *= &p;
            }
            for v in inv[col].iter_mut() {
                *v *= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    let (da, di) = (&a[col][c] * &factor, &inv[col][c] * &factor);
                    a[r][c] -= da;
                    inv[r][c] -= di;
                }
            }
        }
        Ok(Self::from_rows(&inv))
    }

    pub fn from_rows(rows: &[Vec<Scalar>]) -> Self {
        let n = rows.len() - 1;
        Self::from_fn(n, |j| {
            Polynomial::new((0..=n).map(|i| rows[i][j].clone()).collect())
        })
    }

    /// The operator mapping `x^n` to `table[n]`.
    pub fn basis_matrix(table: &SequenceTable) -> Self {
        Self::from_columns(table.entries().to_vec(), table.working_degree())
    }

    /// The operator with `p_n -> values[n] p_n` for the basis `table`.
    pub fn diagonal_in_basis(table: &SequenceTable, values: &[Scalar]) -> Result<Self> {
        let b = Self::basis_matrix(table);
        Ok(b.compose(&Self::diagonal(values)).compose(&b.inverse()?))
    }

    /// Maps `p_n -> weights[n] p_{n+1}` for `n < N` (the top image is truncated).
    pub fn raising_in_basis(table: &SequenceTable, weights: &[Scalar]) -> Result<Self> {
        let n = table.working_degree();
        let b = Self::basis_matrix(table);
        let w = Self::from_fn(n, |j| {
            if j < n {
                Polynomial::term(weights[j].clone(), j + 1)
            } else {
                Polynomial::zero()
            }
        });
        Ok(b.compose(&w).compose(&b.inverse()?))
    }
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.check_same(rhs);
        OperatorMatrix {
            cols: self
                .cols
                .iter()
                .zip(&rhs.cols)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.check_same(rhs);
        OperatorMatrix {
            cols: self
                .cols
                .iter()
                .zip(&rhs.cols)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn neg(self) -> OperatorMatrix {
        OperatorMatrix {
            cols: self.cols.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.compose(rhs)
    }
}

impl fmt::Display for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, c) in self.cols.iter().enumerate() {
            writeln!(f, "x^{j} -> {c}")?;
        }
        Ok(())
    }
}

// Generators.

/// `x^n -> n_psi x^{n-1}`.
pub fn psi_derivative_operator(seq: &AdmissibleSequence, degree: usize) -> Result<OperatorMatrix> {
    let vals = (0..=degree)
        .map(|j| seq.n_psi(j))
        .collect::<Result<Vec<_>>>()?;
    Ok(OperatorMatrix::from_fn(degree, |j| {
        if j == 0 {
            Polynomial::zero()
        } else {
            Polynomial::term(vals[j].clone(), j - 1)
        }
    }))
}

/// `x^n -> ((n+1)/(n+1)_psi) x^{n+1}`; the top column is truncated to zero.
pub fn xhat_psi_operator(seq: &AdmissibleSequence, degree: usize) -> Result<OperatorMatrix> {
    seq.n_psi(degree)?;
    Ok(OperatorMatrix::from_fn(degree, |j| {
        if j == degree {
            Polynomial::zero()
        } else {
            Polynomial::term(int(j as i64 + 1) / seq.value(j + 1), j + 1)
        }
    }))
}

/// Multiplication by `x`.
pub fn multiplication_x(degree: usize) -> OperatorMatrix {
    OperatorMatrix::from_fn(degree, |j| Polynomial::monomial(j + 1))
}

/// Ordinary `d/dx`.
pub fn classical_derivative(degree: usize) -> OperatorMatrix {
    OperatorMatrix::from_fn(degree, |j| Polynomial::monomial(j).derivative())
}

/// `x^n -> x^{n-1}`, the divided difference at zero.
pub fn divided_difference_operator(degree: usize) -> OperatorMatrix {
    OperatorMatrix::from_fn(degree, |j| {
        if j == 0 {
            Polynomial::zero()
        } else {
            Polynomial::monomial(j - 1)
        }
    })
}

/// `f(x) -> f(q x)`.
pub fn dilation(q: &Scalar, degree: usize) -> OperatorMatrix {
    OperatorMatrix::from_fn(degree, |j| Polynomial::term(pow(q, j as i64), j))
}

/// Classical translation `f(x) -> f(x + a)`.
pub fn translation(a: &Scalar, degree: usize) -> OperatorMatrix {
    let shift = Polynomial::new(vec![a.clone(), one()]);
    OperatorMatrix::from_fn(degree, |j| Polynomial::monomial(j).compose(&shift))
}

/// `f(x) -> f(x + 1) - f(x)`.
pub fn forward_difference(degree: usize) -> OperatorMatrix {
    &translation(&one(), degree) - &OperatorMatrix::identity(degree)
}

/// Matrix of the Jackson derivative.
pub fn jackson_operator(q: &Scalar, degree: usize) -> Result<OperatorMatrix> {
    if q.is_one() {
        return Err(Error::BadParameter(
            "Jackson derivative needs q != 1".into(),
        ));
    }
    Ok(OperatorMatrix::from_fn(degree, |j| {
        jackson_derivative(&Polynomial::monomial(j), q).expect("q checked")
    }))
}

/// `(p(x) - p(q x)) / ((1 - q) x)`, coefficientwise.
pub fn jackson_derivative(p: &Polynomial, q: &Scalar) -> Result<Polynomial> {
    if q.is_one() {
        return Err(Error::BadParameter(
            "Jackson derivative needs q != 1".into(),
        ));
    }
    let denom = one() - q;
    Ok(Polynomial::new(
        p.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c * (one() - pow(q, n as i64)) / &denom)
            .collect(),
    ))
}

/// `D x D`: `x^n -> n^2 x^{n-1}`.
pub fn dxd_operator(degree: usize) -> OperatorMatrix {
    let d = classical_derivative(degree);
    d.compose(&multiplication_x(degree)).compose(&d)
}

/// `2 (2 D x D - D)`: `x^n -> 2n(2n - 1) x^{n-1}`.
pub fn hyperbolic_q_operator(degree: usize) -> OperatorMatrix {
    let d = classical_derivative(degree);
    (&dxd_operator(degree).scale(&int(2)) - &d).scale(&int(2))
}

/// `partial_psi` applied directly to a polynomial.
pub fn apply_psi_derivative(seq: &AdmissibleSequence, p: &Polynomial) -> Result<Polynomial> {
    if let Some(d) = p.degree() {
        seq.n_psi(d)?;
    }
    Ok(Polynomial::new(
        p.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c * seq.value(n))
            .collect(),
    ))
}

/// `xhat_psi` applied directly to a polynomial (no truncation).
pub fn apply_xhat_psi(seq: &AdmissibleSequence, p: &Polynomial) -> Result<Polynomial> {
    if let Some(d) = p.degree() {
        seq.n_psi(d + 1)?;
    }
    let mut coeffs = vec![zero()];
    coeffs.extend(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| c * int(n as i64 + 1) / seq.value(n + 1)),
    );
    Ok(Polynomial::new(coeffs))
}

/// Left inverse of `xhat_psi` on polynomials without constant term:
/// `x^{n+1} -> ((n+1)_psi / (n+1)) x^n`.
pub fn xhat_psi_left_inverse(seq: &AdmissibleSequence, p: &Polynomial) -> Result<Polynomial> {
    if !p.constant_term().is_zero() {
        return Err(Error::ConstantTermObstruction);
    }
    if let Some(d) = p.degree() {
        seq.n_psi(d)?;
    }
    Ok(Polynomial::new(
        p.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c * seq.value(n) / int(n as i64))
            .collect(),
    ))
}

/// `E^y(partial_psi) p = sum_k y^k / k_psi! partial_psi^k p`, i.e. `p(x +_psi y)`.
pub fn generalized_shift(
    seq: &AdmissibleSequence,
    p: &Polynomial,
    y: &Scalar,
) -> Result<Polynomial> {
    let Some(d) = p.degree() else {
        return Ok(Polynomial::zero());
    };
    seq.n_psi(d)?;
    let mut out = vec![zero(); d + 1];
    for (n, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mut ypow = one();
        for k in 0..=n {
            out[n - k] += c * seq.binomial(n, k)? * &ypow;
            ypow *= y;
        }
    }
    Ok(Polynomial::new(out))
}

/// Matrix of `E^y(partial_psi)`.
pub fn generalized_shift_operator(
    seq: &AdmissibleSequence,
    y: &Scalar,
    degree: usize,
) -> Result<OperatorMatrix> {
    let cols = (0..=degree)
        .map(|j| generalized_shift(seq, &Polynomial::monomial(j), y))
        .collect::<Result<Vec<_>>>()?;
    Ok(OperatorMatrix::from_columns(cols, degree))
}

/// Pincherle derivative `T' = T xhat - xhat T`. Reliable on degrees `<= N - 1`.
pub fn pincherle_derivative(t: &OperatorMatrix, xhat: &OperatorMatrix) -> Result<OperatorMatrix> {
    Ok(&t.try_compose(xhat)? - &xhat.try_compose(t)?)
}

/// Checks `Q p_n = n_psi p_{n-1}` for `1 <= n <= N`.
pub fn check_basic(
    q: &OperatorMatrix,
    basic: &SequenceTable,
    seq: &AdmissibleSequence,
) -> Result<()> {
    if q.degree() != basic.working_degree() {
        return Err(Error::DegreeMismatch {
            left: q.degree(),
            right: basic.working_degree(),
        });
    }
    if basic[0] != Polynomial::one() {
        return Err(Error::BasisMismatch { n: 0 });
    }
    for n in 1..=q.degree() {
        let lhs = q.apply(&basic[n]);
        let rhs = basic[n - 1].scale(&seq.n_psi(n)?);
        if lhs != rhs || !basic[n].constant_term().is_zero() {
            return Err(Error::BasisMismatch { n });
        }
    }
    Ok(())
}

/// The dual raising map `xhat_Q p_n = ((n+1)/(n+1)_psi) p_{n+1}` in the monomial basis.
pub fn dual_operator(
    q: &OperatorMatrix,
    basic: &SequenceTable,
    seq: &AdmissibleSequence,
) -> Result<OperatorMatrix> {
    check_basic(q, basic, seq)?;
    let n = basic.working_degree();
    let weights = (0..n)
        .map(|j| Ok(int(j as i64 + 1) / seq.n_psi(j + 1)?))
        .collect::<Result<Vec<_>>>()?;
    OperatorMatrix::raising_in_basis(basic, &weights)
}
