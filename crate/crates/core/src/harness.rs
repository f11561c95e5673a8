//! Operator identities of the generalized Heisenberg-Weyl algebra and of
//! dual pairs `{Q, xhat_Q}`, evaluated as exact matrix equalities.

use num::Zero;

use crate::error::Result;
use crate::operator::{
    apply_psi_derivative, classical_derivative, forward_difference, generalized_shift,
    psi_derivative_operator, xhat_psi_operator, OperatorMatrix,
};
use crate::poly::{Polynomial, SequenceTable};
use crate::psi::AdmissibleSequence;
use crate::report::Check;
use crate::scalar::{factorial, int, one, Scalar};

/// `lhs = rhs` on columns `0..=window`; the witness is the lowest failing degree.
pub fn windowed(lhs: &OperatorMatrix, rhs: &OperatorMatrix, window: usize) -> Check {
    match lhs.first_difference(rhs, window) {
        None => Check::pass_on(window),
        Some(j) => Check::fail(format!("x^{j}: {} vs {}", lhs.column(j), rhs.column(j))),
    }
}

fn binom(n: usize, k: usize) -> Scalar {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `[partial_psi, xhat_psi] = id` on degrees `<= N - 1`.
pub fn check_ghw(seq: &AdmissibleSequence, degree: usize) -> Result<Check> {
    let d = psi_derivative_operator(seq, degree)?;
    let x = xhat_psi_operator(seq, degree)?;
    Ok(windowed(
        &d.commutator(&x),
        &OperatorMatrix::identity(degree),
        degree - 1,
    ))
}

/// `d^n x^m = sum_k C(n,k) C(m,k) k! x^{m-k} d^{n-k}` for the pair
/// `(partial_psi, xhat_psi)`, on degrees `<= N - max(n, m)`.
pub fn check_leibnitz(
    seq: &AdmissibleSequence,
    degree: usize,
    n: usize,
    m: usize,
) -> Result<Check> {
    let d = psi_derivative_operator(seq, degree)?;
    let x = xhat_psi_operator(seq, degree)?;
    let lhs = d.pow(n).compose(&x.pow(m));
    let mut rhs = OperatorMatrix::zero(degree);
    for k in 0..=n.min(m) {
        let c = binom(n, k) * binom(m, k) * factorial(k);
        rhs = &rhs + &x.pow(m - k).compose(&d.pow(n - k)).scale(&c);
    }
    Ok(windowed(&lhs, &rhs, degree.saturating_sub(n.max(m))))
}

/// `exp(t d) exp(a x) = exp(a t) exp(a x) exp(t d)`, coefficient of `t^i a^j`
/// for every `i + j <= order`.
pub fn check_exp_commutation(
    seq: &AdmissibleSequence,
    degree: usize,
    order: usize,
) -> Result<Check> {
    let d = psi_derivative_operator(seq, degree)?;
    let x = xhat_psi_operator(seq, degree)?;
    let dp: Vec<OperatorMatrix> = (0..=order).map(|i| d.pow(i)).collect();
    let xp: Vec<OperatorMatrix> = (0..=order).map(|j| x.pow(j)).collect();
    let mut out = Check::pass();
    for i in 0..=order {
        for j in 0..=order - i {
            let lhs = dp[i]
                .compose(&xp[j])
                .scale(&(factorial(i) * factorial(j)).recip());
            let mut rhs = OperatorMatrix::zero(degree);
            for k in 0..=i.min(j) {
                let c = (factorial(k) * factorial(i - k) * factorial(j - k)).recip();
                rhs = &rhs + &xp[j - k].compose(&dp[i - k]).scale(&c);
            }
            let w = degree.saturating_sub(j);
            let c = windowed(&lhs, &rhs, w);
            if !c.holds {
                return Ok(Check::fail(format!(
                    "t^{i} a^{j}, {}",
                    c.witness.unwrap_or_default()
                )));
            }
            out = out.and(c);
        }
    }
    Ok(out.with_window(degree.saturating_sub(order)))
}

/// `d_q(fg) = (d_q f) g + (Qhat f)(d_q g)` with `Qhat f(x) = f(qx)`.
pub fn check_q_leibnitz(
    seq: &AdmissibleSequence,
    q: &Scalar,
    f: &Polynomial,
    g: &Polynomial,
) -> Result<Check> {
    let lhs = apply_psi_derivative(seq, &(f * g))?;
    let rhs =
        &(&apply_psi_derivative(seq, f)? * g) + &(&f.dilate(q) * &apply_psi_derivative(seq, g)?);
    Ok(if lhs == rhs {
        Check::pass()
    } else {
        Check::fail(format!("f = {f}, g = {g}"))
    })
}

/// `(d_0 p)(x) = (p(x) - p(0)) / x`.
pub fn divided_difference(p: &Polynomial) -> Polynomial {
    Polynomial::new(p.coeffs().iter().skip(1).cloned().collect())
}

/// `nhat_psi x^j = (j+1)_psi x^j`.
pub fn apply_nhat(seq: &AdmissibleSequence, p: &Polynomial) -> Result<Polynomial> {
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| Ok(c * seq.n_psi(j + 1)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::new(coeffs))
}

/// `d_psi(fg) = nhat_psi{(d_0 f) g + f(0) (d_0 g)}`.
pub fn check_psi_leibnitz(
    seq: &AdmissibleSequence,
    f: &Polynomial,
    g: &Polynomial,
) -> Result<Check> {
    let lhs = apply_psi_derivative(seq, &(f * g))?;
    let inner = &(&divided_difference(f) * g) + &divided_difference(g).scale(&f.constant_term());
    let rhs = apply_nhat(seq, &inner)?;
    Ok(if lhs == rhs {
        Check::pass()
    } else {
        Check::fail(format!("f = {f}, g = {g}"))
    })
}

/// `D = sum_k d_k/k! Delta^k` with `d_k = [D x^(k)](0)`, and
/// `Delta = sum_n delta_n/n! D^n` with `delta_n = [Delta x^n](0)`, on all degrees `<= N`.
/// Also checks `d_k = (-1)^{k-1} (k-1)!` and `delta_n = 1`.
pub fn check_closing_conversions(degree: usize) -> Check {
    let d = classical_derivative(degree);
    let delta = forward_difference(degree);
    let mut falling = Polynomial::one();
    let mut d_sum = OperatorMatrix::zero(degree);
    let mut delta_sum = OperatorMatrix::zero(degree);
    for k in 1..=degree {
        falling = &falling * &Polynomial::new(vec![-int(k as i64 - 1), one()]);
        let dk = falling.derivative().constant_term();
        let sign = if k % 2 == 1 { one() } else { -one() };
        if dk != sign * factorial(k - 1) {
            return Check::fail(format!("d_{k} = {dk}"));
        }
        let delta_k = delta.apply(&Polynomial::monomial(k)).constant_term();
        if delta_k != one() {
            return Check::fail(format!("delta_{k} = {delta_k}"));
        }
        d_sum = &d_sum + &delta.pow(k).scale(&(dk / factorial(k)));
        delta_sum = &delta_sum + &d.pow(k).scale(&(delta_k / factorial(k)));
    }
    windowed(&d_sum, &d, degree).and(windowed(&delta_sum, &delta, degree))
}

/// `(Q X Q)^n = Q^n X^n Q^n` on all degrees and `(X Q X)^n = X^n Q^n X^n` on
/// degrees `<= N - n`.
pub fn check_dual_powers(q: &OperatorMatrix, x: &OperatorMatrix, n: usize) -> Check {
    let degree = q.degree();
    let first = windowed(
        &q.compose(x).compose(q).pow(n),
        &q.pow(n).compose(&x.pow(n)).compose(&q.pow(n)),
        degree,
    );
    let second = windowed(
        &x.compose(q).compose(x).pow(n),
        &x.pow(n).compose(&q.pow(n)).compose(&x.pow(n)),
        degree.saturating_sub(n),
    );
    first.and(second)
}

/// Falling factorial `A (A - c_1) ... (A - c_{n-1})`.
pub fn falling_operator(a: &OperatorMatrix, shifts: &[Scalar]) -> OperatorMatrix {
    let degree = a.degree();
    let mut out = a.clone();
    for c in shifts {
        out = out.compose(&(a - &OperatorMatrix::scalar(c, degree)));
    }
    out
}

/// `X^n Q^n f(X) = (X Q)^{falling n} f(X)` on degrees `<= N - deg f`, with the
/// falling factorial taken over `1, ..., n-1` or over `1_psi, ..., (n-1)_psi`.
pub fn check_falling_identity(
    q: &OperatorMatrix,
    x: &OperatorMatrix,
    n: usize,
    f: &Polynomial,
    psi: Option<&AdmissibleSequence>,
) -> Result<Check> {
    let degree = q.degree();
    let fx = x.polynomial_in(f);
    let lhs = x.pow(n).compose(&q.pow(n)).compose(&fx);
    let shifts = (1..n)
        .map(|k| match psi {
            Some(seq) => seq.n_psi(k),
            None => Ok(int(k as i64)),
        })
        .collect::<Result<Vec<_>>>()?;
    let rhs = if n == 0 {
        fx
    } else {
        falling_operator(&x.compose(q), &shifts).compose(&fx)
    };
    let w = degree.saturating_sub(f.degree().unwrap_or(0));
    Ok(windowed(&lhs, &rhs, w))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AppellReading {
    /// `X sum_{m<=n} a_m(Q) X^m / m_psi! = a_n(Q) X^{n+1} / n_psi!`.
    Summed,
    /// `X a_n(Q) X^n / n_psi! = a_n(Q) X^{n+1} / n_psi!`.
    Termwise,
}

/// Both sides on degrees `<= N - n - 1`.
pub fn check_appell_identity(
    q: &OperatorMatrix,
    x: &OperatorMatrix,
    seq: &AdmissibleSequence,
    appell: &SequenceTable,
    n: usize,
    reading: AppellReading,
) -> Result<Check> {
    let degree = q.degree();
    let term = |m: usize| -> Result<OperatorMatrix> {
        Ok(q.polynomial_in(&appell[m])
            .compose(&x.pow(m))
            .scale(&seq.factorial(m)?.recip()))
    };
    let inner = match reading {
        AppellReading::Summed => {
            let mut s = OperatorMatrix::zero(degree);
            for m in 0..=n {
                s = &s + &term(m)?;
            }
            s
        }
        AppellReading::Termwise => term(n)?,
    };
    let lhs = x.compose(&inner);
    let rhs = q
        .polynomial_in(&appell[n])
        .compose(&x.pow(n + 1))
        .scale(&seq.factorial(n)?.recip());
    Ok(windowed(&lhs, &rhs, degree.saturating_sub(n + 1)))
}

/// `(1 +_psi (-1))^k = [E^{-1} x^k](1)` for `k = 0..=max`.
pub fn psi_unit_powers(seq: &AdmissibleSequence, max: usize) -> Result<Vec<Scalar>> {
    (0..=max)
        .map(|k| Ok(generalized_shift(seq, &Polynomial::monomial(k), &-one())?.evaluate(&one())))
        .collect()
}

/// Whether every even power `2n`, `1 <= n`, `2n <= max` vanishes.
pub fn check_even_unit_powers(seq: &AdmissibleSequence, max: usize) -> Result<Check> {
    let values = psi_unit_powers(seq, max)?;
    for k in (2..=max).step_by(2) {
        if !values[k].is_zero() {
            let check = Check::fail(format!("power {k}: {}", values[k]));
            return Ok(if k > 2 {
                check.with_window(k - 2)
            } else {
                check
            });
        }
    }
    Ok(Check::pass())
}
