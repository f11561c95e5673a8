//! The noncommutative product `f *_psi g = f(xhat_psi) g` and the Poisson
//! polynomials built from it.

use crate::error::{Error, Result};
use crate::operator::{apply_psi_derivative, xhat_psi_operator, OperatorMatrix};
use crate::poly::Polynomial;
use crate::psi::AdmissibleSequence;
use crate::report::Check;
use crate::scalar::{factorial, int, pow, Scalar};

#[derive(Clone, Debug)]
pub struct StarContext {
    pub seq: AdmissibleSequence,
    pub xhat: OperatorMatrix,
    n: usize,
}

impl StarContext {
    pub fn new(seq: &AdmissibleSequence, n: usize) -> Result<Self> {
        Ok(StarContext {
            seq: seq.clone(),
            xhat: xhat_psi_operator(seq, n)?,
            n,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// `f(xhat_psi) g`, dropping degrees above `N`.
    pub fn star_truncated(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        f.coeffs().iter().rev().fold(Polynomial::zero(), |acc, c| {
            self.xhat.apply(&acc) + g.scale(c)
        })
    }

    /// `f *_psi g`, defined when `deg f + deg g <= N`.
    pub fn star_product(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        if let (Some(a), Some(b)) = (f.degree(), g.degree()) {
            if a + b > self.n {
                return Err(Error::DegreeOverflow {
                    degree: a + b,
                    cap: self.n,
                });
            }
        }
        Ok(self.star_truncated(f, g))
    }

    /// `x^{n *_psi} = (n!/n_psi!) x^n`.
    pub fn star_power(&self, n: usize) -> Result<Polynomial> {
        Ok(Polynomial::term(factorial(n) / self.seq.factorial(n)?, n))
    }

    /// `f(xhat_psi)` as a matrix.
    pub fn of_xhat(&self, f: &Polynomial) -> OperatorMatrix {
        self.xhat.polynomial_in(f)
    }

    /// Truncated `exp_psi[alpha x]`.
    pub fn exp_psi(&self, alpha: &Scalar, truncation: usize) -> Result<Polynomial> {
        self.seq.exp_polynomial(alpha, truncation)
    }

    /// Truncated `exp[alpha x]`.
    pub fn exp_classical(&self, alpha: &Scalar, truncation: usize) -> Polynomial {
        Polynomial::new(
            (0..=truncation)
                .map(|k| pow(alpha, k as i64) / factorial(k))
                .collect(),
        )
    }

    /// `p_m = ((lambda x)^m / m!) *_psi exp_psi[-lambda x]` for `m = 0..=m_max`,
    /// with the exponential cut at degree `N - m`.
    pub fn poisson_polynomials(&self, lambda: &Scalar, m_max: usize) -> Result<Vec<Polynomial>> {
        if m_max > self.n {
            return Err(Error::DegreeOverflow {
                degree: m_max,
                cap: self.n,
            });
        }
        (0..=m_max)
            .map(|m| {
                let prefactor = Polynomial::term(pow(lambda, m as i64) / factorial(m), m);
                let e = self.exp_psi(&-lambda, self.n - m)?;
                self.star_product(&prefactor, &e)
            })
            .collect()
    }

    /// `N(lambda, x) = exp[lambda x] *_psi exp_psi[-lambda x]`, truncated at `N`.
    pub fn poisson_normalization(&self, lambda: &Scalar) -> Result<Polynomial> {
        let e = self.exp_psi(&-lambda, self.n)?;
        Ok(self.star_truncated(&self.exp_classical(lambda, self.n), &e))
    }
}

fn diff_witness(label: &str, a: &Polynomial, b: &Polynomial) -> Option<String> {
    a.first_difference(b).map(|d| {
        format!(
            "{label}: coefficient of x^{d} differs ({} vs {})",
            a.coeff(d),
            b.coeff(d)
        )
    })
}

/// `partial_psi x^{n*} = n x^{(n-1)*}` for `1 <= n <= N`.
pub fn check_power_rule(ctx: &StarContext) -> Result<Check> {
    for n in 1..=ctx.degree() {
        let lhs = apply_psi_derivative(&ctx.seq, &ctx.star_power(n)?)?;
        let rhs = ctx.star_power(n - 1)?.scale(&int(n as i64));
        if let Some(w) = diff_witness(&format!("n = {n}"), &lhs, &rhs) {
            return Ok(Check::fail(w));
        }
    }
    Ok(Check::pass())
}

/// `exp_psi[alpha x] = exp{alpha xhat_psi} 1` to degree `N`.
pub fn check_exp_representation(ctx: &StarContext, alpha: &Scalar) -> Result<Check> {
    let lhs = ctx.exp_psi(alpha, ctx.degree())?;
    let rhs = ctx
        .xhat
        .exp_truncated(alpha, ctx.degree())
        .apply(&Polynomial::one());
    Ok(Check::from_witness(diff_witness("exp", &lhs, &rhs)))
}

/// `exp[alpha x] *_psi exp_psi[beta x] = exp_psi[(alpha + beta) x]` to degree `N`.
pub fn check_exp_addition(ctx: &StarContext, alpha: &Scalar, beta: &Scalar) -> Result<Check> {
    let n = ctx.degree();
    let lhs = ctx.star_truncated(&ctx.exp_classical(alpha, n), &ctx.exp_psi(beta, n)?);
    let rhs = ctx.exp_psi(&(alpha + beta), n)?;
    Ok(Check::from_witness(diff_witness("sum", &lhs, &rhs)))
}

/// The same with the inner factor read literally as `exp_psi{beta xhat_psi} 1`
/// and the right side as `exp_psi{(alpha + beta) xhat_psi} 1`.
pub fn check_exp_addition_literal(
    ctx: &StarContext,
    alpha: &Scalar,
    beta: &Scalar,
) -> Result<Check> {
    let n = ctx.degree();
    let one_poly = Polynomial::one();
    let inner = ctx.of_xhat(&ctx.exp_psi(beta, n)?).apply(&one_poly);
    let lhs = ctx.star_truncated(&ctx.exp_classical(alpha, n), &inner);
    let rhs = ctx
        .of_xhat(&ctx.exp_psi(&(alpha + beta), n)?)
        .apply(&one_poly);
    Ok(Check::from_witness(diff_witness("literal sum", &lhs, &rhs)))
}

/// `partial_psi (f *_psi g) = (D f) *_psi g + f *_psi (partial_psi g)`.
pub fn check_product_rule(ctx: &StarContext, f: &Polynomial, g: &Polynomial) -> Result<Check> {
    let lhs = apply_psi_derivative(&ctx.seq, &ctx.star_product(f, g)?)?;
    let rhs = ctx.star_product(&f.derivative(), g)?
        + ctx.star_product(f, &apply_psi_derivative(&ctx.seq, g)?)?;
    Ok(Check::from_witness(diff_witness(
        "product rule",
        &lhs,
        &rhs,
    )))
}

/// `f(xhat) g(xhat) 1 = f(x) *_psi g~` with `g~ = g(xhat) 1`.
pub fn check_substitution(ctx: &StarContext, f: &Polynomial, g: &Polynomial) -> Result<Check> {
    let one_poly = Polynomial::one();
    let lhs = ctx.of_xhat(f).compose(&ctx.of_xhat(g)).apply(&one_poly);
    let g_tilde = ctx.of_xhat(g).apply(&one_poly);
    let rhs = ctx.star_truncated(f, &g_tilde);
    Ok(Check::from_witness(diff_witness(
        "substitution",
        &lhs,
        &rhs,
    )))
}

/// `[partial_psi, xhat^n] = n xhat^{n-1}` on degrees `<= N - n`, and
/// `[partial_psi, f(xhat)] 1 = partial_psi (f(xhat) 1)`.
pub fn check_pincherle_derivation(ctx: &StarContext, f: &Polynomial) -> Result<Check> {
    let n = ctx.degree();
    let d = crate::operator::psi_derivative_operator(&ctx.seq, n)?;
    for k in 1..=n {
        let lhs = d.commutator(&ctx.xhat.pow(k));
        let rhs = ctx.xhat.pow(k - 1).scale(&int(k as i64));
        if let Some(j) = lhs.first_difference(&rhs, n - k) {
            return Ok(Check::fail(format!("power {k}: column {j}")));
        }
    }
    let one_poly = Polynomial::one();
    let fx = ctx.of_xhat(f);
    let lhs = d.commutator(&fx).apply(&one_poly);
    let rhs = apply_psi_derivative(&ctx.seq, &fx.apply(&one_poly))?;
    if let Some(w) = diff_witness("applied to 1", &lhs, &rhs) {
        return Ok(Check::fail(w));
    }
    Ok(Check::pass_on(n - 1))
}

/// `x^{n*} *_psi x^{k*} = (n!/n_psi!) x^{(n+k)*}`, and whether the two orders differ.
pub fn check_power_products(ctx: &StarContext, n: usize, k: usize) -> Result<(Check, bool)> {
    let a = ctx.star_product(&ctx.star_power(n)?, &ctx.star_power(k)?)?;
    let b = ctx.star_product(&ctx.star_power(k)?, &ctx.star_power(n)?)?;
    let expected = ctx
        .star_power(n + k)?
        .scale(&(factorial(n) / ctx.seq.factorial(n)?));
    Ok((
        Check::from_witness(diff_witness("left power", &a, &expected)),
        a != b,
    ))
}

/// `partial_psi p_m + lambda p_m = lambda p_{m-1}` (and `partial_psi p_0 = -lambda p_0`)
/// on degrees `<= N - m - 1`.
pub fn check_poisson_system(ctx: &StarContext, lambda: &Scalar, m_max: usize) -> Result<Check> {
    let p = ctx.poisson_polynomials(lambda, m_max)?;
    let n = ctx.degree();
    let mut window = n;
    for m in 0..=m_max {
        if m + 1 > n {
            break;
        }
        let w = n - m - 1;
        window = window.min(w);
        let lhs = apply_psi_derivative(&ctx.seq, &p[m])? + p[m].scale(lambda);
        let rhs = if m == 0 {
            Polynomial::zero()
        } else {
            p[m - 1].scale(lambda)
        };
        if let Some(wit) = diff_witness(&format!("m = {m}"), &lhs.truncate(w), &rhs.truncate(w)) {
            return Ok(Check::fail(wit));
        }
    }
    Ok(Check::pass_on(window))
}

/// `p_m = pi_m(xhat_psi) 1` with `pi_m(u) = ((lambda u)^m/m!) E(-lambda u)`, where
/// `E` is the ordinary exponential when `literal` is false and `exp_psi` otherwise.
pub fn check_poisson_operator_form(
    ctx: &StarContext,
    lambda: &Scalar,
    m_max: usize,
    literal: bool,
) -> Result<Check> {
    let n = ctx.degree();
    let p = ctx.poisson_polynomials(lambda, m_max)?;
    for m in 0..=m_max {
        let prefactor = Polynomial::term(pow(lambda, m as i64) / factorial(m), m);
        let e = if literal {
            ctx.exp_psi(&-lambda, n - m)?
        } else {
            ctx.exp_classical(&-lambda, n - m)
        };
        let pi = ctx.of_xhat(&prefactor.multiply(&e));
        let rhs = pi.apply(&Polynomial::one());
        if let Some(w) = diff_witness(&format!("m = {m}"), &p[m], &rhs) {
            return Ok(Check::fail(w));
        }
    }
    Ok(Check::pass())
}

/// `x *_psi 1 = x / 1_psi` and `alpha *_psi f = alpha f`.
pub fn check_scalar_rules(ctx: &StarContext, alpha: &Scalar, f: &Polynomial) -> Result<Check> {
    let lhs = ctx.star_product(&Polynomial::x(), &Polynomial::one())?;
    let rhs = Polynomial::x().scale(&ctx.seq.n_psi(1)?.recip());
    if let Some(w) = diff_witness("x * 1", &lhs, &rhs) {
        return Ok(Check::fail(w));
    }
    let lhs = ctx.star_product(&Polynomial::constant(alpha.clone()), f)?;
    Ok(Check::from_witness(diff_witness(
        "alpha * f",
        &lhs,
        &f.scale(alpha),
    )))
}
