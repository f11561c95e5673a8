use umbral_core::expansion::*;
use umbral_core::operator::OperatorMatrix;
use umbral_core::operator::{
    classical_derivative, forward_difference, multiplication_x, psi_derivative_operator,
    xhat_psi_operator,
};
use umbral_core::poly::Polynomial;
use umbral_core::psi::AdmissibleSequence;
use umbral_core::psi::Family;
use umbral_core::scalar::{factorial, int};

#[test]
fn identity_expands_to_one() {
    let seq = AdmissibleSequence::new(Family::Fibonacci, 6).unwrap();
    let d = psi_derivative_operator(&seq, 6).unwrap();
    for mode in [RaiserMode::Multiplication, RaiserMode::Dual(&seq)] {
        let c = expand_in_dual_pair(&OperatorMatrix::identity(6), &d, mode).unwrap();
        assert_eq!(c[0], Polynomial::one());
        assert!(c[1..].iter().all(|p| p.is_zero()));
    }
}

#[test]
fn number_operator_expansion() {
    let n = 6;
    let d = classical_derivative(n);
    let t = multiplication_x(n).compose(&d);
    let c = expand_in_dual_pair(&t, &d, RaiserMode::Multiplication).unwrap();
    assert!(c[0].is_zero());
    assert_eq!(c[1], Polynomial::x());
    assert!(c[2..].iter().all(|p| p.is_zero()));
}

#[test]
fn forward_difference_in_derivatives() {
    let n = 8;
    let d = classical_derivative(n);
    let c = expand_in_dual_pair(&forward_difference(n), &d, RaiserMode::Multiplication).unwrap();
    assert!(c[0].is_zero());
    for (k, p) in c.iter().enumerate().skip(1) {
        assert_eq!(*p, Polynomial::constant(factorial(k).recip()));
    }
}

#[test]
fn reassembly_in_both_modes() {
    let n = 6;
    let seq = AdmissibleSequence::new(Family::q(int(2)), n).unwrap();
    let q = forward_difference(n);
    let t = &xhat_psi_operator(&seq, n).unwrap().compose(&q) + &q.pow(2);
    let cl = AdmissibleSequence::classical(n);
    for mode in [RaiserMode::Multiplication, RaiserMode::Dual(&cl)] {
        let c = expand_in_dual_pair(&t, &q, mode).unwrap();
        assert_eq!(reassemble(&c, &q, mode).unwrap(), t);
    }
}

#[test]
fn indicator_examples() {
    let n = 6;
    let seq = AdmissibleSequence::new(Family::q(int(2)), n).unwrap();
    let d = psi_derivative_operator(&seq, n).unwrap();
    let ind = indicator(&d, &d, n).unwrap();
    assert!(ind.conjugation_holds());
    assert_eq!(ind.coefficients[1], Polynomial::one());
    let ind = indicator(&OperatorMatrix::identity(n), &d, n).unwrap();
    assert_eq!(ind.coefficients[0], Polynomial::one());
    let cl = AdmissibleSequence::classical(n + 1);
    let x = xhat_psi_operator(&cl, n).unwrap();
    let dc = classical_derivative(n);
    let ind = indicator(&x.compose(&dc), &dc, n).unwrap();
    assert!(ind.conjugation_holds());
    assert_eq!(ind.coefficients[1], Polynomial::x());
}
