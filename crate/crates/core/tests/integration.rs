use umbral_core::error::Error;
use umbral_core::integration::*;
use umbral_core::operator::classical_derivative;
use umbral_core::poly::Polynomial;
use umbral_core::psi::AdmissibleSequence;
use umbral_core::psi::Family;
use umbral_core::report::Check;
use umbral_core::scalar::{int, ratio};

#[test]
fn integrate_examples() {
    let cl = IntegralOperator::new(IntegralKind::Psi(AdmissibleSequence::classical(6)), 6).unwrap();
    assert_eq!(
        cl.integrate(&Polynomial::monomial(2)).unwrap(),
        Polynomial::term(ratio(1, 3), 3)
    );
    let q = IntegralOperator::new(IntegralKind::Q { q: int(2) }, 6).unwrap();
    assert_eq!(
        q.integrate(&Polynomial::x()).unwrap(),
        Polynomial::term(ratio(1, 3), 2)
    );
    let fib = AdmissibleSequence::new(Family::Fibonacci, 6).unwrap();
    let f = IntegralOperator::new(IntegralKind::Psi(fib), 6).unwrap();
    assert_eq!(
        f.integrate(&Polynomial::monomial(4)).unwrap(),
        Polynomial::term(ratio(1, 5), 5)
    );
}

#[test]
fn right_inverse_examples() {
    let n = 10;
    let cl = AdmissibleSequence::classical(n);
    let op = IntegralOperator::new(IntegralKind::Psi(cl.clone()), n).unwrap();
    assert!(
        verify_right_inverse(&op, &classical_derivative(n))
            .unwrap()
            .holds
    );

    let op = IntegralOperator::new(IntegralKind::Q { q: int(2) }, n).unwrap();
    let dq = umbral_core::operator::jackson_operator(&int(2), n).unwrap();
    let c = verify_right_inverse(&op, &dq).unwrap();
    assert_eq!(c, Check::pass_on(9));
    assert_eq!(
        verify_right_inverse(&op, &classical_derivative(n)),
        Err(Error::MismatchedPair)
    );

    let op = IntegralOperator::new(IntegralKind::Psi(cl), n).unwrap();
    let back = op.matrix().unwrap().compose(&classical_derivative(n));
    assert!(back.apply(&Polynomial::one()).is_zero());
}

#[test]
fn operator_forms_agree() {
    let n = 8;
    let kinds = [
        IntegralKind::Q { q: ratio(1, 3) },
        IntegralKind::R {
            r: vec![ratio(-1, 2), ratio(1, 2)],
            q: int(3),
        },
        IntegralKind::Psi(AdmissibleSequence::new(Family::Fibonacci, n + 1).unwrap()),
    ];
    for kind in kinds {
        let op = IntegralOperator::new(kind, n).unwrap();
        let m = op.matrix().unwrap();
        assert!(op.operator_form().unwrap().agrees_on(&m, n - 1));
        assert_eq!(
            op.differencer_operator_form().unwrap(),
            op.differencer().unwrap()
        );
    }
}

#[test]
fn q_integral_matches_psi_integral() {
    let n = 8;
    let q = ratio(2, 5);
    let a = IntegralOperator::new(IntegralKind::Q { q: q.clone() }, n).unwrap();
    let seq = AdmissibleSequence::new(Family::q(q), n).unwrap();
    let b = IntegralOperator::new(IntegralKind::Psi(seq), n).unwrap();
    assert_eq!(a.matrix().unwrap(), b.matrix().unwrap());
}

#[test]
fn divided_difference_series() {
    assert!(check_divided_difference_series(12).holds);
    let seq = AdmissibleSequence::new(Family::q(int(2)), 9).unwrap();
    assert!(verify_left_inverse_defect(&seq, 9).unwrap().holds);
}
