use umbral_core::error::Error;
use umbral_core::psi::AdmissibleSequence;
use umbral_core::scalar::ratio;
use umbral_core::scalar::{int, zero, Scalar};
use umbral_core::series::*;

#[test]
fn geometric_inverse() {
    let s = DeltaSeries::from_ints(&[1, -1], 6);
    let inv = s.multiplicative_inverse().unwrap();
    assert_eq!(inv, DeltaSeries::from_ints(&[1; 7], 6));
    assert_eq!(
        DeltaSeries::t(4).multiplicative_inverse(),
        Err(Error::NotInvertible)
    );
}

#[test]
fn compositional_inverse_examples() {
    assert_eq!(
        DeltaSeries::t(5).compositional_inverse().unwrap(),
        DeltaSeries::t(5)
    );
    let f = DeltaSeries::from_ints(&[0, 1, 1], 4);
    assert_eq!(
        f.compositional_inverse().unwrap(),
        DeltaSeries::from_ints(&[0, 1, -1, 2, -5], 4)
    );
    assert_eq!(
        DeltaSeries::from_ints(&[1, 1], 4).compositional_inverse(),
        Err(Error::NotDelta)
    );
}

#[test]
fn log_exp_round_trip() {
    let s = DeltaSeries::new(vec![int(3), ratio(1, 2), int(-2), ratio(5, 7)], 8);
    let log = s.formal_log_nonconstant().unwrap();
    let back = log.exp_nonconstant().unwrap().scale(&int(3));
    assert_eq!(back, s);
}

#[test]
fn exp_of_t_inverts_log_of_one_plus_t() {
    let log = DeltaSeries::from_ints(&[1, 1], 6)
        .formal_log_nonconstant()
        .unwrap();
    let expected: Vec<Scalar> = (0..=6)
        .map(|k| match k {
            0 => zero(),
            _ => {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                ratio(sign, k as i64)
            }
        })
        .collect();
    assert_eq!(log, DeltaSeries::new(expected, 6));
}

#[test]
fn realize_psi_matches_matrix_powers() {
    use umbral_core::operator::psi_derivative_operator;
    use umbral_core::psi::Family;
    let seq = AdmissibleSequence::new(Family::q(int(2)), 6).unwrap();
    let s = DeltaSeries::new(vec![int(2), zero(), ratio(1, 3), int(-1)], 6);
    let d = psi_derivative_operator(&seq, 6).unwrap();
    assert_eq!(s.realize_psi(&seq, 6).unwrap(), s.realize(&d));
}
