use umbral_core::error::Error;
use umbral_core::poly::Polynomial;
use umbral_core::psi::*;
use umbral_core::scalar::ratio;
use umbral_core::scalar::{self, int, one, zero};

fn q(num: i64, den: i64, n: usize) -> AdmissibleSequence {
    AdmissibleSequence::new(Family::q(ratio(num, den)), n).unwrap()
}

#[test]
fn n_psi_examples() {
    assert_eq!(AdmissibleSequence::classical(6).n_psi(5).unwrap(), int(5));
    // 1 + 2 + 4 + 8
    assert_eq!(q(2, 1, 6).n_psi(4).unwrap(), int(15));
    let fib = AdmissibleSequence::new(Family::Fibonacci, 6).unwrap();
    assert_eq!(fib.n_psi(5).unwrap(), int(5));
    let hyp = AdmissibleSequence::new(Family::Hyperbolic, 6).unwrap();
    assert_eq!(hyp.n_psi(3).unwrap(), int(30));
    assert_eq!(hyp.n_psi(0).unwrap(), zero());
}

#[test]
fn hyperbolic_values_match_psi_ratio() {
    // psi_n = 1/(2n)!, so n_psi = psi_{n-1}/psi_n = (2n)!/(2n-2)!.
    let hyp = AdmissibleSequence::new(Family::Hyperbolic, 8).unwrap();
    for n in 1..=8usize {
        let ratio = scalar::factorial(2 * n) / scalar::factorial(2 * n - 2);
        assert_eq!(hyp.n_psi(n).unwrap(), ratio);
    }
}

#[test]
fn factorial_and_binomial_examples() {
    assert_eq!(
        AdmissibleSequence::classical(6).factorial(4).unwrap(),
        int(24)
    );
    assert_eq!(q(2, 1, 6).factorial(3).unwrap(), int(21));
    let fib = AdmissibleSequence::new(Family::Fibonacci, 6).unwrap();
    assert_eq!(fib.factorial(5).unwrap(), int(30));
    assert_eq!(fib.factorial(0).unwrap(), one());

    assert_eq!(
        AdmissibleSequence::classical(6).binomial(4, 2).unwrap(),
        int(6)
    );
    assert_eq!(q(2, 1, 6).binomial(4, 2).unwrap(), int(35));
    assert_eq!(fib.binomial(5, 2).unwrap(), int(15));
    assert_eq!(fib.binomial(2, 3), Err(Error::IndexOrder { n: 2, k: 3 }));
}

#[test]
fn exp_coefficient_examples() {
    let c = AdmissibleSequence::classical(6)
        .exp_coefficients(3)
        .unwrap();
    assert_eq!(c, vec![one(), one(), ratio(1, 2), ratio(1, 6)]);
    let c = q(2, 1, 6).exp_coefficients(3).unwrap();
    assert_eq!(c, vec![one(), one(), ratio(1, 3), ratio(1, 21)]);
    let fib = AdmissibleSequence::new(Family::Fibonacci, 6).unwrap();
    let c = fib.exp_coefficients(4).unwrap();
    assert_eq!(c, vec![one(), one(), one(), ratio(1, 2), ratio(1, 6)]);
}

#[test]
fn hyperbolic_component_examples() {
    let cl = AdmissibleSequence::classical(6);
    let cosh = cl.hyperbolic_component(0, 2, &one(), 4).unwrap();
    assert_eq!(
        cosh,
        Polynomial::new(vec![one(), zero(), ratio(1, 2), zero(), ratio(1, 24)])
    );
    let h = q(2, 1, 6).hyperbolic_component(1, 3, &one(), 4).unwrap();
    assert_eq!(
        h,
        Polynomial::new(vec![zero(), one(), zero(), zero(), ratio(1, 315)])
    );
    assert_eq!(
        cl.hyperbolic_component(0, 1, &one(), 4),
        Err(Error::BadModulus(1))
    );
}

#[test]
fn degenerate_parameters_rejected() {
    assert!(matches!(
        AdmissibleSequence::new(Family::q(one()), 4),
        Err(Error::DegenerateFamily { .. })
    ));
    // q = -1 gives 2_q = 0.
    assert!(matches!(
        AdmissibleSequence::new(Family::q(int(-1)), 4),
        Err(Error::DegenerateFamily { index: 2, .. })
    ));
    let short = Family::Custom {
        values: vec![one(), int(2)],
    };
    assert!(matches!(
        AdmissibleSequence::new(short, 3),
        Err(Error::UndefinedIndex { index: 3, .. })
    ));
    let bad = Family::Recurrence {
        alphas: vec![int(2), one()],
        betas: vec![one(), one()],
    };
    assert!(matches!(
        AdmissibleSequence::new(bad, 3),
        Err(Error::BadParameter(_))
    ));
    assert!(AdmissibleSequence::classical(3).n_psi(4).is_err());
}

#[test]
fn recurrence_reproduces_q_family() {
    for qv in [ratio(2, 1), ratio(1, 2), ratio(-3, 5)] {
        let b = (&qv - one()).recip();
        let rec = Family::Recurrence {
            alphas: vec![qv.clone(), one()],
            betas: vec![b.clone(), -b],
        };
        let a = AdmissibleSequence::new(rec, 12).unwrap();
        let b = AdmissibleSequence::new(Family::q(qv), 12).unwrap();
        assert_eq!(a.values(), b.values());
    }
}

#[test]
fn r_series_with_q_polynomial_is_q_family() {
    // R(z) = (1 - z)/(1 - q) written out for q = 3: R(z) = -1/2 + z/2.
    let r = Family::RSeries {
        r: vec![ratio(-1, 2), ratio(1, 2)],
        q: int(3),
    };
    let a = AdmissibleSequence::new(r, 8).unwrap();
    let b = AdmissibleSequence::new(Family::q(int(3)), 8).unwrap();
    assert_eq!(a.values(), b.values());
}

#[test]
fn family_json_format() {
    let fam: Family =
        serde_json::from_str(r#"{"family":"custom","values":["1","3/2","-2"]}"#).unwrap();
    assert_eq!(
        fam,
        Family::Custom {
            values: vec![one(), ratio(3, 2), int(-2)]
        }
    );
    let text = serde_json::to_string(&Family::q(ratio(1, 2))).unwrap();
    assert_eq!(text, r#"{"family":"q_deformed","q":"1/2"}"#);
}
