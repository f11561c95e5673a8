use umbral_core::config::*;
use umbral_core::error::Error;
use umbral_core::operator::{classical_derivative, dxd_operator, jackson_operator, OperatorMatrix};
use umbral_core::psi::Family;
use umbral_core::scalar::{int, ratio};
use umbral_core::verify::Suite;

#[test]
fn short_family_literals() {
    assert_eq!(parse_family("q:1/2").unwrap(), Family::q(ratio(1, 2)));
    assert_eq!(parse_family("classical").unwrap(), Family::Classical);
    assert!(matches!(
        parse_family("q:1"),
        Err(Error::DegenerateFamily { .. })
    ));
    assert!(parse_family("bogus").is_err());
    assert_eq!(
        parse_family("custom:1, 3/2").unwrap(),
        Family::Custom {
            values: vec![int(1), ratio(3, 2)]
        }
    );
}

#[test]
fn config_round_trip() {
    let text = r#"{
        "families": ["q:2", {"family": "fibonacci"}],
        "degree": 6,
        "operator": {"series": ["0", "1", "1"]},
        "s": ["1", "1"],
        "suites": ["ghw"]
    }"#;
    let cfg = RunConfig::from_json(text).unwrap();
    let r = cfg.resolve(None, None).unwrap();
    assert_eq!(r.families, vec![Family::q(int(2)), Family::Fibonacci]);
    assert_eq!(r.suites, vec![Suite::Ghw]);
    let op = r.operator.as_ref().unwrap().resolve(r.family(), 6).unwrap();
    assert_eq!(op.degree(), 6);
    let back: RunConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
    assert_eq!(back, cfg);
}

#[test]
fn builtin_operators() {
    let f = Family::Classical;
    assert_eq!(
        OperatorSpec::Builtin("DxD".into()).resolve(&f, 4).unwrap(),
        dxd_operator(4)
    );
    assert_eq!(
        OperatorSpec::Builtin("jackson(2)".into())
            .resolve(&f, 4)
            .unwrap(),
        jackson_operator(&int(2), 4).unwrap()
    );
    assert!(OperatorSpec::Builtin("nope".into()).resolve(&f, 4).is_err());
    let cols = OperatorSpec::Columns {
        columns: vec!["0".into(), "1".into(), "2*x".into()],
    };
    assert_eq!(cols.resolve(&f, 2).unwrap(), classical_derivative(2));
}

#[test]
fn rejects_bad_configs() {
    assert!(RunConfig::from_json(r#"{"degree": 1}"#)
        .unwrap()
        .resolve(None, None)
        .is_err());
    assert!(RunConfig::from_json(r#"{"familes": []}"#).is_err());
    let bad = RunConfig::from_json(r#"{"families": ["q:1"]}"#).unwrap();
    assert!(matches!(
        bad.resolve(None, None),
        Err(Error::DegenerateFamily { .. })
    ));
}

#[test]
fn operator_literals_from_strings() {
    let s: OperatorSpec = "series:0, 1, 1".parse().unwrap();
    assert_eq!(
        s,
        OperatorSpec::Series {
            series: vec!["0".into(), "1".into(), "1".into()],
            family: None
        }
    );
    let c: OperatorSpec = "columns:0;1;2*x".parse().unwrap();
    assert_eq!(
        c.resolve(&Family::Classical, 2).unwrap(),
        classical_derivative(2)
    );
    let j: OperatorSpec = r#"{"columns": ["0", "1", "2*x"]}"#.parse().unwrap();
    assert_eq!(j, c);
    assert_eq!(
        "DxD".parse::<OperatorSpec>().unwrap(),
        OperatorSpec::Builtin("DxD".into())
    );
    assert_eq!(
        OperatorSpec::Builtin("id".into())
            .resolve(&Family::Classical, 3)
            .unwrap(),
        OperatorMatrix::identity(3)
    );
}
