mod common;

use ascheme::chartable::character_table;
use ascheme::classify::classify;
use ascheme::closed::enumerate_closed_subsets;
use ascheme::corpus::fano_flag_scheme;
use ascheme::io::{
    format_character_table, parse_group, parse_scheme, serialize_group, serialize_scheme, transcribe_bare_matrix,
    ReportDocument,
};
use ascheme::{Scheme, SchemeError};
use common::{group, sample_schemes};
use proptest::prelude::*;

fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

#[test]
fn scheme_text_examples() {
    assert_eq!(parse_scheme("2 2\n0 1\n1 0").unwrap(), Scheme::complete(2));
    let err = parse_scheme("2 2\n0 1\n0 1").unwrap_err();
    assert!(matches!(err, SchemeError::NotAPartition(_)), "{err:?}");
}

#[test]
fn bundled_fixtures_parse() {
    let s = parse_scheme(&fixture("as21_19.scm")).unwrap();
    assert_eq!((s.n(), s.rank()), (21, 6));
    assert_eq!(s, fano_flag_scheme());
    assert_eq!(parse_scheme(&fixture("trivial2.scm")).unwrap(), Scheme::complete(2));
    assert_eq!(parse_group(&fixture("s3.grp")).unwrap().order(), 6);
}

#[test]
fn golden_tables() {
    let t = character_table(&fano_flag_scheme()).unwrap();
    assert_eq!(format_character_table(&t), fixture("as21_19.chartable"));
}

#[test]
fn group_text_examples() {
    let c2 = parse_group("2\n0 1\n1 0").unwrap();
    assert_eq!(c2.order(), 2);
    assert!(c2.is_abelian());
    let err = parse_group("2\n0 1\n1 1").unwrap_err();
    assert!(matches!(err, SchemeError::NotAGroup(_)), "{err:?}");
    let a4 = group("A4");
    assert_eq!(parse_group(&serialize_group(&a4)).unwrap(), a4);
}

#[test]
fn transcribed_matrix_parses() {
    let text = transcribe_bare_matrix("0 1 1\n1 0 1\n1 1 0\n").unwrap();
    assert_eq!(parse_scheme(&text).unwrap(), Scheme::complete(3));
}

#[test]
fn report_documents_round_trip() {
    let s = fano_flag_scheme();
    let doc = ReportDocument::new(&s)
        .with_table(&character_table(&s).unwrap())
        .with_subsets(enumerate_closed_subsets(&s).unwrap())
        .with_classification(classify(&s).unwrap());
    let json = doc.to_json();
    let back = ReportDocument::from_json(&json).unwrap();
    assert_eq!(back.to_json(), json);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialize_then_parse_is_identity(i in 0..sample_schemes().len()) {
        let s = &sample_schemes()[i];
        let text = serialize_scheme(s);
        let back = parse_scheme(&text).unwrap();
        prop_assert_eq!(&back, s);
        prop_assert_eq!(serialize_scheme(&back), text);
    }
}
