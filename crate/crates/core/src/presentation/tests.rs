use super::*;

const OMEGA2: &str = "
// Omega(2) over GF(2)
algebra Omega2 over GF(2) {
  vertices c, b;
  arrows {
    a: c -> c;
    b1: c -> b;
    b2: b -> c;
  }
  relations {
    a*b1*b2 + b1*b2*a = 0;
    a*a = a*b1*b2;
    b2*b1 = 0;
  }
}";

#[test]
fn parses_trivial_algebra() {
    let p = parse_presentation("algebra One over GF(2) { vertices v; arrows {} relations {} }")
        .unwrap();
    assert_eq!(p.quiver.vertices.len(), 1);
    assert!(p.quiver.arrows.is_empty());
    assert!(p.relations.is_empty());
}

#[test]
fn parses_omega2() {
    let p = parse_presentation(OMEGA2).unwrap();
    assert_eq!(p.quiver.vertices, vec!["c", "b"]);
    assert_eq!(p.quiver.arrows.len(), 3);
    assert_eq!(p.relations.len(), 3);
    assert!(validate(&p).is_empty());
    // a*a = a*b1*b2 normalizes to a*a - a*b1*b2 = 0 (two terms)
    assert_eq!(p.relations[1].terms.len(), 2);
}

#[test]
fn non_composable_path() {
    let text = "algebra X over GF(2) { vertices c, b; arrows { a: c -> c; b1: c -> b; b2: b -> c; }
                relations { b1*a = 0; } }";
    let err = parse_presentation(text).unwrap_err();
    match err {
        Error::Presentation(d) => {
            assert_eq!(d.code, DiagnosticCode::NonComposablePath);
            assert_eq!(d.location, Some(Location { line: 2, col: 32 }));
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn syntax_error_has_position() {
    let err = parse_presentation("algebra X over GF(2) { vertices v arrows {} relations {} }")
        .unwrap_err();
    match err {
        Error::Syntax { line, col, .. } => assert_eq!((line, col), (1, 35)),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn unknown_names() {
    let text = "algebra X over GF(2) { vertices c; arrows { a: c -> d; } relations {} }";
    let diags = diagnose(text, ParseOptions::default());
    assert_eq!(diags[0].code, DiagnosticCode::UnknownName);

    let text = "algebra X over GF(2) { vertices c; arrows { a: c -> c; } relations { a*z; } }";
    let diags = diagnose(text, ParseOptions::default());
    assert_eq!(diags[0].code, DiagnosticCode::UnknownName);
}

#[test]
fn duplicate_arrow_name() {
    let text = "algebra X over GF(2) { vertices c; arrows { a: c -> c; a: c -> c; } relations {} }";
    let codes: Vec<_> = diagnose(text, ParseOptions::default())
        .into_iter()
        .map(|d| d.code)
        .collect();
    assert_eq!(codes, vec![DiagnosticCode::DuplicateName]);
}

#[test]
fn non_parallel_relation() {
    let text = "algebra X over GF(2) { vertices c, b; arrows { a: c -> c; b1: c -> b; b2: b -> c; }
                relations { a*a + a*b1 = 0; } }";
    let codes: Vec<_> = diagnose(text, ParseOptions::default())
        .into_iter()
        .map(|d| d.code)
        .collect();
    assert_eq!(codes, vec![DiagnosticCode::NonParallelRelation]);
}

#[test]
fn non_admissible_relation() {
    let text = "algebra X over GF(2) { vertices c; arrows { a: c -> c; } relations { a = a*a; } }";
    let diags = diagnose(text, ParseOptions::default());
    assert_eq!(diags[0].code, DiagnosticCode::NonAdmissibleRelation);
    let text = "algebra X over GF(2) { vertices c; arrows { a: c -> c; } relations { e_c = a*a; } }";
    let diags = diagnose(text, ParseOptions::default());
    assert_eq!(diags[0].code, DiagnosticCode::NonAdmissibleRelation);
}

#[test]
fn bad_field() {
    let diags = diagnose(
        "algebra X over GF(6) { vertices c; arrows {} relations {} }",
        ParseOptions::default(),
    );
    assert_eq!(diags[0].code, DiagnosticCode::BadField);
    let diags = diagnose(
        "algebra X over GF(2^2, x^2+1) { vertices c; arrows {} relations {} }",
        ParseOptions::default(),
    );
    assert_eq!(diags[0].code, DiagnosticCode::BadField);
}

#[test]
fn disconnected_requires_flag() {
    let text = "algebra X over GF(2) { vertices u, v; arrows {} relations {} }";
    assert_eq!(
        diagnose(text, ParseOptions::default())[0].code,
        DiagnosticCode::Disconnected
    );
    assert!(parse_presentation_with(
        text,
        ParseOptions {
            allow_disconnected: true
        }
    )
    .is_ok());
}

#[test]
fn coefficients_reduce_mod_p() {
    let text = "algebra X over GF(3) { vertices c; arrows { a: c -> c; b: c -> c; }
                relations { 4*a*b - 2*b*a = 0; } }";
    let p = parse_presentation(text).unwrap();
    // 4 = 1 and -2 = 1 in GF(3)
    let terms = &p.relations[0].terms;
    assert!(terms.iter().all(|(c, _)| *c == 1));
}

#[test]
fn extension_field_coefficients() {
    let text = "algebra X over GF(2^2, x^2+x+1) { vertices c; arrows { a: c -> c; }
                relations { (t+1)*a*a*a = 0; } }";
    let p = parse_presentation(text).unwrap();
    let f = &p.field;
    assert_eq!(p.relations[0].terms[0].0, f.add(f.generator(), 1));
    let again = parse_presentation(&p.emit()).unwrap();
    assert_eq!(again, {
        let mut q = p.clone();
        q.relations[0].location = again.relations[0].location;
        q
    });
}

#[test]
fn cancelling_relation_is_rejected() {
    let text = "algebra X over GF(2) { vertices c; arrows { a: c -> c; } relations { a*a = a*a; } }";
    assert_eq!(
        diagnose(text, ParseOptions::default())[0].code,
        DiagnosticCode::EmptyRelation
    );
}

#[test]
fn emit_round_trip() {
    let p = parse_presentation(OMEGA2).unwrap();
    let text = p.emit();
    let q = parse_presentation(&text).unwrap();
    assert_eq!(p.quiver, q.quiver);
    let strip = |p: &Presentation| -> Vec<_> { p.relations.iter().map(|r| r.terms.clone()).collect() };
    assert_eq!(strip(&p), strip(&q));
    assert_eq!(p.field, q.field);
}

#[test]
fn element_expressions() {
    let p = parse_presentation(OMEGA2).unwrap();
    let e = p.parse_element("e_c + a*b1 - b1*b2").unwrap();
    assert_eq!(e.len(), 3);
    let one = p.parse_element("1").unwrap();
    assert_eq!(one, vec![(1, PathWord::Trivial(0)), (1, PathWord::Trivial(1))]);
    assert!(p.parse_element("b1*a").is_err());
    assert!(p.parse_element("0").unwrap().is_empty());
}

#[test]
fn arrow_permutation_preserves_validity() {
    let p = parse_presentation(OMEGA2).unwrap();
    let q = p.with_arrow_order(&[2, 0, 1]);
    assert!(validate(&q).is_empty());
    assert_eq!(q.quiver.arrows[0].name, "b2");
}
