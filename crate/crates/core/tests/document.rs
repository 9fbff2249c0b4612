use curvecover::document::{CurveDocument, DocumentError};
use curvecover::gallery::{self, catalogue};

#[test]
fn every_gallery_document_round_trips() {
    for entry in catalogue() {
        let doc = CurveDocument::from_action(&entry.action);
        let text = doc.to_json();
        let parsed = CurveDocument::from_json(&text).unwrap();
        assert_eq!(parsed, doc);
        let action = parsed
            .to_action()
            .unwrap_or_else(|e| panic!("{}: {e}", entry.name));
        assert_eq!(
            action, entry.action,
            "{} {:?}",
            entry.name, entry.parameters
        );
        assert_eq!(CurveDocument::from_action(&action).to_json(), text);
    }
}

#[test]
fn words_in_generators_are_accepted() {
    let action = gallery::hyperelliptic_step(2).unwrap();
    let mut doc = CurveDocument::from_action(&action);
    for entry in &mut doc.node_local {
        entry.element = if entry.element == "()" {
            "e".into()
        } else {
            "g0".into()
        };
    }
    for att in &mut doc.attestations {
        att.elements = vec!["g0^3".into()];
    }
    assert_eq!(doc.to_action().unwrap(), action);
}

#[test]
fn quotient_documents_reload() {
    for entry in catalogue() {
        let doc = CurveDocument::quotient_of(&entry.action).unwrap();
        let action = doc.to_action().unwrap();
        assert_eq!(action.group().order(), 1);
        assert_eq!(action.curve().arithmetic_genus(), entry.expected.genus_base);
    }
}

fn expect_field_error(doc: &CurveDocument, path_prefix: &str) {
    match doc.to_action() {
        Err(DocumentError::Field { path, .. }) => {
            assert!(
                path.starts_with(path_prefix),
                "{path} does not start with {path_prefix}"
            )
        }
        other => panic!("expected a field error at {path_prefix}, got {other:?}"),
    }
}

#[test]
fn semantic_errors_point_at_fields() {
    let base = CurveDocument::from_action(&gallery::hyperelliptic_base());

    let mut doc = base.clone();
    doc.schema_version = 2;
    expect_field_error(&doc, "schema_version");

    let mut doc = base.clone();
    doc.curve.involution.push(["A:p".into(), "B:q".into()]);
    expect_field_error(&doc, "curve.involution[2]");

    let mut doc = base.clone();
    doc.curve.involution.pop();
    expect_field_error(&doc, "curve");

    let mut doc = base.clone();
    doc.action[0].vertex_map.insert("A".into(), "A".into());
    expect_field_error(&doc, "action");

    let mut doc = base.clone();
    doc.action[0].generator = "(0 1 2)".into();
    expect_field_error(&doc, "action[0].generator");

    let mut doc = base.clone();
    doc.group.generators[0] = "(0 1".into();
    expect_field_error(&doc, "group.generators[0]");

    let mut doc = base.clone();
    doc.quotient_genus
        .push(curvecover::document::QuotientGenusEntry {
            vertex: "Q".into(),
            genus: 0,
        });
    expect_field_error(&doc, "quotient_genus[0].vertex");

    let step = CurveDocument::from_action(&gallery::hyperelliptic_step(2).unwrap());
    let mut doc = step.clone();
    doc.node_local[0].swap = true;
    expect_field_error(&doc, "node_local[0].swap");

    let mut doc = step.clone();
    doc.node_local[1].modulus = 0;
    expect_field_error(&doc, "node_local[1]");

    let mut doc = step;
    doc.attestations[0].elements = vec!["g5".into()];
    expect_field_error(&doc, "attestations[0].elements[0]");
}

#[test]
fn unknown_fields_are_rejected() {
    let mut value: serde_json::Value =
        serde_json::from_str(&CurveDocument::from_action(&gallery::hyperelliptic_base()).to_json())
            .unwrap();
    value["colour"] = "blue".into();
    assert!(matches!(
        CurveDocument::from_json(&value.to_string()),
        Err(DocumentError::Syntax { .. })
    ));
}
