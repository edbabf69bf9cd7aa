use std::collections::BTreeSet;

use lncert_core::figures::{file_name, model, render, render_all, FigureKind, FigureSpec, FIGURE_NUMBERS};
use lncert_core::{Error, Rational};
use sha2::{Digest, Sha256};

fn digest(s: &str) -> Vec<u8> {
    Sha256::digest(s.as_bytes()).to_vec()
}

fn classes(doc: &roxmltree::Document, class: &str) -> usize {
    doc.descendants()
        .filter_map(|n| n.attribute("class"))
        .filter(|c| c.split_whitespace().any(|w| w == class))
        .count()
}

#[test]
fn every_kind_parses_as_svg() {
    for kind in FigureKind::ALL {
        let svg = render(&FigureSpec::new(kind)).unwrap();
        let doc = roxmltree::Document::parse(svg.as_str()).unwrap_or_else(|e| panic!("{kind}: {e}"));
        let root = doc.root_element();
        assert_eq!(root.tag_name().name(), "svg");
        assert_eq!(root.tag_name().namespace(), Some("http://www.w3.org/2000/svg"));
        assert_eq!(
            classes(&doc, "curve"),
            if kind == FigureKind::PowerInequality { 2 } else { 1 }
        );
        let curve = doc
            .descendants()
            .find(|n| n.attribute("class") == Some("curve"))
            .unwrap();
        assert_eq!(curve.attribute("points").unwrap().split(' ').count(), 256);
        assert_eq!(
            classes(&doc, "overlay"),
            model(&FigureSpec::new(kind)).unwrap().overlay_count()
        );
    }
}

#[test]
fn coordinates_have_six_decimals() {
    let svg = render(&FigureSpec::numbered(1).unwrap()).unwrap();
    let doc = roxmltree::Document::parse(svg.as_str()).unwrap();
    let curve = doc
        .descendants()
        .find(|n| n.attribute("class") == Some("curve"))
        .unwrap();
    for pair in curve.attribute("points").unwrap().split(' ') {
        for c in pair.split(',') {
            assert_eq!(c.split_once('.').map(|(_, f)| f.len()), Some(6), "{c}");
        }
    }
}

#[test]
fn deterministic_output() {
    for n in FIGURE_NUMBERS {
        let spec = FigureSpec::numbered(n).unwrap();
        assert_eq!(
            digest(render(&spec).unwrap().as_str()),
            digest(render(&spec.clone()).unwrap().as_str())
        );
    }
}

#[test]
fn spec_examples() {
    let spec = FigureSpec::new(FigureKind::BoundMidpointLower)
        .with_param("a", Rational::int(4))
        .with_param("b", Rational::int(6));
    let svg = render(&spec).unwrap();
    let doc = roxmltree::Document::parse(svg.as_str()).unwrap();
    assert_eq!(classes(&doc, "overlay"), 1);
    assert_eq!(classes(&doc, "lower"), 1);

    let svg = render(&FigureSpec::new(FigureKind::PartitionLowerE)).unwrap();
    let doc = roxmltree::Document::parse(svg.as_str()).unwrap();
    assert_eq!(classes(&doc, "overlay"), 3);
    assert!(svg.as_str().contains("2/5 + 2/5 + 1/5 = 1"));

    let svg = render(&FigureSpec::new(FigureKind::PartitionUpperE)).unwrap();
    let doc = roxmltree::Document::parse(svg.as_str()).unwrap();
    assert_eq!(classes(&doc, "overlay"), 6);
    assert!(svg.as_str().contains("629/630 &lt; 1"));

    let spec = FigureSpec::new(FigureKind::GeometricRectangles)
        .with_param("r", Rational::int(2))
        .with_param("m", Rational::int(4));
    let svg = render(&spec).unwrap();
    let doc = roxmltree::Document::parse(svg.as_str()).unwrap();
    assert_eq!(classes(&doc, "region"), 1);
    assert_eq!(classes(&doc, "overlay"), 4);
}

#[test]
fn render_all_writes_stable_file_set() {
    let dir = tempfile::tempdir().unwrap();
    let names = render_all(dir.path()).unwrap();
    let expected: Vec<String> = [1, 2, 5, 6, 9, 10, 11, 12, 13, 14, 15]
        .into_iter()
        .map(file_name)
        .collect();
    assert_eq!(names, expected);
    let on_disk: BTreeSet<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert_eq!(on_disk, expected.iter().cloned().collect());
    let first: Vec<Vec<u8>> = names
        .iter()
        .map(|n| std::fs::read(dir.path().join(n)).unwrap())
        .collect();
    render_all(dir.path()).unwrap();
    let second: Vec<Vec<u8>> = names
        .iter()
        .map(|n| std::fs::read(dir.path().join(n)).unwrap())
        .collect();
    assert_eq!(first, second);
}

#[test]
fn unwritable_target_is_write_error() {
    // A regular file in place of the directory fails even for root.
    let file = tempfile::NamedTempFile::new().unwrap();
    match render_all(file.path()) {
        Err(Error::Write { path, .. }) => assert!(path.starts_with(file.path())),
        other => panic!("expected WriteError, got {other:?}"),
    }
}

#[test]
fn invalid_params_are_domain_errors() {
    let cases = [
        FigureSpec::new(FigureKind::BoundTrapezoidUpper).with_param("a", Rational::int(3)),
        FigureSpec::new(FigureKind::BoundTrapezoidUpper).with_param("pieces", Rational::frac(1, 2)),
        FigureSpec::new(FigureKind::PowerInequality).with_param("a", Rational::frac(1, 2)),
        FigureSpec::new(FigureKind::GammaShadedArea).with_param("n", Rational::int(1)),
        FigureSpec::new(FigureKind::GeometricRectangles).with_param("r", Rational::frac(9, 10)),
    ];
    for spec in cases {
        assert!(matches!(render(&spec), Err(Error::Domain(_))), "{spec:?}");
    }
}
