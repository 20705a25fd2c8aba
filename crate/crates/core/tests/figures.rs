//! Worked growth diagrams reproduced node by node.

mod common;

use common::fixture::{check_figure, load_all};

#[test]
fn all_sixteen_fixtures_present() {
    assert_eq!(load_all().len(), 16);
}

#[test]
fn every_figure_reproduces() {
    let mut report = Vec::new();
    for fig in load_all() {
        for msg in check_figure(&fig) {
            report.push(format!("{}: {msg}", fig.name));
        }
    }
    assert!(report.is_empty(), "\n{}", report.join("\n"));
}

#[test]
fn wrong_algorithm_is_caught() {
    let mut fig = load_all()
        .into_iter()
        .find(|f| f.name == "left-right")
        .unwrap();
    fig.algorithm = "jitter".into();
    assert!(!check_figure(&fig).is_empty());
    let mut fig = load_all().into_iter().find(|f| f.name == "sagan").unwrap();
    fig.algorithm = "worley-sagan".into();
    assert!(!check_figure(&fig).is_empty());
}
