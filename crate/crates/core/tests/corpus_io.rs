mod common;

use std::fs;

use logbench::corpus::{
    load_raw, load_structured, template_frequency_map, write_dataset, Dataset, Template,
};
use logbench::Error;

#[test]
fn raw_file_keeps_order_and_numbers_from_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("Svc_2k.log");
    fs::write(&path, "first line\nsecond, with comma\r\nthird\n").unwrap();
    let ds = load_raw(&path).unwrap();
    assert_eq!(ds.name, "Svc");
    let ids: Vec<usize> = ds.records.iter().map(|r| r.line_id).collect();
    assert_eq!(ids, [1, 2, 3]);
    assert_eq!(ds.contents().collect::<Vec<_>>(), ["first line", "second, with comma", "third"]);
    assert!(!ds.is_labeled());
}

#[test]
fn raw_blank_lines_are_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.log");
    fs::write(&path, "a\n\n   \nb\n").unwrap();
    let ds = load_raw(&path).unwrap();
    assert_eq!(ds.len(), 2);
    assert_eq!(ds.records[1].line_id, 2);
}

#[test]
fn raw_empty_file_gives_empty_dataset() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.log");
    fs::write(&path, "").unwrap();
    assert!(load_raw(&path).unwrap().is_empty());
}

#[test]
fn structured_round_trip_with_commas_quotes_and_missing_labels() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("Mixed_2k.log_structured.csv");
    let ds = Dataset::from_pairs(
        "Mixed",
        [
            ("user=\"bob\", action=login", Some("user=<*>, action=<*>")),
            ("plain", None),
            ("x y", Some("x <*>")),
        ],
    )
    .unwrap();
    write_dataset(&ds, &path).unwrap();
    let back = load_structured(&path).unwrap();
    assert_eq!(back, ds);
    assert!(back.records[1].ground_truth.is_none());
}

#[test]
fn structured_reader_tolerates_extra_columns() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("Extra.csv");
    fs::write(
        &path,
        "LineId,Date,Content,EventId,EventTemplate\n1,d,open a,E1,open <*>\n2,d,open b,E1,open <*>\n",
    )
    .unwrap();
    let ds = load_structured(&path).unwrap();
    assert_eq!(ds.len(), 2);
    assert_eq!(ds.records[0].ground_truth.as_ref().unwrap().as_str(), "open <*>");
}

#[test]
fn structured_missing_column_is_a_format_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("Bad.csv");
    fs::write(&path, "LineId,Content\n1,x\n").unwrap();
    assert!(matches!(load_structured(&path), Err(Error::Format(_))));
}

#[test]
fn missing_file_is_an_io_error() {
    let err = load_structured("/nonexistent/zz.csv").unwrap_err();
    assert!(matches!(err.root(), Error::Io { .. }), "{err}");
}

#[test]
fn frequency_map_of_the_apache_like_sample() {
    let ds = common::apache_like();
    assert_eq!(ds.len(), 2000);
    let freq = template_frequency_map(&ds).unwrap();
    assert_eq!(freq.len(), 6);
    assert_eq!(freq.values().sum::<usize>(), 2000);
    assert!(freq.keys().all(Template::has_wildcards));
}

#[test]
fn frequency_map_needs_labels() {
    let ds = Dataset::from_lines("d", ["a"]).unwrap();
    assert!(matches!(template_frequency_map(&ds), Err(Error::Unlabeled { .. })));
}

#[test]
fn loghub_apache_frequency_map() {
    let Some(ds) = common::loghub("Apache") else {
        eprintln!("skipped: {} not set", common::LOGHUB_ENV);
        return;
    };
    assert_eq!(ds.len(), 2000);
    assert_eq!(template_frequency_map(&ds).unwrap().len(), 6);
}
