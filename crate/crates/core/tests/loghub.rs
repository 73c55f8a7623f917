//! Checks against the real loghub 2K samples. Each test returns early with a
//! note when `LOGHUB_DIR` is not set.

mod common;

use logbench::fuzzing::{fuzz, FuzzConfig, FuzzMode};
use logbench::harness::build_combined_dataset;
use logbench::heterogeneity::{dataset_h, INDUSTRY_REFERENCE};
use logbench::metrics::{MetricReport, ParseResult};
use logbench::mixing::{mix, MixConfig};
use logbench::parsers::{parse, ParserConfig};
use logbench::pool::build_outlier_pool;

macro_rules! require {
    ($e:expr) => {
        match $e {
            Some(v) => v,
            None => {
                eprintln!("skipped: {} not set or incomplete", common::LOGHUB_ENV);
                return;
            }
        }
    };
}

fn h(ds: &logbench::corpus::Dataset) -> f64 {
    dataset_h(ds, &INDUSTRY_REFERENCE).unwrap().1.h
}

fn tree_metrics(ds: &logbench::corpus::Dataset) -> MetricReport {
    let parsed = parse(ds, &ParserConfig::tree()).unwrap();
    MetricReport::compute(&parsed, &ParseResult::from_ground_truth(ds).unwrap()).unwrap()
}

#[test]
fn apache_tree_parser_spot_check() {
    let ds = require!(common::loghub("Apache"));
    let m = tree_metrics(&ds);
    assert!(m.grouping_accuracy >= 0.9, "{m:?}");
    assert!((m.template_accuracy - 0.694).abs() <= 0.10, "{m:?}");
}

#[test]
fn apache_original_heterogeneity() {
    let ds = require!(common::loghub("Apache"));
    assert!((h(&ds) - 0.219).abs() <= 0.05, "{}", h(&ds));
}

#[test]
fn outlier_pool_size_is_in_the_expected_range() {
    let all = require!(common::loghub_all());
    let pool = build_outlier_pool(&all, 0.05).unwrap();
    assert!((500..=900).contains(&pool.len()), "{}", pool.len());
}

#[test]
fn combined_sample_heterogeneity() {
    let all = require!(common::loghub_all());
    let combined = build_combined_dataset(&all, 2000, 0).unwrap();
    assert!((h(&combined) - 0.830).abs() <= 0.05, "{}", h(&combined));
}

#[test]
fn apache_mixed_and_fuzzed_cascade() {
    let all = require!(common::loghub_all());
    let pools = common::pools_from(&all);
    let apache = &all[0];
    let mixed = mix(apache, &pools.outliers, &MixConfig::new(1.0, 0)).unwrap();
    assert!((h(&mixed) - 0.886).abs() <= 0.08, "{}", h(&mixed));
    let fuzzed = fuzz(&mixed, &pools.variables, &FuzzConfig { seed: 0, mode: FuzzMode::Labeled }, None)
        .unwrap()
        .dataset;
    let ta = [apache, &mixed, &fuzzed].map(|d| tree_metrics(d).template_accuracy);
    assert!(ta[0] > ta[1] && ta[1] > ta[2], "{ta:?}");
    assert!((0.02..=0.25).contains(&ta[2]), "{ta:?}");
}
