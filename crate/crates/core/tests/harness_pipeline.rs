mod common;

use std::collections::BTreeMap;
use std::fs;

use logbench::corpus::{write_dataset, Dataset};
use logbench::fuzzing::FuzzMode;
use logbench::harness::{
    build_combined_dataset, evaluate, run_experiment, synthesize, EvaluationReport,
    ExperimentPlan, FuzzStage, MixStage, ParserSpec, SynthesisPlan, COMBINED_NAME,
};
use logbench::parsers::{parse, save_parse_result, ParserConfig};
use logbench::pool::save_pools;

fn synthesis(pools: std::path::PathBuf) -> SynthesisPlan {
    SynthesisPlan {
        pools,
        mix: Some(MixStage { strength: 0.6, exclude_source: true }),
        fuzz: Some(FuzzStage { mode: FuzzMode::Labeled }),
        surrogate: None,
    }
}

fn multiset(ds: &Dataset) -> BTreeMap<(String, String), usize> {
    let mut m = BTreeMap::new();
    for r in &ds.records {
        *m.entry((r.source.clone(), r.content.clone())).or_default() += 1;
    }
    m
}

/// Tree-parser output written to disk and read back as an external parser
/// scores exactly like the built-in tree parser.
#[test]
fn external_output_scores_like_the_builtin_parser() {
    let corpus = common::synthetic_corpus();
    let pools = common::pools_from(&corpus);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("parsed");
    fs::create_dir(&out).unwrap();

    let tree = ParserConfig::tree();
    let mut plan = ExperimentPlan::new(
        vec!["apache-like.csv".into(), "hpc-like.csv".into()],
        vec![
            tree.clone().into(),
            ParserSpec::External {
                name: "saved".into(),
                path: out.join("{dataset}-{run}.csv").to_string_lossy().into_owned(),
            },
        ],
    );
    plan.runs = 3;
    plan.base_seed = 40;
    plan.synthesis = Some(synthesis(dir.path().join("pools")));

    let inputs = vec![corpus[0].clone(), corpus[4].clone()];
    for ds in &inputs {
        for r in 0..plan.runs {
            let (data, _) = synthesize(&plan, ds, plan.seed(r), Some(&pools)).unwrap();
            let parsed = parse(&data, &tree).unwrap();
            save_parse_result(&parsed, out.join(format!("{}-{r}.csv", ds.name))).unwrap();
        }
    }

    let report = evaluate(&plan, &inputs, Some(&pools)).unwrap();
    for ds in &report.datasets {
        let builtin = ds.parser(&tree.label()).unwrap();
        let external = ds.parser("external(saved)").unwrap();
        assert_eq!(external.failures, 0, "{:?}", external.runs);
        assert_eq!(builtin.runs.len(), 3);
        for (a, b) in builtin.runs.iter().zip(&external.runs) {
            assert_eq!(a.metrics, b.metrics);
        }
        assert_eq!(builtin.mean, external.mean);
        assert_eq!(builtin.std, external.std);
    }
}

#[test]
fn missing_external_output_fails_only_its_cells() {
    let ds = common::apache_like();
    let mut plan = ExperimentPlan::new(
        vec!["a.csv".into()],
        vec![
            ParserSpec::Identity,
            ParserSpec::External { name: "gone".into(), path: "/nonexistent/{dataset}.csv".into() },
        ],
    );
    plan.runs = 2;
    let report = evaluate(&plan, &[ds], None).unwrap();
    let d = &report.datasets[0];
    assert_eq!(d.parser("identity").unwrap().failures, 0);
    let gone = d.parser("external(gone)").unwrap();
    assert_eq!(gone.failures, 2);
    assert!(gone.mean.is_none() && gone.std.is_none());
    assert!(gone.runs[0].error.as_deref().unwrap().contains("dataset apache-like"));
}

#[test]
fn combined_at_full_size_is_a_permutation() {
    let corpus: Vec<Dataset> = common::synthetic_corpus()
        .into_iter()
        .map(|mut d| {
            d.records.truncate(150);
            d
        })
        .collect();
    let total: usize = corpus.iter().map(Dataset::len).sum();
    let combined = build_combined_dataset(&corpus, total, 9).unwrap();
    assert_eq!(combined.name, COMBINED_NAME);
    let mut all = BTreeMap::new();
    for d in &corpus {
        for (k, v) in multiset(&Dataset { name: d.name.clone(), records: d.records.clone() }) {
            *all.entry(k).or_insert(0) += v;
        }
    }
    assert_eq!(multiset(&combined), all);
    let ids: Vec<usize> = combined.records.iter().map(|r| r.line_id).collect();
    assert_eq!(ids, (1..=total).collect::<Vec<_>>());
}

#[test]
fn combined_splits_evenly_and_rejects_oversized_requests() {
    let corpus = common::synthetic_corpus();
    let combined = build_combined_dataset(&corpus, 2000, 1).unwrap();
    assert_eq!(combined.len(), 2000);
    let mut per_source: BTreeMap<&str, usize> = BTreeMap::new();
    for r in &combined.records {
        *per_source.entry(r.source.as_str()).or_default() += 1;
    }
    assert_eq!(per_source.len(), 9);
    // 2000 = 9 * 222 + 2
    assert!(per_source.values().all(|&n| n == 222 || n == 223));

    let single = build_combined_dataset(&corpus[..1], 10, 1).unwrap();
    assert_eq!(single.len(), 10);
    assert!(single.records.iter().all(|r| corpus[0].contents().any(|c| c == r.content)));

    assert!(build_combined_dataset(&corpus[..1], 2001, 1).is_err());
    assert!(build_combined_dataset(&corpus, 0, 1).is_err());
}

#[test]
fn plan_file_end_to_end() {
    let corpus = common::synthetic_corpus();
    let pools = common::pools_from(&corpus);
    let dir = tempfile::tempdir().unwrap();
    save_pools(dir.path().join("pools"), &pools.outliers, &pools.variables).unwrap();
    write_dataset(&corpus[2], dir.path().join("hdfs-like.csv")).unwrap();
    fs::write(
        dir.path().join("plan.json"),
        r#"{
  "datasets": ["hdfs-like.csv"],
  "parsers": [{"kind": "tree"}, {"kind": "token-frequency", "threshold": 0.5}, {"kind": "identity"}],
  "synthesis": {"pools": "pools", "mix": {"strength": 1.0}, "fuzz": {"mode": "labeled"}},
  "runs": 2,
  "base_seed": 3
}"#,
    )
    .unwrap();
    let plan = ExperimentPlan::load(dir.path().join("plan.json")).unwrap();
    let report = run_experiment(&plan).unwrap();
    assert_eq!(report.provenance.seeds, [3, 4]);
    assert!(report.timings.is_some());
    let ds = report.dataset("hdfs-like").unwrap();
    assert_eq!(ds.runs.len(), 2);
    assert!(ds.mean_h.unwrap() > ds.original.score.h);
    assert_eq!(ds.parsers.len(), 3);
    assert_eq!(ds.parser("identity").unwrap().mean.unwrap().template_accuracy, 1.0);
    assert!(ds.parser("token-frequency(t=0.5)").unwrap().mean.is_some());

    let back = EvaluationReport::from_json(&report.to_json().unwrap()).unwrap();
    assert_eq!(back.deterministic_json().unwrap(), report.deterministic_json().unwrap());
}

#[test]
fn surrogate_parser_drives_mixing_and_fuzzing() {
    let corpus = common::synthetic_corpus();
    let pools = common::pools_from(&corpus);
    let mut plan = ExperimentPlan::new(vec!["x".into()], vec![ParserConfig::tree().into()]);
    plan.runs = 2;
    plan.synthesis = Some(SynthesisPlan {
        pools: "unused".into(),
        mix: Some(MixStage { strength: 1.0, exclude_source: true }),
        fuzz: Some(FuzzStage { mode: FuzzMode::ParserDriven }),
        surrogate: Some(ParserConfig::tree()),
    });
    let ds = corpus[7].clone();
    let (data, skipped) = synthesize(&plan, &ds, 0, Some(&pools)).unwrap();
    assert_eq!(data.len(), ds.len());
    assert!(skipped.is_some());
    // Ground truth is the surrogate's template, so every record is labeled.
    assert!(data.is_labeled());
    let report = evaluate(&plan, &[ds], Some(&pools)).unwrap();
    assert_eq!(report.datasets[0].parsers[0].failures, 0);
}

#[test]
fn synthesis_without_pools_is_rejected() {
    let mut plan = ExperimentPlan::new(vec!["x".into()], vec![ParserSpec::Identity]);
    plan.synthesis = Some(synthesis("p".into()));
    assert!(evaluate(&plan, &[common::apache_like()], None).is_err());
}
