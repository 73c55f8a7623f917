mod common;

use std::path::PathBuf;

use logbench::corpus::{write_dataset, Dataset};
use logbench::fuzzing::{fuzz, FuzzConfig, FuzzMode};
use logbench::harness::{
    build_combined_dataset, evaluate, run_experiment, ExperimentPlan, FuzzStage, MixStage,
    ParserSpec, Pools, SynthesisPlan,
};
use logbench::mixing::{mix, MixConfig};
use logbench::parsers::ParserConfig;
use logbench::pool::save_pools;

fn bytes(ds: &Dataset) -> Vec<u8> {
    let mut out = Vec::new();
    logbench::corpus::write_structured(ds, &mut out).unwrap();
    out
}

fn synthesis_plan(datasets: Vec<PathBuf>, pools: PathBuf) -> ExperimentPlan {
    let mut plan = ExperimentPlan::new(
        datasets,
        vec![
            ParserConfig::tree().into(),
            ParserConfig::token_frequency().into(),
            ParserSpec::Identity,
        ],
    );
    plan.runs = 3;
    plan.base_seed = 11;
    plan.synthesis = Some(SynthesisPlan {
        pools,
        mix: Some(MixStage { strength: 1.0, exclude_source: true }),
        fuzz: Some(FuzzStage { mode: FuzzMode::Labeled }),
        surrogate: None,
    });
    plan
}

#[test]
fn mixing_and_fuzzing_repeat_exactly() {
    let ds = common::apache_like();
    let pools = common::synthetic_pools();
    for seed in [0, 1, 99] {
        let a = mix(&ds, &pools.outliers, &MixConfig::new(0.7, seed)).unwrap();
        let b = mix(&ds, &pools.outliers, &MixConfig::new(0.7, seed)).unwrap();
        assert_eq!(bytes(&a), bytes(&b));
        let cfg = FuzzConfig { seed, mode: FuzzMode::Labeled };
        let fa = fuzz(&a, &pools.variables, &cfg, None).unwrap();
        let fb = fuzz(&b, &pools.variables, &cfg, None).unwrap();
        assert_eq!(bytes(&fa.dataset), bytes(&fb.dataset));
        assert_eq!(fa.skipped, fb.skipped);
    }
    let x = mix(&ds, &pools.outliers, &MixConfig::new(0.7, 1)).unwrap();
    let y = mix(&ds, &pools.outliers, &MixConfig::new(0.7, 2)).unwrap();
    assert_ne!(bytes(&x), bytes(&y), "different seeds should differ");
}

#[test]
fn fuzzing_is_independent_of_thread_count() {
    let ds = common::apache_like();
    let pools = common::synthetic_pools();
    let cfg = FuzzConfig { seed: 5, mode: FuzzMode::Labeled };
    let run = |n| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
            .install(|| fuzz(&ds, &pools.variables, &cfg, None).unwrap())
    };
    assert_eq!(bytes(&run(1).dataset), bytes(&run(4).dataset));
}

#[test]
fn combined_sample_repeats_exactly() {
    let corpus = common::synthetic_corpus();
    let a = build_combined_dataset(&corpus, 2000, 3).unwrap();
    let b = build_combined_dataset(&corpus, 2000, 3).unwrap();
    assert_eq!(bytes(&a), bytes(&b));
}

#[test]
fn experiment_report_ignores_workers_and_repeats() {
    let corpus = common::synthetic_corpus();
    let dir = tempfile::tempdir().unwrap();
    let pools = common::pools_from(&corpus);
    save_pools(dir.path().join("pools"), &pools.outliers, &pools.variables).unwrap();
    let mut paths = Vec::new();
    for ds in &corpus[..2] {
        let p = dir.path().join(format!("{}.csv", ds.name));
        write_dataset(ds, &p).unwrap();
        paths.push(p);
    }
    let mut plan = synthesis_plan(paths, dir.path().join("pools"));

    let report = |plan: &ExperimentPlan| run_experiment(plan).unwrap().deterministic_json().unwrap();
    plan.workers = Some(1);
    let one = report(&plan);
    plan.workers = Some(4);
    let four = report(&plan);
    let again = report(&plan);
    assert!(one == four, "1 vs 4 workers differ");
    assert!(four == again, "repeat differs");
}

#[test]
fn in_memory_evaluation_matches_file_based() {
    let corpus = common::synthetic_corpus();
    let dir = tempfile::tempdir().unwrap();
    let pools = common::pools_from(&corpus);
    save_pools(dir.path().join("pools"), &pools.outliers, &pools.variables).unwrap();
    let path = dir.path().join("apache-like.csv");
    write_dataset(&corpus[0], &path).unwrap();
    let plan = synthesis_plan(vec![path], dir.path().join("pools"));
    let loaded = Pools::load(dir.path().join("pools")).unwrap();
    let from_files = run_experiment(&plan).unwrap();
    let in_memory = evaluate(&plan, &corpus[..1], Some(&loaded)).unwrap();
    assert!(from_files.deterministic_json().unwrap() == in_memory.deterministic_json().unwrap());
}
