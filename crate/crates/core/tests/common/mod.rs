#![allow(dead_code)]

use std::path::PathBuf;

use logbench::corpus::{load_structured, Dataset};
use logbench::harness::Pools;
use logbench::pool::{build_outlier_pool, build_variable_pool};
use logbench::synthetic::{self, SyntheticSystem};

/// Directory with loghub 2K structured files, either flat
/// (`Apache_2k.log_structured.csv`) or per system (`Apache/Apache_2k...`).
pub const LOGHUB_ENV: &str = "LOGHUB_DIR";

pub const LOGHUB_SYSTEMS: [&str; 9] = [
    "Apache", "BGL", "HDFS", "HealthApp", "HPC", "Mac", "OpenStack", "Spark", "Windows",
];

pub fn loghub_file(system: &str) -> Option<PathBuf> {
    let dir = PathBuf::from(std::env::var_os(LOGHUB_ENV)?);
    let file = format!("{system}_2k.log_structured.csv");
    [dir.join(system).join(&file), dir.join(&file)]
        .into_iter()
        .find(|p| p.is_file())
}

pub fn loghub(system: &str) -> Option<Dataset> {
    let path = loghub_file(system)?;
    Some(load_structured(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display())))
}

/// All nine loghub datasets, or `None` if any is missing.
pub fn loghub_all() -> Option<Vec<Dataset>> {
    LOGHUB_SYSTEMS.iter().map(|s| loghub(s)).collect()
}

pub const SYNTHETIC_SEED: u64 = 100;

/// The nine synthetic systems at 2K lines each.
pub fn synthetic_corpus() -> Vec<Dataset> {
    synthetic::corpus(2000, SYNTHETIC_SEED).expect("synthetic corpus")
}

pub fn pools_from(datasets: &[Dataset]) -> Pools {
    Pools {
        outliers: build_outlier_pool(datasets, 0.05).expect("outlier pool"),
        variables: build_variable_pool(datasets).expect("variable pool").0,
    }
}

pub fn synthetic_pools() -> Pools {
    pools_from(&synthetic_corpus())
}

/// The 6-template Apache-like dataset used where loghub Apache is absent.
pub fn apache_like() -> Dataset {
    SyntheticSystem::apache_like()
        .generate(2000, 7)
        .expect("apache-like")
}
