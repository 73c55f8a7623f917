use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::Dataset;
use crate::error::{Error, Result};

/// Name given to combined datasets.
pub const COMBINED_NAME: &str = "combined";

/// Uniform sample across datasets.
///
/// Each of the `k` datasets contributes `size / k` records, the first
/// `size % k` datasets one more. Records are drawn without replacement, the
/// union is shuffled and renumbered from 1, and every record keeps its source.
pub fn build_combined_dataset(datasets: &[Dataset], size: usize, seed: u64) -> Result<Dataset> {
    if datasets.is_empty() {
        return Err(Error::EmptyInput("no datasets to combine"));
    }
    if size == 0 {
        return Err(Error::Config("combined size must be positive".into()));
    }
    let k = datasets.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::with_capacity(size);
    for (i, ds) in datasets.iter().enumerate() {
        let want = size / k + usize::from(i < size % k);
        if want > ds.len() {
            return Err(Error::Allocation {
                dataset: ds.name.clone(),
                available: ds.len(),
                requested: want,
            });
        }
        let mut picked = index::sample(&mut rng, ds.len(), want).into_vec();
        picked.sort_unstable();
        records.extend(picked.into_iter().map(|j| ds.records[j].clone()));
    }
    records.shuffle(&mut rng);
    let mut out = Dataset {
        name: COMBINED_NAME.into(),
        records,
    };
    out.renumber();
    Ok(out)
}
