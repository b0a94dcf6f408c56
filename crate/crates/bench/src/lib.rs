//! Fixtures shared by the criterion benchmarks.

use procrc_core::data::{normalize_columns, split, synth};
use procrc_core::{Dataset, SynthSpec, TrainingSet, Vector};

/// The 10-class, 50-dimensional synthetic benchmark with 20 training atoms
/// per class.
pub struct Fixture {
    pub dataset: Dataset,
    pub train: TrainingSet,
    pub probes: Vec<Vector>,
}

pub fn fixture(ambient_dim: usize) -> Fixture {
    let spec = SynthSpec {
        classes: 10,
        ambient_dim,
        subspace_dim: 5,
        per_class: 40,
        noise_sigma: 0.1,
        seed: 2024,
    };
    let dataset = normalize_columns(&synth(&spec).expect("valid spec")).expect("no zero columns");
    let s = split(&dataset, 20, 0).expect("40 samples per class");
    let train = TrainingSet::from_dataset(&dataset, &s.train_indices).expect("grouped training set");
    let probes = s.test_indices.iter().take(16).map(|&j| dataset.x().column(j)).collect();
    Fixture {
        dataset,
        train,
        probes,
    }
}
