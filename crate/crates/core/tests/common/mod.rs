#![allow(dead_code)]

use std::path::PathBuf;

use crnhill_core::io::{read_model, Model};

pub fn models_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

pub fn load(name: &str) -> Model {
    read_model(&models_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn corpus() -> Vec<(String, Model)> {
    let mut names: Vec<String> = std::fs::read_dir(models_dir())
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".crn"))
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), load(&n))).collect()
}

/// Log-uniform points in `[lo, hi]^m` from a seeded generator.
pub fn log_uniform(m: usize, count: usize, lo: f64, hi: f64, seed: u64) -> Vec<Vec<f64>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (a, b) = (lo.ln(), hi.ln());
    (0..count).map(|_| (0..m).map(|_| rng.gen_range(a..b).exp()).collect()).collect()
}
