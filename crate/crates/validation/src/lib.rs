//! Corpus access and sampling shared by the acceptance checks.

use std::path::PathBuf;

use crnhill_core::io::{read_model, Model};
use rand::{Rng, SeedableRng};

pub fn models_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

pub fn load(name: &str) -> Result<Model, String> {
    read_model(&models_dir().join(name)).map_err(|e| format!("{name}: {e}"))
}

/// Every `.crn` file under `models/`, sorted by name.
pub fn corpus() -> Result<Vec<(String, Model)>, String> {
    let mut names: Vec<String> = std::fs::read_dir(models_dir())
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".crn"))
        .collect();
    names.sort();
    names.into_iter().map(|n| load(&n).map(|m| (n, m))).collect()
}

/// Log-uniform points in `[lo, hi]^m` from a seeded generator.
pub fn log_uniform(m: usize, count: usize, (lo, hi): (f64, f64), seed: u64) -> Vec<Vec<f64>> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (a, b) = (lo.ln(), hi.ln());
    (0..count).map(|_| (0..m).map(|_| rng.gen_range(a..b).exp()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_stay_in_the_box() {
        let pts = log_uniform(3, 200, (1e-2, 1e2), 5);
        assert!(pts.iter().flatten().all(|&v| (1e-2..=1e2).contains(&v)));
        assert_eq!(pts, log_uniform(3, 200, (1e-2, 1e2), 5));
    }

    #[test]
    fn corpus_is_present() {
        assert!(corpus().unwrap().len() >= 10);
    }
}
