//! Numerical location of positive equilibria and complex-balanced equilibria,
//! and pointwise checks of set-level identities.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kinetics::{apply_incidence, apply_reaction_vectors, Kinetics, PolyPlKinetics};
use crate::network::Network;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    /// Seed box applied to every species without an entry in `species_bounds`.
    pub default_box: (f64, f64),
    /// Optional per-species seed boxes.
    pub species_bounds: Vec<(f64, f64)>,
    /// Log-spaced grid points per axis.
    pub grid: usize,
    pub max_iterations: usize,
    /// Threshold on the largest coordinate of `F` relative to its gross flux.
    pub tolerance: f64,
    /// Deduplication radius (infinity norm in log coordinates).
    pub cluster_radius: f64,
    /// When the full grid exceeds this many seeds, a Halton sample of this size is used.
    pub max_seeds: usize,
    /// Extra iterations after convergence.
    pub polish_steps: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            default_box: (1e-3, 1e3),
            species_bounds: Vec::new(),
            grid: 7,
            max_iterations: 60,
            tolerance: 1e-10,
            cluster_radius: 1e-6,
            max_seeds: 4096,
            polish_steps: 2,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self, m: usize) -> Result<()> {
        let bad = |detail: &str| Err(Error::InvalidValue { what: "search configuration".into(), detail: detail.into() });
        let ok_box = |(lo, hi): (f64, f64)| lo > 0.0 && hi >= lo && hi.is_finite();
        if !ok_box(self.default_box) || !self.species_bounds.iter().all(|b| ok_box(*b)) {
            return bad("box bounds must satisfy 0 < lo <= hi < inf");
        }
        if !self.species_bounds.is_empty() && self.species_bounds.len() != m {
            return Err(Error::DimensionMismatch {
                what: "species bounds".into(),
                expected: m,
                found: self.species_bounds.len(),
            });
        }
        if !(self.tolerance > 0.0) || !(self.cluster_radius > 0.0) {
            return bad("tolerances must be positive");
        }
        if self.grid == 0 || self.max_seeds == 0 {
            return bad("grid and seed count must be positive");
        }
        Ok(())
    }

    fn log_box(&self, i: usize) -> (f64, f64) {
        let (lo, hi) = self.species_bounds.get(i).copied().unwrap_or(self.default_box);
        (lo.ln(), hi.ln())
    }

    /// Seeds in log coordinates: the full grid, or a Halton sample when the grid is too large.
    pub fn seeds(&self, m: usize) -> Vec<Vec<f64>> {
        let axis = |i: usize, t: f64| {
            let (a, b) = self.log_box(i);
            a + (b - a) * t
        };
        let total = (self.grid as f64).powi(m as i32);
        if total <= self.max_seeds as f64 {
            let g = self.grid;
            let count = g.pow(m as u32);
            (0..count)
                .map(|mut c| {
                    (0..m)
                        .map(|i| {
                            let k = c % g;
                            c /= g;
                            let t = if g == 1 { 0.5 } else { k as f64 / (g - 1) as f64 };
                            axis(i, t)
                        })
                        .collect()
                })
                .collect()
        } else {
            let primes = first_primes(m);
            (1..=self.max_seeds)
                .map(|n| (0..m).map(|i| axis(i, radical_inverse(n, primes[i]))).collect())
                .collect()
        }
    }
}

fn first_primes(k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut c = 2;
    while out.len() < k {
        if out.iter().take_while(|p: &&usize| **p * **p <= c).all(|p| c % p != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}

fn radical_inverse(mut n: usize, base: usize) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while n > 0 {
        r += (n % base) as f64 * f;
        n /= base;
        f *= inv;
    }
    r
}

/// Largest absolute entry.
pub fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, b| a.max(b.abs()))
}

fn l2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// A residual map: returns `F(x)` and a positive scale, or `None` outside the domain.
pub type ResidualFn<'a> = dyn Fn(&[f64]) -> Option<(Vec<f64>, f64)> + Sync + 'a;

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOutcome {
    pub x: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

const MAX_LOG: f64 = 60.0;
const FD_STEP: f64 = 1e-6;

/// Damped Gauss-Newton in log coordinates with a finite-difference Jacobian and
/// SVD-based minimum-norm steps. Iterates stay positive by construction.
pub fn solve_log_newton(res: &ResidualFn<'_>, z0: &[f64], cfg: &SearchConfig) -> Option<SolveOutcome> {
    let exp = |z: &[f64]| -> Vec<f64> { z.iter().map(|v| v.exp()).collect() };
    let mut z = z0.to_vec();
    let (mut f, mut s) = res(&exp(&z))?;
    let merit = |f: &[f64], s: f64| l2(f) / s;
    let mut r = inf_norm(&f) / s;
    let mut polished = 0;
    let mut iterations = 0;
    let m = z.len();
    for it in 0..cfg.max_iterations {
        iterations = it;
        if r <= cfg.tolerance {
            if polished >= cfg.polish_steps {
                break;
            }
            polished += 1;
        }
        let p = f.len();
        let mut jac = DMatrix::<f64>::zeros(p, m);
        for k in 0..m {
            let mut zp = z.clone();
            let mut zm = z.clone();
            zp[k] += FD_STEP;
            zm[k] -= FD_STEP;
            let (fp, _) = res(&exp(&zp))?;
            let (fm, _) = res(&exp(&zm))?;
            for i in 0..p {
                jac[(i, k)] = (fp[i] - fm[i]) / (2.0 * FD_STEP);
            }
        }
        let rhs = DVector::from_iterator(p, f.iter().map(|v| -v));
        let svd = jac.svd(true, true);
        let smax = svd.singular_values.iter().fold(0.0f64, |a, &b| a.max(b));
        if smax == 0.0 {
            break;
        }
        let Ok(step) = svd.solve(&rhs, smax * 1e-12) else {
            break;
        };
        let mut dz: Vec<f64> = step.iter().copied().collect();
        let big = inf_norm(&dz);
        if !big.is_finite() {
            break;
        }
        if big > 2.0 {
            dz.iter_mut().for_each(|v| *v *= 2.0 / big);
        }
        let current = merit(&f, s);
        let mut accepted = false;
        let mut lambda = 1.0;
        for _ in 0..30 {
            let zn: Vec<f64> = z.iter().zip(&dz).map(|(a, b)| a + lambda * b).collect();
            if zn.iter().all(|v| v.abs() <= MAX_LOG) {
                if let Some((fn_, sn)) = res(&exp(&zn)) {
                    if fn_.iter().all(|v| v.is_finite()) && merit(&fn_, sn) < current {
                        z = zn;
                        f = fn_;
                        s = sn;
                        r = inf_norm(&f) / s;
                        accepted = true;
                        break;
                    }
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (r <= cfg.tolerance).then(|| SolveOutcome { x: exp(&z), residual: r, iterations })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SetKind {
    /// Positive equilibria.
    #[serde(rename = "E+")]
    Equilibria,
    /// Complex-balanced equilibria.
    #[serde(rename = "Z+")]
    ComplexBalanced,
}

impl SetKind {
    pub fn label(self) -> &'static str {
        match self {
            SetKind::Equilibria => "E+",
            SetKind::ComplexBalanced => "Z+",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EquilibriumPoint {
    pub x: Vec<f64>,
    pub residual: f64,
    /// Index of the seed the solver started from.
    pub seed: usize,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EquilibriumSet {
    pub kind: SetKind,
    pub points: Vec<EquilibriumPoint>,
}

/// `f = N K(x)` or `g = Ia K(x)`, each coordinate divided by the gross flux
/// through it. Coordinates without flux are zero.
pub(crate) fn relative_vector(network: &Network, vectors: &[Vec<f64>], k: &[f64], kind: SetKind) -> Vec<f64> {
    let (net, gross) = match kind {
        SetKind::Equilibria => {
            let m = network.num_species();
            let abs: Vec<Vec<f64>> = vectors.iter().map(|v| v.iter().map(|c| c.abs()).collect()).collect();
            (apply_reaction_vectors(vectors, k, m), apply_reaction_vectors(&abs, k, m))
        }
        SetKind::ComplexBalanced => {
            let mut g = vec![0.0; network.num_complexes()];
            for (r, &kq) in network.reactions().iter().zip(k) {
                g[r.reactant] += kq;
                g[r.product] += kq;
            }
            (apply_incidence(network, k), g)
        }
    };
    net.iter().zip(&gross).map(|(a, b)| if *b > 0.0 { a / b } else { 0.0 }).collect()
}

/// Largest coordinate of `f` (or `g`) relative to its gross flux.
pub fn scaled_residual(network: &Network, kinetics: &Kinetics, kind: SetKind, x: &[f64]) -> Result<f64> {
    let k = kinetics.evaluate(x)?;
    Ok(inf_norm(&relative_vector(network, &network.reaction_vectors_f64(), &k, kind)))
}

/// Multi-start search; results are merged deterministically (sorted, deduplicated).
pub fn multistart(res: &ResidualFn<'_>, m: usize, cfg: &SearchConfig) -> Vec<EquilibriumPoint> {
    let seeds = cfg.seeds(m);
    let found: Vec<Option<EquilibriumPoint>> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, z0)| {
            solve_log_newton(res, z0, cfg).map(|o| EquilibriumPoint {
                x: o.x,
                residual: o.residual,
                seed: i,
                iterations: o.iterations,
            })
        })
        .collect();
    dedup(found.into_iter().flatten().collect(), cfg.cluster_radius)
}

fn dedup(mut points: Vec<EquilibriumPoint>, radius: f64) -> Vec<EquilibriumPoint> {
    points.sort_by(|a, b| {
        a.x.iter()
            .zip(&b.x)
            .map(|(p, q)| p.total_cmp(q))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.seed.cmp(&b.seed))
    });
    let mut kept: Vec<EquilibriumPoint> = Vec::new();
    for p in points {
        let lp: Vec<f64> = p.x.iter().map(|v| v.ln()).collect();
        let close = kept.iter().any(|k| k.x.iter().zip(&lp).all(|(a, b)| (a.ln() - b).abs() <= radius));
        if !close {
            kept.push(p);
        }
    }
    kept
}

fn residual_closure<'a>(network: &'a Network, kinetics: &'a Kinetics, kind: SetKind) -> impl Fn(&[f64]) -> Option<(Vec<f64>, f64)> + Sync + 'a {
    let vectors = network.reaction_vectors_f64();
    move |x: &[f64]| {
        let k = kinetics.evaluate(x).ok()?;
        Some((relative_vector(network, &vectors, &k, kind), 1.0))
    }
}

fn find(network: &Network, kinetics: &Kinetics, cfg: &SearchConfig, kind: SetKind) -> Result<EquilibriumSet> {
    kinetics.check_network(network)?;
    let m = network.num_species();
    cfg.validate(m)?;
    // A positive complex-balanced equilibrium forces weak reversibility.
    if kind == SetKind::ComplexBalanced && !network.is_weakly_reversible() {
        return Ok(EquilibriumSet { kind, points: Vec::new() });
    }
    let res = residual_closure(network, kinetics, kind);
    let mut points = multistart(&res, m, cfg);
    // Re-verify each point with a fresh evaluation.
    let mut verified = Vec::with_capacity(points.len());
    for p in points.drain(..) {
        let r = scaled_residual(network, kinetics, kind, &p.x)?;
        let mut ok = r <= cfg.tolerance;
        if kind == SetKind::ComplexBalanced {
            ok &= scaled_residual(network, kinetics, SetKind::Equilibria, &p.x)? <= 10.0 * cfg.tolerance;
        }
        if ok {
            verified.push(EquilibriumPoint { residual: r, ..p });
        }
    }
    Ok(EquilibriumSet { kind, points: verified })
}

/// Positive equilibria `f(x) = 0`.
pub fn find_equilibria(network: &Network, kinetics: &Kinetics, cfg: &SearchConfig) -> Result<EquilibriumSet> {
    find(network, kinetics, cfg, SetKind::Equilibria)
}

/// Complex-balanced equilibria `Ia K(x) = 0`.
pub fn find_complex_balanced(network: &Network, kinetics: &Kinetics, cfg: &SearchConfig) -> Result<EquilibriumSet> {
    find(network, kinetics, cfg, SetKind::ComplexBalanced)
}

/// Tolerance for cross-kinetics residuals at found points.
pub const COINCIDENCE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Violator {
    pub set: usize,
    pub point: usize,
    pub kinetics: String,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CoincidenceReport {
    pub checked: usize,
    pub max_residual: f64,
    pub violators: Vec<Violator>,
}

/// Every point of every set must be a zero (of `f` or `g`, per the set kind)
/// for both kinetics.
pub fn verify_coincidence(network: &Network, k: &Kinetics, k_py: &Kinetics, sets: &[&EquilibriumSet]) -> Result<CoincidenceReport> {
    let mut report = CoincidenceReport { checked: 0, max_residual: 0.0, violators: Vec::new() };
    for (si, set) in sets.iter().enumerate() {
        for (pi, p) in set.points.iter().enumerate() {
            report.checked += 1;
            for (name, kin) in [("original", k), ("associated", k_py)] {
                let r = scaled_residual(network, kin, set.kind, &p.x)?;
                report.max_residual = report.max_residual.max(r);
                if !(r < COINCIDENCE_TOL) {
                    report.violators.push(Violator { set: si, point: pi, kinetics: name.into(), residual: r });
                }
            }
        }
    }
    Ok(report)
}

/// Per-slice tolerance for power-law refinement checks.
pub const PL_REFINEMENT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SliceStatus {
    pub slice: usize,
    pub max_residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PlRefinementReport {
    pub kind: SetKind,
    pub points: usize,
    pub slices: Vec<SliceStatus>,
    pub all_pass: bool,
}

/// Evaluates every slice of the canonical associated kinetics at the points of
/// `set`: each point must be an equilibrium (or complex-balanced point) of every slice.
pub fn check_pl_refinement(network: &Network, canonical: &PolyPlKinetics, set: &EquilibriumSet) -> Result<PlRefinementReport> {
    let mut slices = Vec::new();
    for j in 0..canonical.h() {
        let kj = Kinetics::PowerLaw(canonical.slice(j)?);
        let mut worst: f64 = 0.0;
        for p in &set.points {
            worst = worst.max(scaled_residual(network, &kj, set.kind, &p.x)?);
        }
        slices.push(SliceStatus { slice: j + 1, max_residual: worst, pass: worst < PL_REFINEMENT_TOL });
    }
    Ok(PlRefinementReport {
        kind: set.kind,
        points: set.points.len(),
        all_pass: slices.iter().all(|s| s.pass),
        slices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_seeds_cover_box_corners() {
        let cfg = SearchConfig { grid: 3, ..SearchConfig::default() };
        let s = cfg.seeds(2);
        assert_eq!(s.len(), 9);
        assert!((s[0][0] - 1e-3f64.ln()).abs() < 1e-12);
        assert!((s[8][1] - 1e3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn halton_when_grid_is_large() {
        let cfg = SearchConfig { grid: 7, max_seeds: 100, ..SearchConfig::default() };
        let s = cfg.seeds(5);
        assert_eq!(s.len(), 100);
        assert!(s.iter().flatten().all(|v| v.abs() <= 1e3f64.ln() + 1e-12));
    }

    #[test]
    fn newton_solves_scalar_equation() {
        let res = |x: &[f64]| Some((vec![x[0] * x[0] - 4.0], 1.0));
        let o = solve_log_newton(&res, &[0.0], &SearchConfig::default()).unwrap();
        assert!((o.x[0] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = SearchConfig { default_box: (0.0, 1.0), ..SearchConfig::default() };
        assert!(cfg.validate(1).is_err());
    }
}
