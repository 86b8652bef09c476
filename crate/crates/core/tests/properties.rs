mod common;

use crnhill_core::io::{parse_model, serialize_model};
use crnhill_core::kinetics::{sfrf, HillKinetics, Kinetics, PolyPlKinetics};
use crnhill_core::linalg::{self, q, Q};
use crnhill_core::numerics::{find_equilibria, SearchConfig};
use crnhill_core::poly::{Monomial, Polynomial};
use crnhill_core::pyk::{associated_poly_pl, canonical_poly_pl, verify_cfrf_scaling, CFRF_SCALING_TOL};
use crnhill_core::specieswise::specieswise_oracle;
use crnhill_core::structural::{linkage_class_partition, sign_vectors, verify_decomposition};
use crnhill_core::transforms::star_msc;
use crnhill_core::{Network, Num};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn two_species() -> Network {
    Network::from_reactions(
        vec!["X1".into(), "X2".into()],
        vec![("R1".into(), vec![q(1), q(0)], vec![q(0), q(1)]), ("R2".into(), vec![q(0), q(1)], vec![q(1), q(0)])],
    )
    .unwrap()
}

fn nums(rows: &[[i64; 2]]) -> Vec<Vec<Num>> {
    rows.iter().map(|r| r.iter().map(|&v| Num::int(v)).collect()).collect()
}

/// Hill data with dissociation constants present exactly where the order is nonzero.
fn hill(f: &[Vec<i64>], d: &[Vec<i64>], k: Vec<Num>) -> HillKinetics {
    let fr: Vec<[i64; 2]> = f.iter().map(|r| [r[0], r[1]]).collect();
    let dr: Vec<[i64; 2]> = f.iter().zip(d).map(|(fq, dq)| [0, 1].map(|i| if fq[i] == 0 { 0 } else { dq[i] })).collect();
    HillKinetics::new(nums(&fr), nums(&dr), k).unwrap()
}

#[test]
fn corpus_round_trips_through_the_text_format() {
    for (name, model) in common::corpus() {
        let text = serialize_model(&model);
        let back = parse_model(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(back, model, "{name}");
        assert_eq!(serialize_model(&back), text, "{name}");
    }
}

#[test]
fn cfrf_scaling_holds_on_hill_models() {
    for name in ["mm_reversible.crn", "mm_balanced.crn", "three_cycle.crn", "sorribas.crn"] {
        let model = common::load(name);
        let Kinetics::Hill(k) = &model.kinetics else { panic!("{name} is not Hill-type") };
        let samples = common::log_uniform(model.network.num_species(), 100, 1e-2, 1e2, 7);
        let report = verify_cfrf_scaling(&model.network, k, &samples).unwrap();
        assert!(report.failures.is_empty(), "{name}: {}", report.max_relative_residual);
        assert!(report.max_relative_residual < CFRF_SCALING_TOL);
    }
}

#[test]
fn star_msc_counts_on_corpus() {
    for (name, model) in common::corpus() {
        let canon = canonical_poly_pl(&model.kinetics).unwrap();
        let t = star_msc(&model.network, &canon).unwrap();
        let h = canon.h();
        assert_eq!(t.network.num_complexes(), h * model.network.num_complexes(), "{name}");
        assert_eq!(t.network.num_reactions(), h * model.network.num_reactions(), "{name}");
        assert_eq!(t.network.rank(), model.network.rank(), "{name}");
    }
}

/// Reactions that share a linkage class stay together, the rest are split at random.
fn random_partitions(network: &Network, count: usize, seed: u64) -> Vec<Vec<Vec<usize>>> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let r = network.num_reactions();
    (0..count)
        .map(|_| {
            let blocks = rng.gen_range(1..=r.min(4));
            let mut parts = vec![Vec::new(); blocks];
            for q in 0..r {
                parts[rng.gen_range(0..blocks)].push(q);
            }
            parts.retain(|p| !p.is_empty());
            parts
        })
        .collect()
}

#[test]
fn decomposition_inequalities_on_corpus_partitions() {
    let mut checked = 0;
    for (name, model) in common::corpus() {
        let n = &model.network;
        let lc = verify_decomposition(n, &linkage_class_partition(n)).unwrap();
        assert!(lc.incidence_independent, "{name}: linkage classes");
        let mut all = vec![linkage_class_partition(n), vec![(0..n.num_reactions()).collect()]];
        all.extend(random_partitions(n, 4, name.len() as u64));
        for p in &all {
            let d = verify_decomposition(n, p).unwrap();
            if d.independent {
                assert!(d.delta <= d.sum_delta, "{name} {p:?}");
            }
            if d.incidence_independent {
                assert!(d.delta >= d.sum_delta, "{name} {p:?}");
            }
            assert!(d.independent_bound_holds && d.incidence_bound_holds);
            checked += 1;
        }
    }
    assert!(checked >= 10);
}

/// Basis vectors scaled to integers.
fn integer_basis(basis: &[Vec<Q>]) -> Vec<Vec<i64>> {
    use num_integer::Integer;
    basis
        .iter()
        .map(|b| {
            let l = b.iter().fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
            b.iter().map(|x| i64::try_from(x.numer() * (&l / x.denom())).unwrap()).collect()
        })
        .collect()
}

/// Sign patterns hit by integer combinations of the basis with coefficients in `[-radius, radius]`.
fn brute_force_signs(basis: &[Vec<Q>], dim: usize, radius: i64) -> Vec<Vec<i8>> {
    let basis = integer_basis(basis);
    let mut found = std::collections::BTreeSet::new();
    found.insert(vec![0i8; dim]);
    let side = (2 * radius + 1) as usize;
    for code in 0..side.pow(basis.len() as u32) {
        let mut c = code;
        let mut v = vec![0i64; dim];
        for b in &basis {
            let coeff = (c % side) as i64 - radius;
            c /= side;
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi += coeff * bi;
            }
        }
        found.insert(v.iter().map(|x| x.signum() as i8).collect());
    }
    found.into_iter().collect()
}

const BRUTE_RADIUS: i64 = 12;

/// The positive orthant is reached only with a coefficient ratio above 6.
#[test]
fn sign_vectors_of_a_skewed_plane() {
    let basis = linalg::span_basis(&[vec![q(0), q(2), q(1)], vec![q(1), q(2), q(-2)]]);
    let signs = sign_vectors(&basis, 3);
    assert!(signs.contains(&vec![1, 1, 1]));
    assert_eq!(sorted(signs), brute_force_signs(&basis, 3, BRUTE_RADIUS));
}

fn sorted(mut v: Vec<Vec<i8>>) -> Vec<Vec<i8>> {
    v.sort();
    v
}

#[test]
fn sign_vectors_agree_with_brute_force_on_small_corpus() {
    for (name, model) in common::corpus() {
        let n = &model.network;
        let m = n.num_species();
        if m > 3 {
            continue;
        }
        let s = linalg::span_basis(&n.reaction_vectors());
        assert_eq!(sorted(sign_vectors(&s, m)), brute_force_signs(&s, m, BRUTE_RADIUS), "{name}: S");
        let perp = linalg::orthogonal_complement(&s, m);
        assert_eq!(sorted(sign_vectors(&perp, m)), brute_force_signs(&perp, m, BRUTE_RADIUS), "{name}: S perp");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sign_vectors_agree_with_brute_force(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 1..=2)) {
        let basis = linalg::span_basis(&rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect::<Vec<_>>());
        prop_assert_eq!(sorted(sign_vectors(&basis, 3)), brute_force_signs(&basis, 3, BRUTE_RADIUS));
    }

    #[test]
    fn cfrf_scaling_for_random_hill(
        f in prop::collection::vec(prop::collection::vec(-2i64..=3, 2), 2),
        d in prop::collection::vec(prop::collection::vec(1i64..=3, 2), 2),
        k in prop::collection::vec(1i64..=5, 2),
    ) {
        let n = two_species();
        let hk = hill(&f, &d, k.iter().map(|&v| Num::int(v)).collect());
        let samples = common::log_uniform(2, 20, 1e-2, 1e2, 3);
        let report = verify_cfrf_scaling(&n, &hk, &samples).unwrap();
        prop_assert!(report.failures.is_empty(), "{}", report.max_relative_residual);
    }

    #[test]
    fn associated_kinetics_vanish_with_original(
        f in prop::collection::vec(prop::collection::vec(0i64..=2, 2), 2),
        d in prop::collection::vec(prop::collection::vec(1i64..=2, 2), 2),
        x in prop::collection::vec(0.05f64..20.0, 2),
    ) {
        // The associated rates are the originals times one positive common
        // denominator, so every coordinate of f keeps its sign.
        let n = two_species();
        let hk = hill(&f, &d, vec![Num::int(1), Num::int(2)]);
        let kin = Kinetics::Hill(hk.clone());
        let py = Kinetics::PolyPl(associated_poly_pl(&kin, false).unwrap());
        let a = sfrf(&n, &kin, &x).unwrap();
        let b = sfrf(&n, &py, &x).unwrap();
        let red = specieswise_oracle(&n, &hk).unwrap().evaluate(&x);
        for i in 0..2 {
            let tol = 1e-12 * (1.0 + b[i].abs());
            prop_assert!(a[i].signum() == b[i].signum() || a[i].abs() < tol || b[i].abs() < tol);
            prop_assert!(a[i].signum() == red[i].signum() || a[i].abs() < tol || red[i].abs() < tol);
        }
    }

    #[test]
    fn star_msc_counts_for_random_poly_pl(
        terms in prop::collection::vec(prop::collection::vec((1i64..=4, 0i64..=2, 0i64..=2), 1..=3), 2),
    ) {
        let n = two_species();
        let polys: Vec<Polynomial> = terms
            .iter()
            .map(|ts| {
                Polynomial::from_terms(2, ts.iter().map(|&(c, a, b)| Monomial::new(Num::int(c), vec![Num::int(a), Num::int(b)])).collect())
            })
            .collect();
        let k = PolyPlKinetics::new(2, vec![Num::int(1), Num::int(3)], polys).unwrap();
        let canon = k.canonicalize().unwrap();
        let t = star_msc(&n, &canon).unwrap();
        prop_assert_eq!(t.network.num_complexes(), canon.h() * 2);
        prop_assert_eq!(t.network.num_reactions(), canon.h() * 2);
        prop_assert_eq!(t.network.rank(), n.rank());
    }
}

/// A grid of `2g - 1` points per axis contains the grid of `g` points.
#[test]
fn grid_refinement_keeps_earlier_equilibria() {
    for name in ["mm_reversible.crn", "acr_deficiency_one.crn", "two_blocks.crn", "three_cycle.crn"] {
        let model = common::load(name);
        let coarse = SearchConfig { grid: 4, ..SearchConfig::default() };
        let fine = SearchConfig { grid: 7, ..SearchConfig::default() };
        let a = find_equilibria(&model.network, &model.kinetics, &coarse).unwrap();
        let b = find_equilibria(&model.network, &model.kinetics, &fine).unwrap();
        assert!(!a.points.is_empty(), "{name}");
        for p in &a.points {
            let kept = b.points.iter().any(|r| p.x.iter().zip(&r.x).all(|(u, v)| (u.ln() - v.ln()).abs() < 1e-5));
            assert!(kept, "{name}: {:?} lost on refinement", p.x);
        }
    }
}
