//! Shinar-Feinberg pairs: two reactions whose kinetic-order rows differ in
//! exactly one species, in at least one slice of a canonical representation.

use serde::Serialize;

use crate::error::Result;
use crate::kinetics::{Kinetics, PolyPlKinetics};
use crate::network::Network;
use crate::num::Num;
use crate::pyk::canonical_poly_pl;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SfPair {
    /// Reaction indices, smaller first.
    pub reactions: [usize; 2],
    pub species: usize,
    /// 1-based slices in which the rows differ only in `species`.
    pub slices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SfPairReport {
    pub h: usize,
    pub pairs: Vec<SfPair>,
}

impl SfPairReport {
    pub fn in_species(&self, species: usize) -> impl Iterator<Item = &SfPair> {
        self.pairs.iter().filter(move |p| p.species == species)
    }

    pub fn has_pair_in(&self, species: usize) -> bool {
        self.in_species(species).next().is_some()
    }

    pub fn contains(&self, a: usize, b: usize, species: usize) -> bool {
        let key = [a.min(b), a.max(b)];
        self.in_species(species).any(|p| p.reactions == key)
    }
}

/// The single column where two rows differ, if there is exactly one.
fn single_difference(a: &[Num], b: &[Num]) -> Option<usize> {
    let mut diff = a.iter().zip(b).enumerate().filter(|(_, (x, y))| !x.approx_eq(y)).map(|(i, _)| i);
    let first = diff.next()?;
    diff.next().is_none().then_some(first)
}

/// Exhaustive scan over reaction pairs and slices.
pub fn sf_pairs_in_slices(slices: &[Vec<Vec<Num>>]) -> SfPairReport {
    let r = slices.first().map_or(0, Vec::len);
    let mut pairs = Vec::new();
    for a in 0..r {
        for b in a + 1..r {
            let mut found: Vec<(usize, usize)> = Vec::new();
            for (j, f) in slices.iter().enumerate() {
                if let Some(i) = single_difference(&f[a], &f[b]) {
                    found.push((i, j + 1));
                }
            }
            found.sort_unstable();
            let mut species: Vec<usize> = found.iter().map(|(i, _)| *i).collect();
            species.dedup();
            for i in species {
                let slices = found.iter().filter(|(s, _)| *s == i).map(|(_, j)| *j).collect();
                pairs.push(SfPair { reactions: [a, b], species: i, slices });
            }
        }
    }
    pairs.sort_by_key(|p| (p.species, p.reactions));
    SfPairReport { h: slices.len(), pairs }
}

/// SF-pairs of a canonical poly-PL kinetics.
pub fn sf_pairs_canonical(k: &PolyPlKinetics) -> Result<SfPairReport> {
    Ok(sf_pairs_in_slices(&k.slice_orders()?))
}

/// SF-pairs of the canonical associated poly-PL kinetics of `kinetics`.
pub fn sf_pairs(network: &Network, kinetics: &Kinetics) -> Result<SfPairReport> {
    kinetics.check_network(network)?;
    sf_pairs_canonical(&canonical_poly_pl(kinetics)?)
}

/// The numerator-only kinetics: `k_q M_q` for Hill and quotient kinetics,
/// the kinetics itself otherwise.
pub fn numerator_kinetics(kinetics: &Kinetics) -> Result<Kinetics> {
    Ok(match kinetics {
        Kinetics::Hill(h) => Kinetics::PowerLaw(h.numerator_kinetics()),
        Kinetics::Pqk(p) => Kinetics::PolyPl(PolyPlKinetics::new(
            p.num_species(),
            p.rates().to_vec(),
            p.numerators().to_vec(),
        )?),
        other => other.clone(),
    })
}

/// SF-pairs of the numerator-only kinetics.
pub fn sf_pairs_numerator(network: &Network, kinetics: &Kinetics) -> Result<SfPairReport> {
    sf_pairs(network, &numerator_kinetics(kinetics)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rows(v: &[&[i64]]) -> Vec<Vec<Num>> {
        v.iter().map(|r| r.iter().map(|&x| Num::int(x)).collect()).collect()
    }

    #[test]
    fn rows_differing_in_one_column() {
        let rep = sf_pairs_in_slices(&[rows(&[&[1, 1], &[0, 1]]), rows(&[&[1, 1], &[1, 1]])]);
        assert_eq!(rep.pairs, vec![SfPair { reactions: [0, 1], species: 0, slices: vec![1] }]);
        assert!(!sf_pairs_in_slices(&[rows(&[&[1, 0], &[1, 0]])]).has_pair_in(0));
    }

    proptest! {
        #[test]
        fn scan_matches_brute_force(data in prop::collection::vec(prop::collection::vec(0i64..3, 3), 2..6), h in 1usize..3) {
            let r = data.len() / h.max(1);
            prop_assume!(r >= 2);
            let slices: Vec<Vec<Vec<Num>>> = (0..h)
                .map(|j| data[j * r..(j + 1) * r].iter().map(|row| row.iter().map(|&x| Num::int(x)).collect()).collect())
                .collect();
            let rep = sf_pairs_in_slices(&slices);
            for a in 0..r {
                for b in 0..r {
                    if a == b { continue; }
                    for i in 0..3 {
                        let brute = slices.iter().any(|f| {
                            (0..3).all(|c| (c == i) != (f[a][c] == f[b][c]))
                        });
                        prop_assert_eq!(rep.contains(a, b, i), brute);
                    }
                }
            }
        }
    }
}
