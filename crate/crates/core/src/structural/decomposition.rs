//! Verification of reaction-set partitions.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kinetics::Kinetics;
use crate::linalg;
use crate::network::Network;
use crate::numerics::{inf_norm, relative_vector, SetKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Block {
    pub reactions: Vec<usize>,
    pub n: usize,
    pub l: usize,
    pub s: usize,
    pub delta: usize,
    pub weakly_reversible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Decomposition {
    pub blocks: Vec<Block>,
    pub delta: usize,
    pub sum_delta: usize,
    pub independent: bool,
    pub incidence_independent: bool,
    pub bi_independent: bool,
    /// Blocks share no complexes.
    pub c_decomposition: bool,
    pub weakly_reversible_parts: bool,
    /// `delta <= sum_delta` whenever the decomposition is independent.
    pub independent_bound_holds: bool,
    /// `delta >= sum_delta` whenever the decomposition is incidence-independent.
    pub incidence_bound_holds: bool,
}

fn check_partition(r: usize, partition: &[Vec<usize>]) -> Result<()> {
    let mut seen = vec![false; r];
    for block in partition {
        if block.is_empty() {
            return Err(Error::InvalidPartition("empty block".into()));
        }
        for &q in block {
            if q >= r {
                return Err(Error::InvalidPartition(format!("reaction index {q} out of range")));
            }
            if seen[q] {
                return Err(Error::InvalidPartition(format!("reaction index {q} appears twice")));
            }
            seen[q] = true;
        }
    }
    match seen.iter().position(|s| !s) {
        Some(q) => Err(Error::InvalidPartition(format!("reaction index {q} is not covered"))),
        None => Ok(()),
    }
}

pub fn verify_decomposition(network: &Network, partition: &[Vec<usize>]) -> Result<Decomposition> {
    check_partition(network.num_reactions(), partition)?;
    let mut blocks = Vec::with_capacity(partition.len());
    let mut complex_sets: Vec<HashSet<usize>> = Vec::new();
    for part in partition {
        let sub = network.subnetwork(part)?;
        blocks.push(Block {
            reactions: part.clone(),
            n: sub.num_complexes(),
            l: sub.linkage_classes().len(),
            s: sub.rank(),
            delta: sub.deficiency(),
            weakly_reversible: sub.is_weakly_reversible(),
        });
        let rs = network.reactions();
        complex_sets.push(part.iter().flat_map(|&q| [rs[q].reactant, rs[q].product]).collect());
    }
    let delta = network.deficiency();
    let sum_delta = blocks.iter().map(|b| b.delta).sum();
    let independent = blocks.iter().map(|b| b.s).sum::<usize>() == network.rank();
    let incidence_independent =
        blocks.iter().map(|b| b.n - b.l).sum::<usize>() == network.num_complexes() - network.linkage_classes().len();
    let c_decomposition = (0..complex_sets.len())
        .all(|i| (i + 1..complex_sets.len()).all(|j| complex_sets[i].is_disjoint(&complex_sets[j])));
    Ok(Decomposition {
        weakly_reversible_parts: blocks.iter().all(|b| b.weakly_reversible),
        blocks,
        delta,
        sum_delta,
        independent,
        incidence_independent,
        bi_independent: independent && incidence_independent,
        c_decomposition,
        independent_bound_holds: !independent || delta <= sum_delta,
        incidence_bound_holds: !incidence_independent || delta >= sum_delta,
    })
}

/// Reactions grouped by the linkage class of their reactant.
pub fn linkage_class_partition(network: &Network) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); network.linkage_classes().len()];
    for (q, r) in network.reactions().iter().enumerate() {
        out[network.linkage_class_of(r.reactant)].push(q);
    }
    out
}

/// Whether the reaction-vector spans of the blocks form a direct sum (exact rank test).
pub fn is_independent(network: &Network, partition: &[Vec<usize>]) -> bool {
    let sum: usize = partition
        .iter()
        .map(|b| linalg::rank(&b.iter().map(|&q| network.reaction_vector(q)).collect::<Vec<_>>()))
        .sum();
    sum == network.rank()
}

/// Relative residual of each block's `f` (or `g`) at `x`, restricted to that block's reactions.
pub fn block_residuals(
    network: &Network,
    kinetics: &Kinetics,
    partition: &[Vec<usize>],
    kind: SetKind,
    x: &[f64],
) -> Result<Vec<f64>> {
    let k = kinetics.evaluate(x)?;
    let vectors = network.reaction_vectors_f64();
    partition
        .iter()
        .map(|block| {
            let mut kb = vec![0.0; k.len()];
            for &q in block {
                kb[q] = k[q];
            }
            Ok(inf_norm(&relative_vector(network, &vectors, &kb, kind)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn cycle() -> Network {
        Network::from_reactions(
            vec!["X1".into(), "X2".into(), "X3".into()],
            vec![
                ("R1".into(), vec![q(1), q(0), q(0)], vec![q(1), q(1), q(0)]),
                ("R2".into(), vec![q(1), q(1), q(0)], vec![q(0), q(0), q(1)]),
                ("R3".into(), vec![q(0), q(0), q(1)], vec![q(1), q(0), q(0)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn trivial_partition_is_tight() {
        let n = cycle();
        let d = verify_decomposition(&n, &[vec![0, 1, 2]]).unwrap();
        assert!(d.independent && d.incidence_independent);
        assert_eq!(d.delta, d.sum_delta);
    }

    #[test]
    fn splitting_a_cycle_breaks_incidence_independence() {
        let n = cycle();
        let d = verify_decomposition(&n, &[vec![0], vec![1, 2]]).unwrap();
        assert!(!d.incidence_independent);
        assert!(!d.independent);
        assert_eq!(d.blocks.iter().map(|b| b.s).sum::<usize>(), 3);
    }

    #[test]
    fn rejects_bad_partitions() {
        let n = cycle();
        assert!(matches!(verify_decomposition(&n, &[vec![0, 1]]), Err(Error::InvalidPartition(_))));
        assert!(matches!(verify_decomposition(&n, &[vec![0, 1, 2], vec![2]]), Err(Error::InvalidPartition(_))));
        assert!(matches!(verify_decomposition(&n, &[vec![0, 1, 2], vec![]]), Err(Error::InvalidPartition(_))));
    }
}
