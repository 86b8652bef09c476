//! Sign vectors common to the stoichiometric subspace and the orthogonal
//! complement of the kinetic-order subspace.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kinetics::Kinetics;
use crate::linalg::{self, Q};
use crate::lp::sign_pattern_realizable;
use crate::network::Network;

use super::balancing::kinetic_order_subspace;

pub const SIGN_CHECK_DEFAULT_CAP: usize = 10;

/// All `3^dim` patterns in lexicographic order over `-1 < 0 < 1`.
pub fn all_patterns(dim: usize) -> Vec<Vec<i8>> {
    let total = 3usize.pow(dim as u32);
    (0..total)
        .map(|mut c| {
            let mut p = vec![0i8; dim];
            for slot in p.iter_mut().rev() {
                *slot = (c % 3) as i8 - 1;
                c /= 3;
            }
            p
        })
        .collect()
}

/// Sign vectors realized by the span of `basis`.
pub fn sign_vectors(basis: &[Vec<Q>], dim: usize) -> Vec<Vec<i8>> {
    all_patterns(dim).into_par_iter().filter(|s| sign_pattern_realizable(basis, s, dim)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SignCheckReport {
    pub m: usize,
    pub stoichiometric_count: usize,
    pub complement_count: usize,
    pub intersection: Vec<Vec<i8>>,
    pub nontrivial: bool,
    /// Verdict if a trivial intersection is read as the multistationarity condition.
    pub multistationary_if_trivial_reading: bool,
    /// Verdict if a nonzero common sign vector is read as the condition.
    pub multistationary_if_nontrivial_reading: bool,
}

pub fn multistat_sign_check(network: &Network, kinetics: &Kinetics, cap: usize) -> Result<SignCheckReport> {
    let m = network.num_species();
    if m > cap {
        return Err(Error::DimensionCapExceeded { dim: m, cap });
    }
    let s_basis = linalg::span_basis(&network.reaction_vectors());
    let complement = kinetic_order_subspace(network, kinetics)?.complement;
    let in_s = sign_vectors(&s_basis, m);
    let intersection: Vec<Vec<i8>> =
        in_s.par_iter().filter(|s| sign_pattern_realizable(&complement, s, m)).cloned().collect();
    let complement_count = sign_vectors(&complement, m).len();
    let nontrivial = intersection.iter().any(|s| s.iter().any(|&v| v != 0));
    Ok(SignCheckReport {
        m,
        stoichiometric_count: in_s.len(),
        complement_count,
        intersection,
        nontrivial,
        multistationary_if_trivial_reading: !nontrivial,
        multistationary_if_nontrivial_reading: nontrivial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn patterns_are_ordered() {
        let p = all_patterns(2);
        assert_eq!(p.len(), 9);
        assert_eq!(p[0], vec![-1, -1]);
        assert_eq!(p[4], vec![0, 0]);
    }

    #[test]
    fn whole_space_realizes_everything() {
        let basis = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        assert_eq!(sign_vectors(&basis, 2).len(), 9);
        assert_eq!(sign_vectors(&[], 2), vec![vec![0, 0]]);
    }
}
