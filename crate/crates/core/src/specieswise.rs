//! Species-wise clearing of denominators: for each species, multiply its
//! formation rate by the product of the denominators of the reactions that
//! involve it. The result has the same zero set and sign as the original
//! coordinate, so it serves as an independent equilibrium oracle. It is not a
//! kinetics and is never used as one.

use num_traits::Zero;

use crate::error::Result;
use crate::kinetics::{HillKinetics, PqKinetics};
use crate::network::Network;
use crate::numerics::{multistart, EquilibriumSet, SearchConfig, SetKind};
use crate::num::Num;
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq)]
pub struct SpecieswiseReduction {
    /// Reactions whose reactant or product contains the species.
    pub reactions: Vec<Vec<usize>>,
    /// Cleared right-hand side for each species.
    pub reduced: Vec<Polynomial>,
    /// Same terms with absolute coefficients, used for scaling.
    magnitude: Vec<Polynomial>,
}

/// Builds the reduction for a Hill-type system.
pub fn specieswise_oracle(network: &Network, k: &HillKinetics) -> Result<SpecieswiseReduction> {
    specieswise_pqk(network, &PqKinetics::from_hill(k)?)
}

/// Builds the reduction for any quotient kinetics.
pub fn specieswise_pqk(network: &Network, k: &PqKinetics) -> Result<SpecieswiseReduction> {
    crate::kinetics::Kinetics::Pqk(k.clone()).check_network(network)?;
    let m = network.num_species();
    let n_mat = network.stoichiometric();
    let mut reactions = Vec::with_capacity(m);
    let mut reduced = Vec::with_capacity(m);
    let mut magnitude = Vec::with_capacity(m);
    for i in 0..m {
        let ri: Vec<usize> = network
            .reactions()
            .iter()
            .enumerate()
            .filter(|(_, r)| {
                !network.complexes()[r.reactant].coeffs[i].is_zero()
                    || !network.complexes()[r.product].coeffs[i].is_zero()
            })
            .map(|(q, _)| q)
            .collect();
        let mut f = Polynomial::zero(m);
        let mut g = Polynomial::zero(m);
        for &q in &ri {
            let delta = Num::exact(n_mat[i][q].clone());
            if delta.is_zero() {
                continue;
            }
            let mut p = k.numerators()[q].scale(&k.rates()[q]);
            for &other in ri.iter().filter(|&&o| o != q) {
                p = p.mul(&k.denominators()[other]);
            }
            f = f.add(&p.scale(&delta));
            g = g.add(&p.scale(&delta.abs()));
        }
        reactions.push(ri);
        reduced.push(f);
        magnitude.push(g);
    }
    Ok(SpecieswiseReduction { reactions, reduced, magnitude })
}

impl SpecieswiseReduction {
    pub fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        self.reduced.iter().map(|p| p.eval(x)).collect()
    }

    /// Each coordinate divided by one plus the sum of its absolute terms.
    pub fn scaled(&self, x: &[f64]) -> Vec<f64> {
        self.reduced
            .iter()
            .zip(&self.magnitude)
            .map(|(p, g)| p.eval(x) / (1.0 + g.eval(x)))
            .collect()
    }

    /// Common roots by the same multistart solver, applied to the scaled system.
    pub fn find_roots(&self, cfg: &SearchConfig) -> Result<EquilibriumSet> {
        let m = self.reduced.len();
        cfg.validate(m)?;
        let res = |x: &[f64]| {
            let v = self.scaled(x);
            v.iter().all(|t| t.is_finite()).then_some((v, 1.0))
        };
        Ok(EquilibriumSet { kind: SetKind::Equilibria, points: multistart(&res, m, cfg) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinetics::{sfrf, Kinetics};
    use crate::linalg::q;

    fn mm() -> (Network, HillKinetics) {
        let n = Network::from_reactions(
            vec!["X1".into(), "X2".into()],
            vec![("R1".into(), vec![q(1), q(0)], vec![q(0), q(1)]), ("R2".into(), vec![q(0), q(1)], vec![q(1), q(0)])],
        )
        .unwrap();
        let id = vec![vec![Num::int(1), Num::int(0)], vec![Num::int(0), Num::int(1)]];
        (n, HillKinetics::new(id.clone(), id, vec![Num::int(1), Num::int(2)]).unwrap())
    }

    #[test]
    fn sign_agrees_with_formation_rate() {
        let (n, k) = mm();
        let red = specieswise_oracle(&n, &k).unwrap();
        assert_eq!(red.reactions, vec![vec![0, 1], vec![0, 1]]);
        let kk = Kinetics::Hill(k);
        for x in [[0.3, 2.0], [5.0, 0.1], [1.0, 1.0 / 3.0]] {
            let f = sfrf(&n, &kk, &x).unwrap();
            let ft = red.evaluate(&x);
            for i in 0..2 {
                let scale = (1.0 + x[0]) * (1.0 + x[1]);
                assert!((ft[i] - f[i] * scale).abs() < 1e-12);
            }
        }
    }
}
