//! Complex-balancing: rate search at a point, the kinetic-order subspace of
//! the replicated power-law system, kinetic deficiencies and the log-linear
//! parametrization of PL-complex balanced equilibria.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kinetics::{apply_incidence, classify_cf, Kinetics};
use crate::linalg::{self, Q};
use crate::lp::simplex_feasible;
use crate::network::Network;
use crate::num::{q_to_f64, Num};
use crate::numerics::{inf_norm, scaled_residual, SetKind};
use crate::pyk::canonical_poly_pl;
use crate::transforms::star_msc;

use super::certificate::{Certificate, CertificateKind, Status};

/// Residual bound for rate vectors returned by the search.
pub const CCB_TOL: f64 = 1e-10;

pub const ANCHOR_CCB: &str = "ccb/weakly-reversible-cf";
pub const ANCHOR_UCB: &str = "ucb/kinetic-deficiency-zero";

fn require_wr_cf(network: &Network, kinetics: &Kinetics) -> Result<()> {
    kinetics.check_network(network)?;
    if !network.is_weakly_reversible() {
        return Err(Error::NotWeaklyReversible);
    }
    if !classify_cf(network, kinetics).is_cf {
        return Err(Error::NotComplexFactorizable);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CcbResult {
    pub x0: Vec<f64>,
    pub rates: Vec<f64>,
    /// `|Ia K(x0)|_inf` under the returned rates.
    pub residual: f64,
}

/// Finds `k > 0` with `Ia K(x0) = 0`: a positive flux `v` in `ker Ia` is
/// obtained exactly, then `k_q = v_q / I_q(x0)` for the interaction values `I_q`.
pub fn ccb_rate_search(network: &Network, kinetics: &Kinetics, x0: &[f64]) -> Result<Option<CcbResult>> {
    require_wr_cf(network, kinetics)?;
    let interactions = kinetics.interactions(x0)?;
    if let Some(index) = interactions.iter().position(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::InvalidValue {
            what: format!("interaction of reaction {index}"),
            detail: "must be positive at the chosen point".into(),
        });
    }
    // v = 1 + w with Ia w = -Ia 1, w >= 0.
    let ia: Vec<Vec<Q>> = network
        .incidence()
        .iter()
        .map(|row| row.iter().map(|&e| Q::from_integer(e.into())).collect())
        .collect();
    let rhs: Vec<Q> = ia.iter().map(|row| -row.iter().fold(Q::zero(), |a, b| a + b)).collect();
    let Some(w) = simplex_feasible(&ia, &rhs) else {
        return Ok(None);
    };
    let rates: Vec<f64> = w.iter().zip(&interactions).map(|(wq, i)| q_to_f64(&(wq + Q::one())) / i).collect();
    let trial = kinetics.with_rates(rates.iter().map(|&v| Num::float(v)).collect())?;
    let residual = inf_norm(&apply_incidence(network, &trial.evaluate(x0)?));
    Ok(Some(CcbResult { x0: x0.to_vec(), rates, residual }))
}

pub fn ccb_certificate(network: &Network, kinetics: &Kinetics, x0: &[f64]) -> Result<Certificate> {
    let mut c = Certificate::new(
        CertificateKind::Ccb,
        None,
        "positive flux in the kernel of the incidence matrix",
        ANCHOR_CCB,
    );
    let wr = c.check("weak reversibility", network.is_weakly_reversible(), format!("l = {}, sl = {}", network.linkage_classes().len(), network.strong_classes().len()));
    let cf = c.check("complex factorizable", classify_cf(network, kinetics).is_cf, "");
    if wr && cf {
        match ccb_rate_search(network, kinetics, x0)? {
            Some(res) => {
                c.check(
                    "complex-balancing rates at x0",
                    res.residual <= CCB_TOL,
                    format!("k = {:?}, residual {:e}", res.rates, res.residual),
                );
            }
            None => {
                c.check("complex-balancing rates at x0", false, "no positive flux");
            }
        }
    }
    Ok(c.finish("conditionally complex balancing"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct KineticOrderSubspace {
    /// Basis of the span of kinetic-order reaction vectors.
    pub basis: Vec<Vec<Q>>,
    /// Basis of its orthogonal complement.
    pub complement: Vec<Vec<Q>>,
    /// Complexes and linkage classes of the replicated network.
    pub n: usize,
    pub l: usize,
    /// Number of reactant complexes and rank of their kinetic-order vectors.
    pub n_r: usize,
    pub reactant_rank: usize,
}

impl KineticOrderSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn complement_f64(&self) -> Vec<Vec<f64>> {
        self.complement.iter().map(|v| v.iter().map(q_to_f64).collect()).collect()
    }
}

/// Kinetic-order subspace of the replicated power-law system of the canonical
/// associated kinetics. Every complex of a weakly reversible network is a
/// reactant, so each carries the kinetic-order row of its slice.
pub fn kinetic_order_subspace(network: &Network, kinetics: &Kinetics) -> Result<KineticOrderSubspace> {
    require_wr_cf(network, kinetics)?;
    let t = star_msc(network, &canonical_poly_pl(kinetics)?)?;
    let tn = &t.network;
    let mut rows: Vec<Option<Vec<Num>>> = vec![None; tn.num_complexes()];
    for (q, r) in tn.reactions().iter().enumerate() {
        let f = &t.kinetics.orders()[q];
        match &rows[r.reactant] {
            Some(existing) if !crate::num::vec_approx_eq(existing, f) => return Err(Error::NotComplexFactorizable),
            Some(_) => {}
            None => rows[r.reactant] = Some(f.clone()),
        }
    }
    let rows: Vec<Vec<Q>> = rows
        .into_iter()
        .map(|r| r.map(|v| v.iter().map(Num::to_rational).collect()).ok_or(Error::NotWeaklyReversible))
        .collect::<Result<_>>()?;
    let diffs: Vec<Vec<Q>> = tn
        .reactions()
        .iter()
        .map(|r| rows[r.product].iter().zip(&rows[r.reactant]).map(|(a, b)| a - b).collect())
        .collect();
    let m = network.num_species();
    let basis = linalg::span_basis(&diffs);
    Ok(KineticOrderSubspace {
        complement: linalg::orthogonal_complement(&basis, m),
        basis,
        n: tn.num_complexes(),
        l: tn.linkage_classes().len(),
        n_r: rows.len(),
        reactant_rank: linalg::rank(&rows),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KineticDeficiency {
    pub s_tilde: usize,
    pub n_tilde: usize,
    pub l_tilde: usize,
    pub n_r_tilde: usize,
    pub reactant_rank: usize,
    /// Kinetic deficiency.
    pub delta_tilde: usize,
    /// Kinetic reactant deficiency.
    pub delta_hat: usize,
}

pub fn kinetic_deficiency(network: &Network, kinetics: &Kinetics) -> Result<KineticDeficiency> {
    let s = kinetic_order_subspace(network, kinetics)?;
    Ok(KineticDeficiency {
        s_tilde: s.dim(),
        n_tilde: s.n,
        l_tilde: s.l,
        n_r_tilde: s.n_r,
        reactant_rank: s.reactant_rank,
        delta_tilde: s.n - s.l - s.dim(),
        delta_hat: s.n_r - s.reactant_rank,
    })
}

/// Unconditional complex balancing from a vanishing kinetic deficiency.
pub fn ucb_certificate(network: &Network, kinetics: &Kinetics) -> Result<Certificate> {
    let mut c = Certificate::new(
        CertificateKind::Ucb,
        None,
        "kinetic deficiency zero",
        ANCHOR_UCB,
    );
    let wr = c.check("weak reversibility", network.is_weakly_reversible(), "");
    let cf = c.check("complex factorizable", classify_cf(network, kinetics).is_cf, "");
    if wr && cf {
        let kd = kinetic_deficiency(network, kinetics)?;
        let evidence = format!("kinetic deficiency {}, kinetic reactant deficiency {}", kd.delta_tilde, kd.delta_hat);
        if kd.delta_hat == 0 {
            c.push("kinetic reactant deficiency zero", Status::Verified, evidence.clone());
        }
        c.check("kinetic deficiency zero", kd.delta_tilde == 0, evidence);
    }
    Ok(c.finish("unconditionally complex balancing"))
}

/// Residual bound for sampled points of the parametrization.
pub const PARAM_SAMPLE_TOL: f64 = 1e-6;
/// Residual bound for the base point.
pub const PARAM_BASE_TOL: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct CbParametrization {
    pub c_star: Vec<f64>,
    /// Basis of the orthogonal complement of the kinetic-order subspace.
    pub basis: Vec<Vec<f64>>,
    slices: Vec<Kinetics>,
    network: Network,
}

/// Complex-balanced equilibria through `c_star`, as `exp(ln c_star + B u)`.
pub fn cb_parametrization(network: &Network, kinetics: &Kinetics, c_star: &[f64]) -> Result<CbParametrization> {
    let sub = kinetic_order_subspace(network, kinetics)?;
    let canonical = canonical_poly_pl(kinetics)?;
    let slices: Vec<Kinetics> = (0..canonical.h()).map(|j| canonical.slice(j).map(Kinetics::PowerLaw)).collect::<Result<_>>()?;
    let mut worst: f64 = 0.0;
    for s in &slices {
        worst = worst.max(scaled_residual(network, s, SetKind::ComplexBalanced, c_star)?);
    }
    if !(worst < PARAM_BASE_TOL) {
        return Err(Error::NotComplexBalanced(worst));
    }
    Ok(CbParametrization { c_star: c_star.to_vec(), basis: sub.complement_f64(), slices, network: network.clone() })
}

impl CbParametrization {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn point(&self, u: &[f64]) -> Vec<f64> {
        let mut z: Vec<f64> = self.c_star.iter().map(|c| c.ln()).collect();
        for (b, ui) in self.basis.iter().zip(u) {
            for (zi, bi) in z.iter_mut().zip(b) {
                *zi += bi * ui;
            }
        }
        z.iter().map(|v| v.exp()).collect()
    }

    /// Largest per-slice complex-balance residual at a point.
    pub fn residual(&self, x: &[f64]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for s in &self.slices {
            worst = worst.max(scaled_residual(&self.network, s, SetKind::ComplexBalanced, x)?);
        }
        Ok(worst)
    }

    /// Point for `u` together with a check of its residual.
    pub fn sample(&self, u: &[f64]) -> Result<(Vec<f64>, bool)> {
        let x = self.point(u);
        let ok = self.residual(&x)? < PARAM_SAMPLE_TOL;
        Ok((x, ok))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinetics::{HillKinetics, PowerLawKinetics};
    use crate::linalg::q;

    fn pair() -> Network {
        Network::from_reactions(
            vec!["X1".into(), "X2".into()],
            vec![("R1".into(), vec![q(1), q(0)], vec![q(0), q(1)]), ("R2".into(), vec![q(0), q(1)], vec![q(1), q(0)])],
        )
        .unwrap()
    }

    fn id() -> Vec<Vec<Num>> {
        vec![vec![Num::int(1), Num::int(0)], vec![Num::int(0), Num::int(1)]]
    }

    #[test]
    fn mass_action_pair_has_zero_kinetic_deficiency() {
        let n = pair();
        let k = Kinetics::PowerLaw(PowerLawKinetics::mass_action(&n, vec![Num::int(1), Num::int(1)]).unwrap());
        let kd = kinetic_deficiency(&n, &k).unwrap();
        assert_eq!((kd.s_tilde, kd.delta_tilde, kd.delta_hat), (1, 0, 0));
        assert!(ucb_certificate(&n, &k).unwrap().established);
    }

    #[test]
    fn hill_pair_uses_replicated_network() {
        let n = pair();
        let k = Kinetics::Hill(HillKinetics::new(id(), id(), vec![Num::int(1), Num::int(1)]).unwrap());
        let s = kinetic_order_subspace(&n, &k).unwrap();
        assert_eq!(s.n, 4);
        assert_eq!(s.dim(), 1);
        let c = s.complement_f64();
        assert_eq!(c.len(), 1);
        assert!(c[0][0] != 0.0 && c[0][0] == c[0][1]);
        let p = cb_parametrization(&n, &k, &[1.0, 1.0]).unwrap();
        for t in [-3.0, -0.5, 2.0] {
            let (x, ok) = p.sample(&[t]).unwrap();
            assert!(ok);
            assert!((x[0] - x[1]).abs() < 1e-12 * x[0].max(1.0));
        }
        assert!(matches!(cb_parametrization(&n, &k, &[1.0, 2.0]), Err(Error::NotComplexBalanced(_))));
    }

    #[test]
    fn ccb_on_pair() {
        let n = pair();
        let k = Kinetics::Hill(HillKinetics::new(id(), id(), vec![Num::int(1), Num::int(2)]).unwrap());
        let res = ccb_rate_search(&n, &k, &[1.0, 1.0]).unwrap().unwrap();
        assert!(res.residual <= CCB_TOL);
        assert!(res.rates.iter().all(|v| *v > 0.0));
    }

    #[test]
    fn ccb_requires_weak_reversibility() {
        let n = Network::from_reactions(vec!["X1".into(), "X2".into()], vec![("R1".into(), vec![q(1), q(0)], vec![q(0), q(1)])]).unwrap();
        let k = Kinetics::PowerLaw(PowerLawKinetics::mass_action(&n, vec![Num::int(1)]).unwrap());
        assert_eq!(ccb_rate_search(&n, &k, &[1.0, 1.0]).unwrap_err(), Error::NotWeaklyReversible);
    }
}
