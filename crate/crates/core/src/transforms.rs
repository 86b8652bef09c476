//! Dynamically equivalent network transforms: replication of a poly-PL system
//! into a power-law system, and translation of non-factorizable branches.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kinetics::{classify_cf, Kinetics, PolyPlKinetics, PowerLawKinetics};
use crate::linalg::Q;
use crate::network::{Complex, Network};

#[derive(Debug, Clone)]
pub struct StarMscTransform {
    pub network: Network,
    pub kinetics: PowerLawKinetics,
    /// Translation constant `M`; replica `j` (0-based) is shifted by `j M` in every species.
    pub translation: Q,
    pub h: usize,
    /// `(replica, source reaction)` for each transformed reaction.
    pub replica_of: Vec<(usize, usize)>,
}

/// Replicates the network once per slice of a canonical poly-PL kinetics.
pub fn star_msc(network: &Network, k: &PolyPlKinetics) -> Result<StarMscTransform> {
    if !k.is_canonical() {
        return Err(Error::NonCanonicalKinetics);
    }
    Kinetics::PolyPl(k.clone()).check_network(network)?;
    let max = network
        .complexes()
        .iter()
        .flat_map(|c| c.coeffs.iter())
        .max()
        .cloned()
        .unwrap_or_else(Q::zero);
    let translation = Q::from_integer(max.ceil().to_integer() + BigInt::one());
    let m = network.num_species();
    let h = k.h();
    let mut reactions = Vec::with_capacity(h * network.num_reactions());
    let mut orders = Vec::new();
    let mut rates = Vec::new();
    let mut replica_of = Vec::new();
    for j in 0..h {
        let shift = vec![&translation * Q::from_integer(BigInt::from(j)); m];
        let slice = k.slice(j)?;
        for (q, r) in network.reactions().iter().enumerate() {
            let id = if j == 0 { r.id.clone() } else { format!("{}_r{}", r.id, j + 1) };
            let y = network.complexes()[r.reactant].translate(&shift);
            let yp = network.complexes()[r.product].translate(&shift);
            reactions.push((id, y.coeffs, yp.coeffs));
            orders.push(slice.orders()[q].clone());
            rates.push(slice.rates()[q].clone());
            replica_of.push((j, q));
        }
    }
    Ok(StarMscTransform {
        network: Network::from_reactions(network.species_names(), reactions)?,
        kinetics: PowerLawKinetics::new(orders, rates)?,
        translation,
        h,
        replica_of,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Translation {
    /// Reactant complex (in the source network) of the translated reactions.
    pub node: usize,
    pub reactions: Vec<usize>,
    /// Reactant and product are shifted by `multiple` times the reactant.
    pub multiple: u64,
}

#[derive(Debug, Clone)]
pub struct CfRmPlusTransform {
    pub network: Network,
    pub kinetics: Kinetics,
    pub translations: Vec<Translation>,
}

/// Shifts the given reactions (all with reactant `y`) by `a y` for the smallest
/// `a >= start` that creates no collision with `taken`; returns the new
/// reactant/product vectors and `a`.
fn translate_group(
    network: &Network,
    reactions: &[usize],
    start: u64,
    taken: &HashSet<Complex>,
) -> Result<(Vec<(Complex, Complex)>, u64)> {
    let y = &network.complexes()[network.reactions()[reactions[0]].reactant];
    if y.is_zero() {
        return Err(Error::Unsupported("cannot translate reactions of the zero complex".into()));
    }
    let mut a = start.max(1);
    loop {
        let shift = y.scaled(&Q::from_integer(BigInt::from(a)));
        let new_y = y.translate(&shift.coeffs);
        let pairs: Vec<(Complex, Complex)> = reactions
            .iter()
            .map(|&q| {
                let p = &network.complexes()[network.reactions()[q].product];
                (new_y.clone(), p.translate(&shift.coeffs))
            })
            .collect();
        let clash = taken.contains(&new_y) || pairs.iter().any(|(_, p)| taken.contains(p) || p == &new_y);
        if !clash {
            return Ok((pairs, a));
        }
        a += 1;
    }
}

fn rebuild(network: &Network, replaced: &[(usize, Complex, Complex)]) -> Result<Network> {
    let reactions = network
        .reactions()
        .iter()
        .enumerate()
        .map(|(q, r)| match replaced.iter().find(|(j, _, _)| *j == q) {
            Some((_, y, p)) => (r.id.clone(), y.coeffs.clone(), p.coeffs.clone()),
            None => (
                r.id.clone(),
                network.complexes()[r.reactant].coeffs.clone(),
                network.complexes()[r.product].coeffs.clone(),
            ),
        })
        .collect();
    Network::from_reactions(network.species_names(), reactions)
}

/// Translates the given reactions, all sharing one reactant, by a fresh multiple of it.
pub fn lift_reactions(network: &Network, reactions: &[usize]) -> Result<(Network, Translation)> {
    let Some(&first) = reactions.first() else {
        return Err(Error::InvalidValue { what: "reaction set".into(), detail: "empty".into() });
    };
    let node = network.reactions()[first].reactant;
    if reactions.iter().any(|&q| network.reactions()[q].reactant != node) {
        return Err(Error::InvalidValue { what: "reaction set".into(), detail: "reactants differ".into() });
    }
    let taken: HashSet<Complex> = network.complexes().iter().cloned().collect();
    let (pairs, a) = translate_group(network, reactions, 1, &taken)?;
    let replaced: Vec<_> = reactions.iter().zip(pairs).map(|(&q, (y, p))| (q, y, p)).collect();
    Ok((rebuild(network, &replaced)?, Translation { node, reactions: reactions.to_vec(), multiple: a }))
}

/// At every non-factorizable node, keeps one largest CF-subset (ties go to the
/// lowest reaction index) and translates each other subset by a fresh multiple
/// of the reactant. Kinetic functions are unchanged.
pub fn cf_rm_plus(network: &Network, kinetics: &Kinetics) -> Result<CfRmPlusTransform> {
    kinetics.check_network(network)?;
    let cls = classify_cf(network, kinetics);
    let mut taken: HashSet<Complex> = network.complexes().iter().cloned().collect();
    let mut replaced = Vec::new();
    let mut translations = Vec::new();
    let mut next = 1u64;
    for node in cls.nodes.iter().filter(|n| n.subsets.len() > 1) {
        let keep = node
            .subsets
            .iter()
            .enumerate()
            .max_by(|(i, a), (j, b)| a.len().cmp(&b.len()).then(j.cmp(i)))
            .map(|(i, _)| i)
            .unwrap_or(0);
        for (s, subset) in node.subsets.iter().enumerate() {
            if s == keep {
                continue;
            }
            let (pairs, a) = translate_group(network, subset, next, &taken)?;
            next = a + 1;
            for (&q, (y, p)) in subset.iter().zip(pairs) {
                taken.insert(y.clone());
                taken.insert(p.clone());
                replaced.push((q, y, p));
            }
            translations.push(Translation { node: node.complex, reactions: subset.clone(), multiple: a });
        }
    }
    Ok(CfRmPlusTransform { network: rebuild(network, &replaced)?, kinetics: kinetics.clone(), translations })
}

/// Stoichiometric subspaces coincide (equal rank and mutual containment).
pub fn same_stoichiometric_subspace(a: &Network, b: &Network) -> bool {
    let va = a.reaction_vectors();
    let vb = b.reaction_vectors();
    let ra = crate::linalg::rank(&va);
    if ra != crate::linalg::rank(&vb) {
        return false;
    }
    let mut both = va;
    both.extend(vb);
    crate::linalg::rank(&both) == ra
}
