//! Concentration-robustness certificates.

use crate::error::Result;
use crate::kinetics::{classify_cf, Kinetics};
use crate::network::Network;
use crate::numerics::{check_pl_refinement, find_complex_balanced, find_equilibria, EquilibriumSet, SearchConfig};
use crate::pyk::canonical_poly_pl;
use crate::transforms::{cf_rm_plus, lift_reactions};

use super::certificate::{Certificate, CertificateKind, Status};
use super::decomposition::verify_decomposition;
use super::sf::{sf_pairs, SfPair, SfPairReport};

pub const ANCHOR_ACR: &str = "acr/deficiency-one-pl-equilibrated";
pub const ANCHOR_ACR_ZERO: &str = "acr/deficiency-zero-lift";
pub const ANCHOR_ACR_DECOMPOSITION: &str = "acr/independent-decomposition";
pub const ANCHOR_BCR: &str = "bcr/deficiency-one-pl-complex-balanced";
pub const ANCHOR_BCR_ZERO: &str = "bcr/deficiency-zero-equals-acr";

/// Inputs that are not derived from the model itself.
#[derive(Debug, Clone, Default)]
pub struct Evidence {
    /// The user vouches for PL-equilibration (ACR) or PL-complex balance (BCR).
    pub assert_pl: bool,
    pub search: SearchConfig,
}

fn fmt_point(x: &[f64]) -> String {
    let parts: Vec<String> = x.iter().map(|v| format!("{v:.6}")).collect();
    format!("({})", parts.join(", "))
}

fn pair_label(network: &Network, p: &SfPair) -> String {
    let rs = network.reactions();
    let slices: Vec<String> = p.slices.iter().map(usize::to_string).collect();
    format!("{{{}, {}}} (slice {})", rs[p.reactions[0]].id, rs[p.reactions[1]].id, slices.join(", "))
}

fn pairs_label(network: &Network, report: &SfPairReport, x: usize) -> String {
    let all: Vec<String> = report.in_species(x).map(|p| pair_label(network, p)).collect();
    if all.is_empty() {
        "none".into()
    } else {
        all.join("; ")
    }
}

/// First SF-pair in `x` whose reactant complexes are both nonterminal.
fn nonterminal_pair<'a>(network: &Network, report: &'a SfPairReport, x: usize) -> Option<&'a SfPair> {
    let rs = network.reactions();
    report.in_species(x).find(|p| p.reactions.iter().all(|&q| network.is_nonterminal(rs[q].reactant)))
}

/// First SF-pair in `x` whose reactant complexes lie in one linkage class.
fn same_class_pair<'a>(network: &Network, report: &'a SfPairReport, x: usize) -> Option<&'a SfPair> {
    let rs = network.reactions();
    report.in_species(x).find(|p| {
        network.linkage_class_of(rs[p.reactions[0]].reactant) == network.linkage_class_of(rs[p.reactions[1]].reactant)
    })
}

/// Status of the slice-refinement hypothesis at the points of `set`.
fn refinement_status(network: &Network, kinetics: &Kinetics, set: &EquilibriumSet, asserted: bool) -> Result<(Status, String)> {
    let canonical = canonical_poly_pl(kinetics)?;
    if canonical.h() == 1 {
        return Ok((Status::Verified, "single slice".into()));
    }
    if set.points.is_empty() {
        return Ok(if asserted {
            (Status::UserAsserted, "asserted; no points available to test".into())
        } else {
            (Status::Failed, "no points found to test".into())
        });
    }
    let rep = check_pl_refinement(network, &canonical, set)?;
    let worst = rep.slices.iter().map(|s| s.max_residual).fold(0.0, f64::max);
    if rep.all_pass {
        Ok((
            Status::NumericallySupported,
            format!("{} slices pass at {} points, max residual {worst:.3e}", rep.slices.len(), rep.points),
        ))
    } else {
        let bad: Vec<String> = rep.slices.iter().filter(|s| !s.pass).map(|s| format!("slice {} ({:.3e})", s.slice, s.max_residual)).collect();
        let mut listed = bad[..bad.len().min(MAX_LISTED)].join(", ");
        if bad.len() > MAX_LISTED {
            listed.push_str(&format!(" and {} more", bad.len() - MAX_LISTED));
        }
        Ok((Status::Failed, format!("contradicted at found points: {listed}")))
    }
}

/// Failing slices named in evidence before the rest are summarized by count.
const MAX_LISTED: usize = 4;

fn push_points(c: &mut Certificate, name: &str, set: &EquilibriumSet) {
    match set.points.first() {
        Some(p) => c.push(
            name,
            Status::NumericallySupported,
            format!("{} points found, e.g. {} (residual {:.1e})", set.points.len(), fmt_point(&p.x), p.residual),
        ),
        None => c.push(name, Status::Failed, "no point found in the search box"),
    }
}

/// A deficiency-one lift of a deficiency-zero system carrying an SF-pair in `x`
/// with nonterminal reactants, with a description of the translation.
fn lift_with_pair(network: &Network, kinetics: &Kinetics, x: usize) -> Result<Option<(Network, SfPair, String)>> {
    let cls = classify_cf(network, kinetics);
    let report = sf_pairs(network, kinetics)?;
    if cls.is_cf {
        for q in 0..network.num_reactions() {
            let Ok((lifted, tr)) = lift_reactions(network, &[q]) else {
                continue;
            };
            if lifted.deficiency() != 1 {
                continue;
            }
            if let Some(p) = nonterminal_pair(&lifted, &report, x) {
                let how = format!("{} translated by {} x its reactant", network.reactions()[q].id, tr.multiple);
                return Ok(Some((lifted, p.clone(), how)));
            }
        }
    } else if cls.minimally_nf {
        let t = cf_rm_plus(network, kinetics)?;
        if t.network.deficiency() == 1 {
            if let Some(p) = nonterminal_pair(&t.network, &report, x) {
                let moved: Vec<String> = t
                    .translations
                    .iter()
                    .flat_map(|tr| tr.reactions.iter().map(move |&q| (q, tr.multiple)))
                    .map(|(q, a)| format!("{} translated by {a} x its reactant", network.reactions()[q].id))
                    .collect();
                return Ok(Some((t.network, p.clone(), moved.join(", "))));
            }
        }
    }
    Ok(None)
}

/// ACR in `species`, by the deficiency-one theorem or, at deficiency zero,
/// by lifting to deficiency one first.
pub fn acr_certificate(network: &Network, kinetics: &Kinetics, species: &str, ev: &Evidence) -> Result<Certificate> {
    let x = network.species_index(species)?;
    kinetics.check_network(network)?;
    let delta = network.deficiency();
    if delta == 0 {
        return acr_deficiency_zero(network, kinetics, species, x, ev);
    }
    let mut c = Certificate::new(CertificateKind::Acr, Some(species.into()), "deficiency one", ANCHOR_ACR);
    c.check("deficiency one", delta == 1, format!("deficiency {delta}"));
    let cls = classify_cf(network, kinetics);
    c.check("complex factorizable", cls.is_cf, format!("{} CF-subsets over {} reactant complexes", cls.total_subsets, cls.n_r));
    let eq = find_equilibria(network, kinetics, &ev.search)?;
    let (status, evidence) = refinement_status(network, kinetics, &eq, ev.assert_pl)?;
    c.push("PL-equilibrated", status, evidence);
    push_points(&mut c, "positive equilibrium", &eq);
    let report = sf_pairs(network, kinetics)?;
    let found = nonterminal_pair(network, &report, x);
    c.check(
        "SF-pair with nonterminal reactants",
        found.is_some(),
        format!("SF-pairs in {species}: {}", pairs_label(network, &report, x)),
    );
    Ok(c.finish(&format!("ACR in {species}")))
}

fn acr_deficiency_zero(network: &Network, kinetics: &Kinetics, species: &str, x: usize, ev: &Evidence) -> Result<Certificate> {
    let mut c = Certificate::new(CertificateKind::Acr, Some(species.into()), "deficiency zero, lifted to deficiency one", ANCHOR_ACR_ZERO);
    c.check("deficiency zero", true, "deficiency 0");
    let cls = classify_cf(network, kinetics);
    let shape_ok = c.check(
        "complex factorizable or minimally NF",
        cls.is_cf || cls.minimally_nf,
        format!("{} NF nodes", cls.nf_nodes.len()),
    );
    let lift = if shape_ok { lift_with_pair(network, kinetics, x)? } else { None };
    match &lift {
        Some((lifted, _, how)) => {
            c.check("lift to deficiency one", true, format!("{how}; lifted deficiency {}", lifted.deficiency()));
        }
        None => {
            c.check("lift to deficiency one", false, "no translation gives deficiency one with a usable SF-pair");
        }
    }
    let eq = find_equilibria(network, kinetics, &ev.search)?;
    let (status, evidence) = refinement_status(network, kinetics, &eq, ev.assert_pl)?;
    c.push("PL-equilibrated", status, evidence);
    push_points(&mut c, "positive equilibrium", &eq);
    let report = sf_pairs(network, kinetics)?;
    let evidence = match &lift {
        Some((lifted, p, _)) => format!("{} in the lifted network", pair_label(lifted, p)),
        None => format!("SF-pairs in {species}: {}", pairs_label(network, &report, x)),
    };
    c.check("SF-pair with nonterminal reactants", lift.is_some(), evidence);
    Ok(c.finish(&format!("ACR in {species}")))
}

/// ACR in `species` from one block of an independent decomposition.
pub fn acr_via_decomposition(
    network: &Network,
    kinetics: &Kinetics,
    species: &str,
    partition: &[Vec<usize>],
    ev: &Evidence,
) -> Result<Certificate> {
    let x = network.species_index(species)?;
    kinetics.check_network(network)?;
    let dec = verify_decomposition(network, partition)?;
    if partition.len() == 1 {
        return acr_certificate(network, kinetics, species, ev);
    }
    let mut c = Certificate::new(CertificateKind::Acr, Some(species.into()), "independent decomposition", ANCHOR_ACR_DECOMPOSITION);
    let sum_s: usize = dec.blocks.iter().map(|b| b.s).sum();
    c.check("independent decomposition", dec.independent, format!("sum of block ranks {sum_s}, rank {}", network.rank()));
    let eq = find_equilibria(network, kinetics, &ev.search)?;
    push_points(&mut c, "positive equilibrium", &eq);
    let mut chosen = None;
    let mut notes = Vec::new();
    for (i, block) in partition.iter().enumerate() {
        let sub = network.subnetwork(block)?;
        let ks = kinetics.select(block);
        let cls = classify_cf(&sub, &ks);
        let d = sub.deficiency();
        let witness = match d {
            0 if cls.is_cf || cls.minimally_nf => lift_with_pair(&sub, &ks, x)?.map(|(l, p, _)| pair_label(&l, &p)),
            1 if cls.is_cf => nonterminal_pair(&sub, &sf_pairs(&sub, &ks)?, x).map(|p| pair_label(&sub, p)),
            _ => None,
        };
        notes.push(format!("block {}: deficiency {d}, CF {}", i + 1, cls.is_cf));
        if let Some(w) = witness {
            chosen = Some((i, sub, ks, format!("block {}: deficiency {d}, SF-pair {w}", i + 1)));
            break;
        }
    }
    match chosen {
        Some((_, sub, ks, evidence)) => {
            c.check("SF-type block", true, evidence);
            let beq = find_equilibria(&sub, &ks, &ev.search)?;
            let (status, evidence) = refinement_status(&sub, &ks, &beq, ev.assert_pl)?;
            c.push("block PL-equilibrated", status, evidence);
        }
        None => {
            c.check("SF-type block", false, notes.join("; "));
        }
    }
    Ok(c.finish(&format!("ACR in {species}")))
}

/// BCR in `species`. At deficiency zero positive equilibria are complex
/// balanced, so the ACR certificate is reused.
pub fn bcr_certificate(network: &Network, kinetics: &Kinetics, species: &str, ev: &Evidence) -> Result<Certificate> {
    let x = network.species_index(species)?;
    kinetics.check_network(network)?;
    let delta = network.deficiency();
    if delta == 0 {
        let mut c = acr_deficiency_zero(network, kinetics, species, x, ev)?;
        c.kind = CertificateKind::Bcr;
        c.route = "deficiency zero, BCR coincides with ACR".into();
        c.anchor = ANCHOR_BCR_ZERO.into();
        return Ok(c.finish(&format!("BCR in {species}")));
    }
    let mut c = Certificate::new(CertificateKind::Bcr, Some(species.into()), "deficiency one", ANCHOR_BCR);
    let gi = network.graph_indices();
    c.check("weak reversibility", gi.weakly_reversible, format!("l = {}, sl = {}", gi.l, gi.sl));
    c.check("deficiency one", delta == 1, format!("deficiency {delta}"));
    let cls = classify_cf(network, kinetics);
    c.check("complex factorizable", cls.is_cf, format!("{} CF-subsets over {} reactant complexes", cls.total_subsets, cls.n_r));
    let zs = find_complex_balanced(network, kinetics, &ev.search)?;
    let (status, evidence) = refinement_status(network, kinetics, &zs, ev.assert_pl)?;
    c.push("PL-complex balanced", status, evidence);
    push_points(&mut c, "complex-balanced equilibrium", &zs);
    let report = sf_pairs(network, kinetics)?;
    let found = same_class_pair(network, &report, x);
    c.check(
        "SF-pair within one linkage class",
        found.is_some(),
        format!("SF-pairs in {species}: {}", pairs_label(network, &report, x)),
    );
    Ok(c.finish(&format!("BCR in {species}")))
}
