//! The combined analysis report and its text rendering.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::io::Model;
use crate::kinetics::{classify_cf, CfClassification, Kinetics};
use crate::numerics::{find_complex_balanced, find_equilibria, verify_coincidence, CoincidenceReport, EquilibriumSet, SearchConfig};
use crate::poly::Polynomial;
use crate::pyk::{associated_poly_pl, canonical_poly_pl, is_ht_rdk, lcd};
use crate::structural::{
    ccb_certificate, kinetic_deficiency, linkage_class_partition, multistat_sign_check, sf_pairs, sf_pairs_numerator,
    ucb_certificate, verify_decomposition, Certificate, Decomposition, KineticDeficiency, SfPairReport, SignCheckReport,
    SIGN_CHECK_DEFAULT_CAP,
};

pub const SCHEMA_VERSION: &str = "1.0.0";

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NetworkBlock {
    pub species: Vec<String>,
    pub reactions: Vec<String>,
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub l: usize,
    pub sl: usize,
    pub t: usize,
    pub s: usize,
    pub delta: usize,
    pub weakly_reversible: bool,
    pub t_minimal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KineticsBlock {
    pub kind: String,
    pub cf_classification: CfClassification,
    /// Only defined for Hill-type kinetics.
    pub is_ht_rdk: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DenominatorFactor {
    pub factor: String,
    /// Total occurrences over all reactions.
    pub mu: usize,
    /// Power in the common denominator.
    pub omega: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PykBlock {
    pub h: usize,
    pub lcd_factors: Vec<DenominatorFactor>,
    /// Terms per reaction before canonical padding.
    pub term_counts: Vec<usize>,
    pub rates: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisBlock {
    pub sf_pairs: SfPairReport,
    pub sf_pairs_numerator: SfPairReport,
    pub certificates: Vec<Certificate>,
    pub decompositions: Vec<Decomposition>,
    pub sign_check: Option<SignCheckReport>,
    pub kinetic_deficiency: Option<KineticDeficiency>,
    /// Analyses that did not apply, with the reason.
    pub skipped: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NumericsBlock {
    pub equilibria: EquilibriumSet,
    pub complex_balanced: EquilibriumSet,
    pub coincidence: CoincidenceReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub schema_version: String,
    pub network: NetworkBlock,
    pub kinetics: KineticsBlock,
    pub pyk: PykBlock,
    pub analysis: AnalysisBlock,
    pub numerics: Option<NumericsBlock>,
}

#[derive(Debug, Clone, Default)]
pub struct ReportOptions {
    /// `None` skips the equilibrium search.
    pub search: Option<SearchConfig>,
}

pub fn network_block(model: &Model) -> NetworkBlock {
    let n = &model.network;
    let g = n.graph_indices();
    NetworkBlock {
        species: n.species_names(),
        reactions: (0..n.num_reactions()).map(|q| n.reaction_label(q)).collect(),
        m: n.num_species(),
        n: n.num_complexes(),
        r: n.num_reactions(),
        l: g.l,
        sl: g.sl,
        t: g.t,
        s: n.rank(),
        delta: n.deficiency(),
        weakly_reversible: g.weakly_reversible,
        t_minimal: g.t_minimal,
    }
}

fn pyk_block(model: &Model) -> Result<PykBlock> {
    let names = model.network.species_names();
    let k = &model.kinetics;
    let assoc = associated_poly_pl(k, false)?;
    let lcd_factors = match k {
        Kinetics::Hill(h) => lcd(h)?
            .factors
            .iter()
            .map(|f| DenominatorFactor { factor: f.factor.format(&names), mu: f.mu, omega: f.omega })
            .collect(),
        Kinetics::Pqk(p) => {
            let mut distinct: Vec<(Polynomial, usize)> = Vec::new();
            for d in p.denominators() {
                let c = d.terms()[0].coeff.recip();
                let monic = d.scale(&c);
                match distinct.iter_mut().find(|(e, _)| e.is_positively_proportional(&monic)) {
                    Some((_, mu)) => *mu += 1,
                    None => distinct.push((monic, 1)),
                }
            }
            distinct
                .into_iter()
                .map(|(d, mu)| DenominatorFactor { factor: d.format(&names), mu, omega: 1 })
                .collect()
        }
        _ => Vec::new(),
    };
    Ok(PykBlock {
        h: assoc.canonicalize()?.h(),
        lcd_factors,
        term_counts: assoc.term_counts(),
        rates: assoc.rates().iter().map(ToString::to_string).collect(),
    })
}

fn analysis_block(model: &Model) -> Result<AnalysisBlock> {
    let (n, k) = (&model.network, &model.kinetics);
    let mut skipped = Vec::new();
    let mut certificates = Vec::new();
    let mut note = |what: &str, e: crate::Error| skipped.push(format!("{what}: {e}"));
    let kinetic_deficiency = match kinetic_deficiency(n, k) {
        Ok(d) => Some(d),
        Err(e) => {
            note("kinetic deficiency", e);
            None
        }
    };
    match ucb_certificate(n, k) {
        Ok(c) => certificates.push(c),
        Err(e) => note("unique complex balance", e),
    }
    match ccb_certificate(n, k, &vec![1.0; n.num_species()]) {
        Ok(c) => certificates.push(c),
        Err(e) => note("complex balancing rates", e),
    }
    let sign_check = match multistat_sign_check(n, k, SIGN_CHECK_DEFAULT_CAP) {
        Ok(s) => Some(s),
        Err(e) => {
            note("sign check", e);
            None
        }
    };
    Ok(AnalysisBlock {
        sf_pairs: sf_pairs(n, k)?,
        sf_pairs_numerator: sf_pairs_numerator(n, k)?,
        certificates,
        decompositions: vec![verify_decomposition(n, &linkage_class_partition(n))?],
        sign_check,
        kinetic_deficiency,
        skipped,
    })
}

fn numerics_block(model: &Model, cfg: &SearchConfig) -> Result<NumericsBlock> {
    let (n, k) = (&model.network, &model.kinetics);
    let equilibria = find_equilibria(n, k, cfg)?;
    let complex_balanced = find_complex_balanced(n, k, cfg)?;
    let py = Kinetics::PolyPl(associated_poly_pl(k, false)?);
    let coincidence = verify_coincidence(n, k, &py, &[&equilibria, &complex_balanced])?;
    Ok(NumericsBlock { equilibria, complex_balanced, coincidence })
}

pub fn build_report(model: &Model, opts: &ReportOptions) -> Result<Report> {
    let (n, k) = (&model.network, &model.kinetics);
    let is_ht_rdk = match k {
        Kinetics::Hill(h) => Some(is_ht_rdk(n, h)?.is_ht_rdk),
        _ => None,
    };
    Ok(Report {
        schema_version: SCHEMA_VERSION.into(),
        network: network_block(model),
        kinetics: KineticsBlock { kind: k.kind().keyword().into(), cf_classification: classify_cf(n, k), is_ht_rdk },
        pyk: pyk_block(model)?,
        analysis: analysis_block(model)?,
        numerics: opts.search.as_ref().map(|cfg| numerics_block(model, cfg)).transpose()?,
    })
}

/// Associated kinetics as `k_q(...)` lines followed by the canonical slices.
pub fn render_pyk(model: &Model, reduce: bool) -> Result<String> {
    let names = model.network.species_names();
    let assoc = associated_poly_pl(&model.kinetics, reduce)?;
    let mut out = String::new();
    for (q, r) in model.network.reactions().iter().enumerate() {
        let _ = writeln!(out, "{}: {} * ({})", r.id, assoc.rates()[q], assoc.polynomial(q).format(&names));
    }
    let canon = if reduce { assoc.canonicalize()? } else { canonical_poly_pl(&model.kinetics)? };
    let _ = writeln!(out, "h = {}", canon.h());
    for (j, rows) in canon.slice_orders()?.iter().enumerate() {
        let cells: Vec<String> = rows
            .iter()
            .map(|row| format!("[{}]", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")))
            .collect();
        let _ = writeln!(out, "F{} = {}", j + 1, cells.join(" "));
    }
    Ok(out)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_certificate(out: &mut String, c: &Certificate) {
    let species = c.species.as_deref().map(|s| format!(" in {s}")).unwrap_or_default();
    let kind = c.kind.label();
    let _ = writeln!(out, "{kind}{species} via {} [{}]: {}", c.route, c.anchor, c.conclusion);
    for h in &c.hypotheses {
        if h.evidence.is_empty() {
            let _ = writeln!(out, "  - {}: {}", h.name, h.status.label());
        } else {
            let _ = writeln!(out, "  - {}: {} ({})", h.name, h.status.label(), h.evidence);
        }
    }
}

/// Human-readable summary of a report.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let nb = &report.network;
    let _ = writeln!(out, "network: m={} n={} r={} l={} sl={} t={} s={} delta={}", nb.m, nb.n, nb.r, nb.l, nb.sl, nb.t, nb.s, nb.delta);
    let _ = writeln!(out, "  weakly reversible: {}, t-minimal: {}", yes_no(nb.weakly_reversible), yes_no(nb.t_minimal));
    for r in &nb.reactions {
        let _ = writeln!(out, "  {r}");
    }
    let kb = &report.kinetics;
    let cf = &kb.cf_classification;
    let _ = writeln!(out, "kinetics: {} (complex factorizable: {}, minimally NF: {})", kb.kind, yes_no(cf.is_cf), yes_no(cf.minimally_nf));
    if let Some(h) = kb.is_ht_rdk {
        let _ = writeln!(out, "  HT-RDK: {}", yes_no(h));
    }
    let p = &report.pyk;
    let _ = writeln!(out, "associated poly-PL: h={} terms={:?}", p.h, p.term_counts);
    for f in &p.lcd_factors {
        let _ = writeln!(out, "  factor {} (mu={}, omega={})", f.factor, f.mu, f.omega);
    }
    let a = &report.analysis;
    let pair_line = |out: &mut String, title: &str, rep: &SfPairReport| {
        let _ = writeln!(out, "{title}: {}", rep.pairs.len());
        for sp in &rep.pairs {
            let (x, y) = (sp.reactions[0], sp.reactions[1]);
            let _ = writeln!(out, "  {{{}, {}}} in {} (slices {:?})", nb.reactions[x].split(':').next().unwrap_or(""), nb.reactions[y].split(':').next().unwrap_or(""), nb.species[sp.species], sp.slices);
        }
    };
    pair_line(&mut out, "SF-pairs (associated kinetics)", &a.sf_pairs);
    pair_line(&mut out, "SF-pairs (numerator kinetics)", &a.sf_pairs_numerator);
    if let Some(d) = &a.kinetic_deficiency {
        let _ = writeln!(out, "kinetic deficiencies: tilde={} hat={}", d.delta_tilde, d.delta_hat);
    }
    if let Some(s) = &a.sign_check {
        let _ = writeln!(out, "sign check: intersection nontrivial: {}", yes_no(s.nontrivial));
    }
    for d in &a.decompositions {
        let _ = writeln!(out, "decomposition into {} blocks: independent {}, incidence-independent {}", d.blocks.len(), yes_no(d.independent), yes_no(d.incidence_independent));
    }
    for c in &a.certificates {
        render_certificate(&mut out, c);
    }
    for s in &a.skipped {
        let _ = writeln!(out, "skipped {s}");
    }
    if let Some(nm) = &report.numerics {
        for set in [&nm.equilibria, &nm.complex_balanced] {
            let _ = writeln!(out, "{}: {} points", set.kind.label(), set.points.len());
        }
        let _ = writeln!(out, "coincidence: {} points, max residual {:e}, violators {}", nm.coincidence.checked, nm.coincidence.max_residual, nm.coincidence.violators.len());
    }
    out
}
