//! Kinetics: power-law, Hill-type, poly-PL and poly-PL quotients.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::network::Network;
use crate::num::{cmp_lex, vec_approx_eq, Num};
use crate::poly::{power, Monomial, Polynomial};

fn check_rates(rates: &[Num]) -> Result<()> {
    match rates.iter().position(|k| !k.is_positive()) {
        Some(index) => Err(Error::NonPositiveRate { index }),
        None => Ok(()),
    }
}

fn check_len(what: &str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { what: what.to_string(), expected, found });
    }
    Ok(())
}

fn check_matrix(what: &str, rows: &[Vec<Num>], r: usize, m: usize) -> Result<()> {
    check_len(&format!("{what} rows"), r, rows.len())?;
    for row in rows {
        check_len(&format!("{what} columns"), m, row.len())?;
    }
    Ok(())
}

/// Rejects negative or non-finite coordinates.
fn check_point(x: &[f64], m: usize) -> Result<()> {
    check_len("species vector", m, x.len())?;
    match x.iter().position(|v| !(*v >= 0.0) || !v.is_finite()) {
        Some(index) => Err(Error::NonPositiveInput { index }),
        None => Ok(()),
    }
}

/// Rejects zero coordinates where some exponent in `exps` is negative.
fn check_negative_exponents<'a>(x: &[f64], exps: impl Iterator<Item = &'a [Num]>) -> Result<()> {
    for row in exps {
        for (i, e) in row.iter().enumerate() {
            if x[i] == 0.0 && e.is_negative() {
                return Err(Error::NonPositiveInput { index: i });
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerLawKinetics {
    orders: Vec<Vec<Num>>,
    rates: Vec<Num>,
}

impl PowerLawKinetics {
    pub fn new(orders: Vec<Vec<Num>>, rates: Vec<Num>) -> Result<Self> {
        let m = orders.first().map_or(0, Vec::len);
        check_matrix("kinetic order matrix", &orders, rates.len(), m)?;
        check_rates(&rates)?;
        Ok(PowerLawKinetics { orders, rates })
    }

    /// Mass action: kinetic orders are the reactant complexes.
    pub fn mass_action(network: &Network, rates: Vec<Num>) -> Result<Self> {
        check_len("rate vector", network.num_reactions(), rates.len())?;
        let orders = network
            .reactions()
            .iter()
            .map(|r| network.complexes()[r.reactant].coeffs.iter().map(|c| Num::exact(c.clone())).collect())
            .collect();
        PowerLawKinetics::new(orders, rates)
    }

    pub fn orders(&self) -> &[Vec<Num>] {
        &self.orders
    }

    pub fn rates(&self) -> &[Num] {
        &self.rates
    }

    pub fn num_species(&self) -> usize {
        self.orders.first().map_or(0, Vec::len)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HillKinetics {
    orders: Vec<Vec<Num>>,
    dissociation: Vec<Vec<Num>>,
    rates: Vec<Num>,
}

impl HillKinetics {
    /// Validates dimensions, positivity and the paired-support convention
    /// (a dissociation constant is zero exactly where the kinetic order is zero).
    pub fn new(orders: Vec<Vec<Num>>, dissociation: Vec<Vec<Num>>, rates: Vec<Num>) -> Result<Self> {
        let m = orders.first().map_or(0, Vec::len);
        check_matrix("kinetic order matrix", &orders, rates.len(), m)?;
        check_matrix("dissociation matrix", &dissociation, rates.len(), m)?;
        check_rates(&rates)?;
        for (q, (f, d)) in orders.iter().zip(&dissociation).enumerate() {
            for (i, (fi, di)) in f.iter().zip(d).enumerate() {
                if di.is_negative() {
                    return Err(Error::InvalidValue {
                        what: format!("dissociation constant ({q}, {i})"),
                        detail: "negative".into(),
                    });
                }
                if fi.is_zero() != di.is_zero() {
                    return Err(Error::SuppViolation { reaction: q, species: i });
                }
            }
        }
        Ok(HillKinetics { orders, dissociation, rates })
    }

    pub fn orders(&self) -> &[Vec<Num>] {
        &self.orders
    }

    pub fn dissociation(&self) -> &[Vec<Num>] {
        &self.dissociation
    }

    pub fn rates(&self) -> &[Num] {
        &self.rates
    }

    pub fn num_species(&self) -> usize {
        self.orders.first().map_or(0, Vec::len)
    }

    pub fn num_reactions(&self) -> usize {
        self.rates.len()
    }

    /// Interaction of reaction `q`: the rate divided by `k_q`.
    pub fn interaction(&self, q: usize, x: &[f64]) -> f64 {
        let mut v = 1.0;
        for ((f, d), &xi) in self.orders[q].iter().zip(&self.dissociation[q]).zip(x) {
            let fv = f.to_f64();
            if fv == 0.0 {
                continue;
            }
            let d = d.to_f64();
            v *= if fv > 0.0 {
                let p = xi.powf(fv);
                p / (d + p)
            } else {
                1.0 / (d * xi.powf(-fv) + 1.0)
            };
        }
        v
    }

    /// The power-law kinetics formed by the numerators, `k_q x^{F_q}`.
    pub fn numerator_kinetics(&self) -> PowerLawKinetics {
        PowerLawKinetics { orders: self.orders.clone(), rates: self.rates.clone() }
    }
}

/// Per-reaction sums of power-law terms, kept sorted by exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyPlKinetics {
    nvars: usize,
    rates: Vec<Num>,
    terms: Vec<Vec<Monomial>>,
}

impl PolyPlKinetics {
    /// Normalizes each term list (sorted, like terms merged, zero terms dropped).
    pub fn new(nvars: usize, rates: Vec<Num>, terms: Vec<Polynomial>) -> Result<Self> {
        check_len("term lists", rates.len(), terms.len())?;
        check_rates(&rates)?;
        for (q, p) in terms.iter().enumerate() {
            check_len("exponent vector", nvars, p.nvars())?;
            if p.is_empty() {
                return Err(Error::EmptyTermList(q));
            }
            if !p.all_coefficients_nonnegative() {
                return Err(Error::InvalidValue {
                    what: format!("term coefficient of reaction {q}"),
                    detail: "negative".into(),
                });
            }
        }
        Ok(PolyPlKinetics { nvars, rates, terms: terms.into_iter().map(Polynomial::into_terms).collect() })
    }

    pub fn rates(&self) -> &[Num] {
        &self.rates
    }

    pub fn terms(&self) -> &[Vec<Monomial>] {
        &self.terms
    }

    pub fn num_species(&self) -> usize {
        self.nvars
    }

    pub fn num_reactions(&self) -> usize {
        self.rates.len()
    }

    pub fn term_counts(&self) -> Vec<usize> {
        self.terms.iter().map(Vec::len).collect()
    }

    /// Maximal term count.
    pub fn h(&self) -> usize {
        self.terms.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_canonical(&self) -> bool {
        let h = self.h();
        self.terms.iter().all(|t| t.len() == h)
    }

    /// The interaction of reaction `q` as a merged polynomial.
    pub fn polynomial(&self, q: usize) -> Polynomial {
        Polynomial::from_terms(self.nvars, self.terms[q].clone())
    }

    /// Length normalization: the last term of every shorter list is split
    /// into equal copies until all lists have `h` terms.
    pub fn canonicalize(&self) -> Result<PolyPlKinetics> {
        if let Some(q) = self.terms.iter().position(Vec::is_empty) {
            return Err(Error::EmptyTermList(q));
        }
        let h = self.h();
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut t = t.clone();
                let missing = h - t.len();
                if missing > 0 {
                    let last = t.pop().expect("nonempty");
                    let copies = missing + 1;
                    let c = &last.coeff / &Num::int(copies as i64);
                    t.extend((0..copies).map(|_| Monomial::new(c.clone(), last.exponents.clone())));
                }
                t
            })
            .collect();
        Ok(PolyPlKinetics { nvars: self.nvars, rates: self.rates.clone(), terms })
    }

    /// Slice `j` (0-based) of a canonical representation: the power-law kinetics
    /// with rates `k_q a_qj` and kinetic orders `F_qj`.
    pub fn slice(&self, j: usize) -> Result<PowerLawKinetics> {
        if !self.is_canonical() {
            return Err(Error::NonCanonicalKinetics);
        }
        let h = self.h();
        if j >= h {
            return Err(Error::IndexOutOfRange { what: "slice", index: j, len: h });
        }
        Ok(PowerLawKinetics {
            orders: self.terms.iter().map(|t| t[j].exponents.clone()).collect(),
            rates: self.terms.iter().zip(&self.rates).map(|(t, k)| &t[j].coeff * k).collect(),
        })
    }

    /// Kinetic-order matrices of all slices of the canonical representation.
    pub fn slice_orders(&self) -> Result<Vec<Vec<Vec<Num>>>> {
        let c = if self.is_canonical() { self.clone() } else { self.canonicalize()? };
        Ok((0..c.h()).map(|j| c.terms.iter().map(|t| t[j].exponents.clone()).collect()).collect())
    }

    /// Copy with one term coefficient replaced.
    pub fn with_term_coefficient(&self, q: usize, j: usize, coeff: Num) -> Result<PolyPlKinetics> {
        let len = self.terms.get(q).map_or(0, Vec::len);
        if j >= len {
            return Err(Error::IndexOutOfRange { what: "term", index: j, len });
        }
        let mut out = self.clone();
        out.terms[q][j].coeff = coeff;
        Ok(out)
    }
}

/// Quotients `k_q M_q / T_q` of poly-PL numerators and denominators.
#[derive(Debug, Clone, PartialEq)]
pub struct PqKinetics {
    rates: Vec<Num>,
    numerators: Vec<Polynomial>,
    denominators: Vec<Polynomial>,
}

impl PqKinetics {
    pub fn new(rates: Vec<Num>, numerators: Vec<Polynomial>, denominators: Vec<Polynomial>) -> Result<Self> {
        check_len("numerators", rates.len(), numerators.len())?;
        check_len("denominators", rates.len(), denominators.len())?;
        check_rates(&rates)?;
        let m = numerators.first().map_or(0, Polynomial::nvars);
        for (q, (n, d)) in numerators.iter().zip(&denominators).enumerate() {
            check_len("numerator variables", m, n.nvars())?;
            check_len("denominator variables", m, d.nvars())?;
            if n.is_empty() {
                return Err(Error::EmptyTermList(q));
            }
            if d.is_empty() {
                return Err(Error::EmptyDenominator(q));
            }
            if !n.all_coefficients_nonnegative() || !d.all_coefficients_nonnegative() {
                return Err(Error::InvalidValue {
                    what: format!("reaction {q}"),
                    detail: "negative coefficient in a quotient".into(),
                });
            }
        }
        Ok(PqKinetics { rates, numerators, denominators })
    }

    /// Quotient form of Hill-type data without the paired-support requirement:
    /// `M_q = x^{F_q}` and `T_q = prod_i (d_qi + x_i^{F_qi})`.
    pub fn from_hill_form(orders: &[Vec<Num>], dissociation: &[Vec<Num>], rates: Vec<Num>) -> Result<Self> {
        let m = orders.first().map_or(0, Vec::len);
        check_matrix("kinetic order matrix", orders, rates.len(), m)?;
        check_matrix("dissociation matrix", dissociation, rates.len(), m)?;
        let mut nums = Vec::new();
        let mut dens = Vec::new();
        for (f, d) in orders.iter().zip(dissociation) {
            nums.push(Polynomial::monomial(Num::one(), f.clone()));
            let mut t = Polynomial::constant(Num::one(), m);
            for (i, (fi, di)) in f.iter().zip(d).enumerate() {
                let factor = Polynomial::constant(di.clone(), m).add(&Polynomial::variable_power(i, fi.clone(), m));
                t = t.mul(&factor);
            }
            dens.push(t);
        }
        PqKinetics::new(rates, nums, dens)
    }

    pub fn from_hill(k: &HillKinetics) -> Result<Self> {
        PqKinetics::from_hill_form(&k.orders, &k.dissociation, k.rates.clone())
    }

    pub fn rates(&self) -> &[Num] {
        &self.rates
    }

    pub fn numerators(&self) -> &[Polynomial] {
        &self.numerators
    }

    pub fn denominators(&self) -> &[Polynomial] {
        &self.denominators
    }

    pub fn num_species(&self) -> usize {
        self.numerators.first().map_or(0, Polynomial::nvars)
    }

    pub fn num_reactions(&self) -> usize {
        self.rates.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KineticsKind {
    PowerLaw,
    Hill,
    PolyPl,
    Pqk,
}

impl KineticsKind {
    pub fn keyword(self) -> &'static str {
        match self {
            KineticsKind::PowerLaw => "powerlaw",
            KineticsKind::Hill => "hill",
            KineticsKind::PolyPl => "polypl",
            KineticsKind::Pqk => "pqk",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Kinetics {
    PowerLaw(PowerLawKinetics),
    Hill(HillKinetics),
    PolyPl(PolyPlKinetics),
    Pqk(PqKinetics),
}

impl Kinetics {
    pub fn kind(&self) -> KineticsKind {
        match self {
            Kinetics::PowerLaw(_) => KineticsKind::PowerLaw,
            Kinetics::Hill(_) => KineticsKind::Hill,
            Kinetics::PolyPl(_) => KineticsKind::PolyPl,
            Kinetics::Pqk(_) => KineticsKind::Pqk,
        }
    }

    pub fn rates(&self) -> &[Num] {
        match self {
            Kinetics::PowerLaw(k) => &k.rates,
            Kinetics::Hill(k) => &k.rates,
            Kinetics::PolyPl(k) => &k.rates,
            Kinetics::Pqk(k) => &k.rates,
        }
    }

    pub fn rate_constants(&self) -> Vec<f64> {
        self.rates().iter().map(Num::to_f64).collect()
    }

    pub fn num_reactions(&self) -> usize {
        self.rates().len()
    }

    pub fn num_species(&self) -> usize {
        match self {
            Kinetics::PowerLaw(k) => k.num_species(),
            Kinetics::Hill(k) => k.num_species(),
            Kinetics::PolyPl(k) => k.num_species(),
            Kinetics::Pqk(k) => k.num_species(),
        }
    }

    /// Checks that the kinetics matches the network's reaction and species counts.
    pub fn check_network(&self, network: &Network) -> Result<()> {
        check_len("kinetics reactions", network.num_reactions(), self.num_reactions())?;
        if self.num_reactions() > 0 {
            check_len("kinetics species", network.num_species(), self.num_species())?;
        }
        Ok(())
    }

    /// Interaction values `K_q(x) / k_q`.
    pub fn interactions(&self, x: &[f64]) -> Result<Vec<f64>> {
        let m = self.num_species();
        check_point(x, m)?;
        match self {
            Kinetics::PowerLaw(k) => {
                check_negative_exponents(x, k.orders.iter().map(Vec::as_slice))?;
                Ok(k.orders.iter().map(|f| power(f, x)).collect())
            }
            Kinetics::Hill(k) => Ok((0..k.num_reactions()).map(|q| k.interaction(q, x)).collect()),
            Kinetics::PolyPl(k) => {
                check_negative_exponents(x, k.terms.iter().flatten().map(|t| t.exponents.as_slice()))?;
                Ok(k.terms.iter().map(|t| t.iter().map(|m| m.eval(x)).sum()).collect())
            }
            Kinetics::Pqk(k) => {
                let all = k.numerators.iter().chain(&k.denominators);
                check_negative_exponents(x, all.flat_map(|p| p.terms()).map(|t| t.exponents.as_slice()))?;
                k.numerators
                    .iter()
                    .zip(&k.denominators)
                    .map(|(n, d)| {
                        let dv = d.eval(x);
                        if dv > 0.0 {
                            Ok(n.eval(x) / dv)
                        } else {
                            let index = x.iter().position(|v| *v == 0.0).unwrap_or(0);
                            Err(Error::NonPositiveInput { index })
                        }
                    })
                    .collect()
            }
        }
    }

    /// Rate vector `K(x)`.
    pub fn evaluate(&self, x: &[f64]) -> Result<Vec<f64>> {
        let i = self.interactions(x)?;
        Ok(i.iter().zip(self.rates()).map(|(v, k)| v * k.to_f64()).collect())
    }

    /// Same shape with new rate constants.
    pub fn with_rates(&self, rates: Vec<Num>) -> Result<Kinetics> {
        check_len("rate vector", self.num_reactions(), rates.len())?;
        check_rates(&rates)?;
        let mut out = self.clone();
        match &mut out {
            Kinetics::PowerLaw(k) => k.rates = rates,
            Kinetics::Hill(k) => k.rates = rates,
            Kinetics::PolyPl(k) => k.rates = rates,
            Kinetics::Pqk(k) => k.rates = rates,
        }
        Ok(out)
    }

    /// Kinetics restricted to a subset of reactions, in the given order.
    pub fn select(&self, reactions: &[usize]) -> Kinetics {
        fn pick<T: Clone>(v: &[T], idx: &[usize]) -> Vec<T> {
            idx.iter().map(|&i| v[i].clone()).collect()
        }
        match self {
            Kinetics::PowerLaw(k) => Kinetics::PowerLaw(PowerLawKinetics {
                orders: pick(&k.orders, reactions),
                rates: pick(&k.rates, reactions),
            }),
            Kinetics::Hill(k) => Kinetics::Hill(HillKinetics {
                orders: pick(&k.orders, reactions),
                dissociation: pick(&k.dissociation, reactions),
                rates: pick(&k.rates, reactions),
            }),
            Kinetics::PolyPl(k) => Kinetics::PolyPl(PolyPlKinetics {
                nvars: k.nvars,
                rates: pick(&k.rates, reactions),
                terms: pick(&k.terms, reactions),
            }),
            Kinetics::Pqk(k) => Kinetics::Pqk(PqKinetics {
                rates: pick(&k.rates, reactions),
                numerators: pick(&k.numerators, reactions),
                denominators: pick(&k.denominators, reactions),
            }),
        }
    }

    /// Whether reactions `a` and `b` have positively proportional kinetic functions.
    pub fn cf_equivalent(&self, a: usize, b: usize) -> bool {
        match self {
            Kinetics::PowerLaw(k) => vec_approx_eq(&k.orders[a], &k.orders[b]),
            Kinetics::Hill(k) => {
                vec_approx_eq(&k.orders[a], &k.orders[b]) && vec_approx_eq(&k.dissociation[a], &k.dissociation[b])
            }
            Kinetics::PolyPl(k) => k.polynomial(a).is_positively_proportional(&k.polynomial(b)),
            Kinetics::Pqk(k) => {
                let lhs = k.numerators[a].mul(&k.denominators[b]);
                let rhs = k.numerators[b].mul(&k.denominators[a]);
                lhs.is_positively_proportional(&rhs)
            }
        }
    }
}

/// Species formation rate `f(x) = N K(x)`.
pub fn sfrf(network: &Network, kinetics: &Kinetics, x: &[f64]) -> Result<Vec<f64>> {
    kinetics.check_network(network)?;
    let k = kinetics.evaluate(x)?;
    Ok(apply_reaction_vectors(&network.reaction_vectors_f64(), &k, network.num_species()))
}

pub fn apply_reaction_vectors(vectors: &[Vec<f64>], rates: &[f64], m: usize) -> Vec<f64> {
    let mut f = vec![0.0; m];
    for (v, &k) in vectors.iter().zip(rates) {
        for (fi, vi) in f.iter_mut().zip(v) {
            *fi += vi * k;
        }
    }
    f
}

/// Complex formation rate `g(x) = Ia K(x)`.
pub fn cfrf(network: &Network, kinetics: &Kinetics, x: &[f64]) -> Result<Vec<f64>> {
    kinetics.check_network(network)?;
    let k = kinetics.evaluate(x)?;
    Ok(apply_incidence(network, &k))
}

pub fn apply_incidence(network: &Network, rates: &[f64]) -> Vec<f64> {
    let mut g = vec![0.0; network.num_complexes()];
    for (r, &k) in network.reactions().iter().zip(rates) {
        g[r.reactant] -= k;
        g[r.product] += k;
    }
    g
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CfNode {
    pub complex: usize,
    pub subsets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CfClassification {
    pub nodes: Vec<CfNode>,
    pub n_r: usize,
    pub total_subsets: usize,
    pub is_cf: bool,
    pub nf_nodes: Vec<usize>,
    pub minimally_nf: bool,
    pub maximally_nf_nodes: Vec<usize>,
}

/// Groups the reactions of each reactant complex into CF-subsets.
pub fn classify_cf(network: &Network, kinetics: &Kinetics) -> CfClassification {
    let mut nodes = Vec::new();
    for (complex, rs) in network.reactant_map() {
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        for &q in &rs {
            match subsets.iter_mut().find(|s| kinetics.cf_equivalent(s[0], q)) {
                Some(s) => s.push(q),
                None => subsets.push(vec![q]),
            }
        }
        nodes.push(CfNode { complex, subsets });
    }
    let n_r = nodes.len();
    let total_subsets = nodes.iter().map(|n| n.subsets.len()).sum();
    let nf: Vec<&CfNode> = nodes.iter().filter(|n| n.subsets.len() > 1).collect();
    let minimally_nf = nf.len() == 1 && nf[0].subsets.len() == 2 && nf[0].subsets.iter().any(|s| s.len() == 1);
    let maximally_nf_nodes = nf
        .iter()
        .filter(|n| n.subsets.iter().all(|s| s.len() == 1))
        .map(|n| n.complex)
        .collect();
    CfClassification {
        nf_nodes: nf.iter().map(|n| n.complex).collect(),
        is_cf: total_subsets == n_r,
        nodes,
        n_r,
        total_subsets,
        minimally_nf,
        maximally_nf_nodes,
    }
}

/// Sorted copy of a list of exponent rows (used to compare canonical slices).
pub fn sorted_rows(rows: &[Vec<Num>]) -> Vec<Vec<Num>> {
    let mut r = rows.to_vec();
    r.sort_by(|a, b| cmp_lex(a, b));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn row(v: &[i64]) -> Vec<Num> {
        v.iter().map(|&x| Num::int(x)).collect()
    }

    fn mm() -> (Network, Kinetics) {
        let n = Network::from_reactions(
            vec!["X1".into(), "X2".into()],
            vec![
                ("R1".into(), vec![q(1), q(0)], vec![q(0), q(1)]),
                ("R2".into(), vec![q(0), q(1)], vec![q(1), q(0)]),
            ],
        )
        .unwrap();
        let k = HillKinetics::new(vec![row(&[1, 0]), row(&[0, 1])], vec![row(&[1, 0]), row(&[0, 1])], row(&[1, 2])).unwrap();
        (n, Kinetics::Hill(k))
    }

    #[test]
    fn hill_rates_and_equilibrium() {
        let (n, k) = mm();
        let k1 = k.with_rates(row(&[1, 1])).unwrap();
        assert_eq!(k1.evaluate(&[1.0, 1.0]).unwrap(), vec![0.5, 0.5]);
        let f = sfrf(&n, &k, &[1.0, 1.0 / 3.0]).unwrap();
        assert!(f.iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn supp_violation_rejected() {
        let e = HillKinetics::new(vec![row(&[1, 0]), row(&[1, 1])], vec![row(&[1, 0]), row(&[1, 0])], row(&[1, 1]));
        assert_eq!(e.unwrap_err(), Error::SuppViolation { reaction: 1, species: 1 });
    }

    #[test]
    fn negative_exponent_needs_positive_input() {
        let k = Kinetics::PowerLaw(PowerLawKinetics::new(vec![vec![Num::Float(-0.5)]], row(&[1])).unwrap());
        assert_eq!(k.evaluate(&[0.0]).unwrap_err(), Error::NonPositiveInput { index: 0 });
        assert!(k.evaluate(&[-1.0]).is_err());
        assert!((k.evaluate(&[4.0]).unwrap()[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn hill_is_defined_on_the_boundary() {
        let k = HillKinetics::new(vec![vec![Num::Float(-0.8429)]], vec![row(&[1])], row(&[1])).unwrap();
        assert_eq!(Kinetics::Hill(k).evaluate(&[0.0]).unwrap(), vec![1.0]);
    }

    #[test]
    fn canonicalize_splits_last_term() {
        let p1 = Polynomial::from_terms(1, vec![Monomial::new(Num::int(1), row(&[0])), Monomial::new(Num::int(1), row(&[1]))]);
        let p2 = Polynomial::monomial(Num::int(3), row(&[2]));
        let k = PolyPlKinetics::new(1, row(&[1, 1]), vec![p1, p2]).unwrap();
        assert!(!k.is_canonical());
        assert!(matches!(k.slice(0), Err(Error::NonCanonicalKinetics)));
        let c = k.canonicalize().unwrap();
        assert_eq!(c.term_counts(), vec![2, 2]);
        assert_eq!(c.terms()[1][0].coeff, Num::ratio(3, 2));
        assert_eq!(c.slice(1).unwrap().orders()[1], row(&[2]));
    }

    #[test]
    fn branching_node_classification() {
        let n = Network::from_reactions(
            vec!["X1".into(), "X2".into()],
            vec![
                ("R1".into(), vec![q(1), q(1)], vec![q(1), q(0)]),
                ("R2".into(), vec![q(1), q(1)], vec![q(0), q(1)]),
            ],
        )
        .unwrap();
        let nf = HillKinetics::new(vec![row(&[1, 0]), row(&[1, 1])], vec![row(&[1, 0]), row(&[1, 1])], row(&[1, 1])).unwrap();
        let c = classify_cf(&n, &Kinetics::Hill(nf));
        assert!(!c.is_cf);
        assert!(c.minimally_nf);
        assert_eq!(c.total_subsets, 2);
        assert_eq!(c.maximally_nf_nodes, vec![0]);

        // Interactions x1/(1+x1) for both, written as quotients violating the paired supports.
        let pq = PqKinetics::from_hill_form(&[row(&[1, 0]), row(&[1, 1])], &[row(&[1, 0]), row(&[1, 0])], row(&[1, 1])).unwrap();
        let c = classify_cf(&n, &Kinetics::Pqk(pq));
        assert!(c.is_cf);
    }
}
