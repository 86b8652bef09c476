//! Association of a poly-PL kinetics to Hill-type and quotient kinetics.
//!
//! A Hill-type rate `k_q M_q / T_q` is rewritten over a common denominator built
//! from binomial factors; the numerators over that denominator form the
//! associated poly-PL kinetics, which shares positive equilibria and
//! complex-balanced equilibria with the original.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kinetics::{apply_incidence, classify_cf, HillKinetics, Kinetics, PolyPlKinetics, PqKinetics};
use crate::network::Network;
use crate::num::Num;
use crate::poly::{Monomial, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorKind {
    /// `d + x_i^f`
    Direct,
    /// `d x_i^f + 1`, obtained by clearing a negative kinetic order.
    ReciprocalCleared,
}

/// A binomial factor in one species with positive exponent and constant.
#[derive(Debug, Clone, PartialEq)]
pub struct BiPlFactor {
    pub species: usize,
    pub exponent: Num,
    pub constant: Num,
    pub kind: FactorKind,
}

impl BiPlFactor {
    /// Equal as polynomials: `1 + x^f` arises from both clearing routes.
    pub fn same_as(&self, other: &BiPlFactor) -> bool {
        let constants = if self.kind == other.kind {
            self.constant.approx_eq(&other.constant)
        } else {
            self.constant.approx_eq(&Num::one()) && other.constant.approx_eq(&Num::one())
        };
        self.species == other.species && self.exponent.approx_eq(&other.exponent) && constants
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let p = x[self.species].powf(self.exponent.to_f64());
        let d = self.constant.to_f64();
        match self.kind {
            FactorKind::Direct => d + p,
            FactorKind::ReciprocalCleared => d * p + 1.0,
        }
    }

    pub fn to_polynomial(&self, m: usize) -> Polynomial {
        let xp = Polynomial::variable_power(self.species, self.exponent.clone(), m);
        match self.kind {
            FactorKind::Direct => Polynomial::constant(self.constant.clone(), m).add(&xp),
            FactorKind::ReciprocalCleared => xp.scale(&self.constant).add(&Polynomial::constant(Num::one(), m)),
        }
    }

    pub fn format(&self, names: &[String]) -> String {
        let x = crate::poly::format_monomial(&Num::one(), &unit_exponent(self.species, &self.exponent, names.len()), names);
        match self.kind {
            FactorKind::Direct => format!("({} + {})", self.constant, x),
            FactorKind::ReciprocalCleared if self.constant.approx_eq(&Num::one()) => format!("({x} + 1)"),
            FactorKind::ReciprocalCleared => format!("({}*{x} + 1)", self.constant),
        }
    }
}

fn unit_exponent(i: usize, e: &Num, m: usize) -> Vec<Num> {
    let mut v = vec![Num::zero(); m];
    v[i] = e.clone();
    v
}

/// A raw Hill factor `d + x_i^f` with a negative order.
#[derive(Debug, Clone, PartialEq)]
pub struct HillFactor {
    pub species: usize,
    pub constant: Num,
    pub order: Num,
}

/// Numerator and denominator of one Hill-type rate split by exponent sign:
/// `M/T = M+ / (T+ T')` where `T'` clears the negative orders.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitReaction {
    pub positive_numerator: Vec<Num>,
    pub negative_numerator: Vec<Num>,
    pub positive_denominator: Vec<BiPlFactor>,
    pub negative_denominator: Vec<HillFactor>,
    pub cleared_denominator: Vec<BiPlFactor>,
}

impl SplitReaction {
    /// Factors of `T+ T'`.
    pub fn denominator_factors(&self) -> impl Iterator<Item = &BiPlFactor> {
        self.positive_denominator.iter().chain(&self.cleared_denominator)
    }
}

pub fn split_reaction(k: &HillKinetics, q: usize) -> Result<SplitReaction> {
    let r = k.num_reactions();
    if q >= r {
        return Err(Error::IndexOutOfRange { what: "reaction", index: q, len: r });
    }
    let m = k.num_species();
    let mut s = SplitReaction {
        positive_numerator: vec![Num::zero(); m],
        negative_numerator: vec![Num::zero(); m],
        positive_denominator: Vec::new(),
        negative_denominator: Vec::new(),
        cleared_denominator: Vec::new(),
    };
    for (i, (f, d)) in k.orders()[q].iter().zip(&k.dissociation()[q]).enumerate() {
        if f.is_zero() {
            if !d.is_zero() {
                return Err(Error::SuppViolation { reaction: q, species: i });
            }
            continue;
        }
        if d.is_zero() {
            return Err(Error::SuppViolation { reaction: q, species: i });
        }
        if f.is_positive() {
            s.positive_numerator[i] = f.clone();
            s.positive_denominator.push(BiPlFactor {
                species: i,
                exponent: f.clone(),
                constant: d.clone(),
                kind: FactorKind::Direct,
            });
        } else {
            s.negative_numerator[i] = f.clone();
            s.negative_denominator.push(HillFactor { species: i, constant: d.clone(), order: f.clone() });
            s.cleared_denominator.push(BiPlFactor {
                species: i,
                exponent: f.abs(),
                constant: d.clone(),
                kind: FactorKind::ReciprocalCleared,
            });
        }
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LcdFactor {
    pub factor: BiPlFactor,
    /// Total occurrences over all reactions.
    pub mu: usize,
    /// Maximal occurrences within one reaction.
    pub omega: usize,
}

/// Least common denominator of a Hill-type kinetics and the cofactor table.
#[derive(Debug, Clone, PartialEq)]
pub struct LcdStructure {
    pub factors: Vec<LcdFactor>,
    /// `reaction_factors[q][l]`: multiplicity of factor `l` in `T_q+ T_q'`.
    pub reaction_factors: Vec<Vec<usize>>,
    /// `cofactors[q][l]`: multiplicity of factor `l` in `L_q = LCD / (T_q+ T_q')`.
    pub cofactors: Vec<Vec<usize>>,
    pub splits: Vec<SplitReaction>,
}

impl LcdStructure {
    pub fn eval(&self, x: &[f64]) -> f64 {
        self.factors.iter().map(|f| f.factor.eval(x).powi(f.omega as i32)).product()
    }
}

pub fn lcd(k: &HillKinetics) -> Result<LcdStructure> {
    let r = k.num_reactions();
    let splits = (0..r).map(|q| split_reaction(k, q)).collect::<Result<Vec<_>>>()?;
    let mut distinct: Vec<BiPlFactor> = Vec::new();
    let mut counts: Vec<Vec<usize>> = Vec::with_capacity(r);
    for s in &splits {
        let mut c = vec![0; distinct.len()];
        for f in s.denominator_factors() {
            let l = match distinct.iter().position(|g| g.same_as(f)) {
                Some(l) => l,
                None => {
                    distinct.push(f.clone());
                    c.push(0);
                    distinct.len() - 1
                }
            };
            c[l] += 1;
        }
        counts.push(c);
    }
    let nf = distinct.len();
    for c in counts.iter_mut() {
        c.resize(nf, 0);
    }
    let factors: Vec<LcdFactor> = distinct
        .into_iter()
        .enumerate()
        .map(|(l, factor)| LcdFactor {
            factor,
            mu: counts.iter().map(|c| c[l]).sum(),
            omega: counts.iter().map(|c| c[l]).max().unwrap_or(0),
        })
        .collect();
    let cofactors = counts
        .iter()
        .map(|c| c.iter().zip(&factors).map(|(n, f)| f.omega - n).collect())
        .collect();
    Ok(LcdStructure { factors, reaction_factors: counts, cofactors, splits })
}

/// `K_PY,q = k_q M_q+ L_q`, expanded with like terms merged.
pub fn associate_pyk(k: &HillKinetics) -> Result<PolyPlKinetics> {
    let s = lcd(k)?;
    let m = k.num_species();
    let polys: Vec<Polynomial> = s.factors.iter().map(|f| f.factor.to_polynomial(m)).collect();
    let terms = (0..k.num_reactions())
        .map(|q| {
            let mut p = Polynomial::monomial(Num::one(), s.splits[q].positive_numerator.clone());
            for (l, &e) in s.cofactors[q].iter().enumerate() {
                if e > 0 {
                    p = p.mul(&polys[l].pow(e));
                }
            }
            p
        })
        .collect();
    PolyPlKinetics::new(m, k.rates().to_vec(), terms)
}

/// `K_PY,q = k_q M_q T_(q)` for quotient kinetics.
///
/// Without `reduce`, `T_(q)` is the product of the distinct denominators other
/// than `T_q` (proportional denominators count once). With `reduce`, an
/// LCM-style denominator is used: the largest monomial content times the
/// distinct primitive parts.
pub fn associate_pqk(k: &PqKinetics, reduce: bool) -> Result<PolyPlKinetics> {
    let m = k.num_species();
    if let Some(q) = k.denominators().iter().position(Polynomial::is_empty) {
        return Err(Error::EmptyDenominator(q));
    }
    let cofactors = if reduce { reduced_cofactors(k.denominators(), m) } else { product_cofactors(k.denominators(), m) };
    let terms = k.numerators().iter().zip(cofactors).map(|(n, c)| n.mul(&c)).collect();
    PolyPlKinetics::new(m, k.rates().to_vec(), terms)
}

/// First term coefficient normalized to one.
fn monic(p: &Polynomial) -> (Num, Polynomial) {
    let c = p.terms()[0].coeff.clone();
    (c.clone(), p.scale(&c.recip()))
}

fn same_poly(a: &Polynomial, b: &Polynomial) -> bool {
    a.len() == b.len()
        && a.terms().iter().zip(b.terms()).all(|(x, y)| {
            x.coeff.approx_eq(&y.coeff) && crate::num::vec_approx_eq(&x.exponents, &y.exponents)
        })
}

fn product_cofactors(dens: &[Polynomial], m: usize) -> Vec<Polynomial> {
    let mut reps: Vec<Polynomial> = Vec::new();
    let mut which: Vec<(usize, Num)> = Vec::new();
    for d in dens {
        let (c, p) = monic(d);
        let i = match reps.iter().position(|r| same_poly(r, &p)) {
            Some(i) => i,
            None => {
                reps.push(p);
                reps.len() - 1
            }
        };
        which.push((i, c));
    }
    which
        .iter()
        .map(|(i, c)| {
            let mut p = Polynomial::constant(c.recip(), m);
            for (j, r) in reps.iter().enumerate() {
                if j != *i {
                    p = p.mul(r);
                }
            }
            p
        })
        .collect()
}

fn reduced_cofactors(dens: &[Polynomial], m: usize) -> Vec<Polynomial> {
    let mut reps: Vec<Polynomial> = Vec::new();
    let mut parts = Vec::new();
    let mut max_content = vec![Num::zero(); m];
    for d in dens {
        let e = d.min_exponents();
        let neg: Vec<Num> = e.iter().map(|v| -v).collect();
        let (c, p) = monic(&d.shift(&neg));
        let idx = if p.len() > 1 {
            Some(match reps.iter().position(|r| same_poly(r, &p)) {
                Some(i) => i,
                None => {
                    reps.push(p);
                    reps.len() - 1
                }
            })
        } else {
            None
        };
        for (mx, v) in max_content.iter_mut().zip(&e) {
            if v.cmp_value(mx).is_gt() {
                *mx = v.clone();
            }
        }
        parts.push((e, c, idx));
    }
    parts
        .into_iter()
        .map(|(e, c, idx)| {
            let shift: Vec<Num> = max_content.iter().zip(&e).map(|(a, b)| a - b).collect();
            let mut p = Polynomial::from_terms(m, vec![Monomial::new(c.recip(), shift)]);
            for (j, r) in reps.iter().enumerate() {
                if Some(j) != idx {
                    p = p.mul(r);
                }
            }
            p
        })
        .collect()
}

/// The poly-PL kinetics associated to any supported kinetics.
pub fn associated_poly_pl(k: &Kinetics, reduce: bool) -> Result<PolyPlKinetics> {
    match k {
        Kinetics::PowerLaw(p) => {
            let m = p.num_species();
            let terms = p.orders().iter().map(|f| Polynomial::monomial(Num::one(), f.clone())).collect();
            PolyPlKinetics::new(m, p.rates().to_vec(), terms)
        }
        Kinetics::Hill(h) => associate_pyk(h),
        Kinetics::PolyPl(p) => Ok(p.clone()),
        Kinetics::Pqk(p) => associate_pqk(p, reduce),
    }
}

/// Canonical representation of the associated poly-PL kinetics.
pub fn canonical_poly_pl(k: &Kinetics) -> Result<PolyPlKinetics> {
    associated_poly_pl(k, false)?.canonicalize()
}

/// The factor the associated kinetics scales rates by: `LCD(x)` for Hill
/// kinetics, the product of distinct denominators for quotients, `1` otherwise.
pub fn common_denominator(k: &Kinetics, x: &[f64]) -> Result<f64> {
    match k {
        Kinetics::Hill(h) => Ok(lcd(h)?.eval(x)),
        Kinetics::Pqk(p) => {
            let mut reps: Vec<Polynomial> = Vec::new();
            for d in p.denominators() {
                let (_, mp) = monic(d);
                if !reps.iter().any(|r| same_poly(r, &mp)) {
                    reps.push(mp);
                }
            }
            Ok(reps.iter().map(|r| r.eval(x)).product())
        }
        _ => Ok(1.0),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CfrfScalingReport {
    pub samples: usize,
    pub max_relative_residual: f64,
    /// Indices of samples whose residual exceeds the tolerance.
    pub failures: Vec<usize>,
}

pub const CFRF_SCALING_TOL: f64 = 1e-9;

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, b| a.max(b.abs()))
}

/// Checks `g_PY(x) = LCD(x) g(x)` at each sample (relative to `1 + |g_PY|`).
pub fn verify_cfrf_scaling(network: &Network, k: &HillKinetics, samples: &[Vec<f64>]) -> Result<CfrfScalingReport> {
    let s = lcd(k)?;
    let kin = Kinetics::Hill(k.clone());
    let py = Kinetics::PolyPl(associate_pyk(k)?);
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for (i, x) in samples.iter().enumerate() {
        let g = apply_incidence(network, &kin.evaluate(x)?);
        let gpy = apply_incidence(network, &py.evaluate(x)?);
        let l = s.eval(x);
        let diff: Vec<f64> = gpy.iter().zip(&g).map(|(a, b)| a - l * b).collect();
        let rel = inf_norm(&diff) / (1.0 + inf_norm(&gpy));
        if !(rel < CFRF_SCALING_TOL) {
            failures.push(i);
        }
        worst = worst.max(rel);
    }
    Ok(CfrfScalingReport { samples: samples.len(), max_relative_residual: worst, failures })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HtRdkReport {
    pub is_ht_rdk: bool,
    pub pyk_is_cf: bool,
    /// Reactant complexes with more than one CF-subset.
    pub witness: Vec<usize>,
}

pub fn is_ht_rdk(network: &Network, k: &HillKinetics) -> Result<HtRdkReport> {
    let c = classify_cf(network, &Kinetics::Hill(k.clone()));
    let py = classify_cf(network, &Kinetics::PolyPl(associate_pyk(k)?));
    debug_assert_eq!(c.is_cf, py.is_cf);
    Ok(HtRdkReport { is_ht_rdk: c.is_cf, pyk_is_cf: py.is_cf, witness: c.nf_nodes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> Vec<Num> {
        v.iter().map(|&x| Num::int(x)).collect()
    }

    #[test]
    fn split_of_negative_order() {
        let f = vec![Num::int(1), Num::int(0), Num::Float(-0.8429), Num::int(0)];
        let d = vec![Num::Float(0.6705), Num::int(0), Num::int(1), Num::int(0)];
        let k = HillKinetics::new(vec![f], vec![d], row(&[1])).unwrap();
        let s = split_reaction(&k, 0).unwrap();
        assert_eq!(s.positive_numerator[0], Num::int(1));
        assert_eq!(s.positive_denominator.len(), 1);
        assert_eq!(s.cleared_denominator[0].kind, FactorKind::ReciprocalCleared);
        assert!(s.cleared_denominator[0].exponent.approx_eq(&Num::Float(0.8429)));
        // M/T equals M+/(T+ T') at a sample point.
        let x = [0.7, 1.3, 2.1, 0.4];
        let lhs = k.interaction(0, &x);
        let rhs = x[0] / (s.positive_denominator[0].eval(&x) * s.cleared_denominator[0].eval(&x));
        assert!((lhs - rhs).abs() < 1e-14);
    }

    #[test]
    fn shared_factor_has_omega_one() {
        let k = HillKinetics::new(vec![row(&[1, 0]), row(&[1, 0])], vec![row(&[1, 0]), row(&[1, 0])], row(&[1, 1])).unwrap();
        let s = lcd(&k).unwrap();
        assert_eq!(s.factors.len(), 1);
        assert_eq!((s.factors[0].mu, s.factors[0].omega), (2, 1));
        assert_eq!(s.cofactors, vec![vec![0], vec![0]]);
    }

    #[test]
    fn reduced_quotient_uses_lcm() {
        // X/(X) style check: denominators X and X^2 Y.
        let m = 2;
        let x = Polynomial::monomial(Num::one(), row(&[1, 0]));
        let x2y = Polynomial::monomial(Num::one(), row(&[2, 1]));
        let one = Polynomial::constant(Num::one(), m);
        let k = PqKinetics::new(row(&[1, 1]), vec![one.clone(), one], vec![x, x2y]).unwrap();
        let red = associate_pqk(&k, true).unwrap();
        assert_eq!(red.polynomial(0), Polynomial::monomial(Num::one(), row(&[1, 1])));
        assert_eq!(red.polynomial(1), Polynomial::constant(Num::one(), m));
        let full = associate_pqk(&k, false).unwrap();
        assert_eq!(full.polynomial(0), Polynomial::monomial(Num::one(), row(&[2, 1])));
        assert_eq!(full.polynomial(1), Polynomial::monomial(Num::one(), row(&[1, 0])));
    }

    #[test]
    fn proportional_denominators_count_once() {
        let m = 1;
        let d = Polynomial::constant(Num::one(), m).add(&Polynomial::variable_power(0, Num::one(), m));
        let one = Polynomial::constant(Num::one(), m);
        let k = PqKinetics::new(row(&[1, 1]), vec![one.clone(), one], vec![d.clone(), d.scale(&Num::int(2))]).unwrap();
        let py = associate_pqk(&k, false).unwrap();
        assert_eq!(py.polynomial(0), Polynomial::constant(Num::one(), m));
        assert_eq!(py.polynomial(1), Polynomial::constant(Num::ratio(1, 2), m));
    }
}
