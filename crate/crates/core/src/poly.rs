//! Sparse generalized polynomials: finite sums of power-law monomials with
//! real exponents.

use std::cmp::Ordering;

use crate::num::{cmp_lex, vec_approx_eq, Num, FLOAT_TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub coeff: Num,
    pub exponents: Vec<Num>,
}

impl Monomial {
    pub fn new(coeff: Num, exponents: Vec<Num>) -> Self {
        Monomial { coeff, exponents }
    }

    /// `x^e` without the coefficient.
    pub fn eval_power(&self, x: &[f64]) -> f64 {
        power(&self.exponents, x)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.coeff.to_f64() * self.eval_power(x)
    }
}

/// `prod_i x_i^{e_i}`, skipping zero exponents so `0^0 = 1`.
pub fn power(exponents: &[Num], x: &[f64]) -> f64 {
    let mut p = 1.0;
    for (e, &xi) in exponents.iter().zip(x) {
        let e = e.to_f64();
        if e == 0.0 {
            continue;
        }
        p *= if e == 1.0 {
            xi
        } else if e.fract() == 0.0 && e.abs() <= 64.0 {
            xi.powi(e as i32)
        } else {
            xi.powf(e)
        };
    }
    p
}

/// Sorts by exponent (ascending lexicographic order) and merges like terms.
fn normalize(mut terms: Vec<Monomial>) -> Vec<Monomial> {
    terms.retain(|t| !t.coeff.is_zero());
    terms.sort_by(|a, b| cmp_lex(&a.exponents, &b.exponents));
    let mut out: Vec<Monomial> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if vec_approx_eq(&last.exponents, &t.exponents) => {
                last.coeff = &last.coeff + &t.coeff;
            }
            _ => out.push(t),
        }
    }
    out.retain(|t| !t.coeff.is_zero());
    out
}

/// A normalized polynomial: terms sorted by exponent, like terms merged, no zero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: Vec::new() }
    }

    pub fn constant(c: Num, nvars: usize) -> Self {
        Polynomial::from_terms(nvars, vec![Monomial::new(c, vec![Num::zero(); nvars])])
    }

    pub fn monomial(c: Num, exponents: Vec<Num>) -> Self {
        let nvars = exponents.len();
        Polynomial::from_terms(nvars, vec![Monomial::new(c, exponents)])
    }

    /// `x_i^e` in `nvars` variables.
    pub fn variable_power(i: usize, e: Num, nvars: usize) -> Self {
        let mut exps = vec![Num::zero(); nvars];
        exps[i] = e;
        Polynomial::monomial(Num::one(), exps)
    }

    pub fn from_terms(nvars: usize, terms: Vec<Monomial>) -> Self {
        debug_assert!(terms.iter().all(|t| t.exponents.len() == nvars));
        Polynomial { nvars, terms: normalize(terms) }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Monomial> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut t = self.terms.clone();
        t.extend(other.terms.iter().cloned());
        Polynomial::from_terms(self.nvars, t)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut t = Vec::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                let e = a.exponents.iter().zip(&b.exponents).map(|(x, y)| x + y).collect();
                t.push(Monomial::new(&a.coeff * &b.coeff, e));
            }
        }
        Polynomial::from_terms(self.nvars, t)
    }

    pub fn pow(&self, k: usize) -> Polynomial {
        (0..k).fold(Polynomial::constant(Num::one(), self.nvars), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &Num) -> Polynomial {
        Polynomial::from_terms(
            self.nvars,
            self.terms.iter().map(|t| Monomial::new(&t.coeff * c, t.exponents.clone())).collect(),
        )
    }

    /// Multiply every term by `x^shift`.
    pub fn shift(&self, shift: &[Num]) -> Polynomial {
        Polynomial::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|t| Monomial::new(t.coeff.clone(), t.exponents.iter().zip(shift).map(|(a, b)| a + b).collect()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|t| t.eval(x)).sum()
    }

    /// Sum of absolute term values, a natural scale for residuals.
    pub fn eval_abs(&self, x: &[f64]) -> f64 {
        self.terms.iter().map(|t| t.eval(x).abs()).sum()
    }

    /// Component-wise minimum exponent over all terms.
    pub fn min_exponents(&self) -> Vec<Num> {
        let mut out: Vec<Num> = match self.terms.first() {
            Some(t) => t.exponents.clone(),
            None => return vec![Num::zero(); self.nvars],
        };
        for t in &self.terms[1..] {
            for (o, e) in out.iter_mut().zip(&t.exponents) {
                if e.cmp_value(o) == Ordering::Less {
                    *o = e.clone();
                }
            }
        }
        out
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.iter().any(|t| t.exponents.iter().any(Num::is_negative))
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms.iter().all(|t| !t.coeff.is_negative())
    }

    /// `self = c * other` for some `c > 0`, with identical exponent structure.
    pub fn is_positively_proportional(&self, other: &Polynomial) -> bool {
        if self.len() != other.len() || self.is_empty() {
            return self.is_empty() && other.is_empty();
        }
        let a0 = &self.terms[0].coeff;
        let b0 = &other.terms[0].coeff;
        if a0.is_positive() != b0.is_positive() {
            return false;
        }
        self.terms.iter().zip(&other.terms).all(|(a, b)| {
            if !vec_approx_eq(&a.exponents, &b.exponents) {
                return false;
            }
            // a / a0 == b / b0  <=>  a * b0 == b * a0
            let l = &a.coeff * b0;
            let r = &b.coeff * a0;
            match (&l, &r) {
                (Num::Exact(..), Num::Exact(..)) => l == r,
                _ => {
                    let (l, r) = (l.to_f64(), r.to_f64());
                    (l - r).abs() <= 1e3 * FLOAT_TOL * l.abs().max(r.abs())
                }
            }
        })
    }

    /// Text form using the given variable names, e.g. `X1 + 2*X1*X3^2`.
    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&format_monomial(&t.coeff.abs(), &t.exponents, names));
        }
        s
    }
}

pub fn format_monomial(coeff: &Num, exps: &[Num], names: &[String]) -> String {
    let mut parts = Vec::new();
    let unit = coeff.approx_eq(&Num::one()) && (coeff.is_exact() || coeff.to_f64() == 1.0);
    if !unit {
        parts.push(coeff.to_string());
    }
    for (e, n) in exps.iter().zip(names) {
        if e.is_zero() {
            continue;
        }
        if e.is_exact() && e.approx_eq(&Num::one()) {
            parts.push(n.clone());
        } else {
            let es = e.to_string();
            if es.contains('/') || es.starts_with('-') {
                parts.push(format!("{n}^({es})"));
            } else {
                parts.push(format!("{n}^{es}"));
            }
        }
    }
    if parts.is_empty() {
        coeff.to_string()
    } else {
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[i64]) -> Vec<Num> {
        v.iter().map(|&x| Num::int(x)).collect()
    }

    fn binom(i: usize, d: i64, m: usize) -> Polynomial {
        Polynomial::constant(Num::int(d), m).add(&Polynomial::variable_power(i, Num::int(1), m))
    }

    #[test]
    fn expansion_merges_like_terms() {
        let p = binom(0, 1, 2).mul(&binom(0, 1, 2));
        assert_eq!(p.len(), 3);
        assert_eq!(p.terms()[1].coeff, Num::int(2));
        let q = binom(0, 1, 2).mul(&binom(1, 1, 2));
        assert_eq!(q.len(), 4);
        assert_eq!(q.terms()[0].exponents, e(&[0, 0]));
        assert_eq!(q.terms()[1].exponents, e(&[0, 1]));
        assert_eq!(q.terms()[3].exponents, e(&[1, 1]));
    }

    #[test]
    fn proportionality() {
        let p = binom(0, 1, 2);
        assert!(p.is_positively_proportional(&p.scale(&Num::Float(2.5))));
        assert!(!p.is_positively_proportional(&p.scale(&Num::int(-1))));
        assert!(!p.is_positively_proportional(&binom(0, 2, 2)));
    }

    #[test]
    fn formatting() {
        let names = vec!["X1".to_string(), "X2".to_string()];
        let p = Polynomial::variable_power(0, Num::int(1), 2).mul(&binom(1, 1, 2));
        assert_eq!(p.format(&names), "X1 + X1*X2");
        let q = Polynomial::monomial(Num::Float(0.5), vec![Num::Float(-0.8429), Num::int(2)]);
        assert_eq!(q.format(&names), "0.5*X1^(-0.8429)*X2^2");
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = binom(0, 1, 1);
        let d = p.add(&p.scale(&Num::int(-1)));
        assert!(d.is_empty());
    }
}
