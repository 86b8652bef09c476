//! Reaction networks and their structural invariants.

use std::collections::HashMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph;
use crate::linalg::{self, q, QMatrix, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Species {
    pub name: String,
    pub index: usize,
}

/// A formal nonnegative combination of species.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Complex {
    pub coeffs: Vec<Q>,
}

impl Complex {
    pub fn new(coeffs: Vec<Q>) -> Self {
        Complex { coeffs }
    }

    pub fn zero(m: usize) -> Self {
        Complex { coeffs: vec![Q::zero(); m] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn translate(&self, by: &[Q]) -> Complex {
        Complex::new(self.coeffs.iter().zip(by).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, c: &Q) -> Complex {
        Complex::new(self.coeffs.iter().map(|a| a * c).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reaction {
    pub id: String,
    pub reactant: usize,
    pub product: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphIndices {
    pub l: usize,
    pub sl: usize,
    pub t: usize,
    pub weakly_reversible: bool,
    pub t_minimal: bool,
}

/// An immutable reaction network with cached matrices and graph structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    species: Vec<Species>,
    complexes: Vec<Complex>,
    reactions: Vec<Reaction>,
    y: QMatrix,
    ia: Vec<Vec<i8>>,
    n: QMatrix,
    linkage: Vec<Vec<usize>>,
    strong: Vec<Vec<usize>>,
    terminal: Vec<usize>,
    rank: usize,
}

fn check_index(what: &'static str, index: usize, len: usize) -> Result<()> {
    if index >= len {
        Err(Error::IndexOutOfRange { what, index, len })
    } else {
        Ok(())
    }
}

impl Network {
    pub fn new(species: Vec<String>, complexes: Vec<Complex>, reactions: Vec<Reaction>) -> Result<Self> {
        let m = species.len();
        let mut seen = HashMap::new();
        for (i, s) in species.iter().enumerate() {
            if s.is_empty() || seen.insert(s.clone(), i).is_some() {
                return Err(Error::DuplicateSpecies(s.clone()));
            }
        }
        let mut cseen = HashMap::new();
        for (i, c) in complexes.iter().enumerate() {
            if c.coeffs.len() != m {
                return Err(Error::DimensionMismatch {
                    what: format!("complex {i}"),
                    expected: m,
                    found: c.coeffs.len(),
                });
            }
            if c.coeffs.iter().any(Signed::is_negative) {
                return Err(Error::InvalidValue {
                    what: format!("complex {i}"),
                    detail: "negative stoichiometric coefficient".into(),
                });
            }
            if cseen.insert(c.clone(), i).is_some() {
                return Err(Error::DuplicateComplex(i));
            }
        }
        let nc = complexes.len();
        let mut ids = HashMap::new();
        let mut pairs = HashMap::new();
        let mut used = vec![false; nc];
        for r in &reactions {
            check_index("complex", r.reactant, nc)?;
            check_index("complex", r.product, nc)?;
            if r.reactant == r.product {
                return Err(Error::SelfLoopReaction(r.id.clone()));
            }
            if r.id.is_empty() || ids.insert(r.id.clone(), ()).is_some() || pairs.insert((r.reactant, r.product), ()).is_some() {
                return Err(Error::DuplicateReaction(r.id.clone()));
            }
            used[r.reactant] = true;
            used[r.product] = true;
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(Error::OrphanComplex(i));
        }

        let nr = reactions.len();
        let y: QMatrix = (0..m).map(|i| complexes.iter().map(|c| c.coeffs[i].clone()).collect()).collect();
        let mut ia = vec![vec![0i8; nr]; nc];
        for (j, r) in reactions.iter().enumerate() {
            ia[r.reactant][j] = -1;
            ia[r.product][j] = 1;
        }
        let ia_q: QMatrix = ia.iter().map(|row| row.iter().map(|&v| q(v as i64)).collect()).collect();
        let n = linalg::mat_mul(&y, &ia_q, nc, nr);
        let edges: Vec<(usize, usize)> = reactions.iter().map(|r| (r.reactant, r.product)).collect();
        let linkage = graph::weak_components(nc, &edges);
        let strong = graph::strong_components(nc, &edges);
        let terminal = graph::terminal_components(&strong, nc, &edges);
        let rank = linalg::rank(&linalg::transpose(&n, m, nr));

        Ok(Network {
            species: species.into_iter().enumerate().map(|(index, name)| Species { name, index }).collect(),
            complexes,
            reactions,
            y,
            ia,
            n,
            linkage,
            strong,
            terminal,
            rank,
        })
    }

    /// Builds a network from reactions given as complex vectors; complexes are
    /// deduplicated in order of first appearance.
    pub fn from_reactions(species: Vec<String>, reactions: Vec<(String, Vec<Q>, Vec<Q>)>) -> Result<Self> {
        let mut complexes: Vec<Complex> = Vec::new();
        let mut index: HashMap<Complex, usize> = HashMap::new();
        let mut rs = Vec::with_capacity(reactions.len());
        let mut intern = |c: Vec<Q>| -> usize {
            let c = Complex::new(c);
            *index.entry(c.clone()).or_insert_with(|| {
                complexes.push(c);
                complexes.len() - 1
            })
        };
        for (id, lhs, rhs) in reactions {
            let reactant = intern(lhs);
            let product = intern(rhs);
            rs.push(Reaction { id, reactant, product });
        }
        Network::new(species, complexes, rs)
    }

    pub fn species(&self) -> &[Species] {
        &self.species
    }

    pub fn species_names(&self) -> Vec<String> {
        self.species.iter().map(|s| s.name.clone()).collect()
    }

    pub fn complexes(&self) -> &[Complex] {
        &self.complexes
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    pub fn num_species(&self) -> usize {
        self.species.len()
    }

    pub fn num_complexes(&self) -> usize {
        self.complexes.len()
    }

    pub fn num_reactions(&self) -> usize {
        self.reactions.len()
    }

    pub fn species_index(&self, name: &str) -> Result<usize> {
        self.species
            .iter()
            .position(|s| s.name == name)
            .ok_or_else(|| Error::UnknownSpecies(name.to_string()))
    }

    pub fn reaction_index(&self, id: &str) -> Result<usize> {
        self.reactions
            .iter()
            .position(|r| r.id == id)
            .ok_or_else(|| Error::UnknownReaction(id.to_string()))
    }

    /// Molecularity matrix `Y` (m x n).
    pub fn molecularity(&self) -> &QMatrix {
        &self.y
    }

    /// Incidence matrix `Ia` (n x r).
    pub fn incidence(&self) -> &[Vec<i8>] {
        &self.ia
    }

    /// Stoichiometric matrix `N = Y Ia` (m x r).
    pub fn stoichiometric(&self) -> &QMatrix {
        &self.n
    }

    pub fn reaction_vector(&self, q: usize) -> Vec<Q> {
        self.n.iter().map(|row| row[q].clone()).collect()
    }

    pub fn reaction_vectors(&self) -> QMatrix {
        (0..self.num_reactions()).map(|j| self.reaction_vector(j)).collect()
    }

    pub fn reaction_vectors_f64(&self) -> Vec<Vec<f64>> {
        (0..self.num_reactions())
            .map(|j| self.n.iter().map(|row| crate::num::q_to_f64(&row[j])).collect())
            .collect()
    }

    pub fn linkage_classes(&self) -> &[Vec<usize>] {
        &self.linkage
    }

    pub fn strong_classes(&self) -> &[Vec<usize>] {
        &self.strong
    }

    pub fn terminal_classes(&self) -> Vec<&[usize]> {
        self.terminal.iter().map(|&i| self.strong[i].as_slice()).collect()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn deficiency(&self) -> usize {
        self.complexes.len() - self.linkage.len() - self.rank
    }

    pub fn graph_indices(&self) -> GraphIndices {
        let l = self.linkage.len();
        let sl = self.strong.len();
        let t = self.terminal.len();
        GraphIndices { l, sl, t, weakly_reversible: sl == l, t_minimal: t == l }
    }

    pub fn is_weakly_reversible(&self) -> bool {
        self.strong.len() == self.linkage.len()
    }

    /// Whether the complex lies outside every terminal strong class.
    pub fn is_nonterminal(&self, complex: usize) -> bool {
        !self.terminal.iter().any(|&i| self.strong[i].contains(&complex))
    }

    pub fn linkage_class_of(&self, complex: usize) -> usize {
        self.linkage.iter().position(|c| c.contains(&complex)).unwrap_or(usize::MAX)
    }

    /// Reactant complexes (in index order) with the reactions leaving each.
    pub fn reactant_map(&self) -> Vec<(usize, Vec<usize>)> {
        let mut map: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut at: HashMap<usize, usize> = HashMap::new();
        let mut order: Vec<usize> = self.reactions.iter().map(|r| r.reactant).collect();
        order.sort_unstable();
        order.dedup();
        for c in order {
            at.insert(c, map.len());
            map.push((c, Vec::new()));
        }
        for (j, r) in self.reactions.iter().enumerate() {
            map[at[&r.reactant]].1.push(j);
        }
        map
    }

    /// Laplacian `A_k = Ia diag(k) rho'` (n x n); column `c` collects the reactions leaving `c`.
    pub fn laplacian(&self, k: &[f64]) -> Result<Vec<Vec<f64>>> {
        if k.len() != self.num_reactions() {
            return Err(Error::DimensionMismatch {
                what: "rate vector".into(),
                expected: self.num_reactions(),
                found: k.len(),
            });
        }
        if let Some(index) = k.iter().position(|&v| !(v > 0.0)) {
            return Err(Error::NonPositiveRate { index });
        }
        let nc = self.num_complexes();
        let mut a = vec![vec![0.0; nc]; nc];
        for (j, r) in self.reactions.iter().enumerate() {
            a[r.reactant][r.reactant] -= k[j];
            a[r.product][r.reactant] += k[j];
        }
        Ok(a)
    }

    /// The network induced by a subset of reactions (same species list).
    pub fn subnetwork(&self, reactions: &[usize]) -> Result<Network> {
        let rs = reactions
            .iter()
            .map(|&j| {
                check_index("reaction", j, self.num_reactions())?;
                let r = &self.reactions[j];
                Ok((
                    r.id.clone(),
                    self.complexes[r.reactant].coeffs.clone(),
                    self.complexes[r.product].coeffs.clone(),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Network::from_reactions(self.species_names(), rs)
    }

    /// Human-readable complex, e.g. `X1 + 2 X2`; the zero complex prints as `0`.
    pub fn complex_label(&self, c: usize) -> String {
        format_complex(&self.complexes[c], &self.species_names())
    }

    pub fn reaction_label(&self, j: usize) -> String {
        let r = &self.reactions[j];
        format!("{}: {} -> {}", r.id, self.complex_label(r.reactant), self.complex_label(r.product))
    }
}

pub fn format_complex(c: &Complex, names: &[String]) -> String {
    let parts: Vec<String> = c
        .coeffs
        .iter()
        .zip(names)
        .filter(|(v, _)| !v.is_zero())
        .map(|(v, n)| {
            if v == &q(1) {
                n.clone()
            } else {
                format!("{} {}", crate::num::Num::exact(v.clone()), n)
            }
        })
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    fn names(m: usize) -> Vec<String> {
        (1..=m).map(|i| format!("X{i}")).collect()
    }

    #[test]
    fn rejects_self_loops_and_orphans() {
        let e = Network::new(
            names(1),
            vec![Complex::new(v(&[1]))],
            vec![Reaction { id: "R1".into(), reactant: 0, product: 0 }],
        );
        assert_eq!(e.unwrap_err(), Error::SelfLoopReaction("R1".into()));
        let e = Network::new(
            names(2),
            vec![Complex::new(v(&[1, 0])), Complex::new(v(&[0, 1])), Complex::new(v(&[1, 1]))],
            vec![Reaction { id: "R1".into(), reactant: 0, product: 1 }],
        );
        assert_eq!(e.unwrap_err(), Error::OrphanComplex(2));
    }

    #[test]
    fn rejects_duplicates() {
        let e = Network::new(vec!["A".into(), "A".into()], vec![], vec![]);
        assert!(matches!(e, Err(Error::DuplicateSpecies(_))));
        let e = Network::from_reactions(
            names(2),
            vec![("R1".into(), v(&[1, 0]), v(&[0, 1])), ("R2".into(), v(&[1, 0]), v(&[0, 1]))],
        );
        assert!(matches!(e, Err(Error::DuplicateReaction(_))));
        let e = Network::new(
            names(1),
            vec![Complex::new(v(&[1]))],
            vec![Reaction { id: "R1".into(), reactant: 0, product: 3 }],
        );
        assert!(matches!(e, Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn laplacian_of_reversible_pair() {
        let n = Network::from_reactions(
            names(2),
            vec![("R1".into(), v(&[1, 0]), v(&[0, 1])), ("R2".into(), v(&[0, 1]), v(&[1, 0]))],
        )
        .unwrap();
        assert_eq!(n.laplacian(&[1.0, 1.0]).unwrap(), vec![vec![-1.0, 1.0], vec![1.0, -1.0]]);
        assert!(matches!(n.laplacian(&[1.0, 0.0]), Err(Error::NonPositiveRate { index: 1 })));
        assert!(matches!(n.laplacian(&[1.0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn labels() {
        let n = Network::from_reactions(
            names(2),
            vec![("R1".into(), v(&[0, 0]), v(&[2, 1]))],
        )
        .unwrap();
        assert_eq!(n.reaction_label(0), "R1: 0 -> 2 X1 + X2");
    }
}
