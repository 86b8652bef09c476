//! Line-oriented model files.
//!
//! ```text
//! # Michaelis-Menten pair
//! @species X1 X2
//! @reaction
//! R1: X1 -> X2
//! R2: X2 -> X1
//! @kinetics hill
//! @F
//! 1 0
//! 0 1
//! @D
//! 1 0
//! 0 1
//! @k 1 2
//! ```
//!
//! `powerlaw` uses `@F` (mass action when omitted), `hill` uses `@F` and `@D`,
//! `polypl` uses `@term ID COEFF E1 .. Em` lines and `pqk` adds `@denterm`
//! lines for denominators. Stoichiometric coefficients are integers or
//! rationals `p/q`; numbers with a decimal point or exponent are floats.

use std::fmt::Write as _;
use std::path::Path;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::kinetics::{HillKinetics, Kinetics, KineticsKind, PolyPlKinetics, PowerLawKinetics, PqKinetics};
use crate::linalg::Q;
use crate::network::{format_complex, Complex, Network};
use crate::num::Num;
use crate::poly::{Monomial, Polynomial};

#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub network: Network,
    pub kinetics: Kinetics,
}

pub fn read_model(path: &Path) -> Result<Model> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io { path: path.display().to_string(), msg: e.to_string() })?;
    parse_model(&text)
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::SyntaxError { line, col, msg: msg.into() }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Whitespace-separated tokens with 1-based columns, offset by `base`.
fn tokens(s: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(st)) => {
                out.push((base + st + 1, &s[st..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((base + st + 1, &s[st..]));
    }
    out
}

fn parse_num(tok: &str, line: usize, col: usize) -> Result<Num> {
    tok.parse().map_err(|_| syntax(line, col, format!("invalid number `{tok}`")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Species,
    Reaction,
    Kinetics,
    F,
    D,
    K,
    Term,
    DenTerm,
}

struct RawReaction {
    id: String,
    reactant: Vec<Q>,
    product: Vec<Q>,
}

#[derive(Default)]
struct Builder {
    species: Vec<String>,
    species_line: Option<usize>,
    reactions: Vec<RawReaction>,
    kind: Option<(KineticsKind, usize)>,
    f: Option<(Vec<Vec<Num>>, usize)>,
    d: Option<(Vec<Vec<Num>>, usize)>,
    k: Option<(Vec<Num>, usize)>,
    terms: Vec<(String, Num, Vec<Num>, usize)>,
    denterms: Vec<(String, Num, Vec<Num>, usize)>,
}

impl Builder {
    fn species_index(&self, name: &str) -> Result<usize> {
        self.species.iter().position(|s| s == name).ok_or_else(|| Error::UnknownSpecies(name.into()))
    }

    fn complex(&self, text: &str, line: usize, base: usize) -> Result<Vec<Q>> {
        let m = self.species.len();
        let mut coeffs = vec![Q::zero(); m];
        let trimmed = text.trim();
        if trimmed == "0" || trimmed == "∅" {
            return Ok(coeffs);
        }
        let mut offset = 0;
        for part in text.split('+') {
            let col = base + offset + part.len() - part.trim_start().len() + 1;
            offset += part.len() + 1;
            let term = part.trim();
            if term.is_empty() {
                return Err(syntax(line, col, "empty term in complex"));
            }
            let (coeff, name) = if let Some((c, n)) = term.split_once('*') {
                (Some(c.trim()), n.trim())
            } else {
                let toks = tokens(term, 0);
                match toks.as_slice() {
                    [(_, n)] => {
                        let split = n.find(|c: char| !(c.is_ascii_digit() || c == '/')).unwrap_or(n.len());
                        if split == 0 { (None, *n) } else { (Some(&n[..split]), &n[split..]) }
                    }
                    [(_, c), (_, n)] => (Some(*c), *n),
                    _ => return Err(syntax(line, col, format!("cannot read term `{term}`"))),
                }
            };
            if !is_identifier(name) {
                return Err(syntax(line, col, format!("invalid species name `{name}`")));
            }
            let c = match coeff {
                None => Q::from_integer(1.into()),
                Some(c) => match parse_num(c, line, col)? {
                    Num::Exact(q, _) if q > Q::zero() => q,
                    Num::Exact(..) => return Err(syntax(line, col, "stoichiometric coefficients must be positive")),
                    Num::Float(_) => {
                        return Err(syntax(line, col, "stoichiometric coefficients must be integers or rationals"))
                    }
                },
            };
            let i = self.species_index(name)?;
            coeffs[i] += c;
        }
        Ok(coeffs)
    }

    fn reaction(&mut self, text: &str, line: usize, base: usize) -> Result<()> {
        if self.species_line.is_none() {
            return Err(syntax(line, base + 1, "@species must precede reactions"));
        }
        let Some((id, rest)) = text.split_once(':') else {
            return Err(syntax(line, base + 1, "expected `ID: LHS -> RHS`"));
        };
        let id = id.trim();
        if !is_identifier(id) {
            return Err(syntax(line, base + 1, format!("invalid reaction id `{id}`")));
        }
        let rest_base = base + id.len() + 1 + (text.len() - text.trim_start().len());
        let Some((lhs, rhs)) = rest.split_once("->") else {
            return Err(syntax(line, rest_base + 1, "missing `->`"));
        };
        if rhs.contains("->") || lhs.contains('<') {
            return Err(syntax(line, rest_base + 1, "only one-way arrows `->` are allowed"));
        }
        let reactant = self.complex(lhs, line, rest_base)?;
        let product = self.complex(rhs, line, rest_base + lhs.len() + 2)?;
        self.reactions.push(RawReaction { id: id.to_string(), reactant, product });
        Ok(())
    }

    fn row(&self, text: &str, line: usize, base: usize, what: &str) -> Result<Vec<Num>> {
        let m = self.species.len();
        let toks = tokens(text, base);
        if toks.len() != m {
            return Err(Error::DimensionMismatch { what: format!("{what} row at line {line}"), expected: m, found: toks.len() });
        }
        toks.iter().map(|(c, t)| parse_num(t, line, *c)).collect()
    }

    fn term(&self, text: &str, line: usize, base: usize) -> Result<(String, Num, Vec<Num>, usize)> {
        let toks = tokens(text, base);
        let Some(((_, id), rest)) = toks.split_first() else {
            return Err(syntax(line, base + 1, "expected `ID COEFF EXPONENTS..`"));
        };
        let Some(((cc, coeff), exps)) = rest.split_first() else {
            return Err(syntax(line, base + 1, "missing coefficient"));
        };
        let coeff = parse_num(coeff, line, *cc)?;
        if exps.len() != self.species.len() {
            return Err(Error::DimensionMismatch {
                what: format!("exponents at line {line}"),
                expected: self.species.len(),
                found: exps.len(),
            });
        }
        let exps = exps.iter().map(|(c, t)| parse_num(t, line, *c)).collect::<Result<_>>()?;
        Ok((id.to_string(), coeff, exps, line))
    }

    fn polys(&self, terms: &[(String, Num, Vec<Num>, usize)], ids: &[String]) -> Result<Vec<Polynomial>> {
        let m = self.species.len();
        let mut per: Vec<Vec<Monomial>> = vec![Vec::new(); ids.len()];
        for (id, c, e, _) in terms {
            let q = ids.iter().position(|r| r == id).ok_or_else(|| Error::UnknownReaction(id.clone()))?;
            per[q].push(Monomial::new(c.clone(), e.clone()));
        }
        Ok(per.into_iter().map(|t| Polynomial::from_terms(m, t)).collect())
    }

    fn finish(self) -> Result<Model> {
        let r = self.reactions.len();
        let ids: Vec<String> = self.reactions.iter().map(|x| x.id.clone()).collect();
        let network = Network::from_reactions(
            self.species.clone(),
            self.reactions.iter().map(|x| (x.id.clone(), x.reactant.clone(), x.product.clone())).collect(),
        )?;
        let Some((kind, kline)) = self.kind else {
            return Err(syntax(0, 0, "missing @kinetics"));
        };
        let rows = |what: &str, mat: &Option<(Vec<Vec<Num>>, usize)>| -> Result<Vec<Vec<Num>>> {
            match mat {
                Some((rows, _)) if rows.len() == r => Ok(rows.clone()),
                Some((rows, _)) => Err(Error::DimensionMismatch { what: format!("rows of {what}"), expected: r, found: rows.len() }),
                None => Err(syntax(kline, 1, format!("{} kinetics requires @{what}", kind.keyword()))),
            }
        };
        let rates = match &self.k {
            Some((k, _)) if k.len() == r => k.clone(),
            Some((k, _)) => return Err(Error::DimensionMismatch { what: "rate vector".into(), expected: r, found: k.len() }),
            None => return Err(syntax(kline, 1, "missing @k")),
        };
        let kinetics = match kind {
            KineticsKind::PowerLaw => match &self.f {
                None => Kinetics::PowerLaw(PowerLawKinetics::mass_action(&network, rates)?),
                Some(_) => Kinetics::PowerLaw(PowerLawKinetics::new(rows("F", &self.f)?, rates)?),
            },
            KineticsKind::Hill => Kinetics::Hill(HillKinetics::new(rows("F", &self.f)?, rows("D", &self.d)?, rates)?),
            KineticsKind::PolyPl => {
                Kinetics::PolyPl(PolyPlKinetics::new(self.species.len(), rates, self.polys(&self.terms, &ids)?)?)
            }
            KineticsKind::Pqk => Kinetics::Pqk(PqKinetics::new(
                rates,
                self.polys(&self.terms, &ids)?,
                self.polys(&self.denterms, &ids)?,
            )?),
        };
        kinetics.check_network(&network)?;
        Ok(Model { network, kinetics })
    }
}

fn kind_from_keyword(s: &str) -> Option<KineticsKind> {
    [KineticsKind::PowerLaw, KineticsKind::Hill, KineticsKind::PolyPl, KineticsKind::Pqk]
        .into_iter()
        .find(|k| k.keyword() == s)
}

pub fn parse_model(text: &str) -> Result<Model> {
    let mut b = Builder::default();
    let mut section = Section::None;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let lead = content.len() - content.trim_start().len();
        let body = content.trim_start();
        let (text, base) = if let Some(directive) = body.strip_prefix('@') {
            let name_end = directive.find(char::is_whitespace).unwrap_or(directive.len());
            let name = &directive[..name_end];
            section = match name {
                "species" => Section::Species,
                "reaction" | "reactions" => Section::Reaction,
                "kinetics" => Section::Kinetics,
                "F" => Section::F,
                "D" => Section::D,
                "k" => Section::K,
                "term" => Section::Term,
                "denterm" => Section::DenTerm,
                _ => return Err(syntax(line, lead + 1, format!("unknown directive `@{name}`"))),
            };
            fn start_new<T>(slot: &mut Option<(Vec<T>, usize)>, name: &str, line: usize, col: usize) -> Result<()> {
                if slot.is_some() {
                    return Err(syntax(line, col, format!("@{name} given twice")));
                }
                *slot = Some((Vec::new(), line));
                Ok(())
            }
            match section {
                Section::Species => {
                    if b.species_line.is_some() {
                        return Err(syntax(line, lead + 1, "@species given twice"));
                    }
                    b.species_line = Some(line);
                }
                Section::F => start_new(&mut b.f, name, line, lead + 1)?,
                Section::D => start_new(&mut b.d, name, line, lead + 1)?,
                Section::K => start_new(&mut b.k, name, line, lead + 1)?,
                _ => {}
            }
            (&directive[name_end..], lead + 1 + name_end)
        } else {
            (body, lead)
        };
        if text.trim().is_empty() {
            continue;
        }
        match section {
            Section::None => return Err(syntax(line, base + 1, "content before any directive")),
            Section::Species => {
                for (col, name) in tokens(text, base) {
                    if !is_identifier(name) {
                        return Err(syntax(line, col, format!("invalid species name `{name}`")));
                    }
                    if b.species.iter().any(|s| s == name) {
                        return Err(Error::DuplicateSpecies(name.into()));
                    }
                    b.species.push(name.into());
                }
            }
            Section::Reaction => b.reaction(text, line, base)?,
            Section::Kinetics => {
                let toks = tokens(text, base);
                let [(col, word)] = toks.as_slice() else {
                    return Err(syntax(line, base + 1, "expected one kinetics keyword"));
                };
                let kind = kind_from_keyword(word)
                    .ok_or_else(|| syntax(line, *col, format!("unknown kinetics `{word}` (powerlaw, hill, polypl, pqk)")))?;
                if b.kind.is_some() {
                    return Err(syntax(line, *col, "@kinetics given twice"));
                }
                b.kind = Some((kind, line));
            }
            Section::F => {
                let row = b.row(text, line, base, "F")?;
                b.f.as_mut().expect("opened").0.push(row);
            }
            Section::D => {
                let row = b.row(text, line, base, "D")?;
                b.d.as_mut().expect("opened").0.push(row);
            }
            Section::K => {
                for (col, t) in tokens(text, base) {
                    let v = parse_num(t, line, col)?;
                    b.k.as_mut().expect("opened").0.push(v);
                }
            }
            Section::Term => {
                let t = b.term(text, line, base)?;
                b.terms.push(t);
            }
            Section::DenTerm => {
                let t = b.term(text, line, base)?;
                b.denterms.push(t);
            }
        }
    }
    b.finish()
}

fn write_row(out: &mut String, row: &[Num]) {
    let cells: Vec<String> = row.iter().map(Num::to_string).collect();
    let _ = writeln!(out, "{}", cells.join(" "));
}

fn write_terms(out: &mut String, directive: &str, id: &str, poly: &Polynomial) {
    for t in poly.terms() {
        let exps: Vec<String> = t.exponents.iter().map(Num::to_string).collect();
        let _ = writeln!(out, "@{directive} {id} {} {}", t.coeff, exps.join(" "));
    }
}

/// Canonical text form; `parse_model` of the output reproduces the model.
pub fn serialize_model(model: &Model) -> String {
    let n = &model.network;
    let names = n.species_names();
    let mut out = String::new();
    let _ = writeln!(out, "@species {}", names.join(" "));
    out.push_str("@reaction\n");
    for r in n.reactions() {
        let c = |i: usize| format_complex(&Complex::new(n.complexes()[i].coeffs.clone()), &names);
        let _ = writeln!(out, "{}: {} -> {}", r.id, c(r.reactant), c(r.product));
    }
    let _ = writeln!(out, "@kinetics {}", model.kinetics.kind().keyword());
    let ids: Vec<&str> = n.reactions().iter().map(|r| r.id.as_str()).collect();
    match &model.kinetics {
        Kinetics::PowerLaw(k) => {
            out.push_str("@F\n");
            k.orders().iter().for_each(|row| write_row(&mut out, row));
        }
        Kinetics::Hill(k) => {
            out.push_str("@F\n");
            k.orders().iter().for_each(|row| write_row(&mut out, row));
            out.push_str("@D\n");
            k.dissociation().iter().for_each(|row| write_row(&mut out, row));
        }
        Kinetics::PolyPl(k) => {
            for (q, id) in ids.iter().enumerate() {
                write_terms(&mut out, "term", id, &k.polynomial(q));
            }
        }
        Kinetics::Pqk(k) => {
            for (q, id) in ids.iter().enumerate() {
                write_terms(&mut out, "term", id, &k.numerators()[q]);
            }
            for (q, id) in ids.iter().enumerate() {
                write_terms(&mut out, "denterm", id, &k.denominators()[q]);
            }
        }
    }
    out.push_str("@k ");
    write_row(&mut out, model.kinetics.rates());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const MM: &str = "# pair\n@species X1 X2\n@reaction\nR1: X1 -> X2\nR2: X2 -> X1\n@kinetics hill\n@F\n1 0\n0 1\n@D\n1 0\n0 1\n@k 1 2\n";

    #[test]
    fn parses_and_round_trips() {
        let m = parse_model(MM).unwrap();
        assert_eq!(m.network.num_complexes(), 2);
        assert_eq!(m.kinetics.kind(), KineticsKind::Hill);
        let text = serialize_model(&m);
        assert_eq!(parse_model(&text).unwrap(), m);
    }

    #[test]
    fn complex_syntax_variants() {
        let t = "@species A B\n@reaction\nR1: 2A + 1/2 B -> 0\nR2: 0 -> 3*A\n@kinetics powerlaw\n@k 1 1\n";
        let m = parse_model(t).unwrap();
        let c = &m.network.complexes()[0].coeffs;
        assert_eq!(c[0], Q::from_integer(2.into()));
        assert_eq!(c[1], Q::new(1.into(), 2.into()));
    }

    #[test]
    fn diagnostics() {
        let bad_row = MM.replace("@F\n1 0\n0 1\n", "@F\n1 0\n");
        assert!(matches!(parse_model(&bad_row), Err(Error::DimensionMismatch { .. })));
        let unknown = MM.replace("R2: X2 -> X1", "R2: X9 -> X1");
        assert_eq!(parse_model(&unknown).unwrap_err(), Error::UnknownSpecies("X9".into()));
        let arrow = MM.replace("R2: X2 -> X1", "R2: X2 => X1");
        assert!(matches!(parse_model(&arrow), Err(Error::SyntaxError { line: 5, .. })));
        let supp = MM.replace("@D\n1 0\n0 1\n", "@D\n1 1\n0 1\n");
        assert!(matches!(parse_model(&supp), Err(Error::SuppViolation { .. })));
        let float_coeff = MM.replace("R1: X1 -> X2", "R1: 1.5 X1 -> X2");
        assert!(matches!(parse_model(&float_coeff), Err(Error::SyntaxError { .. })));
    }
}
