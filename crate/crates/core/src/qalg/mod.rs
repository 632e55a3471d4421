//! Quadratic algebras given as data: words in three generators, relations with
//! polynomial coefficients in named structure constants, exact verification,
//! and recovery of the constants by a linear solve.

pub mod casimir;
pub mod presets;
pub mod su11;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::exact::linalg::{self, Solution};
use crate::exact::Rational;
use crate::report::Check;

/// A word in the generators `K1, K2, K3` (indices 0, 1, 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Word {
    Identity,
    Gen(usize),
    /// Left-to-right composition.
    Product(Vec<usize>),
    Anti(Box<Word>, Box<Word>),
    Commutator(Box<Word>, Box<Word>),
}

impl Word {
    pub fn product(gens: &[usize]) -> Self {
        Word::Product(gens.to_vec())
    }

    pub fn anti(a: Word, b: Word) -> Self {
        Word::Anti(Box::new(a), Box::new(b))
    }

    pub fn commutator(a: Word, b: Word) -> Self {
        Word::Commutator(Box::new(a), Box::new(b))
    }

    pub fn eval(&self, gens: &[DiffOp; 3]) -> DiffOp {
        match self {
            Word::Identity => DiffOp::identity(),
            Word::Gen(i) => gens[*i].clone(),
            Word::Product(ix) => ix.iter().fold(DiffOp::identity(), |acc, &i| acc.compose(&gens[i])),
            Word::Anti(a, b) => a.eval(gens).anticommutator(&b.eval(gens)),
            Word::Commutator(a, b) => a.eval(gens).commutator(&b.eval(gens)),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Identity => write!(f, "1"),
            Word::Gen(i) => write!(f, "K{}", i + 1),
            Word::Product(ix) => {
                let parts: Vec<String> = ix.iter().map(|i| format!("K{}", i + 1)).collect();
                write!(f, "{}", parts.join(""))
            }
            Word::Anti(a, b) => write!(f, "{{{a}, {b}}}"),
            Word::Commutator(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

/// A polynomial in the constant slots: sum of `c * slot_i * slot_j * ...`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coef {
    pub terms: Vec<(Rational, Vec<usize>)>,
}

impl Coef {
    pub fn constant(c: Rational) -> Self {
        Coef { terms: vec![(c, Vec::new())] }
    }

    pub fn one() -> Self {
        Coef::constant(Rational::one())
    }

    pub fn slot(i: usize) -> Self {
        Coef { terms: vec![(Rational::one(), vec![i])] }
    }

    pub fn monomial(c: Rational, slots: &[usize]) -> Self {
        Coef { terms: vec![(c, slots.to_vec())] }
    }

    pub fn plus(mut self, other: Coef) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        self.terms.iter().map(|(c, slots)| slots.iter().fold(c.clone(), |acc, &s| acc * &values[s])).sum()
    }

    /// Highest number of slots in one term.
    pub fn degree(&self) -> usize {
        self.terms.iter().map(|(_, s)| s.len()).max().unwrap_or(0)
    }

    /// Substitute `value` for `slot` and renumber the later slots down by one.
    fn specialize(&self, slot: usize, value: &Rational) -> Coef {
        let terms = self
            .terms
            .iter()
            .map(|(c, slots)| {
                let mut c = c.clone();
                let mut rest = Vec::with_capacity(slots.len());
                for &s in slots {
                    match s.cmp(&slot) {
                        std::cmp::Ordering::Equal => c *= value,
                        std::cmp::Ordering::Greater => rest.push(s - 1),
                        std::cmp::Ordering::Less => rest.push(s),
                    }
                }
                (c, rest)
            })
            .filter(|(c, _)| !c.is_zero())
            .collect();
        Coef { terms }
    }
}

/// `lhs = sum coef * word`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub lhs: Word,
    pub rhs: Vec<(Coef, Word)>,
}

/// Named constants and relations over the generators `K1, K2` with `K3 = [K1, K2]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub constants: Vec<String>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn slot(&self, name: &str) -> Option<usize> {
        self.constants.iter().position(|c| c == name)
    }

    /// The same presentation with one constant fixed.
    pub fn specialize(&self, name: &str, value: &Rational, new_name: &str) -> Result<Presentation> {
        let slot = self.slot(name).ok_or_else(|| Error::InvalidArgument(format!("no constant named {name}")))?;
        let mut constants = self.constants.clone();
        constants.remove(slot);
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                name: r.name.clone(),
                lhs: r.lhs.clone(),
                rhs: r.rhs.iter().map(|(c, w)| (c.specialize(slot, value), w.clone())).collect(),
            })
            .collect();
        Ok(Presentation { name: new_name.to_string(), constants, relations })
    }

    /// Values keyed by constant name.
    pub fn named(&self, values: &[Rational]) -> BTreeMap<String, Rational> {
        self.constants.iter().cloned().zip(values.iter().cloned()).collect()
    }

    /// Values in slot order from a name map.
    pub fn ordered(&self, named: &BTreeMap<String, Rational>) -> Result<Vec<Rational>> {
        self.constants
            .iter()
            .map(|c| named.get(c).cloned().ok_or_else(|| Error::InvalidArgument(format!("missing constant {c}"))))
            .collect()
    }
}

/// `[K1, K2, [K1, K2]]`; the third generator is always recomputed.
pub fn generators(k1: &DiffOp, k2: &DiffOp) -> [DiffOp; 3] {
    [k1.clone(), k2.clone(), k1.commutator(k2)]
}

/// `lhs - rhs` of one relation at the given constants.
pub fn residual(rel: &Relation, gens: &[DiffOp; 3], values: &[Rational]) -> DiffOp {
    rel.rhs.iter().fold(rel.lhs.eval(gens), |acc, (c, w)| &acc - &w.eval(gens).scale(&c.eval(values)))
}

/// One check per relation, each asserting an exactly zero residual.
pub fn verify_relations(k1: &DiffOp, k2: &DiffOp, pres: &Presentation, values: &[Rational]) -> Vec<Check> {
    let gens = generators(k1, k2);
    pres.relations
        .iter()
        .map(|rel| {
            let r = residual(rel, &gens, values);
            Check::new(
                format!("{}.relation[{}]", pres.name, rel.name),
                format!("{} relations", pres.name),
                r.is_zero(),
                format!("residual {r}"),
            )
        })
        .collect()
}

/// Fits the constants and compares them with `values`.
pub fn verify_fit(k1: &DiffOp, k2: &DiffOp, pres: &Presentation, values: &[Rational]) -> Check {
    let fitted = fit_constants(k1, k2, pres);
    let agree = matches!(&fitted, Ok(Fit::Unique(f)) if pres.ordered(f).ok().as_deref() == Some(values));
    Check::new(
        format!("{}.fitted_constants", pres.name),
        format!("{} relations", pres.name),
        agree,
        format!("displayed {}; fitted {fitted:?}", presets::display(&pres.constants, values)),
    )
}

/// Outcome of fitting the structure constants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Fit {
    Unique(BTreeMap<String, Rational>),
    /// Consistent with free constants; `particular` sets them to zero.
    Underdetermined { particular: BTreeMap<String, Rational>, free: Vec<String> },
    /// The first equation that no choice of constants satisfies.
    Inconsistent { relation: String, order: usize, exponent: i64 },
}

impl Fit {
    pub fn unique(&self) -> Option<&BTreeMap<String, Rational>> {
        match self {
            Fit::Unique(m) => Some(m),
            _ => None,
        }
    }
}

/// Solves for the constants from the normal-form coefficients of every residual.
///
/// Each residual is affine in the constants, `R_0 + sum_c value_c R_c`, so every
/// `(relation, k, exponent)` entry gives one linear equation.
pub fn fit_constants(k1: &DiffOp, k2: &DiffOp, pres: &Presentation) -> Result<Fit> {
    let gens = generators(k1, k2);
    let n = pres.constants.len();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    let mut keys: Vec<(String, usize, i64)> = Vec::new();
    if let Some(rel) = pres.relations.iter().find(|r| r.rhs.iter().any(|(c, _)| c.degree() > 1)) {
        return Err(Error::InvalidArgument(format!("relation {} is not linear in the constants", rel.name)));
    }
    for rel in &pres.relations {
        // R_0 is the residual with all constants zero; R_c by unit vectors
        let base = residual(rel, &gens, &vec![Rational::zero(); n]);
        let mut parts = Vec::with_capacity(n);
        for c in 0..n {
            let mut unit = vec![Rational::zero(); n];
            unit[c] = Rational::one();
            parts.push(&residual(rel, &gens, &unit) - &base);
        }
        let entries: BTreeSet<(usize, i64)> =
            std::iter::once(&base).chain(&parts).flat_map(|op| op.entries().map(|(k, e, _)| (k, e))).collect();
        for &(k, e) in &entries {
            rows.push(parts.iter().map(|p| p.entry(k, e)).collect());
            rhs.push(-base.entry(k, e));
            keys.push((rel.name.clone(), k, e));
        }
    }
    if rows.is_empty() {
        return Ok(if n == 0 {
            Fit::Unique(BTreeMap::new())
        } else {
            Fit::Underdetermined { particular: pres.named(&vec![Rational::zero(); n]), free: pres.constants.clone() }
        });
    }
    Ok(match linalg::solve(&rows, &rhs) {
        Solution::Unique(x) => Fit::Unique(pres.named(&x)),
        Solution::Underdetermined { particular, free, .. } => Fit::Underdetermined {
            particular: pres.named(&particular),
            free: free.into_iter().map(|i| pres.constants[i].clone()).collect(),
        },
        Solution::Inconsistent { row } => {
            let (relation, order, exponent) = keys[row].clone();
            Fit::Inconsistent { relation, order, exponent }
        }
    })
}
