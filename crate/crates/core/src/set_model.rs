//! The finite-set model of the simply typed calculus.
//!
//! `Ans` denotes the two atoms `t` and `f`, `Unit` the singleton `{nil}`,
//! products denote Cartesian products and function types denote the set of
//! all total function tables. Judgementally equal terms get equal
//! denotations, so distinct denotations for `yes` and `no` show that the
//! equations can never identify them.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::stlc::{Term, Type};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Atom(&'static str),
    Tuple(Box<Element>, Box<Element>),
    Table(BTreeMap<Element, Element>),
}

pub const TRUE: Element = Element::Atom("t");
pub const FALSE: Element = Element::Atom("f");
pub const NIL: Element = Element::Atom("nil");

/// A finite set, listed without duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSet {
    elements: Vec<Element>,
}

impl FinSet {
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, element: &Element) -> bool {
        self.elements.contains(element)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetModelError {
    #[error("the interpretation of {ty} would have more than {bound} elements")]
    SizeOverflow { ty: Type, bound: usize },
    #[error("internal invariant violation: {0}")]
    InternalInvariantViolation(String),
}

/// The model, parameterized by the largest set it will materialize.
#[derive(Debug, Clone, Copy)]
pub struct SetModel {
    pub bound: usize,
}

impl Default for SetModel {
    fn default() -> SetModel {
        SetModel { bound: 65_536 }
    }
}

impl SetModel {
    /// Cardinality of the denotation of `ty`, or `None` past the bound.
    pub fn cardinality(&self, ty: &Type) -> Option<usize> {
        let n = match ty {
            Type::Ans => 2,
            Type::Unit => 1,
            Type::Prod(a, b) => self.cardinality(a)?.checked_mul(self.cardinality(b)?)?,
            Type::Fun(a, b) => {
                let exp = u32::try_from(self.cardinality(a)?).ok()?;
                self.cardinality(b)?.checked_pow(exp)?
            }
        };
        (n <= self.bound).then_some(n)
    }

    pub fn interp_ty(&self, ty: &Type) -> Result<FinSet, SetModelError> {
        if self.cardinality(ty).is_none() {
            return Err(SetModelError::SizeOverflow { ty: ty.clone(), bound: self.bound });
        }
        let elements = match ty {
            Type::Ans => vec![TRUE, FALSE],
            Type::Unit => vec![NIL],
            Type::Prod(a, b) => {
                let (xs, ys) = (self.interp_ty(a)?, self.interp_ty(b)?);
                xs.elements
                    .iter()
                    .flat_map(|x| {
                        ys.elements.iter().map(move |y| Element::Tuple(Box::new(x.clone()), Box::new(y.clone())))
                    })
                    .collect()
            }
            Type::Fun(a, b) => {
                let (dom, cod) = (self.interp_ty(a)?, self.interp_ty(b)?);
                // every assignment of a codomain element to each domain element
                let mut tables = vec![BTreeMap::new()];
                for x in &dom.elements {
                    tables = tables
                        .into_iter()
                        .flat_map(|table| {
                            cod.elements.iter().map(move |y| {
                                let mut next = table.clone();
                                next.insert(x.clone(), y.clone());
                                next
                            })
                        })
                        .collect();
                }
                tables.into_iter().map(Element::Table).collect()
            }
        };
        Ok(FinSet { elements })
    }

    /// Denotation of `term` at the environment `env` (innermost last).
    pub fn interp_tm(&self, env: &[Element], term: &Term) -> Result<Element, SetModelError> {
        let bad = |what: String| Err(SetModelError::InternalInvariantViolation(what));
        match term {
            Term::Var(i) => match env.len().checked_sub(i + 1) {
                Some(pos) => Ok(env[pos].clone()),
                None => bad(format!("variable {i} escapes an environment of length {}", env.len())),
            },
            Term::Yes => Ok(TRUE),
            Term::No => Ok(FALSE),
            Term::Star => Ok(NIL),
            Term::Pair(a, b) => {
                Ok(Element::Tuple(Box::new(self.interp_tm(env, a)?), Box::new(self.interp_tm(env, b)?)))
            }
            Term::Fst(p) => match self.interp_tm(env, p)? {
                Element::Tuple(a, _) => Ok(*a),
                other => bad(format!("first projection of {other}")),
            },
            Term::Snd(p) => match self.interp_tm(env, p)? {
                Element::Tuple(_, b) => Ok(*b),
                other => bad(format!("second projection of {other}")),
            },
            Term::Lam(dom, body) => {
                let mut table = BTreeMap::new();
                let mut inner = env.to_vec();
                for x in self.interp_ty(dom)?.elements {
                    inner.push(x.clone());
                    table.insert(x, self.interp_tm(&inner, body)?);
                    inner.pop();
                }
                Ok(Element::Table(table))
            }
            Term::App(f, a) => match self.interp_tm(env, f)? {
                Element::Table(table) => {
                    let x = self.interp_tm(env, a)?;
                    match table.get(&x) {
                        Some(y) => Ok(y.clone()),
                        None => bad(format!("{x} is outside the domain of the table")),
                    }
                }
                other => bad(format!("application of {other}")),
            },
        }
    }
}

/// `yes` and `no` have distinct denotations in the empty context.
pub fn consistency_check() -> bool {
    let model = SetModel::default();
    let yes = model.interp_tm(&[], &Term::Yes);
    let no = model.interp_tm(&[], &Term::No);
    matches!((yes, no), (Ok(y), Ok(n)) if y != n)
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Atom(tag) => f.write_str(tag),
            Element::Tuple(a, b) => write!(f, "({a}, {b})"),
            Element::Table(graph) => {
                f.write_str("{")?;
                for (i, (x, y)) in graph.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x} ↦ {y}")?;
                }
                f.write_str("}")
            }
        }
    }
}
