//! A decision aid that shares no code with normalization by evaluation:
//! small-step β rewriting under a fuel budget, type-directed η-expansion,
//! and an exhaustive enumerator of well-typed terms.

use std::collections::HashMap;
use std::rc::Rc;

use thiserror::Error;

use super::syntax::{infer, instantiate, rename, Context, Renaming, Term, Type, TypeError};
use crate::fuel::Fuel;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RewriteResult {
    Stepped(Term),
    Stuck,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("fuel exhausted after {0} steps")]
    FuelExhausted(usize),
    #[error("the two sides have different types: {left} and {right}")]
    TypeMismatch { left: Type, right: Type },
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("term is not beta-normal: {0}")]
    NotBetaNormal(Term),
}

/// Contract the leftmost-outermost β-redex, if any.
pub fn step(term: &Term) -> RewriteResult {
    match contract(term) {
        Some(t) => RewriteResult::Stepped(t),
        None => RewriteResult::Stuck,
    }
}

fn contract(term: &Term) -> Option<Term> {
    match term {
        Term::App(f, a) => {
            if let Term::Lam(_, body) = f.as_ref() {
                return Some(instantiate(body, a));
            }
            if let Some(f) = contract(f) {
                return Some(Term::App(Rc::new(f), a.clone()));
            }
            contract(a).map(|a| Term::App(f.clone(), Rc::new(a)))
        }
        Term::Fst(p) => match p.as_ref() {
            Term::Pair(a, _) => Some(a.as_ref().clone()),
            _ => contract(p).map(Term::fst),
        },
        Term::Snd(p) => match p.as_ref() {
            Term::Pair(_, b) => Some(b.as_ref().clone()),
            _ => contract(p).map(Term::snd),
        },
        Term::Pair(a, b) => {
            if let Some(a) = contract(a) {
                return Some(Term::Pair(Rc::new(a), b.clone()));
            }
            contract(b).map(|b| Term::Pair(a.clone(), Rc::new(b)))
        }
        Term::Lam(ty, body) => contract(body).map(|b| Term::lam(ty.clone(), b)),
        Term::Var(_) | Term::Yes | Term::No | Term::Star => None,
    }
}

/// Step until stuck. Taking `fuel` steps without getting stuck is an error.
pub fn bounded_beta_normalize(term: &Term, fuel: Fuel) -> Result<Term, OracleError> {
    let mut current = term.clone();
    let mut steps = 0;
    loop {
        match step(&current) {
            RewriteResult::Stuck => return Ok(current),
            RewriteResult::Stepped(next) => {
                if steps == fuel.remaining() {
                    return Err(OracleError::FuelExhausted(steps));
                }
                steps += 1;
                current = next;
            }
        }
    }
}

/// η-expand a β-normal term of type `ty` into η-long form.
pub fn eta_expand(ctx: &Context, ty: &Type, term: &Term) -> Result<Term, OracleError> {
    match ty {
        Type::Unit => Ok(Term::Star),
        Type::Prod(a, b) => match term {
            Term::Pair(x, y) => Ok(Term::pair(eta_expand(ctx, a, x)?, eta_expand(ctx, b, y)?)),
            _ => {
                let (n, _) = expand_neutral(ctx, term)?;
                Ok(Term::pair(
                    eta_expand_long_neutral(ctx, a, Term::fst(n.clone()))?,
                    eta_expand_long_neutral(ctx, b, Term::snd(n))?,
                ))
            }
        },
        Type::Fun(dom, cod) => {
            let inner = ctx.extend(dom.as_ref().clone());
            match term {
                Term::Lam(_, body) => Ok(Term::lam(dom.as_ref().clone(), eta_expand(&inner, cod, body)?)),
                _ => {
                    let (n, _) = expand_neutral(ctx, term)?;
                    let shifted = rename(&n, &Renaming::weaken(ctx.len(), 1)).expect("a typed neutral is well-scoped");
                    let arg = eta_expand_long_neutral(&inner, dom, Term::Var(0))?;
                    Ok(Term::lam(dom.as_ref().clone(), eta_expand_long_neutral(&inner, cod, Term::app(shifted, arg))?))
                }
            }
        }
        Type::Ans => match term {
            Term::Yes | Term::No => Ok(term.clone()),
            _ => Ok(expand_neutral(ctx, term)?.0),
        },
    }
}

/// η-expand a neutral whose spine arguments are already η-long.
fn eta_expand_long_neutral(ctx: &Context, ty: &Type, neutral: Term) -> Result<Term, OracleError> {
    match ty {
        Type::Ans => Ok(neutral),
        Type::Unit => Ok(Term::Star),
        Type::Prod(a, b) => Ok(Term::pair(
            eta_expand_long_neutral(ctx, a, Term::fst(neutral.clone()))?,
            eta_expand_long_neutral(ctx, b, Term::snd(neutral))?,
        )),
        Type::Fun(dom, cod) => {
            let inner = ctx.extend(dom.as_ref().clone());
            let shifted = rename(&neutral, &Renaming::weaken(ctx.len(), 1)).expect("a typed neutral is well-scoped");
            let arg = eta_expand_long_neutral(&inner, dom, Term::Var(0))?;
            Ok(Term::lam(dom.as_ref().clone(), eta_expand_long_neutral(&inner, cod, Term::app(shifted, arg))?))
        }
    }
}

/// η-expand the arguments along a β-normal neutral spine; returns the
/// rebuilt spine with its type.
fn expand_neutral(ctx: &Context, term: &Term) -> Result<(Term, Type), OracleError> {
    match term {
        Term::Var(i) => Ok((term.clone(), ctx.lookup(*i).cloned().ok_or(TypeError::UnboundVariable(*i))?)),
        Term::Fst(p) => match expand_neutral(ctx, p)? {
            (p, Type::Prod(a, _)) => Ok((Term::fst(p), a.as_ref().clone())),
            (_, other) => Err(TypeError::NotAProduct(other).into()),
        },
        Term::Snd(p) => match expand_neutral(ctx, p)? {
            (p, Type::Prod(_, b)) => Ok((Term::snd(p), b.as_ref().clone())),
            (_, other) => Err(TypeError::NotAProduct(other).into()),
        },
        Term::App(f, a) => match expand_neutral(ctx, f)? {
            (f, Type::Fun(dom, cod)) => Ok((Term::app(f, eta_expand(ctx, &dom, a)?), cod.as_ref().clone())),
            (_, other) => Err(TypeError::NotAFunction(other).into()),
        },
        _ => Err(OracleError::NotBetaNormal(term.clone())),
    }
}

/// The η-long β-normal form of `term`, computed by rewriting.
pub fn long_normal_form(ctx: &Context, term: &Term, fuel: Fuel) -> Result<Term, OracleError> {
    let ty = infer(ctx, term)?;
    let beta = bounded_beta_normalize(term, fuel)?;
    eta_expand(ctx, &ty, &beta)
}

/// βη-equality, decided by comparing η-long β-normal forms.
pub fn oracle_equal(ctx: &Context, left: &Term, right: &Term, fuel: Fuel) -> Result<bool, OracleError> {
    let (lt, rt) = (infer(ctx, left)?, infer(ctx, right)?);
    if lt != rt {
        return Err(OracleError::TypeMismatch { left: lt, right: rt });
    }
    Ok(long_normal_form(ctx, left, fuel)? == long_normal_form(ctx, right, fuel)?)
}

/// Every well-typed term of type `ty` in `ctx` with at most `max_size`
/// nodes, in a fixed order, without duplicates.
pub fn enumerate_terms(ctx: &Context, ty: &Type, max_size: usize) -> Vec<Term> {
    let mut enumerator = Enumerator::new(ctx, ty);
    (1..=max_size).flat_map(|n| enumerator.exact(ctx, ty, n).as_ref().clone()).collect()
}

/// Memoizing enumerator over a fixed type palette: the subtypes of the
/// context and goal types, plus `Ans` and `Unit`. The palette supplies the
/// hidden types of eliminations (the domain of an application, the other
/// component of a projection).
pub struct Enumerator {
    palette: Vec<Type>,
    memo: HashMap<(Context, Type, usize), Rc<Vec<Term>>>,
}

impl Enumerator {
    pub fn new(ctx: &Context, ty: &Type) -> Enumerator {
        let mut palette = Vec::new();
        for t in ctx.types().iter().chain(std::iter::once(ty)) {
            t.subtypes(&mut palette);
        }
        for base in [Type::Ans, Type::Unit] {
            if !palette.contains(&base) {
                palette.push(base);
            }
        }
        Enumerator { palette, memo: HashMap::new() }
    }

    pub fn palette(&self) -> &[Type] {
        &self.palette
    }

    /// Terms of exactly `size` nodes.
    pub fn exact(&mut self, ctx: &Context, ty: &Type, size: usize) -> Rc<Vec<Term>> {
        let key = (ctx.clone(), ty.clone(), size);
        if let Some(found) = self.memo.get(&key) {
            return found.clone();
        }
        let terms = Rc::new(self.generate(ctx, ty, size));
        self.memo.insert(key, terms.clone());
        terms
    }

    fn generate(&mut self, ctx: &Context, ty: &Type, size: usize) -> Vec<Term> {
        let mut out = Vec::new();
        if size == 0 {
            return out;
        }
        if size == 1 {
            out.extend((0..ctx.len()).filter(|&i| ctx.lookup(i) == Some(ty)).map(Term::Var));
            match ty {
                Type::Ans => out.extend([Term::Yes, Term::No]),
                Type::Unit => out.push(Term::Star),
                _ => {}
            }
            return out;
        }

        // introduction forms
        match ty {
            Type::Prod(a, b) => {
                for left in 1..size - 1 {
                    let xs = self.exact(ctx, a, left);
                    if xs.is_empty() {
                        continue;
                    }
                    let ys = self.exact(ctx, b, size - 1 - left);
                    for x in xs.iter() {
                        for y in ys.iter() {
                            out.push(Term::pair(x.clone(), y.clone()));
                        }
                    }
                }
            }
            Type::Fun(dom, cod) => {
                let inner = ctx.extend(dom.as_ref().clone());
                for body in self.exact(&inner, cod, size - 1).iter() {
                    out.push(Term::lam(dom.as_ref().clone(), body.clone()));
                }
            }
            Type::Ans | Type::Unit => {}
        }

        // eliminations
        let palette = self.palette.clone();
        for other in &palette {
            for p in self.exact(ctx, &Type::prod(ty.clone(), other.clone()), size - 1).iter() {
                out.push(Term::fst(p.clone()));
            }
        }
        for other in &palette {
            for p in self.exact(ctx, &Type::prod(other.clone(), ty.clone()), size - 1).iter() {
                out.push(Term::snd(p.clone()));
            }
        }
        for dom in &palette {
            let fun = Type::fun(dom.clone(), ty.clone());
            for fsize in 1..size - 1 {
                let fs = self.exact(ctx, &fun, fsize);
                if fs.is_empty() {
                    continue;
                }
                let args = self.exact(ctx, dom, size - 1 - fsize);
                for f in fs.iter() {
                    for a in args.iter() {
                        out.push(Term::app(f.clone(), a.clone()));
                    }
                }
            }
        }
        out
    }
}
