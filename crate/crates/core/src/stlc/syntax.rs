//! Abstract syntax, typing, renaming and substitution for the simply typed
//! calculus with `Ans`, `Unit`, binary products and functions.
//!
//! Variables are de Bruijn indices: `Var(0)` is the innermost binder. A
//! [`Context`] lists types innermost-last, so `Var(i)` in a context of length
//! `n` refers to position `n - 1 - i`.

use std::fmt;
use std::rc::Rc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Ans,
    Unit,
    Prod(Rc<Type>, Rc<Type>),
    Fun(Rc<Type>, Rc<Type>),
}

impl Type {
    pub fn prod(left: Type, right: Type) -> Type {
        Type::Prod(Rc::new(left), Rc::new(right))
    }

    pub fn fun(domain: Type, codomain: Type) -> Type {
        Type::Fun(Rc::new(domain), Rc::new(codomain))
    }

    /// All distinct subtrees of this type, itself included, in preorder.
    pub fn subtypes(&self, out: &mut Vec<Type>) {
        if !out.contains(self) {
            out.push(self.clone());
        }
        match self {
            Type::Ans | Type::Unit => {}
            Type::Prod(a, b) | Type::Fun(a, b) => {
                a.subtypes(out);
                b.subtypes(out);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    Yes,
    No,
    Star,
    Pair(Rc<Term>, Rc<Term>),
    Fst(Rc<Term>),
    Snd(Rc<Term>),
    Lam(Type, Rc<Term>),
    App(Rc<Term>, Rc<Term>),
}

impl Term {
    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(Rc::new(a), Rc::new(b))
    }

    pub fn fst(p: Term) -> Term {
        Term::Fst(Rc::new(p))
    }

    pub fn snd(p: Term) -> Term {
        Term::Snd(Rc::new(p))
    }

    pub fn lam(annotation: Type, body: Term) -> Term {
        Term::Lam(annotation, Rc::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Rc::new(f), Rc::new(a))
    }

    /// Number of AST nodes. Type annotations do not count.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Yes | Term::No | Term::Star => 1,
            Term::Fst(t) | Term::Snd(t) | Term::Lam(_, t) => 1 + t.size(),
            Term::Pair(a, b) | Term::App(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Smallest `n` such that the term is well-scoped in any context of length `n`.
    pub fn free_bound(&self) -> usize {
        match self {
            Term::Var(i) => i + 1,
            Term::Yes | Term::No | Term::Star => 0,
            Term::Fst(t) | Term::Snd(t) => t.free_bound(),
            Term::Lam(_, body) => body.free_bound().saturating_sub(1),
            Term::Pair(a, b) | Term::App(a, b) => a.free_bound().max(b.free_bound()),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_bound() == 0
    }
}

/// A typing context, innermost binding last.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Context(Vec<Type>);

impl Context {
    pub fn empty() -> Context {
        Context(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn types(&self) -> &[Type] {
        &self.0
    }

    /// Type of the variable with de Bruijn index `index`.
    pub fn lookup(&self, index: usize) -> Option<&Type> {
        self.0.len().checked_sub(index + 1).map(|pos| &self.0[pos])
    }

    pub fn extend(&self, ty: Type) -> Context {
        let mut types = self.0.clone();
        types.push(ty);
        Context(types)
    }
}

impl From<Vec<Type>> for Context {
    fn from(types: Vec<Type>) -> Context {
        Context(types)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable with index {0}")]
    UnboundVariable(usize),
    #[error("expected a function, found a term of type {0}")]
    NotAFunction(Type),
    #[error("expected a product, found a term of type {0}")]
    NotAProduct(Type),
    #[error("argument mismatch: expected {expected}, found {actual}")]
    ArgumentMismatch { expected: Type, actual: Type },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScopeError {
    #[error("index {index} out of range for a context of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
}

/// Synthesize the type of `term` in `ctx`.
pub fn infer(ctx: &Context, term: &Term) -> Result<Type, TypeError> {
    match term {
        Term::Var(i) => ctx.lookup(*i).cloned().ok_or(TypeError::UnboundVariable(*i)),
        Term::Yes | Term::No => Ok(Type::Ans),
        Term::Star => Ok(Type::Unit),
        Term::Pair(a, b) => Ok(Type::prod(infer(ctx, a)?, infer(ctx, b)?)),
        Term::Fst(p) => match infer(ctx, p)? {
            Type::Prod(a, _) => Ok(a.as_ref().clone()),
            other => Err(TypeError::NotAProduct(other)),
        },
        Term::Snd(p) => match infer(ctx, p)? {
            Type::Prod(_, b) => Ok(b.as_ref().clone()),
            other => Err(TypeError::NotAProduct(other)),
        },
        Term::Lam(dom, body) => {
            let cod = infer(&ctx.extend(dom.clone()), body)?;
            Ok(Type::fun(dom.clone(), cod))
        }
        Term::App(f, a) => match infer(ctx, f)? {
            Type::Fun(dom, cod) => {
                let actual = infer(ctx, a)?;
                if actual == *dom {
                    Ok(cod.as_ref().clone())
                } else {
                    Err(TypeError::ArgumentMismatch { expected: dom.as_ref().clone(), actual })
                }
            }
            other => Err(TypeError::NotAFunction(other)),
        },
    }
}

/// A variable-to-variable context morphism.
///
/// `map[i]` is the target de Bruijn index of source variable `Var(i)`; the
/// source context therefore has length `map.len()`. Maps need not be
/// injective.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Renaming {
    target_len: usize,
    map: Vec<usize>,
}

impl Renaming {
    pub fn new(target_len: usize, map: Vec<usize>) -> Result<Renaming, ScopeError> {
        if let Some(&index) = map.iter().find(|&&j| j >= target_len) {
            return Err(ScopeError::IndexOutOfRange { index, len: target_len });
        }
        Ok(Renaming { target_len, map })
    }

    pub fn identity(len: usize) -> Renaming {
        Renaming { target_len: len, map: (0..len).collect() }
    }

    /// The renaming from a context of length `len` into the same context
    /// extended by `by` new innermost variables.
    pub fn weaken(len: usize, by: usize) -> Renaming {
        Renaming { target_len: len + by, map: (by..len + by).collect() }
    }

    pub fn source_len(&self) -> usize {
        self.map.len()
    }

    pub fn target_len(&self) -> usize {
        self.target_len
    }

    pub fn apply(&self, index: usize) -> Result<usize, ScopeError> {
        self.map.get(index).copied().ok_or(ScopeError::IndexOutOfRange { index, len: self.map.len() })
    }

    /// Extend under a binder: the new variable maps to itself.
    pub fn lift(&self) -> Renaming {
        let mut map = Vec::with_capacity(self.map.len() + 1);
        map.push(0);
        map.extend(self.map.iter().map(|j| j + 1));
        Renaming { target_len: self.target_len + 1, map }
    }

    /// `self.then(next)` renames by `self` first, then by `next`.
    pub fn then(&self, next: &Renaming) -> Result<Renaming, ScopeError> {
        let map = self.map.iter().map(|&j| next.apply(j)).collect::<Result<_, _>>()?;
        Ok(Renaming { target_len: next.target_len, map })
    }

    /// Whether this renaming is a typed morphism `target -> source`, i.e.
    /// every source variable is sent to a target variable of the same type.
    pub fn is_typed(&self, source: &Context, target: &Context) -> bool {
        source.len() == self.map.len()
            && target.len() == self.target_len
            && self.map.iter().enumerate().all(|(i, &j)| source.lookup(i) == target.lookup(j))
    }
}

/// Rename the free variables of `term` along `renaming`.
pub fn rename(term: &Term, renaming: &Renaming) -> Result<Term, ScopeError> {
    Ok(match term {
        Term::Var(i) => Term::Var(renaming.apply(*i)?),
        Term::Yes => Term::Yes,
        Term::No => Term::No,
        Term::Star => Term::Star,
        Term::Pair(a, b) => Term::pair(rename(a, renaming)?, rename(b, renaming)?),
        Term::Fst(p) => Term::fst(rename(p, renaming)?),
        Term::Snd(p) => Term::snd(rename(p, renaming)?),
        Term::Lam(ty, body) => Term::lam(ty.clone(), rename(body, &renaming.lift())?),
        Term::App(f, a) => Term::app(rename(f, renaming)?, rename(a, renaming)?),
    })
}

/// A simultaneous substitution. `entries[i]` replaces source `Var(i)` and
/// lives in a context of length `target_len`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Substitution {
    target_len: usize,
    entries: Vec<Term>,
}

impl Substitution {
    pub fn new(target_len: usize, entries: Vec<Term>) -> Result<Substitution, ScopeError> {
        for entry in &entries {
            let bound = entry.free_bound();
            if bound > target_len {
                return Err(ScopeError::IndexOutOfRange { index: bound - 1, len: target_len });
            }
        }
        Ok(Substitution { target_len, entries })
    }

    pub fn identity(len: usize) -> Substitution {
        Substitution { target_len: len, entries: (0..len).map(Term::Var).collect() }
    }

    /// Replace `Var(0)` by `arg` in a context of length `len + 1`, lowering
    /// the remaining variables by one.
    pub fn single(arg: Term, len: usize) -> Substitution {
        let mut entries = Vec::with_capacity(len + 1);
        entries.push(arg);
        entries.extend((0..len).map(Term::Var));
        Substitution { target_len: len, entries }
    }

    pub fn source_len(&self) -> usize {
        self.entries.len()
    }

    pub fn target_len(&self) -> usize {
        self.target_len
    }

    pub fn entries(&self) -> &[Term] {
        &self.entries
    }

    pub fn lift(&self) -> Result<Substitution, ScopeError> {
        let shift = Renaming::weaken(self.target_len, 1);
        let mut entries = Vec::with_capacity(self.entries.len() + 1);
        entries.push(Term::Var(0));
        for entry in &self.entries {
            entries.push(rename(entry, &shift)?);
        }
        Ok(Substitution { target_len: self.target_len + 1, entries })
    }

    /// Substitute by `self`, then by `next`.
    pub fn then(&self, next: &Substitution) -> Result<Substitution, ScopeError> {
        let entries = self.entries.iter().map(|e| subst(e, next)).collect::<Result<_, _>>()?;
        Ok(Substitution { target_len: next.target_len, entries })
    }

    /// Whether every entry has the type of the source variable it replaces.
    pub fn is_typed(&self, source: &Context, target: &Context) -> bool {
        source.len() == self.entries.len()
            && target.len() == self.target_len
            && self
                .entries
                .iter()
                .enumerate()
                .all(|(i, e)| source.lookup(i).is_some_and(|ty| infer(target, e).as_ref() == Ok(ty)))
    }
}

/// Capture-avoiding simultaneous substitution. Performs no reduction.
pub fn subst(term: &Term, s: &Substitution) -> Result<Term, ScopeError> {
    Ok(match term {
        Term::Var(i) => {
            s.entries.get(*i).cloned().ok_or(ScopeError::IndexOutOfRange { index: *i, len: s.entries.len() })?
        }
        Term::Yes => Term::Yes,
        Term::No => Term::No,
        Term::Star => Term::Star,
        Term::Pair(a, b) => Term::pair(subst(a, s)?, subst(b, s)?),
        Term::Fst(p) => Term::fst(subst(p, s)?),
        Term::Snd(p) => Term::snd(subst(p, s)?),
        Term::Lam(ty, body) => Term::lam(ty.clone(), subst(body, &s.lift()?)?),
        Term::App(f, a) => Term::app(subst(f, s)?, subst(a, s)?),
    })
}

/// `body[Var(0) := arg]`, for a `body` under one binder.
pub fn instantiate(body: &Term, arg: &Term) -> Term {
    let len = body.free_bound().saturating_sub(1).max(arg.free_bound());
    subst(body, &Substitution::single(arg.clone(), len)).expect("substitution covers the free variables")
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::surface::pretty::stlc_type(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::surface::pretty::stlc_term(self, &[]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ans_fn() -> Type {
        Type::fun(Type::Ans, Type::Ans)
    }

    #[test]
    fn infer_examples() {
        let empty = Context::empty();
        assert_eq!(infer(&empty, &Term::Yes), Ok(Type::Ans));
        assert_eq!(infer(&empty, &Term::lam(Type::Ans, Term::Var(0))), Ok(ans_fn()));
        assert_eq!(infer(&empty, &Term::fst(Term::Yes)), Err(TypeError::NotAProduct(Type::Ans)));
        let ctx = Context::from(vec![Type::prod(Type::Ans, Type::Unit)]);
        assert_eq!(infer(&ctx, &Term::snd(Term::Var(0))), Ok(Type::Unit));
    }

    #[test]
    fn infer_errors() {
        let empty = Context::empty();
        assert_eq!(infer(&empty, &Term::Var(0)), Err(TypeError::UnboundVariable(0)));
        assert_eq!(infer(&empty, &Term::app(Term::Yes, Term::No)), Err(TypeError::NotAFunction(Type::Ans)));
        assert_eq!(
            infer(&empty, &Term::app(Term::lam(Type::Ans, Term::Var(0)), Term::Star)),
            Err(TypeError::ArgumentMismatch { expected: Type::Ans, actual: Type::Unit })
        );
    }

    #[test]
    fn rename_examples() {
        let up = Renaming::weaken(1, 1);
        assert_eq!(rename(&Term::Var(0), &up), Ok(Term::Var(1)));
        let bound = Term::lam(Type::Ans, Term::Var(0));
        assert_eq!(rename(&bound, &up), Ok(bound.clone()));
        // source context of length 2 for the free Var(1) under one binder
        let up2 = Renaming::weaken(2, 1);
        assert_eq!(rename(&Term::lam(Type::Ans, Term::Var(1)), &up2), Ok(Term::lam(Type::Ans, Term::Var(2))));
    }

    #[test]
    fn rename_out_of_range() {
        let r = Renaming::identity(1);
        assert_eq!(rename(&Term::Var(3), &r), Err(ScopeError::IndexOutOfRange { index: 3, len: 1 }));
        assert!(Renaming::new(2, vec![0, 2]).is_err());
    }

    #[test]
    fn subst_examples() {
        let s = Substitution::new(0, vec![Term::Yes]).unwrap();
        assert_eq!(subst(&Term::Var(0), &s), Ok(Term::Yes));
        assert_eq!(subst(&Term::lam(Type::Ans, Term::Var(1)), &s), Ok(Term::lam(Type::Ans, Term::Yes)));
        let s = Substitution::new(0, vec![Term::pair(Term::Yes, Term::No)]).unwrap();
        assert_eq!(subst(&Term::fst(Term::Var(0)), &s), Ok(Term::fst(Term::pair(Term::Yes, Term::No))));
        assert!(subst(&Term::Var(1), &s).is_err());
    }

    #[test]
    fn instantiate_lowers_outer_variables() {
        // \y. x y  with x free at index 1 under the binder, body of an outer redex
        let body = Term::app(Term::Var(0), Term::Var(1));
        assert_eq!(instantiate(&body, &Term::Yes), Term::app(Term::Yes, Term::Var(0)));
        let under = Term::lam(Type::Ans, Term::app(Term::Var(1), Term::Var(0)));
        assert_eq!(instantiate(&under, &Term::Var(3)), Term::lam(Type::Ans, Term::app(Term::Var(4), Term::Var(0))));
    }

    #[test]
    fn typed_renaming_check() {
        let source = Context::from(vec![Type::Ans]);
        let target = Context::from(vec![Type::Ans, Type::Unit]);
        assert!(Renaming::new(2, vec![1]).unwrap().is_typed(&source, &target));
        assert!(!Renaming::new(2, vec![0]).unwrap().is_typed(&source, &target));
    }
}
