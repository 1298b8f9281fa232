//! System F: types, terms, typing and β-normalization.
//!
//! Term variables and type variables have separate de Bruijn indices. A
//! type abstraction binds a type variable only; a λ binds a term variable
//! only.

use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::fuel::Fuel;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FType {
    TVar(usize),
    Fun(Rc<FType>, Rc<FType>),
    Forall(Rc<FType>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FTerm {
    Var(usize),
    Lam(FType, Rc<FTerm>),
    App(Rc<FTerm>, Rc<FTerm>),
    TyLam(Rc<FTerm>),
    TyApp(Rc<FTerm>, FType),
}

impl FType {
    pub fn fun(dom: FType, cod: FType) -> FType {
        FType::Fun(Rc::new(dom), Rc::new(cod))
    }

    pub fn forall(body: FType) -> FType {
        FType::Forall(Rc::new(body))
    }

    /// One more than the largest free type variable, or 0 when closed.
    pub fn free_bound(&self) -> usize {
        match self {
            FType::TVar(i) => i + 1,
            FType::Fun(a, b) => a.free_bound().max(b.free_bound()),
            FType::Forall(b) => b.free_bound().saturating_sub(1),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_bound() == 0
    }

    /// Add `by` to every type variable at or above `cutoff`; `by` may be
    /// negative only when no variable in `[cutoff, cutoff - by)` occurs.
    pub fn shift(&self, by: isize, cutoff: usize) -> FType {
        match self {
            FType::TVar(i) if *i >= cutoff => FType::TVar(i.checked_add_signed(by).expect("shift below zero")),
            FType::TVar(_) => self.clone(),
            FType::Fun(a, b) => FType::fun(a.shift(by, cutoff), b.shift(by, cutoff)),
            FType::Forall(b) => FType::forall(b.shift(by, cutoff + 1)),
        }
    }

    fn subst(&self, index: usize, replacement: &FType) -> FType {
        match self {
            FType::TVar(i) if *i == index => replacement.clone(),
            FType::TVar(_) => self.clone(),
            FType::Fun(a, b) => FType::fun(a.subst(index, replacement), b.subst(index, replacement)),
            FType::Forall(b) => FType::forall(b.subst(index + 1, &replacement.shift(1, 0))),
        }
    }

    /// `B[X := s]` for the body `B` of `forall X. B`.
    pub fn instantiate(&self, arg: &FType) -> FType {
        self.subst(0, &arg.shift(1, 0)).shift(-1, 0)
    }

    /// Replace every free type variable by a closed type; `closed[0]` is the
    /// outermost (highest index).
    pub fn close_with(&self, closed: &[FType]) -> FType {
        self.close_at(closed, 0)
    }

    fn close_at(&self, closed: &[FType], depth: usize) -> FType {
        match self {
            FType::TVar(i) if *i >= depth => match closed.len().checked_sub(i - depth + 1) {
                Some(pos) => closed[pos].clone(),
                None => self.clone(),
            },
            FType::TVar(_) => self.clone(),
            FType::Fun(a, b) => FType::fun(a.close_at(closed, depth), b.close_at(closed, depth)),
            FType::Forall(b) => FType::forall(b.close_at(closed, depth + 1)),
        }
    }
}

impl FTerm {
    pub fn lam(ty: FType, body: FTerm) -> FTerm {
        FTerm::Lam(ty, Rc::new(body))
    }

    pub fn app(f: FTerm, a: FTerm) -> FTerm {
        FTerm::App(Rc::new(f), Rc::new(a))
    }

    pub fn ty_lam(body: FTerm) -> FTerm {
        FTerm::TyLam(Rc::new(body))
    }

    pub fn ty_app(t: FTerm, ty: FType) -> FTerm {
        FTerm::TyApp(Rc::new(t), ty)
    }

    /// Number of AST nodes; types are not counted.
    pub fn size(&self) -> usize {
        match self {
            FTerm::Var(_) => 1,
            FTerm::Lam(_, b) | FTerm::TyLam(b) | FTerm::TyApp(b, _) => 1 + b.size(),
            FTerm::App(f, a) => 1 + f.size() + a.size(),
        }
    }

    /// One more than the largest free term variable, or 0.
    pub fn free_bound(&self) -> usize {
        match self {
            FTerm::Var(i) => i + 1,
            FTerm::Lam(_, b) => b.free_bound().saturating_sub(1),
            FTerm::App(f, a) => f.free_bound().max(a.free_bound()),
            FTerm::TyLam(b) | FTerm::TyApp(b, _) => b.free_bound(),
        }
    }

    /// One more than the largest free type variable, or 0.
    pub fn free_type_bound(&self) -> usize {
        match self {
            FTerm::Var(_) => 0,
            FTerm::Lam(ty, b) => ty.free_bound().max(b.free_type_bound()),
            FTerm::App(f, a) => f.free_type_bound().max(a.free_type_bound()),
            FTerm::TyLam(b) => b.free_type_bound().saturating_sub(1),
            FTerm::TyApp(b, ty) => b.free_type_bound().max(ty.free_bound()),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_bound() == 0 && self.free_type_bound() == 0
    }

    fn shift(&self, by: isize, cutoff: usize) -> FTerm {
        match self {
            FTerm::Var(i) if *i >= cutoff => FTerm::Var(i.checked_add_signed(by).expect("shift below zero")),
            FTerm::Var(_) => self.clone(),
            FTerm::Lam(ty, b) => FTerm::lam(ty.clone(), b.shift(by, cutoff + 1)),
            FTerm::App(f, a) => FTerm::app(f.shift(by, cutoff), a.shift(by, cutoff)),
            FTerm::TyLam(b) => FTerm::ty_lam(b.shift(by, cutoff)),
            FTerm::TyApp(b, ty) => FTerm::ty_app(b.shift(by, cutoff), ty.clone()),
        }
    }

    fn shift_types(&self, by: isize, cutoff: usize) -> FTerm {
        match self {
            FTerm::Var(_) => self.clone(),
            FTerm::Lam(ty, b) => FTerm::lam(ty.shift(by, cutoff), b.shift_types(by, cutoff)),
            FTerm::App(f, a) => FTerm::app(f.shift_types(by, cutoff), a.shift_types(by, cutoff)),
            FTerm::TyLam(b) => FTerm::ty_lam(b.shift_types(by, cutoff + 1)),
            FTerm::TyApp(b, ty) => FTerm::ty_app(b.shift_types(by, cutoff), ty.shift(by, cutoff)),
        }
    }

    fn subst(&self, index: usize, replacement: &FTerm) -> FTerm {
        match self {
            FTerm::Var(i) if *i == index => replacement.clone(),
            FTerm::Var(_) => self.clone(),
            FTerm::Lam(ty, b) => FTerm::lam(ty.clone(), b.subst(index + 1, &replacement.shift(1, 0))),
            FTerm::App(f, a) => FTerm::app(f.subst(index, replacement), a.subst(index, replacement)),
            FTerm::TyLam(b) => FTerm::ty_lam(b.subst(index, &replacement.shift_types(1, 0))),
            FTerm::TyApp(b, ty) => FTerm::ty_app(b.subst(index, replacement), ty.clone()),
        }
    }

    fn subst_type(&self, index: usize, replacement: &FType) -> FTerm {
        match self {
            FTerm::Var(_) => self.clone(),
            FTerm::Lam(ty, b) => FTerm::lam(ty.subst(index, replacement), b.subst_type(index, replacement)),
            FTerm::App(f, a) => FTerm::app(f.subst_type(index, replacement), a.subst_type(index, replacement)),
            FTerm::TyLam(b) => FTerm::ty_lam(b.subst_type(index + 1, &replacement.shift(1, 0))),
            FTerm::TyApp(b, ty) => FTerm::ty_app(b.subst_type(index, replacement), ty.subst(index, replacement)),
        }
    }

    /// `b[x := a]` for the body `b` of a λ.
    pub fn instantiate(&self, arg: &FTerm) -> FTerm {
        self.subst(0, &arg.shift(1, 0)).shift(-1, 0)
    }

    /// `b[X := s]` for the body `b` of a type abstraction.
    pub fn instantiate_type(&self, arg: &FType) -> FTerm {
        self.subst_type(0, &arg.shift(1, 0)).shift_types(-1, 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FTypeError {
    #[error("unbound variable with index {0}")]
    UnboundVariable(usize),
    #[error("unbound type variable with index {0}")]
    UnboundTypeVariable(usize),
    #[error("{0} is not a function type")]
    NotAFunction(FType),
    #[error("{0} is not a polymorphic type")]
    NotAForall(FType),
    #[error("argument has type {actual}, expected {expected}")]
    ArgumentMismatch { expected: FType, actual: FType },
}

fn scoped(tctx: usize, ty: &FType) -> Result<(), FTypeError> {
    match ty.free_bound() {
        n if n <= tctx => Ok(()),
        n => Err(FTypeError::UnboundTypeVariable(n - 1)),
    }
}

/// Type of `t` under `tctx` type variables and term context `ctx`
/// (innermost last).
pub fn f_infer(tctx: usize, ctx: &[FType], t: &FTerm) -> Result<FType, FTypeError> {
    match t {
        FTerm::Var(i) => match ctx.len().checked_sub(i + 1) {
            Some(pos) => Ok(ctx[pos].clone()),
            None => Err(FTypeError::UnboundVariable(*i)),
        },
        FTerm::Lam(dom, body) => {
            scoped(tctx, dom)?;
            let mut inner = ctx.to_vec();
            inner.push(dom.clone());
            Ok(FType::fun(dom.clone(), f_infer(tctx, &inner, body)?))
        }
        FTerm::App(f, a) => match f_infer(tctx, ctx, f)? {
            FType::Fun(dom, cod) => {
                let actual = f_infer(tctx, ctx, a)?;
                if actual == *dom {
                    Ok(cod.as_ref().clone())
                } else {
                    Err(FTypeError::ArgumentMismatch { expected: dom.as_ref().clone(), actual })
                }
            }
            other => Err(FTypeError::NotAFunction(other)),
        },
        FTerm::TyLam(body) => {
            let inner: Vec<FType> = ctx.iter().map(|ty| ty.shift(1, 0)).collect();
            Ok(FType::forall(f_infer(tctx + 1, &inner, body)?))
        }
        FTerm::TyApp(f, arg) => {
            scoped(tctx, arg)?;
            match f_infer(tctx, ctx, f)? {
                FType::Forall(body) => Ok(body.instantiate(arg)),
                other => Err(FTypeError::NotAForall(other)),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("fuel exhausted after {0} steps")]
pub struct FuelExhausted(pub usize);

fn contract(t: &FTerm) -> Option<FTerm> {
    match t {
        FTerm::App(f, a) => {
            if let FTerm::Lam(_, body) = f.as_ref() {
                return Some(body.instantiate(a));
            }
            if let Some(f) = contract(f) {
                return Some(FTerm::App(Rc::new(f), a.clone()));
            }
            contract(a).map(|a| FTerm::App(f.clone(), Rc::new(a)))
        }
        FTerm::TyApp(f, ty) => match f.as_ref() {
            FTerm::TyLam(body) => Some(body.instantiate_type(ty)),
            _ => contract(f).map(|f| FTerm::ty_app(f, ty.clone())),
        },
        FTerm::Lam(ty, body) => contract(body).map(|b| FTerm::lam(ty.clone(), b)),
        FTerm::TyLam(body) => contract(body).map(FTerm::ty_lam),
        FTerm::Var(_) => None,
    }
}

/// β-normal form by leftmost-outermost reduction of both kinds of redex.
pub fn f_normalize(t: &FTerm, fuel: Fuel) -> Result<FTerm, FuelExhausted> {
    let mut current = t.clone();
    let mut steps = 0;
    while let Some(next) = contract(&current) {
        if steps == fuel.remaining() {
            return Err(FuelExhausted(steps));
        }
        steps += 1;
        current = next;
    }
    Ok(current)
}

pub fn is_beta_normal(t: &FTerm) -> bool {
    contract(t).is_none()
}

impl fmt::Display for FType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::surface::pretty::sysf_type(self, &[]))
    }
}

impl fmt::Display for FTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::surface::pretty::sysf_term(self))
    }
}
