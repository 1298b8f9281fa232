//! Normalization by evaluation for the simply typed calculus.
//!
//! Terms evaluate into [`Value`]s: constructor values, closures and typed
//! neutral values. [`reify`] reads a value back into an η-long β-normal
//! [`NormalForm`], calling [`reflect`] to turn fresh variables into values
//! whenever it has to look under a binder.
//!
//! Neutral and normal forms name variables by de Bruijn *level*, so values
//! never need to be renamed when they are read back under more binders.

use std::rc::Rc;

use thiserror::Error;

use super::syntax::{infer, Context, Renaming, ScopeError, Term, Type, TypeError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NeutralForm {
    NVar(usize),
    NFst(Rc<NeutralForm>),
    NSnd(Rc<NeutralForm>),
    NApp(Rc<NeutralForm>, Rc<NormalForm>),
}

/// η-long β-normal forms. Neutrals only become normal at `Ans`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormalForm {
    NfYes,
    NfNo,
    NfNeutAns(NeutralForm),
    NfStar,
    NfPair(Rc<NormalForm>, Rc<NormalForm>),
    NfLam(Type, Rc<NormalForm>),
}

/// A stuck computation whose head is a variable.
///
/// Application arguments stay semantic, with the domain type they are to be
/// read back at, because the binding depth where the spine will be quoted
/// is only known during [`reify`].
#[derive(Debug, Clone)]
pub enum Spine {
    Var(usize),
    Fst(Rc<Spine>),
    Snd(Rc<Spine>),
    App(Rc<Spine>, Type, Rc<Value>),
}

#[derive(Debug, Clone)]
pub enum Value {
    VYes,
    VNo,
    VStar,
    VPair(Rc<Value>, Rc<Value>),
    VClosure(Closure),
    VNeutral(Type, Spine),
}

#[derive(Debug, Clone)]
pub struct Closure {
    pub env: Environment,
    pub annotation: Type,
    pub body: Rc<Term>,
}

/// One value per context entry, innermost last.
#[derive(Debug, Clone, Default)]
pub struct Environment(Vec<Value>);

impl Environment {
    pub fn new(values: Vec<Value>) -> Environment {
        Environment(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lookup(&self, index: usize) -> Option<&Value> {
        self.0.len().checked_sub(index + 1).map(|pos| &self.0[pos])
    }

    pub fn extend(&self, value: Value) -> Environment {
        let mut values = self.0.clone();
        values.push(value);
        Environment(values)
    }

    /// The environment of reflected variables for `ctx`.
    pub fn reflected(ctx: &Context) -> Environment {
        Environment(ctx.types().iter().enumerate().map(|(level, ty)| reflect(ty, Spine::Var(level))).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NbeError {
    #[error("internal invariant violation: {0}")]
    InternalInvariantViolation(String),
}

fn violation<T>(what: impl Into<String>) -> Result<T, NbeError> {
    Err(NbeError::InternalInvariantViolation(what.into()))
}

pub fn eval(env: &Environment, term: &Term) -> Result<Value, NbeError> {
    match term {
        Term::Var(i) => match env.lookup(*i) {
            Some(v) => Ok(v.clone()),
            None => violation(format!("variable {i} escapes an environment of length {}", env.len())),
        },
        Term::Yes => Ok(Value::VYes),
        Term::No => Ok(Value::VNo),
        Term::Star => Ok(Value::VStar),
        Term::Pair(a, b) => Ok(Value::VPair(Rc::new(eval(env, a)?), Rc::new(eval(env, b)?))),
        Term::Fst(p) => fst(eval(env, p)?),
        Term::Snd(p) => snd(eval(env, p)?),
        Term::Lam(ty, body) => {
            Ok(Value::VClosure(Closure { env: env.clone(), annotation: ty.clone(), body: body.clone() }))
        }
        Term::App(f, a) => apply(eval(env, f)?, eval(env, a)?),
    }
}

fn fst(value: Value) -> Result<Value, NbeError> {
    match value {
        Value::VPair(a, _) => Ok(a.as_ref().clone()),
        Value::VNeutral(Type::Prod(a, _), n) => Ok(reflect(&a, Spine::Fst(Rc::new(n)))),
        other => violation(format!("first projection of a non-pair {other:?}")),
    }
}

fn snd(value: Value) -> Result<Value, NbeError> {
    match value {
        Value::VPair(_, b) => Ok(b.as_ref().clone()),
        Value::VNeutral(Type::Prod(_, b), n) => Ok(reflect(&b, Spine::Snd(Rc::new(n)))),
        other => violation(format!("second projection of a non-pair {other:?}")),
    }
}

pub fn apply(f: Value, arg: Value) -> Result<Value, NbeError> {
    match f {
        Value::VClosure(closure) => eval(&closure.env.extend(arg), &closure.body),
        Value::VNeutral(Type::Fun(dom, cod), n) => {
            Ok(reflect(&cod, Spine::App(Rc::new(n), dom.as_ref().clone(), Rc::new(arg))))
        }
        other => violation(format!("application of a non-function {other:?}")),
    }
}

pub fn reflect(ty: &Type, spine: Spine) -> Value {
    match ty {
        Type::Ans | Type::Fun(..) => Value::VNeutral(ty.clone(), spine),
        Type::Unit => Value::VStar,
        Type::Prod(a, b) => {
            let spine = Rc::new(spine);
            Value::VPair(Rc::new(reflect(a, Spine::Fst(spine.clone()))), Rc::new(reflect(b, Spine::Snd(spine))))
        }
    }
}

/// Read `value` back as a normal form of type `ty`, with `fresh_level`
/// bindings in scope.
pub fn reify(ty: &Type, value: &Value, fresh_level: usize) -> Result<NormalForm, NbeError> {
    match ty {
        Type::Unit => Ok(NormalForm::NfStar),
        Type::Ans => match value {
            Value::VYes => Ok(NormalForm::NfYes),
            Value::VNo => Ok(NormalForm::NfNo),
            Value::VNeutral(_, n) => Ok(NormalForm::NfNeutAns(reify_spine(n, fresh_level)?)),
            other => violation(format!("{other:?} is not an answer")),
        },
        Type::Prod(a, b) => Ok(NormalForm::NfPair(
            Rc::new(reify(a, &fst(value.clone())?, fresh_level)?),
            Rc::new(reify(b, &snd(value.clone())?, fresh_level)?),
        )),
        Type::Fun(dom, cod) => {
            let var = reflect(dom, Spine::Var(fresh_level));
            let body = apply(value.clone(), var)?;
            Ok(NormalForm::NfLam(dom.as_ref().clone(), Rc::new(reify(cod, &body, fresh_level + 1)?)))
        }
    }
}

fn reify_spine(spine: &Spine, fresh_level: usize) -> Result<NeutralForm, NbeError> {
    Ok(match spine {
        Spine::Var(level) => NeutralForm::NVar(*level),
        Spine::Fst(n) => NeutralForm::NFst(Rc::new(reify_spine(n, fresh_level)?)),
        Spine::Snd(n) => NeutralForm::NSnd(Rc::new(reify_spine(n, fresh_level)?)),
        Spine::App(n, dom, arg) => {
            NeutralForm::NApp(Rc::new(reify_spine(n, fresh_level)?), Rc::new(reify(dom, arg, fresh_level)?))
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Nbe(#[from] NbeError),
}

pub fn normalize(ctx: &Context, term: &Term) -> Result<NormalForm, NormalizeError> {
    let ty = infer(ctx, term)?;
    Ok(normalize_at(ctx, &ty, term)?)
}

/// Normalize a term already known to have type `ty` in `ctx`.
pub fn normalize_at(ctx: &Context, ty: &Type, term: &Term) -> Result<NormalForm, NbeError> {
    let env = Environment::reflected(ctx);
    reify(ty, &eval(&env, term)?, ctx.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    IsYes,
    IsNo,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonicityError {
    #[error("term is not closed")]
    NotClosed,
    #[error("term has type {0}, not Ans")]
    NotAns(Type),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Nbe(#[from] NbeError),
}

/// Decide which constructor a closed term of type `Ans` is equal to.
pub fn canonicity(term: &Term) -> Result<Verdict, CanonicityError> {
    if !term.is_closed() {
        return Err(CanonicityError::NotClosed);
    }
    let empty = Context::empty();
    match infer(&empty, term)? {
        Type::Ans => {}
        other => return Err(CanonicityError::NotAns(other)),
    }
    match normalize_at(&empty, &Type::Ans, term)? {
        NormalForm::NfYes => Ok(Verdict::IsYes),
        NormalForm::NfNo => Ok(Verdict::IsNo),
        other => {
            Err(NbeError::InternalInvariantViolation(format!("closed answer normalized to a neutral {other:?}")).into())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("level {level} out of range at depth {depth}")]
    LevelOutOfRange { level: usize, depth: usize },
}

/// Embed a normal form living under `depth` bindings back into terms.
pub fn embed_nf(nf: &NormalForm, depth: usize) -> Result<Term, EmbedError> {
    Ok(match nf {
        NormalForm::NfYes => Term::Yes,
        NormalForm::NfNo => Term::No,
        NormalForm::NfStar => Term::Star,
        NormalForm::NfNeutAns(n) => embed_ne(n, depth)?,
        NormalForm::NfPair(a, b) => Term::pair(embed_nf(a, depth)?, embed_nf(b, depth)?),
        NormalForm::NfLam(ty, body) => Term::lam(ty.clone(), embed_nf(body, depth + 1)?),
    })
}

pub fn embed_ne(ne: &NeutralForm, depth: usize) -> Result<Term, EmbedError> {
    Ok(match ne {
        NeutralForm::NVar(level) if *level < depth => Term::Var(depth - 1 - level),
        NeutralForm::NVar(level) => {
            return Err(EmbedError::LevelOutOfRange { level: *level, depth });
        }
        NeutralForm::NFst(n) => Term::fst(embed_ne(n, depth)?),
        NeutralForm::NSnd(n) => Term::snd(embed_ne(n, depth)?),
        NeutralForm::NApp(n, a) => Term::app(embed_ne(n, depth)?, embed_nf(a, depth)?),
    })
}

impl NormalForm {
    /// The action of a renaming on normal forms. Free levels below the
    /// renaming's source length are remapped; levels bound inside the
    /// normal form move with the change of context length.
    pub fn rename(&self, r: &Renaming) -> Result<NormalForm, ScopeError> {
        Ok(match self {
            NormalForm::NfYes => NormalForm::NfYes,
            NormalForm::NfNo => NormalForm::NfNo,
            NormalForm::NfStar => NormalForm::NfStar,
            NormalForm::NfNeutAns(n) => NormalForm::NfNeutAns(n.rename(r)?),
            NormalForm::NfPair(a, b) => NormalForm::NfPair(Rc::new(a.rename(r)?), Rc::new(b.rename(r)?)),
            NormalForm::NfLam(ty, body) => NormalForm::NfLam(ty.clone(), Rc::new(body.rename(r)?)),
        })
    }
}

impl NeutralForm {
    pub fn rename(&self, r: &Renaming) -> Result<NeutralForm, ScopeError> {
        let (source, target) = (r.source_len(), r.target_len());
        Ok(match self {
            NeutralForm::NVar(level) if *level < source => {
                let index = r.apply(source - 1 - level)?;
                NeutralForm::NVar(target - 1 - index)
            }
            NeutralForm::NVar(level) => NeutralForm::NVar(level - source + target),
            NeutralForm::NFst(n) => NeutralForm::NFst(Rc::new(n.rename(r)?)),
            NeutralForm::NSnd(n) => NeutralForm::NSnd(Rc::new(n.rename(r)?)),
            NeutralForm::NApp(n, a) => NeutralForm::NApp(Rc::new(n.rename(r)?), Rc::new(a.rename(r)?)),
        })
    }
}
