//! Typed normalization by evaluation for the dependent fragment.
//!
//! Decoding a code with `El` happens during evaluation: `El ans` evaluates
//! to `VAns`, `El (pi a b)` to a Π-type value whose codomain decodes `b x`,
//! and `El u` for a neutral code `u` to the neutral type `VElNeutral(u)`.

use std::rc::Rc;

use thiserror::Error;

use super::syntax::{DNe, DNf, DTerm};

#[derive(Debug, Clone)]
pub enum DValue {
    VYes,
    VNo,
    VAns,
    VU,
    VPi(Rc<DValue>, DClosure),
    VSigma(Rc<DValue>, DClosure),
    VLam(DClosure),
    VPair(Rc<DValue>, Rc<DValue>),
    VCodeAns,
    /// `pi a b`; the second component is the function value `b`.
    VCodePi(Rc<DValue>, Rc<DValue>),
    VCodeSigma(Rc<DValue>, Rc<DValue>),
    /// A stuck term together with its type.
    VNeutral(Rc<DValue>, DSpine),
    /// The neutral type `El(u)`.
    VElNeutral(DSpine),
}

/// A stuck elimination chain headed by a variable (a de Bruijn level).
/// Application arguments keep their domain type for read-back.
#[derive(Debug, Clone)]
pub enum DSpine {
    Var(usize),
    App(Rc<DSpine>, Rc<DValue>, Rc<DValue>),
    Fst(Rc<DSpine>),
    Snd(Rc<DSpine>),
}

#[derive(Debug, Clone)]
pub struct DClosure {
    pub env: DEnv,
    pub body: Rc<DTerm>,
}

/// Values of the variables in scope, innermost last.
#[derive(Debug, Clone, Default)]
pub struct DEnv(Rc<Vec<DValue>>);

impl DEnv {
    pub fn new(values: Vec<DValue>) -> DEnv {
        DEnv(Rc::new(values))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lookup(&self, index: usize) -> Option<&DValue> {
        self.0.len().checked_sub(index + 1).map(|pos| &self.0[pos])
    }

    pub fn extend(&self, value: DValue) -> DEnv {
        let mut values = self.0.as_ref().clone();
        values.push(value);
        DEnv(Rc::new(values))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DNbeError {
    #[error("internal invariant violation: {0}")]
    InternalInvariantViolation(String),
}

fn violation<T>(what: impl Into<String>) -> Result<T, DNbeError> {
    Err(DNbeError::InternalInvariantViolation(what.into()))
}

impl DClosure {
    pub fn new(env: DEnv, body: DTerm) -> DClosure {
        DClosure { env, body: Rc::new(body) }
    }

    /// A closure that ignores its argument.
    pub fn constant(value_term: DTerm) -> DClosure {
        DClosure::new(DEnv::default(), value_term)
    }

    pub fn apply(&self, arg: DValue) -> Result<DValue, DNbeError> {
        d_eval(&self.env.extend(arg), &self.body)
    }
}

pub fn d_eval(env: &DEnv, term: &DTerm) -> Result<DValue, DNbeError> {
    use DValue::*;
    let rc = |t: DValue| Rc::new(t);
    Ok(match term {
        DTerm::Var(i) => match env.lookup(*i) {
            Some(v) => v.clone(),
            None => return violation(format!("variable {i} escapes an environment of length {}", env.len())),
        },
        DTerm::Yes => VYes,
        DTerm::No => VNo,
        DTerm::Ans => VAns,
        DTerm::U => VU,
        DTerm::CodeAns => VCodeAns,
        DTerm::El(code) => el(d_eval(env, code)?)?,
        DTerm::Pi(a, b) => VPi(rc(d_eval(env, a)?), DClosure { env: env.clone(), body: b.clone() }),
        DTerm::Sigma(a, b) => VSigma(rc(d_eval(env, a)?), DClosure { env: env.clone(), body: b.clone() }),
        DTerm::Lam(b) => VLam(DClosure { env: env.clone(), body: b.clone() }),
        DTerm::App(f, a) => do_app(d_eval(env, f)?, d_eval(env, a)?)?,
        DTerm::Pair(a, b) => VPair(rc(d_eval(env, a)?), rc(d_eval(env, b)?)),
        DTerm::Fst(p) => do_fst(d_eval(env, p)?)?,
        DTerm::Snd(p) => do_snd(d_eval(env, p)?)?,
        DTerm::CodePi(a, b) => VCodePi(rc(d_eval(env, a)?), rc(d_eval(env, b)?)),
        DTerm::CodeSigma(a, b) => VCodeSigma(rc(d_eval(env, a)?), rc(d_eval(env, b)?)),
        DTerm::Ann(t, _) => d_eval(env, t)?,
    })
}

/// `El x. El (b x)`, closed over the code family `b`.
fn decoded_family(family: &DValue) -> DClosure {
    DClosure::new(DEnv::new(vec![family.clone()]), DTerm::el(DTerm::app(DTerm::Var(1), DTerm::Var(0))))
}

/// Decode a code into the type it names.
pub fn el(code: DValue) -> Result<DValue, DNbeError> {
    match code {
        DValue::VCodeAns => Ok(DValue::VAns),
        DValue::VCodePi(a, b) => Ok(DValue::VPi(Rc::new(el(a.as_ref().clone())?), decoded_family(&b))),
        DValue::VCodeSigma(a, b) => Ok(DValue::VSigma(Rc::new(el(a.as_ref().clone())?), decoded_family(&b))),
        DValue::VNeutral(_, n) => Ok(DValue::VElNeutral(n)),
        other => violation(format!("El of a non-code {other:?}")),
    }
}

pub fn do_app(f: DValue, arg: DValue) -> Result<DValue, DNbeError> {
    match f {
        DValue::VLam(closure) => closure.apply(arg),
        DValue::VNeutral(ty, n) => match ty.as_ref() {
            DValue::VPi(dom, cod) => {
                let result_ty = cod.apply(arg.clone())?;
                Ok(d_reflect(result_ty, DSpine::App(Rc::new(n), Rc::new(arg), dom.clone())))
            }
            other => violation(format!("application of a neutral of type {other:?}")),
        },
        other => violation(format!("application of a non-function {other:?}")),
    }
}

pub fn do_fst(p: DValue) -> Result<DValue, DNbeError> {
    match p {
        DValue::VPair(a, _) => Ok(a.as_ref().clone()),
        DValue::VNeutral(ty, n) => match ty.as_ref() {
            DValue::VSigma(a, _) => Ok(d_reflect(a.as_ref().clone(), DSpine::Fst(Rc::new(n)))),
            other => violation(format!("projection from a neutral of type {other:?}")),
        },
        other => violation(format!("projection from a non-pair {other:?}")),
    }
}

pub fn do_snd(p: DValue) -> Result<DValue, DNbeError> {
    match p {
        DValue::VPair(_, b) => Ok(b.as_ref().clone()),
        DValue::VNeutral(ref ty, ref n) => match ty.as_ref() {
            DValue::VSigma(_, fam) => {
                let first = do_fst(p.clone())?;
                Ok(d_reflect(fam.apply(first)?, DSpine::Snd(Rc::new(n.clone()))))
            }
            other => violation(format!("projection from a neutral of type {other:?}")),
        },
        other => violation(format!("projection from a non-pair {other:?}")),
    }
}

/// Neutrals stay neutral at every type of this fragment: there is no unit
/// type to collapse, and Π/Σ are η-expanded on read-back.
pub fn d_reflect(ty: DValue, spine: DSpine) -> DValue {
    DValue::VNeutral(Rc::new(ty), spine)
}

/// The constant family `_. U`, the codomain of a code family.
fn universe_family() -> DClosure {
    DClosure::constant(DTerm::U)
}

/// Read back `value` at type `ty` with `fresh_level` bindings in scope.
pub fn d_reify(ty: &DValue, value: &DValue, fresh_level: usize) -> Result<DNf, DNbeError> {
    use DValue::*;
    let rc = |n: DNf| Rc::new(n);
    match ty {
        VAns => match value {
            VYes => Ok(DNf::Yes),
            VNo => Ok(DNf::No),
            VNeutral(_, n) => Ok(DNf::Neutral(reify_spine(n, fresh_level)?)),
            other => violation(format!("{other:?} is not an answer")),
        },
        VU => match value {
            VCodeAns => Ok(DNf::CodeAns),
            VCodePi(a, b) | VCodeSigma(a, b) => {
                let a_nf = d_reify(&VU, a, fresh_level)?;
                let family_ty = VPi(Rc::new(el(a.as_ref().clone())?), universe_family());
                let b_nf = d_reify(&family_ty, b, fresh_level)?;
                Ok(if matches!(value, VCodePi(..)) {
                    DNf::CodePi(rc(a_nf), rc(b_nf))
                } else {
                    DNf::CodeSigma(rc(a_nf), rc(b_nf))
                })
            }
            VNeutral(_, n) => Ok(DNf::Neutral(reify_spine(n, fresh_level)?)),
            other => violation(format!("{other:?} is not a code")),
        },
        VPi(dom, cod) => {
            let var = d_reflect(dom.as_ref().clone(), DSpine::Var(fresh_level));
            let body_ty = cod.apply(var.clone())?;
            let body = do_app(value.clone(), var)?;
            Ok(DNf::Lam(rc(d_reify(&body_ty, &body, fresh_level + 1)?)))
        }
        VSigma(first_ty, fam) => {
            let first = do_fst(value.clone())?;
            let second_ty = fam.apply(first.clone())?;
            let second = do_snd(value.clone())?;
            Ok(DNf::Pair(rc(d_reify(first_ty, &first, fresh_level)?), rc(d_reify(&second_ty, &second, fresh_level)?)))
        }
        VElNeutral(_) => match value {
            VNeutral(_, n) => Ok(DNf::Neutral(reify_spine(n, fresh_level)?)),
            other => violation(format!("{other:?} cannot inhabit a neutral type")),
        },
        other => violation(format!("{other:?} is not a type")),
    }
}

/// Read back a type value as a normal type.
pub fn d_reify_ty(ty: &DValue, fresh_level: usize) -> Result<DNf, DNbeError> {
    use DValue::*;
    match ty {
        VAns => Ok(DNf::Ans),
        VU => Ok(DNf::U),
        VPi(a, fam) | VSigma(a, fam) => {
            let a_nf = d_reify_ty(a, fresh_level)?;
            let var = d_reflect(a.as_ref().clone(), DSpine::Var(fresh_level));
            let b_nf = d_reify_ty(&fam.apply(var)?, fresh_level + 1)?;
            Ok(if matches!(ty, VPi(..)) {
                DNf::Pi(Rc::new(a_nf), Rc::new(b_nf))
            } else {
                DNf::Sigma(Rc::new(a_nf), Rc::new(b_nf))
            })
        }
        VElNeutral(n) => Ok(DNf::El(reify_spine(n, fresh_level)?)),
        other => violation(format!("{other:?} is not a type")),
    }
}

fn reify_spine(spine: &DSpine, fresh_level: usize) -> Result<DNe, DNbeError> {
    Ok(match spine {
        DSpine::Var(level) => DNe::Var(*level),
        DSpine::App(n, arg, dom) => {
            DNe::App(Rc::new(reify_spine(n, fresh_level)?), Rc::new(d_reify(dom, arg, fresh_level)?))
        }
        DSpine::Fst(n) => DNe::Fst(Rc::new(reify_spine(n, fresh_level)?)),
        DSpine::Snd(n) => DNe::Snd(Rc::new(reify_spine(n, fresh_level)?)),
    })
}

/// Judgemental equality of two inhabitants of `ty`, under `depth` bindings.
pub fn convert(depth: usize, ty: &DValue, left: &DValue, right: &DValue) -> Result<bool, DNbeError> {
    Ok(d_reify(ty, left, depth)? == d_reify(ty, right, depth)?)
}

/// Judgemental equality of two types, under `depth` bindings.
pub fn convert_ty(depth: usize, left: &DValue, right: &DValue) -> Result<bool, DNbeError> {
    Ok(d_reify_ty(left, depth)? == d_reify_ty(right, depth)?)
}
