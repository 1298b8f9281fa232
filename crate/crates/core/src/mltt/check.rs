//! Bidirectional type checking, normalization and canonicity for the
//! dependent fragment.
//!
//! Introduction forms (`Lam`, `Pair`) are checked; variables, eliminations,
//! codes and ascriptions infer. A mismatch between an inferred and an
//! expected type is resolved by comparing normal types.

use std::rc::Rc;

use thiserror::Error;

use super::semantics::{
    convert_ty, d_eval, d_reflect, d_reify, d_reify_ty, do_fst, el, DClosure, DEnv, DNbeError, DSpine, DValue,
};
use super::syntax::{DNf, DTerm};
use crate::stlc::Verdict;

/// A typing context: the type of each variable and the value it stands for
/// (a reflected variable), innermost last.
#[derive(Debug, Clone, Default)]
pub struct DContext {
    env: DEnv,
    types: Vec<DValue>,
}

impl DContext {
    pub fn empty() -> DContext {
        DContext::default()
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn env(&self) -> &DEnv {
        &self.env
    }

    /// Types of the variables in scope, outermost first.
    pub fn types(&self) -> &[DValue] {
        &self.types
    }

    pub fn lookup(&self, index: usize) -> Option<&DValue> {
        self.types.len().checked_sub(index + 1).map(|pos| &self.types[pos])
    }

    /// Extend with a fresh variable of type `ty`.
    pub fn bind(&self, ty: DValue) -> (DContext, DValue) {
        let var = d_reflect(ty.clone(), DSpine::Var(self.len()));
        let mut types = self.types.clone();
        types.push(ty);
        (DContext { env: self.env.extend(var.clone()), types }, var)
    }

    /// Check each entry of a telescope (outermost first) as a type and bind it.
    pub fn from_telescope(types: &[DTerm]) -> Result<DContext, CheckError> {
        let mut ctx = DContext::empty();
        for ty in types {
            check_type(&ctx, ty)?;
            let value = ctx.eval(ty)?;
            ctx = ctx.bind(value).0;
        }
        Ok(ctx)
    }

    pub fn eval(&self, term: &DTerm) -> Result<DValue, DNbeError> {
        d_eval(&self.env, term)
    }

    /// The normal type of `ty`, embedded as a term in this context.
    pub fn quote_ty(&self, ty: &DValue) -> Result<DTerm, CheckError> {
        let nf = d_reify_ty(ty, self.len())?;
        Ok(nf.embed(self.len()).map_err(|e| DNbeError::InternalInvariantViolation(e.to_string()))?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("unbound variable with index {0}")]
    UnboundVariable(usize),
    #[error("expected a function type, found {0}")]
    ExpectedPi(DTerm),
    #[error("expected a pair type, found {0}")]
    ExpectedSigma(DTerm),
    #[error("expected a code in U, found a term of type {0}")]
    ExpectedU(DTerm),
    #[error("type mismatch: expected {expected}, found {actual}")]
    ConversionFailure { expected: DTerm, actual: DTerm },
    #[error("{0} is not a type")]
    NotAType(DTerm),
    #[error("{0} is a type, not a term")]
    NotATerm(DTerm),
    #[error("cannot infer a type for {0}; add an ascription")]
    CannotInfer(DTerm),
    #[error(transparent)]
    Nbe(#[from] DNbeError),
}

/// Check that `ty` is a well-formed type.
pub fn check_type(ctx: &DContext, ty: &DTerm) -> Result<(), CheckError> {
    match ty {
        DTerm::Ans | DTerm::U => Ok(()),
        DTerm::Pi(a, b) | DTerm::Sigma(a, b) => {
            check_type(ctx, a)?;
            let (inner, _) = ctx.bind(ctx.eval(a)?);
            check_type(&inner, b)
        }
        DTerm::El(code) => match check(ctx, code, &DValue::VU) {
            Err(CheckError::ConversionFailure { actual, .. }) => Err(CheckError::ExpectedU(actual)),
            other => other,
        },
        other => Err(CheckError::NotAType(other.clone())),
    }
}

pub fn check(ctx: &DContext, term: &DTerm, ty: &DValue) -> Result<(), CheckError> {
    match (term, ty) {
        (DTerm::Lam(body), DValue::VPi(dom, cod)) => {
            let (inner, var) = ctx.bind(dom.as_ref().clone());
            check(&inner, body, &cod.apply(var)?)
        }
        (DTerm::Lam(_), other) => Err(CheckError::ExpectedPi(ctx.quote_ty(other)?)),
        (DTerm::Pair(a, b), DValue::VSigma(first, fam)) => {
            check(ctx, a, first)?;
            check(ctx, b, &fam.apply(ctx.eval(a)?)?)
        }
        (DTerm::Pair(..), other) => Err(CheckError::ExpectedSigma(ctx.quote_ty(other)?)),
        _ => {
            let actual = infer(ctx, term)?;
            if convert_ty(ctx.len(), &actual, ty)? {
                Ok(())
            } else {
                Err(CheckError::ConversionFailure { expected: ctx.quote_ty(ty)?, actual: ctx.quote_ty(&actual)? })
            }
        }
    }
}

pub fn infer(ctx: &DContext, term: &DTerm) -> Result<DValue, CheckError> {
    match term {
        DTerm::Var(i) => ctx.lookup(*i).cloned().ok_or(CheckError::UnboundVariable(*i)),
        DTerm::Yes | DTerm::No => Ok(DValue::VAns),
        DTerm::CodeAns => Ok(DValue::VU),
        DTerm::CodePi(a, b) | DTerm::CodeSigma(a, b) => {
            check(ctx, a, &DValue::VU)?;
            let family_ty = DValue::VPi(Rc::new(el(ctx.eval(a)?)?), DClosure::constant(DTerm::U));
            check(ctx, b, &family_ty)?;
            Ok(DValue::VU)
        }
        DTerm::App(f, a) => match infer(ctx, f)? {
            DValue::VPi(dom, cod) => {
                check(ctx, a, &dom)?;
                Ok(cod.apply(ctx.eval(a)?)?)
            }
            other => Err(CheckError::ExpectedPi(ctx.quote_ty(&other)?)),
        },
        DTerm::Fst(p) => match infer(ctx, p)? {
            DValue::VSigma(first, _) => Ok(first.as_ref().clone()),
            other => Err(CheckError::ExpectedSigma(ctx.quote_ty(&other)?)),
        },
        DTerm::Snd(p) => match infer(ctx, p)? {
            DValue::VSigma(_, fam) => Ok(fam.apply(do_fst(ctx.eval(p)?)?)?),
            other => Err(CheckError::ExpectedSigma(ctx.quote_ty(&other)?)),
        },
        DTerm::Ann(t, ty) => {
            check_type(ctx, ty)?;
            let ty = ctx.eval(ty)?;
            check(ctx, t, &ty)?;
            Ok(ty)
        }
        DTerm::Lam(_) | DTerm::Pair(..) => Err(CheckError::CannotInfer(term.clone())),
        DTerm::Ans | DTerm::U | DTerm::El(_) | DTerm::Pi(..) | DTerm::Sigma(..) => {
            Err(CheckError::NotATerm(term.clone()))
        }
    }
}

/// Normal form of `term` at type `ty` (both given as syntax) in `ctx`.
pub fn d_normalize(ctx: &DContext, term: &DTerm, ty: &DTerm) -> Result<DNf, CheckError> {
    check_type(ctx, ty)?;
    let ty = ctx.eval(ty)?;
    check(ctx, term, &ty)?;
    Ok(d_reify(&ty, &ctx.eval(term)?, ctx.len())?)
}

/// Normal form of an inferable term, with its normal type.
pub fn d_normalize_inferred(ctx: &DContext, term: &DTerm) -> Result<(DNf, DNf), CheckError> {
    let ty = infer(ctx, term)?;
    let nf = d_reify(&ty, &ctx.eval(term)?, ctx.len())?;
    Ok((nf, d_reify_ty(&ty, ctx.len())?))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DCanonicityError {
    #[error("term is not closed")]
    NotClosed,
    #[error("term has type {0}, not Ans")]
    NotAns(DTerm),
    #[error(transparent)]
    Check(#[from] CheckError),
}

/// Decide which constructor a closed inferable term of type `Ans` equals.
pub fn d_canonicity(term: &DTerm) -> Result<Verdict, DCanonicityError> {
    if !term.is_closed() {
        return Err(DCanonicityError::NotClosed);
    }
    let ctx = DContext::empty();
    let ty = infer(&ctx, term)?;
    if !convert_ty(0, &ty, &DValue::VAns).map_err(CheckError::from)? {
        return Err(DCanonicityError::NotAns(ctx.quote_ty(&ty)?));
    }
    match d_reify(&DValue::VAns, &ctx.eval(term).map_err(CheckError::from)?, 0).map_err(CheckError::from)? {
        DNf::Yes => Ok(Verdict::IsYes),
        DNf::No => Ok(Verdict::IsNo),
        other => Err(CheckError::Nbe(DNbeError::InternalInvariantViolation(format!(
            "closed answer normalized to {other:?}"
        )))
        .into()),
    }
}
