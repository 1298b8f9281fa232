//! Enumeration of checkable dependent terms by AST size, and of small
//! universe codes.
//!
//! Lambdas and pairs are only produced in checking position. To reach
//! redexes they can be wrapped in an ascription, whose type is drawn from a
//! fixed palette of closed types; the ascription node costs one unit and its
//! type is not counted.

use std::collections::HashMap;
use std::rc::Rc;

use super::check::{check, DContext};
use super::semantics::{convert_ty, d_reify_ty, el, DClosure, DNbeError, DValue};
use super::syntax::{DNf, DTerm};

/// The closed types an ascription may use.
pub fn annotation_palette() -> Vec<DTerm> {
    use DTerm::*;
    vec![
        DTerm::arrow(Ans, Ans),
        // (A : U) -> El A -> El A
        DTerm::pi(U, DTerm::arrow(DTerm::el(Var(0)), DTerm::el(Var(0)))),
        // (A : U) * El A
        DTerm::sigma(U, DTerm::el(Var(0))),
        DTerm::sigma(Ans, Ans),
        DTerm::arrow(DTerm::arrow(Ans, Ans), Ans),
    ]
}

type CtxKey = Vec<DNf>;
type Inferred = Rc<Vec<(DTerm, DValue)>>;

pub struct DEnumerator {
    palette: Vec<(DTerm, DValue)>,
    checked: HashMap<(CtxKey, DNf, usize), Rc<Vec<DTerm>>>,
    inferred: HashMap<(CtxKey, usize), Inferred>,
}

fn ctx_key(ctx: &DContext) -> Result<CtxKey, DNbeError> {
    ctx.types().iter().enumerate().map(|(level, ty)| d_reify_ty(ty, level)).collect()
}

impl DEnumerator {
    pub fn new() -> Result<DEnumerator, DNbeError> {
        let empty = DContext::empty();
        let palette = annotation_palette()
            .into_iter()
            .map(|ty| empty.eval(&ty).map(|value| (ty, value)))
            .collect::<Result<_, _>>()?;
        Ok(DEnumerator { palette, checked: HashMap::new(), inferred: HashMap::new() })
    }

    /// Every term of exactly `size` nodes that checks against `goal`.
    pub fn check_exact(&mut self, ctx: &DContext, goal: &DValue, size: usize) -> Result<Rc<Vec<DTerm>>, DNbeError> {
        let key = (ctx_key(ctx)?, d_reify_ty(goal, ctx.len())?, size);
        if let Some(hit) = self.checked.get(&key) {
            return Ok(hit.clone());
        }
        let mut out = Vec::new();
        if size >= 2 {
            match goal {
                DValue::VPi(dom, cod) => {
                    let (inner, var) = ctx.bind(dom.as_ref().clone());
                    let body_ty = cod.apply(var)?;
                    for body in self.check_exact(&inner, &body_ty, size - 1)?.iter() {
                        out.push(DTerm::lam(body.clone()));
                    }
                }
                DValue::VSigma(first_ty, fam) => {
                    for k in 1..size - 1 {
                        for a in self.check_exact(ctx, first_ty, k)?.iter() {
                            let second_ty = fam.apply(ctx.eval(a)?)?;
                            for b in self.check_exact(ctx, &second_ty, size - 1 - k)?.iter() {
                                out.push(DTerm::pair(a.clone(), b.clone()));
                            }
                        }
                    }
                }
                _ => {}
            }
        }
        for (term, ty) in self.infer_exact(ctx, size)?.iter() {
            if convert_ty(ctx.len(), ty, goal)? {
                out.push(term.clone());
            }
        }
        let out = Rc::new(out);
        self.checked.insert(key, out.clone());
        Ok(out)
    }

    /// Every inferable term of exactly `size` nodes, with its type.
    pub fn infer_exact(&mut self, ctx: &DContext, size: usize) -> Result<Inferred, DNbeError> {
        let key = (ctx_key(ctx)?, size);
        if let Some(hit) = self.inferred.get(&key) {
            return Ok(hit.clone());
        }
        let mut out = Vec::new();
        if size == 1 {
            for index in 0..ctx.len() {
                if let Some(ty) = ctx.lookup(index) {
                    out.push((DTerm::Var(index), ty.clone()));
                }
            }
            out.push((DTerm::Yes, DValue::VAns));
            out.push((DTerm::No, DValue::VAns));
            out.push((DTerm::CodeAns, DValue::VU));
        } else {
            for (p, ty) in self.infer_exact(ctx, size - 1)?.iter() {
                if let DValue::VSigma(first_ty, fam) = ty {
                    out.push((DTerm::fst(p.clone()), first_ty.as_ref().clone()));
                    let first = ctx.eval(&DTerm::fst(p.clone()))?;
                    out.push((DTerm::snd(p.clone()), fam.apply(first)?));
                }
            }
            for k in 1..size - 1 {
                for (f, ty) in self.infer_exact(ctx, k)?.iter() {
                    if let DValue::VPi(dom, cod) = ty {
                        for a in self.check_exact(ctx, dom, size - 1 - k)?.iter() {
                            out.push((DTerm::app(f.clone(), a.clone()), cod.apply(ctx.eval(a)?)?));
                        }
                    }
                }
            }
            for k in 1..size - 1 {
                for a in self.check_exact(ctx, &DValue::VU, k)?.iter() {
                    let family_ty = DValue::VPi(Rc::new(el(ctx.eval(a)?)?), DClosure::constant(DTerm::U));
                    for b in self.check_exact(ctx, &family_ty, size - 1 - k)?.iter() {
                        out.push((DTerm::code_pi(a.clone(), b.clone()), DValue::VU));
                        out.push((DTerm::code_sigma(a.clone(), b.clone()), DValue::VU));
                    }
                }
            }
            for (ann, ann_value) in self.palette.clone() {
                for t in self.check_exact(ctx, &ann_value, size - 1)?.iter() {
                    if matches!(t, DTerm::Lam(_) | DTerm::Pair(..)) {
                        out.push((DTerm::ann(t.clone(), ann.clone()), ann_value.clone()));
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.inferred.insert(key, out.clone());
        Ok(out)
    }

    /// Every term of size at most `max_size` checking against `goal`.
    pub fn check_up_to(&mut self, ctx: &DContext, goal: &DValue, max_size: usize) -> Result<Vec<DTerm>, DNbeError> {
        let mut out = Vec::new();
        for size in 1..=max_size {
            out.extend(self.check_exact(ctx, goal, size)?.iter().cloned());
        }
        Ok(out)
    }
}

/// Codes of nesting depth at most `depth` in `ctx`: `ans`, variables of
/// type `U`, applications of code families in scope to variables, and
/// `pi`/`sigma` of smaller codes with a lambda family.
pub fn small_codes(ctx: &DContext, depth: usize) -> Result<Vec<DTerm>, DNbeError> {
    let mut out = vec![DTerm::CodeAns];
    for index in 0..ctx.len() {
        let Some(ty) = ctx.lookup(index) else { continue };
        match ty {
            DValue::VU => out.push(DTerm::Var(index)),
            DValue::VPi(_, cod) if matches!(cod.body.as_ref(), DTerm::U) => {
                for arg in 0..ctx.len() {
                    let candidate = DTerm::app(DTerm::Var(index), DTerm::Var(arg));
                    if check(ctx, &candidate, &DValue::VU).is_ok() {
                        out.push(candidate);
                    }
                }
            }
            _ => {}
        }
    }
    if depth == 0 {
        return Ok(out);
    }
    let smaller = small_codes(ctx, depth - 1)?;
    for a in &smaller {
        let (inner, _) = ctx.bind(el(ctx.eval(a)?)?);
        for b in small_codes(&inner, depth - 1)? {
            let family = DTerm::lam(b);
            out.push(DTerm::code_pi(a.clone(), family.clone()));
            out.push(DTerm::code_sigma(a.clone(), family));
        }
    }
    Ok(out)
}

/// For a `pi`/`sigma` code, the type its decoding must equal:
/// `El (pi a b) = (x : El a) -> El (b x)` and likewise for `sigma`. The
/// family is ascribed so that the application `b x` is inferable.
pub fn decoded_by_hand(code: &DTerm) -> Option<DTerm> {
    let (a, b, is_pi) = match code {
        DTerm::CodePi(a, b) => (a, b, true),
        DTerm::CodeSigma(a, b) => (a, b, false),
        _ => return None,
    };
    let dom = DTerm::el(a.as_ref().clone());
    let family_ty = DTerm::arrow(DTerm::el(a.shift(1, 0)), DTerm::U);
    let family = DTerm::ann(b.shift(1, 0), family_ty);
    let cod = DTerm::el(DTerm::app(family, DTerm::Var(0)));
    Some(if is_pi { DTerm::pi(dom, cod) } else { DTerm::sigma(dom, cod) })
}

/// The context `A : U, F : El A -> U` used for the coherence sweep.
pub fn code_family_context() -> DContext {
    DContext::from_telescope(&[DTerm::U, DTerm::arrow(DTerm::el(DTerm::Var(0)), DTerm::U)])
        .expect("the code family context is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mltt::check::{check_type, d_canonicity};
    use crate::stlc::Verdict;

    #[test]
    fn small_answers() {
        let mut e = DEnumerator::new().unwrap();
        let empty = DContext::empty();
        let ans = e.check_up_to(&empty, &DValue::VAns, 3).unwrap();
        assert!(ans.contains(&DTerm::Yes) && ans.contains(&DTerm::No));
        // (\x. x : Ans -> Ans) yes
        let redex = DTerm::app(DTerm::ann(DTerm::lam(DTerm::Var(0)), DTerm::arrow(DTerm::Ans, DTerm::Ans)), DTerm::Yes);
        assert!(e.check_up_to(&empty, &DValue::VAns, 5).unwrap().contains(&redex));
    }

    #[test]
    fn enumerated_terms_check_and_are_canonical() {
        let mut e = DEnumerator::new().unwrap();
        let empty = DContext::empty();
        let terms = e.check_up_to(&empty, &DValue::VAns, 5).unwrap();
        for t in &terms {
            assert_eq!(check(&empty, t, &DValue::VAns), Ok(()), "{t:?}");
            let wrapped = DTerm::ann(t.clone(), DTerm::Ans);
            assert!(matches!(d_canonicity(&wrapped), Ok(Verdict::IsYes | Verdict::IsNo)));
        }
        let mut sorted = terms.clone();
        sorted.sort_by_key(|t| format!("{t:?}"));
        sorted.dedup();
        assert_eq!(sorted.len(), terms.len());
    }

    #[test]
    fn codes_are_codes() {
        let ctx = code_family_context();
        let codes = small_codes(&ctx, 1).unwrap();
        assert!(codes.len() > 10);
        for c in &codes {
            assert_eq!(check(&ctx, c, &DValue::VU), Ok(()), "{c:?}");
            if let Some(ty) = decoded_by_hand(c) {
                assert_eq!(check_type(&ctx, &ty), Ok(()));
            }
        }
    }
}
