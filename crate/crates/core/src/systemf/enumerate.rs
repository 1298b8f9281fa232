//! Enumeration of β-normal η-long terms by AST size.
//!
//! At a ∀-type the only normal η-long form is a type abstraction, at a
//! function type a λ, and at a type variable a neutral spine. Type
//! arguments in a spine range over the type variables in scope; their size
//! is not counted.

use std::collections::HashMap;
use std::rc::Rc;

use super::syntax::{FTerm, FType};

type Key = (usize, Vec<FType>, usize);
type NormalKey = (usize, Vec<FType>, FType, usize);

#[derive(Default)]
pub struct FEnumerator {
    normal: HashMap<NormalKey, Rc<Vec<FTerm>>>,
    neutral: HashMap<Key, Rc<Vec<(FTerm, FType)>>>,
}

impl FEnumerator {
    pub fn new() -> FEnumerator {
        FEnumerator::default()
    }

    /// Normal η-long terms of `goal` with exactly `size` nodes.
    pub fn normal_exact(&mut self, tctx: usize, ctx: &[FType], goal: &FType, size: usize) -> Rc<Vec<FTerm>> {
        let key = (tctx, ctx.to_vec(), goal.clone(), size);
        if let Some(hit) = self.normal.get(&key) {
            return hit.clone();
        }
        let mut out = Vec::new();
        match goal {
            FType::Forall(body) if size >= 2 => {
                let inner: Vec<FType> = ctx.iter().map(|ty| ty.shift(1, 0)).collect();
                for b in self.normal_exact(tctx + 1, &inner, body, size - 1).iter() {
                    out.push(FTerm::ty_lam(b.clone()));
                }
            }
            FType::Fun(dom, cod) if size >= 2 => {
                let mut inner = ctx.to_vec();
                inner.push(dom.as_ref().clone());
                for b in self.normal_exact(tctx, &inner, cod, size - 1).iter() {
                    out.push(FTerm::lam(dom.as_ref().clone(), b.clone()));
                }
            }
            FType::TVar(_) => {
                for (n, ty) in self.neutral_exact(tctx, ctx, size).iter() {
                    if ty == goal {
                        out.push(n.clone());
                    }
                }
            }
            _ => {}
        }
        let out = Rc::new(out);
        self.normal.insert(key, out.clone());
        out
    }

    /// Neutral terms with exactly `size` nodes, with their types.
    pub fn neutral_exact(&mut self, tctx: usize, ctx: &[FType], size: usize) -> Rc<Vec<(FTerm, FType)>> {
        let key = (tctx, ctx.to_vec(), size);
        if let Some(hit) = self.neutral.get(&key) {
            return hit.clone();
        }
        let mut out = Vec::new();
        if size == 1 {
            for (index, ty) in ctx.iter().rev().enumerate() {
                out.push((FTerm::Var(index), ty.clone()));
            }
        } else {
            for (n, ty) in self.neutral_exact(tctx, ctx, size - 1).iter() {
                if let FType::Forall(body) = ty {
                    for v in 0..tctx {
                        let arg = FType::TVar(v);
                        out.push((FTerm::ty_app(n.clone(), arg.clone()), body.instantiate(&arg)));
                    }
                }
            }
            for k in 1..size - 1 {
                for (f, ty) in self.neutral_exact(tctx, ctx, k).iter() {
                    if let FType::Fun(dom, cod) = ty {
                        for a in self.normal_exact(tctx, ctx, dom, size - 1 - k).iter() {
                            out.push((FTerm::app(f.clone(), a.clone()), cod.as_ref().clone()));
                        }
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.neutral.insert(key, out.clone());
        out
    }
}

/// Every closed normal η-long term of `ty` with at most `max_size` nodes.
pub fn enumerate_closed(ty: &FType, max_size: usize) -> Vec<FTerm> {
    let mut e = FEnumerator::new();
    (1..=max_size).flat_map(|n| e.normal_exact(0, &[], ty, n).as_ref().clone()).collect()
}
