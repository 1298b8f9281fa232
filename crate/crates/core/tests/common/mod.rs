//! Random generators shared by the integration tests.
#![allow(dead_code)]

pub mod golden;

use nbe_kernel::stlc::{Context, Renaming, Substitution, Term, Type};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_type(rng: &mut impl Rng, depth: usize) -> Type {
    let leaf = depth == 0 || rng.gen_bool(0.4);
    if leaf {
        return if rng.gen_bool(0.7) { Type::Ans } else { Type::Unit };
    }
    let (a, b) = (random_type(rng, depth - 1), random_type(rng, depth - 1));
    if rng.gen_bool(0.5) {
        Type::fun(a, b)
    } else {
        Type::prod(a, b)
    }
}

pub fn random_context(rng: &mut impl Rng, max_len: usize) -> Context {
    let len = rng.gen_range(0..=max_len);
    Context::from((0..len).map(|_| random_type(rng, 2)).collect::<Vec<_>>())
}

/// A well-typed term of type `ty` in `ctx`. `budget` bounds how many
/// eliminations are introduced; the result is always finite.
pub fn random_term(rng: &mut impl Rng, ctx: &Context, ty: &Type, budget: usize) -> Term {
    let vars: Vec<usize> = (0..ctx.len()).filter(|&i| ctx.lookup(i) == Some(ty)).collect();
    if budget > 0 && rng.gen_bool(0.35) {
        let half = budget / 2;
        match rng.gen_range(0..3) {
            0 => {
                let dom = random_type(rng, 1);
                let f = random_term(rng, ctx, &Type::fun(dom.clone(), ty.clone()), half);
                let a = random_term(rng, ctx, &dom, half);
                return Term::app(f, a);
            }
            1 => {
                let other = random_type(rng, 1);
                let p = random_term(rng, ctx, &Type::prod(ty.clone(), other), budget - 1);
                return Term::fst(p);
            }
            _ => {
                let other = random_type(rng, 1);
                let p = random_term(rng, ctx, &Type::prod(other, ty.clone()), budget - 1);
                return Term::snd(p);
            }
        }
    }
    if !vars.is_empty() && rng.gen_bool(0.5) {
        return Term::Var(*vars.choose(rng).unwrap());
    }
    match ty {
        Type::Ans => {
            if rng.gen_bool(0.5) {
                Term::Yes
            } else {
                Term::No
            }
        }
        Type::Unit => Term::Star,
        Type::Prod(a, b) => {
            let half = budget / 2;
            Term::pair(random_term(rng, ctx, a, half), random_term(rng, ctx, b, half))
        }
        Type::Fun(a, b) => {
            let inner = ctx.extend(a.as_ref().clone());
            Term::lam(a.as_ref().clone(), random_term(rng, &inner, b, budget.saturating_sub(1)))
        }
    }
}

/// A context together with a well-typed closed-over-it term and its type.
pub fn random_typed_term(rng: &mut impl Rng, budget: usize) -> (Context, Term, Type) {
    let ctx = random_context(rng, 3);
    let ty = random_type(rng, 2);
    let t = random_term(rng, &ctx, &ty, budget);
    (ctx, t, ty)
}

/// A target context and a typed renaming from it into `source`. The target
/// contains every type of the source, shuffled, plus some extra entries,
/// so renamings may permute, weaken and (through repeated types) merge.
pub fn random_renaming(rng: &mut impl Rng, source: &Context) -> (Context, Renaming) {
    let mut target: Vec<Type> = source.types().to_vec();
    for _ in 0..rng.gen_range(0..3) {
        target.push(random_type(rng, 1));
    }
    target.shuffle(rng);
    let target = Context::from(target);
    let map = (0..source.len())
        .map(|i| {
            let ty = source.lookup(i).unwrap();
            let candidates: Vec<usize> = (0..target.len()).filter(|&j| target.lookup(j) == Some(ty)).collect();
            *candidates.choose(rng).unwrap()
        })
        .collect();
    let r = Renaming::new(target.len(), map).unwrap();
    assert!(r.is_typed(source, &target));
    (target, r)
}

/// A typed substitution from `target` into `source`: each source variable is
/// replaced by a random term of its type over `target`.
pub fn random_substitution(rng: &mut impl Rng, source: &Context, target: &Context, budget: usize) -> Substitution {
    let entries = (0..source.len()).map(|i| random_term(rng, target, source.lookup(i).unwrap(), budget)).collect();
    let s = Substitution::new(target.len(), entries).unwrap();
    assert!(s.is_typed(source, target));
    s
}
