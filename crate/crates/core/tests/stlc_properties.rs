mod common;

use common::*;
use nbe_kernel::fuel::Fuel;
use nbe_kernel::set_model::SetModel;
use nbe_kernel::stlc::nbe::{eval, reify, Environment};
use nbe_kernel::stlc::oracle::{bounded_beta_normalize, enumerate_terms, oracle_equal, step, RewriteResult};
use nbe_kernel::stlc::{embed_nf, infer, normalize, rename, subst, Context, Renaming, Substitution, Type};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 256, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn rename_identity(seed in any::<u64>()) {
        let (ctx, t, _) = random_typed_term(&mut rng(seed), 6);
        prop_assert_eq!(rename(&t, &Renaming::identity(ctx.len())).unwrap(), t);
    }

    #[test]
    fn rename_functorial(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (ctx, t, _) = random_typed_term(&mut g, 6);
        let (mid, r1) = random_renaming(&mut g, &ctx);
        let (_, r2) = random_renaming(&mut g, &mid);
        let stepwise = rename(&rename(&t, &r1).unwrap(), &r2).unwrap();
        prop_assert_eq!(stepwise, rename(&t, &r1.then(&r2).unwrap()).unwrap());
    }

    #[test]
    fn subst_identity(seed in any::<u64>()) {
        let (ctx, t, _) = random_typed_term(&mut rng(seed), 6);
        prop_assert_eq!(subst(&t, &Substitution::identity(ctx.len())).unwrap(), t);
    }

    #[test]
    fn subst_composes(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (ctx, t, _) = random_typed_term(&mut g, 6);
        let mid = random_context(&mut g, 3);
        let last = random_context(&mut g, 3);
        let s1 = random_substitution(&mut g, &ctx, &mid, 2);
        let s2 = random_substitution(&mut g, &mid, &last, 2);
        let stepwise = subst(&subst(&t, &s1).unwrap(), &s2).unwrap();
        prop_assert_eq!(stepwise, subst(&t, &s1.then(&s2).unwrap()).unwrap());
    }

    #[test]
    fn renaming_and_substitution_preserve_types(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (ctx, t, ty) = random_typed_term(&mut g, 6);
        prop_assert_eq!(infer(&ctx, &t), Ok(ty.clone()));
        let (target, r) = random_renaming(&mut g, &ctx);
        prop_assert_eq!(infer(&target, &rename(&t, &r).unwrap()), Ok(ty.clone()));
        let other = random_context(&mut g, 3);
        let s = random_substitution(&mut g, &ctx, &other, 2);
        prop_assert_eq!(infer(&other, &subst(&t, &s).unwrap()), Ok(ty));
    }

    #[test]
    fn infer_is_deterministic(seed in any::<u64>()) {
        let (ctx, t, _) = random_typed_term(&mut rng(seed), 6);
        prop_assert_eq!(infer(&ctx, &t), infer(&ctx.clone(), &t.clone()));
    }

    #[test]
    fn normal_forms_are_fixpoints(seed in any::<u64>()) {
        let (ctx, t, _) = random_typed_term(&mut rng(seed), 8);
        let nf = normalize(&ctx, &t).unwrap();
        let embedded = embed_nf(&nf, ctx.len()).unwrap();
        prop_assert_eq!(normalize(&ctx, &embedded).unwrap(), nf);
    }

    #[test]
    fn normalization_is_stable_under_renaming(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (ctx, t, _) = random_typed_term(&mut g, 8);
        let (target, r) = random_renaming(&mut g, &ctx);
        let renamed_first = normalize(&target, &rename(&t, &r).unwrap()).unwrap();
        prop_assert_eq!(renamed_first, normalize(&ctx, &t).unwrap().rename(&r).unwrap());
    }

    #[test]
    fn substitution_is_natural_at_reify(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (ctx, t, ty) = random_typed_term(&mut g, 6);
        let target = random_context(&mut g, 3);
        let s = random_substitution(&mut g, &ctx, &target, 3);
        let env = Environment::reflected(&target);
        let direct = reify(&ty, &eval(&env, &subst(&t, &s).unwrap()).unwrap(), target.len()).unwrap();
        let values = s.entries().iter().rev().map(|e| eval(&env, e).unwrap()).collect();
        let via_env = reify(&ty, &eval(&Environment::new(values), &t).unwrap(), target.len()).unwrap();
        prop_assert_eq!(direct, via_env);
    }

    #[test]
    fn step_preserves_types(seed in any::<u64>()) {
        let (ctx, t, ty) = random_typed_term(&mut rng(seed), 8);
        let mut current = t;
        while let RewriteResult::Stepped(next) = step(&current) {
            prop_assert_eq!(infer(&ctx, &next), Ok(ty.clone()));
            current = next;
        }
    }

    #[test]
    fn beta_normalization_fits_the_default_fuel(seed in any::<u64>()) {
        let (_, t, _) = random_typed_term(&mut rng(seed), 8);
        prop_assert!(bounded_beta_normalize(&t, Fuel::DEFAULT).is_ok());
    }

    #[test]
    fn normalize_agrees_with_oracle_on_random_pairs(seed in any::<u64>()) {
        let mut g = rng(seed);
        let ctx = random_context(&mut g, 2);
        let ty = random_type(&mut g, 2);
        let t = random_term(&mut g, &ctx, &ty, 6);
        let s = random_term(&mut g, &ctx, &ty, 6);
        let same_nf = normalize(&ctx, &t).unwrap() == normalize(&ctx, &s).unwrap();
        prop_assert_eq!(oracle_equal(&ctx, &t, &s, Fuel::DEFAULT), Ok(same_nf));
    }
}

#[test]
fn normalization_is_sound_for_the_oracle() {
    let ctx = Context::empty();
    for ty in [Type::Ans, Type::fun(Type::Ans, Type::Ans), Type::prod(Type::Ans, Type::Unit)] {
        for t in enumerate_terms(&ctx, &ty, 5) {
            let back = embed_nf(&normalize(&ctx, &t).unwrap(), 0).unwrap();
            assert_eq!(oracle_equal(&ctx, &t, &back, Fuel::DEFAULT), Ok(true), "{t}");
        }
    }
    let open = Context::from(vec![Type::fun(Type::Ans, Type::Ans), Type::Ans]);
    for t in enumerate_terms(&open, &Type::Ans, 5) {
        let back = embed_nf(&normalize(&open, &t).unwrap(), open.len()).unwrap();
        assert_eq!(oracle_equal(&open, &t, &back, Fuel::DEFAULT), Ok(true), "{t}");
    }
}

#[test]
fn oracle_is_an_equivalence() {
    let ctx = Context::empty();
    let ty = Type::fun(Type::Ans, Type::Ans);
    let terms = enumerate_terms(&ctx, &ty, 4);
    let eq = |a, b| oracle_equal(&ctx, a, b, Fuel::DEFAULT).unwrap();
    for a in &terms {
        assert!(eq(a, a));
        for b in &terms {
            assert_eq!(eq(a, b), eq(b, a));
            if eq(a, b) {
                for c in &terms {
                    if eq(b, c) {
                        assert!(eq(a, c), "{a} {b} {c}");
                    }
                }
            }
        }
    }
}

#[test]
fn model_cardinalities() {
    let model = SetModel::default();
    let mut g = rng(7);
    for _ in 0..200 {
        let (a, b) = (random_type(&mut g, 2), random_type(&mut g, 1));
        let (Some(ca), Some(cb)) = (model.cardinality(&a), model.cardinality(&b)) else { continue };
        if let Some(p) = model.cardinality(&Type::prod(a.clone(), b.clone())) {
            assert_eq!(p, ca * cb);
        }
        if let Some(f) = model.cardinality(&Type::fun(a.clone(), b.clone())) {
            assert_eq!(Some(f), cb.checked_pow(ca as u32));
            if f <= 4096 {
                assert_eq!(model.interp_ty(&Type::fun(a, b)).unwrap().len(), f);
            }
        }
    }
}
