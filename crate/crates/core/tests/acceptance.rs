//! The eight acceptance criteria, run without the test harness so that the
//! PASS/FAIL line of each criterion is always printed. A criterion that
//! exceeds its time limit fails.

mod common;

use std::time::{Duration, Instant};

use common::golden::{check_case, CASES};
use common::{random_renaming, random_typed_term, rng};
use nbe_kernel::fuel::Fuel;
use nbe_kernel::mltt::enumerate::{code_family_context, decoded_by_hand, small_codes, DEnumerator};
use nbe_kernel::mltt::{check, convert_ty, d_canonicity, d_reify_ty, DContext, DTerm, DValue};
use nbe_kernel::set_model::{consistency_check, SetModel};
use nbe_kernel::stlc::oracle::{enumerate_terms, oracle_equal};
use nbe_kernel::stlc::{canonicity, embed_nf, normalize, rename, Context, NormalForm, Term, Type, Verdict};
use nbe_kernel::systemf::enumerate::enumerate_closed;
use nbe_kernel::systemf::{
    church, f_normalize, free_theorem_check, rel_member, FTerm, FType, FreeTheoremVerdict, RelEnv, RelInstance,
};

type Outcome = Result<String, String>;

/// Name, time limit in seconds, and the check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fuel() -> Fuel {
    Fuel::DEFAULT
}

fn criterion_types() -> Vec<Type> {
    vec![
        Type::Ans,
        Type::Unit,
        Type::prod(Type::Ans, Type::Ans),
        Type::fun(Type::Ans, Type::Ans),
        Type::fun(Type::fun(Type::Ans, Type::Ans), Type::Ans),
    ]
}

fn consistency() -> Outcome {
    let ctx = Context::empty();
    ensure(consistency_check(), || "yes and no have equal denotations".into())?;
    let eq = oracle_equal(&ctx, &Term::Yes, &Term::No, fuel()).map_err(|e| e.to_string())?;
    ensure(!eq, || "the oracle equates yes and no".into())?;
    let (y, n) = (normalize(&ctx, &Term::Yes), normalize(&ctx, &Term::No));
    ensure(y.is_ok() && y != n, || format!("normalize gives {y:?} and {n:?}"))?;
    Ok("model, oracle and normalizer all separate yes from no".into())
}

fn stlc_canonicity_sweep() -> Outcome {
    let terms = enumerate_terms(&Context::empty(), &Type::Ans, 7);
    let (mut yes, mut no) = (0, 0);
    for t in &terms {
        match canonicity(t) {
            Ok(Verdict::IsYes) => yes += 1,
            Ok(Verdict::IsNo) => no += 1,
            Err(e) => return Err(format!("{t}: {e}")),
        }
    }
    Ok(format!("{} closed answers of size <= 7 ({yes} yes, {no} no)", terms.len()))
}

fn normalization_agrees_with_oracle() -> Outcome {
    let ctx = Context::empty();
    let (mut pairs, mut terms_seen) = (0usize, 0usize);
    for ty in criterion_types() {
        let terms = enumerate_terms(&ctx, &ty, 4);
        terms_seen += terms.len();
        let nfs: Vec<NormalForm> =
            terms.iter().map(|t| normalize(&ctx, t).map_err(|e| format!("{t}: {e}"))).collect::<Result<_, _>>()?;
        for (t, nf) in terms.iter().zip(&nfs) {
            let back = embed_nf(nf, 0).map_err(|e| e.to_string())?;
            let again = normalize(&ctx, &back).map_err(|e| e.to_string())?;
            ensure(&again == nf, || format!("{t}: normal form is not a fixpoint"))?;
        }
        for (i, t) in terms.iter().enumerate() {
            for (j, s) in terms.iter().enumerate() {
                let oracle = oracle_equal(&ctx, t, s, fuel()).map_err(|e| format!("{t} vs {s}: {e}"))?;
                ensure(oracle == (nfs[i] == nfs[j]), || format!("{t} vs {s}: oracle says {oracle}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{terms_seen} terms, {pairs} ordered pairs, zero discrepancies"))
}

fn renaming_stability() -> Outcome {
    let mut g = rng(0x5eed);
    for k in 0..10_000 {
        let (ctx, t, _) = random_typed_term(&mut g, 8);
        let (target, r) = random_renaming(&mut g, &ctx);
        let renamed = rename(&t, &r).map_err(|e| e.to_string())?;
        let left = normalize(&target, &renamed).map_err(|e| e.to_string())?;
        let right = normalize(&ctx, &t).map_err(|e| e.to_string())?.rename(&r).map_err(|e| e.to_string())?;
        ensure(left == right, || format!("case {k}: {t} under {r:?}"))?;
    }
    Ok("10000 random (term, renaming) pairs".into())
}

fn model_soundness() -> Outcome {
    let ctx = Context::empty();
    let model = SetModel::default();
    let mut equal_pairs = 0;
    for ty in criterion_types() {
        let terms = enumerate_terms(&ctx, &ty, 4);
        let dens: Vec<_> =
            terms.iter().map(|t| model.interp_tm(&[], t).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
        for (i, t) in terms.iter().enumerate() {
            for (j, s) in terms.iter().enumerate().skip(i + 1) {
                if oracle_equal(&ctx, t, s, fuel()).map_err(|e| e.to_string())? {
                    equal_pairs += 1;
                    ensure(dens[i] == dens[j], || format!("{t} and {s} are equal but denote differently"))?;
                }
            }
        }
    }
    // the converse fails: distinct normal forms, equal denotations
    let f = Type::fun(Type::Ans, Type::Ans);
    let ty = Type::fun(f.clone(), Type::Ans);
    let once = Term::lam(f.clone(), Term::app(Term::Var(0), Term::Yes));
    let thrice = Term::lam(f, Term::app(Term::Var(0), Term::app(Term::Var(0), Term::app(Term::Var(0), Term::Yes))));
    let (n1, n3) = (normalize(&ctx, &once), normalize(&ctx, &thrice));
    ensure(n1.is_ok() && n1 != n3, || "witness normal forms coincide".into())?;
    ensure(!oracle_equal(&ctx, &once, &thrice, fuel()).map_err(|e| e.to_string())?, || {
        "oracle equates the witness".into()
    })?;
    let (d1, d3) = (model.interp_tm(&[], &once), model.interp_tm(&[], &thrice));
    ensure(d1.is_ok() && d1 == d3, || "witness denotations differ".into())?;
    Ok(format!("{equal_pairs} equal pairs sound; witness `{once}` vs `{thrice}` at {ty}"))
}

fn universe_equations() -> Outcome {
    let err = |e: &dyn std::fmt::Display| e.to_string();
    let mut checked = 0;
    for ctx in [DContext::empty(), code_family_context()] {
        let depth = ctx.len();
        let decoded_ans = nbe_kernel::mltt::semantics::el(DValue::VCodeAns).map_err(|e| err(&e))?;
        ensure(convert_ty(depth, &decoded_ans, &DValue::VAns).map_err(|e| err(&e))?, || "El ans is not Ans".into())?;
        for code in small_codes(&ctx, 2).map_err(|e| err(&e))? {
            check(&ctx, &code, &DValue::VU).map_err(|e| format!("{code}: {e}"))?;
            let Some(by_hand) = decoded_by_hand(&code) else { continue };
            let via_el = ctx.eval(&DTerm::el(code.clone())).map_err(|e| err(&e))?;
            let expected = ctx.eval(&by_hand).map_err(|e| err(&e))?;
            ensure(convert_ty(depth, &via_el, &expected).map_err(|e| err(&e))?, || {
                format!("El ({code}) != {by_hand}")
            })?;
            let (a, b) =
                (d_reify_ty(&via_el, depth).map_err(|e| err(&e))?, d_reify_ty(&expected, depth).map_err(|e| err(&e))?);
            ensure(a == b, || format!("El ({code}) reifies differently"))?;
            checked += 1;
        }
    }
    let mut e = DEnumerator::new().map_err(|e| err(&e))?;
    let empty = DContext::empty();
    let mut swept = 0;
    for goal in [DTerm::Ans, DTerm::el(DTerm::CodeAns)] {
        let goal_value = empty.eval(&goal).map_err(|e| err(&e))?;
        for t in e.check_up_to(&empty, &goal_value, 7).map_err(|e| err(&e))? {
            let verdict = d_canonicity(&DTerm::ann(t.clone(), goal.clone()));
            ensure(matches!(verdict, Ok(Verdict::IsYes | Verdict::IsNo)), || format!("{t}: {verdict:?}"))?;
            swept += 1;
        }
    }
    Ok(format!("{checked} pi/sigma codes cohere; {swept} dependent answers canonical"))
}

fn system_f_identity() -> Outcome {
    let inhabitants = enumerate_closed(&church::id_type(), 6);
    ensure(inhabitants == vec![church::id()], || format!("inhabitants: {inhabitants:?}"))?;
    for t in &inhabitants {
        ensure(f_normalize(t, fuel()).as_ref() == Ok(&church::id()), || format!("{t} does not normalize to id"))?;
    }
    let show = |e: &dyn std::fmt::Display| e.to_string();
    let t_rel = || RelInstance::new(church::id_type(), church::id_type(), vec![(church::id(), church::id())], fuel());
    let id_env = RelEnv::new(vec![t_rel().map_err(|e| show(&e))?]);
    let pass = Ok(FreeTheoremVerdict::Pass);
    ensure(
        free_theorem_check(&church::id(), &church::id_type(), std::slice::from_ref(&id_env), fuel()) == pass,
        || "identity fails".into(),
    )?;

    let empty =
        RelEnv::new(
            vec![RelInstance::new(church::id_type(), church::id_type(), vec![], fuel()).map_err(|e| show(&e))?],
        );
    ensure(free_theorem_check(&church::id(), &church::id_type(), &[empty], fuel()) == pass, || {
        "vacuous case fails".into()
    })?;

    let xx = FType::fun(FType::TVar(0), FType::TVar(0));
    let id_t = FTerm::lam(church::id_type(), FTerm::Var(0));
    let two_env =
        id_env.clone().with_candidates(xx.clone(), vec![(id_t.clone(), id_t.clone())], fuel()).map_err(|e| show(&e))?;
    ensure(free_theorem_check(&church::two(), &church::nat(), &[two_env], fuel()) == pass, || {
        "Church two fails".into()
    })?;

    let c = church::numeral;
    let nat_env = RelEnv::new(vec![
        RelInstance::new(church::nat(), church::nat(), vec![(c(0), c(1))], fuel()).map_err(|e| show(&e))?
    ]);
    let x = FType::TVar(0);
    ensure(rel_member(&x, &nat_env, &c(0), &c(1), fuel()) == Ok(true), || "(c0, c1) not in R".into())?;
    ensure(rel_member(&x, &nat_env, &c(0), &c(0), fuel()) == Ok(false), || "(c0, c0) in R".into())?;
    let identity = FTerm::lam(church::nat(), FTerm::Var(0));
    let constant = FTerm::lam(church::nat(), c(0));
    ensure(rel_member(&xx, &nat_env, &identity, &constant, fuel()) == Ok(false), || {
        "identity related to constant".into()
    })?;
    ensure(rel_member(&xx, &id_env, &id_t, &id_t, fuel()) == Ok(true), || "identity unrelated to itself".into())?;
    Ok("identity is the only inhabitant up to size 6; free theorems pass; negative membership is false".into())
}

fn cli_contract() -> Outcome {
    let failures: Vec<String> = CASES.iter().filter_map(|case| check_case(case).err()).collect();
    ensure(failures.is_empty(), || failures.join("\n"))?;
    Ok(format!("{} golden cases", CASES.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 consistency", 1, consistency),
        ("2 stlc canonicity sweep", 30, stlc_canonicity_sweep),
        ("3 normalization vs oracle", 120, normalization_agrees_with_oracle),
        ("4 renaming stability", 30, renaming_stability),
        ("5 set-model soundness", 60, model_soundness),
        ("6 universe equations", 60, universe_equations),
        ("7 system f identity theorem", 30, system_f_identity),
        ("8 cli contract", 5, cli_contract),
    ];
    let mut failed = Vec::new();
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(limit) => {
                Err(format!("{detail}, but over the {limit} s limit"))
            }
            other => other,
        };
        match &outcome {
            Ok(detail) => println!("PASS criterion {name} ({:.2} s): {detail}", elapsed.as_secs_f64()),
            Err(why) => {
                println!("FAIL criterion {name} ({:.2} s): {why}", elapsed.as_secs_f64());
                failed.push(name);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
    } else {
        println!("acceptance: failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
