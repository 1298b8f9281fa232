//! Printing kernel terms back into the surface syntax.
//!
//! Bound variables get the first of `x`, `y`, `z`, `x1`, `y1`, ... not
//! already in scope (type variables: `X`, `Y`, `Z`, `X1`, ...), so the
//! output parses back to the same term.

use crate::mltt::DTerm;
use crate::stlc::{Term, Type};
use crate::systemf::{FTerm, FType};

fn fresh(scope: &[String], letters: [&str; 3]) -> String {
    (0..)
        .map(|k: usize| match k / 3 {
            0 => letters[k % 3].to_string(),
            n => format!("{}{n}", letters[k % 3]),
        })
        .find(|candidate| !scope.contains(candidate))
        .expect("an unused name exists")
}

fn fresh_term_name(scope: &[String]) -> String {
    fresh(scope, ["x", "y", "z"])
}

fn fresh_type_name(scope: &[String]) -> String {
    fresh(scope, ["X", "Y", "Z"])
}

fn name_of(scope: &[String], index: usize) -> String {
    match scope.len().checked_sub(index + 1) {
        Some(pos) => scope[pos].clone(),
        None => format!("#{index}"),
    }
}

fn paren(s: String, wrap: bool) -> String {
    if wrap {
        format!("({s})")
    } else {
        s
    }
}

// Simply typed. Type levels: 0 arrow, 1 product, 2 atom.

fn stlc_type_at(ty: &Type, level: u8) -> String {
    match ty {
        Type::Ans => "Ans".into(),
        Type::Unit => "Unit".into(),
        Type::Fun(a, b) => paren(format!("{} -> {}", stlc_type_at(a, 1), stlc_type_at(b, 0)), level > 0),
        Type::Prod(a, b) => paren(format!("{} * {}", stlc_type_at(a, 2), stlc_type_at(b, 1)), level > 1),
    }
}

pub fn stlc_type(ty: &Type) -> String {
    stlc_type_at(ty, 0)
}

// Term levels: 0 lambda, 1 application, 2 atom.

fn stlc_term_at(t: &Term, scope: &mut Vec<String>, level: u8) -> String {
    match t {
        Term::Var(i) => name_of(scope, *i),
        Term::Yes => "yes".into(),
        Term::No => "no".into(),
        Term::Star => "()".into(),
        Term::Pair(a, b) => format!("({}, {})", stlc_term_at(a, scope, 0), stlc_term_at(b, scope, 0)),
        Term::Fst(p) => paren(format!("fst {}", stlc_term_at(p, scope, 2)), level > 1),
        Term::Snd(p) => paren(format!("snd {}", stlc_term_at(p, scope, 2)), level > 1),
        Term::App(f, a) => paren(format!("{} {}", stlc_term_at(f, scope, 1), stlc_term_at(a, scope, 2)), level > 1),
        Term::Lam(ty, body) => {
            let name = fresh_term_name(scope);
            scope.push(name.clone());
            let body = stlc_term_at(body, scope, 0);
            scope.pop();
            paren(format!("\\{name}:{}. {body}", stlc_type(ty)), level > 0)
        }
    }
}

/// Print a simply typed term whose free variables are named by `names`
/// (innermost last).
pub fn stlc_term(t: &Term, names: &[String]) -> String {
    stlc_term_at(t, &mut names.to_vec(), 0)
}

// Dependent. Levels: 0 ascription, 1 binder, 2 arrow, 3 product,
// 4 application, 5 atom.

fn mltt_at(t: &DTerm, scope: &mut Vec<String>, level: u8) -> String {
    let under = |body: &DTerm, scope: &mut Vec<String>, level: u8| {
        let name = fresh_term_name(scope);
        scope.push(name.clone());
        let s = mltt_at(body, scope, level);
        scope.pop();
        (name, s)
    };
    match t {
        DTerm::Var(i) => name_of(scope, *i),
        DTerm::Yes => "yes".into(),
        DTerm::No => "no".into(),
        DTerm::Ans => "Ans".into(),
        DTerm::U => "U".into(),
        DTerm::CodeAns => "ans".into(),
        DTerm::Pair(a, b) => format!("({}, {})", mltt_at(a, scope, 0), mltt_at(b, scope, 0)),
        DTerm::El(a) => paren(format!("El {}", mltt_at(a, scope, 5)), level > 4),
        DTerm::Fst(p) => paren(format!("fst {}", mltt_at(p, scope, 5)), level > 4),
        DTerm::Snd(p) => paren(format!("snd {}", mltt_at(p, scope, 5)), level > 4),
        DTerm::CodePi(a, b) => paren(format!("pi {} {}", mltt_at(a, scope, 5), mltt_at(b, scope, 5)), level > 4),
        DTerm::CodeSigma(a, b) => paren(format!("sigma {} {}", mltt_at(a, scope, 5), mltt_at(b, scope, 5)), level > 4),
        DTerm::App(f, a) => paren(format!("{} {}", mltt_at(f, scope, 4), mltt_at(a, scope, 5)), level > 4),
        DTerm::Ann(e, ty) => paren(format!("{} : {}", mltt_at(e, scope, 1), mltt_at(ty, scope, 0)), level > 0),
        DTerm::Lam(body) => {
            let (name, body) = under(body, scope, 1);
            paren(format!("\\{name}. {body}"), level > 1)
        }
        DTerm::Pi(a, b) if b.mentions(0) => {
            let dom = mltt_at(a, scope, 0);
            let (name, cod) = under(b, scope, 1);
            paren(format!("({name} : {dom}) -> {cod}"), level > 2)
        }
        DTerm::Pi(a, b) => {
            let dom = mltt_at(a, scope, 3);
            let (_, cod) = under(b, scope, 1);
            paren(format!("{dom} -> {cod}"), level > 2)
        }
        DTerm::Sigma(a, b) if b.mentions(0) => {
            let first = mltt_at(a, scope, 0);
            let (name, second) = under(b, scope, 3);
            paren(format!("({name} : {first}) * {second}"), level > 3)
        }
        DTerm::Sigma(a, b) => {
            let first = mltt_at(a, scope, 4);
            let (_, second) = under(b, scope, 3);
            paren(format!("{first} * {second}"), level > 3)
        }
    }
}

/// Print a dependent term or type whose free variables are `names`.
pub fn mltt_term(t: &DTerm, names: &[String]) -> String {
    mltt_at(t, &mut names.to_vec(), 0)
}

// System F. Type levels: 0 quantifier, 1 arrow, 2 atom. Term levels:
// 0 binder, 1 application, 2 atom.

fn sysf_type_at(ty: &FType, tscope: &mut Vec<String>, level: u8) -> String {
    match ty {
        FType::TVar(i) => name_of(tscope, *i),
        FType::Fun(a, b) => {
            paren(format!("{} -> {}", sysf_type_at(a, tscope, 2), sysf_type_at(b, tscope, 1)), level > 1)
        }
        FType::Forall(body) => {
            let name = fresh_type_name(tscope);
            tscope.push(name.clone());
            let body = sysf_type_at(body, tscope, 0);
            tscope.pop();
            paren(format!("forall {name}. {body}"), level > 0)
        }
    }
}

/// Print a System F type whose free type variables are `names`.
pub fn sysf_type(ty: &FType, names: &[String]) -> String {
    sysf_type_at(ty, &mut names.to_vec(), 0)
}

fn sysf_term_at(t: &FTerm, tscope: &mut Vec<String>, scope: &mut Vec<String>, level: u8) -> String {
    match t {
        FTerm::Var(i) => name_of(scope, *i),
        FTerm::App(f, a) => {
            paren(format!("{} {}", sysf_term_at(f, tscope, scope, 1), sysf_term_at(a, tscope, scope, 2)), level > 1)
        }
        FTerm::TyApp(f, ty) => {
            paren(format!("{} [{}]", sysf_term_at(f, tscope, scope, 1), sysf_type_at(ty, tscope, 0)), level > 1)
        }
        FTerm::Lam(ty, body) => {
            let name = fresh_term_name(scope);
            let ty = sysf_type_at(ty, tscope, 0);
            scope.push(name.clone());
            let body = sysf_term_at(body, tscope, scope, 0);
            scope.pop();
            paren(format!("\\{name}:{ty}. {body}"), level > 0)
        }
        FTerm::TyLam(body) => {
            let name = fresh_type_name(tscope);
            tscope.push(name.clone());
            let body = sysf_term_at(body, tscope, scope, 0);
            tscope.pop();
            paren(format!("/\\{name}. {body}"), level > 0)
        }
    }
}

pub fn sysf_term(t: &FTerm) -> String {
    sysf_term_at(t, &mut Vec::new(), &mut Vec::new(), 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::parse::{parse_mltt, parse_stlc_term, parse_sysf_term, parse_sysf_type};
    use crate::systemf::church;

    #[test]
    fn stlc_examples() {
        assert_eq!(stlc_term(&Term::lam(Type::Ans, Term::Var(0)), &[]), "\\x:Ans. x");
        assert_eq!(stlc_term(&Term::pair(Term::Yes, Term::No), &[]), "(yes, no)");
        let nested = Term::lam(Type::Ans, Term::lam(Type::Ans, Term::Var(1)));
        assert_eq!(stlc_term(&nested, &[]), "\\x:Ans. \\y:Ans. x");
        assert_eq!(stlc_type(&Type::fun(Type::fun(Type::Ans, Type::Ans), Type::Ans)), "(Ans -> Ans) -> Ans");
        assert_eq!(stlc_type(&Type::prod(Type::prod(Type::Ans, Type::Unit), Type::Ans)), "(Ans * Unit) * Ans");
    }

    #[test]
    fn fresh_names_avoid_scope() {
        let names = vec!["x".to_string(), "y".to_string()];
        let t = Term::lam(Type::Ans, Term::app(Term::Var(2), Term::Var(0)));
        assert_eq!(stlc_term(&t, &names), "\\z:Ans. x z");
        let deep = (0..4).fold(Term::Var(0), |b, _| Term::lam(Type::Ans, b));
        assert_eq!(stlc_term(&deep, &[]), "\\x:Ans. \\y:Ans. \\z:Ans. \\x1:Ans. x1");
    }

    #[test]
    fn stlc_roundtrips() {
        for src in [
            "(\\x:Ans. x) yes",
            "\\f:Ans -> Ans. f (f yes)",
            "fst (snd ((), (yes, no)))",
            "\\p:Ans * Unit. (snd p, fst p)",
        ] {
            let t = parse_stlc_term(src, &[]).unwrap();
            assert_eq!(parse_stlc_term(&stlc_term(&t, &[]), &[]), Ok(t), "{src}");
        }
    }

    #[test]
    fn mltt_roundtrips() {
        for src in [
            "(\\(A)(x). x : (A : U) -> El A -> El A) ans yes",
            "(A : U) * El A",
            "El (pi ans (\\_. ans))",
            "\\f. \\x. f (f x) : (Ans -> Ans) -> Ans -> Ans",
            "snd ((ans, yes) : (A : U) * El A)",
            "(A : U) -> (El A -> U) -> U",
        ] {
            let t = parse_mltt(src, &[]).unwrap();
            let printed = mltt_term(&t, &[]);
            assert_eq!(parse_mltt(&printed, &[]), Ok(t), "{src} printed as {printed}");
        }
        let t = parse_mltt("(A : U) -> El A -> El A", &[]).unwrap();
        assert_eq!(mltt_term(&t, &[]), "(x : U) -> El x -> El x");
    }

    #[test]
    fn sysf_examples() {
        assert_eq!(sysf_term(&church::id()), "/\\X. \\x:X. x");
        assert_eq!(sysf_type(&church::nat(), &[]), "forall X. (X -> X) -> X -> X");
        for t in [church::suc(), church::two(), FTerm::ty_app(church::id(), church::id_type())] {
            assert_eq!(parse_sysf_term(&sysf_term(&t)), Ok(t));
        }
        let ty = FType::fun(church::id_type(), church::id_type());
        assert_eq!(parse_sysf_type(&sysf_type(&ty, &[])), Ok(ty));
    }
}
