//! A binary relational interpretation of System F types over finite,
//! user-supplied relations between closed terms.
//!
//! Membership at a type variable is a lookup in the supplied relation. At a
//! function type the quantification over related arguments ranges over a
//! finite candidate set: the listed pairs of the relation when the domain
//! is a type variable, otherwise the candidate pairs supplied for that
//! domain type (kept only if they are themselves related). This checks
//! instances of a free theorem, not the theorem itself.

use std::fmt::Write as _;

use thiserror::Error;

use super::syntax::{f_infer, f_normalize, FTerm, FType, FTypeError, FuelExhausted};
use crate::fuel::Fuel;

/// A relation between closed terms of two closed types, stored with both
/// components β-normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelInstance {
    left_type: FType,
    right_type: FType,
    pairs: Vec<(FTerm, FTerm)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelError {
    #[error("{0} is polymorphic; check it with free_theorem_check and explicit instantiations")]
    UnsupportedQuantifier(FType),
    #[error("expected {expected} relation(s), one per quantifier, got {actual}")]
    InstantiationArity { expected: usize, actual: usize },
    #[error("ill-typed: {0}")]
    IllTyped(String),
    #[error(transparent)]
    FuelExhausted(#[from] FuelExhausted),
}

impl From<FTypeError> for RelError {
    fn from(e: FTypeError) -> RelError {
        RelError::IllTyped(e.to_string())
    }
}

fn closed_type(ty: &FType) -> Result<(), RelError> {
    if ty.is_closed() {
        Ok(())
    } else {
        Err(RelError::IllTyped(format!("{ty:?} is not closed")))
    }
}

/// Normalize a closed term after checking that it has type `ty`.
fn normal_at(term: &FTerm, ty: &FType, fuel: Fuel) -> Result<FTerm, RelError> {
    if !term.is_closed() {
        return Err(RelError::IllTyped(format!("{term:?} is not closed")));
    }
    let actual = f_infer(0, &[], term)?;
    if &actual != ty {
        return Err(RelError::IllTyped(format!("{term:?} has type {actual:?}, expected {ty:?}")));
    }
    Ok(f_normalize(term, fuel)?)
}

impl RelInstance {
    pub fn new(
        left_type: FType,
        right_type: FType,
        pairs: Vec<(FTerm, FTerm)>,
        fuel: Fuel,
    ) -> Result<RelInstance, RelError> {
        closed_type(&left_type)?;
        closed_type(&right_type)?;
        let mut normal = Vec::with_capacity(pairs.len());
        for (l, r) in &pairs {
            let pair = (normal_at(l, &left_type, fuel)?, normal_at(r, &right_type, fuel)?);
            if !normal.contains(&pair) {
                normal.push(pair);
            }
        }
        Ok(RelInstance { left_type, right_type, pairs: normal })
    }

    pub fn left_type(&self) -> &FType {
        &self.left_type
    }

    pub fn right_type(&self) -> &FType {
        &self.right_type
    }

    pub fn pairs(&self) -> &[(FTerm, FTerm)] {
        &self.pairs
    }

    pub fn contains(&self, left: &FTerm, right: &FTerm) -> bool {
        self.pairs.iter().any(|(l, r)| l == left && r == right)
    }
}

/// Candidate argument pairs for a compound domain type, which may mention
/// the type variables of the environment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidates {
    pub domain: FType,
    pub pairs: Vec<(FTerm, FTerm)>,
}

/// One relation per free type variable, outermost first, plus candidates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelEnv {
    relations: Vec<RelInstance>,
    candidates: Vec<Candidates>,
}

impl RelEnv {
    pub fn new(relations: Vec<RelInstance>) -> RelEnv {
        RelEnv { relations, candidates: Vec::new() }
    }

    pub fn relations(&self) -> &[RelInstance] {
        &self.relations
    }

    pub fn left_types(&self) -> Vec<FType> {
        self.relations.iter().map(|r| r.left_type.clone()).collect()
    }

    pub fn right_types(&self) -> Vec<FType> {
        self.relations.iter().map(|r| r.right_type.clone()).collect()
    }

    /// Add candidate pairs for `domain`, checked and normalized at its left
    /// and right instantiations.
    pub fn with_candidates(
        mut self,
        domain: FType,
        pairs: Vec<(FTerm, FTerm)>,
        fuel: Fuel,
    ) -> Result<RelEnv, RelError> {
        if domain.free_bound() > self.relations.len() {
            return Err(RelError::IllTyped(format!("{domain:?} mentions a type variable with no relation")));
        }
        let (lt, rt) = (domain.close_with(&self.left_types()), domain.close_with(&self.right_types()));
        let mut normal = Vec::with_capacity(pairs.len());
        for (l, r) in &pairs {
            normal.push((normal_at(l, &lt, fuel)?, normal_at(r, &rt, fuel)?));
        }
        match self.candidates.iter_mut().find(|c| c.domain == domain) {
            Some(existing) => existing.pairs.extend(normal),
            None => self.candidates.push(Candidates { domain, pairs: normal }),
        }
        Ok(self)
    }

    fn relation(&self, index: usize) -> Result<&RelInstance, RelError> {
        self.relations
            .len()
            .checked_sub(index + 1)
            .map(|pos| &self.relations[pos])
            .ok_or_else(|| RelError::IllTyped(format!("type variable {index} has no relation")))
    }

    fn candidates_for(&self, domain: &FType) -> &[(FTerm, FTerm)] {
        self.candidates.iter().find(|c| &c.domain == domain).map(|c| c.pairs.as_slice()).unwrap_or(&[])
    }
}

/// A related argument list under which the results fall outside the
/// relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// The related argument pairs, outermost application first.
    pub arguments: Vec<(FTerm, FTerm)>,
    /// The normal forms of the two results.
    pub results: (FTerm, FTerm),
}

fn witness(ty: &FType, env: &RelEnv, left: &FTerm, right: &FTerm, fuel: Fuel) -> Result<Option<Witness>, RelError> {
    match ty {
        FType::TVar(i) => {
            let (l, r) = (f_normalize(left, fuel)?, f_normalize(right, fuel)?);
            Ok((!env.relation(*i)?.contains(&l, &r)).then(|| Witness { arguments: Vec::new(), results: (l, r) }))
        }
        FType::Fun(dom, cod) => {
            let args: Vec<(FTerm, FTerm)> = match dom.as_ref() {
                FType::TVar(i) => env.relation(*i)?.pairs.clone(),
                other => {
                    let mut related = Vec::new();
                    for (al, ar) in env.candidates_for(other) {
                        if witness(other, env, al, ar, fuel)?.is_none() {
                            related.push((al.clone(), ar.clone()));
                        }
                    }
                    related
                }
            };
            for (al, ar) in args {
                let (l, r) = (FTerm::app(left.clone(), al.clone()), FTerm::app(right.clone(), ar.clone()));
                if let Some(mut w) = witness(cod, env, &l, &r, fuel)? {
                    w.arguments.insert(0, (al, ar));
                    return Ok(Some(w));
                }
            }
            Ok(None)
        }
        FType::Forall(_) => Err(RelError::UnsupportedQuantifier(ty.clone())),
    }
}

/// Whether `(left, right)` lies in the relation `ty` denotes under `env`.
pub fn rel_member(ty: &FType, env: &RelEnv, left: &FTerm, right: &FTerm, fuel: Fuel) -> Result<bool, RelError> {
    if let FType::Forall(_) = ty {
        return Err(RelError::UnsupportedQuantifier(ty.clone()));
    }
    if ty.free_bound() > env.relations.len() {
        return Err(RelError::IllTyped(format!("{ty:?} mentions a type variable with no relation")));
    }
    normal_at(left, &ty.close_with(&env.left_types()), fuel)?;
    normal_at(right, &ty.close_with(&env.right_types()), fuel)?;
    Ok(witness(ty, env, left, right, fuel)?.is_none())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FreeTheoremVerdict {
    Pass,
    Fail(Witness),
}

/// Check `t : ty` against its free theorem at each supplied environment.
/// Every environment supplies one relation per leading quantifier of `ty`.
pub fn free_theorem_check(
    t: &FTerm,
    ty: &FType,
    instantiations: &[RelEnv],
    fuel: Fuel,
) -> Result<FreeTheoremVerdict, RelError> {
    if !t.is_closed() {
        return Err(RelError::IllTyped(format!("{t:?} is not closed")));
    }
    let actual = f_infer(0, &[], t)?;
    if &actual != ty {
        return Err(RelError::IllTyped(format!("term has type {actual:?}, expected {ty:?}")));
    }
    let (quantifiers, body) = peel(ty);
    for env in instantiations {
        if env.relations.len() != quantifiers {
            return Err(RelError::InstantiationArity { expected: quantifiers, actual: env.relations.len() });
        }
        let mut left = t.clone();
        let mut right = t.clone();
        for rel in &env.relations {
            left = FTerm::ty_app(left, rel.left_type.clone());
            right = FTerm::ty_app(right, rel.right_type.clone());
        }
        if let Some(w) = witness(body, env, &left, &right, fuel)? {
            return Ok(FreeTheoremVerdict::Fail(w));
        }
    }
    Ok(FreeTheoremVerdict::Pass)
}

fn peel(ty: &FType) -> (usize, &FType) {
    match ty {
        FType::Forall(body) => {
            let (n, inner) = peel(body);
            (n + 1, inner)
        }
        other => (0, other),
    }
}

/// Default names for the free type variables of `ty`: `X`, `Y`, `Z`, then
/// `X1`, ..., outermost first.
pub fn default_free_names(ty: &FType) -> Vec<String> {
    (0..ty.free_bound())
        .map(|k| {
            let base = ["X", "Y", "Z"][k % 3];
            match k / 3 {
                0 => base.to_string(),
                n => format!("{base}{n}"),
            }
        })
        .collect()
}

/// The free theorem of `ty` as text, with default free-variable names.
pub fn free_theorem_print(ty: &FType) -> String {
    free_theorem_print_with(ty, &default_free_names(ty))
}

/// The free theorem of `ty`; `free_names[0]` names the outermost free
/// type variable. The subject is `t` for a closed type and `f` otherwise.
pub fn free_theorem_print_with(ty: &FType, free_names: &[String]) -> String {
    let subject = if ty.is_closed() { "t" } else { "f" };
    let mut printer = Printer {
        scope: free_names.iter().map(|n| format!("R_{n}")).collect(),
        quantifiers: 0,
        arguments: 0,
        out: String::new(),
    };
    printer.relation(ty, subject.to_string(), subject.to_string());
    printer.out
}

struct Printer {
    /// Relation names of the type variables in scope, innermost last.
    scope: Vec<String>,
    quantifiers: usize,
    arguments: usize,
    out: String,
}

const TYPE_LETTERS: &[&str] = &["A", "B", "C", "D", "E", "F", "G", "H"];
const RELATION_LETTERS: &[&str] = &["R", "S", "Q"];
const ARGUMENT_LETTERS: &str = "abcdeghijklmnopqrsuvwxyz";

impl Printer {
    fn relation_name(&self, index: usize) -> String {
        match self.scope.len().checked_sub(index + 1) {
            Some(pos) => self.scope[pos].clone(),
            None => format!("R_{index}"),
        }
    }

    fn fresh_quantifier(&mut self) -> (String, String) {
        let k = self.quantifiers;
        self.quantifiers += 1;
        let ty = match TYPE_LETTERS.get(k) {
            Some(letter) => letter.to_string(),
            None => format!("A{k}"),
        };
        let rel = match RELATION_LETTERS.get(k) {
            Some(letter) => letter.to_string(),
            None => format!("R{k}"),
        };
        (ty, rel)
    }

    fn fresh_argument(&mut self) -> String {
        let k = self.arguments;
        self.arguments += 1;
        let letters: Vec<char> = ARGUMENT_LETTERS.chars().collect();
        match k / letters.len() {
            0 => letters[k].to_string(),
            n => format!("{}{n}", letters[k % letters.len()]),
        }
    }

    fn relation(&mut self, ty: &FType, left: String, right: String) {
        match ty {
            FType::TVar(i) => {
                let name = self.relation_name(*i);
                let _ = write!(self.out, "({left}, {right}) ∈ {name}");
            }
            FType::Forall(body) => {
                let (tname, rname) = self.fresh_quantifier();
                let _ = write!(self.out, "for all {tname}_L, {tname}_R, {rname}: ");
                self.scope.push(rname);
                self.relation(body, format!("{left} {tname}_L"), format!("{right} {tname}_R"));
                self.scope.pop();
            }
            FType::Fun(dom, cod) => {
                let arg = self.fresh_argument();
                let (al, ar) = (format!("{arg}_L"), format!("{arg}_R"));
                match dom.as_ref() {
                    FType::TVar(i) => {
                        let name = self.relation_name(*i);
                        let _ = write!(self.out, "for all ({al}, {ar}) ∈ {name}: ");
                    }
                    other => {
                        let _ = write!(self.out, "for all ({al}, {ar}) such that (");
                        self.relation(other, al.clone(), ar.clone());
                        self.out.push_str("): ");
                    }
                }
                self.relation(cod, format!("{left} {al}"), format!("{right} {ar}"));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systemf::church;

    fn x() -> FType {
        FType::TVar(0)
    }

    fn xx() -> FType {
        FType::fun(x(), x())
    }

    fn fuel() -> Fuel {
        Fuel::DEFAULT
    }

    fn id_at(ty: FType) -> FTerm {
        FTerm::lam(ty, FTerm::Var(0))
    }

    fn t_relation() -> RelInstance {
        RelInstance::new(church::id_type(), church::id_type(), vec![(church::id(), church::id())], fuel()).unwrap()
    }

    fn nat_relation(pairs: Vec<(FTerm, FTerm)>) -> RelEnv {
        RelEnv::new(vec![RelInstance::new(church::nat(), church::nat(), pairs, fuel()).unwrap()])
    }

    #[test]
    fn membership_at_a_variable() {
        let env = nat_relation(vec![(church::numeral(0), church::numeral(1))]);
        assert_eq!(rel_member(&x(), &env, &church::numeral(0), &church::numeral(1), fuel()), Ok(true));
        assert_eq!(rel_member(&x(), &env, &church::numeral(0), &church::numeral(0), fuel()), Ok(false));
    }

    #[test]
    fn membership_at_a_function_type() {
        let env = RelEnv::new(vec![t_relation()]);
        let id_t = id_at(church::id_type());
        assert_eq!(rel_member(&xx(), &env, &id_t, &id_t, fuel()), Ok(true));

        let env = nat_relation(vec![(church::numeral(0), church::numeral(1))]);
        let constant = FTerm::lam(church::nat(), church::numeral(0));
        assert_eq!(rel_member(&xx(), &env, &id_at(church::nat()), &constant, fuel()), Ok(false));
    }

    #[test]
    fn membership_errors() {
        let env = RelEnv::new(vec![t_relation()]);
        let id = church::id();
        assert!(matches!(
            rel_member(&church::id_type(), &env, &id, &id, fuel()),
            Err(RelError::UnsupportedQuantifier(_))
        ));
        let poly = FType::forall(FType::TVar(1));
        assert!(matches!(rel_member(&poly, &env, &id, &id, fuel()), Err(RelError::UnsupportedQuantifier(_))));
        assert!(matches!(rel_member(&x(), &env, &id_at(church::nat()), &id, fuel()), Err(RelError::IllTyped(_))));
        assert!(matches!(rel_member(&x(), &RelEnv::default(), &id, &id, fuel()), Err(RelError::IllTyped(_))));
    }

    #[test]
    fn identity_theorem() {
        let envs = [RelEnv::new(vec![t_relation()])];
        let verdict = free_theorem_check(&church::id(), &church::id_type(), &envs, fuel());
        assert_eq!(verdict, Ok(FreeTheoremVerdict::Pass));

        let empty = RelInstance::new(church::nat(), church::id_type(), vec![], fuel()).unwrap();
        let envs = [RelEnv::new(vec![empty])];
        assert_eq!(free_theorem_check(&church::id(), &church::id_type(), &envs, fuel()), Ok(FreeTheoremVerdict::Pass));
    }

    #[test]
    fn church_two_theorem() {
        let env = RelEnv::new(vec![t_relation()])
            .with_candidates(xx(), vec![(id_at(church::id_type()), id_at(church::id_type()))], fuel())
            .unwrap();
        let verdict = free_theorem_check(&church::two(), &church::nat(), &[env], fuel());
        assert_eq!(verdict, Ok(FreeTheoremVerdict::Pass));
    }

    #[test]
    fn a_non_parametric_claim_fails() {
        // a "polymorphic" function of type Nat -> Nat is not forced to relate
        // (c0, c1) to itself; successor maps it to (c1, c2)
        let env = nat_relation(vec![(church::numeral(0), church::numeral(1))]);
        let w = witness(&xx(), &env, &church::suc(), &church::suc(), fuel()).unwrap().unwrap();
        assert_eq!(w.arguments, vec![(church::numeral(0), church::numeral(1))]);
        assert_eq!(w.results, (church::numeral(1), church::numeral(2)));
    }

    #[test]
    fn check_errors() {
        let envs = [RelEnv::default()];
        assert_eq!(
            free_theorem_check(&church::id(), &church::id_type(), &envs, fuel()),
            Err(RelError::InstantiationArity { expected: 1, actual: 0 })
        );
        assert!(matches!(free_theorem_check(&church::id(), &church::nat(), &envs, fuel()), Err(RelError::IllTyped(_))));
    }

    #[test]
    fn print_examples() {
        assert_eq!(
            free_theorem_print(&church::id_type()),
            "for all A_L, A_R, R: for all (a_L, a_R) ∈ R: (t A_L a_L, t A_R a_R) ∈ R"
        );
        assert_eq!(free_theorem_print(&xx()), "for all (a_L, a_R) ∈ R_X: (f a_L, f a_R) ∈ R_X");
        assert_eq!(
            free_theorem_print(&church::nat()),
            "for all A_L, A_R, R: for all (a_L, a_R) such that (for all (b_L, b_R) ∈ R: (a_L b_L, a_R b_R) ∈ R): \
             for all (c_L, c_R) ∈ R: (t A_L a_L c_L, t A_R a_R c_R) ∈ R"
        );
    }
}
