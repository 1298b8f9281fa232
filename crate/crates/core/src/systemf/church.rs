//! Church encodings used as test fixtures.

use super::syntax::{FTerm, FType};

/// `forall Y. Y -> Y`
pub fn id_type() -> FType {
    FType::forall(FType::fun(FType::TVar(0), FType::TVar(0)))
}

/// `/\Y. \y:Y. y`
pub fn id() -> FTerm {
    FTerm::ty_lam(FTerm::lam(FType::TVar(0), FTerm::Var(0)))
}

/// `forall X. (X -> X) -> X -> X`
pub fn nat() -> FType {
    let x = FType::TVar(0);
    FType::forall(FType::fun(FType::fun(x.clone(), x.clone()), FType::fun(x.clone(), x)))
}

/// `/\X. \f:X->X. \x:X. f (f ... x)` with `n` applications.
pub fn numeral(n: usize) -> FTerm {
    let x = FType::TVar(0);
    let mut body = FTerm::Var(0);
    for _ in 0..n {
        body = FTerm::app(FTerm::Var(1), body);
    }
    FTerm::ty_lam(FTerm::lam(FType::fun(x.clone(), x.clone()), FTerm::lam(x, body)))
}

pub fn two() -> FTerm {
    numeral(2)
}

/// `\n:Nat. /\X. \f:X->X. \x:X. f (n [X] f x)`
pub fn suc() -> FTerm {
    let x = FType::TVar(0);
    let applied = FTerm::app(FTerm::app(FTerm::ty_app(FTerm::Var(2), x.clone()), FTerm::Var(1)), FTerm::Var(0));
    FTerm::lam(
        nat(),
        FTerm::ty_lam(FTerm::lam(FType::fun(x.clone(), x.clone()), FTerm::lam(x, FTerm::app(FTerm::Var(1), applied)))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuel::Fuel;
    use crate::systemf::syntax::{f_infer, f_normalize};

    #[test]
    fn fixtures_are_well_typed() {
        assert_eq!(f_infer(0, &[], &id()), Ok(id_type()));
        for n in 0..4 {
            assert_eq!(f_infer(0, &[], &numeral(n)), Ok(nat()));
        }
        assert_eq!(f_infer(0, &[], &suc()), Ok(FType::fun(nat(), nat())));
    }

    #[test]
    fn successor_counts() {
        for n in 0..4 {
            let t = FTerm::app(suc(), numeral(n));
            assert_eq!(f_normalize(&t, Fuel::DEFAULT), Ok(numeral(n + 1)));
        }
    }
}
