//! Syntax of the dependent fragment: `Ans`, Π, Σ and a Tarski universe `U`
//! whose codes `ans`, `pi`, `sigma` decode through `El`.
//!
//! Types and terms share one AST. `Pi(A, B)` and `Sigma(A, B)` bind one
//! variable in `B`; `Lam(b)` binds one variable in `b`. The second argument
//! of the codes `pi`/`sigma` is an ordinary function term.

use std::fmt;
use std::rc::Rc;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DTerm {
    Var(usize),
    Yes,
    No,
    Ans,
    U,
    El(Rc<DTerm>),
    Pi(Rc<DTerm>, Rc<DTerm>),
    Sigma(Rc<DTerm>, Rc<DTerm>),
    Lam(Rc<DTerm>),
    App(Rc<DTerm>, Rc<DTerm>),
    Pair(Rc<DTerm>, Rc<DTerm>),
    Fst(Rc<DTerm>),
    Snd(Rc<DTerm>),
    CodeAns,
    CodePi(Rc<DTerm>, Rc<DTerm>),
    CodeSigma(Rc<DTerm>, Rc<DTerm>),
    /// Type ascription `(t : A)`, the only way to make an introduction
    /// form inferable.
    Ann(Rc<DTerm>, Rc<DTerm>),
}

impl DTerm {
    pub fn el(code: DTerm) -> DTerm {
        DTerm::El(Rc::new(code))
    }

    pub fn pi(dom: DTerm, cod: DTerm) -> DTerm {
        DTerm::Pi(Rc::new(dom), Rc::new(cod))
    }

    pub fn sigma(first: DTerm, second: DTerm) -> DTerm {
        DTerm::Sigma(Rc::new(first), Rc::new(second))
    }

    /// A non-dependent function type; `cod` is weakened past the binder.
    pub fn arrow(dom: DTerm, cod: DTerm) -> DTerm {
        DTerm::pi(dom, cod.shift(1, 0))
    }

    pub fn lam(body: DTerm) -> DTerm {
        DTerm::Lam(Rc::new(body))
    }

    pub fn app(f: DTerm, a: DTerm) -> DTerm {
        DTerm::App(Rc::new(f), Rc::new(a))
    }

    pub fn pair(a: DTerm, b: DTerm) -> DTerm {
        DTerm::Pair(Rc::new(a), Rc::new(b))
    }

    pub fn fst(p: DTerm) -> DTerm {
        DTerm::Fst(Rc::new(p))
    }

    pub fn snd(p: DTerm) -> DTerm {
        DTerm::Snd(Rc::new(p))
    }

    pub fn code_pi(dom: DTerm, cod: DTerm) -> DTerm {
        DTerm::CodePi(Rc::new(dom), Rc::new(cod))
    }

    pub fn code_sigma(first: DTerm, second: DTerm) -> DTerm {
        DTerm::CodeSigma(Rc::new(first), Rc::new(second))
    }

    pub fn ann(term: DTerm, ty: DTerm) -> DTerm {
        DTerm::Ann(Rc::new(term), Rc::new(ty))
    }

    /// Number of AST nodes; the type of an ascription is not counted.
    pub fn size(&self) -> usize {
        use DTerm::*;
        match self {
            Var(_) | Yes | No | Ans | U | CodeAns => 1,
            El(a) | Lam(a) | Fst(a) | Snd(a) | Ann(a, _) => 1 + a.size(),
            Pi(a, b) | Sigma(a, b) | App(a, b) | Pair(a, b) | CodePi(a, b) | CodeSigma(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn free_bound(&self) -> usize {
        use DTerm::*;
        match self {
            Var(i) => i + 1,
            Yes | No | Ans | U | CodeAns => 0,
            El(a) | Fst(a) | Snd(a) => a.free_bound(),
            Lam(b) => b.free_bound().saturating_sub(1),
            Pi(a, b) | Sigma(a, b) => a.free_bound().max(b.free_bound().saturating_sub(1)),
            App(a, b) | Pair(a, b) | CodePi(a, b) | CodeSigma(a, b) | Ann(a, b) => a.free_bound().max(b.free_bound()),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_bound() == 0
    }

    /// Add `by` to every variable at or above `cutoff`.
    pub fn shift(&self, by: usize, cutoff: usize) -> DTerm {
        use DTerm::*;
        let go = |t: &Rc<DTerm>, c: usize| Rc::new(t.shift(by, c));
        match self {
            Var(i) if *i >= cutoff => Var(i + by),
            Var(_) | Yes | No | Ans | U | CodeAns => self.clone(),
            El(a) => El(go(a, cutoff)),
            Fst(a) => Fst(go(a, cutoff)),
            Snd(a) => Snd(go(a, cutoff)),
            Lam(b) => Lam(go(b, cutoff + 1)),
            Pi(a, b) => Pi(go(a, cutoff), go(b, cutoff + 1)),
            Sigma(a, b) => Sigma(go(a, cutoff), go(b, cutoff + 1)),
            App(a, b) => App(go(a, cutoff), go(b, cutoff)),
            Pair(a, b) => Pair(go(a, cutoff), go(b, cutoff)),
            CodePi(a, b) => CodePi(go(a, cutoff), go(b, cutoff)),
            CodeSigma(a, b) => CodeSigma(go(a, cutoff), go(b, cutoff)),
            Ann(a, b) => Ann(go(a, cutoff), go(b, cutoff)),
        }
    }

    /// Whether `Var(index)` occurs free.
    pub fn mentions(&self, index: usize) -> bool {
        use DTerm::*;
        match self {
            Var(i) => *i == index,
            Yes | No | Ans | U | CodeAns => false,
            El(a) | Fst(a) | Snd(a) => a.mentions(index),
            Lam(b) => b.mentions(index + 1),
            Pi(a, b) | Sigma(a, b) => a.mentions(index) || b.mentions(index + 1),
            App(a, b) | Pair(a, b) | CodePi(a, b) | CodeSigma(a, b) | Ann(a, b) => {
                a.mentions(index) || b.mentions(index)
            }
        }
    }
}

/// Normal forms and normal types.
///
/// `Neutral` is the coercion of a neutral into a normal form; it is only
/// produced at `Ans`, at `U`, and at a neutral type `El(u)`. `El` is the
/// neutral type `El(u)` seen as a normal type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DNf {
    Yes,
    No,
    Ans,
    U,
    Pi(Rc<DNf>, Rc<DNf>),
    Sigma(Rc<DNf>, Rc<DNf>),
    Lam(Rc<DNf>),
    Pair(Rc<DNf>, Rc<DNf>),
    CodeAns,
    CodePi(Rc<DNf>, Rc<DNf>),
    CodeSigma(Rc<DNf>, Rc<DNf>),
    Neutral(DNe),
    El(DNe),
}

/// Neutral forms; variables are de Bruijn levels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DNe {
    Var(usize),
    App(Rc<DNe>, Rc<DNf>),
    Fst(Rc<DNe>),
    Snd(Rc<DNe>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("level {level} out of range at depth {depth}")]
pub struct LevelOutOfRange {
    pub level: usize,
    pub depth: usize,
}

impl DNf {
    /// Embed into terms, for a normal form living under `depth` bindings.
    pub fn embed(&self, depth: usize) -> Result<DTerm, LevelOutOfRange> {
        let go = |n: &Rc<DNf>, d: usize| n.embed(d).map(Rc::new);
        Ok(match self {
            DNf::Yes => DTerm::Yes,
            DNf::No => DTerm::No,
            DNf::Ans => DTerm::Ans,
            DNf::U => DTerm::U,
            DNf::CodeAns => DTerm::CodeAns,
            DNf::Pi(a, b) => DTerm::Pi(go(a, depth)?, go(b, depth + 1)?),
            DNf::Sigma(a, b) => DTerm::Sigma(go(a, depth)?, go(b, depth + 1)?),
            DNf::Lam(b) => DTerm::Lam(go(b, depth + 1)?),
            DNf::Pair(a, b) => DTerm::Pair(go(a, depth)?, go(b, depth)?),
            DNf::CodePi(a, b) => DTerm::CodePi(go(a, depth)?, go(b, depth)?),
            DNf::CodeSigma(a, b) => DTerm::CodeSigma(go(a, depth)?, go(b, depth)?),
            DNf::Neutral(n) => n.embed(depth)?,
            DNf::El(n) => DTerm::el(n.embed(depth)?),
        })
    }
}

impl DNe {
    pub fn embed(&self, depth: usize) -> Result<DTerm, LevelOutOfRange> {
        Ok(match self {
            DNe::Var(level) if *level < depth => DTerm::Var(depth - 1 - level),
            DNe::Var(level) => return Err(LevelOutOfRange { level: *level, depth }),
            DNe::App(n, a) => DTerm::app(n.embed(depth)?, a.embed(depth)?),
            DNe::Fst(n) => DTerm::fst(n.embed(depth)?),
            DNe::Snd(n) => DTerm::snd(n.embed(depth)?),
        })
    }
}

impl fmt::Display for DTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::surface::pretty::mltt_term(self, &[]))
    }
}
