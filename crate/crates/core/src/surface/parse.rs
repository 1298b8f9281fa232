//! One parser for the three surface grammars, switched by calculus, and
//! per-calculus resolution of names to de Bruijn indices.
//!
//! Parsing produces a named tree with a span on every node; resolution
//! turns it into a kernel term and reports unbound names and constructs
//! that do not belong where they occur.

use thiserror::Error;

use super::lexer::{lex, SourceSpan, Tok, Token};
use crate::mltt::DTerm;
use crate::stlc::{Context, Term, Type};
use crate::systemf::{FTerm, FType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Calculus {
    Stlc,
    Mltt,
    Sysf,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{span}: expected {}, found {found}", expected.join(" or "))]
    Syntax { span: SourceSpan, expected: Vec<String>, found: String },
    #[error("{span}: unbound name `{name}`")]
    UnboundName { span: SourceSpan, name: String },
}

impl ParseError {
    pub fn span(&self) -> SourceSpan {
        match self {
            ParseError::Syntax { span, .. } | ParseError::UnboundName { span, .. } => *span,
        }
    }

    /// The error without its location.
    pub fn message(&self) -> String {
        match self {
            ParseError::Syntax { expected, found, .. } => format!("expected {}, found {found}", expected.join(" or ")),
            ParseError::UnboundName { name, .. } => format!("unbound name `{name}`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binder {
    pub name: String,
    pub annotation: Option<Box<Expr>>,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Name(String),
    Yes,
    No,
    /// `()`
    Star,
    Ans,
    UnitTy,
    U,
    CodeAns,
    Pair(Box<Expr>, Box<Expr>),
    Fst(Box<Expr>),
    Snd(Box<Expr>),
    El(Box<Expr>),
    CodePi(Box<Expr>, Box<Expr>),
    CodeSigma(Box<Expr>, Box<Expr>),
    Lam(Binder, Box<Expr>),
    TyLam(Binder, Box<Expr>),
    App(Box<Expr>, Box<Expr>),
    TyApp(Box<Expr>, Box<Expr>),
    Ann(Box<Expr>, Box<Expr>),
    /// `A -> B`, or `(x : A) -> B` when named.
    Arrow(Option<String>, Box<Expr>, Box<Expr>),
    /// `A * B`, or `(x : A) * B` when named.
    Times(Option<String>, Box<Expr>, Box<Expr>),
    Forall(Binder, Box<Expr>),
}

impl ExprKind {
    fn describe(&self) -> String {
        match self {
            ExprKind::Name(n) => format!("`{n}`"),
            ExprKind::Yes => "`yes`".into(),
            ExprKind::No => "`no`".into(),
            ExprKind::Star => "`()`".into(),
            ExprKind::Ans => "`Ans`".into(),
            ExprKind::UnitTy => "`Unit`".into(),
            ExprKind::U => "`U`".into(),
            ExprKind::CodeAns => "`ans`".into(),
            ExprKind::Pair(..) => "a pair".into(),
            ExprKind::Fst(_) | ExprKind::Snd(_) => "a projection".into(),
            ExprKind::El(_) => "`El`".into(),
            ExprKind::CodePi(..) | ExprKind::CodeSigma(..) => "a code".into(),
            ExprKind::Lam(..) => "a lambda".into(),
            ExprKind::TyLam(..) => "a type abstraction".into(),
            ExprKind::App(..) => "an application".into(),
            ExprKind::TyApp(..) => "a type application".into(),
            ExprKind::Ann(..) => "an ascription".into(),
            ExprKind::Arrow(..) => "a function type".into(),
            ExprKind::Times(..) => "a product type".into(),
            ExprKind::Forall(..) => "a polymorphic type".into(),
        }
    }
}

fn keywords(calculus: Calculus) -> &'static [&'static str] {
    match calculus {
        Calculus::Stlc => &["yes", "no", "fst", "snd", "Ans", "Unit"],
        Calculus::Mltt => &["yes", "no", "fst", "snd", "Ans", "U", "El", "ans", "pi", "sigma"],
        Calculus::Sysf => &["forall"],
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    calculus: Calculus,
}

type PResult<T> = Result<T, ParseError>;

fn boxed(e: Expr) -> Box<Expr> {
    Box::new(e)
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.tokens[(self.pos + k).min(self.tokens.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.peek().clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> PResult<T> {
        let t = self.peek();
        Err(ParseError::Syntax {
            span: t.span,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.to_string(),
        })
    }

    fn expect(&mut self, tok: Tok) -> PResult<Token> {
        if self.peek().tok == tok {
            Ok(self.bump())
        } else {
            self.fail(&[&tok.to_string()])
        }
    }

    fn is_keyword(&self, name: &str) -> bool {
        keywords(self.calculus).contains(&name)
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(n) if n == kw && self.is_keyword(kw))
    }

    fn binder_name(&mut self) -> PResult<(String, SourceSpan)> {
        match self.peek().tok.clone() {
            Tok::Ident(name) if !self.is_keyword(&name) => Ok((name, self.bump().span)),
            _ => self.fail(&["an identifier"]),
        }
    }

    /// expr := binder-expr [`:` expr]   (ascription only in the dependent grammar)
    fn expr(&mut self) -> PResult<Expr> {
        let e = self.binder_expr()?;
        if self.calculus == Calculus::Mltt && self.peek().tok == Tok::Colon {
            self.bump();
            let ty = self.expr()?;
            let span = e.span.to(ty.span);
            return Ok(Expr { kind: ExprKind::Ann(boxed(e), boxed(ty)), span });
        }
        Ok(e)
    }

    fn binder_expr(&mut self) -> PResult<Expr> {
        match &self.peek().tok {
            Tok::Backslash => self.lambda(),
            Tok::BigLambda if self.calculus == Calculus::Sysf => {
                let start = self.bump().span;
                let (name, span) = self.binder_name()?;
                self.expect(Tok::Dot)?;
                let body = self.binder_expr()?;
                let span_all = start.to(body.span);
                Ok(Expr { kind: ExprKind::TyLam(Binder { name, annotation: None, span }, boxed(body)), span: span_all })
            }
            _ if self.at_keyword("forall") => {
                let start = self.bump().span;
                let (name, span) = self.binder_name()?;
                self.expect(Tok::Dot)?;
                let body = self.binder_expr()?;
                let span_all = start.to(body.span);
                Ok(Expr {
                    kind: ExprKind::Forall(Binder { name, annotation: None, span }, boxed(body)),
                    span: span_all,
                })
            }
            _ => self.arrow(),
        }
    }

    fn lambda(&mut self) -> PResult<Expr> {
        let start = self.expect(Tok::Backslash)?.span;
        let mut binders = Vec::new();
        if self.calculus == Calculus::Mltt {
            loop {
                match self.peek().tok.clone() {
                    Tok::Ident(_) => {
                        let (name, span) = self.binder_name()?;
                        binders.push(Binder { name, annotation: None, span });
                    }
                    Tok::LParen => {
                        let open = self.bump().span;
                        let (name, _) = self.binder_name()?;
                        let annotation = if self.peek().tok == Tok::Colon {
                            self.bump();
                            Some(boxed(self.expr()?))
                        } else {
                            None
                        };
                        let close = self.expect(Tok::RParen)?.span;
                        binders.push(Binder { name, annotation, span: open.to(close) });
                    }
                    _ if binders.is_empty() => return self.fail(&["an identifier", "`(`"]),
                    _ => break,
                }
            }
            if binders.len() == 1 && binders[0].annotation.is_none() && self.peek().tok == Tok::Colon {
                self.bump();
                binders[0].annotation = Some(boxed(self.binder_expr()?));
            }
        } else {
            let (name, span) = self.binder_name()?;
            self.expect(Tok::Colon)?;
            let ty = self.binder_expr()?;
            binders.push(Binder { name, annotation: Some(boxed(ty)), span });
        }
        self.expect(Tok::Dot)?;
        let mut body = self.binder_expr()?;
        let end = body.span;
        for binder in binders.into_iter().rev() {
            body = Expr { kind: ExprKind::Lam(binder, boxed(body)), span: start.to(end) };
        }
        Ok(body)
    }

    /// Try `(x : A)` followed by `->` or `*`; on failure nothing is consumed.
    fn dependent_binder(&mut self) -> Option<(String, Expr, SourceSpan)> {
        if self.calculus != Calculus::Mltt
            || self.peek().tok != Tok::LParen
            || !matches!(self.peek_at(1), Tok::Ident(n) if !self.is_keyword(n))
            || *self.peek_at(2) != Tok::Colon
        {
            return None;
        }
        let saved = self.pos;
        let attempt = (|| {
            let open = self.bump().span;
            let (name, _) = self.binder_name()?;
            self.bump();
            let dom = self.expr()?;
            let close = self.expect(Tok::RParen)?.span;
            Ok::<_, ParseError>((name, dom, open.to(close)))
        })();
        match attempt {
            Ok(found) if matches!(self.peek().tok, Tok::Arrow | Tok::Star) => Some(found),
            _ => {
                self.pos = saved;
                None
            }
        }
    }

    fn arrow(&mut self) -> PResult<Expr> {
        if let Some((name, dom, span)) = self.dependent_binder() {
            let arrow = self.bump().tok == Tok::Arrow;
            let cod = if arrow { self.binder_expr()? } else { self.times()? };
            let span = span.to(cod.span);
            let kind = if arrow {
                ExprKind::Arrow(Some(name), boxed(dom), boxed(cod))
            } else {
                ExprKind::Times(Some(name), boxed(dom), boxed(cod))
            };
            return Ok(Expr { kind, span });
        }
        let lhs = self.times()?;
        if self.peek().tok == Tok::Arrow {
            self.bump();
            let rhs = self.binder_expr()?;
            let span = lhs.span.to(rhs.span);
            return Ok(Expr { kind: ExprKind::Arrow(None, boxed(lhs), boxed(rhs)), span });
        }
        Ok(lhs)
    }

    fn times(&mut self) -> PResult<Expr> {
        if self.calculus == Calculus::Mltt {
            let saved = self.pos;
            if let Some((name, dom, span)) = self.dependent_binder() {
                if self.peek().tok == Tok::Star {
                    self.bump();
                    let cod = self.times()?;
                    let span = span.to(cod.span);
                    return Ok(Expr { kind: ExprKind::Times(Some(name), boxed(dom), boxed(cod)), span });
                }
                self.pos = saved;
            }
        }
        let lhs = self.app()?;
        if self.calculus != Calculus::Sysf && self.peek().tok == Tok::Star {
            self.bump();
            let rhs = self.times()?;
            let span = lhs.span.to(rhs.span);
            return Ok(Expr { kind: ExprKind::Times(None, boxed(lhs), boxed(rhs)), span });
        }
        Ok(lhs)
    }

    fn starts_atom(&self) -> bool {
        match &self.peek().tok {
            Tok::Ident(n) => !self.is_keyword(n) || matches!(n.as_str(), "yes" | "no" | "Ans" | "Unit" | "U" | "ans"),
            Tok::LParen | Tok::Backslash => true,
            Tok::BigLambda => self.calculus == Calculus::Sysf,
            _ => false,
        }
    }

    fn app(&mut self) -> PResult<Expr> {
        let mut head = self.app_head()?;
        loop {
            if self.starts_atom() {
                let trailing = matches!(self.peek().tok, Tok::Backslash | Tok::BigLambda);
                let arg = self.atom()?;
                let span = head.span.to(arg.span);
                head = Expr { kind: ExprKind::App(boxed(head), boxed(arg)), span };
                if trailing {
                    break;
                }
            } else if self.calculus == Calculus::Sysf && self.peek().tok == Tok::LBracket {
                self.bump();
                let ty = self.binder_expr()?;
                let close = self.expect(Tok::RBracket)?.span;
                let span = head.span.to(close);
                head = Expr { kind: ExprKind::TyApp(boxed(head), boxed(ty)), span };
            } else {
                break;
            }
        }
        Ok(head)
    }

    fn app_head(&mut self) -> PResult<Expr> {
        for (kw, unary) in [("fst", true), ("snd", true), ("El", true), ("pi", false), ("sigma", false)] {
            if !self.at_keyword(kw) {
                continue;
            }
            let start = self.bump().span;
            let a = self.atom()?;
            if unary {
                let span = start.to(a.span);
                let kind = match kw {
                    "fst" => ExprKind::Fst(boxed(a)),
                    "snd" => ExprKind::Snd(boxed(a)),
                    _ => ExprKind::El(boxed(a)),
                };
                return Ok(Expr { kind, span });
            }
            let b = self.atom()?;
            let span = start.to(b.span);
            let kind =
                if kw == "pi" { ExprKind::CodePi(boxed(a), boxed(b)) } else { ExprKind::CodeSigma(boxed(a), boxed(b)) };
            return Ok(Expr { kind, span });
        }
        self.atom()
    }

    fn atom(&mut self) -> PResult<Expr> {
        let token = self.peek().clone();
        match &token.tok {
            Tok::Ident(name) => {
                let kind = match name.as_str() {
                    n if !self.is_keyword(n) => ExprKind::Name(n.to_string()),
                    "yes" => ExprKind::Yes,
                    "no" => ExprKind::No,
                    "Ans" => ExprKind::Ans,
                    "Unit" => ExprKind::UnitTy,
                    "U" => ExprKind::U,
                    "ans" => ExprKind::CodeAns,
                    _ => return self.fail(&["a term"]),
                };
                self.bump();
                Ok(Expr { kind, span: token.span })
            }
            Tok::LParen => {
                let open = self.bump().span;
                if self.calculus == Calculus::Stlc && self.peek().tok == Tok::RParen {
                    let close = self.bump().span;
                    return Ok(Expr { kind: ExprKind::Star, span: open.to(close) });
                }
                let first = self.expr()?;
                if self.calculus != Calculus::Sysf && self.peek().tok == Tok::Comma {
                    self.bump();
                    let second = self.expr()?;
                    let close = self.expect(Tok::RParen)?.span;
                    return Ok(Expr { kind: ExprKind::Pair(boxed(first), boxed(second)), span: open.to(close) });
                }
                if self.peek().tok != Tok::RParen {
                    let expected: &[&str] = if self.calculus == Calculus::Sysf { &["`)`"] } else { &["`)`", "`,`"] };
                    return self.fail(expected);
                }
                let close = self.bump().span;
                Ok(Expr { kind: first.kind, span: open.to(close) })
            }
            Tok::Backslash | Tok::BigLambda => self.binder_expr(),
            _ => self.fail(&["a term"]),
        }
    }
}

/// Parse `src` into a named tree in the grammar of `calculus`.
pub fn parse_expr(src: &str, calculus: Calculus) -> Result<Expr, ParseError> {
    let tokens = lex(src).map_err(|e| ParseError::Syntax {
        span: e.span,
        expected: vec!["a token".to_string()],
        found: format!("`{}`", e.found),
    })?;
    let mut parser = Parser { tokens, pos: 0, calculus };
    let e = parser.expr()?;
    if parser.peek().tok != Tok::Eof {
        return parser.fail(&["end of input"]);
    }
    Ok(e)
}

fn misplaced<T>(e: &Expr, expected: &str) -> Result<T, ParseError> {
    Err(ParseError::Syntax { span: e.span, expected: vec![expected.to_string()], found: e.kind.describe() })
}

fn lookup(scope: &[String], name: &str, span: SourceSpan) -> Result<usize, ParseError> {
    scope.iter().rev().position(|n| n == name).ok_or_else(|| ParseError::UnboundName { span, name: name.to_string() })
}

/// A term in any of the three calculi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ast {
    Stlc(Term),
    Mltt(DTerm),
    Sysf(FTerm),
}

/// Parse a closed term of `calculus`.
pub fn parse_term(src: &str, calculus: Calculus) -> Result<Ast, ParseError> {
    Ok(match calculus {
        Calculus::Stlc => Ast::Stlc(parse_stlc_term(src, &[])?),
        Calculus::Mltt => Ast::Mltt(parse_mltt(src, &[])?),
        Calculus::Sysf => Ast::Sysf(parse_sysf_term(src)?),
    })
}

// Simply typed.

fn stlc_type(e: &Expr) -> Result<Type, ParseError> {
    match &e.kind {
        ExprKind::Ans => Ok(Type::Ans),
        ExprKind::UnitTy => Ok(Type::Unit),
        ExprKind::Arrow(None, a, b) => Ok(Type::fun(stlc_type(a)?, stlc_type(b)?)),
        ExprKind::Times(None, a, b) => Ok(Type::prod(stlc_type(a)?, stlc_type(b)?)),
        _ => misplaced(e, "a type"),
    }
}

fn stlc_term(e: &Expr, scope: &mut Vec<String>) -> Result<Term, ParseError> {
    match &e.kind {
        ExprKind::Name(n) => Ok(Term::Var(lookup(scope, n, e.span)?)),
        ExprKind::Yes => Ok(Term::Yes),
        ExprKind::No => Ok(Term::No),
        ExprKind::Star => Ok(Term::Star),
        ExprKind::Pair(a, b) => Ok(Term::pair(stlc_term(a, scope)?, stlc_term(b, scope)?)),
        ExprKind::Fst(p) => Ok(Term::fst(stlc_term(p, scope)?)),
        ExprKind::Snd(p) => Ok(Term::snd(stlc_term(p, scope)?)),
        ExprKind::App(f, a) => Ok(Term::app(stlc_term(f, scope)?, stlc_term(a, scope)?)),
        ExprKind::Lam(binder, body) => {
            let ty = match &binder.annotation {
                Some(ty) => stlc_type(ty)?,
                None => return misplaced(e, "an annotated lambda"),
            };
            scope.push(binder.name.clone());
            let body = stlc_term(body, scope);
            scope.pop();
            Ok(Term::lam(ty, body?))
        }
        _ => misplaced(e, "a term"),
    }
}

/// Parse a simply typed term whose free names are `names` (innermost last).
pub fn parse_stlc_term(src: &str, names: &[String]) -> Result<Term, ParseError> {
    stlc_term(&parse_expr(src, Calculus::Stlc)?, &mut names.to_vec())
}

pub fn parse_stlc_type(src: &str) -> Result<Type, ParseError> {
    stlc_type(&parse_expr(src, Calculus::Stlc)?)
}

/// Split `src` at commas outside parentheses and brackets, keeping the byte
/// offset of each piece.
fn split_top_level(src: &str) -> Vec<(usize, &str)> {
    let (mut depth, mut start, mut out) = (0i32, 0, Vec::new());
    for (i, c) in src.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &src[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &src[start..]));
    out.into_iter().filter(|(_, s)| !s.trim().is_empty()).collect()
}

/// Move a span reported inside `src[offset..]` back into `src`.
pub(crate) fn relocate(err: ParseError, src: &str, offset: usize) -> ParseError {
    let fix = |span: SourceSpan| {
        let start = span.start + offset;
        let before = &src[..start];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        SourceSpan { start, end: span.end + offset, line, col }
    };
    match err {
        ParseError::Syntax { span, expected, found } => ParseError::Syntax { span: fix(span), expected, found },
        ParseError::UnboundName { span, name } => ParseError::UnboundName { span: fix(span), name },
    }
}

/// Split one `name : type` entry of a context.
fn context_entry(src: &str, offset: usize, piece: &str) -> Result<(String, usize, String), ParseError> {
    let Some(colon) = piece.find(':') else {
        let span = SourceSpan::whole(piece);
        return Err(relocate(
            ParseError::Syntax { span, expected: vec!["`name : type`".into()], found: format!("`{}`", piece.trim()) },
            src,
            offset,
        ));
    };
    let name = piece[..colon].trim().to_string();
    Ok((name, offset + colon + 1, piece[colon + 1..].to_string()))
}

/// Parse a context `x : A, y : B, ...` (outermost first).
pub fn parse_stlc_context(src: &str) -> Result<(Vec<String>, Context), ParseError> {
    let (mut names, mut types) = (Vec::new(), Vec::new());
    for (offset, piece) in split_top_level(src) {
        let (name, ty_offset, ty_src) = context_entry(src, offset, piece)?;
        types.push(parse_stlc_type(&ty_src).map_err(|e| relocate(e, src, ty_offset))?);
        names.push(name);
    }
    Ok((names, Context::from(types)))
}

// Dependent.

fn mltt_term(e: &Expr, scope: &mut Vec<String>) -> Result<DTerm, ParseError> {
    let under = |name: &str, body: &Expr, scope: &mut Vec<String>| {
        scope.push(name.to_string());
        let r = mltt_term(body, scope);
        scope.pop();
        r
    };
    match &e.kind {
        ExprKind::Name(n) => Ok(DTerm::Var(lookup(scope, n, e.span)?)),
        ExprKind::Yes => Ok(DTerm::Yes),
        ExprKind::No => Ok(DTerm::No),
        ExprKind::Ans => Ok(DTerm::Ans),
        ExprKind::U => Ok(DTerm::U),
        ExprKind::CodeAns => Ok(DTerm::CodeAns),
        ExprKind::El(a) => Ok(DTerm::el(mltt_term(a, scope)?)),
        ExprKind::CodePi(a, b) => Ok(DTerm::code_pi(mltt_term(a, scope)?, mltt_term(b, scope)?)),
        ExprKind::CodeSigma(a, b) => Ok(DTerm::code_sigma(mltt_term(a, scope)?, mltt_term(b, scope)?)),
        ExprKind::Pair(a, b) => Ok(DTerm::pair(mltt_term(a, scope)?, mltt_term(b, scope)?)),
        ExprKind::Fst(p) => Ok(DTerm::fst(mltt_term(p, scope)?)),
        ExprKind::Snd(p) => Ok(DTerm::snd(mltt_term(p, scope)?)),
        ExprKind::App(f, a) => Ok(DTerm::app(mltt_term(f, scope)?, mltt_term(a, scope)?)),
        ExprKind::Ann(t, ty) => Ok(DTerm::ann(mltt_term(t, scope)?, mltt_term(ty, scope)?)),
        ExprKind::Lam(binder, body) => {
            // the annotation only has to make sense; checking ignores it
            if let Some(ty) = &binder.annotation {
                mltt_term(ty, scope)?;
            }
            Ok(DTerm::lam(under(&binder.name, body, scope)?))
        }
        ExprKind::Arrow(name, a, b) | ExprKind::Times(name, a, b) => {
            let dom = mltt_term(a, scope)?;
            // an anonymous binder cannot be referred to
            let cod = under(name.as_deref().unwrap_or(""), b, scope)?;
            Ok(if matches!(e.kind, ExprKind::Arrow(..)) { DTerm::pi(dom, cod) } else { DTerm::sigma(dom, cod) })
        }
        _ => misplaced(e, "a term or type"),
    }
}

/// Parse a dependent term or type whose free names are `names`.
pub fn parse_mltt(src: &str, names: &[String]) -> Result<DTerm, ParseError> {
    mltt_term(&parse_expr(src, Calculus::Mltt)?, &mut names.to_vec())
}

/// Parse a telescope `x : A, y : B, ...`; each type may mention earlier names.
pub fn parse_mltt_context(src: &str) -> Result<(Vec<String>, Vec<DTerm>), ParseError> {
    let (mut names, mut types) = (Vec::new(), Vec::new());
    for (offset, piece) in split_top_level(src) {
        let (name, ty_offset, ty_src) = context_entry(src, offset, piece)?;
        types.push(parse_mltt(&ty_src, &names).map_err(|e| relocate(e, src, ty_offset))?);
        names.push(name);
    }
    Ok((names, types))
}

// System F.

fn sysf_type(e: &Expr, tscope: &mut Vec<String>) -> Result<FType, ParseError> {
    match &e.kind {
        ExprKind::Name(n) => Ok(FType::TVar(lookup(tscope, n, e.span)?)),
        ExprKind::Arrow(None, a, b) => Ok(FType::fun(sysf_type(a, tscope)?, sysf_type(b, tscope)?)),
        ExprKind::Forall(binder, body) => {
            tscope.push(binder.name.clone());
            let body = sysf_type(body, tscope);
            tscope.pop();
            Ok(FType::forall(body?))
        }
        _ => misplaced(e, "a type"),
    }
}

fn sysf_term(e: &Expr, tscope: &mut Vec<String>, scope: &mut Vec<String>) -> Result<FTerm, ParseError> {
    match &e.kind {
        ExprKind::Name(n) => Ok(FTerm::Var(lookup(scope, n, e.span)?)),
        ExprKind::App(f, a) => Ok(FTerm::app(sysf_term(f, tscope, scope)?, sysf_term(a, tscope, scope)?)),
        ExprKind::TyApp(f, ty) => Ok(FTerm::ty_app(sysf_term(f, tscope, scope)?, sysf_type(ty, tscope)?)),
        ExprKind::Lam(binder, body) => {
            let ty = match &binder.annotation {
                Some(ty) => sysf_type(ty, tscope)?,
                None => return misplaced(e, "an annotated lambda"),
            };
            scope.push(binder.name.clone());
            let body = sysf_term(body, tscope, scope);
            scope.pop();
            Ok(FTerm::lam(ty, body?))
        }
        ExprKind::TyLam(binder, body) => {
            tscope.push(binder.name.clone());
            let body = sysf_term(body, tscope, scope);
            tscope.pop();
            Ok(FTerm::ty_lam(body?))
        }
        _ => misplaced(e, "a term"),
    }
}

/// Resolve a type whose free type variables are `scope` (outermost first).
pub fn resolve_sysf_type(e: &Expr, scope: &[String]) -> Result<FType, ParseError> {
    sysf_type(e, &mut scope.to_vec())
}

pub fn parse_sysf_term(src: &str) -> Result<FTerm, ParseError> {
    sysf_term(&parse_expr(src, Calculus::Sysf)?, &mut Vec::new(), &mut Vec::new())
}

pub fn parse_sysf_type(src: &str) -> Result<FType, ParseError> {
    sysf_type(&parse_expr(src, Calculus::Sysf)?, &mut Vec::new())
}

fn free_type_names(e: &Expr, bound: &mut Vec<String>, out: &mut Vec<String>) {
    match &e.kind {
        ExprKind::Name(n) if !bound.contains(n) && !out.contains(n) => out.push(n.clone()),
        ExprKind::Arrow(_, a, b) => {
            free_type_names(a, bound, out);
            free_type_names(b, bound, out);
        }
        ExprKind::Forall(binder, body) => {
            bound.push(binder.name.clone());
            free_type_names(body, bound, out);
            bound.pop();
        }
        _ => {}
    }
}

/// Parse a type that may have free type variables; they are returned in
/// order of first occurrence, which is also their order from the outside.
pub fn parse_sysf_type_open(src: &str) -> Result<(FType, Vec<String>), ParseError> {
    let e = parse_expr(src, Calculus::Sysf)?;
    let mut free = Vec::new();
    free_type_names(&e, &mut Vec::new(), &mut free);
    let ty = sysf_type(&e, &mut free.clone())?;
    Ok((ty, free))
}
