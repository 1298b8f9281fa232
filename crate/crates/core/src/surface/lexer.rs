//! Tokens shared by the three surface grammars.

use std::fmt;

use serde::Serialize;

/// Byte offsets `[start, end)` plus the 1-based line and column of `start`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub col: usize,
}

impl SourceSpan {
    /// Smallest span covering both.
    pub fn to(self, other: SourceSpan) -> SourceSpan {
        if other.end <= self.start {
            return other.to(self);
        }
        SourceSpan { start: self.start, end: self.end.max(other.end), line: self.line, col: self.col }
    }

    /// The span of a whole source text.
    pub fn whole(src: &str) -> SourceSpan {
        SourceSpan { start: 0, end: src.len(), line: 1, col: 1 }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Backslash,
    /// `/\`
    BigLambda,
    Dot,
    Colon,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Arrow,
    Star,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(name) => return write!(f, "`{name}`"),
            Tok::Backslash => "`\\`",
            Tok::BigLambda => "`/\\`",
            Tok::Dot => "`.`",
            Tok::Colon => "`:`",
            Tok::Comma => "`,`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBracket => "`[`",
            Tok::RBracket => "`]`",
            Tok::Arrow => "`->`",
            Tok::Star => "`*`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexError {
    pub span: SourceSpan,
    pub found: char,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Split `src` into tokens; `--` starts a comment running to the end of
/// the line. The last token is always `Eof`.
pub fn lex(src: &str) -> Result<Vec<Token>, LexError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    let (mut line, mut line_start) = (1, 0);
    let span_at = |start: usize, end: usize, line: usize, line_start: usize| SourceSpan {
        start,
        end,
        line,
        col: src[line_start..start].chars().count() + 1,
    };
    while let Some(&(i, c)) = chars.peek() {
        if c == '\n' {
            chars.next();
            line += 1;
            line_start = i + 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if src[i..].starts_with("--") {
            while chars.peek().is_some_and(|&(_, c)| c != '\n') {
                chars.next();
            }
            continue;
        }
        if is_ident_start(c) {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !is_ident_continue(d) {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            out.push(Token { tok: Tok::Ident(src[i..end].to_string()), span: span_at(i, end, line, line_start) });
            continue;
        }
        let two = [("->", Tok::Arrow), ("/\\", Tok::BigLambda)].into_iter().find(|(s, _)| src[i..].starts_with(s));
        if let Some((s, tok)) = two {
            chars.next();
            chars.next();
            out.push(Token { tok, span: span_at(i, i + s.len(), line, line_start) });
            continue;
        }
        let tok = match c {
            '\\' | 'λ' => Tok::Backslash,
            '.' => Tok::Dot,
            ':' => Tok::Colon,
            ',' => Tok::Comma,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '*' | '×' => Tok::Star,
            '→' => Tok::Arrow,
            _ => return Err(LexError { span: span_at(i, i + c.len_utf8(), line, line_start), found: c }),
        };
        chars.next();
        out.push(Token { tok, span: span_at(i, i + c.len_utf8(), line, line_start) });
    }
    out.push(Token { tok: Tok::Eof, span: span_at(src.len(), src.len(), line, line_start) });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(src: &str) -> Vec<Tok> {
        lex(src).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn lexes_symbols_and_names() {
        assert_eq!(
            toks("\\x:Ans. x"),
            vec![
                Tok::Backslash,
                Tok::Ident("x".into()),
                Tok::Colon,
                Tok::Ident("Ans".into()),
                Tok::Dot,
                Tok::Ident("x".into()),
                Tok::Eof
            ]
        );
        assert_eq!(toks("/\\X. f [X]")[0], Tok::BigLambda);
        assert_eq!(
            toks("A->B*C"),
            vec![
                Tok::Ident("A".into()),
                Tok::Arrow,
                Tok::Ident("B".into()),
                Tok::Star,
                Tok::Ident("C".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn spans_track_lines() {
        let tokens = lex("yes\n  no -- comment\n").unwrap();
        assert_eq!(tokens[1].span, SourceSpan { start: 6, end: 8, line: 2, col: 3 });
        assert_eq!(tokens.len(), 3);
    }

    #[test]
    fn rejects_stray_characters() {
        let err = lex("yes $").unwrap_err();
        assert_eq!(err.found, '$');
        assert_eq!(err.span.col, 5);
    }
}
