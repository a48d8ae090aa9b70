//! Tokens and the lexer.

use std::fmt;

use nctt_core::Span;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// `0` or `1`.
    Num(u8),
    Str(String),
    /// A projection glued to the preceding atom: `.1`, `.2`, `.fwd`, ...
    Proj(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    LAngle,
    RAngle,
    Comma,
    Colon,
    Eq,
    Arrow,
    Star,
    Lambda,
    Dot,
    At,
    Meet,
    Join,
    Tilde,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Str(s) => write!(f, "{s:?}"),
            Tok::Proj(p) => write!(f, "`.{p}`"),
            t => write!(f, "`{}`", symbol(t)),
        }
    }
}

pub fn symbol(t: &Tok) -> &'static str {
    match t {
        Tok::LParen => "(",
        Tok::RParen => ")",
        Tok::LBrack => "[",
        Tok::RBrack => "]",
        Tok::LAngle => "<",
        Tok::RAngle => ">",
        Tok::Comma => ",",
        Tok::Colon => ":",
        Tok::Eq => "=",
        Tok::Arrow => "->",
        Tok::Star => "*",
        Tok::Lambda => "\\",
        Tok::Dot => ".",
        Tok::At => "@",
        Tok::Meet => "/\\",
        Tok::Join => "\\/",
        Tok::Tilde => "~",
        _ => "?",
    }
}

pub const PROJECTIONS: &[&str] = &["1", "2", "fwd", "sec", "ret", "hsec", "hret"];

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LexError {
    #[error("illegal character {0:?}")]
    IllegalCharacter(char, Span),
    #[error("unterminated block comment")]
    UnterminatedComment(Span),
    #[error("unterminated string")]
    UnterminatedString(Span),
}

impl LexError {
    pub fn span(&self) -> Span {
        match self {
            LexError::IllegalCharacter(_, s) | LexError::UnterminatedComment(s) | LexError::UnterminatedString(s) => *s,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            LexError::IllegalCharacter(..) => "IllegalCharacter",
            LexError::UnterminatedComment(_) | LexError::UnterminatedString(_) => "ParseError",
        }
    }
}

fn ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub fn lex(src: &str) -> Result<Vec<(Tok, Span)>, LexError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let at = |k: usize| chars.get(k).map(|&(_, c)| c);
    let pos = |k: usize| chars.get(k).map_or(src.len(), |&(p, _)| p);
    let mut out = Vec::new();
    let mut k = 0;
    while let Some(c) = at(k) {
        let start = pos(k);
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        if c == '-' && at(k + 1) == Some('-') {
            while at(k).is_some_and(|c| c != '\n') {
                k += 1;
            }
            continue;
        }
        if c == '{' && at(k + 1) == Some('-') {
            let mut depth = 0;
            loop {
                match (at(k), at(k + 1)) {
                    (Some('{'), Some('-')) => {
                        depth += 1;
                        k += 2;
                    }
                    (Some('-'), Some('}')) => {
                        depth -= 1;
                        k += 2;
                        if depth == 0 {
                            break;
                        }
                    }
                    (Some(_), _) => k += 1,
                    (None, _) => return Err(LexError::UnterminatedComment(Span::new(start, start + 2))),
                }
            }
            continue;
        }
        if ident_start(c) {
            let mut j = k + 1;
            loop {
                match at(j) {
                    Some(d) if ident_char(d) => j += 1,
                    // Dashes join words, as in `trans-refl`, but never start `->` or a comment.
                    Some('-') if at(j + 1).is_some_and(ident_char) => j += 1,
                    _ => break,
                }
            }
            let word: String = chars[k..j].iter().map(|&(_, c)| c).collect();
            out.push((Tok::Ident(word), Span::new(start, pos(j))));
            k = j;
            continue;
        }
        if c == '.' {
            let glued = k > 0 && at(k - 1).is_some_and(|p| !p.is_whitespace() && p != '(' && p != '\\');
            if glued {
                let mut j = k + 1;
                while at(j).is_some_and(ident_char) {
                    j += 1;
                }
                let word: String = chars[k + 1..j].iter().map(|&(_, c)| c).collect();
                if PROJECTIONS.contains(&word.as_str()) {
                    out.push((Tok::Proj(word), Span::new(start, pos(j))));
                    k = j;
                    continue;
                }
            }
            out.push((Tok::Dot, Span::new(start, start + 1)));
            k += 1;
            continue;
        }
        if c == '"' {
            let mut j = k + 1;
            let mut s = String::new();
            loop {
                match at(j) {
                    Some('"') => break,
                    Some('\n') | None => return Err(LexError::UnterminatedString(Span::new(start, start + 1))),
                    Some(d) => s.push(d),
                }
                j += 1;
            }
            out.push((Tok::Str(s), Span::new(start, pos(j + 1))));
            k = j + 1;
            continue;
        }
        let two = |t: Tok| (t, 2);
        let (tok, len) = match (c, at(k + 1)) {
            ('-', Some('>')) => two(Tok::Arrow),
            ('/', Some('\\')) => two(Tok::Meet),
            ('\\', Some('/')) => two(Tok::Join),
            ('0', _) => (Tok::Num(0), 1),
            ('1', _) => (Tok::Num(1), 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            ('[', _) => (Tok::LBrack, 1),
            (']', _) => (Tok::RBrack, 1),
            ('<', _) => (Tok::LAngle, 1),
            ('>', _) => (Tok::RAngle, 1),
            (',', _) => (Tok::Comma, 1),
            (':', _) => (Tok::Colon, 1),
            ('=', _) => (Tok::Eq, 1),
            ('*', _) => (Tok::Star, 1),
            ('\\', _) => (Tok::Lambda, 1),
            ('@', _) => (Tok::At, 1),
            ('~', _) => (Tok::Tilde, 1),
            _ => return Err(LexError::IllegalCharacter(c, Span::new(start, start + c.len_utf8()))),
        };
        if matches!(tok, Tok::Num(_)) && at(k + 1).is_some_and(|d| d.is_ascii_digit()) {
            return Err(LexError::IllegalCharacter(at(k + 1).unwrap(), Span::new(pos(k + 1), pos(k + 2))));
        }
        out.push((tok, Span::new(start, pos(k + len))));
        k += len;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|(t, _)| t).collect()
    }

    fn id(s: &str) -> Tok {
        Tok::Ident(s.into())
    }

    #[test]
    fn lambda() {
        assert_eq!(toks("\\A a. a"), vec![Tok::Lambda, id("A"), id("a"), Tok::Dot, id("a")]);
    }

    #[test]
    fn path_abstraction() {
        assert_eq!(toks("<i> p @ 0"), vec![Tok::LAngle, id("i"), Tok::RAngle, id("p"), Tok::At, Tok::Num(0)]);
    }

    #[test]
    fn unterminated_comment_points_at_its_start() {
        assert_eq!(lex("a {- b").unwrap_err(), LexError::UnterminatedComment(Span::new(2, 4)));
    }

    #[test]
    fn dashed_names_and_arrows() {
        assert_eq!(toks("trans-refl-r a->b -- note"), vec![id("trans-refl-r"), id("a"), Tok::Arrow, id("b")]);
    }

    #[test]
    fn projections_need_to_be_glued() {
        assert_eq!(toks("e.fwd x"), vec![id("e"), Tok::Proj("fwd".into()), id("x")]);
        assert_eq!(toks("p.1.2"), vec![id("p"), Tok::Proj("1".into()), Tok::Proj("2".into())]);
        assert_eq!(toks("(i. A)"), vec![Tok::LParen, id("i"), Tok::Dot, id("A"), Tok::RParen]);
    }

    #[test]
    fn connectives() {
        assert_eq!(toks("i /\\ j \\/ k"), vec![id("i"), Tok::Meet, id("j"), Tok::Join, id("k")]);
    }

    #[test]
    fn illegal_character() {
        assert!(matches!(lex("a $ b"), Err(LexError::IllegalCharacter('$', s)) if s == Span::new(2, 3)));
    }
}
