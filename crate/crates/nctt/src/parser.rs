//! Recursive-descent parser with local backtracking.
//!
//! Precedence, loosest first: `\x. t` and `<i> t`; `->`; `*`; `@`;
//! application. Both `->` and `*` associate to the right. A parenthesised
//! group `(x y : A)` followed by `->` or `*` is a binder, otherwise it is an
//! annotation.

use std::collections::BTreeSet;
use std::fmt;

use nctt_core::Span;

use crate::ast::*;
use crate::lexer::{lex, LexError, Tok};

pub const KEYWORDS: &[&str] = &[
    "def", "import", "fill", "comp", "transp", "Glue", "glue", "unglue", "J", "HIso", "idhiso", "hisoext", "Path",
    "PathP", "refl", "boolelim", "pathres", "U0", "U1", "Unit", "Bool", "star", "true", "false", "TT", "FF",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub expected: BTreeSet<String>,
    pub found: String,
    pub span: Span,
    /// Set when `J` is given the wrong number of arguments.
    pub arity: bool,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arity {
            return write!(f, "J takes 6 arguments: type, start point, motive, base case, end point and path");
        }
        let items: Vec<&str> = self.expected.iter().map(String::as_str).collect();
        match items.as_slice() {
            [one] => write!(f, "expected {one}, found {}", self.found),
            _ => write!(f, "expected one of {}, found {}", items.join(", "), self.found),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, thiserror::Error)]
pub enum SyntaxError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl SyntaxError {
    pub fn span(&self) -> Span {
        match self {
            SyntaxError::Lex(e) => e.span(),
            SyntaxError::Parse(e) => e.span,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            SyntaxError::Lex(e) => e.code(),
            SyntaxError::Parse(e) if e.arity => "ArityError",
            SyntaxError::Parse(_) => "ParseError",
        }
    }
}

type PResult<T> = Result<T, ParseError>;

pub fn parse_file(src: &str) -> Result<Vec<Decl>, SyntaxError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, eof: Span::new(src.len(), src.len()) };
    Ok(p.decls()?)
}

pub fn parse_expr(src: &str) -> Result<Expr, SyntaxError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, eof: Span::new(src.len(), src.len()) };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.fail("end of input").into());
    }
    Ok(e)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    eof: Span,
}

fn bx(e: Expr) -> Box<Expr> {
    Box::new(e)
}

/// Picks the error that got further into the input, merging ties.
fn furthest(a: ParseError, b: ParseError) -> ParseError {
    match a.span.start.cmp(&b.span.start) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal if a.arity => a,
        std::cmp::Ordering::Equal if b.arity => b,
        std::cmp::Ordering::Equal => {
            let mut a = a;
            a.expected.extend(b.expected);
            a
        }
    }
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn span(&self) -> Span {
        self.toks.get(self.pos).map_or(self.eof, |(_, s)| *s)
    }

    fn prev_end(&self) -> u32 {
        self.pos.checked_sub(1).map_or(0, |k| self.toks[k].1.end)
    }

    fn from(&self, start: Span) -> Span {
        Span { start: start.start, end: self.prev_end().max(start.start) }
    }

    fn fail(&self, expected: &str) -> ParseError {
        let found = match self.peek() {
            Some(t) => t.to_string(),
            None => "end of input".into(),
        };
        ParseError { expected: [expected.to_string()].into(), found, span: self.span(), arity: false }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> PResult<Span> {
        let s = self.span();
        if self.eat(&t) {
            Ok(s)
        } else {
            Err(self.fail(&t.to_string()))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.is_kw(kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.fail("a name")),
        }
    }

    /// Runs `f`, rewinding on failure.
    fn attempt<T>(&mut self, f: impl FnOnce(&mut Self) -> PResult<T>) -> PResult<T> {
        let save = self.pos;
        let r = f(self);
        if r.is_err() {
            self.pos = save;
        }
        r
    }

    fn decls(&mut self) -> PResult<Vec<Decl>> {
        let mut out = Vec::new();
        while self.peek().is_some() {
            let start = self.span();
            if self.eat_kw("import") {
                match self.peek().cloned() {
                    Some(Tok::Str(path)) => {
                        self.pos += 1;
                        out.push(Decl::Import { path, span: self.from(start) });
                    }
                    _ => return Err(self.fail("a quoted path")),
                }
            } else if self.eat_kw("def") {
                let name_span = self.span();
                let name = self.ident()?;
                self.expect(Tok::Colon)?;
                let ty = self.expr()?;
                self.expect(Tok::Eq)?;
                let body = self.expr()?;
                out.push(Decl::Def { name, name_span, ty: Box::new(ty), body: Box::new(body) });
            } else {
                let mut e = self.fail("`def`");
                e.expected.insert("`import`".into());
                return Err(e);
            }
        }
        Ok(out)
    }

    pub fn expr(&mut self) -> PResult<Expr> {
        let start = self.span();
        if self.eat(&Tok::Lambda) {
            let mut names = vec![self.ident()?];
            while !self.eat(&Tok::Dot) {
                names.push(self.ident().map_err(|e| furthest(e, self.fail("`.`")))?);
            }
            let body = self.expr()?;
            let span = self.from(start);
            return Ok(names.into_iter().rev().fold(body, |b, x| Expr { kind: ExprKind::Lam(x, bx(b)), span }));
        }
        if self.eat(&Tok::LAngle) {
            let i = self.ident()?;
            self.expect(Tok::RAngle)?;
            let body = self.expr()?;
            return Ok(Expr { kind: ExprKind::PLam(i, bx(body)), span: self.from(start) });
        }
        self.pi()
    }

    /// `(x y : A)` as the start of a binder.
    fn binder_group(&mut self) -> PResult<(Vec<String>, Expr)> {
        self.expect(Tok::LParen)?;
        let mut names = vec![self.ident()?];
        while !self.eat(&Tok::Colon) {
            names.push(self.ident()?);
        }
        let ty = self.expr()?;
        self.expect(Tok::RParen)?;
        Ok((names, ty))
    }

    fn binder_before(&mut self, sep: Tok) -> Option<(Vec<String>, Expr)> {
        if self.peek() != Some(&Tok::LParen) {
            return None;
        }
        self.attempt(|p| {
            let g = p.binder_group()?;
            if p.peek() == Some(&sep) {
                p.pos += 1;
                Ok(g)
            } else {
                Err(p.fail("binder"))
            }
        })
        .ok()
    }

    fn pi(&mut self) -> PResult<Expr> {
        let start = self.span();
        if let Some((names, dom)) = self.binder_before(Tok::Arrow) {
            let cod = self.pi()?;
            let span = self.from(start);
            return Ok(names
                .into_iter()
                .rev()
                .fold(cod, |c, x| Expr { kind: ExprKind::Pi(Some(x), bx(dom.clone()), bx(c)), span }));
        }
        let dom = self.sigma()?;
        if self.eat(&Tok::Arrow) {
            let cod = self.pi()?;
            return Ok(Expr { kind: ExprKind::Pi(None, bx(dom), bx(cod)), span: self.from(start) });
        }
        Ok(dom)
    }

    fn sigma(&mut self) -> PResult<Expr> {
        let start = self.span();
        if let Some((names, dom)) = self.binder_before(Tok::Star) {
            let cod = self.sigma()?;
            let span = self.from(start);
            return Ok(names
                .into_iter()
                .rev()
                .fold(cod, |c, x| Expr { kind: ExprKind::Sigma(Some(x), bx(dom.clone()), bx(c)), span }));
        }
        let dom = self.app_at()?;
        if self.eat(&Tok::Star) {
            let cod = self.sigma()?;
            return Ok(Expr { kind: ExprKind::Sigma(None, bx(dom), bx(cod)), span: self.from(start) });
        }
        Ok(dom)
    }

    fn app_at(&mut self) -> PResult<Expr> {
        let start = self.span();
        let mut e = self.app()?;
        while self.eat(&Tok::At) {
            let r = self.ival_atom()?;
            e = Expr { kind: ExprKind::PApp(bx(e), r), span: self.from(start) };
            while self.starts_atom() {
                let a = self.atom()?;
                e = Expr { kind: ExprKind::App(bx(e), bx(a)), span: self.from(start) };
            }
        }
        Ok(e)
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                !KEYWORDS.contains(&s.as_str())
                    || matches!(s.as_str(), "U0" | "U1" | "Unit" | "Bool" | "star" | "true" | "false")
            }
            Some(Tok::LParen) => true,
            _ => false,
        }
    }

    fn app(&mut self) -> PResult<Expr> {
        let start = self.span();
        let mut e = match self.keyword_form()? {
            Some(e) => e,
            None => self.atom()?,
        };
        while self.starts_atom() {
            let a = self.atom()?;
            e = Expr { kind: ExprKind::App(bx(e), bx(a)), span: self.from(start) };
        }
        Ok(e)
    }

    fn line(&mut self) -> PResult<Line> {
        self.expect(Tok::LParen)?;
        let var = self.ident()?;
        self.expect(Tok::Dot)?;
        let body = self.expr()?;
        self.expect(Tok::RParen)?;
        Ok(Line { var, body: bx(body) })
    }

    fn system<T>(&mut self, mut body: impl FnMut(&mut Self) -> PResult<T>) -> PResult<System<T>> {
        self.expect(Tok::LBrack)?;
        let mut out = Vec::new();
        if self.eat(&Tok::RBrack) {
            return Ok(out);
        }
        loop {
            let c = self.cof()?;
            self.expect(Tok::Arrow)?;
            out.push((c, body(self)?));
            if self.eat(&Tok::RBrack) {
                return Ok(out);
            }
            if !self.eat(&Tok::Comma) {
                let mut e = self.fail("`,`");
                e.expected.insert("`]`".into());
                return Err(e);
            }
        }
    }

    fn glue_branch(&mut self) -> PResult<(Expr, Expr)> {
        let e = self.expr()?;
        match e.kind {
            ExprKind::Pair(t, iso) => Ok((*t, *iso)),
            _ => Err(ParseError {
                expected: ["a pair `(T, e)`".to_string()].into(),
                found: "another expression".into(),
                span: e.span,
                arity: false,
            }),
        }
    }

    fn keyword_form(&mut self) -> PResult<Option<Expr>> {
        let start = self.span();
        let Some(Tok::Ident(kw)) = self.peek().cloned() else {
            return Ok(None);
        };
        let kind = match kw.as_str() {
            "fill" => {
                self.pos += 1;
                let line = self.line()?;
                let sys = self.system(Self::expr)?;
                let base = self.atom()?;
                self.expect(Tok::At)?;
                let r = self.ival_atom()?;
                ExprKind::Fill(line, sys, bx(base), r)
            }
            "comp" => {
                self.pos += 1;
                let line = self.line()?;
                let sys = self.system(Self::expr)?;
                ExprKind::Comp(line, sys, bx(self.atom()?))
            }
            "transp" => {
                self.pos += 1;
                let line = self.line()?;
                ExprKind::Transp(line, bx(self.atom()?))
            }
            "Glue" => {
                self.pos += 1;
                let base = self.atom()?;
                ExprKind::Glue(bx(base), self.system(Self::glue_branch)?)
            }
            "hisoext" => {
                self.pos += 1;
                let base = self.atom()?;
                ExprKind::HisoExt(bx(base), self.system(Self::glue_branch)?)
            }
            "glue" => {
                self.pos += 1;
                let sys = self.system(Self::expr)?;
                ExprKind::GlueIntro(sys, bx(self.atom()?))
            }
            "unglue" => {
                self.pos += 1;
                ExprKind::Unglue(bx(self.atom()?))
            }
            "J" => {
                self.pos += 1;
                ExprKind::J(Box::new(self.j_args(start)?))
            }
            "pathres" => {
                self.pos += 1;
                let p = self.atom()?;
                ExprKind::PathRes(bx(p), self.ival_atom()?)
            }
            "boolelim" => {
                self.pos += 1;
                let motive = self.line()?;
                let (t, f, s) = (self.atom()?, self.atom()?, self.atom()?);
                ExprKind::BoolElim(motive, bx(t), bx(f), bx(s))
            }
            "Path" => {
                self.pos += 1;
                let (a, x, y) = (self.atom()?, self.atom()?, self.atom()?);
                ExprKind::Path(bx(a), bx(x), bx(y))
            }
            "PathP" => {
                self.pos += 1;
                let line = self.line()?;
                let (x, y) = (self.atom()?, self.atom()?);
                ExprKind::PathP(line, bx(x), bx(y))
            }
            "refl" => {
                self.pos += 1;
                ExprKind::Refl(bx(self.atom()?))
            }
            "HIso" => {
                self.pos += 1;
                let (t, a) = (self.atom()?, self.atom()?);
                ExprKind::HIso(bx(t), bx(a))
            }
            "idhiso" => {
                self.pos += 1;
                ExprKind::IdHIso(bx(self.atom()?))
            }
            _ => return Ok(None),
        };
        Ok(Some(Expr { kind, span: self.from(start) }))
    }

    fn j_args(&mut self, start: Span) -> PResult<JExpr> {
        let arity = |p: &Self| ParseError {
            expected: Default::default(),
            found: String::new(),
            span: p.from(start),
            arity: true,
        };
        let mut args = Vec::new();
        let mut motive = None;
        while args.len() < 5 {
            if args.len() == 2 && motive.is_none() {
                if self.peek() != Some(&Tok::LParen) {
                    return Err(arity(self));
                }
                self.expect(Tok::LParen)?;
                let x = self.ident()?;
                let q = self.ident()?;
                self.expect(Tok::Dot)?;
                let body = self.expr()?;
                self.expect(Tok::RParen)?;
                motive = Some((x, q, body));
                continue;
            }
            if !self.starts_atom() {
                return Err(arity(self));
            }
            args.push(self.atom()?);
        }
        let (x, q, motive) = motive.expect("motive parsed before the fourth argument");
        let mut it = args.into_iter();
        let mut next = || it.next().expect("five arguments");
        Ok(JExpr { ty: next(), a: next(), x, q, motive, d: next(), b: next(), p: next() })
    }

    fn atom(&mut self) -> PResult<Expr> {
        let start = self.span();
        let mut e = self.atom_head()?;
        while let Some(Tok::Proj(p)) = self.peek().cloned() {
            self.pos += 1;
            let proj = Proj::from_name(&p).expect("lexer only produces known projections");
            e = Expr { kind: ExprKind::Proj(bx(e), proj), span: self.from(start) };
        }
        Ok(e)
    }

    fn atom_head(&mut self) -> PResult<Expr> {
        let start = self.span();
        let kind = match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                let kind = match s.as_str() {
                    "U0" => ExprKind::U0,
                    "U1" => ExprKind::U1,
                    "Unit" => ExprKind::Unit,
                    "Bool" => ExprKind::Bool,
                    "star" => ExprKind::Star,
                    "true" => ExprKind::True,
                    "false" => ExprKind::False,
                    s if KEYWORDS.contains(&s) => return Err(self.parenthesised_keyword()),
                    s => ExprKind::Name(s.to_string()),
                };
                self.pos += 1;
                kind
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let first = self.expr()?;
                if self.eat(&Tok::Colon) {
                    let ty = self.expr()?;
                    self.expect(Tok::RParen)?;
                    ExprKind::Ann(bx(first), bx(ty))
                } else if self.eat(&Tok::Comma) {
                    let mut items = vec![first, self.expr()?];
                    while self.eat(&Tok::Comma) {
                        items.push(self.expr()?);
                    }
                    self.expect(Tok::RParen)?;
                    let last = items.pop().expect("at least two items");
                    let span = self.from(start);
                    return Ok(items
                        .into_iter()
                        .rev()
                        .fold(last, |b, a| Expr { kind: ExprKind::Pair(bx(a), bx(b)), span }));
                } else {
                    let close = self.expect(Tok::RParen);
                    close.map_err(|e| {
                        let mut e = e;
                        e.expected.extend(["`:`".to_string(), "`,`".to_string()]);
                        e
                    })?;
                    return Ok(Expr { kind: first.kind, span: self.from(start) });
                }
            }
            _ => return Err(self.fail("an expression")),
        };
        Ok(Expr { kind, span: self.from(start) })
    }

    fn parenthesised_keyword(&self) -> ParseError {
        self.fail("an expression (keyword forms need parentheses here)")
    }

    fn ival_atom(&mut self) -> PResult<IvalExpr> {
        let start = self.span();
        let kind = match self.peek().cloned() {
            Some(Tok::Num(0)) => IvalKind::Zero,
            Some(Tok::Num(_)) => IvalKind::One,
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => IvalKind::Var(s),
            Some(Tok::LParen) => {
                self.pos += 1;
                let r = self.ival()?;
                self.expect(Tok::RParen)?;
                return Ok(IvalExpr { kind: r.kind, span: self.from(start) });
            }
            _ => return Err(self.fail("an interval point")),
        };
        self.pos += 1;
        Ok(IvalExpr { kind, span: start })
    }

    fn ival(&mut self) -> PResult<IvalExpr> {
        let start = self.span();
        let mut r = self.ival_meet()?;
        while self.eat(&Tok::Join) {
            let s = self.ival_meet()?;
            r = IvalExpr { kind: IvalKind::Max(Box::new(r), Box::new(s)), span: self.from(start) };
        }
        Ok(r)
    }

    fn ival_meet(&mut self) -> PResult<IvalExpr> {
        let start = self.span();
        let mut r = self.ival_atom()?;
        while self.peek() == Some(&Tok::Meet) {
            self.pos += 1;
            let s = self.ival_atom()?;
            r = IvalExpr { kind: IvalKind::Min(Box::new(r), Box::new(s)), span: self.from(start) };
        }
        Ok(r)
    }

    fn cof(&mut self) -> PResult<CofExpr> {
        let mut c = self.cof_and()?;
        while self.eat(&Tok::Join) {
            c = CofExpr::Or(Box::new(c), Box::new(self.cof_and()?));
        }
        Ok(c)
    }

    fn cof_and(&mut self) -> PResult<CofExpr> {
        let mut c = self.cof_atom()?;
        while self.eat(&Tok::Meet) {
            c = CofExpr::And(Box::new(c), Box::new(self.cof_atom()?));
        }
        Ok(c)
    }

    fn cof_atom(&mut self) -> PResult<CofExpr> {
        if self.eat_kw("TT") {
            return Ok(CofExpr::Top);
        }
        if self.eat_kw("FF") {
            return Ok(CofExpr::Bot);
        }
        let paren = if self.peek() == Some(&Tok::LParen) {
            match self.attempt(|p| {
                p.pos += 1;
                let c = p.cof()?;
                p.expect(Tok::RParen)?;
                Ok(c)
            }) {
                Ok(c) => return Ok(c),
                Err(e) => Some(e),
            }
        } else {
            None
        };
        let eq = self.attempt(|p| {
            let r = p.ival()?;
            p.expect(Tok::Eq)?;
            match p.peek() {
                Some(Tok::Num(n)) => {
                    let one = *n == 1;
                    p.pos += 1;
                    Ok(CofExpr::Eq(r, one))
                }
                _ => Err(p.fail("`0` or `1`")),
            }
        });
        let eq_err = match eq {
            Ok(c) => return Ok(c),
            Err(e) => e,
        };
        let atom = self.attempt(|p| {
            let lhs = p.app_at()?;
            p.expect(Tok::Tilde)?;
            let rhs = p.app_at()?;
            p.expect(Tok::Colon)?;
            let ty = p.app_at()?;
            Ok(CofExpr::Atom(bx(lhs), bx(rhs), bx(ty)))
        });
        atom.map_err(|e| {
            let e = furthest(eq_err, e);
            match paren {
                Some(p) => furthest(p, e),
                None => e,
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> ExprKind {
        parse_expr(s).unwrap().kind
    }

    fn name(s: &str) -> Box<Expr> {
        bx(Expr { kind: ExprKind::Name(s.into()), span: Span::default() })
    }

    #[test]
    fn dependent_arrows_nest() {
        let ExprKind::Pi(Some(a), u, rest) = parse("(A : U0) -> A -> A") else { panic!() };
        assert_eq!(a, "A");
        assert_eq!(u.kind, ExprKind::U0);
        assert_eq!(rest.kind, ExprKind::Pi(None, name("A"), name("A")));
    }

    #[test]
    fn binder_groups_split() {
        let ExprKind::Pi(Some(a), _, rest) = parse("(a b : A) -> B") else { panic!() };
        assert_eq!(a, "a");
        assert!(matches!(rest.kind, ExprKind::Pi(Some(ref b), _, _) if b == "b"));
    }

    #[test]
    fn annotation_is_not_a_binder() {
        assert!(matches!(parse("(x : A)"), ExprKind::Ann(..)));
        assert!(matches!(parse("f (x : A)"), ExprKind::App(..)));
    }

    #[test]
    fn fill_node() {
        let ExprKind::Fill(line, sys, _, r) = parse("fill (i. A) [ i=0 \\/ phi ~ psi : B -> u ] a0 @ r") else {
            panic!()
        };
        assert_eq!(line.var, "i");
        assert_eq!(sys.len(), 1);
        assert!(matches!(sys[0].0, CofExpr::Or(..)));
        assert_eq!(r.kind, IvalKind::Var("r".into()));
    }

    #[test]
    fn glue_node() {
        let ExprKind::Glue(base, sys) = parse("Glue B [ i=0 -> (T, e) ]") else { panic!() };
        assert_eq!(base, name("B"));
        assert_eq!(sys[0].1 .0, *name("T"));
    }

    #[test]
    fn application_binds_tighter_than_at() {
        let ExprKind::PApp(p, _) = parse("f x @ i") else { panic!() };
        assert!(matches!(p.kind, ExprKind::App(..)));
    }

    #[test]
    fn application_continues_after_at() {
        let ExprKind::App(f, _) = parse("h x @ i y") else { panic!() };
        assert!(matches!(f.kind, ExprKind::PApp(..)));
    }

    #[test]
    fn star_binds_tighter_than_arrow() {
        let ExprKind::Pi(None, dom, _) = parse("A * B -> C") else { panic!() };
        assert!(matches!(dom.kind, ExprKind::Sigma(None, ..)));
    }

    #[test]
    fn cofibration_precedence() {
        let ExprKind::Comp(_, sys, _) = parse("comp (k. A) [i /\\ j = 0 \\/ k = 1 /\\ (j = 1) -> u] a") else {
            panic!()
        };
        let CofExpr::Or(l, r) = &sys[0].0 else { panic!() };
        assert!(matches!(&**l, CofExpr::Eq(r, false) if matches!(r.kind, IvalKind::Min(..))));
        assert!(matches!(&**r, CofExpr::And(..)));
    }

    #[test]
    fn tuples_nest_to_the_right() {
        let ExprKind::Pair(_, rest) = parse("(a, b, c)") else { panic!() };
        assert!(matches!(rest.kind, ExprKind::Pair(..)));
    }

    #[test]
    fn j_arity_is_checked() {
        let err = parse_expr("J A a (x q. C) d b").unwrap_err();
        assert_eq!(err.code(), "ArityError");
        assert!(matches!(parse("J A a (x q. C) d b p"), ExprKind::J(_)));
    }

    #[test]
    fn errors_name_what_was_expected() {
        let SyntaxError::Parse(e) = parse_expr("\\x y").unwrap_err() else { panic!() };
        assert!(e.expected.contains("`.`"), "{e}");
        assert_eq!(e.span, Span::new(4, 4));
    }
}
