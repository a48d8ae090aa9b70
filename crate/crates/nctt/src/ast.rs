//! Surface syntax trees.
//!
//! Equality ignores spans, so trees from different sources can be compared.

use nctt_core::Span;

#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Name(String),
    U0,
    U1,
    Unit,
    Bool,
    Star,
    True,
    False,
    /// `(x : A) -> B`, or `A -> B` without a name.
    Pi(Option<String>, Box<Expr>, Box<Expr>),
    Sigma(Option<String>, Box<Expr>, Box<Expr>),
    Lam(String, Box<Expr>),
    App(Box<Expr>, Box<Expr>),
    Pair(Box<Expr>, Box<Expr>),
    Proj(Box<Expr>, Proj),
    Ann(Box<Expr>, Box<Expr>),
    Path(Box<Expr>, Box<Expr>, Box<Expr>),
    PathP(Line, Box<Expr>, Box<Expr>),
    Refl(Box<Expr>),
    PLam(String, Box<Expr>),
    PApp(Box<Expr>, IvalExpr),
    Fill(Line, System<Expr>, Box<Expr>, IvalExpr),
    Comp(Line, System<Expr>, Box<Expr>),
    Transp(Line, Box<Expr>),
    Glue(Box<Expr>, System<(Expr, Expr)>),
    GlueIntro(System<Expr>, Box<Expr>),
    Unglue(Box<Expr>),
    /// `J A a (x q. C) d b p`.
    J(Box<JExpr>),
    PathRes(Box<Expr>, IvalExpr),
    /// `boolelim (b. C) t f s`.
    BoolElim(Line, Box<Expr>, Box<Expr>, Box<Expr>),
    HIso(Box<Expr>, Box<Expr>),
    IdHIso(Box<Expr>),
    HisoExt(Box<Expr>, System<(Expr, Expr)>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Proj {
    Fst,
    Snd,
    Fwd,
    Sec,
    Ret,
    HSec,
    HRet,
}

impl Proj {
    pub fn name(self) -> &'static str {
        match self {
            Proj::Fst => "1",
            Proj::Snd => "2",
            Proj::Fwd => "fwd",
            Proj::Sec => "sec",
            Proj::Ret => "ret",
            Proj::HSec => "hsec",
            Proj::HRet => "hret",
        }
    }

    pub fn from_name(s: &str) -> Option<Proj> {
        Some(match s {
            "1" => Proj::Fst,
            "2" => Proj::Snd,
            "fwd" => Proj::Fwd,
            "sec" => Proj::Sec,
            "ret" => Proj::Ret,
            "hsec" => Proj::HSec,
            "hret" => Proj::HRet,
            _ => return None,
        })
    }
}

/// A binder over one variable: `(i. A)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Line {
    pub var: String,
    pub body: Box<Expr>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JExpr {
    pub ty: Expr,
    pub a: Expr,
    pub x: String,
    pub q: String,
    pub motive: Expr,
    pub d: Expr,
    pub b: Expr,
    pub p: Expr,
}

pub type System<T> = Vec<(CofExpr, T)>;

#[derive(Clone, Debug)]
pub struct IvalExpr {
    pub kind: IvalKind,
    pub span: Span,
}

impl PartialEq for IvalExpr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum IvalKind {
    Zero,
    One,
    Var(String),
    Min(Box<IvalExpr>, Box<IvalExpr>),
    Max(Box<IvalExpr>, Box<IvalExpr>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum CofExpr {
    Top,
    Bot,
    Eq(IvalExpr, bool),
    And(Box<CofExpr>, Box<CofExpr>),
    Or(Box<CofExpr>, Box<CofExpr>),
    Atom(Box<Expr>, Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug)]
pub enum Decl {
    Def { name: String, name_span: Span, ty: Box<Expr>, body: Box<Expr> },
    Import { path: String, span: Span },
}

impl PartialEq for Decl {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Decl::Def { name: n1, ty: t1, body: b1, .. }, Decl::Def { name: n2, ty: t2, body: b2, .. }) => {
                n1 == n2 && t1 == t2 && b1 == b2
            }
            (Decl::Import { path: p1, .. }, Decl::Import { path: p2, .. }) => p1 == p2,
            _ => false,
        }
    }
}
