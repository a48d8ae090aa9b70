//! Core terms.
//!
//! Term variables and interval variables use separate de Bruijn index spaces.
//! Binder sorts are fixed by the constructor: `Pi`, `Lam`, `Sigma` and the
//! `BoolElim` motive bind one term variable, the `J` motive binds two, and
//! `PathP`, `PLam` and the line and tubes of `Fill` bind one interval variable.
//! Cofibrations of a system never see the fill variable.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::interval::{Cof, Interval};
use crate::nbe::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Idx(pub u32);

pub type IExpr = Interval<Idx>;
pub type CofExpr = Cof<Idx, TermEq>;

/// A list of guarded branches.
pub type System<T> = Vec<(CofExpr, T)>;

/// Byte range in a source file.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: u32,
    pub end: u32,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start: start as u32, end: end as u32 }
    }
}

/// The cofibration atom `lhs ≡ rhs : ty`.
#[derive(Clone, Debug, PartialEq)]
pub struct TermEq {
    pub lhs: Term,
    pub rhs: Term,
    pub ty: Term,
}

/// A checked top-level definition.
pub struct GlobalDef {
    pub name: String,
    pub ty_term: Term,
    pub term: Term,
    pub ty: Value,
    pub value: Value,
}

impl PartialEq for GlobalDef {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl fmt::Debug for GlobalDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Global({})", self.name)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FillTerm {
    pub line: Arc<Term>,
    pub sys: System<Arc<Term>>,
    pub base: Arc<Term>,
    pub at: IExpr,
}

/// A base type with a system of `(T, e)` pairs; shared by `Glue`, `Unglue` annotations and `hisoext`.
#[derive(Clone, Debug, PartialEq)]
pub struct GlueTerm {
    pub base: Arc<Term>,
    pub sys: System<(Arc<Term>, Arc<Term>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JTerm {
    pub ty: Arc<Term>,
    pub a: Arc<Term>,
    pub motive: Arc<Term>,
    pub d: Arc<Term>,
    pub b: Arc<Term>,
    pub p: Arc<Term>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Term {
    Var(Idx),
    Global(Arc<GlobalDef>),
    U0,
    U1,
    Unit,
    Star,
    Bool,
    True,
    False,
    BoolElim {
        motive: Arc<Term>,
        tcase: Arc<Term>,
        fcase: Arc<Term>,
        scrut: Arc<Term>,
    },
    Pi(Arc<Term>, Arc<Term>),
    Lam(Arc<Term>),
    App(Arc<Term>, Arc<Term>),
    Sigma(Arc<Term>, Arc<Term>),
    Pair(Arc<Term>, Arc<Term>),
    Fst(Arc<Term>),
    Snd(Arc<Term>),
    PathP {
        line: Arc<Term>,
        left: Arc<Term>,
        right: Arc<Term>,
    },
    PLam(Arc<Term>),
    PApp(Arc<Term>, IExpr),
    Fill(Arc<FillTerm>),
    Glue(Arc<GlueTerm>),
    GlueIntro {
        sys: Arc<System<Arc<Term>>>,
        base: Arc<Term>,
    },
    /// The annotation is the type of the argument; the checker always fills it in.
    Unglue {
        ty: Option<Arc<GlueTerm>>,
        arg: Arc<Term>,
    },
    J(Arc<JTerm>),
    HIso(Arc<Term>, Arc<Term>),
    IdHIso(Arc<Term>),
    HisoExt(Arc<GlueTerm>),
    Ann(Arc<Term>, Arc<Term>),
    Loc(Span, Arc<Term>),
}

impl Term {
    pub fn var(i: u32) -> Term {
        Term::Var(Idx(i))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Arc::new(f), Arc::new(a))
    }

    pub fn lam(body: Term) -> Term {
        Term::Lam(Arc::new(body))
    }

    pub fn pi(dom: Term, cod: Term) -> Term {
        Term::Pi(Arc::new(dom), Arc::new(cod))
    }

    pub fn sigma(dom: Term, cod: Term) -> Term {
        Term::Sigma(Arc::new(dom), Arc::new(cod))
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(Arc::new(a), Arc::new(b))
    }

    pub fn plam(body: Term) -> Term {
        Term::PLam(Arc::new(body))
    }

    pub fn papp(p: Term, r: IExpr) -> Term {
        Term::PApp(Arc::new(p), r)
    }

    /// `Path A a b`; `ty` lives in the outer context.
    pub fn path(ty: Term, a: Term, b: Term) -> Term {
        Term::PathP { line: Arc::new(ty.shift(0, 1)), left: Arc::new(a), right: Arc::new(b) }
    }

    pub fn fill(line: Term, sys: System<Arc<Term>>, base: Term, at: IExpr) -> Term {
        Term::Fill(Arc::new(FillTerm { line: Arc::new(line), sys, base: Arc::new(base), at }))
    }

    /// Drops source locations.
    pub fn unloc(&self) -> &Term {
        match self {
            Term::Loc(_, t) => t.unloc(),
            t => t,
        }
    }

    /// Weakens by `dt` term variables and `di` interval variables.
    pub fn shift(&self, dt: u32, di: u32) -> Term {
        if dt == 0 && di == 0 {
            return self.clone();
        }
        self.map_vars(
            0,
            0,
            &mut |idx, tc, _| {
                if idx.0 >= tc {
                    Term::Var(Idx(idx.0 + dt))
                } else {
                    Term::Var(idx)
                }
            },
            &mut |idx, _, ic| {
                if idx.0 >= ic {
                    Interval::Var(Idx(idx.0 + di))
                } else {
                    Interval::Var(idx)
                }
            },
        )
    }

    /// Capture-avoiding replacement of the free term variable `target` by `u`.
    pub fn subst_term(&self, target: Idx, u: &Term) -> Term {
        self.map_vars(
            0,
            0,
            &mut |idx, tc, ic| {
                if idx.0 >= tc && idx.0 - tc == target.0 {
                    u.shift(tc, ic)
                } else {
                    Term::Var(idx)
                }
            },
            &mut |idx, _, _| Interval::Var(idx),
        )
        .normalize_cofs()
    }

    /// Replaces the free interval variable `target` by `r`, renormalising every
    /// interval and cofibration it touches.
    pub fn subst_interval(&self, target: Idx, r: &IExpr) -> Term {
        self.map_vars(0, 0, &mut |idx, _, _| Term::Var(idx), &mut |idx, _, ic| {
            if idx.0 >= ic && idx.0 - ic == target.0 {
                r.map_vars(&mut |v| Interval::Var(Idx(v.0 + ic)))
            } else {
                Interval::Var(idx)
            }
        })
        .normalize_cofs()
    }

    /// Brings every interval expression and cofibration into normal form.
    pub fn normalize_cofs(&self) -> Term {
        self.map_vars(0, 0, &mut |idx, _, _| Term::Var(idx), &mut |idx, _, _| Interval::Var(idx))
    }

    /// Whether free term variable `target` occurs.
    pub fn mentions_term_var(&self, target: Idx) -> bool {
        let mut found = false;
        self.map_vars(
            0,
            0,
            &mut |idx, tc, _| {
                found |= idx.0 >= tc && idx.0 - tc == target.0;
                Term::Var(idx)
            },
            &mut |idx, _, _| Interval::Var(idx),
        );
        found
    }

    /// Rebuilds the term, replacing variables. Callbacks receive the number of
    /// enclosing term and interval binders. Intervals and cofibrations are renormalised.
    pub fn map_vars(
        &self,
        tc: u32,
        ic: u32,
        fv: &mut impl FnMut(Idx, u32, u32) -> Term,
        fi: &mut impl FnMut(Idx, u32, u32) -> IExpr,
    ) -> Term {
        let go =
            |t: &Arc<Term>, dt: u32, di: u32, fv: &mut _, fi: &mut _| Arc::new(t.map_vars(tc + dt, ic + di, fv, fi));
        match self {
            Term::Var(i) => fv(*i, tc, ic),
            Term::Global(_) | Term::U0 | Term::U1 | Term::Unit | Term::Star | Term::Bool | Term::True | Term::False => {
                self.clone()
            }
            Term::BoolElim { motive, tcase, fcase, scrut } => Term::BoolElim {
                motive: go(motive, 1, 0, fv, fi),
                tcase: go(tcase, 0, 0, fv, fi),
                fcase: go(fcase, 0, 0, fv, fi),
                scrut: go(scrut, 0, 0, fv, fi),
            },
            Term::Pi(a, b) => Term::Pi(go(a, 0, 0, fv, fi), go(b, 1, 0, fv, fi)),
            Term::Lam(b) => Term::Lam(go(b, 1, 0, fv, fi)),
            Term::App(f, a) => Term::App(go(f, 0, 0, fv, fi), go(a, 0, 0, fv, fi)),
            Term::Sigma(a, b) => Term::Sigma(go(a, 0, 0, fv, fi), go(b, 1, 0, fv, fi)),
            Term::Pair(a, b) => Term::Pair(go(a, 0, 0, fv, fi), go(b, 0, 0, fv, fi)),
            Term::Fst(p) => Term::Fst(go(p, 0, 0, fv, fi)),
            Term::Snd(p) => Term::Snd(go(p, 0, 0, fv, fi)),
            Term::PathP { line, left, right } => Term::PathP {
                line: go(line, 0, 1, fv, fi),
                left: go(left, 0, 0, fv, fi),
                right: go(right, 0, 0, fv, fi),
            },
            Term::PLam(b) => Term::PLam(go(b, 0, 1, fv, fi)),
            Term::PApp(p, r) => Term::PApp(go(p, 0, 0, fv, fi), map_ival(r, tc, ic, fi)),
            Term::Fill(f) => {
                let sys = map_sys(&f.sys, tc, ic, fv, fi, &mut |b, fv, fi| go(b, 0, 1, fv, fi));
                Term::Fill(Arc::new(FillTerm {
                    line: go(&f.line, 0, 1, fv, fi),
                    sys,
                    base: go(&f.base, 0, 0, fv, fi),
                    at: map_ival(&f.at, tc, ic, fi),
                }))
            }
            Term::Glue(g) => Term::Glue(Arc::new(map_glue(g, tc, ic, fv, fi))),
            Term::GlueIntro { sys, base } => Term::GlueIntro {
                sys: Arc::new(map_sys(sys, tc, ic, fv, fi, &mut |b, fv, fi| go(b, 0, 0, fv, fi))),
                base: go(base, 0, 0, fv, fi),
            },
            Term::Unglue { ty, arg } => Term::Unglue {
                ty: ty.as_ref().map(|g| Arc::new(map_glue(g, tc, ic, fv, fi))),
                arg: go(arg, 0, 0, fv, fi),
            },
            Term::J(j) => Term::J(Arc::new(JTerm {
                ty: go(&j.ty, 0, 0, fv, fi),
                a: go(&j.a, 0, 0, fv, fi),
                motive: go(&j.motive, 2, 0, fv, fi),
                d: go(&j.d, 0, 0, fv, fi),
                b: go(&j.b, 0, 0, fv, fi),
                p: go(&j.p, 0, 0, fv, fi),
            })),
            Term::HIso(t, a) => Term::HIso(go(t, 0, 0, fv, fi), go(a, 0, 0, fv, fi)),
            Term::IdHIso(a) => Term::IdHIso(go(a, 0, 0, fv, fi)),
            Term::HisoExt(g) => Term::HisoExt(Arc::new(map_glue(g, tc, ic, fv, fi))),
            Term::Ann(t, a) => Term::Ann(go(t, 0, 0, fv, fi), go(a, 0, 0, fv, fi)),
            Term::Loc(s, t) => Term::Loc(*s, go(t, 0, 0, fv, fi)),
        }
    }
}

fn map_ival(r: &IExpr, tc: u32, ic: u32, fi: &mut impl FnMut(Idx, u32, u32) -> IExpr) -> IExpr {
    r.map_vars(&mut |v| fi(*v, tc, ic)).normalize().to_expr()
}

fn map_cof(
    c: &CofExpr,
    tc: u32,
    ic: u32,
    fv: &mut impl FnMut(Idx, u32, u32) -> Term,
    fi: &mut impl FnMut(Idx, u32, u32) -> IExpr,
) -> CofExpr {
    let mapped = map_cof_raw(c, tc, ic, fv, fi);
    mapped.normalize().to_expr()
}

fn map_cof_raw(
    c: &CofExpr,
    tc: u32,
    ic: u32,
    fv: &mut impl FnMut(Idx, u32, u32) -> Term,
    fi: &mut impl FnMut(Idx, u32, u32) -> IExpr,
) -> CofExpr {
    match c {
        Cof::Top => Cof::Top,
        Cof::Bot => Cof::Bot,
        Cof::EqZero(r) => Cof::EqZero(r.map_vars(&mut |v| fi(*v, tc, ic))),
        Cof::EqOne(r) => Cof::EqOne(r.map_vars(&mut |v| fi(*v, tc, ic))),
        Cof::And(a, b) => Cof::and(map_cof_raw(a, tc, ic, fv, fi), map_cof_raw(b, tc, ic, fv, fi)),
        Cof::Or(a, b) => Cof::or(map_cof_raw(a, tc, ic, fv, fi), map_cof_raw(b, tc, ic, fv, fi)),
        Cof::Atom(eq) => Cof::Atom(TermEq {
            lhs: eq.lhs.map_vars(tc, ic, fv, fi),
            rhs: eq.rhs.map_vars(tc, ic, fv, fi),
            ty: eq.ty.map_vars(tc, ic, fv, fi),
        }),
    }
}

type MapBody<'a, T, FV, FI> = dyn FnMut(&T, &mut FV, &mut FI) -> T + 'a;

fn map_sys<T, FV, FI>(
    sys: &System<T>,
    tc: u32,
    ic: u32,
    fv: &mut FV,
    fi: &mut FI,
    body: &mut MapBody<'_, T, FV, FI>,
) -> System<T>
where
    FV: FnMut(Idx, u32, u32) -> Term,
    FI: FnMut(Idx, u32, u32) -> IExpr,
{
    sys.iter().map(|(c, b)| (map_cof(c, tc, ic, fv, fi), body(b, fv, fi))).collect()
}

fn map_glue(
    g: &GlueTerm,
    tc: u32,
    ic: u32,
    fv: &mut impl FnMut(Idx, u32, u32) -> Term,
    fi: &mut impl FnMut(Idx, u32, u32) -> IExpr,
) -> GlueTerm {
    GlueTerm {
        base: Arc::new(g.base.map_vars(tc, ic, fv, fi)),
        sys: g
            .sys
            .iter()
            .map(|(c, (t, e))| {
                (
                    map_cof(c, tc, ic, fv, fi),
                    (Arc::new(t.map_vars(tc, ic, fv, fi)), Arc::new(e.map_vars(tc, ic, fv, fi))),
                )
            })
            .collect(),
    }
}
