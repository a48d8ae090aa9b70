//! Scope resolution and desugaring into core terms.
//!
//! Every node is wrapped in a location so that type errors can point back at
//! the source.

use std::collections::HashMap;
use std::sync::Arc;

use nctt_core::interval::{Cof, Interval};
use nctt_core::syntax::{CofExpr as CoreCof, FillTerm, GlueTerm, IExpr, Idx, JTerm, System as CoreSystem, TermEq};
use nctt_core::{GlobalDef, Span, Term};

use crate::ast::*;

pub type Globals = HashMap<String, Arc<GlobalDef>>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message}")]
pub struct ElabError {
    pub span: Span,
    pub message: String,
}

impl ElabError {
    pub fn code(&self) -> &'static str {
        "UnboundName"
    }
}

type Result<T> = std::result::Result<T, ElabError>;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sort {
    Term,
    Interval,
}

/// Local variables, innermost last.
#[derive(Clone, Default)]
struct Scope {
    vars: Vec<(String, Sort)>,
}

impl Scope {
    fn with(&self, name: &str, sort: Sort) -> Scope {
        let mut s = self.clone();
        s.vars.push((name.to_string(), sort));
        s
    }

    /// The de Bruijn index of `name` among variables of its own sort.
    fn lookup(&self, name: &str) -> Option<(Sort, u32)> {
        let (pos, &(_, sort)) = self.vars.iter().enumerate().rev().find(|(_, (n, _))| n == name)?;
        let idx = self.vars[pos + 1..].iter().filter(|(_, s)| *s == sort).count();
        Some((sort, idx as u32))
    }
}

pub struct Elab<'g> {
    globals: &'g Globals,
}

pub fn elaborate(globals: &Globals, e: &Expr) -> Result<Term> {
    Elab { globals }.expr(&Scope::default(), e)
}

fn arc(t: Term) -> Arc<Term> {
    Arc::new(t)
}

impl Elab<'_> {
    fn expr(&self, sc: &Scope, e: &Expr) -> Result<Term> {
        Ok(Term::Loc(e.span, arc(self.kind(sc, e)?)))
    }

    fn line(&self, sc: &Scope, l: &Line) -> Result<Term> {
        self.expr(&sc.with(&l.var, Sort::Interval), &l.body)
    }

    fn kind(&self, sc: &Scope, e: &Expr) -> Result<Term> {
        use ExprKind as E;
        let go = |x: &Expr| self.expr(sc, x).map(arc);
        Ok(match &e.kind {
            E::Name(x) => match sc.lookup(x) {
                Some((Sort::Term, i)) => Term::var(i),
                Some((Sort::Interval, _)) => {
                    return Err(ElabError {
                        span: e.span,
                        message: format!("`{x}` is an interval variable, not a term"),
                    })
                }
                None => match self.globals.get(x) {
                    Some(g) => Term::Global(g.clone()),
                    None => return Err(ElabError { span: e.span, message: format!("unbound name `{x}`") }),
                },
            },
            E::U0 => Term::U0,
            E::U1 => Term::U1,
            E::Unit => Term::Unit,
            E::Bool => Term::Bool,
            E::Star => Term::Star,
            E::True => Term::True,
            E::False => Term::False,
            E::Pi(x, a, b) | E::Sigma(x, a, b) => {
                let dom = go(a)?;
                let cod = arc(self.expr(&sc.with(x.as_deref().unwrap_or("_"), Sort::Term), b)?);
                match e.kind {
                    E::Pi(..) => Term::Pi(dom, cod),
                    _ => Term::Sigma(dom, cod),
                }
            }
            E::Lam(x, b) => Term::Lam(arc(self.expr(&sc.with(x, Sort::Term), b)?)),
            E::App(f, a) => Term::App(go(f)?, go(a)?),
            E::Pair(a, b) => Term::Pair(go(a)?, go(b)?),
            E::Proj(p, k) => project(self.expr(sc, p)?, *k),
            E::Ann(t, a) => Term::Ann(go(t)?, go(a)?),
            E::Path(a, x, y) => Term::path(self.expr(sc, a)?, self.expr(sc, x)?, self.expr(sc, y)?),
            E::PathP(l, x, y) => Term::PathP { line: arc(self.line(sc, l)?), left: go(x)?, right: go(y)? },
            E::Refl(a) => Term::plam(self.expr(sc, a)?.shift(0, 1)),
            E::PLam(i, b) => Term::PLam(arc(self.expr(&sc.with(i, Sort::Interval), b)?)),
            E::PApp(p, r) => Term::PApp(go(p)?, self.ival(sc, r)?),
            E::Fill(l, sys, base, r) => self.fill(sc, l, sys, base, self.ival(sc, r)?)?,
            E::Comp(l, sys, base) => self.fill(sc, l, sys, base, Interval::One)?,
            E::Transp(l, base) => self.fill(sc, l, &Vec::new(), base, Interval::One)?,
            E::Glue(b, sys) => Term::Glue(Arc::new(self.glue(sc, b, sys)?)),
            E::HisoExt(b, sys) => Term::HisoExt(Arc::new(self.glue(sc, b, sys)?)),
            E::GlueIntro(sys, b) => {
                let sys = self.system(sc, sys, |c| Ok(arc(self.expr(sc, c)?)))?;
                Term::GlueIntro { sys: Arc::new(sys), base: go(b)? }
            }
            E::Unglue(a) => Term::Unglue { ty: None, arg: go(a)? },
            E::J(j) => {
                let motive = self.expr(&sc.with(&j.x, Sort::Term).with(&j.q, Sort::Term), &j.motive)?;
                Term::J(Arc::new(JTerm {
                    ty: go(&j.ty)?,
                    a: go(&j.a)?,
                    motive: arc(motive),
                    d: go(&j.d)?,
                    b: go(&j.b)?,
                    p: go(&j.p)?,
                }))
            }
            E::PathRes(p, r) => {
                // <j> p @ (j /\ r)
                let p = self.expr(sc, p)?.shift(0, 1);
                let r = self.ival(sc, r)?.map_vars(&mut |i| Interval::Var(Idx(i.0 + 1)));
                Term::plam(Term::papp(p, Interval::min(Interval::Var(Idx(0)), r)))
            }
            E::BoolElim(m, t, f, s) => Term::BoolElim {
                motive: arc(self.expr(&sc.with(&m.var, Sort::Term), &m.body)?),
                tcase: go(t)?,
                fcase: go(f)?,
                scrut: go(s)?,
            },
            E::HIso(t, a) => Term::HIso(go(t)?, go(a)?),
            E::IdHIso(a) => Term::IdHIso(go(a)?),
        })
    }

    fn fill(&self, sc: &Scope, l: &Line, sys: &System<Expr>, base: &Expr, at: IExpr) -> Result<Term> {
        let inner = sc.with(&l.var, Sort::Interval);
        let sys = self.system(sc, sys, |u| Ok(arc(self.expr(&inner, u)?)))?;
        Ok(Term::Fill(Arc::new(FillTerm { line: arc(self.line(sc, l)?), sys, base: arc(self.expr(sc, base)?), at })))
    }

    fn glue(&self, sc: &Scope, base: &Expr, sys: &System<(Expr, Expr)>) -> Result<GlueTerm> {
        let sys = self.system(sc, sys, |(t, e)| Ok((arc(self.expr(sc, t)?), arc(self.expr(sc, e)?))))?;
        Ok(GlueTerm { base: arc(self.expr(sc, base)?), sys })
    }

    fn system<T, U>(
        &self,
        sc: &Scope,
        sys: &System<T>,
        mut body: impl FnMut(&T) -> Result<U>,
    ) -> Result<CoreSystem<U>> {
        sys.iter().map(|(c, t)| Ok((self.cof(sc, c)?, body(t)?))).collect()
    }

    fn cof(&self, sc: &Scope, c: &CofExpr) -> Result<CoreCof> {
        Ok(match c {
            CofExpr::Top => Cof::Top,
            CofExpr::Bot => Cof::Bot,
            CofExpr::Eq(r, false) => Cof::EqZero(self.ival(sc, r)?),
            CofExpr::Eq(r, true) => Cof::EqOne(self.ival(sc, r)?),
            CofExpr::And(a, b) => Cof::And(Box::new(self.cof(sc, a)?), Box::new(self.cof(sc, b)?)),
            CofExpr::Or(a, b) => Cof::Or(Box::new(self.cof(sc, a)?), Box::new(self.cof(sc, b)?)),
            CofExpr::Atom(l, r, ty) => {
                Cof::Atom(TermEq { lhs: self.expr(sc, l)?, rhs: self.expr(sc, r)?, ty: self.expr(sc, ty)? })
            }
        })
    }

    fn ival(&self, sc: &Scope, r: &IvalExpr) -> Result<IExpr> {
        Ok(match &r.kind {
            IvalKind::Zero => Interval::Zero,
            IvalKind::One => Interval::One,
            IvalKind::Var(x) => match sc.lookup(x) {
                Some((Sort::Interval, i)) => Interval::Var(Idx(i)),
                Some((Sort::Term, _)) => {
                    return Err(ElabError {
                        span: r.span,
                        message: format!("`{x}` is a term variable, not an interval variable"),
                    })
                }
                None => return Err(ElabError { span: r.span, message: format!("unbound interval variable `{x}`") }),
            },
            IvalKind::Min(a, b) => Interval::min(self.ival(sc, a)?, self.ival(sc, b)?),
            IvalKind::Max(a, b) => Interval::max(self.ival(sc, a)?, self.ival(sc, b)?),
        })
    }
}

/// Projections out of the iterated pair `(fwd, sec, ret, hsec, hret)`.
fn project(t: Term, k: Proj) -> Term {
    let fst = |t| Term::Fst(arc(t));
    let snd = |t| Term::Snd(arc(t));
    match k {
        Proj::Fst | Proj::Fwd => fst(t),
        Proj::Snd => snd(t),
        Proj::Sec => fst(snd(t)),
        Proj::Ret => fst(snd(snd(t))),
        Proj::HSec => fst(snd(snd(snd(t)))),
        Proj::HRet => snd(snd(snd(snd(t)))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_expr;

    fn elab(s: &str) -> Result<Term> {
        elaborate(&Globals::new(), &parse_expr(s).unwrap())
    }

    fn bare(t: &Term) -> Term {
        strip(t)
    }

    fn strip(t: &Term) -> Term {
        let s = |t: &Arc<Term>| arc(strip(t));
        match t {
            Term::Loc(_, t) => strip(t),
            Term::Lam(b) => Term::Lam(s(b)),
            Term::Pi(a, b) => Term::Pi(s(a), s(b)),
            Term::App(f, a) => Term::App(s(f), s(a)),
            Term::PLam(b) => Term::PLam(s(b)),
            Term::PApp(p, r) => Term::PApp(s(p), r.clone()),
            Term::PathP { line, left, right } => Term::PathP { line: s(line), left: s(left), right: s(right) },
            t => t.clone(),
        }
    }

    #[test]
    fn indices_count_each_sort_separately() {
        let t = bare(&elab("\\x. <i> \\y. <j> x").unwrap());
        let expected = Term::lam(Term::plam(Term::lam(Term::plam(Term::var(1)))));
        assert_eq!(t, expected);
    }

    #[test]
    fn path_is_a_constant_line() {
        let t = bare(&elab("\\A a b. Path A a b").unwrap());
        let Term::Lam(b) = t else { panic!() };
        let Term::Lam(b) = &*b else { panic!() };
        let Term::Lam(b) = &**b else { panic!() };
        assert_eq!(**b, Term::path(Term::var(2), Term::var(1), Term::var(0)));
    }

    #[test]
    fn refl_is_a_constant_path() {
        let t = bare(&elab("\\a. refl a").unwrap());
        assert_eq!(t, Term::lam(Term::plam(Term::var(0))));
    }

    #[test]
    fn unbound_names_are_reported_with_spans() {
        let err = elab("\\x. y").unwrap_err();
        assert_eq!(err.span, Span::new(4, 5));
        let err = elab("<i> \\x. x @ x").unwrap_err();
        assert!(err.message.contains("term variable"));
        assert!(elab("\\x. <i> i").is_err());
    }
}
