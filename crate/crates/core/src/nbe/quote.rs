//! Type-directed readback into η-long normal forms.

use alloc::sync::Arc;
use alloc::vec::Vec;

use super::eval::{apply, fst, papply, snd, unglue};
use super::subst::faces;
use super::value::*;
use crate::glue::hiso_ty;
use crate::interval::{Clause, Cof, CofNf, IntervalNf};
use crate::syntax::{CofExpr, FillTerm, GlueTerm, IExpr, Idx, Term, TermEq};

/// Readback in a context with `tdepth` term and `idepth` interval variables.
#[derive(Clone, Copy, Debug)]
pub struct Quote {
    pub tdepth: u64,
    pub idepth: u64,
}

impl Quote {
    pub fn new(tdepth: usize, idepth: usize) -> Self {
        Quote { tdepth: tdepth as u64, idepth: idepth as u64 }
    }

    fn bind_t(self, ty: Value) -> (Quote, Value) {
        let x = Value::var(Lvl(self.tdepth), ty);
        (Quote { tdepth: self.tdepth + 1, ..self }, x)
    }

    fn bind_i(self) -> (Quote, IVal) {
        let i = ivar(Lvl(self.idepth));
        (Quote { idepth: self.idepth + 1, ..self }, i)
    }

    fn tidx(&self, l: Lvl) -> Idx {
        assert!(l.0 < self.tdepth, "internal error: escaped term level {}", l.0);
        Idx((self.tdepth - 1 - l.0) as u32)
    }

    fn iidx(&self, l: Lvl) -> Idx {
        assert!(l.0 < self.idepth, "internal error: escaped interval level {}", l.0);
        Idx((self.idepth - 1 - l.0) as u32)
    }

    pub fn ival(&self, r: &IVal) -> IExpr {
        let r: IntervalNf<Idx> = r.subst(&mut |l| IntervalNf::var(self.iidx(*l)));
        r.to_expr()
    }

    pub fn clause(&self, c: &Clause<Lvl, Atom>) -> CofExpr {
        let cl = Clause {
            zeros: c.zeros.iter().map(|l| self.iidx(*l)).collect(),
            ones: c.ones.iter().map(|l| self.iidx(*l)).collect(),
            atoms: c
                .atoms
                .iter()
                .map(|a| TermEq {
                    lhs: self.quote(&a.0.lhs, &a.0.ty),
                    rhs: self.quote(&a.0.rhs, &a.0.ty),
                    ty: self.quote_ty(&a.0.ty),
                })
                .collect(),
        };
        CofNf::from_clauses(alloc::vec![cl]).to_expr()
    }

    pub fn cof(&self, c: &CofV) -> CofExpr {
        c.clauses().iter().map(|cl| self.clause(cl)).reduce(Cof::or).unwrap_or(Cof::Bot)
    }

    pub fn quote(&self, v: &Value, ty: &Value) -> Term {
        match ty {
            Value::Pi(dom, cod) => {
                let (q, x) = self.bind_t((**dom).clone());
                Term::lam(q.quote(&apply(v, x.clone()), &cod.apply(x)))
            }
            Value::Sigma(dom, cod) => {
                let a = fst(v);
                Term::pair(self.quote(&a, dom), self.quote(&snd(v), &cod.apply(a)))
            }
            Value::Unit => Term::Star,
            Value::PathP(line, _, _) => {
                let (q, i) = self.bind_i();
                Term::plam(q.quote(&papply(v, &i), &line.inst(&i)))
            }
            Value::U0 | Value::U1 => self.quote_ty(v),
            Value::Glue(g) => match v {
                Value::GlueIntro(el) => {
                    let mut sys = Vec::new();
                    for (c, t) in &el.sys {
                        for (face, s) in faces(c) {
                            let ty_s = match ty.subst(&s) {
                                Value::Glue(gs) => branch_type(&gs, &s),
                                t => t,
                            };
                            sys.push((self.cof(&face), Arc::new(self.quote(&t.subst(&s).force(), &ty_s))));
                        }
                    }
                    Term::GlueIntro { sys: Arc::new(sys), base: Arc::new(self.quote(&el.base, &g.base)) }
                }
                Value::Neu(..) => self.quote_neu(v),
                // A canonical value at an unreduced Glue type can only be a base value glued along nothing.
                v => self.quote(&unglue(g, v.clone()), &g.base),
            },
            Value::Bool => match v {
                Value::True => Term::True,
                Value::False => Term::False,
                v => self.quote_neu(v),
            },
            _ => self.quote_neu(v),
        }
    }

    pub fn quote_ty(&self, v: &Value) -> Term {
        match v {
            Value::U0 => Term::U0,
            Value::U1 => Term::U1,
            Value::Unit => Term::Unit,
            Value::Bool => Term::Bool,
            Value::Pi(dom, cod) => {
                let (q, x) = self.bind_t((**dom).clone());
                Term::pi(self.quote_ty(dom), q.quote_ty(&cod.apply(x)))
            }
            Value::Sigma(dom, cod) => {
                let (q, x) = self.bind_t((**dom).clone());
                Term::sigma(self.quote_ty(dom), q.quote_ty(&cod.apply(x)))
            }
            Value::PathP(line, a, b) => {
                let (q, i) = self.bind_i();
                Term::PathP {
                    line: Arc::new(q.quote_ty(&line.inst(&i))),
                    left: Arc::new(self.quote(a, &line.inst(&IntervalNf::zero()))),
                    right: Arc::new(self.quote(b, &line.inst(&IntervalNf::one()))),
                }
            }
            Value::Glue(g) => Term::Glue(Arc::new(self.glue(g))),
            Value::Neu(..) => self.quote_neu(v),
            v => panic!("internal error: {v:?} is not a type"),
        }
    }

    pub fn glue(&self, g: &GlueTy) -> GlueTerm {
        let mut sys = Vec::new();
        for (c, t, e) in &g.sys {
            for (face, s) in faces(c) {
                let t = t.subst(&s).force();
                let e = e.subst(&s).force();
                let hiso = hiso_ty(t.clone(), g.base.subst(&s));
                sys.push((self.cof(&face), (Arc::new(self.quote_ty(&t)), Arc::new(self.quote(&e, &hiso)))));
            }
        }
        GlueTerm { base: Arc::new(self.quote_ty(&g.base)), sys }
    }

    pub fn quote_neu(&self, v: &Value) -> Term {
        let Value::Neu(_, n) = v else {
            panic!("internal error: expected a neutral, found {v:?}");
        };
        match &**n {
            Neutral::Var(l) => Term::Var(self.tidx(*l)),
            Neutral::App(h, a) => {
                let Value::Neu(hty, _) = h else { unreachable!() };
                let Value::Pi(dom, _) = &**hty else { panic!("internal error: applied neutral is not a function") };
                Term::app(self.quote_neu(h), self.quote(a, dom))
            }
            Neutral::Fst(h) => Term::Fst(Arc::new(self.quote_neu(h))),
            Neutral::Snd(h) => Term::Snd(Arc::new(self.quote_neu(h))),
            Neutral::PApp(h, r) => Term::papp(self.quote_neu(h), self.ival(r)),
            Neutral::BoolElim { motive, tcase, fcase, scrut } => {
                let (q, x) = self.bind_t(Value::Bool);
                Term::BoolElim {
                    motive: Arc::new(q.quote_ty(&motive.apply(x))),
                    tcase: Arc::new(self.quote(tcase, &motive.apply(Value::True))),
                    fcase: Arc::new(self.quote(fcase, &motive.apply(Value::False))),
                    scrut: Arc::new(self.quote_neu(scrut)),
                }
            }
            Neutral::Unglue { glue, arg } => {
                Term::Unglue { ty: Some(Arc::new(self.glue(glue))), arg: Arc::new(self.quote_neu(arg)) }
            }
            Neutral::Fill(d) => {
                let (q, i) = self.bind_i();
                let mut sys = Vec::new();
                for (c, u) in &d.sys {
                    for (face, s) in faces(c) {
                        let body = q.quote(&u.subst(&s).inst(&i), &d.line.subst(&s).inst(&i));
                        sys.push((self.cof(&face), Arc::new(body)));
                    }
                }
                Term::Fill(Arc::new(FillTerm {
                    line: Arc::new(q.quote_ty(&d.line.inst(&i))),
                    sys,
                    base: Arc::new(self.quote(&d.base, &d.line.inst(&IntervalNf::zero()))),
                    at: self.ival(&d.at),
                }))
            }
            Neutral::HExtRet { glue, arg } => {
                let ext = Term::HisoExt(Arc::new(self.glue(glue)));
                // The extension is `(X, (fwd, (sec, (ret, (hsec, hret)))))`.
                let ret = Term::Fst(Arc::new(snds(ext, 3)));
                Term::app(ret, self.quote(arg, &glue.base))
            }
            Neutral::HExtHRet { glue, arg } => {
                let ext = Term::HisoExt(Arc::new(self.glue(glue)));
                let hret = snds(ext, 5);
                Term::app(hret, self.quote(arg, &Value::Glue(glue.clone())))
            }
        }
    }
}

/// Type of a Glue element branch whose face leaves the Glue type unreduced, which
/// happens only for faces cut out by atoms.
fn branch_type(gs: &GlueTy, s: &super::subst::Subst) -> Value {
    gs.sys.first().map(|(_, t, _)| t.subst(s).force()).unwrap_or_else(|| gs.base.clone())
}

fn snds(t: Term, n: usize) -> Term {
    (0..n).fold(t, |t, _| Term::Snd(Arc::new(t)))
}
