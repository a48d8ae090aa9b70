use alloc::sync::Arc;
use alloc::vec::Vec;

use super::eval::{apply, bool_elim, decide_atom, fst, glue_intro, glue_ty, papply, snd, unglue};
use super::occurs::touched_by;
use super::value::*;
use crate::glue;
use crate::interval::{CofNf, IntervalNf};
use crate::kan;

/// Simultaneous substitution of interval and term levels.
#[derive(Clone, Default)]
pub struct Subst {
    pub ivars: Vec<(Lvl, IVal)>,
    pub tvars: Vec<(Lvl, Value)>,
}

impl Subst {
    pub fn interval(l: Lvl, r: IVal) -> Subst {
        Subst { ivars: alloc::vec![(l, r)], tvars: Vec::new() }
    }

    pub fn term(l: Lvl, v: Value) -> Subst {
        Subst { ivars: Vec::new(), tvars: alloc::vec![(l, v)] }
    }

    pub fn is_empty(&self) -> bool {
        self.ivars.is_empty() && self.tvars.is_empty()
    }

    fn lookup_i(&self, l: &Lvl) -> Option<&IVal> {
        self.ivars.iter().find(|(k, _)| k == l).map(|(_, r)| r)
    }

    pub fn ival(&self, r: &IVal) -> IVal {
        if self.ivars.is_empty() || !r.vars().any(|l| self.lookup_i(l).is_some()) {
            return r.clone();
        }
        r.subst(&mut |l| self.lookup_i(l).cloned().unwrap_or_else(|| IntervalNf::var(*l)))
    }

    pub fn cof(&self, c: &CofV) -> CofV {
        if self.is_empty() {
            return c.clone();
        }
        c.subst(&mut |l| self.lookup_i(l).cloned().unwrap_or_else(|| IntervalNf::var(*l)), &mut |a| {
            let d = &a.0;
            decide_atom(d.lhs.subst(self), d.rhs.subst(self), d.ty.subst(self))
        })
    }

    pub fn env(&self, env: &Env) -> Env {
        if self.is_empty() {
            return env.clone();
        }
        Env { terms: env.terms.map(&mut |v| v.subst(self)), ivals: env.ivals.map(&mut |r| self.ival(r)) }
    }

    pub fn glue(&self, g: &GlueTy) -> GlueTy {
        let sys = g
            .sys
            .iter()
            .map(|(c, t, e)| (self.cof(c), t.subst(self), e.subst(self)))
            .filter(|(c, _, _)| !c.is_bot())
            .collect();
        GlueTy { base: g.base.subst(self), sys }
    }
}

impl Value {
    pub fn subst(&self, s: &Subst) -> Value {
        if s.is_empty() {
            return self.clone();
        }
        let arc = |v: &Arc<Value>| Arc::new(v.subst(s));
        match self {
            Value::U0 | Value::U1 | Value::Unit | Value::Star | Value::Bool | Value::True | Value::False => {
                self.clone()
            }
            Value::Pi(a, b) => Value::Pi(arc(a), b.subst(s)),
            Value::Lam(b) => Value::Lam(b.subst(s)),
            Value::Sigma(a, b) => Value::Sigma(arc(a), b.subst(s)),
            Value::Pair(a, b) => Value::Pair(arc(a), arc(b)),
            Value::PathP(l, a, b) => Value::PathP(l.subst(s), arc(a), arc(b)),
            Value::PLam(b) => Value::PLam(b.subst(s)),
            Value::Glue(g) => {
                let g = s.glue(g);
                glue_ty(g.base, g.sys)
            }
            Value::GlueIntro(el) => {
                let sys = el.sys.iter().map(|(c, t)| (s.cof(c), t.subst(s))).collect();
                glue_intro(sys, el.base.subst(s))
            }
            // Re-running eliminations is expensive, so untouched neutrals are shared.
            Value::Neu(..) if !touched_by(self, s) => self.clone(),
            Value::Neu(ty, n) => subst_neutral(ty, n, s),
        }
    }
}

fn subst_neutral(ty: &Value, n: &Neutral, s: &Subst) -> Value {
    match n {
        Neutral::Var(l) => match s.tvars.iter().find(|(k, _)| k == l) {
            Some((_, v)) => v.clone(),
            None => Value::neu(ty.subst(s), Neutral::Var(*l)),
        },
        Neutral::App(h, a) => apply(&h.subst(s), a.subst(s)),
        Neutral::Fst(h) => fst(&h.subst(s)),
        Neutral::Snd(h) => snd(&h.subst(s)),
        Neutral::PApp(h, r) => papply(&h.subst(s), &s.ival(r)),
        Neutral::BoolElim { motive, tcase, fcase, scrut } => {
            bool_elim(&motive.subst(s), tcase.subst(s), fcase.subst(s), scrut.subst(s))
        }
        Neutral::Unglue { glue, arg } => unglue(&Arc::new(s.glue(glue)), arg.subst(s)),
        Neutral::Fill(d) => {
            let sys: Vec<_> = d.sys.iter().map(|(c, u)| (s.cof(c), u.subst(s))).collect();
            kan::fill(&d.line.subst(s), &sys, &d.base.subst(s), &s.ival(&d.at))
        }
        Neutral::HExtRet { glue: g, arg } => glue::hext_ret(&Arc::new(s.glue(g)), arg.subst(s)),
        Neutral::HExtHRet { glue: g, arg } => glue::hext_hret(&Arc::new(s.glue(g)), arg.subst(s)),
    }
}

impl Cap {
    pub fn subst(&self, s: &Subst) -> Cap {
        match self {
            Cap::V(v) => Cap::V(v.subst(s)),
            Cap::I(r) => Cap::I(s.ival(r)),
            Cap::IClo(c) => Cap::IClo(c.subst(s)),
            Cap::Thunk(t) => Cap::Thunk(t.subst(s)),
        }
    }
}

fn subst_native<A>(n: &Native<A>, s: &Subst) -> Arc<Native<A>> {
    Arc::new(Native { caps: n.caps.iter().map(|c| c.subst(s)).collect(), code: n.code })
}

impl Clo {
    pub fn subst(&self, s: &Subst) -> Clo {
        match self {
            Clo::Syn { env, body } => Clo::Syn { env: s.env(env), body: body.clone() },
            Clo::Abs { var, body } => Clo::Abs { var: *var, body: Arc::new(body.subst(s)) },
            Clo::Const(v) => Clo::Const(Arc::new(v.subst(s))),
            Clo::Native(n) => Clo::Native(subst_native(n, s)),
        }
    }
}

impl IClo {
    pub fn subst(&self, s: &Subst) -> IClo {
        match self {
            IClo::Syn { env, body } => IClo::Syn { env: s.env(env), body: body.clone() },
            IClo::Abs { var, body } => IClo::Abs { var: *var, body: Arc::new(body.subst(s)) },
            IClo::Const(v) => IClo::Const(Arc::new(v.subst(s))),
            IClo::Native(n) => IClo::Native(subst_native(n, s)),
        }
    }
}

impl Thunk {
    pub fn subst(&self, s: &Subst) -> Thunk {
        match self {
            Thunk::Syn { env, body } => Thunk::Syn { env: s.env(env), body: body.clone() },
            Thunk::Val(v) => Thunk::Val(Arc::new(v.subst(s))),
            Thunk::Native(n) => Thunk::Native(subst_native(n, s)),
        }
    }
}

/// The substitution making every interval literal of a clause true.
pub fn clause_subst(c: &crate::interval::Clause<Lvl, Atom>) -> Subst {
    let mut ivars: Vec<(Lvl, IVal)> = c.zeros.iter().map(|l| (*l, IntervalNf::zero())).collect();
    ivars.extend(c.ones.iter().map(|l| (*l, IntervalNf::one())));
    Subst { ivars, tvars: Vec::new() }
}

/// Clause-wise substitutions for a cofibration; atoms are not turned into equations.
pub fn faces(c: &CofV) -> impl Iterator<Item = (CofV, Subst)> + '_ {
    c.clauses().iter().map(|cl| (CofNf::from_clauses(alloc::vec![cl.clone()]), clause_subst(cl)))
}
