//! Free-variable queries on values.

use alloc::vec::Vec;

use super::subst::Subst;
use super::value::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarRef {
    Term(Lvl),
    Interval(Lvl),
}

/// Whether the value has no free variables at all.
pub fn is_closed(v: &Value) -> bool {
    !Occurs { bound: Vec::new(), hit: &mut |_| true }.value(v)
}

/// Whether the value mentions the given interval variable.
pub fn mentions_ivar(v: &Value, l: Lvl) -> bool {
    Occurs { bound: Vec::new(), hit: &mut |x| x == VarRef::Interval(l) }.value(v)
}

/// Whether substituting `s` can change `v`.
pub fn touched_by(v: &Value, s: &Subst) -> bool {
    Occurs {
        bound: Vec::new(),
        hit: &mut |x| match x {
            VarRef::Term(l) => s.tvars.iter().any(|(k, _)| *k == l),
            VarRef::Interval(l) => s.ivars.iter().any(|(k, _)| *k == l),
        },
    }
    .value(v)
}

pub fn atom_mentions_ivar(a: &Atom, l: &Lvl) -> bool {
    let l = *l;
    mentions_ivar(&a.0.lhs, l) || mentions_ivar(&a.0.rhs, l) || mentions_ivar(&a.0.ty, l)
}

struct Occurs<'a> {
    bound: Vec<Lvl>,
    hit: &'a mut dyn FnMut(VarRef) -> bool,
}

impl Occurs<'_> {
    fn var(&mut self, x: VarRef) -> bool {
        let (VarRef::Term(l) | VarRef::Interval(l)) = x;
        !self.bound.contains(&l) && (self.hit)(x)
    }

    fn ival(&mut self, r: &IVal) -> bool {
        r.vars().any(|l| self.var(VarRef::Interval(*l)))
    }

    fn cof(&mut self, c: &CofV) -> bool {
        c.clauses().iter().any(|cl| {
            cl.zeros.iter().chain(cl.ones.iter()).any(|l| self.var(VarRef::Interval(*l)))
                || cl.atoms.iter().any(|a| self.value(&a.0.lhs) || self.value(&a.0.rhs) || self.value(&a.0.ty))
        })
    }

    fn env(&mut self, env: &Env) -> bool {
        env.terms.iter().any(|v| self.value(v)) || env.ivals.iter().any(|r| self.ival(r))
    }

    fn under(&mut self, l: Lvl, v: &Value) -> bool {
        self.bound.push(l);
        let out = self.value(v);
        self.bound.pop();
        out
    }

    fn caps(&mut self, caps: &[Cap]) -> bool {
        caps.iter().any(|c| match c {
            Cap::V(v) => self.value(v),
            Cap::I(r) => self.ival(r),
            Cap::IClo(c) => self.iclo(c),
            Cap::Thunk(t) => self.thunk(t),
        })
    }

    fn clo(&mut self, c: &Clo) -> bool {
        match c {
            Clo::Syn { env, .. } => self.env(env),
            Clo::Abs { var, body } => self.under(*var, body),
            Clo::Const(v) => self.value(v),
            Clo::Native(n) => self.caps(&n.caps),
        }
    }

    fn iclo(&mut self, c: &IClo) -> bool {
        match c {
            IClo::Syn { env, .. } => self.env(env),
            IClo::Abs { var, body } => self.under(*var, body),
            IClo::Const(v) => self.value(v),
            IClo::Native(n) => self.caps(&n.caps),
        }
    }

    fn thunk(&mut self, t: &Thunk) -> bool {
        match t {
            Thunk::Syn { env, .. } => self.env(env),
            Thunk::Val(v) => self.value(v),
            Thunk::Native(n) => self.caps(&n.caps),
        }
    }

    fn glue(&mut self, g: &GlueTy) -> bool {
        self.value(&g.base) || g.sys.iter().any(|(c, t, e)| self.cof(c) || self.thunk(t) || self.thunk(e))
    }

    fn value(&mut self, v: &Value) -> bool {
        match v {
            Value::U0 | Value::U1 | Value::Unit | Value::Star | Value::Bool | Value::True | Value::False => false,
            Value::Pi(a, b) | Value::Sigma(a, b) => self.value(a) || self.clo(b),
            Value::Lam(b) => self.clo(b),
            Value::Pair(a, b) => self.value(a) || self.value(b),
            Value::PathP(l, a, b) => self.iclo(l) || self.value(a) || self.value(b),
            Value::PLam(b) => self.iclo(b),
            Value::Glue(g) => self.glue(g),
            Value::GlueIntro(el) => self.value(&el.base) || el.sys.iter().any(|(c, t)| self.cof(c) || self.thunk(t)),
            Value::Neu(ty, n) => self.value(ty) || self.neutral(n),
        }
    }

    fn neutral(&mut self, n: &Neutral) -> bool {
        match n {
            Neutral::Var(l) => self.var(VarRef::Term(*l)),
            Neutral::App(h, a) => self.value(h) || self.value(a),
            Neutral::Fst(h) | Neutral::Snd(h) => self.value(h),
            Neutral::PApp(h, r) => self.value(h) || self.ival(r),
            Neutral::BoolElim { motive, tcase, fcase, scrut } => {
                self.clo(motive) || self.value(tcase) || self.value(fcase) || self.value(scrut)
            }
            Neutral::Unglue { glue, arg } | Neutral::HExtRet { glue, arg } | Neutral::HExtHRet { glue, arg } => {
                self.glue(glue) || self.value(arg)
            }
            Neutral::Fill(d) => {
                self.iclo(&d.line)
                    || d.sys.iter().any(|(c, u)| self.cof(c) || self.iclo(u))
                    || self.value(&d.base)
                    || self.ival(&d.at)
            }
        }
    }
}
