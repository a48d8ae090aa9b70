use alloc::sync::Arc;
use alloc::vec::Vec;

use super::conv::conv;
use super::occurs::is_closed;
use super::subst::Subst;
use super::value::*;
use crate::fuel;
use crate::glue;
use crate::interval::{Cof, CofNf, IntervalNf};
use crate::kan;
use crate::syntax::{CofExpr, GlueTerm, IExpr, Term};

pub fn eval(env: &Env, t: &Term) -> Value {
    fuel::tick();
    let syn = |body: &Arc<Term>| Clo::Syn { env: env.clone(), body: body.clone() };
    let isyn = |body: &Arc<Term>| IClo::Syn { env: env.clone(), body: body.clone() };
    match t {
        Term::Var(i) => env.term(i.0).clone(),
        Term::Global(g) => g.value.clone(),
        Term::U0 => Value::U0,
        Term::U1 => Value::U1,
        Term::Unit => Value::Unit,
        Term::Star => Value::Star,
        Term::Bool => Value::Bool,
        Term::True => Value::True,
        Term::False => Value::False,
        Term::BoolElim { motive, tcase, fcase, scrut } => {
            bool_elim(&syn(motive), eval(env, tcase), eval(env, fcase), eval(env, scrut))
        }
        Term::Pi(a, b) => Value::Pi(Arc::new(eval(env, a)), syn(b)),
        Term::Lam(b) => Value::Lam(syn(b)),
        Term::App(f, a) => apply(&eval(env, f), eval(env, a)),
        Term::Sigma(a, b) => Value::Sigma(Arc::new(eval(env, a)), syn(b)),
        Term::Pair(a, b) => pair(eval(env, a), eval(env, b)),
        Term::Fst(p) => fst(&eval(env, p)),
        Term::Snd(p) => snd(&eval(env, p)),
        Term::PathP { line, left, right } => {
            Value::PathP(isyn(line), Arc::new(eval(env, left)), Arc::new(eval(env, right)))
        }
        Term::PLam(b) => Value::PLam(isyn(b)),
        Term::PApp(p, r) => papply(&eval(env, p), &eval_ival(env, r)),
        Term::Fill(f) => {
            let sys: Vec<_> = f.sys.iter().map(|(c, u)| (eval_cof(env, c), isyn(u))).collect();
            kan::fill(&isyn(&f.line), &sys, &eval(env, &f.base), &eval_ival(env, &f.at))
        }
        Term::Glue(g) => {
            let g = eval_glue(env, g);
            glue_ty(g.base, g.sys)
        }
        Term::GlueIntro { sys, base } => {
            let sys =
                sys.iter().map(|(c, t)| (eval_cof(env, c), Thunk::Syn { env: env.clone(), body: t.clone() })).collect();
            glue_intro(sys, eval(env, base))
        }
        Term::Unglue { ty: Some(g), arg } => unglue(&Arc::new(eval_glue(env, g)), eval(env, arg)),
        Term::Unglue { ty: None, arg } => unglue_unannotated(eval(env, arg)),
        Term::J(j) => {
            let motive = (env.clone(), j.motive.clone());
            glue::eval_j(
                &eval(env, &j.ty),
                &eval(env, &j.a),
                motive,
                eval(env, &j.d),
                &eval(env, &j.b),
                &eval(env, &j.p),
            )
        }
        Term::HIso(t, a) => glue::hiso_ty(eval(env, t), eval(env, a)),
        Term::IdHIso(a) => glue::id_hiso(eval(env, a)),
        Term::HisoExt(g) => {
            let g = eval_glue(env, g);
            glue::hisoext(g.base, g.sys)
        }
        Term::Ann(t, _) | Term::Loc(_, t) => eval(env, t),
    }
}

/// Evaluates the parts of a Glue type without reducing it.
pub fn eval_glue(env: &Env, g: &GlueTerm) -> GlueTy {
    let thunk = |t: &Arc<Term>| Thunk::Syn { env: env.clone(), body: t.clone() };
    let sys = g
        .sys
        .iter()
        .map(|(c, (t, e))| (eval_cof(env, c), thunk(t), thunk(e)))
        .filter(|(c, _, _)| !c.is_bot())
        .collect();
    GlueTy { base: eval(env, &g.base), sys }
}

pub fn eval_ival(env: &Env, r: &IExpr) -> IVal {
    match r {
        IExpr::Zero => IntervalNf::zero(),
        IExpr::One => IntervalNf::one(),
        IExpr::Var(i) => env.ival(i.0).clone(),
        IExpr::Min(a, b) => eval_ival(env, a).meet(&eval_ival(env, b)),
        IExpr::Max(a, b) => eval_ival(env, a).join(&eval_ival(env, b)),
    }
}

pub fn eval_cof(env: &Env, c: &CofExpr) -> CofV {
    match c {
        Cof::Top => CofNf::top(),
        Cof::Bot => CofNf::bot(),
        Cof::EqZero(r) => CofNf::eq_zero(&eval_ival(env, r)),
        Cof::EqOne(r) => CofNf::eq_one(&eval_ival(env, r)),
        Cof::And(a, b) => eval_cof(env, a).and(&eval_cof(env, b)),
        Cof::Or(a, b) => eval_cof(env, a).or(&eval_cof(env, b)),
        Cof::Atom(eq) => decide_atom(eval(env, &eq.lhs), eval(env, &eq.rhs), eval(env, &eq.ty)),
    }
}

/// Convertible sides make the atom true; closed, inconvertible sides make it false.
pub fn decide_atom(lhs: Value, rhs: Value, ty: Value) -> CofV {
    if conv(&lhs, &rhs, &ty) {
        CofNf::top()
    } else if is_closed(&lhs) && is_closed(&rhs) {
        CofNf::bot()
    } else {
        CofNf::atom(Atom(Arc::new(AtomData { lhs, rhs, ty })))
    }
}

impl Clo {
    pub fn apply(&self, v: Value) -> Value {
        match self {
            Clo::Syn { env, body } => eval(&env.push(v), body),
            Clo::Abs { var, body } => body.subst(&Subst::term(*var, v)),
            Clo::Const(b) => (**b).clone(),
            Clo::Native(n) => (n.code)(&n.caps, v),
        }
    }
}

impl IClo {
    pub fn inst(&self, r: &IVal) -> Value {
        match self {
            IClo::Syn { env, body } => eval(&env.push_i(r.clone()), body),
            IClo::Abs { var, body } => body.subst(&Subst::interval(*var, r.clone())),
            IClo::Const(b) => (**b).clone(),
            IClo::Native(n) => (n.code)(&n.caps, r.clone()),
        }
    }
}

impl Thunk {
    pub fn force(&self) -> Value {
        match self {
            Thunk::Syn { env, body } => eval(env, body),
            Thunk::Val(v) => (**v).clone(),
            Thunk::Native(n) => (n.code)(&n.caps, ()),
        }
    }
}

pub fn apply(f: &Value, a: Value) -> Value {
    match f {
        Value::Lam(c) => c.apply(a),
        Value::Neu(ty, _) => match &**ty {
            Value::Pi(_, cod) => Value::neu(cod.apply(a.clone()), Neutral::App(f.clone(), a)),
            t => panic!("internal error: application of a neutral of type {t:?}"),
        },
        v => panic!("internal error: application of {v:?}"),
    }
}

pub fn fst(p: &Value) -> Value {
    match p {
        Value::Pair(a, _) => (**a).clone(),
        Value::Neu(ty, _) => match &**ty {
            Value::Sigma(a, _) => Value::neu((**a).clone(), Neutral::Fst(p.clone())),
            t => panic!("internal error: projection from a neutral of type {t:?}"),
        },
        v => panic!("internal error: projection from {v:?}"),
    }
}

pub fn snd(p: &Value) -> Value {
    match p {
        Value::Pair(_, b) => (**b).clone(),
        Value::Neu(ty, _) => match &**ty {
            Value::Sigma(_, b) => Value::neu(b.apply(fst(p)), Neutral::Snd(p.clone())),
            t => panic!("internal error: projection from a neutral of type {t:?}"),
        },
        v => panic!("internal error: projection from {v:?}"),
    }
}

/// Path application; a neutral path at an endpoint reduces to the endpoint of its type.
pub fn papply(p: &Value, r: &IVal) -> Value {
    match p {
        Value::PLam(c) => c.inst(r),
        Value::Neu(ty, _) => match &**ty {
            Value::PathP(line, a, b) => {
                if r.is_zero() {
                    (**a).clone()
                } else if r.is_one() {
                    (**b).clone()
                } else {
                    Value::neu(line.inst(r), Neutral::PApp(p.clone(), r.clone()))
                }
            }
            t => panic!("internal error: path application of a neutral of type {t:?}"),
        },
        v => panic!("internal error: path application of {v:?}"),
    }
}

pub fn bool_elim(motive: &Clo, t: Value, f: Value, b: Value) -> Value {
    match b {
        Value::True => t,
        Value::False => f,
        Value::Neu(..) => Value::neu(
            motive.apply(b.clone()),
            Neutral::BoolElim { motive: motive.clone(), tcase: t, fcase: f, scrut: b },
        ),
        v => panic!("internal error: boolean elimination of {v:?}"),
    }
}

fn top_branch<T>(sys: &[(CofV, T)]) -> Option<&T> {
    sys.iter().find(|(c, _)| c.is_top()).map(|(_, t)| t)
}

/// `Glue B [φ ↦ (T, e)]`, reduced when the system is empty or has a true branch.
pub fn glue_ty(base: Value, sys: Vec<(CofV, Thunk, Thunk)>) -> Value {
    let sys: Vec<_> = sys.into_iter().filter(|(c, _, _)| !c.is_bot()).collect();
    if let Some((_, t, _)) = sys.iter().find(|(c, _, _)| c.is_top()) {
        return t.force();
    }
    if sys.is_empty() {
        return base;
    }
    Value::Glue(Arc::new(GlueTy { base, sys }))
}

pub fn glue_intro(sys: Vec<(CofV, Thunk)>, base: Value) -> Value {
    let sys: Vec<_> = sys.into_iter().filter(|(c, _)| !c.is_bot()).collect();
    if let Some(t) = top_branch(&sys) {
        return t.force();
    }
    if sys.is_empty() {
        return base;
    }
    Value::GlueIntro(Arc::new(GlueEl { sys, base }))
}

/// `unglue` at the given Glue type, which may be reducible.
pub fn unglue(g: &Arc<GlueTy>, v: Value) -> Value {
    if let Some((_, _, e)) = g.sys.iter().find(|(c, _, _)| c.is_top()) {
        return apply(&glue::hiso_fwd(&e.force()), v);
    }
    if g.sys.iter().all(|(c, _, _)| c.is_bot()) {
        return v;
    }
    match v {
        Value::GlueIntro(el) => el.base.clone(),
        v => Value::neu(g.base.clone(), Neutral::Unglue { glue: g.clone(), arg: v }),
    }
}

fn unglue_unannotated(v: Value) -> Value {
    match &v {
        Value::GlueIntro(el) => el.base.clone(),
        Value::Neu(ty, _) => match &**ty {
            Value::Glue(g) => unglue(g, v.clone()),
            t => panic!("internal error: unannotated unglue at type {t:?}"),
        },
        v => panic!("internal error: unannotated unglue of {v:?}"),
    }
}
