//! Half-adjoint isomorphisms, their strong extension along a cofibration, and
//! the path eliminator derived from filling.
//!
//! `HIso T A` is the iterated Σ-type
//! `(fwd : T → A) × (sec : A → T) × (ret : A → T) × (hsec : (b : A) → Path A (fwd (sec b)) b) × ((a : T) → Path T (ret (fwd a)) a)`.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::interval::{CofNf, IntervalNf};
use crate::kan::comp;
use crate::nbe::eval::{apply, decide_atom, eval, fst, glue_intro, papply, snd, unglue};
use crate::nbe::value::*;
use crate::syntax::Term;

pub fn hiso_ty(t: Value, a: Value) -> Value {
    sigma(arrow(t.clone(), a.clone()), |f| {
        sigma(arrow(a.clone(), t.clone()), |s| {
            sigma(arrow(a.clone(), t.clone()), |r| {
                let hsec = pi(a.clone(), |b| path(a.clone(), apply(&f, apply(&s, b.clone())), b));
                sigma(hsec, |_| pi(t.clone(), |x| path(t.clone(), apply(&r, apply(&f, x.clone())), x)))
            })
        })
    })
}

pub fn id_hiso(a: Value) -> Value {
    let id = || lam(&a, |x| x);
    let refl = || lam(&a, |x| plam(|_| x));
    pair(id(), pair(id(), pair(id(), pair(refl(), refl()))))
}

pub fn hiso_fwd(e: &Value) -> Value {
    fst(e)
}

pub fn hiso_sec(e: &Value) -> Value {
    fst(&snd(e))
}

pub fn hiso_ret(e: &Value) -> Value {
    fst(&snd(&snd(e)))
}

pub fn hiso_hsec(e: &Value) -> Value {
    fst(&snd(&snd(&snd(e))))
}

pub fn hiso_hret(e: &Value) -> Value {
    snd(&snd(&snd(&snd(e))))
}

/// `<i> p @ (i ∧ r)`.
pub fn pathres(p: &Value, r: &IVal) -> Value {
    plam(|i| papply(p, &i.meet(r)))
}

/// `J A a (x q. C) d b p` is the composition along `j. C (p @ j) (pathres p j)`
/// with tube `d` on the face where `p` is the constant path.
pub fn eval_j(ty: &Value, a: &Value, motive: (Env, Arc<Term>), d: Value, b: &Value, p: &Value) -> Value {
    let (env, body) = motive;
    let line = iabs(|j| eval(&env.push(papply(p, &j)).push(pathres(p, &j)), &body));
    let p0 = papply(p, &IntervalNf::zero());
    let constant = plam(|_| p0.clone());
    let cof = decide_atom(p.clone(), constant, path(ty.clone(), a.clone(), b.clone()));
    comp(&line, &[(cof, IClo::constant(d.clone()))], &d)
}

/// Reverse of a path in a constant type, at point `j`.
fn rev_at(ty: &Value, p: &Value, j: &IVal) -> Value {
    let p0 = papply(p, &IntervalNf::zero());
    let fwd = {
        let p = p.clone();
        iabs(|m| papply(&p, &m))
    };
    let sys = [(CofNf::eq_zero(j), fwd), (CofNf::eq_one(j), IClo::constant(p0.clone()))];
    comp(&IClo::constant(ty.clone()), &sys, &p0)
}

/// `hisoext A [φ ↦ (T, e)]`: a type `X` with `X = T` and an isomorphism `X ≅ A`
/// restricting to `e` on `φ`.
///
/// `X` is the Glue type. The section glues `sec e` onto a corrected base point
/// and `hsec` is assembled from two compositions. The retraction components are
/// neutral until the system is decided.
pub fn hisoext(base: Value, sys: Vec<(CofV, Thunk, Thunk)>) -> Value {
    let sys: Vec<_> = sys.into_iter().filter(|(c, _, _)| !c.is_bot()).collect();
    if let Some((_, t, e)) = sys.iter().find(|(c, _, _)| c.is_top()) {
        return pair(t.force(), e.force());
    }
    if sys.is_empty() {
        return pair(base.clone(), id_hiso(base));
    }
    let g = Arc::new(GlueTy { base: base.clone(), sys });
    let gv = Value::Glue(g.clone());
    let fwd = lam(&gv, |x| unglue(&g, x));
    let sec = lam(&base, |b| {
        let tubes = g
            .sys
            .iter()
            .map(|(c, _, e)| {
                let caps = alloc::vec![Cap::Thunk(e.clone()), Cap::V(b.clone()), Cap::V(base.clone())];
                (
                    c.clone(),
                    IClo::native(caps, |c, j| {
                        rev_at(c[2].v(), &apply(&hiso_hsec(&c[0].thunk().force()), c[1].v().clone()), &j)
                    }),
                )
            })
            .collect::<Vec<_>>();
        let corrected = comp(&IClo::constant(base.clone()), &tubes, &b);
        let branches = g
            .sys
            .iter()
            .map(|(c, _, e)| {
                let caps = alloc::vec![Cap::Thunk(e.clone()), Cap::V(b.clone())];
                (c.clone(), Thunk::native(caps, |c, ()| apply(&hiso_sec(&c[0].thunk().force()), c[1].v().clone())))
            })
            .collect();
        glue_intro(branches, corrected)
    });
    let ret = lam(&base, |b| hext_ret(&g, b));
    let hsec = lam(&base, |b| {
        plam(|k| {
            let mut tubes: Vec<(CofV, IClo)> = g
                .sys
                .iter()
                .map(|(c, _, e)| {
                    let caps =
                        alloc::vec![Cap::Thunk(e.clone()), Cap::V(b.clone()), Cap::V(base.clone()), Cap::I(k.clone())];
                    (c.clone(), IClo::native(caps, square))
                })
                .collect();
            tubes.push((CofNf::eq_one(&k), IClo::constant(b.clone())));
            comp(&IClo::constant(base.clone()), &tubes, &b)
        })
    });
    let hret = lam(&gv, |x| hext_hret(&g, x));
    pair(gv, pair(fwd, pair(sec, pair(ret, pair(hsec, hret)))))
}

/// The square `Q(j, k)` filling between `rev(hsec b)` at `k = 0`, `hsec b @ k` at
/// `j = 1` and `b` at `k = 1`.
fn square(c: &[Cap], j: IVal) -> Value {
    let (e, b, ty, k) = (c[0].thunk().force(), c[1].v(), c[2].v(), c[3].i());
    let p = apply(&hiso_hsec(&e), b.clone());
    let pk = papply(&p, k);
    let left = {
        let (p, k) = (p.clone(), k.clone());
        iabs(|n| papply(&p, &n.join(&k)))
    };
    let sys = [
        (CofNf::eq_zero(&j), left),
        (CofNf::eq_one(&j), IClo::constant(pk.clone())),
        (CofNf::eq_one(k), IClo::constant(b.clone())),
    ];
    comp(&IClo::constant(ty.clone()), &sys, &pk)
}

fn top_hiso(g: &GlueTy) -> Option<Value> {
    g.sys.iter().find(|(c, _, _)| c.is_top()).map(|(_, _, e)| e.force())
}

pub fn hext_ret(g: &Arc<GlueTy>, b: Value) -> Value {
    if let Some(e) = top_hiso(g) {
        return apply(&hiso_ret(&e), b);
    }
    if g.sys.is_empty() {
        return b;
    }
    Value::neu(Value::Glue(g.clone()), Neutral::HExtRet { glue: g.clone(), arg: b })
}

pub fn hext_hret(g: &Arc<GlueTy>, x: Value) -> Value {
    if let Some(e) = top_hiso(g) {
        return apply(&hiso_hret(&e), x);
    }
    if g.sys.is_empty() {
        return plam(|_| x.clone());
    }
    let gv = Value::Glue(g.clone());
    let back = hext_ret(g, unglue(g, x.clone()));
    Value::neu(path(gv, back, x.clone()), Neutral::HExtHRet { glue: g.clone(), arg: x })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nbe::conv::{conv, conv_ty};
    use crate::nbe::subst::Subst;

    #[test]
    fn id_hiso_has_hiso_type() {
        let a = Value::var(fresh(), Value::U0);
        let e = id_hiso(a.clone());
        let x = Value::var(fresh(), a.clone());
        assert!(conv(&apply(&hiso_fwd(&e), x.clone()), &x, &a));
        let h = apply(&hiso_hsec(&e), x.clone());
        assert!(conv(&h, &plam(|_| x.clone()), &path(a.clone(), x.clone(), x.clone())));
    }

    #[test]
    fn hisoext_restricts_to_the_given_iso() {
        let a = Value::var(fresh(), Value::U0);
        let t = Value::var(fresh(), Value::U0);
        let e = Value::var(fresh(), hiso_ty(t.clone(), a.clone()));
        let i = fresh();
        let sys = alloc::vec![(CofNf::eq_zero(&ivar(i)), Thunk::val(t.clone()), Thunk::val(e.clone()))];
        let ext = hisoext(a.clone(), sys);
        let at0 = ext.subst(&Subst::interval(i, IntervalNf::zero()));
        assert!(conv_ty(&fst(&at0), &t));
        assert!(conv(&snd(&at0), &e, &hiso_ty(t, a)));
    }
}
