//! Type-directed conversion with η for Π, Σ, Unit and paths.

use super::eval::{apply, fst, papply, snd, unglue};
use super::subst::faces;
use super::value::*;
use crate::glue::hiso_ty;
use crate::interval::IntervalNf;

pub fn conv(a: &Value, b: &Value, ty: &Value) -> bool {
    match ty {
        Value::Pi(dom, cod) => {
            let x = Value::var(fresh(), (**dom).clone());
            conv(&apply(a, x.clone()), &apply(b, x.clone()), &cod.apply(x))
        }
        Value::Sigma(dom, cod) => {
            let (a1, b1) = (fst(a), fst(b));
            conv(&a1, &b1, dom) && conv(&snd(a), &snd(b), &cod.apply(a1))
        }
        Value::Unit => true,
        Value::PathP(line, _, _) => {
            let i = ivar(fresh());
            conv(&papply(a, &i), &papply(b, &i), &line.inst(&i))
        }
        Value::U0 | Value::U1 => conv_ty(a, b),
        Value::Glue(g) => {
            if !conv(&unglue(g, a.clone()), &unglue(g, b.clone()), &g.base) {
                return false;
            }
            g.sys.iter().all(|(c, _, _)| {
                faces(c).all(|(_, s)| {
                    let ty_s = ty.subst(&s);
                    // Faces cut out by atoms alone do not reduce the type; unglue already agreed there.
                    matches!(ty_s, Value::Glue(_)) || conv(&a.subst(&s), &b.subst(&s), &ty_s)
                })
            })
        }
        Value::Bool => match (a, b) {
            (Value::True, Value::True) | (Value::False, Value::False) => true,
            (Value::Neu(..), Value::Neu(..)) => conv_neu(a, b),
            _ => false,
        },
        _ => match (a, b) {
            (Value::Neu(..), Value::Neu(..)) => conv_neu(a, b),
            _ => false,
        },
    }
}

pub fn conv_ty(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::U0, Value::U0) | (Value::U1, Value::U1) | (Value::Unit, Value::Unit) | (Value::Bool, Value::Bool) => {
            true
        }
        (Value::Pi(a1, c1), Value::Pi(a2, c2)) | (Value::Sigma(a1, c1), Value::Sigma(a2, c2)) => {
            if !conv_ty(a1, a2) {
                return false;
            }
            let x = Value::var(fresh(), (**a1).clone());
            conv_ty(&c1.apply(x.clone()), &c2.apply(x))
        }
        (Value::PathP(l1, a1, b1), Value::PathP(l2, a2, b2)) => {
            let i = ivar(fresh());
            conv_ty(&l1.inst(&i), &l2.inst(&i))
                && conv(a1, a2, &l1.inst(&IntervalNf::zero()))
                && conv(b1, b2, &l1.inst(&IntervalNf::one()))
        }
        (Value::Glue(g1), Value::Glue(g2)) => conv_glue(g1, g2),
        (Value::Neu(..), Value::Neu(..)) => conv_neu(a, b),
        _ => false,
    }
}

fn no_oracle(_: &Atom) -> Option<bool> {
    None
}

pub fn conv_glue(g1: &GlueTy, g2: &GlueTy) -> bool {
    if !conv_ty(&g1.base, &g2.base) {
        return false;
    }
    let ext1 = CofV::any(g1.sys.iter().map(|b| b.0.clone()));
    let ext2 = CofV::any(g2.sys.iter().map(|b| b.0.clone()));
    if !ext1.equivalent(&ext2, &mut no_oracle) {
        return false;
    }
    g1.sys.iter().all(|(c1, t1, e1)| {
        g2.sys.iter().all(|(c2, t2, e2)| {
            faces(&c1.and(c2)).all(|(_, s)| {
                let (t1, t2) = (t1.subst(&s).force(), t2.subst(&s).force());
                conv_ty(&t1, &t2) && conv(&e1.subst(&s).force(), &e2.subst(&s).force(), &hiso_ty(t1, g1.base.subst(&s)))
            })
        })
    })
}

/// Two systems of lines define the same partial element of `line`.
pub fn conv_psys(s1: &[(CofV, IClo)], s2: &[(CofV, IClo)], line: &IClo) -> bool {
    let ext1 = CofV::any(s1.iter().map(|b| b.0.clone()));
    let ext2 = CofV::any(s2.iter().map(|b| b.0.clone()));
    if !ext1.equivalent(&ext2, &mut no_oracle) {
        return false;
    }
    s1.iter().all(|(c1, u1)| {
        s2.iter().all(|(c2, u2)| {
            faces(&c1.and(c2)).all(|(_, s)| {
                let i = ivar(fresh());
                conv(&u1.subst(&s).inst(&i), &u2.subst(&s).inst(&i), &line.subst(&s).inst(&i))
            })
        })
    })
}

fn neu_ty(v: &Value) -> &Value {
    match v {
        Value::Neu(ty, _) => ty,
        _ => panic!("internal error: expected a neutral"),
    }
}

/// Structural comparison of neutrals.
pub fn conv_neu(a: &Value, b: &Value) -> bool {
    let (Value::Neu(_, n1), Value::Neu(_, n2)) = (a, b) else {
        return false;
    };
    match (&**n1, &**n2) {
        (Neutral::Var(x), Neutral::Var(y)) => x == y,
        (Neutral::App(h1, a1), Neutral::App(h2, a2)) => {
            conv_neu(h1, h2)
                && match neu_ty(h1) {
                    Value::Pi(dom, _) => conv(a1, a2, dom),
                    _ => false,
                }
        }
        (Neutral::Fst(h1), Neutral::Fst(h2)) | (Neutral::Snd(h1), Neutral::Snd(h2)) => conv_neu(h1, h2),
        (Neutral::PApp(h1, r1), Neutral::PApp(h2, r2)) => r1 == r2 && conv_neu(h1, h2),
        (
            Neutral::BoolElim { motive: m1, tcase: t1, fcase: f1, scrut: s1 },
            Neutral::BoolElim { motive: m2, tcase: t2, fcase: f2, scrut: s2 },
        ) => {
            let x = Value::var(fresh(), Value::Bool);
            conv_neu(s1, s2)
                && conv_ty(&m1.apply(x.clone()), &m2.apply(x))
                && conv(t1, t2, &m1.apply(Value::True))
                && conv(f1, f2, &m1.apply(Value::False))
        }
        (Neutral::Unglue { glue: g1, arg: a1 }, Neutral::Unglue { glue: g2, arg: a2 }) => {
            conv_glue(g1, g2) && conv_neu(a1, a2)
        }
        (Neutral::Fill(d1), Neutral::Fill(d2)) => {
            let i = ivar(fresh());
            d1.at == d2.at
                && conv_ty(&d1.line.inst(&i), &d2.line.inst(&i))
                && conv(&d1.base, &d2.base, &d1.line.inst(&IntervalNf::zero()))
                && conv_psys(&d1.sys, &d2.sys, &d1.line)
        }
        (Neutral::HExtRet { glue: g1, arg: a1 }, Neutral::HExtRet { glue: g2, arg: a2 }) => {
            conv_glue(g1, g2) && conv(a1, a2, &g1.base)
        }
        (Neutral::HExtHRet { glue: g1, arg: a1 }, Neutral::HExtHRet { glue: g2, arg: a2 }) => {
            conv_glue(g1, g2) && conv(a1, a2, &Value::Glue(g1.clone()))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nbe::eval::bool_elim;

    fn not(b: Value) -> Value {
        bool_elim(&abs(&Value::Bool, |_| Value::Bool), Value::False, Value::True, b)
    }

    #[test]
    fn functions_are_eta_expanded() {
        let f = Value::var(fresh(), arrow(Value::Bool, Value::Bool));
        let g = f.clone();
        let eta = lam(&Value::Bool, move |x| apply(&g, x));
        assert!(conv(&f, &eta, &arrow(Value::Bool, Value::Bool)));
    }

    #[test]
    fn pairs_are_eta_expanded() {
        let ty = sigma(Value::Bool, |_| Value::Bool);
        let p = Value::var(fresh(), ty.clone());
        assert!(conv(&p, &pair(fst(&p), snd(&p)), &ty));
    }

    #[test]
    fn paths_are_eta_expanded() {
        let ty = path(Value::Bool, Value::True, Value::True);
        let p = Value::var(fresh(), ty.clone());
        let q = p.clone();
        assert!(conv(&p, &plam(move |i| papply(&q, &i)), &ty));
    }

    #[test]
    fn unit_elements_are_all_equal() {
        assert!(conv(&Value::var(fresh(), Value::Unit), &Value::Star, &Value::Unit));
    }

    #[test]
    fn distinct_neutrals_differ() {
        let (x, y) = (Value::var(fresh(), Value::Bool), Value::var(fresh(), Value::Bool));
        assert!(!conv(&x, &y, &Value::Bool));
        assert!(!conv(&not(x.clone()), &x, &Value::Bool));
        assert!(conv(&not(x.clone()), &not(x), &Value::Bool));
    }

    #[test]
    fn stuck_eliminators_compare_their_spines() {
        let x = Value::var(fresh(), Value::Bool);
        assert!(!conv(&not(not(x.clone())), &x, &Value::Bool));
        assert!(conv(&not(not(Value::True)), &Value::True, &Value::Bool));
    }

    #[test]
    fn types_compare_structurally() {
        let a = pi(Value::Bool, |_| Value::Unit);
        assert!(conv_ty(&a, &arrow(Value::Bool, Value::Unit)));
        assert!(!conv_ty(&a, &arrow(Value::Unit, Value::Unit)));
        assert!(!conv_ty(&Value::U0, &Value::U1));
        assert!(conv(&Value::Bool, &Value::Bool, &Value::U0));
    }
}
