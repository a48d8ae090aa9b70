//! Kan filling.
//!
//! [`fill`] takes a line of types `i. A`, a system of tubes `[φ ↦ i. u]`, a base
//! `a0 : A(0)` agreeing with the tubes at `0`, and a point `r`. It returns an
//! element of `A(r)` that is `a0` at `r = 0` and `u(r)` wherever a tube is true.
//! Composition is filling at `1`; transport is filling with no tubes.
//!
//! Filling computes by cases on the type former of the line. A case only fires
//! when its result is stable under every later interval substitution;
//! otherwise the filler stays neutral and the case is retried after substitution.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::glue::hiso_sec;
use crate::interval::{CofNf, IntervalNf};
use crate::nbe::conv::conv_ty;
use crate::nbe::eval::{apply, fst, papply, snd, unglue};
use crate::nbe::subst::{faces, Subst};
use crate::nbe::value::*;

const TRACE: &str = "nctt::fill";

pub fn fill(line: &IClo, sys: &[(CofV, IClo)], base: &Value, at: &IVal) -> Value {
    if at.is_zero() {
        log::trace!(target: TRACE, "base");
        return base.clone();
    }
    let sys: Vec<(CofV, IClo)> = sys.iter().filter(|(c, _)| !c.is_bot()).cloned().collect();
    if let Some((_, u)) = sys.iter().find(|(c, _)| c.is_top()) {
        log::trace!(target: TRACE, "tube");
        return u.inst(at);
    }
    let l = fresh();
    let ty = line.inst(&ivar(l));
    let out = match &ty {
        Value::Unit => Some(Value::Star),
        Value::Bool => fill_bool(&sys, base),
        Value::Pi(..) => fill_pi(line, &sys, base, at),
        Value::Sigma(..) => Some(fill_sigma(line, &sys, base, at)),
        Value::PathP(..) => Some(fill_path(line, &sys, base, at)),
        Value::Glue(g) => fill_glue(l, g, &sys, base, at),
        Value::U0 if sys.is_empty() => Some(base.clone()),
        _ => None,
    };
    match out {
        Some(v) => {
            log::trace!(target: TRACE, "{}", former(&ty));
            v
        }
        None => {
            log::trace!(target: TRACE, "stuck at {}", former(&ty));
            stuck(line, sys, base, at)
        }
    }
}

pub fn comp(line: &IClo, sys: &[(CofV, IClo)], base: &Value) -> Value {
    fill(line, sys, base, &IntervalNf::one())
}

pub fn transp(line: &IClo, base: &Value) -> Value {
    fill(line, &[], base, &IntervalNf::one())
}

fn former(ty: &Value) -> &'static str {
    match ty {
        Value::Unit => "Unit",
        Value::Bool => "Bool",
        Value::Pi(..) => "Pi",
        Value::Sigma(..) => "Sigma",
        Value::PathP(..) => "PathP",
        Value::Glue(_) => "Glue",
        Value::U0 => "U0",
        Value::U1 => "U1",
        _ => "neutral line",
    }
}

fn stuck(line: &IClo, sys: Vec<(CofV, IClo)>, base: &Value, at: &IVal) -> Value {
    let data = FillData { line: line.clone(), sys, base: base.clone(), at: at.clone() };
    Value::neu(line.inst(at), Neutral::Fill(Arc::new(data)))
}

/// Booleans have no non-trivial lines, so a filler is its base as long as every
/// tube is a constant boolean on each of its faces.
fn fill_bool(sys: &[(CofV, IClo)], base: &Value) -> Option<Value> {
    let constant = sys
        .iter()
        .all(|(c, u)| faces(c).all(|(_, s)| matches!(u.subst(&s).inst(&ivar(fresh())), Value::True | Value::False)));
    constant.then(|| base.clone())
}

/// Applies each tube to captured arguments; lazily, since tubes only exist on their face.
fn map_sys(sys: &[(CofV, IClo)], caps: Vec<Cap>, code: fn(&[Cap], IVal) -> Value) -> Vec<(CofV, IClo)> {
    sys.iter()
        .map(|(c, u)| {
            let mut all = alloc::vec![Cap::IClo(u.clone())];
            all.extend(caps.iter().cloned());
            (c.clone(), IClo::native(all, code))
        })
        .collect()
}

/// Only lines with a constant domain compute: their fibres can be reached by filling the codomain pointwise.
fn fill_pi(line: &IClo, sys: &[(CofV, IClo)], base: &Value, at: &IVal) -> Option<Value> {
    let dom_at = |r: &IVal| match line.inst(r) {
        Value::Pi(dom, _) => (*dom).clone(),
        _ => unreachable!("line changed former"),
    };
    if !conv_ty(&dom_at(&ivar(fresh())), &dom_at(&ivar(fresh()))) {
        return None;
    }
    let dom = dom_at(at);
    Some(lam(&dom, |x| {
        let cod =
            IClo::native(alloc::vec![Cap::IClo(line.clone()), Cap::V(x.clone())], |c, r| match c[0].iclo().inst(&r) {
                Value::Pi(_, cod) => cod.apply(c[1].v().clone()),
                _ => unreachable!("line changed former"),
            });
        let sys = map_sys(sys, alloc::vec![Cap::V(x.clone())], |c, r| apply(&c[0].iclo().inst(&r), c[1].v().clone()));
        fill(&cod, &sys, &apply(base, x), at)
    }))
}

fn fill_sigma(line: &IClo, sys: &[(CofV, IClo)], base: &Value, at: &IVal) -> Value {
    let a_line = IClo::native(alloc::vec![Cap::IClo(line.clone())], |c, r| match c[0].iclo().inst(&r) {
        Value::Sigma(a, _) => (*a).clone(),
        _ => unreachable!("line changed former"),
    });
    let sys1 = map_sys(sys, Vec::new(), |c, r| fst(&c[0].iclo().inst(&r)));
    let sys2 = map_sys(sys, Vec::new(), |c, r| snd(&c[0].iclo().inst(&r)));
    let a0 = fst(base);
    let b_line = iabs(|r| match line.inst(&r) {
        Value::Sigma(_, b) => b.apply(fill(&a_line, &sys1, &a0, &r)),
        _ => unreachable!("line changed former"),
    });
    let a = fill(&a_line, &sys1, &a0, at);
    let b = fill(&b_line, &sys2, &snd(base), at);
    pair(a, b)
}

/// Fills pointwise in the path dimension, adding the endpoints as tubes.
fn fill_path(line: &IClo, sys: &[(CofV, IClo)], base: &Value, at: &IVal) -> Value {
    plam(|j| {
        let caps = alloc::vec![Cap::IClo(line.clone()), Cap::I(j.clone())];
        let line_j = IClo::native(caps, |c, r| match c[0].iclo().inst(&r) {
            Value::PathP(l, _, _) => l.inst(c[1].i()),
            _ => unreachable!("line changed former"),
        });
        let mut sys_j = map_sys(sys, alloc::vec![Cap::I(j.clone())], |c, r| papply(&c[0].iclo().inst(&r), c[1].i()));
        let left = IClo::native(alloc::vec![Cap::IClo(line.clone())], |c, r| match c[0].iclo().inst(&r) {
            Value::PathP(_, a, _) => (*a).clone(),
            _ => unreachable!("line changed former"),
        });
        let right = IClo::native(alloc::vec![Cap::IClo(line.clone())], |c, r| match c[0].iclo().inst(&r) {
            Value::PathP(_, _, b) => (*b).clone(),
            _ => unreachable!("line changed former"),
        });
        sys_j.push((CofNf::eq_zero(&j), left));
        sys_j.push((CofNf::eq_one(&j), right));
        fill(&line_j, &sys_j, &papply(base, &j), at)
    })
}

/// Glue lines compute when there are no tubes and no face of the Glue type holds
/// along the whole line: unglue at `0`, fill in the base, and glue back with the
/// section wherever the target face holds.
fn fill_glue(l: Lvl, g: &Arc<GlueTy>, sys: &[(CofV, IClo)], base: &Value, at: &IVal) -> Option<Value> {
    if !sys.is_empty() {
        return None;
    }
    let along = CofV::any(g.sys.iter().map(|(c, _, _)| c.forall(&l, &mut crate::nbe::occurs::atom_mentions_ivar)));
    if !along.is_bot() {
        return None;
    }
    let at0 = Arc::new(Subst::interval(l, IntervalNf::zero()).glue(g));
    let a0 = unglue(&at0, base.clone());
    let base_line = IClo::Abs { var: l, body: Arc::new(g.base.clone()) };
    let a1 = fill(&base_line, &[], &a0, at);
    let at_r = Subst::interval(l, at.clone()).glue(g);
    if let Some((_, _, e)) = at_r.sys.iter().find(|(c, _, _)| c.is_top()) {
        return Some(apply(&hiso_sec(&e.force()), a1));
    }
    at_r.sys.is_empty().then_some(a1)
}
