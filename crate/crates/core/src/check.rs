//! Bidirectional type checking.
//!
//! Checking elaborates: the returned term is the input with every `unglue`
//! annotated by the Glue type of its argument. Systems are checked face by
//! face: the interval part of each clause is substituted into the context, so
//! a branch only has to make sense where its cofibration holds. Term
//! equations in a clause are not used as assumptions, which is conservative.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::glue::hiso_ty;
use crate::interval::Cof;
use crate::nbe::conv::{conv, conv_ty};
use crate::nbe::eval::{eval, eval_cof, eval_ival, unglue};
use crate::nbe::subst::{faces, Subst};
use crate::nbe::value::*;
use crate::nbe::Quote;
use crate::pretty;
use crate::syntax::{CofExpr, FillTerm, GlobalDef, GlueTerm, IExpr, JTerm, Span, System, Term, TermEq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    UnboundVariable,
    CannotInfer,
    AppNonFunction,
    PAppNonPath,
    ProjNonPair,
    TypeMismatch,
    NotAType,
    EndpointMismatch,
    BoundaryMismatch,
    IncompatibleBranches,
    BranchIllTyped,
    BranchTypeMismatch,
    HIsoIllTyped,
    SystemMismatch,
    DuplicateName,
}

impl ErrorKind {
    pub fn code(self) -> &'static str {
        match self {
            ErrorKind::UnboundVariable => "UnboundVariable",
            ErrorKind::CannotInfer => "CannotInfer",
            ErrorKind::AppNonFunction => "AppNonFunction",
            ErrorKind::PAppNonPath => "PAppNonPath",
            ErrorKind::ProjNonPair => "ProjNonPair",
            ErrorKind::TypeMismatch => "TypeMismatch",
            ErrorKind::NotAType => "NotAType",
            ErrorKind::EndpointMismatch => "EndpointMismatch",
            ErrorKind::BoundaryMismatch => "BoundaryMismatch",
            ErrorKind::IncompatibleBranches => "IncompatibleBranches",
            ErrorKind::BranchIllTyped => "BranchIllTyped",
            ErrorKind::BranchTypeMismatch => "BranchTypeMismatch",
            ErrorKind::HIsoIllTyped => "HIsoIllTyped",
            ErrorKind::SystemMismatch => "SystemMismatch",
            ErrorKind::DuplicateName => "DuplicateName",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{message}")]
pub struct TypeError {
    pub kind: ErrorKind,
    /// Innermost located term enclosing the error.
    pub span: Option<Span>,
    pub message: String,
    pub expected: Option<String>,
    pub got: Option<String>,
}

impl TypeError {
    pub fn new(kind: ErrorKind, message: impl Into<String>) -> Self {
        TypeError { kind, span: None, message: message.into(), expected: None, got: None }
    }

    fn mismatch(kind: ErrorKind, message: impl Into<String>, expected: String, got: String) -> Self {
        TypeError { expected: Some(expected), got: Some(got), ..TypeError::new(kind, message) }
    }

    /// Attaches a span unless a more precise one is already present.
    pub fn at(mut self, span: Span) -> Self {
        self.span.get_or_insert(span);
        self
    }

    fn wrap(self, kind: ErrorKind, context: &str) -> Self {
        TypeError { kind, message: format!("{context}: {}", self.message), ..self }
    }
}

type Result<T> = core::result::Result<T, TypeError>;

fn span_of(t: &Term) -> Option<Span> {
    match t {
        Term::Loc(s, _) => Some(*s),
        _ => None,
    }
}

fn at_term(t: &Term, e: TypeError) -> TypeError {
    match span_of(t) {
        Some(s) => e.at(s),
        None => e,
    }
}

fn located<T>(t: &Term, r: Result<T>) -> Result<T> {
    match span_of(t) {
        Some(s) => r.map_err(|e| e.at(s)),
        None => r,
    }
}

/// Universe level of a type: `0` for small types, `1` for types in `U1`, `2` for `U1` and larger.
pub type Level = u8;

/// A typing context of term and interval variables.
#[derive(Clone, Default)]
pub struct Ctx {
    env: Env,
    names: Vec<String>,
    types: Vec<Value>,
    inames: Vec<String>,
}

impl Ctx {
    pub fn new() -> Self {
        Ctx::default()
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    pub fn bind(&self, name: &str, ty: Value) -> (Ctx, Value) {
        let x = Value::var(Lvl(self.names.len() as u64), ty.clone());
        let mut ctx = self.clone();
        ctx.env = ctx.env.push(x.clone());
        ctx.names.push(name.to_string());
        ctx.types.push(ty);
        (ctx, x)
    }

    pub fn bind_i(&self, name: &str) -> (Ctx, IVal) {
        let i = ivar(Lvl(self.inames.len() as u64));
        let mut ctx = self.clone();
        ctx.env = ctx.env.push_i(i.clone());
        ctx.inames.push(name.to_string());
        (ctx, i)
    }

    /// The context restricted to a face.
    pub fn restrict(&self, s: &Subst) -> Ctx {
        Ctx {
            env: s.env(&self.env),
            names: self.names.clone(),
            types: self.types.iter().map(|t| t.subst(s)).collect(),
            inames: self.inames.clone(),
        }
    }

    pub fn eval(&self, t: &Term) -> Value {
        eval(&self.env, t)
    }

    fn quoter(&self) -> Quote {
        Quote::new(self.names.len(), self.inames.len())
    }

    pub fn quote(&self, v: &Value, ty: &Value) -> Term {
        self.quoter().quote(v, ty)
    }

    pub fn quote_ty(&self, v: &Value) -> Term {
        self.quoter().quote_ty(v)
    }

    pub fn show(&self, v: &Value, ty: &Value) -> String {
        pretty::print(&self.quote(v, ty), &self.names, &self.inames)
    }

    pub fn show_ty(&self, v: &Value) -> String {
        pretty::print(&self.quote_ty(v), &self.names, &self.inames)
    }

    fn show_cof(&self, c: &CofV) -> String {
        pretty::print_cof(&self.quoter().cof(c), &self.names, &self.inames)
    }

    fn check_ival(&self, r: &IExpr) -> Result<()> {
        if r.any_var(&mut |i| i.0 as usize >= self.inames.len()) {
            return Err(TypeError::new(ErrorKind::UnboundVariable, "unbound interval variable"));
        }
        Ok(())
    }

    fn check_cof(&self, c: &CofExpr) -> Result<CofExpr> {
        Ok(match c {
            Cof::Top => Cof::Top,
            Cof::Bot => Cof::Bot,
            Cof::EqZero(r) => {
                self.check_ival(r)?;
                Cof::EqZero(r.clone())
            }
            Cof::EqOne(r) => {
                self.check_ival(r)?;
                Cof::EqOne(r.clone())
            }
            Cof::And(a, b) => Cof::and(self.check_cof(a)?, self.check_cof(b)?),
            Cof::Or(a, b) => Cof::or(self.check_cof(a)?, self.check_cof(b)?),
            Cof::Atom(eq) => {
                let (ty, _) = self.check_type(&eq.ty)?;
                let tyv = self.eval(&ty);
                let lhs = self.check(&eq.lhs, &tyv)?;
                let rhs = self.check(&eq.rhs, &tyv)?;
                Cof::Atom(TermEq { lhs, rhs, ty })
            }
        })
    }

    fn subtype(&self, got: &Value, expected: &Value) -> bool {
        matches!((got, expected), (Value::U0, Value::U1)) || conv_ty(got, expected)
    }

    /// Checks that `t` is a type and returns its level.
    pub fn check_type(&self, t: &Term) -> Result<(Term, Level)> {
        located(t, self.check_type_inner(t))
    }

    fn check_type_inner(&self, t: &Term) -> Result<(Term, Level)> {
        Ok(match t {
            Term::Loc(s, inner) => {
                let (inner, l) = self.check_type(inner)?;
                (Term::Loc(*s, Arc::new(inner)), l)
            }
            Term::U0 => (Term::U0, 1),
            Term::U1 => (Term::U1, 2),
            Term::Unit => (Term::Unit, 0),
            Term::Bool => (Term::Bool, 0),
            Term::Pi(a, b) | Term::Sigma(a, b) => {
                let (a, la) = self.check_type(a)?;
                let (ctx, _) = self.bind("x", self.eval(&a));
                let (b, lb) = ctx.check_type(b)?;
                let (a, b) = (Arc::new(a), Arc::new(b));
                let t = if matches!(t, Term::Pi(..)) { Term::Pi(a, b) } else { Term::Sigma(a, b) };
                (t, la.max(lb))
            }
            Term::PathP { line, left, right } => {
                let (ctx, _) = self.bind_i("i");
                let (line, l) = ctx.check_type(line)?;
                let clo = IClo::Syn { env: self.env.clone(), body: Arc::new(line.clone()) };
                let left = self.check(left, &clo.inst(&IVal::zero()))?;
                let right = self.check(right, &clo.inst(&IVal::one()))?;
                (Term::PathP { line: Arc::new(line), left: Arc::new(left), right: Arc::new(right) }, l)
            }
            Term::Glue(g) => {
                let (g, l) = self.check_glue_data(g)?;
                (Term::Glue(Arc::new(g)), l)
            }
            Term::HIso(a, b) => {
                let (a, la) = self.check_type(a)?;
                let (b, lb) = self.check_type(b)?;
                (Term::HIso(Arc::new(a), Arc::new(b)), la.max(lb))
            }
            _ => {
                let (t, ty) = self.infer(t)?;
                match ty {
                    Value::U0 => (t, 0),
                    Value::U1 => (t, 1),
                    ty => {
                        return Err(TypeError::mismatch(
                            ErrorKind::NotAType,
                            "expected a type",
                            "a universe".into(),
                            self.show_ty(&ty),
                        ))
                    }
                }
            }
        })
    }

    /// Infers the type of `t`.
    pub fn infer(&self, t: &Term) -> Result<(Term, Value)> {
        located(t, self.infer_inner(t))
    }

    fn infer_inner(&self, t: &Term) -> Result<(Term, Value)> {
        let universe = |l: Level| match l {
            0 => Ok(Value::U0),
            1 => Ok(Value::U1),
            _ => Err(TypeError::new(ErrorKind::CannotInfer, "this type is too large to have a type")),
        };
        Ok(match t {
            Term::Loc(s, inner) => {
                let (inner, ty) = self.infer(inner)?;
                (Term::Loc(*s, Arc::new(inner)), ty)
            }
            Term::Var(i) => {
                let n = self.types.len();
                let ty = n
                    .checked_sub(i.0 as usize + 1)
                    .map(|k| self.types[k].clone())
                    .ok_or_else(|| TypeError::new(ErrorKind::UnboundVariable, "unbound variable"))?;
                (t.clone(), ty)
            }
            Term::Global(g) => (t.clone(), g.ty.clone()),
            Term::U0
            | Term::U1
            | Term::Unit
            | Term::Bool
            | Term::Pi(..)
            | Term::Sigma(..)
            | Term::PathP { .. }
            | Term::Glue(_)
            | Term::HIso(..) => {
                let (t, l) = self.check_type(t)?;
                (t, universe(l)?)
            }
            Term::Star => (Term::Star, Value::Unit),
            Term::True | Term::False => (t.clone(), Value::Bool),
            Term::BoolElim { motive, tcase, fcase, scrut } => {
                let (ctx, _) = self.bind("b", Value::Bool);
                let (motive, _) = ctx.check_type(motive)?;
                let clo = Clo::Syn { env: self.env.clone(), body: Arc::new(motive.clone()) };
                let tcase = self.check(tcase, &clo.apply(Value::True))?;
                let fcase = self.check(fcase, &clo.apply(Value::False))?;
                let scrut = self.check(scrut, &Value::Bool)?;
                let ty = clo.apply(self.eval(&scrut));
                let t = Term::BoolElim {
                    motive: Arc::new(motive),
                    tcase: Arc::new(tcase),
                    fcase: Arc::new(fcase),
                    scrut: Arc::new(scrut),
                };
                (t, ty)
            }
            Term::Lam(_) | Term::GlueIntro { .. } => {
                return Err(TypeError::new(ErrorKind::CannotInfer, "cannot infer a type; add an annotation"))
            }
            Term::App(f, a) => {
                let (f, fty) = self.infer(f)?;
                let Value::Pi(dom, cod) = &fty else {
                    return Err(TypeError::mismatch(
                        ErrorKind::AppNonFunction,
                        "applying a non-function",
                        "a function type".into(),
                        self.show_ty(&fty),
                    ));
                };
                let a = self.check(a, dom)?;
                let ty = cod.apply(self.eval(&a));
                (Term::App(Arc::new(f), Arc::new(a)), ty)
            }
            Term::Pair(a, b) => {
                let (a, aty) = self.infer(a)?;
                let (b, bty) = self.infer(b)?;
                (Term::Pair(Arc::new(a), Arc::new(b)), Value::Sigma(Arc::new(aty), Clo::Const(Arc::new(bty))))
            }
            Term::Fst(p) | Term::Snd(p) => {
                let (p, pty) = self.infer(p)?;
                let Value::Sigma(dom, cod) = &pty else {
                    return Err(TypeError::mismatch(
                        ErrorKind::ProjNonPair,
                        "projecting from a non-pair",
                        "a Σ-type".into(),
                        self.show_ty(&pty),
                    ));
                };
                let p = Arc::new(p);
                if matches!(t, Term::Fst(_)) {
                    (Term::Fst(p), (**dom).clone())
                } else {
                    let ty = cod.apply(crate::nbe::fst(&self.eval(&p)));
                    (Term::Snd(p), ty)
                }
            }
            Term::PLam(body) => {
                let (ctx, i) = self.bind_i("i");
                let (body, ty_i) = ctx.infer(body)?;
                let line = IClo::Syn { env: self.env.clone(), body: Arc::new(ctx.quote_ty(&ty_i)) };
                let clo = IClo::Syn { env: self.env.clone(), body: Arc::new(body.clone()) };
                let _ = i;
                let ty = Value::PathP(line, Arc::new(clo.inst(&IVal::zero())), Arc::new(clo.inst(&IVal::one())));
                (Term::PLam(Arc::new(body)), ty)
            }
            Term::PApp(p, r) => {
                self.check_ival(r)?;
                let (p, pty) = self.infer(p)?;
                let Value::PathP(line, _, _) = &pty else {
                    return Err(TypeError::mismatch(
                        ErrorKind::PAppNonPath,
                        "applying a non-path to an interval point",
                        "a path type".into(),
                        self.show_ty(&pty),
                    ));
                };
                let ty = line.inst(&eval_ival(&self.env, r));
                (Term::PApp(Arc::new(p), r.clone()), ty)
            }
            Term::Fill(f) => self.infer_fill(f)?,
            Term::Unglue { ty, arg } => {
                let (ty, arg) = match ty {
                    Some(g) => {
                        let (g, _) = self.check_glue_data(g)?;
                        let gv = self.eval(&Term::Glue(Arc::new(g.clone())));
                        (g, self.check(arg, &gv)?)
                    }
                    None => {
                        let (arg, aty) = self.infer(arg)?;
                        let Value::Glue(g) = &aty else {
                            return Err(TypeError::mismatch(
                                ErrorKind::TypeMismatch,
                                "unglue expects an element of a Glue type",
                                "a Glue type".into(),
                                self.show_ty(&aty),
                            ));
                        };
                        (self.quoter().glue(g), arg)
                    }
                };
                let base = self.eval(&ty.base);
                (Term::Unglue { ty: Some(Arc::new(ty)), arg: Arc::new(arg) }, base)
            }
            Term::J(j) => self.infer_j(j)?,
            Term::IdHIso(a) => {
                let (a, _) = self.check_type(a)?;
                let av = self.eval(&a);
                (Term::IdHIso(Arc::new(a)), hiso_ty(av.clone(), av))
            }
            Term::HisoExt(g) => {
                let (g, l) = self.check_glue_data(g)?;
                let base = self.eval(&g.base);
                let ty = sigma(universe(l)?, |x| hiso_ty(x, base.clone()));
                (Term::HisoExt(Arc::new(g)), ty)
            }
            Term::Ann(t, a) => {
                let (a, _) = self.check_type(a)?;
                let av = self.eval(&a);
                (self.check(t, &av)?, av)
            }
        })
    }

    /// Checks `t` against `ty`.
    pub fn check(&self, t: &Term, ty: &Value) -> Result<Term> {
        located(t, self.check_inner(t, ty))
    }

    fn check_inner(&self, t: &Term, ty: &Value) -> Result<Term> {
        match (t, ty) {
            (Term::Loc(s, inner), _) => Ok(Term::Loc(*s, Arc::new(self.check(inner, ty)?))),
            (Term::Lam(body), Value::Pi(dom, cod)) => {
                let (ctx, x) = self.bind("x", (**dom).clone());
                Ok(Term::Lam(Arc::new(ctx.check(body, &cod.apply(x))?)))
            }
            (Term::Pair(a, b), Value::Sigma(dom, cod)) => {
                let a = self.check(a, dom)?;
                let b = self.check(b, &cod.apply(self.eval(&a)))?;
                Ok(Term::Pair(Arc::new(a), Arc::new(b)))
            }
            (Term::PLam(body), Value::PathP(line, left, right)) => {
                let (ctx, i) = self.bind_i("i");
                let body = ctx.check(body, &line.inst(&i))?;
                let clo = IClo::Syn { env: self.env.clone(), body: Arc::new(body.clone()) };
                for (r, end, name) in [(IVal::zero(), left, "left"), (IVal::one(), right, "right")] {
                    let ty_r = line.inst(&r);
                    let got = clo.inst(&r);
                    if !conv(&got, end, &ty_r) {
                        return Err(TypeError::mismatch(
                            ErrorKind::EndpointMismatch,
                            format!("the {name} endpoint of the path does not match its type"),
                            self.show(end, &ty_r),
                            self.show(&got, &ty_r),
                        ));
                    }
                }
                Ok(Term::PLam(Arc::new(body)))
            }
            (Term::GlueIntro { sys, base }, _) => self.check_glue_intro(sys, base, ty),
            (Term::Lam(_), _) | (Term::Pair(..), _) | (Term::PLam(_), _) => Err(TypeError::mismatch(
                ErrorKind::TypeMismatch,
                "this introduction form does not fit the expected type",
                self.show_ty(ty),
                String::from(match t {
                    Term::Lam(_) => "a function",
                    Term::Pair(..) => "a pair",
                    _ => "a path",
                }),
            )),
            _ => {
                let (t, got) = self.infer(t)?;
                if self.subtype(&got, ty) {
                    Ok(t)
                } else {
                    Err(TypeError::mismatch(
                        ErrorKind::TypeMismatch,
                        "type mismatch",
                        self.show_ty(ty),
                        self.show_ty(&got),
                    ))
                }
            }
        }
    }

    fn infer_fill(&self, f: &FillTerm) -> Result<(Term, Value)> {
        let (ctx_i, _) = self.bind_i("i");
        let (line, _) = ctx_i.check_type(&f.line)?;
        let line_clo = IClo::Syn { env: self.env.clone(), body: Arc::new(line.clone()) };
        let base = self.check(&f.base, &line_clo.inst(&IVal::zero()))?;
        let base_v = self.eval(&base);
        self.check_ival(&f.at)?;
        let mut sys: System<Arc<Term>> = Vec::new();
        let mut origins = Vec::new();
        for (k, (c, u)) in f.sys.iter().enumerate() {
            let c = located(u, self.check_cof(c))?;
            let cv = eval_cof(&self.env, &c);
            let mut pieces = Vec::new();
            for (face, s) in faces(&cv) {
                let ctx = self.restrict(&s);
                let (ctx_i, i) = ctx.bind_i("i");
                let line_s = line_clo.subst(&s);
                let body = ctx_i
                    .check(u, &line_s.inst(&i))
                    .map_err(|e| e.wrap(ErrorKind::BranchIllTyped, &format!("in branch {}", k + 1)))?;
                let at0 = IClo::Syn { env: ctx.env.clone(), body: Arc::new(body.clone()) }.inst(&IVal::zero());
                let ty0 = line_s.inst(&IVal::zero());
                let base_s = base_v.subst(&s);
                if !conv(&at0, &base_s, &ty0) {
                    let e = TypeError::mismatch(
                        ErrorKind::BoundaryMismatch,
                        format!("branch {} does not agree with the base at 0 on {}", k + 1, ctx.show_cof(&face)),
                        ctx.show(&base_s, &ty0),
                        ctx.show(&at0, &ty0),
                    );
                    return Err(at_term(u, e));
                }
                pieces.push((self.quoter().cof(&face), Arc::new(body)));
            }
            let before = sys.len();
            push_pieces(&mut sys, c, pieces);
            origins.extend(core::iter::repeat(k).take(sys.len() - before));
        }
        for a in 0..sys.len() {
            for b in a + 1..sys.len() {
                if origins[a] == origins[b] {
                    continue;
                }
                let (ca, ua) = &sys[a];
                let (cb, ub) = &sys[b];
                let both = eval_cof(&self.env, ca).and(&eval_cof(&self.env, cb));
                for (face, s) in faces(&both) {
                    let ctx = self.restrict(&s);
                    let i = ivar(fresh());
                    let va = IClo::Syn { env: ctx.env.clone(), body: ua.clone() }.inst(&i);
                    let vb = IClo::Syn { env: ctx.env.clone(), body: ub.clone() }.inst(&i);
                    if !conv(&va, &vb, &line_clo.subst(&s).inst(&i)) {
                        let e = TypeError::new(
                            ErrorKind::IncompatibleBranches,
                            format!(
                                "branches {} and {} disagree on {}",
                                origins[a] + 1,
                                origins[b] + 1,
                                ctx.show_cof(&face)
                            ),
                        );
                        return Err(at_term(&f.sys[origins[b]].1, e));
                    }
                }
            }
        }
        let ty = line_clo.inst(&eval_ival(&self.env, &f.at));
        let t = Term::Fill(Arc::new(FillTerm { line: Arc::new(line), sys, base: Arc::new(base), at: f.at.clone() }));
        Ok((t, ty))
    }

    /// Checks the data of a Glue type or an isomorphism extension.
    fn check_glue_data(&self, g: &GlueTerm) -> Result<(GlueTerm, Level)> {
        let (base, level) = self.check_type(&g.base)?;
        let base_v = self.eval(&base);
        let mut sys: System<(Arc<Term>, Arc<Term>)> = Vec::new();
        let mut origins = Vec::new();
        for (k, (c, (t, e))) in g.sys.iter().enumerate() {
            let c = located(t, self.check_cof(c))?;
            let cv = eval_cof(&self.env, &c);
            let mut pieces = Vec::new();
            for (face, s) in faces(&cv) {
                let ctx = self.restrict(&s);
                let (t1, lt) = ctx
                    .check_type(t)
                    .map_err(|err| err.wrap(ErrorKind::BranchIllTyped, &format!("in branch {}", k + 1)))?;
                if lt > level {
                    let err = TypeError::mismatch(
                        ErrorKind::BranchTypeMismatch,
                        format!("the type in branch {} lives in a larger universe than the base", k + 1),
                        level_name(level),
                        level_name(lt),
                    );
                    return Err(at_term(t, err));
                }
                let tv = ctx.eval(&t1);
                let e1 = ctx
                    .check(e, &hiso_ty(tv, base_v.subst(&s)))
                    .map_err(|err| err.wrap(ErrorKind::HIsoIllTyped, &format!("in branch {}", k + 1)))?;
                pieces.push((self.quoter().cof(&face), (Arc::new(t1), Arc::new(e1))));
            }
            let before = sys.len();
            push_pieces(&mut sys, c, pieces);
            origins.extend(core::iter::repeat(k).take(sys.len() - before));
        }
        for a in 0..sys.len() {
            for b in a + 1..sys.len() {
                if origins[a] == origins[b] {
                    continue;
                }
                let both = eval_cof(&self.env, &sys[a].0).and(&eval_cof(&self.env, &sys[b].0));
                for (face, s) in faces(&both) {
                    let ctx = self.restrict(&s);
                    let (ta, ea) = (ctx.eval(&sys[a].1 .0), ctx.eval(&sys[a].1 .1));
                    let (tb, eb) = (ctx.eval(&sys[b].1 .0), ctx.eval(&sys[b].1 .1));
                    let ok = conv_ty(&ta, &tb) && conv(&ea, &eb, &hiso_ty(ta, base_v.subst(&s)));
                    if !ok {
                        let err = TypeError::new(
                            ErrorKind::IncompatibleBranches,
                            format!(
                                "branches {} and {} disagree on {}",
                                origins[a] + 1,
                                origins[b] + 1,
                                ctx.show_cof(&face)
                            ),
                        );
                        return Err(at_term(&g.sys[origins[b]].1 .0, err));
                    }
                }
            }
        }
        Ok((GlueTerm { base: Arc::new(base), sys }, level))
    }

    fn check_glue_intro(&self, sys: &System<Arc<Term>>, base: &Term, ty: &Value) -> Result<Term> {
        let checked: Vec<(CofExpr, CofV)> = sys
            .iter()
            .map(|(c, t)| {
                let c = located(t, self.check_cof(c))?;
                let cv = eval_cof(&self.env, &c);
                Ok((c, cv))
            })
            .collect::<Result<_>>()?;
        let Value::Glue(g) = ty else {
            // The expected type has already reduced, and so must the element.
            if let Some(k) = checked.iter().position(|(_, cv)| cv.is_top()) {
                return self.check(&sys[k].1, ty);
            }
            if checked.iter().all(|(_, cv)| cv.is_bot()) {
                return self.check(base, ty);
            }
            return Err(TypeError::mismatch(
                ErrorKind::TypeMismatch,
                "glue expects a Glue type",
                self.show_ty(ty),
                "an element of a Glue type".into(),
            ));
        };
        let base = self.check(base, &g.base)?;
        let base_v = self.eval(&base);
        let ext_ty = CofV::any(g.sys.iter().map(|b| b.0.clone()));
        let ext_el = CofV::any(checked.iter().map(|b| b.1.clone()));
        if !ext_ty.equivalent(&ext_el, &mut |_| None) {
            return Err(TypeError::mismatch(
                ErrorKind::SystemMismatch,
                "the system of glue must have the same extent as the Glue type",
                self.show_cof(&ext_ty),
                self.show_cof(&ext_el),
            ));
        }
        let mut out: System<Arc<Term>> = Vec::new();
        let mut origins = Vec::new();
        for (k, ((c, cv), (_, t))) in checked.iter().zip(sys).enumerate() {
            let mut pieces = Vec::new();
            for (face, s) in faces(cv) {
                let ctx = self.restrict(&s);
                let ty_s = ty.subst(&s);
                if matches!(ty_s, Value::Glue(_)) {
                    return Err(at_term(
                        t,
                        TypeError::new(
                            ErrorKind::BranchIllTyped,
                            format!("branch {} does not decide the Glue type", k + 1),
                        ),
                    ));
                }
                let t1 = ctx
                    .check(t, &ty_s)
                    .map_err(|e| e.wrap(ErrorKind::BranchIllTyped, &format!("in branch {}", k + 1)))?;
                let fwd = unglue(&Arc::new(s.glue(g)), ctx.eval(&t1));
                let base_s = base_v.subst(&s);
                let bty = g.base.subst(&s);
                if !conv(&fwd, &base_s, &bty) {
                    let e = TypeError::mismatch(
                        ErrorKind::BoundaryMismatch,
                        format!("branch {} does not lie over the base on {}", k + 1, ctx.show_cof(&face)),
                        ctx.show(&base_s, &bty),
                        ctx.show(&fwd, &bty),
                    );
                    return Err(at_term(t, e));
                }
                pieces.push((self.quoter().cof(&face), Arc::new(t1)));
            }
            let before = out.len();
            push_pieces(&mut out, c.clone(), pieces);
            origins.extend(core::iter::repeat(k).take(out.len() - before));
        }
        for a in 0..out.len() {
            for b in a + 1..out.len() {
                if origins[a] == origins[b] {
                    continue;
                }
                let both = eval_cof(&self.env, &out[a].0).and(&eval_cof(&self.env, &out[b].0));
                for (face, s) in faces(&both) {
                    let ctx = self.restrict(&s);
                    let ty_s = ty.subst(&s);
                    if !conv(&ctx.eval(&out[a].1), &ctx.eval(&out[b].1), &ty_s) {
                        let e = TypeError::new(
                            ErrorKind::IncompatibleBranches,
                            format!(
                                "branches {} and {} disagree on {}",
                                origins[a] + 1,
                                origins[b] + 1,
                                ctx.show_cof(&face)
                            ),
                        );
                        return Err(at_term(&sys[origins[b]].1, e));
                    }
                }
            }
        }
        Ok(Term::GlueIntro { sys: Arc::new(out), base: Arc::new(base) })
    }

    fn infer_j(&self, j: &JTerm) -> Result<(Term, Value)> {
        let (ty, _) = self.check_type(&j.ty)?;
        let tyv = self.eval(&ty);
        let a = self.check(&j.a, &tyv)?;
        let av = self.eval(&a);
        let (ctx, x) = self.bind("x", tyv.clone());
        let (ctx, _) = ctx.bind("q", path(tyv.clone(), av.clone(), x));
        let (motive, _) = ctx.check_type(&j.motive)?;
        let motive_at = |x: Value, q: Value| eval(&self.env.push(x).push(q), &motive);
        let refl = plam(|_| av.clone());
        let d = self.check(&j.d, &motive_at(av.clone(), refl))?;
        let b = self.check(&j.b, &tyv)?;
        let bv = self.eval(&b);
        let p = self.check(&j.p, &path(tyv, av, bv.clone()))?;
        let result = motive_at(bv, self.eval(&p));
        let t = Term::J(Arc::new(JTerm {
            ty: Arc::new(ty),
            a: Arc::new(a),
            motive: Arc::new(motive),
            d: Arc::new(d),
            b: Arc::new(b),
            p: Arc::new(p),
        }));
        Ok((t, result))
    }
}

fn level_name(l: Level) -> String {
    match l {
        0 => "U0".into(),
        1 => "U1".into(),
        _ => "a large type".into(),
    }
}

/// Records the per-face elaborations of branch `k`. A branch whose faces all
/// elaborate alike stays whole; otherwise it is split into its clauses.
fn push_pieces<T: PartialEq>(sys: &mut System<T>, c: CofExpr, pieces: Vec<(CofExpr, T)>) {
    let uniform = pieces.windows(2).all(|w| w[0].1 == w[1].1);
    if uniform {
        if let Some((_, t)) = pieces.into_iter().next() {
            sys.push((c, t));
        }
    } else {
        sys.extend(pieces);
    }
}

/// Checks a closed definition `name : ty = body`.
pub fn check_def(name: &str, ty: &Term, body: &Term) -> Result<GlobalDef> {
    let ctx = Ctx::new();
    let (ty_term, _) = ctx.check_type(ty)?;
    let ty = ctx.eval(&ty_term);
    let term = ctx.check(body, &ty)?;
    let value = ctx.eval(&term);
    Ok(GlobalDef { name: name.to_string(), ty_term, term, ty, value })
}
