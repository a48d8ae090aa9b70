//! Printing surface trees back to source text.
//!
//! Output is fully bracketed where the grammar needs it, so reparsing gives
//! back the same tree.

use crate::ast::*;

/// Binding strength of the surrounding position.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Prec {
    Expr,
    Pi,
    Sigma,
    At,
    App,
    Atom,
}

pub fn print_expr(e: &Expr) -> String {
    expr(e, Prec::Expr)
}

pub fn print_decls(ds: &[Decl]) -> String {
    let mut out = String::new();
    for d in ds {
        match d {
            Decl::Def { name, ty, body, .. } => {
                out.push_str(&format!("def {name} : {} =\n  {}\n\n", print_expr(ty), print_expr(body)));
            }
            Decl::Import { path, .. } => out.push_str(&format!("import {path:?}\n\n")),
        }
    }
    out
}

fn wrap(s: String, need: bool) -> String {
    if need {
        format!("({s})")
    } else {
        s
    }
}

/// A non-dependent domain written `(x : A)` would read back as a binder.
fn domain(e: &Expr, prec: Prec) -> String {
    match e.kind {
        ExprKind::Ann(..) => format!("({})", expr(e, Prec::Atom)),
        _ => expr(e, prec),
    }
}

fn line(l: &Line) -> String {
    format!("({}. {})", l.var, print_expr(&l.body))
}

fn system<T>(sys: &System<T>, body: impl Fn(&T) -> String) -> String {
    let items: Vec<String> = sys.iter().map(|(c, t)| format!("{} -> {}", cof(c, 0), body(t))).collect();
    format!("[{}]", items.join(", "))
}

fn glue_branch((t, e): &(Expr, Expr)) -> String {
    format!("({}, {})", print_expr(t), print_expr(e))
}

fn expr(e: &Expr, prec: Prec) -> String {
    use ExprKind::*;
    let at = |e: &Expr| expr(e, Prec::Atom);
    match &e.kind {
        Name(x) => x.clone(),
        U0 => "U0".into(),
        U1 => "U1".into(),
        Unit => "Unit".into(),
        Bool => "Bool".into(),
        Star => "star".into(),
        True => "true".into(),
        False => "false".into(),
        Lam(x, b) => wrap(format!("\\{x}. {}", expr(b, Prec::Expr)), prec > Prec::Expr),
        PLam(i, b) => wrap(format!("<{i}> {}", expr(b, Prec::Expr)), prec > Prec::Expr),
        Pi(Some(x), a, b) => wrap(format!("({x} : {}) -> {}", print_expr(a), expr(b, Prec::Pi)), prec > Prec::Pi),
        Pi(None, a, b) => wrap(format!("{} -> {}", domain(a, Prec::Sigma), expr(b, Prec::Pi)), prec > Prec::Pi),
        Sigma(Some(x), a, b) => {
            wrap(format!("({x} : {}) * {}", print_expr(a), expr(b, Prec::Sigma)), prec > Prec::Sigma)
        }
        Sigma(None, a, b) => wrap(format!("{} * {}", domain(a, Prec::At), expr(b, Prec::Sigma)), prec > Prec::Sigma),
        PApp(p, r) => wrap(format!("{} @ {}", expr(p, Prec::At), ival(r, 2)), prec > Prec::At),
        App(f, a) => wrap(format!("{} {}", expr(f, Prec::App), at(a)), prec > Prec::App),
        Pair(a, b) => format!("({}, {})", print_expr(a), print_expr(b)),
        Proj(p, k) => format!("{}.{}", at(p), k.name()),
        Ann(t, a) => format!("({} : {})", print_expr(t), print_expr(a)),
        _ => wrap(keyword_form(e), prec > Prec::App),
    }
}

fn keyword_form(e: &Expr) -> String {
    use ExprKind::*;
    let at = |e: &Expr| expr(e, Prec::Atom);
    match &e.kind {
        Path(a, x, y) => format!("Path {} {} {}", at(a), at(x), at(y)),
        PathP(l, x, y) => format!("PathP {} {} {}", line(l), at(x), at(y)),
        Refl(a) => format!("refl {}", at(a)),
        Fill(l, sys, base, r) => format!("fill {} {} {} @ {}", line(l), system(sys, print_expr), at(base), ival(r, 2)),
        Comp(l, sys, base) => format!("comp {} {} {}", line(l), system(sys, print_expr), at(base)),
        Transp(l, base) => format!("transp {} {}", line(l), at(base)),
        Glue(b, sys) => format!("Glue {} {}", at(b), system(sys, glue_branch)),
        GlueIntro(sys, b) => format!("glue {} {}", system(sys, print_expr), at(b)),
        Unglue(a) => format!("unglue {}", at(a)),
        J(j) => format!(
            "J {} {} ({} {}. {}) {} {} {}",
            at(&j.ty),
            at(&j.a),
            j.x,
            j.q,
            print_expr(&j.motive),
            at(&j.d),
            at(&j.b),
            at(&j.p)
        ),
        PathRes(p, r) => format!("pathres {} {}", at(p), ival(r, 2)),
        BoolElim(m, t, f, s) => format!("boolelim {} {} {} {}", line(m), at(t), at(f), at(s)),
        HIso(t, a) => format!("HIso {} {}", at(t), at(a)),
        IdHIso(a) => format!("idhiso {}", at(a)),
        HisoExt(b, sys) => format!("hisoext {} {}", at(b), system(sys, glue_branch)),
        _ => unreachable!("not a keyword form"),
    }
}

/// `level` 0 allows joins, 1 allows meets, 2 only atoms.
fn ival(r: &IvalExpr, level: u8) -> String {
    match &r.kind {
        IvalKind::Zero => "0".into(),
        IvalKind::One => "1".into(),
        IvalKind::Var(x) => x.clone(),
        IvalKind::Min(a, b) => wrap(format!("{} /\\ {}", ival(a, 1), ival(b, 2)), level > 1),
        IvalKind::Max(a, b) => wrap(format!("{} \\/ {}", ival(a, 0), ival(b, 1)), level > 0),
    }
}

/// `level` as for [`ival`].
fn cof(c: &CofExpr, level: u8) -> String {
    match c {
        CofExpr::Top => "TT".into(),
        CofExpr::Bot => "FF".into(),
        CofExpr::Eq(r, b) => format!("{} = {}", ival(r, 0), u8::from(*b)),
        CofExpr::And(a, b) => wrap(format!("{} /\\ {}", cof(a, 1), cof(b, 2)), level > 1),
        CofExpr::Or(a, b) => wrap(format!("{} \\/ {}", cof(a, 0), cof(b, 1)), level > 0),
        CofExpr::Atom(l, r, ty) => {
            wrap(format!("{} ~ {} : {}", expr(l, Prec::At), expr(r, Prec::At), expr(ty, Prec::At)), level > 0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_expr;
    use nctt_core::Span;
    use proptest::prelude::*;

    fn roundtrip(s: &str) {
        let e = parse_expr(s).unwrap();
        let printed = print_expr(&e);
        let again = parse_expr(&printed).unwrap_or_else(|err| panic!("{printed}: {err}"));
        assert_eq!(e, again, "{printed}");
    }

    #[test]
    fn fixed_examples() {
        for s in [
            "(A : U0) -> A -> A",
            "(A * B) -> C",
            "A * B * C",
            "((x : A)) -> B",
            "\\f x. f (f x)",
            "<i> p @ (i /\\ j) @ k",
            "fill (i. A) [i = 0 \\/ j = 1 /\\ k = 0 -> u, a ~ b : A -> v] a0 @ r",
            "Glue B [i = 0 -> (T, e), i = 1 -> (B, idhiso B)]",
            "J A a (x q. Path A a x) d b p",
            "(e.fwd x).1",
            "(a, b, c).2",
        ] {
            roundtrip(s);
        }
    }

    fn e(kind: ExprKind) -> Expr {
        Expr { kind, span: Span::default() }
    }

    fn name() -> impl Strategy<Value = String> {
        prop::sample::select(vec!["x", "y", "f", "A", "i"]).prop_map(String::from)
    }

    fn ival_strategy() -> impl Strategy<Value = IvalExpr> {
        let leaf = prop_oneof![Just(IvalKind::Zero), Just(IvalKind::One), name().prop_map(IvalKind::Var),]
            .prop_map(|kind| IvalExpr { kind, span: Span::default() });
        leaf.prop_recursive(3, 8, 2, |inner| {
            (inner.clone(), inner, any::<bool>()).prop_map(|(a, b, meet)| {
                let (a, b) = (Box::new(a), Box::new(b));
                let kind = if meet { IvalKind::Min(a, b) } else { IvalKind::Max(a, b) };
                IvalExpr { kind, span: Span::default() }
            })
        })
    }

    fn cof_strategy(term: BoxedStrategy<Expr>) -> impl Strategy<Value = CofExpr> {
        let leaf = prop_oneof![
            Just(CofExpr::Top),
            Just(CofExpr::Bot),
            (ival_strategy(), any::<bool>()).prop_map(|(r, b)| CofExpr::Eq(r, b)),
            (term.clone(), term.clone(), term).prop_map(|(l, r, t)| CofExpr::Atom(
                Box::new(l),
                Box::new(r),
                Box::new(t)
            )),
        ];
        leaf.prop_recursive(2, 6, 2, |inner| {
            (inner.clone(), inner, any::<bool>()).prop_map(|(a, b, and)| {
                if and {
                    CofExpr::And(Box::new(a), Box::new(b))
                } else {
                    CofExpr::Or(Box::new(a), Box::new(b))
                }
            })
        })
    }

    fn expr_strategy() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            name().prop_map(|x| e(ExprKind::Name(x))),
            Just(e(ExprKind::U0)),
            Just(e(ExprKind::Bool)),
            Just(e(ExprKind::Star)),
            Just(e(ExprKind::True)),
        ];
        leaf.prop_recursive(4, 40, 3, |inner| {
            let b = |x: Expr| Box::new(x);
            let line = (name(), inner.clone()).prop_map(move |(var, body)| Line { var, body: Box::new(body) }).boxed();
            let sys = prop::collection::vec((cof_strategy(inner.clone().boxed()), inner.clone()), 0..3).boxed();
            prop_oneof![
                (prop::option::of(name()), inner.clone(), inner.clone()).prop_map(move |(x, a, c)| e(ExprKind::Pi(
                    x,
                    b(a),
                    b(c)
                ))),
                (prop::option::of(name()), inner.clone(), inner.clone()).prop_map(move |(x, a, c)| e(ExprKind::Sigma(
                    x,
                    b(a),
                    b(c)
                ))),
                (name(), inner.clone()).prop_map(move |(x, t)| e(ExprKind::Lam(x, b(t)))),
                (name(), inner.clone()).prop_map(move |(x, t)| e(ExprKind::PLam(x, b(t)))),
                (inner.clone(), inner.clone()).prop_map(move |(f, a)| e(ExprKind::App(b(f), b(a)))),
                (inner.clone(), inner.clone()).prop_map(move |(x, y)| e(ExprKind::Pair(b(x), b(y)))),
                (inner.clone(), inner.clone()).prop_map(move |(x, y)| e(ExprKind::Ann(b(x), b(y)))),
                (inner.clone(), prop::sample::select(vec![Proj::Fst, Proj::Snd, Proj::Fwd, Proj::HRet]))
                    .prop_map(move |(x, p)| e(ExprKind::Proj(b(x), p))),
                (inner.clone(), ival_strategy()).prop_map(move |(p, r)| e(ExprKind::PApp(b(p), r))),
                (line.clone(), sys.clone(), inner.clone(), ival_strategy())
                    .prop_map(move |(l, s, a, r)| e(ExprKind::Fill(l, s, b(a), r))),
                (line.clone(), inner.clone()).prop_map(move |(l, a)| e(ExprKind::Transp(l, b(a)))),
                (inner.clone(), inner.clone(), inner.clone()).prop_map(move |(a, x, y)| e(ExprKind::Path(
                    b(a),
                    b(x),
                    b(y)
                ))),
                (line, inner.clone(), inner.clone(), inner.clone())
                    .prop_map(move |(m, t, f, s)| e(ExprKind::BoolElim(m, b(t), b(f), b(s)))),
                (sys, inner.clone()).prop_map(move |(s, a)| e(ExprKind::GlueIntro(s, b(a)))),
                (inner.clone(), inner.clone(), inner.clone(), inner).prop_map(move |(t, x, d, p)| e(ExprKind::J(
                    Box::new(JExpr {
                        ty: t,
                        a: x,
                        x: "x".into(),
                        q: "q".into(),
                        motive: d.clone(),
                        d: d.clone(),
                        b: d,
                        p,
                    })
                ))),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(t in expr_strategy()) {
            let printed = print_expr(&t);
            let again = parse_expr(&printed).map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
            prop_assert_eq!(t, again, "{}", printed);
        }
    }
}
