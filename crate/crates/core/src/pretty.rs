//! Printing core terms in surface-like notation.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::interval::{Cof, Interval};
use crate::syntax::{CofExpr, IExpr, Idx, System, Term};

/// Prints `t` in a context whose term and interval variables are named
/// `names` and `inames`, innermost last.
pub fn print(t: &Term, names: &[String], inames: &[String]) -> String {
    let mut p = Printer { names: names.to_vec(), inames: inames.to_vec() };
    p.term(t, Prec::Top)
}

pub fn print_cof(c: &CofExpr, names: &[String], inames: &[String]) -> String {
    let mut p = Printer { names: names.to_vec(), inames: inames.to_vec() };
    p.cof(c, true)
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Prec {
    Top,
    Sigma,
    App,
    Atom,
}

struct Printer {
    names: Vec<String>,
    inames: Vec<String>,
}

fn paren(s: String, need: bool) -> String {
    if need {
        format!("({s})")
    } else {
        s
    }
}

fn fresh_name(base: &str, taken: &[String]) -> String {
    if !taken.iter().any(|n| n == base) {
        return base.to_string();
    }
    (1..).map(|k| format!("{base}{k}")).find(|n| !taken.iter().any(|m| m == n)).unwrap()
}

impl Printer {
    fn var(&self, i: Idx) -> String {
        let n = self.names.len();
        match n.checked_sub(i.0 as usize + 1) {
            Some(k) => self.names[k].clone(),
            None => format!("#{}", i.0),
        }
    }

    fn ivar(&self, i: Idx) -> String {
        let n = self.inames.len();
        match n.checked_sub(i.0 as usize + 1) {
            Some(k) => self.inames[k].clone(),
            None => format!("#i{}", i.0),
        }
    }

    fn bind<R>(&mut self, base: &str, f: impl FnOnce(&mut Self, &str) -> R) -> R {
        let x = fresh_name(base, &self.names);
        self.names.push(x.clone());
        let out = f(self, &x);
        self.names.pop();
        out
    }

    fn bind_i<R>(&mut self, f: impl FnOnce(&mut Self, &str) -> R) -> R {
        let i = fresh_name("i", &self.inames);
        self.inames.push(i.clone());
        let out = f(self, &i);
        self.inames.pop();
        out
    }

    fn interval(&self, r: &IExpr, top: bool) -> String {
        match r {
            Interval::Zero => "0".into(),
            Interval::One => "1".into(),
            Interval::Var(i) => self.ivar(*i),
            Interval::Min(a, b) => paren(format!("{} /\\ {}", self.interval(a, false), self.interval(b, false)), !top),
            Interval::Max(a, b) => paren(format!("{} \\/ {}", self.interval(a, false), self.interval(b, false)), !top),
        }
    }

    fn cof(&mut self, c: &CofExpr, top: bool) -> String {
        match c {
            Cof::Top => "TT".into(),
            Cof::Bot => "FF".into(),
            Cof::EqZero(r) => format!("{} = 0", self.interval(r, false)),
            Cof::EqOne(r) => format!("{} = 1", self.interval(r, false)),
            Cof::And(a, b) => {
                let s = format!("{} /\\ {}", self.cof(a, false), self.cof(b, false));
                paren(s, !top)
            }
            Cof::Or(a, b) => {
                let s = format!("{} \\/ {}", self.cof(a, false), self.cof(b, false));
                paren(s, !top)
            }
            Cof::Atom(eq) => {
                let s = format!(
                    "{} ~ {} : {}",
                    self.term(&eq.lhs, Prec::App),
                    self.term(&eq.rhs, Prec::App),
                    self.term(&eq.ty, Prec::App)
                );
                paren(s, !top)
            }
        }
    }

    fn system<T>(&mut self, sys: &System<T>, mut body: impl FnMut(&mut Self, &T) -> String) -> String {
        let items: Vec<String> = sys
            .iter()
            .map(|(c, t)| {
                let c = self.cof(c, true);
                format!("{c} -> {}", body(self, t))
            })
            .collect();
        format!("[{}]", items.join(", "))
    }

    fn term(&mut self, t: &Term, prec: Prec) -> String {
        match t {
            Term::Var(i) => self.var(*i),
            Term::Global(g) => g.name.clone(),
            Term::U0 => "U0".into(),
            Term::U1 => "U1".into(),
            Term::Unit => "Unit".into(),
            Term::Star => "star".into(),
            Term::Bool => "Bool".into(),
            Term::True => "true".into(),
            Term::False => "false".into(),
            Term::BoolElim { motive, tcase, fcase, scrut } => {
                let m = self.bind("b", |p, x| format!("({x}. {})", p.term(motive, Prec::Top)));
                let s = format!(
                    "boolelim {m} {} {} {}",
                    self.term(tcase, Prec::Atom),
                    self.term(fcase, Prec::Atom),
                    self.term(scrut, Prec::Atom)
                );
                paren(s, prec > Prec::App)
            }
            Term::Pi(a, b) => {
                let dom = self.term(a, Prec::App);
                let s = if b.mentions_term_var(Idx(0)) {
                    let dom = self.term(a, Prec::Top);
                    self.bind("x", |p, x| format!("({x} : {dom}) -> {}", p.term(b, Prec::Top)))
                } else {
                    self.bind("_", |p, _| format!("{dom} -> {}", p.term(b, Prec::Top)))
                };
                paren(s, prec > Prec::Top)
            }
            Term::Sigma(a, b) => {
                let dom = self.term(a, Prec::Top);
                let s = self.bind("x", |p, x| format!("({x} : {dom}) * {}", p.term(b, Prec::Sigma)));
                paren(s, prec > Prec::Sigma)
            }
            Term::Lam(b) => {
                let s = self.bind("x", |p, x| format!("\\{x}. {}", p.term(b, Prec::Top)));
                paren(s, prec > Prec::Top)
            }
            Term::App(f, a) => {
                let s = format!("{} {}", self.term(f, Prec::App), self.term(a, Prec::Atom));
                paren(s, prec > Prec::App)
            }
            Term::Pair(a, b) => format!("({}, {})", self.term(a, Prec::Top), self.term(b, Prec::Top)),
            Term::Fst(p) => format!("{}.1", self.term(p, Prec::Atom)),
            Term::Snd(p) => format!("{}.2", self.term(p, Prec::Atom)),
            Term::PathP { line, left, right } => {
                let (l, r) = (self.term(left, Prec::Atom), self.term(right, Prec::Atom));
                let s = self.bind_i(|p, i| format!("PathP ({i}. {}) {l} {r}", p.term(line, Prec::Top)));
                paren(s, prec > Prec::App)
            }
            Term::PLam(b) => {
                let s = self.bind_i(|p, i| format!("<{i}> {}", p.term(b, Prec::Top)));
                paren(s, prec > Prec::Top)
            }
            Term::PApp(p, r) => {
                let s = format!("{} @ {}", self.term(p, Prec::App), paren(self.interval(r, true), !is_atomic(r)));
                paren(s, prec > Prec::App)
            }
            Term::Fill(f) => {
                let (line, sys) = self.bind_i(|p, i| {
                    let line = format!("({i}. {})", p.term(&f.line, Prec::Top));
                    (line, i.to_string())
                });
                let sys = {
                    self.inames.push(sys);
                    let out = {
                        let mut items = Vec::new();
                        for (c, u) in &f.sys {
                            self.inames.pop();
                            let c = self.cof(c, true);
                            let i = fresh_name("i", &self.inames);
                            self.inames.push(i);
                            items.push(format!("{c} -> {}", self.term(u, Prec::Top)));
                        }
                        format!("[{}]", items.join(", "))
                    };
                    self.inames.pop();
                    out
                };
                let base = self.term(&f.base, Prec::Atom);
                let s = format!("fill {line} {sys} {base} @ {}", paren(self.interval(&f.at, true), !is_atomic(&f.at)));
                paren(s, prec > Prec::App)
            }
            Term::Glue(g) => {
                let base = self.term(&g.base, Prec::Atom);
                let sys =
                    self.system(&g.sys, |p, (t, e)| format!("({}, {})", p.term(t, Prec::Top), p.term(e, Prec::Top)));
                paren(format!("Glue {base} {sys}"), prec > Prec::App)
            }
            Term::GlueIntro { sys, base } => {
                let sys = self.system(sys, |p, t| p.term(t, Prec::Top));
                paren(format!("glue {sys} {}", self.term(base, Prec::Atom)), prec > Prec::App)
            }
            Term::Unglue { arg, .. } => paren(format!("unglue {}", self.term(arg, Prec::Atom)), prec > Prec::App),
            Term::J(j) => {
                let motive =
                    self.bind("x", |p, x| p.bind("q", |p, q| format!("({x} {q}. {})", p.term(&j.motive, Prec::Top))));
                let s = format!(
                    "J {} {} {motive} {} {} {}",
                    self.term(&j.ty, Prec::Atom),
                    self.term(&j.a, Prec::Atom),
                    self.term(&j.d, Prec::Atom),
                    self.term(&j.b, Prec::Atom),
                    self.term(&j.p, Prec::Atom)
                );
                paren(s, prec > Prec::App)
            }
            Term::HIso(a, b) => {
                let s = format!("HIso {} {}", self.term(a, Prec::Atom), self.term(b, Prec::Atom));
                paren(s, prec > Prec::App)
            }
            Term::IdHIso(a) => paren(format!("idhiso {}", self.term(a, Prec::Atom)), prec > Prec::App),
            Term::HisoExt(g) => {
                let base = self.term(&g.base, Prec::Atom);
                let sys =
                    self.system(&g.sys, |p, (t, e)| format!("({}, {})", p.term(t, Prec::Top), p.term(e, Prec::Top)));
                paren(format!("hisoext {base} {sys}"), prec > Prec::App)
            }
            Term::Ann(t, a) => format!("({} : {})", self.term(t, Prec::Top), self.term(a, Prec::Top)),
            Term::Loc(_, t) => self.term(t, prec),
        }
    }
}

fn is_atomic(r: &IExpr) -> bool {
    matches!(r, Interval::Zero | Interval::One | Interval::Var(_))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::sync::Arc;

    #[test]
    fn prints_binders_with_fresh_names() {
        let t = Term::lam(Term::lam(Term::app(Term::var(1), Term::var(0))));
        assert_eq!(print(&t, &[], &[]), "\\x. \\x1. x x1");
    }

    #[test]
    fn prints_non_dependent_arrows() {
        let t = Term::pi(Term::Bool, Term::Bool);
        assert_eq!(print(&t, &[], &[]), "Bool -> Bool");
    }

    #[test]
    fn arrows_in_sigma_codomains_are_bracketed() {
        let t = Term::sigma(Term::Bool, Term::pi(Term::Bool, Term::Bool));
        assert_eq!(print(&t, &[], &[]), "(x : Bool) * (Bool -> Bool)");
    }

    #[test]
    fn prints_paths_and_intervals() {
        let p = Term::plam(Term::papp(Term::var(0), Interval::min(Interval::Var(Idx(0)), Interval::Var(Idx(1)))));
        let s = print(&p, &["p".into()], &["j".into()]);
        assert_eq!(s, "<i> p @ (i /\\ j)");
        let t = Term::fill(
            Term::Bool,
            alloc::vec![(Cof::EqZero(Interval::Var(Idx(0))), Arc::new(Term::True))],
            Term::True,
            Interval::One,
        );
        assert_eq!(print(&t, &[], &["j".into()]), "fill (i. Bool) [j = 0 -> true] true @ 1");
    }
}
