//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use nctt::elab::elaborate;
use nctt::parser::parse_expr;
use nctt::{Error, Options, Session};
use nctt_core::glue::{hiso_fwd, hiso_ty, hisoext};
use nctt_core::interval::{Cof, CofNf, Interval, IntervalNf};
use nctt_core::kan::fill;
use nctt_core::nbe::eval::{apply, eval, fst, glue_intro, glue_ty, papply, snd, unglue};
use nctt_core::nbe::subst::{faces, Subst};
use nctt_core::nbe::value::{iabs, ivar, Thunk};
use nctt_core::nbe::{conv, conv_ty, fresh, CofV, Env, IClo, IVal, Lvl, Value};
use nctt_core::{Ctx, Term};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Tubes = Vec<(CofV, IClo)>;
type Criterion<'a> = (&'static str, &'static str, Box<dyn Fn() -> Outcome + 'a>);

fn crate_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn prelude() -> Session {
    Session::new(&Options::default()).unwrap_or_else(|e| panic!("prelude failed to check: {e}"))
}

/// Elaborates and checks a closed expression, returning its value and type.
fn closed(s: &Session, src: &str) -> (Value, Value) {
    let e = parse_expr(src).unwrap_or_else(|e| panic!("{src}: {e}"));
    let t = elaborate(s.globals(), &e).unwrap_or_else(|e| panic!("{src}: {e}"));
    let ctx = Ctx::new();
    let (t, ty) = ctx.infer(&t).unwrap_or_else(|e| panic!("{src}: {e}"));
    (ctx.eval(&t), ty)
}

/// A line of types `i. T`, checked to be a type for every `i`.
fn line(s: &Session, ty: &str) -> IClo {
    let src = format!("<i> {ty}");
    let e = parse_expr(&src).unwrap_or_else(|e| panic!("{src}: {e}"));
    let t = elaborate(s.globals(), &e).unwrap_or_else(|e| panic!("{src}: {e}"));
    let Term::PLam(body) = t.unloc() else { unreachable!("elaborated a path abstraction") };
    let (ctx, _) = Ctx::new().bind_i("i");
    let (body, _) = ctx.check_type(body).unwrap_or_else(|e| panic!("{ty}: {e}"));
    iabs(|i| eval(&Env::default().push_i(i), &body))
}

fn set(l: Lvl, r: IVal) -> Subst {
    Subst::interval(l, r)
}

// AC1 -------------------------------------------------------------------------

type TestCof = Cof<u8, u8>;

const IVARS: u8 = 3;
const ATOMS: u8 = 2;

fn gen_ival(rng: &mut ChaCha8Rng, depth: u32) -> Interval<u8> {
    match rng.gen_range(0..if depth == 0 { 4 } else { 6 }) {
        0 => Interval::Zero,
        1 => Interval::One,
        2 | 3 => Interval::Var(rng.gen_range(0..IVARS)),
        4 => Interval::min(gen_ival(rng, depth - 1), gen_ival(rng, depth - 1)),
        _ => Interval::max(gen_ival(rng, depth - 1), gen_ival(rng, depth - 1)),
    }
}

fn gen_cof(rng: &mut ChaCha8Rng, depth: u32) -> TestCof {
    match rng.gen_range(0..if depth == 0 { 5 } else { 8 }) {
        0 => [Cof::Top, Cof::Bot][rng.gen_range(0..2)].clone(),
        1 | 2 => Cof::EqZero(gen_ival(rng, depth.min(2))),
        3 => Cof::EqOne(gen_ival(rng, depth.min(2))),
        4 => Cof::Atom(rng.gen_range(0..ATOMS)),
        5 | 6 => Cof::and(gen_cof(rng, depth - 1), gen_cof(rng, depth - 1)),
        _ => Cof::or(gen_cof(rng, depth - 1), gen_cof(rng, depth - 1)),
    }
}

/// `None` is an interior point of the interval.
fn holds(c: &TestCof, ivals: &[Option<bool>], atoms: &[bool]) -> bool {
    let val = |v: &u8| ivals[*v as usize];
    match c {
        Cof::Top => true,
        Cof::Bot => false,
        Cof::EqZero(r) => r.eval(&val) == Some(false),
        Cof::EqOne(r) => r.eval(&val) == Some(true),
        Cof::And(a, b) => holds(a, ivals, atoms) && holds(b, ivals, atoms),
        Cof::Or(a, b) => holds(a, ivals, atoms) || holds(b, ivals, atoms),
        Cof::Atom(a) => atoms[*a as usize],
    }
}

fn valuations(points: &[Option<bool>]) -> Vec<(Vec<Option<bool>>, Vec<bool>)> {
    let n = points.len();
    let mut out = Vec::new();
    for code in 0..n.pow(IVARS as u32) {
        let ivals: Vec<_> = (0..IVARS as u32).map(|k| points[code / n.pow(k) % n]).collect();
        for bits in 0..1usize << ATOMS {
            out.push((ivals.clone(), (0..ATOMS).map(|a| bits >> a & 1 == 1).collect()));
        }
    }
    out
}

fn valid(phi: &TestCof, psi: &TestCof, vals: &[(Vec<Option<bool>>, Vec<bool>)]) -> bool {
    vals.iter().all(|(i, a)| !holds(phi, i, a) || holds(psi, i, a))
}

fn ac1() -> Outcome {
    const CASES: usize = 200_000;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let cube = valuations(&[Some(false), None, Some(true)]);
    let corners = valuations(&[Some(false), Some(true)]);
    let (mut entailed, mut boolean_only) = (0, 0);
    for n in 0..CASES {
        let phi = gen_cof(&mut rng, 4);
        // Mix unrelated goals with ones that are often entailed.
        let psi = match n % 3 {
            0 => gen_cof(&mut rng, 4),
            1 => Cof::or(phi.clone(), gen_cof(&mut rng, 2)),
            _ => Cof::and(phi.clone(), gen_cof(&mut rng, 1)),
        };
        let oracle = valid(&phi, &psi, &cube);
        let solver = phi.normalize().entails(&psi.normalize(), &mut |_| None);
        if oracle != solver {
            return Err(format!("disagreement on {phi:?} |- {psi:?}: oracle {oracle}, solver {solver}"));
        }
        // Endpoint valuations validate more, such as `i = 0 \/ i = 1`, but never less.
        if !valid(&phi, &psi, &corners) {
            if solver {
                return Err(format!("{phi:?} |- {psi:?} fails at an endpoint valuation"));
            }
        } else if !solver {
            boolean_only += 1;
        }
        entailed += solver as usize;
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{CASES} cases, {entailed} entailed, {boolean_only} valid only at endpoints, {:.1}s",
        elapsed.as_secs_f64()
    ))
}

// Corpus of lines ---------------------------------------------------------------

#[derive(Clone, Debug)]
enum Ty {
    Unit,
    Bool,
    U0,
    Pi(Box<Ty>, Box<Ty>),
    Sigma(Box<Ty>, Box<Ty>),
    /// `(x : Bool) * boolelim (_. U0) Unit Bool x`.
    DepSigma,
    Path(Box<Ty>),
    /// `ua notIso @ i`.
    UaNot,
    /// Glue over a small type with identity isomorphisms on `i = 0`, and on `i = 1` if set.
    GlueId(Box<Ty>, bool),
}

const FORMERS: [&str; 7] = ["Unit", "Bool", "Pi", "Sigma", "PathP", "Glue", "U0"];

impl Ty {
    fn render(&self) -> String {
        match self {
            Ty::Unit => "Unit".into(),
            Ty::Bool => "Bool".into(),
            Ty::U0 => "U0".into(),
            Ty::Pi(a, b) => format!("({}) -> ({})", a.render(), b.render()),
            Ty::Sigma(a, b) => format!("({}) * ({})", a.render(), b.render()),
            Ty::DepSigma => "(x : Bool) * boolelim (_. U0) Unit Bool x".into(),
            Ty::Path(a) => {
                let el = a.element().expect("path types are over closed types");
                format!("Path ({}) ({el}) ({el})", a.render())
            }
            Ty::UaNot => "Glue Bool [i = 0 -> (Bool, notIso), i = 1 -> (Bool, idhiso Bool)]".into(),
            Ty::GlueId(b, both) => {
                let b = b.render();
                let mut s = format!("Glue ({b}) [i = 0 -> (({b}), idhiso ({b}))");
                if *both {
                    s += &format!(", i = 1 -> (({b}), idhiso ({b}))");
                }
                s + "]"
            }
        }
    }

    /// A canonical element, for types that do not vary along the line.
    fn element(&self) -> Option<String> {
        Some(match self {
            Ty::Unit => "star".into(),
            Ty::Bool => "true".into(),
            Ty::U0 => "Bool".into(),
            Ty::Pi(_, b) => format!("\\_. {}", b.element()?),
            Ty::Sigma(a, b) => format!("({}, {})", a.element()?, b.element()?),
            Ty::DepSigma => "(true, star)".into(),
            Ty::Path(a) => format!("refl ({})", a.element()?),
            Ty::UaNot | Ty::GlueId(..) => return None,
        })
    }

    fn varies(&self) -> bool {
        match self {
            Ty::Pi(a, b) | Ty::Sigma(a, b) => a.varies() || b.varies(),
            Ty::UaNot | Ty::GlueId(..) => true,
            _ => false,
        }
    }

    fn former(&self) -> &'static str {
        match self {
            Ty::Unit => "Unit",
            Ty::Bool => "Bool",
            Ty::U0 => "U0",
            Ty::Pi(..) => "Pi",
            Ty::Sigma(..) | Ty::DepSigma => "Sigma",
            Ty::Path(_) => "PathP",
            Ty::UaNot | Ty::GlueId(..) => "Glue",
        }
    }

    fn constant_domain(&self) -> bool {
        matches!(self, Ty::Pi(a, _) if !a.varies())
    }
}

fn small(rng: &mut ChaCha8Rng) -> Ty {
    match rng.gen_range(0..4) {
        0 => Ty::Bool,
        1 => Ty::Unit,
        2 => Ty::Sigma(Box::new(Ty::Bool), Box::new(Ty::Bool)),
        _ => Ty::Pi(Box::new(Ty::Bool), Box::new(Ty::Bool)),
    }
}

fn gen_ty(rng: &mut ChaCha8Rng, depth: u32, varying: bool) -> Ty {
    let former = if depth == 0 { rng.gen_range(0..3) } else { rng.gen_range(0..8) };
    gen_with(rng, former, depth, varying)
}

fn gen_with(rng: &mut ChaCha8Rng, former: usize, depth: u32, varying: bool) -> Ty {
    let sub = depth.saturating_sub(1);
    match former {
        0 => Ty::Unit,
        1 => Ty::Bool,
        2 => {
            let dom_varies = varying && rng.gen_bool(0.3);
            Ty::Pi(Box::new(gen_ty(rng, sub, dom_varies)), Box::new(gen_ty(rng, sub, varying)))
        }
        3 if rng.gen_bool(0.2) => Ty::DepSigma,
        3 => Ty::Sigma(Box::new(gen_ty(rng, sub, varying)), Box::new(gen_ty(rng, sub, varying))),
        4 => Ty::Path(Box::new(gen_ty(rng, sub, false))),
        5 if !varying => Ty::Bool,
        5 if rng.gen_bool(0.4) => Ty::UaNot,
        5 => Ty::GlueId(Box::new(small(rng)), rng.gen_bool(0.5)),
        6 => Ty::U0,
        _ if varying => Ty::UaNot,
        _ => Ty::Bool,
    }
}

struct Instance {
    ty: Ty,
    line: IClo,
    base: Value,
}

/// Lines of every former, each with a neutral or canonical base point.
fn corpus(s: &Session, n: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    (0..n)
        .map(|k| {
            let former = FORMERS.iter().position(|f| *f == FORMERS[k % FORMERS.len()]).unwrap();
            let map = [0, 1, 2, 3, 4, 5, 6];
            let ty = gen_with(&mut rng, map[former], 2, true);
            let src = ty.render();
            let line = line(s, &src);
            let ty0 = line.inst(&IntervalNf::zero());
            let base = match ty.element() {
                Some(el) if !ty.varies() && rng.gen_bool(0.5) => closed(s, &format!("({el} : {src})")).0,
                _ => Value::var(fresh(), ty0),
            };
            Instance { ty, line, base }
        })
        .collect()
}

/// Systems to fill with: none, one tube, a tube on a disjunction, two tubes.
/// Tubes are transport fillers, so they agree with the base at `0`.
fn systems(inst: &Instance) -> Vec<(Tubes, Vec<Lvl>)> {
    let (line, base) = (inst.line.clone(), inst.base.clone());
    let tube = iabs(move |j| fill(&line, &[], &base, &j));
    let (k, m) = (fresh(), fresh());
    let one = CofNf::eq_one(&ivar(k));
    let zero = CofNf::eq_zero(&ivar(m));
    vec![
        (vec![], vec![]),
        (vec![(one.clone(), tube.clone())], vec![k]),
        (vec![(one.or(&zero), tube.clone())], vec![k]),
        (vec![(one, tube.clone()), (zero, tube)], vec![k]),
    ]
}

fn ac2(s: &Session) -> Outcome {
    let mut counts = std::collections::BTreeMap::new();
    let mut total = 0;
    for inst in corpus(s, 210) {
        for (sys, ks) in systems(&inst) {
            let r = fresh();
            let v = fill(&inst.line, &sys, &inst.base, &ivar(r));
            let ty0 = inst.line.inst(&IntervalNf::zero());
            if !conv(&v.subst(&set(r, IntervalNf::zero())), &inst.base, &ty0) {
                return Err(format!("fill at 0 is not the base in {}", inst.ty.render()));
            }
            for k in ks {
                let on = v.subst(&set(k, IntervalNf::one()));
                if !conv(&on, &sys[0].1.inst(&ivar(r)), &inst.line.inst(&ivar(r))) {
                    return Err(format!("fill under a true face is not the tube in {}", inst.ty.render()));
                }
            }
            *counts.entry(inst.ty.former()).or_insert(0) += 1;
            total += 1;
        }
    }
    if total < 500 || counts.len() < FORMERS.len() {
        return Err(format!("corpus too small: {total} instances over {counts:?}"));
    }
    Ok(format!("{total} instances: {counts:?}"))
}

fn map_sys(sys: &[(CofV, IClo)], f: impl Fn(Value) -> Value + Clone) -> Vec<(CofV, IClo)> {
    sys.iter()
        .map(|(c, u)| {
            let (u, f) = (u.clone(), f.clone());
            (c.clone(), iabs(move |j| f(u.inst(&j))))
        })
        .collect()
}

fn ac3(s: &Session) -> Outcome {
    let mut checked = std::collections::BTreeMap::new();
    for inst in corpus(s, 210) {
        let former = inst.ty.former();
        if !matches!(former, "Sigma" | "PathP") && !inst.ty.constant_domain() {
            continue;
        }
        for (sys, _) in systems(&inst) {
            let r = ivar(fresh());
            let v = fill(&inst.line, &sys, &inst.base, &r);
            let line = inst.line.clone();
            let ok = match former {
                "Sigma" => {
                    let l = line.clone();
                    let a_line = iabs(move |i| match l.inst(&i) {
                        Value::Sigma(a, _) => (*a).clone(),
                        _ => unreachable!(),
                    });
                    let sys1 = map_sys(&sys, |u| fst(&u));
                    let sys2 = map_sys(&sys, |u| snd(&u));
                    let a0 = fst(&inst.base);
                    let (al, s1, a0c) = (a_line.clone(), sys1.clone(), a0.clone());
                    let b_line = iabs(move |i| match line.inst(&i) {
                        Value::Sigma(_, b) => b.apply(fill(&al, &s1, &a0c, &i)),
                        _ => unreachable!(),
                    });
                    conv(&fst(&v), &fill(&a_line, &sys1, &a0, &r), &a_line.inst(&r))
                        && conv(&snd(&v), &fill(&b_line, &sys2, &snd(&inst.base), &r), &b_line.inst(&r))
                }
                "Pi" => {
                    let Value::Pi(dom, _) = line.inst(&r) else { unreachable!() };
                    let x = Value::var(fresh(), (*dom).clone());
                    let xc = x.clone();
                    let cod = iabs(move |i| match line.inst(&i) {
                        Value::Pi(_, c) => c.apply(xc),
                        _ => unreachable!(),
                    });
                    let xs = x.clone();
                    let sysx = map_sys(&sys, move |u| apply(&u, xs.clone()));
                    conv(&apply(&v, x.clone()), &fill(&cod, &sysx, &apply(&inst.base, x), &r), &cod.inst(&r))
                }
                _ => {
                    let j = ivar(fresh());
                    let (l, jc) = (line.clone(), j.clone());
                    let line_j = iabs(move |i| match l.inst(&i) {
                        Value::PathP(p, _, _) => p.inst(&jc),
                        _ => unreachable!(),
                    });
                    let jc = j.clone();
                    let mut sysj = map_sys(&sys, move |u| papply(&u, &jc));
                    let (l0, l1) = (line.clone(), line);
                    let left = iabs(move |i| match l0.inst(&i) {
                        Value::PathP(_, a, _) => (*a).clone(),
                        _ => unreachable!(),
                    });
                    let right = iabs(move |i| match l1.inst(&i) {
                        Value::PathP(_, _, b) => (*b).clone(),
                        _ => unreachable!(),
                    });
                    sysj.push((CofNf::eq_zero(&j), left));
                    sysj.push((CofNf::eq_one(&j), right));
                    conv(&papply(&v, &j), &fill(&line_j, &sysj, &papply(&inst.base, &j), &r), &line_j.inst(&r))
                }
            };
            if !ok {
                return Err(format!("{former} filling is not componentwise in {}", inst.ty.render()));
            }
            *checked.entry(former).or_insert(0) += 1;
        }
    }
    if checked.len() < 3 {
        return Err(format!("missing formers: {checked:?}"));
    }
    Ok(format!("{checked:?}"))
}

// Prelude criteria ----------------------------------------------------------------

fn ac4() -> Outcome {
    let start = Instant::now();
    let s = prelude();
    let elapsed = start.elapsed();
    for name in ["sym", "trans", "funext", "transport", "jbeta", "trans-refl-r"] {
        if !s.globals().contains_key(name) {
            return Err(format!("prelude lacks `{name}`"));
        }
    }
    let mut with_fixture = s.clone();
    let fixture = "def jb : (A : U0) -> (a : A) -> (C : (x : A) -> Path A a x -> U0) -> (d : C a (refl a)) ->\n  \
                   Path (C a (refl a)) (J A a (x q. C x q) d a (refl a)) d = \\A a C d. refl d\n";
    with_fixture.load_source(Path::new("jbeta.nctt"), fixture).map_err(|e| e.to_string())?;
    let nf = s.normalize("jbeta-instance").unwrap_or_default();
    if nf != "false" {
        return Err(format!("jbeta-instance normalised to {nf}"));
    }
    if elapsed > Duration::from_secs(2) {
        return Err(format!("prelude took {elapsed:?}"));
    }
    Ok(format!("{} definitions in {:.0} ms", s.globals().len(), elapsed.as_secs_f64() * 1e3))
}

fn glue_cases(s: &Session) -> Vec<(&'static str, Value, Value, Value)> {
    let v = |src: &str| closed(s, src).0;
    let mut out = vec![
        ("Bool/not", Value::Bool, Value::Bool, v("notIso")),
        ("Bool/id", Value::Bool, Value::Bool, v("idhiso Bool")),
        ("Unit/id", Value::Unit, Value::Unit, v("idhiso Unit")),
        ("Bool*Bool/id", v("Bool * Bool"), v("Bool * Bool"), v("idhiso (Bool * Bool)")),
        ("Bool->Bool/id", v("Bool -> Bool"), v("Bool -> Bool"), v("idhiso (Bool -> Bool)")),
    ];
    let a = Value::var(fresh(), Value::U0);
    out.push(("A/id", a.clone(), a.clone(), v("(\\A. idhiso A : (A : U0) -> HIso A A)")));
    if let Some(("A/id", _, _, f)) = out.last().cloned() {
        out.last_mut().unwrap().3 = apply(&f, a);
    }
    let (t, b) = (Value::var(fresh(), Value::U0), Value::var(fresh(), Value::U0));
    out.push(("T/A/neutral", t.clone(), b.clone(), Value::var(fresh(), hiso_ty(t, b))));
    out
}

/// Cofibrations paired with an assignment that falsifies them.
fn test_cofs() -> Vec<(CofV, Vec<(Lvl, IVal)>)> {
    let (k, m) = (fresh(), fresh());
    let (zero, one) = (IntervalNf::zero(), IntervalNf::one());
    vec![
        (CofNf::eq_zero(&ivar(k)), vec![(k, one.clone())]),
        (CofNf::eq_zero(&ivar(k)).or(&CofNf::eq_one(&ivar(m))), vec![(k, one.clone()), (m, zero)]),
        (CofNf::eq_zero(&ivar(k)).and(&CofNf::eq_one(&ivar(m))), vec![(k, one.clone())]),
        (CofNf::eq_zero(&ivar(k).meet(&ivar(m))), vec![(k, one.clone()), (m, one)]),
    ]
}

fn ac5(s: &Session) -> Outcome {
    let mut n = 0;
    for (name, t, b, e) in glue_cases(s) {
        for (phi, vars) in test_cofs() {
            let sys = vec![(phi.clone(), Thunk::val(t.clone()), Thunk::val(e.clone()))];
            let g = glue_ty(b.clone(), sys);
            let Value::Glue(gt) = &g else { return Err(format!("{name}: Glue reduced on a proper face")) };
            let x = Value::var(fresh(), t.clone());
            let a = apply(&hiso_fwd(&e), x.clone());
            let el = glue_intro(vec![(phi.clone(), Thunk::val(x.clone()))], a.clone());
            if !conv(&unglue(gt, el.clone()), &a, &b) {
                return Err(format!("{name}: unglue (glue a) is not a"));
            }
            let y = Value::var(fresh(), g.clone());
            for (_, face) in faces(&phi) {
                if !conv_ty(&g.subst(&face), &t) {
                    return Err(format!("{name}: Glue under a true face is not T"));
                }
                if !conv(&el.subst(&face), &x, &t) {
                    return Err(format!("{name}: glue under a true face is not its branch"));
                }
                if !conv(&unglue(gt, y.clone()).subst(&face), &apply(&hiso_fwd(&e), y.subst(&face)), &b) {
                    return Err(format!("{name}: unglue under a true face is not the forward map"));
                }
            }
            let off = vars.iter().fold(g.clone(), |g, (v, r)| g.subst(&set(*v, r.clone())));
            if !conv_ty(&off, &b) {
                return Err(format!("{name}: Glue under a false face is not the base"));
            }
            n += 1;
        }
    }
    Ok(format!("{n} instances"))
}

fn ac6(s: &Session) -> Outcome {
    let mut cases = glue_cases(s);
    let v = |src: &str| closed(s, src).0;
    let swap = "((\\p. (p.2, p.1), \\p. (p.2, p.1), \\p. (p.2, p.1), \\p. refl p, \\p. refl p) \
                : HIso (Bool * Bool) (Bool * Bool))";
    cases.push(("Bool*Bool/swap", v("Bool * Bool"), v("Bool * Bool"), v(swap)));
    let drop = "((\\p. p.1, \\b. (b, star), \\b. (b, star), \\b. refl b, \\p. refl p) : HIso (Bool * Unit) Bool)";
    cases.push(("Bool*Unit/Bool", v("Bool * Unit"), Value::Bool, v(drop)));
    let (t, b) = (v("Bool * Bool"), Value::Unit);
    cases.push(("Bool*Bool/Unit/neutral", t.clone(), b.clone(), Value::var(fresh(), hiso_ty(t, b))));
    let mut n = 0;
    for (name, t, a, e) in cases {
        for (phi, _) in test_cofs() {
            let ext = hisoext(a.clone(), vec![(phi.clone(), Thunk::val(t.clone()), Thunk::val(e.clone()))]);
            for (_, face) in faces(&phi) {
                let r = ext.subst(&face);
                if !conv_ty(&fst(&r), &t) {
                    return Err(format!("{name}: extended type does not restrict to T"));
                }
                let (mut got, mut want, mut ty) = (snd(&r), e.clone(), hiso_ty(t.clone(), a.clone()));
                for comp in ["fwd", "sec", "ret", "hsec", "hret"] {
                    let (g, w, cty) = match &ty {
                        Value::Sigma(c, rest) => {
                            let next = rest.apply(fst(&want));
                            let out = (fst(&got), fst(&want), (**c).clone());
                            (got, want, ty) = (snd(&got), snd(&want), next);
                            out
                        }
                        _ => (got.clone(), want.clone(), ty.clone()),
                    };
                    if !conv(&g, &w, &cty) {
                        return Err(format!("{name}: component {comp} does not restrict"));
                    }
                }
            }
            n += 1;
        }
    }
    if n < 20 {
        return Err(format!("only {n} partial isomorphisms"));
    }
    Ok(format!("{n} partial isomorphisms, five components each"))
}

fn ac7(s: &Session) -> Outcome {
    let nf = s.normalize("transport-ua-not-true").ok_or("missing transport-ua-not-true")?;
    if nf != "false" {
        return Err(format!("transport (ua notIso) true normalised to {nf}"));
    }
    for name in ["uabeta", "ptd"] {
        if !s.globals().contains_key(name) {
            return Err(format!("prelude lacks `{name}`"));
        }
    }
    let ua = closed(s, "ua").0;
    let (a, b) = (Value::var(fresh(), Value::U0), Value::var(fresh(), Value::U0));
    let e = Value::var(fresh(), hiso_ty(a.clone(), b.clone()));
    let p = apply(&apply(&apply(&ua, a.clone()), b.clone()), e);
    if !conv_ty(&papply(&p, &IntervalNf::zero()), &a) || !conv_ty(&papply(&p, &IntervalNf::one()), &b) {
        return Err("ua e has the wrong endpoints".into());
    }
    Ok("transport (ua notIso) true = false; ua endpoints definitional; uabeta, ptd check".into())
}

/// Closed booleans whose value is `true`; every other closed boolean is `false`.
const TRUE_DEFS: &[&str] = &[
    "c-and",
    "c-comp-bool",
    "c-trans",
    "c-pathres",
    "c-ua-false",
    "c-ua-twice",
    "c-ua-not-after",
    "c-ua-sigma-snd",
    "c-ua-pi",
    "c-ua-path",
    "c-hisoext-empty",
    "c-hisoext-sec",
    "c-unit-transport",
    "transport-ua-not-false",
    "transport-ua-not-twice",
    "transport-ua-id",
];

fn ac8(s: &Session) -> Outcome {
    let mut s = s.clone();
    let corpus = crate_dir().join("tests/corpus/canonicity.nctt");
    s.load(&corpus).map_err(|e| e.to_string())?;
    let mut names: Vec<&String> =
        s.globals().iter().filter(|(_, d)| conv_ty(&d.ty, &Value::Bool)).map(|(n, _)| n).collect();
    names.sort();
    for name in &names {
        let def = &s.globals()[*name];
        let nf = Ctx::new().quote(&def.value, &def.ty);
        let want = if TRUE_DEFS.contains(&name.as_str()) { Term::True } else { Term::False };
        match nf {
            Term::True | Term::False if nf == want => {}
            Term::True | Term::False => return Err(format!("`{name}` computed the wrong boolean")),
            _ => return Err(format!("`{name}` is stuck: {}", s.normalize(name).unwrap_or_default())),
        }
    }
    Ok(format!("{} closed booleans", names.len()))
}

fn ac9() -> Outcome {
    let base = prelude();
    let dir = crate_dir().join("tests/bad");
    let mut files: Vec<_> = std::fs::read_dir(&dir).map_err(|e| e.to_string())?.flatten().map(|e| e.path()).collect();
    files.sort();
    let mut n = 0;
    for file in files.iter().filter(|f| f.extension().is_some_and(|x| x == "nctt")) {
        let src = std::fs::read_to_string(file).map_err(|e| e.to_string())?;
        let header = src.lines().next().and_then(|l| l.strip_prefix("-- expect: ")).ok_or("missing header")?;
        let (code, at) = header.split_once(" at ").ok_or("malformed header")?;
        match base.clone().load(file) {
            Err(Error::Check(d)) if d.code == code && format!("{}:{}", d.line, d.col) == at => n += 1,
            Err(e) => return Err(format!("{}: expected {header}, got {e}", file.display())),
            Ok(_) => return Err(format!("{}: accepted", file.display())),
        }
    }
    if n < 10 {
        return Err(format!("only {n} negative fixtures"));
    }
    Ok(format!("{n} fixtures rejected with the expected code and position"))
}

fn main() {
    // Keep panics from failed criteria short; the harness reports them.
    panic::set_hook(Box::new(|_| {}));
    let s = prelude();
    let criteria: Vec<Criterion> = vec![
        ("AC1", "cofibration solver matches brute force", Box::new(ac1)),
        ("AC2", "filling laws", Box::new(|| ac2(&s))),
        ("AC3", "componentwise filling in Sigma, Pi and PathP", Box::new(|| ac3(&s))),
        ("AC4", "derived J and prelude", Box::new(ac4)),
        ("AC5", "Glue laws", Box::new(|| ac5(&s))),
        ("AC6", "strong isomorphism extension", Box::new(|| ac6(&s))),
        ("AC7", "univalence computes", Box::new(|| ac7(&s))),
        ("AC8", "canonicity", Box::new(|| ac8(&s))),
        ("AC9", "negative fixtures", Box::new(ac9)),
    ];
    let mut failed = 0;
    for (id, what, run) in &criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS {id} {what} ({detail})"),
            Err(reason) => {
                failed += 1;
                println!("FAIL {id} {what}: {reason}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
