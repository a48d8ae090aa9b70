use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicU64, Ordering};

use crate::interval::{CofNf, IntervalNf};
use crate::syntax::Term;

/// De Bruijn level. Context variables count up from zero; [`fresh`] hands out
/// levels from a disjoint range for binders opened inside the kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lvl(pub u64);

const FRESH_BASE: u64 = 1 << 40;
static NEXT_FRESH: AtomicU64 = AtomicU64::new(FRESH_BASE);

pub fn fresh() -> Lvl {
    Lvl(NEXT_FRESH.fetch_add(1, Ordering::Relaxed))
}

pub type IVal = IntervalNf<Lvl>;
pub type CofV = CofNf<Lvl, Atom>;

/// The cofibration atom `lhs ≡ rhs : ty` between values. Atoms compare by conversion.
#[derive(Clone)]
pub struct Atom(pub Arc<AtomData>);

pub struct AtomData {
    pub lhs: Value,
    pub rhs: Value,
    pub ty: Value,
}

impl PartialEq for Atom {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (super::conv::conv_ty(&self.0.ty, &other.0.ty)
                && super::conv::conv(&self.0.lhs, &other.0.lhs, &self.0.ty)
                && super::conv::conv(&self.0.rhs, &other.0.rhs, &self.0.ty))
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Atom(..)")
    }
}

#[derive(Clone)]
pub enum Value {
    U0,
    U1,
    Unit,
    Star,
    Bool,
    True,
    False,
    Pi(Arc<Value>, Clo),
    Lam(Clo),
    Sigma(Arc<Value>, Clo),
    Pair(Arc<Value>, Arc<Value>),
    PathP(IClo, Arc<Value>, Arc<Value>),
    PLam(IClo),
    /// Only built when no branch is true and the system is non-empty.
    Glue(Arc<GlueTy>),
    GlueIntro(Arc<GlueEl>),
    /// A stuck elimination together with its type.
    Neu(Arc<Value>, Arc<Neutral>),
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Value::U0 => "U0",
            Value::U1 => "U1",
            Value::Unit => "Unit",
            Value::Star => "star",
            Value::Bool => "Bool",
            Value::True => "true",
            Value::False => "false",
            Value::Pi(..) => "Pi",
            Value::Lam(_) => "Lam",
            Value::Sigma(..) => "Sigma",
            Value::Pair(..) => "Pair",
            Value::PathP(..) => "PathP",
            Value::PLam(_) => "PLam",
            Value::Glue(_) => "Glue",
            Value::GlueIntro(_) => "glue",
            Value::Neu(_, n) => return write!(f, "Neu({n:?})"),
        };
        f.write_str(name)
    }
}

pub struct GlueTy {
    pub base: Value,
    /// Branches `(φ, T, e)`; `T` and `e` are only meaningful under `φ`.
    pub sys: Vec<(CofV, Thunk, Thunk)>,
}

pub struct GlueEl {
    pub sys: Vec<(CofV, Thunk)>,
    pub base: Value,
}

pub struct FillData {
    pub line: IClo,
    pub sys: Vec<(CofV, IClo)>,
    pub base: Value,
    pub at: IVal,
}

pub enum Neutral {
    Var(Lvl),
    App(Value, Value),
    Fst(Value),
    Snd(Value),
    PApp(Value, IVal),
    BoolElim {
        motive: Clo,
        tcase: Value,
        fcase: Value,
        scrut: Value,
    },
    Unglue {
        glue: Arc<GlueTy>,
        arg: Value,
    },
    Fill(Arc<FillData>),
    /// The `ret` and `hret` components of an extended isomorphism with an undecided system.
    HExtRet {
        glue: Arc<GlueTy>,
        arg: Value,
    },
    HExtHRet {
        glue: Arc<GlueTy>,
        arg: Value,
    },
}

impl fmt::Debug for Neutral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Neutral::Var(l) => write!(f, "v{}", l.0),
            Neutral::App(h, _) => write!(f, "App({h:?})"),
            Neutral::Fst(h) => write!(f, "Fst({h:?})"),
            Neutral::Snd(h) => write!(f, "Snd({h:?})"),
            Neutral::PApp(h, _) => write!(f, "PApp({h:?})"),
            Neutral::BoolElim { scrut, .. } => write!(f, "BoolElim({scrut:?})"),
            Neutral::Unglue { arg, .. } => write!(f, "Unglue({arg:?})"),
            Neutral::Fill(_) => f.write_str("Fill"),
            Neutral::HExtRet { .. } => f.write_str("HExtRet"),
            Neutral::HExtHRet { .. } => f.write_str("HExtHRet"),
        }
    }
}

/// Something captured by a native closure.
#[derive(Clone)]
pub enum Cap {
    V(Value),
    I(IVal),
    IClo(IClo),
    Thunk(Thunk),
}

impl Cap {
    pub fn v(&self) -> &Value {
        match self {
            Cap::V(v) => v,
            _ => panic!("internal error: capture is not a value"),
        }
    }

    pub fn i(&self) -> &IVal {
        match self {
            Cap::I(r) => r,
            _ => panic!("internal error: capture is not an interval"),
        }
    }

    pub fn iclo(&self) -> &IClo {
        match self {
            Cap::IClo(c) => c,
            _ => panic!("internal error: capture is not a line"),
        }
    }

    pub fn thunk(&self) -> &Thunk {
        match self {
            Cap::Thunk(t) => t,
            _ => panic!("internal error: capture is not a thunk"),
        }
    }
}

/// Closure code with explicit captures, so it stays substitutable.
pub struct Native<A> {
    pub caps: Vec<Cap>,
    pub code: fn(&[Cap], A) -> Value,
}

/// A term-variable binder.
#[derive(Clone)]
pub enum Clo {
    Syn { env: Env, body: Arc<Term> },
    Abs { var: Lvl, body: Arc<Value> },
    Const(Arc<Value>),
    Native(Arc<Native<Value>>),
}

/// An interval-variable binder.
#[derive(Clone)]
pub enum IClo {
    Syn { env: Env, body: Arc<Term> },
    Abs { var: Lvl, body: Arc<Value> },
    Const(Arc<Value>),
    Native(Arc<Native<IVal>>),
}

/// A delayed value. System branches are thunks because they only make sense under their cofibration.
#[derive(Clone)]
pub enum Thunk {
    Syn { env: Env, body: Arc<Term> },
    Val(Arc<Value>),
    Native(Arc<Native<()>>),
}

impl Clo {
    pub fn native(caps: Vec<Cap>, code: fn(&[Cap], Value) -> Value) -> Clo {
        Clo::Native(Arc::new(Native { caps, code }))
    }
}

impl IClo {
    pub fn native(caps: Vec<Cap>, code: fn(&[Cap], IVal) -> Value) -> IClo {
        IClo::Native(Arc::new(Native { caps, code }))
    }

    pub fn constant(v: Value) -> IClo {
        IClo::Const(Arc::new(v))
    }
}

impl Thunk {
    pub fn val(v: Value) -> Thunk {
        Thunk::Val(Arc::new(v))
    }

    pub fn native(caps: Vec<Cap>, code: fn(&[Cap], ()) -> Value) -> Thunk {
        Thunk::Native(Arc::new(Native { caps, code }))
    }
}

/// Persistent cons list.
pub struct List<T>(Option<Arc<(T, List<T>)>>);

impl<T> Clone for List<T> {
    fn clone(&self) -> Self {
        List(self.0.clone())
    }
}

impl<T> Default for List<T> {
    fn default() -> Self {
        List(None)
    }
}

impl<T: Clone> List<T> {
    pub fn push(&self, x: T) -> Self {
        List(Some(Arc::new((x, self.clone()))))
    }

    pub fn get(&self, idx: usize) -> Option<&T> {
        let mut cur = self;
        let mut i = idx;
        loop {
            let node = cur.0.as_ref()?;
            if i == 0 {
                return Some(&node.0);
            }
            i -= 1;
            cur = &node.1;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        let mut cur = self;
        core::iter::from_fn(move || {
            let node = cur.0.as_ref()?;
            cur = &node.1;
            Some(&node.0)
        })
    }

    /// Rebuilds the list with `f` applied to every element, innermost first.
    pub fn map(&self, f: &mut impl FnMut(&T) -> T) -> Self {
        let items: Vec<T> = self.iter().map(f).collect();
        items.into_iter().rev().fold(List::default(), |acc, x| acc.push(x))
    }
}

/// Evaluation environment: values for term variables and interval variables.
#[derive(Clone, Default)]
pub struct Env {
    pub terms: List<Value>,
    pub ivals: List<IVal>,
}

impl Env {
    pub fn push(&self, v: Value) -> Env {
        Env { terms: self.terms.push(v), ivals: self.ivals.clone() }
    }

    pub fn push_i(&self, r: IVal) -> Env {
        Env { terms: self.terms.clone(), ivals: self.ivals.push(r) }
    }

    pub fn term(&self, idx: u32) -> &Value {
        self.terms.get(idx as usize).expect("internal error: unbound term variable")
    }

    pub fn ival(&self, idx: u32) -> &IVal {
        self.ivals.get(idx as usize).expect("internal error: unbound interval variable")
    }
}

impl Value {
    pub fn var(l: Lvl, ty: Value) -> Value {
        Value::Neu(Arc::new(ty), Arc::new(Neutral::Var(l)))
    }

    pub fn neu(ty: Value, n: Neutral) -> Value {
        Value::Neu(Arc::new(ty), Arc::new(n))
    }

    pub fn is_neutral(&self) -> bool {
        matches!(self, Value::Neu(..))
    }
}

pub fn ivar(l: Lvl) -> IVal {
    IntervalNf::var(l)
}

/// `λ(x : dom). f x`, built eagerly at a fresh level.
pub fn lam(dom: &Value, f: impl FnOnce(Value) -> Value) -> Value {
    Value::Lam(abs(dom, f))
}

pub fn abs(dom: &Value, f: impl FnOnce(Value) -> Value) -> Clo {
    let x = fresh();
    let body = f(Value::var(x, dom.clone()));
    Clo::Abs { var: x, body: Arc::new(body) }
}

pub fn iabs(f: impl FnOnce(IVal) -> Value) -> IClo {
    let i = fresh();
    let body = f(ivar(i));
    IClo::Abs { var: i, body: Arc::new(body) }
}

pub fn pi(dom: Value, f: impl FnOnce(Value) -> Value) -> Value {
    let c = abs(&dom, f);
    Value::Pi(Arc::new(dom), c)
}

/// Non-dependent function type.
pub fn arrow(dom: Value, cod: Value) -> Value {
    Value::Pi(Arc::new(dom), Clo::Const(Arc::new(cod)))
}

pub fn sigma(dom: Value, f: impl FnOnce(Value) -> Value) -> Value {
    let c = abs(&dom, f);
    Value::Sigma(Arc::new(dom), c)
}

pub fn plam(f: impl FnOnce(IVal) -> Value) -> Value {
    Value::PLam(iabs(f))
}

pub fn path(ty: Value, a: Value, b: Value) -> Value {
    Value::PathP(IClo::constant(ty), Arc::new(a), Arc::new(b))
}

pub fn pair(a: Value, b: Value) -> Value {
    Value::Pair(Arc::new(a), Arc::new(b))
}
