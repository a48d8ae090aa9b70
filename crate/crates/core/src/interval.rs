//! The interval algebra and the face lattice.
//!
//! Interval expressions live in the free bounded distributive lattice on
//! their variables. [`IntervalNf`] is the canonical join-of-meets form.
//! Cofibrations are finite joins and meets of endpoint literals `r = 0`,
//! `r = 1` and opaque atoms. [`CofNf`] keeps them in disjunctive normal form
//! over the literals `i = 0`, `i = 1` and atoms, which makes entailment a
//! clause-inclusion check.
//!
//! Everything here is generic in the variable type `V` and the atom type
//! `A`, so the same code serves the syntax (de Bruijn indices) and the
//! semantic domain (levels).

use alloc::boxed::Box;
use alloc::vec::Vec;

/// An interval expression as written.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Interval<V> {
    Zero,
    One,
    Var(V),
    Min(Box<Interval<V>>, Box<Interval<V>>),
    Max(Box<Interval<V>>, Box<Interval<V>>),
}

impl<V: Ord + Clone> Interval<V> {
    pub fn var(v: V) -> Self {
        Interval::Var(v)
    }

    pub fn min(a: Self, b: Self) -> Self {
        Interval::Min(Box::new(a), Box::new(b))
    }

    pub fn max(a: Self, b: Self) -> Self {
        Interval::Max(Box::new(a), Box::new(b))
    }

    pub fn normalize(&self) -> IntervalNf<V> {
        match self {
            Interval::Zero => IntervalNf::zero(),
            Interval::One => IntervalNf::one(),
            Interval::Var(v) => IntervalNf::var(v.clone()),
            Interval::Min(a, b) => a.normalize().meet(&b.normalize()),
            Interval::Max(a, b) => a.normalize().join(&b.normalize()),
        }
    }

    /// Evaluates under a partial assignment. Unassigned variables stand for an
    /// interior point, so `None` means neither endpoint.
    pub fn eval(&self, val: &impl Fn(&V) -> Option<bool>) -> Option<bool> {
        match self {
            Interval::Zero => Some(false),
            Interval::One => Some(true),
            Interval::Var(v) => val(v),
            Interval::Min(a, b) => match (a.eval(val), b.eval(val)) {
                (Some(false), _) | (_, Some(false)) => Some(false),
                (Some(true), Some(true)) => Some(true),
                _ => None,
            },
            Interval::Max(a, b) => match (a.eval(val), b.eval(val)) {
                (Some(true), _) | (_, Some(true)) => Some(true),
                (Some(false), Some(false)) => Some(false),
                _ => None,
            },
        }
    }

    pub fn map_vars<W>(&self, f: &mut impl FnMut(&V) -> Interval<W>) -> Interval<W> {
        match self {
            Interval::Zero => Interval::Zero,
            Interval::One => Interval::One,
            Interval::Var(v) => f(v),
            Interval::Min(a, b) => Interval::Min(Box::new(a.map_vars(f)), Box::new(b.map_vars(f))),
            Interval::Max(a, b) => Interval::Max(Box::new(a.map_vars(f)), Box::new(b.map_vars(f))),
        }
    }

    pub fn any_var(&self, f: &mut impl FnMut(&V) -> bool) -> bool {
        match self {
            Interval::Zero | Interval::One => false,
            Interval::Var(v) => f(v),
            Interval::Min(a, b) | Interval::Max(a, b) => a.any_var(f) || b.any_var(f),
        }
    }
}

/// Canonical form: a join of meets of variables, kept as a sorted antichain.
///
/// The empty join is `0`; a join containing the empty meet is `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalNf<V> {
    meets: Vec<Vec<V>>,
}

impl<V: Ord + Clone> IntervalNf<V> {
    pub fn zero() -> Self {
        IntervalNf { meets: Vec::new() }
    }

    pub fn one() -> Self {
        IntervalNf { meets: alloc::vec![Vec::new()] }
    }

    pub fn var(v: V) -> Self {
        IntervalNf { meets: alloc::vec![alloc::vec![v]] }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Self::one()
        } else {
            Self::zero()
        }
    }

    fn from_meets(mut meets: Vec<Vec<V>>) -> Self {
        for m in &mut meets {
            m.sort();
            m.dedup();
        }
        meets.sort();
        meets.dedup();
        // Absorption: x ∨ (x ∧ y) = x, so drop every meet that has a proper subset present.
        let keep: Vec<bool> =
            meets.iter().map(|m| !meets.iter().any(|n| n.len() < m.len() && is_subset(n, m))).collect();
        let meets = meets.into_iter().zip(keep).filter(|(_, k)| *k).map(|(m, _)| m).collect();
        IntervalNf { meets }
    }

    pub fn meets(&self) -> &[Vec<V>] {
        &self.meets
    }

    pub fn is_zero(&self) -> bool {
        self.meets.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.meets.len() == 1 && self.meets[0].is_empty()
    }

    pub fn as_var(&self) -> Option<&V> {
        match self.meets.as_slice() {
            [m] if m.len() == 1 => Some(&m[0]),
            _ => None,
        }
    }

    pub fn join(&self, other: &Self) -> Self {
        let mut meets = self.meets.clone();
        meets.extend(other.meets.iter().cloned());
        Self::from_meets(meets)
    }

    pub fn meet(&self, other: &Self) -> Self {
        let mut meets = Vec::with_capacity(self.meets.len() * other.meets.len());
        for a in &self.meets {
            for b in &other.meets {
                let mut m = a.clone();
                m.extend(b.iter().cloned());
                meets.push(m);
            }
        }
        Self::from_meets(meets)
    }

    pub fn mentions(&self, v: &V) -> bool {
        self.meets.iter().any(|m| m.contains(v))
    }

    pub fn vars(&self) -> impl Iterator<Item = &V> {
        self.meets.iter().flatten()
    }

    /// Simultaneous substitution of every variable.
    pub fn subst<W: Ord + Clone>(&self, f: &mut impl FnMut(&V) -> IntervalNf<W>) -> IntervalNf<W> {
        let mut acc = IntervalNf::zero();
        for m in &self.meets {
            let mut conj = IntervalNf::one();
            for v in m {
                conj = conj.meet(&f(v));
                if conj.is_zero() {
                    break;
                }
            }
            acc = acc.join(&conj);
            if acc.is_one() {
                break;
            }
        }
        acc
    }

    pub fn restrict(&self, v: &V, r: &IntervalNf<V>) -> Self {
        if !self.mentions(v) {
            return self.clone();
        }
        self.subst(&mut |w| if w == v { r.clone() } else { IntervalNf::var(w.clone()) })
    }

    pub fn eval(&self, val: &impl Fn(&V) -> Option<bool>) -> Option<bool> {
        let mut out = Some(false);
        for m in &self.meets {
            let mut conj = Some(true);
            for v in m {
                conj = match (conj, val(v)) {
                    (Some(false), _) | (_, Some(false)) => Some(false),
                    (Some(true), Some(true)) => Some(true),
                    _ => None,
                };
            }
            out = match (out, conj) {
                (Some(true), _) | (_, Some(true)) => return Some(true),
                (Some(false), Some(false)) => Some(false),
                _ => None,
            };
        }
        out
    }

    pub fn to_expr(&self) -> Interval<V> {
        let meet = |m: &Vec<V>| m.iter().cloned().map(Interval::Var).reduce(Interval::min).unwrap_or(Interval::One);
        self.meets.iter().map(meet).reduce(Interval::max).unwrap_or(Interval::Zero)
    }
}

fn is_subset<V: Ord>(small: &[V], big: &[V]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

/// A cofibration as written.
#[derive(Clone, Debug, PartialEq)]
pub enum Cof<V, A> {
    Top,
    Bot,
    EqZero(Interval<V>),
    EqOne(Interval<V>),
    And(Box<Cof<V, A>>, Box<Cof<V, A>>),
    Or(Box<Cof<V, A>>, Box<Cof<V, A>>),
    Atom(A),
}

impl<V: Ord + Clone, A: Clone + PartialEq> Cof<V, A> {
    pub fn and(a: Self, b: Self) -> Self {
        Cof::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Self, b: Self) -> Self {
        Cof::Or(Box::new(a), Box::new(b))
    }

    pub fn normalize(&self) -> CofNf<V, A> {
        self.normalize_with(&mut |a| CofNf::atom(a.clone()))
    }

    /// Normal form where each atom is first interpreted by `atom`.
    pub fn normalize_with<B: Clone + PartialEq>(&self, atom: &mut impl FnMut(&A) -> CofNf<V, B>) -> CofNf<V, B> {
        match self {
            Cof::Top => CofNf::top(),
            Cof::Bot => CofNf::bot(),
            Cof::EqZero(r) => CofNf::eq_zero(&r.normalize()),
            Cof::EqOne(r) => CofNf::eq_one(&r.normalize()),
            Cof::And(a, b) => a.normalize_with(atom).and(&b.normalize_with(atom)),
            Cof::Or(a, b) => a.normalize_with(atom).or(&b.normalize_with(atom)),
            Cof::Atom(a) => atom(a),
        }
    }
}

/// One conjunction of literals. Never contains a variable in both `zeros` and `ones`.
#[derive(Clone, Debug, PartialEq)]
pub struct Clause<V, A> {
    pub zeros: Vec<V>,
    pub ones: Vec<V>,
    pub atoms: Vec<A>,
}

impl<V: Ord + Clone, A: Clone + PartialEq> Clause<V, A> {
    fn empty() -> Self {
        Clause { zeros: Vec::new(), ones: Vec::new(), atoms: Vec::new() }
    }

    fn is_consistent(&self) -> bool {
        !self.zeros.iter().any(|v| self.ones.binary_search(v).is_ok())
    }

    fn conj(&self, other: &Self) -> Self {
        let mut zeros = self.zeros.clone();
        zeros.extend(other.zeros.iter().cloned());
        zeros.sort();
        zeros.dedup();
        let mut ones = self.ones.clone();
        ones.extend(other.ones.iter().cloned());
        ones.sort();
        ones.dedup();
        let mut atoms = self.atoms.clone();
        for a in &other.atoms {
            if !atoms.contains(a) {
                atoms.push(a.clone());
            }
        }
        Clause { zeros, ones, atoms }
    }

    /// Every literal of `self` occurs in `other`, so `other` entails `self`.
    pub fn is_weaker_than(&self, other: &Self) -> bool {
        is_subset(&self.zeros, &other.zeros)
            && is_subset(&self.ones, &other.ones)
            && self.atoms.iter().all(|a| other.atoms.contains(a))
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty() && self.ones.is_empty() && self.atoms.is_empty()
    }

    pub fn to_expr(&self) -> Cof<V, A> {
        let lits = self
            .zeros
            .iter()
            .map(|v| Cof::EqZero(Interval::Var(v.clone())))
            .chain(self.ones.iter().map(|v| Cof::EqOne(Interval::Var(v.clone()))))
            .chain(self.atoms.iter().cloned().map(Cof::Atom));
        lits.reduce(Cof::and).unwrap_or(Cof::Top)
    }
}

/// Disjunctive normal form. No clause is weaker than another one; `Top` is the single empty clause.
#[derive(Clone, Debug, PartialEq)]
pub struct CofNf<V, A> {
    clauses: Vec<Clause<V, A>>,
}

impl<V: Ord + Clone, A: Clone + PartialEq> CofNf<V, A> {
    pub fn top() -> Self {
        CofNf { clauses: alloc::vec![Clause::empty()] }
    }

    pub fn bot() -> Self {
        CofNf { clauses: Vec::new() }
    }

    pub fn atom(a: A) -> Self {
        CofNf { clauses: alloc::vec![Clause { zeros: Vec::new(), ones: Vec::new(), atoms: alloc::vec![a] }] }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Self::top()
        } else {
            Self::bot()
        }
    }

    pub fn from_clauses(clauses: Vec<Clause<V, A>>) -> Self {
        let mut out: Vec<Clause<V, A>> = Vec::with_capacity(clauses.len());
        for mut c in clauses {
            c.zeros.sort();
            c.zeros.dedup();
            c.ones.sort();
            c.ones.dedup();
            let mut atoms: Vec<A> = Vec::with_capacity(c.atoms.len());
            for a in c.atoms {
                if !atoms.contains(&a) {
                    atoms.push(a);
                }
            }
            c.atoms = atoms;
            if !c.is_consistent() || out.iter().any(|d| d.is_weaker_than(&c)) {
                continue;
            }
            out.retain(|d| !c.is_weaker_than(d));
            out.push(c);
        }
        out.sort_by(|a, b| {
            (a.zeros.len() + a.ones.len() + a.atoms.len(), &a.zeros, &a.ones).cmp(&(
                b.zeros.len() + b.ones.len() + b.atoms.len(),
                &b.zeros,
                &b.ones,
            ))
        });
        CofNf { clauses: out }
    }

    /// `r = 0` holds iff every meet of `r` has a variable equal to zero.
    pub fn eq_zero(r: &IntervalNf<V>) -> Self {
        let mut acc = Self::top();
        for m in r.meets() {
            let disj = m
                .iter()
                .map(|v| Clause { zeros: alloc::vec![v.clone()], ones: Vec::new(), atoms: Vec::new() })
                .collect();
            acc = acc.and(&Self::from_clauses(disj));
        }
        acc
    }

    /// `r = 1` holds iff some meet of `r` has all of its variables equal to one.
    pub fn eq_one(r: &IntervalNf<V>) -> Self {
        let clauses =
            r.meets().iter().map(|m| Clause { zeros: Vec::new(), ones: m.clone(), atoms: Vec::new() }).collect();
        Self::from_clauses(clauses)
    }

    pub fn clauses(&self) -> &[Clause<V, A>] {
        &self.clauses
    }

    pub fn is_top(&self) -> bool {
        self.clauses.len() == 1 && self.clauses[0].is_empty()
    }

    pub fn is_bot(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn and(&self, other: &Self) -> Self {
        if self.is_top() {
            return other.clone();
        }
        if other.is_top() {
            return self.clone();
        }
        let mut clauses = Vec::new();
        for a in &self.clauses {
            for b in &other.clauses {
                clauses.push(a.conj(b));
            }
        }
        Self::from_clauses(clauses)
    }

    pub fn or(&self, other: &Self) -> Self {
        let mut clauses = self.clauses.clone();
        clauses.extend(other.clauses.iter().cloned());
        Self::from_clauses(clauses)
    }

    pub fn any(items: impl IntoIterator<Item = Self>) -> Self {
        items.into_iter().fold(Self::bot(), |acc, c| acc.or(&c))
    }

    /// Replaces atoms the oracle can decide by their truth value.
    pub fn decide(&self, oracle: &mut impl FnMut(&A) -> Option<bool>) -> Self {
        let mut clauses = Vec::with_capacity(self.clauses.len());
        'clauses: for c in &self.clauses {
            let mut atoms = Vec::new();
            for a in &c.atoms {
                match oracle(a) {
                    Some(true) => {}
                    Some(false) => continue 'clauses,
                    None => atoms.push(a.clone()),
                }
            }
            clauses.push(Clause { zeros: c.zeros.clone(), ones: c.ones.clone(), atoms });
        }
        Self::from_clauses(clauses)
    }

    /// Validity of `self ⇒ goal` in every valuation of the literals.
    ///
    /// A consistent clause entails a disjunction iff it contains one of the disjuncts:
    /// the valuation making exactly the clause's literals true refutes every other disjunct.
    pub fn entails(&self, goal: &Self, oracle: &mut impl FnMut(&A) -> Option<bool>) -> bool {
        let assm = self.decide(oracle);
        let goal = goal.decide(oracle);
        assm.clauses.iter().all(|c| goal.clauses.iter().any(|d| d.is_weaker_than(c)))
    }

    pub fn equivalent(&self, other: &Self, oracle: &mut impl FnMut(&A) -> Option<bool>) -> bool {
        self.entails(other, oracle) && other.entails(self, oracle)
    }

    /// Substitutes interval variables and reinterprets atoms.
    pub fn subst<W: Ord + Clone, B: Clone + PartialEq>(
        &self,
        var: &mut impl FnMut(&V) -> IntervalNf<W>,
        atom: &mut impl FnMut(&A) -> CofNf<W, B>,
    ) -> CofNf<W, B> {
        let mut acc = CofNf::bot();
        for c in &self.clauses {
            let mut conj = CofNf::top();
            for v in &c.zeros {
                conj = conj.and(&CofNf::eq_zero(&var(v)));
            }
            for v in &c.ones {
                conj = conj.and(&CofNf::eq_one(&var(v)));
            }
            for a in &c.atoms {
                conj = conj.and(&atom(a));
            }
            acc = acc.or(&conj);
            if acc.is_top() {
                break;
            }
        }
        acc
    }

    pub fn restrict(&self, v: &V, r: &IntervalNf<V>) -> Self {
        self.subst(&mut |w| if w == v { r.clone() } else { IntervalNf::var(w.clone()) }, &mut |a| {
            CofNf::atom(a.clone())
        })
    }

    /// The strongest `v`-free cofibration entailing `self`: drops every clause that
    /// constrains `v`, directly or through an atom.
    pub fn forall(&self, v: &V, atom_mentions: &mut impl FnMut(&A, &V) -> bool) -> Self {
        let clauses = self
            .clauses
            .iter()
            .filter(|c| !c.zeros.contains(v) && !c.ones.contains(v) && !c.atoms.iter().any(|a| atom_mentions(a, v)))
            .cloned()
            .collect();
        Self::from_clauses(clauses)
    }

    pub fn mentions(&self, v: &V) -> bool {
        self.clauses.iter().any(|c| c.zeros.contains(v) || c.ones.contains(v))
    }

    pub fn to_expr(&self) -> Cof<V, A> {
        self.clauses.iter().map(Clause::to_expr).reduce(Cof::or).unwrap_or(Cof::Bot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::vec;

    type I = Interval<u8>;
    type C = Cof<u8, u8>;

    fn v(x: u8) -> I {
        Interval::Var(x)
    }

    #[test]
    fn join_absorbs_meets() {
        let r = I::max(v(0), I::min(v(0), v(1))).normalize();
        assert_eq!(r, IntervalNf::var(0));
        assert!(I::max(v(0), I::One).normalize().is_one());
        assert!(I::min(v(0), I::Zero).normalize().is_zero());
    }

    #[test]
    fn contradictory_endpoints_are_bot() {
        let c = C::and(C::EqZero(v(0)), C::EqOne(v(0))).normalize();
        assert!(c.is_bot());
        assert_eq!(c.to_expr(), C::Bot);
    }

    #[test]
    fn boundary_is_not_top() {
        let c = C::or(C::EqZero(v(0)), C::EqOne(v(0))).normalize();
        assert!(!c.is_top());
        assert!(!CofNf::top().entails(&c, &mut |_| None));
        assert!(c.forall(&0, &mut |_, _| false).is_bot());
    }

    #[test]
    fn meet_equal_zero_splits() {
        let c = C::EqZero(I::min(v(0), v(1))).normalize();
        assert_eq!(c.clauses().len(), 2);
        let d = C::or(C::EqZero(v(1)), C::EqZero(v(0))).normalize();
        assert_eq!(c, d);
    }

    #[test]
    fn entailment_by_inclusion() {
        let assm = C::and(C::EqZero(v(0)), C::EqOne(v(1))).normalize();
        let goal = C::or(C::EqZero(v(0)), C::Atom(7)).normalize();
        assert!(assm.entails(&goal, &mut |_| None));
        assert!(!goal.entails(&assm, &mut |_| None));
    }

    #[test]
    fn oracle_decides_atoms() {
        let c = C::or(C::Atom(1), C::EqZero(v(0))).normalize();
        assert!(c.decide(&mut |a| Some(*a == 1)).is_top());
        assert_eq!(c.decide(&mut |_| Some(false)), C::EqZero(v(0)).normalize());
    }

    #[test]
    fn restrict_substitutes_endpoints() {
        let c = C::EqOne(v(0)).normalize();
        assert!(c.restrict(&0, &IntervalNf::one()).is_top());
        assert!(c.restrict(&0, &IntervalNf::zero()).is_bot());
        let d = c.restrict(&0, &I::max(v(1), v(2)).normalize());
        assert_eq!(d, C::or(C::EqOne(v(1)), C::EqOne(v(2))).normalize());
    }

    #[test]
    fn forall_drops_atoms_mentioning_var() {
        let c = C::or(C::Atom(0), C::Atom(1)).normalize();
        let d = c.forall(&0, &mut |a, v| a == v);
        assert_eq!(d, C::Atom(1).normalize());
    }

    #[test]
    fn eval_handles_unbound() {
        assert_eq!(I::min(v(0), v(1)).eval(&|x| (*x == 0).then_some(false)), Some(false));
        assert_eq!(I::min(v(0), v(1)).eval(&|x| (*x == 0).then_some(true)), None);
        assert_eq!(I::max(v(0), I::One).eval(&|_| Some(false)), Some(true));
    }

    fn interval() -> impl Strategy<Value = I> {
        let leaf = prop_oneof![Just(I::Zero), Just(I::One), (0u8..3).prop_map(Interval::Var)];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| I::min(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| I::max(a, b)),
            ]
        })
    }

    fn cof() -> impl Strategy<Value = C> {
        let leaf = prop_oneof![
            Just(C::Top),
            Just(C::Bot),
            interval().prop_map(C::EqZero),
            interval().prop_map(C::EqOne),
            (0u8..2).prop_map(C::Atom),
        ];
        leaf.prop_recursive(3, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(a, b)| C::and(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| C::or(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn normal_form_preserves_meaning(r in interval(), code in 0u8..27) {
            let val = |x: &u8| [Some(false), None, Some(true)][(code / 3u8.pow(*x as u32) % 3) as usize];
            prop_assert_eq!(r.eval(&val), r.normalize().eval(&val));
        }

        #[test]
        fn normal_form_is_idempotent(r in interval(), c in cof()) {
            let n = r.normalize();
            prop_assert_eq!(n.to_expr().normalize(), n);
            let m = c.normalize();
            prop_assert_eq!(m.to_expr().normalize(), m);
        }

        #[test]
        fn substitution_commutes_with_valuation(r in interval(), s in interval(), bits in 0u8..8) {
            let val = |x: &u8| Some(bits >> x & 1 == 1);
            let sv = s.eval(&val).unwrap();
            let substituted = r.normalize().restrict(&0, &s.normalize());
            let updated = |x: &u8| if *x == 0 { Some(sv) } else { val(x) };
            prop_assert_eq!(substituted.eval(&val), r.eval(&updated));
        }

        #[test]
        fn entailment_is_reflexive_and_transitive(a in cof(), b in cof(), c in cof()) {
            let (a, b, c) = (a.normalize(), b.normalize(), c.normalize());
            prop_assert!(a.entails(&a, &mut |_| None));
            if a.entails(&b, &mut |_| None) && b.entails(&c, &mut |_| None) {
                prop_assert!(a.entails(&c, &mut |_| None));
            }
            prop_assert!(a.and(&b).entails(&a, &mut |_| None));
            prop_assert!(a.entails(&a.or(&b), &mut |_| None));
        }

        #[test]
        fn forall_is_weaker_and_var_free(c in cof()) {
            let n = c.normalize();
            let f = n.forall(&0, &mut |_, _| false);
            prop_assert!(f.entails(&n, &mut |_| None));
            prop_assert!(!f.mentions(&0));
            let restricted = vec![IntervalNf::zero(), IntervalNf::one()]
                .into_iter()
                .all(|e| f.entails(&n.restrict(&0, &e), &mut |_| None));
            prop_assert!(restricted);
        }
    }
}
