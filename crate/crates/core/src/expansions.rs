//! Greedy and quasi-greedy expansions, the quasi-greedy expansion of 1,
//! the lexicographic uniqueness and admissibility tests, and the automaton of
//! all expansions of a point of `Q(alpha)`.

use crate::error::{Error, Result};
use crate::exactnum::field::eventually_periodic_value;
use crate::exactnum::{
    compare, default_precision, pow2_neg, q, AlgebraicField, AlgebraicReal, Cmp, QAlpha, RealNumber,
};
use crate::thuemorse::lambda;
use crate::words::{
    compare_sources, Alphabet, Digit, DigitSource, EPSeq, FiniteWord, LazySeq, LexOrder, Reflected, Seq, Shifted,
};
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

/// Default state cap for automaton construction.
pub const DEFAULT_STATE_CAP: usize = 10_000;

/// Hard limit on the number of digits of `delta` computed for one base.
pub const MAX_DELTA_DIGITS: usize = 1 << 20;

/// A base `alpha` in `(0, 1)` together with a digit alphabet.
#[derive(Clone)]
pub struct BaseSystem {
    alpha: RealNumber,
    alphabet: Alphabet,
    field: Option<Arc<AlgebraicField>>,
    delta: Arc<OnceLock<Arc<Delta>>>,
}

impl BaseSystem {
    pub fn new(alpha: RealNumber, alphabet: Alphabet) -> Result<Self> {
        let prec = default_precision();
        let above = compare(&alpha, &RealNumber::rational(0, 1), &prec);
        let below = compare(&alpha, &RealNumber::rational(1, 1), &prec);
        if above != Cmp::Greater || below != Cmp::Less {
            return Err(Error::OutOfDomain(format!("base {alpha} must lie in (0, 1)")));
        }
        let field = match &alpha {
            RealNumber::Series(_) => None,
            _ => Some(AlgebraicField::new(&alpha)?),
        };
        Ok(BaseSystem { alpha, alphabet, field, delta: Arc::new(OnceLock::new()) })
    }

    pub fn signed(alpha: RealNumber) -> Result<Self> {
        Self::new(alpha, Alphabet::SIGNED)
    }

    pub fn alpha(&self) -> &RealNumber {
        &self.alpha
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn field(&self) -> Result<&Arc<AlgebraicField>> {
        self.field.as_ref().ok_or_else(|| Error::UnsupportedBase(self.alpha.to_string()))
    }

    /// `alpha / (1 - alpha)` in the field.
    pub fn unit_bound(&self) -> Result<QAlpha> {
        let f = self.field()?;
        let a = QAlpha::alpha(f);
        a.div(&QAlpha::from_int(f, 1).sub(&a))
    }

    /// Value of an eventually periodic digit sequence.
    pub fn value(&self, s: &EPSeq) -> Result<QAlpha> {
        eventually_periodic_value(self.field()?, s.preperiod(), s.period())
    }

    /// The quasi-greedy expansion of 1, shared by clones of this system.
    pub fn delta(&self) -> Result<Arc<Delta>> {
        if let Some(d) = self.delta.get() {
            return Ok(d.clone());
        }
        let d = Arc::new(Delta::new(self)?);
        Ok(self.delta.get_or_init(|| d).clone())
    }
}

/// The quasi-greedy expansion of 1, over the system's alphabet.
pub struct Delta {
    alphabet: Alphabet,
    kind: DeltaKind,
}

enum DeltaKind {
    Lazy(LazySeq),
    Computed(Mutex<DeltaState>),
}

struct DeltaState {
    digits: Vec<Digit>,
    z: QAlpha,
    inv_alpha: QAlpha,
    top: QAlpha,
    seen: HashMap<QAlpha, usize>,
    ep: Option<EPSeq>,
    stuck: bool,
}

impl Delta {
    fn new(sys: &BaseSystem) -> Result<Self> {
        let a = sys.alphabet;
        let m = a.max_shift();
        let prec = default_precision();
        if compare(&sys.alpha, &RealNumber::rational(1, m as i64 + 1), &prec) == Cmp::Less {
            return Err(Error::OutOfDomain(format!("delta needs alpha >= 1/{}", m + 1)));
        }
        if sys.alpha.is_alpha_kl() {
            if a.size != 3 {
                return Err(Error::UnsupportedBase("akl is only known for three-letter alphabets".into()));
            }
            let low = a.low;
            let seq = LazySeq::new(Arc::new(move |i| low + 1 + lambda(i as u64)), a, "delta(akl)");
            return Ok(Delta { alphabet: a, kind: DeltaKind::Lazy(seq) });
        }
        let f = sys.field()?;
        let alpha = QAlpha::alpha(f);
        let one = QAlpha::from_int(f, 1);
        let inv_alpha = alpha.inv()?;
        let top = alpha.scale(&q(m as i64, 1)).div(&one.sub(&alpha))?;
        let mut seen = HashMap::new();
        seen.insert(one.clone(), 0);
        let state = DeltaState { digits: Vec::new(), z: one, inv_alpha, top, seen, ep: None, stuck: false };
        Ok(Delta { alphabet: a, kind: DeltaKind::Computed(Mutex::new(state)) })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// The exact eventually periodic form, if detected so far.
    pub fn ep_form(&self) -> Option<EPSeq> {
        match &self.kind {
            DeltaKind::Lazy(_) => None,
            DeltaKind::Computed(m) => m.lock().unwrap().ep.clone(),
        }
    }

    /// Computes up to `depth` digits looking for a repeated remainder.
    pub fn try_ep_form(&self, depth: usize) -> Option<EPSeq> {
        if let DeltaKind::Computed(m) = &self.kind {
            let mut st = m.lock().unwrap();
            while st.ep.is_none() && !st.stuck && st.digits.len() < depth.min(MAX_DELTA_DIGITS) {
                self.advance(&mut st);
            }
            return st.ep.clone();
        }
        None
    }

    pub fn prefix(&self, n: usize) -> Result<FiniteWord> {
        let digits = (0..n).map(|k| self.at(k).ok_or(Error::IterationLimit(MAX_DELTA_DIGITS))).collect::<Result<_>>()?;
        Ok(FiniteWord::new_unchecked(digits, self.alphabet))
    }

    fn advance(&self, st: &mut DeltaState) {
        let m = self.alphabet.max_shift();
        match qg_step(&st.z, &st.inv_alpha, &st.top, m, true) {
            Some((d, z)) => {
                st.digits.push(d + self.alphabet.low);
                let k = st.digits.len();
                if let Some(&j) = st.seen.get(&z) {
                    let e = EPSeq::new(st.digits[..j].to_vec(), st.digits[j..k].to_vec(), self.alphabet)
                        .expect("digits in alphabet");
                    st.ep = Some(e);
                } else {
                    st.seen.insert(z.clone(), k);
                }
                st.z = z;
            }
            None => st.stuck = true,
        }
    }
}

impl DigitSource for Delta {
    fn at(&self, k: usize) -> Option<Digit> {
        match &self.kind {
            DeltaKind::Lazy(l) => Some(l.get(k + 1)),
            DeltaKind::Computed(m) => {
                let mut st = m.lock().unwrap();
                loop {
                    if let Some(e) = &st.ep {
                        return Some(e.digit(k));
                    }
                    if k < st.digits.len() {
                        return Some(st.digits[k]);
                    }
                    if st.stuck || st.digits.len() >= MAX_DELTA_DIGITS {
                        return None;
                    }
                    self.advance(&mut st);
                }
            }
        }
    }
}

/// One digit of the (quasi-)greedy map on `{0..m}`: the largest `d` with
/// `z/alpha - d` in `[0, top]`, or in `(0, top]` when `strict`.
fn qg_step(z: &QAlpha, inv_alpha: &QAlpha, top: &QAlpha, m: Digit, strict: bool) -> Option<(Digit, QAlpha)> {
    let y = z.mul(inv_alpha);
    for d in (0..=m).rev() {
        let w = y.add_int(-(d as i64));
        let ok = match w.sign() {
            Ordering::Greater => true,
            Ordering::Equal => !strict,
            Ordering::Less => false,
        };
        if ok {
            return (w.cmp_value(top) != Ordering::Greater).then_some((d, w));
        }
    }
    None
}

fn expand(sys: &BaseSystem, x: &RealNumber, length: usize, strict: bool) -> Result<FiniteWord> {
    if length == 0 {
        return Err(Error::OutOfDomain("length must be at least 1".into()));
    }
    let f = sys.field()?;
    let a = sys.alphabet;
    let m = a.max_shift();
    let alpha = QAlpha::alpha(f);
    let one = QAlpha::from_int(f, 1);
    let unit = alpha.div(&one.sub(&alpha))?;
    let top = unit.scale(&q(m as i64, 1));
    let mut z = QAlpha::from_real(f, x)?.sub(&unit.scale(&q(a.low as i64, 1)));
    if z.sign() == Ordering::Less || z.cmp_value(&top) == Ordering::Greater {
        return Err(Error::OutOfRange);
    }
    if strict && z.is_zero() {
        return Ok(FiniteWord::new_unchecked(vec![a.low; length], a));
    }
    let inv_alpha = alpha.inv()?;
    let mut digits = Vec::with_capacity(length);
    for _ in 0..length {
        let (d, next) = qg_step(&z, &inv_alpha, &top, m, strict).ok_or(Error::OutOfRange)?;
        digits.push(d + a.low);
        z = next;
    }
    Ok(FiniteWord::new_unchecked(digits, a))
}

/// First `length` digits of the lexicographically largest expansion of `x`.
pub fn greedy_expansion(sys: &BaseSystem, x: &RealNumber, length: usize) -> Result<FiniteWord> {
    expand(sys, x, length, false)
}

/// First `length` digits of the largest expansion that is not eventually
/// `low`; at the infimum of the attainable interval this is `low^infinity`.
pub fn quasi_greedy_expansion(sys: &BaseSystem, x: &RealNumber, length: usize) -> Result<FiniteWord> {
    expand(sys, x, length, true)
}

/// First `length` digits of `delta(alpha)` over the system's alphabet.
pub fn delta(sys: &BaseSystem, length: usize) -> Result<FiniteWord> {
    sys.delta()?.prefix(length)
}

/// Exact eventually periodic form of `delta(alpha)`, if a remainder repeats
/// within `depth` digits.
pub fn try_ep_form(sys: &BaseSystem, depth: usize) -> Result<Option<EPSeq>> {
    Ok(sys.delta()?.try_ep_form(depth))
}

/// Outcome of the lexicographic uniqueness test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Uniqueness {
    Unique,
    /// The tail after `shift` digits (reflected when `reflected`) is not below
    /// `delta`; `position` is the 1-based offset of the deciding digit, `None`
    /// when the tail equals `delta`.
    NotUnique { shift: usize, position: Option<usize>, reflected: bool },
    /// No violation among the first `depth` digits.
    UndecidedAtDepth(usize),
}

impl Uniqueness {
    pub fn is_unique(&self) -> bool {
        *self == Uniqueness::Unique
    }

    /// Unique, or no violation up to the depth cap.
    pub fn passes(&self) -> bool {
        !matches!(self, Uniqueness::NotUnique { .. })
    }
}

enum Tail {
    Below,
    NotBelow(Option<usize>),
    Undecided,
}

fn tail_vs_delta(tail: &EPSeq, delta: &Delta, depth: usize) -> Tail {
    let exact = |e: &EPSeq| match tail.cmp_exact(e) {
        LexOrder::Less(_) => Tail::Below,
        LexOrder::Greater(p) => Tail::NotBelow(Some(p)),
        _ => Tail::NotBelow(None),
    };
    if let Some(e) = delta.ep_form() {
        return exact(&e);
    }
    match compare_sources(tail, delta, depth) {
        Some(LexOrder::Less(_)) => Tail::Below,
        Some(LexOrder::Greater(p)) => Tail::NotBelow(Some(p)),
        _ => match delta.ep_form() {
            Some(e) => exact(&e),
            None => Tail::Undecided,
        },
    }
}

/// Tests whether `seq` is the unique expansion of its value: every tail after
/// a prefix other than `high^n` is below `delta`, and every reflected tail
/// after a prefix other than `low^n` is below `delta`.
///
/// Exact for eventually periodic input whenever `delta` is eventually periodic
/// or differs from every tail within `depth_cap` digits. Lazy input is checked
/// on its first `depth_cap` digits.
pub fn is_unique_expansion(sys: &BaseSystem, seq: &Seq, depth_cap: usize) -> Result<Uniqueness> {
    if seq.alphabet() != sys.alphabet {
        return Err(Error::AlphabetMismatch(format!("{:?} vs {:?}", seq.alphabet(), sys.alphabet)));
    }
    let delta = sys.delta()?;
    match seq {
        Seq::Finite(_) => Err(Error::OutOfDomain("uniqueness is tested on infinite sequences".into())),
        Seq::Periodic(e) => unique_ep(e, sys.alphabet, &delta, depth_cap),
        Seq::Lazy(l) => unique_lazy(l, sys.alphabet, &delta, depth_cap),
    }
}

fn unique_ep(e: &EPSeq, a: Alphabet, delta: &Delta, depth_cap: usize) -> Result<Uniqueness> {
    let p = e.preperiod().len();
    let l = e.period().len();
    let scan = p + l;
    // first 1-based index where the digit leaves high (resp. low)
    let first_not = |v: Digit| (0..scan).find(|&k| e.digit(k) != v).map(|k| k + 1);
    let start_hi = first_not(a.high());
    let start_lo = first_not(a.low);
    let reflected = e.reflect();
    let mut undecided = false;
    for n in 1..=p + 2 * l {
        for (start, refl) in [(start_hi, false), (start_lo, true)] {
            let Some(s) = start else { continue };
            if n < s || n >= s.max(p) + l {
                continue;
            }
            let tail = if refl { reflected.shift(n) } else { e.shift(n) };
            match tail_vs_delta(&tail, delta, depth_cap) {
                Tail::Below => {}
                Tail::NotBelow(position) => return Ok(Uniqueness::NotUnique { shift: n, position, reflected: refl }),
                Tail::Undecided => undecided = true,
            }
        }
    }
    Ok(if undecided { Uniqueness::UndecidedAtDepth(depth_cap) } else { Uniqueness::Unique })
}

fn unique_lazy(s: &LazySeq, a: Alphabet, delta: &Delta, depth_cap: usize) -> Result<Uniqueness> {
    let mut left_hi = false;
    let mut left_lo = false;
    for n in 1..depth_cap {
        let d = s.get(n);
        left_hi |= d != a.high();
        left_lo |= d != a.low;
        let window = depth_cap - n;
        let checks = [(left_hi, false), (left_lo, true)];
        for (active, refl) in checks {
            if !active {
                continue;
            }
            let tail = Shifted(s, n);
            let verdict = if refl {
                compare_sources(Reflected(tail, a), delta, window)
            } else {
                compare_sources(tail, delta, window)
            };
            if let Some(LexOrder::Greater(p)) = verdict {
                return Ok(Uniqueness::NotUnique { shift: n, position: Some(p), reflected: refl });
            }
        }
    }
    Ok(Uniqueness::UndecidedAtDepth(depth_cap))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Admissibility {
    Admissible,
    NotAdmissible { shift: usize, position: usize },
    UndecidedAtDepth(usize),
}

/// Whether every shift of `seq` is lexicographically at most `seq`.
pub fn admissible_delta(seq: &Seq, depth_cap: usize) -> Result<Admissibility> {
    let low = seq.alphabet().low;
    match seq {
        Seq::Finite(_) => Err(Error::OutOfDomain("admissibility is defined for infinite sequences".into())),
        Seq::Periodic(e) => {
            if e.period().iter().all(|&d| d == low) {
                return Err(Error::OutOfDomain("sequence is eventually the lowest digit".into()));
            }
            for k in 1..e.preperiod().len() + e.period().len() {
                if let LexOrder::Greater(position) = e.shift(k).cmp_exact(e) {
                    return Ok(Admissibility::NotAdmissible { shift: k, position });
                }
            }
            Ok(Admissibility::Admissible)
        }
        Seq::Lazy(l) => {
            for k in 1..depth_cap {
                if let Some(LexOrder::Greater(position)) = compare_sources(Shifted(l, k), l, depth_cap - k) {
                    return Ok(Admissibility::NotAdmissible { shift: k, position });
                }
            }
            Ok(Admissibility::UndecidedAtDepth(depth_cap))
        }
    }
}

/// The `k` with `delta(alpha) = 1 0^k (-1) ...` over `{-1, 0, 1}`, for
/// `(3 - sqrt 5)/2 < alpha < 1/2`.
pub fn forbidden_zero_run(sys: &BaseSystem, depth_cap: usize) -> Result<usize> {
    if sys.alphabet != Alphabet::SIGNED {
        return Err(Error::AlphabetMismatch("forbidden_zero_run works over {-1,0,1}".into()));
    }
    let prec = default_precision();
    let g = RealNumber::Algebraic(AlgebraicReal::golden_threshold());
    match (compare(&sys.alpha, &g, &prec), compare(&sys.alpha, &RealNumber::rational(1, 2), &prec)) {
        (Cmp::Greater, Cmp::Less) => {}
        (Cmp::Undecided, _) | (_, Cmp::Undecided) => {
            return Err(Error::UndecidedComparison(format!("position of {} in ((3-sqrt 5)/2, 1/2)", sys.alpha)))
        }
        _ => return Err(Error::OutOfDomain(format!("{} is not in ((3-sqrt 5)/2, 1/2)", sys.alpha))),
    }
    let delta = sys.delta()?;
    if delta.at(0) != Some(1) {
        return Err(Error::VerificationFailed("delta does not start with 1".into()));
    }
    for k in 1..depth_cap {
        match delta.at(k) {
            Some(0) => {}
            Some(-1) => return Ok(k - 1),
            Some(_) => return Err(Error::VerificationFailed(format!("delta has a 1 at position {}", k + 1))),
            None => return Err(Error::IterationLimit(k)),
        }
    }
    Err(Error::IterationLimit(depth_cap))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub from: usize,
    pub digit: Digit,
    pub to: usize,
}

/// Follower-value graph whose infinite paths from `initial` spell the
/// `{-1,0,1}` expansions of `t`.
#[derive(Clone)]
pub struct ExpansionAutomaton {
    pub states: Vec<QAlpha>,
    pub initial: usize,
    pub edges: Vec<Edge>,
    pub complete: bool,
}

/// Breadth-first construction from `t` over states `s` with
/// `|s| <= alpha/(1-alpha)`, edges `s -> s/alpha - d`. When the cap is hit
/// the partial automaton is returned with `complete == false`.
pub fn build_expansion_automaton(sys: &BaseSystem, t: &QAlpha, state_cap: usize) -> Result<ExpansionAutomaton> {
    if sys.alphabet != Alphabet::SIGNED {
        return Err(Error::AlphabetMismatch("the expansion automaton is built over {-1,0,1}".into()));
    }
    let f = sys.field()?;
    if !t.field().same_as(f) {
        return Err(Error::NotInField(format!("{t:?}")));
    }
    let bound = sys.unit_bound()?;
    let inv_alpha = QAlpha::alpha(f).inv()?;
    let inside = |s: &QAlpha| s.cmp_value(&bound) != Ordering::Greater && s.neg().cmp_value(&bound) != Ordering::Greater;

    let mut states = vec![t.clone()];
    let mut index: HashMap<QAlpha, usize> = HashMap::from([(t.clone(), 0)]);
    let mut edges = Vec::new();
    let mut queue = VecDeque::new();
    if inside(t) {
        queue.push_back(0);
    }
    let mut complete = true;
    while let Some(i) = queue.pop_front() {
        let y = states[i].mul(&inv_alpha);
        for d in [-1, 0, 1] {
            let child = y.add_int(-d as i64);
            if !inside(&child) {
                continue;
            }
            let j = match index.get(&child) {
                Some(&j) => j,
                None => {
                    if states.len() >= state_cap {
                        complete = false;
                        continue;
                    }
                    states.push(child.clone());
                    index.insert(child, states.len() - 1);
                    queue.push_back(states.len() - 1);
                    states.len() - 1
                }
            };
            edges.push(Edge { from: i, digit: d, to: j });
        }
    }
    Ok(ExpansionAutomaton { states, initial: 0, edges, complete })
}

impl ExpansionAutomaton {
    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn require_complete(&self) -> Result<()> {
        if self.complete {
            Ok(())
        } else {
            Err(Error::IncompleteAutomaton)
        }
    }

    pub fn out_edges(&self, s: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.from == s)
    }

    /// States from which an infinite path starts.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.states.len();
        let mut live = vec![true; n];
        loop {
            let mut changed = false;
            for s in 0..n {
                if live[s] && !self.edges.iter().any(|e| e.from == s && live[e.to]) {
                    live[s] = false;
                    changed = true;
                }
            }
            if !changed {
                return live;
            }
        }
    }

    /// Number of length-`len` prefixes of infinite paths from the initial state.
    pub fn count_paths(&self, len: usize) -> u128 {
        let live = self.live_states();
        let n = self.states.len();
        let mut ways = vec![0u128; n];
        if live[self.initial] {
            ways[self.initial] = 1;
        }
        for _ in 0..len {
            let mut next = vec![0u128; n];
            for e in &self.edges {
                if live[e.from] && live[e.to] {
                    next[e.to] += ways[e.from];
                }
            }
            ways = next;
        }
        ways.iter().sum()
    }

    /// All length-`len` prefixes of infinite paths, in lexicographic order.
    pub fn words(&self, len: usize) -> Vec<Vec<Digit>> {
        let live = self.live_states();
        let mut out = Vec::new();
        if !live[self.initial] {
            return out;
        }
        let mut stack = vec![(self.initial, Vec::new())];
        while let Some((s, w)) = stack.pop() {
            if w.len() == len {
                out.push(w);
                continue;
            }
            for e in self.out_edges(s).filter(|e| live[e.to]) {
                let mut w2 = w.clone();
                w2.push(e.digit);
                stack.push((e.to, w2));
            }
        }
        out.sort();
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "states": self.states.iter().map(|s| s.canonical_string()).collect::<Vec<_>>(),
            "initial": self.initial,
            "edges": self.edges,
            "complete": self.complete,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Membership {
    /// A `{0,1}` expansion of `x`.
    In { witness: String },
    /// Every branch leaves the attainable intervals by depth `depth`.
    Out { depth: usize },
    UnknownAtDepth(usize),
}

/// Membership of `x` in the middle-gap Cantor set `{sum e_i alpha^i : e_i in {0,1}}`.
pub fn gamma_membership(alpha: &RealNumber, x: &RealNumber, depth_cap: usize) -> Result<Membership> {
    if depth_cap == 0 {
        return Err(Error::OutOfDomain("depth cap must be at least 1".into()));
    }
    let sys = BaseSystem::new(alpha.clone(), Alphabet::BINARY)?;
    if let Ok(f) = sys.field() {
        if let Ok(xv) = QAlpha::from_real(f, x) {
            return membership_exact(&sys, xv, depth_cap);
        }
    }
    membership_by_enclosure(alpha, x, depth_cap.min(64))
}

fn membership_exact(sys: &BaseSystem, x: QAlpha, depth_cap: usize) -> Result<Membership> {
    let f = sys.field()?;
    let bound = sys.unit_bound()?;
    let inv_alpha = QAlpha::alpha(f).inv()?;
    let inside = |s: &QAlpha| s.sign() != Ordering::Less && s.cmp_value(&bound) != Ordering::Greater;
    if !inside(&x) {
        return Ok(Membership::Out { depth: 0 });
    }
    // 0 = unvisited/finished dead, 1 = on the current path, 2 = left undecided
    let mut status: HashMap<QAlpha, u8> = HashMap::new();
    let mut path_states = vec![x.clone()];
    let mut path_digits: Vec<Digit> = Vec::new();
    let mut next_choice = vec![0usize];
    status.insert(x, 1);
    let mut unknown = false;
    let mut deepest = 0;
    while let Some(choice) = next_choice.last().copied() {
        let depth = path_digits.len();
        deepest = deepest.max(depth);
        let here = path_states.last().unwrap().clone();
        if choice >= 2 || depth >= depth_cap {
            if depth >= depth_cap {
                unknown = true;
                status.insert(here.clone(), 2);
            } else if status.get(&here) == Some(&1) {
                status.insert(here.clone(), 0);
            }
            next_choice.pop();
            path_states.pop();
            path_digits.pop();
            continue;
        }
        *next_choice.last_mut().unwrap() += 1;
        let e = [1, 0][choice];
        let child = here.mul(&inv_alpha).add_int(-e as i64);
        if !inside(&child) {
            continue;
        }
        match status.get(&child) {
            Some(1) => {
                let start = path_states.iter().position(|s| *s == child).unwrap();
                let mut digits = path_digits.clone();
                digits.push(e);
                let w = EPSeq::new(digits[..start].to_vec(), digits[start..].to_vec(), Alphabet::BINARY)?;
                return Ok(Membership::In { witness: w.to_string() });
            }
            Some(2) => unknown = true,
            Some(_) => {}
            None => {
                status.insert(child.clone(), 1);
                path_states.push(child);
                path_digits.push(e);
                next_choice.push(0);
            }
        }
    }
    Ok(if unknown { Membership::UnknownAtDepth(depth_cap) } else { Membership::Out { depth: deepest + 1 } })
}

fn membership_by_enclosure(alpha: &RealNumber, x: &RealNumber, depth: usize) -> Result<Membership> {
    let w = pow2_neg(256);
    let (alo, ahi) = alpha.refine(&w)?;
    let (xlo, xhi) = x.refine(&w)?;
    let one = q(1, 1);
    let tail_factor = &one / (&one - &ahi);
    // (sum_lo, sum_hi, alpha_lo^n, alpha_hi^n) per surviving prefix
    let mut alive = vec![(q(0, 1), q(0, 1), one.clone(), one.clone())];
    for n in 1..=depth {
        let mut next = Vec::new();
        for (slo, shi, plo, phi) in &alive {
            let plo = plo * &alo;
            let phi = phi * &ahi;
            for e in [0, 1] {
                let (nlo, nhi) = if e == 1 { (slo + &plo, shi + &phi) } else { (slo.clone(), shi.clone()) };
                let reach = &nhi + &phi * &ahi * &tail_factor;
                if xhi >= nlo && xlo <= reach {
                    next.push((nlo, nhi, plo.clone(), phi.clone()));
                }
            }
        }
        if next.is_empty() {
            return Ok(Membership::Out { depth: n });
        }
        if next.len() > 4096 {
            return Ok(Membership::UnknownAtDepth(n));
        }
        alive = next;
    }
    Ok(Membership::UnknownAtDepth(depth))
}

/// Parses a base for a `{-1,0,1}` system and embeds `t` given as a real.
pub fn qalpha_of(sys: &BaseSystem, t: &RealNumber) -> Result<QAlpha> {
    QAlpha::from_real(sys.field()?, t)
}

/// `-alpha / (1 + alpha)`, the value of `((-1) 1)^infinity`.
pub fn sum_neg_alpha(sys: &BaseSystem) -> Result<QAlpha> {
    let f = sys.field()?;
    let a = QAlpha::alpha(f);
    a.neg().div(&QAlpha::from_int(f, 1).add(&a))
}

/// `(alpha^2 - alpha) / (1 - alpha^3)`, the common value of
/// `(0 (-1) (-1))^infinity` and `((-1) 1 0)^infinity` when `alpha = sqrt 2 - 1`.
pub fn silver_t(sys: &BaseSystem) -> Result<QAlpha> {
    let f = sys.field()?;
    let a = QAlpha::alpha(f);
    let one = QAlpha::from_int(f, 1);
    a.pow(2).sub(&a).div(&one.sub(&a.pow(3)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_seq;

    fn rat_sys(n: i64, d: i64, a: Alphabet) -> BaseSystem {
        BaseSystem::new(RealNumber::rational(n, d), a).unwrap()
    }

    fn golden(a: Alphabet) -> BaseSystem {
        BaseSystem::new(RealNumber::Algebraic(AlgebraicReal::golden_threshold()), a).unwrap()
    }

    #[test]
    fn greedy_trivial_cases() {
        let s = rat_sys(1, 2, Alphabet::BINARY);
        assert_eq!(greedy_expansion(&s, &RealNumber::rational(1, 1), 6).unwrap().digits(), &[1; 6]);
        assert_eq!(quasi_greedy_expansion(&s, &RealNumber::rational(1, 1), 6).unwrap().digits(), &[1; 6]);
        let s = rat_sys(2, 5, Alphabet::BINARY);
        assert_eq!(greedy_expansion(&s, &RealNumber::rational(2, 5), 5).unwrap().digits(), &[1, 0, 0, 0, 0]);
        assert!(matches!(greedy_expansion(&s, &RealNumber::rational(1, 1), 3), Err(Error::OutOfRange)));
    }

    #[test]
    fn quasi_greedy_at_nine_twentieths() {
        let s = rat_sys(9, 20, Alphabet::zero_to(2));
        let d = quasi_greedy_expansion(&s, &RealNumber::rational(1, 1), 3).unwrap();
        assert_eq!(d.digits(), &[2, 0, 1]);
    }

    #[test]
    fn delta_at_golden_threshold_is_periodic() {
        let s = golden(Alphabet::zero_to(2));
        let e = try_ep_form(&s, 100).unwrap().unwrap();
        assert_eq!((e.preperiod(), e.period()), (&[2][..], &[1][..]));
        let g = greedy_expansion(&s, &RealNumber::rational(1, 1), 8).unwrap();
        // the greedy expansion never terminates here, so it is the quasi-greedy one
        assert_eq!(g.digits(), delta(&s, 8).unwrap().digits());
        let signed = golden(Alphabet::SIGNED);
        let d = delta(&signed, 64).unwrap();
        assert_eq!(d.digits()[0], 1);
        assert!(d.digits()[1..].iter().all(|&x| x == 0));
    }

    #[test]
    fn delta_at_one_third_pinned() {
        let s = rat_sys(1, 3, Alphabet::zero_to(2));
        let e = try_ep_form(&s, 10).unwrap().unwrap();
        assert_eq!(e.to_string(), "(2)");
    }

    #[test]
    fn admissibility_examples() {
        let t = Alphabet::zero_to(2);
        assert_eq!(admissible_delta(&parse_seq("2,(1)", t).unwrap(), 10).unwrap(), Admissibility::Admissible);
        assert!(matches!(
            admissible_delta(&parse_seq("(1,2)", t).unwrap(), 10).unwrap(),
            Admissibility::NotAdmissible { .. }
        ));
        let l = Seq::Lazy(crate::thuemorse::one_plus_lambda_seq());
        assert_eq!(admissible_delta(&l, 300).unwrap(), Admissibility::UndecidedAtDepth(300));
    }

    #[test]
    fn forbidden_run_examples() {
        assert_eq!(forbidden_zero_run(&rat_sys(9, 20, Alphabet::SIGNED), 100).unwrap(), 0);
        assert!(forbidden_zero_run(&rat_sys(77, 200, Alphabet::SIGNED), 100).unwrap() >= 1);
        assert!(matches!(forbidden_zero_run(&golden(Alphabet::SIGNED), 100), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn uniqueness_examples() {
        let s = rat_sys(9, 25, Alphabet::SIGNED);
        let seq = parse_seq("(+-+-0)", Alphabet::SIGNED).unwrap();
        assert_eq!(is_unique_expansion(&s, &seq, 1000).unwrap(), Uniqueness::Unique);
        let a: RealNumber = "alg:-1,1,2,2@[2/5,1/2]".parse().unwrap();
        let s = BaseSystem::signed(a).unwrap();
        let seq = parse_seq("(-+)", Alphabet::SIGNED).unwrap();
        assert!(!is_unique_expansion(&s, &seq, 1000).unwrap().passes());
    }

    #[test]
    fn endpoint_automaton_is_a_single_loop() {
        let s = rat_sys(2, 5, Alphabet::SIGNED);
        let t = s.unit_bound().unwrap();
        let a = build_expansion_automaton(&s, &t, 100).unwrap();
        assert_eq!(a.num_states(), 1);
        assert_eq!(a.edges, vec![Edge { from: 0, digit: 1, to: 0 }]);
        assert!(a.complete);
    }

    #[test]
    fn membership_examples() {
        let a = RealNumber::rational(2, 5);
        assert!(matches!(gamma_membership(&a, &RealNumber::rational(0, 1), 20).unwrap(), Membership::In { .. }));
        assert!(matches!(gamma_membership(&a, &RealNumber::rational(2, 3), 20).unwrap(), Membership::In { .. }));
        assert!(matches!(gamma_membership(&a, &RealNumber::rational(1, 1), 20).unwrap(), Membership::Out { .. }));
        // first gap is (4/15, 2/5)
        assert!(matches!(gamma_membership(&a, &RealNumber::rational(1, 3), 40).unwrap(), Membership::Out { .. }));
    }
}
