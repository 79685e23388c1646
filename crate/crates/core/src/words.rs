//! Digit sequences over consecutive-integer alphabets: lexicographic order,
//! reflection, zero densities and the text format.
//!
//! Positions reported to callers are 1-based; internal indexing is 0-based.

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, q, Rational};
use num_integer::Integer;
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

pub type Digit = i32;

/// Default depth cap for comparisons involving lazily generated sequences.
pub const DEFAULT_DEPTH_CAP: usize = 1_000_000;

/// Digits `{low, ..., low + size - 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Alphabet {
    pub low: Digit,
    pub size: u32,
}

impl Alphabet {
    /// `{-1, 0, 1}`.
    pub const SIGNED: Alphabet = Alphabet { low: -1, size: 3 };
    /// `{0, 1}`.
    pub const BINARY: Alphabet = Alphabet { low: 0, size: 2 };

    pub fn new(low: Digit, size: u32) -> Result<Self> {
        if size < 2 {
            return Err(Error::AlphabetMismatch(format!("alphabet size must be >= 2, got {size}")));
        }
        Ok(Alphabet { low, size })
    }

    /// `{0, ..., m}`.
    pub fn zero_to(m: u32) -> Self {
        Alphabet { low: 0, size: m + 1 }
    }

    pub fn high(&self) -> Digit {
        self.low + self.size as Digit - 1
    }

    /// `M` in the `{0..M}` normalisation.
    pub fn max_shift(&self) -> Digit {
        self.size as Digit - 1
    }

    pub fn contains(&self, d: Digit) -> bool {
        d >= self.low && d <= self.high()
    }

    pub fn reflect_digit(&self, d: Digit) -> Digit {
        2 * self.low + self.size as Digit - 1 - d
    }

    pub fn check(&self, digits: &[Digit]) -> Result<()> {
        match digits.iter().find(|d| !self.contains(**d)) {
            Some(&digit) => Err(Error::DigitOutOfAlphabet { digit, low: self.low, high: self.high() }),
            None => Ok(()),
        }
    }
}

/// A source of digits by 0-based index; `None` means the digit is not
/// available (end of a finite word, or beyond a computed prefix).
pub trait DigitSource {
    fn at(&self, k: usize) -> Option<Digit>;
}

impl<T: DigitSource + ?Sized> DigitSource for &T {
    fn at(&self, k: usize) -> Option<Digit> {
        (**self).at(k)
    }
}

/// `sigma^shift` of a source.
pub struct Shifted<S>(pub S, pub usize);

impl<S: DigitSource> DigitSource for Shifted<S> {
    fn at(&self, k: usize) -> Option<Digit> {
        self.0.at(k + self.1)
    }
}

/// Digitwise reflection of a source.
pub struct Reflected<S>(pub S, pub Alphabet);

impl<S: DigitSource> DigitSource for Reflected<S> {
    fn at(&self, k: usize) -> Option<Digit> {
        self.0.at(k).map(|d| self.1.reflect_digit(d))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteWord {
    digits: Vec<Digit>,
    alphabet: Alphabet,
}

impl FiniteWord {
    pub fn new(digits: Vec<Digit>, alphabet: Alphabet) -> Result<Self> {
        alphabet.check(&digits)?;
        Ok(FiniteWord { digits, alphabet })
    }

    pub(crate) fn new_unchecked(digits: Vec<Digit>, alphabet: Alphabet) -> Self {
        debug_assert!(alphabet.check(&digits).is_ok());
        FiniteWord { digits, alphabet }
    }

    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn zeros(&self) -> usize {
        self.digits.iter().filter(|&&d| d == 0).count()
    }

    pub fn reflect(&self) -> FiniteWord {
        FiniteWord {
            digits: self.digits.iter().map(|&d| self.alphabet.reflect_digit(d)).collect(),
            alphabet: self.alphabet,
        }
    }

    pub fn concat(&self, other: &FiniteWord) -> FiniteWord {
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&other.digits);
        FiniteWord { digits, alphabet: self.alphabet }
    }

    /// `omega^-`: the last digit decremented.
    pub fn decrement_last(&self) -> Option<FiniteWord> {
        let mut digits = self.digits.clone();
        let last = digits.last_mut()?;
        *last -= 1;
        FiniteWord::new(digits, self.alphabet).ok()
    }

    pub fn zero_density(&self) -> FreqReport {
        if self.digits.is_empty() {
            return FreqReport::exact(q(0, 1));
        }
        FreqReport::exact(q(self.zeros() as i64, self.len() as i64))
    }
}

impl DigitSource for FiniteWord {
    fn at(&self, k: usize) -> Option<Digit> {
        self.digits.get(k).copied()
    }
}

/// `preperiod period^infinity`, stored in canonical form: the period is
/// primitive and the preperiod is as short as possible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EPSeq {
    pre: Vec<Digit>,
    period: Vec<Digit>,
    alphabet: Alphabet,
}

impl EPSeq {
    pub fn new(pre: Vec<Digit>, period: Vec<Digit>, alphabet: Alphabet) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Parse("period of an eventually periodic sequence must be nonempty".into()));
        }
        alphabet.check(&pre)?;
        alphabet.check(&period)?;
        Ok(Self::canonical(pre, period, alphabet))
    }

    pub fn periodic(period: Vec<Digit>, alphabet: Alphabet) -> Result<Self> {
        Self::new(Vec::new(), period, alphabet)
    }

    fn canonical(mut pre: Vec<Digit>, mut period: Vec<Digit>, alphabet: Alphabet) -> Self {
        let n = period.len();
        if let Some(d) = (1..=n).find(|&d| n % d == 0 && (d..n).all(|i| period[i] == period[i - d])) {
            period.truncate(d);
        }
        while let (Some(&a), Some(&b)) = (pre.last(), period.last()) {
            if a != b {
                break;
            }
            pre.pop();
            period.rotate_right(1);
        }
        EPSeq { pre, period, alphabet }
    }

    pub fn preperiod(&self) -> &[Digit] {
        &self.pre
    }

    pub fn period(&self) -> &[Digit] {
        &self.period
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn prefix(&self, n: usize) -> Vec<Digit> {
        (0..n).map(|k| self.digit(k)).collect()
    }

    pub fn digit(&self, k: usize) -> Digit {
        if k < self.pre.len() {
            self.pre[k]
        } else {
            self.period[(k - self.pre.len()) % self.period.len()]
        }
    }

    pub fn reflect(&self) -> EPSeq {
        let f = |v: &[Digit]| v.iter().map(|&d| self.alphabet.reflect_digit(d)).collect();
        EPSeq { pre: f(&self.pre), period: f(&self.period), alphabet: self.alphabet }
    }

    /// `sigma^n`.
    pub fn shift(&self, n: usize) -> EPSeq {
        if n <= self.pre.len() {
            return EPSeq { pre: self.pre[n..].to_vec(), period: self.period.clone(), alphabet: self.alphabet };
        }
        let mut period = self.period.clone();
        period.rotate_left((n - self.pre.len()) % self.period.len());
        EPSeq { pre: Vec::new(), period, alphabet: self.alphabet }
    }

    /// Exact zero density (the preperiod does not contribute).
    pub fn zero_density(&self) -> FreqReport {
        let zeros = self.period.iter().filter(|&&d| d == 0).count();
        FreqReport::exact(q(zeros as i64, self.period.len() as i64))
    }

    pub fn map_digits(&self, alphabet: Alphabet, f: impl Fn(Digit) -> Digit) -> Result<EPSeq> {
        EPSeq::new(self.pre.iter().map(|&d| f(d)).collect(), self.period.iter().map(|&d| f(d)).collect(), alphabet)
    }

    pub fn cmp_exact(&self, other: &EPSeq) -> LexOrder {
        let bound = self.pre.len().max(other.pre.len()) + self.period.len().lcm(&other.period.len());
        compare_sources(self, other, bound).unwrap_or(LexOrder::Equal)
    }
}

impl DigitSource for EPSeq {
    fn at(&self, k: usize) -> Option<Digit> {
        Some(self.digit(k))
    }
}

/// A sequence defined by a pure generator on positive (1-based) indices.
#[derive(Clone)]
pub struct LazySeq {
    generator: Arc<dyn Fn(usize) -> Digit + Send + Sync>,
    alphabet: Alphabet,
    description: String,
}

impl LazySeq {
    pub fn new(generator: Arc<dyn Fn(usize) -> Digit + Send + Sync>, alphabet: Alphabet, description: impl Into<String>) -> Self {
        LazySeq { generator, alphabet, description: description.into() }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// Digit at 1-based position `i`.
    pub fn get(&self, i: usize) -> Digit {
        (self.generator)(i)
    }

    pub fn prefix(&self, n: usize) -> FiniteWord {
        FiniteWord::new_unchecked((1..=n).map(|i| self.get(i)).collect(), self.alphabet)
    }

    pub fn map(&self, alphabet: Alphabet, f: impl Fn(Digit) -> Digit + Send + Sync + 'static, description: impl Into<String>) -> LazySeq {
        let g = self.generator.clone();
        LazySeq::new(Arc::new(move |i| f(g(i))), alphabet, description)
    }

    pub fn reflect(&self) -> LazySeq {
        let a = self.alphabet;
        self.map(a, move |d| a.reflect_digit(d), format!("reflect({})", self.description))
    }

    pub fn zero_density_prefix(&self, n: usize) -> FreqReport {
        let zeros = (1..=n).filter(|&i| self.get(i) == 0).count();
        FreqReport::estimate(q(zeros as i64, n.max(1) as i64), n)
    }
}

impl DigitSource for LazySeq {
    fn at(&self, k: usize) -> Option<Digit> {
        Some(self.get(k + 1))
    }
}

impl fmt::Debug for LazySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LazySeq({})", self.description)
    }
}

/// Any of the three sequence shapes.
#[derive(Clone, Debug)]
pub enum Seq {
    Finite(FiniteWord),
    Periodic(EPSeq),
    Lazy(LazySeq),
}

impl Seq {
    pub fn alphabet(&self) -> Alphabet {
        match self {
            Seq::Finite(w) => w.alphabet,
            Seq::Periodic(s) => s.alphabet,
            Seq::Lazy(l) => l.alphabet,
        }
    }

    pub fn reflect(&self) -> Seq {
        reflect(self)
    }
}

impl DigitSource for Seq {
    fn at(&self, k: usize) -> Option<Digit> {
        match self {
            Seq::Finite(w) => w.at(k),
            Seq::Periodic(s) => s.at(k),
            Seq::Lazy(l) => l.at(k),
        }
    }
}

/// Outcome of a lexicographic comparison; positions are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LexOrder {
    Less(usize),
    Equal,
    Greater(usize),
    UndecidedAtDepth(usize),
}

impl LexOrder {
    pub fn is_less(&self) -> bool {
        matches!(self, LexOrder::Less(_))
    }

    pub fn is_greater(&self) -> bool {
        matches!(self, LexOrder::Greater(_))
    }

    pub fn reverse(self) -> LexOrder {
        match self {
            LexOrder::Less(p) => LexOrder::Greater(p),
            LexOrder::Greater(p) => LexOrder::Less(p),
            o => o,
        }
    }
}

/// Compares two sources over the first `depth` positions. Returns `None` when
/// no difference is found and both sources supplied every digit; an
/// unavailable digit on either side yields `UndecidedAtDepth`.
pub fn compare_sources<A: DigitSource, B: DigitSource>(a: A, b: B, depth: usize) -> Option<LexOrder> {
    for k in 0..depth {
        match (a.at(k), b.at(k)) {
            (Some(x), Some(y)) => {
                if x < y {
                    return Some(LexOrder::Less(k + 1));
                }
                if x > y {
                    return Some(LexOrder::Greater(k + 1));
                }
            }
            _ => return Some(LexOrder::UndecidedAtDepth(k)),
        }
    }
    None
}

pub fn lex_compare(a: &Seq, b: &Seq, depth_cap: usize) -> Result<LexOrder> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch(format!("{:?} vs {:?}", a.alphabet(), b.alphabet())));
    }
    if depth_cap == 0 {
        return Err(Error::OutOfDomain("depth cap must be at least 1".into()));
    }
    Ok(match (a, b) {
        (Seq::Periodic(x), Seq::Periodic(y)) => x.cmp_exact(y),
        (Seq::Finite(x), Seq::Finite(y)) => {
            let n = x.len().min(y.len());
            match compare_sources(x, y, n) {
                Some(o) => o,
                None if x.len() == y.len() => LexOrder::Equal,
                None if x.len() < y.len() => LexOrder::Less(n + 1),
                None => LexOrder::Greater(n + 1),
            }
        }
        (Seq::Finite(x), other) => {
            compare_sources(x, other, x.len()).unwrap_or(LexOrder::Less(x.len() + 1))
        }
        (other, Seq::Finite(y)) => {
            compare_sources(other, y, y.len()).unwrap_or(LexOrder::Greater(y.len() + 1))
        }
        _ => compare_sources(a, b, depth_cap).unwrap_or(LexOrder::UndecidedAtDepth(depth_cap)),
    })
}

pub fn reflect(s: &Seq) -> Seq {
    match s {
        Seq::Finite(w) => Seq::Finite(w.reflect()),
        Seq::Periodic(e) => Seq::Periodic(e.reflect()),
        Seq::Lazy(l) => Seq::Lazy(l.reflect()),
    }
}

/// Zero frequency report. For eventually periodic sequences and finite words
/// the value is exact; for lazy sequences it is a prefix estimate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreqReport {
    #[serde(serialize_with = "ser_rational")]
    pub lower: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub upper: Rational,
    pub exact: bool,
    pub prefix_used: Option<usize>,
}

pub(crate) fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

impl FreqReport {
    pub fn exact(v: Rational) -> Self {
        FreqReport { lower: v.clone(), upper: v, exact: true, prefix_used: None }
    }

    pub fn estimate(v: Rational, n: usize) -> Self {
        FreqReport { lower: v.clone(), upper: v, exact: false, prefix_used: Some(n) }
    }
}

/// Exact zero density of a finite word or eventually periodic sequence.
pub fn zero_density(s: &Seq) -> Result<FreqReport> {
    match s {
        Seq::Finite(w) => Ok(w.zero_density()),
        Seq::Periodic(e) => Ok(e.zero_density()),
        Seq::Lazy(_) => Err(Error::OutOfDomain("use zero_density_prefix for lazy sequences".into())),
    }
}

pub fn zero_density_prefix(s: &LazySeq, n: usize) -> Result<FreqReport> {
    if n == 0 {
        return Err(Error::OutOfDomain("prefix length must be at least 1".into()));
    }
    Ok(s.zero_density_prefix(n))
}

/// Order-preserving relabelling `d -> d - from.low + to.low`.
pub fn substitute_alphabet(s: &Seq, from: Alphabet, to: Alphabet) -> Result<Seq> {
    if from.size != to.size {
        return Err(Error::SizeMismatch(from.size, to.size));
    }
    if s.alphabet() != from {
        return Err(Error::AlphabetMismatch(format!("sequence is over {:?}, not {:?}", s.alphabet(), from)));
    }
    let off = to.low - from.low;
    Ok(match s {
        Seq::Finite(w) => Seq::Finite(FiniteWord::new_unchecked(w.digits.iter().map(|d| d + off).collect(), to)),
        Seq::Periodic(e) => Seq::Periodic(e.map_digits(to, |d| d + off)?),
        Seq::Lazy(l) => Seq::Lazy(l.map(to, move |d| d + off, format!("shift({})", l.description))),
    })
}

/// Searches for equal-length words `I <= J` with `s = I J^infinity`.
///
/// Any such factorisation has `|I| = k >= |preperiod|` with the canonical
/// period length dividing `k`, and the verdict is the same for every such
/// `k`, so checking `k` up to `|preperiod| + |period|` is complete.
pub fn strongly_eventually_periodic(s: &EPSeq) -> Result<Option<(FiniteWord, FiniteWord)>> {
    if s.alphabet.size != 2 {
        return Err(Error::AlphabetMismatch("strong eventual periodicity is defined over two letters".into()));
    }
    let p = s.pre.len();
    let l = s.period.len();
    for k in 1..=p + l {
        if k < p || k % l != 0 {
            continue;
        }
        let i = FiniteWord::new_unchecked(s.prefix(k), s.alphabet);
        let j = FiniteWord::new_unchecked((k..2 * k).map(|x| s.digit(x)).collect(), s.alphabet);
        if compare_sources(&i, &j, k).is_none_or(|o| o.is_less()) {
            return Ok(Some((i, j)));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// text format

fn signed_char(d: Digit) -> char {
    match d {
        1 => '+',
        -1 => '-',
        _ => '0',
    }
}

fn render_digits(digits: &[Digit], alphabet: Alphabet) -> String {
    if alphabet == Alphabet::SIGNED {
        digits.iter().map(|&d| signed_char(d)).collect()
    } else {
        digits.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_digits(&self.digits, self.alphabet))
    }
}

impl fmt::Display for EPSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pre = render_digits(&self.pre, self.alphabet);
        let per = render_digits(&self.period, self.alphabet);
        if self.alphabet != Alphabet::SIGNED && !pre.is_empty() {
            write!(f, "{pre},({per})")
        } else {
            write!(f, "{pre}({per})")
        }
    }
}

fn parse_signed(body: &str) -> Result<Vec<Digit>> {
    body.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            '0' => Ok(0),
            _ => Err(Error::Parse(format!("unexpected character '{c}' in sequence"))),
        })
        .collect()
}

fn parse_ints(body: &str) -> Result<Vec<Digit>> {
    body.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<Digit>().map_err(|_| Error::Parse(format!("bad digit '{t}'"))))
        .collect()
}

/// Parses `WORD` or `WORD(PERIOD)`. Over `{-1,0,1}` digits are written
/// `+`, `-`, `0`; otherwise as comma-separated integers.
pub fn parse_seq(s: &str, alphabet: Alphabet) -> Result<Seq> {
    let s = s.trim();
    let parse: fn(&str) -> Result<Vec<Digit>> = if alphabet == Alphabet::SIGNED { parse_signed } else { parse_ints };
    match s.find('(') {
        None => {
            if s.contains(')') {
                return Err(Error::Parse("unbalanced ')'".into()));
            }
            Ok(Seq::Finite(FiniteWord::new(parse(s)?, alphabet)?))
        }
        Some(open) => {
            let close = s.rfind(')').ok_or_else(|| Error::Parse("missing ')'".into()))?;
            if close != s.len() - 1 || close < open {
                return Err(Error::Parse("the periodic block must close the sequence".into()));
            }
            let pre = parse(s[..open].trim_end_matches(','))?;
            let period = parse(&s[open + 1..close])?;
            Ok(Seq::Periodic(EPSeq::new(pre, period, alphabet)?))
        }
    }
}

pub fn parse_epseq(s: &str, alphabet: Alphabet) -> Result<EPSeq> {
    match parse_seq(s, alphabet)? {
        Seq::Periodic(e) => Ok(e),
        _ => Err(Error::Parse(format!("'{s}' is not eventually periodic; add a '(...)' block"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> Seq {
        parse_seq(s, Alphabet::SIGNED).unwrap()
    }

    #[test]
    fn canonical_form() {
        let e = EPSeq::new(vec![1, 0, 1], vec![0, 1, 0, 1], Alphabet::BINARY).unwrap();
        // 101(01)^inf = 1(01)^inf ... = (10)^inf
        assert_eq!(e.preperiod(), &[] as &[Digit]);
        assert_eq!(e.period(), &[1, 0]);
        assert_eq!(e.to_string(), "(1,0)");
    }

    #[test]
    fn lex_examples() {
        assert!(lex_compare(&sp("-(0)"), &sp("+(0)"), 10).unwrap().is_less());
        assert_eq!(lex_compare(&sp("+(0)"), &sp("+(0)"), 10).unwrap(), LexOrder::Equal);
        // 1 0^{k+1} ... vs 1 0^k (-1) ...
        let k = 3;
        let a = Seq::Periodic(EPSeq::new(vec![1, 0, 0, 0, 0], vec![0], Alphabet::SIGNED).unwrap());
        let b = Seq::Periodic(EPSeq::new(vec![1, 0, 0, 0, -1], vec![0], Alphabet::SIGNED).unwrap());
        assert_eq!(lex_compare(&a, &b, 10).unwrap(), LexOrder::Greater(k + 2));
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let a = sp("+(0)");
        let b = parse_seq("1,(0)", Alphabet::BINARY).unwrap();
        assert!(matches!(lex_compare(&a, &b, 5), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn lazy_equality_is_undecided() {
        let z = Seq::Lazy(LazySeq::new(Arc::new(|_| 0), Alphabet::SIGNED, "zeros"));
        assert_eq!(lex_compare(&z, &sp("(0)"), 100).unwrap(), LexOrder::UndecidedAtDepth(100));
    }

    #[test]
    fn reflect_examples() {
        let w = FiniteWord::new(vec![1, 0, -1, 1], Alphabet::SIGNED).unwrap();
        assert_eq!(w.reflect().digits(), &[-1, 0, 1, -1]);
        let w1 = FiniteWord::new(vec![1, 0], Alphabet::SIGNED).unwrap();
        let w2 = FiniteWord::new(vec![1, 0, -1, 1], Alphabet::SIGNED).unwrap();
        assert_eq!(w1.concat(&w1.reflect()), w2.decrement_last().unwrap());
        let t = FiniteWord::new(vec![0, 2, 1], Alphabet::zero_to(2)).unwrap();
        assert_eq!(t.reflect().digits(), &[2, 0, 1]);
    }

    #[test]
    fn density_examples() {
        let w1 = Seq::Finite(FiniteWord::new(vec![1, 0], Alphabet::SIGNED).unwrap());
        assert_eq!(zero_density(&w1).unwrap(), FreqReport::exact(q(1, 2)));
        assert_eq!(zero_density(&sp("0+(+-0)")).unwrap(), FreqReport::exact(q(1, 3)));
    }

    #[test]
    fn substitution_examples() {
        let t = Alphabet::zero_to(2);
        let w = Seq::Finite(FiniteWord::new(vec![2, 1, 0], t).unwrap());
        let s = substitute_alphabet(&w, t, Alphabet::SIGNED).unwrap();
        assert_eq!(s.to_string_signed(), "+0-");
        let back = substitute_alphabet(&s, Alphabet::SIGNED, t).unwrap();
        assert!(matches!(back, Seq::Finite(ref f) if f.digits() == [2, 1, 0]));
        assert!(matches!(
            substitute_alphabet(&w, t, Alphabet::BINARY),
            Err(Error::SizeMismatch(3, 2))
        ));
    }

    #[test]
    fn strong_eventual_periodicity_examples() {
        let b = Alphabet::BINARY;
        let s = parse_epseq("(0,0,1)", b).unwrap();
        let (i, j) = strongly_eventually_periodic(&s).unwrap().unwrap();
        assert_eq!(i.digits(), &[0, 0, 1]);
        assert_eq!(j.digits(), &[0, 0, 1]);
        let s = parse_epseq("0,1,(1,0)", b).unwrap();
        let (i, j) = strongly_eventually_periodic(&s).unwrap().unwrap();
        assert_eq!((i.digits(), j.digits()), (&[0, 1][..], &[1, 0][..]));
        let s = parse_epseq("1,0,(0,1)", b).unwrap();
        assert!(strongly_eventually_periodic(&s).unwrap().is_none());
    }

    #[test]
    fn text_round_trip() {
        for s in ["(+-)", "+0(0)", "-0+(0--+)", "+-0"] {
            let parsed = sp(s);
            let shown = parsed.to_string_signed();
            let again = sp(&shown);
            assert_eq!(lex_compare(&parsed, &again, 64).unwrap(), LexOrder::Equal, "{s} -> {shown}");
        }
        assert!(parse_seq("+(-", Alphabet::SIGNED).is_err());
        assert!(parse_seq("+x", Alphabet::SIGNED).is_err());
        let e = parse_epseq("2,(1)", Alphabet::zero_to(2)).unwrap();
        assert_eq!(e.prefix(3), vec![2, 1, 1]);
    }

    impl Seq {
        fn to_string_signed(&self) -> String {
            match self {
                Seq::Finite(w) => w.to_string(),
                Seq::Periodic(e) => e.to_string(),
                Seq::Lazy(l) => l.description().to_string(),
            }
        }
    }
}
