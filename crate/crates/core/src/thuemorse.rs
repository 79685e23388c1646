//! The Thue–Morse sequence, its difference sequence `lambda`, the block words
//! `w_n`, `zeta_n`, `eta_n`, and the constant `alpha_KL`.

use crate::error::{Error, Result};
use crate::exactnum::series::{CoeffFn, KnownConstant};
use crate::exactnum::{compare, default_precision, q, Cmp, RealNumber, Rational, SeriesReal};
use crate::expansions::{is_unique_expansion, BaseSystem, Uniqueness};
use crate::words::{Alphabet, Digit, EPSeq, FiniteWord, LazySeq};
use serde::Serialize;
use std::sync::{Arc, OnceLock};

/// Largest `n` for which the `2^n`-letter block words are materialised.
pub const MAX_BLOCK_N: u32 = 26;

/// `tau_i` for `i >= 0`.
pub fn tau(i: u64) -> Digit {
    (i.count_ones() & 1) as Digit
}

/// `lambda_i = tau_i - tau_{i-1}` for `i >= 1`.
pub fn lambda(i: u64) -> Digit {
    debug_assert!(i >= 1);
    tau(i) - tau(i - 1)
}

fn need_positive(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::OutOfDomain("prefix length must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn check_block_n(n: u32) -> Result<()> {
    if n > MAX_BLOCK_N {
        return Err(Error::OutOfDomain(format!("n = {n} exceeds the block limit {MAX_BLOCK_N}")));
    }
    Ok(())
}

/// `tau_0 .. tau_{n-1}`.
pub fn tau_prefix(n: usize) -> Result<FiniteWord> {
    need_positive(n)?;
    Ok(FiniteWord::new_unchecked((0..n as u64).map(tau).collect(), Alphabet::BINARY))
}

/// `lambda_1 .. lambda_n`.
pub fn lambda_prefix(n: usize) -> Result<FiniteWord> {
    need_positive(n)?;
    Ok(FiniteWord::new_unchecked((1..=n as u64).map(lambda).collect(), Alphabet::SIGNED))
}

pub fn tau_seq() -> LazySeq {
    LazySeq::new(Arc::new(|i| tau(i as u64 - 1)), Alphabet::BINARY, "tau")
}

pub fn lambda_seq() -> LazySeq {
    LazySeq::new(Arc::new(|i| lambda(i as u64)), Alphabet::SIGNED, "lambda")
}

/// `1 + lambda_i` over `{0, 1, 2}`.
pub fn one_plus_lambda_seq() -> LazySeq {
    LazySeq::new(Arc::new(|i| 1 + lambda(i as u64)), Alphabet::zero_to(2), "1+lambda")
}

/// `w_n = lambda_1 .. lambda_{2^n}`.
pub fn w(n: u32) -> Result<FiniteWord> {
    check_block_n(n)?;
    lambda_prefix(1 << n)
}

/// `zeta_n = 0 lambda_1 .. lambda_{2^n - 1}`.
pub fn zeta(n: u32) -> Result<FiniteWord> {
    block_with_head(n, 0)
}

/// `eta_n = (-1) lambda_1 .. lambda_{2^n - 1}`.
pub fn eta(n: u32) -> Result<FiniteWord> {
    block_with_head(n, -1)
}

fn block_with_head(n: u32, head: Digit) -> Result<FiniteWord> {
    check_block_n(n)?;
    let len = 1u64 << n;
    let digits = std::iter::once(head).chain((1..len).map(lambda)).collect();
    Ok(FiniteWord::new_unchecked(digits, Alphabet::SIGNED))
}

/// `d(w_n) = -sum_{i=1}^n (-1/2)^i`.
pub fn dw(n: u32) -> Rational {
    let mut s = q(0, 1);
    let mut p = q(1, 1);
    for _ in 0..n {
        p *= q(-1, 2);
        s -= &p;
    }
    s
}

/// `d(w_n)` by counting zeros.
pub fn dw_counted(n: u32) -> Result<Rational> {
    let word = w(n)?;
    Ok(q(word.zeros() as i64, word.len() as i64))
}

/// Zeros of `w_n` equal `2 * zeros(w_{n-1}) - 1` for even `n` and `+ 1` for odd `n`.
pub fn zero_count_recursion_check(n: u32) -> Result<bool> {
    if n < 2 {
        return Err(Error::OutOfDomain("the recursion starts at n = 2".into()));
    }
    let now = w(n)?.zeros() as i64;
    let before = w(n - 1)?.zeros() as i64;
    let step = if n % 2 == 0 { -1 } else { 1 };
    Ok(now == 2 * before + step)
}

static ALPHA_KL: OnceLock<SeriesReal> = OnceLock::new();

/// `alpha_KL` as the root in `(1/3, 1/2)` of `sum (1 + lambda_i) x^i = 1`.
/// Clones share one enclosure cache.
pub fn alpha_kl_series() -> SeriesReal {
    ALPHA_KL
        .get_or_init(|| {
            let coeffs: CoeffFn = Arc::new(|i| 1 + lambda(i as u64) as i64);
            SeriesReal::root(coeffs, q(2, 1), q(1, 1), (q(1, 3), q(1, 2)), "sum (1+lambda_i) x^i = 1")
                .expect("alpha_KL bracket")
                .with_known(KnownConstant::AlphaKl)
        })
        .clone()
}

/// Certified enclosure of `alpha_KL` of width at most `width`.
pub fn alpha_kl(width: &Rational) -> Result<(Rational, Rational)> {
    alpha_kl_series().refine(width)
}

/// The four SFT blocks and the two frequency words built from them.
#[derive(Clone, Debug, Serialize)]
pub struct SftBlocks {
    pub n: u32,
    #[serde(serialize_with = "ser_word")]
    pub zeta: FiniteWord,
    #[serde(serialize_with = "ser_word")]
    pub eta: FiniteWord,
    #[serde(serialize_with = "ser_word")]
    pub zeta_bar: FiniteWord,
    #[serde(serialize_with = "ser_word")]
    pub eta_bar: FiniteWord,
    /// Rows and columns ordered `zeta, eta, zeta_bar, eta_bar`.
    pub matrix: [[u32; 4]; 4],
    #[serde(serialize_with = "ser_word")]
    pub omega1: FiniteWord,
    #[serde(serialize_with = "ser_word")]
    pub omega2: FiniteWord,
    #[serde(serialize_with = "crate::words::ser_rational")]
    pub d_omega1: Rational,
    #[serde(serialize_with = "crate::words::ser_rational")]
    pub d_omega2: Rational,
}

fn ser_word<S: serde::Serializer>(w: &FiniteWord, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_string())
}

pub const SFT_MATRIX: [[u32; 4]; 4] = [[0, 1, 1, 0], [0, 0, 1, 0], [1, 0, 0, 1], [1, 0, 0, 0]];

pub fn sft_blocks(n: u32) -> Result<SftBlocks> {
    if n == 0 {
        return Err(Error::OutOfDomain("n must be at least 1".into()));
    }
    let zeta = zeta(n)?;
    let eta = eta(n)?;
    let zeta_bar = zeta.reflect();
    let eta_bar = eta.reflect();
    let omega1 = zeta.concat(&zeta_bar);
    let omega2 = zeta.concat(&eta).concat(&zeta_bar);
    let d_omega1 = q(omega1.zeros() as i64, omega1.len() as i64);
    let d_omega2 = q(omega2.zeros() as i64, omega2.len() as i64);
    Ok(SftBlocks { n, zeta, eta, zeta_bar, eta_bar, matrix: SFT_MATRIX, omega1, omega2, d_omega1, d_omega2 })
}

impl SftBlocks {
    fn block(&self, i: usize) -> &FiniteWord {
        [&self.zeta, &self.eta, &self.zeta_bar, &self.eta_bar][i]
    }

    /// The simple cycles of the block graph. Every one passes through `zeta`.
    pub fn simple_cycles() -> [&'static [usize]; 4] {
        [&[0, 2], &[0, 1, 2], &[0, 2, 3], &[0, 1, 2, 3]]
    }

    /// Periodic words from single simple cycles and from every ordered pair
    /// of them.
    pub fn test_words(&self) -> Vec<EPSeq> {
        let cycles = Self::simple_cycles();
        let mut paths: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        for a in cycles {
            for b in cycles {
                paths.push([a, b].concat());
            }
        }
        paths
            .iter()
            .map(|p| {
                let digits: Vec<Digit> = p.iter().flat_map(|&i| self.block(i).digits().to_vec()).collect();
                EPSeq::periodic(digits, Alphabet::SIGNED).expect("signed digits")
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SftSearch {
    pub n: u32,
    pub words_checked: usize,
    pub depth_cap: usize,
}

/// Smallest `n <= n_cap` such that every test word of `sft_blocks(n)` passes
/// the uniqueness test at `alpha`. Requires `1/3 < alpha < alpha_KL`.
pub fn find_smallest_sft_n(alpha: &RealNumber, n_cap: u32, depth_cap: usize) -> Result<SftSearch> {
    let prec = default_precision();
    if compare(alpha, &RealNumber::rational(1, 3), &prec) != Cmp::Greater {
        return Err(Error::OutOfDomain(format!("{alpha} is not above 1/3")));
    }
    match compare(alpha, &RealNumber::alpha_kl(), &prec) {
        Cmp::Less => {}
        Cmp::Undecided => return Err(Error::UndecidedComparison(format!("{alpha} vs akl"))),
        _ => return Err(Error::OutOfDomain(format!("{alpha} is not below akl"))),
    }
    let sys = BaseSystem::new(alpha.clone(), Alphabet::SIGNED)?;
    for n in 1..=n_cap.min(MAX_BLOCK_N) {
        let blocks = sft_blocks(n)?;
        let words = blocks.test_words();
        let mut ok = true;
        for word in &words {
            if is_unique_expansion(&sys, &crate::words::Seq::Periodic(word.clone()), depth_cap)? != Uniqueness::Unique {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(SftSearch { n, words_checked: words.len(), depth_cap });
        }
    }
    Err(Error::NotFoundUnderCap(n_cap))
}
