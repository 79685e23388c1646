//! Box-counting estimate of the dimension of `Gamma_alpha ∩ (Gamma_alpha + t)`,
//! independent of the automaton construction.
//!
//! A point of the intersection is `sum eps_i alpha^i = t + sum eta_i alpha^i`
//! with `eps, eta` in `{0,1}`. After `n` digits the remainder
//! `r_n = (t - sum_{i<=n} (eps_i - eta_i) alpha^i) / alpha^n` must lie in
//! `[-B, B]` with `B = alpha/(1-alpha)`. Remainders are tracked as fixed-point
//! intervals, so pruning is sound for any enclosure of `alpha` and `t`.

use super::{neg_ln_alpha, DimensionForm, DimensionValue};
use crate::error::{Error, Result};
use crate::exactnum::{pow2_neg, RealNumber, Rational};
use crate::exec::Exec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;
use std::collections::BTreeSet;

pub const DEFAULT_BOX_DEPTH: usize = 20;
/// Extra levels a prefix must survive to count towards the upper bound.
pub const LOOKAHEAD: usize = 8;
const FRAC_BITS: u32 = 192;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoxRow {
    pub n: usize,
    pub lower: u64,
    pub upper: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoxCount {
    pub rows: Vec<BoxRow>,
    /// Least-squares slope of `log(upper)` against `n (-log alpha)` over the
    /// second half of the depths.
    pub slope_upper: Option<f64>,
    pub slope_lower: Option<f64>,
}

impl BoxCount {
    pub fn estimate(&self) -> Option<DimensionValue> {
        let u = self.slope_upper?;
        let l = self.slope_lower.unwrap_or(u);
        let mut d = DimensionValue::new(DimensionForm::BoxEstimate, format!("{u}"), l.min(u), l.max(u));
        d.decimal = format!("{u:.6}");
        Some(d)
    }
}

#[derive(Clone, Debug)]
struct Iv {
    lo: BigInt,
    hi: BigInt,
}

struct Ctx {
    inv_lo: BigInt,
    inv_hi: BigInt,
    b_lo: BigInt,
    b_hi: BigInt,
    one: BigInt,
    denom: BigInt,
}

fn fixed_floor(r: &Rational) -> BigInt {
    (r.numer() << FRAC_BITS).div_floor(r.denom())
}

fn fixed_ceil(r: &Rational) -> BigInt {
    -((-(r.numer() << FRAC_BITS)).div_floor(r.denom()))
}

impl Ctx {
    fn step(&self, r: &Iv, t: i64) -> Iv {
        let c = [&r.lo * &self.inv_lo, &r.lo * &self.inv_hi, &r.hi * &self.inv_lo, &r.hi * &self.inv_hi];
        let min = c.iter().min().unwrap();
        let max = c.iter().max().unwrap();
        let shift = &self.one * t;
        Iv { lo: min.div_floor(&self.denom) - &shift, hi: -((-max).div_floor(&self.denom)) - &shift }
    }

    fn possible(&self, r: &Iv) -> bool {
        r.lo <= self.b_hi && r.hi >= -&self.b_hi
    }

    fn certain(&self, r: &Iv) -> bool {
        r.lo >= -&self.b_lo && r.hi <= self.b_lo
    }

    /// The two eps labels and their `eps - eta` shifts.
    fn children(&self, e: &Entry) -> Vec<Entry> {
        let mut out = Vec::with_capacity(4);
        for (eps, eta) in [(0u64, 0i64), (0, 1), (1, 0), (1, 1)] {
            let r = self.step(&e.r, eps as i64 - eta);
            if self.possible(&r) {
                out.push(Entry { eps: (e.eps << 1) | eps, r });
            }
        }
        out
    }

    fn survives(&self, e: &Entry, levels: usize) -> bool {
        levels == 0 || self.children(e).iter().any(|c| self.survives(c, levels - 1))
    }
}

#[derive(Clone, Debug)]
struct Entry {
    eps: u64,
    r: Iv,
}

fn slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Counts, for `n = 0..=depth`, the `{0,1}^n` prefixes `eps` that can start a
/// point of the intersection. `t` is given by an enclosure `(lo, hi)`.
///
/// `upper` counts prefixes that survive `LOOKAHEAD` further levels. `lower`
/// counts prefixes whose remainder is certainly inside `[-B, B]`; it is a
/// true lower bound only for `alpha >= 1/3`, where every such remainder is
/// attained.
pub fn box_count_oracle(
    alpha: &RealNumber,
    t: (&Rational, &Rational),
    depth: usize,
    max_depth: usize,
    exec: Exec,
) -> Result<BoxCount> {
    if depth > max_depth || depth > 62 {
        return Err(Error::DepthCapExceeded { depth, max: max_depth.min(62) });
    }
    let (alo, ahi) = alpha.refine(&pow2_neg(200))?;
    let one_r = Rational::one();
    if alo <= Rational::from_integer(0.into()) || ahi >= one_r {
        return Err(Error::OutOfDomain(format!("base {alpha} is not in (0, 1)")));
    }
    let b_lo = &alo / (&one_r - &alo);
    let b_hi = &ahi / (&one_r - &ahi);
    let ctx = Ctx {
        inv_lo: fixed_floor(&(&one_r / &ahi)),
        inv_hi: fixed_ceil(&(&one_r / &alo)),
        b_lo: fixed_floor(&b_lo),
        b_hi: fixed_ceil(&b_hi),
        one: BigInt::one() << FRAC_BITS,
        denom: BigInt::one() << FRAC_BITS,
    };
    let root = Entry { eps: 0, r: Iv { lo: fixed_floor(t.0), hi: fixed_ceil(t.1) } };
    let mut frontier = if ctx.possible(&root.r) { vec![root] } else { Vec::new() };
    let mut rows = Vec::with_capacity(depth + 1);
    for n in 0..=depth {
        if n > 0 {
            frontier = exec.flat_map(&frontier, |e| ctx.children(e));
        }
        let flags = exec.map(&frontier, |e| (e.eps, ctx.survives(e, LOOKAHEAD), ctx.certain(&e.r)));
        let upper: BTreeSet<u64> = flags.iter().filter(|f| f.1).map(|f| f.0).collect();
        let lower: BTreeSet<u64> = flags.iter().filter(|f| f.2).map(|f| f.0).collect();
        rows.push(BoxRow { n, lower: lower.len() as u64, upper: upper.len() as u64 });
    }
    let (nl, nh) = neg_ln_alpha(alpha)?;
    let scale = 0.5 * (nl + nh);
    let tail: Vec<&BoxRow> = rows.iter().filter(|r| 2 * r.n > depth).collect();
    let pts = |f: fn(&BoxRow) -> u64| -> Vec<(f64, f64)> {
        tail.iter().filter(|r| f(r) > 0).map(|r| (r.n as f64 * scale, (f(r) as f64).ln())).collect()
    };
    Ok(BoxCount { slope_upper: slope(&pts(|r| r.upper)), slope_lower: slope(&pts(|r| r.lower)), rows })
}
