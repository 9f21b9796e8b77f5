//! Certified summation of non-negative series into rational intervals.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat, round_down_sig, round_up_sig, Rational};

/// Default hard cap on the summation index.
pub const DEFAULT_SUM_CAP: usize = 10_000;
/// Default number of follow-up ratios that must be non-increasing.
pub const DEFAULT_LOOKAHEAD: usize = 8;

/// A closed rational interval `[lo, hi]` known to contain some exact value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CertifiedValue {
    lo: Rational,
    hi: Rational,
}

impl CertifiedValue {
    /// Panics if `lo > hi`.
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        CertifiedValue { lo, hi }
    }

    pub fn exact(x: Rational) -> Self {
        CertifiedValue { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_subset_of(&self, other: &CertifiedValue) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn add(&self, other: &CertifiedValue) -> CertifiedValue {
        CertifiedValue::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &CertifiedValue) -> CertifiedValue {
        CertifiedValue::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    /// Multiplies by a scalar `c >= 0`.
    pub fn scale(&self, c: &Rational) -> CertifiedValue {
        debug_assert!(!c.is_negative());
        CertifiedValue::new(&self.lo * c, &self.hi * c)
    }

    /// Divides by an interval that lies strictly above zero.
    pub fn div_positive(&self, d: &CertifiedValue) -> CertifiedValue {
        assert!(d.lo.is_positive(), "divisor interval must be positive");
        let lo = if self.lo.is_negative() { &self.lo / &d.lo } else { &self.lo / &d.hi };
        let hi = if self.hi.is_negative() { &self.hi / &d.hi } else { &self.hi / &d.lo };
        CertifiedValue::new(lo, hi)
    }

    /// `x / self` for an exact `x >= 0` and a positive interval.
    pub fn recip_scaled(&self, x: &Rational) -> CertifiedValue {
        CertifiedValue::exact(x.clone()).div_positive(self)
    }

    /// Widens outward so both endpoints carry at most `bits` significant bits.
    pub fn round_outward(&self, bits: u32) -> CertifiedValue {
        CertifiedValue::new(round_down_sig(&self.lo, bits), round_up_sig(&self.hi, bits))
    }
}

impl fmt::Display for CertifiedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for CertifiedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CertifiedValue{self}")
    }
}

/// Truncation policy for [`certified_sum_with`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumConfig {
    /// Accept truncation at `K` only once `term(K+1)/term(K) <= ratio_threshold`.
    pub ratio_threshold: Rational,
    /// Number of subsequent ratios that must be non-increasing.
    pub lookahead: usize,
    /// Hard cap on the summation index.
    pub cap: usize,
    /// If set, keep extending `K` past the first admissible index until the
    /// tail bound is at most `relative_tolerance * S_K`.
    pub relative_tolerance: Option<Rational>,
}

impl Default for SumConfig {
    fn default() -> Self {
        SumConfig {
            ratio_threshold: rat(1, 2),
            lookahead: DEFAULT_LOOKAHEAD,
            cap: DEFAULT_SUM_CAP,
            relative_tolerance: None,
        }
    }
}

impl SumConfig {
    pub fn with_threshold(mut self, t: Rational) -> Self {
        self.ratio_threshold = t;
        self
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_tolerance(mut self, tol: Option<Rational>) -> Self {
        self.relative_tolerance = tol;
        self
    }
}

/// Ratio `term(j+1)/term(j)`; `None` stands for +infinity.
fn ratio(a: &Rational, b: &Rational) -> Option<Rational> {
    if a.is_zero() {
        if b.is_zero() {
            Some(Rational::zero())
        } else {
            None
        }
    } else {
        Some(b / a)
    }
}

/// Sums a non-negative series with the spec-default policy: threshold, lookahead,
/// and the default hard cap, no refinement.
pub fn certified_sum<F>(term: F, ratio_threshold: Rational, lookahead: usize) -> Result<CertifiedValue>
where
    F: FnMut(usize) -> Result<Rational>,
{
    let config = SumConfig { ratio_threshold, lookahead, ..SumConfig::default() };
    certified_sum_with(term, &config)
}

/// Sums `Σ_{k≥0} term(k)` for non-negative terms.
///
/// Truncates at the first `K` with `term(K) > 0`, `term(K+1)/term(K) <= t`
/// and the ratios at `K, K+1, …, K+lookahead` non-increasing. The tail is then
/// dominated by the geometric series `term(K+1)·(1 + t + t² + …)`, so the
/// result is `[S_K, S_K + term(K+1)/(1−t)]` (`2·term(K+1)` at `t = 1/2`).
///
/// `term` is called exactly once per index, in increasing order. A series whose
/// terms are all zero up to the cap sums to `[0, 0]`.
pub fn certified_sum_with<F>(mut term: F, config: &SumConfig) -> Result<CertifiedValue>
where
    F: FnMut(usize) -> Result<Rational>,
{
    let t = &config.ratio_threshold;
    if !t.is_positive() || *t >= Rational::one() {
        return Err(Error::InvalidThreshold(t.to_string()));
    }
    let tail_factor = (Rational::one() - t).recip();

    let mut terms: Vec<Rational> = Vec::new();
    // ratios[j] = term(j+1)/term(j), None for +infinity
    let mut ratios: Vec<Option<Rational>> = Vec::new();
    let mut fetch = |terms: &mut Vec<Rational>, ratios: &mut Vec<Option<Rational>>, upto: usize| -> Result<()> {
        while terms.len() <= upto {
            let k = terms.len();
            let v = term(k)?;
            if v.is_negative() {
                return Err(Error::NegativeTerm { index: k });
            }
            if let Some(prev) = terms.last() {
                ratios.push(ratio(prev, &v));
            }
            terms.push(v);
        }
        Ok(())
    };

    let mut partial = Rational::zero();
    let mut all_zero = true;
    for k in 0..config.cap {
        fetch(&mut terms, &mut ratios, k + config.lookahead + 1)?;
        partial += &terms[k];
        if terms[k].is_zero() {
            continue;
        }
        all_zero = false;

        // An infinite ratio anywhere in the window disqualifies K.
        let window = &ratios[k..=k + config.lookahead];
        let Some(window) = window.iter().map(Option::as_ref).collect::<Option<Vec<&Rational>>>() else {
            continue;
        };
        if window[0] > t || window.windows(2).any(|w| w[1] > w[0]) {
            continue;
        }

        let tail = &terms[k + 1] * &tail_factor;
        if let Some(tol) = &config.relative_tolerance {
            if tail > &partial * tol {
                continue;
            }
        }
        return Ok(CertifiedValue::new(partial.clone(), partial + tail));
    }
    if all_zero {
        return Ok(CertifiedValue::exact(Rational::zero()));
    }
    Err(Error::NonConvergent { cap: config.cap })
}
