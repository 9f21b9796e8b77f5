//! ψ-exponentials, ψ-Poisson distributions and Dobinski-type moments.
//!
//! For an admissible ψ and `λ > 0` the ψ-Poisson law puts mass
//! `p_k = λ^k / (k_ψ! · exp_ψ(λ))` on `k`, and the moment functional sends a
//! polynomial `p(X)` to `Σ_k p(k_ψ) p_k`. With `λ = 1` every ψ-falling factorial
//! has moment 1 and `X^n` has moment `B_n(ψ)`. All infinite sums are returned
//! as certified rational intervals; the classical route through the umbral
//! functional `L(X^(falling k)) = 1` is exact.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Poly, QPolynomial, XPolynomial};
use crate::rational::{from_bigint, int, pow, Rational};
use crate::series::{certified_sum_with, CertifiedValue, SumConfig};
use crate::umbral::{stirling2_rows, PsiCache, PsiKind, PsiSequence};

/// Significant bits kept on interval endpoints after each certified sum.
pub const ROUND_BITS: u32 = 128;

/// The summation policy used unless a caller supplies one: threshold 1/2,
/// lookahead 8, cap 10000, refined until the tail is below `2^-40` of the sum.
pub fn default_config() -> SumConfig {
    let tol = Rational::new(BigInt::one(), BigInt::one() << 40usize);
    SumConfig::default().with_tolerance(Some(tol))
}

/// Adapts `base` to the ψ-series `Σ w(k) λ^k / k_ψ!`.
///
/// For a Gauss sequence with `q < 1`, `[k]_q → 1/(1−q)` and the term ratio
/// tends to `λ(1−q)` instead of zero: the series diverges once that limit
/// reaches 1, and otherwise the ratio threshold is lifted above the limit.
fn series_config(seq: &PsiSequence, lambda: &Rational, base: &SumConfig) -> Result<SumConfig> {
    let mut config = base.clone();
    if let PsiKind::GaussQ(q) = seq.kind() {
        if *q < Rational::one() {
            let limit = lambda * (Rational::one() - q);
            if limit >= Rational::one() {
                return Err(Error::Divergent(format!(
                    "exp_q(lambda) needs lambda < 1/(1-q); lambda = {lambda}, q = {q}"
                )));
            }
            if config.ratio_threshold <= limit {
                config.ratio_threshold = (Rational::one() + limit) / int(2);
            }
        }
    }
    Ok(config)
}

fn check_lambda(lambda: &Rational) -> Result<()> {
    if lambda.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidLambda(lambda.to_string()))
    }
}

/// Certified `Σ_k weight(k_ψ, k) · λ^k / k_ψ!` for a non-negative weight.
fn psi_series<W>(seq: &PsiSequence, lambda: &Rational, config: &SumConfig, mut weight: W) -> Result<CertifiedValue>
where
    W: FnMut(&mut PsiCache, usize) -> Result<Rational>,
{
    let config = series_config(seq, lambda, config)?;
    let mut cache = PsiCache::new(seq.clone());
    let mut lambda_pow = Rational::one();
    let sum = certified_sum_with(
        |k| {
            if k > 0 {
                lambda_pow *= lambda;
            }
            let w = weight(&mut cache, k)?;
            if w.is_zero() {
                return Ok(w);
            }
            Ok(w * &lambda_pow / cache.factorial(k)?)
        },
        &config,
    )?;
    Ok(sum.round_outward(ROUND_BITS))
}

/// Certified interval for `exp_ψ(λ) = Σ_k λ^k / k_ψ!`.
pub fn psi_exp(seq: &PsiSequence, lambda: &Rational) -> Result<CertifiedValue> {
    psi_exp_with(seq, lambda, &default_config())
}

pub fn psi_exp_with(seq: &PsiSequence, lambda: &Rational, config: &SumConfig) -> Result<CertifiedValue> {
    check_lambda(lambda)?;
    psi_series(seq, lambda, config, |_, _| Ok(Rational::one()))
}

/// The ψ-Poisson law with its normalizer `exp_ψ(λ)` computed once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiPoissonDistribution {
    seq: PsiSequence,
    lambda: Rational,
    normalizer: CertifiedValue,
    config: SumConfig,
}

impl PsiPoissonDistribution {
    pub fn new(seq: PsiSequence, lambda: Rational) -> Result<Self> {
        Self::with_config(seq, lambda, default_config())
    }

    pub fn with_config(seq: PsiSequence, lambda: Rational, config: SumConfig) -> Result<Self> {
        let normalizer = psi_exp_with(&seq, &lambda, &config)?;
        Ok(PsiPoissonDistribution { seq, lambda, normalizer, config })
    }

    pub fn sequence(&self) -> &PsiSequence {
        &self.seq
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn normalizer(&self) -> &CertifiedValue {
        &self.normalizer
    }

    pub fn config(&self) -> &SumConfig {
        &self.config
    }

    /// Unnormalized mass `λ^k / k_ψ!`.
    pub fn weight(&self, k: usize) -> Result<Rational> {
        let mut cache = PsiCache::new(self.seq.clone());
        Ok(pow(&self.lambda, k) / cache.factorial(k)?)
    }

    /// `Σ_k f(k_ψ) λ^k / k_ψ!`, divided by the normalizer.
    fn expectation<W>(&self, weight: W) -> Result<CertifiedValue>
    where
        W: FnMut(&mut PsiCache, usize) -> Result<Rational>,
    {
        let raw = psi_series(&self.seq, &self.lambda, &self.config, weight)?;
        Ok(raw.div_positive(&self.normalizer).round_outward(ROUND_BITS))
    }
}

/// Bounds on `p_k`: the exact weight divided by the normalizer interval.
pub fn pmf(dist: &PsiPoissonDistribution, k: usize) -> Result<CertifiedValue> {
    Ok(dist.normalizer.recip_scaled(&dist.weight(k)?))
}

/// `Σ_{k ≤ k_max}` of the [`pmf`] bounds.
pub fn pmf_mass(dist: &PsiPoissonDistribution, k_max: usize) -> Result<CertifiedValue> {
    let mut cache = PsiCache::new(dist.seq.clone());
    let mut total = Rational::zero();
    let mut lambda_pow = Rational::one();
    for k in 0..=k_max {
        if k > 0 {
            lambda_pow *= &dist.lambda;
        }
        total += &lambda_pow / cache.factorial(k)?;
    }
    Ok(dist.normalizer.recip_scaled(&total))
}

/// Certified mass of the tail `k > k_max`.
pub fn tail_mass(dist: &PsiPoissonDistribution, k_max: usize) -> Result<CertifiedValue> {
    dist.expectation(|_, k| Ok(if k > k_max { Rational::one() } else { Rational::zero() }))
}

fn split_by_sign(p: &XPolynomial) -> (XPolynomial, XPolynomial) {
    let pos = p.map(|c| if c.is_positive() { c.clone() } else { Rational::zero() });
    let neg = p.map(|c| if c.is_negative() { -c.clone() } else { Rational::zero() });
    (pos, neg)
}

/// `L_ψ(p) = Σ_k p(k_ψ) p_k` with `X ↦ k_ψ`.
///
/// Mixed-sign polynomials are split as `p⁺ − p⁻` by monomial sign; each half
/// is non-negative on the non-negative `k_ψ` and summed separately.
pub fn moment_functional(seq: &PsiSequence, lambda: &Rational, p: &XPolynomial) -> Result<CertifiedValue> {
    let dist = PsiPoissonDistribution::new(seq.clone(), lambda.clone())?;
    moment_functional_in(&dist, p)
}

pub fn moment_functional_in(dist: &PsiPoissonDistribution, p: &XPolynomial) -> Result<CertifiedValue> {
    let (pos, neg) = split_by_sign(p);
    let part = |half: &XPolynomial| -> Result<CertifiedValue> {
        if half.is_zero() {
            return Ok(CertifiedValue::exact(Rational::zero()));
        }
        dist.expectation(|cache, k| Ok(half.eval(&cache.value(k)?)))
    };
    let plus = part(&pos)?;
    let minus = part(&neg)?;
    Ok(plus.sub(&minus))
}

/// `L_ψ(X^(falling n))` at `λ = 1`; the interval must contain 1.
pub fn verify_falling_moment(seq: &PsiSequence, n: usize) -> Result<CertifiedValue> {
    verify_falling_moment_with(seq, n, &default_config())
}

pub fn verify_falling_moment_with(seq: &PsiSequence, n: usize, config: &SumConfig) -> Result<CertifiedValue> {
    let dist = PsiPoissonDistribution::with_config(seq.clone(), Rational::one(), config.clone())?;
    falling_moment_in(&dist, n)
}

/// `L_ψ(X^(falling n))` under an existing distribution; equals `λ^n`.
pub fn falling_moment_in(dist: &PsiPoissonDistribution, n: usize) -> Result<CertifiedValue> {
    dist.expectation(|cache, k| cache.falling(k, n))
}

/// `B_n(ψ) = exp_ψ(1)^{-1} Σ_k (k_ψ)^n / k_ψ!`.
pub fn dobinski_bell(seq: &PsiSequence, n: usize) -> Result<CertifiedValue> {
    dobinski_bell_with(seq, n, &default_config())
}

pub fn dobinski_bell_with(seq: &PsiSequence, n: usize, config: &SumConfig) -> Result<CertifiedValue> {
    let dist = PsiPoissonDistribution::with_config(seq.clone(), Rational::one(), config.clone())?;
    dobinski_bell_in(&dist, n)
}

/// `L_ψ(X^n)` under an existing distribution; the ψ-Bell number when `λ = 1`.
pub fn dobinski_bell_in(dist: &PsiPoissonDistribution, n: usize) -> Result<CertifiedValue> {
    dist.expectation(|cache, k| Ok(pow(&cache.value(k)?, n)))
}

/// `B_0, …, B_n` as `Σ_k S(m, k)`.
pub fn rota_bell_numbers(n: usize) -> Vec<BigUint> {
    stirling2_rows(n).into_iter().map(|row| row.into_iter().sum()).collect()
}

/// Expands `X^n = Σ_k S(n,k) X^(falling k)` and applies `L(X^(falling k)) = 1`.
pub fn rota_bell_exact(n: usize) -> BigUint {
    rota_bell_numbers(n).swap_remove(n)
}

fn bell_rationals(d: usize) -> Vec<Rational> {
    rota_bell_numbers(d).into_iter().map(|b| from_bigint(BigInt::from(b))).collect()
}

/// Exact Poisson(1) expectation of `p(X)`: linear extension of `X^m ↦ B_m`.
pub fn poisson_moment_exact(p: &XPolynomial) -> Rational {
    let Some(d) = p.degree() else { return Rational::zero() };
    let bells = bell_rationals(d);
    p.coeffs().iter().zip(&bells).map(|(c, b)| c * b).sum()
}

/// [`poisson_moment_exact`] with coefficients in `Q[q]`.
pub fn poisson_moment_exact_q(p: &Poly<QPolynomial>) -> QPolynomial {
    let Some(d) = p.degree() else { return Poly::zero() };
    let bells = bell_rationals(d);
    p.coeffs()
        .iter()
        .zip(&bells)
        .fold(Poly::zero(), |acc, (c, b)| &acc + &c.scale(b))
}

/// Coefficients of `t^0, t^1, …, t^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coefficients: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        TruncatedSeries { coefficients }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// `−1` for the empty series left after differentiating a constant.
    pub fn truncation_order(&self) -> isize {
        self.coefficients.len() as isize - 1
    }

    /// Value at `t = 0`, zero for the empty series.
    pub fn constant_term(&self) -> Rational {
        self.coefficients.first().cloned().unwrap_or_else(Rational::zero)
    }
}

/// `[n]_q` at a numeric `q`.
pub fn q_number(q: &Rational, n: usize) -> Rational {
    (0..n).fold(Rational::zero(), |acc, _| acc * q + Rational::one())
}

/// Jackson derivative: `a_n t^n ↦ a_n [n]_q t^{n−1}`.
pub fn jackson_derivative(s: &TruncatedSeries, q: &Rational) -> TruncatedSeries {
    TruncatedSeries::new(
        s.coefficients
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, a)| a * q_number(q, n))
            .collect(),
    )
}

/// Outcome of [`verify_pmf_via_generating_function`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfVerdicts {
    /// `[∂_q^n G(t) / [n]_q!]_{t=0}` extracted from the lower and upper series.
    pub extracted: CertifiedValue,
    /// The [`pmf`] bounds for `p_n`.
    pub pmf: CertifiedValue,
    pub coefficient_ok: bool,
    /// Certified `[∂_q G](1) = Σ_k p_k [k]_q`; only evaluated for `λ = 1`.
    pub mean: Option<CertifiedValue>,
}

impl GfVerdicts {
    pub fn mean_ok(&self) -> Option<bool> {
        self.mean.as_ref().map(|m| m.contains(&Rational::one()))
    }

    pub fn passed(&self) -> bool {
        self.coefficient_ok && self.mean_ok().unwrap_or(true)
    }
}

/// Checks `p_n = [∂_q^n G(t) / [n]_q!]_{t=0}` on the truncated generating
/// function and, for `λ = 1`, that `[∂_q G(t)]_{t=1}` contains 1.
///
/// `G` is carried as a pair of truncated series holding the lower and upper
/// pmf bounds; the Jackson derivative has non-negative multipliers for
/// `q > 0`, so the pair stays ordered and the extraction is exact.
pub fn verify_pmf_via_generating_function(
    seq: &PsiSequence,
    lambda: &Rational,
    n: usize,
    order: usize,
) -> Result<GfVerdicts> {
    verify_pmf_via_generating_function_with(seq, lambda, n, order, &default_config())
}

pub fn verify_pmf_via_generating_function_with(
    seq: &PsiSequence,
    lambda: &Rational,
    n: usize,
    order: usize,
    config: &SumConfig,
) -> Result<GfVerdicts> {
    let Some(q) = seq.gauss_parameter() else {
        return Err(Error::InvalidArgument(format!(
            "generating-function check needs a classical or Gauss q-sequence, got {seq}"
        )));
    };
    if order < n {
        return Err(Error::InvalidArgument(format!("order {order} below n = {n}")));
    }
    let dist = PsiPoissonDistribution::with_config(seq.clone(), lambda.clone(), config.clone())?;
    let bounds = (0..=order).map(|k| pmf(&dist, k)).collect::<Result<Vec<_>>>()?;
    let mut lower = TruncatedSeries::new(bounds.iter().map(|b| b.lo().clone()).collect());
    let mut upper = TruncatedSeries::new(bounds.iter().map(|b| b.hi().clone()).collect());
    for _ in 0..n {
        lower = jackson_derivative(&lower, &q);
        upper = jackson_derivative(&upper, &q);
    }
    let q_fact: Rational = (1..=n).map(|i| q_number(&q, i)).product();
    let extracted = CertifiedValue::new(lower.constant_term() / &q_fact, upper.constant_term() / &q_fact);
    let pmf_n = bounds[n].clone();
    let coefficient_ok = extracted.is_subset_of(&pmf_n);

    let mean = if lambda.is_one() {
        Some(dist.expectation(|cache, k| cache.value(k))?)
    } else {
        None
    };
    Ok(GfVerdicts { extracted, pmf: pmf_n, coefficient_ok, mean })
}
