//! Admissible ψ-sequences and the Stirling/Bell towers built on them.
//!
//! A ψ-sequence replaces `n` by `n_ψ = ψ(n)`; the ψ-factorial is
//! `n_ψ! = n_ψ · (n−1)_ψ!` and the ψ-falling factorial at an integer point is
//! `x_ψ (x−1)_ψ … (x−k+1)_ψ`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Poly, QPolynomial};
use crate::rational::{from_bigint, int, pow, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsiKind {
    /// `ψ(n) = n`.
    Classical,
    /// `ψ(n) = 1 + q + … + q^{n−1}` at a numeric `q > 0`.
    GaussQ(Rational),
    /// `ψ(n) = F_n` with `F_0 = 0`, `F_1 = 1`.
    Fibonacci,
    /// Explicit values `ψ(0), ψ(1), …`.
    Custom(Vec<Rational>),
}

/// An admissible sequence: `ψ(0) = 0` and `ψ(n) > 0` for `n ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiSequence {
    kind: PsiKind,
    description: String,
}

impl PsiSequence {
    pub fn classical() -> Self {
        PsiSequence { kind: PsiKind::Classical, description: "classical".into() }
    }

    pub fn gauss_q(q: Rational) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::Inadmissible(format!("Gauss q-sequence needs q > 0, got q = {q}")));
        }
        let description = format!("q={q}");
        Ok(PsiSequence { kind: PsiKind::GaussQ(q), description })
    }

    pub fn fibonacci() -> Self {
        PsiSequence { kind: PsiKind::Fibonacci, description: "fibonacci".into() }
    }

    pub fn custom(values: Vec<Rational>) -> Result<Self> {
        match values.first() {
            None => return Err(Error::Inadmissible("custom sequence is empty".into())),
            Some(v) if !v.is_zero() => {
                return Err(Error::Inadmissible(format!("custom sequence needs psi(0) = 0, got {v}")))
            }
            _ => {}
        }
        if let Some((i, v)) = values.iter().enumerate().skip(1).find(|(_, v)| !v.is_positive()) {
            return Err(Error::Inadmissible(format!("custom sequence needs psi({i}) > 0, got {v}")));
        }
        let description = format!(
            "custom:{}",
            values.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        );
        Ok(PsiSequence { kind: PsiKind::Custom(values), description })
    }

    pub fn kind(&self) -> &PsiKind {
        &self.kind
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// The numeric `q` when the sequence is a Gauss q-sequence; classical is `q = 1`.
    pub fn gauss_parameter(&self) -> Option<Rational> {
        match &self.kind {
            PsiKind::Classical => Some(Rational::one()),
            PsiKind::GaussQ(q) => Some(q.clone()),
            _ => None,
        }
    }
}

impl fmt::Display for PsiSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.description)
    }
}

/// `n_ψ`.
pub fn psi_value(seq: &PsiSequence, n: usize) -> Result<Rational> {
    Ok(match &seq.kind {
        PsiKind::Classical => int(n as i64),
        PsiKind::GaussQ(q) => (0..n).fold(Rational::zero(), |acc, _| acc * q + Rational::one()),
        PsiKind::Fibonacci => from_bigint(fibonacci(n)),
        PsiKind::Custom(values) => values
            .get(n)
            .cloned()
            .ok_or(Error::OutOfRange { index: n, len: values.len() })?,
    })
}

fn fibonacci(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// `n_ψ! = ψ(1)·ψ(2)·…·ψ(n)`, with `0_ψ! = 1`.
pub fn psi_factorial(seq: &PsiSequence, n: usize) -> Result<Rational> {
    let mut cache = PsiCache::new(seq.clone());
    cache.factorial(n)
}

/// `ψ(x)·ψ(x−1)·…·ψ(x−k+1)`; zero whenever `k > x`.
pub fn psi_falling_factorial(seq: &PsiSequence, x: usize, k: usize) -> Result<Rational> {
    if k > x {
        return Ok(Rational::zero());
    }
    ((x - k + 1)..=x).try_fold(Rational::one(), |acc, i| Ok(acc * psi_value(seq, i)?))
}

/// Lazily extended table of `ψ(n)` and `n_ψ!`, filled in increasing `n`.
#[derive(Clone, Debug)]
pub struct PsiCache {
    seq: PsiSequence,
    values: Vec<Rational>,
    factorials: Vec<Rational>,
}

impl PsiCache {
    pub fn new(seq: PsiSequence) -> Self {
        PsiCache { seq, values: vec![Rational::zero()], factorials: vec![Rational::one()] }
    }

    pub fn sequence(&self) -> &PsiSequence {
        &self.seq
    }

    fn extend_to(&mut self, n: usize) -> Result<()> {
        while self.values.len() <= n {
            let i = self.values.len();
            let v = match &self.seq.kind {
                PsiKind::Classical => int(i as i64),
                PsiKind::GaussQ(q) => &self.values[i - 1] * q + Rational::one(),
                PsiKind::Fibonacci if i == 1 => Rational::one(),
                PsiKind::Fibonacci => &self.values[i - 1] + &self.values[i - 2],
                PsiKind::Custom(_) => psi_value(&self.seq, i)?,
            };
            let f = &self.factorials[i - 1] * &v;
            self.values.push(v);
            self.factorials.push(f);
        }
        Ok(())
    }

    pub fn value(&mut self, n: usize) -> Result<Rational> {
        self.extend_to(n)?;
        Ok(self.values[n].clone())
    }

    pub fn factorial(&mut self, n: usize) -> Result<Rational> {
        self.extend_to(n)?;
        Ok(self.factorials[n].clone())
    }

    /// `ψ(x)…ψ(x−k+1)`, computed as `x_ψ! / (x−k)_ψ!`.
    pub fn falling(&mut self, x: usize, k: usize) -> Result<Rational> {
        if k > x {
            return Ok(Rational::zero());
        }
        self.extend_to(x)?;
        Ok(&self.factorials[x] / &self.factorials[x - k])
    }
}

/// The Gauss number `[n]_q = 1 + q + … + q^{n−1}` with `q` symbolic.
pub fn q_number_symbolic(n: usize) -> QPolynomial {
    Poly::new(vec![Rational::one(); n])
}

/// `[n]_q!` with `q` symbolic.
pub fn q_factorial_symbolic(n: usize) -> QPolynomial {
    (1..=n).fold(Poly::one(), |acc, i| &acc * &q_number_symbolic(i))
}

/// Classical Stirling numbers of the second kind, rows `0..=n_max`.
pub fn stirling2_rows(n_max: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let row = (0..=n)
            .map(|k| {
                let left = if k >= 1 { prev.get(k - 1).cloned().unwrap_or_default() } else { BigUint::zero() };
                let stay = prev.get(k).map(|s| s * BigUint::from(k)).unwrap_or_default();
                left + stay
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// `S(n, k)` via `S(n,k) = S(n−1,k−1) + k·S(n−1,k)`.
pub fn stirling2(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    stirling2_rows(n).swap_remove(n).swap_remove(k)
}

/// Triangle of q-polynomial entries indexed `(n, k)`, `0 ≤ k ≤ n ≤ n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    n_max: usize,
    entries: Vec<Vec<QPolynomial>>,
}

impl StirlingTable {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Zero outside the triangle. Panics if `n > n_max`.
    pub fn entry(&self, n: usize, k: usize) -> QPolynomial {
        assert!(n <= self.n_max, "row {n} beyond table n_max {}", self.n_max);
        self.entries[n].get(k).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn row(&self, n: usize) -> &[QPolynomial] {
        &self.entries[n]
    }

    /// Classical `S(n, k)` as degree-0 polynomials.
    pub fn classical(n_max: usize) -> Self {
        let entries = stirling2_rows(n_max)
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|s| Poly::constant(from_bigint(BigInt::from(s))))
                    .collect()
            })
            .collect();
        StirlingTable { n_max, entries }
    }
}

/// Carlitz q-Stirling numbers from `[x]_q^n = Σ_k S_q(n,k) [x]_q[x−1]_q…[x−k+1]_q`.
///
/// Evaluating at `x = j` kills every term with `k > j`, so row `n` follows
/// from a lower-triangular solve over `j = 0..=n` whose pivot is `[j]_q!`.
/// Every division must be exact in `Q[q]`.
pub fn carlitz_q_stirling(n_max: usize) -> Result<StirlingTable> {
    // All quantities live in Z[q] and every pivot factor [i]_q is monic.
    let numbers: Vec<Poly<BigInt>> = (0..=n_max).map(|i| Poly::new(vec![BigInt::one(); i])).collect();
    // falling[j][k] = [j]_q [j-1]_q ... [j-k+1]_q for k <= j
    let falling: Vec<Vec<Poly<BigInt>>> = (0..=n_max)
        .map(|j| {
            let mut row = vec![Poly::one()];
            for k in 1..=j {
                let next = &row[k - 1] * &numbers[j - k + 1];
                row.push(next);
            }
            row
        })
        .collect();

    let mut entries = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let mut row: Vec<Poly<BigInt>> = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let mut rhs = numbers[j].pow(n);
            for (k, s) in row.iter().enumerate() {
                rhs = &rhs - &(s * &falling[j][k]);
            }
            // pivot [j]_q! divided out one factor at a time
            for i in (1..=j).rev() {
                let (quot, rem) = rhs.div_rem_monic(&numbers[i]);
                if !rem.is_zero() {
                    return Err(Error::InconsistentSystem { n, k: j });
                }
                rhs = quot;
            }
            row.push(rhs);
        }
        entries.push(row.iter().map(|p| p.map(|c| from_bigint(c.clone()))).collect());
    }
    Ok(StirlingTable { n_max, entries })
}

/// Fast path: `S_q(n+1,k) = q^{k−1} S_q(n,k−1) + [k]_q S_q(n,k)`.
///
/// Derived from the defining expansion via `[x]_q = q^k [x−k]_q + [k]_q`;
/// the tests check it against [`carlitz_q_stirling`].
pub fn carlitz_q_stirling_recursive(n_max: usize) -> StirlingTable {
    let mut entries: Vec<Vec<QPolynomial>> = vec![vec![Poly::one()]];
    for n in 1..=n_max {
        let prev = &entries[n - 1];
        let row = (0..=n)
            .map(|k| {
                let mut e = Poly::zero();
                if k >= 1 {
                    if let Some(s) = prev.get(k - 1) {
                        e = s.shift(k - 1);
                    }
                }
                if let Some(s) = prev.get(k) {
                    e = &e + &(s * &q_number_symbolic(k));
                }
                e
            })
            .collect();
        entries.push(row);
    }
    StirlingTable { n_max, entries }
}

/// `Σ_k entry(n, k)`.
pub fn bell_via_sum(table: &StirlingTable, n: usize) -> QPolynomial {
    table.row(n).iter().fold(Poly::zero(), |acc, e| &acc + e)
}

/// Result of [`psi_stirling_diagnostic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiDiagnostic {
    /// `c_0, …, c_n` solving `k_ψ^n = Σ_j c_j k_ψ^(falling j)` on `k = 0..=n`.
    pub coefficients: Vec<Rational>,
    /// `(k, residual)` for `k = n+1..=probe_limit`.
    pub residuals: Vec<(usize, Rational)>,
}

impl PsiDiagnostic {
    /// Constant-coefficient ψ-Stirling numbers exist on the probed range.
    pub fn is_consistent(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
    }
}

/// Tests whether `x_ψ^n` expands in ψ-falling factorials with constant coefficients.
pub fn psi_stirling_diagnostic(seq: &PsiSequence, n: usize, probe_limit: usize) -> Result<PsiDiagnostic> {
    let mut cache = PsiCache::new(seq.clone());
    let mut coefficients: Vec<Rational> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut rhs = pow(&cache.value(k)?, n);
        for (j, c) in coefficients.iter().enumerate() {
            rhs -= c * cache.falling(k, j)?;
        }
        // pivot k_ψ! is nonzero by admissibility
        coefficients.push(rhs / cache.factorial(k)?);
    }
    let mut residuals = Vec::new();
    for k in (n + 1)..=probe_limit {
        let mut r = pow(&cache.value(k)?, n);
        for (j, c) in coefficients.iter().enumerate() {
            r -= c * cache.falling(k, j)?;
        }
        residuals.push((k, r));
    }
    Ok(PsiDiagnostic { coefficients, residuals })
}
