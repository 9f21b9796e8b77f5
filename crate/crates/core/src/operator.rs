//! The number operator `x̂D` conjugated by `e^x`, acting on polynomials.
//!
//! On `P`, `e^{−x}(x̂D)e^{x}` equals `x̂(D+1)`, so iterating
//! `p ↦ x(p′ + p)` from the constant 1 yields the exponential polynomials
//! `φ_n(x) = Σ_k S(n,k) x^k`, and `φ_n(1) = B_n`.

use num_traits::{One, Zero};

use crate::poly::{Poly, XPolynomial};
use crate::rational::{int, Rational};

/// `x · (p′(x) + p(x))`, the polynomial part of `e^{−x}(x̂D)(p e^{x})`.
pub fn apply_number_operator(p: &XPolynomial) -> XPolynomial {
    (&p.derivative() + p).shift(1)
}

/// `φ_n = (x̂(D+1))^n 1`.
pub fn exponential_polynomial(n: usize) -> XPolynomial {
    (0..n).fold(Poly::one(), |p, _| apply_number_operator(&p))
}

/// `x̂(D+1)` applied as two separate operators: `D+1`, then multiply by `x`.
fn shifted_number_operator(p: &XPolynomial) -> XPolynomial {
    let d_plus_one = &p.derivative() + p;
    &Poly::var() * &d_plus_one
}

/// Coefficients of `e^{±x}` up to `x^order`.
fn exp_series(order: usize, negate: bool) -> Vec<Rational> {
    let mut out = Vec::with_capacity(order + 1);
    let mut c = Rational::one();
    for j in 0..=order {
        if j > 0 {
            c /= int(j as i64);
        }
        out.push(if negate && j % 2 == 1 { -c.clone() } else { c.clone() });
    }
    out
}

fn truncated_mul(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `e^{−x} (x̂D) (e^{x} p)` computed on truncated power series.
///
/// The product `e^{x} p` is formed to `x^order`, `x̂D` multiplies the
/// coefficient of `x^i` by `i`, and the result is multiplied back by `e^{−x}`.
/// Coefficients up to `order` are exact.
pub fn conjugated_number_operator(p: &XPolynomial, order: usize) -> Vec<Rational> {
    let mut prefactor: Vec<Rational> = p.coeffs().to_vec();
    prefactor.resize(order + 1, Rational::zero());
    let mut g = truncated_mul(&exp_series(order, false), &prefactor, order);
    for (i, c) in g.iter_mut().enumerate() {
        *c *= int(i as i64);
    }
    truncated_mul(&exp_series(order, true), &g, order)
}

/// Per-degree outcome of [`verify_conjugation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugationCase {
    pub degree: usize,
    pub lhs: XPolynomial,
    pub passed: bool,
}

/// Checks `x̂(D+1) x^m = e^{−x}(x̂D)e^{x} x^m = apply_number_operator(x^m)`
/// exactly for `m = 0..=max_degree`.
pub fn verify_conjugation_cases(max_degree: usize) -> Vec<ConjugationCase> {
    (0..=max_degree)
        .map(|m| {
            let monomial = Poly::monomial(Rational::one(), m);
            let lhs = shifted_number_operator(&monomial);
            let rhs = apply_number_operator(&monomial);
            // series route carried a few degrees past the result to see the zeros
            let order = m + 4;
            let series = conjugated_number_operator(&monomial, order);
            let series_ok = (0..=order).all(|i| series[i] == lhs.coeff(i));
            let passed = lhs == rhs && series_ok;
            ConjugationCase { degree: m, lhs, passed }
        })
        .collect()
}

pub fn verify_conjugation(max_degree: usize) -> bool {
    verify_conjugation_cases(max_degree).iter().all(|c| c.passed)
}

/// `φ_n(1)`, which is `B_n`.
pub fn dobinski_specialization(n: usize) -> Rational {
    exponential_polynomial(n).coeffs().iter().sum()
}

/// `(x̂D)^n` on a truncated `e^x`, divided back by `e^x`: `Σ_k k^n x^k / k!`
/// times `e^{−x}`, through degree `order`.
pub fn exponential_polynomial_via_series(n: usize, order: usize) -> Vec<Rational> {
    let mut g = exp_series(order, false);
    for _ in 0..n {
        for (i, c) in g.iter_mut().enumerate() {
            *c *= int(i as i64);
        }
    }
    truncated_mul(&exp_series(order, true), &g, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::qpoly;
    use crate::umbral::stirling2_rows;

    #[test]
    fn number_operator_examples() {
        assert_eq!(apply_number_operator(&qpoly(&[1])), qpoly(&[0, 1]));
        assert_eq!(apply_number_operator(&qpoly(&[0, 1])), qpoly(&[0, 1, 1]));
        assert_eq!(apply_number_operator(&qpoly(&[0, 1, 1])), qpoly(&[0, 1, 3, 1]));
        assert!(apply_number_operator(&Poly::zero()).is_zero());
    }

    #[test]
    fn exponential_polynomials() {
        assert_eq!(exponential_polynomial(0), qpoly(&[1]));
        assert_eq!(exponential_polynomial(1), qpoly(&[0, 1]));
        assert_eq!(exponential_polynomial(2), qpoly(&[0, 1, 1]));
        assert_eq!(exponential_polynomial(3), qpoly(&[0, 1, 3, 1]));
    }

    #[test]
    fn coefficients_are_stirling_numbers() {
        let rows = stirling2_rows(15);
        for (n, row) in rows.iter().enumerate() {
            let phi = exponential_polynomial(n);
            for k in 0..=n + 1 {
                let s = row.get(k).cloned().unwrap_or_default();
                assert_eq!(phi.coeff(k), crate::rational::from_biguint(s));
            }
        }
    }

    #[test]
    fn conjugation() {
        assert!(verify_conjugation(0));
        assert!(verify_conjugation(1));
        assert!(verify_conjugation(20));
        let cases = verify_conjugation_cases(1);
        assert_eq!(cases[1].lhs, qpoly(&[0, 1, 1]));
    }

    #[test]
    fn series_route_agrees_with_polynomial_route() {
        for n in 0..=8 {
            let phi = exponential_polynomial(n);
            let series = exponential_polynomial_via_series(n, n + 5);
            for (k, c) in series.iter().enumerate() {
                assert_eq!(*c, phi.coeff(k), "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn specialization() {
        assert_eq!(dobinski_specialization(2), int(2));
        assert_eq!(dobinski_specialization(0), int(1));
        assert_eq!(dobinski_specialization(5), int(52));
    }
}
