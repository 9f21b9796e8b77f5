//! Identities that tie several modules together, checked through the public API.

use num_traits::{One, Zero};
use umbraldob_core::cigl::{cigl_q_bell, cigl_q_dobinski_exact, cigl_weighted_count, count_partitions};
use umbraldob_core::dobinski::{
    dobinski_bell, pmf_mass, poisson_moment_exact, rota_bell_exact, tail_mass, verify_falling_moment,
    PsiPoissonDistribution,
};
use umbraldob_core::operator::{dobinski_specialization, exponential_polynomial, verify_conjugation};
use umbraldob_core::rational::{from_biguint, rat};
use umbraldob_core::umbral::{
    bell_via_sum, carlitz_q_stirling, carlitz_q_stirling_recursive, psi_stirling_diagnostic, stirling2,
};
use umbraldob_core::{PsiSequence, Rational, XPolynomial};

#[test]
fn bell_numbers_agree_across_routes() {
    for n in 0..=10 {
        let rota = from_biguint(rota_bell_exact(n));
        assert_eq!(Rational::from_integer(count_partitions(n).unwrap().into()), rota, "n={n}");
        assert_eq!(dobinski_specialization(n), rota, "n={n}");
        assert!(dobinski_bell(&PsiSequence::classical(), n).unwrap().contains(&rota), "n={n}");
    }
}

#[test]
fn poisson_moment_of_exponential_polynomial() {
    // E[T_n(X)] under Poisson(1), where T_n has Stirling coefficients, equals
    // sum_k S(n,k) B_k.
    for n in 0..=8 {
        let t = exponential_polynomial(n);
        let expected: Rational = (0..=n)
            .map(|k| from_biguint(stirling2(n, k)) * from_biguint(rota_bell_exact(k)))
            .fold(Rational::zero(), |a, b| a + b);
        assert_eq!(poisson_moment_exact(&t), expected, "n={n}");
    }
}

#[test]
fn monomial_poisson_moment_is_bell() {
    for n in 0..=12 {
        let x_n = XPolynomial::monomial(Rational::one(), n);
        assert_eq!(poisson_moment_exact(&x_n), from_biguint(rota_bell_exact(n)));
    }
}

#[test]
fn carlitz_and_cigl_towers_reduce_to_the_same_integers() {
    let table = carlitz_q_stirling(9).unwrap();
    let one = Rational::one();
    for n in 0..=9 {
        let w = cigl_weighted_count(n).unwrap();
        for k in 0..=n {
            let classical = from_biguint(stirling2(n, k));
            assert_eq!(table.entry(n, k).eval(&one), classical, "carlitz ({n},{k})");
            assert_eq!(w.stirling(k).eval(&one), classical, "cigl ({n},{k})");
        }
        assert_eq!(bell_via_sum(&table, n).eval(&one), w.bell().eval(&one));
    }
}

#[test]
fn solve_and_recursion_give_identical_tables() {
    let solved = carlitz_q_stirling(14).unwrap();
    let recursed = carlitz_q_stirling_recursive(14);
    for n in 0..=14 {
        assert_eq!(solved.row(n), recursed.row(n), "row {n}");
    }
}

#[test]
fn cigl_dobinski_holds_through_n_nine() {
    for n in 0..=9 {
        assert_eq!(cigl_q_dobinski_exact(n), cigl_q_bell(n).unwrap(), "n={n}");
    }
}

#[test]
fn gauss_dobinski_matches_carlitz_bell_at_several_q() {
    let table = carlitz_q_stirling(6).unwrap();
    for q in [rat(1, 3), rat(2, 3), rat(5, 4)] {
        let seq = PsiSequence::gauss_q(q.clone()).unwrap();
        for n in 0..=6 {
            let target = bell_via_sum(&table, n).eval(&q);
            let v = dobinski_bell(&seq, n).unwrap();
            assert!(v.contains(&target), "q={q} n={n}: {v} misses {target}");
        }
    }
}

#[test]
fn falling_moments_are_one_for_each_builtin_sequence() {
    for seq in [PsiSequence::classical(), PsiSequence::fibonacci(), PsiSequence::gauss_q(rat(2, 3)).unwrap()] {
        for n in 0..=6 {
            let v = verify_falling_moment(&seq, n).unwrap();
            assert!(v.contains(&Rational::one()), "{seq} n={n}: {v}");
        }
    }
}

#[test]
fn pmf_mass_plus_tail_brackets_one() {
    for seq in [PsiSequence::classical(), PsiSequence::fibonacci(), PsiSequence::gauss_q(rat(1, 2)).unwrap()] {
        let dist = PsiPoissonDistribution::new(seq.clone(), Rational::one()).unwrap();
        let total = pmf_mass(&dist, 20).unwrap().add(&tail_mass(&dist, 20).unwrap());
        assert!(total.contains(&Rational::one()), "{seq}: {total}");
    }
}

#[test]
fn diagnostic_separates_gauss_from_fibonacci() {
    for seq in [PsiSequence::classical(), PsiSequence::gauss_q(rat(3, 2)).unwrap()] {
        assert!(psi_stirling_diagnostic(&seq, 5, 10).unwrap().is_consistent(), "{seq}");
    }
    assert!(!psi_stirling_diagnostic(&PsiSequence::fibonacci(), 3, 6).unwrap().is_consistent());
}

#[test]
fn conjugation_holds_to_degree_forty() {
    assert!(verify_conjugation(40));
}
