//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails or runs over its time budget.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_traits::One;
use umbraldob_cli::output::{parse_csv, parse_json, render_csv, render_json};
use umbraldob_core::cigl::{cigl_q_bell, cigl_q_dobinski_exact, count_partitions};
use umbraldob_core::dobinski::{
    dobinski_bell_in, falling_moment_in, pmf_mass, rota_bell_exact, tail_mass, verify_pmf_via_generating_function,
    PsiPoissonDistribution,
};
use umbraldob_core::operator::{dobinski_specialization, exponential_polynomial, verify_conjugation};
use umbraldob_core::rational::{from_biguint, rat};
use umbraldob_core::umbral::{
    bell_via_sum, carlitz_q_stirling, psi_stirling_diagnostic, q_number_symbolic, stirling2, PsiKind,
};
use umbraldob_core::{PsiSequence, QPolynomial, Rational};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: umbraldob_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn builtin_sequences() -> Vec<PsiSequence> {
    let mut seqs = vec![PsiSequence::classical()];
    for (n, d) in [(1, 4), (1, 2), (3, 2)] {
        seqs.push(PsiSequence::gauss_q(rat(n, d)).expect("q > 0"));
    }
    seqs.push(PsiSequence::fibonacci());
    seqs
}

fn four_route_bell() -> Check {
    let dist = core(PsiPoissonDistribution::new(PsiSequence::classical(), Rational::one()))?;
    for n in 0..=12 {
        let rota = from_biguint(rota_bell_exact(n));
        let count = Rational::from_integer(core(count_partitions(n))?.into());
        ensure(count == rota, || format!("n={n}: enumeration {count} vs rota {rota}"))?;
        let op = dobinski_specialization(n);
        ensure(op == rota, || format!("n={n}: operator {op} vs rota {rota}"))?;
        let v = core(dobinski_bell_in(&dist, n))?;
        ensure(v.contains(&rota), || format!("n={n}: {v} misses {rota}"))?;
    }
    ensure(rota_bell_exact(12) == 4_213_597u32.into(), || "B_12 != 4213597".into())
}

fn carlitz_consistency() -> Check {
    let table = core(carlitz_q_stirling(11))?;
    let one = Rational::one();
    for n in 0..=10 {
        for k in 1..=n + 1 {
            let shift = QPolynomial::monomial(Rational::one(), k - 1);
            let rhs = &(&shift * &table.entry(n, k - 1)) + &(&q_number_symbolic(k) * &table.entry(n, k));
            ensure(table.entry(n + 1, k) == rhs, || format!("recursion fails at ({}, {k})", n + 1))?;
        }
        for k in 0..=n {
            let classical = from_biguint(stirling2(n, k));
            ensure(table.entry(n, k).eval(&one) == classical, || format!("q=1 mismatch at ({n},{k})"))?;
        }
    }
    Ok(())
}

fn falling_moment_and_q_dobinski() -> Check {
    let carlitz = core(carlitz_q_stirling(8))?;
    for seq in builtin_sequences() {
        let dist = core(PsiPoissonDistribution::new(seq.clone(), Rational::one()))?;
        for n in 0..=10 {
            let v = core(falling_moment_in(&dist, n))?;
            ensure(v.contains(&Rational::one()), || format!("{seq} n={n}: falling moment {v}"))?;
        }
        if let PsiKind::GaussQ(q) = seq.kind() {
            for n in 0..=8 {
                let target = bell_via_sum(&carlitz, n).eval(q);
                let v = core(dobinski_bell_in(&dist, n))?;
                ensure(v.contains(&target), || format!("{seq} n={n}: {v} misses {target}"))?;
            }
        }
    }
    Ok(())
}

fn cigl_dobinski() -> Check {
    for n in 0..=12 {
        let bell = core(cigl_q_bell(n))?;
        ensure(cigl_q_dobinski_exact(n) == bell, || format!("n={n}: polynomials differ"))?;
        if n >= 1 {
            let expected_degree = n * (n - 1) / 2;
            ensure(bell.degree() == Some(expected_degree) && bell.leading() == Some(&Rational::one()), || {
                format!("n={n}: leading term is not q^{expected_degree}")
            })?;
        }
    }
    Ok(())
}

fn distribution_checks() -> Check {
    let one = Rational::one();
    for seq in builtin_sequences() {
        let dist = core(PsiPoissonDistribution::new(seq.clone(), one.clone()))?;
        let mass = core(pmf_mass(&dist, 30))?;
        let below_one_q = matches!(seq.kind(), PsiKind::GaussQ(q) if q < &one);
        if below_one_q {
            let total = mass.add(&core(tail_mass(&dist, 30))?);
            ensure(total.contains(&one), || format!("{seq}: mass plus tail {total}"))?;
        } else {
            ensure(mass.contains(&one), || format!("{seq}: mass {mass}"))?;
        }
    }
    for seq in [PsiSequence::classical(), PsiSequence::gauss_q(rat(1, 2)).expect("q > 0")] {
        for n in 0..=6 {
            let v = core(verify_pmf_via_generating_function(&seq, &one, n, n + 10))?;
            ensure(v.coefficient_ok && v.mean_ok() == Some(true), || format!("{seq} n={n}: gf verdicts {v:?}"))?;
        }
    }
    Ok(())
}

fn operator_checks() -> Check {
    for n in 0..=15 {
        let t = exponential_polynomial(n);
        for k in 0..=n {
            let s = from_biguint(stirling2(n, k));
            ensure(t.coeff(k) == s, || format!("T_{n} coefficient {k}"))?;
        }
    }
    ensure(verify_conjugation(20), || "conjugation fails below degree 20".into())
}

fn diagnostic_honesty() -> Check {
    for seq in builtin_sequences().into_iter().filter(|s| s.gauss_parameter().is_some()) {
        for n in 0..=8 {
            let d = core(psi_stirling_diagnostic(&seq, n, 16))?;
            ensure(d.is_consistent(), || format!("{seq} n={n}: residuals {:?}", d.residuals))?;
        }
    }
    let d = core(psi_stirling_diagnostic(&PsiSequence::fibonacci(), 2, 3))?;
    ensure(d.residuals == vec![(3, Rational::from_integer(2.into()))], || {
        format!("fibonacci residuals {:?}", d.residuals)
    })
}

fn cli_contract() -> Check {
    let bin = env!("CARGO_BIN_EXE_umbraldob");
    let run = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .env_remove("UMBRALDOB_SUM_CAP")
            .output()
            .map_err(|e| format!("spawn: {e}"))
    };
    let commands: &[&[&str]] = &[
        &["table", "--kind", "q-bell", "--n", "6"],
        &["verify", "--identity", "cigl-dobinski", "--n-max", "5", "--seq", "q=1/2"],
        &["dist", "--seq", "q=1/2", "--lambda", "1", "--k-max", "5"],
        &["oracle", "--n", "6"],
    ];
    for args in commands {
        for format in ["json", "csv"] {
            let mut full = args.to_vec();
            full.extend(["--format", format]);
            let out = run(&full)?;
            ensure(out.status.code() == Some(0), || format!("{full:?} exited {:?}", out.status.code()))?;
            let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
            let again = if format == "json" {
                let records = parse_json(&text).map_err(|e| e.to_string())?;
                render_json(&records).map_err(|e| e.to_string())?
            } else {
                let (h, rows) = parse_csv(&text).map_err(|e| e.to_string())?;
                render_csv(&h, &rows).map_err(|e| e.to_string())?
            };
            ensure(again == text, || format!("{full:?}: {format} does not round-trip"))?;
        }
    }
    let malformed: &[&[&str]] = &[
        &["table", "--kind", "bell", "--n", "abc"],
        &["table", "--kind", "cigl-q-stirling", "--n", "14"],
        &["verify", "--identity", "falling-moment", "--n-max", "3", "--seq", "q=0"],
        &["verify", "--identity", "falling-moment", "--n-max", "3", "--seq", "custom:1,1"],
        &["verify", "--identity", "dobinski", "--n-max", "3", "--seq", "bogus"],
        &["dist", "--seq", "classical", "--lambda", "x/2", "--k-max", "3"],
        &["dist", "--seq", "classical", "--lambda", "-1", "--k-max", "3"],
        &["oracle", "--n", "14"],
        &["unknown"],
    ];
    for args in malformed {
        let out = run(args)?;
        ensure(out.status.code() == Some(2), || format!("{args:?} exited {:?}, expected 2", out.status.code()))?;
    }
    let out = run(&["verify", "--identity", "conjugation", "--n-max", "20", "--seq", "classical"])?;
    ensure(out.status.code() == Some(0), || "passing verify did not exit 0".into())
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Duration, fn() -> Check); 8] = [
        (1, "four-route Bell agreement", Duration::from_secs(60), four_route_bell),
        (2, "Carlitz q-Stirling consistency", Duration::from_secs(5), carlitz_consistency),
        (3, "falling-moment and q-Dobinski identities", Duration::from_secs(30), falling_moment_and_q_dobinski),
        (4, "cigl q-Dobinski theorem", Duration::from_secs(120), cigl_dobinski),
        (5, "distribution and generating-function checks", Duration::from_secs(10), distribution_checks),
        (6, "operator module", Duration::from_secs(1), operator_checks),
        (7, "psi-Stirling diagnostic", Duration::from_secs(1), diagnostic_honesty),
        (8, "CLI contract", Duration::from_secs(60), cli_contract),
    ];
    let mut failures = 0;
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(()) if elapsed <= budget => "PASS".to_string(),
            Ok(()) => format!("FAIL (over budget of {budget:?})"),
            Err(e) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failures += 1;
        }
        println!("criterion {id} {name}: {verdict} in {:.3}s", elapsed.as_secs_f64());
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
