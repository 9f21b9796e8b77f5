//! The four subcommands, each producing a [`Report`].

use clap::ValueEnum;
use num_traits::{One, Zero};
use umbraldob_core::cigl::{self, cigl_q_dobinski_exact, cigl_weighted_count, count_partitions, ENUMERATION_CAP};
use umbraldob_core::dobinski::{
    dobinski_bell_in, falling_moment_in, pmf, rota_bell_numbers, verify_pmf_via_generating_function_with,
    PsiPoissonDistribution,
};
use umbraldob_core::operator::{dobinski_specialization, verify_conjugation_cases};
use umbraldob_core::rational::{from_biguint, to_fraction_string};
use umbraldob_core::umbral::{bell_via_sum, carlitz_q_stirling, stirling2_rows};
use umbraldob_core::{PsiSequence, Rational, SumConfig};

use crate::output::{decimal, interval_decimal, poly_field, OutputRecord, RecordValue, Report};
use crate::CliError;

/// Largest `n` for the classical `stirling` and `bell` tables.
pub const CLASSICAL_TABLE_CAP: usize = 500;
/// Largest `n` for the Carlitz triangular solve.
pub const CARLITZ_TABLE_CAP: usize = 24;
/// Largest `n` for series-based identities.
pub const SERIES_CAP: usize = 40;
/// Largest degree for the conjugation check.
pub const CONJUGATION_CAP: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Stirling,
    Bell,
    QStirling,
    CiglQStirling,
    CiglQBell,
    QBell,
}

impl TableKind {
    fn name(self) -> &'static str {
        match self {
            TableKind::Stirling => "stirling",
            TableKind::Bell => "bell",
            TableKind::QStirling => "q-stirling",
            TableKind::CiglQStirling => "cigl-q-stirling",
            TableKind::CiglQBell => "cigl-q-bell",
            TableKind::QBell => "q-bell",
        }
    }

    fn cap(self) -> usize {
        match self {
            TableKind::Stirling | TableKind::Bell => CLASSICAL_TABLE_CAP,
            TableKind::QStirling | TableKind::QBell => CARLITZ_TABLE_CAP,
            TableKind::CiglQStirling | TableKind::CiglQBell => ENUMERATION_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    FallingMoment,
    Dobinski,
    CiglDobinski,
    Conjugation,
    PmfGf,
    Q1Reduction,
}

impl Identity {
    fn name(self) -> &'static str {
        match self {
            Identity::FallingMoment => "falling-moment",
            Identity::Dobinski => "dobinski",
            Identity::CiglDobinski => "cigl-dobinski",
            Identity::Conjugation => "conjugation",
            Identity::PmfGf => "pmf-gf",
            Identity::Q1Reduction => "q1-reduction",
        }
    }

    fn cap(self) -> usize {
        match self {
            Identity::FallingMoment | Identity::Dobinski | Identity::PmfGf => SERIES_CAP,
            Identity::CiglDobinski | Identity::Q1Reduction => ENUMERATION_CAP,
            Identity::Conjugation => CONJUGATION_CAP,
        }
    }
}

fn check_cap(what: &str, n: usize, cap: usize) -> Result<(), CliError> {
    if n > cap {
        Err(CliError::Usage(format!("{what}: n = {n} exceeds the cap of {cap}")))
    } else {
        Ok(())
    }
}

fn poly_pretty(p: &umbraldob_core::QPolynomial) -> String {
    p.to_string()
}

pub fn table(kind: TableKind, n: usize) -> Result<Report, CliError> {
    check_cap(&format!("table {}", kind.name()), n, kind.cap())?;
    let name = kind.name();
    match kind {
        TableKind::Stirling => {
            let mut report = Report::with_header(&["n", "k", "value"]);
            for (m, row) in stirling2_rows(n).into_iter().enumerate() {
                let mut line = Vec::with_capacity(row.len());
                for (k, s) in row.into_iter().enumerate() {
                    report.records.push(OutputRecord::new(
                        name,
                        &[("n", m.to_string()), ("k", k.to_string())],
                        RecordValue::integer(&s),
                    ));
                    report.csv_rows.push(vec![m.to_string(), k.to_string(), s.to_string()]);
                    line.push(s.to_string());
                }
                report.pretty.push(if n == 0 { line.join(" ") } else { format!("n={m}: {}", line.join(" ")) });
            }
            Ok(report)
        }
        TableKind::Bell => {
            let mut report = Report::with_header(&["n", "value"]);
            for (m, b) in rota_bell_numbers(n).into_iter().enumerate() {
                report.records.push(OutputRecord::new(name, &[("n", m.to_string())], RecordValue::integer(&b)));
                report.csv_rows.push(vec![m.to_string(), b.to_string()]);
                report.pretty.push(format!("B_{m} = {b}"));
            }
            Ok(report)
        }
        TableKind::QStirling | TableKind::CiglQStirling => {
            let rows: Vec<Vec<umbraldob_core::QPolynomial>> = if kind == TableKind::QStirling {
                let t = carlitz_q_stirling(n)?;
                (0..=n).map(|m| t.row(m).to_vec()).collect()
            } else {
                (0..=n)
                    .map(|m| {
                        let w = cigl_weighted_count(m)?;
                        Ok((0..=m).map(|k| w.stirling(k)).collect())
                    })
                    .collect::<Result<_, CliError>>()?
            };
            let mut report = Report::with_header(&["n", "k", "coefficients"]);
            for (m, row) in rows.iter().enumerate() {
                for (k, p) in row.iter().enumerate() {
                    report.records.push(OutputRecord::new(
                        name,
                        &[("n", m.to_string()), ("k", k.to_string())],
                        RecordValue::polynomial(p),
                    ));
                    report.csv_rows.push(vec![m.to_string(), k.to_string(), poly_field(p)]);
                    report.pretty.push(format!("S_q({m},{k}) = {}", poly_pretty(p)));
                }
            }
            Ok(report)
        }
        TableKind::QBell | TableKind::CiglQBell => {
            let bells: Vec<umbraldob_core::QPolynomial> = if kind == TableKind::QBell {
                let t = carlitz_q_stirling(n)?;
                (0..=n).map(|m| bell_via_sum(&t, m)).collect()
            } else {
                (0..=n).map(cigl::cigl_q_bell).collect::<Result<_, _>>()?
            };
            let mut report = Report::with_header(&["n", "coefficients"]);
            for (m, p) in bells.iter().enumerate() {
                report.records.push(OutputRecord::new(name, &[("n", m.to_string())], RecordValue::polynomial(p)));
                report.csv_rows.push(vec![m.to_string(), poly_field(p)]);
                report.pretty.push(format!("B_{m}(q) = {}", poly_pretty(p)));
            }
            Ok(report)
        }
    }
}

struct VerifyCase {
    case: String,
    passed: bool,
    detail: String,
    value: Option<RecordValue>,
}

fn push_case(report: &mut Report, identity: Identity, seq: &PsiSequence, c: VerifyCase) {
    let name = identity.name();
    let params = [("identity", name.to_string()), ("seq", seq.to_string()), ("case", c.case.clone())];
    report.records.push(OutputRecord::new("verify", &params, RecordValue::verdict(c.passed, c.detail.clone())));
    if let Some(v) = c.value {
        report.records.push(OutputRecord::new("verify-value", &params, v));
    }
    report.csv_rows.push(vec![
        name.to_string(),
        seq.to_string(),
        c.case.clone(),
        c.passed.to_string(),
        c.detail.clone(),
    ]);
    let tag = if c.passed { "PASS" } else { "FAIL" };
    report.pretty.push(format!("{tag} {name} seq={seq} {}: {}", c.case, c.detail));
    report.failed |= !c.passed;
}

fn interval_case(case: String, v: &umbraldob_core::CertifiedValue, target: &Rational) -> VerifyCase {
    VerifyCase {
        case,
        passed: v.contains(target),
        detail: format!("{} contains {}", interval_decimal(v), to_fraction_string(target)),
        value: Some(RecordValue::interval(v)),
    }
}

fn require_gauss(identity: Identity, seq: &PsiSequence) -> Result<Rational, CliError> {
    seq.gauss_parameter().ok_or_else(|| {
        CliError::Usage(format!(
            "identity {} needs seq classical or q=<rational>, got {seq}",
            identity.name()
        ))
    })
}

pub fn verify(identity: Identity, n_max: usize, seq: &PsiSequence, config: &SumConfig) -> Result<Report, CliError> {
    check_cap(&format!("verify {}", identity.name()), n_max, identity.cap())?;
    let mut report = Report::with_header(&["identity", "seq", "case", "passed", "detail"]);
    match identity {
        Identity::FallingMoment => {
            let dist = PsiPoissonDistribution::with_config(seq.clone(), Rational::one(), config.clone())?;
            for n in 0..=n_max {
                let v = falling_moment_in(&dist, n)?;
                push_case(&mut report, identity, seq, interval_case(format!("n={n}"), &v, &Rational::one()));
            }
        }
        Identity::Dobinski => {
            let q = require_gauss(identity, seq)?;
            let dist = PsiPoissonDistribution::with_config(seq.clone(), Rational::one(), config.clone())?;
            let table = carlitz_q_stirling(n_max.min(CARLITZ_TABLE_CAP))?;
            let classical = rota_bell_numbers(n_max);
            for n in 0..=n_max {
                let exact = if q.is_one() {
                    from_biguint(classical[n].clone())
                } else if n <= table.n_max() {
                    bell_via_sum(&table, n).eval(&q)
                } else {
                    return Err(CliError::Usage(format!(
                        "verify dobinski: q-Bell reference limited to n <= {CARLITZ_TABLE_CAP}"
                    )));
                };
                let v = dobinski_bell_in(&dist, n)?;
                push_case(&mut report, identity, seq, interval_case(format!("n={n}"), &v, &exact));
            }
        }
        Identity::CiglDobinski => {
            let at = seq.gauss_parameter();
            for n in 0..=n_max {
                let by_moments = cigl_q_dobinski_exact(n);
                let by_partitions = cigl::cigl_q_bell(n)?;
                let mut passed = by_moments == by_partitions;
                let mut detail = format!("L(X_q^{n}) = {by_moments}");
                if let Some(q) = &at {
                    let (a, b) = (by_moments.eval(q), by_partitions.eval(q));
                    passed &= a == b;
                    detail.push_str(&format!("; at q={q}: {}", to_fraction_string(&a)));
                }
                let value = Some(RecordValue::polynomial(&by_moments));
                push_case(&mut report, identity, seq, VerifyCase { case: format!("n={n}"), passed, detail, value });
            }
        }
        Identity::Conjugation => {
            for c in verify_conjugation_cases(n_max) {
                let detail = format!("x(D+1)x^{} = {}", c.degree, c.lhs.to_string().replace('q', "x"));
                let value = Some(RecordValue::polynomial(&c.lhs));
                push_case(
                    &mut report,
                    identity,
                    seq,
                    VerifyCase { case: format!("degree={}", c.degree), passed: c.passed, detail, value },
                );
            }
        }
        Identity::PmfGf => {
            require_gauss(identity, seq)?;
            for n in 0..=n_max {
                let v = verify_pmf_via_generating_function_with(seq, &Rational::one(), n, n + 10, config)?;
                let mean = v.mean.as_ref().map(interval_decimal).unwrap_or_else(|| "skipped".into());
                let detail = format!(
                    "extracted {} within pmf {}; mean {}",
                    interval_decimal(&v.extracted),
                    interval_decimal(&v.pmf),
                    mean
                );
                let value = Some(RecordValue::interval(&v.extracted));
                push_case(&mut report, identity, seq, VerifyCase { case: format!("n={n}"), passed: v.passed(), detail, value });
            }
        }
        Identity::Q1Reduction => {
            let carlitz = carlitz_q_stirling(n_max)?;
            let rows = stirling2_rows(n_max);
            let bells = rota_bell_numbers(n_max);
            for n in 0..=n_max {
                let w = cigl_weighted_count(n)?;
                let one = Rational::one();
                let stirling: Vec<Rational> = rows[n].iter().cloned().map(from_biguint).collect();
                let carlitz_ok = (0..=n).all(|k| carlitz.entry(n, k).eval(&one) == stirling[k]);
                let cigl_ok = (0..=n).all(|k| w.stirling(k).eval(&one) == stirling[k]);
                let bell = from_biguint(bells[n].clone());
                let bell_ok = w.bell().eval(&one) == bell && bell_via_sum(&carlitz, n).eval(&one) == bell;
                let passed = carlitz_ok && cigl_ok && bell_ok;
                let detail = format!("carlitz={carlitz_ok} cigl={cigl_ok} bell={bell_ok} (B_{n} = {bell})");
                push_case(&mut report, identity, seq, VerifyCase { case: format!("n={n}"), passed, detail, value: None });
            }
        }
    }
    Ok(report)
}

pub fn dist(seq: &PsiSequence, lambda: &Rational, k_max: usize, config: &SumConfig) -> Result<Report, CliError> {
    let dist = PsiPoissonDistribution::with_config(seq.clone(), lambda.clone(), config.clone())?;
    let mut report = Report::with_header(&["kind", "k", "lower", "upper"]);
    let base = [("seq", seq.to_string()), ("lambda", to_fraction_string(lambda))];
    let z = dist.normalizer();
    report.records.push(OutputRecord::new("normalizer", &base, RecordValue::interval(z)));
    report
        .csv_rows
        .push(vec!["normalizer".into(), String::new(), to_fraction_string(z.lo()), to_fraction_string(z.hi())]);
    report.pretty.push(format!("exp_psi({}) in {}", decimal(lambda), interval_decimal(z)));
    let mut mass = umbraldob_core::CertifiedValue::exact(Rational::zero());
    for k in 0..=k_max {
        let p = pmf(&dist, k)?;
        let mut params = base.to_vec();
        params.push(("k", k.to_string()));
        report.records.push(OutputRecord::new("pmf", &params, RecordValue::interval(&p)));
        report
            .csv_rows
            .push(vec!["pmf".into(), k.to_string(), to_fraction_string(p.lo()), to_fraction_string(p.hi())]);
        report.pretty.push(format!("p_{k} in {}", interval_decimal(&p)));
        mass = mass.add(&p);
    }
    report.pretty.push(format!("sum p_0..p_{k_max} in {}", interval_decimal(&mass)));
    Ok(report)
}

pub fn oracle(n: usize, config: &SumConfig) -> Result<Report, CliError> {
    check_cap("oracle", n, ENUMERATION_CAP)?;
    let dist = PsiPoissonDistribution::with_config(PsiSequence::classical(), Rational::one(), config.clone())?;
    let bells = rota_bell_numbers(n);
    let mut report = Report::with_header(&[
        "n",
        "enumeration",
        "rota",
        "dobinski_lower",
        "dobinski_upper",
        "operator",
        "agree",
    ]);
    report.pretty.push(format!(
        "{:>3} {:>10} {:>10} {:>10} {:>36} {:>6}",
        "n", "enum", "rota", "operator", "dobinski interval", "agree"
    ));
    for m in 0..=n {
        let count = count_partitions(m)?;
        let rota = from_biguint(bells[m].clone());
        let operator = dobinski_specialization(m);
        let series = dobinski_bell_in(&dist, m)?;
        let enumerated = Rational::from_integer(count.into());
        let agree = enumerated == rota && rota == operator && series.contains(&rota);
        let params = [("n", m.to_string())];
        report.records.push(OutputRecord::new("oracle-enumeration", &params, RecordValue::integer(count)));
        report.records.push(OutputRecord::new("oracle-rota", &params, RecordValue::integer(&bells[m])));
        report.records.push(OutputRecord::new("oracle-dobinski", &params, RecordValue::interval(&series)));
        report.records.push(OutputRecord::new("oracle-operator", &params, RecordValue::integer(&operator)));
        report.records.push(OutputRecord::new(
            "oracle-verdict",
            &params,
            RecordValue::verdict(agree, if agree { "all routes agree" } else { "routes disagree" }),
        ));
        report.csv_rows.push(vec![
            m.to_string(),
            count.to_string(),
            bells[m].to_string(),
            to_fraction_string(series.lo()),
            to_fraction_string(series.hi()),
            operator.to_string(),
            agree.to_string(),
        ]);
        report.pretty.push(format!(
            "{m:>3} {count:>10} {:>10} {operator:>10} {:>36} {:>6}",
            bells[m],
            interval_decimal(&series),
            if agree { "PASS" } else { "FAIL" }
        ));
        report.failed |= !agree;
    }
    Ok(report)
}
