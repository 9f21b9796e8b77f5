//! The sequence-spec mini-language accepted by `--seq`.
//!
//! ```text
//! classical | fibonacci | q=<rational> | custom:<r0>,<r1>,...
//! ```
//!
//! A custom list starts at `psi(0)`, which must be `0`.

use umbraldob_core::rational::parse_rational;
use umbraldob_core::{PsiSequence, Rational};

use crate::CliError;

pub fn parse_seq(spec: &str) -> Result<PsiSequence, CliError> {
    let spec = spec.trim();
    if spec == "classical" {
        return Ok(PsiSequence::classical());
    }
    if spec == "fibonacci" {
        return Ok(PsiSequence::fibonacci());
    }
    if let Some(q) = spec.strip_prefix("q=") {
        let q = parse_rational_arg("q", q)?;
        return Ok(PsiSequence::gauss_q(q)?);
    }
    if let Some(list) = spec.strip_prefix("custom:") {
        let values = list
            .split(',')
            .map(|v| parse_rational_arg("custom value", v))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(PsiSequence::custom(values)?);
    }
    Err(CliError::Usage(format!(
        "unrecognised sequence spec {spec:?}; expected classical, fibonacci, q=<rational> or custom:<list>"
    )))
}

pub fn parse_rational_arg(what: &str, text: &str) -> Result<Rational, CliError> {
    parse_rational(text).ok_or_else(|| CliError::Usage(format!("{what}: {text:?} is not a rational number")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use umbraldob_core::rational::rat;
    use umbraldob_core::umbral::PsiKind;

    #[test]
    fn accepted_specs() {
        assert_eq!(parse_seq("classical").unwrap(), PsiSequence::classical());
        assert_eq!(parse_seq("fibonacci").unwrap(), PsiSequence::fibonacci());
        assert_eq!(parse_seq("q=1/2").unwrap().kind(), &PsiKind::GaussQ(rat(1, 2)));
        let c = parse_seq("custom:0,1,2,3").unwrap();
        assert_eq!(c.kind(), &PsiKind::Custom(vec![rat(0, 1), rat(1, 1), rat(2, 1), rat(3, 1)]));
    }

    #[test]
    fn rejected_specs() {
        for bad in ["", "Classical", "q=", "q=0", "q=-1/2", "q=1/0", "q=abc", "custom:", "custom:1,2", "custom:0,0", "poisson"] {
            assert!(parse_seq(bad).is_err(), "{bad:?} should be rejected");
        }
    }
}
