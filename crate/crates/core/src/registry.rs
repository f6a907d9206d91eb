//! Label-based landscape registry, so every experiment target is
//! reachable from a string without code changes.
//!
//! Grammar:
//! - `sphere` — sum of squares in the requested dimension
//! - `elliptic:<c1,...,cd>` — positive coefficients, fixes the dimension
//! - `fz` — the degenerate landscape `x1^2` (flat along every other axis)
//! - `rosenbrock` — the 2-d Rosenbrock function
//! - `neg:<label>` — sign-flipped wrapper (ridge analysis)
//! - `homeo:rosen(<label>)` — the 2-d Rosenbrock coordinate map applied
//!   to a base landscape

use crate::error::{Error, Result};
use crate::landscape::{
    make_elliptic, make_transformed, negate, EllipticParams, Homeomorphism, Landscape,
};
use crate::scalar::{real, Real};

/// One-line-per-form description of the registry grammar.
pub fn available_forms() -> &'static str {
    "sphere | elliptic:<c1,...,cd> | fz | rosenbrock | neg:<label> | homeo:rosen(<label>)"
}

/// Resolves a label to a landscape of dimension `dim` (inferred by the
/// caller from the domain or point flags).
pub fn parse_landscape<F: Real>(label: &str, dim: usize) -> Result<Landscape<F>> {
    let label = label.trim();
    if dim == 0 {
        return Err(Error::Config(
            "landscape dimension could not be inferred; pass a domain or point".into(),
        ));
    }
    if label == "sphere" {
        return Ok(Landscape::sphere(dim));
    }
    if label == "fz" {
        if dim < 2 {
            return Err(Error::Config("fz needs dimension >= 2".into()));
        }
        let mut coeffs = vec![F::zero(); dim];
        coeffs[0] = F::one();
        let params = EllipticParams::with_zeros(coeffs)?;
        return Ok(make_elliptic(&params).relabel("fz"));
    }
    if label == "rosenbrock" {
        if dim != 2 {
            return Err(Error::Dimension { expected: 2, actual: dim });
        }
        return Ok(Landscape::rosenbrock());
    }
    if let Some(rest) = label.strip_prefix("elliptic:") {
        let coeffs = rest
            .split(',')
            .map(|tok| {
                let v: f64 = tok
                    .trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("bad elliptic coefficient '{tok}'")))?;
                Ok(real::<F>(v))
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != dim {
            return Err(Error::Dimension { expected: dim, actual: coeffs.len() });
        }
        return Ok(make_elliptic(&EllipticParams::new(coeffs)?));
    }
    if let Some(rest) = label.strip_prefix("neg:") {
        return Ok(negate(&parse_landscape(rest, dim)?));
    }
    if let Some(rest) = label.strip_prefix("homeo:rosen(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::Config(format!("unbalanced parentheses in '{label}'")))?;
        if dim != 2 {
            return Err(Error::Dimension { expected: 2, actual: dim });
        }
        let base = parse_landscape(inner, dim)?;
        return Ok(make_transformed(&base, &Homeomorphism::rosenbrock_map())?.into_landscape());
    }
    Err(Error::Config(format!(
        "unknown function label '{label}'; available: {}",
        available_forms()
    )))
}

/// Splits a comma-separated list of labels where elliptic coefficient
/// lists themselves contain commas: a token that parses as a number
/// continues the previous label (`elliptic:1,0.01,sphere` splits into
/// `elliptic:1,0.01` and `sphere`).
pub fn split_function_list(s: &str) -> Result<Vec<String>> {
    let mut out: Vec<String> = Vec::new();
    for tok in s.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            return Err(Error::Config("empty entry in function list".into()));
        }
        if tok.parse::<f64>().is_ok() {
            match out.last_mut() {
                Some(prev) => {
                    prev.push(',');
                    prev.push_str(tok);
                }
                None => {
                    return Err(Error::Config(format!(
                        "function list starts with the numeric token '{tok}'"
                    )));
                }
            }
        } else {
            out.push(tok.to_string());
        }
    }
    Ok(out)
}
