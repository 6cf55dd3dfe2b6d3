//! Where a gate comes from: a catalog name, canonical parameters, or a file.

use std::path::{Path, PathBuf};

use locinv_core::{build_named, CanonicalParams, GateMatrix, GateSpec, TolerancePolicy};

use crate::error::CliError;
use crate::gatefile::read_gate;

#[derive(Debug, Clone, PartialEq)]
pub enum GateSource {
    Named(GateSpec),
    Canonical(CanonicalParams),
    File(PathBuf),
}

impl GateSource {
    pub fn load(&self, tol: &TolerancePolicy) -> Result<GateMatrix, CliError> {
        match self {
            GateSource::Named(spec) => Ok(build_named(*spec)?),
            GateSource::Canonical(p) => {
                let label = format!("canonical[{},{},{}]", p.c1, p.c2, p.c3);
                Ok(build_named(GateSpec::Canonical(*p))?.with_label(label))
            }
            GateSource::File(path) => read_gate(path, tol),
        }
    }
}

/// Parses `name[:alpha]`. Names are case-insensitive.
pub fn parse_gate_name(text: &str) -> Result<GateSpec, CliError> {
    let (name, alpha) = match text.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (text, None),
    };
    let alpha = alpha
        .map(|a| {
            a.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| CliError::Usage(format!("bad angle '{a}' in gate '{text}'")))
        })
        .transpose()?;
    let spec = match (name.trim().to_ascii_lowercase().as_str(), alpha) {
        ("identity" | "i", None) => GateSpec::Identity,
        ("swap", None) => GateSpec::Swap,
        ("cnot", None) => GateSpec::Cnot,
        ("dcnot", None) => GateSpec::Dcnot,
        ("sqrtswap", None) => GateSpec::SqrtSwap,
        ("invsqrtswap", None) => GateSpec::InvSqrtSwap,
        ("b", None) => GateSpec::B,
        ("cu", Some(alpha)) => GateSpec::ControlledU { alpha },
        ("spe", Some(alpha)) => GateSpec::Spe { alpha },
        ("cu" | "spe", None) => {
            return Err(CliError::Usage(format!("gate '{name}' needs an angle, e.g. {name}:0.5")))
        }
        (_, Some(_)) => return Err(CliError::Usage(format!("gate '{name}' takes no angle"))),
        _ => {
            return Err(CliError::Usage(format!(
                "unknown gate '{name}' (known: identity, swap, cnot, dcnot, sqrtswap, \
                 invsqrtswap, b, cu:<alpha>, spe:<alpha>)"
            )))
        }
    };
    Ok(spec)
}

/// Parses `c1,c2,c3`.
pub fn parse_canonical(text: &str) -> Result<CanonicalParams, CliError> {
    let values: Vec<f64> = text
        .split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("bad canonical triple '{text}'")))?;
    match values[..] {
        [c1, c2, c3] if values.iter().all(|x| x.is_finite()) => {
            Ok(CanonicalParams::new(c1, c2, c3))
        }
        _ => Err(CliError::Usage(format!("expected three finite numbers c1,c2,c3, got '{text}'"))),
    }
}

/// A positional gate operand: an existing file path, `c:c1,c2,c3`, or a
/// catalog name.
pub fn parse_operand(text: &str) -> Result<GateSource, CliError> {
    if Path::new(text).is_file() {
        return Ok(GateSource::File(PathBuf::from(text)));
    }
    if let Some(triple) = text.strip_prefix("c:") {
        return Ok(GateSource::Canonical(parse_canonical(triple)?));
    }
    match parse_gate_name(text) {
        Ok(spec) => Ok(GateSource::Named(spec)),
        Err(_) if text.ends_with(".json") || text.contains('/') => {
            Err(CliError::Usage(format!("gate file '{text}' does not exist")))
        }
        Err(e) => Err(e),
    }
}
