use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use logflex::{PatchworkFamily, TropicalPolynomial, TwistSet};

/// An input document: a tropical polynomial in text form, or a family JSON
/// document (recognized by a leading `{`).
pub enum Input {
    Polynomial(TropicalPolynomial),
    Family(PatchworkFamily),
}

impl Input {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("invalid input {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Ok(Input::Family(PatchworkFamily::from_json(text)?))
        } else {
            Ok(Input::Polynomial(TropicalPolynomial::parse(text)?))
        }
    }

    pub fn tropical(&self) -> TropicalPolynomial {
        match self {
            Input::Polynomial(p) => p.clone(),
            Input::Family(f) => f.tropicalization(),
        }
    }

    pub fn family(&self) -> Option<&PatchworkFamily> {
        match self {
            Input::Family(f) => Some(f),
            Input::Polynomial(_) => None,
        }
    }

    pub fn require_family(&self) -> Result<&PatchworkFamily> {
        match self.family() {
            Some(f) => Ok(f),
            None => bail!("this command needs a family document (support, lifting, signs), not a bare polynomial"),
        }
    }
}

/// A twist set file: `{"edges": [..]}` or a bare JSON list of edge indices.
pub fn load_twist_set(path: &Path) -> Result<TwistSet> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let parsed = if text.trim_start().starts_with('[') {
        serde_json::from_str::<Vec<usize>>(&text).map(TwistSet::new).map_err(logflex::Error::from)
    } else {
        TwistSet::from_json(&text)
    };
    parsed.with_context(|| format!("invalid twist set {}", path.display()))
}

/// Parses a comma separated list of `t` values. Entries of the form `e<x>`
/// stand for `exp(x)`.
pub fn parse_t_grid(text: &str) -> Result<Vec<f64>> {
    let mut grid = Vec::new();
    for item in text.split(',').map(str::trim) {
        let t = match item.strip_prefix('e') {
            Some(exponent) => exponent.parse::<f64>().map(f64::exp),
            None => item.parse::<f64>(),
        }
        .with_context(|| format!("bad t-grid entry {item:?}"))?;
        if !(t > 1.0) || !t.is_finite() {
            bail!("t-grid entry {item:?} must be a finite value > 1");
        }
        grid.push(t);
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        bail!("t-grid must be strictly increasing");
    }
    Ok(grid)
}
