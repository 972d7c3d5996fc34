//! `name:p1,p2,…` distribution strings.

use super::{Exponential, Lomax, Normal, QuantileModel, Uniform};
use crate::error::{Error, Result};

type Builder = fn(&[f64]) -> Result<QuantileModel>;

/// Parses `lomax:α,λ`, `exp:rate`, `uniform:a,b` or `normal:μ,σ`.
pub fn parse_dist_spec(text: &str) -> Result<QuantileModel> {
    let text = text.trim();
    let (name, rest) = text.split_once(':').ok_or_else(|| Error::Parse {
        token: text.to_string(),
        reason: "expected 'name:p1,p2,…'".into(),
    })?;
    let name = name.trim();
    let (names, build): (&[&str], Builder) =
        match name.to_ascii_lowercase().as_str() {
            "lomax" => (&["alpha", "lambda"], |v| {
                Lomax::new(v[0], v[1]).map(QuantileModel::Lomax)
            }),
            "exp" => (&["rate"], |v| Exponential::new(v[0]).map(QuantileModel::Exponential)),
            "uniform" => (&["a", "b"], |v| {
                Uniform::new(v[0], v[1]).map(QuantileModel::Uniform)
            }),
            "normal" => (&["mu", "sigma"], |v| {
                Normal::new(v[0], v[1]).map(QuantileModel::Normal)
            }),
            _ => {
                return Err(Error::Parse {
                    token: name.to_string(),
                    reason: "unknown distribution (expected lomax, exp, uniform or normal)".into(),
                })
            }
        };

    let tokens: Vec<&str> = rest.split(',').map(str::trim).collect();
    if tokens.len() != names.len() {
        return Err(Error::Parameter {
            name: name.to_string(),
            position: tokens.len().min(names.len()) + 1,
            value: rest.to_string(),
            reason: format!("expected {} parameter(s), got {}", names.len(), tokens.len()),
        });
    }
    let mut values = Vec::with_capacity(tokens.len());
    for (i, (tok, pname)) in tokens.iter().zip(names).enumerate() {
        let v: f64 = tok.parse().map_err(|_| Error::Parameter {
            name: (*pname).to_string(),
            position: i + 1,
            value: (*tok).to_string(),
            reason: "not a number".into(),
        })?;
        if !v.is_finite() {
            return Err(Error::Parameter {
                name: (*pname).to_string(),
                position: i + 1,
                value: (*tok).to_string(),
                reason: "must be finite".into(),
            });
        }
        values.push(v);
    }
    build(&values)
}
