//! Parsing of model, semicharacter and measure arguments.

use std::fs;

use hgdeform_core::io::{measure_from_csv, measure_from_json};
use hgdeform_core::{Error, Hypergroup, Measure, ModelDescriptor, SemicharDescriptor, Semicharacter, SharedHypergroup};

use crate::Failure;

/// The argument itself, or the contents of the file named after `@`.
pub fn resolve(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read `{path}`: {e}"))),
        None => Ok(arg.to_string()),
    }
}

pub fn model(arg: &str) -> Result<SharedHypergroup<f64>, Failure> {
    let d: ModelDescriptor = resolve(arg)?.parse()?;
    Ok(d.build::<f64>()?)
}

pub fn semichar_descriptor(arg: &str) -> Result<SemicharDescriptor, Failure> {
    Ok(resolve(arg)?.parse()?)
}

/// A semicharacter certified on `hg` with the default sampling settings.
pub fn certified(hg: &dyn Hypergroup<f64>, arg: &str) -> Result<Semicharacter<f64>, Failure> {
    Ok(Semicharacter::certified(hg, semichar_descriptor(arg)?)?)
}

pub fn uncertified(hg: &dyn Hypergroup<f64>, arg: &str) -> Result<Semicharacter<f64>, Failure> {
    Ok(Semicharacter::new(hg, semichar_descriptor(arg)?)?)
}

/// `pos:weight,...`, inline JSON, `@file.json` or `@file.csv`.
pub fn measure(hg: &dyn Hypergroup<f64>, arg: &str) -> Result<Measure<f64>, Failure> {
    let ground = hg.ground();
    let text = resolve(arg)?;
    let text = text.trim();
    if arg.starts_with('@') && arg.ends_with(".csv") {
        return Ok(measure_from_csv(text, hg.space(), &ground)?);
    }
    if text.starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("measure: {e}")))?;
        return Ok(measure_from_json(&v, hg.space(), &ground)?);
    }
    let mut entries = Vec::new();
    for atom in text.split(',').filter(|a| !a.trim().is_empty()) {
        let (pos, w) = atom.split_once(':').ok_or_else(|| Error::Parse(format!("expected position:weight, got `{atom}`")))?;
        let pos: f64 = pos.trim().parse().map_err(|_| Error::Parse(format!("bad position `{pos}`")))?;
        let w: f64 = w.trim().parse().map_err(|_| Error::Parse(format!("bad weight `{w}`")))?;
        entries.push((ground.coord_at(pos)?, w));
    }
    Ok(Measure::new(hg.space().clone(), entries))
}

pub fn seed(seed: Option<u64>, what: &str) -> Result<u64, Failure> {
    seed.ok_or_else(|| Failure::usage(format!("--seed is required for {what}")))
}
