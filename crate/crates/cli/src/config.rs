//! Sweep configuration: flat key=value text, parsing, validation, and the
//! round-trip serialization used for provenance echoes.
//!
//! A config names one of the two systems, a swept parameter with an
//! inclusive ascending range, optionally a family parameter taking a list
//! of values (one curve per value), fixed values for every remaining
//! parameter, and the quantities to tabulate. Example:
//!
//! ```text
//! # two-cavity steady state, mirror pair
//! system = 1
//! swept_parameter = n_th:0:5:201
//! family = r:0.5,1,1.5,2
//! block = mirror
//! fixed_parameters.C = 34
//! fixed_parameters.gamma = 0.05
//! quantities = L_N_mirror, W0, W0_sep, W0_max
//! output_path = mirror_works.csv
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use crate::error::CliError;

/// Default homodyne angle (both `theta` and `phi`) of the two-measurement
/// quantities, chosen so the two-homodyne work equals the single-homodyne
/// one.
pub const DEFAULT_ANGLE: f64 = std::f64::consts::PI / 12.0;

/// Which model a sweep evaluates, named `1` and `2` in config files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemId {
    /// Two optomechanical cavities with a shared squeezed drive.
    SqueezedCavities,
    /// Single cavity with a vibrating mirror.
    VibratingMirror,
}

impl SystemId {
    fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "1" => Ok(SystemId::SqueezedCavities),
            "2" => Ok(SystemId::VibratingMirror),
            other => Err(CliError::config(format!(
                "system must be 1 or 2, got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemId::SqueezedCavities => write!(f, "1"),
            SystemId::VibratingMirror => write!(f, "2"),
        }
    }
}

/// Which two-mode block of the system-1 steady state the work quantities
/// apply to. System 2 has a single optical pair, so the choice only exists
/// for system 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Block {
    Mirror,
    Optic,
}

impl Block {
    fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "mirror" => Ok(Block::Mirror),
            "optic" => Ok(Block::Optic),
            other => Err(CliError::config(format!(
                "block must be mirror or optic, got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Mirror => write!(f, "mirror"),
            Block::Optic => write!(f, "optic"),
        }
    }
}

/// A tabulated quantity. The entanglement columns are block-specific by
/// name; the work columns follow the `block` setting (system 1) or the
/// optical pair (system 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    LnMirror,
    LnOptic,
    W0,
    W1,
    W0Sep,
    W1Sep,
    W0Max,
    W1Max,
    W00,
    W11,
}

/// All recognized quantities, in canonical column order.
pub const ALL_QUANTITIES: [Quantity; 10] = [
    Quantity::LnMirror,
    Quantity::LnOptic,
    Quantity::W0,
    Quantity::W1,
    Quantity::W0Sep,
    Quantity::W1Sep,
    Quantity::W0Max,
    Quantity::W1Max,
    Quantity::W00,
    Quantity::W11,
];

impl Quantity {
    pub fn column_name(&self) -> &'static str {
        match self {
            Quantity::LnMirror => "L_N_mirror",
            Quantity::LnOptic => "L_N_optic",
            Quantity::W0 => "W0",
            Quantity::W1 => "W1",
            Quantity::W0Sep => "W0_sep",
            Quantity::W1Sep => "W1_sep",
            Quantity::W0Max => "W0_max",
            Quantity::W1Max => "W1_max",
            Quantity::W00 => "W00",
            Quantity::W11 => "W11",
        }
    }

    fn parse(s: &str) -> Result<Self, CliError> {
        ALL_QUANTITIES
            .iter()
            .copied()
            .find(|q| q.column_name() == s)
            .ok_or_else(|| CliError::config(format!("unknown quantity {s:?}")))
    }

    /// Work quantities are in `k_B T` units and are rescaled by `--kbt`;
    /// entanglement measures are not.
    pub fn is_work(&self) -> bool {
        !matches!(self, Quantity::LnMirror | Quantity::LnOptic)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.column_name())
    }
}

/// The swept parameter: name plus inclusive ascending range.
#[derive(Debug, Clone, PartialEq)]
pub struct SweptParameter {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl SweptParameter {
    /// Evenly spaced grid over the inclusive range, ascending.
    pub fn values(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| self.start + step * i as f64)
            .collect()
    }

    fn parse(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(CliError::config(format!(
                "swept_parameter must be name:start:stop:count, got {s:?}"
            )));
        }
        Ok(SweptParameter {
            name: parts[0].trim().to_string(),
            start: parse_float("swept_parameter start", parts[1])?,
            stop: parse_float("swept_parameter stop", parts[2])?,
            count: parts[3]
                .trim()
                .parse()
                .map_err(|_| CliError::config(format!("bad point count {:?}", parts[3])))?,
        })
    }
}

impl fmt::Display for SweptParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}:{}",
            self.name, self.start, self.stop, self.count
        )
    }
}

/// A family parameter: the sweep is repeated for each listed value and the
/// value is emitted as an extra column, so one file holds one curve per
/// family member.
#[derive(Debug, Clone, PartialEq)]
pub struct Family {
    pub name: String,
    pub values: Vec<f64>,
}

impl Family {
    fn parse(s: &str) -> Result<Self, CliError> {
        let (name, rest) = s
            .split_once(':')
            .ok_or_else(|| CliError::config(format!("family must be name:v1,v2,..., got {s:?}")))?;
        let values = rest
            .split(',')
            .map(|v| parse_float("family value", v))
            .collect::<Result<Vec<f64>, _>>()?;
        if values.is_empty() {
            return Err(CliError::config("family needs at least one value"));
        }
        Ok(Family {
            name: name.trim().to_string(),
            values,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let values: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}:{}", self.name, values.join(","))
    }
}

/// A full sweep description. See the module docs for the file format.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub system: SystemId,
    pub swept: SweptParameter,
    pub family: Option<Family>,
    pub fixed: BTreeMap<String, f64>,
    pub block: Block,
    pub theta: f64,
    pub phi: f64,
    pub quantities: Vec<Quantity>,
    pub output_path: Option<PathBuf>,
}

impl SweepConfig {
    /// Parses and validates the flat key=value text format.
    pub fn parse_str(text: &str) -> Result<Self, CliError> {
        let mut system = None;
        let mut swept = None;
        let mut family = None;
        let mut fixed = BTreeMap::new();
        let mut block = None;
        let mut theta = None;
        let mut phi = None;
        let mut quantities = None;
        let mut output_path = None;

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::config(format!("line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "system" => set_once("system", &mut system, SystemId::parse(value)?)?,
                "swept_parameter" => {
                    set_once("swept_parameter", &mut swept, SweptParameter::parse(value)?)?
                }
                "family" => set_once("family", &mut family, Family::parse(value)?)?,
                "block" => set_once("block", &mut block, Block::parse(value)?)?,
                "theta" => set_once("theta", &mut theta, parse_float("theta", value)?)?,
                "phi" => set_once("phi", &mut phi, parse_float("phi", value)?)?,
                "quantities" => {
                    let parsed = value
                        .split(',')
                        .map(|q| Quantity::parse(q.trim()))
                        .collect::<Result<Vec<_>, _>>()?;
                    set_once("quantities", &mut quantities, parsed)?;
                }
                "output_path" => set_once("output_path", &mut output_path, PathBuf::from(value))?,
                _ => {
                    if let Some(name) = key.strip_prefix("fixed_parameters.") {
                        let v = parse_float(key, value)?;
                        if fixed.insert(name.to_string(), v).is_some() {
                            return Err(CliError::config(format!("duplicate key {key}")));
                        }
                    } else {
                        return Err(CliError::config(format!("unknown key {key:?}")));
                    }
                }
            }
        }

        let system = system.ok_or_else(|| CliError::config("missing key: system"))?;
        if block.is_some() && system == SystemId::VibratingMirror {
            return Err(CliError::config(
                "block only applies to system 1; system 2 works always use the optical pair",
            ));
        }
        let config = SweepConfig {
            system,
            swept: swept.ok_or_else(|| CliError::config("missing key: swept_parameter"))?,
            family,
            fixed,
            block: block.unwrap_or(Block::Mirror),
            theta: theta.unwrap_or(DEFAULT_ANGLE),
            phi: phi.unwrap_or(DEFAULT_ANGLE),
            quantities: quantities.ok_or_else(|| CliError::config("missing key: quantities"))?,
            output_path,
        };
        config.validate()?;
        Ok(config)
    }

    /// Loads a config file; missing or unreadable files are I/O errors,
    /// malformed contents are config errors.
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?;
        Self::parse_str(&text)
    }

    /// Serializes back to the file format. Floats use the shortest
    /// round-trip-exact decimal form, so `parse_str` reproduces this config
    /// (and hence its sweep output) exactly.
    pub fn to_config_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("system = {}\n", self.system));
        out.push_str(&format!("swept_parameter = {}\n", self.swept));
        if let Some(family) = &self.family {
            out.push_str(&format!("family = {family}\n"));
        }
        if self.system == SystemId::SqueezedCavities {
            out.push_str(&format!("block = {}\n", self.block));
        }
        out.push_str(&format!("theta = {}\n", self.theta));
        out.push_str(&format!("phi = {}\n", self.phi));
        for (name, value) in &self.fixed {
            out.push_str(&format!("fixed_parameters.{name} = {value}\n"));
        }
        let quantities: Vec<&str> = self.quantities.iter().map(|q| q.column_name()).collect();
        out.push_str(&format!("quantities = {}\n", quantities.join(", ")));
        if let Some(path) = &self.output_path {
            out.push_str(&format!("output_path = {}\n", path.display()));
        }
        out
    }

    /// Parameter names the chosen system requires, each to be supplied by
    /// exactly one of swept, family, or fixed.
    fn required_parameters(&self) -> &'static [&'static str] {
        match self.system {
            SystemId::SqueezedCavities => &["coupling", "gamma", "r", "n_th"],
            SystemId::VibratingMirror => &["x", "omega_t"],
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.swept.start.is_finite() && self.swept.stop.is_finite()) {
            return Err(CliError::config("swept range bounds must be finite"));
        }
        if self.swept.count < 2 {
            return Err(CliError::config("swept range needs at least 2 points"));
        }
        if self.swept.start >= self.swept.stop {
            return Err(CliError::config(
                "swept range must be ascending (start < stop)",
            ));
        }
        if !(self.theta.is_finite() && self.phi.is_finite()) {
            return Err(CliError::config("theta and phi must be finite"));
        }
        if self.quantities.is_empty() {
            return Err(CliError::config("quantities must not be empty"));
        }
        let mut seen = Vec::new();
        for q in &self.quantities {
            if seen.contains(q) {
                return Err(CliError::config(format!("duplicate quantity {q}")));
            }
            seen.push(*q);
            if *q == Quantity::LnMirror && self.system != SystemId::SqueezedCavities {
                return Err(CliError::config(
                    "L_N_mirror only exists for system 1 (system 2 has a single mirror mode)",
                ));
            }
        }
        let sweepable: &[&str] = match self.system {
            SystemId::SqueezedCavities => &["n_th", "C", "r", "gamma"],
            SystemId::VibratingMirror => &["x", "omega_t"],
        };
        if !sweepable.contains(&self.swept.name.as_str()) {
            return Err(CliError::config(format!(
                "cannot sweep {:?} for system {}; choose one of {}",
                self.swept.name,
                self.system,
                sweepable.join(", ")
            )));
        }
        if let Some(family) = &self.family {
            if !sweepable.contains(&family.name.as_str()) {
                return Err(CliError::config(format!(
                    "cannot use {:?} as a family parameter for system {}",
                    family.name, self.system
                )));
            }
            if family.name == self.swept.name {
                return Err(CliError::config(
                    "family parameter must differ from the swept parameter",
                ));
            }
            if !family.values.iter().all(|v| v.is_finite()) {
                return Err(CliError::config("family values must be finite"));
            }
        }

        let fixable: &[&str] = match self.system {
            SystemId::SqueezedCavities => &["kappa", "gamma", "C", "G", "r", "n_th"],
            SystemId::VibratingMirror => &["x", "omega_t"],
        };
        for name in self.fixed.keys() {
            if !fixable.contains(&name.as_str()) {
                return Err(CliError::config(format!(
                    "unknown fixed parameter {name:?} for system {}",
                    self.system
                )));
            }
            if !self.fixed[name].is_finite() {
                return Err(CliError::config(format!(
                    "fixed parameter {name} must be finite"
                )));
            }
        }

        for &required in self.required_parameters() {
            let hits = self.parameter_sources(required);
            match hits.len() {
                0 => {
                    return Err(CliError::config(format!(
                        "parameter {} is not set{}",
                        display_parameter(required),
                        if required == "coupling" {
                            " (set fixed_parameters.C, fixed_parameters.G, or sweep C)"
                        } else {
                            ""
                        }
                    )));
                }
                1 => {}
                _ => {
                    return Err(CliError::config(format!(
                        "parameter {} is set more than once ({})",
                        display_parameter(required),
                        hits.join(", ")
                    )));
                }
            }
        }
        Ok(())
    }

    /// Where a required parameter is supplied from; "coupling" matches both
    /// of its spellings C and G.
    fn parameter_sources(&self, required: &str) -> Vec<String> {
        let matches = |name: &str| {
            if required == "coupling" {
                name == "C" || name == "G"
            } else {
                name == required
            }
        };
        let mut hits = Vec::new();
        if matches(&self.swept.name) {
            hits.push(format!("swept {}", self.swept.name));
        }
        if let Some(family) = &self.family {
            if matches(&family.name) {
                hits.push(format!("family {}", family.name));
            }
        }
        for name in self.fixed.keys() {
            if matches(name) {
                hits.push(format!("fixed {name}"));
            }
        }
        hits
    }
}

fn display_parameter(required: &str) -> &str {
    if required == "coupling" {
        "C (or G)"
    } else {
        required
    }
}

fn set_once<T>(key: &str, slot: &mut Option<T>, value: T) -> Result<(), CliError> {
    if slot.is_some() {
        return Err(CliError::config(format!("duplicate key {key}")));
    }
    *slot = Some(value);
    Ok(())
}

fn parse_float(what: &str, s: &str) -> Result<f64, CliError> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| CliError::config(format!("{what}: not a number: {s:?}")))
}
