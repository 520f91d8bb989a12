//! Experiment configuration: presets and the flat sectioned key-value
//! format.
//!
//! ```text
//! preset = case-i
//!
//! [eos]
//! kappa = 0.75
//! Gamma = 3
//!
//! [grid]
//! n_cells = 1600
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::eos::{EosParams, State};
use crate::upwind_scheme::{Grid, SchemeConfig};

use super::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    CaseI,
    CaseII,
    CaseIII,
    Custom,
}

impl Preset {
    pub fn id(self) -> &'static str {
        match self {
            Preset::CaseI => "case-i",
            Preset::CaseII => "case-ii",
            Preset::CaseIII => "case-iii",
            Preset::Custom => "custom",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "case-i" => Ok(Preset::CaseI),
            "case-ii" => Ok(Preset::CaseII),
            "case-iii" => Ok(Preset::CaseIII),
            "custom" => Ok(Preset::Custom),
            other => Err(format!(
                "unknown preset {other:?} (expected case-i, case-ii, case-iii or custom)"
            )),
        }
    }
}

pub const CASE_I_PAIRS: [(f64, f64); 4] = [
    (1.0, 0.01),
    (0.1, 0.001),
    (0.01, 0.0001),
    (0.0001, 0.000001),
];

/// case-i sweep used with `kappa = 0.75`, `Gamma = 3`.
pub const CASE_I_STEEP_PAIRS: [(f64, f64); 4] = [
    (0.1, 0.01),
    (0.001, 0.0001),
    (0.0001, 0.00001),
    (0.00001, 0.000001),
];

pub const CASE_II_PAIRS: [(f64, f64); 4] = [
    (1.0, 0.01),
    (0.01, 0.001),
    (0.0001, 0.00001),
    (0.00001, 0.000001),
];

pub const CASE_III_PAIRS: [(f64, f64); 4] = [
    (1.0, 0.1),
    (0.01, 0.001),
    (0.001, 0.0001),
    (0.00001, 0.000001),
];

/// `B`, `Gamma`, `kappa`; the `(A, a)` pair varies along the sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EosBase {
    pub chaplygin: f64,
    pub gamma: f64,
    pub kappa: f64,
}

impl EosBase {
    pub fn with_pair(&self, pressure_scale: f64, excluded_volume: f64) -> crate::Result<EosParams> {
        EosParams::new(
            pressure_scale,
            excluded_volume,
            self.chaplygin,
            self.gamma,
            self.kappa,
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub preset: Preset,
    pub left: State,
    pub right: State,
    pub eos: EosBase,
    /// `(A, a)` pairs in sweep order.
    pub pairs: Vec<(f64, f64)>,
    pub grid: Grid,
    pub scheme: SchemeConfig,
    pub outputs: PathBuf,
}

impl ExperimentConfig {
    pub fn preset(preset: Preset) -> Option<Self> {
        let (left, right, kappa, pairs) = match preset {
            Preset::CaseI => ((1.0, 5.0), (1.0, 2.0), 0.25, &CASE_I_PAIRS),
            Preset::CaseII => ((2.0, 5.0), (1.0, 4.5), 0.5, &CASE_II_PAIRS),
            Preset::CaseIII => ((1.0, 5.0), (2.0, 7.0), 0.5, &CASE_III_PAIRS),
            Preset::Custom => return None,
        };
        Some(Self {
            preset,
            left: State::new(left.0, left.1),
            right: State::new(right.0, right.1),
            eos: EosBase {
                chaplygin: 1.0,
                gamma: 2.0,
                kappa,
            },
            pairs: pairs.to_vec(),
            grid: Grid::default(),
            scheme: SchemeConfig::default(),
            outputs: PathBuf::from("results"),
        })
    }

    /// EOS at pair `i`.
    pub fn eos_at(&self, i: usize) -> crate::Result<EosParams> {
        let (big_a, a) = self.pairs[i];
        self.eos.with_pair(big_a, a)
    }
}

/// Values supplied outside the config text (command-line flags); they take
/// precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub preset: Option<String>,
    pub n_cells: Option<usize>,
    pub cfl: Option<f64>,
    pub t_end: Option<f64>,
    pub pairs: Option<String>,
    pub outputs: Option<PathBuf>,
}

const SECTIONS: [(&str, &[&str]); 5] = [
    ("state", &["rho_l", "v_l", "rho_r", "v_r"]),
    ("eos", &["A", "a", "B", "Gamma", "kappa"]),
    ("grid", &["x_min", "x_max", "n_cells"]),
    ("scheme", &["cfl", "t_end"]),
    ("sweep", &["pairs"]),
];

fn known_key(section: Option<&str>, key: &str) -> bool {
    match section {
        None => key == "preset" || SECTIONS.iter().any(|(_, keys)| keys.contains(&key)),
        Some(s) => SECTIONS
            .iter()
            .any(|(name, keys)| *name == s && keys.contains(&key)),
    }
}

/// Parses `A1:a1,A2:a2,...`.
pub fn parse_pairs(text: &str) -> Result<Vec<(f64, f64)>, String> {
    let pairs = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (big_a, a) = item
                .split_once(':')
                .ok_or_else(|| format!("pair {item:?} is not of the form A:a"))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("invalid number {s:?} in pair {item:?}"))
            };
            Ok((parse(big_a)?, parse(a)?))
        })
        .collect::<Result<Vec<_>, String>>()?;
    if pairs.is_empty() {
        return Err("pair list is empty".into());
    }
    Ok(pairs)
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig, HarnessError> {
    parse_config_with(text, &Overrides::default())
}

/// Parses `text`, applies `overrides`, fills defaults and validates.
pub fn parse_config_with(text: &str, overrides: &Overrides) -> Result<ExperimentConfig, HarnessError> {
    let mut raw: BTreeMap<String, (usize, String)> = BTreeMap::new();
    let mut section: Option<String> = None;
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| parse_error(line_no, "unterminated section header"))?
                .trim();
            if !SECTIONS.iter().any(|(s, _)| *s == name) {
                return Err(parse_error(line_no, format!("unknown section [{name}]")));
            }
            section = Some(name.to_string());
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_error(line_no, format!("expected `key = value`, got {line:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        if !known_key(section.as_deref(), key) {
            let place = section.as_deref().map_or("top level".into(), |s| format!("[{s}]"));
            return Err(parse_error(line_no, format!("unknown key {key:?} in {place}")));
        }
        if raw.insert(key.to_string(), (line_no, value.to_string())).is_some() {
            return Err(parse_error(line_no, format!("duplicate key {key:?}")));
        }
    }

    let set = |raw: &mut BTreeMap<String, (usize, String)>, key: &str, value: Option<String>| {
        if let Some(v) = value {
            raw.insert(key.to_string(), (0, v));
        }
    };
    set(&mut raw, "preset", overrides.preset.clone());
    set(&mut raw, "n_cells", overrides.n_cells.map(|n| n.to_string()));
    set(&mut raw, "cfl", overrides.cfl.map(|c| c.to_string()));
    set(&mut raw, "t_end", overrides.t_end.map(|t| t.to_string()));
    if overrides.pairs.is_some() {
        raw.remove("A");
        raw.remove("a");
    }
    set(&mut raw, "pairs", overrides.pairs.clone());

    let mut cfg = resolve(&raw)?;
    if let Some(out) = &overrides.outputs {
        cfg.outputs = out.clone();
    }
    Ok(cfg)
}

fn parse_error(line: usize, message: impl Into<String>) -> HarnessError {
    HarnessError::Parse {
        line,
        message: message.into(),
    }
}

fn invalid(field: &str, message: impl Into<String>) -> HarnessError {
    HarnessError::Validation {
        field: field.to_string(),
        message: message.into(),
    }
}

fn resolve(raw: &BTreeMap<String, (usize, String)>) -> Result<ExperimentConfig, HarnessError> {
    if raw.is_empty() {
        return Err(invalid("preset", "preset or full custom block required"));
    }
    let number = |key: &str| -> Result<Option<f64>, HarnessError> {
        match raw.get(key) {
            None => Ok(None),
            Some((line, v)) => v.parse::<f64>().map(Some).map_err(|_| {
                if *line > 0 {
                    parse_error(*line, format!("{key}: {v:?} is not a number"))
                } else {
                    invalid(key, format!("{v:?} is not a number"))
                }
            }),
        }
    };

    let preset = match raw.get("preset") {
        Some((_, v)) => v.parse::<Preset>().map_err(|e| invalid("preset", e))?,
        None => Preset::Custom,
    };

    let mut cfg = match ExperimentConfig::preset(preset) {
        Some(cfg) => cfg,
        None => {
            let require = |key: &str| -> Result<f64, HarnessError> {
                number(key)?.ok_or_else(|| {
                    invalid(
                        key,
                        format!("missing; preset or full custom block required ({key} not set)"),
                    )
                })
            };
            let (rho_l, v_l, rho_r, v_r) = (
                require("rho_l")?,
                require("v_l")?,
                require("rho_r")?,
                require("v_r")?,
            );
            let eos = EosBase {
                chaplygin: require("B")?,
                gamma: require("Gamma")?,
                kappa: require("kappa")?,
            };
            if !raw.contains_key("pairs") && !(raw.contains_key("A") && raw.contains_key("a")) {
                return Err(invalid("pairs", "custom runs need `pairs` or both `A` and `a`"));
            }
            ExperimentConfig {
                preset,
                left: State::new(rho_l, v_l),
                right: State::new(rho_r, v_r),
                eos,
                pairs: Vec::new(),
                grid: Grid::default(),
                scheme: SchemeConfig::default(),
                outputs: PathBuf::from("results"),
            }
        }
    };

    if let Some(x) = number("rho_l")? {
        cfg.left.rho = x;
    }
    if let Some(x) = number("v_l")? {
        cfg.left.v = x;
    }
    if let Some(x) = number("rho_r")? {
        cfg.right.rho = x;
    }
    if let Some(x) = number("v_r")? {
        cfg.right.v = x;
    }
    if let Some(x) = number("B")? {
        cfg.eos.chaplygin = x;
    }
    if let Some(x) = number("Gamma")? {
        cfg.eos.gamma = x;
    }
    if let Some(x) = number("kappa")? {
        cfg.eos.kappa = x;
    }

    match (raw.get("pairs"), number("A")?, number("a")?) {
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
            return Err(invalid("pairs", "give either `pairs` or `A`/`a`, not both"));
        }
        (Some((_, text)), None, None) => {
            cfg.pairs = parse_pairs(text).map_err(|e| invalid("pairs", e))?;
        }
        (None, Some(big_a), Some(a)) => cfg.pairs = vec![(big_a, a)],
        (None, Some(_), None) => return Err(invalid("a", "`A` given without `a`")),
        (None, None, Some(_)) => return Err(invalid("A", "`a` given without `A`")),
        (None, None, None) => {
            // the steeper case-i variant has its own sweep
            if preset == Preset::CaseI && cfg.eos.kappa == 0.75 && cfg.eos.gamma == 3.0 {
                cfg.pairs = CASE_I_STEEP_PAIRS.to_vec();
            }
        }
    }

    let x_min = number("x_min")?.unwrap_or(cfg.grid.x_min());
    let x_max = number("x_max")?.unwrap_or(cfg.grid.x_max());
    let n_cells = match raw.get("n_cells") {
        None => cfg.grid.n_cells(),
        Some((_, v)) => v
            .parse::<usize>()
            .map_err(|_| invalid("n_cells", format!("{v:?} is not a cell count")))?,
    };
    cfg.grid = Grid::new(x_min, x_max, n_cells).map_err(|e| invalid("grid", e.to_string()))?;
    if !(x_min < 0.0 && x_max > 0.0) {
        return Err(invalid("x_min", "the domain must contain the jump at x = 0"));
    }

    let cfl = number("cfl")?.unwrap_or(cfg.scheme.cfl);
    let t_end = number("t_end")?.unwrap_or(cfg.scheme.t_end);
    cfg.scheme = SchemeConfig::new(cfl, t_end, cfg.scheme.max_steps).map_err(|e| {
        invalid(if cfl > 0.0 && cfl <= 1.0 { "t_end" } else { "cfl" }, e.to_string())
    })?;

    validate(&cfg)?;
    Ok(cfg)
}

fn validate(cfg: &ExperimentConfig) -> Result<(), HarnessError> {
    for (field, s) in [("rho_l/v_l", cfg.left), ("rho_r/v_r", cfg.right)] {
        if !(s.v >= 0.0 && s.v.is_finite()) {
            return Err(invalid(field, format!("velocity must be finite and >= 0, got {}", s.v)));
        }
    }
    for &(big_a, a) in &cfg.pairs {
        let eos = cfg
            .eos
            .with_pair(big_a, a)
            .map_err(|e| invalid("eos", e.to_string()))?;
        for (field, s) in [("rho_l", cfg.left), ("rho_r", cfg.right)] {
            eos.check_state(s)
                .map_err(|e| invalid(field, format!("at (A = {big_a}, a = {a}): {e}")))?;
        }
    }
    Ok(())
}
