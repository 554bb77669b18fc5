//! Run configuration: TOML schema and its resolution into core types.
//!
//! ```toml
//! mode = "substitute"            # or "kk"
//!
//! [quadrature]
//! rel_tol = 1e-6
//!
//! [sweep]
//! l_min = "100nm"
//! l_max = "2um"
//! points = 20
//! spacing = "log"
//!
//! [plate1]
//! substrate = "classical-au"
//! [[plate1.layers]]
//! thickness = "300A"
//! model = "annealed-au"
//! ```
//!
//! Several plate pairs go in `[[case]]` tables, each with `name`, `plate1`
//! and an optional `plate2` (defaults to a copy of `plate1`). Frequencies are
//! numbers in rad/s or strings suffixed `eV` or `rad_s`; lengths are numbers
//! in metres or strings suffixed `m`, `mm`, `um`, `nm` or `A`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use casimir_core::lifshitz::grid;
use casimir_core::units::EV_TO_RAD_PER_S;
use casimir_core::{
    DielectricModel, DrudeParams, ImagAxisMode, Layer, LayerStack, PlasmaParams, PlateConfig,
    QuadratureConfig, Spacing, SweepSpec, TheyeDrudeParams, TheyeParams, TwoCarrierParams,
};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse config: {0}")]
    Parse(String),
    #[error("config key `{key}`: {message}")]
    Invalid { key: String, message: String },
}

fn invalid(key: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        key: key.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Number(f64),
    Text(String),
}

fn split_unit(text: &str) -> (&str, &str) {
    let text = text.trim();
    let idx = text
        .char_indices()
        .find(|&(i, c)| {
            c.is_alphabetic()
                && !((c == 'e' || c == 'E')
                    && text[i + 1..]
                        .chars()
                        .next()
                        .is_some_and(|n| n.is_ascii_digit() || n == '-' || n == '+'))
        })
        .map(|(i, _)| i)
        .unwrap_or(text.len());
    let idx = if text[..idx].ends_with('µ') {
        idx - 'µ'.len_utf8()
    } else {
        idx
    };
    (text[..idx].trim(), text[idx..].trim())
}

fn parse_number(key: &str, text: &str) -> Result<f64, ConfigError> {
    text.parse::<f64>()
        .map_err(|_| invalid(key, format!("`{text}` is not a number")))
}

impl Quantity {
    /// Angular frequency in rad/s.
    pub fn frequency(&self, key: &str) -> Result<f64, ConfigError> {
        match self {
            Quantity::Number(v) => Ok(*v),
            Quantity::Text(t) => {
                let (num, unit) = split_unit(t);
                let v = parse_number(key, num)?;
                match unit {
                    "eV" | "ev" => Ok(v * EV_TO_RAD_PER_S),
                    "rad_s" | "rad/s" | "" => Ok(v),
                    other => Err(invalid(key, format!("unknown frequency unit `{other}`"))),
                }
            }
        }
    }

    /// Length in metres.
    pub fn length(&self, key: &str) -> Result<f64, ConfigError> {
        match self {
            Quantity::Number(v) => Ok(*v),
            Quantity::Text(t) => {
                let (num, unit) = split_unit(t);
                let v = parse_number(key, num)?;
                let scale = match unit {
                    "m" | "" => 1.0,
                    "mm" => 1e-3,
                    "um" | "µm" => 1e-6,
                    "nm" => 1e-9,
                    "A" | "Å" => 1e-10,
                    other => return Err(invalid(key, format!("unknown length unit `{other}`"))),
                };
                Ok(v * scale)
            }
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RawModel {
    Preset(String),
    Inline(InlineModel),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InlineModel {
    Vacuum,
    PerfectConductor,
    Plasma {
        omega_p: Quantity,
    },
    Drude {
        omega_p: Quantity,
        gamma: Quantity,
    },
    Theye {
        omega_p: Quantity,
        gamma0: Quantity,
        /// Coefficient of omega^2, s.
        a: f64,
    },
    TwoCarrier {
        omega_p: Option<Quantity>,
        density_ratio: f64,
        gamma_a: Quantity,
        gamma_b: Quantity,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLayer {
    pub thickness: Quantity,
    pub model: RawModel,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPlate {
    pub substrate: RawModel,
    #[serde(default)]
    pub layers: Vec<RawLayer>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSweep {
    pub l_min: Quantity,
    pub l_max: Quantity,
    pub points: usize,
    pub spacing: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGrid {
    pub values: Option<Vec<Quantity>>,
    pub min: Option<Quantity>,
    pub max: Option<Quantity>,
    pub points: Option<usize>,
    pub spacing: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCase {
    pub name: String,
    pub plate1: RawPlate,
    pub plate2: Option<RawPlate>,
    pub sweep: Option<RawSweep>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawQuadrature {
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub max_subdivisions: Option<usize>,
    pub tail_cutoff_scale: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGamma {
    pub presets: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEpsilon {
    pub model: RawModel,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDelta {
    pub baseline: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOutput {
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub mode: Option<String>,
    pub quadrature: Option<RawQuadrature>,
    pub sweep: Option<RawSweep>,
    pub frequency: Option<RawGrid>,
    pub plate1: Option<RawPlate>,
    pub plate2: Option<RawPlate>,
    #[serde(default)]
    pub case: Vec<RawCase>,
    pub gamma: Option<RawGamma>,
    pub epsilon: Option<RawEpsilon>,
    pub delta: Option<RawDelta>,
    pub output: Option<RawOutput>,
}

impl RawConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml(&text)
    }
}

pub fn parse_mode(key: &str, text: &str) -> Result<ImagAxisMode, ConfigError> {
    match text {
        "substitute" => Ok(ImagAxisMode::Substitute),
        "kk" | "kramers-kronig" => Ok(ImagAxisMode::KramersKronig),
        other => Err(invalid(
            key,
            format!("unknown mode `{other}` (expected substitute or kk)"),
        )),
    }
}

fn parse_spacing(key: &str, text: Option<&str>) -> Result<Spacing, ConfigError> {
    match text.unwrap_or("log") {
        "log" => Ok(Spacing::Log),
        "linear" => Ok(Spacing::Linear),
        other => Err(invalid(
            key,
            format!("unknown spacing `{other}` (expected log or linear)"),
        )),
    }
}

fn spacing_name(s: Spacing) -> &'static str {
    match s {
        Spacing::Log => "log",
        Spacing::Linear => "linear",
    }
}

pub fn resolve_model(key: &str, raw: &RawModel) -> Result<DielectricModel, ConfigError> {
    let param = |e: casimir_core::DielectricError| invalid(key, e.to_string());
    match raw {
        RawModel::Preset(id) => DielectricModel::preset(id).ok_or_else(|| {
            invalid(
                key,
                format!(
                    "unknown preset `{id}` (known: {})",
                    DielectricModel::PRESET_IDS.join(", ")
                ),
            )
        }),
        RawModel::Inline(m) => Ok(match m {
            InlineModel::Vacuum => DielectricModel::Vacuum,
            InlineModel::PerfectConductor => DielectricModel::PerfectConductor,
            InlineModel::Plasma { omega_p } => DielectricModel::Plasma(
                PlasmaParams::new(omega_p.frequency(&format!("{key}.omega_p"))?).map_err(param)?,
            ),
            InlineModel::Drude { omega_p, gamma } => DielectricModel::Drude(
                DrudeParams::new(
                    omega_p.frequency(&format!("{key}.omega_p"))?,
                    gamma.frequency(&format!("{key}.gamma"))?,
                )
                .map_err(param)?,
            ),
            InlineModel::Theye { omega_p, gamma0, a } => DielectricModel::TheyeDrude(
                TheyeDrudeParams::new(
                    omega_p.frequency(&format!("{key}.omega_p"))?,
                    TheyeParams::new(gamma0.frequency(&format!("{key}.gamma0"))?, *a)
                        .map_err(param)?,
                )
                .map_err(param)?,
            ),
            InlineModel::TwoCarrier {
                omega_p,
                density_ratio,
                gamma_a,
                gamma_b,
            } => {
                let omega_p = match omega_p {
                    Some(q) => q.frequency(&format!("{key}.omega_p"))?,
                    None => 9.0 * EV_TO_RAD_PER_S,
                };
                DielectricModel::TwoCarrierDrude(
                    TwoCarrierParams::new(
                        *density_ratio,
                        gamma_a.frequency(&format!("{key}.gamma_a"))?,
                        gamma_b.frequency(&format!("{key}.gamma_b"))?,
                        omega_p,
                    )
                    .map_err(param)?,
                )
            }
        }),
    }
}

pub fn resolve_stack(key: &str, raw: &RawPlate) -> Result<LayerStack, ConfigError> {
    let mut layers = Vec::with_capacity(raw.layers.len());
    for (i, layer) in raw.layers.iter().enumerate() {
        let lkey = format!("{key}.layers[{i}]");
        let thickness = layer.thickness.length(&format!("{lkey}.thickness"))?;
        let model = resolve_model(&format!("{lkey}.model"), &layer.model)?;
        layers.push(Layer::new(thickness, model).map_err(|e| invalid(&lkey, e.to_string()))?);
    }
    let substrate = resolve_model(&format!("{key}.substrate"), &raw.substrate)?;
    LayerStack::new(layers, substrate).map_err(|e| invalid(key, e.to_string()))
}

pub fn describe_stack(stack: &LayerStack) -> String {
    let mut out = String::new();
    for layer in stack.layers() {
        let _ = write!(out, "film({:e} m, {}) | ", layer.thickness(), layer.model());
    }
    let _ = write!(out, "substrate {}", stack.substrate());
    out
}

fn resolve_sweep(key: &str, raw: &RawSweep) -> Result<SweepSpec, ConfigError> {
    SweepSpec::new(
        raw.l_min.length(&format!("{key}.l_min"))?,
        raw.l_max.length(&format!("{key}.l_max"))?,
        raw.points,
        parse_spacing(&format!("{key}.spacing"), raw.spacing.as_deref())?,
    )
    .map_err(|e| invalid(key, e.to_string()))
}

fn resolve_quadrature(raw: Option<&RawQuadrature>) -> Result<QuadratureConfig, ConfigError> {
    let mut q = QuadratureConfig::default();
    if let Some(raw) = raw {
        if let Some(v) = raw.rel_tol {
            q.rel_tol = v;
        }
        if let Some(v) = raw.abs_tol {
            q.abs_tol = v;
        }
        if let Some(v) = raw.max_subdivisions {
            q.max_subdivisions = v;
        }
        if let Some(v) = raw.tail_cutoff_scale {
            q.tail_cutoff_scale = v;
        }
    }
    q.validate()
        .map_err(|e| invalid("quadrature", e.to_string()))?;
    Ok(q)
}

/// Frequency grid with the description written to CSV metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    pub values: Vec<f64>,
    pub description: String,
}

fn resolve_grid(key: &str, raw: &RawGrid) -> Result<FrequencyGrid, ConfigError> {
    let grid_values = if let Some(values) = &raw.values {
        if raw.min.is_some() || raw.max.is_some() || raw.points.is_some() {
            return Err(invalid(
                key,
                "give either `values` or `min`/`max`/`points`, not both",
            ));
        }
        let mut out = Vec::with_capacity(values.len());
        for (i, v) in values.iter().enumerate() {
            out.push(v.frequency(&format!("{key}.values[{i}]"))?);
        }
        out
    } else {
        let (Some(min), Some(max), Some(points)) = (&raw.min, &raw.max, raw.points) else {
            return Err(invalid(
                key,
                "needs `values` or all of `min`, `max`, `points`",
            ));
        };
        let min = min.frequency(&format!("{key}.min"))?;
        let max = max.frequency(&format!("{key}.max"))?;
        let spacing = parse_spacing(&format!("{key}.spacing"), raw.spacing.as_deref())?;
        if points < 1 {
            return Err(invalid(format!("{key}.points"), "must be at least 1"));
        }
        if !(min.is_finite() && max.is_finite() && min <= max) {
            return Err(invalid(key, "needs finite min <= max"));
        }
        if spacing == Spacing::Log && min <= 0.0 {
            return Err(invalid(format!("{key}.min"), "log spacing needs min > 0"));
        }
        grid(min, max, points, spacing)
    };
    if grid_values.is_empty() {
        return Err(invalid(key, "frequency grid is empty"));
    }
    if let Some(bad) = grid_values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
        return Err(invalid(
            key,
            format!("frequencies must be non-negative, got {bad}"),
        ));
    }
    let description = match (&raw.values, raw.points) {
        (Some(_), _) => format!(
            "values [{}] rad/s",
            grid_values
                .iter()
                .map(|v| format!("{v:e}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        _ => format!(
            "{:e} to {:e} rad/s, {} points, {}",
            grid_values[0],
            grid_values[grid_values.len() - 1],
            grid_values.len(),
            raw.spacing.as_deref().unwrap_or("log")
        ),
    };
    Ok(FrequencyGrid {
        values: grid_values,
        description,
    })
}

/// One plate pair evaluated over a separation grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub name: String,
    pub plate1: PlateConfig,
    pub plate2: PlateConfig,
    pub sweep: Option<SweepSpec>,
}

/// Output locations from the config file; command-line flags take precedence.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OutputPaths {
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

/// Fully resolved configuration. Sections a command does not need may be
/// absent; each command checks for what it requires.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: ImagAxisMode,
    pub quadrature: QuadratureConfig,
    pub cases: Vec<Case>,
    pub frequency: Option<FrequencyGrid>,
    pub gamma_models: Option<Vec<(String, DielectricModel)>>,
    pub epsilon_model: Option<(String, DielectricModel)>,
    pub baseline: Option<String>,
    pub output: OutputPaths,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

impl RunConfig {
    pub fn resolve(
        raw: &RawConfig,
        mode_override: Option<ImagAxisMode>,
    ) -> Result<Self, ConfigError> {
        let mode = match (mode_override, &raw.mode) {
            (Some(m), _) => m,
            (None, Some(text)) => parse_mode("mode", text)?,
            (None, None) => ImagAxisMode::default(),
        };
        let quadrature = resolve_quadrature(raw.quadrature.as_ref())?;
        let shared_sweep = raw
            .sweep
            .as_ref()
            .map(|s| resolve_sweep("sweep", s))
            .transpose()?;

        let plate = |key: &str, raw: &RawPlate| -> Result<PlateConfig, ConfigError> {
            Ok(PlateConfig::new(resolve_stack(key, raw)?, mode))
        };

        let mut cases = Vec::new();
        if let Some(p1) = &raw.plate1 {
            if !raw.case.is_empty() {
                return Err(invalid(
                    "plate1",
                    "use either top-level plates or [[case]] tables, not both",
                ));
            }
            let plate1 = plate("plate1", p1)?;
            let plate2 = match &raw.plate2 {
                Some(p2) => plate("plate2", p2)?,
                None => plate1.clone(),
            };
            cases.push(Case {
                name: "case".into(),
                plate1,
                plate2,
                sweep: shared_sweep,
            });
        } else if raw.plate2.is_some() {
            return Err(invalid("plate2", "given without plate1"));
        }
        for (i, c) in raw.case.iter().enumerate() {
            let key = format!("case[{i}]");
            if !valid_name(&c.name) {
                return Err(invalid(
                    format!("{key}.name"),
                    format!(
                        "`{}` must be non-empty ASCII letters, digits, `_` or `-`",
                        c.name
                    ),
                ));
            }
            if cases.iter().any(|o: &Case| o.name == c.name) {
                return Err(invalid(
                    format!("{key}.name"),
                    format!("duplicate case name `{}`", c.name),
                ));
            }
            let plate1 = plate(&format!("{key}.plate1"), &c.plate1)?;
            let plate2 = match &c.plate2 {
                Some(p2) => plate(&format!("{key}.plate2"), p2)?,
                None => plate1.clone(),
            };
            let sweep = match &c.sweep {
                Some(s) => Some(resolve_sweep(&format!("{key}.sweep"), s)?),
                None => shared_sweep,
            };
            cases.push(Case {
                name: c.name.clone(),
                plate1,
                plate2,
                sweep,
            });
        }

        let frequency = raw
            .frequency
            .as_ref()
            .map(|g| resolve_grid("frequency", g))
            .transpose()?;

        let gamma_models = match &raw.gamma {
            None => None,
            Some(g) => {
                let mut models = Vec::with_capacity(g.presets.len());
                for (i, id) in g.presets.iter().enumerate() {
                    let key = format!("gamma.presets[{i}]");
                    let model = resolve_model(&key, &RawModel::Preset(id.clone()))?;
                    if model.damping(0.0).is_none() {
                        return Err(invalid(
                            key,
                            format!("preset `{id}` has no damping function"),
                        ));
                    }
                    models.push((id.clone(), model));
                }
                Some(models)
            }
        };

        let epsilon_model = raw
            .epsilon
            .as_ref()
            .map(|e| {
                let model = resolve_model("epsilon.model", &e.model)?;
                let name = match &e.model {
                    RawModel::Preset(id) => id.clone(),
                    RawModel::Inline(_) => model.kind().to_string(),
                };
                Ok::<_, ConfigError>((name, model))
            })
            .transpose()?;

        let output = raw.output.clone().unwrap_or_default();
        Ok(Self {
            mode,
            quadrature,
            cases,
            frequency,
            gamma_models,
            epsilon_model,
            baseline: raw.delta.as_ref().and_then(|d| d.baseline.clone()),
            output: OutputPaths {
                csv: output.csv,
                svg: output.svg,
            },
        })
    }

    /// `# key = value` metadata shared by every command.
    pub fn common_metadata(&self) -> Vec<(String, String)> {
        let q = &self.quadrature;
        vec![
            ("mode".into(), self.mode.to_string()),
            ("quadrature.rel_tol".into(), format!("{:e}", q.rel_tol)),
            ("quadrature.abs_tol".into(), format!("{:e}", q.abs_tol)),
            (
                "quadrature.max_subdivisions".into(),
                q.max_subdivisions.to_string(),
            ),
            (
                "quadrature.tail_cutoff_scale".into(),
                format!("{:e}", q.tail_cutoff_scale),
            ),
        ]
    }

    pub fn case_metadata(&self, case: &Case) -> Vec<(String, String)> {
        let mut out = vec![
            (
                format!("case.{}.plate1", case.name),
                describe_stack(&case.plate1.stack),
            ),
            (
                format!("case.{}.plate2", case.name),
                describe_stack(&case.plate2.stack),
            ),
        ];
        if let Some(s) = &case.sweep {
            out.push((
                format!("case.{}.sweep", case.name),
                format!(
                    "{:e} to {:e} m, {} points, {}",
                    s.l_min(),
                    s.l_max(),
                    s.points(),
                    spacing_name(s.spacing())
                ),
            ));
        }
        out
    }
}
