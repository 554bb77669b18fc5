//! The four subcommands. Each returns a table, an optional plot and a
//! completion status; writing and exit codes are handled by the caller.

use casimir_core::dielectric::eps_imag_axis;
use casimir_core::lifshitz::{eta_sweep, percent_difference};
use casimir_core::{EtaResult, Frequency, ImagAxisMode, LifshitzError};
use rayon::prelude::*;

use crate::config::{Case, ConfigError, FrequencyGrid, RunConfig};
use crate::plot::{Plot, Series};
use crate::table::{CsvTable, TableError};

/// How much of the requested grid was computed to tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Complete,
    /// Some points did not converge or failed; they are flagged in the table.
    Partial,
    /// No point converged.
    Failed,
}

impl Status {
    fn from_counts(good: usize, total: usize) -> Self {
        if good == total {
            Self::Complete
        } else if good == 0 {
            Self::Failed
        } else {
            Self::Partial
        }
    }
}

#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub table: CsvTable,
    pub plot: Plot,
    pub status: Status,
}

fn missing(key: &str, message: &str) -> ConfigError {
    ConfigError::Invalid {
        key: key.into(),
        message: message.into(),
    }
}

fn require_frequency<'a>(
    cfg: &'a RunConfig,
    command: &str,
) -> Result<&'a FrequencyGrid, ConfigError> {
    cfg.frequency.as_ref().ok_or_else(|| {
        missing(
            "frequency",
            &format!("`{command}` needs a [frequency] grid"),
        )
    })
}

fn base_metadata(cfg: &RunConfig, command: &str) -> Vec<(String, String)> {
    let mut meta = vec![
        (
            "generator".to_string(),
            format!("lifshitz {}", env!("CARGO_PKG_VERSION")),
        ),
        ("command".to_string(), command.to_string()),
    ];
    meta.extend(cfg.common_metadata());
    meta
}

fn finish(mut table: CsvTable, rows: Vec<Vec<f64>>) -> Result<CsvTable, TableError> {
    for row in rows {
        table.push_row(row)?;
    }
    Ok(table)
}

fn series_from(table: &CsvTable, columns: &[(String, String)]) -> Vec<Series> {
    columns
        .iter()
        .map(|(column, label)| Series {
            label: label.clone(),
            points: table
                .rows
                .iter()
                .map(|r| r[0])
                .zip(table.column(column).unwrap_or_default())
                .collect(),
        })
        .collect()
}

fn all_positive(xs: impl IntoIterator<Item = f64>) -> bool {
    xs.into_iter().all(|x| x > 0.0)
}

/// Effective damping of each selected preset over the frequency grid.
pub fn cmd_gamma(cfg: &RunConfig) -> Result<CommandOutput, crate::Error> {
    let models = cfg
        .gamma_models
        .as_ref()
        .ok_or_else(|| missing("gamma", "`gamma` needs a [gamma] section with `presets`"))?;
    if models.is_empty() {
        return Err(missing("gamma.presets", "preset list is empty").into());
    }
    let grid = require_frequency(cfg, "gamma")?;

    let mut meta = base_metadata(cfg, "gamma");
    meta.push(("frequency".into(), grid.description.clone()));
    let mut header = vec!["omega_rad_s".to_string()];
    for (id, model) in models {
        meta.push((format!("gamma.{id}"), model.to_string()));
        header.push(format!("gamma_eff_{id}"));
    }
    let rows = grid
        .values
        .iter()
        .map(|&w| {
            let mut row = vec![w];
            row.extend(
                models
                    .iter()
                    .map(|(_, m)| m.damping(w).expect("checked at resolve")),
            );
            row
        })
        .collect();
    let mut table = CsvTable::new(header);
    table.metadata = meta;
    let table = finish(table, rows)?;

    let columns: Vec<_> = models
        .iter()
        .map(|(id, _)| (format!("gamma_eff_{id}"), id.clone()))
        .collect();
    let plot = Plot {
        title: "Effective damping".into(),
        x_label: "omega (rad/s)".into(),
        y_label: "gamma_eff (rad/s)".into(),
        log_x: all_positive(grid.values.iter().copied()),
        series: series_from(&table, &columns),
    };
    Ok(CommandOutput {
        table,
        plot,
        status: Status::Complete,
    })
}

/// Imaginary-axis permittivity by both continuation routes.
pub fn cmd_epsilon(cfg: &RunConfig) -> Result<CommandOutput, crate::Error> {
    let (name, model) = cfg.epsilon_model.as_ref().ok_or_else(|| {
        missing(
            "epsilon",
            "`epsilon` needs an [epsilon] section with `model`",
        )
    })?;
    let grid = require_frequency(cfg, "epsilon")?;
    if let Some(bad) = grid.values.iter().find(|&&x| x <= 0.0) {
        return Err(missing(
            "frequency",
            &format!("imaginary frequencies must be positive, got {bad}"),
        )
        .into());
    }

    let mut meta = base_metadata(cfg, "epsilon");
    meta.push(("frequency".into(), grid.description.clone()));
    meta.push((format!("epsilon.{name}"), model.to_string()));

    let evaluated: Vec<(Vec<f64>, bool)> = grid
        .values
        .par_iter()
        .map(|&xi| {
            let freq = Frequency::new(xi).expect("grid checked positive");
            let eval = |mode| match eps_imag_axis(model, freq, mode, &cfg.quadrature) {
                Ok(v) => (v, true),
                Err(casimir_core::DielectricError::NotConverged { value, .. }) => (value, false),
                Err(_) => (f64::NAN, false),
            };
            let (sub, ok_sub) = eval(ImagAxisMode::Substitute);
            let (kk, ok_kk) = eval(ImagAxisMode::KramersKronig);
            let disc = if sub == kk {
                0.0
            } else {
                (kk - sub).abs() / sub.abs()
            };
            (vec![xi, sub, kk, disc], ok_sub && ok_kk)
        })
        .collect();
    let good = evaluated.iter().filter(|(_, ok)| *ok).count();
    let status = Status::from_counts(good, evaluated.len());

    let header = ["xi_rad_s", "eps_substitute", "eps_kk", "rel_discrepancy"]
        .map(String::from)
        .to_vec();
    let mut table = CsvTable::new(header);
    table.metadata = meta;
    let table = finish(table, evaluated.into_iter().map(|(r, _)| r).collect())?;

    let plot = Plot {
        title: format!("Permittivity on the imaginary axis: {name}"),
        x_label: "xi (rad/s)".into(),
        y_label: "eps(i xi)".into(),
        log_x: true,
        series: series_from(
            &table,
            &[
                ("eps_substitute".into(), "substitute".into()),
                ("eps_kk".into(), "kk".into()),
            ],
        ),
    };
    Ok(CommandOutput {
        table,
        plot,
        status,
    })
}

/// Per-point outcome of a sweep: the value to tabulate and whether it is
/// converged.
fn unpack(separation: f64, r: &Result<EtaResult, LifshitzError>) -> (EtaResult, bool) {
    match r {
        Ok(e) => (*e, true),
        Err(LifshitzError::NotConverged { partial }) => (*partial, false),
        Err(_) => (
            EtaResult {
                separation,
                eta: f64::NAN,
                eta_s: f64::NAN,
                eta_p: f64::NAN,
                error_estimate: f64::NAN,
                evaluations: 0,
            },
            false,
        ),
    }
}

type Swept = Vec<(EtaResult, bool)>;

/// Evaluate every case on its sweep after checking that all sweeps share
/// one separation grid.
fn run_cases(cfg: &RunConfig, command: &str) -> Result<(Vec<f64>, Vec<Swept>), ConfigError> {
    if cfg.cases.is_empty() {
        return Err(missing(
            "plate1",
            &format!("`{command}` needs [plate1] or at least one [[case]]"),
        ));
    }
    let mut grid: Option<(Vec<f64>, &str)> = None;
    for case in &cfg.cases {
        let sweep = case
            .sweep
            .as_ref()
            .ok_or_else(|| missing("sweep", &format!("case `{}` has no [sweep]", case.name)))?;
        let seps = sweep.separations();
        match &grid {
            None => grid = Some((seps, &case.name)),
            Some((g, first)) => {
                let same = g.len() == seps.len()
                    && g.iter()
                        .zip(&seps)
                        .all(|(a, b)| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()));
                if !same {
                    return Err(missing(
                        "sweep",
                        &format!(
                            "case `{}` uses a different separation grid from `{first}`",
                            case.name
                        ),
                    ));
                }
            }
        }
    }
    let (grid, _) = grid.expect("at least one case");
    let results = cfg
        .cases
        .par_iter()
        .map(|case: &Case| {
            let sweep = case.sweep.as_ref().expect("checked above");
            eta_sweep(&case.plate1, &case.plate2, sweep, &cfg.quadrature)
                .iter()
                .zip(&grid)
                .map(|(r, &l)| unpack(l, r))
                .collect()
        })
        .collect();
    Ok((grid, results))
}

fn case_metadata(cfg: &RunConfig, command: &str) -> Vec<(String, String)> {
    let mut meta = base_metadata(cfg, command);
    for case in &cfg.cases {
        meta.extend(cfg.case_metadata(case));
    }
    meta
}

/// Reduction factor for each plate pair over the shared separation grid.
pub fn cmd_eta(cfg: &RunConfig) -> Result<CommandOutput, crate::Error> {
    let (grid, results) = run_cases(cfg, "eta")?;
    let suffix = |name: &str| {
        if cfg.cases.len() == 1 {
            String::new()
        } else {
            format!("_{name}")
        }
    };
    let mut header = vec!["L_m".to_string()];
    for case in &cfg.cases {
        let s = suffix(&case.name);
        for col in ["eta", "eta_s", "eta_p", "error_estimate", "converged"] {
            header.push(format!("{col}{s}"));
        }
    }
    let mut good = 0;
    let mut total = 0;
    let rows = grid
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let mut row = vec![l];
            for swept in &results {
                let (e, ok) = swept[i];
                total += 1;
                good += usize::from(ok);
                row.extend([
                    e.eta,
                    e.eta_s,
                    e.eta_p,
                    e.error_estimate,
                    if ok { 1.0 } else { 0.0 },
                ]);
            }
            row
        })
        .collect();
    let mut table = CsvTable::new(header);
    table.metadata = case_metadata(cfg, "eta");
    let table = finish(table, rows)?;

    let columns: Vec<_> = cfg
        .cases
        .iter()
        .map(|c| (format!("eta{}", suffix(&c.name)), c.name.clone()))
        .collect();
    let plot = Plot {
        title: "Reduction factor".into(),
        x_label: "L (m)".into(),
        y_label: "eta".into(),
        log_x: true,
        series: series_from(&table, &columns),
    };
    Ok(CommandOutput {
        table,
        plot,
        status: Status::from_counts(good, total),
    })
}

/// Percent difference of each comparison case from the baseline case.
pub fn cmd_delta(cfg: &RunConfig) -> Result<CommandOutput, crate::Error> {
    if cfg.cases.len() < 2 {
        return Err(missing(
            "case",
            "`delta` needs a baseline and at least one comparison [[case]]",
        )
        .into());
    }
    let baseline = match &cfg.baseline {
        Some(name) => cfg
            .cases
            .iter()
            .position(|c| &c.name == name)
            .ok_or_else(|| missing("delta.baseline", &format!("no case named `{name}`")))?,
        None => 0,
    };
    let (grid, results) = run_cases(cfg, "delta")?;

    let base_values: Vec<EtaResult> = results[baseline].iter().map(|(e, _)| *e).collect();
    let mut columns = Vec::new();
    for (i, swept) in results.iter().enumerate() {
        if i == baseline {
            continue;
        }
        let values: Vec<EtaResult> = swept.iter().map(|(e, _)| *e).collect();
        let delta = percent_difference(&values, &base_values).map_err(|e| match e {
            LifshitzError::GridMismatch { .. } | LifshitzError::GridLength { .. } => {
                crate::Error::from(missing("sweep", &e.to_string()))
            }
            other => crate::Error::Numerical(other.to_string()),
        })?;
        columns.push((i, delta));
    }
    let converged: Vec<bool> = (0..grid.len())
        .map(|row| results.iter().all(|swept| swept[row].1))
        .collect();

    let mut header = vec!["L_m".to_string()];
    header.extend(
        columns
            .iter()
            .map(|(i, _)| format!("delta_percent_{}", cfg.cases[*i].name)),
    );
    header.push("converged".into());
    let rows = grid
        .iter()
        .enumerate()
        .map(|(row, &l)| {
            let mut out = vec![l];
            out.extend(columns.iter().map(|(_, d)| d[row].1));
            out.push(if converged[row] { 1.0 } else { 0.0 });
            out
        })
        .collect();

    let mut table = CsvTable::new(header);
    table.metadata = case_metadata(cfg, "delta");
    table
        .metadata
        .push(("delta.baseline".into(), cfg.cases[baseline].name.clone()));
    let table = finish(table, rows)?;

    let plot_columns: Vec<_> = columns
        .iter()
        .map(|(i, _)| {
            let name = &cfg.cases[*i].name;
            (format!("delta_percent_{name}"), name.clone())
        })
        .collect();
    let plot = Plot {
        title: format!("Percent difference from {}", cfg.cases[baseline].name),
        x_label: "L (m)".into(),
        y_label: "Delta (%)".into(),
        log_x: true,
        series: series_from(&table, &plot_columns),
    };
    let good = converged.iter().filter(|&&c| c).count();
    Ok(CommandOutput {
        table,
        plot,
        status: Status::from_counts(good, converged.len()),
    })
}
