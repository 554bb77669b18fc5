//! Zero-temperature Lifshitz pressure between two planar mirrors.
//!
//! The pressure is the double integral over imaginary frequency `xi` and
//! transverse wavevector `Q`
//!
//! ```text
//! P = hbar / (2 pi^2) int_0^inf dxi int_0^inf Q dQ  kappa  sum_{s,p} G,
//! G = (r1^-1 r2^-1 exp(2 kappa L) - 1)^-1,   kappa = sqrt(xi^2/c^2 + Q^2)
//! ```
//!
//! and the reduction factor is `eta = P / P0` with the ideal-mirror pressure
//! `P0 = pi^2 hbar c / (240 L^4)`. In the scaled variables `t = 2 L xi / c`,
//! `u = 2 L Q` the factor becomes
//!
//! ```text
//! eta = 15 / (2 pi^4) int_0^inf dt int_0^inf du  u y sum G,   y = sqrt(t^2 + u^2)
//! ```
//!
//! which equals one for perfect conductors. The inner integral runs over `u`
//! at fixed `t`, the outer over `t`; both are truncated at
//! `tail_cutoff_scale` since the integrand decays like `exp(-y)`.

use std::cell::{Cell, RefCell};
use std::f64::consts::PI;

use rayon::prelude::*;
use thiserror::Error;

use crate::dielectric::{Frequency, ImagAxisMode};
use crate::optics::{LayerStack, OpticsError, StackResponse};
use crate::quadrature::{integrate_damped_multi, QuadratureConfig, QuadratureError};
use crate::units::{HBAR, SPEED_OF_LIGHT};

/// Scaled double integral of the ideal-mirror kernel times this gives one.
const ETA_PREFACTOR: f64 = 15.0 / (2.0 * PI * PI * PI * PI);

/// Inner integrals run this much tighter than the outer one.
const INNER_TOLERANCE_FACTOR: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LifshitzError {
    #[error("separation must be positive and finite, got {0} m")]
    InvalidSeparation(f64),
    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
    #[error("separation grids differ at index {index}: {left} m vs {right} m")]
    GridMismatch { index: usize, left: f64, right: f64 },
    #[error("separation grids have different lengths ({left} vs {right})")]
    GridLength { left: usize, right: usize },
    #[error(transparent)]
    Optics(#[from] OpticsError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(
        "reduction factor did not converge at L = {} m: eta = {} +- {}",
        partial.separation,
        partial.eta,
        partial.error_estimate
    )]
    NotConverged { partial: EtaResult },
}

/// One mirror: its layer stack and how its dielectric functions are
/// continued to imaginary frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct PlateConfig {
    pub stack: LayerStack,
    pub imag_axis_mode: ImagAxisMode,
}

impl PlateConfig {
    pub fn new(stack: LayerStack, imag_axis_mode: ImagAxisMode) -> Self {
        Self {
            stack,
            imag_axis_mode,
        }
    }

    pub fn half_space(model: crate::DielectricModel) -> Self {
        Self::new(LayerStack::half_space(model), ImagAxisMode::default())
    }

    fn response(&self, xi: f64, quad: &QuadratureConfig) -> Result<StackResponse, OpticsError> {
        let xi = Frequency::new(xi)?;
        self.stack.response(xi, quad, self.imag_axis_mode)
    }
}

/// Reduction factor at one separation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaResult {
    /// Plate separation, m.
    pub separation: f64,
    pub eta: f64,
    /// s-polarization share of `eta`.
    pub eta_s: f64,
    /// p-polarization share of `eta`.
    pub eta_p: f64,
    pub error_estimate: f64,
    /// Integrand evaluations across inner and outer integrals.
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spacing {
    Linear,
    Log,
}

/// Separation grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    l_min: f64,
    l_max: f64,
    points: usize,
    spacing: Spacing,
}

impl SweepSpec {
    pub fn new(
        l_min: f64,
        l_max: f64,
        points: usize,
        spacing: Spacing,
    ) -> Result<Self, LifshitzError> {
        if !(l_min > 0.0 && l_min.is_finite()) {
            return Err(LifshitzError::InvalidSweep(format!(
                "l_min must be positive, got {l_min}"
            )));
        }
        if !(l_max >= l_min && l_max.is_finite()) {
            return Err(LifshitzError::InvalidSweep(format!(
                "l_max must be finite and at least l_min, got {l_max}"
            )));
        }
        if points < 1 {
            return Err(LifshitzError::InvalidSweep(
                "points must be at least 1".into(),
            ));
        }
        Ok(Self {
            l_min,
            l_max,
            points,
            spacing,
        })
    }

    pub fn l_min(&self) -> f64 {
        self.l_min
    }

    pub fn l_max(&self) -> f64 {
        self.l_max
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    /// Ascending separations; the end points are exactly `l_min` and `l_max`.
    pub fn separations(&self) -> Vec<f64> {
        grid(self.l_min, self.l_max, self.points, self.spacing)
    }
}

/// `points` values from `start` to `end` inclusive.
pub fn grid(start: f64, end: f64, points: usize, spacing: Spacing) -> Vec<f64> {
    if points == 1 {
        return vec![start];
    }
    let last = (points - 1) as f64;
    (0..points)
        .map(|i| {
            if i == 0 {
                start
            } else if i == points - 1 {
                end
            } else {
                let f = i as f64 / last;
                match spacing {
                    Spacing::Linear => start + (end - start) * f,
                    Spacing::Log => (start.ln() + (end.ln() - start.ln()) * f).exp(),
                }
            }
        })
        .collect()
}

/// Ideal-mirror Casimir pressure magnitude `pi^2 hbar c / (240 L^4)`, N/m^2.
pub fn perfect_conductor_pressure(separation: f64) -> Result<f64, LifshitzError> {
    check_separation(separation)?;
    Ok(PI * PI * HBAR * SPEED_OF_LIGHT / (240.0 * separation.powi(4)))
}

fn check_separation(separation: f64) -> Result<(), LifshitzError> {
    if separation > 0.0 && separation.is_finite() {
        Ok(())
    } else {
        Err(LifshitzError::InvalidSeparation(separation))
    }
}

/// `G = rho e^-y / (1 - rho e^-y)` with `rho = r1 r2`.
#[inline]
fn mode_factor(rho: f64, decay: f64) -> f64 {
    let x = rho * decay;
    x / (1.0 - x)
}

/// Reduction factor `eta = F / F0` at separation `separation`.
pub fn reduction_factor(
    plate1: &PlateConfig,
    plate2: &PlateConfig,
    separation: f64,
    quad: &QuadratureConfig,
) -> Result<EtaResult, LifshitzError> {
    check_separation(separation)?;
    quad.validate()?;

    let inner_cfg = quad.with_rel_tol_scaled(INNER_TOLERANCE_FACTOR);
    let two_l = 2.0 * separation;

    let failure: RefCell<Option<LifshitzError>> = RefCell::new(None);
    let inner_converged = Cell::new(true);
    let inner_rel_error = Cell::new(0.0f64);
    let inner_evaluations = Cell::new(0usize);

    let outer = |t: f64| -> [f64; 2] {
        if failure.borrow().is_some() {
            return [0.0, 0.0];
        }
        let xi = SPEED_OF_LIGHT * t / two_l;
        let responses = plate1
            .response(xi, quad)
            .and_then(|a| Ok((a, plate2.response(xi, quad)?)));
        let (resp1, resp2) = match responses {
            Ok(r) => r,
            Err(e) => {
                *failure.borrow_mut() = Some(e.into());
                return [0.0, 0.0];
            }
        };
        let t2 = t * t;
        let inner = integrate_damped_multi(
            |u| {
                let y = (t2 + u * u).sqrt();
                let q = u / two_l;
                let r1 = resp1.reflection_raw(q);
                let r2 = resp2.reflection_raw(q);
                let decay = (-y).exp();
                let weight = u * y;
                [
                    weight * mode_factor(r1.s * r2.s, decay),
                    weight * mode_factor(r1.p * r2.p, decay),
                ]
            },
            0.0,
            1.0,
            &inner_cfg,
        );
        match inner {
            Ok(r) => {
                inner_evaluations.set(inner_evaluations.get() + r.evaluations);
                if !r.converged {
                    inner_converged.set(false);
                }
                let magnitude = r.value[0].abs() + r.value[1].abs();
                if magnitude > 0.0 {
                    inner_rel_error.set(inner_rel_error.get().max(r.total_error() / magnitude));
                }
                r.value
            }
            Err(e) => {
                *failure.borrow_mut() = Some(e.into());
                [0.0, 0.0]
            }
        }
    };

    let result = integrate_damped_multi(outer, 0.0, 1.0, quad);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let result = result?;

    let eta_s = ETA_PREFACTOR * result.value[0];
    let eta_p = ETA_PREFACTOR * result.value[1];
    let total = result.total_value();
    let error_estimate =
        ETA_PREFACTOR * (result.total_error() + inner_rel_error.get() * total.abs());
    let eta = EtaResult {
        separation,
        eta: eta_s + eta_p,
        eta_s,
        eta_p,
        error_estimate,
        evaluations: result.evaluations + inner_evaluations.get(),
    };
    if result.converged && inner_converged.get() {
        Ok(eta)
    } else {
        Err(LifshitzError::NotConverged { partial: eta })
    }
}

/// Reduction factor at every separation of `sweep`, in ascending order.
/// Points are evaluated in parallel; failures are reported per point.
pub fn eta_sweep(
    plate1: &PlateConfig,
    plate2: &PlateConfig,
    sweep: &SweepSpec,
    quad: &QuadratureConfig,
) -> Vec<Result<EtaResult, LifshitzError>> {
    sweep
        .separations()
        .par_iter()
        .map(|&l| reduction_factor(plate1, plate2, l, quad))
        .collect()
}

/// `100 |eta_A - eta_B| / eta_B` at each shared separation.
pub fn percent_difference(
    sweep_a: &[EtaResult],
    sweep_b: &[EtaResult],
) -> Result<Vec<(f64, f64)>, LifshitzError> {
    if sweep_a.len() != sweep_b.len() {
        return Err(LifshitzError::GridLength {
            left: sweep_a.len(),
            right: sweep_b.len(),
        });
    }
    sweep_a
        .iter()
        .zip(sweep_b)
        .enumerate()
        .map(|(index, (a, b))| {
            let (la, lb) = (a.separation, b.separation);
            if (la - lb).abs() > 1e-12 * la.abs().max(lb.abs()) {
                return Err(LifshitzError::GridMismatch {
                    index,
                    left: la,
                    right: lb,
                });
            }
            Ok((la, 100.0 * (a.eta - b.eta).abs() / b.eta))
        })
        .collect()
}

/// Casimir pressure magnitude `eta * P0`, N/m^2.
pub fn force_pressure(
    plate1: &PlateConfig,
    plate2: &PlateConfig,
    separation: f64,
    quad: &QuadratureConfig,
) -> Result<f64, LifshitzError> {
    let eta = reduction_factor(plate1, plate2, separation, quad)?;
    Ok(eta.eta * perfect_conductor_pressure(separation)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DielectricModel;
    use approx::assert_relative_eq;

    #[test]
    fn ideal_pressure_at_one_micron() {
        let p = perfect_conductor_pressure(1e-6).unwrap();
        // pi^2 * 1.054571817e-34 * 299792458 / 240 * 1e24
        assert_relative_eq!(p, 1.300_2e-3, max_relative = 1e-4);
        assert_relative_eq!(
            perfect_conductor_pressure(0.5e-6).unwrap(),
            16.0 * p,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            perfect_conductor_pressure(2e-6).unwrap(),
            p / 16.0,
            max_relative = 1e-14
        );
        assert!(perfect_conductor_pressure(0.0).is_err());
        assert!(perfect_conductor_pressure(-1e-6).is_err());
    }

    #[test]
    fn perfect_mirrors_normalize_to_one() {
        let pc = PlateConfig::half_space(DielectricModel::PerfectConductor);
        let r = reduction_factor(&pc, &pc, 1e-6, &QuadratureConfig::default()).unwrap();
        assert!((r.eta - 1.0).abs() < 1e-4, "{r:?}");
        assert_relative_eq!(r.eta, r.eta_s + r.eta_p, max_relative = 1e-15);
        // Each polarization of an ideal mirror contributes half.
        assert!((r.eta_s - 0.5).abs() < 1e-4);
    }

    #[test]
    fn vacuum_gives_zero() {
        let vac = PlateConfig::half_space(DielectricModel::Vacuum);
        let r = reduction_factor(&vac, &vac, 1e-6, &QuadratureConfig::default()).unwrap();
        assert_eq!(r.eta, 0.0);
        let f = force_pressure(&vac, &vac, 1e-6, &QuadratureConfig::default()).unwrap();
        assert_eq!(f, 0.0);
    }

    #[test]
    fn grid_endpoints_are_exact() {
        let g = grid(1e-7, 2e-6, 20, Spacing::Log);
        assert_eq!(g.len(), 20);
        assert_eq!(g[0], 1e-7);
        assert_eq!(g[19], 2e-6);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(grid(3.0, 5.0, 1, Spacing::Linear), vec![3.0]);
        assert_eq!(grid(0.0, 1.0, 3, Spacing::Linear), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn sweep_validation() {
        assert!(SweepSpec::new(0.0, 1e-6, 3, Spacing::Log).is_err());
        assert!(SweepSpec::new(2e-6, 1e-6, 3, Spacing::Log).is_err());
        assert!(SweepSpec::new(1e-6, 1e-6, 0, Spacing::Log).is_err());
        assert!(SweepSpec::new(1e-6, 1e-6, 1, Spacing::Linear).is_ok());
    }

    #[test]
    fn percent_difference_contracts() {
        let mk = |l: f64, eta: f64| EtaResult {
            separation: l,
            eta,
            eta_s: 0.0,
            eta_p: eta,
            error_estimate: 0.0,
            evaluations: 0,
        };
        let a = [mk(1e-6, 0.9), mk(2e-6, 0.95)];
        let b = [mk(1e-6, 0.8), mk(2e-6, 0.95)];
        let d = percent_difference(&a, &b).unwrap();
        assert_relative_eq!(d[0].1, 12.5, max_relative = 1e-12);
        assert_eq!(d[1].1, 0.0);
        assert!(percent_difference(&a, &a)
            .unwrap()
            .iter()
            .all(|&(_, v)| v == 0.0));
        assert!(matches!(
            percent_difference(&a, &b[..1]),
            Err(LifshitzError::GridLength { .. })
        ));
        let c = [mk(1e-6, 0.9), mk(3e-6, 0.9)];
        assert!(matches!(
            percent_difference(&a, &c),
            Err(LifshitzError::GridMismatch { index: 1, .. })
        ));
    }

    #[test]
    fn starved_budget_reports_partial_result() {
        let au = PlateConfig::half_space(DielectricModel::classical_au());
        let cfg = QuadratureConfig {
            rel_tol: 1e-13,
            max_subdivisions: 1,
            ..QuadratureConfig::default()
        };
        match reduction_factor(&au, &au, 1e-6, &cfg) {
            Err(LifshitzError::NotConverged { partial }) => {
                assert!(partial.eta > 0.0 && partial.eta < 1.0);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}
