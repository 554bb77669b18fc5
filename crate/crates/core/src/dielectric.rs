//! Damping functions and dielectric functions of Drude-type metals.
//!
//! On the real axis every Drude-family model has the form
//!
//! ```text
//! eps(w) = 1 - wp^2 / (w (w + i gamma(w)))
//! ```
//!
//! with `gamma(w)` constant, quadratic (`gamma0 + A w^2`), or given by the
//! two-carrier effective damping of a film made of ordered crystallites (a)
//! and disordered boundaries (b):
//!
//! ```text
//! gamma_eff(w) = ga / (1 + r R) + gb / (1 + 1 / (r R)),
//! R = (w^2 + ga^2) / (w^2 + gb^2),   r = N_b / N_a
//! ```
//!
//! On the imaginary axis `w = i xi` the value is obtained either by
//! substituting the real argument `xi` into the damping function
//! ([`ImagAxisMode::Substitute`]) or by the Kramers-Kronig integral of
//! `Im eps` ([`ImagAxisMode::KramersKronig`]).

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::quadrature::{integrate_finite, QuadratureConfig, QuadratureError};
use crate::units::{ev_to_rad_per_s, EV_TO_RAD_PER_S};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DielectricError {
    #[error("invalid parameter {name} = {value}: {requirement}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },
    #[error("frequency {omega} rad/s is outside the domain: {reason}")]
    Domain { omega: f64, reason: &'static str },
    #[error("{0} has no finite dielectric function")]
    NotDispersive(&'static str),
    #[error(
        "Kramers-Kronig integral did not converge at xi = {xi} rad/s \
         (value {value}, error estimate {error_estimate})"
    )]
    NotConverged {
        xi: f64,
        value: f64,
        error_estimate: f64,
    },
    #[error("Kramers-Kronig quadrature failed: {0}")]
    Quadrature(QuadratureError),
}

fn positive(name: &'static str, value: f64) -> Result<f64, DielectricError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(DielectricError::InvalidParameter {
            name,
            value,
            requirement: "must be positive and finite",
        })
    }
}

/// Non-negative angular frequency in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Frequency(f64);

impl Frequency {
    pub fn new(rad_per_s: f64) -> Result<Self, DielectricError> {
        if rad_per_s >= 0.0 && rad_per_s.is_finite() {
            Ok(Self(rad_per_s))
        } else {
            Err(DielectricError::InvalidParameter {
                name: "frequency",
                value: rad_per_s,
                requirement: "must be non-negative and finite",
            })
        }
    }

    pub fn from_ev(ev: f64) -> Result<Self, DielectricError> {
        Self::new(ev * EV_TO_RAD_PER_S)
    }

    #[inline]
    pub fn rad_per_s(self) -> f64 {
        self.0
    }

    /// Value in eV.
    pub fn ev(self) -> f64 {
        self.0 / EV_TO_RAD_PER_S
    }
}

/// Constant-damping Drude parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrudeParams {
    omega_p: f64,
    gamma0: f64,
}

impl DrudeParams {
    pub fn new(omega_p: f64, gamma0: f64) -> Result<Self, DielectricError> {
        Ok(Self {
            omega_p: positive("omega_p", omega_p)?,
            gamma0: positive("gamma0", gamma0)?,
        })
    }

    pub fn from_ev(omega_p_ev: f64, gamma0_ev: f64) -> Result<Self, DielectricError> {
        Self::new(ev_to_rad_per_s(omega_p_ev), ev_to_rad_per_s(gamma0_ev))
    }

    pub fn omega_p(&self) -> f64 {
        self.omega_p
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }
}

/// Dissipationless plasma model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlasmaParams {
    omega_p: f64,
}

impl PlasmaParams {
    pub fn new(omega_p: f64) -> Result<Self, DielectricError> {
        Ok(Self {
            omega_p: positive("omega_p", omega_p)?,
        })
    }

    pub fn omega_p(&self) -> f64 {
        self.omega_p
    }
}

/// Quadratic damping `gamma0 + A w^2` from electron-phonon and electron-ion
/// scattering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheyeParams {
    gamma0: f64,
    quad_coeff_a: f64,
}

impl TheyeParams {
    /// `quad_coeff_a` is in s (rad^-1 s^-2 times rad^2 s^2 per rad/s).
    pub fn new(gamma0: f64, quad_coeff_a: f64) -> Result<Self, DielectricError> {
        if !(quad_coeff_a >= 0.0 && quad_coeff_a.is_finite()) {
            return Err(DielectricError::InvalidParameter {
                name: "quad_coeff_a",
                value: quad_coeff_a,
                requirement: "must be non-negative and finite",
            });
        }
        Ok(Self {
            gamma0: positive("gamma0", gamma0)?,
            quad_coeff_a,
        })
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    pub fn quad_coeff_a(&self) -> f64 {
        self.quad_coeff_a
    }

    /// Damping rate at a real frequency (any sign).
    #[inline]
    pub fn damping(&self, omega: f64) -> f64 {
        self.gamma0 + self.quad_coeff_a * omega * omega
    }
}

/// Drude metal with quadratic damping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheyeDrudeParams {
    omega_p: f64,
    damping: TheyeParams,
}

impl TheyeDrudeParams {
    pub fn new(omega_p: f64, damping: TheyeParams) -> Result<Self, DielectricError> {
        Ok(Self {
            omega_p: positive("omega_p", omega_p)?,
            damping,
        })
    }

    pub fn omega_p(&self) -> f64 {
        self.omega_p
    }

    pub fn damping(&self) -> &TheyeParams {
        &self.damping
    }
}

/// Two-carrier film: density ratio `N_b / N_a`, damping rates of both
/// carrier populations, and the overall film plasma frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoCarrierParams {
    density_ratio: f64,
    gamma_a: f64,
    gamma_b: f64,
    omega_p: f64,
}

impl TwoCarrierParams {
    pub fn new(
        density_ratio: f64,
        gamma_a: f64,
        gamma_b: f64,
        omega_p: f64,
    ) -> Result<Self, DielectricError> {
        Ok(Self {
            density_ratio: positive("density_ratio", density_ratio)?,
            gamma_a: positive("gamma_a", gamma_a)?,
            gamma_b: positive("gamma_b", gamma_b)?,
            omega_p: positive("omega_p", omega_p)?,
        })
    }

    pub fn density_ratio(&self) -> f64 {
        self.density_ratio
    }

    pub fn gamma_a(&self) -> f64 {
        self.gamma_a
    }

    pub fn gamma_b(&self) -> f64 {
        self.gamma_b
    }

    pub fn omega_p(&self) -> f64 {
        self.omega_p
    }

    /// Effective damping at a real frequency. Even in `omega`.
    #[inline]
    pub fn damping(&self, omega: f64) -> f64 {
        let w2 = omega * omega;
        let ga2 = self.gamma_a * self.gamma_a;
        let gb2 = self.gamma_b * self.gamma_b;
        // x = r R. The two weights 1/(1+x) and x/(1+x) sum to one, so the
        // result is ga + (gb - ga) x/(1+x), exact when ga == gb.
        let x = self.density_ratio * (w2 + ga2) / (w2 + gb2);
        self.gamma_a + (self.gamma_b - self.gamma_a) * (x / (1.0 + x))
    }

    /// Closed-form `omega = 0` value.
    pub fn static_damping(&self) -> f64 {
        let (r, ga, gb) = (self.density_ratio, self.gamma_a, self.gamma_b);
        ga / (1.0 + r * ga * ga / (gb * gb)) + gb / (1.0 + gb * gb / (r * ga * ga))
    }

    /// Closed-form `omega -> infinity` limit.
    pub fn high_frequency_damping(&self) -> f64 {
        let (r, ga, gb) = (self.density_ratio, self.gamma_a, self.gamma_b);
        ga / (1.0 + r) + gb / (1.0 + 1.0 / r)
    }
}

/// Effective damping rate of a two-carrier film at `omega`, rad/s.
pub fn gamma_eff(params: &TwoCarrierParams, omega: Frequency) -> f64 {
    params.damping(omega.rad_per_s())
}

/// Quadratic damping rate at `omega`, rad/s.
pub fn gamma_theye(params: &TheyeParams, omega: Frequency) -> f64 {
    params.damping(omega.rad_per_s())
}

/// How the dielectric function is continued to imaginary frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ImagAxisMode {
    /// `1 + wp^2 / (xi (xi + gamma(xi)))` with gamma at real argument `xi`.
    #[default]
    Substitute,
    /// `1 + (2/pi) int_0^inf w Im eps(w) / (w^2 + xi^2) dw`.
    KramersKronig,
}

impl ImagAxisMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Substitute => "substitute",
            Self::KramersKronig => "kk",
        }
    }
}

impl fmt::Display for ImagAxisMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Material response of one medium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DielectricModel {
    Vacuum,
    Plasma(PlasmaParams),
    Drude(DrudeParams),
    TheyeDrude(TheyeDrudeParams),
    TwoCarrierDrude(TwoCarrierParams),
    /// Ideal mirror; only meaningful as a substrate.
    PerfectConductor,
}

impl DielectricModel {
    /// Bulk Au with constant damping: `wp = 9 eV`, `gamma = 0.02 eV`.
    pub fn classical_au() -> Self {
        Self::Drude(DrudeParams::from_ev(9.0, 0.02).expect("preset parameters are valid"))
    }

    /// Annealed Au film: `N_b/N_a = 0.0077`, `ga = 0.93e14`, `gb = 25e14` s^-1.
    pub fn annealed_au() -> Self {
        Self::TwoCarrierDrude(
            TwoCarrierParams::new(0.0077, 0.93e14, 25e14, ev_to_rad_per_s(9.0))
                .expect("preset parameters are valid"),
        )
    }

    /// Nonannealed Au film: `N_b/N_a = 0.058`, `ga = 1.18e14`, `gb = 25e14` s^-1.
    pub fn nonannealed_au() -> Self {
        Self::TwoCarrierDrude(
            TwoCarrierParams::new(0.058, 1.18e14, 25e14, ev_to_rad_per_s(9.0))
                .expect("preset parameters are valid"),
        )
    }

    /// Ids accepted by [`DielectricModel::preset`].
    pub const PRESET_IDS: [&'static str; 5] = [
        "classical-au",
        "annealed-au",
        "nonannealed-au",
        "vacuum",
        "perfect-conductor",
    ];

    pub fn preset(id: &str) -> Option<Self> {
        match id {
            "classical-au" => Some(Self::classical_au()),
            "annealed-au" => Some(Self::annealed_au()),
            "nonannealed-au" => Some(Self::nonannealed_au()),
            "vacuum" => Some(Self::Vacuum),
            "perfect-conductor" => Some(Self::PerfectConductor),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Vacuum => "vacuum",
            Self::Plasma(_) => "plasma",
            Self::Drude(_) => "drude",
            Self::TheyeDrude(_) => "theye",
            Self::TwoCarrierDrude(_) => "two-carrier",
            Self::PerfectConductor => "perfect-conductor",
        }
    }

    pub fn plasma_frequency(&self) -> Option<f64> {
        match self {
            Self::Plasma(p) => Some(p.omega_p),
            Self::Drude(p) => Some(p.omega_p),
            Self::TheyeDrude(p) => Some(p.omega_p),
            Self::TwoCarrierDrude(p) => Some(p.omega_p),
            Self::Vacuum | Self::PerfectConductor => None,
        }
    }

    /// Damping rate at real frequency `omega`; `None` for models without one.
    pub fn damping(&self, omega: f64) -> Option<f64> {
        match self {
            Self::Drude(p) => Some(p.gamma0),
            Self::TheyeDrude(p) => Some(p.damping.damping(omega)),
            Self::TwoCarrierDrude(p) => Some(p.damping(omega)),
            Self::Plasma(_) | Self::Vacuum | Self::PerfectConductor => None,
        }
    }

    fn is_drude_family(&self) -> bool {
        matches!(
            self,
            Self::Drude(_) | Self::TheyeDrude(_) | Self::TwoCarrierDrude(_)
        )
    }

    // Lower frequency scale of Im eps, used to place the KK grid.
    fn min_damping(&self) -> Option<f64> {
        match self {
            Self::Drude(p) => Some(p.gamma0),
            Self::TheyeDrude(p) => Some(p.damping.gamma0),
            Self::TwoCarrierDrude(p) => Some(p.gamma_a.min(p.gamma_b).min(p.static_damping())),
            _ => None,
        }
    }
}

impl fmt::Display for DielectricModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Vacuum => write!(f, "vacuum"),
            Self::PerfectConductor => write!(f, "perfect-conductor"),
            Self::Plasma(p) => write!(f, "plasma(omega_p={:e} rad/s)", p.omega_p),
            Self::Drude(p) => write!(
                f,
                "drude(omega_p={:e} rad/s, gamma={:e} rad/s)",
                p.omega_p, p.gamma0
            ),
            Self::TheyeDrude(p) => write!(
                f,
                "theye(omega_p={:e} rad/s, gamma0={:e} rad/s, a={:e} s)",
                p.omega_p, p.damping.gamma0, p.damping.quad_coeff_a
            ),
            Self::TwoCarrierDrude(p) => write!(
                f,
                "two-carrier(omega_p={:e} rad/s, density_ratio={:e}, gamma_a={:e} rad/s, gamma_b={:e} rad/s)",
                p.omega_p, p.density_ratio, p.gamma_a, p.gamma_b
            ),
        }
    }
}

/// Complex dielectric function at real frequency `omega > 0`.
pub fn eps_real_axis(
    model: &DielectricModel,
    omega: Frequency,
) -> Result<Complex64, DielectricError> {
    let w = omega.rad_per_s();
    match model {
        DielectricModel::Vacuum => return Ok(Complex64::new(1.0, 0.0)),
        DielectricModel::PerfectConductor => {
            return Err(DielectricError::NotDispersive("perfect conductor"))
        }
        _ => {}
    }
    if w <= 0.0 {
        return Err(DielectricError::Domain {
            omega: w,
            reason: "Drude pole at zero frequency",
        });
    }
    let wp = model
        .plasma_frequency()
        .expect("dispersive model has a plasma frequency");
    let gamma = model.damping(w).unwrap_or(0.0);
    Ok(Complex64::new(1.0, 0.0) - wp * wp / (Complex64::new(w, 0.0) * Complex64::new(w, gamma)))
}

/// `Im eps(w)` for Drude-family models, written without cancellation.
fn eps_imag_part(wp: f64, gamma: f64, w: f64) -> f64 {
    wp * wp * gamma / (w * (w * w + gamma * gamma))
}

/// Real dielectric function at imaginary frequency `i xi`, `xi > 0`.
///
/// [`DielectricModel::PerfectConductor`] yields `+inf`. The plasma model in
/// Kramers-Kronig mode returns the analytic value, since its `Im eps` is a
/// delta function at zero frequency.
pub fn eps_imag_axis(
    model: &DielectricModel,
    xi: Frequency,
    mode: ImagAxisMode,
    quad: &QuadratureConfig,
) -> Result<f64, DielectricError> {
    let x = xi.rad_per_s();
    if x <= 0.0 {
        return Err(DielectricError::Domain {
            omega: x,
            reason: "imaginary-axis evaluation requires xi > 0",
        });
    }
    match model {
        DielectricModel::Vacuum => Ok(1.0),
        DielectricModel::PerfectConductor => Ok(f64::INFINITY),
        DielectricModel::Plasma(p) => Ok(1.0 + p.omega_p * p.omega_p / (x * x)),
        m => match mode {
            ImagAxisMode::Substitute => {
                let wp = m.plasma_frequency().expect("Drude family");
                let gamma = m.damping(x).expect("Drude family");
                Ok(1.0 + wp * wp / (x * (x + gamma)))
            }
            ImagAxisMode::KramersKronig => kramers_kronig(m, x, quad),
        },
    }
}

/// Lower end of the KK grid relative to the smallest damping rate.
const KK_LOW_FACTOR: f64 = 1e-4;
/// Upper end of the KK grid relative to `max(wp, xi)`.
const KK_HIGH_FACTOR: f64 = 1e3;

fn kramers_kronig(
    model: &DielectricModel,
    xi: f64,
    quad: &QuadratureConfig,
) -> Result<f64, DielectricError> {
    debug_assert!(model.is_drude_family());
    let wp = model.plasma_frequency().expect("Drude family");
    let gamma_min = model.min_damping().expect("Drude family");
    let lo = KK_LOW_FACTOR * gamma_min.min(xi);
    let hi = KK_HIGH_FACTOR * wp.max(xi);
    let xi2 = xi * xi;

    // w Im eps(w) / (w^2 + xi^2), finite as w -> 0.
    let kernel = |w: f64| -> f64 {
        let gamma = model.damping(w).expect("Drude family");
        w * eps_imag_part(wp, gamma, w) / (w * w + xi2)
    };

    // Log variable u = ln w, dw = w du.
    let body = integrate_finite(
        |u| {
            let w = u.exp();
            w * kernel(w)
        },
        lo.ln(),
        hi.ln(),
        quad,
    );
    let body = match body {
        Ok(r) => r,
        Err(QuadratureError::NotConverged { best }) => {
            return Err(DielectricError::NotConverged {
                xi,
                value: 1.0 + 2.0 / PI * best.value,
                error_estimate: 2.0 / PI * best.error_estimate,
            })
        }
        Err(e) => return Err(DielectricError::Quadrature(e)),
    };

    // [0, lo]: kernel is flat there to relative order (lo / gamma)^2.
    let head = 0.5 * (kernel(0.5 * lo) + kernel(lo)) * lo;
    // [hi, inf): kernel ~ wp^2 gamma / w^4 once w >> gamma, xi.
    let gamma_hi = model.damping(hi).expect("Drude family");
    let tail = wp * wp * gamma_hi / (3.0 * hi * hi * hi);

    Ok(1.0 + 2.0 / PI * (head + body.value + tail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn annealed() -> TwoCarrierParams {
        match DielectricModel::annealed_au() {
            DielectricModel::TwoCarrierDrude(p) => p,
            _ => unreachable!(),
        }
    }

    #[test]
    fn collapse_to_constant_damping() {
        let p = TwoCarrierParams::new(0.37, 2e14, 2e14, 1e16).unwrap();
        for w in [0.0, 1e10, 3e14, 1e17, 1e20] {
            assert_eq!(p.damping(w), 2e14);
        }
    }

    #[test]
    fn vanishing_density_ratio_gives_gamma_a() {
        let p = TwoCarrierParams::new(1e-300, 1e14, 25e14, 1e16).unwrap();
        for w in [0.0, 1e14, 1e16] {
            assert_relative_eq!(p.damping(w), 1e14, max_relative = 1e-12);
        }
    }

    #[test]
    fn annealed_limits_match_closed_forms() {
        let p = annealed();
        assert_relative_eq!(p.damping(0.0), p.static_damping(), max_relative = 1e-10);
        // At 1e20 rad/s the residual gb^2/w^2 = 6e-10 still shows at 1e-10.
        assert_relative_eq!(
            p.damping(1e22),
            p.high_frequency_damping(),
            max_relative = 1e-10
        );
        assert_relative_eq!(
            p.damping(1e20),
            p.high_frequency_damping(),
            max_relative = 1e-9
        );
        // Hand arithmetic: 0.93e14/(1 + 1.065557e-5) + 25e14 * 1.065546e-5.
        assert_relative_eq!(p.damping(0.0), 9.30256e13, max_relative = 1e-5);
        assert_relative_eq!(p.damping(1e20), 1.11392e14, max_relative = 1e-5);
    }

    #[test]
    fn two_carrier_rejects_bad_params() {
        assert!(TwoCarrierParams::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(TwoCarrierParams::new(1.0, -1.0, 1.0, 1.0).is_err());
        assert!(TwoCarrierParams::new(1.0, 1.0, f64::NAN, 1.0).is_err());
        assert!(TwoCarrierParams::new(1.0, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn theye_examples() {
        let p = TheyeParams::new(1e14, 0.0).unwrap();
        assert_eq!(gamma_theye(&p, Frequency::new(5e15).unwrap()), 1e14);
        let p = TheyeParams::new(1e14, 1e-18).unwrap();
        assert_relative_eq!(
            gamma_theye(&p, Frequency::new(1e15).unwrap()),
            1.01e14,
            max_relative = 1e-15
        );
        assert!(matches!(
            TheyeParams::new(0.0, 1e-18),
            Err(DielectricError::InvalidParameter { name: "gamma0", .. })
        ));
        assert!(TheyeParams::new(1e14, -1.0).is_err());
    }

    #[test]
    fn real_axis_examples() {
        let w = Frequency::from_ev(9.0).unwrap();
        assert_eq!(
            eps_real_axis(&DielectricModel::Vacuum, w).unwrap(),
            Complex64::new(1.0, 0.0)
        );

        let plasma = DielectricModel::Plasma(PlasmaParams::new(w.rad_per_s()).unwrap());
        let e = eps_real_axis(&plasma, w).unwrap();
        assert!(e.norm() < 1e-15);

        let e = eps_real_axis(&DielectricModel::classical_au(), w).unwrap();
        // 1 - 81/(81 + 0.18 i) = (0.18 i)/(81 + 0.18i) evaluated by hand.
        let expected = Complex64::new(0.0, 0.18) / Complex64::new(81.0, 0.18);
        assert_relative_eq!(e.re, expected.re, max_relative = 1e-9);
        assert_relative_eq!(e.im, expected.im, max_relative = 1e-9);
        assert!(e.im > 0.0 && (e.re - 4.938e-6).abs() < 1e-8 && (e.im - 2.2222e-3).abs() < 1e-7);
    }

    #[test]
    fn real_axis_rejects_zero_frequency() {
        let r = eps_real_axis(
            &DielectricModel::classical_au(),
            Frequency::new(0.0).unwrap(),
        );
        assert!(matches!(r, Err(DielectricError::Domain { .. })));
        assert!(eps_real_axis(
            &DielectricModel::PerfectConductor,
            Frequency::new(1.0).unwrap()
        )
        .is_err());
    }

    #[test]
    fn substitute_example() {
        let e = eps_imag_axis(
            &DielectricModel::classical_au(),
            Frequency::from_ev(1.0).unwrap(),
            ImagAxisMode::Substitute,
            &QuadratureConfig::default(),
        )
        .unwrap();
        assert_relative_eq!(e, 1.0 + 81.0 / 1.02, max_relative = 1e-12);
    }

    #[test]
    fn kk_matches_substitute_for_constant_damping() {
        let m = DielectricModel::classical_au();
        let q = QuadratureConfig::default();
        let xi = Frequency::from_ev(1.0).unwrap();
        let a = eps_imag_axis(&m, xi, ImagAxisMode::Substitute, &q).unwrap();
        let b = eps_imag_axis(&m, xi, ImagAxisMode::KramersKronig, &q).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-3);
    }

    #[test]
    fn transparency_at_high_frequency() {
        let q = QuadratureConfig::default();
        for m in [
            DielectricModel::classical_au(),
            DielectricModel::annealed_au(),
            DielectricModel::nonannealed_au(),
        ] {
            let xi = Frequency::new(1e4 * m.plasma_frequency().unwrap()).unwrap();
            for mode in [ImagAxisMode::Substitute, ImagAxisMode::KramersKronig] {
                let e = eps_imag_axis(&m, xi, mode, &q).unwrap();
                assert!((e - 1.0).abs() < 1e-6, "{m} {mode}: {e}");
            }
        }
    }

    #[test]
    fn imag_axis_rejects_zero() {
        let r = eps_imag_axis(
            &DielectricModel::classical_au(),
            Frequency::new(0.0).unwrap(),
            ImagAxisMode::Substitute,
            &QuadratureConfig::default(),
        );
        assert!(matches!(r, Err(DielectricError::Domain { .. })));
    }

    #[test]
    fn presets_resolve() {
        for id in DielectricModel::PRESET_IDS {
            assert!(DielectricModel::preset(id).is_some(), "{id}");
        }
        assert!(DielectricModel::preset("silver").is_none());
        assert_eq!(
            DielectricModel::classical_au().plasma_frequency().unwrap(),
            9.0 * EV_TO_RAD_PER_S
        );
    }

    #[test]
    fn frequency_rejects_negative() {
        assert!(Frequency::new(-1.0).is_err());
        assert!(Frequency::new(f64::INFINITY).is_err());
        assert_relative_eq!(Frequency::from_ev(2.0).unwrap().ev(), 2.0);
    }
}
