//! s- and p-polarized reflection amplitudes at imaginary frequency.
//!
//! On the imaginary axis every quantity is real. A medium with dielectric
//! value `eps` has the decay constant `kappa = sqrt(eps xi^2 / c^2 + Q^2)` and
//! the amplitude for light arriving from medium `i` at medium `j` is
//!
//! ```text
//! r_s = (k_i - k_j) / (k_i + k_j)
//! r_p = (eps_j k_i - eps_i k_j) / (eps_j k_i + eps_i k_j)
//! ```
//!
//! Films are folded in from the substrate outwards with the two-interface
//! recursion `(r_front + r_behind x) / (1 + r_front r_behind x)`, where
//! `x = exp(-2 kappa d)` is the round-trip attenuation inside the film.
//!
//! Sign convention: a perfect mirror has `r_s = -1`, `r_p = +1`.

use thiserror::Error;

use crate::dielectric::{eps_imag_axis, DielectricError, DielectricModel, Frequency, ImagAxisMode};
use crate::quadrature::QuadratureConfig;
use crate::units::SPEED_OF_LIGHT;

/// Upper bound on the number of films in one stack.
pub const MAX_LAYERS: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OpticsError {
    #[error("invalid layer thickness {0} m: must be positive and finite")]
    InvalidThickness(f64),
    #[error("stack has {0} layers, at most {MAX_LAYERS} are supported")]
    TooManyLayers(usize),
    #[error("a perfect conductor can only be used as a substrate")]
    PerfectConductorLayer,
    #[error("invalid transverse wavevector {0} rad/m")]
    InvalidWavevector(f64),
    #[error(transparent)]
    Dielectric(#[from] DielectricError),
}

/// Film of finite thickness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layer {
    thickness: f64,
    model: DielectricModel,
}

impl Layer {
    pub fn new(thickness: f64, model: DielectricModel) -> Result<Self, OpticsError> {
        if !(thickness > 0.0 && thickness.is_finite()) {
            return Err(OpticsError::InvalidThickness(thickness));
        }
        if model == DielectricModel::PerfectConductor {
            return Err(OpticsError::PerfectConductorLayer);
        }
        Ok(Self { thickness, model })
    }

    pub fn thickness(&self) -> f64 {
        self.thickness
    }

    pub fn model(&self) -> &DielectricModel {
        &self.model
    }
}

/// Films listed from the vacuum gap inwards, on a semi-infinite substrate.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerStack {
    layers: Vec<Layer>,
    substrate: DielectricModel,
}

impl LayerStack {
    pub fn new(layers: Vec<Layer>, substrate: DielectricModel) -> Result<Self, OpticsError> {
        if layers.len() > MAX_LAYERS {
            return Err(OpticsError::TooManyLayers(layers.len()));
        }
        Ok(Self { layers, substrate })
    }

    pub fn half_space(substrate: DielectricModel) -> Self {
        Self {
            layers: Vec::new(),
            substrate,
        }
    }

    /// Single film of `thickness` metres on `substrate`.
    pub fn film(
        film: DielectricModel,
        thickness: f64,
        substrate: DielectricModel,
    ) -> Result<Self, OpticsError> {
        Self::new(vec![Layer::new(thickness, film)?], substrate)
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn substrate(&self) -> &DielectricModel {
        &self.substrate
    }

    /// Evaluates every medium of the stack at imaginary frequency `xi`.
    pub fn response(
        &self,
        xi: Frequency,
        quad: &QuadratureConfig,
        mode: ImagAxisMode,
    ) -> Result<StackResponse, OpticsError> {
        let mut films = Vec::with_capacity(self.layers.len());
        for layer in &self.layers {
            films.push((
                layer.thickness,
                eps_imag_axis(&layer.model, xi, mode, quad)?,
            ));
        }
        let substrate = match self.substrate {
            DielectricModel::PerfectConductor => Medium::PerfectConductor,
            ref m => Medium::Dielectric(eps_imag_axis(m, xi, mode, quad)?),
        };
        Ok(StackResponse {
            xi: xi.rad_per_s(),
            films,
            substrate,
        })
    }
}

/// Transverse wavevector component along the plates, rad/m.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct TransverseWavevector(f64);

impl TransverseWavevector {
    pub fn new(q: f64) -> Result<Self, OpticsError> {
        if q >= 0.0 && q.is_finite() {
            Ok(Self(q))
        } else {
            Err(OpticsError::InvalidWavevector(q))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Pair of reflection amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reflection {
    pub s: f64,
    pub p: f64,
}

impl Reflection {
    pub const NONE: Self = Self { s: 0.0, p: 0.0 };
    pub const PERFECT: Self = Self { s: -1.0, p: 1.0 };
}

/// Decay constant `sqrt(eps xi^2 / c^2 + Q^2)` in rad/m.
pub fn kappa(eps: f64, xi: Frequency, q: TransverseWavevector) -> f64 {
    kappa_raw(eps, xi.rad_per_s(), q.value())
}

#[inline]
fn kappa_raw(eps: f64, xi: f64, q: f64) -> f64 {
    let k0 = xi / SPEED_OF_LIGHT;
    (eps * k0 * k0 + q * q).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Medium {
    Dielectric(f64),
    PerfectConductor,
}

/// Imaginary-axis dielectric values of a stack at one frequency. Reusable for
/// any number of wavevectors.
#[derive(Debug, Clone, PartialEq)]
pub struct StackResponse {
    xi: f64,
    films: Vec<(f64, f64)>,
    substrate: Medium,
}

impl StackResponse {
    /// Builds a response directly from dielectric values: `films` holds
    /// `(thickness, eps)` from the vacuum side inwards.
    pub fn from_values(xi: Frequency, films: Vec<(f64, f64)>, substrate: Medium) -> Self {
        Self {
            xi: xi.rad_per_s(),
            films,
            substrate,
        }
    }

    pub fn reflection(&self, q: TransverseWavevector) -> Reflection {
        self.reflection_raw(q.value())
    }

    pub(crate) fn reflection_raw(&self, q: f64) -> Reflection {
        let xi = self.xi;
        // Innermost interface first: last film (or vacuum) against substrate.
        let (mut outer_eps, mut outer_kappa) = match self.films.last() {
            Some(&(_, eps)) => (eps, kappa_raw(eps, xi, q)),
            None => (1.0, kappa_raw(1.0, xi, q)),
        };
        let mut r = match self.substrate {
            Medium::PerfectConductor => Reflection::PERFECT,
            Medium::Dielectric(eps) => {
                interface(outer_eps, outer_kappa, eps, kappa_raw(eps, xi, q))
            }
        };
        for i in (0..self.films.len()).rev() {
            let (thickness, eps) = self.films[i];
            let film_kappa = outer_kappa;
            (outer_eps, outer_kappa) = if i == 0 {
                (1.0, kappa_raw(1.0, xi, q))
            } else {
                let e = self.films[i - 1].1;
                (e, kappa_raw(e, xi, q))
            };
            let front = interface(outer_eps, outer_kappa, eps, film_kappa);
            let x = (-2.0 * film_kappa * thickness).exp();
            r = Reflection {
                s: combine(front.s, r.s, x),
                p: combine(front.p, r.p, x),
            };
        }
        r
    }
}

#[inline]
fn combine(front: f64, behind: f64, x: f64) -> f64 {
    (front + behind * x) / (1.0 + front * behind * x)
}

#[inline]
fn interface(eps_i: f64, kappa_i: f64, eps_j: f64, kappa_j: f64) -> Reflection {
    let s_den = kappa_i + kappa_j;
    let p_num = eps_j * kappa_i - eps_i * kappa_j;
    let p_den = eps_j * kappa_i + eps_i * kappa_j;
    Reflection {
        s: if s_den > 0.0 {
            (kappa_i - kappa_j) / s_den
        } else {
            0.0
        },
        p: if p_den > 0.0 { p_num / p_den } else { 0.0 },
    }
}

/// Reflection amplitudes of a single vacuum/medium interface.
pub fn fresnel_halfspace(
    model: &DielectricModel,
    xi: Frequency,
    q: TransverseWavevector,
    quad: &QuadratureConfig,
    mode: ImagAxisMode,
) -> Result<Reflection, OpticsError> {
    reflect_stack(&LayerStack::half_space(*model), xi, q, quad, mode)
}

/// Reflection amplitudes of a film stack seen from the vacuum gap.
pub fn reflect_stack(
    stack: &LayerStack,
    xi: Frequency,
    q: TransverseWavevector,
    quad: &QuadratureConfig,
    mode: ImagAxisMode,
) -> Result<Reflection, OpticsError> {
    match stack.substrate {
        DielectricModel::PerfectConductor if stack.layers.is_empty() => Ok(Reflection::PERFECT),
        DielectricModel::Vacuum if stack.layers.is_empty() => Ok(Reflection::NONE),
        _ => Ok(stack.response(xi, quad, mode)?.reflection(q)),
    }
}
