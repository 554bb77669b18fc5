//! Casimir pressure between layered metallic mirrors described by Drude-type
//! dielectric functions, including a two-carrier model in which the damping
//! rate depends on frequency.
//!
//! The crate is organised bottom-up:
//!
//! - [`units`]: physical constants and the eV conversion used everywhere.
//! - [`dielectric`]: damping functions and dielectric functions on the real
//!   and imaginary frequency axes.
//! - [`quadrature`]: adaptive Gauss-Kronrod integration.
//! - [`optics`]: s/p reflection amplitudes of half-spaces and film stacks at
//!   imaginary frequency.
//! - [`lifshitz`]: the zero-temperature reduction factor `eta = F / F0`,
//!   separation sweeps and percent differences between material models.
//!
//! All frequencies are angular frequencies in rad/s and all lengths are in
//! metres.

pub mod dielectric;
pub mod lifshitz;
pub mod optics;
pub mod quadrature;
pub mod units;

pub use dielectric::{
    DielectricError, DielectricModel, DrudeParams, Frequency, ImagAxisMode, PlasmaParams,
    TheyeDrudeParams, TheyeParams, TwoCarrierParams,
};
pub use lifshitz::{EtaResult, LifshitzError, PlateConfig, Spacing, SweepSpec};
pub use optics::{Layer, LayerStack, OpticsError, Reflection, TransverseWavevector};
pub use quadrature::{QuadratureConfig, QuadratureError, QuadratureResult};
