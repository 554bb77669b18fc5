//! Physical constants (CODATA 2018 exact or recommended values).

/// Angular frequency of 1 eV in rad/s. Every eV-to-rad/s conversion in the
/// crate goes through this constant.
pub const EV_TO_RAD_PER_S: f64 = 1.519267e15;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Converts an energy in eV to an angular frequency in rad/s.
#[inline]
pub fn ev_to_rad_per_s(ev: f64) -> f64 {
    ev * EV_TO_RAD_PER_S
}

/// Converts an angular frequency in rad/s to eV.
#[inline]
pub fn rad_per_s_to_ev(omega: f64) -> f64 {
    omega / EV_TO_RAD_PER_S
}
