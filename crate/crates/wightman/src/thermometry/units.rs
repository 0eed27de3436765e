//! SI conversions. Everything else in the library is in natural units
//! (c = ħ = k_B = 1); this is the only place physical constants appear.

use super::ThermometryError;

/// Speed of light, m/s (exact).
pub const C_LIGHT: f64 = 299_792_458.0;
/// Reduced Planck constant, J·s (CODATA 2018, from the exact h = 6.62607015e−34).
pub const HBAR: f64 = 1.054_571_817_646_16e-34;
/// Boltzmann constant, J/K (exact).
pub const K_BOLTZMANN: f64 = 1.380_649e-23;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitSystem {
    /// a in inverse length (or inverse time), T in the same inverse unit.
    Natural,
    /// a in m/s², T in kelvin.
    Si,
}

/// Temperature seen by a uniformly accelerated detector:
/// T = a/2π in natural units, T = ħa/(2πck_B) in SI.
pub fn unruh_temperature(a: f64, units: UnitSystem) -> Result<f64, ThermometryError> {
    if a <= 0.0 || !a.is_finite() {
        return Err(ThermometryError::NonPositiveAcceleration(a));
    }
    Ok(match units {
        UnitSystem::Natural => a / std::f64::consts::TAU,
        UnitSystem::Si => HBAR * a / (std::f64::consts::TAU * C_LIGHT * K_BOLTZMANN),
    })
}

/// Inverse map: the acceleration producing a given Unruh temperature.
pub fn acceleration_for_temperature(t: f64, units: UnitSystem) -> Result<f64, ThermometryError> {
    if t <= 0.0 || !t.is_finite() {
        return Err(ThermometryError::NonPositiveAcceleration(t));
    }
    Ok(match units {
        UnitSystem::Natural => std::f64::consts::TAU * t,
        UnitSystem::Si => std::f64::consts::TAU * C_LIGHT * K_BOLTZMANN * t / HBAR,
    })
}

/// SI acceleration (m/s²) to natural units with lengths in meters: a/c² (1/m).
pub fn si_acceleration_to_natural(a_si: f64) -> f64 {
    a_si / (C_LIGHT * C_LIGHT)
}
