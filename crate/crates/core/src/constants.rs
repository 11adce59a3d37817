//! Physical constants (CODATA 2018 exact values, SI).

use std::f64::consts::PI;

/// Speed of light in vacuum [m/s].
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Planck constant [J s].
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Reduced Planck constant [J s], derived so that `HBAR * 2 * PI == PLANCK`.
pub const HBAR: f64 = PLANCK / (2.0 * PI);

/// Boltzmann constant [J/K].
pub const BOLTZMANN: f64 = 1.380_649e-23;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hbar_consistent_with_planck() {
        let rel = (HBAR * 2.0 * PI - PLANCK).abs() / PLANCK;
        assert!(rel < 1e-12, "hbar*2pi deviates from h by {rel}");
    }
}
