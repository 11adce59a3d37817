//! Disk resonator geometry and its optical mode spectrum.
//!
//! Rate convention: every linewidth and rate in this crate is a full width in
//! ordinary frequency (Hz). The loaded linewidth of a mode is the sum of its
//! intrinsic and coupling rates.

use std::f64::consts::PI;

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};
use crate::materials::DispersionModel;

/// Coefficient of the `(L/2)^(1/3)` term in the effective mode number of the
/// fundamental radial mode.
const GEOMETRIC_CORRECTION_COEFF: f64 = 1.8557;

const FIXED_POINT_MAX_ITER: usize = 100;
const FIXED_POINT_TOL_HZ: f64 = 1.0;

/// Disk geometry together with the material law of its optical path.
#[derive(Debug, Clone)]
pub struct ResonatorGeometry {
    /// Disk major radius [m].
    pub major_radius_m: f64,
    /// Rim curvature radius [m], when known.
    pub rim_radius_m: Option<f64>,
    /// Disk thickness [m].
    pub thickness_m: f64,
    /// Index law seen by the circulating mode (extraordinary axis for z-cut use).
    pub material: DispersionModel,
}

impl ResonatorGeometry {
    pub fn new(
        major_radius_m: f64,
        rim_radius_m: Option<f64>,
        thickness_m: f64,
        material: DispersionModel,
    ) -> Result<Self> {
        if !(major_radius_m > 0.0) {
            return Err(Error::invalid(format!(
                "major radius must be positive, got {major_radius_m} m"
            )));
        }
        if !(thickness_m > 0.0) {
            return Err(Error::invalid(format!(
                "thickness must be positive, got {thickness_m} m"
            )));
        }
        if let Some(r) = rim_radius_m {
            if !(r > 0.0 && r <= major_radius_m) {
                return Err(Error::invalid(format!(
                    "rim radius must satisfy 0 < r <= R, got r = {r} m, R = {major_radius_m} m"
                )));
            }
        }
        Ok(ResonatorGeometry {
            major_radius_m,
            rim_radius_m,
            thickness_m,
            material,
        })
    }

    /// Free spectral range [Hz] at the given wavelength and temperature.
    pub fn free_spectral_range(&self, wavelength_m: f64, temperature_k: f64) -> Result<f64> {
        let n = self.material.refractive_index(wavelength_m, temperature_k)?;
        fsr_from_index(self.major_radius_m, n)
    }
}

/// `c / (2 pi R n)` [Hz].
pub fn fsr_from_index(major_radius_m: f64, index: f64) -> Result<f64> {
    if !(major_radius_m > 0.0) {
        return Err(Error::invalid(format!(
            "major radius must be positive, got {major_radius_m} m"
        )));
    }
    if !(index > 0.0) {
        return Err(Error::invalid(format!("index must be positive, got {index}")));
    }
    Ok(SPEED_OF_LIGHT / (2.0 * PI * major_radius_m * index))
}

/// Optical frequency [Hz] of a vacuum wavelength [m].
pub fn optical_frequency(wavelength_m: f64) -> Result<f64> {
    if !(wavelength_m > 0.0) {
        return Err(Error::invalid(format!(
            "wavelength must be positive, got {wavelength_m} m"
        )));
    }
    Ok(SPEED_OF_LIGHT / wavelength_m)
}

/// `Q = nu / delta_nu`.
pub fn quality_factor(frequency_hz: f64, linewidth_hz: f64) -> Result<f64> {
    if !(frequency_hz > 0.0) {
        return Err(Error::invalid(format!(
            "frequency must be positive, got {frequency_hz} Hz"
        )));
    }
    if !(linewidth_hz > 0.0) {
        return Err(Error::invalid(format!(
            "linewidth must be positive, got {linewidth_hz} Hz"
        )));
    }
    Ok(frequency_hz / linewidth_hz)
}

/// Inverse of [`quality_factor`]: `delta_nu = nu / Q`.
pub fn linewidth_from_q(frequency_hz: f64, q: f64) -> Result<f64> {
    if !(frequency_hz > 0.0) {
        return Err(Error::invalid(format!(
            "frequency must be positive, got {frequency_hz} Hz"
        )));
    }
    if !(q > 0.0) {
        return Err(Error::invalid(format!("Q must be positive, got {q}")));
    }
    Ok(frequency_hz / q)
}

/// An optical whispering-gallery mode labeled by its orbital momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpticalMode {
    pub orbital_momentum: i64,
    pub frequency_hz: f64,
    /// Intrinsic (absorption) rate [Hz].
    pub intrinsic_rate_hz: f64,
    /// External coupling rate [Hz].
    pub coupling_rate_hz: f64,
}

impl OpticalMode {
    pub fn new(
        orbital_momentum: i64,
        frequency_hz: f64,
        intrinsic_rate_hz: f64,
        coupling_rate_hz: f64,
    ) -> Result<Self> {
        if orbital_momentum < 1 {
            return Err(Error::invalid(format!(
                "orbital momentum must be >= 1, got {orbital_momentum}"
            )));
        }
        if !(frequency_hz > 0.0) {
            return Err(Error::invalid(format!(
                "mode frequency must be positive, got {frequency_hz} Hz"
            )));
        }
        if intrinsic_rate_hz < 0.0 || coupling_rate_hz < 0.0 {
            return Err(Error::invalid(
                "mode rates must be non-negative".to_string(),
            ));
        }
        Ok(OpticalMode {
            orbital_momentum,
            frequency_hz,
            intrinsic_rate_hz,
            coupling_rate_hz,
        })
    }

    /// Loaded linewidth [Hz]: intrinsic plus coupling rate.
    pub fn loaded_linewidth_hz(&self) -> f64 {
        self.intrinsic_rate_hz + self.coupling_rate_hz
    }

    pub fn quality_factor(&self) -> Result<f64> {
        quality_factor(self.frequency_hz, self.loaded_linewidth_hz())
    }
}

/// Which dispersion contributions `mode_frequency` includes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeDispersion {
    /// Order 0: material dispersion only, index solved self-consistently.
    MaterialOnly,
    /// Order 1: adds the leading geometric correction proportional to `L^(1/3)`.
    WithGeometricCorrection,
}

fn effective_mode_number(l: i64, dispersion: ModeDispersion) -> f64 {
    let l = l as f64;
    match dispersion {
        ModeDispersion::MaterialOnly => l,
        ModeDispersion::WithGeometricCorrection => {
            l + GEOMETRIC_CORRECTION_COEFF * (l / 2.0).cbrt()
        }
    }
}

/// Frequency [Hz] of the mode with orbital momentum `l`, solving
/// `nu = L_eff c / (2 pi R n(c/nu, T))` by fixed-point iteration to 1 Hz.
pub fn mode_frequency(
    geometry: &ResonatorGeometry,
    l: i64,
    temperature_k: f64,
    dispersion: ModeDispersion,
) -> Result<f64> {
    if l < 1 {
        return Err(Error::invalid(format!(
            "orbital momentum must be >= 1, got {l}"
        )));
    }
    let l_eff = effective_mode_number(l, dispersion);
    let circumference_index = 2.0 * PI * geometry.major_radius_m;

    // Start from the index at 1560 nm, clamped into the law's validity window.
    let (lo_um, hi_um) = geometry.material.validity_um;
    let start_wavelength_m = 1.56e-6_f64.clamp(lo_um * 1e-6, hi_um * 1e-6);
    let n0 = geometry
        .material
        .refractive_index(start_wavelength_m, temperature_k)?;
    let mut nu = l_eff * SPEED_OF_LIGHT / (circumference_index * n0);

    for _ in 0..FIXED_POINT_MAX_ITER {
        let wavelength = SPEED_OF_LIGHT / nu;
        let n = geometry.material.refractive_index(wavelength, temperature_k)?;
        let next = l_eff * SPEED_OF_LIGHT / (circumference_index * n);
        if (next - nu).abs() <= FIXED_POINT_TOL_HZ {
            return Ok(next);
        }
        nu = next;
    }
    Err(Error::numeric(format!(
        "mode frequency fixed point did not converge within {FIXED_POINT_MAX_ITER} iterations for L = {l}"
    )))
}

/// Second difference `nu(L+1) - 2 nu(L) + nu(L-1)` [Hz] of the mode spectrum.
pub fn local_dispersion(
    geometry: &ResonatorGeometry,
    l: i64,
    temperature_k: f64,
    dispersion: ModeDispersion,
) -> Result<f64> {
    if l < 2 {
        return Err(Error::invalid(format!(
            "orbital momentum must be >= 2 for a second difference, got {l}"
        )));
    }
    let hi = mode_frequency(geometry, l + 1, temperature_k, dispersion)?;
    let mid = mode_frequency(geometry, l, temperature_k, dispersion)?;
    let lo = mode_frequency(geometry, l - 1, temperature_k, dispersion)?;
    Ok(hi - 2.0 * mid + lo)
}
