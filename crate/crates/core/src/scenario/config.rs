//! Scenario files: TOML with nested sections, SI units spelled in key names.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::materials::{Axis, MaterialDb};

use super::report;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub major_radius_m: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rim_radius_m: Option<f64>,
    pub thickness_m: f64,
    /// Disk temperature for index evaluation [K].
    #[serde(default = "default_disk_temperature_k")]
    pub disk_temperature_k: f64,
}

fn default_disk_temperature_k() -> f64 {
    295.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MaterialConfig {
    /// Resonator material name in the dispersion database.
    pub resonator: String,
    pub resonator_axis: Axis,
    /// Prism material name.
    pub prism: String,
    /// Replacement dispersion database; relative paths resolve against the
    /// scenario file location.
    pub data_file: Option<PathBuf>,
}

impl Default for MaterialConfig {
    fn default() -> Self {
        MaterialConfig {
            resonator: "linbo3".to_string(),
            resonator_axis: Axis::Extraordinary,
            prism: "diamond".to_string(),
            data_file: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PumpConfig {
    pub wavelength_m: f64,
    pub power_w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MicrowaveConfig {
    pub frequency_hz: f64,
    pub power_w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpticsConfig {
    /// Loaded linewidth of the pump mode [Hz]; mutually exclusive with `q_factor`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loaded_linewidth_hz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_factor: Option<f64>,
    /// Coupling ratio `G_c / G_abs`.
    pub coupling_ratio: f64,
    /// Measured free spectral range [Hz]; when present, phase matching and
    /// sideband targeting use this grid instead of the computed FSR.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measured_fsr_hz: Option<f64>,
    /// Broadband insertion loss applied to emitted transmission spectra [dB].
    #[serde(default)]
    pub insertion_loss_db: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConversionModelConfig {
    pub cooperativity: f64,
    pub microwave_coupling_rate_hz: f64,
    pub microwave_absorption_rate_hz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConversionConfig {
    /// Measured per-sideband power conversion efficiency; mutually exclusive
    /// with `model`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power_efficiency_per_sideband: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ConversionModelConfig>,
    /// Offset of the sideband modes beyond the nearest exact FSR multiple [Hz].
    #[serde(default = "default_dispersion_offset_hz")]
    pub dispersion_offset_hz: f64,
}

fn default_dispersion_offset_hz() -> f64 {
    260e6
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectionConfig {
    pub temperature_k: f64,
    pub sampling_time_s: f64,
    pub resolution_bandwidth_hz: f64,
    pub snr_db: f64,
    /// Thermal NEP bound factor: 1 (equipartition) or 2 (all-resonant).
    pub noise_factor: u8,
    /// Optical Q assumed for the counting-bandwidth projection; the loaded
    /// linewidth is used when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projected_q_factor: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpectrumConfig {
    /// Flat instrumental noise floor per resolution bin [W].
    pub noise_floor_w: f64,
}

/// A reported value the generated report compares against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceEntry {
    pub value: f64,
    pub tol_rel: f64,
}

pub type ReferenceMap = BTreeMap<String, ReferenceEntry>;

/// A complete converter scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub geometry: GeometryConfig,
    #[serde(default)]
    pub material: MaterialConfig,
    pub pump: PumpConfig,
    pub microwave: MicrowaveConfig,
    pub optics: OpticsConfig,
    pub conversion: ConversionConfig,
    pub detection: DetectionConfig,
    #[serde(default)]
    pub spectrum: SpectrumConfig,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub references: ReferenceMap,
}

impl Scenario {
    /// Parses and validates a scenario from TOML text.
    pub fn parse(text: &str) -> Result<Self> {
        let scenario: Scenario =
            toml::from_str(text).map_err(|e| Error::config(format!("scenario: {e}")))?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.geometry;
        require_positive("geometry.major_radius_m", g.major_radius_m)?;
        require_positive("geometry.thickness_m", g.thickness_m)?;
        require_positive("geometry.disk_temperature_k", g.disk_temperature_k)?;
        if let Some(r) = g.rim_radius_m {
            require_positive("geometry.rim_radius_m", r)?;
            if r > g.major_radius_m {
                return Err(Error::config(
                    "geometry.rim_radius_m exceeds geometry.major_radius_m".to_string(),
                ));
            }
        }

        require_positive("pump.wavelength_m", self.pump.wavelength_m)?;
        require_non_negative("pump.power_w", self.pump.power_w)?;
        require_positive("microwave.frequency_hz", self.microwave.frequency_hz)?;
        require_non_negative("microwave.power_w", self.microwave.power_w)?;

        let o = &self.optics;
        match (o.loaded_linewidth_hz, o.q_factor) {
            (Some(_), Some(_)) => {
                return Err(Error::config(
                    "optics.loaded_linewidth_hz and optics.q_factor are mutually exclusive; give exactly one".to_string(),
                ))
            }
            (None, None) => {
                return Err(Error::config(
                    "one of optics.loaded_linewidth_hz or optics.q_factor is required".to_string(),
                ))
            }
            (Some(v), None) => require_positive("optics.loaded_linewidth_hz", v)?,
            (None, Some(v)) => require_positive("optics.q_factor", v)?,
        }
        require_non_negative("optics.coupling_ratio", o.coupling_ratio)?;
        if let Some(v) = o.measured_fsr_hz {
            require_positive("optics.measured_fsr_hz", v)?;
        }
        require_non_negative("optics.insertion_loss_db", o.insertion_loss_db)?;

        let c = &self.conversion;
        match (&c.power_efficiency_per_sideband, &c.model) {
            (Some(_), Some(_)) => {
                return Err(Error::config(
                    "conversion.power_efficiency_per_sideband and conversion.model are mutually exclusive; give exactly one".to_string(),
                ))
            }
            (None, None) => {
                return Err(Error::config(
                    "one of conversion.power_efficiency_per_sideband or conversion.model is required".to_string(),
                ))
            }
            (Some(eta), None) => {
                require_non_negative("conversion.power_efficiency_per_sideband", *eta)?;
                if *eta > 1.0 {
                    return Err(Error::config(
                        "conversion.power_efficiency_per_sideband exceeds unity".to_string(),
                    ));
                }
            }
            (None, Some(m)) => {
                require_non_negative("conversion.model.cooperativity", m.cooperativity)?;
                require_non_negative(
                    "conversion.model.microwave_coupling_rate_hz",
                    m.microwave_coupling_rate_hz,
                )?;
                require_non_negative(
                    "conversion.model.microwave_absorption_rate_hz",
                    m.microwave_absorption_rate_hz,
                )?;
                if m.microwave_coupling_rate_hz + m.microwave_absorption_rate_hz <= 0.0 {
                    return Err(Error::config(
                        "conversion.model microwave rates are all zero".to_string(),
                    ));
                }
            }
        }
        if !c.dispersion_offset_hz.is_finite() {
            return Err(Error::config(
                "conversion.dispersion_offset_hz must be finite".to_string(),
            ));
        }

        let d = &self.detection;
        require_positive("detection.temperature_k", d.temperature_k)?;
        require_positive("detection.sampling_time_s", d.sampling_time_s)?;
        require_positive("detection.resolution_bandwidth_hz", d.resolution_bandwidth_hz)?;
        if !d.snr_db.is_finite() {
            return Err(Error::config("detection.snr_db must be finite".to_string()));
        }
        if d.noise_factor != 1 && d.noise_factor != 2 {
            return Err(Error::config(format!(
                "detection.noise_factor must be 1 or 2, got {}",
                d.noise_factor
            )));
        }
        if let Some(q) = d.projected_q_factor {
            require_positive("detection.projected_q_factor", q)?;
        }

        require_non_negative("spectrum.noise_floor_w", self.spectrum.noise_floor_w)?;

        for (key, entry) in &self.references {
            if !report::is_report_key(key) {
                return Err(Error::config(format!(
                    "references.{key} does not name a report quantity"
                )));
            }
            if !entry.value.is_finite() || entry.value == 0.0 {
                return Err(Error::config(format!(
                    "references.{key}.value must be finite and nonzero"
                )));
            }
            require_non_negative(&format!("references.{key}.tol_rel"), entry.tol_rel)?;
        }
        Ok(())
    }

    /// The dispersion database this scenario evaluates against.
    pub fn material_database(&self) -> Result<MaterialDb> {
        match &self.material.data_file {
            Some(path) => MaterialDb::from_path(path),
            None => Ok(MaterialDb::builtin().clone()),
        }
    }
}

fn require_positive(key: &str, value: f64) -> Result<()> {
    if !(value > 0.0) || !value.is_finite() {
        return Err(Error::config(format!("{key} must be positive, got {value}")));
    }
    Ok(())
}

fn require_non_negative(key: &str, value: f64) -> Result<()> {
    if !(value >= 0.0) || !value.is_finite() {
        return Err(Error::config(format!(
            "{key} must be non-negative, got {value}"
        )));
    }
    Ok(())
}

/// Loads a scenario file, resolving any material data path against the
/// scenario's own directory.
pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
    let mut scenario = Scenario::parse(&text).map_err(|e| match e {
        Error::Config(msg) => Error::config(format!("{}: {msg}", path.display())),
        other => other,
    })?;
    if let Some(data_file) = &scenario.material.data_file {
        if data_file.is_relative() {
            if let Some(dir) = path.parent() {
                scenario.material.data_file = Some(dir.join(data_file));
            }
        }
    }
    Ok(scenario)
}
