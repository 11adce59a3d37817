//! Synthetic spectra: the resonance transmission dip and the optical output
//! spectrum with its sidebands.

use crate::coupling::transmission;
use crate::error::{Error, Result};

use super::config::Scenario;
use super::report::derive;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    /// Transmission past the coupling prism versus laser detuning.
    Transmission,
    /// Optical output power per resolution bin versus offset from the pump.
    OutputSpectrum,
}

/// Abscissa specification for an emitted spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// Full span [Hz], centered on zero offset.
    pub span_hz: f64,
    pub points: usize,
}

/// An emitted trace with its acquisition metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTrace {
    pub kind: SpectrumKind,
    /// Offset grid [Hz]: detuning for transmission, offset from the pump for
    /// the output spectrum. Strictly increasing.
    pub offset_hz: Vec<f64>,
    /// Dimensionless transmission, or W per resolution bin.
    pub ordinate: Vec<f64>,
    pub rbw_hz: Option<f64>,
    pub insertion_loss_db: f64,
    pub noise_floor_w: Option<f64>,
    /// Set when the grid under-resolves the narrowest feature.
    pub warning: Option<String>,
}

impl SpectrumTrace {
    /// CSV rendering: metadata comment lines, a header row, then one row per
    /// grid point in scientific notation.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let (kind, column) = match self.kind {
            SpectrumKind::Transmission => ("transmission", "transmission"),
            SpectrumKind::OutputSpectrum => ("output-spectrum", "power_w"),
        };
        out.push_str(&format!("# kind = {kind}\n"));
        if let Some(rbw) = self.rbw_hz {
            out.push_str(&format!("# rbw_hz = {rbw:.9e}\n"));
        }
        out.push_str(&format!(
            "# insertion_loss_db = {:.9e}\n",
            self.insertion_loss_db
        ));
        if let Some(floor) = self.noise_floor_w {
            out.push_str(&format!("# noise_floor_w = {floor:.9e}\n"));
        }
        if let Some(warning) = &self.warning {
            out.push_str(&format!("# warning = {warning}\n"));
        }
        out.push_str(&format!("offset_hz,{column}\n"));
        for (x, y) in self.offset_hz.iter().zip(&self.ordinate) {
            out.push_str(&format!("{x:.9e},{y:.9e}\n"));
        }
        out
    }
}

fn grid(span_hz: f64, points: usize) -> Result<Vec<f64>> {
    if !(span_hz > 0.0) {
        return Err(Error::invalid(format!(
            "grid span must be positive, got {span_hz} Hz"
        )));
    }
    if points < 2 {
        return Err(Error::invalid(format!(
            "grid needs at least 2 points, got {points}"
        )));
    }
    let step = span_hz / (points - 1) as f64;
    Ok((0..points)
        .map(|i| -span_hz / 2.0 + step * i as f64)
        .collect())
}

fn resolution_warning(feature_hz: f64, step_hz: f64, feature_name: &str) -> Option<String> {
    let points_per_feature = feature_hz / step_hz;
    if points_per_feature < 10.0 {
        Some(format!(
            "grid resolves the {feature_name} with only {points_per_feature:.2} points; at least 10 are recommended"
        ))
    } else {
        None
    }
}

/// Emits a synthetic spectrum for the scenario.
pub fn emit_spectrum(scenario: &Scenario, kind: SpectrumKind, grid_spec: GridSpec) -> Result<SpectrumTrace> {
    scenario.validate()?;
    let d = derive(scenario)?;
    let offsets = grid(grid_spec.span_hz, grid_spec.points)?;
    let step = grid_spec.span_hz / (grid_spec.points - 1) as f64;

    match kind {
        SpectrumKind::Transmission => {
            let loss_factor = 10f64.powf(-scenario.optics.insertion_loss_db / 10.0);
            let ordinate = offsets
                .iter()
                .map(|&delta| {
                    transmission(delta, d.gamma_abs_hz, d.gamma_c_hz).map(|t| t * loss_factor)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SpectrumTrace {
                kind,
                offset_hz: offsets,
                ordinate,
                rbw_hz: None,
                insertion_loss_db: scenario.optics.insertion_loss_db,
                noise_floor_w: None,
                warning: resolution_warning(d.loaded_linewidth_hz, step, "resonance linewidth"),
            })
        }
        SpectrumKind::OutputSpectrum => {
            let rbw = scenario.detection.resolution_bandwidth_hz;
            let floor = scenario.spectrum.noise_floor_w;
            let lines = [
                (0.0, scenario.pump.power_w),
                (scenario.microwave.frequency_hz, d.budget.sideband_power_w),
                (-scenario.microwave.frequency_hz, d.budget.sideband_power_w),
            ];
            let ordinate = offsets
                .iter()
                .map(|&x| {
                    let mut power = floor;
                    for (center, line_power) in lines {
                        if (x - center).abs() <= rbw / 2.0 {
                            power += line_power;
                        }
                    }
                    power
                })
                .collect();
            Ok(SpectrumTrace {
                kind,
                offset_hz: offsets,
                ordinate,
                rbw_hz: Some(rbw),
                insertion_loss_db: scenario.optics.insertion_loss_db,
                noise_floor_w: Some(floor),
                warning: resolution_warning(rbw, step, "resolution bandwidth"),
            })
        }
    }
}
