//! Parameter sweeps: one report per grid point, assembled into a CSV table.
//!
//! Points are independent and evaluated in parallel when the `parallel`
//! feature is enabled; rows are always ordered by the swept value, so the
//! output is byte-identical either way.

use crate::error::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::config::Scenario;
use super::report::{run_report, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepScale {
    Linear,
    Log,
}

/// One sweep axis: a scenario key, a range, a scale, and a point count.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub key: String,
    pub lo: f64,
    pub hi: f64,
    pub scale: SweepScale,
    pub count: usize,
}

impl SweepSpec {
    /// Parses the CLI form `key=lo:hi:lin|log:count`.
    pub fn parse(text: &str) -> Result<Self> {
        let (key, rest) = text
            .split_once('=')
            .ok_or_else(|| Error::config(format!("sweep spec '{text}' is not key=lo:hi:scale:count")))?;
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::config(format!(
                "sweep spec '{text}' needs lo:hi:scale:count after '='"
            )));
        }
        let lo: f64 = parts[0]
            .parse()
            .map_err(|_| Error::config(format!("sweep lower bound '{}' is not a number", parts[0])))?;
        let hi: f64 = parts[1]
            .parse()
            .map_err(|_| Error::config(format!("sweep upper bound '{}' is not a number", parts[1])))?;
        let scale = match parts[2] {
            "lin" => SweepScale::Linear,
            "log" => SweepScale::Log,
            other => {
                return Err(Error::config(format!(
                    "sweep scale must be lin or log, got '{other}'"
                )))
            }
        };
        let count: usize = parts[3]
            .parse()
            .map_err(|_| Error::config(format!("sweep count '{}' is not an integer", parts[3])))?;
        Ok(SweepSpec {
            key: key.to_string(),
            lo,
            hi,
            scale,
            count,
        })
    }

    fn points(&self) -> Result<Vec<f64>> {
        if self.count < 2 {
            return Err(Error::config(format!(
                "sweep count must be at least 2, got {}",
                self.count
            )));
        }
        if !self.lo.is_finite() || !self.hi.is_finite() {
            return Err(Error::config("sweep bounds must be finite".to_string()));
        }
        let n = self.count;
        match self.scale {
            SweepScale::Linear => Ok((0..n)
                .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (n - 1) as f64)
                .collect()),
            SweepScale::Log => {
                if !(self.lo > 0.0) || !(self.hi > 0.0) {
                    return Err(Error::config(
                        "log-scale sweep bounds must be positive".to_string(),
                    ));
                }
                let (la, lb) = (self.lo.ln(), self.hi.ln());
                Ok((0..n)
                    .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
                    .collect())
            }
        }
    }
}

/// Applies a swept value to a scenario key. Setting one member of a mutually
/// exclusive pair clears the other.
pub fn set_numeric_key(scenario: &mut Scenario, key: &str, value: f64) -> Result<()> {
    match key {
        "geometry.major_radius_m" => scenario.geometry.major_radius_m = value,
        "geometry.rim_radius_m" => scenario.geometry.rim_radius_m = Some(value),
        "geometry.thickness_m" => scenario.geometry.thickness_m = value,
        "geometry.disk_temperature_k" => scenario.geometry.disk_temperature_k = value,
        "pump.wavelength_m" => scenario.pump.wavelength_m = value,
        "pump.power_w" => scenario.pump.power_w = value,
        "microwave.frequency_hz" => scenario.microwave.frequency_hz = value,
        "microwave.power_w" => scenario.microwave.power_w = value,
        "optics.loaded_linewidth_hz" => {
            scenario.optics.loaded_linewidth_hz = Some(value);
            scenario.optics.q_factor = None;
        }
        "optics.q_factor" => {
            scenario.optics.q_factor = Some(value);
            scenario.optics.loaded_linewidth_hz = None;
        }
        "optics.coupling_ratio" => scenario.optics.coupling_ratio = value,
        "optics.measured_fsr_hz" => scenario.optics.measured_fsr_hz = Some(value),
        "optics.insertion_loss_db" => scenario.optics.insertion_loss_db = value,
        "conversion.power_efficiency_per_sideband" => {
            scenario.conversion.power_efficiency_per_sideband = Some(value);
            scenario.conversion.model = None;
        }
        "conversion.dispersion_offset_hz" => scenario.conversion.dispersion_offset_hz = value,
        "detection.temperature_k" => scenario.detection.temperature_k = value,
        "detection.sampling_time_s" => scenario.detection.sampling_time_s = value,
        "detection.resolution_bandwidth_hz" => {
            scenario.detection.resolution_bandwidth_hz = value
        }
        "detection.snr_db" => scenario.detection.snr_db = value,
        "detection.projected_q_factor" => scenario.detection.projected_q_factor = Some(value),
        "spectrum.noise_floor_w" => scenario.spectrum.noise_floor_w = value,
        other => {
            return Err(Error::config(format!(
                "'{other}' is not a sweepable numeric scenario key"
            )))
        }
    }
    Ok(())
}

fn evaluate_point(base: &Scenario, key: &str, value: f64) -> Result<(f64, Report)> {
    let mut scenario = base.clone();
    set_numeric_key(&mut scenario, key, value)?;
    let report = run_report(&scenario)?;
    Ok((value, report))
}

fn assemble_csv(spec: &SweepSpec, mut rows: Vec<(f64, Report)>) -> Result<String> {
    rows.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite sweep values"));
    let first = &rows[0].1;
    let columns: Vec<&'static str> = first.quantities.iter().map(|q| q.key).collect();
    for (value, report) in &rows {
        let keys: Vec<&'static str> = report.quantities.iter().map(|q| q.key).collect();
        if keys != columns {
            return Err(Error::config(format!(
                "sweeping {} to {value} changes the report row set; the sweep table needs a fixed \
                 column set",
                spec.key
            )));
        }
    }
    let mut out = String::new();
    out.push_str(&spec.key.replace('.', "_"));
    for column in &columns {
        out.push(',');
        out.push_str(column);
    }
    out.push('\n');
    for (value, report) in &rows {
        out.push_str(&format!("{value:.9e}"));
        for q in &report.quantities {
            out.push_str(&format!(",{:.9e}", q.value));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Runs the sweep on the current thread.
pub fn run_sweep_sequential(scenario: &Scenario, spec: &SweepSpec) -> Result<String> {
    scenario.validate()?;
    let points = spec.points()?;
    let rows = points
        .iter()
        .map(|&v| evaluate_point(scenario, &spec.key, v))
        .collect::<Result<Vec<_>>>()?;
    assemble_csv(spec, rows)
}

/// Runs the sweep, fanning points out across the rayon pool.
#[cfg(feature = "parallel")]
pub fn run_sweep(scenario: &Scenario, spec: &SweepSpec) -> Result<String> {
    scenario.validate()?;
    let points = spec.points()?;
    let rows = points
        .par_iter()
        .map(|&v| evaluate_point(scenario, &spec.key, v))
        .collect::<Result<Vec<_>>>()?;
    assemble_csv(spec, rows)
}

/// Sequential fallback used when the `parallel` feature is disabled.
#[cfg(not(feature = "parallel"))]
pub fn run_sweep(scenario: &Scenario, spec: &SweepSpec) -> Result<String> {
    run_sweep_sequential(scenario, spec)
}
