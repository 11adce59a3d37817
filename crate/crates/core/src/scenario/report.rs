//! End-to-end report generation: every derived quantity with its unit, the
//! operation that produced it, and a comparison against the scenario's
//! reference values.

use crate::conversion::{
    manley_rowe_inverse, phase_match_order, sideband_asymmetry, sideband_frequencies,
    sideband_momenta, steady_state_efficiency, ConversionBudget, MicrowaveMode, ModeTriple,
    PhaseMatch,
};
use crate::coupling::{
    fringe_axes_ratio, optimal_rim_radius, phase_match_angle, rates_from_linewidth, transmission,
};
use crate::detection::{
    counting_feasible, effective_temperature, frequency_to_temperature, max_counting_bandwidth,
    min_countable_frequency, nep_from_measurement, nep_gap_factor, thermal_nep_density,
    DetectionBudget, ThermalNoiseFactor,
};
use crate::error::{Error, Result};
use crate::resonator::{
    linewidth_from_q, optical_frequency, quality_factor, OpticalMode, ResonatorGeometry,
};

use super::config::{ReferenceEntry, Scenario};

/// Comparison of a computed value against a configured reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Comparison {
    NoReference,
    Match {
        reference: f64,
        tol_rel: f64,
        deviation_rel: f64,
    },
    KnownDiscrepancy {
        reference: f64,
        tol_rel: f64,
        deviation_rel: f64,
    },
}

impl Comparison {
    fn against(value: f64, entry: Option<&ReferenceEntry>) -> Comparison {
        match entry {
            None => Comparison::NoReference,
            Some(r) => {
                let deviation_rel = (value - r.value) / r.value.abs();
                if deviation_rel.abs() <= r.tol_rel {
                    Comparison::Match {
                        reference: r.value,
                        tol_rel: r.tol_rel,
                        deviation_rel,
                    }
                } else {
                    Comparison::KnownDiscrepancy {
                        reference: r.value,
                        tol_rel: r.tol_rel,
                        deviation_rel,
                    }
                }
            }
        }
    }

    pub fn flag(&self) -> &'static str {
        match self {
            Comparison::NoReference => "no-reference",
            Comparison::Match { .. } => "match",
            Comparison::KnownDiscrepancy { .. } => "known-discrepancy",
        }
    }
}

/// One derived quantity of the report.
#[derive(Debug, Clone, PartialEq)]
pub struct Quantity {
    pub key: &'static str,
    pub value: f64,
    pub unit: &'static str,
    /// Operation or expression that produced the value.
    pub op: &'static str,
    pub comparison: Comparison,
    pub note: Option<String>,
}

/// All derived quantities of one scenario, in a stable order.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub quantities: Vec<Quantity>,
}

/// Every key a report can emit; reference entries must use these names.
pub const REPORT_KEYS: &[&str] = &[
    "pump_frequency_hz",
    "resonator_index",
    "prism_index",
    "fsr_hz",
    "loaded_linewidth_hz",
    "q_factor",
    "gamma_abs_hz",
    "gamma_c_hz",
    "dip_transmission",
    "contrast",
    "incidence_angle_deg",
    "optimal_rim_radius_m",
    "rim_ratio",
    "fringe_axes_ratio",
    "l_pump",
    "l_rf",
    "phase_match_residual_hz",
    "l_antistokes",
    "l_stokes",
    "stokes_frequency_hz",
    "antistokes_frequency_hz",
    "eta_p_per_sideband",
    "eta_n_per_sideband",
    "eta_n_both",
    "sideband_power_w",
    "pump_sideband_ratio_db",
    "sideband_weight_stokes",
    "sideband_weight_antistokes",
    "nep_measured_w_per_hz",
    "nep_thermal_w_per_hz",
    "nep_efficiency_limited_w_per_hz",
    "nep_gap_factor",
    "nep_gap_factor_formula",
    "t_eff_k",
    "nep_thermal_eff_w_per_hz",
    "counting_bandwidth_hz",
    "min_countable_frequency_hz",
    "min_countable_frequency_eff_hz",
    "counting_feasible",
    "counting_feasible_eff",
    "max_counting_bandwidth_hz",
    "max_counting_bandwidth_unity_hz",
    "crossover_1thz_k",
    "signal_photon_temperature_k",
];

pub fn is_report_key(key: &str) -> bool {
    REPORT_KEYS.contains(&key)
}

impl Report {
    pub fn get(&self, key: &str) -> Option<&Quantity> {
        self.quantities.iter().find(|q| q.key == key)
    }

    pub fn value(&self, key: &str) -> Option<f64> {
        self.get(key).map(|q| q.value)
    }

    /// Renders the report as deterministic machine-parseable text.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("# sub-THz upconverter design report\n");
        out.push_str("# convention: bandwidths are ordinary frequency (Hz); photon energy is h*nu\n");
        out.push_str(
            "# model limitation: resonance contrast is attributed entirely to the coupling \
             ratio; interference contributions are not modeled\n",
        );
        out.push_str("schema = 1\n");
        for q in &self.quantities {
            out.push_str(&format!(
                "{} = {:.9e} [{}] op={} flag={}",
                q.key,
                q.value,
                q.unit,
                q.op,
                q.comparison.flag()
            ));
            match q.comparison {
                Comparison::NoReference => {}
                Comparison::Match {
                    reference,
                    tol_rel,
                    deviation_rel,
                }
                | Comparison::KnownDiscrepancy {
                    reference,
                    tol_rel,
                    deviation_rel,
                } => {
                    out.push_str(&format!(
                        " ref={reference:.9e} tol={tol_rel:.9e} dev={deviation_rel:.9e}"
                    ));
                }
            }
            if let Some(note) = &q.note {
                out.push_str(&format!(" note={note:?}"));
            }
            out.push('\n');
        }
        out
    }
}

fn at(key: &'static str, err: Error) -> Error {
    match err {
        Error::InvalidArgument(m) => Error::InvalidArgument(format!("{key}: {m}")),
        Error::Domain(m) => Error::Domain(format!("{key}: {m}")),
        Error::Numeric(m) => Error::Numeric(format!("{key}: {m}")),
        other => other,
    }
}

/// Everything the report derives once from a scenario, reused by the
/// spectrum and feasibility paths.
pub(super) struct Derived {
    pub pump_frequency_hz: f64,
    pub loaded_linewidth_hz: f64,
    pub gamma_abs_hz: f64,
    pub gamma_c_hz: f64,
    pub phase_match: PhaseMatch,
    pub mode_triple: ModeTriple,
    pub budget: ConversionBudget,
    pub power_efficiency: f64,
    pub nep_thermal_w_per_hz: f64,
    pub counting_bandwidth_hz: f64,
}

pub(super) fn derive(scenario: &Scenario) -> Result<Derived> {
    let db = scenario.material_database()?;
    let resonator_law = db.get(
        &scenario.material.resonator,
        scenario.material.resonator_axis,
    )?;
    let t_disk = scenario.geometry.disk_temperature_k;
    let geometry = ResonatorGeometry::new(
        scenario.geometry.major_radius_m,
        scenario.geometry.rim_radius_m,
        scenario.geometry.thickness_m,
        resonator_law.clone(),
    )
    .map_err(|e| at("geometry", e))?;

    let pump_frequency_hz =
        optical_frequency(scenario.pump.wavelength_m).map_err(|e| at("pump_frequency_hz", e))?;
    let fsr_hz = geometry
        .free_spectral_range(scenario.pump.wavelength_m, t_disk)
        .map_err(|e| at("fsr_hz", e))?;

    let loaded_linewidth_hz = match (scenario.optics.loaded_linewidth_hz, scenario.optics.q_factor)
    {
        (Some(v), _) => v,
        (None, Some(q)) => {
            linewidth_from_q(pump_frequency_hz, q).map_err(|e| at("loaded_linewidth_hz", e))?
        }
        (None, None) => unreachable!("validated"),
    };
    let (gamma_abs_hz, gamma_c_hz) =
        rates_from_linewidth(loaded_linewidth_hz, scenario.optics.coupling_ratio)
            .map_err(|e| at("gamma_abs_hz", e))?;

    let fsr_match_hz = scenario.optics.measured_fsr_hz.unwrap_or(fsr_hz);
    let pump_order = phase_match_order(pump_frequency_hz, fsr_hz).map_err(|e| at("l_pump", e))?;
    let phase_match =
        phase_match_order(scenario.microwave.frequency_hz, fsr_match_hz).map_err(|e| at("l_rf", e))?;
    if !phase_match.is_resonant() {
        return Err(Error::domain(format!(
            "l_rf: signal frequency {} Hz lies below half the mode spacing; no resonant order",
            scenario.microwave.frequency_hz
        )));
    }

    let pump_mode = OpticalMode::new(
        pump_order.order,
        pump_frequency_hz,
        gamma_abs_hz,
        gamma_c_hz,
    )
    .map_err(|e| at("l_pump", e))?;
    let microwave_mode = match &scenario.conversion.model {
        Some(m) => MicrowaveMode::new(
            scenario.microwave.frequency_hz,
            phase_match.order,
            m.microwave_absorption_rate_hz,
            0.0,
            m.microwave_coupling_rate_hz,
        ),
        None => MicrowaveMode::new(
            scenario.microwave.frequency_hz,
            phase_match.order,
            0.0,
            0.0,
            0.0,
        ),
    }
    .map_err(|e| at("l_rf", e))?;
    let mode_triple = ModeTriple::symmetric(pump_mode, microwave_mode, phase_match.residual_hz)
        .map_err(|e| at("l_antistokes", e))?;

    let power_efficiency = match (
        scenario.conversion.power_efficiency_per_sideband,
        &scenario.conversion.model,
    ) {
        (Some(eta_p), _) => eta_p,
        (None, Some(m)) => {
            let eta_n = steady_state_efficiency(
                m.cooperativity,
                gamma_c_hz,
                gamma_abs_hz,
                m.microwave_coupling_rate_hz,
                m.microwave_absorption_rate_hz,
            )
            .map_err(|e| at("eta_p_per_sideband", e))?;
            manley_rowe_inverse(
                eta_n,
                scenario.microwave.frequency_hz,
                mode_triple.anti_stokes.frequency_hz,
            )
            .map_err(|e| at("eta_p_per_sideband", e))?
        }
        (None, None) => unreachable!("validated"),
    };

    let budget = ConversionBudget::from_power_efficiency(
        scenario.pump.power_w,
        scenario.microwave.power_w,
        power_efficiency,
        scenario.microwave.frequency_hz,
        mode_triple.anti_stokes.frequency_hz,
    )
    .map_err(|e| at("eta_n_per_sideband", e))?;

    let nep_thermal_w_per_hz =
        thermal_nep_density(scenario.detection.temperature_k, thermal_factor(scenario))
            .map_err(|e| at("nep_thermal_w_per_hz", e))?;

    let counting_bandwidth_hz = match scenario.detection.projected_q_factor {
        Some(q) => {
            linewidth_from_q(pump_frequency_hz, q).map_err(|e| at("counting_bandwidth_hz", e))?
        }
        None => loaded_linewidth_hz,
    };

    Ok(Derived {
        pump_frequency_hz,
        loaded_linewidth_hz,
        gamma_abs_hz,
        gamma_c_hz,
        phase_match,
        mode_triple,
        budget,
        power_efficiency,
        nep_thermal_w_per_hz,
        counting_bandwidth_hz,
    })
}

pub(super) fn thermal_factor(scenario: &Scenario) -> ThermalNoiseFactor {
    match scenario.detection.noise_factor {
        1 => ThermalNoiseFactor::Equipartition,
        _ => ThermalNoiseFactor::AllResonant,
    }
}

/// Runs the full derivation chain and assembles the report.
pub fn run_report(scenario: &Scenario) -> Result<Report> {
    scenario.validate()?;
    let db = scenario.material_database()?;
    let resonator_law = db.get(
        &scenario.material.resonator,
        scenario.material.resonator_axis,
    )?;
    let prism_law = db.get_default_axis(&scenario.material.prism)?;
    let t_disk = scenario.geometry.disk_temperature_k;
    let d = derive(scenario)?;

    let refs = &scenario.references;
    let mut quantities: Vec<Quantity> = Vec::with_capacity(REPORT_KEYS.len());
    let push = |key: &'static str,
                    value: f64,
                    unit: &'static str,
                    op: &'static str,
                    note: Option<String>,
                    quantities: &mut Vec<Quantity>| {
        quantities.push(Quantity {
            key,
            value,
            unit,
            op,
            comparison: Comparison::against(value, refs.get(key)),
            note,
        });
    };

    let n_res = resonator_law
        .refractive_index(scenario.pump.wavelength_m, t_disk)
        .map_err(|e| at("resonator_index", e))?;
    let n_prism = prism_law
        .refractive_index(scenario.pump.wavelength_m, t_disk)
        .map_err(|e| at("prism_index", e))?;
    let geometry = ResonatorGeometry::new(
        scenario.geometry.major_radius_m,
        scenario.geometry.rim_radius_m,
        scenario.geometry.thickness_m,
        resonator_law.clone(),
    )?;
    let fsr_hz = geometry
        .free_spectral_range(scenario.pump.wavelength_m, t_disk)
        .map_err(|e| at("fsr_hz", e))?;

    push(
        "pump_frequency_hz",
        d.pump_frequency_hz,
        "Hz",
        "resonator.optical_frequency",
        None,
        &mut quantities,
    );
    push(
        "resonator_index",
        n_res,
        "1",
        "materials.refractive_index",
        None,
        &mut quantities,
    );
    push(
        "prism_index",
        n_prism,
        "1",
        "materials.refractive_index",
        None,
        &mut quantities,
    );
    push(
        "fsr_hz",
        fsr_hz,
        "Hz",
        "resonator.free_spectral_range",
        None,
        &mut quantities,
    );
    let linewidth_op = if scenario.optics.loaded_linewidth_hz.is_some() {
        "scenario.input"
    } else {
        "resonator.linewidth_from_q"
    };
    push(
        "loaded_linewidth_hz",
        d.loaded_linewidth_hz,
        "Hz",
        linewidth_op,
        None,
        &mut quantities,
    );
    let q_factor = quality_factor(d.pump_frequency_hz, d.loaded_linewidth_hz)
        .map_err(|e| at("q_factor", e))?;
    push(
        "q_factor",
        q_factor,
        "1",
        "resonator.quality_factor",
        None,
        &mut quantities,
    );
    push(
        "gamma_abs_hz",
        d.gamma_abs_hz,
        "Hz",
        "coupling.rates_from_linewidth",
        None,
        &mut quantities,
    );
    push(
        "gamma_c_hz",
        d.gamma_c_hz,
        "Hz",
        "coupling.rates_from_linewidth",
        None,
        &mut quantities,
    );

    let dip = transmission(0.0, d.gamma_abs_hz, d.gamma_c_hz).map_err(|e| at("dip_transmission", e))?;
    push(
        "dip_transmission",
        dip,
        "1",
        "coupling.transmission",
        None,
        &mut quantities,
    );
    push(
        "contrast",
        1.0 - dip,
        "1",
        "1 - dip_transmission",
        None,
        &mut quantities,
    );

    let theta_deg = phase_match_angle(n_res, n_prism).map_err(|e| at("incidence_angle_deg", e))?;
    push(
        "incidence_angle_deg",
        theta_deg,
        "deg",
        "coupling.phase_match_angle",
        None,
        &mut quantities,
    );
    let r_opt = optimal_rim_radius(scenario.geometry.major_radius_m, theta_deg)
        .map_err(|e| at("optimal_rim_radius_m", e))?;
    push(
        "optimal_rim_radius_m",
        r_opt,
        "m",
        "coupling.optimal_rim_radius",
        None,
        &mut quantities,
    );
    push(
        "rim_ratio",
        r_opt / scenario.geometry.major_radius_m,
        "1",
        "optimal_rim_radius_m / major_radius_m",
        None,
        &mut quantities,
    );
    let fringe = fringe_axes_ratio(scenario.geometry.major_radius_m, r_opt)
        .map_err(|e| at("fringe_axes_ratio", e))?;
    push(
        "fringe_axes_ratio",
        fringe,
        "1",
        "coupling.fringe_axes_ratio",
        None,
        &mut quantities,
    );

    push(
        "l_pump",
        d.mode_triple.pump.orbital_momentum as f64,
        "1",
        "conversion.phase_match_order",
        None,
        &mut quantities,
    );
    push(
        "l_rf",
        d.phase_match.order as f64,
        "1",
        "conversion.phase_match_order",
        None,
        &mut quantities,
    );
    push(
        "phase_match_residual_hz",
        d.phase_match.residual_hz,
        "Hz",
        "conversion.phase_match_order",
        None,
        &mut quantities,
    );
    let momenta = sideband_momenta(d.mode_triple.pump.orbital_momentum, d.phase_match.order)
        .map_err(|e| at("l_antistokes", e))?;
    push(
        "l_antistokes",
        momenta.anti_stokes as f64,
        "1",
        "conversion.sideband_momenta",
        None,
        &mut quantities,
    );
    push(
        "l_stokes",
        momenta.stokes as f64,
        "1",
        "conversion.sideband_momenta",
        None,
        &mut quantities,
    );
    let (stokes_hz, antistokes_hz) =
        sideband_frequencies(d.pump_frequency_hz, scenario.microwave.frequency_hz)
            .map_err(|e| at("stokes_frequency_hz", e))?;
    push(
        "stokes_frequency_hz",
        stokes_hz,
        "Hz",
        "conversion.sideband_frequencies",
        None,
        &mut quantities,
    );
    push(
        "antistokes_frequency_hz",
        antistokes_hz,
        "Hz",
        "conversion.sideband_frequencies",
        None,
        &mut quantities,
    );

    let eta_p_op = if scenario.conversion.power_efficiency_per_sideband.is_some() {
        "scenario.input"
    } else {
        "conversion.steady_state_efficiency -> manley_rowe_inverse"
    };
    push(
        "eta_p_per_sideband",
        d.power_efficiency,
        "1",
        eta_p_op,
        None,
        &mut quantities,
    );
    push(
        "eta_n_per_sideband",
        d.budget.photon_efficiency_per_sideband,
        "1",
        "conversion.manley_rowe",
        None,
        &mut quantities,
    );
    push(
        "eta_n_both",
        d.budget.photon_efficiency_both,
        "1",
        "2 * eta_n_per_sideband",
        None,
        &mut quantities,
    );
    push(
        "sideband_power_w",
        d.budget.sideband_power_w,
        "W",
        "conversion.sideband_power",
        None,
        &mut quantities,
    );
    if d.budget.sideband_power_w > 0.0 && scenario.pump.power_w > 0.0 {
        push(
            "pump_sideband_ratio_db",
            10.0 * (scenario.pump.power_w / d.budget.sideband_power_w).log10(),
            "dB",
            "10*log10(pump_power_w / sideband_power_w)",
            None,
            &mut quantities,
        );
    }

    let fsr_match_hz = scenario.optics.measured_fsr_hz.unwrap_or(fsr_hz);
    let weights = sideband_asymmetry(
        fsr_match_hz,
        scenario.microwave.frequency_hz,
        scenario.conversion.dispersion_offset_hz,
        d.loaded_linewidth_hz,
    )
    .map_err(|e| at("sideband_weight_stokes", e))?;
    push(
        "sideband_weight_stokes",
        weights.stokes,
        "1",
        "conversion.sideband_asymmetry",
        None,
        &mut quantities,
    );
    push(
        "sideband_weight_antistokes",
        weights.anti_stokes,
        "1",
        "conversion.sideband_asymmetry",
        None,
        &mut quantities,
    );

    if scenario.microwave.power_w > 0.0 {
        let nep_measured = nep_from_measurement(
            scenario.microwave.power_w,
            scenario.detection.snr_db,
            scenario.detection.resolution_bandwidth_hz,
        )
        .map_err(|e| at("nep_measured_w_per_hz", e))?;
        push(
            "nep_measured_w_per_hz",
            nep_measured,
            "W/Hz",
            "detection.nep_from_measurement",
            Some(
                "from input power, SNR, and resolution bandwidth; shown beside the configured \
                 reference"
                    .to_string(),
            ),
            &mut quantities,
        );
        let gap_formula = nep_gap_factor(nep_measured, d.nep_thermal_w_per_hz)
            .map_err(|e| at("nep_gap_factor_formula", e))?;
        push(
            "nep_gap_factor_formula",
            gap_formula,
            "1",
            "detection.nep_gap_factor",
            None,
            &mut quantities,
        );
    }

    push(
        "nep_thermal_w_per_hz",
        d.nep_thermal_w_per_hz,
        "W/Hz",
        "detection.thermal_nep_density",
        None,
        &mut quantities,
    );

    if d.budget.photon_efficiency_both > 0.0 {
        push(
            "nep_efficiency_limited_w_per_hz",
            d.nep_thermal_w_per_hz / d.budget.photon_efficiency_both,
            "W/Hz",
            "nep_thermal_w_per_hz / eta_n_both",
            None,
            &mut quantities,
        );
    }
    if let Some(reported) = refs.get("nep_measured_w_per_hz") {
        let gap = nep_gap_factor(reported.value, d.nep_thermal_w_per_hz)
            .map_err(|e| at("nep_gap_factor", e))?;
        push(
            "nep_gap_factor",
            gap,
            "1",
            "detection.nep_gap_factor",
            Some("measured NEP taken from references.nep_measured_w_per_hz".to_string()),
            &mut quantities,
        );
    }

    let t_eff = effective_temperature(
        scenario.detection.temperature_k,
        d.gamma_abs_hz,
        d.loaded_linewidth_hz,
    )
    .map_err(|e| at("t_eff_k", e))?;
    push(
        "t_eff_k",
        t_eff,
        "K",
        "detection.effective_temperature",
        None,
        &mut quantities,
    );
    let nep_thermal_eff = thermal_nep_density(t_eff, thermal_factor(scenario))
        .map_err(|e| at("nep_thermal_eff_w_per_hz", e))?;
    push(
        "nep_thermal_eff_w_per_hz",
        nep_thermal_eff,
        "W/Hz",
        "detection.thermal_nep_density",
        None,
        &mut quantities,
    );

    let counting_bw_op = if scenario.detection.projected_q_factor.is_some() {
        "resonator.linewidth_from_q"
    } else {
        "scenario.input"
    };
    push(
        "counting_bandwidth_hz",
        d.counting_bandwidth_hz,
        "Hz",
        counting_bw_op,
        None,
        &mut quantities,
    );

    let tau = scenario.detection.sampling_time_s;
    let nu_min = min_countable_frequency(d.nep_thermal_w_per_hz, d.counting_bandwidth_hz, tau)
        .map_err(|e| at("min_countable_frequency_hz", e))?;
    push(
        "min_countable_frequency_hz",
        nu_min,
        "Hz",
        "detection.min_countable_frequency",
        None,
        &mut quantities,
    );
    let nu_min_eff = min_countable_frequency(nep_thermal_eff, d.counting_bandwidth_hz, tau)
        .map_err(|e| at("min_countable_frequency_eff_hz", e))?;
    push(
        "min_countable_frequency_eff_hz",
        nu_min_eff,
        "Hz",
        "detection.min_countable_frequency",
        None,
        &mut quantities,
    );

    let feasible = counting_feasible(
        d.nep_thermal_w_per_hz,
        d.counting_bandwidth_hz,
        tau,
        scenario.microwave.frequency_hz,
    )
    .map_err(|e| at("counting_feasible", e))?;
    push(
        "counting_feasible",
        if feasible { 1.0 } else { 0.0 },
        "bool",
        "detection.counting_feasible",
        None,
        &mut quantities,
    );
    let feasible_eff = counting_feasible(
        nep_thermal_eff,
        d.counting_bandwidth_hz,
        tau,
        scenario.microwave.frequency_hz,
    )
    .map_err(|e| at("counting_feasible_eff", e))?;
    push(
        "counting_feasible_eff",
        if feasible_eff { 1.0 } else { 0.0 },
        "bool",
        "detection.counting_feasible",
        None,
        &mut quantities,
    );

    if d.budget.photon_efficiency_both > 0.0 {
        let s_limited = d.nep_thermal_w_per_hz / d.budget.photon_efficiency_both;
        let bw = max_counting_bandwidth(s_limited, scenario.microwave.frequency_hz, tau)
            .map_err(|e| at("max_counting_bandwidth_hz", e))?;
        let note = refs.get("max_counting_bandwidth_hz").map(|r| {
            format!(
                "reference bandwidth implies sampling_time_s = {:.3e}",
                crate::constants::PLANCK * scenario.microwave.frequency_hz
                    / (s_limited * r.value)
            )
        });
        push(
            "max_counting_bandwidth_hz",
            bw,
            "Hz",
            "detection.max_counting_bandwidth",
            note,
            &mut quantities,
        );
    }
    let bw_unity = max_counting_bandwidth(
        d.nep_thermal_w_per_hz,
        scenario.microwave.frequency_hz,
        tau,
    )
    .map_err(|e| at("max_counting_bandwidth_unity_hz", e))?;
    let unity_note = refs.get("max_counting_bandwidth_unity_hz").map(|r| {
        format!(
            "reference bandwidth implies sampling_time_s = {:.3e}",
            crate::constants::PLANCK * scenario.microwave.frequency_hz
                / (d.nep_thermal_w_per_hz * r.value)
        )
    });
    push(
        "max_counting_bandwidth_unity_hz",
        bw_unity,
        "Hz",
        "detection.max_counting_bandwidth",
        unity_note,
        &mut quantities,
    );

    push(
        "crossover_1thz_k",
        frequency_to_temperature(1e12).map_err(|e| at("crossover_1thz_k", e))?,
        "K",
        "detection.frequency_to_temperature",
        None,
        &mut quantities,
    );
    push(
        "signal_photon_temperature_k",
        frequency_to_temperature(scenario.microwave.frequency_hz)
            .map_err(|e| at("signal_photon_temperature_k", e))?,
        "K",
        "detection.frequency_to_temperature",
        None,
        &mut quantities,
    );

    Ok(Report { quantities })
}

/// Builds the counting-feasibility budget for a scenario.
pub fn run_feasibility(scenario: &Scenario) -> Result<DetectionBudget> {
    scenario.validate()?;
    let d = derive(scenario)?;
    DetectionBudget::evaluate(
        d.nep_thermal_w_per_hz,
        d.counting_bandwidth_hz,
        scenario.detection.sampling_time_s,
        scenario.microwave.frequency_hz,
        scenario.detection.temperature_k,
        d.gamma_abs_hz,
        d.loaded_linewidth_hz,
    )
}

/// Renders a feasibility budget as key/value text.
pub fn render_feasibility(budget: &DetectionBudget) -> String {
    let mut out = String::new();
    out.push_str("# photon-counting feasibility\n");
    out.push_str("# convention: bandwidths are ordinary frequency (Hz); photon energy is h*nu\n");
    out.push_str(&format!(
        "nep_density_w_per_hz = {:.9e} [W/Hz]\n",
        budget.nep_density_w_per_hz
    ));
    out.push_str(&format!("bandwidth_hz = {:.9e} [Hz]\n", budget.bandwidth_hz));
    out.push_str(&format!(
        "sampling_time_s = {:.9e} [s]\n",
        budget.sampling_time_s
    ));
    out.push_str(&format!(
        "signal_frequency_hz = {:.9e} [Hz]\n",
        budget.signal_frequency_hz
    ));
    out.push_str(&format!("temperature_k = {:.9e} [K]\n", budget.temperature_k));
    out.push_str(&format!(
        "effective_temperature_k = {:.9e} [K]\n",
        budget.effective_temperature_k
    ));
    out.push_str(&format!(
        "min_countable_frequency_hz = {:.9e} [Hz]\n",
        budget.min_countable_frequency_hz
    ));
    out.push_str(&format!(
        "max_bandwidth_hz = {:.9e} [Hz]\n",
        budget.max_bandwidth_hz
    ));
    out.push_str(&format!("feasible = {}\n", budget.feasible));
    out
}
