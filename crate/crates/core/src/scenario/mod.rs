//! Scenario ingestion and the end-to-end outputs: reports, synthetic spectra,
//! and parameter sweeps.

mod config;
mod report;
mod spectrum;
mod sweep;

pub use config::{
    load_scenario, ConversionConfig, ConversionModelConfig, DetectionConfig, GeometryConfig,
    MaterialConfig, MicrowaveConfig, OpticsConfig, PumpConfig, ReferenceEntry, ReferenceMap,
    Scenario, SpectrumConfig,
};
pub use report::{
    is_report_key, render_feasibility, run_feasibility, run_report, Comparison, Quantity, Report,
    REPORT_KEYS,
};
pub use spectrum::{emit_spectrum, GridSpec, SpectrumKind, SpectrumTrace};
pub use sweep::{run_sweep, run_sweep_sequential, set_numeric_key, SweepScale, SweepSpec};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn base_config() -> String {
        r#"
[geometry]
major_radius_m = 1.8e-3
thickness_m = 0.22e-3

[pump]
wavelength_m = 1.56e-6
power_w = 16e-3

[microwave]
frequency_hz = 101.38e9
power_w = 0.4e-3

[optics]
loaded_linewidth_hz = 20e6
coupling_ratio = 0.9608

[conversion]
power_efficiency_per_sideband = 5e-3

[detection]
temperature_k = 300.0
sampling_time_s = 5e-9
resolution_bandwidth_hz = 1.23e9
snr_db = 27.0
noise_factor = 2
"#
        .to_string()
    }

    #[test]
    fn minimal_config_parses() {
        let s = Scenario::parse(&base_config()).unwrap();
        assert_eq!(s.geometry.disk_temperature_k, 295.0);
        assert_eq!(s.conversion.dispersion_offset_hz, 260e6);
        assert_eq!(s.material.resonator, "linbo3");
    }

    #[test]
    fn exclusive_linewidth_and_q_rejected() {
        let text = base_config().replace(
            "loaded_linewidth_hz = 20e6",
            "loaded_linewidth_hz = 20e6\nq_factor = 1e7",
        );
        let err = Scenario::parse(&text).unwrap_err();
        match err {
            Error::Config(msg) => {
                assert!(msg.contains("loaded_linewidth_hz") && msg.contains("q_factor"));
            }
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn exclusive_efficiency_and_model_rejected() {
        let text = base_config().replace(
            "power_efficiency_per_sideband = 5e-3",
            "power_efficiency_per_sideband = 5e-3\nmodel = { cooperativity = 1.0, microwave_coupling_rate_hz = 1e6, microwave_absorption_rate_hz = 1e6 }",
        );
        assert!(matches!(Scenario::parse(&text), Err(Error::Config(_))));
    }

    #[test]
    fn missing_key_error_names_it() {
        let text = base_config().replace("major_radius_m = 1.8e-3\n", "");
        let err = Scenario::parse(&text).unwrap_err();
        match err {
            Error::Config(msg) => assert!(msg.contains("major_radius_m"), "message: {msg}"),
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_key_rejected() {
        let text = base_config().replace("power_w = 16e-3", "power_w = 16e-3\nbogus_key = 1.0");
        let err = Scenario::parse(&text).unwrap_err();
        match err {
            Error::Config(msg) => assert!(msg.contains("bogus_key"), "message: {msg}"),
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn reference_keys_validated() {
        let text = format!(
            "{}\n[references]\nnot_a_quantity = {{ value = 1.0, tol_rel = 0.1 }}\n",
            base_config()
        );
        let err = Scenario::parse(&text).unwrap_err();
        match err {
            Error::Config(msg) => assert!(msg.contains("not_a_quantity")),
            other => panic!("expected config error, got {other:?}"),
        }
        let ok = format!(
            "{}\n[references]\nfsr_hz = {{ value = 12.64e9, tol_rel = 0.03 }}\n",
            base_config()
        );
        assert!(Scenario::parse(&ok).is_ok());
    }

    #[test]
    fn noise_factor_must_be_one_or_two() {
        let text = base_config().replace("noise_factor = 2", "noise_factor = 3");
        assert!(matches!(Scenario::parse(&text), Err(Error::Config(_))));
    }

    #[test]
    fn set_numeric_key_handles_exclusive_pairs() {
        let mut s = Scenario::parse(&base_config()).unwrap();
        set_numeric_key(&mut s, "optics.q_factor", 1e8).unwrap();
        assert_eq!(s.optics.q_factor, Some(1e8));
        assert_eq!(s.optics.loaded_linewidth_hz, None);
        s.validate().unwrap();
        set_numeric_key(&mut s, "optics.loaded_linewidth_hz", 5e6).unwrap();
        assert_eq!(s.optics.q_factor, None);
        s.validate().unwrap();
        assert!(set_numeric_key(&mut s, "material.resonator", 1.0).is_err());
    }

    #[test]
    fn sweep_spec_parsing() {
        let spec = SweepSpec::parse("optics.q_factor=1e7:4e8:log:25").unwrap();
        assert_eq!(spec.key, "optics.q_factor");
        assert_eq!(spec.lo, 1e7);
        assert_eq!(spec.hi, 4e8);
        assert_eq!(spec.scale, SweepScale::Log);
        assert_eq!(spec.count, 25);
        assert!(SweepSpec::parse("no_equals_sign").is_err());
        assert!(SweepSpec::parse("k=1:2:cubic:5").is_err());
        assert!(SweepSpec::parse("k=1:2:lin:x").is_err());
        assert!(SweepSpec::parse("k=1:2:lin").is_err());
    }

    #[test]
    fn run_report_is_deterministic() {
        let s = Scenario::parse(&base_config()).unwrap();
        let a = run_report(&s).unwrap();
        let b = run_report(&s).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.render(), b.render());
    }

    #[test]
    fn report_keys_cover_all_emitted_rows() {
        let s = Scenario::parse(&base_config()).unwrap();
        let report = run_report(&s).unwrap();
        for q in &report.quantities {
            assert!(is_report_key(q.key), "unlisted report key {}", q.key);
        }
    }

    #[test]
    fn zeroing_rf_power_zeroes_sideband_rows_only() {
        let base = Scenario::parse(&base_config()).unwrap();
        let zeroed_cfg = base_config().replace("power_w = 0.4e-3", "power_w = 0.0");
        let zeroed = Scenario::parse(&zeroed_cfg).unwrap();
        let a = run_report(&base).unwrap();
        let b = run_report(&zeroed).unwrap();
        assert_eq!(b.value("sideband_power_w"), Some(0.0));
        for key in [
            "fsr_hz",
            "q_factor",
            "incidence_angle_deg",
            "eta_n_both",
            "nep_thermal_w_per_hz",
            "t_eff_k",
            "min_countable_frequency_hz",
        ] {
            assert_eq!(a.value(key), b.value(key), "{key} changed");
        }
        // The NEP measurement needs a nonzero drive; its rows disappear.
        assert!(a.get("nep_measured_w_per_hz").is_some());
        assert!(b.get("nep_measured_w_per_hz").is_none());
    }

    #[test]
    fn model_path_produces_efficiency() {
        let text = base_config().replace(
            "power_efficiency_per_sideband = 5e-3",
            "model = { cooperativity = 1.0, microwave_coupling_rate_hz = 1e6, microwave_absorption_rate_hz = 0.0 }",
        );
        let s = Scenario::parse(&text).unwrap();
        let report = run_report(&s).unwrap();
        // Lossless microwave mode at critical cooperativity: only the optical
        // extraction ratio remains.
        let eta_n = report.value("eta_n_per_sideband").unwrap();
        let expected = 0.9608 / 1.9608;
        assert!((eta_n - expected).abs() / expected < 1e-9, "eta_n = {eta_n}");
        let q = report.get("eta_p_per_sideband").unwrap();
        assert!(q.op.contains("steady_state_efficiency"));
    }

    #[test]
    fn feasibility_budget_consistent() {
        let s = Scenario::parse(&base_config()).unwrap();
        let budget = run_feasibility(&s).unwrap();
        assert!(budget.effective_temperature_k <= budget.temperature_k);
        let text = render_feasibility(&budget);
        assert!(text.contains("feasible = "));
        assert!(text.contains("min_countable_frequency_hz"));
    }

    #[test]
    fn spectrum_grid_validation_and_warning() {
        let s = Scenario::parse(&base_config()).unwrap();
        assert!(emit_spectrum(
            &s,
            SpectrumKind::Transmission,
            GridSpec {
                span_hz: -1.0,
                points: 100
            }
        )
        .is_err());
        assert!(emit_spectrum(
            &s,
            SpectrumKind::Transmission,
            GridSpec {
                span_hz: 1e9,
                points: 1
            }
        )
        .is_err());
        // 20 MHz linewidth over a 1 GHz span with 21 points: 50 MHz steps.
        let coarse = emit_spectrum(
            &s,
            SpectrumKind::Transmission,
            GridSpec {
                span_hz: 1e9,
                points: 21,
            },
        )
        .unwrap();
        assert!(coarse.warning.is_some());
        let fine = emit_spectrum(
            &s,
            SpectrumKind::Transmission,
            GridSpec {
                span_hz: 2e8,
                points: 2001,
            },
        )
        .unwrap();
        assert!(fine.warning.is_none());
        assert!(fine.offset_hz.windows(2).all(|w| w[0] < w[1]));
        assert!(fine.ordinate.iter().all(|y| y.is_finite() && *y >= 0.0));
    }
}
