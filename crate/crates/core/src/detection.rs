//! Photon-counting criterion, NEP limits, and feasibility budgets.
//!
//! Unit convention: bandwidths are ordinary frequencies (Hz) and the photon
//! energy is `h * nu`. The counting criterion is `S * dnu * tau < h * nu`.

use crate::constants::{BOLTZMANN, PLANCK};
use crate::error::{Error, Result};

fn check_positive(name: &str, value: f64) -> Result<()> {
    if !(value > 0.0) {
        return Err(Error::invalid(format!(
            "{name} must be positive, got {value}"
        )));
    }
    Ok(())
}

/// True when a detector with NEP density `S` [W/Hz], bandwidth [Hz], and
/// sampling time [s] can count photons at `signal_frequency_hz`.
pub fn counting_feasible(
    nep_density_w_per_hz: f64,
    bandwidth_hz: f64,
    sampling_time_s: f64,
    signal_frequency_hz: f64,
) -> Result<bool> {
    check_positive("NEP density", nep_density_w_per_hz)?;
    check_positive("bandwidth", bandwidth_hz)?;
    check_positive("sampling time", sampling_time_s)?;
    check_positive("signal frequency", signal_frequency_hz)?;
    Ok(nep_density_w_per_hz * bandwidth_hz * sampling_time_s < PLANCK * signal_frequency_hz)
}

/// Lowest countable signal frequency [Hz]: `nu* = S * dnu * tau / h`.
pub fn min_countable_frequency(
    nep_density_w_per_hz: f64,
    bandwidth_hz: f64,
    sampling_time_s: f64,
) -> Result<f64> {
    check_positive("NEP density", nep_density_w_per_hz)?;
    check_positive("bandwidth", bandwidth_hz)?;
    check_positive("sampling time", sampling_time_s)?;
    Ok(nep_density_w_per_hz * bandwidth_hz * sampling_time_s / PLANCK)
}

/// Widest counting bandwidth [Hz]: `dnu_max = h * nu / (S * tau)`.
pub fn max_counting_bandwidth(
    nep_density_w_per_hz: f64,
    signal_frequency_hz: f64,
    sampling_time_s: f64,
) -> Result<f64> {
    check_positive("NEP density", nep_density_w_per_hz)?;
    check_positive("signal frequency", signal_frequency_hz)?;
    check_positive("sampling time", sampling_time_s)?;
    Ok(PLANCK * signal_frequency_hz / (nep_density_w_per_hz * sampling_time_s))
}

/// NEP density [W/Hz] from a signal observed `snr_db` above the noise floor
/// in a resolution bandwidth `rbw_hz`: `S = P * 10^(-snr/10) / rbw`.
pub fn nep_from_measurement(input_power_w: f64, snr_db: f64, rbw_hz: f64) -> Result<f64> {
    check_positive("input power", input_power_w)?;
    check_positive("resolution bandwidth", rbw_hz)?;
    Ok(input_power_w * 10f64.powf(-snr_db / 10.0) / rbw_hz)
}

/// Which thermal bound applies to the NEP density.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThermalNoiseFactor {
    /// Equipartition bound `S = kB T`.
    Equipartition,
    /// All-resonant converter bound `S = 2 kB T`.
    AllResonant,
}

impl ThermalNoiseFactor {
    pub fn factor(self) -> f64 {
        match self {
            ThermalNoiseFactor::Equipartition => 1.0,
            ThermalNoiseFactor::AllResonant => 2.0,
        }
    }
}

/// Thermal NEP density bound [W/Hz] at temperature `t_k`.
pub fn thermal_nep_density(t_k: f64, factor: ThermalNoiseFactor) -> Result<f64> {
    if !(t_k >= 0.0) {
        return Err(Error::invalid(format!(
            "temperature must be non-negative, got {t_k} K"
        )));
    }
    Ok(factor.factor() * BOLTZMANN * t_k)
}

/// Effective bath temperature [K] of a resonator whose absorption accounts for
/// `intrinsic_rate_hz` out of `total_rate_hz`: `T_eff = T * Gabs / G`.
pub fn effective_temperature(t_k: f64, intrinsic_rate_hz: f64, total_rate_hz: f64) -> Result<f64> {
    if !(t_k >= 0.0) {
        return Err(Error::invalid(format!(
            "temperature must be non-negative, got {t_k} K"
        )));
    }
    check_positive("total loss rate", total_rate_hz)?;
    if !(intrinsic_rate_hz >= 0.0) || intrinsic_rate_hz > total_rate_hz {
        return Err(Error::invalid(format!(
            "intrinsic rate must satisfy 0 <= Gabs <= G, got Gabs = {intrinsic_rate_hz}, G = {total_rate_hz}"
        )));
    }
    Ok(t_k * intrinsic_rate_hz / total_rate_hz)
}

/// Temperature [K] whose thermal quantum matches `frequency_hz`: `T = h nu / kB`.
pub fn frequency_to_temperature(frequency_hz: f64) -> Result<f64> {
    check_positive("frequency", frequency_hz)?;
    Ok(PLANCK * frequency_hz / BOLTZMANN)
}

/// Inverse of [`frequency_to_temperature`]: `nu = kB T / h`.
pub fn temperature_to_frequency(t_k: f64) -> Result<f64> {
    check_positive("temperature", t_k)?;
    Ok(BOLTZMANN * t_k / PLANCK)
}

/// How far a measured NEP sits above a theoretical bound: `S_theory / S_measured`.
pub fn nep_gap_factor(nep_measured_w_per_hz: f64, nep_theory_w_per_hz: f64) -> Result<f64> {
    check_positive("measured NEP", nep_measured_w_per_hz)?;
    check_positive("theoretical NEP", nep_theory_w_per_hz)?;
    Ok(nep_theory_w_per_hz / nep_measured_w_per_hz)
}

/// Complete counting-feasibility budget for one parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionBudget {
    pub nep_density_w_per_hz: f64,
    pub bandwidth_hz: f64,
    pub sampling_time_s: f64,
    pub signal_frequency_hz: f64,
    pub temperature_k: f64,
    pub effective_temperature_k: f64,
    pub feasible: bool,
    pub min_countable_frequency_hz: f64,
    pub max_bandwidth_hz: f64,
}

impl DetectionBudget {
    #[allow(clippy::too_many_arguments)]
    pub fn evaluate(
        nep_density_w_per_hz: f64,
        bandwidth_hz: f64,
        sampling_time_s: f64,
        signal_frequency_hz: f64,
        temperature_k: f64,
        intrinsic_rate_hz: f64,
        total_rate_hz: f64,
    ) -> Result<Self> {
        let feasible = counting_feasible(
            nep_density_w_per_hz,
            bandwidth_hz,
            sampling_time_s,
            signal_frequency_hz,
        )?;
        Ok(DetectionBudget {
            nep_density_w_per_hz,
            bandwidth_hz,
            sampling_time_s,
            signal_frequency_hz,
            temperature_k,
            effective_temperature_k: effective_temperature(
                temperature_k,
                intrinsic_rate_hz,
                total_rate_hz,
            )?,
            feasible,
            min_countable_frequency_hz: min_countable_frequency(
                nep_density_w_per_hz,
                bandwidth_hz,
                sampling_time_s,
            )?,
            max_bandwidth_hz: max_counting_bandwidth(
                nep_density_w_per_hz,
                signal_frequency_hz,
                sampling_time_s,
            )?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn counting_feasible_examples() {
        assert!(counting_feasible(8.28e-21, 2e6, 5e-9, 0.13e12).unwrap());
        assert!(!counting_feasible(8.28e-21, 2e6, 5e-9, 0.11e12).unwrap());
        // With dnu * tau = 1 the test reduces to S < h * nu.
        let s = BOLTZMANN * 300.0;
        let crossover = 6_250_985_736_998.272;
        assert!(counting_feasible(s, 1e6, 1e-6, crossover * 1.01).unwrap());
        assert!(!counting_feasible(s, 1e6, 1e-6, crossover * 0.99).unwrap());
        assert!(counting_feasible(0.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn min_countable_frequency_examples() {
        let nu = min_countable_frequency(8.28e-21, 2e6, 5e-9).unwrap();
        assert!(rel(nu, 1.249609468743702e11) < 1e-12, "nu = {nu}");
        assert!(rel(nu, 0.12e12) < 0.10);
        let half = min_countable_frequency(8.28e-21, 2e6, 2.5e-9).unwrap();
        assert!(rel(half * 2.0, nu) < 1e-12);
        let th = min_countable_frequency(BOLTZMANN * 300.0, 1e6, 1e-6).unwrap();
        assert!(rel(th, 6_250_985_736_998.272) < 1e-12);
    }

    #[test]
    fn max_counting_bandwidth_examples() {
        let bw = max_counting_bandwidth(1.6e-15, 101.12e9, 32.2e-9).unwrap();
        assert!(rel(bw, 1.3005206008695653) < 1e-12, "bw = {bw}");
        assert!(rel(bw, 1.3) < 0.01);
        let scaled = max_counting_bandwidth(10.0 * 1.6e-15, 101.12e9, 32.2e-9).unwrap();
        assert!(rel(scaled * 10.0, bw) < 1e-12);
        let unity = max_counting_bandwidth(8.28e-21, 101.12e9, 16e-9).unwrap();
        assert!(rel(unity, 505_758.01144927525) < 1e-12);
        assert!(rel(unity, 0.50e6) < 0.02);
    }

    #[test]
    fn nep_from_measurement_examples() {
        let s = nep_from_measurement(0.4e-3, 27.0, 1.23e9).unwrap();
        assert!(rel(s, 6.488657934858143e-16) < 1e-12, "s = {s}");
        assert!(rel(s, 6.50e-16) < 0.02);
        assert_eq!(nep_from_measurement(5e-3, 0.0, 1.0).unwrap(), 5e-3);
        assert!(rel(nep_from_measurement(5e-3, 10.0, 1.0).unwrap(), 5e-4) < 1e-12);
        assert!(nep_from_measurement(0.0, 27.0, 1.0).is_err());
        assert!(nep_from_measurement(1.0, 27.0, 0.0).is_err());
    }

    #[test]
    fn thermal_nep_density_examples() {
        let s2 = thermal_nep_density(300.0, ThermalNoiseFactor::AllResonant).unwrap();
        assert!(rel(s2, 8.283894e-21) < 1e-12);
        assert!(rel(s2, 8e-21) < 0.05);
        let s1 = thermal_nep_density(300.0, ThermalNoiseFactor::Equipartition).unwrap();
        assert!(rel(s1, 4.141947e-21) < 1e-12);
        assert_eq!(
            thermal_nep_density(0.0, ThermalNoiseFactor::AllResonant).unwrap(),
            0.0
        );
    }

    #[test]
    fn effective_temperature_examples() {
        assert_eq!(effective_temperature(300.0, 5e6, 5e6).unwrap(), 300.0);
        assert!(rel(effective_temperature(300.0, 2e6, 20e6).unwrap(), 30.0) < 1e-12);
        assert_eq!(effective_temperature(300.0, 0.0, 5e6).unwrap(), 0.0);
        assert!(effective_temperature(300.0, 6e6, 5e6).is_err());
        assert!(effective_temperature(300.0, 1e6, 0.0).is_err());
    }

    #[test]
    fn crossover_examples() {
        let t = frequency_to_temperature(1e12).unwrap();
        assert!(rel(t, 47.992430733662204) < 1e-12);
        assert!(rel(t, 48.0) < 0.01);
        let nu = temperature_to_frequency(300.0).unwrap();
        assert!(rel(nu, 6_250_985_736_998.272) < 1e-12);
    }

    #[test]
    fn gap_factor_examples() {
        let thermal = thermal_nep_density(300.0, ThermalNoiseFactor::AllResonant).unwrap();
        let gap = nep_gap_factor(1.6e-15, thermal).unwrap();
        assert!(rel(gap, 5.17743375e-6) < 1e-12, "gap = {gap}");
        assert!(rel(gap, 5.2e-6) < 0.05);
        assert_eq!(nep_gap_factor(thermal, thermal).unwrap(), 1.0);
        let formula_gap = nep_gap_factor(6.488657934858143e-16, thermal).unwrap();
        assert!(rel(formula_gap, 1.2766729396378799e-5) < 1e-12);
        assert!(rel(formula_gap, 1.27e-5) < 0.01);
    }

    #[test]
    fn budget_is_consistent_with_operations() {
        let b = DetectionBudget::evaluate(8.28e-21, 2e6, 5e-9, 101.38e9, 300.0, 10.2e6, 20e6)
            .unwrap();
        assert_eq!(
            b.feasible,
            counting_feasible(8.28e-21, 2e6, 5e-9, 101.38e9).unwrap()
        );
        assert!(b.effective_temperature_k <= b.temperature_k);
        assert!(!b.feasible);
    }

    proptest! {
        #[test]
        fn threshold_and_duality(
            log_s in -25.0f64..-15.0,
            log_bw in 3.0f64..9.0,
            log_tau in -10.0f64..-3.0,
        ) {
            let s = 10f64.powf(log_s);
            let bw = 10f64.powf(log_bw);
            let tau = 10f64.powf(log_tau);
            let nu_star = min_countable_frequency(s, bw, tau).unwrap();
            prop_assert!(!counting_feasible(s, bw, tau, nu_star * (1.0 - 1e-6)).unwrap());
            prop_assert!(counting_feasible(s, bw, tau, nu_star * (1.0 + 1e-6)).unwrap());
            let back = max_counting_bandwidth(s, nu_star, tau).unwrap();
            prop_assert!(rel(back, bw) < 1e-12);
        }

        #[test]
        fn feasibility_monotone(
            log_s in -25.0f64..-15.0,
            log_bw in 3.0f64..9.0,
            log_tau in -10.0f64..-3.0,
            log_nu in 9.0f64..13.0,
            shrink in 0.01f64..1.0,
        ) {
            let s = 10f64.powf(log_s);
            let bw = 10f64.powf(log_bw);
            let tau = 10f64.powf(log_tau);
            let nu = 10f64.powf(log_nu);
            if counting_feasible(s, bw, tau, nu).unwrap() {
                prop_assert!(counting_feasible(s * shrink, bw, tau, nu).unwrap());
                prop_assert!(counting_feasible(s, bw * shrink, tau, nu).unwrap());
                prop_assert!(counting_feasible(s, bw, tau * shrink, nu).unwrap());
            }
        }

        #[test]
        fn effective_temperature_linear_and_bounded(
            t in 0.0f64..1000.0,
            frac in 0.0f64..1.0,
            g in 1e3f64..1e9,
        ) {
            let t_eff = effective_temperature(t, frac * g, g).unwrap();
            prop_assert!(t_eff <= t * (1.0 + 1e-12));
            let doubled = effective_temperature(2.0 * t, frac * g, g).unwrap();
            prop_assert!((doubled - 2.0 * t_eff).abs() <= 1e-9 * t_eff.abs().max(1e-30));
        }

        #[test]
        fn crossover_round_trip(nu in 1e9f64..1e14) {
            let t = frequency_to_temperature(nu).unwrap();
            let back = temperature_to_frequency(t).unwrap();
            prop_assert!(rel(back, nu) < 1e-12);
        }
    }
}
