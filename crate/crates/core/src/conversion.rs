//! Phase matching, Manley-Rowe accounting, and the conversion budget of the
//! three-wave mixing process.

use crate::error::{Error, Result};
use crate::resonator::OpticalMode;

/// Result of matching a microwave frequency onto the optical mode grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseMatch {
    /// Nearest integer number of free spectral ranges.
    pub order: i64,
    /// Signed remainder `nu_rf - order * fsr` [Hz], within `[-fsr/2, fsr/2]`.
    pub residual_hz: f64,
}

impl PhaseMatch {
    /// False when the signal lies below half an FSR and no resonant order exists.
    pub fn is_resonant(&self) -> bool {
        self.order >= 1
    }
}

/// Nearest resonant order and residual for a signal at `rf_frequency_hz`
/// against an optical free spectral range of `fsr_hz`.
pub fn phase_match_order(rf_frequency_hz: f64, fsr_hz: f64) -> Result<PhaseMatch> {
    if !(rf_frequency_hz > 0.0) {
        return Err(Error::invalid(format!(
            "signal frequency must be positive, got {rf_frequency_hz} Hz"
        )));
    }
    if !(fsr_hz > 0.0) {
        return Err(Error::invalid(format!(
            "free spectral range must be positive, got {fsr_hz} Hz"
        )));
    }
    let order = (rf_frequency_hz / fsr_hz).round() as i64;
    let residual_hz = rf_frequency_hz - order as f64 * fsr_hz;
    Ok(PhaseMatch { order, residual_hz })
}

/// Orbital momenta of the two sidebands generated around a pump mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SidebandMomenta {
    pub anti_stokes: i64,
    pub stokes: i64,
}

impl SidebandMomenta {
    /// True when the mixing order is zero and both sidebands coincide with the pump.
    pub fn is_degenerate(&self) -> bool {
        self.anti_stokes == self.stokes
    }
}

/// `L_a = L_p + L_rf`, `L_s = L_p - L_rf`. A zero mixing order is allowed and
/// flagged degenerate; the Stokes momentum must stay positive.
pub fn sideband_momenta(pump_momentum: i64, rf_momentum: i64) -> Result<SidebandMomenta> {
    if pump_momentum < 1 {
        return Err(Error::invalid(format!(
            "pump orbital momentum must be >= 1, got {pump_momentum}"
        )));
    }
    if rf_momentum < 0 {
        return Err(Error::invalid(format!(
            "mixing order must be non-negative, got {rf_momentum}"
        )));
    }
    if rf_momentum > 0 && pump_momentum <= rf_momentum {
        return Err(Error::invalid(format!(
            "pump momentum {pump_momentum} must exceed the mixing order {rf_momentum}"
        )));
    }
    Ok(SidebandMomenta {
        anti_stokes: pump_momentum + rf_momentum,
        stokes: pump_momentum - rf_momentum,
    })
}

/// Optical frequencies [Hz] of the (Stokes, anti-Stokes) sidebands.
pub fn sideband_frequencies(pump_frequency_hz: f64, rf_frequency_hz: f64) -> Result<(f64, f64)> {
    if !(pump_frequency_hz > rf_frequency_hz) || !(rf_frequency_hz > 0.0) {
        return Err(Error::invalid(format!(
            "need pump frequency > signal frequency > 0, got {pump_frequency_hz} and {rf_frequency_hz} Hz"
        )));
    }
    Ok((
        pump_frequency_hz - rf_frequency_hz,
        pump_frequency_hz + rf_frequency_hz,
    ))
}

/// Photon-number efficiency from a power efficiency:
/// `eta_N = eta_P * nu_rf / nu_sideband`.
pub fn manley_rowe(power_efficiency: f64, rf_frequency_hz: f64, sideband_frequency_hz: f64) -> Result<f64> {
    check_manley_rowe_frequencies(rf_frequency_hz, sideband_frequency_hz)?;
    if !(power_efficiency >= 0.0) {
        return Err(Error::invalid(format!(
            "power efficiency must be non-negative, got {power_efficiency}"
        )));
    }
    let eta_n = power_efficiency * rf_frequency_hz / sideband_frequency_hz;
    if eta_n > 1.0 {
        return Err(Error::domain(format!(
            "photon-number efficiency {eta_n} exceeds unity; inputs are inconsistent"
        )));
    }
    Ok(eta_n)
}

/// Inverse of [`manley_rowe`]: `eta_P = eta_N * nu_sideband / nu_rf`.
///
/// The returned power efficiency may exceed unity; the converted photons draw
/// their extra energy from the pump.
pub fn manley_rowe_inverse(
    photon_efficiency: f64,
    rf_frequency_hz: f64,
    sideband_frequency_hz: f64,
) -> Result<f64> {
    check_manley_rowe_frequencies(rf_frequency_hz, sideband_frequency_hz)?;
    if !(photon_efficiency >= 0.0) {
        return Err(Error::invalid(format!(
            "photon efficiency must be non-negative, got {photon_efficiency}"
        )));
    }
    if photon_efficiency > 1.0 {
        return Err(Error::domain(format!(
            "photon-number efficiency {photon_efficiency} exceeds unity; inputs are inconsistent"
        )));
    }
    Ok(photon_efficiency * sideband_frequency_hz / rf_frequency_hz)
}

fn check_manley_rowe_frequencies(rf_hz: f64, sideband_hz: f64) -> Result<()> {
    if !(rf_hz > 0.0) || !(sideband_hz > 0.0) {
        return Err(Error::invalid(
            "frequencies must be positive".to_string(),
        ));
    }
    if sideband_hz <= rf_hz {
        return Err(Error::invalid(format!(
            "sideband frequency {sideband_hz} Hz must exceed the signal frequency {rf_hz} Hz"
        )));
    }
    Ok(())
}

/// Power [W] emitted into one sideband for a given drive power and efficiency.
pub fn sideband_power(rf_power_w: f64, power_efficiency: f64) -> Result<f64> {
    if !(rf_power_w >= 0.0) || !(power_efficiency >= 0.0) {
        return Err(Error::invalid(
            "power and efficiency must be non-negative".to_string(),
        ));
    }
    Ok(rf_power_w * power_efficiency)
}

/// Steady-state photon-number conversion efficiency of the resonant converter:
/// `eta = 4C/(1+C)^2 * Gc/(Gc+Gabs) * gc/(gc+gabs)`.
///
/// Unity requires critical cooperativity with both the optical and microwave
/// modes extraction-dominated.
pub fn steady_state_efficiency(
    cooperativity: f64,
    optical_coupling_rate_hz: f64,
    optical_intrinsic_rate_hz: f64,
    microwave_coupling_rate_hz: f64,
    microwave_absorption_rate_hz: f64,
) -> Result<f64> {
    if !(cooperativity >= 0.0) {
        return Err(Error::invalid(format!(
            "cooperativity must be non-negative, got {cooperativity}"
        )));
    }
    for (name, rate) in [
        ("optical coupling", optical_coupling_rate_hz),
        ("optical intrinsic", optical_intrinsic_rate_hz),
        ("microwave coupling", microwave_coupling_rate_hz),
        ("microwave absorption", microwave_absorption_rate_hz),
    ] {
        if !(rate >= 0.0) {
            return Err(Error::invalid(format!(
                "{name} rate must be non-negative, got {rate} Hz"
            )));
        }
    }
    let optical_total = optical_coupling_rate_hz + optical_intrinsic_rate_hz;
    let microwave_total = microwave_coupling_rate_hz + microwave_absorption_rate_hz;
    if optical_total <= 0.0 {
        return Err(Error::invalid("optical rates are all zero".to_string()));
    }
    if microwave_total <= 0.0 {
        return Err(Error::invalid("microwave rates are all zero".to_string()));
    }
    let matching = 4.0 * cooperativity / ((1.0 + cooperativity) * (1.0 + cooperativity));
    Ok(matching * (optical_coupling_rate_hz / optical_total) * (microwave_coupling_rate_hz / microwave_total))
}

/// Relative Lorentzian weights of the two sidebands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SidebandWeights {
    pub stokes: f64,
    pub anti_stokes: f64,
}

/// Lorentzian weight `1 / (1 + (2 delta / linewidth)^2)` for each sideband,
/// from the offsets of the emitted lines to their target modes.
pub fn asymmetry_weights(
    stokes_offset_hz: f64,
    anti_stokes_offset_hz: f64,
    linewidth_hz: f64,
) -> Result<SidebandWeights> {
    if !(linewidth_hz > 0.0) {
        return Err(Error::invalid(format!(
            "linewidth must be positive, got {linewidth_hz} Hz"
        )));
    }
    let weight = |delta: f64| -> f64 {
        let x = 2.0 * delta / linewidth_hz;
        1.0 / (1.0 + x * x)
    };
    Ok(SidebandWeights {
        stokes: weight(stokes_offset_hz),
        anti_stokes: weight(anti_stokes_offset_hz),
    })
}

/// Sideband weights for a signal at `rf_frequency_hz` against a mode grid of
/// spacing `fsr_hz` whose sideband modes sit `dispersion_offset_hz` beyond the
/// nearest exact grid multiple (anti-Stokes shifted up, Stokes shifted down).
pub fn sideband_asymmetry(
    fsr_hz: f64,
    rf_frequency_hz: f64,
    dispersion_offset_hz: f64,
    linewidth_hz: f64,
) -> Result<SidebandWeights> {
    if !(fsr_hz > 0.0) || !(rf_frequency_hz > 0.0) {
        return Err(Error::invalid(
            "frequencies must be positive".to_string(),
        ));
    }
    let order = ((rf_frequency_hz - dispersion_offset_hz) / fsr_hz).round();
    let anti_stokes_offset = rf_frequency_hz - (order * fsr_hz + dispersion_offset_hz);
    let stokes_offset = -anti_stokes_offset;
    asymmetry_weights(stokes_offset, anti_stokes_offset, linewidth_hz)
}

/// Microwave mode of the converter with its loss budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MicrowaveMode {
    pub frequency_hz: f64,
    pub orbital_momentum: i64,
    /// Material absorption rate [Hz].
    pub absorption_rate_hz: f64,
    /// Rate of depletion by the nonlinear conversion [Hz].
    pub nonlinear_rate_hz: f64,
    /// External coupling rate [Hz].
    pub coupling_rate_hz: f64,
}

impl MicrowaveMode {
    pub fn new(
        frequency_hz: f64,
        orbital_momentum: i64,
        absorption_rate_hz: f64,
        nonlinear_rate_hz: f64,
        coupling_rate_hz: f64,
    ) -> Result<Self> {
        if !(frequency_hz > 0.0) {
            return Err(Error::invalid(format!(
                "microwave frequency must be positive, got {frequency_hz} Hz"
            )));
        }
        if orbital_momentum < 0 {
            return Err(Error::invalid(format!(
                "microwave orbital momentum must be non-negative, got {orbital_momentum}"
            )));
        }
        if absorption_rate_hz < 0.0 || nonlinear_rate_hz < 0.0 || coupling_rate_hz < 0.0 {
            return Err(Error::invalid(
                "microwave rates must be non-negative".to_string(),
            ));
        }
        Ok(MicrowaveMode {
            frequency_hz,
            orbital_momentum,
            absorption_rate_hz,
            nonlinear_rate_hz,
            coupling_rate_hz,
        })
    }

    /// Total loss rate [Hz]: nonlinear + absorption + external coupling.
    pub fn total_loss_rate_hz(&self) -> f64 {
        self.nonlinear_rate_hz + self.absorption_rate_hz + self.coupling_rate_hz
    }
}

/// The pump, both sidebands, and the microwave mode of one conversion setting.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeTriple {
    pub pump: OpticalMode,
    pub anti_stokes: OpticalMode,
    pub stokes: OpticalMode,
    pub microwave: MicrowaveMode,
    pub residual_detuning_hz: f64,
}

impl ModeTriple {
    pub fn new(
        pump: OpticalMode,
        anti_stokes: OpticalMode,
        stokes: OpticalMode,
        microwave: MicrowaveMode,
        residual_detuning_hz: f64,
    ) -> Result<Self> {
        let l_rf = microwave.orbital_momentum;
        if anti_stokes.orbital_momentum - pump.orbital_momentum != l_rf
            || pump.orbital_momentum - stokes.orbital_momentum != l_rf
        {
            return Err(Error::invalid(format!(
                "orbital momenta do not close: pump {}, anti-Stokes {}, Stokes {}, microwave {}",
                pump.orbital_momentum,
                anti_stokes.orbital_momentum,
                stokes.orbital_momentum,
                l_rf
            )));
        }
        Ok(ModeTriple {
            pump,
            anti_stokes,
            stokes,
            microwave,
            residual_detuning_hz,
        })
    }

    /// Builds the triple with sidebands at the pump rates and at frequencies
    /// `nu_p +/- nu_rf`.
    pub fn symmetric(
        pump: OpticalMode,
        microwave: MicrowaveMode,
        residual_detuning_hz: f64,
    ) -> Result<Self> {
        let momenta = sideband_momenta(pump.orbital_momentum, microwave.orbital_momentum)?;
        let (stokes_hz, anti_stokes_hz) =
            sideband_frequencies(pump.frequency_hz, microwave.frequency_hz)?;
        let anti_stokes = OpticalMode::new(
            momenta.anti_stokes,
            anti_stokes_hz,
            pump.intrinsic_rate_hz,
            pump.coupling_rate_hz,
        )?;
        let stokes = OpticalMode::new(
            momenta.stokes,
            stokes_hz,
            pump.intrinsic_rate_hz,
            pump.coupling_rate_hz,
        )?;
        ModeTriple::new(pump, anti_stokes, stokes, microwave, residual_detuning_hz)
    }
}

/// Power and photon-number bookkeeping of one conversion measurement.
/// The photon efficiencies use the anti-Stokes frequency; both sidebands are
/// treated symmetrically and the both-band number is their plain sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConversionBudget {
    pub pump_power_w: f64,
    pub rf_power_w: f64,
    pub power_efficiency_per_sideband: f64,
    pub photon_efficiency_per_sideband: f64,
    pub photon_efficiency_both: f64,
    pub sideband_power_w: f64,
}

impl ConversionBudget {
    pub fn from_power_efficiency(
        pump_power_w: f64,
        rf_power_w: f64,
        power_efficiency_per_sideband: f64,
        rf_frequency_hz: f64,
        sideband_frequency_hz: f64,
    ) -> Result<Self> {
        if !(pump_power_w >= 0.0) || !(rf_power_w >= 0.0) {
            return Err(Error::invalid("powers must be non-negative".to_string()));
        }
        let eta_n = manley_rowe(
            power_efficiency_per_sideband,
            rf_frequency_hz,
            sideband_frequency_hz,
        )?;
        Ok(ConversionBudget {
            pump_power_w,
            rf_power_w,
            power_efficiency_per_sideband,
            photon_efficiency_per_sideband: eta_n,
            photon_efficiency_both: 2.0 * eta_n,
            sideband_power_w: sideband_power(rf_power_w, power_efficiency_per_sideband)?,
        })
    }
}
