//! Evanescent prism coupler design and the coupled-resonance transmission dip.
//!
//! Angles cross the public interface in degrees; all internal trigonometry is
//! in radians.

use crate::error::{Error, Result};

/// Phase-matched incidence angle [deg]: `theta = asin(n_core / n_prism)`.
pub fn phase_match_angle(n_core: f64, n_prism: f64) -> Result<f64> {
    if !(n_core > 0.0) || !(n_prism > 0.0) {
        return Err(Error::invalid(format!(
            "indices must be positive, got core {n_core}, prism {n_prism}"
        )));
    }
    if n_core > n_prism {
        return Err(Error::domain(format!(
            "no phase-matched angle exists: core index {n_core} exceeds prism index {n_prism}"
        )));
    }
    Ok((n_core / n_prism).asin().to_degrees())
}

/// Rim curvature radius [m] matching the coupling footprint: `r = R cos^2(theta)`.
pub fn optimal_rim_radius(major_radius_m: f64, theta_deg: f64) -> Result<f64> {
    if !(major_radius_m > 0.0) {
        return Err(Error::invalid(format!(
            "major radius must be positive, got {major_radius_m} m"
        )));
    }
    if !(theta_deg > 0.0 && theta_deg <= 90.0) {
        return Err(Error::invalid(format!(
            "incidence angle must be in (0, 90] degrees, got {theta_deg}"
        )));
    }
    let c = theta_deg.to_radians().cos();
    Ok(major_radius_m * c * c)
}

/// Axes ratio of the elliptical coupling fringe: `sqrt(R / r) >= 1`.
pub fn fringe_axes_ratio(major_radius_m: f64, rim_radius_m: f64) -> Result<f64> {
    if !(rim_radius_m > 0.0) {
        return Err(Error::invalid(format!(
            "rim radius must be positive, got {rim_radius_m} m"
        )));
    }
    if rim_radius_m > major_radius_m {
        return Err(Error::invalid(format!(
            "rim radius {rim_radius_m} m exceeds major radius {major_radius_m} m"
        )));
    }
    Ok((major_radius_m / rim_radius_m).sqrt())
}

/// Power transmission past a single-port resonance at detuning `delta` [Hz]:
/// `T = (delta^2 + (G_abs - G_c)^2/4) / (delta^2 + (G_abs + G_c)^2/4)`.
pub fn transmission(detuning_hz: f64, intrinsic_rate_hz: f64, coupling_rate_hz: f64) -> Result<f64> {
    if !(intrinsic_rate_hz > 0.0) {
        return Err(Error::invalid(format!(
            "intrinsic rate must be positive, got {intrinsic_rate_hz} Hz"
        )));
    }
    if coupling_rate_hz < 0.0 {
        return Err(Error::invalid(format!(
            "coupling rate must be non-negative, got {coupling_rate_hz} Hz"
        )));
    }
    let d2 = detuning_hz * detuning_hz;
    let diff = 0.5 * (intrinsic_rate_hz - coupling_rate_hz);
    let sum = 0.5 * (intrinsic_rate_hz + coupling_rate_hz);
    Ok((d2 + diff * diff) / (d2 + sum * sum))
}

/// Coupling ratios `G_c / G_abs` producing a given on-resonance contrast.
/// Both branches solve `((1 - x)/(1 + x))^2 = 1 - contrast`; the dip depth
/// cannot distinguish them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingRatios {
    pub undercoupled: f64,
    pub overcoupled: f64,
}

pub fn coupling_ratio_from_contrast(contrast: f64) -> Result<CouplingRatios> {
    if !(contrast > 0.0 && contrast <= 1.0) {
        return Err(Error::invalid(format!(
            "contrast must be in (0, 1], got {contrast}"
        )));
    }
    let s = (1.0 - contrast).sqrt();
    Ok(CouplingRatios {
        undercoupled: (1.0 - s) / (1.0 + s),
        overcoupled: (1.0 + s) / (1.0 - s),
    })
}

/// Splits a loaded linewidth into (intrinsic, coupling) rates for a given
/// `G_c / G_abs` ratio.
pub fn rates_from_linewidth(loaded_linewidth_hz: f64, coupling_ratio: f64) -> Result<(f64, f64)> {
    if !(loaded_linewidth_hz > 0.0) {
        return Err(Error::invalid(format!(
            "loaded linewidth must be positive, got {loaded_linewidth_hz} Hz"
        )));
    }
    if !(coupling_ratio >= 0.0) {
        return Err(Error::invalid(format!(
            "coupling ratio must be non-negative, got {coupling_ratio}"
        )));
    }
    let intrinsic = loaded_linewidth_hz / (1.0 + coupling_ratio);
    let coupling = loaded_linewidth_hz - intrinsic;
    Ok((intrinsic, coupling))
}

/// Complete prism coupler design for a core/prism index pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrismCouplerDesign {
    /// Incidence angle [deg].
    pub incidence_angle_deg: f64,
    pub prism_index: f64,
    pub core_index: f64,
    /// Optimal `r / R`.
    pub rim_ratio: f64,
    /// Fringe ellipse axes ratio for the optimal rim.
    pub fringe_axes_ratio: f64,
}

impl PrismCouplerDesign {
    pub fn design(core_index: f64, prism_index: f64) -> Result<Self> {
        let theta = phase_match_angle(core_index, prism_index)?;
        // Reference radius cancels out of both ratios.
        let rim = optimal_rim_radius(1.0, theta)?;
        Ok(PrismCouplerDesign {
            incidence_angle_deg: theta,
            prism_index,
            core_index,
            rim_ratio: rim,
            fringe_axes_ratio: fringe_axes_ratio(1.0, rim)?,
        })
    }

    /// True for the grazing design, where the matched angle reaches 90
    /// degrees and the optimal rim radius collapses.
    pub fn is_degenerate(&self) -> bool {
        self.incidence_angle_deg >= 90.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    // Indices frozen from the dispersion-law oracle at 1560 nm, 295 K.
    const N_E: f64 = 2.1374760259895944;
    const N_D: f64 = 2.3854818819598456;

    #[test]
    fn phase_match_angle_examples() {
        let theta = phase_match_angle(N_E, N_D).unwrap();
        assert!(rel(theta, 63.641724830663684) < 1e-12, "theta = {theta}");
        assert!((theta - 63.6).abs() < 0.3);
        assert_eq!(phase_match_angle(1.5, 1.5).unwrap(), 90.0);
        assert!(matches!(
            phase_match_angle(N_D, N_E),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn optimal_rim_radius_examples() {
        let theta = phase_match_angle(N_E, N_D).unwrap();
        let r = optimal_rim_radius(1.8e-3, theta).unwrap();
        assert!(rel(r, 3.5481726343214486e-4) < 1e-12, "r = {r}");
        assert!(rel(r, 0.356e-3) < 0.02);
        assert!(rel(optimal_rim_radius(1.8e-3, 1e-9).unwrap(), 1.8e-3) < 1e-12);
        assert!(optimal_rim_radius(1.8e-3, 0.0).is_err());
        // 90 degrees collapses the rim.
        assert!(optimal_rim_radius(1.8e-3, 90.0).unwrap().abs() < 1e-30);
    }

    #[test]
    fn fringe_axes_ratio_examples() {
        let f = fringe_axes_ratio(1.8e-3, 3.5481726343214486e-4).unwrap();
        assert!(rel(f, 2.2523396466663845) < 1e-12, "f = {f}");
        assert!(rel(f, 2.25) < 0.02);
        assert_eq!(fringe_axes_ratio(1.0, 1.0).unwrap(), 1.0);
        assert!(fringe_axes_ratio(1.0, 0.0).is_err());
        assert!(fringe_axes_ratio(1.0, 2.0).is_err());
    }

    #[test]
    fn composition_identity() {
        let theta = phase_match_angle(N_E, N_D).unwrap();
        let rim_ratio = optimal_rim_radius(1.0, theta).unwrap();
        let identity = rim_ratio + (N_E / N_D) * (N_E / N_D);
        assert!((identity - 1.0).abs() < 1e-12);
    }

    #[test]
    fn design_satisfies_its_invariants() {
        let d = PrismCouplerDesign::design(N_E, N_D).unwrap();
        let theta_rad = d.incidence_angle_deg.to_radians();
        assert!(rel(theta_rad.sin() * d.prism_index, d.core_index) < 1e-12);
        assert!(rel(d.rim_ratio, theta_rad.cos().powi(2)) < 1e-12);
        assert!((d.fringe_axes_ratio.powi(2) * d.rim_ratio - 1.0).abs() < 1e-9);
        assert!(!d.is_degenerate());
    }

    #[test]
    fn transmission_examples() {
        assert_eq!(transmission(0.0, 5e6, 5e6).unwrap(), 0.0);
        let g = 5e6;
        let far = transmission(1e3 * 2.0 * g, g, g).unwrap();
        assert!((far - 1.0).abs() < 1e-6);
        // Contrast of 99.96% at the undercoupled branch ratio.
        let t0 = transmission(0.0, 1.0, 0.9607843137254923).unwrap();
        assert!((t0 - 4.0e-4).abs() < 1e-12, "t0 = {t0}");
        assert!(transmission(0.0, 0.0, 1.0).is_err());
        assert!(transmission(0.0, 1.0, -0.1).is_err());
    }

    #[test]
    fn coupling_ratio_from_contrast_examples() {
        let r = coupling_ratio_from_contrast(0.9996).unwrap();
        assert!((r.undercoupled - 0.9608).abs() < 1e-3);
        assert!((r.overcoupled - 1.0408).abs() < 1e-3);
        let exact = coupling_ratio_from_contrast(1.0).unwrap();
        assert_eq!(exact.undercoupled, 1.0);
        assert_eq!(exact.overcoupled, 1.0);
        let r75 = coupling_ratio_from_contrast(0.75).unwrap();
        assert!(rel(r75.undercoupled, 1.0 / 3.0) < 1e-12);
        assert!(rel(r75.overcoupled, 3.0) < 1e-12);
        assert!(coupling_ratio_from_contrast(0.0).is_err());
        assert!(coupling_ratio_from_contrast(1.1).is_err());
    }

    #[test]
    fn rates_from_linewidth_splits_correctly() {
        let (g_abs, g_c) = rates_from_linewidth(20e6, 0.9608).unwrap();
        assert!(rel(g_abs + g_c, 20e6) < 1e-12);
        assert!(rel(g_c / g_abs, 0.9608) < 1e-12);
        assert!(rates_from_linewidth(0.0, 1.0).is_err());
        assert!(rates_from_linewidth(1.0, -1.0).is_err());
    }

    proptest! {
        #[test]
        fn branch_symmetry(x in 1e-3f64..0.99, g in 1e3f64..1e9) {
            let under = transmission(0.0, g, x * g).unwrap();
            let over = transmission(0.0, g, g / x).unwrap();
            let scale = under.max(over);
            prop_assert!((under - over).abs() / scale < 1e-12,
                "under = {under}, over = {over}");
        }

        #[test]
        fn contrast_round_trip(contrast in 1e-6f64..1.0) {
            let ratios = coupling_ratio_from_contrast(contrast).unwrap();
            for x in [ratios.undercoupled, ratios.overcoupled] {
                let t0 = transmission(0.0, 1.0, x).unwrap();
                prop_assert!(((1.0 - t0) - contrast).abs() < 1e-9);
            }
        }

        #[test]
        fn transmission_even_bounded_monotone(
            d in 0.0f64..1e9,
            g_abs in 1e3f64..1e9,
            ratio in 0.0f64..10.0,
        ) {
            let g_c = ratio * g_abs;
            let plus = transmission(d, g_abs, g_c).unwrap();
            let minus = transmission(-d, g_abs, g_c).unwrap();
            prop_assert_eq!(plus, minus);
            prop_assert!((0.0..=1.0).contains(&plus));
            let further = transmission(2.0 * d + 1.0, g_abs, g_c).unwrap();
            prop_assert!(further >= plus);
        }
    }
}
