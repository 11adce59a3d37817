//! Refractive index laws for the resonator and prism materials.
//!
//! Each material/axis pair carries one published dispersion law, stored in a
//! versioned data file (`data/materials.toml`) that cites its source. The
//! squared index is a sum of terms in the wavelength (micrometres), with
//! optional thermal corrections proportional to
//! `f = (t - t_ref_c) * (t + t_offset_c)` for `t` in degrees Celsius.

use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const BUILTIN_DATA: &str = include_str!("../data/materials.toml");

/// Optical axis a dispersion law applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Ordinary,
    Extraordinary,
    Isotropic,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axis::Ordinary => "ordinary",
            Axis::Extraordinary => "extraordinary",
            Axis::Isotropic => "isotropic",
        };
        f.write_str(s)
    }
}

/// One additive term of a squared-index law. Wavelengths in micrometres;
/// the `*_per_f` fields scale with the thermal factor `f` and default to zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Term {
    /// `value`
    Constant {
        value: f64,
        #[serde(default, skip_serializing_if = "is_zero")]
        value_per_f: f64,
    },
    /// `numerator_um2 / (lambda^2 - center_um^2)`
    Pole {
        numerator_um2: f64,
        #[serde(default, skip_serializing_if = "is_zero")]
        numerator_per_f: f64,
        center_um: f64,
        #[serde(default, skip_serializing_if = "is_zero")]
        center_per_f: f64,
    },
    /// `strength * lambda^2 / (lambda^2 - center_um^2)`
    Sellmeier { strength: f64, center_um: f64 },
    /// `value * lambda^2`
    LambdaSq {
        value: f64,
        #[serde(default, skip_serializing_if = "is_zero")]
        value_per_f: f64,
    },
}

fn is_zero(v: &f64) -> bool {
    *v == 0.0
}

impl Term {
    fn eval(&self, lambda_sq_um: f64, f: f64) -> f64 {
        match *self {
            Term::Constant { value, value_per_f } => value + value_per_f * f,
            Term::Pole {
                numerator_um2,
                numerator_per_f,
                center_um,
                center_per_f,
            } => {
                let center = center_um + center_per_f * f;
                (numerator_um2 + numerator_per_f * f) / (lambda_sq_um - center * center)
            }
            Term::Sellmeier { strength, center_um } => {
                strength * lambda_sq_um / (lambda_sq_um - center_um * center_um)
            }
            Term::LambdaSq { value, value_per_f } => (value + value_per_f * f) * lambda_sq_um,
        }
    }

    fn has_thermal(&self) -> bool {
        match *self {
            Term::Constant { value_per_f, .. } => value_per_f != 0.0,
            Term::Pole {
                numerator_per_f,
                center_per_f,
                ..
            } => numerator_per_f != 0.0 || center_per_f != 0.0,
            Term::Sellmeier { .. } => false,
            Term::LambdaSq { value_per_f, .. } => value_per_f != 0.0,
        }
    }
}

/// Parameters of the thermal factor `f = (t - t_ref_c)(t + t_offset_c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Thermal {
    pub t_ref_c: f64,
    pub t_offset_c: f64,
}

/// A named index law with its validity window and source citation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DispersionModel {
    pub name: String,
    pub axis: Axis,
    /// Wavelength validity interval [micrometres].
    pub validity_um: (f64, f64),
    /// Temperature validity interval [K], enforced when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub temperature_range_k: Option<(f64, f64)>,
    pub source: String,
    /// Thermal factor definition; laws without it ignore the temperature argument.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thermal: Option<Thermal>,
    pub terms: Vec<Term>,
}

impl DispersionModel {
    /// Evaluates the refractive index at `wavelength_m` [m] and
    /// `temperature_k` [K]. Laws without thermal terms ignore the
    /// temperature argument.
    pub fn refractive_index(&self, wavelength_m: f64, temperature_k: f64) -> Result<f64> {
        if !wavelength_m.is_finite() || wavelength_m <= 0.0 {
            return Err(Error::invalid(format!(
                "wavelength must be positive, got {wavelength_m} m"
            )));
        }
        let um = wavelength_m * 1e6;
        let (lo, hi) = self.validity_um;
        if um < lo || um > hi {
            return Err(Error::domain(format!(
                "wavelength {um:.6} um outside validity interval [{lo}, {hi}] um of {} ({})",
                self.name, self.axis
            )));
        }
        let f = match &self.thermal {
            Some(th) => {
                if !temperature_k.is_finite() {
                    return Err(Error::invalid(format!(
                        "temperature must be finite, got {temperature_k} K"
                    )));
                }
                if let Some((tlo, thi)) = self.temperature_range_k {
                    if temperature_k < tlo || temperature_k > thi {
                        return Err(Error::domain(format!(
                            "temperature {temperature_k} K outside range [{tlo}, {thi}] K of {} ({})",
                            self.name, self.axis
                        )));
                    }
                }
                let t = temperature_k - 273.15;
                (t - th.t_ref_c) * (t + th.t_offset_c)
            }
            None => 0.0,
        };
        let l2 = um * um;
        let n_sq: f64 = self.terms.iter().map(|term| term.eval(l2, f)).sum();
        if !n_sq.is_finite() || n_sq <= 1.0 {
            return Err(Error::domain(format!(
                "index law {} ({}) is non-physical at {um:.6} um (n^2 = {n_sq})",
                self.name, self.axis
            )));
        }
        Ok(n_sq.sqrt())
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.validity_um;
        if !(lo > 0.0 && hi > lo) {
            return Err(Error::config(format!(
                "material {} ({}): validity_um must be a positive non-empty interval, got [{lo}, {hi}]",
                self.name, self.axis
            )));
        }
        if self.terms.is_empty() {
            return Err(Error::config(format!(
                "material {} ({}): terms must not be empty",
                self.name, self.axis
            )));
        }
        if self.thermal.is_none() && self.terms.iter().any(Term::has_thermal) {
            return Err(Error::config(format!(
                "material {} ({}): thermal coefficients given but no [thermal] block",
                self.name, self.axis
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MaterialFile {
    material: Vec<DispersionModel>,
}

/// A set of dispersion laws keyed by material name and axis.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialDb {
    materials: Vec<DispersionModel>,
}

impl MaterialDb {
    /// Parses a material data file.
    pub fn parse(text: &str) -> Result<Self> {
        let file: MaterialFile =
            toml::from_str(text).map_err(|e| Error::config(format!("material file: {e}")))?;
        for model in &file.material {
            model.validate()?;
        }
        Ok(MaterialDb {
            materials: file.material,
        })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// The database shipped with the crate.
    pub fn builtin() -> &'static MaterialDb {
        static DB: OnceLock<MaterialDb> = OnceLock::new();
        DB.get_or_init(|| MaterialDb::parse(BUILTIN_DATA).expect("builtin material data is valid"))
    }

    pub fn models(&self) -> &[DispersionModel] {
        &self.materials
    }

    pub fn get(&self, name: &str, axis: Axis) -> Result<&DispersionModel> {
        self.materials
            .iter()
            .find(|m| m.name == name && m.axis == axis)
            .ok_or_else(|| Error::config(format!("material '{name}' with {axis} axis not found")))
    }

    /// Looks a material up by name alone when it has exactly one axis entry,
    /// otherwise requires the extraordinary axis to be present.
    pub fn get_default_axis(&self, name: &str) -> Result<&DispersionModel> {
        let mut entries = self.materials.iter().filter(|m| m.name == name);
        match (entries.next(), entries.next()) {
            (Some(only), None) => Ok(only),
            (Some(_), Some(_)) => self.get(name, Axis::Extraordinary),
            (None, _) => Err(Error::config(format!("material '{name}' not found"))),
        }
    }

    /// Renders the database back to its file format. All floats are written
    /// with 17 significant digits so a parse of the output reproduces every
    /// value bit-exactly.
    pub fn to_toml_string(&self) -> String {
        let mut out = String::from("# Dispersion law database.\n");
        for m in &self.materials {
            out.push_str("\n[[material]]\n");
            out.push_str(&format!("name = {:?}\n", m.name));
            out.push_str(&format!("axis = \"{}\"\n", m.axis));
            out.push_str(&format!(
                "validity_um = [{}, {}]\n",
                fmt_f64(m.validity_um.0),
                fmt_f64(m.validity_um.1)
            ));
            if let Some((lo, hi)) = m.temperature_range_k {
                out.push_str(&format!(
                    "temperature_range_k = [{}, {}]\n",
                    fmt_f64(lo),
                    fmt_f64(hi)
                ));
            }
            out.push_str(&format!("source = {:?}\n", m.source));
            if let Some(th) = &m.thermal {
                out.push_str(&format!(
                    "thermal = {{ t_ref_c = {}, t_offset_c = {} }}\n",
                    fmt_f64(th.t_ref_c),
                    fmt_f64(th.t_offset_c)
                ));
            }
            out.push_str("terms = [\n");
            for term in &m.terms {
                out.push_str("    ");
                out.push_str(&fmt_term(term));
                out.push_str(",\n");
            }
            out.push_str("]\n");
        }
        out
    }
}

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_term(term: &Term) -> String {
    match *term {
        Term::Constant { value, value_per_f } => {
            let mut s = format!("{{ kind = \"constant\", value = {}", fmt_f64(value));
            if value_per_f != 0.0 {
                s.push_str(&format!(", value_per_f = {}", fmt_f64(value_per_f)));
            }
            s.push_str(" }");
            s
        }
        Term::Pole {
            numerator_um2,
            numerator_per_f,
            center_um,
            center_per_f,
        } => {
            let mut s = format!(
                "{{ kind = \"pole\", numerator_um2 = {}",
                fmt_f64(numerator_um2)
            );
            if numerator_per_f != 0.0 {
                s.push_str(&format!(", numerator_per_f = {}", fmt_f64(numerator_per_f)));
            }
            s.push_str(&format!(", center_um = {}", fmt_f64(center_um)));
            if center_per_f != 0.0 {
                s.push_str(&format!(", center_per_f = {}", fmt_f64(center_per_f)));
            }
            s.push_str(" }");
            s
        }
        Term::Sellmeier { strength, center_um } => format!(
            "{{ kind = \"sellmeier\", strength = {}, center_um = {} }}",
            fmt_f64(strength),
            fmt_f64(center_um)
        ),
        Term::LambdaSq { value, value_per_f } => {
            let mut s = format!("{{ kind = \"lambda_sq\", value = {}", fmt_f64(value));
            if value_per_f != 0.0 {
                s.push_str(&format!(", value_per_f = {}", fmt_f64(value_per_f)));
            }
            s.push_str(" }");
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linbo3_e() -> &'static DispersionModel {
        MaterialDb::builtin()
            .get("linbo3", Axis::Extraordinary)
            .unwrap()
    }

    fn linbo3_o() -> &'static DispersionModel {
        MaterialDb::builtin().get("linbo3", Axis::Ordinary).unwrap()
    }

    fn diamond() -> &'static DispersionModel {
        MaterialDb::builtin().get("diamond", Axis::Isotropic).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn linbo3_extraordinary_at_pump() {
        let n = linbo3_e().refractive_index(1.56e-6, 295.0).unwrap();
        // Frozen from an independent evaluation of the Jundt law.
        assert!(rel(n, 2.1374760259895944) < 1e-12, "n_e = {n}");
        assert!((2.10..=2.17).contains(&n));
    }

    #[test]
    fn diamond_at_pump() {
        let n = diamond().refractive_index(1.56e-6, 295.0).unwrap();
        assert!(rel(n, 2.3854818819598456) < 1e-12, "n_d = {n}");
    }

    #[test]
    fn known_catalog_values() {
        // Literature spot checks at room temperature.
        let ne = linbo3_e().refractive_index(1.0642e-6, 297.65).unwrap();
        assert!((ne - 2.1558).abs() < 5e-4, "n_e(1064 nm) = {ne}");
        let no = linbo3_o().refractive_index(1.0642e-6, 297.65).unwrap();
        assert!((no - 2.2322).abs() < 5e-4, "n_o(1064 nm) = {no}");
        let nd = diamond().refractive_index(0.589e-6, 295.0).unwrap();
        assert!((nd - 2.4174).abs() < 5e-4, "n_d(589 nm) = {nd}");
    }

    #[test]
    fn out_of_validity_wavelength_is_domain_error() {
        let err = linbo3_e().refractive_index(10e-6, 295.0).unwrap_err();
        match err {
            Error::Domain(msg) => {
                assert!(msg.contains("0.4") && msg.contains('5'), "message: {msg}");
            }
            other => panic!("expected domain error, got {other:?}"),
        }
    }

    #[test]
    fn non_positive_wavelength_is_argument_error() {
        assert!(matches!(
            linbo3_e().refractive_index(0.0, 295.0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            linbo3_e().refractive_index(-1e-6, 295.0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn temperature_out_of_range_is_domain_error() {
        assert!(matches!(
            linbo3_e().refractive_index(1.56e-6, 600.0),
            Err(Error::Domain(_))
        ));
        // Diamond has no thermal terms and ignores temperature entirely.
        assert!(diamond().refractive_index(1.56e-6, 600.0).is_ok());
    }

    #[test]
    fn normal_dispersion_in_telecom_window() {
        for model in [linbo3_e(), linbo3_o(), diamond()] {
            let mut prev = f64::INFINITY;
            for i in 0..=40 {
                let lam = 1.3e-6 + 0.4e-6 * i as f64 / 40.0;
                let n = model.refractive_index(lam, 295.0).unwrap();
                assert!(
                    n < prev,
                    "{} ({}) not normally dispersive at {lam}",
                    model.name,
                    model.axis
                );
                prev = n;
            }
        }
    }

    #[test]
    fn linbo3_is_negative_uniaxial() {
        for (lam, t) in [(0.6e-6, 295.0), (1.06e-6, 300.0), (1.56e-6, 295.0), (3.0e-6, 310.0)] {
            let ne = linbo3_e().refractive_index(lam, t).unwrap();
            let no = linbo3_o().refractive_index(lam, t).unwrap();
            assert!(ne < no, "n_e = {ne} !< n_o = {no} at {lam}");
        }
    }

    #[test]
    fn prism_condition_is_feasible() {
        let ne = linbo3_e().refractive_index(1.56e-6, 295.0).unwrap();
        let nd = diamond().refractive_index(1.56e-6, 295.0).unwrap();
        assert!(ne < nd);
    }

    #[test]
    fn index_finite_and_above_one_across_validity() {
        for model in MaterialDb::builtin().models() {
            let (lo, hi) = model.validity_um;
            // Sample strictly inside the interval; the unit round trip can
            // push exact endpoints out by one ulp.
            let (lo, hi) = (lo * 1.000001, hi * 0.999999);
            for i in 0..=200 {
                let um = lo + (hi - lo) * i as f64 / 200.0;
                let n = model.refractive_index(um * 1e-6, 295.0).unwrap();
                assert!(n.is_finite() && n > 1.0, "{} at {um} um: {n}", model.name);
            }
        }
    }

    #[test]
    fn file_round_trip_is_exact() {
        let db = MaterialDb::builtin();
        let text = db.to_toml_string();
        let reparsed = MaterialDb::parse(&text).unwrap();
        assert_eq!(db, &reparsed);
        // And a second trip is byte-stable.
        assert_eq!(text, reparsed.to_toml_string());
    }

    #[test]
    fn thermal_coefficients_require_thermal_block() {
        let text = r#"
[[material]]
name = "x"
axis = "isotropic"
validity_um = [0.5, 2.0]
source = "test"
terms = [{ kind = "constant", value = 4.0, value_per_f = 1e-7 }]
"#;
        assert!(matches!(MaterialDb::parse(text), Err(Error::Config(_))));
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = r#"
[[material]]
name = "x"
axis = "isotropic"
validity_um = [0.5, 2.0]
source = "test"
bogus = 1
terms = [{ kind = "constant", value = 4.0 }]
"#;
        assert!(matches!(MaterialDb::parse(text), Err(Error::Config(_))));
    }

    #[test]
    fn missing_material_lookup_fails() {
        assert!(MaterialDb::builtin().get("sapphire", Axis::Isotropic).is_err());
        assert!(MaterialDb::builtin().get("linbo3", Axis::Isotropic).is_err());
    }
}
