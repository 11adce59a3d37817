//! Modeling toolkit for a whispering-gallery-mode electro-optic upconverter
//! that shifts sub-THz signals into the optical band.
//!
//! The crate covers the full design chain: material dispersion laws, the mode
//! spectrum of a disk resonator, prism coupler geometry and resonance
//! transmission, three-wave-mixing conversion budgets, photon-counting noise
//! budgets, and scenario-driven reports, synthetic spectra, and parameter
//! sweeps.

// Guards are written as `!(x > 0.0)` so that NaN fails validation too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Unit annotations like [Hz] in doc comments are not intra-doc links.
#![allow(rustdoc::broken_intra_doc_links)]

pub mod constants;
pub mod conversion;
pub mod coupling;
pub mod detection;
pub mod error;
pub mod materials;
pub mod resonator;
pub mod scenario;

pub use error::{Error, Result};
