//! p-ary sequence families of period N = (p^n - 1)/2 with family size 4N,
//! built from a quadratic-residue decimation of an m-sequence over GF(p^n),
//! together with exact correlation spectra and character-sum bound checks.
//!
//! ```
//! use std::sync::Arc;
//! use lowcorr::correlation::{family_spectrum, SpectrumOptions};
//! use lowcorr::field::build_field;
//! use lowcorr::sequences::{Decimation, FamilySpec};
//!
//! let ctx = Arc::new(build_field(3, 3, None).unwrap());
//! let spec = FamilySpec::standard(ctx, Decimation::Four).unwrap();
//! let report = family_spectrum(&spec, &SpectrumOptions::default()).unwrap();
//! assert!(report.pass);
//! assert_eq!(spec.family_size(), 52);
//! ```

pub mod char_sums;
pub mod cli;
pub mod correlation;
pub mod field;
pub mod sequences;
pub mod table1;
