//! Random typing trials and the arithmetic around them.
//!
//! `monkeysim` types fixed-length candidate strings from a uniform alphabet
//! until one equals a target prefix, records how many attempts that took,
//! and extrapolates the measured means to much longer targets with a
//! geometric progression. The exact success probabilities `(1/A)^n` come
//! alongside, carried in [`ScaledDecimal`] so magnitudes like `10^-2609` stay
//! representable.
//!
//! ```
//! use monkeysim::{analytics, ScaledDecimal};
//!
//! let p = analytics::success_probability(52, 41).unwrap();
//! assert_eq!(p.exponent(), -71);
//! assert_eq!(p.to_string(), "4.404e-71");
//! ```
//!
//! The guide under `book/` walks through each module; its code listings are
//! compiled as doc-tests of this crate.

pub mod analytics;
pub mod census;
pub mod decimal;
pub mod error;
pub mod fixtures;
pub mod model;
pub mod simulator;
pub mod tables;

pub use decimal::ScaledDecimal;
pub use error::{Error, Result};
pub use model::{
    Alphabet, AlphabetPreset, GrowthModel, MeasurementTable, ProjectionRow, ProjectionTable, Region, TargetText,
    TrialRecord,
};

// `cargo test --doc` runs the guide's listings through these modules.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/scaled-decimals.md")]
    mod scaled_decimals {}
    #[doc = include_str!("../../../book/src/prefix-trials.md")]
    mod prefix_trials {}
    #[doc = include_str!("../../../book/src/growth-projection.md")]
    mod growth_projection {}
    #[doc = include_str!("../../../book/src/probabilities.md")]
    mod probabilities {}
    #[doc = include_str!("../../../book/src/census.md")]
    mod census {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
