//! Heterogeneity-aware evaluation of log parsers.
//!
//! The crate covers three jobs:
//!
//! * **measure** how heterogeneous a log dataset is ([`heterogeneity`]),
//! * **synthesize** more heterogeneous data from homogeneous public datasets by
//!   mixing in rare lines from other systems ([`mixing`]) and re-drawing
//!   variables ([`fuzzing`]), using static resources built by [`pool`],
//! * **evaluate** parsers with template-level metrics ([`metrics`]) over
//!   repeated seeded runs ([`harness`]).
//!
//! ```
//! use logbench::corpus::Dataset;
//! use logbench::metrics::{template_accuracy, ParseResult};
//! use logbench::parsers::{parse, ParserConfig};
//!
//! let ds = Dataset::from_pairs(
//!     "demo",
//!     [("Template log 1", Some("Template log <*>")), ("Template log 2", Some("Template log <*>"))],
//! )?;
//! let predicted = parse(&ds, &ParserConfig::tree())?;
//! let truth = ParseResult::from_ground_truth(&ds)?;
//! assert_eq!(template_accuracy(&predicted, &truth)?, 1.0);
//! # Ok::<(), logbench::Error>(())
//! ```

pub mod corpus;
mod error;
pub mod fuzzing;
pub mod harness;
pub mod heterogeneity;
pub mod metrics;
pub mod mixing;
pub mod parsers;
pub mod pool;
pub mod synthetic;

pub use error::{Error, Result};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/datasets.md")]
    mod datasets {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    mod metrics {}
    #[doc = include_str!("../../../book/src/heterogeneity.md")]
    mod heterogeneity {}
    #[doc = include_str!("../../../book/src/mixing.md")]
    mod mixing {}
    #[doc = include_str!("../../../book/src/fuzzing.md")]
    mod fuzzing {}
    #[doc = include_str!("../../../book/src/parsers.md")]
    mod parsers {}
    #[doc = include_str!("../../../book/src/harness.md")]
    mod harness {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
