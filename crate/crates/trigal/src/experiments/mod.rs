//! The experiments behind each subcommand.
//!
//! Every experiment returns an [`Outcome`]: named checks, a serializable
//! result and any bulk CSV files. Writing them out is left to the caller.

mod algebra;
mod groups;
mod identities;
mod mixing;
mod stats;

pub use algebra::{cohomology, wreath, CohomologyReport, CohomologyRow, WreathParams, WreathReport};
pub use groups::{groups, GroupCheck, GroupsParams, GroupsReport};
pub use identities::{identities, IdentityParams, IdentityReport};
pub use mixing::{mixing, MixingParams, MixingReport};
pub use stats::{
    chebotarev, dyson, population, ChebotarevParams, ChebotarevReport, DysonReport, Expectation,
    PopulationParams, PopulationReport,
};

use crate::output::Checks;

/// Result of one experiment.
#[derive(Debug)]
pub struct Outcome<T> {
    pub checks: Checks,
    pub results: T,
    /// `(file name, contents)` pairs.
    pub files: Vec<(String, String)>,
}

impl<T> Outcome<T> {
    fn new(checks: Checks, results: T) -> Self {
        Self { checks, results, files: Vec::new() }
    }

    fn with_file(mut self, name: impl Into<String>, contents: String) -> Self {
        self.files.push((name.into(), contents));
        self
    }
}
