//! Reproducible experiment harness: seeded run configurations, command
//! drivers and machine-readable reports (CSV or JSON).

mod commands;
mod config;
mod report;

pub use commands::{random_mass_one_measure, random_symmetric_polytope, rerun_from_header, run};
pub use config::{
    format_polytope_fixture, parse_polytope_fixture, read_polytope_fixture, BodySpec,
    ResidualSweepConfig, ProfileSpec, RunConfig,
};
pub use report::{Report, ReportHeader, ReportRow, RowBuilder};
