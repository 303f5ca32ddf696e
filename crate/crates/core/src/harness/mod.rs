//! Configuration, experiment orchestration, property suite and report
//! emission: the pipeline behind the `hotspot` command line.

pub mod config;
pub mod emit;
pub mod props;
pub mod run;

pub use config::{
    load_config, DomainConfig, ExperimentConfig, HeatInitial, NormSpec, ProblemSpec, ShapeSpec,
};
pub use emit::{emit, field_to_csv, props_to_csv, rows_to_csv, rows_to_json, Format, CSV_HEADER};
pub use props::{property_suite, PropRow};
pub use run::{all_certified, run, ReportRow, Status};
