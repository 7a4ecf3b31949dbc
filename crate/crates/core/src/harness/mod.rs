//! Graph generation, edge-list and estimate files, oracle verification, and
//! CSV reports.

mod generate;
mod io;
mod verify;

pub use generate::{generate, Family, GenSpec};
pub use io::{
    load_edge_list, load_estimates, read_edge_list, read_estimates, save_edge_list, save_estimates,
    write_edge_list, write_estimates,
};
pub use verify::{
    append_report, verify, verify_against, write_reports, ErrorReport, ORACLE_LIMIT, REPORT_HEADER,
};
