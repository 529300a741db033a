//! Certificates for `M(k, l) < Lambda_plane(n)`, tables, plot data and
//! exact cross-check reports.

mod certificate;
mod exact;
mod report;

pub use certificate::{
    certify, certify_n, replay, Certificate, CertificateSet, CertifyOptions, Entry, FaultInjection, Verdict,
    DEFAULT_MAX_N, LONG_RUN_MAX_N,
};
pub use exact::{exact_report, ExactMode, ExactReport};
pub use report::{plot, plot_csv, table, table_pairs, PlotMeta, PlotRow, TableFormat, TableRow};
