use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use crate::apsp::exact_apsp_oracle;
use crate::error::{Error, Result};
use crate::graph::{Dist, DistanceMatrix, Graph, INF};

/// Largest `n` verified without an explicit force.
pub const ORACLE_LIMIT: usize = 2000;

pub const REPORT_HEADER: [&str; 11] = [
    "algo",
    "n",
    "m",
    "params",
    "k",
    "max_error",
    "mean_error",
    "err_hist",
    "pairs_checked",
    "violations",
    "wall_ms",
];

/// Per-pair comparison of estimates against exact distances.
///
/// `histogram[e]` counts ordered pairs with additive error `e <= bound`
/// (pairs unreachable in both count as error 0); the last bucket counts every
/// other pair, which are exactly the violations.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorReport {
    pub algo: String,
    pub n: usize,
    pub m: usize,
    pub params: String,
    pub k: usize,
    pub bound: Dist,
    pub max_error: Dist,
    pub error_sum: u64,
    /// Pairs with finite distance and an estimate at least that distance.
    pub finite_pairs: u64,
    pub histogram: Vec<u64>,
    pub pairs_checked: u64,
    pub violations: u64,
    pub wall_ms: f64,
}

impl ErrorReport {
    /// Mean additive error over finite pairs that do not underestimate.
    pub fn mean_error(&self) -> f64 {
        if self.finite_pairs == 0 {
            0.0
        } else {
            self.error_sum as f64 / self.finite_pairs as f64
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn with_run(
        mut self,
        algo: impl Into<String>,
        params: impl Into<String>,
        k: usize,
        wall_ms: f64,
    ) -> Self {
        self.algo = algo.into();
        self.params = params.into();
        self.k = k;
        self.wall_ms = wall_ms;
        self
    }

    pub fn csv_record(&self) -> Vec<String> {
        let hist: Vec<String> = self.histogram.iter().map(u64::to_string).collect();
        vec![
            self.algo.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.params.clone(),
            self.k.to_string(),
            self.max_error.to_string(),
            format!("{:.6}", self.mean_error()),
            hist.join("|"),
            self.pairs_checked.to_string(),
            self.violations.to_string(),
            format!("{:.3}", self.wall_ms),
        ]
    }
}

/// Checks `est` against the exact distances of `g`, allowing additive error
/// up to `bound`. Refuses graphs above [`ORACLE_LIMIT`] vertices.
pub fn verify(g: &Graph, est: &DistanceMatrix, bound: Dist) -> Result<ErrorReport> {
    if g.n() > ORACLE_LIMIT {
        return Err(Error::OracleTooLarge {
            n: g.n(),
            limit: ORACLE_LIMIT,
        });
    }
    check_square(g, est)?;
    let truth = exact_apsp_oracle(g);
    verify_against(g, &truth, est, bound)
}

fn check_square(g: &Graph, est: &DistanceMatrix) -> Result<()> {
    if est.nrows() != g.n() || est.ncols() != g.n() {
        return Err(Error::dims((est.nrows(), est.ncols()), (g.n(), g.n())));
    }
    Ok(())
}

/// [`verify`] against precomputed exact distances, without a size limit.
pub fn verify_against(
    g: &Graph,
    truth: &DistanceMatrix,
    est: &DistanceMatrix,
    bound: Dist,
) -> Result<ErrorReport> {
    check_square(g, est)?;
    check_square(g, truth)?;
    let other = bound as usize + 1;
    let mut report = ErrorReport {
        algo: String::new(),
        n: g.n(),
        m: g.m(),
        params: String::new(),
        k: (bound as usize).div_ceil(2),
        bound,
        max_error: 0,
        error_sum: 0,
        finite_pairs: 0,
        histogram: vec![0; other + 1],
        pairs_checked: 0,
        violations: 0,
        wall_ms: 0.0,
    };
    for (t, &e) in truth.entries().iter().zip(est.entries()) {
        let t = *t;
        report.pairs_checked += 1;
        let bucket = if t == INF || e == INF {
            if t == e {
                0
            } else {
                other
            }
        } else if e < t {
            other
        } else {
            let err = e - t;
            report.max_error = report.max_error.max(err);
            report.error_sum += u64::from(err);
            report.finite_pairs += 1;
            if err <= bound {
                err as usize
            } else {
                other
            }
        };
        report.histogram[bucket] += 1;
        if bucket == other {
            report.violations += 1;
        }
    }
    Ok(report)
}

/// Writes a header and one row per report.
pub fn write_reports<W: Write>(reports: &[ErrorReport], writer: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(writer);
    out.write_record(REPORT_HEADER)?;
    for r in reports {
        out.write_record(r.csv_record())?;
    }
    out.flush()?;
    Ok(())
}

/// Appends a row to the CSV at `path`, writing the header first if the file
/// is new or empty.
pub fn append_report(report: &ErrorReport, path: impl AsRef<Path>) -> Result<()> {
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let fresh = file.metadata()?.len() == 0;
    let mut out = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(file);
    if fresh {
        out.write_record(REPORT_HEADER)?;
    }
    out.write_record(report.csv_record())?;
    out.flush()?;
    Ok(())
}
