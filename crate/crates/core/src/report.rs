//! CSV renderings of the analysis results.
//!
//! Floats use Rust's shortest round-trip formatting, so identical results
//! always render to identical bytes. Undefined values render as `NaN`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::correlations::CorrelationReport;
use crate::distributions::{IidParadoxResult, LogBinnedHistogram, ScalingCurve};
use crate::null_models::ShuffleExperiment;
use crate::paradox::ParadoxReport;
use crate::scalar::Scalar;

pub const PARADOX_HEADER: &str =
    "attribute,relation,stat,fraction,ci_low,ci_high,n_eval,n_excluded";
pub const CORRELATION_HEADER: &str = "attribute,measure,variant,r,n";
pub const SCALING_HEADER: &str = "n,mean_of_means,mean_of_medians,stderr_means,stderr_medians";
pub const IID_HEADER: &str = "degree_bucket,frac_mean,frac_median,count";
pub const SHUFFLE_HEADER: &str = "run,attribute,kind,measure,stat,value";
pub const HISTOGRAM_HEADER: &str = "attribute,bin_low,bin_high,count,density";

pub fn paradox_csv(reports: &[ParadoxReport]) -> String {
    let mut out = format!("{PARADOX_HEADER}\n");
    for r in reports {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.attribute,
            r.relation,
            r.stat,
            r.fraction,
            r.ci_low,
            r.ci_high,
            r.nodes_evaluated,
            r.nodes_excluded
        )
        .unwrap();
    }
    out
}

/// One correlation tagged with the network variant it was measured on,
/// e.g. `emp`, `contr` or `shuffle`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct CorrelationRow<T> {
    pub variant: String,
    pub report: CorrelationReport<T>,
}

impl<T> CorrelationRow<T> {
    pub fn new(variant: impl Into<String>, report: CorrelationReport<T>) -> Self {
        CorrelationRow {
            variant: variant.into(),
            report,
        }
    }
}

pub fn correlation_csv<T: Scalar>(rows: &[CorrelationRow<T>]) -> String {
    let mut out = format!("{CORRELATION_HEADER}\n");
    for row in rows {
        let r = &row.report;
        writeln!(
            out,
            "{},{},{},{},{}",
            r.attribute,
            r.kind.label(),
            row.variant,
            r.r.map_or(f64::NAN, Scalar::as_f64),
            r.n
        )
        .unwrap();
    }
    out
}

pub fn scaling_csv<T: Scalar>(curve: &ScalingCurve<T>) -> String {
    let mut out = format!("{SCALING_HEADER}\n");
    for p in &curve.points {
        writeln!(
            out,
            "{},{},{},{},{}",
            p.n,
            p.mean_of_means.as_f64(),
            p.mean_of_medians.as_f64(),
            p.stderr_means.as_f64(),
            p.stderr_medians.as_f64()
        )
        .unwrap();
    }
    out
}

/// Buckets are labelled `min-max` by the friend counts they contain.
pub fn iid_csv(result: &IidParadoxResult) -> String {
    let mut out = format!("{IID_HEADER}\n");
    for b in &result.buckets {
        writeln!(
            out,
            "{}-{},{},{},{}",
            b.degree_min, b.degree_max, b.frac_mean, b.frac_median, b.nodes
        )
        .unwrap();
    }
    out
}

/// Rows for each run, then `baseline`, `mean` and `stderr` aggregate rows.
/// Correlation measures leave the `stat` column empty.
pub fn shuffle_csv<T: Scalar>(exp: &ShuffleExperiment<T>) -> String {
    let mut out = format!("{SHUFFLE_HEADER}\n");
    let kind = exp.config.kind.as_str();
    let stat = |s: Option<crate::paradox::ParadoxStat>| s.map_or("", |s| s.as_str());
    for (i, run) in exp.runs.iter().enumerate() {
        for (measure, s, value) in run.flatten() {
            writeln!(
                out,
                "{i},{},{kind},{measure},{},{value}",
                exp.attribute,
                stat(s)
            )
            .unwrap();
        }
    }
    for a in &exp.aggregate {
        for (label, value) in [
            ("baseline", a.baseline),
            ("mean", a.mean),
            ("stderr", a.stderr),
        ] {
            writeln!(
                out,
                "{label},{},{kind},{},{},{value}",
                exp.attribute,
                a.measure,
                stat(a.stat)
            )
            .unwrap();
        }
    }
    out
}

/// The zero bin, if occupied, is written first with `bin_low = bin_high = 0`
/// and its probability mass in the `density` column.
pub fn histogram_csv<T: Scalar>(attribute: &str, hist: &LogBinnedHistogram<T>) -> String {
    let mut out = format!("{HISTOGRAM_HEADER}\n");
    if hist.zero_count > 0 {
        writeln!(
            out,
            "{attribute},0,0,{},{}",
            hist.zero_count,
            hist.zero_mass.as_f64()
        )
        .unwrap();
    }
    for (i, (&count, density)) in hist.counts.iter().zip(&hist.density).enumerate() {
        writeln!(
            out,
            "{attribute},{},{},{count},{}",
            hist.edges[i].as_f64(),
            hist.edges[i + 1].as_f64(),
            density.as_f64()
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::karate_club;
    use crate::paradox::friendship_paradox_suite;

    #[test]
    fn paradox_rows() {
        let csv = paradox_csv(&friendship_paradox_suite(&karate_club()));
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(PARADOX_HEADER));
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(&first[..3], ["friends", "friends", "mean"]);
        assert_eq!(first[3].parse::<f64>().unwrap(), 29.0 / 34.0);
        assert_eq!(&first[6..], ["34", "0"]);
        assert_eq!(csv.lines().count(), 9);
    }

    #[test]
    fn histogram_zero_row() {
        let h = crate::distributions::log_binned_pdf(&[0.0, 1.0, 5.0, 50.0], 1).unwrap();
        let csv = histogram_csv("x", &h);
        assert!(csv.lines().nth(1).unwrap().starts_with("x,0,0,1,0.25"));
    }
}
