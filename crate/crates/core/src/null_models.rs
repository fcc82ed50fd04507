//! Attribute shuffle null models over a fixed topology.
//!
//! A full shuffle permutes an attribute over all nodes, removing both its
//! correlation with degree and its correlation across edges. A controlled
//! shuffle permutes only among nodes whose friend counts fall in the same
//! geometric bin, which keeps the degree correlation and removes the rest.

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use crate::binning::{BinOccupancy, DegreeBinning};

use crate::attributes::AttributeTable;
use crate::correlations::{attribute_assortativity, within_node_correlation, CorrelationReport};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Direction};
use crate::paradox::{paradox_reports, NeighborRelation, ParadoxReport, ParadoxStat};
use crate::scalar::Scalar;
use crate::seeding::{derive_seed, rng_from_seed, stream_rng};
use crate::stats;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShuffleKind {
    Full,
    Controlled,
}

impl ShuffleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ShuffleKind::Full => "full",
            ShuffleKind::Controlled => "controlled",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ShuffleOutcome<T> {
    pub table: AttributeTable<T>,
    pub kind: ShuffleKind,
    pub seed: u64,
    /// Bins the permutation was restricted to (controlled shuffles only).
    pub bins: Option<Vec<BinOccupancy>>,
}

/// Uniform random permutation of the values over all nodes.
pub fn full_shuffle<T: Scalar>(attr: &AttributeTable<T>, seed: u64) -> Result<ShuffleOutcome<T>> {
    if attr.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut values = attr.values().to_vec();
    values.shuffle(&mut rng_from_seed(seed));
    Ok(ShuffleOutcome {
        table: attr.with_values(values),
        kind: ShuffleKind::Full,
        seed,
        bins: None,
    })
}

/// Independent uniform permutation within each friend-count bin. Bin `b`
/// is shuffled with sub-seed `derive_seed(seed, b)`.
pub fn controlled_shuffle<T: Scalar>(
    g: &DirectedGraph,
    attr: &AttributeTable<T>,
    binning: DegreeBinning,
    seed: u64,
) -> Result<ShuffleOutcome<T>> {
    attr.ensure_matches(g)?;
    let degrees = g.degrees(Direction::Out);
    let bins = binning.assign(&degrees);
    let n_bins = bins.iter().max().map_or(0, |&b| b + 1);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); n_bins];
    for (u, &b) in bins.iter().enumerate() {
        members[b].push(u);
    }
    let mut values = attr.values().to_vec();
    for (b, nodes) in members.iter().enumerate().filter(|(_, m)| m.len() > 1) {
        let mut group: Vec<T> = nodes.iter().map(|&u| values[u]).collect();
        group.shuffle(&mut stream_rng(seed, b as u64));
        for (&u, v) in nodes.iter().zip(group) {
            values[u] = v;
        }
    }
    Ok(ShuffleOutcome {
        table: attr.with_values(values),
        kind: ShuffleKind::Controlled,
        seed,
        bins: Some(binning.occupancy(&degrees)),
    })
}

pub fn shuffle<T: Scalar>(
    g: &DirectedGraph,
    attr: &AttributeTable<T>,
    kind: ShuffleKind,
    binning: DegreeBinning,
    seed: u64,
) -> Result<ShuffleOutcome<T>> {
    match kind {
        ShuffleKind::Full => full_shuffle(attr, seed),
        ShuffleKind::Controlled => controlled_shuffle(g, attr, binning, seed),
    }
}

/// Degree treated as an ordinary attribute, so that shuffling detaches it
/// from the topology. Named `friends` for `Out` and `followers` for `In`.
pub fn degree_as_attribute<T: Scalar>(g: &DirectedGraph, dir: Direction) -> AttributeTable<T> {
    let name = match dir {
        Direction::Out => "friends",
        Direction::In => "followers",
    };
    let values = g.degrees(dir).into_iter().map(T::of_usize).collect();
    AttributeTable::new(name, values).expect("degrees are non-negative")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kind: ShuffleKind,
    pub stats: Vec<ParadoxStat>,
    pub relations: Vec<NeighborRelation>,
    pub runs: usize,
    pub binning: DegreeBinning,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn new(kind: ShuffleKind, runs: usize, seed: u64) -> Self {
        ExperimentConfig {
            kind,
            stats: ParadoxStat::BOTH.to_vec(),
            relations: vec![NeighborRelation::Friends],
            runs,
            binning: DegreeBinning::default(),
            seed,
        }
    }
}

/// Everything measured on one realization of the attribute.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct RunMeasures<T> {
    pub paradox: Vec<ParadoxReport>,
    pub within_node: CorrelationReport<T>,
    pub assortativity: CorrelationReport<T>,
}

impl<T: Scalar> RunMeasures<T> {
    fn measure(
        g: &DirectedGraph,
        attr: &AttributeTable<T>,
        config: &ExperimentConfig,
    ) -> Result<Self> {
        let mut paradox = Vec::new();
        for &relation in &config.relations {
            paradox.extend(
                paradox_reports(g, attr, relation)?
                    .into_iter()
                    .filter(|r| config.stats.contains(&r.stat)),
            );
        }
        Ok(RunMeasures {
            paradox,
            within_node: within_node_correlation(g, attr)?,
            assortativity: attribute_assortativity(g, attr)?,
        })
    }

    /// `(measure, stat, value)` triples; undefined correlations give NaN.
    pub fn flatten(&self) -> Vec<(String, Option<ParadoxStat>, f64)> {
        let mut out: Vec<_> = self
            .paradox
            .iter()
            .map(|r| (format!("paradox_{}", r.relation), Some(r.stat), r.fraction))
            .collect();
        let r = |c: &CorrelationReport<T>| c.r.map_or(f64::NAN, Scalar::as_f64);
        out.push(("within_node_r".into(), None, r(&self.within_node)));
        out.push(("assortativity".into(), None, r(&self.assortativity)));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateMeasure {
    pub measure: String,
    pub stat: Option<ParadoxStat>,
    pub baseline: f64,
    /// Mean over runs where the measure is defined.
    pub mean: f64,
    pub stderr: f64,
    /// Mean of absolute values over runs.
    pub mean_abs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ShuffleExperiment<T> {
    pub attribute: String,
    pub config: ExperimentConfig,
    pub baseline: RunMeasures<T>,
    pub runs: Vec<RunMeasures<T>>,
    pub aggregate: Vec<AggregateMeasure>,
}

impl<T: Scalar> ShuffleExperiment<T> {
    pub fn aggregate_for(
        &self,
        measure: &str,
        stat: Option<ParadoxStat>,
    ) -> Option<&AggregateMeasure> {
        self.aggregate
            .iter()
            .find(|a| a.measure == measure && a.stat == stat)
    }
}

/// Measures paradoxes and correlations on the original attribute and on
/// `runs` shuffles of it. Run `i` uses seed `derive_seed(config.seed, i)`;
/// runs execute in parallel and are collected in run order.
pub fn shuffle_experiment<T: Scalar>(
    g: &DirectedGraph,
    attr: &AttributeTable<T>,
    config: &ExperimentConfig,
) -> Result<ShuffleExperiment<T>> {
    if config.runs == 0 {
        return Err(Error::Size("runs must be at least 1".into()));
    }
    attr.ensure_matches(g)?;
    let baseline = RunMeasures::measure(g, attr, config)?;
    let runs = (0..config.runs)
        .into_par_iter()
        .map(|i| {
            let seed = derive_seed(config.seed, i as u64);
            let shuffled = shuffle(g, attr, config.kind, config.binning, seed)?;
            RunMeasures::measure(g, &shuffled.table, config)
        })
        .collect::<Result<Vec<_>>>()?;

    let base = baseline.flatten();
    let per_run: Vec<_> = runs.iter().map(RunMeasures::flatten).collect();
    let aggregate = base
        .iter()
        .enumerate()
        .map(|(j, (measure, stat, baseline))| {
            let values: Vec<f64> = per_run
                .iter()
                .map(|row| row[j].2)
                .filter(|v| v.is_finite())
                .collect();
            let (mean, stderr) = stats::mean_and_stderr(&values).unwrap_or((f64::NAN, f64::NAN));
            let abs: Vec<f64> = values.iter().map(|v| v.abs()).collect();
            AggregateMeasure {
                measure: measure.clone(),
                stat: *stat,
                baseline: *baseline,
                mean,
                stderr,
                mean_abs: stats::mean(&abs).unwrap_or(f64::NAN),
            }
        })
        .collect();
    Ok(ShuffleExperiment {
        attribute: attr.name().to_owned(),
        config: config.clone(),
        baseline,
        runs,
        aggregate,
    })
}
