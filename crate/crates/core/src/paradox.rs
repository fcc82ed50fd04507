//! Paradox-regime tests.
//!
//! A node is in the paradox regime when a summary (mean or median) of its
//! neighbors' attribute values is strictly larger than its own value. The
//! weak paradox uses the mean, the strong paradox the median.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::attributes::AttributeTable;
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Direction};
use crate::scalar::Scalar;
use crate::stats;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParadoxStat {
    Mean,
    Median,
}

impl ParadoxStat {
    pub const BOTH: [ParadoxStat; 2] = [ParadoxStat::Mean, ParadoxStat::Median];

    pub fn as_str(self) -> &'static str {
        match self {
            ParadoxStat::Mean => "mean",
            ParadoxStat::Median => "median",
        }
    }
}

impl fmt::Display for ParadoxStat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which neighbors a node is compared against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NeighborRelation {
    Friends,
    Followers,
}

impl NeighborRelation {
    pub const BOTH: [NeighborRelation; 2] =
        [NeighborRelation::Friends, NeighborRelation::Followers];

    pub fn direction(self) -> Direction {
        match self {
            NeighborRelation::Friends => Direction::Out,
            NeighborRelation::Followers => Direction::In,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            NeighborRelation::Friends => "friends",
            NeighborRelation::Followers => "followers",
        }
    }
}

impl fmt::Display for NeighborRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Fraction of nodes in the paradox regime for one attribute, relation and
/// statistic, with a 95% Wilson interval.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParadoxReport {
    pub attribute: String,
    pub relation: NeighborRelation,
    pub stat: ParadoxStat,
    /// Nodes with at least one neighbor under `relation`.
    pub nodes_evaluated: usize,
    pub nodes_in_paradox: usize,
    /// Nodes without neighbors; not part of the denominator.
    pub nodes_excluded: usize,
    pub fraction: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl ParadoxReport {
    fn from_counts(
        attribute: &str,
        relation: NeighborRelation,
        stat: ParadoxStat,
        evaluated: usize,
        in_paradox: usize,
        excluded: usize,
    ) -> Self {
        let (fraction, (ci_low, ci_high)) = if evaluated == 0 {
            (f64::NAN, (f64::NAN, f64::NAN))
        } else {
            (
                in_paradox as f64 / evaluated as f64,
                proportion_ci(in_paradox, evaluated, 0.95).expect("evaluated > 0"),
            )
        };
        ParadoxReport {
            attribute: attribute.to_owned(),
            relation,
            stat,
            nodes_evaluated: evaluated,
            nodes_in_paradox: in_paradox,
            nodes_excluded: excluded,
            fraction,
            ci_low,
            ci_high,
        }
    }
}

/// Mean, or median (midpoint of the central pair for even lengths).
pub fn neighbor_summary<T: Scalar>(values: &[T], stat: ParadoxStat) -> Result<T> {
    let summary = match stat {
        ParadoxStat::Mean => stats::mean(values),
        ParadoxStat::Median => stats::median(values),
    };
    summary.ok_or(Error::EmptyInput)
}

pub fn node_in_paradox<T: Scalar>(
    own: T,
    neighbor_values: &[T],
    stat: ParadoxStat,
) -> Result<bool> {
    Ok(neighbor_summary(neighbor_values, stat)? > own)
}

/// Verdicts of one node under both statistics; `None` when it has no
/// neighbors. `scratch` is reused between calls to avoid allocation.
#[inline]
pub(crate) fn verdicts<T: Scalar>(
    own: T,
    neighbors: &[crate::graph::NodeId],
    values: &[T],
    scratch: &mut Vec<T>,
) -> Option<(bool, bool)> {
    if neighbors.is_empty() {
        return None;
    }
    scratch.clear();
    scratch.extend(neighbors.iter().map(|v| values[v.index()]));
    let mean = stats::mean(scratch).expect("non-empty");
    let median = stats::median_in_place(scratch).expect("non-empty");
    Some((mean > own, median > own))
}

#[derive(Clone, Copy, Default)]
struct Tally {
    evaluated: usize,
    mean: usize,
    median: usize,
}

impl std::ops::Add for Tally {
    type Output = Tally;
    fn add(self, o: Tally) -> Tally {
        Tally {
            evaluated: self.evaluated + o.evaluated,
            mean: self.mean + o.mean,
            median: self.median + o.median,
        }
    }
}

/// Counts paradox verdicts where each node's own value comes from `own` and
/// its neighbors' values from `neighbor_values`.
fn tally<T: Scalar>(
    g: &DirectedGraph,
    own: &[T],
    neighbor_values: &[T],
    relation: NeighborRelation,
) -> Tally {
    let dir = relation.direction();
    (0..g.n_nodes())
        .into_par_iter()
        .map_init(Vec::new, |scratch, u| {
            match verdicts(own[u], g.adjacency(u, dir), neighbor_values, scratch) {
                None => Tally::default(),
                Some((m, d)) => Tally {
                    evaluated: 1,
                    mean: m as usize,
                    median: d as usize,
                },
            }
        })
        .reduce(Tally::default, |a, b| a + b)
}

fn reports_from_tally(
    name: &str,
    n_nodes: usize,
    relation: NeighborRelation,
    t: Tally,
) -> [ParadoxReport; 2] {
    let excluded = n_nodes - t.evaluated;
    [
        ParadoxReport::from_counts(
            name,
            relation,
            ParadoxStat::Mean,
            t.evaluated,
            t.mean,
            excluded,
        ),
        ParadoxReport::from_counts(
            name,
            relation,
            ParadoxStat::Median,
            t.evaluated,
            t.median,
            excluded,
        ),
    ]
}

/// Mean and median reports in one pass over the graph.
pub fn paradox_reports<T: Scalar>(
    g: &DirectedGraph,
    attr: &AttributeTable<T>,
    relation: NeighborRelation,
) -> Result<[ParadoxReport; 2]> {
    attr.ensure_matches(g)?;
    let t = tally(g, attr.values(), attr.values(), relation);
    Ok(reports_from_tally(attr.name(), g.n_nodes(), relation, t))
}

pub fn paradox_fraction<T: Scalar>(
    g: &DirectedGraph,
    attr: &AttributeTable<T>,
    relation: NeighborRelation,
    stat: ParadoxStat,
) -> Result<ParadoxReport> {
    let [mean, median] = paradox_reports(g, attr, relation)?;
    Ok(match stat {
        ParadoxStat::Mean => mean,
        ParadoxStat::Median => median,
    })
}

/// The four directed friendship paradoxes, each under mean and median:
/// own friend count vs. friends' friend counts, own follower count vs.
/// friends' follower counts, and the same two measured over followers.
///
/// Reports come in the order (friends, Friends), (followers, Friends),
/// (friends, Followers), (followers, Followers), mean before median.
pub fn friendship_paradox_suite(g: &DirectedGraph) -> Vec<ParadoxReport> {
    let to_f64 = |d: Vec<usize>| d.into_iter().map(|k| k as f64).collect::<Vec<_>>();
    let friends = to_f64(g.degrees(Direction::Out));
    let followers = to_f64(g.degrees(Direction::In));
    let mut out = Vec::with_capacity(8);
    for relation in NeighborRelation::BOTH {
        for (name, values) in [("friends", &friends), ("followers", &followers)] {
            let t = tally(g, values, values, relation);
            out.extend(reports_from_tally(name, g.n_nodes(), relation, t));
        }
    }
    out
}

/// Wilson score interval for `successes` out of `n` at confidence `level`.
pub fn proportion_ci(successes: usize, n: usize, level: f64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if successes > n {
        return Err(Error::Size(format!("{successes} successes out of {n}")));
    }
    if !(0.0..1.0).contains(&level) || level == 0.0 {
        return Err(Error::Size(format!(
            "confidence level {level} outside (0, 1)"
        )));
    }
    let z = Normal::standard().inverse_cdf(0.5 + level / 2.0);
    let nf = n as f64;
    let p = successes as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let centre = (p + z2 / (2.0 * nf)) / denom;
    let half = z * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;
    let low = (centre - half).max(0.0).min(p);
    let high = (centre + half).min(1.0).max(p);
    Ok((low, high))
}
