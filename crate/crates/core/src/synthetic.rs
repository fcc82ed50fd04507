//! Synthetic networks with planted correlations, for exercising the null
//! models where no real data is at hand.
//!
//! Nodes belong to groups. Each node follows `round(draw)` distinct others,
//! each friend taken from its own group with probability `in_group_prob` and
//! uniformly from the whole graph otherwise. The planted attribute is
//!
//! ```text
//! x(u) = degree_weight * friends(u) + level(group(u)) + noise(u)
//! ```
//!
//! The first term gives a within-node correlation with friend count, the
//! shared group level gives assortativity. Friend choice ignores degree, so
//! the assortativity does not survive a degree-controlled shuffle.

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::attributes::AttributeTable;
use crate::distributions::{DistributionSpec, Sampler};
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Direction};
use crate::scalar::Scalar;
use crate::seeding::{derive_seed, rng_from_seed, stream_rng};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct PlantedConfig<T> {
    pub n_nodes: usize,
    pub degree_dist: DistributionSpec<T>,
    pub groups: usize,
    pub in_group_prob: f64,
    pub degree_weight: T,
    pub group_level: DistributionSpec<T>,
    pub noise: DistributionSpec<T>,
    pub seed: u64,
}

impl<T: Scalar> PlantedConfig<T> {
    /// Friend counts `round(Pareto(5, 12))` (mean 15), groups of about 500
    /// nodes, 60% of friendships inside the group.
    pub fn standard(n_nodes: usize, seed: u64) -> Self {
        PlantedConfig {
            n_nodes,
            degree_dist: DistributionSpec::pareto(T::of(5.0), T::of(12.0)).expect("valid"),
            groups: (n_nodes / 500).max(1),
            in_group_prob: 0.6,
            degree_weight: T::of(2.0),
            group_level: DistributionSpec::log_normal(T::of(10f64.ln()), T::one()).expect("valid"),
            noise: DistributionSpec::exponential(T::of(0.2)).expect("valid"),
            seed,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PlantedNetwork<T> {
    pub graph: DirectedGraph,
    pub attribute: AttributeTable<T>,
    pub group: Vec<u32>,
}

pub fn planted_network<T: Scalar>(config: &PlantedConfig<T>) -> Result<PlantedNetwork<T>> {
    let n = config.n_nodes;
    if n < 2 {
        return Err(Error::Size(format!("need at least 2 nodes, got {n}")));
    }
    if config.groups == 0 || config.groups > n {
        return Err(Error::Size(format!(
            "{} groups for {n} nodes",
            config.groups
        )));
    }
    if !(0.0..=1.0).contains(&config.in_group_prob) {
        return Err(Error::Size(format!(
            "in_group_prob {} outside [0, 1]",
            config.in_group_prob
        )));
    }
    let degree_sampler = Sampler::new(config.degree_dist)?;

    let mut rng = rng_from_seed(derive_seed(config.seed, 0));
    let group: Vec<u32> = (0..n)
        .map(|_| rng.random_range(0..config.groups) as u32)
        .collect();
    let mut members: Vec<Vec<u32>> = vec![Vec::new(); config.groups];
    for (u, &g) in group.iter().enumerate() {
        members[g as usize].push(u as u32);
    }

    let edge_seed = derive_seed(config.seed, 1);
    let lists: Vec<Vec<(u32, u32)>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut rng = stream_rng(edge_seed, u as u64);
            let mut sampler = degree_sampler.clone();
            let raw = sampler.draw(&mut rng).round().as_f64();
            let k = (raw.min(n as f64) as usize).clamp(1, n - 1);
            let own = &members[group[u] as usize];
            let mut chosen: Vec<u32> = Vec::with_capacity(k);
            let mut attempts = 0usize;
            while chosen.len() < k {
                attempts += 1;
                let in_group = own.len() > 1
                    && attempts < 50 * k
                    && rng.random::<f64>() < config.in_group_prob;
                let v = if in_group {
                    own[rng.random_range(0..own.len())]
                } else {
                    rng.random_range(0..n) as u32
                };
                if v as usize != u && !chosen.contains(&v) {
                    chosen.push(v);
                }
            }
            chosen.into_iter().map(|v| (u as u32, v)).collect()
        })
        .collect();
    let graph = DirectedGraph::from_index_edges(n, lists.into_iter().flatten().collect())?;

    let mut level_sampler = Sampler::new(config.group_level)?;
    let mut rng = rng_from_seed(derive_seed(config.seed, 2));
    let levels = level_sampler.fill(&mut rng, config.groups);
    let mut noise_sampler = Sampler::new(config.noise)?;
    let mut rng = rng_from_seed(derive_seed(config.seed, 3));
    let noise = noise_sampler.fill(&mut rng, n);
    let values = graph
        .degrees(Direction::Out)
        .into_iter()
        .zip(&group)
        .zip(noise)
        .map(|((k, &g), e)| config.degree_weight * T::of_usize(k) + levels[g as usize] + e)
        .collect();
    Ok(PlantedNetwork {
        graph,
        attribute: AttributeTable::new("planted", values)?,
        group,
    })
}

/// `n` iid values that are exactly zero with probability `zero_prob` and
/// drawn from `dist` otherwise. Mimics share-of-posts style attributes where
/// most users sit at zero.
pub fn zero_inflated_sample<T: Scalar>(
    dist: &DistributionSpec<T>,
    zero_prob: f64,
    n: usize,
    seed: u64,
) -> Result<Vec<T>> {
    if !(0.0..=1.0).contains(&zero_prob) {
        return Err(Error::Size(format!("zero_prob {zero_prob} outside [0, 1]")));
    }
    let mut sampler = Sampler::new(*dist)?;
    let mut rng = rng_from_seed(seed);
    Ok((0..n)
        .map(|_| {
            let x = sampler.draw(&mut rng);
            if rng.random::<f64>() < zero_prob {
                T::zero()
            } else {
                x
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::{attribute_assortativity, within_node_correlation};

    #[test]
    fn small_planted_network_has_both_correlations() {
        let net = planted_network(&PlantedConfig::<f64>::standard(5000, 3)).unwrap();
        let g = &net.graph;
        assert_eq!(g.ingest_stats(), Default::default());
        assert!(g.degrees(Direction::Out).iter().all(|&k| k >= 12));
        let a = attribute_assortativity(g, &net.attribute)
            .unwrap()
            .r
            .unwrap();
        let w = within_node_correlation(g, &net.attribute)
            .unwrap()
            .r
            .unwrap();
        assert!(a > 0.15, "assortativity {a}");
        assert!(w > 0.2, "within-node {w}");
    }

    #[test]
    fn generation_is_deterministic() {
        let c = PlantedConfig::<f64>::standard(800, 5);
        let a = planted_network(&c).unwrap();
        let b = planted_network(&c).unwrap();
        assert_eq!(a.graph.to_edge_list(), b.graph.to_edge_list());
        assert_eq!(a.attribute, b.attribute);
    }

    #[test]
    fn zero_inflation_rate() {
        let d = DistributionSpec::exponential(1.0).unwrap();
        let xs = zero_inflated_sample(&d, 0.3, 20_000, 1).unwrap();
        let zeros = xs.iter().filter(|&&x| x == 0.0).count() as f64 / 20_000.0;
        assert!((zeros - 0.3).abs() < 0.02);
        assert!(zero_inflated_sample(&d, 1.5, 10, 1).is_err());
    }
}
