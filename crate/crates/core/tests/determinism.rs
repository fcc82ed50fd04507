//! Seeded results must not depend on how rayon schedules the work.

use netparadox::distributions::{random_friend_graph, IidNetworkConfig};
use netparadox::null_models::{shuffle_experiment, ExperimentConfig, ShuffleKind};
use netparadox::synthetic::planted_network;
use netparadox::PlantedConfig;
use netparadox::{
    edge_pearson, iid_network_paradox, mean_median_scaling, paradox_reports, DistributionSpec,
    NeighborRelation,
};
use rayon::ThreadPoolBuilder;

fn on_threads<R: Send>(n: usize, f: impl FnOnce() -> R + Send) -> R {
    ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .unwrap()
        .install(f)
}

fn same_on_1_and_4_threads<R: Send + PartialEq + std::fmt::Debug>(f: impl Fn() -> R + Send + Sync) {
    let one = on_threads(1, &f);
    let four = on_threads(4, &f);
    assert_eq!(one, four);
}

#[test]
fn scaling_curve() {
    let p = DistributionSpec::pareto(1.2, 1.0).unwrap();
    same_on_1_and_4_threads(|| mean_median_scaling(&p, &[1, 10, 100], 500, 5).unwrap());
}

#[test]
fn iid_network() {
    let p = DistributionSpec::pareto(1.2, 1.0).unwrap();
    let config = IidNetworkConfig {
        redraws: 3,
        ..IidNetworkConfig::new(2000, p, 8)
    };
    same_on_1_and_4_threads(|| iid_network_paradox(&config).unwrap());
}

#[test]
fn random_graph() {
    let p = DistributionSpec::pareto(1.5, 2.0).unwrap();
    same_on_1_and_4_threads(|| random_friend_graph(3000, &p, 2).unwrap().to_edge_list());
}

#[test]
fn planted_network_and_measures() {
    same_on_1_and_4_threads(|| {
        let net = planted_network(&PlantedConfig::standard(3000, 4)).unwrap();
        let g = &net.graph;
        let values = net.attribute.values();
        (
            g.to_edge_list(),
            net.attribute.clone(),
            paradox_reports(g, &net.attribute, NeighborRelation::Friends).unwrap(),
            edge_pearson(g, values, values).unwrap(),
        )
    });
}

#[test]
fn shuffle_experiments() {
    let net = planted_network(&PlantedConfig::standard(2000, 6)).unwrap();
    for kind in [ShuffleKind::Full, ShuffleKind::Controlled] {
        let config = ExperimentConfig::new(kind, 4, 11);
        same_on_1_and_4_threads(|| {
            shuffle_experiment(&net.graph, &net.attribute, &config).unwrap()
        });
    }
}
