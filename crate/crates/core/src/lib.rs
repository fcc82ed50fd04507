//! Weak (mean) and strong (median) network paradoxes on directed graphs.
//!
//! A node is in the paradox regime for an attribute when a summary of its
//! neighbours' values strictly exceeds its own. Under the mean this is the
//! familiar friendship paradox; under the median it means most neighbours
//! individually exceed the node. The crate measures both, explains where
//! they diverge (heavy tails, within-node correlation, assortativity) and
//! provides shuffle null models that separate those causes.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`). The aliases at
//! the crate root fix it to `f64`; the `*F32` variants fix it to `f32`.
//!
//! ```
//! use netparadox::{friendship_paradox_suite, karate_club};
//!
//! let g = karate_club();
//! let reports = friendship_paradox_suite(&g);
//! assert_eq!(reports[0].nodes_in_paradox, 29);
//! assert_eq!(reports[1].nodes_in_paradox, 26);
//! ```

pub mod attributes;
pub mod binning;
pub mod correlations;
pub mod distributions;
pub mod error;
pub mod graph;
pub mod null_models;
pub mod paradox;
pub mod report;
pub mod scalar;
pub mod seeding;
pub mod stats;
pub mod synthetic;

pub use attributes::{
    derive_activity, derive_diversity, derive_virality, load_attribute, load_attribute_str,
    rank_matched_attribute, Action, Aggregator, Coverage, Derived, EventLog, EventRecord,
    ViralityMode,
};
pub use binning::{BinOccupancy, DegreeBinning};
pub use correlations::{
    attribute_assortativity, degree_assortativity, edge_pearson, pearson, within_node_correlation,
    CorrelationKind, Pearson,
};
pub use distributions::{
    analytic_moments, fully_connected_paradox, iid_network_paradox, iid_paradox_on_graph,
    log_binned_pdf, mean_median_scaling, random_friend_graph, sample, IidBucket, IidParadoxResult,
};
pub use error::{Error, Result};
pub use graph::{karate_club, DirectedGraph, Direction, GraphBuilder, IngestStats, NodeId};
pub use null_models::{
    controlled_shuffle, degree_as_attribute, full_shuffle, shuffle, shuffle_experiment,
    AggregateMeasure, ExperimentConfig, ShuffleKind,
};
pub use paradox::{
    friendship_paradox_suite, neighbor_summary, node_in_paradox, paradox_fraction, paradox_reports,
    proportion_ci, NeighborRelation, ParadoxReport, ParadoxStat,
};
pub use scalar::Scalar;
pub use seeding::derive_seed;
pub use synthetic::{planted_network, zero_inflated_sample};

pub type AttributeTable = attributes::AttributeTable<f64>;
pub type DistributionSpec = distributions::DistributionSpec<f64>;
pub type ScalingCurve = distributions::ScalingCurve<f64>;
pub type ScalingPoint = distributions::ScalingPoint<f64>;
pub type IidNetworkConfig = distributions::IidNetworkConfig<f64>;
pub type LogBinnedHistogram = distributions::LogBinnedHistogram<f64>;
pub type CorrelationReport = correlations::CorrelationReport<f64>;
pub type ShuffleOutcome = null_models::ShuffleOutcome<f64>;
pub type ShuffleExperiment = null_models::ShuffleExperiment<f64>;
pub type PlantedConfig = synthetic::PlantedConfig<f64>;
pub type PlantedNetwork = synthetic::PlantedNetwork<f64>;

pub type AttributeTableF32 = attributes::AttributeTable<f32>;
pub type DistributionSpecF32 = distributions::DistributionSpec<f32>;
pub type ScalingCurveF32 = distributions::ScalingCurve<f32>;
pub type CorrelationReportF32 = correlations::CorrelationReport<f32>;
pub type ShuffleExperimentF32 = null_models::ShuffleExperiment<f32>;
