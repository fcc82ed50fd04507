use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use anyhow::Context;
use netparadox::report::{self, CorrelationRow};
use netparadox::{
    derive_activity, derive_diversity, derive_seed, derive_virality, distributions,
    friendship_paradox_suite, karate_club, load_attribute, log_binned_pdf, mean_median_scaling,
    paradox_reports, rank_matched_attribute, shuffle_experiment, AttributeTable, CorrelationReport,
    DegreeBinning, DirectedGraph, Direction, DistributionSpec, EventLog, ExperimentConfig,
    IidNetworkConfig, NeighborRelation, ParadoxStat, ShuffleExperiment, ShuffleKind, ViralityMode,
};
use serde::Serialize;

use crate::config::{config_error, Output, Settings};
use crate::output::{Metadata, Writer};

/// Degree attribute names; user attributes may not reuse them.
const RESERVED: [&str; 2] = ["friends", "followers"];

struct Inputs {
    graph: DirectedGraph,
    attributes: Vec<AttributeTable>,
}

fn open(path: &Path) -> anyhow::Result<BufReader<File>> {
    let f = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(BufReader::new(f))
}

fn load_inputs(settings: &Settings) -> anyhow::Result<Inputs> {
    let mut absent = Vec::new();
    if settings.edges.is_none() {
        absent.push("--edges".to_owned());
    }
    let files = settings
        .edges
        .iter()
        .chain(settings.events.iter())
        .chain(settings.attrs.values());
    absent.extend(
        files
            .filter(|p| !p.exists())
            .map(|p| p.display().to_string()),
    );
    if !absent.is_empty() {
        return Err(config_error(format!(
            "missing required input(s): {}",
            absent.join(", ")
        )));
    }
    for name in settings.attrs.keys() {
        if RESERVED.contains(&name.as_str()) {
            return Err(config_error(format!(
                "attribute name `{name}` is reserved for degree"
            )));
        }
    }

    let edges = settings.require_graph_inputs()?;
    let full = DirectedGraph::parse_edge_list(open(edges)?)
        .with_context(|| format!("reading edge list {}", edges.display()))?;
    log::info!("graph: {} nodes, {} edges", full.n_nodes(), full.n_edges());

    let log = match &settings.events {
        Some(path) => Some(
            EventLog::parse(open(path)?)
                .with_context(|| format!("reading event log {}", path.display()))?,
        ),
        None => None,
    };
    if let Some(log) = &log {
        if log.orphan_reposts() > 0 {
            log::warn!("{} repost(s) of items never posted", log.orphan_reposts());
        }
    }

    let keep = match (&log, settings.require_activity) {
        (Some(log), true) => {
            let activity = derive_activity::<f64>(log, &full).table;
            let keep: Vec<bool> = activity.values().iter().map(|&a| a > 0.0).collect();
            let kept = keep.iter().filter(|&&k| k).count();
            log::info!("keeping {kept} of {} nodes with activity", full.n_nodes());
            Some(keep)
        }
        _ => None,
    };
    let graph = match &keep {
        Some(keep) => full.induced_subgraph(keep)?,
        None => full.clone(),
    };

    let mut attributes = Vec::new();
    for (name, path) in &settings.attrs {
        let (table, _) = load_attribute::<f64, _>(&full, open(path)?, name)
            .with_context(|| format!("reading attribute `{name}` from {}", path.display()))?;
        attributes.push(match &keep {
            Some(keep) => table.restricted(keep),
            None => table,
        });
    }
    if let Some(log) = &log {
        let aggregator = settings.virality_aggregator.into();
        for derived in [
            derive_activity(log, &graph),
            derive_diversity(log, &graph),
            derive_virality(log, &graph, ViralityMode::Posted, aggregator),
            derive_virality(log, &graph, ViralityMode::Received, aggregator),
        ] {
            if settings.attrs.contains_key(derived.table.name()) {
                return Err(config_error(format!(
                    "attribute `{}` is both supplied and derived from --events",
                    derived.table.name()
                )));
            }
            attributes.push(derived.table);
        }
    }
    Ok(Inputs { graph, attributes })
}

fn degree_attributes(g: &DirectedGraph) -> [AttributeTable; 2] {
    [
        netparadox::degree_as_attribute(g, Direction::Out),
        netparadox::degree_as_attribute(g, Direction::In),
    ]
}

/// Concatenates CSV bodies that share a header line.
fn concat_csv(parts: &[String]) -> String {
    let mut out = String::new();
    for (i, part) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(part);
        } else if let Some((_, rest)) = part.split_once('\n') {
            out.push_str(rest);
        }
    }
    out
}

fn fraction_line(label: &str, r: &netparadox::ParadoxReport) -> String {
    format!(
        "{label} ({}): {}/{} nodes ({:.1}%)",
        r.stat,
        r.nodes_in_paradox,
        r.nodes_evaluated,
        100.0 * r.fraction
    )
}

pub fn karate_demo(settings: &Settings, output: &Output) -> anyhow::Result<Vec<String>> {
    let g = karate_club();
    let suite = friendship_paradox_suite(&g);
    let skill: AttributeTable = rank_matched_attribute(&g, None, settings.seed)?;
    let skill_reports = paradox_reports(&g, &skill, NeighborRelation::Friends)?;

    let mut w = Writer::new(
        &output.out,
        output.format,
        Metadata::new("karate-demo", settings)?,
    )?;
    let nodes = [("nodes", g.n_nodes().to_string())];
    w.emit(
        "friendship_paradox",
        &report::paradox_csv(&suite),
        &suite,
        &nodes,
    )?;
    w.emit(
        "skill_paradox",
        &report::paradox_csv(&skill_reports),
        &skill_reports[..],
        &nodes,
    )?;

    let mut lines: Vec<String> = suite[..2]
        .iter()
        .map(|r| fraction_line("friendship paradox", r))
        .collect();
    lines.extend(
        skill_reports
            .iter()
            .map(|r| fraction_line("skill paradox", r)),
    );
    lines.extend(written(&w));
    Ok(lines)
}

#[derive(Serialize)]
struct NamedHistogram<'a> {
    attribute: &'a str,
    histogram: netparadox::LogBinnedHistogram,
}

fn mean_correlation(
    exp: &ShuffleExperiment,
    measure: &str,
    template: &CorrelationReport,
) -> CorrelationReport {
    let mean = exp.aggregate_for(measure, None).map(|a| a.mean);
    CorrelationReport {
        r: mean.filter(|m| m.is_finite()),
        ..template.clone()
    }
}

pub fn analyze(settings: &Settings, output: &Output) -> anyhow::Result<Vec<String>> {
    let inputs = load_inputs(settings)?;
    let g = &inputs.graph;
    if inputs.attributes.is_empty() {
        log::warn!("no attributes supplied; reporting friendship paradoxes only");
    }

    let mut paradox = friendship_paradox_suite(g);
    for attr in &inputs.attributes {
        paradox.extend(paradox_reports(g, attr, NeighborRelation::Friends)?);
    }

    let all: Vec<AttributeTable> = degree_attributes(g)
        .into_iter()
        .chain(inputs.attributes.iter().cloned())
        .collect();

    let mut hist_csv = Vec::new();
    let mut hists = Vec::new();
    for attr in &all {
        match log_binned_pdf(attr.values(), settings.bins_per_decade) {
            Ok(h) => {
                hist_csv.push(report::histogram_csv(attr.name(), &h));
                hists.push(NamedHistogram {
                    attribute: attr.name(),
                    histogram: h,
                });
            }
            Err(e) => log::warn!("no histogram for `{}`: {e}", attr.name()),
        }
    }
    if hist_csv.is_empty() {
        hist_csv.push(format!("{}\n", report::HISTOGRAM_HEADER));
    }

    let binning = DegreeBinning::new(settings.bins_per_decade);
    let mut rows = Vec::new();
    if g.n_edges() >= 2 {
        for attr in &all {
            let within = netparadox::within_node_correlation(g, attr)?;
            let assort = netparadox::attribute_assortativity(g, attr)?;
            let run = |kind: ShuffleKind| {
                let mut config = ExperimentConfig::new(kind, settings.runs, settings.seed);
                config.binning = binning;
                config.stats = vec![ParadoxStat::Mean];
                shuffle_experiment(g, attr, &config)
            };
            let contr = run(ShuffleKind::Controlled)?;
            let full = run(ShuffleKind::Full)?;
            for (measure, emp) in [("within_node_r", &within), ("assortativity", &assort)] {
                rows.push(CorrelationRow::new("emp", emp.clone()));
                rows.push(CorrelationRow::new(
                    "contr",
                    mean_correlation(&contr, measure, emp),
                ));
                rows.push(CorrelationRow::new(
                    "shuffle",
                    mean_correlation(&full, measure, emp),
                ));
            }
        }
    } else {
        log::warn!("fewer than 2 edges; skipping correlations");
    }

    let mut w = Writer::new(
        &output.out,
        output.format,
        Metadata::new("analyze", settings)?,
    )?;
    let shape = [
        ("nodes", g.n_nodes().to_string()),
        ("edges", g.n_edges().to_string()),
    ];
    w.emit("paradox", &report::paradox_csv(&paradox), &paradox, &shape)?;
    w.emit("histograms", &concat_csv(&hist_csv), &hists, &shape)?;
    w.emit(
        "correlations",
        &report::correlation_csv(&rows),
        &rows,
        &[
            ("nodes", g.n_nodes().to_string()),
            ("edges", g.n_edges().to_string()),
            ("shuffle_runs", settings.runs.to_string()),
        ],
    )?;
    Ok(written(&w))
}

pub fn shuffle_test(settings: &Settings, output: &Output) -> anyhow::Result<Vec<String>> {
    let inputs = load_inputs(settings)?;
    let g = &inputs.graph;
    let kind: ShuffleKind = settings.kind.into();
    let mut experiments = Vec::new();
    let degree = degree_attributes(g);
    for (i, attr) in degree.iter().chain(&inputs.attributes).enumerate() {
        let mut config = ExperimentConfig::new(kind, settings.runs, settings.seed);
        config.binning = DegreeBinning::new(settings.bins_per_decade);
        if i < degree.len() {
            config.relations = NeighborRelation::BOTH.to_vec();
        }
        experiments.push(shuffle_experiment(g, attr, &config)?);
    }

    let mut lines = Vec::new();
    for exp in &experiments {
        for stat in ParadoxStat::BOTH {
            if let Some(a) = exp.aggregate_for("paradox_friends", Some(stat)) {
                lines.push(format!(
                    "{} ({stat}): baseline {:.4}, {} shuffle {:.4} ± {:.4}",
                    exp.attribute,
                    a.baseline,
                    kind.as_str(),
                    a.mean,
                    a.stderr
                ));
            }
        }
    }

    let parts: Vec<String> = experiments.iter().map(report::shuffle_csv).collect();
    let mut w = Writer::new(
        &output.out,
        output.format,
        Metadata::new("shuffle-test", settings)?,
    )?;
    w.emit(
        "shuffle",
        &concat_csv(&parts),
        &experiments,
        &[
            ("nodes", g.n_nodes().to_string()),
            ("edges", g.n_edges().to_string()),
        ],
    )?;
    lines.extend(written(&w));
    Ok(lines)
}

fn kind_name(d: &DistributionSpec) -> &'static str {
    match d {
        distributions::DistributionSpec::Exponential { .. } => "exponential",
        distributions::DistributionSpec::LogNormal { .. } => "lognormal",
        distributions::DistributionSpec::Pareto { .. } => "pareto",
    }
}

pub fn statistical_origins(settings: &Settings, output: &Output) -> anyhow::Result<Vec<String>> {
    let mut w = Writer::new(
        &output.out,
        output.format,
        Metadata::new("statistical-origins", settings)?,
    )?;
    let mut lines = Vec::new();
    let mut used: Vec<String> = Vec::new();
    for (i, dist) in settings.distributions.iter().enumerate() {
        let curve = mean_median_scaling(
            dist,
            &settings.sizes,
            settings.trials,
            derive_seed(settings.seed, i as u64),
        )?;
        let mean = dist
            .mean()
            .map_or("undefined".to_owned(), |m| m.to_string());
        let median = dist.median()?.to_string();
        let mut stem = format!("scaling_{}", kind_name(dist));
        if used.contains(&stem) {
            stem = format!("{stem}_{i}");
        }
        used.push(stem.clone());
        lines.push(format!("{}: mean {mean}, median {median}", kind_name(dist)));
        w.emit(
            &stem,
            &report::scaling_csv(&curve),
            &curve,
            &[
                ("distribution", serde_json::to_string(dist)?),
                ("analytic_mean", mean),
                ("analytic_median", median),
                ("trials", settings.trials.to_string()),
            ],
        )?;
    }

    let config = IidNetworkConfig {
        redraws: settings.redraws,
        binning: DegreeBinning::new(settings.bins_per_decade),
        ..IidNetworkConfig::new(
            settings.nodes,
            settings.iid_distribution,
            derive_seed(settings.seed, u64::MAX),
        )
    };
    let iid = netparadox::iid_network_paradox(&config)?;
    lines.push(format!(
        "iid network: mean-paradox fraction {:.4}, median-paradox fraction {:.4}",
        iid.overall_mean, iid.overall_median
    ));
    w.emit(
        "iid_network",
        &report::iid_csv(&iid),
        &iid,
        &[
            (
                "distribution",
                serde_json::to_string(&settings.iid_distribution)?,
            ),
            ("nodes", settings.nodes.to_string()),
            ("redraws", settings.redraws.to_string()),
            ("overall_frac_mean", iid.overall_mean.to_string()),
            ("overall_frac_median", iid.overall_median.to_string()),
        ],
    )?;
    lines.extend(written(&w));
    Ok(lines)
}

fn written(w: &Writer) -> Vec<String> {
    w.written()
        .iter()
        .map(|p| format!("wrote {}", p.display()))
        .collect()
}
