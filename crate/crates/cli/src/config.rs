//! Run configuration: command-line flags over an optional TOML file over
//! built-in defaults.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use netparadox::{Aggregator, DistributionSpec, ShuffleKind};
use serde::{Deserialize, Serialize};

/// Invalid or incomplete configuration. Reported with kind `config`.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

pub fn config_error(msg: impl Into<String>) -> anyhow::Error {
    ConfigError(msg.into()).into()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindArg {
    Full,
    Controlled,
}

impl From<KindArg> for ShuffleKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Full => ShuffleKind::Full,
            KindArg::Controlled => ShuffleKind::Controlled,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AggregatorArg {
    Mean,
    Max,
    Sum,
}

impl From<AggregatorArg> for Aggregator {
    fn from(a: AggregatorArg) -> Self {
        match a {
            AggregatorArg::Mean => Aggregator::Mean,
            AggregatorArg::Max => Aggregator::Max,
            AggregatorArg::Sum => Aggregator::Sum,
        }
    }
}

/// `NAME=PATH` as given to `--attr`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttrSpec {
    pub name: String,
    pub path: PathBuf,
}

pub fn parse_attr_spec(s: &str) -> Result<AttrSpec, String> {
    let (name, path) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=PATH, got `{s}`"))?;
    validate_attr_name(name)?;
    if path.is_empty() {
        return Err(format!("attribute `{name}` has an empty path"));
    }
    Ok(AttrSpec {
        name: name.to_owned(),
        path: PathBuf::from(path),
    })
}

fn validate_attr_name(name: &str) -> Result<(), String> {
    if name.is_empty() || name.contains([',', '=', '"']) || name.chars().any(char::is_whitespace) {
        return Err(format!("invalid attribute name `{name}`"));
    }
    Ok(())
}

/// Flags shared by every subcommand. All optional, so that unset flags fall
/// through to the config file and then to defaults.
#[derive(Args, Clone, Debug, Default)]
pub struct CommonArgs {
    /// TOML file with default values for any of the options below
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Edge list, one `follower followee` pair per line
    #[arg(long, value_name = "PATH")]
    pub edges: Option<PathBuf>,
    /// Attribute CSV with header `id,value` (repeatable)
    #[arg(long = "attr", value_name = "NAME=PATH", value_parser = parse_attr_spec)]
    pub attrs: Vec<AttrSpec>,
    /// Event CSV with header `time,actor,action,item`
    #[arg(long, value_name = "PATH")]
    pub events: Option<PathBuf>,
    /// Drop nodes without any event before analysis (needs --events)
    #[arg(long)]
    pub require_activity: bool,
    #[arg(long, value_name = "U64")]
    pub seed: Option<u64>,
    /// Resolution of the geometric degree bins used by controlled shuffles
    /// and histograms
    #[arg(long, value_name = "N")]
    pub bins_per_decade: Option<u32>,
    /// Number of shuffle realizations
    #[arg(long, value_name = "N")]
    pub runs: Option<usize>,
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
    /// Per-user aggregate of item virality
    #[arg(long, value_enum)]
    pub virality_aggregator: Option<AggregatorArg>,
    /// Trials per sample size for the scaling curves
    #[arg(long, value_name = "N")]
    pub trials: Option<usize>,
    /// Comma-separated, strictly increasing sample sizes
    #[arg(long, value_name = "N,N,...", value_delimiter = ',')]
    pub sizes: Vec<usize>,
    /// Node count of the iid random network
    #[arg(long, value_name = "N")]
    pub nodes: Option<usize>,
    /// Attribute redraws on the iid random network
    #[arg(long, value_name = "N")]
    pub redraws: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, value_name = "N")]
    pub threads: Option<usize>,
}

/// Config file contents. Relative paths are taken relative to the file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    edges: Option<PathBuf>,
    #[serde(default)]
    attr: BTreeMap<String, PathBuf>,
    events: Option<PathBuf>,
    require_activity: Option<bool>,
    seed: Option<u64>,
    bins_per_decade: Option<u32>,
    runs: Option<usize>,
    kind: Option<KindArg>,
    virality_aggregator: Option<AggregatorArg>,
    trials: Option<usize>,
    sizes: Option<Vec<usize>>,
    nodes: Option<usize>,
    redraws: Option<usize>,
    distributions: Option<Vec<DistributionSpec>>,
    iid_distribution: Option<DistributionSpec>,
    format: Option<Format>,
    out: Option<PathBuf>,
    threads: Option<usize>,
}

/// Everything that determines the numbers a run produces. Echoed into every
/// output file and hashed.
#[derive(Clone, Debug, Serialize)]
pub struct Settings {
    pub edges: Option<PathBuf>,
    pub attrs: BTreeMap<String, PathBuf>,
    pub events: Option<PathBuf>,
    pub require_activity: bool,
    pub seed: u64,
    pub bins_per_decade: u32,
    pub runs: usize,
    pub kind: KindArg,
    pub virality_aggregator: AggregatorArg,
    pub trials: usize,
    pub sizes: Vec<usize>,
    pub nodes: usize,
    pub redraws: usize,
    pub distributions: Vec<DistributionSpec>,
    pub iid_distribution: DistributionSpec,
}

/// Where and how results are written. Does not affect the numbers.
#[derive(Clone, Debug)]
pub struct Output {
    pub format: Format,
    pub out: PathBuf,
    pub threads: Option<usize>,
}

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SIZES: [usize; 7] = [1, 3, 10, 30, 100, 300, 1000];

pub fn default_distributions() -> Vec<DistributionSpec> {
    vec![
        DistributionSpec::exponential(2.0).expect("valid"),
        DistributionSpec::log_normal(-0.3, 1.5).expect("valid"),
        DistributionSpec::pareto(1.2, 1.0).expect("valid"),
    ]
}

fn rebase(base: Option<&Path>, p: PathBuf) -> PathBuf {
    match base {
        Some(dir) if p.is_relative() => dir.join(p),
        _ => p,
    }
}

pub fn resolve(args: &CommonArgs) -> anyhow::Result<(Settings, Output)> {
    let (file, base) = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                config_error(format!("cannot read config file {}: {e}", path.display()))
            })?;
            let file: FileConfig = toml::from_str(&text).map_err(|e| {
                config_error(format!("invalid config file {}: {e}", path.display()))
            })?;
            (file, path.parent().map(Path::to_path_buf))
        }
        None => (FileConfig::default(), None),
    };
    let base = base.as_deref();

    let mut attrs: BTreeMap<String, PathBuf> = BTreeMap::new();
    for (name, path) in file.attr {
        validate_attr_name(&name).map_err(config_error)?;
        attrs.insert(name, rebase(base, path));
    }
    for spec in &args.attrs {
        attrs.insert(spec.name.clone(), spec.path.clone());
    }

    let settings = Settings {
        edges: args.edges.clone().or(file.edges.map(|p| rebase(base, p))),
        attrs,
        events: args.events.clone().or(file.events.map(|p| rebase(base, p))),
        require_activity: args.require_activity || file.require_activity.unwrap_or(false),
        seed: args.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
        bins_per_decade: args.bins_per_decade.or(file.bins_per_decade).unwrap_or(10),
        runs: args.runs.or(file.runs).unwrap_or(10),
        kind: args.kind.or(file.kind).unwrap_or(KindArg::Full),
        virality_aggregator: args
            .virality_aggregator
            .or(file.virality_aggregator)
            .unwrap_or(AggregatorArg::Mean),
        trials: args.trials.or(file.trials).unwrap_or(10_000),
        sizes: Some(args.sizes.clone())
            .filter(|s| !s.is_empty())
            .or(file.sizes)
            .unwrap_or_else(|| DEFAULT_SIZES.to_vec()),
        nodes: args.nodes.or(file.nodes).unwrap_or(10_000),
        redraws: args.redraws.or(file.redraws).unwrap_or(10),
        distributions: file.distributions.unwrap_or_else(default_distributions),
        iid_distribution: file
            .iid_distribution
            .unwrap_or_else(|| DistributionSpec::pareto(1.2, 1.0).expect("valid")),
    };
    let output = Output {
        format: args.format.or(file.format).unwrap_or(Format::Csv),
        out: args
            .out
            .clone()
            .or(file.out.map(|p| rebase(base, p)))
            .unwrap_or_else(|| PathBuf::from("netparadox-out")),
        threads: args.threads.or(file.threads),
    };
    settings.validate()?;
    if output.threads == Some(0) {
        return Err(config_error("--threads must be at least 1"));
    }
    Ok((settings, output))
}

impl Settings {
    fn validate(&self) -> anyhow::Result<()> {
        if self.bins_per_decade == 0 {
            return Err(config_error("--bins-per-decade must be at least 1"));
        }
        if self.runs == 0 {
            return Err(config_error("--runs must be at least 1"));
        }
        if self.trials == 0 || self.redraws == 0 {
            return Err(config_error("--trials and --redraws must be at least 1"));
        }
        if self.sizes.is_empty()
            || self.sizes[0] == 0
            || self.sizes.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(config_error(
                "--sizes must be positive and strictly increasing",
            ));
        }
        if self.nodes < 2 {
            return Err(config_error("--nodes must be at least 2"));
        }
        for d in self.distributions.iter().chain([&self.iid_distribution]) {
            d.validate()
                .map_err(|e| config_error(format!("invalid distribution: {e}")))?;
        }
        if self.require_activity && self.events.is_none() {
            return Err(config_error("--require-activity needs --events"));
        }
        Ok(())
    }

    /// Fails with a list of every missing input when the command needs a
    /// graph.
    pub fn require_graph_inputs(&self) -> anyhow::Result<&Path> {
        match &self.edges {
            Some(p) => Ok(p),
            None => Err(config_error("missing required input(s): --edges")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn attr_specs() {
        let a = parse_attr_spec("diversity=data/div.csv").unwrap();
        assert_eq!(a.name, "diversity");
        assert_eq!(a.path, PathBuf::from("data/div.csv"));
        assert!(parse_attr_spec("nopath").is_err());
        assert!(parse_attr_spec("=x.csv").is_err());
        assert!(parse_attr_spec("a,b=x.csv").is_err());
        assert!(parse_attr_spec("a=").is_err());
    }

    #[test]
    fn flags_override_file_and_defaults() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(
            &path,
            "seed = 7\nruns = 3\nedges = \"g.edges\"\n[attr]\nx = \"x.csv\"\n",
        )
        .unwrap();
        let args = CommonArgs {
            config: Some(path),
            runs: Some(5),
            ..Default::default()
        };
        let (s, o) = resolve(&args).unwrap();
        assert_eq!(s.seed, 7);
        assert_eq!(s.runs, 5);
        assert_eq!(s.bins_per_decade, 10);
        assert_eq!(
            s.edges.as_deref(),
            Some(dir.path().join("g.edges").as_path())
        );
        assert_eq!(s.attrs["x"], dir.path().join("x.csv"));
        assert_eq!(o.format, Format::Csv);
    }

    #[test]
    fn invalid_settings_are_config_errors() {
        for args in [
            CommonArgs {
                runs: Some(0),
                ..Default::default()
            },
            CommonArgs {
                sizes: vec![3, 3],
                ..Default::default()
            },
            CommonArgs {
                require_activity: true,
                ..Default::default()
            },
        ] {
            let err = resolve(&args).unwrap_err();
            assert!(err.downcast_ref::<ConfigError>().is_some(), "{err}");
        }
    }

    #[test]
    fn bad_distribution_in_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(
            &path,
            "[[distributions]]\nkind = \"pareto\"\nalpha = -1.0\nx_min = 1.0\n",
        )
        .unwrap();
        let args = CommonArgs {
            config: Some(path),
            ..Default::default()
        };
        let err = resolve(&args).unwrap_err();
        assert!(err.downcast_ref::<ConfigError>().is_some());
    }
}
