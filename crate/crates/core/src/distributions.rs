//! Heavy-tailed samplers and the statistical-origin experiments: how sample
//! means and medians behave as sample size grows, and how often nodes look
//! paradoxical when attributes are iid on a random network.

use std::f64::consts::{LN_2, PI};

use rand::seq::index;
use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::binning::DegreeBinning;
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Direction};
use crate::paradox;
use crate::scalar::Scalar;
use crate::seeding::{derive_seed, rng_from_seed, stream_rng, Rng};
use crate::stats;

/// A parametric heavy-tailed distribution on the non-negative reals.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", bound = "T: Scalar")]
pub enum DistributionSpec<T> {
    /// Density `rate * exp(-rate x)`.
    Exponential { rate: T },
    /// `exp(mu + sigma Z)` with `Z` standard normal.
    LogNormal { mu: T, sigma: T },
    /// Survival function `(x_min / x)^alpha` for `x >= x_min`.
    Pareto { alpha: T, x_min: T },
}

impl<T: Scalar> DistributionSpec<T> {
    pub fn exponential(rate: T) -> Result<Self> {
        Self::Exponential { rate }.validated()
    }

    pub fn log_normal(mu: T, sigma: T) -> Result<Self> {
        Self::LogNormal { mu, sigma }.validated()
    }

    pub fn pareto(alpha: T, x_min: T) -> Result<Self> {
        Self::Pareto { alpha, x_min }.validated()
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: T| {
            if v.is_finite() && v > T::zero() {
                Ok(())
            } else {
                Err(Error::InvalidDistribution(format!(
                    "{name} must be positive, got {v}"
                )))
            }
        };
        match *self {
            Self::Exponential { rate } => positive("rate", rate),
            Self::LogNormal { mu, sigma } => {
                if !mu.is_finite() {
                    return Err(Error::InvalidDistribution(format!(
                        "mu must be finite, got {mu}"
                    )));
                }
                positive("sigma", sigma)
            }
            Self::Pareto { alpha, x_min } => {
                positive("alpha", alpha)?;
                positive("x_min", x_min)
            }
        }
    }

    pub fn mean(&self) -> Result<T> {
        self.validate()?;
        let one = T::one();
        let two = one + one;
        Ok(match *self {
            Self::Exponential { rate } => one / rate,
            Self::LogNormal { mu, sigma } => (mu + sigma * sigma / two).exp(),
            Self::Pareto { alpha, x_min } => {
                if alpha <= one {
                    return Err(Error::UndefinedMean {
                        alpha: alpha.as_f64(),
                    });
                }
                alpha * x_min / (alpha - one)
            }
        })
    }

    pub fn median(&self) -> Result<T> {
        self.validate()?;
        let two = T::one() + T::one();
        Ok(match *self {
            Self::Exponential { rate } => T::of(LN_2) / rate,
            Self::LogNormal { mu, .. } => mu.exp(),
            Self::Pareto { alpha, x_min } => x_min * two.powf(T::one() / alpha),
        })
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            Self::Exponential { rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-rate.as_f64() * x).exp_m1()
                }
            }
            Self::LogNormal { mu, sigma } => {
                if x <= 0.0 {
                    0.0
                } else {
                    let z = (x.ln() - mu.as_f64()) / sigma.as_f64();
                    0.5 * erfc(-z / std::f64::consts::SQRT_2)
                }
            }
            Self::Pareto { alpha, x_min } => {
                let xm = x_min.as_f64();
                if x <= xm {
                    0.0
                } else {
                    1.0 - (xm / x).powf(alpha.as_f64())
                }
            }
        }
    }
}

/// True mean and median; fails for Pareto with `alpha <= 1`.
pub fn analytic_moments<T: Scalar>(dist: &DistributionSpec<T>) -> Result<(T, T)> {
    Ok((dist.mean()?, dist.median()?))
}

/// Inverse-CDF draws for Exponential and Pareto; Box-Muller pairs for
/// LogNormal.
#[derive(Clone, Debug)]
pub struct Sampler<T> {
    spec: DistributionSpec<T>,
    spare_normal: Option<f64>,
}

impl<T: Scalar> Sampler<T> {
    pub fn new(spec: DistributionSpec<T>) -> Result<Self> {
        spec.validate()?;
        Ok(Sampler {
            spec,
            spare_normal: None,
        })
    }

    /// Uniform on (0, 1].
    fn open_unit(rng: &mut Rng) -> f64 {
        1.0 - rng.random::<f64>()
    }

    fn standard_normal(&mut self, rng: &mut Rng) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let r = (-2.0 * Self::open_unit(rng).ln()).sqrt();
        let theta = 2.0 * PI * rng.random::<f64>();
        self.spare_normal = Some(r * theta.sin());
        r * theta.cos()
    }

    pub fn draw(&mut self, rng: &mut Rng) -> T {
        match self.spec {
            DistributionSpec::Exponential { rate } => -T::of(Self::open_unit(rng)).ln() / rate,
            DistributionSpec::LogNormal { mu, sigma } => {
                let z = T::of(self.standard_normal(rng));
                (mu + sigma * z).exp()
            }
            DistributionSpec::Pareto { alpha, x_min } => {
                x_min * T::of(Self::open_unit(rng)).powf(-T::one() / alpha)
            }
        }
    }

    pub fn fill(&mut self, rng: &mut Rng, n: usize) -> Vec<T> {
        (0..n).map(|_| self.draw(rng)).collect()
    }
}

/// `n` iid draws, reproducible for a given seed.
pub fn sample<T: Scalar>(dist: &DistributionSpec<T>, n: usize, seed: u64) -> Result<Vec<T>> {
    if n == 0 {
        return Err(Error::Size("sample size must be at least 1".into()));
    }
    let mut rng = rng_from_seed(seed);
    Ok(Sampler::new(*dist)?.fill(&mut rng, n))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ScalingPoint<T> {
    pub n: usize,
    pub mean_of_means: T,
    pub mean_of_medians: T,
    pub stderr_means: T,
    pub stderr_medians: T,
    /// Median over trials of the sample mean: the summary of a size-`n`
    /// sample mean that minimizes absolute error. Starts at the population
    /// median for `n = 1` and approaches the population mean.
    pub median_of_means: T,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ScalingCurve<T> {
    pub distribution: DistributionSpec<T>,
    pub trials: usize,
    pub points: Vec<ScalingPoint<T>>,
}

/// For each sample size, averages the sample mean and sample median over
/// `trials` independent samples. Trials run in parallel on independent
/// seed streams; the result does not depend on scheduling.
pub fn mean_median_scaling<T: Scalar>(
    dist: &DistributionSpec<T>,
    sizes: &[usize],
    trials: usize,
    seed: u64,
) -> Result<ScalingCurve<T>> {
    dist.validate()?;
    if trials == 0 {
        return Err(Error::Size("trials must be at least 1".into()));
    }
    if sizes.is_empty() || sizes[0] == 0 || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Size(
            "sample sizes must be non-empty, positive and strictly increasing".into(),
        ));
    }
    let points = sizes
        .iter()
        .enumerate()
        .map(|(si, &n)| {
            let size_seed = derive_seed(seed, si as u64);
            let per_trial: Vec<(T, T)> = (0..trials)
                .into_par_iter()
                .map_init(
                    || {
                        (
                            Sampler::new(*dist).expect("validated"),
                            Vec::with_capacity(n),
                        )
                    },
                    |(sampler, buf), t| {
                        let mut rng = stream_rng(size_seed, t as u64);
                        sampler.spare_normal = None;
                        buf.clear();
                        buf.extend((0..n).map(|_| sampler.draw(&mut rng)));
                        let m = stats::mean(buf).expect("n >= 1");
                        let d = stats::median_in_place(buf).expect("n >= 1");
                        (m, d)
                    },
                )
                .collect();
            let mut means: Vec<T> = per_trial.iter().map(|p| p.0).collect();
            let medians: Vec<T> = per_trial.iter().map(|p| p.1).collect();
            let (mean_of_means, stderr_means) =
                stats::mean_and_stderr(&means).expect("trials >= 1");
            let (mean_of_medians, stderr_medians) =
                stats::mean_and_stderr(&medians).expect("trials >= 1");
            let median_of_means = stats::median_in_place(&mut means).expect("trials >= 1");
            ScalingPoint {
                n,
                mean_of_means,
                mean_of_medians,
                stderr_means,
                stderr_medians,
                median_of_means,
            }
        })
        .collect();
    Ok(ScalingCurve {
        distribution: *dist,
        trials,
        points,
    })
}

/// Random directed graph in which each node follows `round(draw)` distinct,
/// uniformly chosen other nodes, the count clamped to `[1, n_nodes - 1]`.
pub fn random_friend_graph<T: Scalar>(
    n_nodes: usize,
    degree_dist: &DistributionSpec<T>,
    seed: u64,
) -> Result<DirectedGraph> {
    if n_nodes < 2 {
        return Err(Error::Size(format!("need at least 2 nodes, got {n_nodes}")));
    }
    let sampler = Sampler::new(*degree_dist)?;
    let lists: Vec<Vec<(u32, u32)>> = (0..n_nodes)
        .into_par_iter()
        .map_init(
            || sampler.clone(),
            |sampler, u| {
                let mut rng = stream_rng(seed, u as u64);
                sampler.spare_normal = None;
                let raw = sampler.draw(&mut rng).round().as_f64();
                let k = (raw.min(n_nodes as f64) as usize).clamp(1, n_nodes - 1);
                index::sample(&mut rng, n_nodes - 1, k)
                    .into_iter()
                    .map(|i| {
                        let v = if i >= u { i + 1 } else { i };
                        (u as u32, v as u32)
                    })
                    .collect()
            },
        )
        .collect();
    DirectedGraph::from_index_edges(n_nodes, lists.into_iter().flatten().collect())
}

/// Paradox fractions of the nodes sharing a friend-count bin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IidBucket {
    pub degree_min: usize,
    pub degree_max: usize,
    /// Nodes in the bucket (per realization).
    pub nodes: usize,
    pub frac_mean: f64,
    pub frac_median: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IidParadoxResult {
    pub redraws: usize,
    pub buckets: Vec<IidBucket>,
    /// Fractions over all nodes with at least one friend, pooled over redraws.
    pub overall_mean: f64,
    pub overall_median: f64,
    /// `(mean, median)` paradox fraction of each individual redraw.
    pub per_redraw: Vec<(f64, f64)>,
}

impl IidParadoxResult {
    pub fn fraction(&self, stat: paradox::ParadoxStat) -> f64 {
        match stat {
            paradox::ParadoxStat::Mean => self.overall_mean,
            paradox::ParadoxStat::Median => self.overall_median,
        }
    }
}

/// Draws iid attributes `redraws` times on a fixed graph and reports, per
/// friend-count bucket, how often nodes are in the paradox regime relative to
/// their friends under mean and median.
pub fn iid_paradox_on_graph<T: Scalar>(
    g: &DirectedGraph,
    attr_dist: &DistributionSpec<T>,
    redraws: usize,
    binning: DegreeBinning,
    seed: u64,
) -> Result<IidParadoxResult> {
    if redraws == 0 {
        return Err(Error::Size("redraws must be at least 1".into()));
    }
    let sampler = Sampler::new(*attr_dist)?;
    let degrees = g.degrees(Direction::Out);
    let occupancy: Vec<_> = binning
        .occupancy(&degrees)
        .into_iter()
        .filter(|o| o.degree_min > 0)
        .collect();
    let slot_of_bin = |bin: usize| occupancy.binary_search_by_key(&bin, |o| o.bin).ok();
    let slots: Vec<Option<usize>> = degrees
        .iter()
        .map(|&d| slot_of_bin(binning.bin_of(d)))
        .collect();

    // Per redraw: (mean hits, median hits) per bucket.
    let per_redraw: Vec<Vec<(usize, usize)>> = (0..redraws)
        .into_par_iter()
        .map(|r| {
            let mut sampler = sampler.clone();
            let mut rng = stream_rng(seed, r as u64);
            let values = sampler.fill(&mut rng, g.n_nodes());
            let mut hits = vec![(0usize, 0usize); occupancy.len()];
            let mut scratch = Vec::new();
            for u in 0..g.n_nodes() {
                let Some(slot) = slots[u] else { continue };
                if let Some((m, d)) =
                    paradox::verdicts(values[u], g.out_slice(u), &values, &mut scratch)
                {
                    hits[slot].0 += m as usize;
                    hits[slot].1 += d as usize;
                }
            }
            hits
        })
        .collect();

    let evaluated: usize = occupancy.iter().map(|o| o.nodes).sum();
    let mut totals = vec![(0usize, 0usize); occupancy.len()];
    let mut per_redraw_fracs = Vec::with_capacity(redraws);
    for hits in &per_redraw {
        let (mut m, mut d) = (0, 0);
        for (t, h) in totals.iter_mut().zip(hits) {
            t.0 += h.0;
            t.1 += h.1;
            m += h.0;
            d += h.1;
        }
        per_redraw_fracs.push((m as f64 / evaluated as f64, d as f64 / evaluated as f64));
    }
    let buckets = occupancy
        .iter()
        .zip(&totals)
        .map(|(o, &(m, d))| {
            let denom = (o.nodes * redraws) as f64;
            IidBucket {
                degree_min: o.degree_min,
                degree_max: o.degree_max,
                nodes: o.nodes,
                frac_mean: m as f64 / denom,
                frac_median: d as f64 / denom,
            }
        })
        .collect();
    let pooled = (evaluated * redraws) as f64;
    let (m, d) = totals
        .iter()
        .fold((0, 0), |acc, t| (acc.0 + t.0, acc.1 + t.1));
    Ok(IidParadoxResult {
        redraws,
        buckets,
        overall_mean: m as f64 / pooled,
        overall_median: d as f64 / pooled,
        per_redraw: per_redraw_fracs,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct IidNetworkConfig<T> {
    pub n_nodes: usize,
    pub degree_dist: DistributionSpec<T>,
    pub attr_dist: DistributionSpec<T>,
    pub redraws: usize,
    pub binning: DegreeBinning,
    pub seed: u64,
}

impl<T: Scalar> IidNetworkConfig<T> {
    /// Friend counts drawn from the attribute's own distribution.
    pub fn new(n_nodes: usize, attr_dist: DistributionSpec<T>, seed: u64) -> Self {
        IidNetworkConfig {
            n_nodes,
            degree_dist: attr_dist,
            attr_dist,
            redraws: 1,
            binning: DegreeBinning::default(),
            seed,
        }
    }
}

/// Random network with no correlations: friend counts from `degree_dist`,
/// friends chosen uniformly, attributes iid from `attr_dist`.
pub fn iid_network_paradox<T: Scalar>(config: &IidNetworkConfig<T>) -> Result<IidParadoxResult> {
    let g = random_friend_graph(
        config.n_nodes,
        &config.degree_dist,
        derive_seed(config.seed, 0),
    )?;
    iid_paradox_on_graph(
        &g,
        &config.attr_dist,
        config.redraws,
        config.binning,
        derive_seed(config.seed, 1),
    )
}

/// Complete graph on `n_nodes` with iid attributes.
pub fn fully_connected_paradox<T: Scalar>(
    n_nodes: usize,
    attr_dist: &DistributionSpec<T>,
    redraws: usize,
    seed: u64,
) -> Result<IidParadoxResult> {
    if n_nodes < 2 {
        return Err(Error::Size(format!("need at least 2 nodes, got {n_nodes}")));
    }
    let g = DirectedGraph::complete(n_nodes)?;
    iid_paradox_on_graph(&g, attr_dist, redraws, DegreeBinning::default(), seed)
}

/// Probability density over geometric bins, plus the mass at zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct LogBinnedHistogram<T> {
    pub bins_per_decade: u32,
    /// `edges[i]..edges[i + 1]` is bin `i`.
    pub edges: Vec<T>,
    pub counts: Vec<usize>,
    pub density: Vec<T>,
    pub zero_count: usize,
    /// Fraction of all values equal to zero.
    pub zero_mass: T,
    pub total: usize,
}

impl<T: Scalar> LogBinnedHistogram<T> {
    /// Geometric bin centres.
    pub fn centers(&self) -> Vec<T> {
        self.edges
            .windows(2)
            .map(|w| (w[0] * w[1]).sqrt())
            .collect()
    }

    /// `zero_mass + sum(density * width)`; one up to rounding.
    pub fn total_mass(&self) -> T {
        let binned = stats::compensated_sum(
            self.edges
                .windows(2)
                .zip(&self.density)
                .map(|(w, &d)| d * (w[1] - w[0])),
        );
        binned + self.zero_mass
    }
}

pub fn log_binned_pdf<T: Scalar>(
    values: &[T],
    bins_per_decade: u32,
) -> Result<LogBinnedHistogram<T>> {
    if bins_per_decade == 0 {
        return Err(Error::Size("bins_per_decade must be at least 1".into()));
    }
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some((i, v)) = values
        .iter()
        .enumerate()
        .find(|(_, v)| !v.is_finite() || **v < T::zero())
    {
        return Err(Error::InvalidValue {
            line: i + 1,
            message: format!("{v} is not a finite non-negative value"),
        });
    }
    let positive = values.iter().copied().filter(|&v| v > T::zero());
    let (lo, hi) = positive.fold((T::infinity(), T::zero()), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if !lo.is_finite() {
        return Err(Error::EmptyHistogram);
    }
    let b = T::of(bins_per_decade as f64);
    let ten = T::of(10.0);
    let n_bins = ((b * (hi / lo).log10()).floor().to_usize().unwrap_or(0) + 1).max(1);
    let edges: Vec<T> = (0..=n_bins)
        .map(|i| lo * ten.powf(T::of_usize(i) / b))
        .collect();
    let mut counts = vec![0usize; n_bins];
    let mut zero_count = 0;
    for &v in values {
        if v == T::zero() {
            zero_count += 1;
            continue;
        }
        let mut i = (b * (v / lo).log10())
            .floor()
            .to_usize()
            .unwrap_or(0)
            .min(n_bins - 1);
        while i + 1 < n_bins && v >= edges[i + 1] {
            i += 1;
        }
        while i > 0 && v < edges[i] {
            i -= 1;
        }
        counts[i] += 1;
    }
    let total = values.len();
    let tf = T::of_usize(total);
    let density = counts
        .iter()
        .zip(edges.windows(2))
        .map(|(&c, w)| T::of_usize(c) / (tf * (w[1] - w[0])))
        .collect();
    Ok(LogBinnedHistogram {
        bins_per_decade,
        edges,
        counts,
        density,
        zero_count,
        zero_mass: T::of_usize(zero_count) / tf,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn reference_dists() -> [DistributionSpec<f64>; 3] {
        [
            DistributionSpec::exponential(2.0).unwrap(),
            DistributionSpec::log_normal(-0.3, 1.5).unwrap(),
            DistributionSpec::pareto(1.2, 1.0).unwrap(),
        ]
    }

    #[test]
    fn moments_closed_forms() {
        let [e, l, p] = reference_dists();
        let (m, d) = analytic_moments(&e).unwrap();
        assert_relative_eq!(m, 0.5);
        assert_relative_eq!(d, 0.5 * LN_2);
        let (m, d) = analytic_moments(&l).unwrap();
        assert_relative_eq!(m, (-0.3f64 + 1.125).exp());
        assert_relative_eq!(d, (-0.3f64).exp());
        let (m, d) = analytic_moments(&p).unwrap();
        assert_relative_eq!(m, 6.0, epsilon = 1e-12);
        assert_relative_eq!(d, 2f64.powf(1.0 / 1.2));

        let (m, d) = analytic_moments(&DistributionSpec::log_normal(0.0, 1e-9).unwrap()).unwrap();
        assert_relative_eq!(m, 1.0, epsilon = 1e-12);
        assert_relative_eq!(d, 1.0);
    }

    #[test]
    fn invalid_specs() {
        assert!(DistributionSpec::exponential(0.0_f64).is_err());
        assert!(DistributionSpec::log_normal(0.0_f64, -1.0).is_err());
        assert!(DistributionSpec::pareto(1.2_f64, 0.0).is_err());
        assert!(DistributionSpec::pareto(f64::NAN, 1.0).is_err());
        let heavy = DistributionSpec::pareto(1.0_f64, 1.0).unwrap();
        assert!(matches!(heavy.mean(), Err(Error::UndefinedMean { .. })));
        assert!(heavy.median().is_ok());
        assert!(sample(&heavy, 0, 1).is_err());
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        for d in reference_dists() {
            assert_eq!(sample(&d, 100, 9).unwrap(), sample(&d, 100, 9).unwrap());
            assert_ne!(sample(&d, 100, 9).unwrap(), sample(&d, 100, 10).unwrap());
        }
    }

    #[test]
    fn f32_sampling_tracks_f64() {
        let d = DistributionSpec::<f32>::pareto(1.2, 1.0).unwrap();
        let xs = sample(&d, 100_000, 3).unwrap();
        let mut sorted = xs.clone();
        let med = stats::median_in_place(&mut sorted).unwrap();
        assert!((med - 1.7818).abs() < 0.04, "{med}");
        assert!(xs.iter().all(|&x| x >= 1.0 && x.is_finite()));
    }

    #[test]
    fn scaling_input_validation() {
        let [e, ..] = reference_dists();
        assert!(mean_median_scaling(&e, &[1, 1], 5, 0).is_err());
        assert!(mean_median_scaling(&e, &[0, 1], 5, 0).is_err());
        assert!(mean_median_scaling(&e, &[1, 2], 0, 0).is_err());
    }

    #[test]
    fn single_draw_mean_equals_median() {
        for d in reference_dists() {
            let c = mean_median_scaling(&d, &[1], 200, 5).unwrap();
            let p = &c.points[0];
            assert_eq!(p.mean_of_means, p.mean_of_medians);
            assert_eq!(p.stderr_means, p.stderr_medians);
        }
    }

    #[test]
    fn exponential_scaling_converges_to_mean() {
        let e = DistributionSpec::<f64>::exponential(2.0).unwrap();
        let c = mean_median_scaling(&e, &[10_000], 100, 17).unwrap();
        assert!((c.points[0].mean_of_means - 0.5).abs() < 0.01);
    }

    #[test]
    fn typical_sample_mean_grows_from_median_to_mean() {
        let p = DistributionSpec::pareto(1.2, 1.0).unwrap();
        let c = mean_median_scaling(&p, &[1, 10, 100, 1000], 4000, 8).unwrap();
        let typical: Vec<f64> = c.points.iter().map(|p| p.median_of_means).collect();
        assert!((typical[0] - 1.7818).abs() < 0.1, "{typical:?}");
        assert!(typical.windows(2).all(|w| w[0] < w[1]), "{typical:?}");
        assert!(typical[3] < 6.0);
    }

    #[test]
    fn random_friend_graph_respects_degree_bounds() {
        let d = DistributionSpec::pareto(1.2, 1.0).unwrap();
        let g = random_friend_graph(300, &d, 4).unwrap();
        assert_eq!(g.ingest_stats().duplicates, 0);
        assert_eq!(g.ingest_stats().self_loops, 0);
        assert!(g
            .degrees(Direction::Out)
            .iter()
            .all(|&k| (1..300).contains(&k)));
        assert!(random_friend_graph(1, &d, 4).is_err());
        assert_eq!(
            random_friend_graph(300, &d, 4).unwrap().to_edge_list(),
            g.to_edge_list()
        );
    }

    #[test]
    fn tiny_network_bound() {
        // Two nodes, each the other's only friend: exactly one of them is
        // below the other whenever values differ.
        let d = DistributionSpec::exponential(1.0).unwrap();
        let r = fully_connected_paradox(2, &d, 50, 1).unwrap();
        assert!(r.per_redraw.iter().all(|&(m, d)| m == 0.5 && d == 0.5));
    }

    #[test]
    fn median_is_flat_once_friend_counts_are_large() {
        // Even friend counts bias the midpoint median upward for small
        // counts; from ten friends on the effect is below one percent.
        let attr = DistributionSpec::pareto(1.2, 1.0).unwrap();
        let config = IidNetworkConfig {
            n_nodes: 4000,
            degree_dist: DistributionSpec::pareto(1.2, 10.0).unwrap(),
            attr_dist: attr,
            redraws: 10,
            binning: DegreeBinning::new(5),
            seed: 12,
        };
        let r = iid_network_paradox(&config).unwrap();
        for b in r.buckets.iter().filter(|b| b.nodes >= 500) {
            assert!((b.frac_median - 0.5).abs() < 0.03, "{b:?}");
            assert!(b.frac_mean > 0.6, "{b:?}");
        }
    }

    #[test]
    fn log_bins_equal_counts() {
        let h = log_binned_pdf(&[1.0, 10.0, 100.0], 1).unwrap();
        assert_eq!(h.counts, vec![1, 1, 1]);
        assert_relative_eq!(h.total_mass(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn log_bins_zero_mass() {
        let h = log_binned_pdf(&[0.0, 0.0, 2.0, 3.0], 10).unwrap();
        assert_eq!(h.zero_count, 2);
        assert_relative_eq!(h.zero_mass, 0.5);
        assert_relative_eq!(h.total_mass(), 1.0, epsilon = 1e-12);
        assert!(matches!(
            log_binned_pdf(&[0.0, 0.0], 10),
            Err(Error::EmptyHistogram)
        ));
        assert!(matches!(
            log_binned_pdf::<f64>(&[], 10),
            Err(Error::EmptyInput)
        ));
        assert!(log_binned_pdf(&[-1.0, 2.0], 10).is_err());
        let single = log_binned_pdf(&[4.0_f32], 3).unwrap();
        assert_eq!(single.counts, vec![1]);
    }

    #[test]
    fn pareto_density_slope() {
        let p = DistributionSpec::<f64>::pareto(1.2, 1.0).unwrap();
        let xs = sample(&p, 1_000_000, 21).unwrap();
        let h = log_binned_pdf(&xs, 10).unwrap();
        let pts: Vec<(f64, f64)> = h
            .centers()
            .into_iter()
            .zip(&h.density)
            .filter(|&(c, &d)| (10.0..=1000.0).contains(&c) && d > 0.0)
            .map(|(c, &d)| (c.log10(), d.log10()))
            .collect();
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        let slope = sxy / sxx;
        assert!((slope + 2.2).abs() < 0.15, "slope {slope}");
    }
}
