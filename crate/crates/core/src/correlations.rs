//! Within-node and between-node (assortativity) correlations.
//!
//! All coefficients are plain Pearson product-moment correlations on raw
//! values. Assortativity is taken over ordered `(source, target)` edge pairs
//! without symmetrization. A margin with zero variance yields
//! [`Pearson::Undefined`], never a silent zero.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::attributes::AttributeTable;
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, Direction};
use crate::scalar::Scalar;
use crate::stats::compensated_sum;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", bound = "T: Scalar")]
pub enum Pearson<T> {
    Defined(T),
    /// At least one margin is constant.
    Undefined,
}

impl<T: Scalar> Pearson<T> {
    pub fn value(self) -> Option<T> {
        match self {
            Pearson::Defined(r) => Some(r),
            Pearson::Undefined => None,
        }
    }

    pub fn is_defined(self) -> bool {
        matches!(self, Pearson::Defined(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrelationKind {
    WithinNode,
    Assortativity,
    DegreeAssortativity { src: Direction, dst: Direction },
}

impl CorrelationKind {
    pub fn label(&self) -> &'static str {
        match self {
            CorrelationKind::WithinNode => "within_node",
            CorrelationKind::Assortativity => "assortativity",
            CorrelationKind::DegreeAssortativity { .. } => "degree_assortativity",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct CorrelationReport<T> {
    pub kind: CorrelationKind,
    pub attribute: String,
    /// `None` when a margin has zero variance.
    pub r: Option<T>,
    /// Number of pairs.
    pub n: usize,
}

fn all_equal<T: Scalar>(mut it: impl Iterator<Item = T>) -> bool {
    match it.next() {
        None => true,
        Some(first) => it.all(|v| v == first),
    }
}

fn finish<T: Scalar>(sxy: T, sxx: T, syy: T) -> Pearson<T> {
    if sxx <= T::zero() || syy <= T::zero() {
        return Pearson::Undefined;
    }
    let r = sxy / (sxx * syy).sqrt();
    Pearson::Defined(r.max(-T::one()).min(T::one()))
}

/// Two-pass product-moment correlation with compensated sums.
pub fn pearson<T: Scalar>(xs: &[T], ys: &[T]) -> Result<Pearson<T>> {
    if xs.len() != ys.len() {
        return Err(Error::Size(format!(
            "length mismatch: {} vs {}",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 2 {
        return Err(Error::Size(format!(
            "need at least 2 pairs, got {}",
            xs.len()
        )));
    }
    if all_equal(xs.iter().copied()) || all_equal(ys.iter().copied()) {
        return Ok(Pearson::Undefined);
    }
    let n = T::of_usize(xs.len());
    let mx = compensated_sum(xs.iter().copied()) / n;
    let my = compensated_sum(ys.iter().copied()) / n;
    let pairs = || xs.iter().zip(ys).map(|(&x, &y)| (x - mx, y - my));
    Ok(finish(
        compensated_sum(pairs().map(|(a, b)| a * b)),
        compensated_sum(pairs().map(|(a, _)| a * a)),
        compensated_sum(pairs().map(|(_, b)| b * b)),
    ))
}

/// Pearson over the edge pairs `(src_values[u], dst_values[v])` for every
/// edge `u -> v`, without materializing the pairs. Per-node partial sums are
/// computed in parallel and combined in node order, so the result does not
/// depend on thread scheduling.
pub fn edge_pearson<T: Scalar>(
    g: &DirectedGraph,
    src_values: &[T],
    dst_values: &[T],
) -> Result<Pearson<T>> {
    let e = g.n_edges();
    if e < 2 {
        return Err(Error::Size(format!("need at least 2 edges, got {e}")));
    }
    let n = g.n_nodes();
    if src_values.len() != n || dst_values.len() != n {
        return Err(Error::Size("value vectors must cover every node".into()));
    }
    let out_deg = g.degrees(Direction::Out);
    let in_deg = g.degrees(Direction::In);
    let src_margin = (0..n).filter(|&u| out_deg[u] > 0).map(|u| src_values[u]);
    let dst_margin = (0..n).filter(|&v| in_deg[v] > 0).map(|v| dst_values[v]);
    if all_equal(src_margin) || all_equal(dst_margin) {
        return Ok(Pearson::Undefined);
    }
    let ef = T::of_usize(e);
    let mx = compensated_sum((0..n).map(|u| T::of_usize(out_deg[u]) * src_values[u])) / ef;
    let my = compensated_sum((0..n).map(|v| T::of_usize(in_deg[v]) * dst_values[v])) / ef;

    let partial: Vec<(T, T)> = (0..n)
        .into_par_iter()
        .map(|u| {
            let dx = src_values[u] - mx;
            let targets = g.out_slice(u);
            let sum_dy = compensated_sum(targets.iter().map(|v| dst_values[v.index()] - my));
            let k = T::of_usize(targets.len());
            (dx * sum_dy, k * dx * dx)
        })
        .collect();
    let syy_parts: Vec<T> = (0..n)
        .into_par_iter()
        .map(|v| {
            let dy = dst_values[v] - my;
            T::of_usize(in_deg[v]) * dy * dy
        })
        .collect();
    Ok(finish(
        compensated_sum(partial.iter().map(|p| p.0)),
        compensated_sum(partial.iter().map(|p| p.1)),
        compensated_sum(syy_parts),
    ))
}

/// Correlation between each node's friend count and its attribute value.
pub fn within_node_correlation<T: Scalar>(
    g: &DirectedGraph,
    attr: &AttributeTable<T>,
) -> Result<CorrelationReport<T>> {
    attr.ensure_matches(g)?;
    let n = g.n_nodes();
    if n < 2 {
        return Err(Error::Size(format!("need at least 2 nodes, got {n}")));
    }
    let degree: Vec<T> = g
        .degrees(Direction::Out)
        .into_iter()
        .map(T::of_usize)
        .collect();
    Ok(CorrelationReport {
        kind: CorrelationKind::WithinNode,
        attribute: attr.name().to_owned(),
        r: pearson(&degree, attr.values())?.value(),
        n,
    })
}

/// Correlation of the attribute across the two endpoints of every edge.
pub fn attribute_assortativity<T: Scalar>(
    g: &DirectedGraph,
    attr: &AttributeTable<T>,
) -> Result<CorrelationReport<T>> {
    attr.ensure_matches(g)?;
    Ok(CorrelationReport {
        kind: CorrelationKind::Assortativity,
        attribute: attr.name().to_owned(),
        r: edge_pearson(g, attr.values(), attr.values())?.value(),
        n: g.n_edges(),
    })
}

/// Correlation of `degree(u, src)` with `degree(v, dst)` over edges `u -> v`.
pub fn degree_assortativity<T: Scalar>(
    g: &DirectedGraph,
    src: Direction,
    dst: Direction,
) -> Result<CorrelationReport<T>> {
    let as_t = |d: Direction| -> Vec<T> { g.degrees(d).into_iter().map(T::of_usize).collect() };
    let name = |d: Direction| match d {
        Direction::Out => "friends",
        Direction::In => "followers",
    };
    Ok(CorrelationReport {
        kind: CorrelationKind::DegreeAssortativity { src, dst },
        attribute: format!("{}-{}", name(src), name(dst)),
        r: edge_pearson(g, &as_t(src), &as_t(dst))?.value(),
        n: g.n_edges(),
    })
}
