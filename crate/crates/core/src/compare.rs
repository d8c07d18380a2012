//! Ranking groups by centroid.
//!
//! A larger `x_c` always wins. Groups whose `x_c` agree within `eps` are
//! ordered by `sum(y_i^2)`: larger first when the shared `x_c` is in the
//! upper half of the support (`x_c >= 0.5 * m`), smaller first otherwise.
//!
//! To keep the result a total preorder for any number of groups, values are
//! grouped into bands anchored at the largest member: a band holds every value
//! within `eps` of its anchor, so two members of one band are never more than
//! `eps` apart.

use std::fmt;

use crate::centroid::{centroid, sum_of_squares};
use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::scale::GradeDistribution;

pub const DEFAULT_EPS: f64 = 1e-9;

/// Which clause of the criterion separated two neighbouring groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    XcDominates,
    TieHighHalfYcHigher,
    TieLowHalfYcLower,
    FullTie,
}

impl Rule {
    /// Stable identifier used in JSON reports.
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::XcDominates => "XcDominates",
            Rule::TieHighHalfYcHigher => "TieHighHalf_YcHigher",
            Rule::TieLowHalfYcLower => "TieLowHalf_YcLower",
            Rule::FullTie => "FullTie",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Rule::XcDominates => "greater x_c wins",
            Rule::TieHighHalfYcHigher => "tie on x_c; high half; greater y_c wins",
            Rule::TieLowHalfYcLower => "tie on x_c; low half; smaller y_c wins",
            Rule::FullTie => "tie on x_c and y_c",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    /// Better (or tied) group first.
    pub pair: (String, String),
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    /// Group ids by rank, best first; ids sharing a rank are tied.
    pub ranking: Vec<Vec<String>>,
    /// One entry per neighbouring pair in the flattened ranking.
    pub decisions: Vec<Decision>,
}

impl Verdict {
    /// 1-based rank of `id`.
    pub fn rank_of(&self, id: &str) -> Option<usize> {
        self.ranking
            .iter()
            .position(|tier| tier.iter().any(|g| g == id))
            .map(|p| p + 1)
    }
}

struct Scored<'a> {
    id: &'a str,
    input_order: usize,
    x_c: f64,
    sum_sq: f64,
}

pub fn compare<S: AsRef<str>>(
    groups: &[(S, GradeDistribution)],
    model: &ModelSpec,
    eps: f64,
) -> Result<Verdict> {
    if groups.len() < 2 {
        return Err(Error::TooFewGroups(groups.len()));
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidTolerance(eps));
    }
    let mut scored = groups
        .iter()
        .enumerate()
        .map(|(input_order, (id, dist))| {
            Ok(Scored {
                id: id.as_ref(),
                input_order,
                x_c: centroid(dist, model)?.x_c,
                sum_sq: sum_of_squares(dist.frequencies()),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    scored.sort_by(|a, b| {
        b.x_c
            .total_cmp(&a.x_c)
            .then(a.input_order.cmp(&b.input_order))
    });

    let by_x: Vec<&Scored> = scored.iter().collect();
    // (members of one rank, x band index, band is in the upper half)
    let mut tiers: Vec<(Vec<&Scored>, usize, bool)> = Vec::new();
    for (band_index, mut band) in bands(&by_x, eps, |s| s.x_c).into_iter().enumerate() {
        let high = band[0].x_c >= model.threshold() - eps;
        band.sort_by(|a, b| {
            let by_sq = if high {
                b.sum_sq.total_cmp(&a.sum_sq)
            } else {
                a.sum_sq.total_cmp(&b.sum_sq)
            };
            by_sq.then(a.input_order.cmp(&b.input_order))
        });
        for tier in bands(&band, eps, |s| s.sum_sq) {
            tiers.push((tier, band_index, high));
        }
    }

    let ranking: Vec<Vec<String>> = tiers
        .iter()
        .map(|(tier, _, _)| tier.iter().map(|s| s.id.to_string()).collect())
        .collect();

    let mut flat: Vec<(&str, usize, usize, bool)> = Vec::new();
    for (rank, (tier, band, high)) in tiers.iter().enumerate() {
        for s in tier {
            flat.push((s.id, rank, *band, *high));
        }
    }
    let decisions = flat
        .windows(2)
        .map(|w| {
            let (a, rank_a, band_a, high) = w[0];
            let (b, rank_b, band_b, _) = w[1];
            let rule = if band_a != band_b {
                Rule::XcDominates
            } else if rank_a == rank_b {
                Rule::FullTie
            } else if high {
                Rule::TieHighHalfYcHigher
            } else {
                Rule::TieLowHalfYcLower
            };
            Decision {
                pair: (a.to_string(), b.to_string()),
                rule,
            }
        })
        .collect();

    Ok(Verdict { ranking, decisions })
}

/// Splits an already sorted slice into runs whose values all lie within
/// `eps` of the run's first element.
fn bands<'a, T, F>(sorted: &[&'a T], eps: f64, key: F) -> Vec<Vec<&'a T>>
where
    F: Fn(&T) -> f64,
{
    let mut out: Vec<Vec<&'a T>> = Vec::new();
    for item in sorted {
        match out.last_mut() {
            Some(run) if (key(run[0]) - key(item)).abs() <= eps => run.push(item),
            _ => out.push(vec![item]),
        }
    }
    out
}
