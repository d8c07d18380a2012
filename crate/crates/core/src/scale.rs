//! Grade scales and normalized grade distributions.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Tolerance on `sum(y) == 1` accepted by [`GradeDistribution::new`].
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Ordered grade labels, worst first. Index `i` (1-based) of a label is the
/// index used in every model formula, so `F,D,C,B,A` puts `F` at 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradeScale {
    labels: Vec<String>,
}

impl GradeScale {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() < 2 {
            return Err(Error::InvalidScaleSize(labels.len()));
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if label.is_empty() {
                return Err(Error::InvalidScale("empty grade label".into()));
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidScale(format!(
                    "duplicate grade label `{label}`"
                )));
            }
        }
        Ok(Self { labels })
    }

    /// Parses a comma separated, worst-first label list such as `F,D,C,B,A`.
    pub fn parse(spec: &str) -> Result<Self> {
        Self::new(spec.split(',').map(str::trim))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Zero-based position of `label`.
    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

impl fmt::Display for GradeScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.labels.join(","))
    }
}

/// Frequencies `y_1..y_n` over a scale, non-negative and summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct GradeDistribution {
    scale: GradeScale,
    y: Vec<f64>,
}

impl GradeDistribution {
    /// Wraps already-normalized frequencies.
    pub fn new(scale: GradeScale, y: Vec<f64>) -> Result<Self> {
        check_len(&scale, &y)?;
        if let Some(bad) = y.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "frequency {bad} is not a finite non-negative number"
            )));
        }
        let total: f64 = y.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidDistribution(format!(
                "frequencies sum to {total}, expected 1"
            )));
        }
        Ok(Self { scale, y })
    }

    /// Divides non-negative weights by their total. All-zero weights are an
    /// error rather than a uniform distribution.
    pub fn from_weights(scale: GradeScale, weights: &[f64]) -> Result<Self> {
        check_len(&scale, weights)?;
        if let Some(bad) = weights.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::Normalization(format!(
                "weight {bad} is not a finite non-negative number"
            )));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::Normalization("total mass is zero".into()));
        }
        let y = weights.iter().map(|w| w / total).collect();
        Self::new(scale, y)
    }

    pub fn uniform(scale: GradeScale) -> Self {
        let n = scale.len();
        let y = vec![1.0 / n as f64; n];
        Self { scale, y }
    }

    /// All mass on the grade at zero-based `index`.
    pub fn point_mass(scale: GradeScale, index: usize) -> Result<Self> {
        if index >= scale.len() {
            return Err(Error::InvalidDistribution(format!(
                "grade index {index} outside a scale of {} grades",
                scale.len()
            )));
        }
        let mut y = vec![0.0; scale.len()];
        y[index] = 1.0;
        Ok(Self { scale, y })
    }

    pub fn scale(&self) -> &GradeScale {
        &self.scale
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.y
    }
}

fn check_len(scale: &GradeScale, values: &[f64]) -> Result<()> {
    if values.len() != scale.len() {
        return Err(Error::ScaleMismatch {
            expected: scale.len(),
            actual: values.len(),
        });
    }
    Ok(())
}
