//! Closed-form centroids, GPA and the extreme points of a model.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelSpec;
use crate::scale::{GradeDistribution, GradeScale, NORMALIZATION_TOL};

/// Centre of gravity of a membership graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Centroid {
    pub x_c: f64,
    pub y_c: f64,
}

impl Centroid {
    pub fn new(x_c: f64, y_c: f64) -> Self {
        Self { x_c, y_c }
    }

    /// Largest absolute coordinate difference.
    pub fn max_deviation(&self, other: &Centroid) -> f64 {
        (self.x_c - other.x_c)
            .abs()
            .max((self.y_c - other.y_c).abs())
    }
}

/// `x_c = alpha * sum(i * y_i) - beta`, `y_c = gamma * sum(y_i^2)`.
///
/// `sum(i * y_i)` is evaluated as `1 + gpa`, which is the same quantity for a
/// normalized distribution and keeps [`gpa_xc_identity`] bit-identical.
pub fn centroid(dist: &GradeDistribution, model: &ModelSpec) -> Result<Centroid> {
    check_scale(dist, model)?;
    Ok(Centroid {
        x_c: position(gpa(dist), model),
        y_c: model.gamma() * sum_of_squares(dist.frequencies()),
    })
}

/// Grade point average `sum((i - 1) * y_i)` with the worst grade worth 0.
pub fn gpa(dist: &GradeDistribution) -> f64 {
    dist.frequencies()
        .iter()
        .enumerate()
        .map(|(i, y)| i as f64 * y)
        .sum()
}

/// `x_c` computed from the GPA: `alpha * (1 + gpa) - beta`.
pub fn gpa_xc_identity(dist: &GradeDistribution, model: &ModelSpec) -> Result<f64> {
    check_scale(dist, model)?;
    Ok(position(gpa(dist), model))
}

fn position(gpa: f64, model: &ModelSpec) -> f64 {
    model.alpha() * (1.0 + gpa) - model.beta()
}

pub(crate) fn sum_of_squares(y: &[f64]) -> f64 {
    y.iter().map(|v| v * v).sum()
}

/// `sum(y_i^2)` and whether it sits at its lower bound `1/n`, which happens
/// exactly for the uniform distribution.
pub fn sum_squares_lower_bound(dist: &GradeDistribution) -> (f64, bool) {
    let value = sum_of_squares(dist.frequencies());
    let bound = 1.0 / dist.n() as f64;
    (value, (value - bound).abs() <= NORMALIZATION_TOL)
}

/// Anchor points of a model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremes {
    /// Uniform distribution: lowest possible `y_c`, at `x_c = m / 2`.
    pub min: Centroid,
    /// Everyone on the best grade.
    pub ideal: Centroid,
    /// Everyone on the worst grade.
    pub worst: Centroid,
}

pub fn extremes(model: &ModelSpec) -> Extremes {
    let n = model.n();
    let scale = GradeScale::new((1..=n).map(|i| format!("g{i}")))
        .expect("a valid model has at least two grades");
    let at = |dist: GradeDistribution| centroid(&dist, model).expect("scale built from model");
    Extremes {
        min: at(GradeDistribution::uniform(scale.clone())),
        ideal: at(GradeDistribution::point_mass(scale.clone(), n - 1).expect("in range")),
        worst: at(GradeDistribution::point_mass(scale, 0).expect("in range")),
    }
}

fn check_scale(dist: &GradeDistribution, model: &ModelSpec) -> Result<()> {
    if dist.n() != model.n() {
        return Err(Error::ScaleMismatch {
            expected: model.n(),
            actual: dist.n(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{make_model, ShapeKind};

    const TOL: f64 = 1e-12;

    fn scale() -> GradeScale {
        GradeScale::parse("F,D,C,B,A").unwrap()
    }

    fn dist(y: &[f64]) -> GradeDistribution {
        GradeDistribution::new(scale(), y.to_vec()).unwrap()
    }

    fn grm() -> ModelSpec {
        make_model(ShapeKind::GeneralizedRectangular, 5, 0.3).unwrap()
    }

    fn classic() -> ModelSpec {
        make_model(ShapeKind::RectangularClassic, 5, 0.0).unwrap()
    }

    fn assert_close(c: Centroid, x: f64, y: f64) {
        assert!((c.x_c - x).abs() <= TOL, "x_c {} != {}", c.x_c, x);
        assert!((c.y_c - y).abs() <= TOL, "y_c {} != {}", c.y_c, y);
    }

    #[test]
    fn grm_anchor_points() {
        assert_close(centroid(&dist(&[0.2; 5]), &grm()).unwrap(), 1.9, 0.1);
        assert_close(
            centroid(&dist(&[0.0, 0.0, 0.0, 0.0, 1.0]), &grm()).unwrap(),
            3.3,
            0.5,
        );
        assert_close(
            centroid(&dist(&[1.0, 0.0, 0.0, 0.0, 0.0]), &grm()).unwrap(),
            0.5,
            0.5,
        );
    }

    #[test]
    fn classic_anchor_points() {
        assert_close(centroid(&dist(&[0.2; 5]), &classic()).unwrap(), 2.5, 0.1);
        assert_close(
            centroid(&dist(&[0.0, 0.0, 0.0, 0.0, 1.0]), &classic()).unwrap(),
            4.5,
            0.5,
        );
    }

    #[test]
    fn two_classes_class_one() {
        // sum(i * y_i) = 14/3, so x_c = 0.7 * 14/3 - 0.2 = 46/15
        let d = dist(&[0.0, 0.0, 1.0 / 6.0, 0.0, 5.0 / 6.0]);
        assert_close(centroid(&d, &grm()).unwrap(), 46.0 / 15.0, 13.0 / 36.0);
        assert!((gpa(&d) - 220.0 / 60.0).abs() <= TOL);
        assert!((gpa_xc_identity(&d, &grm()).unwrap() - 46.0 / 15.0).abs() <= TOL);
    }

    #[test]
    fn gpa_of_point_masses() {
        assert_eq!(gpa(&dist(&[1.0, 0.0, 0.0, 0.0, 0.0])), 0.0);
        assert_eq!(gpa(&dist(&[0.0, 0.0, 0.0, 0.0, 1.0])), 4.0);
    }

    #[test]
    fn identity_path_matches_centroid() {
        for y in [
            [0.2; 5],
            [0.0, 0.0, 0.0, 0.0, 1.0],
            [0.1, 0.2, 0.3, 0.25, 0.15],
        ] {
            let d = dist(&y);
            let x = gpa_xc_identity(&d, &grm()).unwrap();
            assert_eq!(x.to_bits(), centroid(&d, &grm()).unwrap().x_c.to_bits());
        }
        let ideal = gpa_xc_identity(&dist(&[0.0, 0.0, 0.0, 0.0, 1.0]), &grm()).unwrap();
        assert!((ideal - 3.3).abs() <= TOL);
        let uniform = gpa_xc_identity(&dist(&[0.2; 5]), &grm()).unwrap();
        assert!((uniform - 1.9).abs() <= TOL);
    }

    #[test]
    fn extremes_per_shape() {
        let e = extremes(&grm());
        assert_close(e.min, 1.9, 0.1);
        assert_close(e.ideal, 3.3, 0.5);
        assert_close(e.worst, 0.5, 0.5);

        let e = extremes(&classic());
        assert_close(e.min, 2.5, 0.1);
        assert_close(e.ideal, 4.5, 0.5);
        assert_close(e.worst, 0.5, 0.5);

        let e = extremes(&make_model(ShapeKind::Triangular, 5, 0.3).unwrap());
        assert_close(e.min, 1.9, 0.04);
        assert_close(e.ideal, 3.3, 0.2);
        assert_close(e.worst, 0.5, 0.2);
    }

    #[test]
    fn lower_bound_diagnostic() {
        assert!(sum_squares_lower_bound(&dist(&[0.2; 5])).1);
        assert!((sum_squares_lower_bound(&dist(&[0.2; 5])).0 - 0.2).abs() <= TOL);
        assert_eq!(
            sum_squares_lower_bound(&dist(&[1.0, 0.0, 0.0, 0.0, 0.0])),
            (1.0, false)
        );
        let (v, tight) = sum_squares_lower_bound(&dist(&[0.0, 0.0, 0.0, 1.0 / 3.0, 2.0 / 3.0]));
        assert!((v - 5.0 / 9.0).abs() <= TOL);
        assert!(!tight);
    }

    #[test]
    fn scale_mismatch() {
        let short = GradeDistribution::uniform(GradeScale::parse("lo,hi").unwrap());
        assert!(matches!(
            centroid(&short, &grm()),
            Err(Error::ScaleMismatch { .. })
        ));
        assert!(matches!(
            gpa_xc_identity(&short, &grm()),
            Err(Error::ScaleMismatch { .. })
        ));
    }
}
