//! Geometric recomputation of centroids from the bar graph itself.
//!
//! Nothing here uses the `alpha`/`beta`/`gamma` coefficients: rectangles are
//! placed from the overlap fraction alone and their centroid is found either
//! by integrating over the plane or by treating each rectangle as a point
//! mass at its own centre.

use crate::centroid::Centroid;
use crate::error::{Error, Result};
use crate::model::{ModelSpec, ShapeKind};
use crate::scale::GradeDistribution;

/// Default grid step for [`integral_centroid`].
pub const DEFAULT_RESOLUTION: f64 = 1e-3;

const OVERLAP_SLACK: f64 = 1e-12;

/// Axis-aligned rectangle standing on the x-axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectangleRegion {
    x_lo: f64,
    x_hi: f64,
    height: f64,
}

impl RectangleRegion {
    /// Panics unless `x_lo < x_hi` and `height >= 0`.
    pub fn new(x_lo: f64, x_hi: f64, height: f64) -> Self {
        assert!(x_lo < x_hi, "empty base [{x_lo}, {x_hi}]");
        assert!(height >= 0.0, "negative height {height}");
        Self { x_lo, x_hi, height }
    }

    pub fn x_lo(&self) -> f64 {
        self.x_lo
    }

    pub fn x_hi(&self) -> f64 {
        self.x_hi
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn area(&self) -> f64 {
        (self.x_hi - self.x_lo) * self.height
    }

    fn contains_x(&self, x: f64) -> bool {
        self.x_lo <= x && x < self.x_hi
    }
}

/// Unit-base rectangles of height `y_i`, rectangle `i` starting at
/// `(i - 1) * (1 - f)`. With `f = 0` they tile `[0, n]`.
pub fn layout(model: &ModelSpec, dist: &GradeDistribution) -> Result<Vec<RectangleRegion>> {
    match model.shape() {
        ShapeKind::RectangularClassic | ShapeKind::GeneralizedRectangular => {}
        other => return Err(Error::UnsupportedShape(other.name().to_string())),
    }
    if dist.n() != model.n() {
        return Err(Error::ScaleMismatch {
            expected: model.n(),
            actual: dist.n(),
        });
    }
    let step = 1.0 - model.overlap();
    Ok(dist
        .frequencies()
        .iter()
        .enumerate()
        .map(|(i, &height)| {
            let x_lo = i as f64 * step;
            RectangleRegion::new(x_lo, x_lo + 1.0, height)
        })
        .collect())
}

/// Midpoint-rule approximation of `(∬x / ∬1, ∬y / ∬1)` over the union of
/// disjoint regions, on a square grid of side `resolution`.
///
/// A grid cell is counted when its centre lies inside the graph. Within one
/// column the inside cells are a prefix `0..k` of the rows, so each column
/// is summed directly instead of cell by cell.
pub fn integral_centroid(regions: &[RectangleRegion], resolution: f64) -> Result<Centroid> {
    if !(resolution.is_finite() && resolution > 0.0) {
        return Err(Error::InvalidResolution(resolution));
    }
    if regions.iter().map(RectangleRegion::area).sum::<f64>() <= 0.0 {
        return Err(Error::EmptyGraph);
    }
    let mut sorted = regions.to_vec();
    sorted.sort_by(|a, b| a.x_lo.total_cmp(&b.x_lo));
    if sorted
        .windows(2)
        .any(|w| w[0].x_hi > w[1].x_lo + OVERLAP_SLACK)
    {
        return Err(Error::OverlappingRegions);
    }

    let x_start = sorted[0].x_lo;
    let x_end = sorted.iter().map(|r| r.x_hi).fold(f64::MIN, f64::max);
    let columns = ((x_end - x_start) / resolution).ceil() as usize;
    let cell = resolution * resolution;

    let mut mass = 0.0;
    let mut moment_x = 0.0;
    let mut moment_y = 0.0;
    let mut cursor = 0;
    for c in 0..columns {
        let x = x_start + (c as f64 + 0.5) * resolution;
        while cursor < sorted.len() && sorted[cursor].x_hi <= x {
            cursor += 1;
        }
        let Some(region) = sorted.get(cursor).filter(|r| r.contains_x(x)) else {
            continue;
        };
        let rows = rows_below(region.height, resolution);
        if rows == 0 {
            continue;
        }
        let k = rows as f64;
        // sum over rows j < k of the cell-centre height (j + 0.5) * resolution
        let row_heights = resolution * k * k / 2.0;
        mass += k * cell;
        moment_x += x * k * cell;
        moment_y += row_heights * cell;
    }
    if mass <= 0.0 {
        return Err(Error::EmptyGraph);
    }
    Ok(Centroid::new(moment_x / mass, moment_y / mass))
}

/// Number of rows `j >= 0` whose cell centre `(j + 0.5) * step` is below `height`.
fn rows_below(height: f64, step: f64) -> u64 {
    let centre = |j: u64| (j as f64 + 0.5) * step;
    let mut k = (height / step - 0.5).ceil().max(0.0) as u64;
    while centre(k) < height {
        k += 1;
    }
    while k > 0 && centre(k - 1) >= height {
        k -= 1;
    }
    k
}

/// Centroid of the system of rectangle centres weighted by area. Overlapping
/// parts are counted once per rectangle.
pub fn particle_centroid(regions: &[RectangleRegion]) -> Result<Centroid> {
    let total: f64 = regions.iter().map(RectangleRegion::area).sum();
    if total <= 0.0 {
        return Err(Error::EmptyGraph);
    }
    let (sx, sy) = regions.iter().fold((0.0, 0.0), |(sx, sy), r| {
        let area = r.area();
        (
            sx + area * 0.5 * (r.x_lo + r.x_hi),
            sy + area * 0.5 * r.height,
        )
    });
    Ok(Centroid::new(sx / total, sy / total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::make_model;
    use crate::scale::GradeScale;

    fn dist(y: &[f64]) -> GradeDistribution {
        let labels: Vec<String> = (1..=y.len()).map(|i| format!("g{i}")).collect();
        GradeDistribution::new(GradeScale::new(labels).unwrap(), y.to_vec()).unwrap()
    }

    fn spans(regions: &[RectangleRegion]) -> Vec<(f64, f64)> {
        regions.iter().map(|r| (r.x_lo(), r.x_hi())).collect()
    }

    #[test]
    fn grm_layout_steps_by_one_minus_f() {
        let grm = make_model(ShapeKind::GeneralizedRectangular, 5, 0.3).unwrap();
        let regions = layout(&grm, &dist(&[0.2; 5])).unwrap();
        assert_eq!(regions[0].x_lo(), 0.0);
        assert_eq!(regions[0].x_hi(), 1.0);
        assert!((regions[1].x_lo() - 0.7).abs() < 1e-15);
        assert!((regions[1].x_hi() - 1.7).abs() < 1e-15);
        assert!((regions[4].x_lo() - 2.8).abs() < 1e-15);
        assert!((regions[4].x_hi() - grm.span()).abs() < 1e-15);
    }

    #[test]
    fn classic_layout_tiles() {
        let classic = make_model(ShapeKind::RectangularClassic, 5, 0.0).unwrap();
        let regions = layout(&classic, &dist(&[0.2; 5])).unwrap();
        assert_eq!(
            spans(&regions),
            vec![(0.0, 1.0), (1.0, 2.0), (2.0, 3.0), (3.0, 4.0), (4.0, 5.0)]
        );
    }

    #[test]
    fn no_layout_for_triangles_or_trapezoids() {
        for shape in [ShapeKind::Triangular, ShapeKind::Trapezoidal] {
            let model = make_model(shape, 5, 0.3).unwrap();
            assert!(matches!(
                layout(&model, &dist(&[0.2; 5])),
                Err(Error::UnsupportedShape(_))
            ));
        }
    }

    #[test]
    fn unit_square() {
        let c = integral_centroid(&[RectangleRegion::new(0.0, 1.0, 1.0)], 1e-3).unwrap();
        assert!((c.x_c - 0.5).abs() < 1e-9 && (c.y_c - 0.5).abs() < 1e-9);
    }

    #[test]
    fn integral_classic_uniform_and_ideal() {
        let classic = make_model(ShapeKind::RectangularClassic, 5, 0.0).unwrap();
        let c = integral_centroid(&layout(&classic, &dist(&[0.2; 5])).unwrap(), 1e-3).unwrap();
        assert!(
            (c.x_c - 2.5).abs() <= 1e-4 && (c.y_c - 0.1).abs() <= 1e-4,
            "{c:?}"
        );
        let ideal = dist(&[0.0, 0.0, 0.0, 0.0, 1.0]);
        let c = integral_centroid(&layout(&classic, &ideal).unwrap(), 1e-3).unwrap();
        assert!(
            (c.x_c - 4.5).abs() <= 1e-4 && (c.y_c - 0.5).abs() <= 1e-4,
            "{c:?}"
        );
    }

    #[test]
    fn integral_matches_cell_by_cell_count() {
        // Brute force over every grid cell at a coarse step.
        let regions = [
            RectangleRegion::new(0.0, 1.0, 0.37),
            RectangleRegion::new(1.0, 2.0, 0.05),
            RectangleRegion::new(2.0, 3.0, 0.58),
        ];
        let h = 0.01;
        let (mut m, mut mx, mut my) = (0.0, 0.0, 0.0);
        for i in 0..300 {
            let x = (i as f64 + 0.5) * h;
            let top = regions.iter().find(|r| r.contains_x(x)).unwrap().height();
            for j in 0..100 {
                let y = (j as f64 + 0.5) * h;
                if y < top {
                    m += h * h;
                    mx += x * h * h;
                    my += y * h * h;
                }
            }
        }
        let c = integral_centroid(&regions, h).unwrap();
        assert!((c.x_c - mx / m).abs() < 1e-12);
        assert!((c.y_c - my / m).abs() < 1e-12);
    }

    #[test]
    fn integral_rejects_overlap_and_empty() {
        let grm = make_model(ShapeKind::GeneralizedRectangular, 5, 0.3).unwrap();
        let regions = layout(&grm, &dist(&[0.2; 5])).unwrap();
        assert_eq!(
            integral_centroid(&regions, 1e-3),
            Err(Error::OverlappingRegions)
        );
        let flat = [RectangleRegion::new(0.0, 1.0, 0.0)];
        assert_eq!(integral_centroid(&flat, 1e-3), Err(Error::EmptyGraph));
        assert_eq!(particle_centroid(&flat), Err(Error::EmptyGraph));
        let square = [RectangleRegion::new(0.0, 1.0, 1.0)];
        assert!(matches!(
            integral_centroid(&square, 0.0),
            Err(Error::InvalidResolution(_))
        ));
    }

    #[test]
    fn particle_grm_points() {
        let grm = make_model(ShapeKind::GeneralizedRectangular, 5, 0.3).unwrap();
        let c = particle_centroid(&layout(&grm, &dist(&[0.2; 5])).unwrap()).unwrap();
        assert!((c.x_c - 1.9).abs() < 1e-12 && (c.y_c - 0.1).abs() < 1e-12);
        let worst = dist(&[1.0, 0.0, 0.0, 0.0, 0.0]);
        let c = particle_centroid(&layout(&grm, &worst).unwrap()).unwrap();
        assert!((c.x_c - 0.5).abs() < 1e-12 && (c.y_c - 0.5).abs() < 1e-12);
    }

    #[test]
    fn two_overlapping_squares() {
        let squares = [
            RectangleRegion::new(0.0, 1.0, 1.0),
            RectangleRegion::new(0.7, 1.7, 1.0),
        ];
        let c = particle_centroid(&squares).unwrap();
        assert!((c.x_c - 0.85).abs() < 1e-15);
        assert!((c.y_c - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rows_below_counts_centres() {
        assert_eq!(rows_below(0.2, 1e-3), 200);
        assert_eq!(rows_below(0.0, 1e-3), 0);
        assert_eq!(rows_below(0.0004, 1e-3), 0);
        assert_eq!(rows_below(0.0006, 1e-3), 1);
        assert_eq!(rows_below(1.0, 1e-3), 1000);
    }
}
