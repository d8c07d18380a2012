//! Model shapes and their coefficients.
//!
//! With unit-base figures laid out with a shared fraction `f` of each base,
//! figure `i` is centred at `(1 - f) * i + f - 0.5`, which gives
//! `alpha = 1 - f` and `beta = 0.5 - f`. The support spans
//! `m = n - f * (n - 1)` and `0.5 * m` is the comparison threshold.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default shared fraction of adjacent bases for the overlapping shapes.
pub const DEFAULT_OVERLAP: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    /// Disjoint unit rectangles.
    RectangularClassic,
    /// Unit rectangles whose neighbours share part of their bases.
    GeneralizedRectangular,
    Triangular,
    Trapezoidal,
}

impl ShapeKind {
    pub const ALL: [ShapeKind; 4] = [
        ShapeKind::RectangularClassic,
        ShapeKind::GeneralizedRectangular,
        ShapeKind::Triangular,
        ShapeKind::Trapezoidal,
    ];

    /// Height coefficient of `y_c = gamma * sum(y_i^2)`.
    pub fn gamma(self) -> f64 {
        match self {
            ShapeKind::RectangularClassic | ShapeKind::GeneralizedRectangular => 0.5,
            ShapeKind::Triangular => 0.2,
            ShapeKind::Trapezoidal => 3.0 / 7.0,
        }
    }

    pub fn allows_overlap(self) -> bool {
        !matches!(self, ShapeKind::RectangularClassic)
    }

    /// Short name used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            ShapeKind::RectangularClassic => "classic",
            ShapeKind::GeneralizedRectangular => "grm",
            ShapeKind::Triangular => "triangular",
            ShapeKind::Trapezoidal => "trapezoidal",
        }
    }
}

impl fmt::Display for ShapeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ShapeKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "classic" | "rectangular" => Ok(ShapeKind::RectangularClassic),
            "grm" | "generalized" => Ok(ShapeKind::GeneralizedRectangular),
            "triangular" | "tm" => Ok(ShapeKind::Triangular),
            "trapezoidal" | "trm" => Ok(ShapeKind::Trapezoidal),
            other => Err(format!(
                "unknown model `{other}` (expected classic, grm, triangular or trapezoidal)"
            )),
        }
    }
}

/// A shape on a scale of `n` grades with overlap fraction `f`. Fields are
/// private so the derived coefficients can never drift from `shape`, `n`
/// and `f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    shape: ShapeKind,
    n: usize,
    f: f64,
    alpha: f64,
    beta: f64,
    gamma: f64,
    m: f64,
}

/// Builds a model, deriving `alpha`, `beta`, `gamma` and `m`.
pub fn make_model(shape: ShapeKind, n: usize, f: f64) -> Result<ModelSpec> {
    if n < 2 {
        return Err(Error::InvalidScaleSize(n));
    }
    if !(0.0..0.5).contains(&f) {
        return Err(Error::InvalidOverlap(f));
    }
    if !shape.allows_overlap() && f != 0.0 {
        return Err(Error::OverlapNotAllowed(f));
    }
    Ok(ModelSpec {
        shape,
        n,
        f,
        alpha: 1.0 - f,
        beta: 0.5 - f,
        gamma: shape.gamma(),
        m: n as f64 - f * (n - 1) as f64,
    })
}

impl ModelSpec {
    /// Same as [`make_model`] with the overlap given in percent.
    pub fn from_percent(shape: ShapeKind, n: usize, k: f64) -> Result<Self> {
        make_model(shape, n, k / 100.0)
    }

    /// Default overlap for the shape: none for classic, 30% otherwise.
    pub fn with_default_overlap(shape: ShapeKind, n: usize) -> Result<Self> {
        let f = if shape.allows_overlap() {
            DEFAULT_OVERLAP
        } else {
            0.0
        };
        make_model(shape, n, f)
    }

    pub fn shape(&self) -> ShapeKind {
        self.shape
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn overlap(&self) -> f64 {
        self.f
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Span of the support on the x-axis.
    pub fn span(&self) -> f64 {
        self.m
    }

    /// `0.5 * m`; ties on `x_c` at or above it prefer the larger `y_c`.
    pub fn threshold(&self) -> f64 {
        0.5 * self.m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grm_default_coefficients() {
        let model = make_model(ShapeKind::GeneralizedRectangular, 5, 0.3).unwrap();
        assert_eq!(model.alpha(), 0.7);
        assert_eq!(model.beta(), 0.2);
        assert_eq!(model.gamma(), 0.5);
        assert_eq!(model.span(), 3.8);
        assert_eq!(model.threshold(), 1.9);
    }

    #[test]
    fn classic_coefficients() {
        let model = make_model(ShapeKind::RectangularClassic, 5, 0.0).unwrap();
        assert_eq!(
            (model.alpha(), model.beta(), model.gamma(), model.span()),
            (1.0, 0.5, 0.5, 5.0)
        );
    }

    #[test]
    fn triangular_and_trapezoidal_gamma() {
        let tm = make_model(ShapeKind::Triangular, 5, 0.3).unwrap();
        assert_eq!(
            (tm.alpha(), tm.beta(), tm.gamma(), tm.span()),
            (0.7, 0.2, 0.2, 3.8)
        );
        let trm = make_model(ShapeKind::Trapezoidal, 5, 0.3).unwrap();
        assert_eq!(trm.gamma(), 3.0 / 7.0);
    }

    #[test]
    fn overlap_bounds() {
        let shape = ShapeKind::GeneralizedRectangular;
        assert_eq!(make_model(shape, 5, 0.55), Err(Error::InvalidOverlap(0.55)));
        assert_eq!(make_model(shape, 5, 0.5), Err(Error::InvalidOverlap(0.5)));
        assert_eq!(make_model(shape, 5, -0.1), Err(Error::InvalidOverlap(-0.1)));
        assert!(matches!(
            make_model(shape, 5, f64::NAN),
            Err(Error::InvalidOverlap(_))
        ));
        assert!(make_model(shape, 5, 0.49).is_ok());
        assert!(make_model(shape, 5, 0.0).is_ok());
    }

    #[test]
    fn classic_forbids_overlap() {
        assert_eq!(
            make_model(ShapeKind::RectangularClassic, 5, 0.1),
            Err(Error::OverlapNotAllowed(0.1))
        );
    }

    #[test]
    fn scale_size() {
        assert_eq!(
            make_model(ShapeKind::Triangular, 1, 0.3),
            Err(Error::InvalidScaleSize(1))
        );
    }

    #[test]
    fn default_overlap_depends_on_shape() {
        let classic = ModelSpec::with_default_overlap(ShapeKind::RectangularClassic, 5).unwrap();
        assert_eq!(classic.overlap(), 0.0);
        let grm = ModelSpec::with_default_overlap(ShapeKind::GeneralizedRectangular, 5).unwrap();
        assert_eq!(grm.overlap(), 0.3);
    }

    #[test]
    fn shape_names_round_trip() {
        for shape in ShapeKind::ALL {
            assert_eq!(shape.name().parse::<ShapeKind>().unwrap(), shape);
        }
        assert!("hexagonal".parse::<ShapeKind>().is_err());
    }
}
