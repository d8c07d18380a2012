//! Fuzzy centroid assessment models.
//!
//! A group's grade distribution is drawn as a bar graph over the grade scale
//! (plain rectangles, overlapping rectangles, triangles or trapezoids) and
//! summarised by the centre of gravity `(x_c, y_c)` of that graph. Every
//! supported shape reduces to
//!
//! ```text
//! x_c = alpha * sum(i * y_i) - beta
//! y_c = gamma * sum(y_i^2)
//! ```
//!
//! so groups can be ranked by `x_c` first and, on ties, by `y_c` in a
//! direction that depends on which half of the support the tie sits in.
//!
//! The [`oracle`] module recomputes centroids from the literal geometry and is
//! kept independent of the closed forms in [`centroid`].

pub mod centroid;
pub mod compare;
pub mod dataset;
pub mod error;
pub mod model;
pub mod oracle;
pub mod report;
pub mod scale;

pub use centroid::{
    centroid, extremes, gpa, gpa_xc_identity, sum_squares_lower_bound, Centroid, Extremes,
};
pub use compare::{compare, Rule, Verdict, DEFAULT_EPS};
pub use dataset::{distribution_for, normalize, parse_dataset, DatasetFormat, GradeDataset};
pub use error::{Error, Location, Result};
pub use model::{make_model, ModelSpec, ShapeKind};
pub use report::{render_report, GroupSummary, ReportDocument, ReportFormat};
pub use scale::{GradeDistribution, GradeScale};
