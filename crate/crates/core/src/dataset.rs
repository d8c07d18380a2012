//! Raw grade counts, their normalization, and the CSV/JSON dataset formats.
//!
//! CSV:
//!
//! ```text
//! #scale:F,D,C,B,A
//! group,grade,count
//! ClassI,C,10
//! ClassI,A,50
//! ClassI,B|A,5
//! ```
//!
//! A grade cell is either a label or a pair `X|Y` of adjacent labels for
//! scores that sit between two grades. Lines starting with `#` are comments;
//! a `#scale:` pragma on the first line declares the scale worst first.
//!
//! JSON:
//!
//! ```text
//! { "scale": ["F", "D", "C", "B", "A"],
//!   "groups": [ { "id": "ClassI", "counts": { "C": 10, "A": 50 },
//!                 "boundaries": [ { "between": ["B", "A"], "count": 5 } ] } ] }
//! ```

use std::collections::{BTreeMap, HashMap, HashSet};
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Location, Result};
use crate::model::{ModelSpec, ShapeKind};
use crate::scale::{GradeDistribution, GradeScale};

const SCALE_PRAGMA: &str = "#scale:";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetFormat {
    Csv,
    Json,
}

impl FromStr for DatasetFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(DatasetFormat::Csv),
            "json" => Ok(DatasetFormat::Json),
            other => Err(format!("unknown dataset format `{other}`")),
        }
    }
}

/// Counts for one group. `boundary_counts[j]` holds individuals between
/// grades `j` and `j + 1` (zero-based), who are placed in both.
#[derive(Debug, Clone, PartialEq)]
pub struct GradeDataset {
    pub group_id: String,
    pub scale: GradeScale,
    pub counts: Vec<f64>,
    pub boundary_counts: Vec<f64>,
}

impl GradeDataset {
    pub fn new(
        group_id: impl Into<String>,
        scale: GradeScale,
        counts: Vec<f64>,
        boundary_counts: Vec<f64>,
    ) -> Result<Self> {
        let group_id = group_id.into();
        let n = scale.len();
        if counts.len() != n {
            return Err(Error::ScaleMismatch {
                expected: n,
                actual: counts.len(),
            });
        }
        if boundary_counts.len() != n - 1 {
            return Err(Error::ScaleMismatch {
                expected: n - 1,
                actual: boundary_counts.len(),
            });
        }
        if let Some(&count) = counts
            .iter()
            .chain(&boundary_counts)
            .find(|c| !c.is_finite() || **c < 0.0)
        {
            return Err(Error::NegativeCount {
                at: Location::Group(group_id),
                count,
            });
        }
        Ok(Self {
            group_id,
            scale,
            counts,
            boundary_counts,
        })
    }

    /// Each boundary individual is counted once in each neighbouring grade.
    pub fn total_mass(&self) -> f64 {
        self.counts.iter().sum::<f64>() + 2.0 * self.boundary_counts.iter().sum::<f64>()
    }

    pub fn has_boundaries(&self) -> bool {
        self.boundary_counts.iter().any(|&b| b > 0.0)
    }
}

/// `y_i = (counts_i + boundary_{i-1} + boundary_i) / total_mass`.
pub fn normalize(ds: &GradeDataset) -> Result<GradeDistribution> {
    let total = ds.total_mass();
    if total <= 0.0 {
        return Err(Error::Normalization(format!(
            "group `{}` has zero total mass",
            ds.group_id
        )));
    }
    let n = ds.counts.len();
    let y = (0..n)
        .map(|i| {
            let below = if i > 0 {
                ds.boundary_counts[i - 1]
            } else {
                0.0
            };
            let above = if i + 1 < n {
                ds.boundary_counts[i]
            } else {
                0.0
            };
            (ds.counts[i] + below + above) / total
        })
        .collect();
    GradeDistribution::new(ds.scale.clone(), y)
}

/// Normalizes `ds` for use with `model`, refusing boundary scores under the
/// classic model, which has no shared region to hold them.
pub fn distribution_for(ds: &GradeDataset, model: &ModelSpec) -> Result<GradeDistribution> {
    if ds.scale.len() != model.n() {
        return Err(Error::ScaleMismatch {
            expected: model.n(),
            actual: ds.scale.len(),
        });
    }
    if model.shape() == ShapeKind::RectangularClassic && ds.has_boundaries() {
        return Err(Error::BoundaryNotAllowed(ds.group_id.clone()));
    }
    normalize(ds)
}

/// Parses a dataset. `scale` is the externally supplied scale, if any; it
/// must agree with a scale declared in the input.
pub fn parse_dataset(
    text: &str,
    format: DatasetFormat,
    scale: Option<&GradeScale>,
) -> Result<Vec<GradeDataset>> {
    match format {
        DatasetFormat::Csv => parse_csv(text, scale),
        DatasetFormat::Json => parse_json(text, scale),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Cell {
    Grade(usize),
    Boundary(usize),
}

/// Accumulates cells per group, keeping groups in first-seen order.
struct Builder {
    scale: GradeScale,
    order: Vec<String>,
    groups: HashMap<String, (Vec<f64>, Vec<f64>)>,
    seen: HashSet<(String, Cell)>,
}

impl Builder {
    fn new(scale: GradeScale) -> Self {
        Self {
            scale,
            order: Vec::new(),
            groups: HashMap::new(),
            seen: HashSet::new(),
        }
    }

    fn ensure_group(&mut self, group: &str) {
        if !self.groups.contains_key(group) {
            let n = self.scale.len();
            self.order.push(group.to_string());
            self.groups
                .insert(group.to_string(), (vec![0.0; n], vec![0.0; n - 1]));
        }
    }

    fn grade(&self, label: &str, at: &Location) -> Result<usize> {
        self.scale
            .position(label)
            .ok_or_else(|| Error::UnknownGrade {
                at: at.clone(),
                grade: label.to_string(),
            })
    }

    fn cell(&self, grade: &str, at: &Location) -> Result<Cell> {
        match grade.split_once('|') {
            None => Ok(Cell::Grade(self.grade(grade, at)?)),
            Some((a, b)) => self.boundary(a.trim(), b.trim(), at),
        }
    }

    fn boundary(&self, a: &str, b: &str, at: &Location) -> Result<Cell> {
        let (p, q) = (self.grade(a, at)?, self.grade(b, at)?);
        if p.abs_diff(q) != 1 {
            return Err(Error::NonAdjacentBoundary {
                at: at.clone(),
                lo: a.to_string(),
                hi: b.to_string(),
            });
        }
        Ok(Cell::Boundary(p.min(q)))
    }

    fn add(
        &mut self,
        group: &str,
        cell: Cell,
        label: &str,
        count: f64,
        at: &Location,
    ) -> Result<()> {
        if !count.is_finite() {
            return Err(Error::Parse {
                at: at.clone(),
                message: format!("count {count} is not finite"),
            });
        }
        if count < 0.0 {
            return Err(Error::NegativeCount {
                at: at.clone(),
                count,
            });
        }
        if !self.seen.insert((group.to_string(), cell)) {
            return Err(Error::DuplicateCell {
                at: at.clone(),
                group: group.to_string(),
                grade: label.to_string(),
            });
        }
        self.ensure_group(group);
        let (counts, boundaries) = self.groups.get_mut(group).expect("group just ensured");
        match cell {
            Cell::Grade(i) => counts[i] = count,
            Cell::Boundary(j) => boundaries[j] = count,
        }
        Ok(())
    }

    fn finish(mut self) -> Result<Vec<GradeDataset>> {
        if self.order.is_empty() {
            return Err(Error::Parse {
                at: Location::Input,
                message: "no groups in dataset".into(),
            });
        }
        let scale = self.scale;
        self.order
            .into_iter()
            .map(|id| {
                let (counts, boundaries) = self.groups.remove(&id).expect("ordered group exists");
                GradeDataset::new(id, scale.clone(), counts, boundaries)
            })
            .collect()
    }
}

fn resolve_scale(
    declared: Option<GradeScale>,
    supplied: Option<&GradeScale>,
) -> Result<GradeScale> {
    match (declared, supplied) {
        (Some(d), Some(s)) if &d != s => Err(Error::Parse {
            at: Location::Input,
            message: format!("declared scale `{d}` conflicts with supplied scale `{s}`"),
        }),
        (Some(d), _) => Ok(d),
        (None, Some(s)) => Ok(s.clone()),
        (None, None) => Err(Error::Parse {
            at: Location::Input,
            message: "no grade scale given (supply one or declare `#scale:` in the input)".into(),
        }),
    }
}

fn parse_csv(text: &str, supplied: Option<&GradeScale>) -> Result<Vec<GradeDataset>> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let first_line = text.lines().next().unwrap_or("").trim();
    let declared = match first_line.strip_prefix(SCALE_PRAGMA) {
        Some(labels) => Some(GradeScale::parse(labels).map_err(|e| Error::Parse {
            at: Location::Line(1),
            message: e.to_string(),
        })?),
        None => None,
    };

    let mut rows = text
        .lines()
        .enumerate()
        .map(|(i, line)| (i as u64 + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'));

    let Some((header_line, header)) = rows.next() else {
        return Err(Error::Parse {
            at: Location::Input,
            message: "empty input".into(),
        });
    };
    let names: Vec<String> = split_row(header, header_line)?
        .iter()
        .map(|f| f.to_ascii_lowercase())
        .collect();
    if names != ["group", "grade", "count"] {
        return Err(Error::Parse {
            at: Location::Line(header_line),
            message: format!(
                "expected header `group,grade,count`, found `{}`",
                names.join(",")
            ),
        });
    }

    let scale = resolve_scale(declared, supplied)?;
    let mut builder = Builder::new(scale);
    for (line, row) in rows {
        let at = Location::Line(line);
        let fields = split_row(row, line)?;
        let [group, grade, count] = fields.as_slice() else {
            return Err(Error::Parse {
                at,
                message: format!("expected 3 fields, found {}", fields.len()),
            });
        };
        if group.is_empty() {
            return Err(Error::Parse {
                at,
                message: "empty group id".into(),
            });
        }
        let count: f64 = count.parse().map_err(|_| Error::Parse {
            at: at.clone(),
            message: format!("invalid count `{count}`"),
        })?;
        let cell = builder.cell(grade, &at)?;
        builder.add(group, cell, grade, count, &at)?;
    }
    builder.finish()
}

/// Splits one CSV line, honouring quotes.
fn split_row(line: &str, line_no: u64) -> Result<Vec<String>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(line.as_bytes());
    match reader.records().next() {
        Some(Ok(record)) => Ok(record.iter().map(str::to_string).collect()),
        Some(Err(e)) => Err(Error::Parse {
            at: Location::Line(line_no),
            message: e.to_string(),
        }),
        None => Ok(Vec::new()),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonDataset {
    scale: Vec<String>,
    groups: Vec<JsonGroup>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGroup {
    id: String,
    #[serde(default)]
    counts: BTreeMap<String, f64>,
    #[serde(default)]
    boundaries: Vec<JsonBoundary>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonBoundary {
    between: [String; 2],
    count: f64,
}

fn parse_json(text: &str, supplied: Option<&GradeScale>) -> Result<Vec<GradeDataset>> {
    let doc: JsonDataset = serde_json::from_str(text).map_err(|e| Error::Parse {
        at: if e.line() > 0 {
            Location::Line(e.line() as u64)
        } else {
            Location::Input
        },
        message: e.to_string(),
    })?;
    let declared = GradeScale::new(doc.scale).map_err(|e| Error::Parse {
        at: Location::Input,
        message: e.to_string(),
    })?;
    let scale = resolve_scale(Some(declared), supplied)?;
    let mut builder = Builder::new(scale);
    let mut ids = HashSet::new();
    for group in doc.groups {
        let at = Location::Group(group.id.clone());
        if group.id.is_empty() {
            return Err(Error::Parse {
                at,
                message: "empty group id".into(),
            });
        }
        if !ids.insert(group.id.clone()) {
            return Err(Error::Parse {
                at,
                message: "group id appears twice".into(),
            });
        }
        builder.ensure_group(&group.id);
        for (label, count) in &group.counts {
            let cell = builder.cell(label, &at)?;
            builder.add(&group.id, cell, label, *count, &at)?;
        }
        for b in &group.boundaries {
            let [lo, hi] = &b.between;
            let cell = builder.boundary(lo, hi, &at)?;
            builder.add(&group.id, cell, &format!("{lo}|{hi}"), b.count, &at)?;
        }
    }
    builder.finish()
}
