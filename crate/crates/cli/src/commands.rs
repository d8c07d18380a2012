use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use fuzzgrade::oracle::{integral_centroid, layout, particle_centroid};
use fuzzgrade::report::{overlap_percent, ModelDocument};
use fuzzgrade::{
    centroid, compare, distribution_for, extremes, gpa, parse_dataset, render_report, Centroid,
    DatasetFormat, GradeDistribution, GradeScale, GroupSummary, ModelSpec, ReportDocument,
    ReportFormat, ShapeKind,
};
use serde::Serialize;

use crate::args::{DataArgs, ModelArgs};

/// Closed-form and particle-system centroids are both exact.
const PARTICLE_TOLERANCE: f64 = 1e-12;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or bad input data; exit status 2.
    Usage(String),
    /// Anything else; exit status 1.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Internal(msg) => f.write_str(msg),
        }
    }
}

impl From<fuzzgrade::Error> for CliError {
    fn from(e: fuzzgrade::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub struct Output {
    pub text: String,
    pub success: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self {
            text,
            success: true,
        }
    }
}

pub fn build_model(args: &ModelArgs, n: usize) -> Result<ModelSpec, CliError> {
    match args.k {
        None => Ok(ModelSpec::with_default_overlap(args.model, n)?),
        Some(k) if !(0.0..50.0).contains(&k) => {
            Err(CliError::Usage(format!("--k must be in [0, 50), got {k}")))
        }
        Some(k) => Ok(ModelSpec::from_percent(args.model, n, k)?),
    }
}

struct Loaded {
    model: ModelSpec,
    groups: Vec<(String, GradeDistribution)>,
}

fn load(args: &DataArgs) -> Result<Loaded, CliError> {
    let scale = args.scale.as_deref().map(GradeScale::parse).transpose()?;
    let text = read_input(&args.input)?;
    let format = args
        .input_format
        .unwrap_or_else(|| guess_format(&args.input, &text));
    let datasets = parse_dataset(&text, format, scale.as_ref())?;
    let n = datasets[0].scale.len();
    let model = build_model(&args.model, n)?;
    let groups = datasets
        .iter()
        .map(|ds| Ok((ds.group_id.clone(), distribution_for(ds, &model)?)))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Loaded { model, groups })
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
    }
}

fn guess_format(path: &Path, text: &str) -> DatasetFormat {
    let by_extension = path
        .extension()
        .and_then(|e| e.to_str())
        .map(|e| e.eq_ignore_ascii_case("json"));
    match by_extension {
        Some(true) => DatasetFormat::Json,
        _ if text.trim_start().starts_with('{') => DatasetFormat::Json,
        _ => DatasetFormat::Csv,
    }
}

fn summaries(loaded: &Loaded) -> Result<Vec<GroupSummary>, CliError> {
    loaded
        .groups
        .iter()
        .map(|(id, d)| {
            Ok(GroupSummary {
                id: id.clone(),
                centroid: centroid(d, &loaded.model)?,
                gpa: gpa(d),
            })
        })
        .collect()
}

pub fn run_report(args: &DataArgs) -> Result<Output, CliError> {
    let loaded = load(args)?;
    let rows = summaries(&loaded)?;
    Ok(Output::ok(render_report(
        None,
        &rows,
        &loaded.model,
        args.format,
    )))
}

pub fn run_compare(args: &DataArgs, eps: f64) -> Result<Output, CliError> {
    let loaded = load(args)?;
    let verdict = compare(&loaded.groups, &loaded.model, eps)?;
    let rows = summaries(&loaded)?;
    Ok(Output::ok(render_report(
        Some(&verdict),
        &rows,
        &loaded.model,
        args.format,
    )))
}

#[derive(Serialize)]
struct CoeffsDocument {
    model: ModelDocument,
    f_min: Centroid,
    f_ideal: Centroid,
    f_worst: Centroid,
}

pub fn run_coeffs(
    args: &ModelArgs,
    n: usize,
    scale: Option<&str>,
    format: ReportFormat,
) -> Result<Output, CliError> {
    let n = match scale {
        Some(labels) => GradeScale::parse(labels)?.len(),
        None => n,
    };
    let model = build_model(args, n)?;
    let ext = extremes(&model);
    let text = match format {
        ReportFormat::Json => {
            let doc = CoeffsDocument {
                model: ReportDocument::new(None, &[], &model).model,
                f_min: ext.min,
                f_ideal: ext.ideal,
                f_worst: ext.worst,
            };
            let mut out = serde_json::to_string_pretty(&doc)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            out.push('\n');
            out
        }
        ReportFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "model: {} (n={}, k={}%)",
                model.shape(),
                n,
                overlap_percent(&model)
            );
            for (name, value) in [
                ("alpha", model.alpha()),
                ("beta", model.beta()),
                ("gamma", model.gamma()),
                ("m", model.span()),
                ("0.5m", model.threshold()),
            ] {
                let _ = writeln!(out, "{name:<8}{value:.6}");
            }
            for (name, c) in [
                ("F_min", ext.min),
                ("F_ideal", ext.ideal),
                ("F_worst", ext.worst),
            ] {
                let _ = writeln!(out, "{name:<8}({:.6}, {:.6})", c.x_c, c.y_c);
            }
            out
        }
    };
    Ok(Output::ok(text))
}

#[derive(Serialize)]
struct VerifyRow {
    id: String,
    closed_form: Centroid,
    oracle: Centroid,
    deviation: f64,
}

#[derive(Serialize)]
struct VerifyDocument {
    shape: String,
    method: &'static str,
    tolerance: f64,
    groups: Vec<VerifyRow>,
    max_deviation: f64,
    passed: bool,
}

pub fn run_verify(args: &DataArgs, resolution: f64) -> Result<Output, CliError> {
    if matches!(
        args.model.model,
        ShapeKind::Triangular | ShapeKind::Trapezoidal
    ) {
        return Err(fuzzgrade::Error::UnsupportedShape(args.model.model.name().to_string()).into());
    }
    let loaded = load(args)?;
    let model = &loaded.model;
    let (method, tolerance) = match model.shape() {
        ShapeKind::RectangularClassic => ("area integral", 5.0 * resolution),
        _ => ("particle system", PARTICLE_TOLERANCE),
    };

    let mut rows = Vec::with_capacity(loaded.groups.len());
    for (id, dist) in &loaded.groups {
        let closed = centroid(dist, model)?;
        let regions = layout(model, dist)?;
        let oracle = match model.shape() {
            ShapeKind::RectangularClassic => integral_centroid(&regions, resolution)?,
            _ => particle_centroid(&regions)?,
        };
        rows.push(VerifyRow {
            id: id.clone(),
            closed_form: closed,
            oracle,
            deviation: closed.max_deviation(&oracle),
        });
    }
    let max_deviation = rows.iter().map(|r| r.deviation).fold(0.0, f64::max);
    let passed = max_deviation <= tolerance;

    let text = match args.format {
        ReportFormat::Json => {
            let doc = VerifyDocument {
                shape: model.shape().name().to_string(),
                method,
                tolerance,
                groups: rows,
                max_deviation,
                passed,
            };
            let mut out = serde_json::to_string_pretty(&doc)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            out.push('\n');
            out
        }
        ReportFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "verify: {} model, {method} vs closed form",
                model.shape()
            );
            let width = rows.iter().map(|r| r.id.chars().count()).max().unwrap_or(0);
            for r in &rows {
                let _ = writeln!(
                    out,
                    "  {:<width$}  closed=({:.6}, {:.6})  oracle=({:.6}, {:.6})  deviation={:.3e}",
                    r.id,
                    r.closed_form.x_c,
                    r.closed_form.y_c,
                    r.oracle.x_c,
                    r.oracle.y_c,
                    r.deviation
                );
            }
            let _ = writeln!(
                out,
                "max deviation: {max_deviation:.3e} (tolerance {tolerance:.3e})"
            );
            let _ = writeln!(out, "result: {}", if passed { "ok" } else { "FAILED" });
            out
        }
    };
    Ok(Output {
        text,
        success: passed,
    })
}
