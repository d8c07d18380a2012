//! Text and JSON reports.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::centroid::Centroid;
use crate::compare::Verdict;
use crate::model::ModelSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown report format `{other}`")),
        }
    }
}

/// Per-group numbers shown in a report.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSummary {
    pub id: String,
    pub centroid: Centroid,
    pub gpa: f64,
}

/// Serialized form of a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub model: ModelDocument,
    pub groups: Vec<GroupDocument>,
    pub ranking: Vec<Vec<String>>,
    pub decisions: Vec<DecisionDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub shape: String,
    pub n: usize,
    pub f: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub m: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub id: String,
    pub x_c: f64,
    pub y_c: f64,
    pub gpa: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionDocument {
    pub pair: [String; 2],
    pub rule: String,
}

impl ReportDocument {
    pub fn new(verdict: Option<&Verdict>, groups: &[GroupSummary], model: &ModelSpec) -> Self {
        Self {
            model: ModelDocument {
                shape: model.shape().name().to_string(),
                n: model.n(),
                f: model.overlap(),
                alpha: model.alpha(),
                beta: model.beta(),
                gamma: model.gamma(),
                m: model.span(),
                threshold: model.threshold(),
            },
            groups: groups
                .iter()
                .map(|g| GroupDocument {
                    id: g.id.clone(),
                    x_c: g.centroid.x_c,
                    y_c: g.centroid.y_c,
                    gpa: g.gpa,
                })
                .collect(),
            ranking: verdict.map(|v| v.ranking.clone()).unwrap_or_default(),
            decisions: verdict
                .map(|v| {
                    v.decisions
                        .iter()
                        .map(|d| DecisionDocument {
                            pair: [d.pair.0.clone(), d.pair.1.clone()],
                            rule: d.rule.as_str().to_string(),
                        })
                        .collect()
                })
                .unwrap_or_default(),
        }
    }
}

/// Renders a report. Without a verdict only the model and per-group blocks
/// are printed (text) or the ranking and decisions are empty (JSON).
pub fn render_report(
    verdict: Option<&Verdict>,
    groups: &[GroupSummary],
    model: &ModelSpec,
    format: ReportFormat,
) -> String {
    match format {
        ReportFormat::Json => {
            let doc = ReportDocument::new(verdict, groups, model);
            let mut out = serde_json::to_string_pretty(&doc).expect("report is plain data");
            out.push('\n');
            out
        }
        ReportFormat::Text => render_text(verdict, groups, model),
    }
}

fn render_text(verdict: Option<&Verdict>, groups: &[GroupSummary], model: &ModelSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "model: {} (n={}, k={}%)",
        model.shape(),
        model.n(),
        overlap_percent(model)
    );
    let _ = writeln!(
        out,
        "  alpha={:.6} beta={:.6} gamma={:.6} m={:.6} threshold(0.5m)={:.6}",
        model.alpha(),
        model.beta(),
        model.gamma(),
        model.span(),
        model.threshold()
    );

    let width = groups
        .iter()
        .map(|g| g.id.chars().count())
        .max()
        .unwrap_or(0);
    let _ = writeln!(out, "\ngroups:");
    for g in groups {
        let _ = writeln!(
            out,
            "  {:<width$}  x_c={:.6}  y_c={:.6}  gpa={:.6}",
            g.id, g.centroid.x_c, g.centroid.y_c, g.gpa
        );
    }

    if let Some(v) = verdict {
        let _ = writeln!(out, "\nranking:");
        for (rank, tier) in v.ranking.iter().enumerate() {
            for id in tier {
                let _ = writeln!(out, "  {}. {}", rank + 1, id);
            }
        }
        let _ = writeln!(out, "\ndecisions:");
        for d in &v.decisions {
            let _ = writeln!(out, "  {} vs {}: {}", d.pair.0, d.pair.1, d.rule.describe());
        }
    }
    out
}

/// Overlap in percent with float noise trimmed, e.g. `30` or `12.5`.
pub fn overlap_percent(model: &ModelSpec) -> String {
    let text = format!("{:.6}", model.overlap() * 100.0);
    text.trim_end_matches('0').trim_end_matches('.').to_string()
}
