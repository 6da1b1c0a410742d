//! File formats.
//!
//! Space documents are JSON objects with 1-based point indices:
//! `{"points": [[x, y, ...], ...], "labels": [[1, 2], [3]]}` or
//! `{"dist": [[0, 1], [1, 0]], "labels": [[1], [2]]}`. Exactly one of
//! `points` and `dist` must be present.
//!
//! Landscapes are long-form CSV with header `level,r,poset_element,value`.
//! Levels are 1-based, elements are written as `{1,2}` (1-based labels, empty
//! set omitted), and numbers use the shortest representation that parses
//! back to the same value. Barcodes are CSV with header `degree,birth,death`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::landscape::GeneralizedLandscape;
use crate::metric_space::{validate_parts, LabeledMetricSpace, ValidationReport};
use crate::persistence::Barcode;
use crate::{LabelSet, Scalar};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dist: Option<Vec<Vec<f64>>>,
    pub labels: Vec<Vec<usize>>,
}

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

impl SpaceDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: SpaceDocument =
            serde_json::from_str(text).map_err(|e| format_err(format!("malformed JSON: {e}")))?;
        match (&doc.points, &doc.dist) {
            (Some(_), Some(_)) => Err(format_err("document has both `points` and `dist`")),
            (None, None) => Err(format_err("document needs `points` or `dist`")),
            _ => Ok(doc),
        }
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn from_space(lms: &LabeledMetricSpace<f64>) -> Self {
        let labels = lms.labels().iter().map(|l| l.iter().map(|&p| p + 1).collect()).collect();
        match lms.coords() {
            Some(c) => Self { points: Some(c.to_vec()), dist: None, labels },
            None => Self { points: None, dist: Some(lms.distance_matrix()), labels },
        }
    }

    fn zero_based_labels(&self) -> Result<Vec<Vec<usize>>> {
        self.labels
            .iter()
            .map(|l| {
                l.iter()
                    .map(|&p| p.checked_sub(1).ok_or_else(|| format_err("point indices are 1-based")))
                    .collect()
            })
            .collect()
    }

    fn distances(&self) -> Result<Vec<Vec<f64>>> {
        if let Some(d) = &self.dist {
            return Ok(d.clone());
        }
        let pts = self.points.as_ref().expect("checked on parse");
        let dim = pts.first().map_or(0, |p| p.len());
        if pts.iter().any(|p| p.len() != dim) {
            return Err(format_err("points have different dimensions"));
        }
        Ok(pts
            .iter()
            .map(|a| {
                pts.iter()
                    .map(|b| a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt())
                    .collect()
            })
            .collect())
    }

    pub fn validate(&self) -> Result<ValidationReport> {
        Ok(validate_parts(&self.distances()?, &self.zero_based_labels()?))
    }

    pub fn to_space(&self) -> Result<LabeledMetricSpace<f64>> {
        let labels = self.zero_based_labels()?;
        match &self.points {
            Some(p) => {
                self.distances()?;
                LabeledMetricSpace::from_point_cloud(p.clone(), labels)
            }
            None => LabeledMetricSpace::from_distance_matrix(self.distances()?, labels),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

pub fn read_space(path: impl AsRef<Path>) -> Result<LabeledMetricSpace<f64>> {
    SpaceDocument::read(path)?.to_space()
}

/// Reads rows of numbers as points. A first row that does not parse as
/// numbers is taken to be a header.
pub fn parse_point_csv(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| format_err(format!("csv: {e}")))?;
        let row: std::result::Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match row {
            Ok(r) => out.push(r),
            Err(_) if i == 0 => continue,
            Err(e) => return Err(format_err(format!("line {}: {e}", i + 1))),
        }
    }
    Ok(out)
}

pub fn read_point_csv(path: impl AsRef<Path>) -> Result<Vec<Vec<f64>>> {
    parse_point_csv(&std::fs::read_to_string(path)?)
}

/// `{1,2}` style rendering of a label set.
pub fn format_mask(mask: LabelSet) -> String {
    let parts: Vec<String> = (0..32).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn parse_mask(s: &str) -> Result<LabelSet> {
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| format_err(format!("bad poset element `{s}`")))?;
    let mut mask = 0;
    for part in inner.split(',').filter(|p| !p.trim().is_empty()) {
        let i: u32 = part.trim().parse().map_err(|_| format_err(format!("bad label in `{s}`")))?;
        if i == 0 || i > 32 {
            return Err(format_err(format!("label out of range in `{s}`")));
        }
        mask |= 1 << (i - 1);
    }
    Ok(mask)
}

/// One row of a landscape CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct LandscapeRow {
    pub level: usize,
    pub r: f64,
    pub element: LabelSet,
    pub value: f64,
}

/// Rows ordered by level, then grid value, then element.
pub fn landscape_csv<S: Scalar>(gl: &GeneralizedLandscape<S>) -> String {
    let mut out = String::from("level,r,poset_element,value\n");
    for n in 1..=gl.n_max {
        for (t, r) in gl.z.iter().enumerate() {
            for m in gl.elements() {
                out.push_str(&format!("{n},{r},\"{}\",{}\n", format_mask(m), gl.value(n, t, m)));
            }
        }
    }
    out
}

pub fn parse_landscape_csv(text: &str) -> Result<Vec<LandscapeRow>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| format_err(format!("csv: {e}")))?;
        if rec.len() != 4 {
            return Err(format_err("landscape rows have four fields"));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|e| format_err(format!("{e}: `{s}`")));
        out.push(LandscapeRow {
            level: rec[0].parse().map_err(|_| format_err("bad level"))?,
            r: num(&rec[1])?,
            element: parse_mask(&rec[2])?,
            value: num(&rec[3])?,
        });
    }
    Ok(out)
}

/// Grid metadata for a landscape export.
pub fn landscape_metadata<S: Scalar>(gl: &GeneralizedLandscape<S>, config: serde_json::Value) -> serde_json::Value {
    let edges: Vec<serde_json::Value> = gl
        .poset
        .edges()
        .iter()
        .map(|e| {
            serde_json::json!({
                "from": format_mask(gl.poset.elements()[e.from]),
                "to": format_mask(gl.poset.elements()[e.to]),
                "weight": e.weight.as_f64(),
            })
        })
        .collect();
    serde_json::json!({
        "degree": gl.degree,
        "levels": gl.n_max,
        "grid": gl.z.iter().map(|v| v.as_f64()).collect::<Vec<_>>(),
        "elements": gl.elements().into_iter().map(format_mask).collect::<Vec<_>>(),
        "edges": edges,
        "quasimetric": "sum, geodesic",
        "config": config,
    })
}

pub fn barcode_csv<S: Scalar>(codes: &[Barcode<S>]) -> String {
    let mut out = String::from("degree,birth,death\n");
    for bc in codes {
        for b in &bc.bars {
            out.push_str(&format!("{},{},{}\n", bc.degree, b.birth, b.death));
        }
    }
    out
}
