//! Exchange formats.
//!
//! * points: one `x y` line per point, plus a JSON sidecar with the
//!   sampling parameters;
//! * triangulations: JSON `{"vertices": [[x, y], ..], "triangles": [[a, b, c], ..]}`;
//! * levels: CSV `vertexId,level` with `SURVIVOR` for unpeeled vertices;
//! * colorings: CSV `vertexId,color,contaminated` preceded by one
//!   `# {json}` header line naming the scheme and seed;
//! * experiments: CSV rows plus a JSON summary.
//!
//! Reals are written with Rust's shortest round-trip formatting, so reading
//! back a written file reproduces every coordinate exactly.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::chromatics::{Coloring, Scheme};
use crate::geometry::{Point, PointSet, Triangulation, Window};
use crate::peeling::Level;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointsMeta {
    pub intensity: f64,
    pub seed: u64,
    pub window: Window,
    pub pad: f64,
}

pub fn points_text(points: &[Point]) -> String {
    let mut s = String::with_capacity(points.len() * 40);
    for p in points {
        writeln!(s, "{} {}", p.x, p.y).unwrap();
    }
    s
}

pub fn points_meta(ps: &PointSet) -> PointsMeta {
    PointsMeta { intensity: ps.intensity, seed: ps.seed, window: ps.sample_window, pad: ps.pad }
}

pub fn parse_points(text: &str) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let mut next = || -> Result<f64> {
            it.next()
                .ok_or_else(|| Error::Format(format!("line {}: expected two numbers", i + 1)))?
                .parse()
                .map_err(|e| Error::Format(format!("line {}: {e}", i + 1)))
        };
        let (x, y) = (next()?, next()?);
        if it.next().is_some() {
            return Err(Error::Format(format!("line {}: trailing fields", i + 1)));
        }
        out.push(Point::new(x, y));
    }
    Ok(out)
}

pub fn read_point_set(text: &str, meta: &PointsMeta) -> Result<PointSet> {
    PointSet::from_points(parse_points(text)?, meta.window, meta.pad, meta.intensity, meta.seed)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub vertices: Vec<[f64; 2]>,
    pub triangles: Vec<[usize; 3]>,
}

impl TriangulationJson {
    pub fn of(tri: &Triangulation) -> Self {
        TriangulationJson {
            vertices: tri.vertices().iter().map(|p| [p.x, p.y]).collect(),
            triangles: tri.triangles().to_vec(),
        }
    }

    pub fn to_triangulation(&self) -> Result<Triangulation> {
        Triangulation::from_triangles(self.vertices.iter().map(|v| Point::new(v[0], v[1])).collect(), self.triangles.clone())
    }
}

pub fn levels_csv(levels: &[Level]) -> String {
    let mut s = String::from("vertexId,level\n");
    for (v, l) in levels.iter().enumerate() {
        writeln!(s, "{v},{l}").unwrap();
    }
    s
}

pub fn parse_levels_csv(text: &str) -> Result<Vec<Level>> {
    let mut out = Vec::new();
    for (i, line) in data_lines(text, "vertexId,level")? {
        let (id, level) = line.split_once(',').ok_or_else(|| Error::Format(format!("line {i}: expected two fields")))?;
        expect_id(id, out.len(), i)?;
        out.push(match level.trim() {
            "SURVIVOR" => Level::Survivor,
            k => Level::Peeled(k.parse().map_err(|e| Error::Format(format!("line {i}: {e}")))?),
        });
    }
    Ok(out)
}

/// The JSON header of a coloring CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColoringHeader {
    #[serde(flatten)]
    pub scheme: Scheme,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ColoringRecord {
    pub header: ColoringHeader,
    pub colors: Vec<u32>,
    pub contaminated: Vec<bool>,
}

impl ColoringRecord {
    pub fn coloring(&self) -> Coloring {
        Coloring { colors: self.colors.clone(), scheme: self.header.scheme }
    }
}

pub fn coloring_csv(coloring: &Coloring, contaminated: &[bool], seed: u64) -> Result<String> {
    if contaminated.len() != coloring.colors.len() {
        return Err(Error::param("contamination flags do not match the coloring"));
    }
    let header = ColoringHeader { scheme: coloring.scheme, seed };
    let mut s = format!("# {}\nvertexId,color,contaminated\n", serde_json::to_string(&header)?);
    for (v, (c, bad)) in coloring.colors.iter().zip(contaminated).enumerate() {
        writeln!(s, "{v},{c},{}", u8::from(*bad)).unwrap();
    }
    Ok(s)
}

pub fn parse_coloring_csv(text: &str) -> Result<ColoringRecord> {
    let first = text.lines().next().unwrap_or("");
    let json = first.strip_prefix("# ").ok_or_else(|| Error::Format("missing `# {json}` header line".into()))?;
    let header: ColoringHeader = serde_json::from_str(json)?;
    let rest = &text[first.len()..];
    let (mut colors, mut contaminated) = (Vec::new(), Vec::new());
    for (i, line) in data_lines(rest, "vertexId,color,contaminated")? {
        let f: Vec<&str> = line.split(',').map(str::trim).collect();
        if f.len() != 3 {
            return Err(Error::Format(format!("line {i}: expected three fields")));
        }
        expect_id(f[0], colors.len(), i)?;
        colors.push(f[1].parse().map_err(|e| Error::Format(format!("line {i}: {e}")))?);
        contaminated.push(match f[2] {
            "0" | "false" => false,
            "1" | "true" => true,
            other => return Err(Error::Format(format!("line {i}: bad flag {other:?}"))),
        });
    }
    Ok(ColoringRecord { header, colors, contaminated })
}

fn data_lines<'a>(text: &'a str, header: &str) -> Result<impl Iterator<Item = (usize, &'a str)>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, h)) if h.trim() == header => {}
        other => return Err(Error::Format(format!("expected header {header:?}, found {:?}", other.map(|o| o.1)))),
    }
    Ok(lines.map(|(i, l)| (i + 1, l)))
}

fn expect_id(field: &str, want: usize, line: usize) -> Result<()> {
    let id: usize = field.trim().parse().map_err(|e| Error::Format(format!("line {line}: {e}")))?;
    if id != want {
        return Err(Error::Format(format!("line {line}: vertex ids must be 0, 1, 2, .. in order; found {id}")));
    }
    Ok(())
}

/// Bulk CSV with a fixed header.
pub struct CsvTable {
    columns: Vec<String>,
    body: String,
}

impl CsvTable {
    pub fn new<S: AsRef<str>>(columns: &[S]) -> Self {
        CsvTable { columns: columns.iter().map(|c| c.as_ref().to_string()).collect(), body: String::new() }
    }

    pub fn row<D: std::fmt::Display>(&mut self, fields: &[D]) -> Result<()> {
        if fields.len() != self.columns.len() {
            return Err(Error::param(format!("row has {} fields, table has {}", fields.len(), self.columns.len())));
        }
        for (k, f) in fields.iter().enumerate() {
            if k > 0 {
                self.body.push(',');
            }
            write!(self.body, "{f}").unwrap();
        }
        self.body.push('\n');
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.body.lines().count()
    }

    pub fn finish(self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        s + &self.body
    }
}

/// One-line summary of an experiment run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentSummary {
    pub experiment: String,
    pub params: serde_json::Value,
    pub estimate: Option<f64>,
    #[serde(rename = "CI")]
    pub ci: Option<[f64; 2]>,
    pub analytic_bound: Option<f64>,
    /// Everything else the experiment reports.
    pub details: serde_json::Value,
}
