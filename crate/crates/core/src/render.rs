//! SVG figures of colored Voronoi maps.
//!
//! Output is a pure function of the inputs: coordinates are printed with
//! four decimals and elements are emitted in site order, so equal inputs
//! give byte-identical files.

use std::fmt::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::geometry::{Point, Triangulation, VoronoiCell, Window};
use crate::peeling::Level;
use crate::{Error, Result};

pub const DEFAULT_PALETTE: [&str; 10] = [
    "#e6194b", "#3cb44b", "#4363d8", "#ffe119", "#f58231", "#911eb4", "#46f0f0", "#f032e6", "#bcf60c", "#9a6324",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RenderSpec {
    pub palette: Vec<String>,
    pub stroke_width: f64,
    /// Region drawn; cells whose site lies outside are skipped.
    pub viewport: Window,
    pub delaunay_overlay: bool,
    pub show_levels: bool,
    /// Output width in pixels; height follows the viewport aspect.
    pub pixels: u32,
}

impl RenderSpec {
    pub fn new(viewport: Window) -> Self {
        RenderSpec {
            palette: DEFAULT_PALETTE.iter().map(|s| s.to_string()).collect(),
            stroke_width: 0.05,
            viewport,
            delaunay_overlay: false,
            show_levels: false,
            pixels: 800,
        }
    }
}

/// Extra layers drawn above the cells.
#[derive(Clone, Copy, Default)]
pub struct Overlays<'a> {
    pub triangulation: Option<&'a Triangulation>,
    pub levels: Option<&'a [Level]>,
}

/// `sites[v]` is the site of `cells[v]`.
pub fn render_svg(sites: &[Point], cells: &[VoronoiCell], colors: &[u32], spec: &RenderSpec, overlays: Overlays<'_>) -> Result<String> {
    if sites.len() != cells.len() {
        return Err(Error::param(format!("{} sites for {} cells", sites.len(), cells.len())));
    }
    if colors.len() != cells.len() {
        return Err(Error::param(format!("{} colors for {} cells", colors.len(), cells.len())));
    }
    let max = colors.iter().copied().max().unwrap_or(0) as usize;
    if spec.palette.len() <= max {
        return Err(Error::param(format!("palette has {} colors, coloring needs {}", spec.palette.len(), max + 1)));
    }
    spec.viewport.validate()?;
    let vp = &spec.viewport;
    let inside = |p: &Point| vp.contains(p);
    // y grows downward in SVG
    let (x0, y0, side) = (vp.min_x(), vp.max_y(), vp.side());
    let tx = |p: &Point| (p.x - x0, y0 - p.y);

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{px}" height="{px}" viewBox="0 0 {side:.4} {side:.4}">"#,
        px = spec.pixels
    )
    .unwrap();
    writeln!(out, r#"<defs><clipPath id="vp"><rect x="0" y="0" width="{side:.4}" height="{side:.4}"/></clipPath></defs>"#).unwrap();
    writeln!(out, r##"<g clip-path="url(#vp)" stroke="#000000" stroke-width="{:.4}" stroke-linejoin="round">"##, spec.stroke_width).unwrap();
    for ((cell, &c), site) in cells.iter().zip(colors).zip(sites) {
        if !inside(site) {
            continue;
        }
        out.push_str(r#"<polygon points=""#);
        for (k, p) in cell.polygon.iter().enumerate() {
            let (x, y) = tx(p);
            if k > 0 {
                out.push(' ');
            }
            write!(out, "{x:.4},{y:.4}").unwrap();
        }
        writeln!(out, r#"" fill="{}"/>"#, spec.palette[c as usize]).unwrap();
    }
    writeln!(out, "</g>").unwrap();

    if spec.delaunay_overlay {
        if let Some(tri) = overlays.triangulation {
            let v = tri.vertices();
            writeln!(out, r##"<g clip-path="url(#vp)" stroke="#444444" stroke-width="{:.4}">"##, spec.stroke_width / 2.0).unwrap();
            for (a, b) in tri.edges() {
                if !inside(&v[a]) && !inside(&v[b]) {
                    continue;
                }
                let ((ax, ay), (bx, by)) = (tx(&v[a]), tx(&v[b]));
                writeln!(out, r#"<line x1="{ax:.4}" y1="{ay:.4}" x2="{bx:.4}" y2="{by:.4}"/>"#).unwrap();
            }
            writeln!(out, "</g>").unwrap();
        }
    }
    if spec.show_levels {
        if let (Some(levels), Some(tri)) = (overlays.levels, overlays.triangulation) {
            let fs = (side / 120.0).max(0.2);
            writeln!(out, r##"<g font-family="monospace" font-size="{fs:.4}" text-anchor="middle" fill="#000000">"##).unwrap();
            for (v, l) in levels.iter().enumerate() {
                let p = &tri.vertices()[v];
                if !inside(p) {
                    continue;
                }
                let (x, y) = tx(p);
                let label = match l {
                    Level::Peeled(k) => k.to_string(),
                    Level::Survivor => "S".into(),
                };
                writeln!(out, r#"<text x="{x:.4}" y="{y:.4}">{label}</text>"#).unwrap();
            }
            writeln!(out, "</g>").unwrap();
        }
    }
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

pub fn write_svg(path: &Path, svg: &str) -> Result<()> {
    std::fs::write(path, svg)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{delaunay_points, voronoi_cells};

    fn three() -> (Vec<Point>, Vec<VoronoiCell>) {
        let pts = vec![Point::new(-1.0, -0.5), Point::new(1.0, -0.5), Point::new(0.0, 1.0)];
        let tri = delaunay_points(&pts).unwrap();
        let cells = voronoi_cells(&tri, &Window::centered(3.0).unwrap()).unwrap();
        (pts, cells)
    }

    #[test]
    fn three_polygons_and_deterministic() {
        let (pts, cells) = three();
        let spec = RenderSpec::new(Window::centered(3.0).unwrap());
        let a = render_svg(&pts, &cells, &[0, 1, 2], &spec, Overlays::default()).unwrap();
        let b = render_svg(&pts, &cells, &[0, 1, 2], &spec, Overlays::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.matches("<polygon ").count(), 3);
        assert!(a.contains(DEFAULT_PALETTE[2]));
    }

    #[test]
    fn small_palette_is_rejected() {
        let (pts, cells) = three();
        let mut spec = RenderSpec::new(Window::centered(3.0).unwrap());
        spec.palette.truncate(2);
        assert!(matches!(
            render_svg(&pts, &cells, &[0, 1, 2], &spec, Overlays::default()),
            Err(Error::Parameter(_))
        ));
    }
}
