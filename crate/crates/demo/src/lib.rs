//! Three map operations for the static page in `www/`.

use pvcolor::chromatics::{color_randomized, det6, RandomizedConfig};
use pvcolor::geometry::{delaunay, sample_poisson, voronoi_cells};
use pvcolor::peeling::{peel_to_core, PeelConfig};
use pvcolor::render::{render_svg, Overlays, RenderSpec};
use pvcolor::{PointSet, Triangulation, Window};
use wasm_bindgen::prelude::*;

/// A rendered map and a few numbers to show next to it.
#[wasm_bindgen(getter_with_clone)]
pub struct DemoMap {
    pub svg: String,
    pub points: u32,
    pub colors_used: u32,
    pub rounds: u32,
}

fn sample(seed: u32, half_side: f64) -> pvcolor::Result<(PointSet, Triangulation)> {
    let ps = sample_poisson(Window::centered(half_side)?, 3.0, 1.0, seed as u64)?;
    let tri = delaunay(&ps)?;
    Ok((ps, tri))
}

fn distinct(colors: &[u32]) -> u32 {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len() as u32
}

fn spec(ps: &PointSet) -> RenderSpec {
    let mut spec = RenderSpec::new(ps.sample_window.clone());
    spec.pixels = 640;
    spec
}

pub fn det6_map(seed: u32, half_side: f64, delaunay_overlay: bool) -> pvcolor::Result<DemoMap> {
    let (ps, tri) = sample(seed, half_side)?;
    let d = det6(&tri, &ps.padded_window())?;
    let mut spec = spec(&ps);
    spec.delaunay_overlay = delaunay_overlay;
    let overlays = Overlays { triangulation: Some(&tri), levels: None };
    let svg = render_svg(&ps.points, &d.cells, &d.coloring.colors, &spec, overlays)?;
    Ok(DemoMap {
        svg,
        points: ps.len() as u32,
        colors_used: distinct(&d.coloring.colors),
        rounds: d.levels.rounds_executed as u32,
    })
}

pub fn rand_map(seed: u32, half_side: f64, num_symbols: u32) -> pvcolor::Result<DemoMap> {
    let (ps, tri) = sample(seed, half_side)?;
    let cells = voronoi_cells(&tri, &ps.padded_window())?;
    let areas: Vec<f64> = cells.iter().map(|c| c.area).collect();
    let r = color_randomized(&tri, &areas, seed as u64, &RandomizedConfig::new(num_symbols))?;
    let svg = render_svg(&ps.points, &cells, &r.coloring.colors, &spec(&ps), Overlays::default())?;
    Ok(DemoMap { svg, points: ps.len() as u32, colors_used: distinct(&r.coloring.colors), rounds: 0 })
}

/// Cells shaded by peeling level.
pub fn peel_map(seed: u32, half_side: f64, max_deg: u32) -> pvcolor::Result<DemoMap> {
    let (ps, tri) = sample(seed, half_side)?;
    let cells = voronoi_cells(&tri, &ps.padded_window())?;
    let levels = peel_to_core(&tri, &PeelConfig::full(max_deg as usize));
    let top = levels.levels.iter().filter_map(|l| l.peeled()).max().unwrap_or(0) + 1;
    let colors: Vec<u32> = levels.levels.iter().map(|l| l.peeled().unwrap_or(top)).collect();
    let mut spec = spec(&ps);
    spec.show_levels = true;
    spec.palette = shades(top as usize + 1);
    let overlays = Overlays { triangulation: Some(&tri), levels: Some(&levels.levels) };
    let svg = render_svg(&ps.points, &cells, &colors, &spec, overlays)?;
    Ok(DemoMap { svg, points: ps.len() as u32, colors_used: distinct(&colors), rounds: levels.rounds_executed as u32 })
}

// light to dark blue; the last entry (survivors) is red
fn shades(n: usize) -> Vec<String> {
    let mut out: Vec<String> = (0..n.saturating_sub(1))
        .map(|k| {
            let t = k as f64 / (n.max(3) - 2) as f64;
            let v = (225.0 - 165.0 * t) as u8;
            format!("#{v:02x}{v:02x}ff")
        })
        .collect();
    out.push("#d62728".into());
    out
}

fn js(e: pvcolor::Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

#[wasm_bindgen]
pub fn det6_svg(seed: u32, half_side: f64, delaunay_overlay: bool) -> Result<DemoMap, JsValue> {
    det6_map(seed, half_side, delaunay_overlay).map_err(js)
}

#[wasm_bindgen]
pub fn rand_svg(seed: u32, half_side: f64, num_symbols: u32) -> Result<DemoMap, JsValue> {
    rand_map(seed, half_side, num_symbols).map_err(js)
}

#[wasm_bindgen]
pub fn peel_svg(seed: u32, half_side: f64, max_deg: u32) -> Result<DemoMap, JsValue> {
    peel_map(seed, half_side, max_deg).map_err(js)
}
