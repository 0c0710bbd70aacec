use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use pvcolor::chromatics::{
    color_1d, color_randomized, det6, sample_line, verify_proper, Coloring, Det6, ProperReport, RandomizedConfig,
};
use pvcolor::geometry::{delaunay, delaunay_points, sample_poisson, voronoi_cells, PointSet, Window};
use pvcolor::io::{self, TriangulationJson};
use pvcolor::peeling::{peel_to_core, Level, PeelConfig};
use pvcolor::render::{render_svg, Overlays, RenderSpec};
use pvcolor::{Error, Triangulation};

use crate::config::*;
use crate::experiment;

/// Why a run did not succeed; decides the exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verification(String),
    Run(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Verification(_) | Failure::Run(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage: {m}"),
            Failure::Verification(m) => write!(f, "verification failed: {m}"),
            Failure::Run(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parameter(_) => Failure::Usage(e.to_string()),
            _ => Failure::Run(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Run(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Run(e.to_string())
    }
}

pub type Outcome = Result<(), Failure>;

pub struct Outputs {
    dir: PathBuf,
}

impl Outputs {
    pub fn new(dir: &Path) -> Result<Self, Failure> {
        fs::create_dir_all(dir)?;
        Ok(Outputs { dir: dir.to_path_buf() })
    }

    pub fn text(&self, name: &str, contents: &str) -> Outcome {
        let path = self.dir.join(name);
        fs::write(&path, contents)?;
        println!("wrote {}", path.display());
        Ok(())
    }

    pub fn json<T: Serialize>(&self, name: &str, value: &T) -> Outcome {
        let mut s = serde_json::to_string_pretty(value)?;
        s.push('\n');
        self.text(name, &s)
    }
}

pub fn dispatch(cmd: &Command) -> Outcome {
    if let Command::Replay(r) = cmd {
        return replay(r);
    }
    if let Some(dir) = cmd.out_dir() {
        let cfg = RunConfig { version: env!("CARGO_PKG_VERSION").into(), command: cmd.clone() };
        Outputs::new(dir)?.json("run.json", &cfg)?;
    }
    match cmd {
        Command::Sample(c) => sample_cmd(c),
        Command::Triangulate(c) => triangulate_cmd(c),
        Command::ColorDet6(c) => det6_cmd(c),
        Command::ColorRand(c) => rand_cmd(c),
        Command::Color1d(c) => line_cmd(c),
        Command::Peel(c) => peel_cmd(c),
        Command::Experiment(c) => experiment::run(c),
        Command::Render(c) => render_cmd(c),
        Command::Verify(c) => verify_cmd(c),
        Command::Replay(_) => unreachable!(),
    }
}

fn replay(r: &ReplayCmd) -> Outcome {
    let text = fs::read_to_string(&r.config)?;
    let mut cfg: RunConfig = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", r.config.display())))?;
    if let Command::Replay(_) = cfg.command {
        return Err(Failure::Usage("a replay config cannot replay another".into()));
    }
    if let Some(dir) = &r.out {
        cfg.command.set_out_dir(dir.clone());
    }
    dispatch(&cfg.command)
}

fn sample_points(s: &SampleArgs) -> Result<PointSet, Failure> {
    Ok(sample_poisson(Window::centered(s.half_side)?, s.pad, s.intensity, s.seed)?)
}

fn sample_tri(s: &SampleArgs) -> Result<(PointSet, Triangulation), Failure> {
    let ps = sample_points(s)?;
    let tri = delaunay(&ps)?;
    Ok((ps, tri))
}

fn sample_cmd(c: &SampleCmd) -> Outcome {
    let ps = sample_points(&c.sample)?;
    let out = Outputs::new(&c.out.out)?;
    out.text("points.txt", &io::points_text(&ps.points))?;
    out.json("points.json", &io::points_meta(&ps))
}

fn triangulate_cmd(c: &TriangulateCmd) -> Outcome {
    let tri = match &c.points {
        Some(path) => delaunay_points(&io::parse_points(&fs::read_to_string(path)?)?)?,
        None => sample_tri(&c.sample)?.1,
    };
    let out = Outputs::new(&c.out.out)?;
    out.json("triangulation.json", &TriangulationJson::of(&tri))?;
    println!("{} vertices, {} edges, {} triangles", tri.len(), tri.num_edges(), tri.triangles().len());
    Ok(())
}

fn color_histogram(colors: &[u32]) -> Vec<usize> {
    let k = colors.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut h = vec![0; k];
    for &c in colors {
        h[c as usize] += 1;
    }
    h
}

fn report_json(rep: &ProperReport) -> serde_json::Value {
    json!({
        "ok": rep.ok,
        "checkedVertices": rep.checked_vertices,
        "checkedEdges": rep.checked_edges,
        "violations": rep.violations.len(),
    })
}

fn render_to(
    out: &Outputs,
    s: &SampleArgs,
    tri: &Triangulation,
    cells: &[pvcolor::VoronoiCell],
    colors: &[u32],
) -> Outcome {
    let spec = RenderSpec::new(Window::centered(s.half_side)?);
    let svg = render_svg(tri.vertices(), cells, colors, &spec, Overlays::default())?;
    out.text("map.svg", &svg)
}

fn det6_cmd(c: &Det6Cmd) -> Outcome {
    let (ps, tri) = sample_tri(&c.sample)?;
    let d: Det6 = det6(&tri, &ps.padded_window())?;
    let contaminated = d.contaminated();
    let clean: Vec<bool> = contaminated.iter().map(|b| !b).collect();
    let rep = verify_proper(&d.coloring.colors, tri.adjacency(), Some(&clean));
    let reliable = d.reliable()?.iter().filter(|&&r| r).count();
    let out = Outputs::new(&c.out.out)?;
    out.text("coloring.csv", &io::coloring_csv(&d.coloring, &contaminated, c.sample.seed)?)?;
    out.json("triangulation.json", &TriangulationJson::of(&tri))?;
    if c.svg {
        render_to(&out, &c.sample, &tri, &d.cells, &d.coloring.colors)?;
    }
    out.json(
        "summary.json",
        &json!({
            "scheme": d.coloring.scheme,
            "params": c.sample,
            "vertices": tri.len(),
            "contaminated": contaminated.iter().filter(|&&b| b).count(),
            "reliable": reliable,
            "peelRounds": d.levels.rounds_executed,
            "maxOutDegree": d.dag.max_out_degree(),
            "tieBreaks": d.dag.tie_breaks.len(),
            "colorCounts": color_histogram(&d.coloring.colors),
            "proper": report_json(&rep),
        }),
    )?;
    check(&rep, &d.coloring)
}

fn check(rep: &ProperReport, coloring: &Coloring) -> Outcome {
    if !coloring.within_palette() {
        return Err(Failure::Verification(format!("colors exceed the {}-color palette", coloring.palette_size())));
    }
    if !rep.ok {
        return Err(Failure::Verification(format!("{} monochromatic edges", rep.violations.len())));
    }
    Ok(())
}

fn rand_cmd(c: &RandCmd) -> Outcome {
    let (ps, tri) = sample_tri(&c.sample)?;
    let cells = voronoi_cells(&tri, &ps.padded_window())?;
    let areas: Vec<f64> = cells.iter().map(|c| c.area).collect();
    let cfg = RandomizedConfig { num_symbols: c.num_symbols, component_cap: c.component_cap, node_budget: c.node_budget };
    let rc = color_randomized(&tri, &areas, c.sample.seed, &cfg)?;
    let contaminated: Vec<bool> = cells.iter().map(|c| c.contaminated).collect();
    let rep = verify_proper(&rc.coloring.colors, tri.adjacency(), None);
    let out = Outputs::new(&c.out.out)?;
    out.text("coloring.csv", &io::coloring_csv(&rc.coloring, &contaminated, c.sample.seed)?)?;
    out.json("triangulation.json", &TriangulationJson::of(&tri))?;
    if c.svg {
        render_to(&out, &c.sample, &tri, &cells, &rc.coloring.colors)?;
    }
    out.json(
        "summary.json",
        &json!({
            "scheme": rc.coloring.scheme,
            "params": c.sample,
            "componentCap": c.component_cap,
            "nodeBudget": c.node_budget,
            "vertices": tri.len(),
            "components": rc.components.len(),
            "largestComponent": rc.largest_component,
            "colorCounts": color_histogram(&rc.coloring.colors),
            "proper": report_json(&rep),
        }),
    )?;
    check(&rep, &rc.coloring)
}

fn line_cmd(c: &LineCmd) -> Outcome {
    let xs = sample_line(c.length, c.intensity, c.seed)?;
    let lc = color_1d(&xs)?;
    let n = xs.len();
    let boundary: Vec<bool> = (0..n).map(|i| i == 0 || i + 1 == n).collect();
    let out = Outputs::new(&c.out.out)?;
    let mut text = String::new();
    for x in &xs {
        text.push_str(&format!("{x}\n"));
    }
    out.text("line.txt", &text)?;
    out.text("coloring.csv", &io::coloring_csv(&lc.coloring, &boundary, c.seed)?)?;
    let c1 = &lc.coloring.colors;
    let bad = (1..n.saturating_sub(2)).filter(|&i| c1[i] == c1[i + 1]).count();
    out.json(
        "summary.json",
        &json!({
            "scheme": lc.coloring.scheme,
            "seed": c.seed,
            "length": c.length,
            "intensity": c.intensity,
            "points": n,
            "greens": lc.greens.len(),
            "ties": lc.ties,
            "colorCounts": color_histogram(c1),
            "interiorViolations": bad,
        }),
    )?;
    if bad > 0 {
        return Err(Failure::Verification(format!("{bad} equal neighbors among interior cells")));
    }
    Ok(())
}

fn peel_cmd(c: &PeelCmd) -> Outcome {
    let (_, tri) = sample_tri(&c.sample)?;
    let mut cfg = match c.region_half_side {
        Some(h) => PeelConfig::restricted(c.max_deg, Window::centered(h)?),
        None => PeelConfig::full(c.max_deg),
    };
    cfg.max_rounds = c.max_rounds;
    let lv = peel_to_core(&tri, &cfg);
    let mut per_round = vec![0usize; lv.rounds_executed];
    for l in &lv.levels {
        if let Level::Peeled(k) = l {
            per_round[*k as usize] += 1;
        }
    }
    let out = Outputs::new(&c.out.out)?;
    out.text("levels.csv", &io::levels_csv(&lv.levels))?;
    out.json(
        "summary.json",
        &json!({
            "params": c.sample,
            "config": cfg,
            "vertices": tri.len(),
            "rounds": lv.rounds_executed,
            "peeledPerRound": per_round,
            "survivors": lv.survivors().len(),
        }),
    )
}

fn render_cmd(c: &RenderCmd) -> Outcome {
    let (ps, tri) = sample_tri(&c.sample)?;
    let clip = ps.padded_window();
    let mut spec = RenderSpec::new(Window::centered(c.viewport.unwrap_or(c.sample.half_side))?);
    spec.stroke_width = c.stroke_width;
    spec.pixels = c.pixels;
    spec.delaunay_overlay = c.delaunay;
    spec.show_levels = c.show_levels;
    let levels = peel_to_core(&tri, &PeelConfig::full(5));
    let (cells, colors) = match c.scheme {
        RenderScheme::Det6 => {
            let d = det6(&tri, &clip)?;
            (d.cells, d.coloring.colors)
        }
        RenderScheme::Rand => {
            let cells = voronoi_cells(&tri, &clip)?;
            let areas: Vec<f64> = cells.iter().map(|c| c.area).collect();
            let rc = color_randomized(&tri, &areas, c.sample.seed, &RandomizedConfig::new(c.num_symbols))?;
            (cells, rc.coloring.colors)
        }
        RenderScheme::Levels => {
            let k = spec.palette.len() as u32;
            let colors = levels.levels.iter().map(|l| l.peeled().map_or(0, |r| r % k)).collect();
            (voronoi_cells(&tri, &clip)?, colors)
        }
    };
    let overlays = Overlays { triangulation: Some(&tri), levels: Some(&levels.levels) };
    let svg = render_svg(tri.vertices(), &cells, &colors, &spec, overlays)?;
    Outputs::new(&c.out.out)?.text("map.svg", &svg)
}

fn verify_cmd(c: &VerifyCmd) -> Outcome {
    let rec = io::parse_coloring_csv(&fs::read_to_string(&c.coloring)?)?;
    let tj: TriangulationJson = serde_json::from_str(&fs::read_to_string(&c.graph)?)?;
    let tri = tj.to_triangulation()?;
    if rec.colors.len() != tri.len() {
        return Err(Failure::Verification(format!("{} colors for {} vertices", rec.colors.len(), tri.len())));
    }
    let subset: Vec<bool> = rec.contaminated.iter().map(|&b| c.all || !b).collect();
    let rep = verify_proper(&rec.colors, tri.adjacency(), Some(&subset));
    let coloring = rec.coloring();
    for &(u, v) in &rep.violations {
        println!("violation {u} {v} color {}", rec.colors[u]);
    }
    let palette = coloring.palette_size() as u32;
    let mut outside = 0;
    for (v, &col) in rec.colors.iter().enumerate() {
        if subset[v] && col >= palette {
            println!("out of palette {v} color {col}");
            outside += 1;
        }
    }
    println!("checked {} vertices, {} edges, {} violations", rep.checked_vertices, rep.checked_edges, rep.violations.len());
    if outside > 0 {
        return Err(Failure::Verification(format!("{outside} colors outside the {palette}-color palette")));
    }
    if !rep.ok {
        return Err(Failure::Verification(format!("{} monochromatic edges", rep.violations.len())));
    }
    Ok(())
}
