use serde_json::json;

use pvcolor::chromatics::det6;
use pvcolor::geometry::{delaunay, sample_poisson, voronoi_cells, Window};
use pvcolor::io::{CsvTable, ExperimentSummary};
use pvcolor::percolation::{
    area_statistics, core_components, long_edge_experiment, omega_experiment, p0_threshold, peel_round_components,
    predecessor_radii, restricted_core_experiment, sample_site_process, sealed_probability_experiment,
    site_process_components, Estimate, RadiusSurvival, SitePredicate, HISTOGRAM_BINS, HISTOGRAM_MAX,
};

use crate::config::{Experiment, ExperimentCmd, SiteKind};
use crate::run::{Failure, Outcome, Outputs};

fn summary(name: &str, params: serde_json::Value, e: Option<&Estimate>, bound: Option<f64>, details: serde_json::Value) -> ExperimentSummary {
    ExperimentSummary {
        experiment: name.into(),
        params,
        estimate: e.map(|e| e.p),
        ci: e.map(|e| [e.lo, e.hi]),
        analytic_bound: bound,
        details,
    }
}

fn nonempty(name: &str, grid: &[f64]) -> Outcome {
    if grid.is_empty() {
        return Err(Failure::Usage(format!("{name} needs at least one value")));
    }
    Ok(())
}

pub fn run(cmd: &ExperimentCmd) -> Outcome {
    let out = Outputs::new(&cmd.out)?;
    let base = cmd.seed_base;
    match &cmd.kind {
        Experiment::Sealed { r_grid, alpha_grid, trials } => {
            nonempty("--r-grid", r_grid)?;
            nonempty("--alpha-grid", alpha_grid)?;
            let mut t = CsvTable::new(&["R", "alpha", "seed", "sealed", "points"]);
            let mut sums = Vec::new();
            for &r in r_grid {
                for &a in alpha_grid {
                    let e = sealed_probability_experiment(r, a, *trials, base)?;
                    for row in &e.rows {
                        t.row(&[r.to_string(), a.to_string(), row.seed.to_string(), row.sealed.to_string(), row.points.to_string()])?;
                    }
                    println!("R={r} alpha={a}: not sealed {}/{} bound {:.3e}", e.estimate.successes, e.estimate.trials, e.analytic_bound);
                    sums.push(summary(
                        "sealed",
                        json!({"R": r, "alpha": a, "trials": trials, "seedBase": base}),
                        Some(&e.estimate),
                        Some(e.analytic_bound),
                        json!({"consistent": e.consistent, "confidence": 0.99}),
                    ));
                }
            }
            out.text("sealed.csv", &t.finish())?;
            out.json("sealed.json", &sums)
        }
        Experiment::LongEdge { rho, ell_grid, trials } => {
            nonempty("--ell-grid", ell_grid)?;
            let mut t = CsvTable::new(&["rho", "ell", "seed", "longEdges", "longest"]);
            let mut sums = Vec::new();
            for &ell in ell_grid {
                let e = long_edge_experiment(*rho, ell, *trials, base)?;
                for row in &e.rows {
                    t.row(&[rho.to_string(), ell.to_string(), row.seed.to_string(), row.long_edges.to_string(), row.longest.to_string()])?;
                }
                println!("rho={rho} ell={ell}: {}/{} bound {:.3e}", e.estimate.successes, e.estimate.trials, e.analytic_bound);
                sums.push(summary(
                    "long-edge",
                    json!({"rho": rho, "ell": ell, "pad": e.pad, "trials": trials, "seedBase": base}),
                    Some(&e.estimate),
                    Some(e.analytic_bound),
                    json!({"vacuous": e.vacuous, "consistent": e.consistent, "confidence": 0.99}),
                ));
            }
            out.text("long-edge.csv", &t.finish())?;
            out.json("long-edge.json", &sums)
        }
        Experiment::Omega { r_grid, trials } => {
            nonempty("--r-grid", r_grid)?;
            let e = omega_experiment(r_grid, *trials, base)?;
            let mut t = CsvTable::new(&[
                "R", "seed", "omega0", "omega1", "omega2", "omega3", "omega4", "longEdges", "rareBoxes", "heavyBoxes",
                "annulusCount", "coreSurvivors",
            ]);
            for row in &e.rows {
                let mut f = vec![row.big_r.to_string(), row.seed.to_string()];
                f.extend(row.omega.iter().map(|b| u8::from(*b).to_string()));
                f.extend([row.long_edges, row.rare_boxes, row.heavy_boxes, row.annulus_count, row.core_survivors].map(|x| x.to_string()));
                t.row(&f)?;
            }
            let mut sums = Vec::new();
            for ((r, tiling), est) in e.r_grid.iter().zip(&e.tilings).zip(&e.estimates) {
                for (i, es) in est.iter().enumerate() {
                    sums.push(summary(
                        "omega",
                        json!({"R": r, "event": i, "trials": trials, "seedBase": base}),
                        Some(es),
                        None,
                        json!({"tiling": tiling, "confidence": 0.95}),
                    ));
                }
                let ps: Vec<String> = est.iter().map(|e| format!("{:.3}", e.p)).collect();
                println!("R={r}: P(omega_0..4) = [{}]", ps.join(", "));
            }
            out.text("omega.csv", &t.finish())?;
            out.json("omega.json", &sums)
        }
        Experiment::Core { r_grid, max_rounds, trials } => {
            nonempty("--r-grid", r_grid)?;
            let mut t = CsvTable::new(&["R", "seed", "survivors"]);
            let mut sums = Vec::new();
            for &r in r_grid {
                let e = restricted_core_experiment(r, *trials, *max_rounds, base)?;
                for (seed, n) in &e.rows {
                    t.row(&[r.to_string(), seed.to_string(), n.to_string()])?;
                }
                println!("R={r}: P(core meets Q(0,R)) = {:.3}", e.estimate.p);
                sums.push(summary(
                    "core",
                    json!({"R": r, "maxRounds": max_rounds, "trials": trials, "seedBase": base}),
                    Some(&e.estimate),
                    None,
                    json!({"confidence": 0.95}),
                ));
            }
            out.text("core.csv", &t.finish())?;
            out.json("core.json", &sums)
        }
        Experiment::Sites { predicate, r_grid, max_rounds, lo, hi, cols, rows, trials } => {
            nonempty("--r-grid", r_grid)?;
            let mut t = CsvTable::new(&["R", "seed", "openFraction", "clusters", "largestCluster"]);
            let mut sums = Vec::new();
            for &r in r_grid {
                let pred = match predicate {
                    SiteKind::Removal => SitePredicate::Removal { big_r: r, max_rounds: *max_rounds },
                    SiteKind::Area => SitePredicate::Area { big_r: r, lo: *lo, hi: *hi },
                };
                let (mut open, mut largest) = (0.0, 0.0);
                for i in 0..*trials {
                    let seed = base.wrapping_add(i);
                    let p = sample_site_process(&pred, *cols, *rows, seed)?;
                    let sizes = site_process_components(&p);
                    let big = sizes.first().copied().unwrap_or(0) as f64 / (cols * rows) as f64;
                    open += p.open_fraction();
                    largest += big;
                    t.row(&[r.to_string(), seed.to_string(), p.open_fraction().to_string(), sizes.len().to_string(), big.to_string()])?;
                }
                let n = (*trials).max(1) as f64;
                let k = pred.dependency_range();
                println!("R={r}: open fraction {:.4}, largest cluster fraction {:.4}, k={k}", open / n, largest / n);
                sums.push(summary(
                    "sites",
                    json!({"predicate": pred, "cols": cols, "rows": rows, "trials": trials, "seedBase": base}),
                    None,
                    None,
                    json!({
                        "description": pred.describe(),
                        "dependencyRange": k,
                        "p0Threshold": p0_threshold(k),
                        "meanOpenFraction": open / n,
                        "meanLargestClusterFraction": largest / n,
                    }),
                ));
            }
            out.text("sites.csv", &t.finish())?;
            out.json("sites.json", &sums)
        }
        Experiment::Explore { half_side, pad, trials } => explore(&out, *half_side, *pad, *trials, base),
    }
}

fn explore(out: &Outputs, half_side: f64, pad: f64, trials: u64, base: u64) -> Outcome {
    let mut t = CsvTable::new(&[
        "seed", "vertices", "largestAfter1", "largestAfter2", "fourCoreAlive", "fourCoreLargest", "fiveCoreAlive",
        "radiusSamples", "maxRadius", "minAreaGap", "longestDecreasingPath",
    ]);
    let mut radii = Vec::new();
    let mut hist = vec![0u64; HISTOGRAM_BINS];
    let mut overflow = 0;
    let mut min_gap = f64::INFINITY;
    for i in 0..trials {
        let seed = base.wrapping_add(i);
        let ps = sample_poisson(Window::centered(half_side)?, pad, 1.0, seed)?;
        let tri = delaunay(&ps)?;
        let rounds = peel_round_components(&tri, 5, &[1, 2]);
        let four = core_components(&tri, 3);
        let five = core_components(&tri, 4);
        let d = det6(&tri, &ps.padded_window())?;
        let ok = d.reliable()?;
        let inner: Vec<usize> = (0..tri.len()).filter(|&v| ok[v] && ps.sample_window.contains(&tri.vertices()[v])).collect();
        let r = predecessor_radii(&d.dag, tri.vertices(), &inner);
        let cells = voronoi_cells(&tri, &ps.padded_window())?;
        let st = area_statistics(&cells, tri.adjacency());
        for (h, c) in hist.iter_mut().zip(&st.histogram) {
            *h += c;
        }
        overflow += st.overflow;
        min_gap = min_gap.min(st.min_gap);
        t.row(&[
            seed.to_string(),
            tri.len().to_string(),
            rounds[0].largest.to_string(),
            rounds[1].largest.to_string(),
            four.alive.to_string(),
            four.largest.to_string(),
            five.alive.to_string(),
            r.len().to_string(),
            r.iter().copied().fold(0.0, f64::max).to_string(),
            st.min_gap.to_string(),
            st.longest_decreasing_path.to_string(),
        ])?;
        radii.extend(r);
    }
    let surv = RadiusSurvival::from_radii(&radii, 0.5);
    let first = hist.iter().position(|&c| c > 0);
    let last = hist.iter().rposition(|&c| c > 0);
    let holes = match (first, last) {
        (Some(a), Some(b)) => hist[a..=b].iter().filter(|&&c| c == 0).count(),
        _ => 0,
    };
    println!("log-survival slope {:.3} over {} radii; empty interior area bins {holes}", surv.log_slope, surv.samples);
    out.text("explore.csv", &t.finish())?;
    out.json(
        "explore.json",
        &[summary(
            "explore",
            json!({"halfSide": half_side, "pad": pad, "trials": trials, "seedBase": base}),
            None,
            None,
            json!({
                "radiusSurvival": surv,
                "areaHistogram": {"bins": HISTOGRAM_BINS, "max": HISTOGRAM_MAX, "counts": hist, "overflow": overflow, "emptyInteriorBins": holes},
                "minAreaGap": min_gap,
            }),
        )],
    )
}
