use pvcolor::fixtures::triangular_lattice_in;
use pvcolor::geometry::{delaunay, delaunay_points, sample_poisson, voronoi_cells};
use pvcolor::percolation::{
    area_statistics, classify_square, classify_square_brute, is_sealed, net_sealed, omega_report, sample_site_process,
    sealed_independence_trial, site_process_components, SitePredicate, Tiling,
};
use pvcolor::{Point, Window};

fn omega_window(big_r: f64) -> Window {
    Window::centered(3.0 * big_r + big_r.ln() + 3.0).unwrap()
}

#[test]
fn lattice_insert_keeps_a_core() {
    let big_r = 10.0;
    let w = omega_window(big_r);
    let tri = delaunay_points(&triangular_lattice_in(&w, 1.0)).unwrap();
    let report = omega_report(&tri, &w, big_r).unwrap();
    assert!(report.omega[0]);
    assert!(report.core_survivors > 300, "{}", report.core_survivors);
    assert_eq!(report.peel_rounds, 0);
    assert!(!report.omega[1]);
}

#[test]
fn poisson_cores_die_out() {
    for seed in 0..5 {
        let big_r = 10.0;
        let ps = sample_poisson(omega_window(big_r), 0.0, 1.0, seed).unwrap();
        let report = omega_report(&delaunay(&ps).unwrap(), &ps.padded_window(), big_r).unwrap();
        assert!(!report.omega[0], "seed {seed}");
    }
}

#[test]
fn emptied_box_is_rare() {
    let big_r = 10.0;
    let tiling = Tiling::new(big_r);
    let c = tiling.m / 2;
    let hole = tiling.box_square(big_r, c, c);
    let ps = sample_poisson(omega_window(big_r), 0.0, 1.0, 4).unwrap();
    let kept: Vec<Point> = ps.points.iter().copied().filter(|p| !hole.contains(p)).collect();
    let tri = delaunay_points(&kept).unwrap();
    let report = omega_report(&tri, &ps.padded_window(), big_r).unwrap();
    assert!(report.omega[2]);
    assert!(report.rare_boxes >= 1);
}

#[test]
fn square_classes_agree_with_brute_force() {
    for seed in 0..8 {
        let ps = sample_poisson(Window::centered(10.0).unwrap(), 3.0, 1.0, 600 + seed).unwrap();
        let tri = delaunay(&ps).unwrap();
        for i in -3..=3 {
            for j in -3..=3 {
                let sq = Window::new(Point::new(2.5 * i as f64, 2.5 * j as f64), 1.1).unwrap();
                assert_eq!(classify_square(&tri, &sq), classify_square_brute(&tri, &sq));
            }
        }
    }
}

#[test]
fn net_condition_implies_exact_sealing() {
    let (mut net_count, mut exact_count) = (0, 0);
    for seed in 0..200 {
        let ps = sample_poisson(Window::centered(6.0).unwrap(), 2.0, 1.0, seed).unwrap();
        let sq = Window::centered(5.0).unwrap();
        let exact = is_sealed(&ps.points, &sq, 2.5).unwrap().sealed;
        let net = net_sealed(&ps.points, &sq, 2.5);
        assert!(exact || !net, "seed {seed}");
        net_count += usize::from(net);
        exact_count += usize::from(exact);
    }
    assert!(net_count > 0 && exact_count > net_count, "{net_count} {exact_count}");
}

#[test]
fn sealed_core_ignores_outside_points() {
    let mut sealed = 0;
    for seed in 0..10 {
        let t = sealed_independence_trial(3.0, seed).unwrap();
        if t.sealed {
            sealed += 1;
            assert!(t.identical, "seed {seed}");
            assert!(t.cells > 100);
        }
    }
    assert!(sealed >= 8);
}

#[test]
fn removal_process_is_subcritical() {
    let pred = SitePredicate::Removal { big_r: 10.0, max_rounds: None };
    let p = sample_site_process(&pred, 50, 50, 1).unwrap();
    let largest = site_process_components(&p).first().copied().unwrap_or(0);
    assert!((largest as f64) < 0.05 * 2500.0, "largest {largest}, open {}", p.open_fraction());
}

#[test]
fn poisson_areas_are_distinct() {
    let ps = sample_poisson(Window::centered(20.0).unwrap(), 3.0, 1.0, 8).unwrap();
    let tri = delaunay(&ps).unwrap();
    let cells = voronoi_cells(&tri, &ps.padded_window()).unwrap();
    let s = area_statistics(&cells, tri.adjacency());
    assert!(!s.degenerate);
    assert!(s.min_gap > 0.0);
    assert!(s.longest_decreasing_path >= 1);
    assert!((s.mean - 1.0).abs() < 0.1, "{}", s.mean);
}
