use pvcolor::chromatics::{det6, verify_proper};
use pvcolor::geometry::{delaunay, sample_poisson};
use pvcolor::io::{coloring_csv, levels_csv, parse_coloring_csv, parse_levels_csv, TriangulationJson};
use pvcolor::render::{render_svg, Overlays, RenderSpec};
use pvcolor::Window;

#[test]
fn det6_survives_a_file_round_trip() {
    let ps = sample_poisson(Window::centered(15.0).unwrap(), 5.0, 1.0, 21).unwrap();
    let tri = delaunay(&ps).unwrap();
    let d = det6(&tri, &ps.padded_window()).unwrap();

    let json = serde_json::to_string(&TriangulationJson::of(&tri)).unwrap();
    let back: TriangulationJson = serde_json::from_str(&json).unwrap();
    let tri2 = back.to_triangulation().unwrap();
    assert_eq!(tri2.adjacency(), tri.adjacency());

    let csv = coloring_csv(&d.coloring, &d.contaminated(), 21).unwrap();
    let rec = parse_coloring_csv(&csv).unwrap();
    assert_eq!(rec.coloring(), d.coloring);
    assert_eq!(rec.header.seed, 21);
    let clean: Vec<bool> = rec.contaminated.iter().map(|c| !c).collect();
    let report = verify_proper(&rec.colors, tri2.adjacency(), Some(&clean));
    assert!(report.ok && report.checked_vertices > 0);

    assert_eq!(parse_levels_csv(&levels_csv(&d.levels.levels)).unwrap(), d.levels.levels);
}

#[test]
fn rendered_map_has_one_polygon_per_visible_cell() {
    let ps = sample_poisson(Window::centered(6.0).unwrap(), 3.0, 1.0, 2).unwrap();
    let tri = delaunay(&ps).unwrap();
    let d = det6(&tri, &ps.padded_window()).unwrap();
    let view = Window::centered(6.0).unwrap();
    let visible = ps.points.iter().filter(|p| view.contains(p)).count();
    let spec = RenderSpec::new(view);
    let svg = render_svg(&ps.points, &d.cells, &d.coloring.colors, &spec, Overlays::default()).unwrap();
    assert_eq!(svg.matches("<polygon ").count(), visible);
    let again = render_svg(&ps.points, &d.cells, &d.coloring.colors, &spec, Overlays::default()).unwrap();
    assert_eq!(svg, again);
}
