use std::path::PathBuf;
use std::process::{Command, Output};

use polarity_core::harmonic::{ConstructionTrace, Element};
use polarity_core::Rational;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polarity-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("polarity-lab-{}-{name}", std::process::id()));
    p
}

/// Value of attribute `name` on the element with the given id.
fn attr(svg: &str, id: &str, name: &str) -> Option<String> {
    let line = svg.lines().find(|l| l.contains(&format!(r#" id="{id}""#)))?;
    let key = format!(r#" {name}=""#);
    let rest = &line[line.find(&key)? + key.len()..];
    Some(rest[..rest.find('"')?].to_string())
}

#[test]
fn verify_standard_triangle() {
    let o = run(&["verify", "--samples", "100", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    for pair in ["frame=harmonic", "harmonic=edges", "frame=algebraic", "frame=convex"] {
        assert!(text.contains(&format!("point {pair} 100/100")), "{text}");
    }
}

#[test]
fn verify_scene_with_hyperplane() {
    let o = run(&["verify", "--scene", &fixture("triangle.scene"), "--samples", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    // p and q are generic; the vertices are not.
    assert!(text.contains("30 sampled, 2 from scene"), "{text}");
    assert!(text.contains("point frame=convex 32/32"));
    assert!(text.contains("hyperplane frame=algebraic 1/1"));
}

#[test]
fn verify_in_space() {
    for mode in ["exact", "float"] {
        let o = run(&["verify", "--scene", &fixture("tetrahedron.scene"), "--samples", "50", "--mode", mode]);
        assert_eq!(o.status.code(), Some(0), "{mode}: {}", stdout(&o));
        assert!(stdout(&o).contains("in P^3"));
        assert!(stdout(&o).contains("point frame=convex 50/50"));
    }
}

#[test]
fn verify_reports_rejections() {
    let o = run(&["verify", "--scene", &fixture("side.scene"), "--samples", "10", "--seed", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let line = text.lines().nth(1).unwrap();
    assert!(line.starts_with("points: 10 sampled, 0 from scene, "), "{line}");
    let rejected: usize = line.rsplit(", ").next().unwrap().split(' ').next().unwrap().parse().unwrap();
    // The three vertices and the side point.
    assert!(rejected >= 4, "{line}");
}

#[test]
fn same_seed_same_bytes() {
    let a = run(&["verify", "--seed", "9", "--samples", "40"]);
    let b = run(&["verify", "--seed", "9", "--samples", "40"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "--seed", "10", "--samples", "40"]);
    assert_eq!(c.status.code(), Some(0));
    for which in ["harmonic", "ruler", "circumconic"] {
        let a = run(&["figure", "--which", which]);
        let b = run(&["figure", "--which", which]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{which}");
    }
}

#[test]
fn parse_errors_exit_2() {
    let o = run(&["verify", "--scene", &fixture("broken.scene")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let o = run(&["verify", "--scene", "/nonexistent/scene"]);
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["figure", "--scene", &fixture("space.scene")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unsupported dimension 3"));

    // Exact orbits are limited to simplices.
    let o = run(&["orbit", "--scene", &fixture("bodies.scene"), "--body", "quad", "--mode", "exact"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn harmonic_figure_replays() {
    let path = tmp("harmonic.svg");
    let o = run(&["figure", "--scene", &fixture("triangle.scene"), "--which", "harmonic", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let svg = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(svg.contains(r#"version="1.1""#));

    let start = svg.find("<metadata id=\"trace\">\n").unwrap() + "<metadata id=\"trace\">\n".len();
    let end = svg.find("</metadata>").unwrap();
    let trace: ConstructionTrace<Rational> = svg[start..end].parse().unwrap();
    for (label, el) in trace.replay().unwrap() {
        let expected = match el {
            Element::Point(p) => p.to_string(),
            Element::Line(h) => h.to_string(),
        };
        if let Some(found) = attr(&svg, &label, "data-coords") {
            assert_eq!(found, expected, "{label}");
        }
    }
    // Fourth harmonics of p = [1:1:1]: x_i = 0, x_j = -1, x_k = 1 up to sign.
    assert_eq!(attr(&svg, "v1", "data-coords").unwrap(), "[0:1:-1]");
    assert_eq!(attr(&svg, "v2", "data-coords").unwrap(), "[1:0:-1]");
    assert_eq!(attr(&svg, "v3", "data-coords").unwrap(), "[1:-1:0]");
}

#[test]
fn ruler_figure_numbers_lines() {
    let o = run(&["figure", "--which", "ruler"]);
    let svg = stdout(&o);
    for k in 1..=4 {
        assert_eq!(attr(&svg, &format!("line{k}"), "data-fig").unwrap(), k.to_string());
    }
    assert!(svg.contains("fig=1") && svg.contains("fig=4"));
}

#[test]
fn circumconic_figure() {
    let o = run(&["figure", "--which", "circumconic", "--scene", &fixture("triangle.scene")]);
    assert_eq!(o.status.code(), Some(0));
    let svg = stdout(&o);
    assert!(svg.contains(r#"<polygon id="conic""#));
    assert_eq!(svg.matches("is tangent to the conic at").count(), 3);
    assert_eq!(svg.matches(": yes").count(), 3);
}

#[test]
fn santalo_of_triangle_is_centroid() {
    let o = run(&["santalo", "--scene", &fixture("bodies.scene"), "--body", "triangle"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let line = text.lines().find(|l| l.starts_with("santalo point:")).unwrap();
    let x: Vec<f64> = line[14..].split_whitespace().map(|t| t.parse().unwrap()).collect();
    assert!((x[0] - 1.0).abs() < 1e-8 && (x[1] - 1.0).abs() < 1e-8, "{line}");
    assert!(text.contains("iterations: "));

    let o = run(&["santalo", "--scene", &fixture("bodies.scene"), "--body", "quad", "--start", "1/2,1/2"]);
    assert_eq!(o.status.code(), Some(0));
}

fn displacements(csv: &str) -> Vec<f64> {
    csv.lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect()
}

#[test]
fn quadrilateral_orbit_moves() {
    let path = tmp("quad.csv");
    let o = run(&[
        "orbit", "--scene", &fixture("bodies.scene"), "--body", "quad", "--steps", "20", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(csv.lines().next(), Some("step,x,y,displacement"));
    let d = displacements(&csv);
    assert_eq!(d.len(), 21);
    assert_eq!(d[0], 0.0);
    assert!(d[1] > 1e-3, "{csv}");
}

#[test]
fn square_orbit_from_centre_is_fixed() {
    let o = run(&["orbit", "--scene", &fixture("bodies.scene"), "--body", "square", "--start", "0,0", "--steps", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(displacements(&stdout(&o)).iter().all(|d| *d < 1e-8));
}

#[test]
fn exact_triangle_orbit() {
    let o = run(&["orbit", "--scene", &fixture("bodies.scene"), "--body", "triangle", "--mode", "exact", "--start", "1/3,2", "--steps", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(displacements(&stdout(&o)).iter().all(|d| *d == 0.0));
}
