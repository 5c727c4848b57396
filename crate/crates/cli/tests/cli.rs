use std::io::Write;
use std::process::{Command, Stdio};

use packdens_core::generators::{half_sqrt3_under, hex_padding};
use packdens_core::pointfile::parse_point_file;
use packdens_core::render::heat_color;
use packdens_core::{Scalar, DENSITY_BOUND};
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn packdens(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_packdens"))
        .args(args)
        .env("PACKDENS_THREADS", "1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn report(stdout: &str) -> Value {
    serde_json::from_str(stdout).unwrap()
}

fn number(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn generate_examples() {
    let hex = packdens(&["generate", "--kind", "hex", "--spacing", "2", "--window", "0,0,10,10"], "");
    assert_eq!(hex.code, 0);
    assert!(parse_point_file(&hex.stdout).unwrap().points.len() >= 25);

    let square = packdens(&["generate", "--kind", "square", "--spacing", "2", "--window", "0,0,8,8"], "");
    assert_eq!(square.code, 0);
    assert_eq!(parse_point_file(&square.stdout).unwrap().points.len(), 25);

    assert_eq!(packdens(&["generate", "--kind", "hex", "--spacing", "1"], "").code, 2);
    assert_eq!(packdens(&["generate", "--kind", "hex", "--window", "0,0,3,3"], "").code, 2);
    assert_eq!(packdens(&["generate", "--kind", "kite"], "").code, 2);
    assert_eq!(packdens(&["generate", "--kind", "perturbed-hex", "--perturb", "1/2"], "").code, 2);
}

#[test]
fn generate_then_certify_round_trips() {
    for kind in ["hex", "square"] {
        let g = packdens(&["generate", "--kind", kind, "--spacing", "2"], "");
        let c = packdens(&["certify"], &g.stdout);
        assert_eq!(c.code, 0, "{kind}: {}", c.stderr);
        let r = report(&c.stdout);
        assert_eq!(r["failed_checks"], Value::Array(vec![]));
        assert_eq!(r["region"], "interior");
        let expected = if kind == "hex" { DENSITY_BOUND } else { std::f64::consts::FRAC_PI_4 };
        assert!((number(&r["overall_density"]) - expected).abs() < 1e-9, "{kind}");
    }
}

#[test]
fn certify_hex_interior_density_window() {
    let g = packdens(&["generate", "--kind", "hex", "--window", "0,0,24,24"], "");
    let r = report(&packdens(&["certify", "--interior-margin", "4"], &g.stdout).stdout);
    let d = number(&r["overall_density"]);
    assert!((0.9069 - 1e-3..=0.90690 + 1e-12).contains(&d), "{d}");
    assert_eq!(r["bound_ok"], true);
    assert_eq!(r["bound"], "0.90689968211710892");
}

#[test]
fn report_keys_and_exact_fields() {
    let g = packdens(&["generate", "--kind", "square", "--window", "0,0,12,12"], "");
    let r = report(&packdens(&["certify"], &g.stdout).stdout);
    let keys: Vec<&str> = r.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    for k in [
        "schema_version",
        "n_points",
        "n_inserted",
        "n_triangles",
        "min_pairwise_distance_squared",
        "max_circumradius_squared",
        "max_largest_angle",
        "min_density",
        "max_density",
        "overall_density",
        "bound",
        "lemma1_ok",
        "lemma2_ok",
        "bound_ok",
        "witnesses",
    ] {
        assert!(keys.contains(&k), "missing {k}");
    }
    assert_eq!(r["min_pairwise_distance_squared"], "4");
    assert_eq!(r["max_circumradius_squared"], "2");
    // bound_ok mirrors the overall density against bound + 1e-12.
    assert_eq!(r["bound_ok"], number(&r["overall_density"]) <= DENSITY_BOUND + 1e-12);
    // 17 significant digits.
    let text = packdens(&["certify"], &g.stdout).stdout;
    assert!(text.contains("\"overall_density\": 0.78539816339744828"));
}

#[test]
fn reports_are_byte_identical() {
    let g = packdens(&["generate", "--kind", "dart", "--seed", "7", "--window", "0,0,14,14"], "");
    let a = packdens(&["certify", "--interior-margin", "0"], &g.stdout);
    let b = packdens(&["certify", "--interior-margin", "0"], &g.stdout);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.code, b.code);
}

#[test]
fn close_pair_reports_line_numbers() {
    let r = packdens(&["certify"], "window 0 0 10 10\n# a\n1,1\n\n2,1\n");
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("PairTooClose"), "{}", r.stderr);
    assert!(r.stderr.contains("lines 3 and 5"), "{}", r.stderr);
    let v = packdens(&["validate"], "window 0 0 10 10\n1,1\n9,9\n");
    assert_eq!((v.code, v.stdout.as_str()), (0, "ok: 2 points\n"));
    let bad = packdens(&["validate"], "window 0 0 10 10\n1,1\n9;9\n");
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("line 3"));
    assert_eq!(packdens(&["validate"], "window 0 0 10 10\n1,1\n11,1\n").code, 2);
    assert_eq!(packdens(&["validate", "/nonexistent/points.txt"], "").code, 2);
}

#[test]
fn saturate_output_analyses_clean() {
    let g = packdens(&["generate", "--kind", "dart", "--seed", "3", "--max-points", "10", "--window", "0,0,16,16"], "");
    let s = packdens(&["saturate"], &g.stdout);
    assert_eq!(s.code, 0);
    assert!(s.stdout.contains("# inserted 1: clearance² = "));
    let file = parse_point_file(&s.stdout).unwrap();
    assert!(file.points.len() > 10);
    let a = packdens(&["analyze"], &s.stdout);
    assert_eq!(a.code, 0, "{}", a.stderr);
    let r = report(&a.stdout);
    assert_eq!((r["lemma1_ok"].clone(), r["lemma2_ok"].clone(), r["bound_ok"].clone()), (true.into(), true.into(), true.into()));
    assert_eq!(r["n_inserted"], 0);
}

#[test]
fn analyze_names_the_witness_of_unsaturated_input() {
    let r = packdens(&["analyze"], "window 0 0 10 10\n0,0\n10,0\n0,10\n10,10\n");
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("not saturated: witness (5, 5) with clearance² = 50"), "{}", r.stderr);
    let rep = report(&r.stdout);
    assert_eq!(rep["saturated"], false);
    assert_eq!(rep["witnesses"][0]["x"], "5");
}

#[test]
fn triangulate_writes_edges() {
    let r = packdens(&["triangulate"], "window 0 0 10 10\n0,0\n2,0\n2,2\n0,2\n");
    assert_eq!(r.code, 0);
    let edges: Vec<&str> = r.stdout.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(edges, ["0 1", "0 2", "0 3", "1 2", "2 3"]);
}

/// Centre plus its six hexagonal neighbours, spaced as the generator does.
fn hex_patch() -> String {
    let dx = Scalar::from_int(2) + hex_padding();
    let dy = Scalar::from_int(2) * half_sqrt3_under();
    let half = &dx / &Scalar::from_int(2);
    let c = Scalar::from_int(5);
    let mut text = String::from("window 0 0 10 10\n");
    let pts = [
        (c.clone(), c.clone()),
        (&c + &dx, c.clone()),
        (&c - &dx, c.clone()),
        (&c + &half, &c + &dy),
        (&c - &half, &c + &dy),
        (&c + &half, &c - &dy),
        (&c - &half, &c - &dy),
    ];
    for (x, y) in pts {
        text.push_str(&format!("{x},{y}\n"));
    }
    text
}

fn fills(svg: &str) -> Vec<String> {
    svg.lines()
        .filter(|l| l.starts_with("<polygon"))
        .map(|l| l.split("fill=\"").nth(1).unwrap()[..7].to_string())
        .collect()
}

#[test]
fn render_examples() {
    let hex = packdens(&["render"], &hex_patch());
    assert_eq!(hex.code, 0, "{}", hex.stderr);
    let f = fills(&hex.stdout);
    assert_eq!(f.len(), 6);
    assert!(f.iter().all(|c| *c == heat_color(DENSITY_BOUND)));

    let square = packdens(&["generate", "--kind", "square", "--window", "0,0,8,8"], "");
    let svg = packdens(&["render"], &square.stdout).stdout;
    let f = fills(&svg);
    assert_eq!(f.len(), 32);
    assert!(f.iter().all(|c| *c == heat_color(std::f64::consts::FRAC_PI_4)));

    let again = packdens(&["render"], &square.stdout).stdout;
    assert_eq!(svg, again);
    let bare = packdens(&["render", "--no-heat", "--no-circles", "--circumcircles"], &square.stdout).stdout;
    assert!(!bare.contains("id=\"heat\"") && !bare.contains("id=\"circles\""));
    assert!(bare.contains("id=\"circumcircles\""));

    assert_eq!(packdens(&["render"], "window 0 0 10 10\n1,1\n3,1\n5,1\n").code, 2);
}

#[test]
fn exit_codes_stay_in_contract() {
    for args in [vec!["bogus"], vec!["certify", "--interior-margin", "x"], vec![]] {
        assert_eq!(packdens(&args, "").code, 2, "{args:?}");
    }
    assert_eq!(packdens(&["certify"], "").code, 2);
    assert_eq!(packdens(&["--help"], "").code, 0);
}
