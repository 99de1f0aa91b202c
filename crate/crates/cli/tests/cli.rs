use std::io::Write;
use std::process::{Command, Output};
use std::str::FromStr;

use rieszwalk_core::Rational;

fn rieszwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rieszwalk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = rieszwalk(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(1).map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

fn row(a: &str, b: &str) -> Vec<String> {
    vec![a.to_owned(), b.to_owned()]
}

#[test]
fn moments_examples() {
    let out = stdout_ok(&["moments", "--max", "20", "--variant", "mu"]);
    assert!(out.starts_with("j,moment\n"));
    let r = rows(&out);
    assert_eq!(r.len(), 21);
    for expected in [row("4", "1/2"), row("12", "1/4"), row("20", "1/4")] {
        assert!(r.contains(&expected), "{expected:?}");
    }
    assert_eq!(rows(&stdout_ok(&["moments", "--max", "0"])), [row("0", "1")]);
    assert!(rows(&stdout_ok(&["moments", "--max", "64"])).contains(&row("44", "1/8")));
}

#[test]
fn verblunsky_examples() {
    let r = rows(&stdout_ok(&["verblunsky", "--count", "4", "--method", "ansatz"]));
    let alphas: Vec<&str> = r.iter().map(|x| x[1].as_str()).collect();
    assert_eq!(alphas, ["1/2", "-1/3", "5/8", "-1/13"]);
    assert_eq!(rows(&stdout_ok(&["verblunsky", "--count", "1", "--method", "schur"])), [row("0", "1/2")]);

    let out = rieszwalk(&["verblunsky", "--count", "512", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let r = rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(r.len(), 512);
    assert!(r.iter().all(|x| x[3] == "true" && x[1] == x[2]));

    let mu = rows(&stdout_ok(&["verblunsky", "--count", "3", "--variant", "mu"]));
    assert_eq!(mu.iter().map(|x| x[0].as_str()).collect::<Vec<_>>(), ["3", "7", "11"]);
}

#[test]
fn backbone_and_limits() {
    let r = rows(&stdout_ok(&["backbone", "--count", "17"]));
    assert_eq!(r.last(), Some(&row("17", "141")));
    assert_eq!(rows(&stdout_ok(&["backbone", "--count", "1"])), [row("1", "13")]);
    let values: Vec<String> = rows(&stdout_ok(&["limits", "--count", "1"])).into_iter().map(|x| x[2].clone()).collect();
    assert!(values.contains(&"2/3".to_owned()));
    assert!(values.contains(&"-2/9".to_owned()));
}

fn distribution(coin: &str, steps: usize) -> Vec<(usize, f64, f64)> {
    rows(&stdout_ok(&["walk", "--coin", coin, "--steps", &steps.to_string()]))
        .into_iter()
        .map(|x| (x[0].parse().unwrap(), x[1].parse().unwrap(), x[2].parse().unwrap()))
        .collect()
}

#[test]
fn walk_examples() {
    let d = distribution("hadamard", 1);
    assert_eq!(d.len(), 2);
    assert_eq!((d[0].0, d[0].1), (0, 0.0));
    assert_eq!((d[1].0, d[1].1), (1, 1.0));
    assert!(d.iter().all(|&(_, _, p)| (p - 0.5).abs() <= 1e-15));

    let d = distribution("riesz", 0);
    assert_eq!(d, [(0, 0.0, 1.0)]);

    let d = distribution("riesz", 800);
    assert_eq!(d.len(), 801);
    let total: f64 = d.iter().map(|x| x.2).sum();
    assert!((total - 1.0).abs() <= 1e-10, "total {total}");
}

#[test]
fn walk_header_and_norm_trace() {
    let out = stdout_ok(&["walk", "--coin", "riesz", "--steps", "3"]);
    assert!(out.starts_with("site,x_over_n,probability,density\n"));
    let trace = rows(&stdout_ok(&["walk", "--coin", "hadamard", "--steps", "50", "--emit", "norm-trace"]));
    assert_eq!(trace.len(), 51);
    assert!(trace.iter().all(|x| (x[1].parse::<f64>().unwrap() - 1.0).abs() <= 1e-12));
}

#[test]
fn first_return_examples() {
    let r = rows(&stdout_ok(&["first-return", "--coin", "riesz", "--max", "4", "--method", "exact"]));
    assert_eq!(r[3], ["4", "1/2", "1/4"]);
    let r = rows(&stdout_ok(&["first-return", "--coin", "riesz", "--max", "2"]));
    assert_eq!(r.len(), 2);
    assert!(r.iter().all(|x| x[1] == "0"));

    let r = rows(&stdout_ok(&["first-return", "--coin", "hadamard", "--max", "70", "--method", "numeric"]));
    assert_eq!(r.len(), 70);
    let first: f64 = r[0][1].parse().unwrap();
    assert!((first - 0.5f64.sqrt()).abs() <= 1e-15);

    let out = rieszwalk(&["first-return", "--coin", "riesz", "--max", "200", "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let r = rows(&String::from_utf8(out.stdout).unwrap());
    assert!(r.iter().all(|x| x[4].parse::<f64>().unwrap() <= 1e-8));
}

#[test]
fn exact_hadamard_is_a_usage_error() {
    let out = rieszwalk(&["first-return", "--coin", "hadamard", "--max", "5", "--method", "exact"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(rieszwalk(&["moments", "--max", "-1"]).status.code(), Some(2));
    assert_eq!(rieszwalk(&["walk", "--coin", "grover", "--steps", "1"]).status.code(), Some(2));
    assert_eq!(rieszwalk(&["verblunsky", "--count", "3", "--method", "guess"]).status.code(), Some(2));
}

#[test]
fn coin_files() {
    let h = "0.7071067811865476,0 0.7071067811865476,0 0.7071067811865476,0 -0.7071067811865476,0";
    let mut good = tempfile::NamedTempFile::new().unwrap();
    writeln!(good, "{h}").unwrap();
    let spec = format!("file:{}", good.path().display());
    assert_eq!(
        stdout_ok(&["walk", "--coin", &spec, "--steps", "40"]),
        stdout_ok(&["walk", "--coin", "hadamard", "--steps", "40"])
    );

    for bad in ["1,0 0,0 0,0", "2,0 0,0 0,0 1,0", "a,b c,d e,f g,h", ""] {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "{bad}").unwrap();
        let spec = format!("file:{}", f.path().display());
        let out = rieszwalk(&["walk", "--coin", &spec, "--steps", "3"]);
        assert_eq!(out.status.code(), Some(2), "{bad:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn json_shape() {
    let out = stdout_ok(&["backbone", "--count", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v, serde_json::json!({"columns": ["i", "value"], "rows": [[1, 13], [2, 53]]}));
    let out = stdout_ok(&["moments", "--max", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"][4], serde_json::json!([4, "1/2"]));
}

#[test]
fn float_flag() {
    let r = rows(&stdout_ok(&["verblunsky", "--count", "2", "--float"]));
    assert_eq!(r, [row("0", "0.5"), row("1", "-0.3333333333333333")]);
}

#[test]
fn rationals_round_trip() {
    for args in [
        &["verblunsky", "--count", "200", "--method", "ansatz"][..],
        &["first-return", "--coin", "riesz", "--max", "120"][..],
        &["moments", "--max", "300", "--variant", "nu"][..],
    ] {
        for line in stdout_ok(args).lines().skip(1) {
            for field in line.split(',').skip(1) {
                let r = Rational::from_str(field).unwrap_or_else(|_| panic!("{field} is not a rational"));
                assert_eq!(r.to_string(), field, "not canonical");
            }
        }
    }
}

#[test]
fn deterministic_output_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut contents = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let path = dir.path().join(name);
        let out = rieszwalk(&["walk", "--coin", "riesz", "--steps", "200", "--output", path.to_str().unwrap()]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
        contents.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(contents[0], contents[1]);
    assert!(!contents[0].contains(&b'\r'));
    // Only the two outputs: no temporary files left behind.
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn cmv_dump_is_row_major() {
    let r = rows(&stdout_ok(&["cmv", "--dim", "12", "--alphas", "riesz"]));
    let keys: Vec<(usize, usize)> = r.iter().map(|x| (x[0].parse().unwrap(), x[1].parse().unwrap())).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    let entry = |i: usize, j: usize| -> f64 {
        r.iter().find(|x| x[0] == i.to_string() && x[1] == j.to_string()).map_or(0.0, |x| x[2].parse().unwrap())
    };
    // The free part of the Riesz sequence: α_0 = α_1 = α_2 = 0, α_3 = 1/2.
    assert_eq!(entry(0, 0), 0.0);
    let mut sum = 0.0;
    for i in 0..12 {
        sum += entry(i, 6).powi(2);
    }
    assert!((sum - 1.0).abs() <= 1e-12, "column norm {sum}");
}
