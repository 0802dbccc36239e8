use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn arrival(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrival")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn data_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

fn manifest(text: &str) -> Value {
    serde_json::from_str(text.lines().next().unwrap().strip_prefix("# ").unwrap()).unwrap()
}

fn column(text: &str, name: &str) -> Vec<String> {
    let data = data_lines(text);
    let idx = data[0].split(',').position(|c| c == name).unwrap();
    data[1..].iter().map(|l| l.split(',').nth(idx).unwrap().to_string()).collect()
}

#[test]
fn wavefunction_grid() {
    let out = arrival(&["ho-wavefunction", "--n", "0", "--x-min", "-3", "--x-max", "3", "--steps", "601"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let data = data_lines(&text);
    assert_eq!(data[0], "x,semiclassical,exact,regime,abs_error");
    assert_eq!(data.len(), 602);
    assert!(data[1].starts_with("-3,"));
    assert!(data[601].starts_with("3,"));
    let m = manifest(&text);
    assert_eq!(m["command"], "ho-wavefunction");
    assert_eq!(m["parameters"]["steps"], 601);
    assert_eq!(m["units"]["k"], 2.0);
    assert!(m["timestamp"].is_string() && m["version"].is_string());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(arrival(&["ho-wavefunction", "--n", "1", "--steps", "1"]).status.code(), Some(2));
    assert_eq!(arrival(&["quantize", "--system", "square", "--levels", "3"]).status.code(), Some(2));
    assert_eq!(arrival(&["twomode", "--photons", "4", "--m", "1/2"]).status.code(), Some(2));
    assert_eq!(arrival(&["twomode", "--photons", "4", "--m", "3"]).status.code(), Some(2));
    assert_eq!(arrival(&["--units", "1,0,2", "quantize", "--system", "ho", "--levels", "2"]).status.code(), Some(2));
    assert_eq!(arrival(&["doubleslit", "--d", "0", "--L", "1", "--p0", "1"]).status.code(), Some(2));
    assert_eq!(arrival(&["no-such-verb"]).status.code(), Some(2));
}

#[test]
fn quantize_table() {
    let text = stdout(&arrival(&["quantize", "--system", "ho", "--levels", "10"]));
    let energies = column(&text, "energy");
    assert_eq!(energies.len(), 10);
    assert_eq!(energies[0], "0.5");
    assert_eq!(energies[9], "9.5");
    let spacing = column(&text, "spacing");
    assert_eq!(spacing[0], "");
    assert!(spacing[1..].iter().all(|s| (s.parse::<f64>().unwrap() - 1.0).abs() <= 1e-9));

    let text = stdout(&arrival(&["quantize", "--system", "ho", "--levels", "0"]));
    assert_eq!(data_lines(&text), vec!["n,energy,abs_error,spacing"]);

    let text = stdout(&arrival(&["--units", "1,2,3", "quantize", "--system", "ho", "--levels", "3"]));
    assert_eq!(column(&text, "energy"), vec!["1", "3", "5"]);
}

#[test]
fn photons_at_origin_and_x3() {
    let text = stdout(&arrival(&["ho-photons", "--x", "0", "--n-max", "10"]));
    for (n, (s, e)) in column(&text, "semiclassical").iter().zip(column(&text, "exact")).enumerate() {
        if n % 2 == 1 {
            assert_eq!(s, "0");
            assert!(e.parse::<f64>().unwrap().abs() < 1e-28);
        }
    }
    let text = stdout(&arrival(&["ho-photons", "--x", "3", "--n-max", "24"]));
    let p: Vec<f64> = column(&text, "semiclassical").iter().map(|s| s.parse().unwrap()).collect();
    let minima: Vec<usize> = (1..p.len() - 1).filter(|&i| p[i] < p[i - 1] && p[i] < p[i + 1]).collect();
    assert_eq!(minima, vec![14, 18, 22]);

    let dens = stdout(&arrival(&["ho-photons", "--x", "1", "--n-max", "3"]));
    let prob = stdout(&arrival(&["ho-photons", "--x", "1", "--n-max", "3", "--dx", "0.5"]));
    let a: f64 = column(&dens, "exact")[2].parse().unwrap();
    let b: f64 = column(&prob, "exact")[2].parse().unwrap();
    assert!((b - 0.5 * a).abs() < 1e-11);
}

#[test]
fn twomode_tables() {
    let text = stdout(&arrival(&["twomode", "--photons", "2", "--m", "0"]));
    let m = column(&text, "m");
    let centre = m.iter().position(|v| v == "0").unwrap();
    assert_eq!(column(&text, "exact")[centre], "0");
    assert!(column(&text, "semiclassical")[centre].parse::<f64>().unwrap() < 1e-20);

    let text = stdout(&arrival(&["twomode", "--photons", "18", "--m", "3"]));
    assert_eq!(data_lines(&text).len(), 20);
    let input = stdout(&arrival(&["twomode", "--photons", "5", "--m", "-1/2", "--axis", "input"]));
    assert_eq!(column(&input, "m")[0], "-5/2");
    assert_eq!(manifest(&input)["parameters"]["axis"], "input");
}

#[test]
fn doubleslit_and_calibration_records() {
    let text = stdout(&arrival(&["doubleslit", "--d", "2", "--L", "1000", "--p0", "1", "--F", "1"]));
    assert_eq!(column(&text, "t_plus"), vec!["0.001"]);
    assert_eq!(column(&text, "t_minus"), vec!["-0.001"]);
    let text = stdout(&arrival(&["doubleslit", "--d", "2", "--L", "1000", "--p0", "6.283185307179586"]));
    assert_eq!(column(&text, "x_mod"), vec!["500"]);

    let text = stdout(&arrival(&["calibrate", "--system", "ho", "--amplitude", "1", "--round-trip"]));
    let rows: Vec<&str> = data_lines(&text);
    assert!(rows.contains(&"energy_corrected,1.5"));
    let rt = rows.iter().find(|r| r.starts_with("round_trip_max_rel_error,")).unwrap();
    assert!(rt.split(',').nth(1).unwrap().parse::<f64>().unwrap() <= 1e-10);

    let text = stdout(&arrival(&["calibrate", "--system", "twomode", "--photons", "12", "--round-trip"]));
    let rows = data_lines(&text);
    assert!(rows.contains(&"intensity,6.5"));
    assert!(rows.contains(&"photons,12"));
    assert_eq!(arrival(&["calibrate", "--system", "twomode"]).status.code(), Some(2));
}

#[test]
fn json_output() {
    let out = arrival(&["--format", "json", "quantize", "--system", "ho", "--levels", "3"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let records = doc["records"].as_array().unwrap();
    assert_eq!(records.len(), 3);
    assert_eq!(records[1]["energy"], 1.5);
    assert!(records[0]["spacing"].is_null());
    assert_eq!(doc["manifest"]["command"], "quantize");
}

fn run_to_file(dir: &Path, file: &str, args: &[&str]) -> String {
    let mut full = vec!["--output", file];
    full.extend_from_slice(args);
    let out = Command::new(env!("CARGO_BIN_EXE_arrival")).args(&full).env("OUTPUT_DIR", dir).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    fs::read_to_string(dir.join(file)).unwrap()
}

#[test]
fn rerun_from_manifest_reproduces_data() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["ho-wavefunction", "--n", "2", "--x-min", "-4", "--x-max", "4", "--steps", "257"];
    let first = run_to_file(dir.path(), "a/wf.csv", &args);

    let sidecar: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("a/wf.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(sidecar, manifest(&first));
    let argv: Vec<String> =
        sidecar["argv"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
    let replay: Vec<&str> = argv[1..].iter().map(String::as_str).collect();
    let out = Command::new(env!("CARGO_BIN_EXE_arrival"))
        .args(&replay)
        .env("OUTPUT_DIR", dir.path().join("replay"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let second = fs::read_to_string(dir.path().join("replay/a/wf.csv")).unwrap();
    assert_eq!(data_lines(&first), data_lines(&second));

    let j1 = run_to_file(dir.path(), "t.json", &["--format", "json", "twomode", "--photons", "12", "--m", "1"]);
    let j2 = run_to_file(dir.path(), "u.json", &["--format", "json", "twomode", "--photons", "12", "--m", "1"]);
    let r1: Value = serde_json::from_str(&j1).unwrap();
    let r2: Value = serde_json::from_str(&j2).unwrap();
    assert_eq!(serde_json::to_string(&r1["records"]).unwrap(), serde_json::to_string(&r2["records"]).unwrap());
}
