use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_modcrown"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).to_string_lossy().into_owned()
}

fn summary(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON summary on stdout")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn spherical_limits_pass_on_so13() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("sph.csv");
    let out = run(&[
        "spherical-asymptotics",
        "--algebra",
        "so(1,3)",
        "--lambda",
        "i,2i,0.5",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(out_path).unwrap();
    assert!(csv.starts_with("# command = spherical-asymptotics\n"));
    assert!(csv.contains("# tol = 0.001"));
    // header plus 3 λ × 6 ε rows
    assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 19);
}

#[test]
fn lambda_rho_gives_constant_ones() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("rho.csv");
    let out =
        run(&["spherical-asymptotics", "--algebra", "so(1,3)", "--lambda", "1", "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let csv = std::fs::read_to_string(out_path).unwrap();
    for line in csv.lines().filter(|l| !l.starts_with('#')).skip(1) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!((cols[4], cols[5]), (1.0, 0.0));
    }
}

#[test]
fn parameter_errors_exit_2() {
    assert_eq!(code(&run(&["spherical-asymptotics", "--algebra", "so(1,3)", "--lambda", "2x"])), 2);
    assert_eq!(code(&run(&["spherical-asymptotics", "--algebra", "so(3,1)", "--lambda", "i"])), 2);
    assert_eq!(code(&run(&["laplace", "--measure", "cauchy:1"])), 2);
    assert_eq!(code(&run(&["sl2", "--s", "3"])), 2);
    assert_eq!(code(&run(&["sl2", "--s", "2", "--x", "3", "--w", "3i"])), 2);
    assert_eq!(code(&run(&["desitter", "--x", "0,2,0", "--samples", "10"])), 2);
    assert_eq!(code(&run(&["kms-lab", "--model", "/nonexistent.json"])), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
}

#[test]
fn laplace_regimes() {
    let out = run(&["laplace", "--measure", "power:1", "--expect-regime", "log", "--expect-constant", "1"]);
    assert_eq!(code(&out), 0);
    let out = run(&["laplace", "--measure", "power:0.5", "--expect-constant", "1.7724538509055159", "--tol", "1e-6"]);
    assert_eq!(code(&out), 0);
    let out = run(&["laplace", "--measure", "stretched:1", "--expect-regime", "none"]);
    assert_eq!(code(&out), 0);
    let s = summary(&out);
    assert_eq!(s["rows"][0]["observed"], false);
    assert_eq!(code(&run(&["laplace", "--measure", "power:1", "--expect-regime", "power"])), 1);
}

#[test]
fn kms_lab_models() {
    assert_eq!(code(&run(&["kms-lab", "--model", &data("two_point.json")])), 0);
    assert_eq!(code(&run(&["kms-lab", "--model", &data("two_point.json"), "--samples", "100"])), 0);
    let dir = tempfile::tempdir().unwrap();
    let ones =
        write(dir.path(), "ones.json", r#"{"points":[-0.5,0.5],"weights":[1,1],"vector":{"re":[1,1],"im":[0,0]}}"#);
    let out = run(&["kms-lab", "--model", &ones]);
    assert_eq!(code(&out), 1);
    assert_eq!(summary(&out)["rows"][0]["observed"], false);
    let delta0 = write(dir.path(), "delta0.json", r#"{"points":[0],"weights":[1],"vector":{"re":[1],"im":[0]}}"#);
    assert_eq!(code(&run(&["kms-lab", "--model", &delta0])), 0);
}

#[test]
fn sl2_relation_and_sign_control() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("path.csv");
    let out = run(&["sl2", "--s", "2", "--x", "1", "--w", "3i", "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let csv = std::fs::read_to_string(out_path).unwrap();
    let rows: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "theta,coeff_re,coeff_im,point_re,point_im,pairing_re,pairing_im");
    assert_eq!(rows.len(), 18);
    assert_eq!(code(&run(&["sl2", "--s", "2", "--x", "1", "--w", "3i", "--sign-flip"])), 1);
}

#[test]
fn desitter_slopes_pass() {
    let out = run(&["desitter", "--samples", "200"]);
    assert_eq!(code(&out), 0);
    let s = summary(&out);
    let slope = s["rows"][1]["observed"].as_f64().unwrap();
    assert!((slope - 0.5f64.cos()).abs() < 1e-4);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for threads in ["1", "4"] {
        let p = dir.path().join(format!("cloud{threads}.csv"));
        let out = bin()
            .env("MODCROWN_THREADS", threads)
            .args(["desitter", "--n", "3", "--samples", "300", "--seed", "7", "--out", p.to_str().unwrap()])
            .output()
            .unwrap();
        assert_eq!(code(&out), 0);
        files.push((std::fs::read(&p).unwrap(), out.stdout));
    }
    assert_eq!(files[0], files[1]);
    let other = dir.path().join("seed8.csv");
    run(&["desitter", "--n", "3", "--samples", "300", "--seed", "8", "--out", other.to_str().unwrap()]);
    assert_ne!(std::fs::read(other).unwrap(), files[0].0);
}

#[test]
fn invalid_thread_count_exits_2() {
    let out = bin().env("MODCROWN_THREADS", "many").args(["sl2", "--s", "2"]).output().unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn config_supplies_missing_flags() {
    let dir = tempfile::tempdir().unwrap();
    let toml = write(dir.path(), "run.toml", "s = 2\nx = 1.0\nw = \"3i\"\nsign_flip = true\n");
    assert_eq!(code(&run(&["--config", &toml, "sl2"])), 1);
    let json = write(dir.path(), "run.json", r#"{"algebra": "so(1,3)", "lambda": ["i", "0.5"], "tol": 1e-3}"#);
    let out = run(&["--config", &json, "spherical-asymptotics"]);
    assert_eq!(code(&out), 0);
    assert_eq!(summary(&out)["rows"].as_array().unwrap().len(), 2);
    // the command line overrides the file
    let out = run(&["--config", &json, "spherical-asymptotics", "--lambda", "i"]);
    assert_eq!(summary(&out)["rows"].as_array().unwrap().len(), 1);
}
