use std::process::{Command, Output};

fn wbavg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wbavg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn help_succeeds() {
    let o = wbavg(&["rotnum", "--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("--system"));
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(wbavg(&["rotnum", "--system", "nosuch"]).status.code(), Some(2));
    assert_eq!(wbavg(&["rotnum", "--system", "standard", "--ic", "1,x"]).status.code(), Some(2));
    assert_eq!(wbavg(&["lyapunov", "--system", "vdp"]).status.code(), Some(2));
    assert_eq!(wbavg(&["rotnum"]).status.code(), Some(2));
}

#[test]
fn numerical_failures_exit_3() {
    // starting on the large primary
    let o = wbavg(&["rotnum", "--system", "threebody", "--ic=0.9,0", "--n", "10"]);
    assert_eq!(o.status.code(), Some(3));
    // a chaotic orbit is not a circle
    let o = wbavg(&["rotnum", "--system", "standard", "--ic", "3.14159,1.65", "--n", "20000"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn torus_json_carries_config_and_rotation_vector() {
    let o = wbavg(&["rotnum", "--system", "torus2d", "--n", "20000", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["config"]["n"], 20000);
    let rho1 = v["result"]["rho1"].as_f64().unwrap();
    let rho2 = v["result"]["rho2"].as_f64().unwrap();
    assert!((rho1 - 0.72504).abs() < 1e-4 && (rho2 - 0.90067).abs() < 1e-4, "{rho1} {rho2}");
    assert_eq!(v["result"]["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn dd_output_keeps_extra_digits() {
    let o = wbavg(&["rotnum", "--system", "standard", "--n", "20000", "--precision", "dd"]);
    let text = stdout(&o);
    let rho = text.lines().find_map(|l| l.strip_prefix("# rho: ")).unwrap();
    assert!(rho.trim_end_matches(|c: char| c != 'e').len() > 25, "{rho}");
}

#[test]
fn replay_reproduces_output() {
    let dir = std::env::temp_dir().join(format!("wbavg-replay-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let first = dir.join("first.csv");
    let o = wbavg(&["fourier", "--system", "standard", "--n", "4000", "--kmax", "8", "--out", first.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let again = wbavg(&["replay", first.to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(0));
    assert_eq!(stdout(&again), std::fs::read_to_string(&first).unwrap());
    let json = dir.join("first.json");
    wbavg(&["replay", first.to_str().unwrap(), "--format", "json", "--out", json.to_str().unwrap()]);
    let from_json = wbavg(&["replay", json.to_str().unwrap()]);
    assert_eq!(stdout(&from_json), stdout(&again));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn convergence_reports_slopes() {
    let o = wbavg(&[
        "convergence", "--system", "torus2d", "--grid", "256,512,1024,2048,4096", "--kernels", "equal,exp",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("# slope_equal: "), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("exp,")).count(), 5);
}
