use std::fs;
use std::process::{Command, Output};

fn stheat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stheat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn convergence_writes_one_csv_per_solver() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tables/conv.csv");
    let o = stheat(&[
        "convergence",
        "--max-level",
        "1",
        "--solver",
        "bs-real,fd",
        "--threads",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("## bs-real") && text.contains("## fd"));
    for name in ["conv_bs-real.csv", "conv_fd.csv"] {
        let csv = fs::read_to_string(dir.path().join("tables").join(name)).unwrap();
        assert_eq!(csv.lines().count(), 3, "{name}");
        assert!(csv.lines().nth(1).unwrap().starts_with("20,"));
    }
    assert!(!out.exists());
}

#[test]
fn single_solver_uses_the_path_as_given() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("conv.csv");
    let o = stheat(&["convergence", "--max-level", "0", "--solver", "bs-complex", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 2);
}

#[test]
fn eigstudy_prints_and_writes_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("spec.csv");
    let o = stheat(&["eigstudy", "--max-level", "1", "--jmax", "2000", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("9.576e+00"));
    let csv = fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.lines().nth(1).unwrap().starts_with("4,"));
}

#[test]
fn compare_succeeds_when_solvers_agree() {
    let o = stheat(&["compare", "--max-level", "0", "--threads", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("dense"));
    assert!(!stdout(&o).contains("EXCEEDED"));
}

#[test]
fn config_file_is_read_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("from_config.csv");
    fs::write(&cfg, format!("max_level = 3\nsolvers = fd\nout = {}\n", out.display())).unwrap();
    let o = stheat(&["convergence", "--config", cfg.to_str().unwrap(), "--max-level", "0"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("## fd") && !stdout(&o).contains("## bs-real"));
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 2);
}

#[test]
fn usage_errors_exit_with_code_two() {
    let o = stheat(&["convergence", "--max-level", "0", "--solver", "gmres"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));

    let o = stheat(&["compare", "--max-level", "0", "--solver", "fd"]);
    assert_eq!(o.status.code(), Some(2));

    let o = stheat(&["eigstudy", "--config", "/nonexistent/run.cfg"]);
    assert_eq!(o.status.code(), Some(2));
}
