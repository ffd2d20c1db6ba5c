use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn htclag(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_htclag"))
        .args(args)
        .env("HTCLAG_OUT_DIR", out)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn no_arguments_prints_usage_and_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = htclag(&[], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Usage"));
}

#[test]
fn unknown_scheme_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = htclag(&["sedov", "--scheme", "weno"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn riemann_writes_scatter_and_exact_csvs() {
    let dir = tempfile::tempdir().unwrap();
    let o = htclag(&["riemann", "rp1", "--scheme", "esl", "--mesh-h", "0.02"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let profile = fs::read_to_string(dir.path().join("rp1_profile.csv")).unwrap();
    assert!(profile.starts_with("coordinate,rho,u,p,S,eps\n"));
    let exact = fs::read_to_string(dir.path().join("rp1_exact.csv")).unwrap();
    assert!(exact.starts_with("x,rho,u,p\n"));
    assert_eq!(exact.lines().count(), 2002);
    let history = fs::read_to_string(dir.path().join("rp1_history.csv")).unwrap();
    assert!(history.lines().count() > 2);
    assert!(dir.path().join("rp1_0000.vtk").exists());
}

#[test]
fn run_reads_a_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("frames");
    let cfg = dir.path().join("vacuum.cfg");
    fs::write(
        &cfg,
        format!(
            "case = vacuum\nscheme = ecl\nt_final = 0.1\noutput.dir = {}\noutput.times = 0.05\noutput.formats = vtk\n",
            out.display()
        ),
    )
    .unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_htclag"))
        .args(["run", cfg.to_str().unwrap()])
        .env_remove("HTCLAG_OUT_DIR")
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let mut names: Vec<String> = fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert_eq!(names, ["vacuum_0000.vtk", "vacuum_0001.vtk", "vacuum_0002.vtk"]);
}

#[test]
fn bad_config_fails_with_a_message() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "case = rp1\ncfl = fast\n").unwrap();
    let o = htclag(&["run", cfg.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cfl"), "{}", stderr(&o));
}

#[test]
fn convergence_prints_the_rate_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = htclag(&["convergence", "vortex", "--levels", "2"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("L2(rho)") && text.contains("order"));
    let csv = fs::read_to_string(dir.path().join("vortex_convergence.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn results_do_not_depend_on_the_thread_count() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["riemann", "rp2", "--mesh-h", "0.025"];
    let oa = htclag(&[&args[..], &["--threads", "1"]].concat(), a.path());
    let ob = htclag(&[&args[..], &["--threads", "3"]].concat(), b.path());
    assert!(oa.status.success() && ob.status.success());
    for f in ["rp2_profile.csv", "rp2_history.csv"] {
        let pa = fs::read(a.path().join(f)).unwrap();
        let pb = fs::read(b.path().join(f)).unwrap();
        assert!(pa == pb, "{f} differs between thread counts");
    }
}
