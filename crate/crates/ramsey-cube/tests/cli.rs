use ramsey_cube::io::crg;
use ramsey_cube::{Colour, ColouredGraph};
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ramsey-cube"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn extremal_colouring_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("ext.crg");
    let o = run(&["construct-extremal", "--s", "3", "--n", "2", "-o", p(&g)]);
    assert!(o.status.success(), "{o:?}");
    assert_eq!(crg::read(&g).unwrap().n(), 6);
    let o = run(&["verify", "--in", p(&g), "--no-blue-clique", "3", "--no-red", "c4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let report: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(report["valid"], true);
}

#[test]
fn verify_rejects_a_blue_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("blue.crg");
    crg::write(&g, &ColouredGraph::monochromatic(5, Colour::Blue)).unwrap();
    let o = run(&["verify", "--in", p(&g), "--no-blue-clique", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn embed_and_verify_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("red.crg");
    let cert = dir.path().join("red.cert");
    crg::write(&g, &ColouredGraph::new(127)).unwrap();
    let o = run(&["embed", "--in", p(&g), "--strategy", "full", "--s", "3", "--n", "6", "-o", p(&cert)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(std::fs::read_to_string(&cert).unwrap().starts_with("embedding\n"));
    let o = run(&["verify", "--in", p(&g), "--cert", p(&cert)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    // The same certificate against an all-blue host must fail.
    let blue = dir.path().join("blue.crg");
    crg::write(&blue, &ColouredGraph::monochromatic(127, Colour::Blue)).unwrap();
    let o = run(&["verify", "--in", p(&blue), "--cert", p(&cert)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn ramsey_search_flip() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.crg");
    let o = run(&["ramsey-search", "--s", "3", "--target", "c4", "--N", "7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "holds");
    let o = run(&["ramsey-search", "--s", "3", "--target", "c4", "--N", "6", "-o", p(&w)]);
    assert_eq!(stdout(&o).trim(), "counterexample");
    let o = run(&["verify", "--in", p(&w), "--no-blue-clique", "3", "--no-red", "c4"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn errors_are_json_on_stderr() {
    let o = run(&["embed", "--in", "/nonexistent.crg", "-o", "/tmp/unused.cert"]);
    assert_eq!(o.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_str(String::from_utf8_lossy(&o.stderr).trim()).unwrap();
    assert_eq!(err["stage"], "embed");
}

#[test]
fn profile_h_reports_chi_and_sigma() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("c5.txt");
    std::fs::write(&h, "n 5\n0 1\n1 2\n2 3\n3 4\n4 0\n").unwrap();
    let o = run(&["profile-h", "--h-file", p(&h)]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!((v["chi"].as_u64(), v["sigma"].as_u64()), (Some(3), Some(1)));
}

#[test]
fn artifacts_do_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("ext.crg");
    let mut host = ColouredGraph::from_fn(127, |u, v| if (u < 64) == (v < 64) { Colour::Red } else { Colour::Blue });
    host.set_colour(3, 70, Colour::Red);
    crg::write(&g, &host).unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let cert = dir.path().join(format!("c{threads}.cert"));
        let dec = dir.path().join(format!("d{threads}.json"));
        let o = bin().env("RAMSEY_CUBE_THREADS", threads).args(["embed", "--in", p(&g), "--s", "3", "--n", "6", "-o", p(&cert)]).output().unwrap();
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let o = bin().args(["--threads", threads, "decompose", "--in", p(&g), "-o", p(&dec)]).output().unwrap();
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        outputs.push((std::fs::read(&cert).unwrap(), std::fs::read(&dec).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
}
