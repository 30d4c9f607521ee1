use std::path::PathBuf;
use std::process::Command;

fn models() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kamiltonian-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kamiltonian")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn model(name: &str) -> String {
    models().join(name).to_str().unwrap().to_owned()
}

#[test]
fn expand_latex_shows_second_and_fourth_order() {
    let m = model("kapitza_classical.cfg");
    let (code, out, _) = run(&["expand", "--model", &m, "--order", "4", "--gauge", "van-vleck", "--format", "latex"]);
    assert_eq!(code, 0);
    assert!(out.contains("K^{(2)}") && out.contains("K^{(4)}"), "{out}");
    assert!(out.contains("\\cos"), "{out}");
}

#[test]
fn output_is_deterministic() {
    let m = model("kapitza_quantum.cfg");
    for format in ["text", "latex", "json"] {
        let a = run(&["expand", "--model", &m, "--format", format]);
        let b = run(&["expand", "--model", &m, "--format", format]);
        assert_eq!(a, b, "{format}");
        assert_eq!(a.0, 0);
    }
}

#[test]
fn json_reingests_exactly() {
    let m = model("duffing_kerr.cfg");
    let (code, json, _) = run(&["expand", "--model", &m, "--order", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let path = scratch("duffing.json");
    std::fs::write(&path, &json).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(run(&["expand", "--model", p, "--format", "json"]).1, json);
    let text = run(&["expand", "--model", &m, "--order", "2"]).1;
    assert_eq!(run(&["expand", "--model", p]).1, text);
}

#[test]
fn out_flag_writes_file() {
    let path = scratch("kapitza.txt");
    let (code, out, _) = run(&["kapitza", "--order", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("K^(2)"));
}

#[test]
fn parse_errors_exit_one_with_position() {
    let path = scratch("bad.cfg");
    std::fs::write(&path, "[model]\nalgebra = ladder-quantum\n[symbols]\ng\n[hamiltonian]\nmode 0 = g*a + h\n").unwrap();
    let (code, _, err) = run(&["expand", "--model", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 6"), "{err}");
    assert!(err.contains("column"), "{err}");
    assert_eq!(run(&["expand"]).0, 1);
    assert_eq!(run(&["no-such-command"]).0, 1);
}

#[test]
fn order_cap_is_an_engine_error() {
    let m = model("kapitza_classical.cfg");
    let out = Command::new(env!("CARGO_BIN_EXE_kamiltonian"))
        .args(["expand", "--model", &m, "--order", "3"])
        .env("KAMILTONIAN_MAX_ORDER", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("order"));
}

#[test]
fn missing_file_is_an_io_error() {
    assert_eq!(run(&["expand", "--model", "/nonexistent/model.cfg"]).0, 3);
}

#[test]
fn vanvleck_first_order_latex() {
    let (code, out, _) = run(&["vanvleck", "--order", "1", "--format", "latex"]);
    assert_eq!(code, 0);
    assert!(out.contains("\\frac{[\\hat{H}_{m_1}, \\hat{H}_{-m_1}]}{2m_1(\\hbar\\omega)}"), "{out}");
}

#[test]
fn vanvleck_seed_reports_hermiticity() {
    let (code, out, _) = run(&["vanvleck", "--order", "3", "--seed", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("# order")).count(), 4, "{out}");
}

#[test]
fn diagram_lists_four_paths() {
    let (code, out, _) = run(&["diagram", "--node", "3", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.contains("L_{S^(")).count(), 4, "{out}");
    assert_eq!(run(&["diagram", "--node", "1", "5"]).0, 1);
}

#[test]
fn kapitza_quantum_text() {
    let (code, out, _) = run(&["kapitza", "--quantum"]);
    assert_eq!(code, 0);
    assert!(out.contains("13"), "{out}");
}

#[test]
fn duffing_compare_writes_csv() {
    let path = scratch("stark.csv");
    let (code, out, _) = run(&["duffing-compare", "--points", "2", "--max-amplitude", "0.1", "--order", "1", "--csv", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.lines().count() >= 3, "{out}");
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("amplitude,numeric_stark,numeric_kerr"));
    assert_eq!(csv.lines().count(), 3);
}
