use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn model(name: &str) -> String {
    root().join("models").join(name).to_string_lossy().into_owned()
}

fn crnhill(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crnhill")).args(args).env_remove("CRNHILL_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn corpus() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(root().join("models"))
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".crn"))
        .collect();
    names.sort();
    names
}

#[test]
fn pyk_prints_associated_kinetics() {
    let o = crnhill(&["pyk", &model("mm_reversible.crn")]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("R1: 1 * (X1 + X1*X2)"), "{text}");
    assert!(text.contains("R2: 2 * (X2 + X1*X2)"), "{text}");
    assert!(text.contains("h = 2"), "{text}");
}

#[test]
fn pyk_output_is_the_rendered_text() {
    let file = model("three_cycle.crn");
    let m = crnhill_core::io::read_model(std::path::Path::new(&file)).unwrap();
    let o = crnhill(&["pyk", &file]);
    assert_eq!(stdout(&o), crnhill_core::report::render_pyk(&m, false).unwrap());
}

#[test]
fn acr_on_sorribas_names_the_pair() {
    let o = crnhill(&["acr", &model("sorribas.crn"), "--species", "X2"]);
    let text = stdout(&o);
    assert!(text.contains("{R1, R3}"), "{text}");
    // Deficiency two: the certificate does not apply, which is an analysis outcome.
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(crnhill(&["acr", &model("acr_deficiency_one.crn"), "--species", "A"]).status.code(), Some(0));
    assert_eq!(crnhill(&["acr", &model("acr_deficiency_one.crn"), "--species", "B"]).status.code(), Some(1));
    assert_eq!(crnhill(&["ccb", &model("sorribas.crn"), "--at", "1,1,1,1"]).status.code(), Some(1));
    assert_eq!(crnhill(&["analyze", "/nonexistent/model.crn"]).status.code(), Some(2));
    assert_eq!(crnhill(&["acr", &model("acr_deficiency_one.crn"), "--species", "Q"]).status.code(), Some(2));
    assert_eq!(crnhill(&["multistat", &model("mtb.crn"), "--cap", "3"]).status.code(), Some(1));
    assert_eq!(crnhill(&["bogus"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.crn");
    std::fs::write(&bad, "@species A\n@reaction\nR1: A -> B\n").unwrap();
    let o = crnhill(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["analyze", "three_cycle.crn", "--json"],
        vec!["equilibria", "two_blocks.crn"],
        vec!["multistat", "pqk_example.crn"],
    ] {
        let mut a: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        a[1] = model(args[1]);
        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
        let first = crnhill(&refs);
        let second = crnhill(&refs);
        assert!(first.status.success());
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let file = model("two_blocks.crn");
    let one = Command::new(env!("CARGO_BIN_EXE_crnhill"))
        .args(["analyze", &file, "--json"])
        .env("CRNHILL_THREADS", "1")
        .output()
        .unwrap();
    let two = Command::new(env!("CARGO_BIN_EXE_crnhill"))
        .args(["analyze", &file, "--json"])
        .env("CRNHILL_THREADS", "2")
        .output()
        .unwrap();
    assert!(one.status.success() && two.status.success());
    assert_eq!(one.stdout, two.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_crnhill"))
        .args(["pyk", &file])
        .env("CRNHILL_THREADS", "zero")
        .output()
        .unwrap();
    assert!(bad.status.success());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("CRNHILL_THREADS"));
}

#[test]
fn reports_match_the_schema() {
    let schema: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(root().join("crates/cli/schema/report.schema.json")).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for name in corpus() {
        for extra in [&["--grid", "2"][..], &["--no-numerics"][..]] {
            let file = model(&name);
            let mut args = vec!["analyze", file.as_str(), "--json"];
            args.extend_from_slice(extra);
            let o = crnhill(&args);
            assert!(o.status.success(), "{name}");
            let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
            let errors: Vec<String> = validator.iter_errors(&report).map(|e| format!("{} at {}", e, e.instance_path)).collect();
            assert!(errors.is_empty(), "{name}: {errors:?}");
        }
    }
}

#[test]
fn transform_output_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    for (name, method) in [("mm_reversible.crn", "star-msc"), ("minimally_nf.crn", "cf-rm-plus")] {
        let out = dir.path().join(format!("{method}.crn"));
        let o = crnhill(&["transform", &model(name), "--method", method, "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{name}");
        let again = crnhill(&["analyze", out.to_str().unwrap(), "--no-numerics"]);
        assert!(again.status.success(), "{name}: {}", String::from_utf8_lossy(&again.stderr));
    }
}

#[test]
fn decomposition_from_a_partition_file() {
    let dir = tempfile::tempdir().unwrap();
    let part = dir.path().join("blocks.txt");
    std::fs::write(&part, "# two linkage classes\nR1 R2\nR3 R4\n").unwrap();
    let o = crnhill(&["decomp", &model("two_blocks.crn"), "--partition", part.to_str().unwrap(), "--species", "A"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = crnhill(&["decomp", &model("two_blocks.crn"), "--partition", part.to_str().unwrap(), "--json"]);
    let d: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(d["independent"], true);
    assert_eq!(d["incidenceIndependent"], true);
}
