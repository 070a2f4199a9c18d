//! End-to-end runs of the binary against the shipped fixtures.

use std::fs;
use std::path::PathBuf;
use std::process::Output;

use serde_json::Value;

fn spdiag(args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_spdiag"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("spdiag-test-{}-{name}", std::process::id()));
    p
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn read_value(path: &PathBuf) -> Value {
    serde_json::from_str(&fs::read_to_string(path).expect("output exists")).expect("valid JSON")
}

#[test]
fn poset_check_accepts_the_one_peak_poset() {
    let out_path = tmp("check-ok.json");
    let out = spdiag(&[
        "poset-check",
        "--in",
        &fixture("poset6_onepeak.json"),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(read_value(&out_path), serde_json::json!({ "type_A": true }));
}

#[test]
fn poset_check_names_a_crown_witness() {
    let in_path = tmp("crown-in.json");
    fs::write(
        &in_path,
        r#"{"elements": [1, 2, 3, 4], "covers": [[1, 3], [1, 4], [2, 3], [2, 4]]}"#,
    )
    .unwrap();
    let out_path = tmp("crown-out.json");
    let out = spdiag(&[
        "poset-check",
        "--in",
        in_path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    let v = read_value(&out_path);
    assert_eq!(v["type_A"], Value::Bool(false));
    let family = v["witness"]["family"].as_str().expect("witness family");
    assert!(family.starts_with("R4"), "crown family, got {family}");
    assert_eq!(v["witness"]["elements"].as_array().unwrap().len(), 4);
}

#[test]
fn disconnected_poset_is_an_input_error() {
    let in_path = tmp("disconnected-in.json");
    fs::write(&in_path, r#"{"elements": [1, 2], "covers": []}"#).unwrap();
    let out_path = tmp("disconnected-out.json");
    let out = spdiag(&[
        "poset-check",
        "--in",
        in_path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("connected"));
}

#[test]
fn decompose_then_sp_diagonals_round_trips() {
    for (poset, quiver_len) in
        [("poset6_onepeak.json", 10), ("poset7_threepeak.json", 15)]
    {
        let decomposed = tmp(&format!("decomposed-{quiver_len}.json"));
        let out = spdiag(&[
            "decompose",
            "--in",
            &fixture(poset),
            "--out",
            decomposed.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
        let v = read_value(&decomposed);
        let n = v["vertices"].as_u64().unwrap();
        assert_eq!(v["labels"].as_array().unwrap().len() as u64, n);

        let as_quiver = tmp(&format!("requiver-{quiver_len}.json"));
        fs::write(
            &as_quiver,
            serde_json::json!({
                "vertices": v["vertices"],
                "arrows": v["arrows"],
                "alien": v["alien"],
            })
            .to_string(),
        )
        .unwrap();
        let listed = tmp(&format!("relisted-{quiver_len}.json"));
        let out = spdiag(&[
            "sp-diagonals",
            "--in",
            as_quiver.to_str().unwrap(),
            "--out",
            listed.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(read_value(&listed).as_array().unwrap().len(), quiver_len);
    }
}

#[test]
fn sp_diagonals_lists_ten_objects_and_sketches() {
    let first = tmp("sp-first.json");
    let out = spdiag(&[
        "sp-diagonals",
        "--in",
        &fixture("quiver6_onepeak.json"),
        "--out",
        first.to_str().unwrap(),
        "--emit-dot",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let entries = read_value(&first);
    let entries = entries.as_array().unwrap();
    assert_eq!(entries.len(), 10);
    for entry in entries {
        assert_eq!(entry["star"], Value::Bool(true));
        assert_eq!(entry["frozen_by"].as_array().unwrap().len(), 0);
        assert_eq!(entry["diagonal"].as_array().unwrap().len(), 2);
        assert!(!entry["support"].as_array().unwrap().is_empty());
    }
    let sketch = fs::read_to_string(format!("{}.dot", first.display())).unwrap();
    assert!(sketch.starts_with("graph polygon"));
    assert!(sketch.contains("style=bold"));

    let second = tmp("sp-second.json");
    let out = spdiag(&[
        "sp-diagonals",
        "--in",
        &fixture("quiver6_onepeak.json"),
        "--out",
        second.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        fs::read(&first).unwrap(),
        fs::read(&second).unwrap(),
        "output is byte-stable across runs"
    );
}

fn dot_counts(text: &str) -> (usize, usize, usize) {
    let nodes = text.lines().filter(|l| l.contains("[label=")).count();
    let solid = text
        .lines()
        .filter(|l| l.contains(" -> ") && !l.contains("style=dashed"))
        .count();
    let dashed = text.lines().filter(|l| l.contains("style=dashed")).count();
    (nodes, solid, dashed)
}

#[test]
fn ar_quiver_categories_agree_on_the_fixture() {
    let mut texts = Vec::new();
    for category in ["ct", "sp", "modsp"] {
        let out_path = tmp(&format!("aq-{category}.dot"));
        let out = spdiag(&[
            "ar-quiver",
            "--in",
            &fixture("quiver6_onepeak.json"),
            "--out",
            out_path.to_str().unwrap(),
            "--category",
            category,
        ]);
        assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
        texts.push(fs::read_to_string(&out_path).unwrap());
    }
    let (ct_nodes, _, ct_dashed) = dot_counts(&texts[0]);
    assert_eq!(ct_nodes, 21);
    assert_eq!(ct_dashed, 15, "every non-projective object is translated");
    let (sp_nodes, sp_solid, sp_dashed) = dot_counts(&texts[1]);
    assert_eq!((sp_nodes, sp_solid, sp_dashed), (10, 13, 4));
    let (mod_nodes, mod_solid, mod_dashed) = dot_counts(&texts[2]);
    assert_eq!(
        (mod_nodes, mod_solid, mod_dashed),
        (10, 13, 0),
        "module-side arrows match the sp-diagonal quiver"
    );
}

#[test]
fn verify_passes_the_fixture_and_sweeps() {
    let out_path = tmp("verify.json");
    let out = spdiag(&[
        "verify",
        "--in",
        &fixture("quiver7_threepeak.json"),
        "--out",
        out_path.to_str().unwrap(),
        "--max-n",
        "4",
        "--seed",
        "11",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = read_value(&out_path);
    assert_eq!(v["verified"], Value::Bool(true));
    assert_eq!(v["equivalence"]["object_bijection"], Value::Bool(true));
    assert_eq!(v["equivalence"]["sp_count"], serde_json::json!(15));
    assert_eq!(v["mesh_additivity"], Value::Bool(true));
    assert_eq!(v["translation_bijective"], Value::Bool(true));
    assert_eq!(v["sweep"]["all_passed"], Value::Bool(true));
    assert_eq!(v["sweep"]["count"], serde_json::json!(100));

    let out = spdiag(&[
        "verify",
        "--in",
        &fixture("quiver7_threepeak.json"),
        "--out",
        out_path.to_str().unwrap(),
        "--max-n",
        "12",
    ]);
    assert_eq!(code(&out), 2, "the size guard rejects max-n above 9");
}

#[test]
fn cluster_counts_the_pentagon_and_certifies() {
    let in_path = tmp("a2.json");
    fs::write(&in_path, r#"{"vertices": 2, "arrows": [[1, 2]]}"#).unwrap();
    let out_path = tmp("a2-out.json");
    let out = spdiag(&[
        "cluster",
        "--in",
        in_path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
        "--verify-generation",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = read_value(&out_path);
    assert_eq!(v["variable_count"], serde_json::json!(5));
    assert_eq!(v["cluster_count"], serde_json::json!(5));
    assert_eq!(v["entries"].as_array().unwrap().len(), 5);
    for entry in v["entries"].as_array().unwrap() {
        assert!(entry["d_vector"].is_array());
        assert!(entry["diagonal"].is_array());
        assert!(entry["num_terms"].as_u64().unwrap() >= 1);
    }
    assert_eq!(v["generation"]["exploratory"], Value::Bool(false));
    let certificates = v["generation"]["certificates"].as_array().unwrap();
    assert_eq!(certificates.len(), 2);
    assert!(certificates.iter().all(|c| !c.is_null()));
}

#[test]
fn invalid_alien_set_is_an_input_error() {
    let in_path = tmp("bad-alien.json");
    fs::write(
        &in_path,
        r#"{"vertices": 6, "arrows": [[1, 2], [2, 3], [4, 3], [5, 4], [6, 5]], "alien": [[2, 1]]}"#,
    )
    .unwrap();
    let out_path = tmp("bad-alien-out.json");
    let out = spdiag(&[
        "sp-diagonals",
        "--in",
        in_path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("clause"),
        "the violated clause is named"
    );
}
