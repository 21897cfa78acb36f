use std::process::{Command, Output};

fn pdef(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdef")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = pdef(&all);
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn def_reports_presentation_value_and_interval() {
    let out = pdef(&["def", "-p", "2", "<x,y,z|x^2=y^4=z^4=x*y*z=1>"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "de_p(presentation) = 0/1; group de_2 ∈ [0/1, 1/4]\n");

    assert_eq!(json(&["def", "-p", "2", "<x,y|>"])["presentation_de"], "1/1");
    let v = json(&["def", "-p", "2", "<x,y|x^2=y^5=(x*y)^5=1>"]);
    assert_eq!((v["presentation_de"].as_str(), v["group_de_upper"].as_str()), (Some("-3/2"), Some("-1/1")));
}

#[test]
fn abdef_lists_invariants() {
    let v = json(&["abdef", "-p", "2", "<x,y,z|x^2,y^4,z^4,x*y*z>"]);
    assert_eq!(v["torsion"], serde_json::json!(["2", "4"]));
    assert_eq!(v["d_p"], 2);
    assert_eq!(v["abelian_de"], "1/4");
}

#[test]
fn subgroup_accepts_both_quotient_syntaxes() {
    let pres = "<x,y|x^2,y^5,(x*y)^5>";
    let a = json(&["subgroup", "-p", "2", pres, "--hom-cyclic", "5", "0,1"]);
    let b = json(&["subgroup", "-p", "2", pres, "--quotient", "x:(),y:(1 2 3 4 5)"]);
    assert_eq!(a["de_sub"], b["de_sub"]);
    assert_eq!(a["index"], 5);
    assert_eq!(a["scaled_de_orig"], "-15/2");
    assert_eq!(a["holds"], true);
}

#[test]
fn subgroup_rejects_non_quotients() {
    let out = pdef(&["subgroup", "<x|x^2>", "--hom-cyclic", "3", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not kill"));
}

#[test]
fn psize_matches_known_bound() {
    let v = json(&["psize", "-p", "2", "<x,y|x^2,y^5,(x*y)^5>", "--hom-cyclic", "5", "0,1"]);
    assert_eq!(v["value"], "9/2");
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn fuchsian_classifies_triangle_group() {
    let v = json(&["fuchsian", "-p", "2", "(0; 6,12,12)"]);
    assert_eq!(v["case"], "d");
    assert_eq!(v["de_exact"]["value"], "0/1");
    let v = json(&["fuchsian", "-p", "3", "(0;6,12,12)"]);
    assert_eq!(v["case"], "b");
    let v = json(&["fuchsian", "-p", "5", "(0;2,3,7)"]);
    assert_eq!(v["de_exact"]["kind"], "negative");
}

#[test]
fn singerman_by_case_and_by_permutations_agree() {
    let a = json(&["singerman", "(0; 4,4,4)", "--case", "d"]);
    let b = json(&["singerman", "(0; 4,4,4)", "--degree", "2", "--perm", "(1 2)", "--perm", "(1 2)", "--perm", "()"]);
    assert_eq!(a["subgroup"], "(0; 2,2,4,4)");
    assert_eq!(a["subgroup"], b["subgroup"]);
    let c = json(&["singerman", "(1; 2,3)", "--case", "a"]);
    assert_eq!(c["subgroup"], "(1; 2,2,2,2,3,3,3,3)");
}

#[test]
fn chi_and_gradient_on_free_group() {
    let v = json(&["chi", "<x,y|>", "--max-order", "6"]);
    assert_eq!(v["best_ratio"], "1/1");
    assert!(v["samples"].as_array().unwrap().iter().all(|s| s["ratio"] == "1/1"));
    let g = json(&["gradient", "<x,y|>", "--max-order", "3"]);
    assert_eq!(g["window_max"], "2/1");
}

#[test]
fn witness_finds_square_root_of_x6() {
    let out = pdef(&["witness", "-p", "2", "<x,y|x^6,y^12,(x*y)^12>"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("x^6 = (x^2)^3"));
}

#[test]
fn verify_subset_and_json() {
    let out = pdef(&["verify", "--only", "size-bound", "--only", "snf"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS  9 size-bound") && text.contains("PASS  5 snf"));

    let v = json(&["verify", "--only", "triangle-6-12-12"]);
    assert_eq!((v["passed"].as_u64(), v["total"].as_u64()), (Some(1), Some(1)));
    assert_eq!(v["criteria"][0]["id"], "triangle-6-12-12");

    assert_eq!(pdef(&["verify", "--only", "no-such"]).status.code(), Some(2));
}

#[test]
fn output_file_receives_json() {
    let path = std::env::temp_dir().join(format!("pdef-cli-test-{}.json", std::process::id()));
    let out = pdef(&["-o", path.to_str().unwrap(), "def", "<x|x^4>"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["presentation_de"], "-1/4");
}
