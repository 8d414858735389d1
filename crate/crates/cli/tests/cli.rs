use mwrank_cli::{execute, render};
use serde_json::Value;

fn run(args: &str) -> (i32, Value) {
    let argv = std::iter::once("mwrank").chain(args.split_whitespace());
    let (code, report) = execute(argv);
    let json = serde_json::from_str(&render(&report.expect("report"))).unwrap();
    (code, json)
}

#[test]
fn count_all_methods_agree() {
    let (code, j) = run("count --prime 7 --method all");
    assert_eq!(code, 0);
    assert_eq!(j["counts"]["projective"], 610);
    let runs = j["counts"]["runs"].as_array().unwrap();
    assert_eq!(runs.len(), 3);
    assert!(runs.iter().all(|r| r["projective"] == 610));
}

#[test]
fn rank_defaults() {
    let (code, j) = run("rank");
    assert_eq!(code, 0);
    assert_eq!(j["status"], "ok");
    assert_eq!(j["counts"]["projective"], 610);
    assert_eq!(j["betti"]["w23"], 12);
    assert_eq!(j["betti"]["w33"], 0);
    assert_eq!(j["betti"]["h4"], 7);
    assert_eq!(j["betti"]["rank"], 6);
    assert_eq!(j["sections"].as_array().unwrap().len(), 6);
}

#[test]
fn bounds_exit_codes() {
    let (code, j) = run("bounds --prime 7 --count 611 --h4sigma 18 --chi -2");
    assert_eq!(code, 2);
    assert_eq!(j["betti"]["feasible_w23"], Value::Array(vec![]));
    let (code, j) = run("bounds --prime 7 --count 710");
    assert_eq!(code, 2);
    assert_eq!(j["status"], "inconclusive");
    assert_eq!(j["betti"]["feasible_w23"].as_array().unwrap().len(), 4);
    let (code, j) = run("bounds --prime 13 --count 3238");
    assert_eq!(code, 0);
    assert_eq!(j["betti"]["rank"], 6);
}

#[test]
fn bounds_counts_when_no_count_given() {
    let (code, j) = run("bounds --prime 13");
    assert_eq!(code, 0);
    assert_eq!(j["counts"]["projective"], 3238);
    assert_eq!(j["betti"]["w23"], 12);
}

#[test]
fn invalid_configuration() {
    assert_eq!(run("count --prime 9").0, 3);
    assert_eq!(run("count --prime 3").0, 3);
    assert_eq!(run("bounds --prime 11 --count 100").0, 3);
    assert_eq!(run("count --method bogus").0, 3);
    assert_eq!(run("frobnicate").0, 3);
    assert_eq!(run("count --curve x^2+ --vars x").0, 3);
    assert_eq!(run("count --curve x^2+y^3 --vars x,y").0, 3);
    assert_eq!(run("rank --prime 11").0, 3);
}

#[test]
fn budget_exceeded() {
    let (code, j) = run("count --prime 7 --method naive --budget 100");
    assert_eq!(code, 4);
    assert_eq!(j["status"], "budget-exceeded");
}

#[test]
fn custom_curve_fast_not_applicable() {
    let (code, j) = run("count --prime 7 --curve t1*y+x^3-s1^3 --vars y,x,s1,t1 --weights 3,2,2,3");
    assert_eq!(code, 0);
    assert_eq!(j["counts"]["projective"], 71);
    assert_eq!(j["counts"]["runs"][2]["status"], "not-applicable");
    let (code, _) = run(
        "count --prime 7 --method weierstrass-fast --curve t1*y+x^3-s1^3 --vars y,x,s1,t1 --weights 3,2,2,3",
    );
    assert_eq!(code, 3);
}

#[test]
fn singular_and_hodge() {
    let (code, j) = run("singular --prime 7");
    assert_eq!(code, 0);
    assert_eq!(j["singular"]["points"].as_array().unwrap().len(), 9);
    assert_eq!(j["singular"]["matches_expected"], true);
    let (_, j) = run("singular --prime 5");
    assert_eq!(j["singular"]["matches_expected"], Value::Null);
    let (code, j) = run("hodge");
    assert_eq!(code, 0);
    assert_eq!(j["hodge"]["h3_smooth"], 42);
    assert_eq!(j["hodge"]["h4_sigma"], 18);
    assert_eq!(j["hodge"]["chi"], -2);
}

#[test]
fn hodge_custom_curve_flags_singular_member() {
    let (code, j) =
        run("hodge --curve y^2-x^3-z0^6-z1^6-z2^6 --vars y,x,z0,z1,z2 --weights 3,2,1,1,1");
    assert_eq!(code, 0);
    assert_eq!(j["hodge"]["h3_smooth"], 42);
    let (code, j) = run(
        "hodge --curve y^2-x^3-16*(z0^6+z1^6+z2^6-2*(z0^3*z1^3+z1^3*z2^3+z0^3*z2^3)) --vars x,y,z0,z1,z2",
    );
    assert_eq!(code, 0, "{j}");
    assert!(!j["hodge"]["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn predict_and_sections() {
    let (code, j) = run("predict --prime 19");
    assert_eq!(code, 0);
    assert_eq!(j["predicted_count"], 9178);
    let (code, j) = run("sections");
    assert_eq!(code, 0);
    let s = j["sections"].as_array().unwrap();
    assert!(s
        .iter()
        .all(|c| c["verified"] == true && c["sign_choice"] == "flipped"));
    assert_eq!(s[2]["printed_residual"], "128*s^3*t^3");
}

#[test]
fn json_output_file() {
    let path = std::env::temp_dir().join(format!("mwrank-cli-{}.json", std::process::id()));
    let code = mwrank_cli::run([
        "mwrank",
        "predict",
        "--prime",
        "7",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let j: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(j["predicted_count"], 610);
    std::fs::remove_file(path).unwrap();
}
