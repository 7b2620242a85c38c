use std::path::Path;
use std::process::{Command, Output};

use cmpl_core::algebra::{Fq, Poly, RatFunc};
use cmpl_core::completions::{Place, VAdicNumber};
use cmpl_core::json;
use serde_json::Value;

fn cmpl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmpl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

const LAMBDA: &[&str] = &[
    "check",
    "--q",
    "3",
    "--s",
    "1",
    "--u",
    "x",
    "--ext-minpoly",
    "x^2-2*theta",
    "--v",
    "theta+1",
    "--prec",
    "12",
    "--deg-bound",
    "4",
];

#[test]
fn lambda_check_is_consistent_with_certificate_t() {
    let j = json_of(&cmpl(LAMBDA));
    assert_eq!(j["flag"], "CONSISTENT");
    assert_eq!(j["iii"], "t");
    assert_eq!(j["i"], true);
    assert_eq!(j["precision"], 12);
}

#[test]
fn zeta_with_only_a_equal_one() {
    let j = json_of(&cmpl(&[
        "zeta",
        "--q",
        "3",
        "--n",
        "2",
        "--deg-bound",
        "0",
        "--place",
        "inf",
        "--prec",
        "-10",
    ]));
    let v = &j["value"];
    assert_eq!(v["val"], 0);
    assert_eq!(v["prec"], -10);
    let coeffs = v["coeffs"].as_array().unwrap();
    assert_eq!(coeffs[0], "1");
    assert!(coeffs[1..].iter().all(|c| c == "0"));
}

#[test]
fn cmpl_at_theta_matches_a_direct_sum() {
    let j = json_of(&cmpl(&[
        "eval", "cmpl", "--q", "3", "--s", "1", "--u", "theta", "--v", "theta", "--prec", "6",
    ]));
    // Σ_{i ≤ 4} θ^{3^i} / L_i, with L_i built by hand
    let fq = Fq::prime(3).unwrap();
    let theta = Poly::x(fq);
    let mut sum = RatFunc::zero(fq);
    let mut l = Poly::one(fq);
    for i in 0..=4u32 {
        if i > 0 {
            l = l.mul(&theta.sub(&theta.pow(3u64.pow(i))));
        }
        let term = RatFunc::new(theta.pow(3u64.pow(i)), l.clone()).unwrap();
        sum = sum.add(&term);
    }
    let place = Place::new(theta).unwrap();
    let want = json::vadic(&VAdicNumber::from_ratfunc(&place, &sum, 6));
    assert_eq!(j["value"], want);
}

#[test]
fn eval_prefix_is_an_alias() {
    let a = cmpl(&[
        "eval",
        "torsion",
        "--q",
        "3",
        "--s",
        "1",
        "--u",
        "theta",
        "--deg-bound",
        "3",
    ]);
    let b = cmpl(&[
        "torsion",
        "--q",
        "3",
        "--s",
        "1",
        "--u",
        "theta",
        "--deg-bound",
        "3",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["certificate"], "inconclusive");
}

#[test]
fn output_is_byte_identical_and_out_writes_a_file() {
    let a = cmpl(LAMBDA);
    let b = cmpl(LAMBDA);
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let mut args = LAMBDA.to_vec();
    let p = path.to_str().unwrap();
    args.extend(["--out", p]);
    let c = cmpl(&args);
    assert!(c.status.success());
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
}

#[test]
fn config_file_supplies_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("case.conf");
    std::fs::write(
        &cfg,
        "# the λ case\nq = 3\ns = 1\nu = x\next_minpoly = \"x^2-2*theta\"\nv = theta+1\nprec = 12\ndeg-bound = 4\n",
    )
    .unwrap();
    let from_cfg = json_of(&cmpl(&["check", "--config", cfg.to_str().unwrap()]));
    let from_flags = json_of(&cmpl(LAMBDA));
    assert_eq!(from_cfg, from_flags);
    // flags win over the file
    let over = json_of(&cmpl(&[
        "check",
        "--config",
        cfg.to_str().unwrap(),
        "--prec",
        "3",
    ]));
    assert_eq!(over["precision"], 3);
}

#[test]
fn exit_codes() {
    let parse = cmpl(&[
        "cmpl", "--q", "3", "--s", "1", "--u", "theta+", "--v", "theta",
    ]);
    assert_eq!(parse.status.code(), Some(4));
    let flag = cmpl(&["cmpl", "--frobnicate"]);
    assert_eq!(flag.status.code(), Some(4));
    let domain = cmpl(&[
        "continue", "--q", "3", "--s", "1", "--u", "1/theta", "--v", "theta",
    ]);
    assert_eq!(domain.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&domain.stderr).contains("domain"));
    let ext_at_inf = cmpl(&[
        "euler",
        "--q",
        "3",
        "--s",
        "1",
        "--u",
        "x",
        "--ext-minpoly",
        "x^2-2*theta",
    ]);
    assert_eq!(ext_at_inf.status.code(), Some(2));
}

#[test]
fn every_value_carries_precision() {
    let j = json_of(&cmpl(&[
        "continue",
        "--q",
        "3",
        "--s",
        "1,1",
        "--u",
        "theta+1;theta+2",
        "--v",
        "theta",
        "--prec",
        "10",
    ]));
    for v in j["star"].as_array().unwrap().iter().chain([&j["li"]]) {
        assert!(v["prec"].is_u64() && v["abs_prec"].is_i64());
    }
    let j = json_of(&cmpl(&[
        "cmspl", "--q", "3", "--s", "2", "--u", "theta", "--prec", "-15",
    ]));
    assert_eq!(j["value"]["prec"], -15);
}

fn copy_fixtures(to: &Path) {
    let from = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for e in std::fs::read_dir(from).unwrap() {
        let p = e.unwrap().path();
        std::fs::copy(&p, to.join(p.file_name().unwrap())).unwrap();
    }
}

#[test]
fn selftest_passes_on_fresh_fixtures() {
    let out = cmpl(&["selftest", "--jobs", "2"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("fixture:check_lambda"));
    assert!(text.contains("0 failed"));
}

#[test]
fn corrupted_fixture_fails_by_name() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    let target = dir.path().join("zeta_degree_zero.json");
    let mut fx: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    fx["expected"]["value"]["val"] = 1.into();
    std::fs::write(&target, fx.to_string()).unwrap();
    let out = cmpl(&["selftest", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    let line = text
        .lines()
        .find(|l| l.starts_with("fixture:zeta_degree_zero"))
        .unwrap();
    assert!(line.contains("FAIL"));
    assert!(text.lines().filter(|l| l.contains("FAIL")).count() == 1);
}

#[test]
fn selftest_filter() {
    let out = cmpl(&["selftest", "--filter", "star"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success());
    let names: Vec<&str> = text.lines().filter(|l| l.contains("PASS")).collect();
    assert_eq!(names.len(), 1);
    assert!(names[0].starts_with("star-identity"));
}

#[test]
fn tmodule_show_layout() {
    let j = json_of(&cmpl(&[
        "tmodule-show",
        "--q",
        "3",
        "--s",
        "1,2",
        "--u",
        "theta;theta+1",
    ]));
    assert_eq!(j["dim"], 5);
    assert_eq!(j["block_bottoms"], serde_json::json!([3, 5]));
    assert_eq!(j["special_point"].as_array().unwrap().len(), 5);
}
