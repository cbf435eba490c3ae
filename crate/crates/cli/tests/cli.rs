use std::path::PathBuf;

use serde_json::Value;
use subdiv_cli::run;

fn fixture(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("subdiv-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn lab(args: &[&str]) -> subdiv_cli::Outcome {
    run(std::iter::once("subdiv-lab").chain(args.iter().copied()))
}

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn json_of(out: &subdiv_cli::Outcome) -> Value {
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let errors: Vec<String> = schema().iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations {errors:?} in {v}");
    v
}

#[test]
fn gen_subdivided_triangle_is_c6() {
    let out = lab(&["gen", "--pattern", "Kt:3", "--subdivide", "1"]);
    assert_eq!(out.code, 0);
    let parsed = subdiv_core::format::parse(&out.stdout).unwrap().to_graph();
    assert!(subdiv_core::iso::iso_check(&parsed, subdiv_core::Pattern::cycle(6).unwrap().graph()).unwrap());
}

#[test]
fn oriented_c4_count() {
    let k22 = fixture("k22.bip", "# K_{2,2}\nbip 2 2\n0 0\n0 1\n1 0\n1 1\n");
    let out = lab(&["count", "--pattern", "C4", "--oriented", "--input", k22.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.code, 0);
    assert_eq!(json_of(&out)["hom_c4_oriented"], "16");
    let out = lab(&["count", "--pattern", "Kst:1,2", "--oriented", "--input", k22.to_str().unwrap(), "--format", "json"]);
    assert_eq!(json_of(&out)["hom_star_oriented"], "8");
    let out = lab(&["count", "--pattern", "P3", "--oriented", "--input", k22.to_str().unwrap()]);
    assert_eq!(out.code, 2);
}

#[test]
fn embed_reports() {
    let heawood = lab(&["gen", "--pattern", "heawood"]).stdout;
    let h = fixture("heawood.bip", &heawood);
    let out = lab(&["embed", "--pattern", "Kt:3", "--subdivide", "1", "--input", h.to_str().unwrap(), "--format", "json"]);
    let v = json_of(&out);
    assert_eq!((out.code, v["status"].as_str()), (1, Some("failure")));
    let k = fixture("k36.bip", &lab(&["gen", "--pattern", "Kst:36,36"]).stdout);
    let out = lab(&["embed", "--pattern", "Kt:3", "--subdivide", "1", "--input", k.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.code, 0);
    let v = json_of(&out);
    assert_eq!(v["embedding"]["injective"], true);
    assert_eq!(v["embedding"]["map"].as_array().unwrap().len(), 6);
}

#[test]
fn every_command_validates() {
    let c6 = fixture("c6.g", &lab(&["gen", "--pattern", "C6"]).stdout);
    let k44 = fixture("k44.bip", &lab(&["gen", "--pattern", "Kst:4,4"]).stdout);
    let g = fixture("gnp.g", &lab(&["gen", "--pattern", "gnp:60,0.3", "--seed", "4"]).stdout);
    let pts = fixture("pts.txt", "# n edges\n64 100\n128 230\n256 520\n");
    let (c6, k44, g, pts) = (c6.to_str().unwrap(), k44.to_str().unwrap(), g.to_str().unwrap(), pts.to_str().unwrap());
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["count", "--pattern", "P2", "--input", c6], 0),
        (vec!["count", "--pattern", "C6", "--injective", "--input", c6], 0),
        (vec!["regularize", "--input", g, "--alpha", "0.5"], 0),
        (vec!["regularize", "--input", c6, "--balanced", "--k", "1"], 1),
        (vec!["density", "--input", k44, "--rho", "0.5", "--d", "4"], 0),
        (vec!["density", "--input", c6, "--rho", "0.5", "--d", "2"], 1),
        (vec!["density", "--input", k44, "--heavy", "4"], 0),
        (vec!["density", "--input", c6, "--support", "2"], 0),
        (vec!["good-tuples", "--input", c6, "--thresholds", "2,2"], 0),
        (vec!["good-tuples", "--input", k44, "--thresholds", "5", "--extend", "5"], 0),
        (vec!["good-tuples", "--input", k44, "--thresholds", "5,5", "--embed", "3"], 0),
        (vec!["good-tuples", "--input", c6, "--thresholds", "1,1"], 1),
        (vec!["extremal", "--pattern", "C4", "--n", "6"], 0),
        (vec!["extremal", "--pattern", "C6", "--n", "11"], 3),
        (vec!["deletion-lb", "--pattern", "C6", "--n", "128"], 0),
        (vec!["fit", "--input", pts], 0),
        (vec!["gen", "--pattern", "fano", "--subdivide", "1"], 0),
        (vec!["embed", "--pattern", "C6", "--input", "/nonexistent/file"], 2),
    ];
    for (args, code) in cases {
        let mut a = args.clone();
        a.extend(["--format", "json"]);
        let out = lab(&a);
        assert_eq!(out.code, code, "{args:?}: {}{}", out.stdout, out.stderr);
        json_of(&out);
        let text = lab(&args);
        assert_eq!(text.code, code);
    }
}

#[test]
fn usage_errors_exit_2() {
    let out = lab(&["count", "--frobnicate"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("Usage"));
    assert_eq!(lab(&["extremal", "--pattern", "Q9", "--n", "5"]).code, 2);
    assert_eq!(lab(&["gen", "--pattern", "C6", "--threads", "0"]).code, 2);
    assert_eq!(lab(&["--help"]).code, 0);
}

#[test]
fn thread_count_does_not_change_output() {
    let g = fixture("det.g", &lab(&["gen", "--pattern", "gnp:200,0.1", "--seed", "9"]).stdout);
    let g = g.to_str().unwrap();
    let base = lab(&["regularize", "--input", g, "--balanced", "--k", "4", "--seed", "3", "--threads", "1", "--format", "json"]);
    for t in ["2", "4", "8"] {
        let out = lab(&["regularize", "--input", g, "--balanced", "--k", "4", "--seed", "3", "--threads", t, "--format", "json"]);
        assert_eq!(out, base);
    }
}
