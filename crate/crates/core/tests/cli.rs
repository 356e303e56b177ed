use std::fs;
use std::process::Command;

use spider_core::cli::{run, ClaspExpansion, Outcome, Sp4Output, ThetaOutput};
use spider_core::sl3::clasp;
use spider_core::sl3::graphs::theta;

fn spider(args: &[&str]) -> Outcome {
    run(std::iter::once("spider").chain(args.iter().copied()))
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn eval_graph_prints_theta_value() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "theta.json", &serde_json::to_string(&theta()).unwrap());
    let out = spider(&["eval-graph", &f]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, "-v^3 - 2v - 2v^-1 - v^-3\n");
    let q = spider(&["--q-units", "eval-graph", &f]);
    assert_eq!(q.stdout, "-q^(3/2) - 2q^(1/2) - 2q^(-1/2) - q^(-3/2)\n");
    let traced = spider(&["eval-graph", "--trace", &f]);
    let v: serde_json::Value = serde_json::from_str(&traced.stdout).unwrap();
    assert_eq!(v["value"], "-v^3 - 2v - 2v^-1 - v^-3");
}

#[test]
fn clasp_expansion_round_trips() {
    for q_units in [false, true] {
        let mut args = vec!["clasp-expand", "--a", "2", "--b", "1"];
        if q_units {
            args.insert(0, "--q-units");
        }
        let out = spider(&args);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let parsed = ClaspExpansion::parse(&out.stdout).unwrap();
        let t = parsed.to_tangle().unwrap();
        assert!(t == clasp(2, 1).unwrap());
        let again = ClaspExpansion::new(2, 1, &t, q_units);
        let text = serde_json::to_string_pretty(&again).unwrap() + "\n";
        assert_eq!(text, out.stdout);
    }
    let two = ClaspExpansion::parse(&spider(&["clasp-expand", "--a", "2", "--b", "0"]).stdout).unwrap();
    let coeffs: Vec<&str> = two.terms.iter().map(|t| t.coeff.as_str()).collect();
    assert_eq!(coeffs, ["1", "(v)/(v^2 + 1)"]);
}

#[test]
fn nonsegregated_expansion_parses() {
    let out = spider(&["clasp-expand", "--a", "1", "--b", "1", "--nonseg", "-+"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let e = ClaspExpansion::parse(&out.stdout).unwrap();
    assert_eq!((e.top.as_str(), e.bottom.as_str()), ("-+", "-+"));
    assert!(spider(&["clasp-expand", "--a", "1", "--b", "1", "--nonseg", "++"]).code == 3);
}

#[test]
fn outputs_are_deterministic_and_reparse() {
    let a = spider(&["theta", "--sl3", "1,1;1,1;1,1"]);
    let b = spider(&["theta", "--sl3", "1,1;1,1;1,1"]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let t: ThetaOutput = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(t.d, 1);
    assert_eq!(t.matrix.len(), 2);
    assert_eq!(serde_json::to_string_pretty(&t).unwrap() + "\n", a.stdout);

    let s = spider(&["sp4-coeffs", "--weight", "0n", "--n", "3"]);
    let o: Sp4Output = serde_json::from_str(&s.stdout).unwrap();
    assert_eq!(o.coefficients.len(), 6);
    assert_eq!(serde_json::to_string_pretty(&o).unwrap() + "\n", s.stdout);

    let e = spider(&["theta", "--sl3", "1,1;1,1;1,1", "--entry", "0", "1"]);
    let t: ThetaOutput = serde_json::from_str(&e.stdout).unwrap();
    assert_eq!(t.entry, Some(vec![0, 1]));
}

#[test]
fn small_commands() {
    assert_eq!(spider(&["inv-dim", "--algebra", "sl3", "1,1;1,1;1,1"]).stdout, "2\n");
    assert_eq!(spider(&["inv-dim", "--algebra", "sp4", "1,0;1,0"]).stdout, "1\n");
    let j = spider(&["--json", "inv-dim", "--algebra", "sl3", "1,0;0,1"]);
    let v: serde_json::Value = serde_json::from_str(&j.stdout).unwrap();
    assert_eq!(v["value"], "1");
    assert_eq!(spider(&["theta", "--sl2", "0", "0", "0"]).stdout, "1\n");
}

#[test]
fn links_and_periods() {
    let dir = tempfile::tempdir().unwrap();
    let unknot = write(&dir, "o.pd", "O\n");
    assert_eq!(spider(&["eval-link", "--pd", &unknot]).stdout, "v^2 + 1 + v^-2\n");
    let kink = write(&dir, "k.pd", "X(1,1,2,2)+\n");
    let n = spider(&["eval-link", "--pd", &kink, "--normalize-writhe"]);
    assert_eq!(n.stdout, "v^2 + 1 + v^-2\n", "{}", n.stderr);
    let bad = write(&dir, "bad.pd", "X(1,2,3)+\n");
    assert_eq!(spider(&["eval-link", "--pd", &bad]).code, 3);

    let q3 = "v^2 + 1 + v^-2";
    let gl = write(&dir, "gl", "v^6 + 3v^4 + 6v^2 + 7 + 6v^-2 + 3v^-4 + v^-6\n");
    let gbar = write(&dir, "gbar", q3);
    let ok = spider(&["period-check", "--p", "3", "--ideal", "sl3", "--gl", &gl, "--gbar", &gbar]);
    assert_eq!((ok.code, ok.stdout.as_str()), (0, "consistent\n"), "{}", ok.stderr);
    let off = write(&dir, "off", "v^2 + 2 + v^-2\n");
    let no = spider(&["period-check", "--p", "3", "--ideal", "sl3", "--gl", &off, "--gbar", &gbar]);
    assert_eq!(no.stdout, "obstructed\n");
    let composite = spider(&["period-check", "--p", "4", "--ideal", "sl3", "--gl", &gl, "--gbar", &gbar]);
    assert_eq!(composite.code, 3);
}

#[test]
fn exit_codes() {
    assert_eq!(spider(&["no-such-command"]).code, 3);
    assert_eq!(spider(&["verify", "--suite", "nope"]).code, 3);
    assert_eq!(spider(&["--max-clasp-weight", "2", "clasp-expand", "--a", "2", "--b", "1"]).code, 4);
    assert_eq!(spider(&["theta", "--sl3", "1,0;0,0;0,0"]).code, 3);
    assert_eq!(spider(&["--help"]).code, 0);
    let v = spider(&["verify", "--suite", "sl3-recurrences", "--max", "6"]);
    assert_eq!(v.code, 0, "{}", v.stdout);
}

#[test]
fn binary_uses_cache_directory() {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_spider");
    let go = || {
        Command::new(bin)
            .args(["clasp-expand", "--a", "1", "--b", "2"])
            .env("SPIDER_CACHE", dir.path())
            .output()
            .unwrap()
    };
    let first = go();
    assert!(first.status.success());
    let entries: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
    assert!(!entries.is_empty());
    let second = go();
    assert_eq!(first.stdout, second.stdout);
    let fail = Command::new(bin).args(["clasp-expand", "--a", "x", "--b", "1"]).output().unwrap();
    assert_eq!(fail.status.code(), Some(3));
}
