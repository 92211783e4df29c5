use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn catnet(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_catnet")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

#[test]
fn validate_and_catalysts() {
    let bj = data("boatjeep.net");
    let r = catnet(&["validate", &bj]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("valid"));

    let r = catnet(&["catalysts", &bj, "--json"]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["catalysts"], serde_json::json!(["a", "b"]));

    let r = catnet(&["catalysts", &data("intro.net"), "--json"]);
    assert_eq!(r.json()["catalysts"], serde_json::json!([]));
}

#[test]
fn parse_errors_exit_2_with_locations() {
    let r = catnet(&["validate", &data("bad_catalyst.net"), "--json"]);
    assert_eq!(r.code, 2);
    let v = r.json();
    assert_eq!(v["error"]["kind"], "parse");
    let d = &v["error"]["diagnostics"][0];
    assert_eq!(d["line"], 3);
    assert!(d["message"].as_str().unwrap().contains("`c`"));
    assert!(d["message"].as_str().unwrap().contains("`tau1`"));

    let r = catnet(&["validate", &data("missing.net")]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("cannot read"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(catnet(&["frobnicate"]).code, 2);
    assert_eq!(catnet(&["fire", &data("boatjeep.net")]).code, 2);
    assert_eq!(catnet(&["eq", &data("boatjeep.net"), "-e", "tau2"]).code, 2);
    assert_eq!(catnet(&["--help"]).code, 0);
}

#[test]
fn fire_and_reach() {
    let bj = data("boatjeep.net");
    let r = catnet(&["fire", &bj, "-m", "b + d", "-t", "tau2"]);
    assert_eq!((r.code, r.stdout.trim()), (0, "b + e"));
    let r = catnet(&["fire", &bj, "-m", "b", "-t", "tau2", "--json"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["enabled"], false);
    assert_eq!(catnet(&["fire", &bj, "-m", "b", "-t", "tau9"]).code, 2);

    let r = catnet(&["reach", &bj, "-m", "a + b + 2 c", "--json"]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["count"], 4);
    assert_eq!(v["truncated"], false);
}

#[test]
fn typecheck_and_normalize() {
    let bj = data("boatjeep.net");
    let r = catnet(&["typecheck", &bj, "-e", "tau2 + tau2"]);
    assert_eq!((r.code, r.stdout.trim()), (0, "2 b + 2 d -> 2 b + 2 e"));
    let r = catnet(&["typecheck", &bj, "-e", "tau1 ; tau2", "--json"]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json()["error"]["diagnostics"][0]["column"], 6);

    let r = catnet(&["normalize", &bj, "-e", "tau2 + tau2", "--json"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["layers"], serde_json::json!([["tau2", "tau2"]]));
}

#[test]
fn equality() {
    let bj = data("boatjeep.net");
    let r = catnet(&["eq", &bj, "-e", "tau2 + tau2", "-e", "(tau2 + id(b + d)) ; (id(b + e) + tau2)"]);
    assert_eq!((r.code, r.stdout.trim()), (0, "equal"));
    let r = catnet(&[
        "eq", &bj, "-e", "tau2 + tau2", "-e", "(tau2 + id(b + d)) ; (id(b + e) + tau2)", "--oracle", "--json",
    ]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["agree"], true);

    let k = data("k.net");
    let r = catnet(&[
        "eq", &k, "-e", "(id(a) + tg) ; (tf + id(b2))", "-e", "(tf + id(a2)) ; (id(b) + tg)", "--oracle",
    ]);
    assert_eq!(r.code, 1, "{}", r.stdout);
}

#[test]
fn groth_equality() {
    let bj = data("boatjeep.net");
    let e = "tau2 + tau2";
    let r = catnet(&["groth-eq", &bj, "-x", "[b,b]", "-p", "[2,1]", "-e", e, "-x2", "[b,b]", "-p2", "[1,2]", "-e2", e]);
    assert_eq!(r.code, 1, "{}", r.stderr);
    let r = catnet(&["groth-eq", &bj, "-x", "[b,b]", "-p", "[2,1]", "-e", e, "-x2", "[b,b]", "-p2", "[2,1]", "-e2", e]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let r = catnet(&["groth-eq", &bj, "-x", "[b]", "-p", "[1]", "-e", e, "-x2", "[b]", "-p2", "[1]", "-e2", e]);
    assert_eq!(r.code, 2);
}

#[test]
fn premonoidal_commands() {
    let k = data("k.net");
    let r = catnet(&["interchange-witness", &k, "-i", "k", "-m", "k + a + a2", "--max-firings", "2", "--json"]);
    assert_eq!(r.code, 1);
    let w = &r.json()["witness"];
    assert_eq!(w["f"]["layers"], serde_json::json!([["tf"]]));
    assert_eq!(w["g"]["layers"], serde_json::json!([["tg"]]));

    let bj = data("boatjeep.net");
    let r = catnet(&["interchange-witness", &bj, "-i", "a + b", "-m", "a + b + 2 c + d", "--max-firings", "2"]);
    assert_eq!((r.code, r.stdout.trim()), (0, "no witness"));

    let r = catnet(&["premonoidal-check", &k, "-i", "k", "-m", "k + a + a2", "--json"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.json()["status"], "pass");
    assert_eq!(catnet(&["premonoidal-check", &k, "-i", "a", "-m", "k + a"]).code, 2);

    let r = catnet(&["padding-check", &bj, "-i", "b", "-j", "b", "-m", "b + 2 d", "--json"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["status"], "bijective");
    let r = catnet(&["padding-check", &k, "-i", "k", "-j", "k", "-m", "k + a + a2", "--json"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["status"], "not-injective");
}

#[test]
fn budgets_exit_3() {
    let k = data("k.net");
    let r = catnet(&["premonoidal-check", &k, "-i", "k", "-m", "k + a + a2", "--max-states", "2", "--json"]);
    assert_eq!(r.code, 3, "{}", r.stdout);
    assert_eq!(r.json()["error"]["kind"], "budget");
    let r = catnet(&["padding-check", &k, "-i", "k", "-j", "k", "-m", "k + a + a2", "--max-states", "2"]);
    assert_eq!(r.code, 3);
}

#[test]
fn dot_export() {
    let r = catnet(&["export-dot", &data("boatjeep.net")]);
    assert_eq!(r.code, 0);
    let golden = std::fs::read_to_string(data("boatjeep.dot")).unwrap();
    assert_eq!(r.stdout, golden);

    let r = catnet(&["export-dot", &data("empty.net")]);
    assert_eq!(r.stdout, "digraph empty {\n}\n");

    let r = catnet(&["export-dot", &data("boatjeep.net"), "-e", "tau1 + tau2"]);
    assert!(r.stdout.contains("{ rank=same; f0; f1; }"), "{}", r.stdout);
}

#[test]
fn files_written_at_runtime() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.net");
    std::fs::write(&path, "net n { species x; transition t: x -> 0; }").unwrap();
    let p = path.to_str().unwrap();
    let r = catnet(&["fire", p, "-m", "x", "-t", "t"]);
    assert_eq!((r.code, r.stdout.trim()), (0, "0"));
    std::fs::write(&path, "net n { species x; transition t: x -> y; }").unwrap();
    let r = catnet(&["validate", p]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("1:39"), "{}", r.stderr);
}
