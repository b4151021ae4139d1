use std::path::Path;
use std::process::{Command, Output};

fn propb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_propb")).args(args).env_remove("PROPB_JOBS").output().expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn table1_text_csv_json() {
    let o = propb(&["table1"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("Goldberg and Russell            28    51    94   174   328"));
    assert!(text.contains("Cherkashin and Kozik            27    57   119   248   516"));
    assert!(text.contains("Discrete greedy                 30    62   126   259   533"));
    assert!(text.contains("Current upper bound [cited]     51   147   421  1212  2401"));

    let o = propb(&["table1", "--format", "csv"]);
    assert!(stdout(&o).contains("\"Discrete greedy\",30,62,126,259,533"));

    let o = propb(&["table1", "--format", "json"]);
    let j = json(&o);
    assert_eq!(j["certificates"].as_array().unwrap().len(), 15);
    assert_eq!(j["certificates"][2]["value"], "30");
}

#[test]
fn bound_examples() {
    let j = json(&propb(&["bound", "--n", "5", "--m", "28", "--method", "ck", "--gamma", "670"]));
    assert_eq!(j["verdict"], "refuted");
    assert_eq!(j["schema"], "propb-certificate/1");

    let j = json(&propb(&["bound", "--n", "5", "--v", "9", "--m", "1", "--method", "discrete", "--gamma", "0"]));
    assert_eq!(j["value"], "0");

    let j = json(&propb(&["bound", "--n", "8", "--method", "steiner"]));
    assert_eq!(j["value"], "2434");
    assert_eq!(j["verdict"], "certified");

    // C(13,5) / (C(6,5) + C(7,5)) = 1287 / 27
    let j = json(&propb(&["bound", "--n", "5", "--v", "13", "--method", "random"]));
    assert_eq!(j["value"], "143/3");
}

#[test]
fn bound_usage_errors() {
    let cases: [&[&str]; 5] = [
        &["bound", "--n", "5", "--method", "schoenheim"],
        &["bound", "--n", "5", "--v", "11", "--method", "schoenheim", "--gamma", "3"],
        &["bound", "--n", "5", "--v", "30", "--method", "locked2"],
        &["bound", "--n", "5", "--method", "nope"],
        &["bound", "--n", "7", "--method", "steiner"],
    ];
    for args in cases {
        let o = propb(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = propb(&["bound", "--n", "5", "--method", "schoenheim"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("needs --v"));
}

#[test]
fn scan_summaries() {
    let o = propb(&["scan", "--n", "5", "--method", "discrete"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("min over v in 11..=200: 30 at v = 25"));
    let o = propb(&["scan", "--n", "5", "--method", "locked1"]);
    assert!(stdout(&o).contains("min over v in 11..=200: 31 at v = 22"));
    assert_eq!(code(&propb(&["scan", "--n", "5", "--method", "discrete", "--v-min", "10"])), 2);
    assert_eq!(code(&propb(&["scan", "--n", "5", "--method", "ck"])), 2);
}

#[test]
fn scan_is_independent_of_jobs() {
    for method in ["discrete", "locked1", "locked2"] {
        let outs: Vec<Vec<u8>> = ["1", "4", "8"]
            .iter()
            .map(|j| {
                let o = propb(&["scan", "--n", "6", "--method", method, "--jobs", j, "--format", "json"]);
                assert_eq!(code(&o), 0);
                o.stdout
            })
            .collect();
        assert_eq!(outs[0], outs[1], "{method}");
        assert_eq!(outs[0], outs[2], "{method}");
    }
    let env = Command::new(env!("CARGO_BIN_EXE_propb"))
        .args(["scan", "--n", "6", "--method", "discrete", "--format", "json"])
        .env("PROPB_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(env.stdout, propb(&["scan", "--n", "6", "--method", "discrete", "--format", "json"]).stdout);
}

#[test]
fn oracle_files() {
    let dir = tempfile::tempdir().unwrap();
    let fano = write(dir.path(), "fano.txt", "7 3\n1 2 3\n1 4 5\n1 6 7\n2 4 6\n2 5 7\n3 4 7\n3 5 6\n");
    let o = propb(&["oracle", "--file", &fano, "--exact"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("2-colorable: no"));
    assert!(out.contains("failure probability = 1 "));

    let p4 = write(dir.path(), "p4.json", r#"{"v": 4, "n": 2, "edges": [[1, 2], [2, 3], [3, 4]]}"#);
    let out = stdout(&propb(&["oracle", "--file", &p4, "--exact"]));
    assert!(out.contains("failure probability = 1/4"));
    assert!(out.contains("sandwich failure <= critical <= permutation bound: ok"));

    let edge = write(dir.path(), "edge.txt", "3 3\n1 2 3\n");
    let out = stdout(&propb(&["oracle", "--file", &edge, "--exact"]));
    assert!(out.contains("2-colorable: yes"));
    assert!(out.contains("failure probability = 0 "));

    let a = stdout(&propb(&["oracle", "--file", &p4, "--mc", "--trials", "5000", "--seed", "3"]));
    let b = stdout(&propb(&["oracle", "--file", &p4, "--mc", "--trials", "5000", "--seed", "3"]));
    assert_eq!(a, b);
    assert!(a.contains("of 5000 trials"));
}

#[test]
fn oracle_malformed_files() {
    let dir = tempfile::tempdir().unwrap();
    let bad_text = write(dir.path(), "bad.txt", "3 2\n1 2\n\n2 x\n");
    let o = propb(&["oracle", "--file", &bad_text, "--exact"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));

    let bad_json = write(dir.path(), "bad.json", r#"{"v": 3, "n": 2, "edges": [[1, 2], [2, 5]]}"#);
    let o = propb(&["oracle", "--file", &bad_json, "--exact"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("edges[1]"));

    let missing = dir.path().join("missing.txt");
    assert_eq!(code(&propb(&["oracle", "--file", missing.to_str().unwrap(), "--exact"])), 2);
    let big = write(dir.path(), "big.txt", "11 2\n1 2\n");
    assert_eq!(code(&propb(&["oracle", "--file", &big, "--exact"])), 2);
}

#[test]
fn replay_round_trip_and_forgery() {
    let dir = tempfile::tempdir().unwrap();
    let cert = stdout(&propb(&["bound", "--n", "6", "--v", "39", "--m", "63", "--method", "locked2", "--strategy", "B"]));
    let good = write(dir.path(), "good.json", &cert);
    let table = write(dir.path(), "table.json", &stdout(&propb(&["table1", "--format", "json"])));
    let o = propb(&["replay", &good, &table]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).matches(": ok").count(), 16);

    let mut forged: serde_json::Value = serde_json::from_str(&cert).unwrap();
    forged["inputs"]["m"] = 64.into();
    let bad = write(dir.path(), "bad.json", &forged.to_string());
    assert_eq!(code(&propb(&["replay", &bad])), 1);

    let junk = write(dir.path(), "junk.json", "[1, 2]");
    assert_eq!(code(&propb(&["replay", &junk])), 2);
}

#[test]
fn theorems_bundle() {
    let o = propb(&["theorems", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let j = json(&o);
    let certs = j["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 10);
    let values: Vec<&str> = certs.iter().map(|c| c["value"].as_str().unwrap()).collect();
    assert_eq!(&values[..3], &["32", "64", "128"]);
    for c in &certs[..3] {
        assert_eq!(c["verdict"], "certified");
    }
    // the last two lock-cascade entries are either complete or flagged
    for (c, target) in certs[3..5].iter().zip(["263", "538"]) {
        assert!(c["verdict"] == "partial" || c["value"] == target);
    }
    assert_eq!(certs[5]["value"], "216");
    assert_eq!(certs[6]["value"], "2434");
}
