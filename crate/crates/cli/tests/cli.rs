use std::process::{Command, Output};

use serde_json::Value;

fn jm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jmoments"))
        .args(args)
        .env_remove("JMOMENTS_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = jm(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    serde_json::from_str(&stdout(&a)).unwrap()
}

#[test]
fn albert_examples() {
    assert_eq!(stdout(&["albert", "moment", "--k", "4", "--n", "3"]), "417\n");
    assert_eq!(stdout(&["albert", "moment", "--k", "2"]), "4n^2 - 3n\n");
    assert_eq!(stdout(&["albert", "mixed", "--m", "3:2", "--n", "3"]), "2709\n");
    assert_eq!(stdout(&["albert", "mixed", "--m", "3:2"]), "192n^3 - 324n^2 + 147n\n");
    assert_eq!(stdout(&["albert", "moment", "--k", "5"]), "0\n");
}

#[test]
fn spin_examples() {
    assert_eq!(stdout(&["spin", "moment", "--k", "6"]), "n^3 + 21n^2 + 83n + 15\n");
    for method in ["enum", "gf", "closed"] {
        assert_eq!(
            stdout(&["spin", "moment", "--k", "8", "--method", method]),
            "n^4 + 40n^3 + 422n^2 + 1112n + 105\n"
        );
    }
    let twenty = stdout(&["spin", "moment", "--k", "20", "--method", "gf"]);
    assert!(twenty.starts_with("n^10 + 280n^9 + 31695n^8"), "{twenty}");
    assert!(twenty.trim_end().ends_with("287095866840n + 654729075"));
    assert_eq!(
        stdout(&["spin", "connected", "--order", "8"]),
        "x^2: 1/2 n + 1/2\nx^4: 3/4 n + 1/4\nx^6: 7/6 n + 1/6\nx^8: 15/8 n + 1/8\n"
    );
    assert_eq!(stdout(&["spin", "perturb", "--m", "3:2"]), "9/8 n^2 + 9/2 n + 15/8\n");
    assert_eq!(stdout(&["spin", "perturb", "--m", "3:2", "--mixed", "--n", "1"]), "60\n");
}

#[test]
fn orbit_inventory() {
    let v = json(&["spin", "orbit", "--m", "3"]);
    assert_eq!(v["group_order"], 48);
    assert_eq!(v["orbits"].as_array().unwrap().len(), 14);
    let text = stdout(&["spin", "orbit", "--m", "3"]);
    assert!(text.starts_with("m = 3, |B_m| = 48, 14 orbits\n"));
    assert!(text.contains("weight 1/48 n^3"));
}

#[test]
fn moment_json_schema() {
    let v = json(&["albert", "moment", "--k", "4", "--n", "3"]);
    assert_eq!(v["k"], 4);
    assert_eq!(v["evaluations"]["n=3"], "417/1");
    let coeffs: Vec<&str> = v["polynomial"]["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    assert_eq!(coeffs, ["0/1", "31/1", "-60/1", "32/1"]);
    let mixed = json(&["albert", "mixed", "--m", "3:2"]);
    assert_eq!(mixed["m"], "3:2");
    assert_eq!(mixed["evaluations"], serde_json::json!({}));
}

#[test]
fn csv_output() {
    assert_eq!(
        stdout(&["albert", "moment", "--k", "2", "--format", "csv"]),
        "k,power,coefficient\n2,1,-3/1\n2,2,4/1\n"
    );
    let t = stdout(&["table", "--paper", "1", "--max-k", "4", "--format", "csv"]);
    assert_eq!(t.lines().count(), 1 + 2 + 3);
}

#[test]
fn tables() {
    let two = json(&["table", "--paper", "2"]);
    let rows = two.as_array().unwrap();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[10]["k"], 20);
    let one = stdout(&["table", "--paper", "1", "--max-k", "6"]);
    assert_eq!(
        one,
        "  2  4n^2 - 3n\n  4  32n^3 - 60n^2 + 31n\n  6  299n^4 - 930n^3 + 1081n^2 - 435n\n"
    );
    let long = stdout(&["table", "--paper", "1", "--max-k", "8", "--allow-long"]);
    assert!(long.contains("  8  2996n^5 - 26577/2 n^4 + 25471n^3 - 46875/2 n^2 + 8364n\n"));
}

#[test]
fn verify_reports() {
    let v = json(&["verify", "--algebra", "albert", "--k", "6", "--n", "3"]);
    assert_eq!(v[0]["diagram_value"], "7533");
    assert_eq!(v[0]["oracle_value"], "7533");
    assert_eq!(v[0]["equal"], true);
    assert_eq!(v[0]["status"], "pass");

    let v = json(&["verify", "--algebra", "spin", "--k", "8"]);
    assert!(v.as_array().unwrap().iter().all(|r| r["status"] == "pass"));

    let v = json(&["verify", "--mixed", "spin", "3:2"]);
    assert_eq!(v[0]["status"], "paper-divergence");
    assert_eq!(v[0]["oracle_value"], "9/8 n^2 + 9/2 n + 15/8");
    assert_eq!(v[0]["paper_value"], "9/8 n^2 + 7/2 n + 15/8");

    let all = jm(&["verify"]);
    assert_eq!(all.status.code(), Some(0));
    let text = String::from_utf8(all.stdout).unwrap();
    assert!(!text.contains("mismatch"));
    assert_eq!(text.matches("paper-divergence").count(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(jm(&["albert", "moment", "--k", "x"]).status.code(), Some(2));
    assert_eq!(jm(&["albert", "mixed", "--m", "2:1"]).status.code(), Some(2));
    assert_eq!(jm(&["verify", "--algebra", "albert", "--k", "4", "--n", "4"]).status.code(), Some(2));
    assert_eq!(jm(&["albert", "moment", "--k", "10"]).status.code(), Some(3));
    assert_eq!(jm(&["table", "--paper", "1", "--max-k", "8"]).status.code(), Some(3));
    assert_eq!(jm(&["spin", "moment", "--k", "14", "--method", "enum"]).status.code(), Some(3));
    assert_eq!(jm(&["--workers", "0", "spin", "moment", "--k", "4"]).status.code(), Some(2));
}

#[test]
fn octonion_dump() {
    let v = json(&["dump-octonion-table"]);
    let p = &v["products"];
    // e2 e3 = e4 and e2 e7 = -e8.
    assert_eq!(p[1][2], 4);
    assert_eq!(p[1][6], -8);
    let alt = json(&["dump-octonion-table", "--table", "alternate"]);
    assert_ne!(alt["lines"], v["lines"]);
}

#[test]
fn identical_across_worker_counts() {
    let max = std::thread::available_parallelism().map_or(1, |n| n.get()).to_string();
    let commands: [&[&str]; 7] = [
        &["table", "--paper", "1", "--max-k", "6", "--json"],
        &["albert", "mixed", "--m", "3:2", "--json"],
        &["albert", "mixed", "--m", "3:2", "--audit"],
        &["table", "--paper", "2", "--format", "csv"],
        &["spin", "orbit", "--m", "4", "--json"],
        &["spin", "perturb", "--m", "3:1,5:1"],
        &["verify", "--json"],
    ];
    for cmd in commands {
        let runs: Vec<String> = ["1", "4", max.as_str()]
            .iter()
            .map(|w| {
                let mut a = vec!["--workers", w];
                a.extend_from_slice(cmd);
                stdout(&a)
            })
            .collect();
        assert_eq!(runs[0], runs[1], "{cmd:?}");
        assert_eq!(runs[0], runs[2], "{cmd:?}");
    }
    let via_env = Command::new(env!("CARGO_BIN_EXE_jmoments"))
        .args(["spin", "moment", "--k", "6"])
        .env("JMOMENTS_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(via_env.stdout).unwrap(), "n^3 + 21n^2 + 83n + 15\n");
}
