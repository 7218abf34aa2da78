//! End-to-end checks of the `wmpc` binary: exit codes, solution
//! self-verification through `eval`, and the determinism acceptance
//! gate.

use std::fs;
use std::panic;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

fn criterion(id: usize, name: &str, body: impl FnOnce() + panic::UnwindSafe) {
    let result = panic::catch_unwind(body);
    let verdict = if result.is_ok() { "PASS" } else { "FAIL" };
    println!("[criterion {id:02}] {name}: {verdict}");
    if let Err(payload) = result {
        panic::resume_unwind(payload);
    }
}

fn temp(name: &str) -> PathBuf {
    static COUNTER: AtomicUsize = AtomicUsize::new(0);
    let id = COUNTER.fetch_add(1, Ordering::Relaxed);
    std::env::temp_dir().join(format!(
        "wmpc-accept-{}-{id}-{name}",
        std::process::id()
    ))
}

fn wmpc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wmpc"))
        .args(args)
        .output()
        .expect("the wmpc binary should run")
}

fn wmpc_ok(args: &[&str]) -> String {
    let out = wmpc(args);
    assert!(
        out.status.success(),
        "wmpc {args:?} exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("stdout should be UTF-8")
}

/// Runs the command twice, each writing `--output` to a fresh file, and
/// asserts the two files agree byte for byte.
fn assert_deterministic(label: &str, args: &[&str]) {
    let mut outputs = Vec::new();
    for round in 0..2 {
        let path = temp(&format!("{label}-{round}"));
        let path_str = path.to_str().unwrap().to_owned();
        let mut full = args.to_vec();
        full.push("--output");
        full.push(&path_str);
        wmpc_ok(&full);
        let content = fs::read(&path).unwrap();
        assert!(!content.is_empty(), "{label}: empty output file");
        outputs.push(content);
    }
    assert_eq!(outputs[0], outputs[1], "{label}: reruns differ");
}

#[test]
fn criterion_12_determinism() {
    criterion(
        12,
        "every solver and generator, run twice, writes byte-identical files",
        || {
            assert_deterministic(
                "gen-partition-msr",
                &["gen", "partition-msr", "--set", "1,2,3,4"],
            );
            assert_deterministic(
                "gen-3partition-ssr",
                &["gen", "3partition-ssr", "--k", "2", "--values", "1,2,3,1,2,3"],
            );
            assert_deterministic(
                "gen-clique-sp",
                &["gen", "clique-sp", "--edges", "1-2,1-3,2-3", "--k", "3"],
            );
            assert_deterministic(
                "gen-sp-dapmsr",
                &["gen", "sp-dapmsr", "--set", "1,2,3,4", "--k", "2"],
            );
            assert_deterministic("gen-random-drp", &["gen", "random-drp", "--n", "3", "--seed", "7"]);
            assert_deterministic(
                "gen-rack-drp",
                &[
                    "gen", "rack-drp", "--racks", "2", "--per-rack", "2", "--intra", "1",
                    "--inter", "10",
                ],
            );
            assert_deterministic(
                "gen-random-dap",
                &["gen", "random-dap", "--n", "3", "--values", "8", "--seed", "5"],
            );
            assert_deterministic(
                "gen-inverse-dap",
                &["gen", "inverse-dap", "--n", "4", "--per-machine", "2", "--seed", "3"],
            );
            assert_deterministic(
                "gen-sorted-dap",
                &["gen", "sorted-dap", "--n", "3", "--per-machine", "2", "--seed", "1"],
            );

            let drp = temp("drp-input");
            let drp_path = drp.to_str().unwrap();
            wmpc_ok(&[
                "gen", "random-drp", "--n", "5", "--seed", "11", "--output", drp_path,
            ]);
            for objective in ["total", "btnk", "msr", "ssr"] {
                assert_deterministic(
                    &format!("solve-drp-{objective}"),
                    &[
                        "solve", "--problem", "drp", "--objective", objective, "--input", drp_path,
                    ],
                );
            }
            assert_deterministic(
                "solve-drp-oracle",
                &[
                    "solve", "--problem", "drp", "--objective", "msr", "--input", drp_path,
                    "--oracle",
                ],
            );

            let dap = temp("dap-input");
            let dap_path = dap.to_str().unwrap();
            wmpc_ok(&[
                "gen", "random-dap", "--n", "3", "--values", "7", "--seed", "2", "--output",
                dap_path,
            ]);
            for objective in ["total", "btnk", "msr", "ssr"] {
                assert_deterministic(
                    &format!("solve-dap-{objective}"),
                    &[
                        "solve", "--problem", "dap", "--objective", objective, "--input", dap_path,
                    ],
                );
            }
            assert_deterministic(
                "solve-dap-oracle",
                &[
                    "solve", "--problem", "dap", "--objective", "total", "--input", dap_path,
                    "--oracle",
                ],
            );

            let gadget = temp("gadget-input");
            let gadget_path = gadget.to_str().unwrap();
            wmpc_ok(&[
                "gen", "sp-dapmsr", "--set", "1,2,3,4", "--k", "2", "--output", gadget_path,
            ]);
            assert_deterministic(
                "solve-sp-graph-msr",
                &[
                    "solve", "--problem", "dap", "--objective", "msr", "--input", gadget_path,
                    "--walk-max-machines", "8",
                ],
            );
        },
    );
}

/// Picks the text after `key` on the line that starts with it.
fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|line| line.strip_prefix(key))
        .map(str::trim)
        .unwrap_or_else(|| panic!("missing {key} in:\n{text}"))
}

fn commas(space_separated: &str) -> String {
    space_separated.split_whitespace().collect::<Vec<_>>().join(",")
}

#[test]
fn solutions_self_verify_through_eval() {
    let drp = temp("verify-drp");
    let drp_path = drp.to_str().unwrap();
    wmpc_ok(&[
        "gen", "random-drp", "--n", "4", "--seed", "13", "--output", drp_path,
    ]);
    for objective in ["total", "btnk", "msr", "ssr"] {
        let solution = wmpc_ok(&[
            "solve", "--problem", "drp", "--objective", objective, "--input", drp_path,
        ]);
        let perm = commas(field(&solution, "perm:"));
        let report = wmpc_ok(&["eval", "--input", drp_path, "--perm", &perm]);
        assert_eq!(
            field(&report, &format!("{objective}:")),
            field(&solution, "value:"),
            "{objective} solution does not re-evaluate on the drp instance"
        );
    }

    let dap = temp("verify-dap");
    let dap_path = dap.to_str().unwrap();
    wmpc_ok(&[
        "gen", "random-dap", "--n", "3", "--values", "6", "--seed", "9", "--output", dap_path,
    ]);
    for objective in ["total", "btnk", "msr", "ssr"] {
        let solution = wmpc_ok(&[
            "solve", "--problem", "dap", "--objective", objective, "--input", dap_path,
        ]);
        let perm = commas(field(&solution, "perm:"));
        let splitters = commas(field(&solution, "splitter_indices:"));
        let report = wmpc_ok(&[
            "eval", "--input", dap_path, "--perm", &perm, "--splitters", &splitters,
        ]);
        assert_eq!(
            field(&report, &format!("{objective}:")),
            field(&solution, "value:"),
            "{objective} solution does not re-evaluate on the dap instance"
        );
    }
}

#[test]
fn malformed_matrix_row_exits_2() {
    let path = temp("broken");
    fs::write(&path, "drp\n2\nT:\n1 2\n3\nC:\n0 0\n0 0\n").unwrap();
    let out = wmpc(&[
        "solve", "--problem", "drp", "--objective", "total", "--input",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 5"), "stderr: {stderr}");
}

#[test]
fn exceeded_size_cap_exits_3() {
    let path = temp("capped");
    fs::write(&path, "drp\n2\nT:\n1 2\n3 4\nC:\n0 5\n7 0\n").unwrap();
    let out = wmpc(&[
        "solve", "--problem", "drp", "--objective", "total", "--input",
        path.to_str().unwrap(), "--oracle", "--brute-cap", "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn non_bijective_perm_exits_2() {
    let path = temp("perm");
    fs::write(&path, "drp\n2\nT:\n1 2\n3 4\nC:\n0 5\n7 0\n").unwrap();
    let out = wmpc(&[
        "eval", "--input", path.to_str().unwrap(), "--perm", "1,1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_emits_one_row_per_instance() {
    let text = wmpc_ok(&[
        "bench", "--suite", "inverse-dap", "--objective", "total", "--count", "2", "--n", "3",
    ]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3, "{text}");
    assert!(lines[0].starts_with("instance\tn\tN\tobjective"));
    for row in &lines[1..] {
        let cols: Vec<&str> = row.split('\t').collect();
        assert_eq!(cols[4], "0", "optimized cost should be zero: {row}");
        assert_eq!(cols[6], "inf", "{row}");
        assert_eq!(cols[8], "ok", "{row}");
    }
}
