//! End-to-end acceptance gate: one pass/fail line per criterion.

use grayscope_cli::suites::run_suite;
use grayscope_cli::{run, Cli, Cmd, Format};

fn check_all_report() -> (i32, String) {
    let out = run(&Cli {
        format: Format::Text,
        max_dim: None,
        witness_limit: None,
        cmd: Cmd::Check { suite: "all".into() },
    });
    (out.code, out.out)
}

#[test]
fn acceptance() {
    let criteria: &[(&str, &str)] = &[
        ("strict category laws hold and every table mutation is rejected", "strict-laws"),
        ("the eight dualities form the expected involutive group", "dualities"),
        ("tuple-based and formula-based cylinder builds agree", "cylinders"),
        ("comma builds agree across routes, factor uniquely, and dualize correctly", "commas"),
        ("gray slices validate with their forgetful functors", "gray-slice"),
        ("slice fibers match the dualized mapping homs", "fibers"),
        ("module axioms hold and agree with the strict actions", "modules"),
        ("the comma construction is functorial in square data", "bifunctor"),
        ("the square action restricts strictly to the witness slice", "strict-restriction"),
        ("total categories match the direct rebuild and are cartesian", "grothendieck"),
        ("whiskering verdicts detect the interchanger and flip under the reversed orientation", "obstruction"),
    ];
    let mut failed = Vec::new();
    for (i, (desc, suite)) in criteria.iter().enumerate() {
        let ok = matches!(run_suite(suite), Ok(Some(_)));
        println!("criterion {:2}: {} — {}", i + 1, if ok { "pass" } else { "FAIL" }, desc);
        if !ok {
            failed.push(*suite);
        }
    }
    let (ca, ra) = check_all_report();
    let (cb, rb) = check_all_report();
    let ok = ca == 0 && cb == 0 && ra == rb;
    println!(
        "criterion 12: {} — reports are byte-identical across runs",
        if ok { "pass" } else { "FAIL" }
    );
    if !ok {
        failed.push("determinism");
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
