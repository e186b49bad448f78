use grayscope_cli::{run, BuildArgs, BuildCmd, Cli, Cmd, Format};
use grayscope_core::doc::{self, Document};
use grayscope_core::gray::validate_gray;
use grayscope_core::Error;
use std::path::PathBuf;

fn corpus_root() -> PathBuf {
    match std::env::var("GRAYSCOPE_CORPUS") {
        Ok(p) => PathBuf::from(p),
        Err(_) => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus"),
    }
}

fn cli(cmd: Cmd) -> Cli {
    Cli {
        format: Format::Text,
        max_dim: None,
        witness_limit: None,
        cmd,
    }
}

#[test]
fn corpus_documents_round_trip_byte_for_byte() {
    let root = corpus_root();
    let mut n = 0;
    for entry in std::fs::read_dir(&root).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let d = doc::parse(&text).unwrap();
        assert_eq!(doc::serialize(&d), text, "{}", path.display());
        n += 1;
    }
    assert!(n >= 8);
}

#[test]
fn a_missing_target_entry_is_a_parse_error() {
    let text = std::fs::read_to_string(corpus_root().join("globe-2.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let tgts = v["tgt"].as_array_mut().unwrap();
    tgts.pop();
    let broken = serde_json::to_string(&v).unwrap();
    match doc::parse(&broken) {
        Err(Error::ParseError { .. }) => {}
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn the_shipped_free_interchanger_parses_and_validates() {
    let text = std::fs::read_to_string(corpus_root().join("free-interchange-1-1.json")).unwrap();
    let Document::Gray(gd) = doc::parse(&text).unwrap() else {
        panic!("expected a gray document");
    };
    let g = doc::doc_to_gray(&gd).unwrap();
    validate_gray(&g).unwrap();
}

#[test]
fn validate_accepts_the_corpus_and_rejects_a_broken_table() {
    let root = corpus_root();
    let files: Vec<PathBuf> = std::fs::read_dir(&root)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().and_then(|e| e.to_str()) == Some("json"))
        .collect();
    let out = run(&cli(Cmd::Validate { files }));
    assert_eq!(out.code, 0, "{}", out.out);

    let text = std::fs::read_to_string(root.join("chain-2.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let comp = v["comp"].as_array_mut().unwrap();
    let entry = &mut comp[0];
    entry[3] = serde_json::json!("1:0");
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, serde_json::to_string(&v).unwrap()).unwrap();
    let out = run(&cli(Cmd::Validate { files: vec![bad] }));
    assert_eq!(out.code, 1, "{}", out.out);
    assert!(out.out.starts_with("error:"), "{}", out.out);
}

#[test]
fn build_outputs_are_valid_documents() {
    let root = corpus_root();
    let builds = vec![
        BuildCmd::Cyl { file: root.join("globe-1.json") },
        BuildCmd::Dual { file: root.join("globe-2.json"), spec: "odd".into() },
        BuildCmd::Dual { file: root.join("free-interchange-1-1.json"), spec: "top".into() },
        BuildCmd::Comma {
            f: root.join("endpoint-source.json"),
            g: root.join("endpoint-target.json"),
        },
        BuildCmd::Slice { file: root.join("chain-2.json"), object: 2 },
        BuildCmd::GraySlice { file: root.join("free-interchange-1-1.json"), object: 0 },
        BuildCmd::Wtr {
            base: root.join("globe-2.json"),
            functors: vec![root.join("square-s1.json"), root.join("square-t1.json")],
        },
        BuildCmd::Integrate { file: root.join("family-square.json") },
        BuildCmd::GrayIntegrate { file: root.join("family-mixed-interval.json") },
    ];
    for b in builds {
        let desc = format!("{b:?}");
        let out = run(&cli(Cmd::Build(BuildArgs { what: b })));
        assert_eq!(out.code, 0, "{desc}: {}", out.out);
        doc::parse(&out.out).unwrap_or_else(|e| panic!("{desc}: {e}"));
    }
}

#[test]
fn dual_of_dual_rebuilds_the_original_document() {
    let root = corpus_root();
    let dir = tempfile::tempdir().unwrap();
    let once = dir.path().join("once.json");
    let out = run(&cli(Cmd::Build(BuildArgs {
        what: BuildCmd::Dual { file: root.join("chain-2.json"), spec: "all".into() },
    })));
    assert_eq!(out.code, 0);
    std::fs::write(&once, &out.out).unwrap();
    let out = run(&cli(Cmd::Build(BuildArgs {
        what: BuildCmd::Dual { file: once, spec: "all".into() },
    })));
    assert_eq!(out.code, 0);
    let twice = dir.path().join("twice.json");
    std::fs::write(&twice, &out.out).unwrap();
    let out = run(&cli(Cmd::Compare { a: twice, b: root.join("chain-2.json") }));
    assert_eq!(out.code, 0, "{}", out.out);
}

#[test]
fn compare_distinguishes_documents() {
    let root = corpus_root();
    let same = run(&cli(Cmd::Compare {
        a: root.join("globe-2.json"),
        b: root.join("globe-2.json"),
    }));
    assert_eq!(same.code, 0);
    let diff = run(&cli(Cmd::Compare {
        a: root.join("globe-2.json"),
        b: root.join("chain-2.json"),
    }));
    assert_eq!(diff.code, 1);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for fmt in [Format::Text, Format::Json] {
        let mk = || {
            run(&Cli {
                format: fmt,
                max_dim: None,
                witness_limit: None,
                cmd: Cmd::Check { suite: "dualities".into() },
            })
        };
        let a = mk();
        let b = mk();
        assert_eq!(a.code, 0);
        assert_eq!(a.out, b.out);
    }
}

#[test]
fn witness_limit_truncates_long_reports() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n not json").unwrap();
    let out = run(&Cli {
        format: Format::Text,
        max_dim: None,
        witness_limit: Some(1),
        cmd: Cmd::Validate { files: vec![bad] },
    });
    assert_eq!(out.code, 1);
}
