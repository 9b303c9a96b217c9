use std::path::PathBuf;

use ltop::doc::{parse_document, serialize_document};
use ltop_cli::run_command;

fn corpus(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "corpus", name].iter().collect();
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("ltop").chain(args.iter().copied());
    let code = run_command(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn fixture_documents_are_canonical() {
    for name in ["fixtures_f2.json", "fixtures_f3.json", "fixtures_d4.json"] {
        let text = std::fs::read_to_string(corpus(name)).unwrap();
        let doc = parse_document(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(serialize_document(&doc), text, "{name}");
    }
}

#[test]
fn hand_written_documents_canonicalize_in_one_pass() {
    for name in ["inclusion.json", "corrupted_sierpinski.json"] {
        let text = std::fs::read_to_string(corpus(name)).unwrap();
        let once = serialize_document(&parse_document(&text).unwrap());
        let twice = serialize_document(&parse_document(&once).unwrap());
        assert_eq!(once, twice, "{name}");
    }
}

#[test]
fn invalid_documents_are_input_errors() {
    let (code, _, err) = run(&["--doc", &corpus("missing_top.json"), "check", "t0", "--space", "S"]);
    assert_eq!(code, 2);
    assert!(err.contains("spaces.S") && err.contains("top"), "{err}");
    let (code, _, err) = run(&["--doc", &corpus("n5.json"), "check", "t0", "--space", "LS_F2"]);
    assert_eq!(code, 2);
    assert!(err.contains("frames.N5"), "{err}");
}

#[test]
fn frame_and_topology_checks_report_witnesses() {
    let (code, out, _) = run(&["--doc", &corpus("n5.json"), "check", "frame", "--frame", "N5"]);
    assert_eq!(code, 1);
    assert!(out.contains("(c, a, b)"), "{out}");
    let (code, out, _) = run(&["--doc", &corpus("missing_top.json"), "check", "topology", "--space", "S"]);
    assert_eq!(code, 1);
    assert!(out.contains("missing constant top"), "{out}");
    let (code, out, _) = run(&["check", "frame", "--frame", "D4"]);
    assert_eq!((code, out.as_str()), (0, "PASS frame D4\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["check", "continuous", "--map", "nope"]).0, 2);
    assert_eq!(run(&["--max-nodes", "2", "check", "sober", "--space", "P3"]).0, 3);
    assert_eq!(run(&["check", "sober", "--space", "LS_F3"]).0, 0);
}

#[test]
fn p3_is_not_sober() {
    let (code, out, _) = run(&["check", "sober", "--space", "P3"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("FAIL sober P3\n  witness: frame map"), "{out}");
}

#[test]
fn reflect_sober_emits_a_round_tripping_document() {
    let (code, out, _) = run(&["reflect", "sober", "--space", "P3"]);
    assert_eq!(code, 0);
    let doc = parse_document(&out).unwrap();
    assert_eq!(doc.space("SOB").unwrap().len(), 3);
    assert_eq!(serialize_document(&doc), out);

    let path = std::env::temp_dir().join(format!("ltop-sob-{}.json", std::process::id()));
    std::fs::write(&path, &out).unwrap();
    let p = path.to_string_lossy().into_owned();
    assert_eq!(run(&["--doc", &p, "check", "sober", "--space", "SOB"]).0, 0);
    assert_eq!(run(&["--doc", &p, "check", "embedding", "--map", "eta"]).0, 0);
    std::fs::remove_file(path).ok();
}

#[test]
fn generated_documents_validate() {
    for args in [
        vec!["generate", "sierpinski", "--frame", "F3"],
        vec!["generate", "product", "--spaces", "LS_F2,LS_F2"],
        vec!["generate", "subspace", "--space", "LS_F3", "--points", "m,1"],
        vec!["generate", "quotient", "--space", "XYZ", "--mapping", "x=u,y=u,z=v"],
        vec!["reflect", "t0", "--space", "XYZ"],
    ] {
        let (code, out, err) = run(&args);
        assert_eq!(code, 0, "{args:?}: {err}");
        let doc = parse_document(&out).unwrap();
        assert_eq!(serialize_document(&doc), out, "{args:?}");
    }
}

#[test]
fn inclusion_epi_and_closure() {
    let doc = corpus("inclusion.json");
    let (code, out, _) = run(&["--doc", &doc, "check", "epi", "--map", "inc", "--category", "ltop0"]);
    assert_eq!(code, 1);
    assert!(out.contains("(1, 0) and (1, 1)"), "{out}");
    let (code, out, _) = run(&["--doc", &doc, "closure", "--space", "S", "--subset", "a"]);
    assert_eq!((code, out.as_str()), (0, "{a}\n"));
}

#[test]
fn verify_small_fixtures() {
    let (code, out, _) = run(&["verify", "all", "--frame", "F2", "--max-points", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("PASS F2 sierpinski-object:") && out.contains("cases"), "{out}");
    assert!(out.trim_end().ends_with("all claims passed"));
}

#[test]
fn corrupted_sierpinski_counterexample_replays() {
    let doc = corpus("corrupted_sierpinski.json");
    let args = ["--json", "--doc", &doc, "verify", "sierpinski-object", "--frame", "F2", "--candidate", "LS"];
    let (code, out, _) = run(&args);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let report = &v["reports"][0];
    assert_eq!(report["passed"], false);
    let payload = serde_json::to_string(&report["counterexample"]["document"]).unwrap();
    let replayed = parse_document(&payload).unwrap();
    assert!(!replayed.map("g").unwrap().is_continuous());
}
