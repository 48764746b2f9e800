use std::path::PathBuf;
use std::process::{Command, Output};

use deltak::doc::{parse_document, Document};
use deltak::field::Field;
use deltak::simplicial::free_standard;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deltak"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).expect("tmp dir exists");
    dir.join(name)
}

#[test]
fn factorize_prints_the_split_pair() {
    let out = run(&["factorize", "--map", "1,0,1", "--target", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "mono (0,1,1), perm (1,0,2)\n");

    let out = run(&["factorize", "--map", "1,0", "--target", "1"]);
    assert_eq!(stdout(&out), "mono (0,1), perm (1,0)\n");
}

#[test]
fn factorize_reports_closure_failures_as_a_negative_verdict() {
    let out = run(&[
        "factorize", "--map", "0,1,0,1", "--target", "1", "--family", "cyclic",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("no factorization"));
}

#[test]
fn validate_distinguishes_good_bad_and_malformed_documents() {
    let good = tmp("good.json");
    let module = free_standard(Field::Rational, 1, 3);
    let text = Document::from_module(&module, None).to_string_pretty();
    std::fs::write(&good, &text).unwrap();
    let out = run(&["validate", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));

    let bad = tmp("bad.json");
    let mut doc = match parse_document(&text).unwrap() {
        Document::Simplicial(d) => d,
        _ => panic!("expected a module document"),
    };
    doc.faces[0][0].entries[0] = "5".into();
    std::fs::write(&bad, Document::Simplicial(doc).to_string_pretty()).unwrap();
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("invalid"));

    let broken = tmp("broken.json");
    std::fs::write(&broken, "{\"type\": \"simplicial\"").unwrap();
    let out = run(&["validate", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pi_requires_degeneracies() {
    let point = tmp("point.json");
    let out = run(&[
        "generate", "--kind", "point", "--max-degree", "3",
        "--json-out", point.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["pi", point.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generation_is_byte_deterministic() {
    let args = ["generate", "--kind", "module", "--seed", "7", "--max-degree", "3"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn compare_judges_a_map_document() {
    let map_path = tmp("identity_map.json");
    let module = free_standard(Field::Rational, 1, 3);
    let identity = deltak::simplicial::SimplicialMap::identity(&module);
    let doc = Document::Map(deltak::doc::MapDoc::from_map(&identity, None));
    std::fs::write(&map_path, doc.to_string_pretty()).unwrap();
    let out = run(&["compare", "--map", map_path.to_str().unwrap(), "--mode", "chain"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(stdout(&out), "equivalent (chain)\n");

    let zero_path = tmp("zero_map.json");
    let hollow = deltak::simplicial::boundary_module(Field::Rational, 2, 3);
    let zero = deltak::simplicial::SimplicialMap::zero(&hollow, &hollow).unwrap();
    std::fs::write(
        &zero_path,
        Document::Map(deltak::doc::MapDoc::from_map(&zero, None)).to_string_pretty(),
    )
    .unwrap();
    let out = run(&["compare", "--map", zero_path.to_str().unwrap(), "--mode", "pi"]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert_eq!(stdout(&out), "not equivalent (pi)\n");
}

#[test]
fn homology_agrees_between_stdout_and_json() {
    let hollow = tmp("hollow.json");
    run(&[
        "generate", "--kind", "boundary", "--n", "2", "--max-degree", "3",
        "--json-out", hollow.to_str().unwrap(),
    ]);
    let out = run(&["homology", hollow.to_str().unwrap(), "--normalized"]);
    assert_eq!(stdout(&out), "H_0: 1\nH_1: 1\nH_2: 0\nH_3: 0\n");

    let json_path = tmp("hollow_betti.json");
    run(&[
        "homology", hollow.to_str().unwrap(), "--normalized",
        "--json-out", json_path.to_str().unwrap(),
    ]);
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    assert_eq!(parsed["betti"], serde_json::json!([1, 1, 0, 0]));
}

#[test]
fn resolve_emits_an_exact_complex() {
    let out = run(&["resolve", "--internal-degree", "3", "--length", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = parse_document(&stdout(&out)).unwrap();
    match doc {
        Document::Chain(c) => {
            let complex = c.to_complex().unwrap();
            complex.validate().unwrap();
            assert_eq!(complex.dims(), &[1, 3, 3, 1, 0]);
        }
        _ => panic!("expected a chain document"),
    }
}

#[test]
fn map_documents_may_reference_module_files() {
    let module = free_standard(Field::Prime(5), 1, 2);
    let module_path = tmp("shared_module.json");
    std::fs::write(&module_path, Document::from_module(&module, None).to_string_pretty())
        .unwrap();
    let map_doc = serde_json::json!({
        "type": "map",
        "source": { "file": "shared_module.json" },
        "target": { "file": "shared_module.json" },
        "components": (0..=2).map(|n| {
            let d = module.dim(n);
            serde_json::json!({
                "rows": d,
                "cols": d,
                "entries": (0..d * d)
                    .map(|k| if k % (d + 1) == 0 { "1" } else { "0" })
                    .collect::<Vec<_>>(),
            })
        }).collect::<Vec<_>>(),
    });
    let map_path = tmp("referencing_map.json");
    std::fs::write(&map_path, format!("{map_doc:#}\n")).unwrap();
    let out = run(&["compare", "--map", map_path.to_str().unwrap(), "--mode", "pi"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn selfcheck_passes_over_a_prime_field() {
    let out = run(&["selfcheck", "--field", "p:5"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).ends_with("selfcheck passed\n"));
}

#[test]
fn report_shows_both_interpretations() {
    let out = run(&["report", "--split-level", "2", "--pair-level", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("interpretation literal: splitting fails"));
    assert!(text.contains("interpretation amended: splitting holds"));
}

#[test]
fn unknown_family_is_an_input_error() {
    let out = run(&["factorize", "--map", "0,1", "--target", "1", "--family", "dihedral"]);
    assert_eq!(out.status.code(), Some(2));
}
