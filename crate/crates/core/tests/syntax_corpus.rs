mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use atomxr_core::fuzz::random_program;
use atomxr_core::runtime::BuiltinRegistry;
use atomxr_core::syntax::{parse, pretty_print, validate};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn files(dir: &str) -> Vec<(String, String)> {
    let mut paths: Vec<PathBuf> =
        std::fs::read_dir(common::fixture(dir)).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap()))
        .collect()
}

fn codes(src: &str) -> Vec<String> {
    let program = parse(src).unwrap();
    validate(&program, &BuiltinRegistry::standard()).into_iter().map(|d| d.code).collect()
}

#[test]
fn positive_corpus_is_clean() {
    let corpus = files("syntax/positive");
    assert!(corpus.len() >= 35, "{}", corpus.len());
    for name in ["ref_row1", "ref_row2", "ref_row3", "ref_row4", "ref_row5"] {
        assert!(corpus.iter().any(|(n, _)| n == &format!("{name}.atom")), "{name}");
    }
    for (name, src) in &corpus {
        assert_eq!(codes(src), Vec::<String>::new(), "{name}");
    }
}

#[test]
fn negative_corpus_is_rejected() {
    let corpus = files("syntax/negative");
    assert!(corpus.len() >= 20, "{}", corpus.len());
    for (name, src) in &corpus {
        let diags = parse(src).expect_err(name);
        assert!(!diags.is_empty(), "{name}");
        for d in &diags {
            assert!(d.span.end <= src.len() && d.span.start <= d.span.end, "{name}: {d:?}");
        }
    }
}

#[test]
fn whole_corpus_under_a_second() {
    let all: Vec<_> = ["syntax/positive", "syntax/negative", "syntax/generated"].iter().flat_map(|d| files(d)).collect();
    let start = Instant::now();
    let registry = BuiltinRegistry::standard();
    for (_, src) in &all {
        if let Ok(p) = parse(src) {
            validate(&p, &registry);
        }
    }
    assert!(start.elapsed() < Duration::from_secs(1), "{:?}", start.elapsed());
}

#[test]
fn generated_scripts_fail_where_expected() {
    let gen = files("syntax/generated");
    let find = |n: &str| gen.iter().find(|(f, _)| f == n).map(|(_, s)| s.as_str()).unwrap();
    let program = parse(find("gpt_row4.atom")).unwrap();
    let diags = validate(&program, &BuiltinRegistry::standard());
    assert!(diags.iter().all(|d| d.code == "unknown-function" && d.message.contains("Wait")), "{diags:?}");
    assert!(!diags.is_empty());
    assert_eq!(codes(find("gpt_row3.atom")), ["undeclared-variable"]);
    let row3 = validate(&parse(find("gpt_row3.atom")).unwrap(), &BuiltinRegistry::standard());
    assert!(row3[0].message.contains("scoreboard") && !row3[0].is_error());
    for clean in ["gpt_row1.atom", "gpt_row2.atom", "gpt_row5.atom"] {
        assert!(codes(find(clean)).is_empty(), "{clean}");
    }
}

#[test]
fn corpus_round_trips() {
    for (name, src) in files("syntax/positive").iter().chain(&files("syntax/generated")) {
        let first = parse(src).unwrap();
        let printed = pretty_print(&first);
        let second = parse(&printed).unwrap_or_else(|d| panic!("{name}: {d:?}\n{printed}"));
        assert!(first.structurally_eq(&second), "{name}");
        assert_eq!(pretty_print(&second), printed, "{name}: formatting is not idempotent");
    }
}

#[test]
fn generated_programs_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..1000 {
        let src = random_program(&mut rng);
        let first = parse(&src).unwrap_or_else(|d| panic!("case {i}: {d:?}\n{src}"));
        let printed = pretty_print(&first);
        let second = parse(&printed).unwrap_or_else(|d| panic!("case {i}: {d:?}\n{printed}"));
        assert!(first.structurally_eq(&second), "case {i}\n{src}\n{printed}");
    }
}

#[test]
fn single_quotes_become_double() {
    let p = parse("forever{PlaySound('x');}").unwrap();
    assert_eq!(pretty_print(&p), "forever {\n    PlaySound(\"x\");\n}\n");
}
