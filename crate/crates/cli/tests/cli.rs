use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const INTRO_VINE: &str = r#"{"kind":"vine","ground":["a","b","c","d"],
 "nodes":[["a"],["b"],["c"],["d"],["a","b"],["b","c"],["b","d"],
          ["a","b","c"],["b","c","d"],["a","b","c","d"]]}"#;

const CYCLIC_DOMAIN: &str = r#"{"kind":"domain","alternatives":["a","b","c"],
 "preferences":[["a","b","c"],["b","c","a"],["c","a","b"]]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splitmerge")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "v.json", INTRO_VINE);
    let bad = write(dir.path(), "d.json", CYCLIC_DOMAIN);
    let junk = write(dir.path(), "j.json", "{ nope");
    assert_eq!(code(&run(&["verify", &good])), 0);
    assert_eq!(code(&run(&["verify", "--strict", &good])), 0);
    let o = run(&["--format", "json", "verify", &bad]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("domain.never_bottom"));
    assert_eq!(code(&run(&["verify", &junk])), 2);
    assert_eq!(code(&run(&["--kind", "domain", "verify", &good])), 2);
    assert_eq!(code(&run(&["verify", "/definitely/not/here.json"])), 2);
}

#[test]
fn direct_and_transport_conversions_agree() {
    let dir = tempfile::tempdir().unwrap();
    let v = write(dir.path(), "v.json", INTRO_VINE);
    for to in ["matgraph", "domain", "lattice", "matrix"] {
        let a = run(&["--format", "json", "convert", &v, "--to", to]);
        let b = run(&["--format", "json", "convert", &v, "--to", to, "--via", "transport"]);
        assert_eq!(code(&a), 0, "{to}");
        assert_eq!(a.stdout, b.stdout, "{to}");
    }
    let d = run(&["--format", "json", "convert", &v, "--to", "domain"]);
    let dpath = write(dir.path(), "d.json", &stdout(&d));
    let back = run(&["--format", "json", "convert", &dpath, "--to", "vine"]);
    let original = run(&["--format", "json", "convert", &v, "--to", "vine"]);
    assert_eq!(back.stdout, original.stdout);
    assert!(stdout(&d).contains("\"preferences\""));
}

#[test]
fn analyze_reports_statistics() {
    let dir = tempfile::tempdir().unwrap();
    let v = write(dir.path(), "v.json", INTRO_VINE);
    let o = run(&["analyze", &v]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("richness: 2"), "{text}");
    assert!(text.contains("first ranks: a:1 b:4 c:2 d:1"), "{text}");
    assert!(text.contains("automorphisms: 2"), "{text}");
}

#[test]
fn count_modes() {
    let f = run(&["count", "--n", "12"]);
    assert_eq!(code(&f), 0);
    assert!(stdout(&f).contains("unlabeled=17626824704000"));
    let r = run(&["count", "--n", "12", "--mode", "recursive"]);
    assert_eq!(f.stdout, r.stdout);
    let g = run(&["count", "--n", "5", "--mode", "generate"]);
    assert_eq!(code(&g), 0);
    assert!(stdout(&g).contains("labeled=480 unlabeled=6"));
    assert_eq!(code(&run(&["count", "--n", "8", "--mode", "generate"])), 2);
    assert_eq!(code(&run(&["count", "--n", "65"])), 2);
}

#[test]
fn catalog_is_byte_identical_across_runs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let out_a = a.path().join("out");
    for dir in [&out_a, &b.path().to_path_buf()] {
        let o = run(&["catalog", "--n", "5", "--out", dir.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
    }
    for name in ["catalog_n5.jsonl", "catalog_n5.txt"] {
        let x = fs::read(out_a.join(name)).unwrap();
        let y = fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name}");
    }
    let lines = fs::read_to_string(out_a.join("catalog_n5.jsonl")).unwrap();
    assert_eq!(lines.lines().count(), 6);
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
