use std::process::{Command, Output};

fn charsquare(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charsquare"))
        .args(args)
        .env_remove("CHARSQUARE_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn table_prints_degrees() {
    let o = charsquare(&["table", "sl23", "--no-cache"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("X6"), "{text}");
}

#[test]
fn table_machine_format_is_json() {
    let o = charsquare(&["--format", "machine", "table", "metacyclic:7:3:2", "--no-cache"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degrees"], serde_json::json!([1, 1, 1, 3, 3]));
}

#[test]
fn square_marks_the_odd_constituent() {
    let o = charsquare(&["square", "metacyclic:7:3:2", "--index", "3", "--no-cache"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("X3^2 = X3 + 2*X4"), "{text}");
    assert!(text.contains("unique odd constituent"), "{text}");
}

#[test]
fn sqrt_refuses_even_order() {
    let o = charsquare(&["sqrt", "dihedral:8", "--index", "4", "--no-cache"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(charsquare(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(charsquare(&["square", "sl23", "--index", "x"]).status.code(), Some(2));
}

#[test]
fn bad_spec_exits_1() {
    let o = charsquare(&["table", "cyclic:0", "--no-cache"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn corpus_list_and_single_group_verify() {
    let o = charsquare(&["corpus-list"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l.split_whitespace().next() == Some("sl23")));

    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus.txt");
    std::fs::write(&corpus, "# two groups\nsl23\nheisenberg:3\n").unwrap();
    let o = charsquare(&["--format", "machine", "verify", "--suite", "A", "--corpus", corpus.to_str().unwrap(), "--no-cache"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["groups"], serde_json::json!(["sl23", "heisenberg:3"]));
    assert_eq!(v["totals"]["fail"], 0);
}

#[test]
fn cache_directory_is_populated_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = charsquare(&["--cache", d, "table", "sl23"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = charsquare(&["--cache", d, "table", "sl23"]);
    assert_eq!(stdout(&first), stdout(&second));
}
