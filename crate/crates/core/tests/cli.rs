use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn lst20<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_lst20"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn validate_clean_excerpt_exits_zero() {
    let out = lst20(["validate", "--excerpt", p(&fixture("columnar_window.txt"))]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).ends_with("0 errors, 2 warnings\n"));
}

#[test]
fn validate_strict_window_fails() {
    let out = lst20(["validate", p(&fixture("columnar_window.txt"))]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn no_input_is_a_usage_error() {
    assert_eq!(lst20(["validate"]).status.code(), Some(2));
    assert_eq!(lst20::<_, &str>([]).status.code(), Some(2));
    let missing = lst20(["validate", "/nonexistent/file.txt"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn columnar_inline_columnar_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let inline = dir.path().join("fig.inline");
    let back = dir.path().join("fig.txt");
    let src = fixture("columnar_window.txt");
    let a = lst20([
        "convert",
        "--from",
        "columnar",
        "--to",
        "inline",
        "-o",
        p(&inline),
        p(&src),
    ]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let b = lst20([
        "convert",
        "--from",
        "inline",
        "--to",
        "columnar",
        "-o",
        p(&back),
        p(&inline),
    ]);
    assert_eq!(b.status.code(), Some(0), "{}", String::from_utf8_lossy(&b.stderr));
    assert_eq!(std::fs::read(&back).unwrap(), std::fs::read(&src).unwrap());
}

#[test]
fn json_report_lists_issues() {
    let out = lst20(["validate", "--json", p(&fixture("columnar_window.txt"))]);
    let issues: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let issues = issues.as_array().unwrap();
    assert_eq!(issues.len(), 2);
    assert_eq!(issues[0]["code"], "CLS_ORPHAN_I");
    assert_eq!(issues[0]["severity"], "error");
    assert_eq!(issues[0]["layer"], "CLS");
}

#[test]
fn mutated_entity_is_located() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    let text = std::fs::read_to_string(fixture("columnar_window.txt")).unwrap();
    // Sixth token of the first sentence becomes an orphan E_PER.
    let mutated = text.replacen("\tCC\tO\tB_CLS", "\tCC\tE_PER\tB_CLS", 1);
    assert_ne!(mutated, text);
    std::fs::write(&path, mutated).unwrap();
    let out = lst20(["validate", "--excerpt", p(&path)]);
    assert_eq!(out.status.code(), Some(1));
    let line = format!("{}: sentence 0, token 5: error NE_ORPHAN_E [NE]", path.display());
    assert!(stdout(&out).contains(&line), "{}", stdout(&out));
}

#[test]
fn refuses_to_overwrite_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.txt");
    std::fs::copy(fixture("columnar_window.txt"), &path).unwrap();
    let before = std::fs::read(&path).unwrap();
    let out = lst20([
        "convert",
        "--from",
        "columnar",
        "--to",
        "columnar",
        "-o",
        p(&path),
        p(&path),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(std::fs::read(&path).unwrap(), before);
}

#[test]
fn stats_json_matches_tally() {
    let out = lst20(["stats", "--json", p(&fixture("columnar_window.txt"))]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let expected: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("columnar_window.counts.json")).unwrap()).unwrap();
    assert_eq!(report["counts"], expected);
    assert_eq!(report["genres"]["unknown"], 1);
}

#[test]
fn stats_manifest_assigns_genre() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("genres.tsv");
    std::fs::write(&manifest, "columnar_window	news\n").unwrap();
    let out = lst20([
        "stats",
        "--json",
        "--manifest",
        p(&manifest),
        p(&fixture("columnar_window.txt")),
    ]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["genres"]["news"], 1);
}

#[test]
fn segment_gold_clauses_reproduces_sentences() {
    let out = lst20(["segment", "--gold-clauses", p(&fixture("conversation_unsplit.inline"))]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(out.stdout, std::fs::read(fixture("conversation_split.inline")).unwrap());
}

#[test]
fn segment_rejects_unknown_rule() {
    let out = lst20(["segment", "--disable", "S9", p(&fixture("conversation_unsplit.inline"))]);
    assert_eq!(out.status.code(), Some(2));
    let out = lst20(["segment", "--disable", "S1", p(&fixture("conversation_unsplit.inline"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn frames_dump_and_check() {
    let dump = stdout(&lst20(["frames", "dump"]));
    assert_eq!(dump.lines().count(), 18);
    assert!(dump.lines().any(|l| l.starts_with("NN.1: ")));

    let out = lst20(["frames", "check", "--json", p(&fixture("clauses_outbreak.inline"))]);
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!rows.as_array().unwrap().is_empty());

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("frames.txt");
    std::fs::write(&bad, "X.1: NN VV\n").unwrap();
    assert_eq!(lst20(["frames", "dump", "--frames", p(&bad)]).status.code(), Some(2));
}
