use std::io::Cursor;
use std::path::Path;

use procvqa::cli::{run, EXIT_FILE, EXIT_PARSE};
use procvqa::engine::Answer;

fn manifest(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel).display().to_string()
}

fn exec(args: &[&str], input: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("procvqa").chain(args.iter().copied());
    let code = run(argv, &mut Cursor::new(input.as_bytes().to_vec()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn ask_prints_headline() {
    let scene = manifest("data/scenes/dogs.json");
    let (code, out, _) = exec(&["ask", "--scene", &scene, "Are all black dogs small?"], "");
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("yes"));
}

#[test]
fn explain_adds_elaborations() {
    let scene = manifest("data/scenes/hound.json");
    let (code, out, _) = exec(&["ask", "--scene", &scene, "--explain", "Is there a hound near a chair?"], "");
    assert_eq!(code, 0);
    assert!(out.contains("  elaboration: dog is a synonym of hound"), "{out}");
}

#[test]
fn missing_scene_is_a_file_error() {
    let (code, _, err) = exec(&["ask", "--scene", "/nonexistent/scene.json", "Is there a dog?"], "");
    assert_eq!(code, EXIT_FILE);
    assert!(err.starts_with("error:"), "{err}");
}

#[test]
fn unparsable_question_is_a_parse_error() {
    let scene = manifest("data/scenes/dogs.json");
    let (code, _, err) = exec(&["ask", "--scene", &scene, "Blorf the zibble?"], "");
    assert_eq!(code, EXIT_PARSE);
    assert!(!err.is_empty());
}

#[test]
fn json_output_round_trips() {
    let scene = manifest("data/scenes/birds.json");
    let (code, out, _) =
        exec(&["ask", "--scene", &scene, "--format", "json", "What difference does one bird have?"], "");
    assert_eq!(code, 0);
    let a: Answer = serde_json::from_str(&out).unwrap();
    assert_eq!(a.text, "color (yellow), object center: (95, 325)");
    assert_eq!(serde_json::to_string_pretty(&a).unwrap().trim(), out.trim());
}

#[test]
fn dump_graph_and_trace() {
    let scene = manifest("data/scenes/dogs.json");
    let (code, out, _) =
        exec(&["ask", "--scene", &scene, "--dump-graph", "--trace", "Is there a dog on the grass?"], "");
    assert_eq!(code, 0);
    assert!(out.contains("dog"), "{out}");
    assert!(out.contains("  trace: "), "{out}");
}

#[test]
fn repl_matches_golden_transcript() {
    let input = std::fs::read_to_string(manifest("tests/fixtures/repl_session.txt")).unwrap();
    let expected = std::fs::read_to_string(manifest("tests/fixtures/repl_session.expected")).unwrap();
    let scene = manifest("data/scenes/dogs.json");
    let input = input.replace(":scene data/", &format!(":scene {}/data/", env!("CARGO_MANIFEST_DIR")));
    let expected = expected.replace("scene: data/", &format!("scene: {}/data/", env!("CARGO_MANIFEST_DIR")));
    let (code, out, _) = exec(&["repl", "--scene", &scene], &input);
    assert_eq!(code, 0);
    assert_eq!(out, expected);
}

#[test]
fn repl_reports_errors_inline() {
    let scene = manifest("data/scenes/dogs.json");
    let (code, out, _) =
        exec(&["repl", "--scene", &scene], "Blorf the zibble?\n:scene /nonexistent.json\nIs there a dog?\n");
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[1].starts_with("error: "), "{out}");
    assert!(lines[2].starts_with("error: "), "{out}");
    assert_eq!(lines.last(), Some(&"yes"));
}

#[test]
fn batch_checks_expectations() {
    let dir = tempfile::tempdir().unwrap();
    let scenes = manifest("data/scenes");
    let pairs = format!(
        "# scene\tquestion\texpected\n{s}/dogs.json\tAre all dogs small and black?\tno\n{s}/dogs.json\tHow many dogs are there?\t3\n{s}/birds.json\tWhat difference does one bird have?\tcolor (yellow), object center: (95, 325)\nmalformed line\n",
        s = scenes
    );
    let path = dir.path().join("pairs.tsv");
    std::fs::write(&path, pairs).unwrap();
    let (code, out, err) = exec(&["batch", path.to_str().unwrap()], "");
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("answered 3 of 3, errors 0"), "{out}");
    assert!(out.contains("agreement: 3/3"), "{out}");
    assert!(err.contains("line 5"), "{err}");
}

#[test]
fn gen_is_deterministic_and_agrees_with_batch() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let (code, _, err) = exec(
            &["gen", "--seed", "11", "--out-dir", d.path().to_str().unwrap(), "--scenes", "4", "--questions", "5"],
            "",
        );
        assert_eq!(code, 0, "{err}");
    }
    let read = |d: &tempfile::TempDir, f: &str| std::fs::read_to_string(d.path().join(f)).unwrap();
    assert_eq!(read(&a, "pairs.tsv"), read(&b, "pairs.tsv"));
    assert_eq!(read(&a, "scenes/scene_0003.json"), read(&b, "scenes/scene_0003.json"));
    let pairs = a.path().join("pairs.tsv");
    let (code, out, _) = exec(&["batch", pairs.to_str().unwrap()], "");
    assert_eq!(code, 0);
    assert!(out.contains("answered 20 of 20, errors 0"), "{out}");
    assert!(out.contains("agreement: 20/20"), "{out}");
}
