use std::path::PathBuf;
use std::process::{Command, Output};

fn surfhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_surfhom")).args(args).output().expect("run surfhom")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(args: &[&str]) -> i32 {
    surfhom(args).status.code().unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("surfhom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn info_reports_the_surface() {
    let o = surfhom(&["info", "--genus", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("V=1 E=4 F=1"), "{text}");
    assert!(text.contains("orientable genus 2, χ=-2"), "{text}");

    let sphere = scratch("sphere.txt", "surface sphere\nvertices 2\nedges 1\nrot 0: 0\nrot 1: 1\n");
    let text = stdout(&surfhom(&["info", "--file", sphere.to_str().unwrap()]));
    assert!(text.contains("genus 0, χ=2"), "{text}");

    let n3 = stdout(&surfhom(&["info", "--genus", "3", "--non-orientable"]));
    assert!(n3.contains("non-orientable genus 3, χ=-1"), "{n3}");
}

#[test]
fn malformed_input_exits_with_two() {
    let bad = scratch("bad.txt", "surface x\nvertices 1\nedges 1\nrot 0: 0\n");
    assert_eq!(code(&["info", "--file", bad.to_str().unwrap()]), 2);
    assert_eq!(code(&["info", "--file", "/nonexistent/surface.txt"]), 2);
    assert_eq!(code(&["info"]), 2);
    assert_eq!(code(&["info", "--genus", "2", "--relator", "abAB"]), 2);
    assert_eq!(code(&["contractible", "--genus", "2", "q"]), 2);
    assert_eq!(code(&["contractible", "--genus", "2", "+0 +9"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
}

#[test]
fn contractible_exit_codes() {
    assert_eq!(code(&["contractible", "--genus", "2", "--check", "abABcdCD"]), 0);
    assert_eq!(code(&["contractible", "--genus", "2", "--check", "abAB"]), 1);
    assert_eq!(code(&["contractible", "--genus", "2", "1"]), 0);
    assert_eq!(code(&["contractible", "--genus", "2", "+0 -0"]), 0);
    // Several walks: yes only when all are.
    assert_eq!(code(&["contractible", "--genus", "2", "abABcdCD", "a"]), 1);
}

#[test]
fn homotopic_fixed_and_free() {
    assert_eq!(code(&["homotopic", "--genus", "2", "--fixed-basepoint", "--check", "ab", "ab"]), 0);
    assert_eq!(code(&["homotopic", "--genus", "2", "--fixed-basepoint", "--check", "ab", "ba"]), 1);
    assert_eq!(code(&["homotopic", "--genus", "2", "--check", "ab", "ba"]), 0);
    assert_eq!(code(&["homotopic", "--genus", "2", "--check", "abcd", "Aabcda"]), 0);
    assert_eq!(code(&["homotopic", "--genus", "2", "--check", "ab", "aB"]), 1);
    assert_eq!(code(&["homotopic", "--genus", "2", "ab"]), 2);
}

#[test]
fn walks_on_a_file_embedding() {
    let path = scratch("g2.txt", &stdout(&surfhom(&["gen-canonical", "--genus", "2"])));
    let p = path.to_str().unwrap();
    assert_eq!(code(&["contractible", "--file", p, "--check", "+0 +1 -0 -1 +2 +3 -2 -3"]), 0);
    assert_eq!(code(&["homotopic", "--file", p, "+0 +1", "+1 +0"]), 0);
    assert_eq!(code(&["homotopic", "--file", p, "--fixed-basepoint", "+0 +1", "+1 +0"]), 1);
}

#[test]
fn jsonl_records_have_stable_keys() {
    let o = surfhom(&["contractible", "--genus", "2", "--format", "jsonl", "abAB", "abABcdCD"]);
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    for rec in &lines {
        let keys: Vec<&str> = rec.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys.len(), 4);
        for key in ["command", "answer", "k", "ns_per_edge"] {
            assert!(keys.contains(&key), "{rec}");
        }
        assert_eq!(rec["command"], "contractible");
    }
    assert_eq!(lines[0]["answer"], "no");
    assert_eq!(lines[1]["answer"], "yes");
    assert_eq!(lines[1]["k"], 8);
}

#[test]
fn parallel_batches_keep_order() {
    let fixtures = stdout(&surfhom(&["fixtures", "--suite", "random", "--count", "40", "--seed", "5"]));
    let path = scratch("random.txt", &fixtures);
    let p = path.to_str().unwrap();
    let serial = surfhom(&["conjugate", "--genus", "2", "--check", "--input", p]);
    let parallel = surfhom(&["conjugate", "--genus", "2", "--check", "--jobs", "4", "--input", p]);
    assert_eq!(serial.status.code(), Some(1));
    assert_eq!(stdout(&serial), stdout(&parallel));
    let labels: Vec<&str> = fixtures
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(';').nth(2).unwrap().trim())
        .collect();
    let answers: Vec<String> = stdout(&serial).lines().map(String::from).collect();
    assert_eq!(labels, answers);
}

#[test]
fn appendix_fixtures_are_all_equal() {
    let path = scratch("appendix.txt", &stdout(&surfhom(&["fixtures", "--suite", "appendix"])));
    let p = path.to_str().unwrap();
    let o = surfhom(&["homotopic", "--relator", "abcdABCD", "--fixed-basepoint", "--check", "--input", p]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 6);
}

#[test]
fn klein_fixture_enumerates_the_grid() {
    let text = stdout(&surfhom(&["fixtures", "--suite", "klein"]));
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 11usize.pow(4));
    assert!(rows.contains(&"aaabb ; aaabb ; yes ; 3 2 3 2"));
    assert!(rows.contains(&"ab ; AAAb ; yes ; 1 1 -3 1"));
}

#[test]
fn word_and_gen_canonical() {
    let text = stdout(&surfhom(&["word", "--genus", "2", "abab"]));
    assert!(text.starts_with("word abab\n"), "{text}");
    assert!(text.contains("canonical ("), "{text}");
    let torus = stdout(&surfhom(&["word", "--genus", "1", "ab"]));
    assert!(torus.contains("canonical -"), "{torus}");
    let emb = stdout(&surfhom(&["gen-canonical", "--genus", "2", "--non-orientable"]));
    assert!(emb.contains("vertices 1") && emb.contains("twisted"), "{emb}");
}

#[test]
fn bench_emits_records() {
    let o = surfhom(&["bench", "--lengths", "64,2^7", "--trials", "1", "--format", "jsonl", "--seed", "9"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("seed 9"));
    let cmds: Vec<String> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["command"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(cmds, ["preprocess", "contractible", "free-homotopic", "contractible", "free-homotopic"]);
}
