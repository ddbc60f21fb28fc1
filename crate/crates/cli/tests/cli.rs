//! End-to-end tests of the `fp` binary: output formats, exit codes, and
//! byte-for-byte determinism.

use std::path::Path;
use std::process::{Command, Output};

fn fp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fp"))
        .args(args)
        .output()
        .expect("spawn fp")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8")
}

fn write(path: &Path, contents: &str) {
    std::fs::write(path, contents).expect("write fixture");
}

#[test]
fn normalize_and_exit_codes() {
    let ok = fp(&["normalize", "--k", "2", "--orders", "0,0", "--word", "x1 x2 x2^-1"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok), "x1\n");

    let domain = fp(&["normalize", "--k", "2", "--word", "x3"]);
    assert_eq!(domain.status.code(), Some(3));
    let diagnostic = String::from_utf8(domain.stderr.clone()).unwrap();
    assert!(diagnostic.contains("out of range"), "stderr: {diagnostic}");

    let parse = fp(&["normalize", "--k", "2", "--word", "y1"]);
    assert_eq!(parse.status.code(), Some(2));

    // identity prints as the empty string
    let identity = fp(&["normalize", "--k", "1", "--orders", "3", "--word", "z1^3"]);
    assert_eq!(stdout(&identity), "\n");
}

#[test]
fn normalize_output_is_a_fixed_point() {
    let first = fp(&["normalize", "--k", "2", "--orders", "2,2", "--word", "x1^5 x2^-1 x2 x1"]);
    let word = stdout(&first);
    let second = fp(&["normalize", "--k", "2", "--orders", "2,2", "--word", word.trim()]);
    assert_eq!(stdout(&second), word);
}

#[test]
fn word_arithmetic() {
    let mul = fp(&["mul", "--k", "2", "--orders", "2,2", "--a", "z1 z2", "--b", "z2 z1"]);
    assert_eq!(stdout(&mul), "\n");
    let inv = fp(&["inv", "--k", "1", "--orders", "3", "--word", "z1"]);
    assert_eq!(stdout(&inv), "z1^2\n");
    let conj = fp(&["conj", "--k", "2", "--word", "x1", "--by", "x2"]);
    assert_eq!(stdout(&conj), "x2 x1 x2^-1\n");
    let project = fp(&["project", "--k", "2", "--d", "2", "--word", "x2^2 x1 x2^-2"]);
    assert_eq!(stdout(&project), "z1\n");
}

#[test]
fn automorphism_commands() {
    let dir = tempfile::tempdir().unwrap();
    let pc = dir.path().join("pc_1_2_e2.json");
    write(
        &pc,
        r#"{"k":3,"orders":[0,0,0],"perm":[1,2,3],"signs":[1,1,1],
           "conjugators":["x2^2","",""],"moves":[["pc",1,2,2]]}"#,
    );
    let check = fp(&["kernel-check", "--k", "3", "--d", "2", "--aut", pc.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(stdout(&check), "true\n");
    let outer = fp(&[
        "kernel-check", "--k", "3", "--d", "2", "--outer", "--aut", pc.to_str().unwrap(),
    ]);
    assert_eq!(stdout(&outer), "true\n");

    let inner_file = dir.path().join("inner.json");
    write(
        &inner_file,
        r#"{"k":3,"orders":[2,2,2],"perm":[1,2,3],"signs":[1,1,1],
           "conjugators":["z1 z2","z1","z1 z2"]}"#,
    );
    let inner = fp(&["inner", "--aut", inner_file.to_str().unwrap()]);
    assert_eq!(stdout(&inner), "true\nconjugator: z1 z2\n");

    let apply = fp(&["apply", "--aut", inner_file.to_str().unwrap(), "--word", "z3"]);
    assert_eq!(stdout(&apply), "z1 z2 z3 z2 z1\n");

    let eq = fp(&[
        "outer-eq",
        "--aut",
        inner_file.to_str().unwrap(),
        "--other",
        inner_file.to_str().unwrap(),
    ]);
    assert_eq!(stdout(&eq), "true\n");

    // composing the swap with itself is the identity automorphism
    let swap = dir.path().join("swap.json");
    write(
        &swap,
        r#"{"k":2,"orders":[0,0],"perm":[2,1],"signs":[1,1],"conjugators":["",""]}"#,
    );
    let composed = fp(&[
        "compose", "--aut", swap.to_str().unwrap(), "--other", swap.to_str().unwrap(),
    ]);
    assert_eq!(
        stdout(&composed),
        "{\"conjugators\":[\"\",\"\"],\"k\":2,\"orders\":[0,0],\"perm\":[1,2],\"signs\":[1,1]}\n"
    );

    let malformed = dir.path().join("bad.json");
    write(&malformed, "{");
    let bad = fp(&["inner", "--aut", malformed.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn kernel_enum_is_deterministic() {
    let args = ["kernel-enum", "--k", "3", "--d", "2", "--max-moves", "2", "--limit", "10"];
    let first = fp(&args);
    let second = fp(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let lines: Vec<String> = stdout(&first).lines().map(String::from).collect();
    assert!(lines.len() > 1);
    // the identity comes first; every line is an automorphism JSON
    assert!(lines[0].contains("\"perm\":[1,2,3]"));
    for line in &lines {
        assert!(line.starts_with('{') && line.ends_with('}'));
    }
}

#[test]
fn kernel_basis_commands() {
    let basis = fp(&["rs-basis", "--k", "3", "--d", "2"]);
    assert_eq!(
        stdout(&basis),
        "rank 2\nX_{2,0} = z2 z1\nX_{3,0} = z3 z1\n"
    );
    let rewrite = fp(&["rs-rewrite", "--k", "3", "--d", "2", "--word", "z2 z3^-1"]);
    assert_eq!(stdout(&rewrite), "X_{2,0} X_{3,0}^-1\n");

    let nonzero = fp(&["rs-rewrite", "--k", "3", "--d", "2", "--word", "z2"]);
    assert_eq!(nonzero.status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let inner_file = dir.path().join("inner.json");
    write(
        &inner_file,
        r#"{"k":3,"orders":[2,2,2],"perm":[1,2,3],"signs":[1,1,1],
           "conjugators":["","z1","z1"]}"#,
    );
    let restricted = fp(&[
        "rs-restrict", "--k", "3", "--d", "2", "--aut", inner_file.to_str().unwrap(),
    ]);
    assert_eq!(
        stdout(&restricted),
        "X_{2,0} -> X_{2,0}^-1\nX_{3,0} -> X_{3,0}^-1\n"
    );
}

#[test]
fn cover_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("unlink_3_2.json");
    let built = fp(&[
        "cover", "build-unlink", "--k", "3", "--d", "2", "--p", "2",
        "--output", model.to_str().unwrap(),
    ]);
    assert_eq!(built.status.code(), Some(0));
    assert!(stdout(&built).contains("deck rank 2"));
    let model = model.to_str().unwrap();

    let rank = fp(&[
        "cover", "rank", "--model", model, "--radius", "5",
        "--spheres", "1,0,; 1,1,; 1,0,t; 1,1,t; 1,0,t^2; 1,1,t^2",
    ]);
    let table = stdout(&rank);
    let mut lines = table.lines();
    assert_eq!(lines.next(), Some("radius\tspheres\trelations\trank"));
    let row = lines.next().unwrap();
    assert!(row.starts_with("5\t6\t"));
    assert!(row.ends_with("\t6"));

    let separate = fp(&[
        "cover", "separate", "--model", model, "--radius", "5", "--sphere", "1,0,id",
    ]);
    assert_eq!(
        stdout(&separate),
        "components\tboth_reach_frontier\n2\ttrue\n"
    );

    let orbit = fp(&[
        "cover", "orbit", "--model", model, "--radius", "5", "--sample", "id; t; t^2",
    ]);
    assert_eq!(
        stdout(&orbit),
        "sample\tradius\trank\trank_next\tstable\tclass_support\n3\t5\t3\t3\ttrue\t2\n"
    );

    // a sphere outside the ball is a domain error
    let outside = fp(&[
        "cover", "rank", "--model", model, "--radius", "2", "--spheres", "1,0,t^4",
    ]);
    assert_eq!(outside.status.code(), Some(3));

    // deck words outside the side-2 subgroup are rejected for orbits
    let outside_sample = fp(&[
        "cover", "orbit", "--model", model, "--radius", "4", "--sample", "id; x1",
    ]);
    assert_eq!(outside_sample.status.code(), Some(3));
}

#[test]
fn selftest_runs_clean() {
    let run = fp(&["selftest", "--cases", "25"]);
    assert_eq!(run.status.code(), Some(0));
    let report = stdout(&run);
    assert!(report.starts_with("seed 1729\n"));
    assert!(report.contains("normalize-idempotent: ok (25 cases)"));
    assert!(report.contains("deck-action-laws: ok (25 cases)"));

    let seeded = fp(&["selftest", "--cases", "25", "--seed", "7"]);
    assert!(stdout(&seeded).starts_with("seed 7\n"));
}
