//! End-to-end runs of the command line tool: report shape, exit
//! codes, determinism, and agreement with the library.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

use groupoid_atlas::cli::spec::AtlasSpecFile;
use groupoid_atlas::nerve::strong_nerve;
use groupoid_atlas::simplicial::SimplicialSetTrunc;

fn gatlas(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gatlas"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("the binary runs")
}

fn spec_path(name: &str) -> String {
    format!("{}/specs/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn write_temp(dir: &tempfile::TempDir, name: &str, content: &str) -> String {
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(content.as_bytes()).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

#[test]
fn the_report_is_byte_stable_and_path_independent() {
    let content = std::fs::read_to_string(spec_path("dihedral_cover.json")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let first = write_temp(&dir, "one.json", &content);
    let second = write_temp(&dir, "elsewhere.json", &content);

    let a = gatlas(&["pi1", "--weak", &first], &[]);
    let b = gatlas(&["pi1", "--weak", &first], &[]);
    let c = gatlas(&["pi1", "--weak", &second], &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout_of(&a), stdout_of(&b), "two runs on one file differ");
    assert_eq!(stdout_of(&a), stdout_of(&c), "the path leaked into the report");

    let text = stdout_of(&a);
    assert!(text.starts_with("command: pi1 --weak --base r\n"), "got:\n{text}");
    let digest_line = text.lines().nth(1).unwrap();
    assert!(digest_line.starts_with("input: sha256:"), "got: {digest_line}");
    let digest = digest_line.trim_start_matches("input: sha256:");
    assert_eq!(digest.len(), 64);
    assert!(digest.chars().all(|ch| ch.is_ascii_hexdigit()));
    assert!(text.contains("\npipeline: (none)\n"));
    assert!(text.contains("\nresults:\n"));
    assert!(text.contains("weak group: free of rank 2 (detected)"), "got:\n{text}");
    assert!(stderr_of(&a).contains("timing: "), "timing goes to stderr");
}

#[test]
fn exit_codes_separate_the_failure_kinds() {
    let dir = tempfile::tempdir().unwrap();

    let ok = gatlas(&["validate", &spec_path("one_sphere.json")], &[]);
    assert_eq!(ok.status.code(), Some(0), "stderr: {}", stderr_of(&ok));
    assert!(stdout_of(&ok).contains("valid: true"));

    let garbled = write_temp(&dir, "garbled.json", "{ this is not json");
    let parse = gatlas(&["pi0", &garbled], &[]);
    assert_eq!(parse.status.code(), Some(1));
    assert!(stderr_of(&parse).starts_with("error: parse:"), "got: {}", stderr_of(&parse));

    let missing = dir.path().join("absent.json");
    let missing = gatlas(&["pi0", missing.to_str().unwrap()], &[]);
    assert_eq!(missing.status.code(), Some(1));

    let uncovered = write_temp(
        &dir,
        "uncovered.json",
        r#"{
            "version": "v1",
            "atlas": {
                "explicit": {
                    "points": ["a", "b"],
                    "charts": [{"name": "only-a", "frame": [0], "local": {"tree": {"objects": 1}}}],
                    "pairs": []
                }
            }
        }"#,
    );
    let invalid = gatlas(&["pi0", &uncovered], &[]);
    assert_eq!(invalid.status.code(), Some(2));
    assert!(
        stderr_of(&invalid).contains("every point is covered"),
        "got: {}",
        stderr_of(&invalid),
    );
    let named = gatlas(&["validate", &uncovered], &[]);
    assert_eq!(named.status.code(), Some(2));
    assert!(stdout_of(&named).contains("every point is covered: FAIL"));

    let squeezed = gatlas(
        &["homology", &spec_path("one_sphere.json")],
        &[("GATLAS_BUDGET", "cells=1")],
    );
    assert_eq!(squeezed.status.code(), Some(3), "stderr: {}", stderr_of(&squeezed));
    assert!(stderr_of(&squeezed).starts_with("error: budget:"));

    let unparsable_budget = gatlas(
        &["homology", &spec_path("one_sphere.json")],
        &[("GATLAS_BUDGET", "cells=plenty")],
    );
    assert_eq!(unparsable_budget.status.code(), Some(1));
    assert!(stderr_of(&unparsable_budget).starts_with("error: parse:"));

    let no_engine = gatlas(&["pi1", &spec_path("one_sphere.json")], &[]);
    assert_eq!(no_engine.status.code(), Some(1), "pi1 needs an engine flag");

    let unknown = gatlas(&["frobnicate"], &[]);
    assert_eq!(unknown.status.code(), Some(1));

    let help = gatlas(&["--help"], &[]);
    assert_eq!(help.status.code(), Some(0));
}

#[test]
fn the_exported_nerve_json_matches_the_library() {
    let path = spec_path("one_sphere.json");
    let out = gatlas(&["nerve", "--strong", "--export", "json", &path], &[]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    lines.find(|l| *l == "  export json:").expect("the export marker line");
    let payload = lines.next().expect("the json line").trim_start();
    let shipped = SimplicialSetTrunc::from_json(payload).expect("the export parses");

    let spec_text = std::fs::read_to_string(&path).unwrap();
    let spec = AtlasSpecFile::parse(&spec_text).unwrap();
    let atlas = spec.build_atlas().unwrap();
    let direct = strong_nerve(&atlas, 3).unwrap().complex;
    assert_eq!(shipped, direct, "the exported complex differs from the library's");
}

#[test]
fn shipped_specs_all_validate() {
    let dir = format!("{}/specs", env!("CARGO_MANIFEST_DIR"));
    let mut seen = 0usize;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        if path.file_name().and_then(|n| n.to_str()) == Some("gl2_z5.json") {
            continue;
        }
        let out = gatlas(&["validate", path.to_str().unwrap()], &[]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}: {}",
            path.display(),
            stderr_of(&out),
        );
        assert!(stdout_of(&out).contains("valid: true"), "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 5, "only {seen} shipped specs were checked");
}

#[test]
fn the_unit_group_spec_reports_four_components() {
    let out = gatlas(&["pi0", &spec_path("gl2_z5.json")], &[]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("components: 4"), "got:\n{text}");
    assert!(text.contains("component 0: size 120"), "got:\n{text}");
}

#[test]
fn homology_reports_the_torsion_json() {
    let out = gatlas(&["homology", &spec_path("involution_point.json")], &[]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("H_1 = Z/2"), "got:\n{text}");
    assert!(text.contains("H_3 = Z/2"), "got:\n{text}");
    assert!(text.contains(r#""torsion":["2"]"#), "got:\n{text}");
    assert!(Path::new(&spec_path("involution_point.json")).exists());
}
