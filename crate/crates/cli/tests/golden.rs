use std::path::PathBuf;
use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_adaequalitas");

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name]
        .iter()
        .collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn canonical_commands() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("maxmin.jsonl", vec!["maxmin", "b*a - a^2"]),
        ("tangent_parabola.jsonl", vec!["tangent-parabola"]),
        (
            "dioph.jsonl",
            vec![
                "dioph",
                "--sum",
                "10",
                "--count",
                "3",
                "--each-greater-than",
                "3",
            ],
        ),
        ("cycloid.jsonl", vec!["cycloid", "--theta", "pi/2"]),
    ]
}

fn in_process(args: &[&str]) -> (i32, Vec<u8>) {
    let mut full = vec!["adaequalitas", "--format", "machine"];
    full.extend_from_slice(args);
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = adaequalitas_cli::run(full, &mut out, &mut err);
    assert!(err.is_empty(), "{}", String::from_utf8_lossy(&err));
    (code, out)
}

fn spawned(args: &[&str]) -> Vec<u8> {
    let out = Command::new(BIN)
        .arg("--format")
        .arg("machine")
        .args(args)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    out.stdout
}

#[test]
fn machine_traces_match_golden_files() {
    for (file, args) in canonical_commands() {
        let (code, out) = in_process(&args);
        assert_eq!(code, 0, "{file}");
        assert_eq!(String::from_utf8(out).unwrap(), golden(file), "{file}");
    }
}

#[test]
fn machine_traces_are_byte_stable_across_processes() {
    for (file, args) in canonical_commands() {
        let first = spawned(&args);
        let second = spawned(&args);
        assert_eq!(first, second, "{file}");
        assert_eq!(first, golden(file).into_bytes(), "{file}");
    }
}

#[test]
fn every_line_is_json_with_versioned_header() {
    for (file, _) in canonical_commands() {
        let text = golden(file);
        let lines: Vec<serde_json::Value> = text
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(lines[0]["trace_version"], 1, "{file}");
        assert!(lines[0]["method"].is_string());
        assert!(lines[0]["assumptions"].is_array());
        for (i, step) in lines[1..lines.len() - 1].iter().enumerate() {
            assert_eq!(step["step"], i + 1);
            for key in ["rule", "before", "after", "note"] {
                assert!(step[key].is_string(), "{file} step {i} {key}");
            }
        }
        assert!(lines.last().unwrap()["result"].is_object());
    }
}
