//! Scripted matrix of CLI invocations checking exit codes and machine
//! output schemas, run against the real binary.

mod common;

use std::fs;
use std::process::{Command, Output};

use common::{assert_valid, corpus_dir, corpus_path, fixture_path};
use rosetta_core::imagetools::GrayImage;
use rosetta_core::pipeline::{generate_synthetic, SyntheticSpec};
use rosetta_cli::imageio::write_pgm_p2;

fn rosetta_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rosetta"))
}

fn run(args: &[&str]) -> Output {
    rosetta_bin().args(args).output().expect("binary runs")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn synthetic_image(num_blobs: u32, seed: u64) -> GrayImage {
    let spec = SyntheticSpec {
        rows: 100,
        cols: 100,
        num_blobs,
        blob_radius: 3,
        background_level: 0.2,
        foreground_level: 0.85,
        noise_sigma: 0.0,
        seed,
    };
    generate_synthetic(&spec).unwrap().0
}

#[test]
fn translate_success_and_golden_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("janus.jl");
    let report = dir.path().join("report.json");
    let output = run(&[
        "translate",
        corpus_path("janus.m").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0, "stderr: {}", String::from_utf8_lossy(&output.stderr));
    assert_eq!(
        fs::read(&out).unwrap(),
        fs::read(fixture_path("janus.jl")).unwrap(),
        "translated janus.m must match the golden fixture byte for byte"
    );
    let report_value: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_valid(&report_value, "translation_report.schema.json");
}

#[test]
fn translate_empty_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("empty.m");
    fs::write(&input, "").unwrap();
    let out = dir.path().join("empty.jl");
    let output = run(&[
        "translate",
        input.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0);
    assert_eq!(fs::read(&out).unwrap(), b"");
}

#[test]
fn translate_missing_input_is_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let output = run(&[
        "translate",
        "missing.m",
        "--out",
        dir.path().join("x.jl").to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 2);
}

#[test]
fn translate_strict_warning_is_exit_3_but_writes_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("janus2.jl");
    let output = run(&[
        "translate",
        corpus_path("janus2.m").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--strict",
    ]);
    assert_eq!(code(&output), 3);
    // Best-effort translation still lands on disk, matching the golden.
    assert_eq!(
        fs::read(&out).unwrap(),
        fs::read(fixture_path("janus2.jl")).unwrap()
    );
}

#[test]
fn translate_directory_mode_with_batch_report() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("out");
    let report = dir.path().join("batch.json");
    let output = run(&[
        "translate",
        corpus_dir().to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0, "stderr: {}", String::from_utf8_lossy(&output.stderr));
    // All nine corpus programs translated, mirrored flat.
    let produced: Vec<_> = fs::read_dir(&out_dir).unwrap().collect();
    assert_eq!(produced.len(), 9);
    assert_eq!(
        fs::read(out_dir.join("janus.jl")).unwrap(),
        fs::read(fixture_path("janus.jl")).unwrap()
    );
    let report_value: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_valid(&report_value, "translation_batch.schema.json");
}

#[test]
fn rossetta_alias_translates() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("janus.jl");
    let output = run(&[
        "rossetta",
        corpus_path("janus.m").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0);
    assert_eq!(
        fs::read(&out).unwrap(),
        fs::read(fixture_path("janus.jl")).unwrap()
    );
}

#[test]
fn rules_env_var_overrides_default() {
    let dir = tempfile::tempdir().unwrap();
    // A rule set whose comment rule is disabled.
    let mut rules = rosetta_core::translit::default_ruleset();
    rules
        .rules
        .iter_mut()
        .find(|r| r.id == "comment-hash")
        .unwrap()
        .enabled = false;
    let rules_path = dir.path().join("rules.json");
    fs::write(&rules_path, serde_json::to_string(&rules).unwrap()).unwrap();

    let input = dir.path().join("c.m");
    fs::write(&input, "% stays\n").unwrap();
    let out = dir.path().join("c.jl");
    let output = rosetta_bin()
        .env("ROSETTA_RULES", &rules_path)
        .args([
            "translate",
            input.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(code(&output), 0);
    assert_eq!(fs::read_to_string(&out).unwrap(), "% stays\n");
}

#[test]
fn invalid_ruleset_file_is_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let rules_path = dir.path().join("rules.json");
    fs::write(&rules_path, "{ not json").unwrap();
    let input = dir.path().join("a.m");
    fs::write(&input, "x = 1\n").unwrap();
    let output = run(&[
        "translate",
        input.to_str().unwrap(),
        "--out",
        dir.path().join("a.jl").to_str().unwrap(),
        "--rules",
        rules_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 1);
}

#[test]
fn janus_counts_synthetic_blobs() {
    let dir = tempfile::tempdir().unwrap();
    let img_path = dir.path().join("five.pgm");
    write_pgm_p2(&synthetic_image(5, 42), &img_path, 255).unwrap();

    let output = run(&["janus", img_path.to_str().unwrap(), "--json"]);
    assert_eq!(code(&output), 0);
    let value: serde_json::Value =
        serde_json::from_slice(&output.stdout).expect("json output parses");
    assert_valid(&value, "janus_result.schema.json");
    assert_eq!(value["count"], 5);
    assert_eq!(value["degenerate"], false);
}

#[test]
fn janus_constant_image_is_degenerate() {
    let dir = tempfile::tempdir().unwrap();
    let img_path = dir.path().join("flat.pgm");
    let img = GrayImage::new(4, 4, vec![0.5; 16]).unwrap();
    write_pgm_p2(&img, &img_path, 255).unwrap();

    let output = run(&["janus", img_path.to_str().unwrap(), "--json"]);
    assert_eq!(code(&output), 0);
    let value: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(value["count"], 0);
    assert_eq!(value["degenerate"], true);
}

#[test]
fn janus_bad_format_flag_is_exit_1() {
    let output = run(&["janus", "whatever.pgm", "--format", "bmp"]);
    assert_eq!(code(&output), 1);
    let output = run(&["janus", "whatever.dat"]);
    assert_eq!(code(&output), 1, "uninferrable format is a usage error");
}

#[test]
fn janus_connectivity_flag_changes_the_count() {
    // Anti-diagonal pair: one component under 8-connectivity, two under 4.
    let dir = tempfile::tempdir().unwrap();
    let img_path = dir.path().join("anti.csv");
    fs::write(&img_path, "1,0\n0,1\n").unwrap();

    let out8 = run(&["janus", img_path.to_str().unwrap(), "--json"]);
    let v8: serde_json::Value = serde_json::from_slice(&out8.stdout).unwrap();
    assert_eq!(v8["count"], 1);

    let out4 = run(&[
        "janus",
        img_path.to_str().unwrap(),
        "--connectivity",
        "4",
        "--json",
    ]);
    let v4: serde_json::Value = serde_json::from_slice(&out4.stdout).unwrap();
    assert_eq!(v4["count"], 2);
}

#[test]
fn janus_truncated_pgm_is_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let img_path = dir.path().join("bad.pgm");
    fs::write(&img_path, "P2\n2 2\n255\n1 2 3\n").unwrap();
    let output = run(&["janus", img_path.to_str().unwrap()]);
    assert_eq!(code(&output), 2);
}

#[test]
fn janus2_groups_and_schema() {
    let dir = tempfile::tempdir().unwrap();
    for (group, blobs) in [("treated", [1u32, 2, 2]), ("untreated", [9, 10, 11])] {
        let gdir = dir.path().join(group);
        fs::create_dir_all(&gdir).unwrap();
        for (i, &b) in blobs.iter().enumerate() {
            let img = synthetic_image(b, 1000 + i as u64 + b as u64 * 17);
            write_pgm_p2(&img, &gdir.join(format!("well{i}.pgm")), 255).unwrap();
        }
    }
    let output = run(&["janus2", dir.path().to_str().unwrap(), "--json"]);
    assert_eq!(code(&output), 0, "stderr: {}", String::from_utf8_lossy(&output.stderr));
    let value: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_valid(&value, "janus2_summary.schema.json");
    let groups = value["groups"].as_array().unwrap();
    assert_eq!(groups.len(), 2);
    assert_eq!(groups[0]["group"], "treated");
    let treated_mean = groups[0]["mean"].as_f64().unwrap();
    let untreated_mean = groups[1]["mean"].as_f64().unwrap();
    assert!(treated_mean < untreated_mean);
}

#[test]
fn janus2_identical_triplicates_have_zero_std() {
    let dir = tempfile::tempdir().unwrap();
    let gdir = dir.path().join("same");
    fs::create_dir_all(&gdir).unwrap();
    let img = synthetic_image(4, 7);
    for i in 0..3 {
        write_pgm_p2(&img, &gdir.join(format!("w{i}.pgm")), 255).unwrap();
    }
    // Identical counts leave no dataset spread, so anchors must be given.
    let output = run(&[
        "janus2",
        dir.path().to_str().unwrap(),
        "--min-ref",
        "0",
        "--max-ref",
        "1000",
        "--json",
    ]);
    assert_eq!(code(&output), 0);
    let value: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(value["groups"][0]["std_dev"], 0.0);
}

#[test]
fn janus2_bad_calibration_is_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let gdir = dir.path().join("g");
    fs::create_dir_all(&gdir).unwrap();
    write_pgm_p2(&synthetic_image(2, 3), &gdir.join("w.pgm"), 255).unwrap();
    let output = run(&[
        "janus2",
        dir.path().to_str().unwrap(),
        "--min-ref",
        "10",
        "--max-ref",
        "10",
    ]);
    assert_eq!(code(&output), 1);
}

#[test]
fn janus2_empty_directory_is_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let output = run(&["janus2", dir.path().to_str().unwrap()]);
    assert_eq!(code(&output), 2);
}

#[test]
fn bench_single_iteration_emits_seven_valid_records() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bench.jsonl");
    let output = run(&[
        "bench",
        "--iterations",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 0, "stderr: {}", String::from_utf8_lossy(&output.stderr));
    let lines: Vec<String> = fs::read_to_string(&out)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    assert_eq!(lines.len(), 7);
    for line in &lines {
        let value: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_valid(&value, "bench_record.schema.json");
        assert_eq!(value["median_seconds"], value["min_seconds"]);
    }
}

#[test]
fn bench_injected_failure_is_exit_4() {
    let output = run(&["bench", "--iterations", "1", "--inject-failure", "fib"]);
    assert_eq!(code(&output), 4);
    assert!(String::from_utf8_lossy(&output.stderr).contains("fib"));
}

#[test]
fn bench_unwritable_out_is_exit_2() {
    let output = run(&[
        "bench",
        "--iterations",
        "1",
        "--out",
        "/no/such/dir/bench.jsonl",
    ]);
    assert_eq!(code(&output), 2);
}

#[test]
fn manifest_check_matches_expected_resolutions() {
    let output = run(&["manifest", "--check", "max"]);
    assert_eq!(code(&output), 0);
    assert_eq!(
        String::from_utf8_lossy(&output.stdout).trim(),
        "max: CompatRequiresImport(MathTools) / CompatExported"
    );

    let output = run(&["manifest", "--check", "graythresh"]);
    assert_eq!(
        String::from_utf8_lossy(&output.stdout).trim(),
        "graythresh: CompatExported / CompatExported"
    );

    let output = run(&["manifest", "--check", "nosuchfn"]);
    assert_eq!(code(&output), 0);
    assert_eq!(
        String::from_utf8_lossy(&output.stdout).trim(),
        "nosuchfn: NotFound / NotFound"
    );
}

#[test]
fn shipped_manifest_file_validates_against_schema() {
    let value: serde_json::Value =
        serde_json::from_str(rosetta_cli::manifest::SHIPPED_MANIFEST_JSON).unwrap();
    assert_valid(&value, "registry_manifest.schema.json");
}

#[test]
fn usage_errors_and_help() {
    let output = run(&["no-such-command"]);
    assert_eq!(code(&output), 1);

    let output = run(&["--help"]);
    assert_eq!(code(&output), 0);
    let help = String::from_utf8_lossy(&output.stdout);
    assert!(help.contains("Exit codes"), "help documents exit codes");

    let output = run(&[]);
    assert_eq!(code(&output), 1);
}
