//! Black-box tests of the binary: exit codes, stream separation, and the
//! budget environment variable.

use std::path::PathBuf;
use std::process::{Command, Output};

use tensorfractal::text::parse_tensor;
use tensorfractal_core::fractal::{catalog, FractalKind};

fn output(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tensorfractal"));
    // Tests control the budget explicitly; drop whatever the harness has.
    cmd.env_remove("TENSORFRACTAL_BUDGET");
    for (key, value) in envs {
        cmd.env(key, value);
    }
    cmd.args(args).output().unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let out = output(args, &[]);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out.stderr.is_empty(), "diagnostics leaked into a clean run");
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn list_names_the_builtins_with_dimensions() {
    let out = run_ok(&["list"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "cantor 0.6309");
    assert_eq!(lines[2], "menger 2.7268");
    assert!(lines[5].starts_with("multisponge(d)"));
}

#[test]
fn generate_text_output_parses_back_to_the_iterate() {
    let out = run_ok(&[
        "generate",
        "--fractal",
        "sierpinski",
        "-k",
        "2",
        "--format",
        "text",
    ]);
    let want = catalog(&FractalKind::Sierpinski)
        .unwrap()
        .iterate(2)
        .unwrap();
    assert_eq!(parse_tensor(&out, None).unwrap(), want);
}

#[test]
fn generate_writes_the_same_bytes_to_files_and_stdout() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("menger_k1.voxels");
    run_ok(&[
        "generate",
        "--fractal",
        "menger",
        "--format",
        "voxels",
        "--output",
        path.to_str().unwrap(),
    ]);
    let from_file = std::fs::read(&path).unwrap();
    let stdout = run_ok(&["generate", "--fractal", "menger", "--format", "voxels"]);
    assert_eq!(from_file, stdout.as_bytes());
}

#[test]
fn generate_pbm_matches_the_golden_file() {
    let out = run_ok(&[
        "generate",
        "--fractal",
        "sierpinski",
        "-k",
        "1",
        "--format",
        "pbm",
    ]);
    assert_eq!(out, include_str!("golden/sierpinski_k1.pbm"));
}

#[test]
fn bad_inputs_exit_nonzero_with_diagnostics_on_stderr() {
    let unknown = output(&["analyze", "--fractal", "julia"], &[]);
    assert!(!unknown.status.success());
    assert!(unknown.stdout.is_empty());
    assert!(String::from_utf8_lossy(&unknown.stderr).starts_with("error: unknown name"));

    let ppm = output(&["generate", "--fractal", "menger", "--format", "ppm"], &[]);
    assert!(!ppm.status.success());
    assert!(String::from_utf8_lossy(&ppm.stderr).contains("rgb subcommand"));

    let flat = output(
        &["generate", "--fractal", "sierpinski", "--format", "voxels"],
        &[],
    );
    assert!(!flat.status.success());
    assert!(String::from_utf8_lossy(&flat.stderr).starts_with("error:"));
}

#[test]
fn budget_env_caps_construction_and_the_flag_overrides_it() {
    let capped = output(
        &["generate", "--fractal", "menger", "-k", "2"],
        &[("TENSORFRACTAL_BUDGET", "10")],
    );
    assert!(!capped.status.success());
    assert!(String::from_utf8_lossy(&capped.stderr).contains("element budget"));

    let lifted = output(
        &[
            "generate",
            "--fractal",
            "menger",
            "-k",
            "2",
            "--budget",
            "1000000",
        ],
        &[("TENSORFRACTAL_BUDGET", "10")],
    );
    assert!(
        lifted.status.success(),
        "the flag must win over the environment"
    );

    let garbled = output(&["list"], &[("TENSORFRACTAL_BUDGET", "ten")]);
    assert!(!garbled.status.success());
    assert!(String::from_utf8_lossy(&garbled.stderr).contains("must be an integer"));
}

#[test]
fn verify_reports_a_line_per_dimension() {
    let out = run_ok(&["verify", "--multisponge-dims", "2..4"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("d=2 cells=8 "));
    assert!(lines[2].starts_with("d=4 cells=48 "));
    assert!(lines[3].starts_with("all checks passed"));

    let backwards = output(&["verify", "--multisponge-dims", "8..2"], &[]);
    assert!(!backwards.status.success());
}

#[test]
fn rgb_depth_one_is_the_quantized_preset() {
    let out = run_ok(&["rgb", "--preset", "a", "--depth", "1"]);
    assert_eq!(
        out,
        "P3\n3 3\n255\n\
         128 191 255\n255 255 191\n128 191 255\n\
         255 255 191\n128 255 255\n255 255 191\n\
         128 191 255\n255 255 191\n128 191 255\n"
    );
}

#[test]
fn analyze_at_step_zero_reports_the_unit_cell() {
    let out = run_ok(&["analyze", "--fractal", "cantor", "-k", "0"]);
    assert!(out.contains("nnz: 1\n"));
    assert!(out.contains("volume_sequence: 1\n"));
    assert!(out.contains("box_count_dimension: n/a\n"));
}
