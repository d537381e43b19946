//! End-to-end tests of the `permidx` binary: exit codes, stdin/stdout
//! plumbing, format mirroring, and failure diagnostics.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_permidx"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("process was signalled")
}

fn stdout_str(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr_str(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

struct Fixture {
    dir: tempfile::TempDir,
}

impl Fixture {
    fn new() -> Self {
        Fixture { dir: tempfile::tempdir().unwrap() }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, bytes: &[u8]) -> PathBuf {
        let path = self.path(name);
        std::fs::write(&path, bytes).unwrap();
        path
    }

    fn keygen(&self, name: &str, secret: &str, cc: &str, extra: &[&str]) -> PathBuf {
        let path = self.path(name);
        let output = bin()
            .args(["keygen", "--secret", secret, "--cc", cc, "-o"])
            .arg(&path)
            .args(extra)
            .output()
            .unwrap();
        assert_eq!(exit_code(&output), 0, "keygen failed: {}", stderr_str(&output));
        path
    }
}

fn arg(path: &Path) -> &str {
    path.to_str().unwrap()
}

const TABLE1: &[u8] = include_bytes!("data/table1.csv");

#[test]
fn keygen_writes_a_key_file() {
    let fx = Fixture::new();
    let key = fx.keygen("k.pdxk", "s", "2", &[]);
    let bytes = std::fs::read(&key).unwrap();
    assert_eq!(bytes.len(), 28);
    assert!(bytes.starts_with(b"PDXK"));

    // Same secret and parameters: identical files.
    let again = fx.keygen("k2.pdxk", "s", "2", &[]);
    assert_eq!(std::fs::read(&again).unwrap(), bytes);
}

#[test]
fn keygen_rejects_bad_column_constant_with_exit_4() {
    let fx = Fixture::new();
    let output = run(&["keygen", "--secret", "s", "--cc", "1", "-o", arg(&fx.path("k"))]);
    assert_eq!(exit_code(&output), 4);
    assert!(!fx.path("k").exists(), "no partial output on failure");
}

#[test]
fn keygen_usage_errors_exit_2() {
    let fx = Fixture::new();
    // Neither --secret nor --random.
    let output = run(&["keygen", "--cc", "2", "-o", arg(&fx.path("k"))]);
    assert_eq!(exit_code(&output), 2);
    // Empty secret.
    let output = run(&["keygen", "--secret", "", "--cc", "2", "-o", arg(&fx.path("k"))]);
    assert_eq!(exit_code(&output), 2);
    // --seed without --random.
    let output = run(&["keygen", "--secret", "s", "--seed", "1", "--cc", "2", "-o", arg(&fx.path("k"))]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn keygen_random_with_seed_is_reproducible() {
    let fx = Fixture::new();
    for name in ["a.pdxk", "b.pdxk"] {
        let output = run(&["keygen", "--random", "--seed", "42", "--cc", "3", "-o", arg(&fx.path(name))]);
        assert_eq!(exit_code(&output), 0);
    }
    let a = std::fs::read(fx.path("a.pdxk")).unwrap();
    assert_eq!(a, std::fs::read(fx.path("b.pdxk")).unwrap());
    assert_eq!(a.len(), 28);

    // Without a seed the key is still well-formed.
    let output = run(&["keygen", "--random", "--cc", "3", "-o", arg(&fx.path("c.pdxk"))]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(std::fs::read(fx.path("c.pdxk")).unwrap().len(), 28);
}

#[test]
fn keygen_verbose_prints_seeds() {
    let fx = Fixture::new();
    let output = run(&["keygen", "--secret", "s", "--cc", "2", "--verbose", "-o", arg(&fx.path("k"))]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout_str(&output);
    assert!(text.contains("placement_seed"));
    assert!(text.contains("shuffle_seed"));

    // Quiet by default.
    let output = run(&["keygen", "--secret", "s", "--cc", "2", "-o", arg(&fx.path("k2"))]);
    assert!(stdout_str(&output).is_empty());
}

#[test]
fn encode_decode_csv_round_trip() {
    let fx = Fixture::new();
    let key = fx.keygen("k.pdxk", "magic", "5", &[]);
    let input = fx.write("t.csv", TABLE1);

    let output = run(&["encode", "-k", arg(&key), "-i", arg(&input), "-o", arg(&fx.path("enc.csv"))]);
    assert_eq!(exit_code(&output), 0, "{}", stderr_str(&output));
    let compound = std::fs::read_to_string(fx.path("enc.csv")).unwrap();
    assert_eq!(compound.lines().count(), 6); // 5 rows + 1 appended
    assert!(compound.lines().all(|l| l.split(',').count() == 5));

    let output = run(&["decode", "-k", arg(&key), "-i", arg(&fx.path("enc.csv")), "-o", arg(&fx.path("dec.csv"))]);
    assert_eq!(exit_code(&output), 0, "{}", stderr_str(&output));
    assert_eq!(std::fs::read(fx.path("dec.csv")).unwrap(), TABLE1);
}

#[test]
fn encode_divisibility_failure_exits_4_and_writes_nothing() {
    let fx = Fixture::new();
    let key = fx.keygen("k.pdxk", "s", "2", &[]);
    let input = fx.write("odd.csv", b"1,2,3,4,5\n6,7,8,9,10\n11,12,13,14,15\n");
    let out_path = fx.path("enc.csv");
    let output = run(&["encode", "-k", arg(&key), "-i", arg(&input), "-o", arg(&out_path)]);
    assert_eq!(exit_code(&output), 4);
    assert!(stderr_str(&output).contains("does not divide"));
    assert!(!out_path.exists());
}

#[test]
fn encode_missing_input_exits_3() {
    let fx = Fixture::new();
    let key = fx.keygen("k.pdxk", "s", "2", &[]);
    let output = run(&["encode", "-k", arg(&key), "-i", arg(&fx.path("absent.csv")), "-o", "-"]);
    assert_eq!(exit_code(&output), 3);
}

#[test]
fn bad_key_file_exits_3() {
    let fx = Fixture::new();
    let key = fx.write("k.pdxk", b"not a key");
    let input = fx.write("t.csv", TABLE1);
    let output = run(&["encode", "-k", arg(&key), "-i", arg(&input), "-o", "-"]);
    assert_eq!(exit_code(&output), 3);
    assert!(stderr_str(&output).contains("key"));
}

#[test]
fn decode_non_compound_exits_5_with_row_inference_diagnostic() {
    let fx = Fixture::new();
    let key = fx.keygen("k.pdxk", "s", "2", &[]);
    // 7 rows of 4: no original row count M gives M + ceil(M/2) = 7.
    let lines: String = (0..7).map(|r| format!("{r},{r},{r},{r}\n")).collect();
    let input = fx.write("junk.csv", lines.as_bytes());
    let output = run(&["decode", "-k", arg(&key), "-i", arg(&input), "-o", "-"]);
    assert_eq!(exit_code(&output), 5);
    assert!(stderr_str(&output).contains("row inference"));
}

#[test]
fn decode_with_wrong_width_key_exits_4() {
    let fx = Fixture::new();
    let key8 = fx.keygen("k8.pdxk", "s", "2", &[]);
    let key16 = fx.keygen("k16.pdxk", "s", "2", &["--width", "16"]);
    let input = fx.write("b.pdxm", include_bytes!("data/golden.pdxm"));
    let output = run(&["encode", "-k", arg(&key8), "-i", arg(&input), "-o", arg(&fx.path("enc.pdxm"))]);
    assert_eq!(exit_code(&output), 0);
    let output = run(&["decode", "-k", arg(&key16), "-i", arg(&fx.path("enc.pdxm")), "-o", "-"]);
    assert_eq!(exit_code(&output), 4);
}

#[test]
fn pdxm_and_pgm_round_trips_are_byte_identical() {
    let fx = Fixture::new();
    let key = fx.keygen("k.pdxk", "s", "2", &[]);
    for (name, bytes) in [
        ("golden.pdxm", include_bytes!("data/golden.pdxm").as_slice()),
        ("golden.pgm", include_bytes!("data/golden.pgm").as_slice()),
    ] {
        let input = fx.write(name, bytes);
        let enc = fx.path(format!("{name}.enc").as_str());
        let dec = fx.path(format!("{name}.dec").as_str());
        let output = run(&["encode", "-k", arg(&key), "-i", arg(&input), "-o", arg(&enc)]);
        assert_eq!(exit_code(&output), 0, "{}", stderr_str(&output));
        // Same format family: the compound carries the same magic.
        let enc_bytes = std::fs::read(&enc).unwrap();
        assert_eq!(&enc_bytes[..2], &bytes[..2]);
        let output = run(&["decode", "-k", arg(&key), "-i", arg(&enc), "-o", arg(&dec)]);
        assert_eq!(exit_code(&output), 0, "{}", stderr_str(&output));
        assert_eq!(std::fs::read(&dec).unwrap(), bytes, "{name} did not round-trip");
    }
}

#[test]
fn encoded_pgm_is_viewable_and_taller() {
    let fx = Fixture::new();
    let key = fx.keygen("k.pdxk", "photo", "4", &[]);
    // An 8x8 gradient "photo".
    let mut pgm = b"P5\n8 8\n255\n".to_vec();
    pgm.extend((0..64u32).map(|i| (i * 4) as u8));
    let input = fx.write("photo.pgm", &pgm);
    let enc = fx.path("photo.enc.pgm");
    let output = run(&["encode", "-k", arg(&key), "-i", arg(&input), "-o", arg(&enc)]);
    assert_eq!(exit_code(&output), 0, "{}", stderr_str(&output));
    let enc_bytes = std::fs::read(&enc).unwrap();
    assert!(enc_bytes.starts_with(b"P5\n8 10\n255\n")); // two appended rows at x=4
}

#[test]
fn stdin_and_stdout_are_supported_with_dash() {
    let fx = Fixture::new();
    let key = fx.keygen("k.pdxk", "pipe", "2", &[]);

    let mut child = bin()
        .args(["encode", "-k", arg(&key), "-i", "-", "-o", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"1,3\n4,2\n").unwrap();
    let encoded = child.wait_with_output().unwrap();
    assert_eq!(exit_code(&encoded), 0);
    let compound = stdout_str(&encoded);
    assert_eq!(compound.lines().count(), 3);

    let mut child = bin()
        .args(["decode", "-k", arg(&key), "-i", "-", "-o", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(compound.as_bytes()).unwrap();
    let decoded = child.wait_with_output().unwrap();
    assert_eq!(exit_code(&decoded), 0);
    assert_eq!(stdout_str(&decoded), "1,3\n4,2\n");
}

#[test]
fn explicit_format_flag_overrides_detection() {
    let fx = Fixture::new();
    let key = fx.keygen("k.pdxk", "s", "2", &[]);
    let input = fx.write("t.csv", b"1,3\n4,2\n");
    let output = run(&["encode", "-k", arg(&key), "-i", arg(&input), "-o", "-", "--format", "csv"]);
    assert_eq!(exit_code(&output), 0);
    // Forcing the wrong format is an input-format error.
    let output = run(&["encode", "-k", arg(&key), "-i", arg(&input), "-o", "-", "--format", "pdxm"]);
    assert_eq!(exit_code(&output), 3);
    // Unknown format names are usage errors from the parser.
    let output = run(&["encode", "-k", arg(&key), "-i", arg(&input), "-o", "-", "--format", "tiff"]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn rank_and_unrank_commands() {
    let output = run(&["rank", "--row", "1,2,3", "--ordering", "reverse-lex"]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(stdout_str(&output).trim(), "6");

    let output = run(&["rank", "--row", "1,3", "--ordering", "lex"]);
    assert_eq!(stdout_str(&output).trim(), "1");

    let output = run(&["unrank", "--multiset", "2,4,9", "--index", "6"]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(stdout_str(&output).trim(), "2,4,9");

    // Default ordering is reverse-lex.
    let output = run(&["rank", "--row", "3,2,1"]);
    assert_eq!(stdout_str(&output).trim(), "1");
}

#[test]
fn rank_and_unrank_error_paths() {
    // Length constraint: exit 4.
    let output = run(&["rank", "--row", "1"]);
    assert_eq!(exit_code(&output), 4);
    // Bad token: usage, exit 2.
    let output = run(&["rank", "--row", "1,x"]);
    assert_eq!(exit_code(&output), 2);
    // Unknown ordering: usage, exit 2.
    let output = run(&["rank", "--row", "1,2", "--ordering", "upside-down"]);
    assert_eq!(exit_code(&output), 2);
    // Index out of range: exit 4.
    let output = run(&["unrank", "--multiset", "1,2,3", "--index", "7"]);
    assert_eq!(exit_code(&output), 4);
    let output = run(&["unrank", "--multiset", "1,2,3", "--index", "0"]);
    assert_eq!(exit_code(&output), 4);
}

#[test]
fn indices_emits_one_line_per_chunk() {
    let fx = Fixture::new();
    let input = fx.write("t.csv", TABLE1);
    let output = run(&["indices", "-i", arg(&input), "--cc", "5"]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(stdout_str(&output), "1,30\n2,24\n3,120\n4,87\n5,56\n");

    // To a file as well.
    let out_path = fx.path("ranks.csv");
    let output = run(&["indices", "-i", arg(&input), "--cc", "5", "-o", arg(&out_path)]);
    assert_eq!(exit_code(&output), 0);
    assert_eq!(
        std::fs::read_to_string(&out_path).unwrap(),
        "1,30\n2,24\n3,120\n4,87\n5,56\n"
    );

    // Uniform matrix: every rank is 1.
    let flat = fx.write("flat.csv", b"5,5\n5,5\n");
    let output = run(&["indices", "-i", arg(&flat), "--cc", "2"]);
    assert_eq!(stdout_str(&output), "1,1\n2,1\n");

    // 25 elements do not divide by 3.
    let output = run(&["indices", "-i", arg(&input), "--cc", "3"]);
    assert_eq!(exit_code(&output), 4);
}

#[test]
fn stats_reports_probability_and_expansion() {
    let fx = Fixture::new();
    let input = fx.write("t.csv", TABLE1);
    let output = run(&["stats", "-i", arg(&input), "--cc", "5"]);
    assert_eq!(exit_code(&output), 0, "{}", stderr_str(&output));
    let text = stdout_str(&output);
    assert!(text.contains("per-chunk guess probability: 0.008333"), "{text}");
    assert!(text.contains("4.0188e-11"), "{text}");
    assert!(text.contains("size ratio: 1.200"), "{text}");

    // Parse the linear probability back out and check the tolerance.
    let linear: f64 = text
        .split("total guess probability: ")
        .nth(1)
        .unwrap()
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((linear - 4.018e-11).abs() / 4.018e-11 < 1e-3);

    // Width override changes the layout half of the report.
    let output = run(&["stats", "-i", arg(&input), "--cc", "5", "--width", "16"]);
    assert_eq!(exit_code(&output), 0);
    assert!(stdout_str(&output).contains("16-bit elements"));
}
