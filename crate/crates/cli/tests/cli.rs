use std::io::Write as _;
use std::process::Command;

use cpm_cli::ingest::fasta_residues;
use cpm_cli::{ingest, run, Source};
use proptest::prelude::*;

fn cpm(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cpm").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn two_mismatch_example_witness_line() {
    let (code, out, _) = cpm(&[
        "--text",
        "aaccbbxbaaab",
        "--pattern",
        "aabbbb",
        "-k",
        "1",
        "--witness",
    ]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "4\t2\t1"), "{out}");
}

#[test]
fn single_letter() {
    let (code, out, _) = cpm(&["-k", "0", "--pattern", "X", "--text", "X"]);
    assert_eq!((code, out.as_str()), (0, "0\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(cpm(&["--help"]).0, 0);
    assert_eq!(cpm(&["--version"]).0, 0);
    assert_eq!(cpm(&["--text", "ab", "--pattern", "a", "-k", "two"]).0, 1);
    assert_eq!(cpm(&["--text", "ab", "--pattern", "a"]).0, 1);
    assert_eq!(cpm(&["--text", "ab", "-k", "0"]).0, 1);
    assert_eq!(
        cpm(&[
            "--text",
            "ab",
            "--pattern",
            "a",
            "-k",
            "0",
            "--algorithm",
            "fast"
        ])
        .0,
        1
    );
    assert_eq!(cpm(&["--text", "", "--pattern", "a", "-k", "0"]).0, 1);
    let (code, _, err) = cpm(&[
        "--text-file",
        "/definitely/missing",
        "--pattern",
        "a",
        "-k",
        "0",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("/definitely/missing"));
}

#[test]
fn binary_reports_missing_file_on_stderr() {
    let out = Command::new(env!("CARGO_BIN_EXE_cpm"))
        .args([
            "--pattern-file",
            "/definitely/missing",
            "--text",
            "abc",
            "-k",
            "0",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn files_and_fasta() {
    let dir = tempfile::tempdir().unwrap();
    let text = dir.path().join("t.fa");
    let pattern = dir.path().join("p.fa");
    std::fs::write(&text, ">chr1 first\nacgt\nAC\n>chr1 second\ngtac\n").unwrap();
    std::fs::write(&pattern, ">p\ntaca\n").unwrap();
    let t = ingest(&Source::File(text.clone()), true).unwrap();
    assert_eq!(t.len(), 10);
    assert_eq!(t, cpm_core::Sequence::from_bytes(b"ACGTACGTAC"));

    let (code, out, _) = cpm(&[
        "--text-file",
        text.to_str().unwrap(),
        "--pattern-file",
        pattern.to_str().unwrap(),
        "-k",
        "0",
        "--fasta",
    ]);
    assert_eq!(code, 0);
    // Rotations of TACA: ACAT, CATA, ATAC, TACA; only exact ones count.
    let brute = cpm_core::brute_force_cpm(&t, &cpm_core::Sequence::from_bytes(b"TACA"), 0);
    let expected: String = brute.positions().iter().map(|p| format!("{p}\n")).collect();
    assert_eq!(out, expected);

    std::fs::write(&pattern, ">only a header\n").unwrap();
    let (code, _, _) = cpm(&[
        "--text-file",
        text.to_str().unwrap(),
        "--pattern-file",
        pattern.to_str().unwrap(),
        "-k",
        "0",
        "--fasta",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn raw_file_strips_one_newline() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(b"abc\n").unwrap();
    let s = ingest(&Source::File(f.path().to_owned()), false).unwrap();
    assert_eq!(s.len(), 3);
    assert_eq!(fasta_residues(b">h1\nac\n>h2\ngt\n"), b"ACGT");
}

#[test]
fn text_output_is_byte_stable() {
    let args = [
        "--text",
        "abaabbabaabbbaab",
        "--pattern",
        "aabba",
        "-k",
        "1",
        "--witness",
    ];
    assert_eq!(cpm(&args), cpm(&args));
}

#[test]
fn bench_emits_csv() {
    let (code, out, _) = cpm(&[
        "bench",
        "--n",
        "512",
        "--m",
        "16",
        "-k",
        "0,2",
        "--algorithms",
        "naive,anchor,sample",
        "--input",
        "random",
    ]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,m,k,algorithm,median_ms"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    for r in &rows {
        assert_eq!(r.len(), 5);
        assert!(r[4].parse::<f64>().unwrap() >= 0.0);
    }
    assert_eq!(cpm(&["bench", "--reps", "3"]).0, 1);
}

fn positions_text(out: &str) -> Vec<usize> {
    out.lines()
        .map(|l| l.split('\t').next().unwrap().parse().unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn json_positions_equal_text_positions(
        text in "[ab]{1,60}",
        pattern in "[ab]{1,12}",
        k in 0usize..6,
        alg in prop::sample::select(vec!["naive", "anchor", "sample", "auto"]),
        witness in any::<bool>(),
    ) {
        let ks = k.to_string();
        let mut args = vec!["--text", &text, "--pattern", &pattern, "-k", &ks, "--algorithm", alg];
        if witness {
            args.push("--witness");
        }
        let (c1, plain, _) = cpm(&args);
        args.extend(["--format", "json"]);
        let (c2, json, _) = cpm(&args);
        prop_assert_eq!((c1, c2), (0, 0));
        let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
        let from_json: Vec<usize> = doc["positions"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap() as usize).collect();
        prop_assert_eq!(&from_json, &positions_text(&plain));
        prop_assert_eq!(doc["witnesses"].is_array(), witness);
        prop_assert!(doc["timing_ms"].is_number());
    }

    #[test]
    fn algorithms_agree(text in "[abc]{1,80}", pattern in "[abc]{1,15}", k in 0usize..5) {
        let ks = k.to_string();
        let outs: Vec<String> = ["naive", "anchor", "sample"].iter().map(|alg| {
            cpm(&["--text", &text, "--pattern", &pattern, "-k", &ks, "--algorithm", alg]).1
        }).collect();
        prop_assert_eq!(&outs[0], &outs[1]);
        prop_assert_eq!(&outs[0], &outs[2]);
    }

    #[test]
    fn ingest_round_trip(bytes in prop::collection::vec(any::<u8>(), 1..200)) {
        prop_assume!(bytes != b"\n");
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(&bytes).unwrap();
        f.write_all(b"\n").unwrap();
        let s = ingest(&Source::File(f.path().to_owned()), false).unwrap();
        prop_assert_eq!(s, cpm_core::Sequence::from_bytes(&bytes));
    }
}
