use fibercomm::report::Payload;
use fibercomm::{run_command, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};

fn ok(args: &[&str]) -> Payload {
    let out = run_command(args);
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    out.report.unwrap().payload
}

fn stderr_code(args: &[&str]) -> String {
    let out = run_command(args);
    assert_eq!(out.code, EXIT_DOMAIN, "{args:?}");
    out.stderr
}

const COMMANDS: &[&[&str]] = &[
    &["norm", "eval", "--class", "1/2,-3"],
    &["faces"],
    &["enumerate", "--face", "2", "--max-norm", "6"],
    &["entropy", "--class", "1,2"],
    &["entropy-table", "--face", "2", "--max-norm", "4"],
    &[
        "concavity",
        "--face",
        "2",
        "--p",
        "-3/10,1/2",
        "--q",
        "1/5,1/2",
        "--s",
        "1/2",
    ],
    &["classify", "--a", "U", "--b", "T"],
    &["classify", "--a", "1,2", "--b", "1,3"],
    &["cover", "--w1", "U", "--w2", "T", "--n", "3"],
    &["cover-search", "--w1", "U", "--w2", "T", "--n-max", "7"],
    &["minimality", "--degree", "3"],
    &["--descriptor", "magic", "entropy", "--class", "a"],
    &[
        "--descriptor",
        "magic",
        "classify",
        "--a",
        "1,1,0",
        "--b",
        "1,0,1",
    ],
];

#[test]
fn json_payloads_round_trip() {
    for args in COMMANDS {
        let mut argv = args.to_vec();
        argv.push("--json");
        let out = run_command(&argv);
        assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
        let parsed: Payload = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(parsed, out.report.unwrap().payload, "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in COMMANDS {
        let a = run_command(*args);
        let b = run_command(*args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.code, b.code);
    }
}

#[test]
fn faces_of_bundled_square() {
    match ok(&["faces"]) {
        Payload::Faces { faces } => {
            assert_eq!(faces.len(), 4);
            assert!(faces.iter().all(|f| f.fibered));
        }
        p => panic!("{p:?}"),
    }
}

#[test]
fn entropy_record_for_braid_class() {
    match ok(&["entropy", "--class", "sigma1_sigma2inv"]) {
        Payload::Entropy { record } => {
            assert_eq!(record.class, vec![0, 1]);
            assert_eq!(record.norm, 2);
            assert_eq!(record.dilatation, 2.61803398875);
            assert_eq!(record.entropy, 1.92484730024);
        }
        p => panic!("{p:?}"),
    }
    let out = run_command(["entropy", "--class", "0,1"]);
    assert!(out.stdout.contains("2.61803398875"));
}

#[test]
fn boundary_class_has_no_entropy() {
    // (1,1) lies on the edge between two fibered cones of the square
    assert!(stderr_code(&["entropy", "--class", "1,1"]).starts_with("error[E_NOT_IN_CONE]"));
}

#[test]
fn classify_named_classes() {
    match ok(&["classify", "--a", "U", "--b", "T"]) {
        Payload::Classify {
            kind,
            reason,
            witness,
            ..
        } => {
            assert_eq!(kind, "Symmetric");
            assert_eq!(reason, "symmetry-orbit");
            assert!(witness.is_some());
        }
        p => panic!("{p:?}"),
    }
    match ok(&["classify", "--a", "T", "--b", "sigma1_sigma2inv"]) {
        Payload::Classify { reason, .. } => assert_eq!(reason, "orbit-identity"),
        p => panic!("{p:?}"),
    }
    match ok(&["classify", "--a", "0,1", "--b", "1,2"]) {
        Payload::Classify {
            kind,
            reason,
            entropies,
            ..
        } => {
            assert_eq!(kind, "NonCommensurable");
            assert_eq!(reason, "entropy-gap");
            let [a, b] = entropies.unwrap();
            assert!((a - b).abs() > 0.2);
        }
        p => panic!("{p:?}"),
    }
}

#[test]
fn cover_of_symmetric_pair() {
    match ok(&["cover", "--w1", "U", "--w2", "T", "--n", "3"]) {
        Payload::Cover {
            chi1,
            chi2,
            conjugate_monodromies,
            conjugacy,
            report,
            ..
        } => {
            assert_eq!((chi1, chi2), (-2, -2));
            assert!(conjugate_monodromies);
            assert_eq!(conjugacy, "symmetry-orbit");
            assert_eq!(
                (
                    report.components,
                    report.component_degree,
                    report.component_chi
                ),
                (1, 3, -6)
            );
            assert!(report.nonsymmetric_commensurable);
        }
        p => panic!("{p:?}"),
    }
    match ok(&["cover-search", "--w1", "U", "--w2", "T", "--n-max", "7"]) {
        Payload::CoverSearch {
            degrees,
            kernel_gcd,
            ..
        } => {
            assert_eq!(kernel_gcd, 1);
            assert_eq!(degrees, vec![2, 3, 4, 5, 6, 7]);
        }
        p => panic!("{p:?}"),
    }
}

#[test]
fn cover_needs_the_hypothesis_for_a_search() {
    // (1,2) and (1,3) lie in different orbits, so nothing certifies conjugacy
    let err = stderr_code(&["cover-search", "--w1", "1,2", "--w2", "1,3", "--n-max", "5"]);
    assert!(err.starts_with("error[E_HYPOTHESIS_UNMET]"), "{err}");
    match ok(&["cover", "--w1", "1,2", "--w2", "1,3", "--n", "5"]) {
        Payload::Cover {
            conjugacy, report, ..
        } => {
            assert_eq!(conjugacy, "none");
            assert!(!report.nonsymmetric_commensurable);
        }
        p => panic!("{p:?}"),
    }
    let err = stderr_code(&["cover", "--w1", "T", "--w2", "-T", "--n", "2"]);
    assert!(err.starts_with("error[E_INVALID_PAIR]"), "{err}");
}

#[test]
fn minimality_gate_on_bundled_volumes() {
    for (args, possible, reason) in [
        (vec!["minimality", "--degree", "3"], false, "cusped-minimum"),
        (
            vec!["minimality", "--degree", "2"],
            true,
            "no-bound-violated",
        ),
        (
            vec!["--descriptor", "magic", "minimality", "--degree", "3"],
            false,
            "cusped-minimum",
        ),
        (
            vec![
                "minimality",
                "--degree",
                "2",
                "--volume",
                "100",
                "--cusps",
                "1",
            ],
            true,
            "no-bound-violated",
        ),
    ] {
        match ok(&args) {
            Payload::Minimality {
                possible: p,
                reason: r,
                ..
            } => {
                assert_eq!((p, r.as_str()), (possible, reason), "{args:?}");
            }
            p => panic!("{p:?}"),
        }
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run_command(["faces", "--bogus"]).code, EXIT_USAGE);
    assert_eq!(run_command(["nonsense"]).code, EXIT_USAGE);
    assert_eq!(
        run_command(["enumerate", "--face", "x", "--max-norm", "2"]).code,
        EXIT_USAGE
    );
    assert_eq!(run_command(["--help"]).code, EXIT_OK);
}

#[test]
fn domain_errors_exit_one_with_codes() {
    assert!(
        stderr_code(&["enumerate", "--face", "9", "--max-norm", "2"])
            .starts_with("error[E_NO_SUCH_FACE]")
    );
    assert!(stderr_code(&["entropy", "--class", "0,2"]).starts_with("error[E_NOT_PRIMITIVE]"));
    assert!(
        stderr_code(&["entropy", "--class", "1,2,3"]).starts_with("error[E_DIMENSION_MISMATCH]")
    );
    assert!(stderr_code(&["entropy", "--class", "V"]).starts_with("error[E_BAD_CLASS]"));
    assert!(stderr_code(&["--descriptor", "/nonexistent.json", "faces"]).starts_with("error[E_IO]"));
    assert!(stderr_code(&["minimality", "--degree", "1"]).starts_with("error[E_INVALID_ARGUMENT]"));
}

#[test]
fn descriptor_files_are_validated() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "").unwrap();
    assert!(
        stderr_code(&["--descriptor", empty.to_str().unwrap(), "faces"])
            .starts_with("error[E_PARSE]")
    );

    let mut file: serde_json::Value = serde_json::from_str(fibercomm::descriptor::SIX22).unwrap();
    file["named_classes"]["W"] = serde_json::json!([1, 2, 3]);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, file.to_string()).unwrap();
    let err = stderr_code(&["--descriptor", bad.to_str().unwrap(), "faces"]);
    assert!(
        err.starts_with("error[E_VALIDATION]: named classes have length betti"),
        "{err}"
    );
}

#[test]
fn newton_norm_source() {
    let dir = tempfile::tempdir().unwrap();
    let mut file: serde_json::Value = serde_json::from_str(fibercomm::descriptor::SIX22).unwrap();
    file["norm_source"] =
        serde_json::json!({"kind": "newton", "polynomial": file["faces"][2]["polynomial"].clone()});
    let path = dir.path().join("newton.json");
    std::fs::write(&path, file.to_string()).unwrap();
    let a = run_command([
        "--descriptor",
        path.to_str().unwrap(),
        "entropy-table",
        "--face",
        "2",
        "--max-norm",
        "6",
    ]);
    let b = run_command(["entropy-table", "--face", "2", "--max-norm", "6"]);
    assert_eq!(a.code, EXIT_OK, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn entropy_table_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("t.csv");
    let svg = dir.path().join("t.svg");
    let payload = ok(&[
        "entropy-table",
        "--face",
        "2",
        "--max-norm",
        "6",
        "--csv",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
        "--from",
        "-9/20,1/2",
        "--to",
        "9/20,1/2",
        "--samples",
        "17",
    ]);
    let Payload::EntropyTable { rows, .. } = payload else {
        panic!()
    };
    assert_eq!(rows.len(), 7);

    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(!text.contains('\r'));
    let mut reader = csv::Reader::from_path(&csv).unwrap();
    assert_eq!(
        reader.headers().unwrap(),
        vec!["class", "norm", "dilatation", "entropy"]
    );
    let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), 7);
    assert_eq!(&records[3][0], "(0,1)");
    assert_eq!(&records[3][2], "2.61803398875");

    let plot = std::fs::read_to_string(&svg).unwrap();
    assert!(plot.starts_with("<svg"));
    assert!(!plot.contains("script"));
    let pts = plot
        .split("points=\"")
        .nth(1)
        .unwrap()
        .split('"')
        .next()
        .unwrap();
    assert_eq!(pts.split(' ').count(), 17);
}

#[test]
fn svg_requires_a_segment() {
    assert_eq!(
        run_command([
            "entropy-table",
            "--face",
            "2",
            "--max-norm",
            "2",
            "--svg",
            "x.svg"
        ])
        .code,
        EXIT_USAGE
    );
}

#[test]
fn segment_leaving_the_face_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("t.svg");
    let err = stderr_code(&[
        "entropy-table",
        "--face",
        "2",
        "--max-norm",
        "2",
        "--svg",
        svg.to_str().unwrap(),
        "--from",
        "-1/2,1/2",
        "--to",
        "0,1",
    ]);
    assert!(err.starts_with("error[E_NOT_ON_FACE]"), "{err}");
}
