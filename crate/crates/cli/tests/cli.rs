use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sha2::{Digest, Sha256};
use tempfile::TempDir;
use thetarm_core::field::parse_field_file;
use thetarm_core::pipeline::{
    parse_curve_file, parse_level2_file, parse_point4_file, Level2Input, RosenhainCurve,
};
use thetarm_core::relation::{parse_relations, rm_relations, span_contains, RelationFamily};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/example")
        .join(name)
}

fn thetarm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thetarm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn bundled_data_is_pinned() {
    let pins = [
        (
            "curve-p2.txt",
            "5249e17fd610a7c5dcbf967d2608ce33e5a78823f477c8c1d3169b7298fe9033",
        ),
        (
            "curve-p8.txt",
            "8a7d447d683bff4f5956b0b93165f9da3ad17c9d84e54e92881cb72b8f7f8dd6",
        ),
        (
            "field-p2.txt",
            "52d70c894cdbb6f9e840eb8883e809eb19043c8963f2ecd86913d2c661b2b54c",
        ),
        (
            "field-p8.txt",
            "0cdf4f4343c7bb5703718d265ef3c824f7ff3161f281312099b00a1ed84d32c3",
        ),
        (
            "point.txt",
            "ae114476bfb8e4e6b56fd1974082e058fbf8490b4177442e3d1c16ab84fd02cd",
        ),
        (
            "rm-block.txt",
            "cd4b0f02f36aab9efec9cdcfa9147068fa46bb14e4190c999bbc36fa7fc5cefd",
        ),
    ];
    for (name, expected) in pins {
        let digest = Sha256::digest(fs::read(data(name)).unwrap());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        assert_eq!(hex, expected, "{name} changed");
    }
}

#[test]
fn relations_files() {
    let out = thetarm(&["relations", "--set", "mumford"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 26);
    assert_eq!(stdout(&thetarm(&["relations", "--set", "mumford"])), text);
    assert_eq!(
        parse_relations(&text).unwrap().family(),
        RelationFamily::Mumford
    );

    let dir = TempDir::new().unwrap();
    let path = dir.path().join("rm.txt");
    assert_eq!(
        code(&thetarm(&["relations", "--set", "rm", "--out", p(&path)])),
        0
    );
    let rm = parse_relations(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rm, rm_relations());
    let block = parse_relations(&fs::read_to_string(data("rm-block.txt")).unwrap()).unwrap();
    for r in block.iter() {
        assert!(span_contains(&r.poly, &rm).unwrap());
    }

    let bogus = thetarm(&["relations", "--set", "bogus"]);
    assert_eq!(code(&bogus), 2);
    assert!(stderr(&bogus).contains("unknown relation set"));
}

#[test]
fn verify_the_example() {
    let field = data("field-p8.txt");
    let point = data("point.txt");
    for (set, lines) in [("mumford", 26), ("rm", 3), ("rm-bilinear", 24)] {
        let out = thetarm(&[
            "verify",
            "--field",
            p(&field),
            "--point",
            p(&point),
            "--set",
            set,
        ]);
        assert_eq!(code(&out), 0, "{set}");
        let text = stdout(&out);
        assert_eq!(text.lines().count(), lines + 1);
        assert!(text.ends_with("PASS\n"));
    }
    let out = thetarm(&[
        "verify",
        "--field",
        p(&field),
        "--point",
        p(&point),
        "--set",
        p(&data("rm-block.txt")),
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let field = write(&dir, "f.txt", "prime 101\n");
    let reps = [
        "0 0", "0 1", "0 2", "1 0", "1 1", "1 2", "1 3", "2 0", "2 1", "2 2",
    ];
    let ones: String = reps.iter().map(|u| format!("a {u} 1\n")).collect();
    let ones = write(&dir, "ones.txt", &ones);
    // the all-ones point satisfies every rm and Mumford relation
    for set in ["rm", "mumford"] {
        let out = thetarm(&[
            "verify",
            "--field",
            p(&field),
            "--point",
            p(&ones),
            "--set",
            set,
        ]);
        assert_eq!(code(&out), 0, "{set}");
    }

    let tampered = fs::read_to_string(data("point.txt"))
        .unwrap()
        .replacen("a 1 1 [", "a 1 1 [1", 1);
    let tampered = write(&dir, "tampered.txt", &tampered);
    let out = thetarm(&[
        "verify",
        "--field",
        p(&data("field-p8.txt")),
        "--point",
        p(&tampered),
    ]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("FAIL"));

    let missing = dir.path().join("missing.txt");
    assert_eq!(
        code(&thetarm(&[
            "verify",
            "--field",
            p(&field),
            "--point",
            p(&missing)
        ])),
        2
    );
    let malformed = write(&dir, "bad.txt", "a 0 0 1\na 4 0 1\n");
    assert_eq!(
        code(&thetarm(&[
            "verify",
            "--field",
            p(&field),
            "--point",
            p(&malformed)
        ])),
        2
    );
    assert_eq!(code(&thetarm(&["verify", "--field", p(&field)])), 2);
}

#[test]
fn down_rosenhain_and_up_on_the_example() {
    let dir = TempDir::new().unwrap();
    let field8 = data("field-p8.txt");
    let f = parse_field_file(&fs::read_to_string(&field8).unwrap(), false).unwrap();
    let l2 = dir.path().join("l2.txt");
    let out = thetarm(&[
        "down",
        "--field",
        p(&field8),
        "--point",
        p(&data("point.txt")),
        "--out",
        p(&l2),
    ]);
    assert_eq!(code(&out), 0);
    let Level2Input::Data(d) = parse_level2_file(&fs::read_to_string(&l2).unwrap(), &f).unwrap()
    else {
        panic!("expected level-2 data");
    };
    assert!(d.is_consistent(&f));

    let out = thetarm(&["rosenhain", "--field", p(&field8), "--point", p(&l2)]);
    assert_eq!(code(&out), 0);
    let expected = parse_curve_file(&fs::read_to_string(data("curve-p8.txt")).unwrap(), &f)
        .unwrap()
        .into_curve(&f)
        .unwrap();
    let models: Vec<RosenhainCurve> = stdout(&out)
        .lines()
        .map(|l| parse_curve_file(l, &f).unwrap().into_curve(&f).unwrap())
        .collect();
    assert!(models.contains(&expected));

    let out = thetarm(&["up", "--field", p(&field8), "--point", p(&l2)]);
    assert_eq!(code(&out), 0);
    let original = parse_point4_file(&fs::read_to_string(data("point.txt")).unwrap(), &f).unwrap();
    let text = stdout(&out);
    let candidates: Vec<_> = text
        .split("# candidate")
        .filter(|c| !c.trim().is_empty())
        .map(|c| parse_point4_file(&format!("#{c}"), &f).unwrap())
        .collect();
    assert!(candidates.iter().any(|c| c.projectively_equal(&original)));
}

#[test]
fn thomae_values() {
    let dir = TempDir::new().unwrap();
    let field = write(&dir, "f.txt", "prime 1000003\n");
    let curve = write(&dir, "c.txt", "rosenhain 2 3 4\n");
    let out = thetarm(&["thomae", "--field", p(&field), "--curve", p(&curve)]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("r1 32\n"), "{text}");
    assert!(text.ends_with("r4 12\n"), "{text}");
    let repeated = write(&dir, "r.txt", "rosenhain 2 2 4\n");
    assert_eq!(
        code(&thetarm(&[
            "thomae",
            "--field",
            p(&field),
            "--curve",
            p(&repeated)
        ])),
        2
    );
}

#[test]
fn rm_test_on_small_fields() {
    let dir = TempDir::new().unwrap();
    let f7 = write(&dir, "f7.txt", "prime 7\n");
    let curve = write(&dir, "c7.txt", "rosenhain 2 3 4\n");
    let witness = dir.path().join("w.txt");
    let out = thetarm(&[
        "rm-test",
        "--field",
        p(&f7),
        "--curve",
        p(&curve),
        "--auto-extend",
        "--out",
        p(&witness),
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("POSITIVE\n"));
    assert_eq!(fs::read_to_string(&witness).unwrap().lines().count(), 10);

    let f101 = write(&dir, "f101.txt", "prime 101\n");
    let curve = write(&dir, "c101.txt", "rosenhain 5 29 83\n");
    let too_small = thetarm(&["rm-test", "--field", p(&f101), "--curve", p(&curve)]);
    assert_eq!(code(&too_small), 2);
    assert!(stderr(&too_small).contains("extension"));
    let negative = thetarm(&[
        "rm-test",
        "--field",
        p(&f101),
        "--curve",
        p(&curve),
        "--auto-extend",
        "--max-candidates",
        "1000",
    ]);
    assert_eq!(code(&negative), 1);
    assert!(stdout(&negative).starts_with("NEGATIVE\n"));
    let zero = thetarm(&[
        "rm-test",
        "--field",
        p(&f101),
        "--curve",
        p(&curve),
        "--max-orderings",
        "0",
    ]);
    assert_eq!(code(&zero), 2);
}

#[test]
fn rm_test_on_the_example_curve() {
    let field = data("field-p8.txt");
    let out = thetarm(&[
        "rm-test",
        "--field",
        p(&field),
        "--curve",
        p(&data("curve-p8.txt")),
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("POSITIVE\n"));
    let f = parse_field_file(&fs::read_to_string(&field).unwrap(), false).unwrap();
    let witness = parse_point4_file(&text["POSITIVE\n".len()..], &f).unwrap();
    assert!(thetarm_core::pipeline::mumford_holds(&witness));
}

fn copy_example(dir: &TempDir) {
    for name in [
        "field-p8.txt",
        "field-p2.txt",
        "point.txt",
        "curve-p2.txt",
        "curve-p8.txt",
        "rm-block.txt",
    ] {
        fs::copy(data(name), dir.path().join(name)).unwrap();
    }
}

#[test]
fn selftest_passes_on_bundled_data() {
    let out = thetarm(&["selftest-example"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).ends_with("selftest: PASS\n"));
}

#[test]
fn selftest_names_the_failing_relation() {
    let dir = TempDir::new().unwrap();
    copy_example(&dir);
    let path = dir.path().join("point.txt");
    let text = fs::read_to_string(&path)
        .unwrap()
        .replacen("a 1 1 [", "a 1 1 [7", 1);
    fs::write(&path, text).unwrap();
    let out = thetarm(&["selftest-example", "--data-dir", p(dir.path())]);
    assert_eq!(code(&out), 1);
    let last = stdout(&out).lines().last().unwrap().to_string();
    assert!(
        last.starts_with("FAIL A1 mumford relations: relation m"),
        "{last}"
    );
}

#[test]
fn selftest_without_data_is_an_error() {
    let dir = TempDir::new().unwrap();
    copy_example(&dir);
    fs::remove_file(dir.path().join("curve-p2.txt")).unwrap();
    let out = thetarm(&["selftest-example", "--data-dir", p(dir.path())]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("curve-p2.txt"));
}
