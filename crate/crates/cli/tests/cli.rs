use std::collections::BTreeSet;
use std::fs;
use std::process::{Command, Output};

use locus_core::loci::LocusDocument;
use locus_core::oracle;
use locus_core::space::{ChromaticSubset, Height, SubsetDocument};
use rand::SeedableRng;

fn locus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locus"))
        .args(args)
        .env_remove("LOCUS_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = locus(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn inflation_by_trivial_normal_is_everything() {
    let doc =
        LocusDocument::from_json(&ok(&["inflation", "--group", "D10", "--normal", "1"])).unwrap();
    assert_eq!(doc.classes.len(), 4);
    for c in &doc.classes {
        assert!(c.height_one);
        assert!(c.columns.values().all(|&v| v));
    }
}

#[test]
fn n_free_d10_c5_is_one_and_c2() {
    let doc =
        LocusDocument::from_json(&ok(&["nfree", "--group", "D10", "--normal", "C5"])).unwrap();
    let touched: Vec<&str> = doc
        .classes
        .iter()
        .filter(|c| c.height_one || c.columns.values().any(|&v| v))
        .map(|c| c.label.as_str())
        .collect();
    assert_eq!(touched, ["1", "C2"]);
    assert_eq!(doc.normal.as_deref(), Some("C5"));
}

#[test]
fn summary_goes_to_stderr() {
    let out = locus(&["inflation", "--group", "D10", "--normal", "C5"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.trim(), "D10: |G| = 10, 4 classes, primes 2,5,generic");
}

#[test]
fn figure_one_svg_is_deterministic() {
    let args = [
        "inflation",
        "--group",
        "C5",
        "--normal",
        "C5",
        "--format",
        "svg",
    ];
    let a = ok(&args);
    assert!(a.contains(r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1""#));
    assert_eq!(a, ok(&args));
}

#[test]
fn geomfix_marks_the_ambient_classes() {
    let doc =
        LocusDocument::from_json(&ok(&["geomfix", "--group", "D10", "--normal", "C5"])).unwrap();
    let ambient: Vec<Option<bool>> = doc.classes.iter().map(|c| c.ambient).collect();
    assert_eq!(ambient, [Some(false), Some(false), Some(true), Some(true)]);
}

#[test]
fn absfix_of_a_perfect_group_contains_the_generic_point() {
    let z: ChromaticSubset =
        serde_json::from_str(&ok(&["absfix", "--group", "A5", "--subgroup", "G"])).unwrap();
    assert!(z.includes_generic());
    let z: ChromaticSubset =
        serde_json::from_str(&ok(&["absfix", "--group", "D10", "--subgroup", "C5"])).unwrap();
    assert!(!z.includes_generic());
}

#[test]
fn support_and_extra_primes() {
    let doc = LocusDocument::from_json(&ok(&[
        "support",
        "--group",
        "S3",
        "--subgroup",
        "C2",
        "--primes",
        "7",
    ]))
    .unwrap();
    assert_eq!(
        doc.classes[0].columns.keys().collect::<Vec<_>>(),
        ["2", "3", "7", "generic"]
    );
    let touched: Vec<&str> = doc
        .classes
        .iter()
        .filter(|c| c.height_one)
        .map(|c| c.label.as_str())
        .collect();
    assert_eq!(touched, ["1", "C2"]);
}

#[test]
fn p_localization_preset() {
    for p in ["2", "3", "5"] {
        let z: ChromaticSubset =
            serde_json::from_str(&ok(&["localize", "--sh", "--invert-at", p])).unwrap();
        assert!(!z.includes_generic());
        let prime = locus_core::group::Prime::new(p.parse().unwrap()).unwrap();
        assert_eq!(z.threshold(prime), Some(Height::BOTTOM));
        assert_eq!(z.default_threshold(), None);
    }
}

#[test]
fn output_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig.dot");
    let stdout = ok(&[
        "inflation",
        "--group",
        "D10",
        "--normal",
        "G",
        "--format",
        "dot",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(stdout.is_empty());
    assert!(fs::read_to_string(&path)
        .unwrap()
        .starts_with("digraph locus {"));
}

#[test]
fn group_files_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("d10.txt");
    fs::write(
        &good,
        "# dihedral of order 10\ndegree 5\n(1 2 3 4 5)\n(2 5)(3 4)\n",
    )
    .unwrap();
    let from_file = ok(&[
        "inflation",
        "--group",
        good.to_str().unwrap(),
        "--normal",
        "5:0",
    ]);
    let from_catalog = ok(&["inflation", "--group", "D10", "--normal", "C5"]);
    let rows = |text: &str| {
        LocusDocument::from_json(text)
            .unwrap()
            .classes
            .into_iter()
            .map(|c| (c.order, c.columns, c.height_one))
            .collect::<Vec<_>>()
    };
    assert_eq!(rows(&from_file), rows(&from_catalog));

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "degree 3\n(1 2 4)\n").unwrap();
    let out = locus(&[
        "inflation",
        "--group",
        bad.to_str().unwrap(),
        "--normal",
        "1",
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = locus(&["inflation", "--group", "Q8", "--normal", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn selector_errors() {
    let out = locus(&["inflation", "--group", "C2xC2", "--normal", "C2"]);
    assert_eq!(code(&out), 3);
    let out = locus(&["inflation", "--group", "D10", "--normal", "C2"]);
    assert_eq!(code(&out), 2);
    assert!(
        locus(&["inflation", "--group", "C2xC2", "--normal", "(1 2)"])
            .status
            .success()
    );
}

#[test]
fn caps_exit_code() {
    let out = Command::new(env!("CARGO_BIN_EXE_locus"))
        .args(["inflation", "--group", "S5", "--normal", "1"])
        .env("LOCUS_MAX_ORDER", "50")
        .output()
        .unwrap();
    assert_eq!(code(&out), 4);
    // S5 fits the element cap but not the default lattice cap.
    let out = locus(&["inflation", "--group", "S5", "--normal", "1"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn poset_localization() {
    let dir = tempfile::tempdir().unwrap();
    let chain = dir.path().join("chain.txt");
    fs::write(&chain, "point a\npoint b\npoint c\nspec a b\nspec b c\n").unwrap();
    let path = chain.to_str().unwrap();

    let z: SubsetDocument = serde_json::from_str(&ok(&["localize", "--poset", path])).unwrap();
    assert_eq!(z.members, ["a", "b", "c"]);

    let z: SubsetDocument =
        serde_json::from_str(&ok(&["localize", "--poset", path, "--closed", "c"])).unwrap();
    assert!(z.members.is_empty());

    let out = locus(&["localize", "--poset", path, "--closed", "b"]);
    assert_eq!(code(&out), 5);

    let ascii = ok(&[
        "localize", "--poset", path, "--closed", "c", "--format", "ascii",
    ]);
    assert!(ascii.contains(". c"));
    assert!(ascii.contains("+ a"));

    let y = dir.path().join("y.json");
    fs::write(&y, r#"{"members":["c"],"closed":true}"#).unwrap();
    let z: SubsetDocument = serde_json::from_str(&ok(&[
        "localize",
        "--poset",
        path,
        "--y",
        y.to_str().unwrap(),
    ]))
    .unwrap();
    assert!(z.members.is_empty());

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "point a\nspec a b\n").unwrap();
    assert_eq!(
        code(&locus(&["localize", "--poset", bad.to_str().unwrap()])),
        2
    );
}

#[test]
fn random_poset_localizations_match_the_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for k in 0..8 {
        let poset = oracle::random_poset(&mut rng, 6, 0.35);
        let file = dir.path().join(format!("p{k}.txt"));
        fs::write(&file, poset.to_text()).unwrap();
        for y in oracle::sample_closed_subsets(&poset, &mut rng, 4) {
            let names: Vec<&str> = y.iter().map(|&i| poset.name(i)).collect();
            let closed = names.join(",");
            let z: SubsetDocument = serde_json::from_str(&ok(&[
                "localize",
                "--poset",
                file.to_str().unwrap(),
                "--closed",
                &closed,
            ]))
            .unwrap();
            let v: BTreeSet<usize> = (0..poset.len()).filter(|i| !y.contains(i)).collect();
            let expected: BTreeSet<String> = oracle::union_of_closed_subsets_inside(&poset, &v)
                .into_iter()
                .map(|i| poset.name(i).to_string())
                .collect();
            assert_eq!(
                z.members.into_iter().collect::<BTreeSet<_>>(),
                expected,
                "poset {k}, Y = {closed}"
            );
        }
    }
}

#[test]
fn verify_subset_and_corrupted_fixture() {
    let out = locus(&["verify", "--max-order", "10", "--posets", "20"]);
    assert_eq!(code(&out), 0);
    let table = String::from_utf8(out.stdout).unwrap();
    assert_eq!(table.lines().filter(|l| l.starts_with("PASS")).count(), 6);

    let out = locus(&[
        "verify",
        "--max-order",
        "10",
        "--posets",
        "5",
        "--corrupt-fixture",
    ]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8(out.stdout).unwrap().contains("FAIL"));
}

#[test]
fn json_output_round_trips() {
    for cmd in ["inflation", "geomfix", "nfree"] {
        let text = ok(&[cmd, "--group", "S4", "--normal", "C2xC2"]);
        let doc = LocusDocument::from_json(&text).unwrap();
        assert_eq!(doc.to_json(), text);
    }
}
