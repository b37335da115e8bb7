use std::fs;
use std::path::{Path, PathBuf};

use ba_cli::{run, selftest, Outcome};
use ba_core::document::{print_matrix, print_value_function};
use ba_core::qbinom::qbinom_matrix;
use ba_core::{Field, Matrix, Scalar, ValueFunction};
use tempfile::TempDir;

struct Scratch(TempDir);

impl Scratch {
    fn new() -> Scratch {
        Scratch(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.0.path().join(name);
        fs::write(&path, contents).unwrap();
        path
    }

    fn matrix(&self, name: &str, rows: &[&[i64]]) -> PathBuf {
        self.file(name, &print_matrix(&Matrix::from_i64(Field::Rational, rows).unwrap()))
    }
}

fn ba(args: &[&str]) -> Outcome {
    run(std::iter::once("ba").chain(args.iter().copied()))
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn q(s: &str) -> Scalar {
    Field::Rational.parse_scalar(s).unwrap()
}

#[test]
fn check_verdicts() {
    let s = Scratch::new();
    let identity = s.matrix("id.json", &[&[1, 0], &[0, 1]]);
    let out = ba(&["check", p(&identity)]);
    assert_eq!((out.stdout.as_str(), out.code), ("not good: window(1,1) singular\n", 1));

    let good_only = s.matrix("g.json", &[&[1, 0, 1], &[0, 1, 1], &[0, 0, 1]]);
    let out = ba(&["check", p(&good_only)]);
    assert_eq!(out.stdout, "good\nnot very good: window(1,1) singular\n");
    assert_eq!(out.code, 1);

    let qb = s.file("qb.json", &print_matrix(&qbinom_matrix(4, &q("2")).unwrap()));
    let out = ba(&["check", p(&qb)]);
    assert_eq!((out.stdout.as_str(), out.code), ("good\nvery good\n", 0));

    let broken = s.file("bad.json", "{\"d\": 1, ");
    assert_eq!(ba(&["check", p(&broken)]).code, 2);
    assert_eq!(ba(&["check", "/nonexistent/file.json"]).code, 2);
}

#[test]
fn bvalues_examples() {
    let s = Scratch::new();
    let qb = s.file("qb.json", &print_matrix(&qbinom_matrix(4, &q("3")).unwrap()));
    for method in ["det", "brace", "flags", "all"] {
        let out = ba(&["bvalues", p(&qb), "--method", method]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let expected = ValueFunction::constant(2, q("1/3")).unwrap();
        assert_eq!(out.stdout, print_value_function(&expected));
    }

    let example = s.matrix("ex.json", &[&[1, 1, 1], &[0, 1, 3], &[0, 0, 1]]);
    let out = ba(&["bvalues", p(&example)]);
    assert!(out.stdout.contains(r#"{"loc":[0,0,0],"value":"1/2"}"#), "{}", out.stdout);

    let identity = s.matrix("id.json", &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    assert_eq!(ba(&["bvalues", p(&identity)]).code, 1);

    let lower = s.matrix("low.json", &[&[1, 1], &[1, 1]]);
    assert_eq!(ba(&["bvalues", p(&lower)]).code, 2);
}

#[test]
fn bvalues_small_diameter_is_empty() {
    let s = Scratch::new();
    let small = s.matrix("small.json", &[&[2, 1], &[0, 1]]);
    let out = ba(&["bvalues", p(&small)]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("\"d\": -1"));
    assert!(out.stdout.contains("\"values\": []"));
    assert!(out.stderr.starts_with("notice:"));
}

#[test]
fn bvalues_all_agree_on_random_instances() {
    let s = Scratch::new();
    for seed in 0..100 {
        let field = if seed % 2 == 0 { Field::Rational } else { Field::prime(101).unwrap() };
        let t = ba_core::random_very_good(2 + seed as usize % 4, field, seed);
        let path = s.file("r.json", &print_matrix(&t));
        let out = ba(&["bvalues", p(&path), "--method", "all"]);
        assert_eq!(out.code, 0, "seed {seed}: {}", out.stderr);
    }
}

#[test]
fn nice_and_equiv() {
    let s = Scratch::new();
    let t = s.matrix("t.json", &[&[2, 2, 2], &[0, 1, 3], &[0, 0, 1]]);
    let out = ba(&["nice", p(&t)]);
    assert_eq!(out.stdout, print_matrix(&Matrix::from_i64(Field::Rational, &[&[1, 1, 1], &[0, 1, 3], &[0, 0, 1]]).unwrap()));

    let htk = s.matrix("htk.json", &[&[6, 3, 9], &[0, -2, -18], &[0, 0, 2]]);
    let base = s.matrix("base.json", &[&[1, 1, 1], &[0, 1, 3], &[0, 0, 1]]);
    let out = ba(&["equiv", p(&base), p(&htk)]);
    assert_eq!((out.stdout.as_str(), out.code), ("equivalent\n", 0));

    let pascal = s.matrix("pascal.json", &[&[1, 1, 1], &[0, 1, 2], &[0, 0, 1]]);
    let qb = s.file("qb.json", &print_matrix(&qbinom_matrix(2, &q("2")).unwrap()));
    let out = ba(&["equiv", p(&pascal), p(&qb)]);
    assert_eq!((out.stdout.as_str(), out.code), ("not equivalent\n", 1));

    let f7 = s.file("f7.json", &print_matrix(&qbinom_matrix(2, &Field::prime(7).unwrap().from_i64(2)).unwrap()));
    assert_eq!(ba(&["equiv", p(&pascal), p(&f7)]).code, 2);
}

#[test]
fn synth_and_from_bvalues() {
    let s = Scratch::new();
    let ones = s.file("ones.json", &print_value_function(&ValueFunction::constant(2, q("1")).unwrap()));
    let out = ba(&["synth", "--from-values", p(&ones)]);
    assert_eq!(out.stdout, print_matrix(&qbinom_matrix(2, &q("1")).unwrap()));

    for d in 2..6 {
        let halves = s.file("h.json", &print_value_function(&ValueFunction::constant(d - 2, q("1/2")).unwrap()));
        let out = ba(&["from-bvalues", p(&halves), "--d", &d.to_string()]);
        assert_eq!(out.stdout, print_matrix(&qbinom_matrix(d, &q("2")).unwrap()));
        let back = s.file("m.json", &out.stdout);
        assert_eq!(ba(&["bvalues", p(&back)]).stdout, fs::read_to_string(&halves).unwrap());
    }

    let halves = s.file("h.json", &print_value_function(&ValueFunction::constant(1, q("1/2")).unwrap()));
    assert_eq!(ba(&["from-bvalues", p(&halves), "--d", "4"]).code, 2);

    let zero = s.file("z.json", r#"{"d": 0, "field": "rational", "values": [{"loc": [0,0,0], "value": "0"}]}"#);
    assert_eq!(ba(&["synth", "--from-values", p(&zero)]).code, 1);
    assert_eq!(ba(&["from-bvalues", p(&zero)]).code, 1);
}

#[test]
fn qbinom_command() {
    let out = ba(&["qbinom", "--d", "3", "--q", "2"]);
    let expected = Matrix::from_i64(Field::Rational, &[&[1, 1, 1, 1], &[0, 1, 3, 7], &[0, 0, 1, 7], &[0, 0, 0, 1]]).unwrap();
    assert_eq!(out.stdout, print_matrix(&expected));
    let out = ba(&["qbinom", "--d", "2", "--q", "1"]);
    assert_eq!(out.stdout, print_matrix(&Matrix::from_i64(Field::Rational, &[&[1, 1, 1], &[0, 1, 2], &[0, 0, 1]]).unwrap()));
    assert_eq!(ba(&["qbinom", "--d", "2", "--q", "0"]).code, 1);
    assert_eq!(ba(&["qbinom", "--d", "2", "--q", "7", "--field", "gf:7"]).code, 1);
    assert_eq!(ba(&["qbinom", "--d", "2", "--q", "-1/2"]).code, 0);
    assert_eq!(ba(&["qbinom", "--d", "2", "--q", "two"]).code, 2);
    assert_eq!(ba(&["qbinom", "--d", "2", "--q", "2", "--field", "gf:8"]).code, 2);
}

#[test]
fn output_flag_writes_file() {
    let s = Scratch::new();
    let target = s.0.path().join("out.json");
    let out = ba(&["qbinom", "--d", "2", "--q", "3", "--output", p(&target)]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read_to_string(&target).unwrap(), print_matrix(&qbinom_matrix(2, &q("3")).unwrap()));
}

#[test]
fn field_flag_must_match_documents() {
    let s = Scratch::new();
    let t = s.matrix("t.json", &[&[1, 1], &[0, 1]]);
    assert_eq!(ba(&["check", p(&t), "--field", "gf:5"]).code, 2);
    assert_eq!(ba(&["check", p(&t), "--field", "rational"]).code, 0);
}

#[test]
fn render_layouts() {
    let out = ba(&["render", "--d", "3"]);
    let expected = "      030\n    120 021\n  210 111 012\n300 201 102 003\n";
    assert_eq!(out.stdout, expected);

    let s = Scratch::new();
    let qb = s.file("qb.json", &print_matrix(&qbinom_matrix(3, &q("2")).unwrap()));
    assert_eq!(ba(&["render", p(&qb)]).stdout, "   1\n  1 7\n 1 3 7\n1 1 1 1\n");

    let vf = s.file("vf.json", &print_value_function(&ValueFunction::constant(1, q("-1/2")).unwrap()));
    assert_eq!(ba(&["render", p(&vf)]).stdout, "   -1/2\n-1/2  -1/2\n");

    assert_eq!(ba(&["render"]).code, 2);
}

#[test]
fn selftest_passes_and_is_reproducible() {
    let args = ["selftest", "--d", "5", "--field", "gf:101", "--trials", "100", "--seed", "42"];
    let first = ba(&args);
    assert_eq!(first.code, 0, "{}", first.stdout);
    assert!(first.stdout.ends_with("PASS\n"));
    assert_eq!(ba(&args).stdout, first.stdout);
    assert_eq!(ba(&["selftest", "--d", "3", "--trials", "5"]).code, 0);
}

#[test]
fn selftest_detects_a_corrupted_determinant() {
    let field = Field::prime(101).unwrap();
    let off_by_one = |m: &Matrix| m.det() + field.one();
    let out = selftest(4, field, 5, 1, &off_by_one);
    assert_eq!(out.code, 3);
    assert!(out.stdout.contains("FAIL"));

    let transposed_bug = |m: &Matrix| if m.rows() == 2 { -m.det() } else { m.det() };
    assert_eq!(selftest(4, Field::Rational, 3, 9, &transposed_bug).code, 3);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ba(&["frobnicate"]).code, 2);
    assert_eq!(ba(&["bvalues"]).code, 2);
    assert_eq!(ba(&["--help"]).code, 0);
}
