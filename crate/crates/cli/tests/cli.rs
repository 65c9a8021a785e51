use std::path::PathBuf;

use qdesign::text::{code_to_json, design_to_json};
use qdesign::{DesignInstance, Field, LinearCode, Matrix, Mode};
use qdesign_cli::run;
use serde_json::Value;

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-golden");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn qd(args: &str) -> (i32, Value) {
    let argv: Vec<&str> = std::iter::once("qdesign")
        .chain(args.split_whitespace())
        .collect();
    let out = run(argv);
    let report = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, report)
}

struct Fixtures {
    complete: PathBuf,
    broken: PathBuf,
    gdd_good: PathBuf,
    gdd_bad: PathBuf,
    qc: PathBuf,
}

fn fixtures() -> Fixtures {
    let f2 = Field::prime(2).unwrap();
    let complete = DesignInstance::complete(&f2, 4, 2, 3).unwrap();
    let mut blocks = complete.blocks().to_vec();
    blocks.pop();
    let broken = DesignInstance::new(&f2, 4, 2, 3, blocks, 3, Mode::Exact).unwrap();
    let qc = LinearCode::from_generator(
        &Matrix::from_codes(&f2, 2, 4, &[1, 1, 0, 0, 0, 0, 1, 1]).unwrap(),
    );
    // transversal design TD(3,2): groups {0,1} {2,3} {4,5}
    let gdd = r#"{"points":[0,1,2,3,4,5],"groups":[[0,1],[2,3],[4,5]],"blocks":[[0,2,4],[0,3,5],[1,2,5],[1,3,4]]}"#;
    let gdd_bad = r#"{"points":[0,1,2,3,4,5],"groups":[[0,1],[2,3],[4,5]],"blocks":[[0,2,4],[0,3,5],[1,2,5]]}"#;
    let fx = Fixtures {
        complete: tmp("complete_2_4_3.json"),
        broken: tmp("broken_2_4_3.json"),
        gdd_good: tmp("td32.json"),
        gdd_bad: tmp("td32_missing.json"),
        qc: tmp("qc.json"),
    };
    std::fs::write(&fx.complete, design_to_json(&complete)).unwrap();
    std::fs::write(&fx.broken, design_to_json(&broken)).unwrap();
    std::fs::write(&fx.gdd_good, gdd).unwrap();
    std::fs::write(&fx.gdd_bad, gdd_bad).unwrap();
    std::fs::write(&fx.qc, code_to_json(&qc)).unwrap();
    fx
}

#[test]
fn golden_exit_codes() {
    let fx = fixtures();
    let complete = fx.complete.display();
    let cases: Vec<(String, i32)> = vec![
        ("gauss --n 4 --k 2 --q 2".into(), 0),
        ("subspaces --q 2 --n 4 --k 2".into(), 0),
        ("subspaces --q 2 --n 6 --k 3 --budget 10".into(), 2),
        ("orbits --q 2 --n 4 --k 2".into(), 0),
        ("singer --q 3 --n 3".into(), 0),
        ("splitting-count --q 2 --n 2 --r 1".into(), 0),
        ("splitting-count --q 2 --n 4 --r 3".into(), 2),
        (format!("design-verify --file {complete}"), 0),
        (format!("design-verify --file {}", fx.broken.display()), 1),
        (
            format!("design-verify --file {}", tmp("missing.json").display()),
            2,
        ),
        ("km-search --q 2 --n 4 --t 2 --k 3 --lambda 3".into(), 0),
        ("km-search --q 2 --n 6 --t 2 --k 3 --lambda 3".into(), 1),
        (format!("gdd-verify --file {}", fx.gdd_good.display()), 0),
        (format!("gdd-verify --file {}", fx.gdd_bad.display()), 1),
        (format!("largeset-check --file {complete}"), 0),
        ("pg2 --p 3".into(), 0),
        ("pg2 --p 4".into(), 2),
        ("nrc-arc --q 7 --n 2".into(), 0),
        ("code-rs --q 5 --points 1,2,3,4 --k 2".into(), 0),
        ("code-cyclic --q 2 --n 7 --g 1,0,1".into(), 2),
        ("code-goppa --q 4 --locators all --g 0,1".into(), 0),
        (format!("code-qc-index --file {}", fx.qc.display()), 0),
        ("code-count-cyclic --q 2 --n 7".into(), 0),
        ("poly-factor-xn1 --q 5 --n 8".into(), 0),
        ("poly-partfrac --q 5 --f 1,1 --g 1,1".into(), 2),
        ("dh --q 11 --seed 42".into(), 0),
        ("dlp --N 30 --target 17 --reflection".into(), 1),
        ("table-check --row borel --q 7".into(), 2),
        ("gauss --n 4".into(), 2),
        ("--help".into(), 0),
    ];
    assert_eq!(cases.len(), 30);
    for (args, code) in &cases {
        let (got, report) = qd(args);
        assert_eq!(got, *code, "qdesign {args}: {report}");
        if report != Value::Null {
            assert_eq!(report["ok"], Value::Bool(*code == 0), "qdesign {args}");
        }
    }
}

#[test]
fn reported_values() {
    let fx = fixtures();
    assert_eq!(qd("gauss --n 4 --k 2 --q 2").1["result"]["value"], 35);
    let big = qd("gauss --n 40 --k 20 --q 7").1;
    assert!(big["result"]["value"].is_string());
    let (_, r) = qd(&format!("design-verify --file {}", fx.complete.display()));
    assert_eq!(r["result"]["lambda_min"], 3);
    assert_eq!(r["result"]["lambda_max"], 3);
    let r = qd("poly-factor-xn1 --q 5 --n 8").1;
    assert_eq!(
        r["result"]["degrees"],
        serde_json::json!([1, 1, 1, 1, 2, 2])
    );
    assert_eq!(
        qd("splitting-count --q 2 --n 2 --r 1").1["result"]["count"],
        3
    );
    assert_eq!(qd("dlp --N 30 --target 17").1["result"]["m"], 17);
    assert_eq!(
        qd("code-cyclic --q 2 --n 7 --g 1,1,0,1").1["result"]["params"],
        "[7,4,3]_2"
    );
    assert_eq!(
        qd("code-goppa --q 4 --locators all --g 0,1").1["result"]["params"],
        "[3,1,3]_2"
    );
    let r = qd(&format!("code-qc-index --file {}", fx.qc.display())).1;
    assert_eq!(
        (
            r["result"]["index"].clone(),
            r["result"]["co_index"].clone()
        ),
        (2.into(), 2.into())
    );
    assert_eq!(
        qd("poly-count-irr --q 2 --l 4").1["result"]["irreducible"],
        3
    );
    let r = qd("poly-count-irr --q 5 --l 4 --invariant-k 2").1;
    assert_eq!(r["result"]["invariant"]["method"], "enumeration");
    let r = qd("cayley --cyclic 7 --set 1,2,4").1;
    assert_eq!(r["result"]["graph"]["min_out_degree"], 3);
    assert_eq!(r["result"]["sum_free"], false);
    let r = qd("dh --q 11 --seed 42").1;
    assert_eq!(r["result"]["shared_first"], r["result"]["shared_second"]);
}

#[test]
fn saved_files_round_trip() {
    let code = tmp("rs.json");
    let dual = tmp("rs_dual.json");
    let design = tmp("km_design.json");
    assert_eq!(
        qd(&format!(
            "code-rs --q 5 --points 1,2,3,4 --k 2 --save {}",
            code.display()
        ))
        .0,
        0
    );
    let (c, r) = qd(&format!(
        "code-dual --file {} --save {}",
        code.display(),
        dual.display()
    ));
    assert_eq!(c, 0);
    assert_eq!(r["result"]["k"], 2);
    assert_eq!(
        qd(&format!("code-mindist --file {}", dual.display())).1["result"]["d"],
        3
    );
    let (c, r) = qd(&format!("code-action --file {} --reversal", code.display()));
    assert_eq!(c, 0);
    assert!(r["result"]["distance"].is_u64());
    assert_eq!(
        qd(&format!(
            "code-coset --file {} --word 1,0,0,0",
            code.display()
        ))
        .1["result"]["weight"],
        1
    );
    let km = format!(
        "km-search --q 2 --n 4 --t 2 --k 3 --lambda 3 --save-design {}",
        design.display()
    );
    assert_eq!(qd(&km).0, 0);
    assert_eq!(
        qd(&format!("design-verify --file {}", design.display())).0,
        0
    );
}

#[test]
fn out_flag_writes_the_report() {
    let path = tmp("gauss_report.json");
    let out = run([
        "qdesign",
        "--out",
        path.to_str().unwrap(),
        "gauss",
        "--n",
        "4",
        "--k",
        "2",
        "--q",
        "2",
    ]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().count(), 1);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["result"]["value"], 35);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        "dh --q 31 --seed 7",
        "km-search --q 2 --n 6 --t 2 --k 3 --lambda 3",
        "table-check --row dihedral-q-minus1 --q 7",
        "orbits --q 3 --n 3 --k 1",
        "code-count-cyclic --q 3 --n 8",
    ] {
        let argv: Vec<&str> = std::iter::once("qdesign")
            .chain(args.split_whitespace())
            .collect();
        let a = run(argv.clone());
        let b = run(argv);
        assert_eq!(a, b, "{args}");
    }
}
