//! Command-line behavior: exit codes, CSV shape, record invariants.

use std::process::Command;

fn esa_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_esa"))
}

fn run_to_csv(args: &[&str]) -> Vec<String> {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.csv");
    let status = esa_bin()
        .args(args)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "command failed: {args:?}");
    std::fs::read_to_string(&out)
        .unwrap()
        .lines()
        .map(String::from)
        .collect()
}

#[test]
fn header_is_canonical() {
    let lines = run_to_csv(&[
        "gauss-seq",
        "--n",
        "64",
        "--q-ladder",
        "0.2,0.5",
        "--replicates",
        "1",
        "--no-timing",
    ]);
    assert_eq!(
        lines[0],
        "experiment,method,replicate,seed,stop_index,criterion_trace,metric,value,wall_time_ms"
    );
    // Oracle row + 3 method rows.
    assert_eq!(lines.len(), 5);
}

#[test]
fn trace_length_always_equals_stop_index() {
    let lines = run_to_csv(&[
        "knn",
        "--n",
        "200",
        "--ladder",
        "3,5,10,20",
        "--replicates",
        "3",
        "--seed",
        "9",
        "--no-timing",
    ]);
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        let stop: usize = fields[4].parse().unwrap();
        let trace_len = if fields[5].is_empty() {
            0
        } else {
            fields[5].split(';').count()
        };
        assert_eq!(trace_len, stop, "row: {line}");
    }
}

#[test]
fn fa_rows_cover_the_whole_ladder() {
    let lines = run_to_csv(&[
        "gmm",
        "--setting",
        "a",
        "--n",
        "150",
        "--k-max",
        "4",
        "--replicates",
        "2",
        "--seed",
        "3",
        "--no-timing",
    ]);
    let mut saw_fa = false;
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        if fields[1] == "fa" {
            saw_fa = true;
            assert_eq!(fields[4], "4", "fa stop index must equal k-max: {line}");
        }
    }
    assert!(saw_fa);
}

#[test]
fn esa_never_works_harder_than_fa() {
    let lines = run_to_csv(&[
        "gauss-seq",
        "--n",
        "256",
        "--q-ladder",
        "0.1,0.3,0.5,0.7,0.9",
        "--replicates",
        "5",
        "--seed",
        "21",
        "--no-timing",
    ]);
    let stop_of = |method: &str, replicate: &str| -> usize {
        lines[1..]
            .iter()
            .map(|l| l.split(',').collect::<Vec<_>>())
            .find(|f| f[1] == method && f[2] == replicate)
            .map(|f| f[4].parse().unwrap())
            .unwrap()
    };
    for rep in 1..=5 {
        let r = rep.to_string();
        assert!(stop_of("esa", &r) <= stop_of("fa", &r));
        assert_eq!(stop_of("fa", &r), 5);
    }
}

#[test]
fn config_errors_exit_one_runtime_errors_exit_two() {
    // Unknown method: configuration error.
    let status = esa_bin()
        .args(["gauss-seq", "--method", "bogus", "--out", "/tmp/unused.csv"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));

    // Ladder too large for the sample: configuration error.
    let status = esa_bin()
        .args([
            "knn",
            "--n",
            "50",
            "--ladder",
            "3,45",
            "--out",
            "/tmp/unused.csv",
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));

    // Unwritable output path: runtime failure.
    let status = esa_bin()
        .args([
            "gauss-seq",
            "--n",
            "64",
            "--q-ladder",
            "0.2,0.5",
            "--out",
            "/nonexistent-dir/out.csv",
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));

    // Bad flag value: configuration error.
    let status = esa_bin()
        .args(["gmm", "--setting", "z", "--out", "/tmp/unused.csv"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
}

#[test]
fn gmm_methods_agree_when_selection_matches_max_weight() {
    // ESA's max-weight model and MS's selected model coincide whenever the
    // criterion minimum lies inside the evaluated prefix; the labels, and
    // hence the scores, must then be identical.
    let lines = run_to_csv(&[
        "gmm",
        "--setting",
        "a",
        "--n",
        "400",
        "--k-max",
        "6",
        "--replicates",
        "2",
        "--seed",
        "14",
        "--no-timing",
    ]);
    for rep in ["1", "2"] {
        let rows: Vec<Vec<&str>> = lines[1..]
            .iter()
            .map(|l| l.split(',').collect::<Vec<_>>())
            .filter(|f| f[2] == rep && f[6] == "ari")
            .collect();
        let esa = rows.iter().find(|f| f[1] == "esa").unwrap();
        let ms = rows.iter().find(|f| f[1] == "ms").unwrap();
        let esa_trace: Vec<f64> = esa[5].split(';').map(|v| v.parse().unwrap()).collect();
        let ms_trace: Vec<f64> = ms[5].split(';').map(|v| v.parse().unwrap()).collect();
        let esa_best = esa_core::select_best(&esa_trace).unwrap();
        let ms_best = esa_core::select_best(&ms_trace).unwrap();
        if esa_best == ms_best {
            assert_eq!(
                esa[7], ms[7],
                "replicate {rep}: equal selections, equal score"
            );
        }
    }
}
