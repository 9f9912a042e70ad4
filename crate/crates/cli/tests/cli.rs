use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn comdet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_comdet"))
        .args(args)
        .env_remove("GRAPH_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn summary_fields(out: &Output) -> Vec<String> {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    stdout(out).trim().split(',').map(str::to_owned).collect()
}

#[test]
fn detect_k4_baseline() {
    let f = summary_fields(&comdet(&[
        "detect",
        "--input",
        data("k4.el").to_str().unwrap(),
        "--no-vf",
        "--no-coloring",
    ]));
    assert_eq!(f.len(), 5);
    assert_eq!(f[0], "0.000000");
    assert_eq!(f[1], "1");
    assert!(f[4].starts_with("vf=") && f[4].contains(";rebuild="));
}

#[test]
fn detect_two_triangles_writes_labels() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("assign.txt");
    let trace = dir.path().join("trace.csv");
    let f = summary_fields(&comdet(&[
        "detect",
        "-i",
        data("two_triangles.el").to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]));
    assert_eq!(f[0], "0.357143");
    let assignment = std::fs::read_to_string(&out).unwrap();
    assert_eq!(assignment, "0 0\n1 0\n2 0\n3 1\n4 1\n5 1\n");
    let trace = std::fs::read_to_string(&trace).unwrap();
    let mut lines = trace.lines();
    assert_eq!(lines.next(), Some("phase,iteration,stage,modularity,moves,millis"));
    assert!(lines.all(|l| l.split(',').count() == 6));
    assert!(trace.contains(",clustering,") && trace.contains(",rebuild,"));
}

#[test]
fn string_labels_survive_into_the_assignment() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lesmis.txt");
    summary_fields(&comdet(&[
        "detect",
        "-i",
        data("lesmis.el").to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]));
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.lines().any(|l| l.starts_with("Valjean ")));
}

#[test]
fn empty_graph_exits_4() {
    let out = comdet(&["detect", "--input", data("empty.el").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("modularity undefined for edgeless graph"));
    let out = comdet(&["stats", "--input", data("empty.el").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn io_parse_and_usage_errors() {
    assert_eq!(comdet(&["detect", "-i", "/no/such/file"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.el");
    std::fs::write(&bad, "0 1\n1 2 -3\n").unwrap();
    let out = comdet(&["detect", "-i", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let k4 = data("k4.el");
    let k4 = k4.to_str().unwrap();
    assert_eq!(comdet(&["detect", "-i", k4, "--bogus"]).status.code(), Some(1));
    assert_eq!(comdet(&["detect", "-i", k4, "--format", "csv"]).status.code(), Some(1));
    assert_eq!(
        comdet(&["detect", "-i", k4, "--theta", "1e-2", "--theta-color", "1e-4"]).status.code(),
        Some(1)
    );
    assert_eq!(comdet(&["detect", "-i", k4, "--threads", "0"]).status.code(), Some(1));
    assert!(comdet(&["--help"]).status.success());
}

#[test]
fn stats_examples() {
    let cases = [
        ("k4.el", "4,6,3,3.000,0.000"),
        ("star.el", "4,3,3,1.500,0.577"),
        ("path3.el", "3,2,2,1.333,0.354"),
        ("k4.mtx", "4,6,3,3.000,0.000"),
        ("two_triangles.graph", "6,7,3,2.333,0.202"),
    ];
    for (file, expected) in cases {
        let out = comdet(&["stats", "-i", data(file).to_str().unwrap()]);
        assert!(out.status.success());
        assert_eq!(stdout(&out).trim(), expected, "{file}");
    }
}

#[test]
fn compare_examples() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p.to_str().unwrap().to_owned()
    };
    let s = write("s.txt", "1 0\n2 0\n3 0\n4 0\n");
    let p = write("p.txt", "4 b\n3 b\n2 a\n1 a\n");
    let short = write("short.txt", "1 0\n2 0\n3 0\n");
    let other = write("other.txt", "1 0\n2 0\n3 0\n5 0\n");

    let out = comdet(&["compare", &s, &p]);
    assert_eq!(stdout(&out).trim(), "2,0,4,0,1.0,0.333333,0.333333,0.333333");
    let out = comdet(&["compare", &p, &p]);
    assert!(stdout(&out).trim().ends_with(",1.0,1.0,1.0,1.0"));
    assert_eq!(comdet(&["compare", &s, &short]).status.code(), Some(5));
    assert_eq!(comdet(&["compare", &s, &other]).status.code(), Some(5));
}

#[test]
fn flag_matrix_over_the_corpus() {
    let files = [
        "k4.el",
        "two_triangles.el",
        "two_triangles.graph",
        "k4.mtx",
        "star.el",
        "path3.el",
        "karate.el",
        "lesmis.el",
        "caveman.el",
    ];
    let toggles: [&[&str]; 4] = [&[], &["--no-vf"], &["--no-coloring"], &["--no-vf", "--no-coloring"]];
    for file in files {
        let path = data(file);
        for toggle in toggles {
            for theta_color in ["1e-2", "1e-4"] {
                let mut args = vec!["detect", "-i", path.to_str().unwrap(), "--color-cutoff", "0"];
                args.extend_from_slice(toggle);
                args.extend_from_slice(&["--theta-color", theta_color]);
                let f = summary_fields(&comdet(&args));
                let q: f64 = f[0].parse().unwrap();
                assert!((-0.5..1.0).contains(&q), "{file} {args:?}: {q}");
            }
        }
    }
}

#[test]
fn thread_count_does_not_change_the_output() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for threads in ["1", "3"] {
        let out = dir.path().join(format!("t{threads}.txt"));
        let status = Command::new(env!("CARGO_BIN_EXE_comdet"))
            .args(["detect", "-i", data("caveman.el").to_str().unwrap(), "--color-cutoff", "0"])
            .args(["-o", out.to_str().unwrap()])
            .env("GRAPH_THREADS", threads)
            .status()
            .unwrap();
        assert!(status.success());
        files.push(std::fs::read(out).unwrap());
    }
    assert_eq!(files[0], files[1]);
}
