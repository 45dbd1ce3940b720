use std::process::{Command, Output};

fn leaper(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leaper"))
        .args(args)
        .output()
        .expect("spawn leaper")
}

fn stdout(args: &[&str]) -> String {
    let out = leaper(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// `(x, y, distance)` triples from a distance table.
fn triples(csv: &str) -> Vec<(i64, i64, i64)> {
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,y,distance"));
    lines
        .map(|l| {
            let v: Vec<i64> = l.split(',').map(|s| s.parse().unwrap()).collect();
            (v[0], v[1], v[2])
        })
        .collect()
}

#[test]
fn chess_knight_table() {
    let rows = triples(&stdout(&["distance", "--piece", "knight", "1", "2", "--radius", "3"]));
    assert_eq!(rows.len(), 49);
    let at = |x, y| rows.iter().find(|r| r.0 == x && r.1 == y).unwrap().2;
    assert_eq!(at(0, 0), 0);
    assert_eq!(at(1, 2), 1);
    assert_eq!(at(1, 1), 2);
    assert_eq!(at(1, 0), 3);
    assert_eq!(at(2, 2), 4);
    assert_eq!(at(3, 3), 2);
}

#[test]
fn king_table_is_max_norm() {
    for (x, y, d) in triples(&stdout(&["distance", "--piece", "king", "--radius", "2"])) {
        assert_eq!(d, x.abs().max(y.abs()));
    }
}

#[test]
fn non_primitive_distance_table_marks_odd_cells() {
    let rows = triples(&stdout(&["distance", "--piece", "knight", "1", "3", "--radius", "4"]));
    for (x, y, d) in rows {
        assert_eq!(d == -1, (x + y).rem_euclid(2) == 1, "({x}, {y})");
    }
}

#[test]
fn configuration_errors_exit_with_two() {
    for args in [
        &["velocity", "--piece", "knight", "1", "3", "--radius", "4"][..],
        &["distance", "--piece", "knight", "2", "2"],
        &["distance", "--piece", "bishop"],
        &["distance", "--piece", "king", "--radius", "0"],
        &["cdf", "--piece", "king", "--radius", "5"],
        &["distance", "--radius", "3"],
    ] {
        let out = leaper(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["velocity", "--piece", "knight", "2", "3", "--radius", "64"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = ["cdf", "--piece", "knight", "1", "2", "--radius", "40", "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn json_matches_csv() {
    let base = ["distance", "--piece", "knight", "2", "3", "--radius", "3"];
    let csv = triples(&stdout(&base));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&[&base[..], &["--format", "json"]].concat())).unwrap();
    assert_eq!(json["config"]["subcommand"], "distance");
    assert_eq!(json["config"]["radius"], 3);
    let rows: Vec<(i64, i64, i64)> = json["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["x"].as_i64().unwrap(), r["y"].as_i64().unwrap(), r["distance"].as_i64().unwrap()))
        .collect();
    assert_eq!(rows, csv);
}

#[test]
fn writes_to_file() {
    let path = std::env::temp_dir().join(format!("leaper-cli-{}.csv", std::process::id()));
    let out = leaper(&["sumset", "--piece", "king", "--radius", "5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, stdout(&["sumset", "--piece", "king", "--radius", "5"]));
}

#[test]
fn fibonacci_knights() {
    let out = stdout(&["fibo", "--radius", "9"]);
    let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 9);
    for (i, row) in rows.iter().enumerate() {
        let n = i + 1;
        assert_eq!(row[0], n.to_string());
        assert_eq!(row[3], (n % 3 != 0).to_string(), "n = {n}");
    }
    assert_eq!(rows[0][4], "24/13");
    assert_eq!(rows[1][4], "90/31");
    assert!(rows[2][4].is_empty());
}

#[test]
fn sumset_sizes_for_the_king() {
    let out = stdout(&["sumset", "--piece", "king", "--radius", "6"]);
    for (l, line) in out.lines().skip(1).enumerate() {
        let l = l as u64 + 1;
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[1], ((2 * l + 1) * (2 * l + 1)).to_string());
        assert_eq!(cols[2], (8 * l).to_string());
        assert_eq!(cols[4], "4");
    }
}

#[test]
fn velocity_rows_follow_the_doubling_schedule() {
    let out = stdout(&["velocity", "--piece", "knight", "1", "2", "--radius", "100"]);
    let hs: Vec<u32> = out.lines().skip(1).map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert_eq!(hs, [1, 3, 6, 12, 25, 50, 100]);
    assert!(out.lines().skip(1).all(|l| l.contains(",24/13,")));
}
