use std::process::{Command, Output};

fn bpair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bpair"))
        .args(args)
        .env_remove("BPAIR_JOBS")
        .output()
        .expect("run bpair")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn show_reproduces_p29_tables() {
    let o = bpair(&["show", "29"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row = |label: &str| -> Vec<u64> {
        let line = text
            .lines()
            .find(|l| l.split_whitespace().next() == Some(label))
            .unwrap();
        line.split_whitespace().skip(1).map(|v| v.parse().unwrap()).collect()
    };
    assert!(text.contains("t = 12"));
    assert_eq!(row("a"), [1, 2, 3, 4, 6, 8, 11]);
    assert_eq!(row("abar"), [12, 5, 7, 10, 14, 9, 13]);
    assert_eq!(row("bar(abar+a)"), [13, 7, 10, 14, 9, 12, 5]);
    assert!(text.contains("(7,7,7)"));
}

#[test]
fn show_p13_and_rejects_composite() {
    let o = bpair(&["show", "13"]);
    assert!(stdout(&o).contains("counts (X,Y,Z) = (1,1,1)"));
    let o = bpair(&["show", "12"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
    assert_eq!(bpair(&["show", "7"]).status.code(), Some(2));
}

#[test]
fn verify_balanced_range() {
    let o = bpair(&["verify", "--range", "5..100", "--mod4", "1", "--checks", "balanced_pairing"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<serde_like::Line> = stdout(&o).lines().map(serde_like::parse).collect();
    let ps: Vec<&str> = lines.iter().map(|l| l.p.as_str()).collect();
    assert_eq!(ps, ["5", "13", "17", "29", "37", "41", "53", "61", "73", "89", "97"]);
    assert!(lines.iter().all(|l| l.passed));
}

#[test]
fn verify_sun_parity_covers_three_mod_four() {
    let o = bpair(&["verify", "--range", "3..50", "--checks", "sun_parity", "--m", "1,2,3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains(r#""p":"7""#));
    assert!(text.contains(r#""p":"47""#));
    // 14 primes, three multipliers each, except m = 3 at p = 3
    assert_eq!(text.lines().count(), 14 * 3 - 1);
}

#[test]
fn verify_csv_output() {
    let o = bpair(&["verify", "--range", "5..30", "--checks", "crossing_parity", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("check,p,m,g,x,passed,lhs,rhs,note\n"));
    assert_eq!(text.lines().count(), 1 + 4 * 3);
}

#[test]
fn verify_usage_errors_exit_two() {
    for args in [
        &["verify", "--range", "5-100"][..],
        &["verify", "--range", "5..100", "--checks", "no_such_check"],
        &["verify", "--range", "5..100", "--mod4", "2"],
        &["verify", "--range", "5..100", "--format", "xml"],
        &["verify"],
        &["frobnicate"],
    ] {
        let o = bpair(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn verify_jobs_do_not_change_output() {
    let one = bpair(&["verify", "--range", "5..200", "--checks", "all", "--jobs", "1"]);
    let four = bpair(&["verify", "--range", "5..200", "--checks", "all", "--jobs", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn search_exit_codes() {
    let o = bpair(&["search", "--n", "6", "--exhaustive"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("balanced_count=2"));
    assert!(text.contains("counts=(1,1,1)"));

    let o = bpair(&["search", "--n", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("balanced_count=0"));

    let o = bpair(&["search", "--n", "14", "--limit", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("counts=(7,7,7)"));

    assert_eq!(bpair(&["search", "--n", "7"]).status.code(), Some(2));
    assert_eq!(bpair(&["search", "--n", "18", "--exhaustive"]).status.code(), Some(2));
    assert_eq!(bpair(&["search", "--n", "30", "--budget", "10"]).status.code(), Some(1));
}

#[test]
fn table_range() {
    let o = bpair(&["table", "--range", "5..200"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("MISS"));
}

/// Minimal field extraction for the flat json-lines records.
mod serde_like {
    pub struct Line {
        pub p: String,
        pub passed: bool,
    }

    pub fn parse(line: &str) -> Line {
        let field = |key: &str| {
            let start = line.find(&format!("\"{key}\":")).unwrap() + key.len() + 3;
            line[start..].split([',', '}']).next().unwrap().trim_matches('"').to_string()
        };
        Line { p: field("p"), passed: field("passed") == "true" }
    }
}
