use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn usort(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_usort"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const THREE_INTERVALS: &str = r#"{"version":"1","delta":"0","intervals":[
  {"lo":"2","hi":"7","cost":"1"},{"lo":"0","hi":"4","cost":"1"},{"lo":"5","hi":"9","cost":"1"}],
  "values":["11/2","3","33/5"]}"#;

/// Splits a CSV row, honouring double-quoted fields.
fn csv_row(line: &str) -> Vec<String> {
    let mut fields = vec![String::new()];
    let mut quoted = false;
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '"' if quoted && chars.peek() == Some(&'"') => {
                chars.next();
                fields.last_mut().unwrap().push('"');
            }
            '"' => quoted = !quoted,
            ',' if !quoted => fields.push(String::new()),
            _ => fields.last_mut().unwrap().push(c),
        }
    }
    fields
}

fn fixture(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn generate(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let p = dir.join(name);
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", p.to_str().unwrap()]);
    let o = usort(&all);
    assert!(o.status.success(), "{}", stderr(&o));
    p
}

#[test]
fn gen_is_deterministic_and_canonical() {
    let a = usort(&["gen", "random", "--n", "6", "--delta", "0", "--seed", "7"]);
    let b = usort(&["gen", "random", "--n", "6", "--delta", "0", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("}\n"));
    let dir = tempfile::tempdir().unwrap();
    let p = generate(dir.path(), "cpcp.json", &["cpcp", "--n", "3", "--M", "4"]);
    assert!(std::fs::read_to_string(p).unwrap().contains("refinements"));
    assert!(usort(&["gen", "lemma4", "--delta", "2"]).status.success());
}

#[test]
fn gen_rejects_bad_parameters() {
    assert_eq!(usort(&["gen", "no-such-family"]).status.code(), Some(2));
    assert_eq!(
        usort(&["gen", "cost-path", "--n", "2", "--eps", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(usort(&["gen", "random", "--delta", "x"]).status.code(), Some(2));
    assert_eq!(usort(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn solve_reports_cost_and_expectation() {
    let dir = tempfile::tempdir().unwrap();
    let fig = fixture(dir.path(), "three.json", THREE_INTERVALS);
    let o = usort(&["solve", "simple", fig.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("cost        3 "), "{}", stdout(&o));

    let pair = generate(dir.path(), "pair.json", &["lemma4"]);
    let o = usort(&["solve", "alg1", "--p", "1/2", pair.to_str().unwrap(), "--expected"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("expected    3/2"));
    assert!(stdout(&o).contains("ratio       3/2"));

    let tight = generate(dir.path(), "tight.json", &["tight-path", "--w", "1.7320508075688772"]);
    let o = usort(&[
        "solve",
        "alg2",
        "--rule",
        "sqrt3",
        tight.to_str().unwrap(),
        "--expected",
    ]);
    let line = stdout(&o).lines().find(|l| l.starts_with("ratio")).unwrap().to_string();
    let shown: f64 = line.split_whitespace().nth(1).unwrap().parse().unwrap();
    let bound = 1.0 + 4.0 / (3.0 * 3f64.sqrt());
    assert!((shown - bound).abs() < 1e-6, "{line}");
}

#[test]
fn solve_rejects_model_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let pair = generate(dir.path(), "pair.json", &["lemma4", "--delta", "2"]);
    let o = usort(&["solve", "advice-half", pair.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("delta"));
    assert_eq!(usort(&["solve", "alg9", pair.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn opt_matches_brute_force() {
    let dir = tempfile::tempdir().unwrap();
    let fig = fixture(dir.path(), "three.json", THREE_INTERVALS);
    let o = usort(&["opt", fig.to_str().unwrap()]);
    assert!(stdout(&o).contains("optimum {0,2}"));
    assert!(stdout(&o).contains("cost    2 "));
    let rand = generate(dir.path(), "r.json", &["random", "--n", "9", "--seed", "3"]);
    let o = usort(&["opt", rand.to_str().unwrap(), "--brute"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("MATCH"));
    let no_values = fixture(
        dir.path(),
        "bare.json",
        r#"{"version":"1","delta":"0","intervals":[{"lo":"0","hi":"2","cost":"1"}]}"#,
    );
    assert_eq!(usort(&["opt", no_values.to_str().unwrap()]).status.code(), Some(4));
}

#[test]
fn verify_accepts_only_feasible_solutions() {
    let dir = tempfile::tempdir().unwrap();
    let fig = fixture(dir.path(), "three.json", THREE_INTERVALS);
    let f = fig.to_str().unwrap();
    assert_eq!(usort(&["verify", f, "0,2", "1,0,2"]).status.code(), Some(0));
    assert_eq!(usort(&["verify", f, "0,2", "2,0,1"]).status.code(), Some(3));
    assert_eq!(usort(&["verify", f, "", "1,0,2"]).status.code(), Some(3));
    assert_eq!(usort(&["verify", f, "0,7", "1,0,2"]).status.code(), Some(2));
}

#[test]
fn ratio_csv_schema_and_bounds() {
    let o = usort(&["ratio", "simple", "random", "--trials", "200", "--n", "8"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("instance,algorithm,seed,cost,opt,ratio,bits"));
    let rows: Vec<Vec<String>> = lines.map(csv_row).collect();
    assert_eq!(rows.len(), 200);
    assert!(rows
        .iter()
        .all(|r| r.len() == 7 && r[0].starts_with("random(") && r[1] == "simple"));
    assert!(rows.iter().all(|r| r[6].is_empty()));
    assert!(stderr(&o).contains("within bound"), "{}", stderr(&o));

    let o = usort(&["ratio", "alg1", "lemma4"]);
    assert!(stdout(&o).contains(",3/2,1,3/2,"));
    let o = usort(&["ratio", "oblivious", "nested_star", "--n", "10"]);
    assert!(stdout(&o).contains(",10,1,10,"));
}

#[test]
fn ratio_output_is_schedule_independent() {
    let args = [
        "ratio", "alg2", "random", "--trials", "40", "--n", "6", "--seed", "11", "--delta", "1/2",
    ];
    let a = usort(&args);
    let b = usort(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let seeds: Vec<u64> = stdout(&a)
        .lines()
        .skip(1)
        .map(|l| csv_row(l)[2].parse().unwrap())
        .collect();
    assert_eq!(seeds, (11..51).collect::<Vec<u64>>());
}

#[test]
fn ratio_over_a_corpus_directory() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "b.json", &["advice-pairs", "--n", "2"]);
    generate(dir.path(), "a.json", &["lemma4"]);
    let out = dir.path().join("rows.csv");
    let o = usort(&[
        "ratio",
        "advice-half",
        dir.path().to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(out).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("a.json,advice-half,0,1,1,1,"));
    assert!(rows[1].starts_with("b.json,advice-half,0,"));
    assert!(rows[1].ends_with(",2"));
}
