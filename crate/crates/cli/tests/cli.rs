use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_actpres")).args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn lines(o: &Output, key: &str) -> Vec<String> {
    stdout(o)
        .lines()
        .filter_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('\t')))
        .map(str::to_string)
        .collect()
}

#[test]
fn normal_form_under_the_shifted_rule() {
    let f = corpus("shifted_pumping_intersection.txt");
    let o = run(&["nf", path(&f), "a c c a"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lines(&o, "nf"), ["b c b"]);
    let o = run(&["nf", path(&f), "1"]);
    assert_eq!(lines(&o, "nf"), ["1"]);
}

#[test]
fn equal_words_exit_zero() {
    let f = corpus("shifted_pumping_intersection.txt");
    let o = run(&["eq", path(&f), "a c c a", "b c b"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["eq", path(&f), "a", "b"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn identical_sides_need_no_steps() {
    let o = run(&["consequence", path(&data("cyclic.pres")), "x", "x"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lines(&o, "verdict"), ["proved"]);
    assert_eq!(lines(&o, "steps"), ["0"]);
}

#[test]
fn proved_consequence_prints_a_certificate() {
    let o = run(&["consequence", path(&data("idempotent_generator.pres")), "A . b b a", "A . b a"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lines(&o, "steps"), ["2"]);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with(|c: char| c.is_ascii_digit())).count(), 2);
}

#[test]
fn refuted_consequence_exits_one() {
    let o = run(&["consequence", path(&data("cyclic.pres")), "x", "x . z"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert_eq!(lines(&o, "verdict"), ["disproved"]);
}

#[test]
fn undecided_consequence_exits_two() {
    let o = run(&["consequence", path(&data("fourth_power.pres")), "x", "x . a a"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert_eq!(lines(&o, "verdict"), ["unknown"]);
}

#[test]
fn errors_exit_three() {
    assert_eq!(run(&["consequence", path(&data("cyclic.pres")), "x", "y"]).status.code(), Some(3));
    assert_eq!(run(&["nf", path(&data("missing.monoid")), "z"]).status.code(), Some(3));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(3));
    assert_eq!(run(&["corpus", "run", "no-such-case"]).status.code(), Some(3));
}

#[test]
fn verify_accepts_and_rejects() {
    let act = data("two_point.act");
    let o = run(&["verify", path(&data("cyclic.pres")), path(&act)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lines(&o, "presents"), ["true"]);
    let o = run(&["verify", path(&data("wrong.pres")), path(&act)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(lines(&o, "violated"), ["x = x . z"]);
    assert_eq!(lines(&o, "presented-size"), ["1"]);
}

#[test]
fn tietze_moves_round_trip() {
    let o = run(&["tietze", path(&data("cyclic.pres")), path(&data("moves.txt"))]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(lines(&o, "applied").len(), 4);
    assert_eq!(lines(&o, "generators"), ["x"]);
    assert!(lines(&o, "relation").is_empty());
}

#[test]
fn constructions_on_a_two_element_act() {
    let act = data("two_point.act");
    let pres = data("free_cyclic.pres");
    let o = run(&["construct", "rees-quotient", path(&act), path(&pres)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lines(&o, "generators"), ["x 0"]);
    assert!(lines(&o, "relation").contains(&"R2\tx . z = 0".to_string()));

    let o = run(&["construct", "subact", path(&act), path(&pres)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lines(&o, "image"), ["y = q"]);

    let o = run(&["construct", "large-subact", path(&act), path(&pres)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lines(&o, "note"), ["complement has 1 element"]);
}

#[test]
fn large_subact_over_an_infinite_monoid_needs_a_schema_bound() {
    let f = corpus("large_ideal_of_pumped_monoid.txt");
    assert_eq!(run(&["construct", "large-subact", path(&f)]).status.code(), Some(3));
    let o = run(&["construct", "large-subact", path(&f), "--schema-bound", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lines(&o, "generators"), ["one_b one_aa one_ab"]);
}

#[test]
fn corpus_listing_names_every_case() {
    let o = run(&["corpus", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let ids: Vec<String> = stdout(&o).lines().map(|l| l.split('\t').next().unwrap().to_string()).collect();
    assert!(ids.contains(&"left-zero-trivial-act".to_string()));
    assert!(ids.contains(&"idempotent-pumping-union".to_string()));
    let o = run(&["corpus", "run", "left-zero-trivial-act"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn fuzz_oracle_runs_a_few_seeds() {
    let o = run(&["fuzz-oracle", "--seeds", "3", "--suite", "union", "--suite", "parser"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(lines(&o, "suite"), ["union\t3/3 passed", "parser\t3/3 passed"]);
}
