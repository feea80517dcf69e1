//! Acceptance criteria, one `PASS`/`FAIL` line each. Exits nonzero when a
//! criterion fails for a reason other than a known false claim in the source
//! material.

use std::process::ExitCode;
use std::time::Instant;

use actpres::monoid::check_termination;
use actpres::random::random_word;
use actpres_cli::corpus::{self, CaseReport};
use actpres_cli::format::parse;
use actpres_cli::fuzz::{prover_case, tietze_chain, Limits, Suite};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Failures caused by claims that do not hold; reported, but not fatal.
const KNOWN_FALSE: [(&str, &str); 2] = [
    (
        "shifted pumping: local confluence",
        "the system is not confluent: a c c a c c a has two normal forms",
    ),
    ("a a M is free", "a a . b b a = a a . b a although b b a and b a differ"),
];

fn known(line: &str) -> Option<&'static str> {
    KNOWN_FALSE.iter().find(|(k, _)| line.contains(k)).map(|(_, why)| *why)
}

struct Outcome {
    passed: bool,
    details: Vec<String>,
    unexpected: usize,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            passed: true,
            details: Vec::new(),
            unexpected: 0,
        }
    }

    fn note(&mut self, ok: bool, line: String) {
        self.passed &= ok;
        let mut text = format!("{} {line}", if ok { "ok  " } else { "FAIL" });
        if !ok {
            match known(&line) {
                Some(why) => text.push_str(&format!("\n         known false claim: {why}")),
                None => self.unexpected += 1,
            }
        }
        self.details.push(text);
    }
}

/// Prints the criterion and returns (passed, failures not explained by a known false claim).
fn report(id: &str, title: &str, run: impl FnOnce() -> Outcome) -> (bool, usize) {
    let start = Instant::now();
    let out = run();
    let secs = start.elapsed().as_secs_f64();
    println!("{} {id}: {title} ({secs:.1}s)", if out.passed { "PASS" } else { "FAIL" });
    for d in &out.details {
        println!("    {d}");
    }
    (out.passed, out.unexpected)
}

fn seeds_pass(out: &mut Outcome, name: &str, seeds: u64, run: impl Fn(u64) -> Result<(), String>) {
    let failures: Vec<String> = (0..seeds)
        .filter_map(|s| run(s).err().map(|e| format!("seed {s}: {}", e.lines().next().unwrap_or(""))))
        .collect();
    let detail = match failures.first() {
        Some(f) => format!("{name}: {}/{seeds} seeds, first failure {f}", seeds as usize - failures.len()),
        None => format!("{name}: {seeds}/{seeds} seeds"),
    };
    out.note(failures.is_empty(), detail);
}

fn oracle_equivalence() -> Outcome {
    let mut out = Outcome::new();
    for suite in Suite::CONSTRUCTIONS {
        seeds_pass(&mut out, suite.name(), 40, |s| suite.run(s, Limits::default()));
    }
    out
}

/// Named checks of corpus reports that must all be present and pass.
fn corpus_checks(out: &mut Outcome, label: &str, report: &CaseReport, wanted: &[&str]) {
    if let Some(e) = &report.error {
        out.note(false, format!("{label}: {} did not run: {e}", report.id));
        return;
    }
    for name in wanted {
        let hits: Vec<_> = report.checks.iter().filter(|c| c.name.starts_with(name)).collect();
        let ok = !hits.is_empty() && hits.iter().all(|c| c.passed);
        let detail = hits
            .iter()
            .find(|c| !c.passed)
            .map(|c| format!(" ({})", c.detail))
            .unwrap_or_default();
        out.note(ok, format!("{label}: {} [{} checks]{detail}", name, hits.len()));
    }
}

fn run_case(id: &str) -> CaseReport {
    corpus::find(id).expect("corpus case exists").run()
}

fn worked_examples() -> Outcome {
    let mut out = Outcome::new();
    let idem = run_case("idempotent-pumping-union");
    corpus_checks(
        &mut out,
        "(a) pumped relations from the idempotent generator",
        &idem,
        &["A . a = A proves every A . b^i a = A . b a", "each certificate has at most 5 steps"],
    );
    corpus_checks(
        &mut out,
        "(b) missing letter relation",
        &run_case("trivial-act-over-free-monoid"),
        &["o . x4 = o does not follow"],
    );
    corpus_checks(
        &mut out,
        "(c) truncated pumping",
        &run_case("pumped-union-of-ideals"),
        &["the document's truncation misses", "truncation at"],
    );
    corpus_checks(
        &mut out,
        "(d) intersection generators",
        &run_case("shifted-pumping-intersection"),
        &["the intersection generators read off the union are a c^i a", "no a c^i a is generated by the others"],
    );
    corpus_checks(
        &mut out,
        "(e) large ideal generators",
        &run_case("large-ideal-of-pumped-monoid"),
        &["the ideal is generated by b, a a and a b"],
    );
    corpus_checks(
        &mut out,
        "(f) union presentation",
        &idem,
        &["the union is presented by A . a = A, A . b = C . a b"],
    );
    out
}

const SYSTEMS: [(&str, &str); 4] = [
    ("two-sided pumping", include_str!("../corpus/pumped_union_of_ideals.txt")),
    ("shifted pumping", include_str!("../corpus/shifted_pumping_intersection.txt")),
    ("idempotent pumping", include_str!("../corpus/idempotent_pumping_union.txt")),
    ("one-sided pumping", include_str!("../corpus/large_ideal_of_pumped_monoid.txt")),
];

fn rewriting_soundness() -> Outcome {
    let mut out = Outcome::new();
    for (i, (name, text)) in SYSTEMS.iter().enumerate() {
        let m = parse(text).and_then(|d| d.load_monoid()).expect("corpus monoid loads");
        let sys = m.as_rewriting().expect("rewriting system");
        let term = check_termination(sys.rules());
        out.note(
            term.is_ok(),
            format!("{name}: termination{}", term.err().map(|e| format!(" ({e})")).unwrap_or_default()),
        );
        let conf = sys.check_local_confluence(8);
        let first = conf.unresolved.first().map(|p| {
            format!(
                ", e.g. overlap {} gives {} and {}",
                m.render(&p.overlap),
                m.render(&p.left_nf),
                m.render(&p.right_nf)
            )
        });
        out.note(
            conf.passed(),
            format!(
                "{name}: local confluence up to 8, {} pairs, {} unresolved{}",
                conf.pairs_checked,
                conf.unresolved.len(),
                first.unwrap_or_default()
            ),
        );
        let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
        let mut bad = None;
        for _ in 0..10_000 {
            let w = random_word(&mut rng, sys.alphabet().len(), 24);
            let nf = sys.normal_form(&w);
            if nf.len() > w.len() || sys.normal_form(&nf) != nf || !sys.is_irreducible(&nf) {
                bad.get_or_insert(m.render(&w));
            }
        }
        out.note(
            bad.is_none(),
            format!("{name}: normal forms of 10000 random words{}", bad.map(|w| format!(", fails on {w}")).unwrap_or_default()),
        );
    }
    out
}

fn tietze_preservation() -> Outcome {
    let mut out = Outcome::new();
    seeds_pass(&mut out, "move chains of length 12", 200, |s| tietze_chain(s, Limits::default(), 12));
    out
}

fn prover_agreement() -> Outcome {
    let mut out = Outcome::new();
    let mut pairs = 0;
    let mut failures = Vec::new();
    let seeds = 100;
    for s in 0..seeds {
        match prover_case(s, 24) {
            Ok(n) => pairs += n,
            Err(e) => failures.push(format!("seed {s}: {e}")),
        }
    }
    out.note(
        failures.is_empty(),
        format!(
            "{seeds} presentations with |X|·|M| <= 24, {pairs} pairs{}",
            failures.first().map(|f| format!(", first failure {f}")).unwrap_or_default()
        ),
    );
    out
}

fn trivial_act() -> Outcome {
    let mut out = Outcome::new();
    seeds_pass(&mut out, "acts with a zero", 10, |s| Suite::TrivialAct.run(s, Limits::default()));
    corpus_checks(
        &mut out,
        "left zero",
        &run_case("left-zero-trivial-act"),
        &["0 = 0 . z presents the one-element act"],
    );
    out
}

fn corpus_run() -> Outcome {
    let mut out = Outcome::new();
    for case in corpus::cases() {
        let r = case.run();
        let head = format!("{} ({} checks, {:.1}s)", r.id, r.checks.len(), r.elapsed.as_secs_f64());
        match &r.error {
            Some(e) => out.note(false, format!("{head}: {e}")),
            None if r.passed() => out.note(true, head),
            None => {
                for c in r.failures() {
                    out.note(false, format!("{head} [{}] {}: {}", c.basis, c.name, c.detail));
                }
            }
        }
    }
    out
}

fn main() -> ExitCode {
    let results = [
        report("criterion-1", "constructions agree with the oracle on random finite instances", oracle_equivalence),
        report("criterion-2", "worked example regressions", worked_examples),
        report("criterion-3", "termination, local confluence and normal forms of the four systems", rewriting_soundness),
        report("criterion-4", "Tietze move chains preserve the act", tietze_preservation),
        report("criterion-5", "prover agrees with the oracle on small finite instances", prover_agreement),
        report("criterion-6", "one-element act presentations from acts with a zero", trivial_act),
        report("corpus", "every corpus expectation", corpus_run),
    ];
    let failed = results.iter().filter(|(p, _)| !p).count();
    let unexpected: usize = results.iter().map(|(_, u)| u).sum();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    println!("{unexpected} failures not explained by a known false claim");
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
