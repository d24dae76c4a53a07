//! End-to-end acceptance: drives the `lawkit` binary and inspects its
//! reports. Prints one PASS/FAIL line per criterion and exits nonzero if
//! any criterion fails.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use lawkit::gallery;
use lawkit::kernel::{parse_value, Value};
use lawkit::report::{CheckReport, Expect, InputMode, RunReport, Status};
use lawkit::suites;

struct Outcome {
    ok: bool,
    summary: String,
}

fn outcome(ok: bool, summary: impl Into<String>) -> Outcome {
    Outcome { ok, summary: summary.into() }
}

fn lawkit(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_lawkit")).args(args).output().expect("binary runs")
}

fn run_to(path: &Path, args: &[&str]) -> (Option<i32>, RunReport) {
    let mut all = args.to_vec();
    all.extend(["--report", "json", "--out", path.to_str().unwrap()]);
    let o = lawkit(&all);
    let report = serde_json::from_str(&std::fs::read_to_string(path).expect("report written")).expect("report parses");
    (o.status.code(), report)
}

fn records<'a>(report: &'a RunReport, suite: &str, prefix: &str) -> Vec<&'a CheckReport> {
    report.results.iter().filter(|r| r.suite == suite && r.check.starts_with(prefix)).collect()
}

fn record<'a>(report: &'a RunReport, suite: &str, check: &str) -> Option<&'a CheckReport> {
    report.results.iter().find(|r| r.suite == suite && r.check == check)
}

fn holds(r: &CheckReport) -> bool {
    r.status == Status::Pass && r.expect == Expect::Holds
}

/// The sets meeting every member of a family, over bitmask subsets of
/// `{0, .., n-1}`.
fn hitting_sets_oracle(family: &[u32], n: u32) -> BTreeSet<u32> {
    let union = family.iter().fold(0, |a, b| a | b);
    (0..1u32 << n).filter(|v| v & !union == 0 && family.iter().all(|u| u & v != 0)).collect()
}

fn mask_to_value(m: u32, n: u32) -> Value {
    Value::set((0..n).filter(|i| m & (1 << i) != 0).map(Value::Base))
}

fn c1_monads(all: &RunReport) -> Outcome {
    let start = Instant::now();
    let o = lawkit(&["run", "monads"]);
    let secs = start.elapsed().as_secs_f64();
    let recs = records(all, "monads", "");
    let failures = recs.iter().filter(|r| r.status != Status::Pass).count();
    let mut bad = Vec::new();
    for name in ["id", "exc", "reader:A2", "writer:z2", "writer:rz3", "pow"] {
        for law in ["left-unit", "right-unit", "assoc"] {
            let r = record(all, "monads", &format!("{name}/{law}"));
            let ok = r.is_some_and(|r| holds(r) && r.mode == InputMode::Exhaustive && (0..=2).all(|n| r.carrier_sizes.contains(&n)));
            if !ok {
                bad.push(format!("{name}/{law}"));
            }
        }
    }
    for law in ["left-unit", "right-unit", "assoc"] {
        let r = record(all, "monads", &format!("dist/{law}"));
        if !r.is_some_and(|r| holds(r) && r.inputs_tested >= 100) {
            bad.push(format!("dist/{law}"));
        }
    }
    outcome(
        o.status.code() == Some(0) && failures == 0 && bad.is_empty() && secs < 120.0,
        format!("{} records, {failures} failures, coverage gaps {bad:?}, {secs:.1}s", recs.len()),
    )
}

fn c2_weakness(all: &RunReport) -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for law in ["pp", "pd"] {
        for ax in ["eta+", "mu+", "mu-"] {
            ok &= record(all, "laws", &format!("{law}/{ax}")).is_some_and(holds);
        }
        let eta = record(all, "laws", &format!("{law}/eta-"));
        ok &= eta.is_some_and(|r| r.status == Status::Pass && r.expect == Expect::Violated && r.witness.is_some());
        ok &= record(all, "laws", &format!("{law}/classification")).is_some_and(holds);
    }
    // The recorded pp witness against the stated counterexample.
    let w = record(all, "laws", "pp/eta-").and_then(|r| r.witness.clone());
    if let Some(w) = w {
        let (a, b) = (Value::Base(0), Value::Base(1));
        let input = Value::set([a.clone(), b.clone()]);
        let lhs = Value::set([Value::set([a.clone()]), Value::set([b.clone()]), Value::set([a.clone(), b.clone()])]);
        let rhs = Value::set([Value::set([a]), Value::set([b])]);
        let matches = parse_value(&w.input).ok() == Some(input)
            && parse_value(&w.lhs).ok() == Some(lhs)
            && parse_value(&w.rhs).ok() == Some(rhs);
        ok &= matches;
        notes.push(format!("pp witness {} ↦ {} vs {}", w.input, w.lhs, w.rhs));
    } else {
        ok = false;
    }
    // pp against an independent hitting-set oracle on every family over
    // at most three points.
    let pp = gallery::pp_law();
    let mut disagreements = 0;
    for n in 0..=3u32 {
        for fam in 0u32..(1 << (1 << n)) {
            let family: Vec<u32> = (0..1u32 << n).filter(|m| fam & (1 << m) != 0).collect();
            let expected = Value::set(hitting_sets_oracle(&family, n).into_iter().map(|m| mask_to_value(m, n)));
            let input = Value::set(family.iter().map(|&m| mask_to_value(m, n)));
            if pp.apply(&input) != expected {
                disagreements += 1;
            }
        }
    }
    ok &= disagreements == 0;
    notes.push(format!("{disagreements} disagreements with the hitting-set oracle"));
    outcome(ok, notes.join("; "))
}

fn c3_four_eq(all: &RunReport) -> Outcome {
    let weak: Vec<String> =
        gallery::registered_laws().into_iter().filter(|(_, t)| *t == lawkit::laws::LawTag::Weak).map(|(l, _)| l.name).collect();
    let mut bad = Vec::new();
    let mut pooled = Vec::new();
    for law in &weak {
        for eq in ["kappa-idempotent", "kappa-lambda", "kappa-unit", "kappa-theta"] {
            let id = format!("{law}/{eq}");
            match record(all, "laws", &id) {
                Some(r) if holds(r) && r.inputs_tested > 0 => {
                    if r.mode == InputMode::Pooled {
                        pooled.push(id);
                    }
                }
                _ => bad.push(id),
            }
        }
    }
    outcome(bad.is_empty() && weak.len() >= 5, format!("{} weak laws, failing {bad:?}, partly pooled {pooled:?}", weak.len()))
}

fn c4_appendix_a(all: &RunReport) -> Outcome {
    let ids = ["composite-left-unit", "composite-right-unit", "composite-assoc", "theta-assoc", "retract-kappa", "retract-identity"];
    let mut bad = Vec::new();
    let mut modes = Vec::new();
    for law in ["pp", "pd"] {
        for id in ids {
            match record(all, "splitting", &format!("{law}/{id}")) {
                Some(r) if holds(r) => modes.push(format!("{law}/{id}:{:?}", r.mode).to_lowercase()),
                _ => bad.push(format!("{law}/{id}")),
            }
        }
    }
    let pp_units_exhaustive = ["composite-left-unit", "composite-right-unit"]
        .iter()
        .all(|id| record(all, "splitting", &format!("pp/{id}")).is_some_and(|r| r.mode == InputMode::Exhaustive));
    outcome(bad.is_empty() && pp_units_exhaustive, format!("failing {bad:?}; {}", modes.join(", ")))
}

fn c5_degeneration(all: &RunReport) -> Outcome {
    let distributive: Vec<String> = gallery::registered_laws()
        .into_iter()
        .filter(|(l, t)| *t == lawkit::laws::LawTag::Distributive && ["eps<", "rho<", "omega:"].iter().any(|p| l.name.starts_with(p)))
        .map(|(l, _)| l.name)
        .collect();
    let mut bad = Vec::new();
    for law in &distributive {
        for (suite, id) in [("laws", "kappa-identity"), ("splitting", "plain-unit"), ("splitting", "plain-mult")] {
            if !record(all, suite, &format!("{law}/{id}")).is_some_and(holds) {
                bad.push(format!("{suite}/{law}/{id}"));
            }
        }
    }
    // ε^T, ρ^T, and ω^T for both monoids, over seven targets.
    outcome(bad.is_empty() && distributive.len() == 28, format!("{} laws, failing {bad:?}", distributive.len()))
}

fn c6_yb(all: &RunReport) -> Outcome {
    let mut summary = Vec::new();
    let mut ok = true;
    for family in ["trivial-", "exception<", "reader<", "writer:"] {
        let recs = records(all, "gallery", family);
        let hyps = recs.iter().filter(|r| r.check.contains("/hyp-") || r.check.contains("/compat")).count();
        let yb = recs.iter().filter(|r| r.check.ends_with("/yb")).count();
        let failing = recs.iter().filter(|r| r.status != Status::Pass).count();
        ok &= failing == 0 && yb > 0 && !recs.is_empty();
        summary.push(format!("{family}: {} checks, {yb} yb, {hyps} hypotheses, {failing} failing", recs.len()));
    }
    let around: Vec<bool> = ["<pp>", "<pd>"].iter().map(|l| records(all, "gallery", "").iter().any(|r| r.check.contains(l))).collect();
    ok &= around.iter().all(|b| *b);
    outcome(ok, summary.join("; "))
}

fn c7_iteration(all: &RunReport) -> Outcome {
    let ids = [
        "kappa-phi-ab", "kappa-phi-expr", "kappa-psi-ba", "kappa-psi-expr", "transport-identity", "transport-kappa", "s1", "s2",
        "m1", "m2", "unit", "mult",
    ];
    let mut bad = Vec::new();
    for triple in ["exc<pp>", "writer:z2<pd>"] {
        for id in ids {
            if !record(all, "iterate", &format!("{triple}/{id}")).is_some_and(holds) {
                bad.push(format!("{triple}/{id}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("24 sub-checks, failing {bad:?}"))
}

fn c8_closed_forms(all: &RunReport) -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for id in ["reader-closed-form-A1", "reader-closed-form-A2", "writer-closed-form-z2", "writer-closed-form-rz3", "subdistribution"] {
        let r = record(all, "gallery", id);
        let good = r.is_some_and(|r| holds(r) && r.inputs_tested >= 100);
        ok &= good;
        notes.push(format!("{id}:{}", r.map_or(0, |r| r.inputs_tested)));
    }
    outcome(ok, notes.join(", "))
}

fn c9_iffs(all: &RunReport, negative: &RunReport) -> Outcome {
    let iffs: Vec<_> =
        records(all, "algebras", "").into_iter().filter(|r| r.check.ends_with("-iff-algebra") || r.check.ends_with("-iff-yb")).collect();
    let discrepancies = iffs.iter().filter(|r| r.status != Status::Pass).count();
    let induced: Vec<_> = records(all, "algebras", "").into_iter().filter(|r| r.check.contains("/induced-")).collect();
    let induced_bad = induced.iter().filter(|r| !holds(r)).count();
    // On mutation fixtures the two sides of each iff fail together.
    let mut mutation_mismatch = 0;
    for fx in suites::negative_fixtures().iter().filter(|f| f.name.starts_with("lambda-algebra:") || f.name.starts_with("algebra:")) {
        let failing: BTreeSet<&str> = negative
            .results
            .iter()
            .filter(|r| r.status == Status::Fail)
            .filter_map(|r| r.check.strip_prefix(&format!("{}/", fx.name)))
            .collect();
        let pair = if fx.name.starts_with("lambda") { ["lambda-condition", "yb"] } else { ["associativity", "mu-"] };
        if failing.contains(pair[0]) != failing.contains(pair[1]) {
            mutation_mismatch += 1;
        }
    }
    outcome(
        discrepancies == 0 && mutation_mismatch == 0 && induced_bad == 0 && !iffs.is_empty() && !induced.is_empty(),
        format!(
            "{} iff records, {discrepancies} discrepancies, {mutation_mismatch} on mutations, {} induced checks, {induced_bad} failing",
            iffs.len(),
            induced.len()
        ),
    )
}

fn c10_winter(all: &RunReport) -> Outcome {
    let mut ok = true;
    for check in ["eta*", "mu*", "coh", "hat-eta-", "hat-mu-", "hat-identity"] {
        ok &= record(all, "winter", &format!("degenerate<eps<pow>>/{check}")).is_some_and(holds);
    }
    let mut predicted = 0;
    for fx in lawkit::winter::winter_fixtures().iter().filter(|f| !f.expected_failures.is_empty()) {
        for id in &fx.expected_failures {
            let r = record(all, "winter", &format!("{}/{id}", fx.name));
            let failed_as_predicted = r.is_some_and(|r| r.status == Status::Pass && r.expect == Expect::Violated);
            ok &= failed_as_predicted;
            predicted += 1;
        }
    }
    let others_hold = records(all, "winter", "").iter().all(|r| r.status == Status::Pass);
    outcome(ok && others_hold, format!("degenerate instance passes; {predicted} predicted mutant failures observed"))
}

fn c11_negative(dir: &Path) -> (Outcome, RunReport) {
    let path = dir.join("negative.json");
    let (code, report) = run_to(&path, &["run", "fixtures:negative"]);
    let fixtures = suites::negative_fixtures();
    let mut wrong = Vec::new();
    for fx in &fixtures {
        let failing: BTreeSet<String> = report
            .results
            .iter()
            .filter(|r| r.status == Status::Fail)
            .filter_map(|r| r.check.strip_prefix(&format!("{}/", fx.name)).map(str::to_string))
            .collect();
        let targets: BTreeSet<String> = fx.targets.iter().map(|s| s.to_string()).collect();
        if failing != targets {
            wrong.push(format!("{}: {failing:?} vs {targets:?}", fx.name));
        }
    }
    let without_witness = report.results.iter().filter(|r| r.status == Status::Fail && r.witness.is_none()).count();
    let replay = lawkit(&["replay", path.to_str().unwrap()]);
    let replay_text = String::from_utf8_lossy(&replay.stdout).into_owned();
    let replay_ok = replay.status.code() == Some(0) && replay_text.contains(", 0 changed");
    let ok = code == Some(1) && fixtures.len() >= 8 && wrong.is_empty() && without_witness == 0 && replay_ok;
    (
        outcome(
            ok,
            format!(
                "{} fixtures, mismatched {wrong:?}, {without_witness} failures without witness, replay {}",
                fixtures.len(),
                replay_text.lines().last().unwrap_or("")
            ),
        ),
        report,
    )
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let (a, b) = (dir.path().join("all-1.json"), dir.path().join("all-2.json"));
    let (code_a, all) = run_to(&a, &["run", "all", "--max-carrier-size", "2", "--seed", "0"]);
    let (code_b, _) = run_to(&b, &["run", "all", "--max-carrier-size", "2", "--seed", "0"]);
    let identical = std::fs::read(&a).unwrap() == std::fs::read(&b).unwrap();
    let (c11, negative) = c11_negative(dir.path());

    let results = [
        ("monad suite", c1_monads(&all)),
        ("weakness witnesses", c2_weakness(&all)),
        ("four kappa equations", c3_four_eq(&all)),
        ("weak composite monad laws", c4_appendix_a(&all)),
        ("distributive degeneration", c5_degeneration(&all)),
        ("Yang-Baxter suites", c6_yb(&all)),
        ("iteration", c7_iteration(&all)),
        ("closed forms", c8_closed_forms(&all)),
        ("algebra iffs", c9_iffs(&all, &negative)),
        ("Winter laws", c10_winter(&all)),
        ("negative fixtures", c11),
        (
            "determinism",
            outcome(
                identical && code_a == Some(0) && code_b == Some(0),
                format!("run all twice: exit {code_a:?}/{code_b:?}, byte-identical: {identical}"),
            ),
        ),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        let word = if o.ok { "PASS" } else { "FAIL" };
        if !o.ok {
            failed += 1;
        }
        println!("criterion {:>2} {word} {name}: {}", i + 1, o.summary);
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
