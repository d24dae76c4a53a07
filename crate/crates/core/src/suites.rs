//! Named suites of checks, the negative fixtures, running, and replay.

use rayon::prelude::*;
use thiserror::Error;

use crate::algebras::{self, AlgebraDef};
use crate::gallery;
use crate::iterate::Triple;
use crate::kernel::{vfn, Value};
use crate::laws::{Law, LawClass, LawTag, NatDef};
use crate::monads::{self, Monoid};
use crate::report::{Check, CheckKind, CheckReport, Computed, Expect, InputMode, RunConfig, RunReport, Status};
use crate::splitting::{check_against_plain, check_appendix_a, composite_monad_laws, plain_composite, split_idempotent};
use crate::winter;

/// The suites run by `all`, in report order.
pub const PAPER_SUITES: [&str; 7] = ["monads", "laws", "splitting", "iterate", "gallery", "algebras", "winter"];

/// Mutation fixtures; every one of them is expected to fail.
pub const NEGATIVE_SUITE: &str = "fixtures:negative";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SuiteError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown check `{check}` in suite `{suite}`")]
    UnknownCheck { suite: String, check: String },
    #[error("replay of {check}: {msg}")]
    Replay { check: String, msg: String },
}

fn prefixed(prefix: &str, checks: Vec<Check>) -> Vec<Check> {
    checks.into_iter().map(|c| c.prefixed(&format!("{prefix}/"))).collect()
}

fn monad_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for name in monads::BUILTIN_NAMES.iter().chain(["pstar"].iter()) {
        let m = monads::builtin_monad(name).expect("builtin");
        out.extend(prefixed(name, monads::check_monad_laws(&m)));
    }
    out
}

/// Compares the classification found on the test inputs with the
/// registered one.
fn classification_check(law: &Law, tag: LawTag) -> Check {
    let law = law.clone();
    Check::computed(
        "classification",
        "registered classification",
        std::sync::Arc::new(move |cfg| {
            let (class, reports) = law.classify(cfg);
            Computed {
                ok: class.tag() == tag,
                inputs_tested: reports.iter().map(|r| r.inputs_tested).sum(),
                mode: if reports.iter().any(|r| r.mode == InputMode::Pooled) { InputMode::Pooled } else { InputMode::Exhaustive },
                detail: (law.name.clone(), tag.to_string(), class.tag().to_string()),
            }
        }),
    )
}

/// Naturality, axioms against the registered classification, the κ
/// equations, and for distributive laws `κ = 1`.
pub fn law_suite(law: &Law, tag: LawTag) -> Vec<Check> {
    let mut checks = vec![law.nat().check_naturality()];
    if let Some(class) = LawClass::of_tag(tag) {
        checks.extend(law.axiom_checks(class));
        checks.push(classification_check(law, tag));
    }
    if matches!(tag, LawTag::Weak | LawTag::Distributive) {
        checks.extend(law.kappa_checks());
    }
    if tag == LawTag::Distributive {
        checks.push(Check::equation("kappa-identity", "κ = 1", law.st(), law.kappa(), vfn(Value::clone)));
    }
    checks
}

fn law_checks() -> Vec<Check> {
    gallery::registered_laws().iter().flat_map(|(law, tag)| prefixed(&law.name, law_suite(law, *tag))).collect()
}

fn splitting_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for (law, tag) in gallery::registered_laws() {
        let split = split_idempotent(&law);
        match tag {
            LawTag::Weak if ["pp", "pd"].contains(&law.name.as_str()) => out.extend(prefixed(&law.name, check_appendix_a(&split))),
            LawTag::Distributive => out.extend(prefixed(&law.name, check_against_plain(&split))),
            _ => {}
        }
    }
    out
}

/// Every check of a triple: Yang-Baxter, both composite laws, the
/// commutation lemmas, and associativity.
pub fn triple_checks(t: &Triple) -> Vec<Check> {
    let mut checks = vec![t.check_yang_baxter()];
    checks.extend(t.check_phi());
    checks.extend(t.check_psi());
    checks.extend(t.check_commutation_lemmas());
    checks.extend(t.check_associativity());
    checks
}

fn iterate_checks() -> Vec<Check> {
    gallery::registered_triples().iter().flat_map(|t| prefixed(&t.name, triple_checks(t))).collect()
}

fn gallery_checks() -> Vec<Check> {
    let morphisms = [
        gallery::supp(),
        gallery::eval_at(2, 0),
        gallery::proj2(Monoid::z2()),
        gallery::proj2(Monoid::rz3()),
    ];
    let mut out: Vec<Check> = morphisms
        .iter()
        .flat_map(|g| prefixed(&format!("morphism:{}:{}", g.name, g.source.name), g.checks()))
        .collect();
    out.extend(gallery::yb_proposition_suites());
    out.extend(gallery::derived_law_checks());
    out
}

fn algebra_suite() -> Vec<Check> {
    let mut out: Vec<Check> =
        algebras::algebra_fixtures().iter().flat_map(|a| prefixed(&a.name, algebras::algebra_checks(a))).collect();
    for f in algebras::lambda_algebra_fixtures() {
        out.extend(prefixed(&f.name, algebras::lambda_algebra_checks(&f)));
    }
    out
}

fn winter_checks() -> Vec<Check> {
    winter::winter_fixtures().into_iter().flat_map(|f| prefixed(&f.name, f.checks)).collect()
}

/// A deliberately broken construction and the check ids it must fail.
pub struct NegativeFixture {
    pub name: String,
    pub checks: Vec<Check>,
    pub targets: Vec<&'static str>,
}

fn negative(name: &str, checks: Vec<Check>, targets: Vec<&'static str>) -> NegativeFixture {
    let checks = checks.into_iter().map(|c| c.expecting(Expect::Holds)).collect();
    NegativeFixture { name: name.into(), checks, targets }
}

/// `P` with multiplication replaced by intersection.
pub fn intersection_powerset() -> monads::MonadDef {
    let mut m = monads::powerset();
    m.name = "P∩".into();
    m.mult = vfn(|v| {
        let us = v.members().expect("expects a set of sets");
        match us.split_first() {
            None => Value::set([]),
            Some((u, rest)) => Value::set(
                u.members()
                    .expect("expects a set of sets")
                    .iter()
                    .filter(|x| rest.iter().all(|r| r.members().expect("expects sets").contains(x)))
                    .cloned(),
            ),
        }
    });
    m
}

/// `PP ⇒ PP` replacing each member by its least element, which depends on
/// how elements are named.
pub fn least_element_nat() -> NatDef {
    let pp = monads::powerset().stage().then(&monads::powerset().stage());
    NatDef::new(
        "least-element",
        pp.clone(),
        pp,
        vfn(|v| {
            let us = v.members().expect("expects a set of sets");
            Value::set(us.iter().map(|u| Value::set(u.members().expect("expects sets").iter().take(1).cloned())))
        }),
    )
}

/// `(m, (n, x)) ↦ (e, (m ⊔ n, x))` on `W_z2`, where `⊔` keeps the
/// non-unit label. It satisfies `(η+)` but not `(μ+)`.
pub fn collapsing_writer_law() -> Law {
    let m = Monoid::z2();
    let w = monads::writer(m.clone());
    let e = m.unit_name();
    Law::new(
        "collapse<z2>",
        w.clone(),
        w,
        vfn(move |v| match v {
            Value::PairOf(a, inner) => match &**inner {
                Value::PairOf(b, x) => {
                    let top = if *a == e { b.clone() } else { a.clone() };
                    Value::PairOf(e.clone(), Box::new(Value::PairOf(top, x.clone())))
                }
                _ => panic!("expects nested writer values, got {v}"),
            },
            _ => panic!("expects nested writer values, got {v}"),
        }),
    )
}

/// `ε^P` that also adds `inr` to every set.
pub fn leaky_exception_law() -> Law {
    Law::new(
        "eps-leaky<pow>",
        monads::powerset(),
        monads::exception(),
        vfn(|x| match x {
            Value::InL(v) => {
                let mut out: Vec<Value> = v.members().expect("expects a set").iter().cloned().map(Value::inl).collect();
                out.push(Value::InR);
                Value::set(out)
            }
            Value::InR => Value::set([Value::InR]),
            _ => panic!("expects an E value, got {x}"),
        }),
    )
}

/// The exception triple around `pp` with `τ` leaky.
pub fn leaky_exception_triple() -> Triple {
    Triple::new(
        "exc-leaky<pp>",
        gallery::pp_law(),
        leaky_exception_law(),
        gallery::exception_law(monads::powerset()),
        [LawTag::Weak, LawTag::Distributive, LawTag::Distributive],
    )
    .expect("well typed")
}

fn algebra_negative(a: AlgebraDef) -> NegativeFixture {
    let mut checks = algebras::check_algebra(&a);
    checks.extend(algebras::em_checks(&a));
    negative(&format!("algebra:{}", a.name), checks, vec!["associativity", "mu-"])
}

/// Every negative fixture with the checks it targets.
pub fn negative_fixtures() -> Vec<NegativeFixture> {
    let mut out = vec![
        negative("powerset-intersection", monads::check_monad_laws(&intersection_powerset()), vec!["right-unit", "assoc", "mult-natural"]),
        negative("least-element", vec![least_element_nat().check_naturality()], vec!["natural"]),
        negative("collapsing-writer", collapsing_writer_law().kappa_checks(), vec!["kappa-theta"]),
        negative(
            "pd-unnormalized",
            composite_monad_laws(&plain_composite(&gallery::pd_law())),
            vec!["composite-left-unit", "composite-right-unit"],
        ),
        negative("exception-leaky-tau", vec![leaky_exception_triple().check_yang_baxter()], vec!["yb"]),
    ];
    for a in ["join-empty-top", "threshold"] {
        out.push(algebra_negative(algebras::algebra_by_name(a).expect("registered")));
    }
    for name in ["pp/join/join", "pd/join/join-supp"] {
        let f = algebras::lambda_algebra_by_name(name).expect("registered");
        out.push(negative(&format!("lambda-algebra:{name}"), vec![f.condition(), f.yang_baxter()], vec!["lambda-condition", "yb"]));
    }
    for w in winter::winter_fixtures().into_iter().filter(|f| !f.expected_failures.is_empty()) {
        out.push(negative(&format!("winter:{}", w.name), w.checks, w.expected_failures));
    }
    out
}

fn negative_checks() -> Vec<Check> {
    negative_fixtures().into_iter().flat_map(|f| prefixed(&f.name, f.checks)).collect()
}

/// The checks of one suite.
pub fn suite_checks(name: &str) -> Result<Vec<Check>, SuiteError> {
    Ok(match name {
        "monads" => monad_checks(),
        "laws" => law_checks(),
        "splitting" => splitting_checks(),
        "iterate" => iterate_checks(),
        "gallery" => gallery_checks(),
        "algebras" => algebra_suite(),
        "winter" => winter_checks(),
        NEGATIVE_SUITE => negative_checks(),
        _ => return scoped_checks(name).ok_or_else(|| SuiteError::UnknownSuite(name.into())),
    })
}

/// Suites named `<module>/<fixture>`, as emitted by the per-module
/// subcommands.
pub fn scoped_checks(name: &str) -> Option<Vec<Check>> {
    let (module, fixture) = name.split_once('/')?;
    match module {
        "iterate" => gallery::triple_by_name(fixture).map(|t| triple_checks(&t)),
        "gallery" => gallery::triple_by_name(fixture)
            .map(|t| triple_checks(&t))
            .or_else(|| gallery::law_by_name(fixture).map(|(l, tag)| law_suite(&l, tag))),
        "algebras" => algebras::lambda_algebra_by_name(fixture)
            .map(|f| algebras::lambda_algebra_checks(&f))
            .or_else(|| algebras::algebra_by_name(fixture).map(|a| algebras::algebra_checks(&a))),
        "winter" => winter::winter_fixtures().into_iter().find(|f| f.name == fixture).map(|f| f.checks),
        _ => None,
    }
}

/// Expands `all` and rejects unknown names before anything runs.
pub fn resolve(names: &[String]) -> Result<Vec<String>, SuiteError> {
    let mut out = Vec::new();
    for n in names {
        if n == "all" {
            out.extend(PAPER_SUITES.iter().map(|s| s.to_string()));
        } else if PAPER_SUITES.contains(&n.as_str()) || n == NEGATIVE_SUITE {
            out.push(n.clone());
        } else {
            return Err(SuiteError::UnknownSuite(n.clone()));
        }
    }
    out.dedup();
    Ok(out)
}

/// Runs checks in parallel and returns the reports in check order.
pub fn run_checks(suite: &str, checks: &[Check], cfg: &RunConfig) -> Vec<CheckReport> {
    checks.par_iter().map(|c| c.run(suite, cfg)).collect()
}

/// Runs the named suites. Reports are ordered by suite, then check id.
pub fn run(names: &[String], cfg: &RunConfig) -> Result<RunReport, SuiteError> {
    let suites = resolve(names)?;
    let mut results = Vec::new();
    for s in &suites {
        let mut reports = run_checks(s, &suite_checks(s)?, cfg);
        reports.sort_by(|a, b| a.check.cmp(&b.check));
        results.extend(reports);
    }
    Ok(RunReport::new(*cfg, results))
}

/// Re-evaluates a stored record. Pointwise witnesses are replayed on their
/// stored input; every other record is re-run under `cfg`. Returns the
/// fresh status, which must equal the stored one.
pub fn replay_record(record: &CheckReport, cfg: &RunConfig) -> Result<Status, SuiteError> {
    let check = suite_checks(&record.suite)?.into_iter().find(|c| c.id == record.check).ok_or_else(|| {
        SuiteError::UnknownCheck { suite: record.suite.clone(), check: record.check.clone() }
    })?;
    let replayable = !matches!(check.kind, CheckKind::Computed(_) | CheckKind::Skip(_));
    let status = match (&record.witness, replayable) {
        (Some(w), true) => {
            let (_, _, agree) =
                check.replay(w).map_err(|e| SuiteError::Replay { check: record.check.clone(), msg: e.to_string() })?;
            if agree == (check.expect == Expect::Holds) {
                Status::Pass
            } else {
                Status::Fail
            }
        }
        _ => check.run(&record.suite, cfg).status,
    };
    Ok(status)
}

/// Replays every record of a report; returns the records whose verdict
/// changed.
pub fn replay_report(report: &RunReport) -> Result<Vec<(CheckReport, Status)>, SuiteError> {
    let mut changed = Vec::new();
    for r in &report.results {
        let s = replay_record(r, &report.config)?;
        if s != r.status {
            changed.push((r.clone(), s));
        }
    }
    Ok(changed)
}

/// The registered fixtures, one line each.
pub fn fixture_registry() -> Vec<String> {
    let mut out: Vec<String> = gallery::registered_laws().iter().map(|(l, t)| format!("law {} : {}", l.name, t)).collect();
    out.extend(gallery::registered_triples().iter().map(|t| format!("triple {}", t.name)));
    out.extend(algebras::algebra_fixtures().iter().map(|a| format!("algebra {}", a.name)));
    out.extend(algebras::lambda_algebra_fixtures().iter().map(|f| format!("lambda-algebra {}", f.name)));
    out.extend(winter::winter_fixtures().iter().map(|f| format!("winter {}", f.name)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn check_ids_are_unique_within_each_suite() {
        for s in PAPER_SUITES.iter().chain([NEGATIVE_SUITE].iter()) {
            let checks = suite_checks(s).unwrap();
            let ids: BTreeSet<&str> = checks.iter().map(|c| c.id.as_str()).collect();
            assert_eq!(ids.len(), checks.len(), "{s}");
        }
    }

    #[test]
    fn negative_targets_name_real_checks() {
        let fixtures = negative_fixtures();
        assert!(fixtures.len() >= 8);
        for f in fixtures {
            for t in &f.targets {
                assert!(f.checks.iter().any(|c| c.id == *t), "{}: {t}", f.name);
            }
        }
    }

    #[test]
    fn all_expands_and_unknown_names_are_rejected() {
        assert_eq!(resolve(&["all".into()]).unwrap().len(), PAPER_SUITES.len());
        assert_eq!(resolve(&["bogus".into()]), Err(SuiteError::UnknownSuite("bogus".into())));
        assert!(suite_checks("iterate/exc<pp>").is_ok());
    }
}
