//! Eilenberg-Moore algebras as laws out of a constant functor, algebras of
//! a law as Yang-Baxter instances, and the induced algebra of the weak
//! composite.

use std::sync::Arc;

use crate::iterate::Triple;
use crate::kernel::{vfn, Value, ValueFn};
use crate::laws::{Axiom, Law, LawTag};
use crate::monads::{self, MonadDef};
use crate::report::{Check, Computed, InputMode, RunConfig};
use crate::splitting::{weak_composite, SplitData};
use crate::{gallery, splitting};

/// A `T`-algebra structure `t : TA → A` on the carrier `A = {0, …, n-1}`.
#[derive(Clone)]
pub struct AlgebraDef {
    pub name: String,
    pub monad: MonadDef,
    pub carrier: usize,
    pub structure: ValueFn,
}

impl std::fmt::Debug for AlgebraDef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AlgebraDef({} over {}, |A| = {})", self.name, self.monad.name, self.carrier)
    }
}

impl AlgebraDef {
    pub fn new(name: &str, monad: MonadDef, carrier: usize, structure: ValueFn) -> AlgebraDef {
        AlgebraDef { name: name.into(), monad, carrier, structure }
    }

    pub fn apply(&self, v: &Value) -> Value {
        (self.structure)(v)
    }
}

fn index(v: &Value) -> u32 {
    v.base_index().unwrap_or_else(|| panic!("expects a carrier element, got {v}"))
}

fn fold_or(xs: &[Value], empty: u32, pick: fn(u32, u32) -> u32) -> Value {
    Value::Base(xs.iter().map(index).reduce(pick).unwrap_or(empty))
}

fn set_members(v: &Value) -> &[Value] {
    v.members().unwrap_or_else(|| panic!("expects a set, got {v}"))
}

fn support(v: &Value) -> Vec<Value> {
    v.dist_terms().unwrap_or_else(|| panic!("expects a distribution, got {v}")).iter().map(|(x, _)| x.clone()).collect()
}

/// Join on `{0,1}` with `∅ ↦ 0`.
pub fn join_p() -> AlgebraDef {
    AlgebraDef::new("join", monads::powerset(), 2, vfn(|u| fold_or(set_members(u), 0, u32::max)))
}

/// Meet on `{0,1}` with `∅ ↦ 1`.
pub fn meet_p() -> AlgebraDef {
    AlgebraDef::new("meet", monads::powerset(), 2, vfn(|u| fold_or(set_members(u), 1, u32::min)))
}

/// Join with `∅ ↦ 1`; not an algebra.
pub fn broken_join_p() -> AlgebraDef {
    AlgebraDef::new("join-empty-top", monads::powerset(), 2, vfn(|u| fold_or(set_members(u), 1, u32::max)))
}

/// `join ∘ supp` on `{0,1}`.
pub fn join_supp_d() -> AlgebraDef {
    AlgebraDef::new("join-supp", monads::distribution(), 2, vfn(|p| fold_or(&support(p), 0, u32::max)))
}

/// `meet ∘ supp` on `{0,1}`.
pub fn meet_supp_d() -> AlgebraDef {
    AlgebraDef::new("meet-supp", monads::distribution(), 2, vfn(|p| fold_or(&support(p), 1, u32::min)))
}

/// `1` when the weight on `1` is at least one half; not an algebra.
pub fn threshold_d() -> AlgebraDef {
    AlgebraDef::new(
        "threshold",
        monads::distribution(),
        2,
        vfn(|p| {
            let w: crate::kernel::Rat = p
                .dist_terms()
                .expect("expects a distribution")
                .iter()
                .filter(|(x, _)| index(x) == 1)
                .map(|(_, w)| *w)
                .sum();
            Value::Base(u32::from(w + w >= crate::kernel::Rat::one()))
        }),
    )
}

/// `inl a ↦ a`, `inr ↦ 1`.
pub fn exception_top() -> AlgebraDef {
    AlgebraDef::new(
        "exc-top",
        monads::exception(),
        2,
        vfn(|v| match v {
            Value::InL(a) => (**a).clone(),
            Value::InR => Value::Base(1),
            _ => panic!("expects an exception value, got {v}"),
        }),
    )
}

/// The identity algebra of the identity monad.
pub fn identity_algebra() -> AlgebraDef {
    AlgebraDef::new("identity", monads::identity(), 2, vfn(Value::clone))
}

/// Every algebra fixture, valid or not.
pub fn algebra_fixtures() -> Vec<AlgebraDef> {
    vec![join_p(), meet_p(), broken_join_p(), join_supp_d(), meet_supp_d(), threshold_d(), exception_top(), identity_algebra()]
}

pub fn algebra_by_name(name: &str) -> Option<AlgebraDef> {
    algebra_fixtures().into_iter().find(|a| a.name == name)
}

/// Unitality and associativity on the fixed carrier.
pub fn check_algebra(a: &AlgebraDef) -> Vec<Check> {
    let (t1, t2, t3) = (a.structure.clone(), a.structure.clone(), a.structure.clone());
    let (m1, m2, m3) = (a.monad.clone(), a.monad.clone(), a.monad.clone());
    let tt = a.monad.stage().then(&a.monad.stage());
    vec![
        Check::equation("unitality", "t ∘ η^T_A = 1_A", crate::kernel::Stage::id(), vfn(move |x| t1(&m1.eta(x))), vfn(Value::clone))
            .at_size(a.carrier),
        Check::equation(
            "associativity",
            "t ∘ μ^T_A = t ∘ Tt",
            tt,
            vfn(move |v| t2(&m2.mu(v))),
            vfn(move |v| t3(&m3.fmap(&|y| t3(y), v))),
        )
        .at_size(a.carrier),
    ]
}

/// `[t] : [A̲, T]`, the algebra structure read as a law out of the
/// constant functor.
pub fn constant_law(a: &AlgebraDef) -> Law {
    Law::new(&format!("[{}]", a.name), MonadDef::constant(a.carrier), a.monad.clone(), a.structure.clone())
}

/// The (η−) and (μ−) checks of `[t]`.
pub fn em_checks(a: &AlgebraDef) -> Vec<Check> {
    let law = constant_law(a);
    vec![law.check_axiom(Axiom::EtaMinus), law.check_axiom(Axiom::MuMinus)]
}

fn all_pass(checks: &[Check], cfg: &RunConfig) -> (bool, usize) {
    let reports: Vec<_> = checks.iter().map(|c| c.run("", cfg)).collect();
    (reports.iter().all(|r| r.passed()), reports.iter().map(|r| r.inputs_tested).sum())
}

fn verdict(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

/// `[t]` is an EM-law exactly when `t` is an algebra: both verdicts must
/// agree.
pub fn check_em_iff(a: &AlgebraDef) -> Check {
    let a = a.clone();
    Check::computed(
        "em-iff-algebra",
        "[t] is an EM-law iff t is a T-algebra",
        Arc::new(move |cfg| {
            let (alg, n1) = all_pass(&check_algebra(&a), cfg);
            let (em, n2) = all_pass(&em_checks(&a), cfg);
            Computed {
                ok: alg == em,
                inputs_tested: n1 + n2,
                mode: InputMode::Exhaustive,
                detail: (a.name.clone(), format!("algebra {}", verdict(alg)), format!("EM-law {}", verdict(em))),
            }
        }),
    )
}

/// Two algebras on one carrier and a law `[S,T]` between their monads.
#[derive(Clone)]
pub struct LambdaAlgebra {
    pub name: String,
    pub law: Law,
    pub s: AlgebraDef,
    pub t: AlgebraDef,
    /// Whether the pair is expected to satisfy the λ-condition.
    pub expected: bool,
}

impl LambdaAlgebra {
    fn new(law: Law, s: AlgebraDef, t: AlgebraDef, expected: bool) -> LambdaAlgebra {
        LambdaAlgebra { name: format!("{}/{}/{}", law.name, s.name, t.name), law, s, t, expected }
    }

    /// `s ∘ St ∘ λ = t ∘ Ts` on `TSA`.
    pub fn condition(&self) -> Check {
        let (s1, t1, s2, t2) = (self.s.structure.clone(), self.t.structure.clone(), self.s.structure.clone(), self.t.structure.clone());
        let (sm, tm, l) = (self.law.s.clone(), self.law.t.clone(), self.law.lambda.clone());
        let input = self.law.ts();
        Check::equation(
            "lambda-condition",
            "s ∘ St ∘ λ_A = t ∘ Ts",
            input,
            vfn(move |x| s1(&sm.fmap(&|y| t1(y), &l(x)))),
            vfn(move |x| t2(&tm.fmap(&|y| s2(y), x))),
        )
        .at_size(self.s.carrier)
    }

    /// The triple `(A̲, S, T)` with `[s]`, `[t]`, `λ`.
    pub fn triple(&self) -> Triple {
        Triple::new(
            &self.name,
            constant_law(&self.s),
            constant_law(&self.t),
            self.law.clone(),
            [LawTag::EmOnly, LawTag::EmOnly, LawTag::Weak],
        )
        .expect("constant laws share the carrier")
    }

    pub fn yang_baxter(&self) -> Check {
        self.triple().check_yang_baxter().at_size(self.s.carrier)
    }

    /// The λ-condition and the Yang-Baxter equation must agree.
    pub fn check_iff(&self) -> Check {
        let me = self.clone();
        Check::computed(
            "lambda-iff-yb",
            "λ-condition iff Yang-Baxter for [s], [t], λ",
            Arc::new(move |cfg| {
                let (cond, n1) = all_pass(&[me.condition()], cfg);
                let (yb, n2) = all_pass(&[me.yang_baxter()], cfg);
                Computed {
                    ok: cond == yb,
                    inputs_tested: n1 + n2,
                    mode: InputMode::Exhaustive,
                    detail: (me.name.clone(), format!("λ-condition {}", verdict(cond)), format!("Yang-Baxter {}", verdict(yb))),
                }
            }),
        )
    }
}

/// λ-algebra fixtures with their expected verdicts.
pub fn lambda_algebra_fixtures() -> Vec<LambdaAlgebra> {
    vec![
        LambdaAlgebra::new(gallery::pp_law(), join_p(), meet_p(), true),
        LambdaAlgebra::new(gallery::pp_law(), meet_p(), join_p(), true),
        LambdaAlgebra::new(gallery::pp_law(), join_p(), join_p(), false),
        LambdaAlgebra::new(gallery::pd_law(), join_p(), meet_supp_d(), true),
        LambdaAlgebra::new(gallery::pd_law(), meet_p(), join_supp_d(), true),
        LambdaAlgebra::new(gallery::pd_law(), join_p(), join_supp_d(), false),
        LambdaAlgebra::new(gallery::exception_law(monads::powerset()), join_p(), exception_top(), true),
    ]
}

pub fn lambda_algebra_by_name(name: &str) -> Option<LambdaAlgebra> {
    lambda_algebra_fixtures().into_iter().find(|f| f.name == name)
}

/// The `S•T`-algebra `s ∘ St ∘ ι^λ_A` of a λ-algebra.
pub fn induced_composite_algebra(split: &SplitData, s: &AlgebraDef, t: &AlgebraDef) -> AlgebraDef {
    let (sf, tf, iota, sm) = (s.structure.clone(), t.structure.clone(), split.iota(), split.law.s.clone());
    AlgebraDef::new(
        &format!("induced<{}/{}>", s.name, t.name),
        weak_composite(split),
        s.carrier,
        vfn(move |k| sf(&sm.fmap(&|y| tf(y), &iota(k)))),
    )
}

/// For a distributive law the induced structure is `s ∘ St` read through
/// the identity splitting.
pub fn check_induced_plain(split: &SplitData, s: &AlgebraDef, t: &AlgebraDef) -> Check {
    let induced = induced_composite_algebra(split, s, t);
    let (pi, sf, tf, sm) = (split.pi(), s.structure.clone(), t.structure.clone(), split.law.s.clone());
    Check::equation(
        "induced-plain",
        "induced structure = s ∘ St when ι = 1",
        split.law.st(),
        vfn(move |v| induced.apply(&pi(v))),
        vfn(move |v| sf(&sm.fmap(&|y| tf(y), v))),
    )
    .at_size(s.carrier)
}

/// All checks for one λ-algebra fixture.
pub fn lambda_algebra_checks(f: &LambdaAlgebra) -> Vec<Check> {
    let expect = |c: Check| if f.expected { c } else { c.violated() };
    let mut out = vec![expect(f.condition()), expect(f.yang_baxter()), f.check_iff()];
    if f.expected {
        let split = splitting::split_idempotent(&f.law);
        let induced = induced_composite_algebra(&split, &f.s, &f.t);
        out.extend(check_algebra(&induced).into_iter().map(|c| c.prefixed("induced-")));
        if split.law.name.starts_with("eps<") {
            out.push(check_induced_plain(&split, &f.s, &f.t));
        }
    }
    out
}

/// Check ids each algebra fixture is expected to fail.
pub fn expected_failures(a: &AlgebraDef) -> &'static [&'static str] {
    match a.name.as_str() {
        "join-empty-top" | "threshold" => &["associativity", "mu-"],
        _ => &[],
    }
}

/// Algebra checks, the EM-law checks, and the iff for one fixture.
pub fn algebra_checks(a: &AlgebraDef) -> Vec<Check> {
    let failing = expected_failures(a);
    let mut out: Vec<Check> = check_algebra(a).into_iter().chain(em_checks(a)).collect();
    out = out.into_iter().map(|c| if failing.contains(&c.id.as_str()) { c.violated() } else { c }).collect();
    out.push(check_em_iff(a));
    out
}
