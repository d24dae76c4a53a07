//! Laws of the shape `TF ⇒ FST` next to a distributive law `[S,T]` and an
//! EM-law `[F,S]`, the coherence axiom, and the composite EM-law
//! `λ̂ : [F, S∘T]`.

use std::sync::Arc;

use crate::gallery;
use crate::kernel::{vfn, Stage, Value};
use crate::laws::{Axiom, Law, LawError, NatDef};
use crate::monads::{self, IdF, MonadDef, Monoid};
use crate::report::{Check, Computed, InputMode};
use crate::splitting::plain_composite;

/// `F`, `S`, `T` with `λ⁰ : [S,T]`, `λ¹ : TF ⇒ FST`, `λ² : [F,S]`.
#[derive(Clone)]
pub struct WinterLaw {
    pub name: String,
    pub f: MonadDef,
    pub lambda0: Law,
    pub lambda1: NatDef,
    pub lambda2: Law,
}

impl std::fmt::Debug for WinterLaw {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "WinterLaw({})", self.name)
    }
}

fn same(a: &Stage, b: &Stage) -> Result<(), LawError> {
    if a == b {
        Ok(())
    } else {
        Err(LawError::TypeMismatch { left: a.to_string(), right: b.to_string() })
    }
}

impl WinterLaw {
    /// Builds the instance, checking every typing.
    pub fn new(name: &str, f: MonadDef, lambda0: Law, lambda1: NatDef, lambda2: Law) -> Result<WinterLaw, LawError> {
        let (s, t) = (lambda0.s.stage(), lambda0.t.stage());
        same(&lambda2.s.stage(), &f.stage())?;
        same(&lambda2.t.stage(), &s)?;
        same(&lambda1.source, &t.then(&f.stage()))?;
        same(&lambda1.target, &f.stage().then(&s).then(&t))?;
        Ok(WinterLaw { name: name.into(), f, lambda0, lambda1, lambda2 })
    }

    fn s(&self) -> &MonadDef {
        &self.lambda0.s
    }

    fn t(&self) -> &MonadDef {
        &self.lambda0.t
    }

    /// `(η*)` and `(μ*)` on `F X` and `TTF X`.
    pub fn check_winter_axioms(&self) -> Vec<Check> {
        let (l1a, l1b, l1c) = (self.lambda1.component.clone(), self.lambda1.component.clone(), self.lambda1.component.clone());
        let (t1, t2, t3) = (self.t().clone(), self.t().clone(), self.t().clone());
        let (f1, f2) = (self.f.clone(), self.f.clone());
        let unit_st = self.lambda0.unit_st();
        let mult_st = self.lambda0.theta();
        let ttf = self.t().stage().then(&self.t().stage()).then(&self.f.stage());
        vec![
            Check::equation(
                "eta*",
                "λ ∘ η^T F = Fη^{S∘T}",
                self.f.stage(),
                vfn(move |x| l1a(&t1.eta(x))),
                vfn(move |x| f1.fmap(&|y| unit_st(y), x)),
            ),
            Check::equation(
                "mu*",
                "λ ∘ μ^T F = Fμ^{S∘T} ∘ λST ∘ Tλ",
                ttf,
                vfn(move |x| l1b(&t2.mu(x))),
                vfn(move |x| f2.fmap(&|y| mult_st(y), &l1c(&t3.fmap(&|y| l1c(y), x)))),
            ),
        ]
    }

    /// `(η−)` and `(μ−)` of `λ²`.
    pub fn check_lambda2(&self) -> Vec<Check> {
        vec![
            self.lambda2.check_axiom(Axiom::EtaMinus).prefixed("lambda2-"),
            self.lambda2.check_axiom(Axiom::MuMinus).prefixed("lambda2-"),
        ]
    }

    /// `Fμ^S T ∘ FSλ⁰ ∘ λ¹S ∘ Tλ² = Fμ^S T ∘ λ²ST ∘ Sλ¹ ∘ λ⁰F` on `TSF`.
    pub fn check_coherence(&self) -> Check {
        let (f1, f2, s1, s2, t1) = (self.f.clone(), self.f.clone(), self.s().clone(), self.s().clone(), self.t().clone());
        let (l0a, l0b) = (self.lambda0.lambda.clone(), self.lambda0.lambda.clone());
        let (l1a, l1b) = (self.lambda1.component.clone(), self.lambda1.component.clone());
        let (l2a, l2b) = (self.lambda2.lambda.clone(), self.lambda2.lambda.clone());
        let input = self.t().stage().then(&self.s().stage()).then(&self.f.stage());
        Check::equation(
            "coh",
            "Fμ^S T ∘ FSλ⁰ ∘ λ¹S ∘ Tλ² = Fμ^S T ∘ λ²ST ∘ Sλ¹ ∘ λ⁰F",
            input,
            vfn(move |x| {
                let v = l1a(&t1.fmap(&|y| l2a(y), x));
                f1.fmap(&|y| s1.mu(&s1.fmap(&|z| l0a(z), y)), &v)
            }),
            vfn(move |x| {
                let v = l2b(&s2.fmap(&|y| l1b(y), &l0b(x)));
                f2.fmap(&|y| s2.mu(y), &v)
            }),
        )
    }

    /// `λ̂ = Fμ^S T ∘ λ²ST ∘ Sλ¹ : [F, S∘T]`.
    pub fn lambda_hat(&self) -> Law {
        let (f, s, l1, l2) = (self.f.clone(), self.s().clone(), self.lambda1.component.clone(), self.lambda2.lambda.clone());
        Law::new(
            &format!("hat<{}>", self.name),
            self.f.clone(),
            plain_composite(&self.lambda0),
            vfn(move |x| f.fmap(&|y| s.mu(y), &l2(&s.fmap(&|y| l1(y), x)))),
        )
    }

    /// `(η−)` and `(μ−)` of `λ̂`.
    pub fn check_lambda_hat(&self) -> Vec<Check> {
        let hat = self.lambda_hat();
        vec![hat.check_axiom(Axiom::EtaMinus).prefixed("hat-"), hat.check_axiom(Axiom::MuMinus).prefixed("hat-")]
    }

    /// `λ̂` is the identity on `STF`.
    pub fn check_hat_identity(&self) -> Check {
        let hat = self.lambda_hat();
        Check::equation("hat-identity", "λ̂ = 1", hat.ts(), hat.lambda.clone(), vfn(Value::clone))
    }

    pub fn checks(&self) -> Vec<Check> {
        let mut out = self.check_winter_axioms();
        out.extend(self.check_lambda2());
        out.push(self.check_coherence());
        out.extend(self.check_lambda_hat());
        out
    }
}

/// `F = 1` as a bare functor.
pub fn identity_functor() -> MonadDef {
    MonadDef::functor_only("F=1", Arc::new(IdF))
}

/// `P` as a bare functor.
pub fn powerset_functor() -> MonadDef {
    MonadDef::functor_only("F=P", monads::powerset().functor)
}

/// The identity law `[1,S]` for a bare functor `F = 1`.
fn identity_em(f: MonadDef, s: MonadDef) -> Law {
    Law::new("1", f, s, vfn(Value::clone))
}

/// `(m, (n, x)) ↦ (n, (m, x))`, a law `[W_1, W_2]`.
pub fn writer_swap_law(m1: Monoid, m2: Monoid) -> Law {
    Law::new(
        &format!("swap<{},{}>", m1.name, m2.name),
        monads::writer(m1),
        monads::writer(m2),
        vfn(|v| match v {
            Value::PairOf(a, inner) => match &**inner {
                Value::PairOf(b, x) => Value::PairOf(b.clone(), Box::new(Value::PairOf(a.clone(), x.clone()))),
                _ => panic!("expects nested writer values, got {v}"),
            },
            _ => panic!("expects nested writer values, got {v}"),
        }),
    )
}

/// `F = 1`, `λ¹ = η^S T`, `λ² = 1`, around a distributive `λ⁰`.
pub fn degenerate(lambda0: Law) -> WinterLaw {
    let f = identity_functor();
    let s = lambda0.s.clone();
    let s2 = s.clone();
    let l1 = NatDef::new(
        "eta^S T",
        lambda0.t.stage().then(&f.stage()),
        f.stage().then(&s.stage()).then(&lambda0.t.stage()),
        vfn(move |x| s2.eta(x)),
    );
    let l2 = identity_em(f.clone(), s);
    WinterLaw::new(&format!("degenerate<{}>", lambda0.name), f, lambda0, l1, l2).expect("degenerate instance is well typed")
}

/// `S = T = 1`, `F = P`, every law the identity.
pub fn all_identity() -> WinterLaw {
    let f = powerset_functor();
    let id = monads::identity();
    let lambda0 = Law::new("1", id.clone(), id.clone(), vfn(Value::clone));
    let l1 = NatDef::new("1", f.stage(), f.stage(), vfn(Value::clone));
    let l2 = Law::new("1", f.clone(), id, vfn(Value::clone));
    WinterLaw::new("identity<P>", f, lambda0, l1, l2).expect("well typed")
}

/// `λ¹(m, x) = {(m, x), (e, x)}` around `ω^P`: breaks `(μ*)`.
pub fn mutant_mu_star() -> WinterLaw {
    let f = identity_functor();
    let m = Monoid::z2();
    let e = m.unit_name();
    let lambda0 = gallery::writer_law(monads::powerset(), m.clone());
    let l1 = NatDef::new(
        "tag-and-forget",
        monads::writer(m.clone()).stage().then(&f.stage()),
        f.stage().then(&monads::powerset().stage()).then(&monads::writer(m).stage()),
        vfn(move |v| match v {
            Value::PairOf(_, x) => Value::set([v.clone(), Value::PairOf(e.clone(), x.clone())]),
            _ => panic!("expects a writer value, got {v}"),
        }),
    );
    let l2 = identity_em(f.clone(), monads::powerset());
    WinterLaw::new("mutant-mu*", f, lambda0, l1, l2).expect("well typed")
}

/// The degenerate instance around `ε^P` with `λ²` sending every set to
/// `∅`, which is not an EM-law.
pub fn mutant_lambda2() -> WinterLaw {
    let mut w = degenerate(gallery::exception_law(monads::powerset()));
    w.name = "mutant-lambda2".into();
    w.lambda2 = Law::new("empty", w.f.clone(), monads::powerset(), vfn(|_| Value::set([])));
    w
}

/// Two writers over the non-commutative `rz3` with `λ¹(m, x) = (m, (m, x))`:
/// the axioms hold but coherence does not.
pub fn mutant_coherence() -> WinterLaw {
    let f = identity_functor();
    let m = Monoid::rz3();
    let w = monads::writer(m.clone());
    let lambda0 = writer_swap_law(m.clone(), m);
    let l1 = NatDef::new(
        "diagonal",
        w.stage().then(&f.stage()),
        f.stage().then(&w.stage()).then(&w.stage()),
        vfn(|v| match v {
            Value::PairOf(a, _) => Value::PairOf(a.clone(), Box::new(v.clone())),
            _ => panic!("expects a writer value, got {v}"),
        }),
    );
    let l2 = identity_em(f.clone(), w);
    WinterLaw::new("mutant-coh", f, lambda0, l1, l2).expect("well typed")
}

/// `λ¹` declared with target `FTS` instead of `FST`.
pub fn mutant_typing() -> Result<WinterLaw, LawError> {
    let f = identity_functor();
    let lambda0 = gallery::exception_law(monads::powerset());
    let (s, t) = (lambda0.s.clone(), lambda0.t.clone());
    let t2 = t.clone();
    let l1 = NatDef::new(
        "flipped",
        t.stage().then(&f.stage()),
        f.stage().then(&t.stage()).then(&s.stage()),
        vfn(move |x| t2.fmap(&|y| Value::set([y.clone()]), x)),
    );
    WinterLaw::new("mutant-typing", f.clone(), lambda0, l1, identity_em(f, s))
}

/// A registered instance: its checks and the ids expected to fail.
pub struct WinterFixture {
    pub name: String,
    pub checks: Vec<Check>,
    pub expected_failures: Vec<&'static str>,
}

fn fixture(w: WinterLaw, extra: Vec<Check>, failing: Vec<&'static str>) -> WinterFixture {
    let mut checks = w.checks();
    checks.extend(extra);
    let checks = checks.into_iter().map(|c| if failing.contains(&c.id.as_str()) { c.violated() } else { c }).collect();
    WinterFixture { name: w.name.clone(), checks, expected_failures: failing }
}

/// Every instance, valid or mutated.
pub fn winter_fixtures() -> Vec<WinterFixture> {
    let mut out = Vec::new();
    for lambda0 in [gallery::exception_law(monads::powerset()), gallery::reader_law(monads::powerset(), 2)] {
        let w = degenerate(lambda0);
        let id = w.check_hat_identity();
        out.push(fixture(w, vec![id], vec![]));
    }
    let w = all_identity();
    let id = w.check_hat_identity();
    out.push(fixture(w, vec![id], vec![]));
    out.push(fixture(mutant_mu_star(), vec![], vec!["mu*", "hat-mu-"]));
    out.push(fixture(mutant_lambda2(), vec![], vec!["lambda2-eta-", "coh", "hat-eta-"]));
    out.push(fixture(mutant_coherence(), vec![], vec!["coh", "hat-mu-"]));
    let typing = Check::computed(
        "typing",
        "λ : TF ⇒ FST",
        Arc::new(|_| match mutant_typing() {
            Ok(_) => Computed { ok: true, inputs_tested: 0, mode: InputMode::Exhaustive, detail: Default::default() },
            Err(e) => Computed {
                ok: false,
                inputs_tested: 0,
                mode: InputMode::Exhaustive,
                detail: ("λ¹ declared TF ⇒ FTS".into(), "FST".into(), e.to_string()),
            },
        }),
    )
    .violated();
    out.push(WinterFixture { name: "mutant-typing".into(), checks: vec![typing], expected_failures: vec!["typing"] });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::LawTag;
    use crate::report::RunConfig;

    #[test]
    fn swap_law_is_distributive() {
        let (class, _) = writer_swap_law(Monoid::rz3(), Monoid::z2()).classify(&RunConfig::default());
        assert_eq!(class.tag(), LawTag::Distributive);
    }

    #[test]
    fn flipped_typing_is_rejected() {
        assert!(matches!(mutant_typing(), Err(LawError::TypeMismatch { .. })));
    }

    #[test]
    fn fixtures_fail_exactly_where_predicted() {
        let cfg = RunConfig::default();
        for fx in winter_fixtures() {
            for c in &fx.checks {
                let r = c.run("winter", &cfg);
                assert!(r.passed(), "{}: {r}", fx.name);
            }
        }
    }
}
