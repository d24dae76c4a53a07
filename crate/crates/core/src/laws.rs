//! Natural transformations, distributive-law axioms, classification, and
//! the idempotent κ of a law.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::kernel::{vfn, EqualityMode, Stage, Value, ValueFn};
use crate::monads::MonadDef;
use crate::report::{Check, CheckReport, RunConfig, Status};

/// Enumeration cap for the `κθ` equation.
pub const KAPPA_THETA_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LawError {
    #[error("stages do not compose: {left} vs {right}")]
    TypeMismatch { left: String, right: String },
    #[error("κ of {law} is not idempotent at input {input}")]
    NotIdempotent { law: String, input: String },
}

/// A natural transformation, given by one component that works at every
/// carrier and at every whiskered position.
#[derive(Clone)]
pub struct NatDef {
    pub name: String,
    pub source: Stage,
    pub target: Stage,
    pub component: ValueFn,
}

impl fmt::Debug for NatDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} ⇒ {}", self.name, self.source, self.target)
    }
}

impl NatDef {
    pub fn new(name: &str, source: Stage, target: Stage, component: ValueFn) -> NatDef {
        NatDef { name: name.into(), source, target, component }
    }

    pub fn identity(stage: Stage) -> NatDef {
        NatDef::new("1", stage.clone(), stage, vfn(Value::clone))
    }

    pub fn apply(&self, v: &Value) -> Value {
        (self.component)(v)
    }

    /// `b ∘ a`.
    pub fn vcompose(b: &NatDef, a: &NatDef) -> Result<NatDef, LawError> {
        if a.target != b.source {
            return Err(LawError::TypeMismatch { left: b.source.to_string(), right: a.target.to_string() });
        }
        let (fa, fb) = (a.component.clone(), b.component.clone());
        Ok(NatDef::new(&format!("{}∘{}", b.name, a.name), a.source.clone(), b.target.clone(), vfn(move |v| fb(&fa(v)))))
    }

    /// `H a : H F ⇒ H G`.
    pub fn whisker_left(h: &Stage, a: &NatDef) -> NatDef {
        let (h2, fa) = (h.clone(), a.component.clone());
        NatDef::new(
            &format!("{h}{}", a.name),
            h.then(&a.source),
            h.then(&a.target),
            vfn(move |v| h2.fmap(&|x| fa(x), v)),
        )
    }

    /// `a H : F H ⇒ G H`. Components are carrier-polymorphic, so this is
    /// the same map read at the carrier `H X`.
    pub fn whisker_right(a: &NatDef, h: &Stage) -> NatDef {
        NatDef::new(&format!("{}{h}", a.name), a.source.then(h), a.target.then(h), a.component.clone())
    }

    /// Horizontal composite `γ a : H F ⇒ K G`, computed as `K a ∘ γ F`.
    pub fn horizontal(gamma: &NatDef, a: &NatDef) -> NatDef {
        let left = NatDef::whisker_left(&gamma.target, a);
        let right = NatDef::whisker_right(gamma, &a.source);
        NatDef::vcompose(&left, &right).expect("whiskered stages align")
    }

    /// Checks `G f ∘ a = a ∘ F f` on functions between small carriers.
    pub fn check_naturality(&self) -> Check {
        Check::naturality("natural", "G f ∘ a = a ∘ F f", self.source.clone(), self.target.clone(), self.component.clone())
    }
}

/// A law `λ : TS ⇒ ST` between two monads, written `[S, T]`. Either side
/// may be a bare functor, in which case only the axioms that do not
/// mention its unit and multiplication apply.
#[derive(Clone)]
pub struct Law {
    pub name: String,
    pub s: MonadDef,
    pub t: MonadDef,
    pub lambda: ValueFn,
}

impl fmt::Debug for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : [{}, {}]", self.name, self.s.name, self.t.name)
    }
}

/// The axioms of a distributive law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axiom {
    EtaPlus,
    MuPlus,
    EtaMinus,
    MuMinus,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [Axiom::EtaPlus, Axiom::MuPlus, Axiom::EtaMinus, Axiom::MuMinus];

    pub fn id(self) -> &'static str {
        match self {
            Axiom::EtaPlus => "eta+",
            Axiom::MuPlus => "mu+",
            Axiom::EtaMinus => "eta-",
            Axiom::MuMinus => "mu-",
        }
    }

    pub fn anchor(self) -> &'static str {
        match self {
            Axiom::EtaPlus => "λ ∘ Tη^S = η^S T",
            Axiom::MuPlus => "λ ∘ Tμ^S = μ^S T ∘ Sλ ∘ λS",
            Axiom::EtaMinus => "λ ∘ η^T S = Sη^T",
            Axiom::MuMinus => "λ ∘ μ^T S = Sμ^T ∘ λT ∘ Tλ",
        }
    }

    /// Whether the axiom mentions the structure of `S` (the plus axioms)
    /// or of `T` (the minus axioms).
    fn needs_s_monad(self) -> bool {
        matches!(self, Axiom::EtaPlus | Axiom::MuPlus)
    }
}

/// Which axioms hold, and the resulting tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawClass {
    pub eta_plus: bool,
    pub mu_plus: bool,
    pub eta_minus: bool,
    pub mu_minus: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawTag {
    Distributive,
    Weak,
    Coweak,
    EmOnly,
    KleisliOnly,
    None,
}

impl fmt::Display for LawTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LawTag::Distributive => "distributive",
            LawTag::Weak => "weak",
            LawTag::Coweak => "coweak",
            LawTag::EmOnly => "EM-only",
            LawTag::KleisliOnly => "Kleisli-only",
            LawTag::None => "none",
        })
    }
}

impl LawClass {
    pub fn from_flags(eta_plus: bool, mu_plus: bool, eta_minus: bool, mu_minus: bool) -> LawClass {
        LawClass { eta_plus, mu_plus, eta_minus, mu_minus }
    }

    pub fn holds(&self, ax: Axiom) -> bool {
        match ax {
            Axiom::EtaPlus => self.eta_plus,
            Axiom::MuPlus => self.mu_plus,
            Axiom::EtaMinus => self.eta_minus,
            Axiom::MuMinus => self.mu_minus,
        }
    }

    pub fn tag(&self) -> LawTag {
        match (self.eta_plus, self.mu_plus, self.eta_minus, self.mu_minus) {
            (true, true, true, true) => LawTag::Distributive,
            (true, true, false, true) => LawTag::Weak,
            (false, true, true, true) => LawTag::Coweak,
            (false, false, true, true) => LawTag::EmOnly,
            (true, true, false, false) => LawTag::KleisliOnly,
            _ => LawTag::None,
        }
    }

    /// The canonical flags of a tag; `None` has no canonical flags.
    pub fn of_tag(tag: LawTag) -> Option<LawClass> {
        Some(match tag {
            LawTag::Distributive => LawClass::from_flags(true, true, true, true),
            LawTag::Weak => LawClass::from_flags(true, true, false, true),
            LawTag::Coweak => LawClass::from_flags(false, true, true, true),
            LawTag::EmOnly => LawClass::from_flags(false, false, true, true),
            LawTag::KleisliOnly => LawClass::from_flags(true, true, false, false),
            LawTag::None => return None,
        })
    }
}

impl Law {
    pub fn new(name: &str, s: MonadDef, t: MonadDef, lambda: ValueFn) -> Law {
        Law { name: name.into(), s, t, lambda }
    }

    pub fn ts(&self) -> Stage {
        self.t.stage().then(&self.s.stage())
    }

    pub fn st(&self) -> Stage {
        self.s.stage().then(&self.t.stage())
    }

    pub fn nat(&self) -> NatDef {
        NatDef::new(&self.name, self.ts(), self.st(), self.lambda.clone())
    }

    pub fn apply(&self, v: &Value) -> Value {
        (self.lambda)(v)
    }

    /// `κ = Sμ^T ∘ λT ∘ η^T ST`.
    pub fn kappa(&self) -> ValueFn {
        let (s, t, l) = (self.s.clone(), self.t.clone(), self.lambda.clone());
        vfn(move |v| s.fmap(&|y| t.mu(y), &l(&t.eta(v))))
    }

    /// `θ = μ^S μ^T ∘ SλT : STST ⇒ ST`.
    pub fn theta(&self) -> ValueFn {
        let (s, t, l) = (self.s.clone(), self.t.clone(), self.lambda.clone());
        vfn(move |v| {
            let sstt = s.fmap(&|y| l(y), v);
            s.mu(&s.fmap(&|y| s.fmap(&|z| t.mu(z), y), &sstt))
        })
    }

    /// `η^S η^T : 1 ⇒ ST`.
    pub fn unit_st(&self) -> ValueFn {
        let (s, t) = (self.s.clone(), self.t.clone());
        vfn(move |v| s.eta(&t.eta(v)))
    }

    /// Whether an axiom applies given which sides carry monad structure.
    pub fn applies(&self, ax: Axiom) -> bool {
        if ax.needs_s_monad() {
            self.s.is_monad
        } else {
            self.t.is_monad
        }
    }

    /// The equation of one axiom, expected to hold.
    pub fn check_axiom(&self, ax: Axiom) -> Check {
        let (s, t, l) = (self.s.clone(), self.t.clone(), self.lambda.clone());
        let (s2, t2, l2) = (s.clone(), t.clone(), l.clone());
        if !self.applies(ax) {
            return Check::skip(ax.id(), ax.anchor(), "the axiom needs monad structure on a bare functor");
        }
        let (input, lhs, rhs): (Stage, ValueFn, ValueFn) = match ax {
            Axiom::EtaPlus => (
                t.stage(),
                vfn(move |x| l(&t.fmap(&|y| s.eta(y), x))),
                vfn(move |x| s2.eta(x)),
            ),
            Axiom::MuPlus => (
                self.ts().then(&s.stage()),
                vfn(move |x| l(&t.fmap(&|y| s.mu(y), x))),
                vfn(move |x| s2.mu(&s2.fmap(&|y| l2(y), &l2(x)))),
            ),
            Axiom::EtaMinus => (
                s.stage(),
                vfn(move |x| l(&t.eta(x))),
                vfn(move |x| s2.fmap(&|y| t2.eta(y), x)),
            ),
            Axiom::MuMinus => (
                t.stage().then(&self.ts()),
                vfn(move |x| l(&t.mu(x))),
                vfn(move |x| s2.fmap(&|y| t2.mu(y), &l2(&t2.fmap(&|y| l2(y), x)))),
            ),
        };
        Check::equation(ax.id(), ax.anchor(), input, lhs, rhs)
    }

    /// Axiom checks whose expectations follow a known classification.
    pub fn axiom_checks(&self, expected: LawClass) -> Vec<Check> {
        Axiom::ALL
            .iter()
            .map(|&ax| {
                let c = self.check_axiom(ax);
                if expected.holds(ax) {
                    c
                } else {
                    c.violated()
                }
            })
            .collect()
    }

    /// Runs the four axiom checks and derives the classification. Axioms
    /// that do not apply count as failing.
    pub fn classify(&self, cfg: &RunConfig) -> (LawClass, Vec<CheckReport>) {
        let reports: Vec<CheckReport> = Axiom::ALL.iter().map(|&ax| self.check_axiom(ax).run(&self.name, cfg)).collect();
        let ok = |i: usize| reports[i].status == Status::Pass;
        (LawClass::from_flags(ok(0), ok(1), ok(2), ok(3)), reports)
    }

    /// The four equations satisfied by κ for a weak law. The last one runs
    /// on `STST`, whose size-2 enumeration meets an exponential κ, so it is
    /// pooled beyond [`KAPPA_THETA_CAP`] values.
    pub fn kappa_checks(&self) -> Vec<Check> {
        let st = self.st();
        let stst = st.then(&st);
        let (k1, k2, k3, k4, k5) = (self.kappa(), self.kappa(), self.kappa(), self.kappa(), self.kappa());
        let (l, u1, u2) = (self.lambda.clone(), self.unit_st(), self.unit_st());
        let (th1, th2) = (self.theta(), self.theta());
        let st2 = st.clone();
        let mode = EqualityMode::for_stage(&st);
        vec![
            Check::equation("kappa-idempotent", "κκ = κ", st.clone(), vfn(move |x| k1(&k1(x))), k2),
            Check::equation("kappa-lambda", "κλ = λ", self.ts(), vfn(move |x| k3(&l(x))), self.lambda.clone()),
            Check::equation("kappa-unit", "κη^Sη^T = η^Sη^T", Stage::id(), vfn(move |x| k4(&u1(x))), u2),
            Check::equation(
                "kappa-theta",
                "κ∘μ^Sμ^T∘SλT = μ^Sμ^T∘SλT∘κκ",
                stst,
                vfn(move |x| k5(&th1(x))),
                {
                    let k = self.kappa();
                    vfn(move |x| th2(&k(&st2.fmap(&|y| k(y), x))))
                },
            )
            .enumeration_cap(KAPPA_THETA_CAP),
        ]
        .into_iter()
        .map(|c| c.with_mode(mode))
        .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monads::{exception, powerset};

    #[test]
    fn whiskering_by_identity_is_invisible() {
        let p = powerset();
        let a = NatDef::new("min", p.stage(), p.stage(), vfn(|v| Value::set(v.members().unwrap().iter().take(1).cloned())));
        let l = NatDef::whisker_left(&Stage::id(), &a);
        let r = NatDef::whisker_right(&a, &Stage::id());
        for v in p.stage().enumerate(2, 100).unwrap() {
            assert_eq!(l.apply(&v), a.apply(&v));
            assert_eq!(r.apply(&v), a.apply(&v));
        }
        assert_eq!(l.source, a.source);
    }

    #[test]
    fn vcompose_rejects_misaligned_stages() {
        let p = powerset();
        let e = exception();
        let a = NatDef::identity(p.stage());
        let b2 = NatDef::identity(e.stage());
        assert!(matches!(NatDef::vcompose(&b2, &a), Err(LawError::TypeMismatch { .. })));
        assert!(NatDef::vcompose(&a, &a).is_ok());
    }

    #[test]
    fn min_pick_is_not_natural() {
        let p = powerset();
        let a = NatDef::new("min", p.stage(), p.stage(), vfn(|v| Value::set(v.members().unwrap().iter().take(1).cloned())));
        let r = a.check_naturality().run("t", &RunConfig::default());
        assert_eq!(r.status, Status::Fail);
        assert!(r.witness.is_some());
    }

    #[test]
    fn tags_follow_flags() {
        assert_eq!(LawClass::from_flags(true, true, true, true).tag(), LawTag::Distributive);
        assert_eq!(LawClass::from_flags(true, true, false, true).tag(), LawTag::Weak);
        assert_eq!(LawClass::from_flags(false, true, true, true).tag(), LawTag::Coweak);
        assert_eq!(LawClass::from_flags(false, false, true, true).tag(), LawTag::EmOnly);
        assert_eq!(LawClass::from_flags(true, true, false, false).tag(), LawTag::KleisliOnly);
        assert_eq!(LawClass::from_flags(true, false, true, true).tag(), LawTag::None);
        for tag in [LawTag::Distributive, LawTag::Weak, LawTag::Coweak, LawTag::EmOnly, LawTag::KleisliOnly] {
            assert_eq!(LawClass::of_tag(tag).unwrap().tag(), tag);
        }
    }
}
