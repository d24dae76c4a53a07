//! Three laws at once: the Yang-Baxter equation, the two composite laws,
//! and the checks showing both composites give the same monad.

use crate::kernel::{value_equal, vfn, EqualityMode, Stage, Value, ValueFn};
use crate::laws::{Axiom, Law, LawClass, LawError, LawTag};
use crate::monads::MonadDef;
use crate::report::Check;
use crate::splitting::{split_idempotent, weak_composite, SplitData, DEEP_POOL};

/// Monads `R, S, T` with laws `σ : [R,S]`, `τ : [R,T]`, `λ : [S,T]`, and
/// the classification each law is registered with.
#[derive(Clone)]
pub struct Triple {
    pub name: String,
    pub sigma: Law,
    pub tau: Law,
    pub lambda: Law,
    pub classes: [LawClass; 3],
}

impl std::fmt::Debug for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Triple({}: σ={}, τ={}, λ={})", self.name, self.sigma.name, self.tau.name, self.lambda.name)
    }
}

fn class_of(tag: LawTag) -> LawClass {
    LawClass::of_tag(tag).unwrap_or(LawClass::from_flags(false, false, false, false))
}

impl Triple {
    /// Builds a triple, checking that the laws share their monads.
    pub fn new(name: &str, sigma: Law, tau: Law, lambda: Law, tags: [LawTag; 3]) -> Result<Triple, LawError> {
        let mismatch = |a: &MonadDef, b: &MonadDef| {
            if a.stage() != b.stage() {
                Err(LawError::TypeMismatch { left: a.stage().to_string(), right: b.stage().to_string() })
            } else {
                Ok(())
            }
        };
        mismatch(&sigma.s, &tau.s)?;
        mismatch(&sigma.t, &lambda.s)?;
        mismatch(&tau.t, &lambda.t)?;
        Ok(Triple { name: name.into(), sigma, tau, lambda, classes: tags.map(class_of) })
    }

    pub fn r(&self) -> &MonadDef {
        &self.sigma.s
    }

    pub fn s(&self) -> &MonadDef {
        &self.lambda.s
    }

    pub fn t(&self) -> &MonadDef {
        &self.lambda.t
    }

    fn sigma_class(&self) -> LawClass {
        self.classes[0]
    }

    fn tau_class(&self) -> LawClass {
        self.classes[1]
    }

    fn lambda_class(&self) -> LawClass {
        self.classes[2]
    }

    /// `σT ∘ Sτ ∘ λR` on `TSR`.
    pub fn yb_left(&self) -> ValueFn {
        let (sg, tu, lm, s) = (self.sigma.lambda.clone(), self.tau.lambda.clone(), self.lambda.lambda.clone(), self.s().clone());
        vfn(move |x| sg(&s.fmap(&|y| tu(y), &lm(x))))
    }

    /// `Rλ ∘ τS ∘ Tσ` on `TSR`.
    pub fn yb_right(&self) -> ValueFn {
        let (sg, tu, lm) = (self.sigma.lambda.clone(), self.tau.lambda.clone(), self.lambda.lambda.clone());
        let (r, t) = (self.r().clone(), self.t().clone());
        vfn(move |x| r.fmap(&|y| lm(y), &tu(&t.fmap(&|y| sg(y), x))))
    }

    pub fn check_yang_baxter(&self) -> Check {
        let input = self.t().stage().then(&self.s().stage()).then(&self.r().stage());
        Check::equation("yb", "σT ∘ Sτ ∘ λR = Rλ ∘ τS ∘ Tσ", input, self.yb_left(), self.yb_right())
    }

    /// `Rλ ∘ τS : TRS ⇒ RST`.
    fn r_lambda_tau_s(&self) -> ValueFn {
        let (tu, lm, r) = (self.tau.lambda.clone(), self.lambda.lambda.clone(), self.r().clone());
        vfn(move |x| r.fmap(&|y| lm(y), &tu(x)))
    }

    /// `σT ∘ Sτ : STR ⇒ RST`.
    fn sigma_t_s_tau(&self) -> ValueFn {
        let (sg, tu, s) = (self.sigma.lambda.clone(), self.tau.lambda.clone(), self.s().clone());
        vfn(move |x| sg(&s.fmap(&|y| tu(y), x)))
    }

    /// `φ = π^σT ∘ Rλ ∘ τS ∘ Tι^σ : [R•S, T]`.
    pub fn compose_first(&self, split_sigma: &SplitData) -> Law {
        let t = self.t().clone();
        let (iota, pi, rl) = (split_sigma.iota(), split_sigma.pi(), self.r_lambda_tau_s());
        let t2 = t.clone();
        Law::new(
            &format!("phi<{}>", self.name),
            weak_composite(split_sigma),
            t,
            vfn(move |x| pi(&rl(&t2.fmap(&|y| iota(y), x)))),
        )
    }

    /// `ψ = Rπ^λ ∘ σT ∘ Sτ ∘ ι^λR : [R, S•T]`.
    pub fn compose_second(&self, split_lambda: &SplitData) -> Law {
        let r = self.r().clone();
        let (iota, pi, st) = (split_lambda.iota(), split_lambda.pi(), self.sigma_t_s_tau());
        let r2 = r.clone();
        Law::new(
            &format!("psi<{}>", self.name),
            r,
            weak_composite(split_lambda),
            vfn(move |x| r2.fmap(&|y| pi(y), &st(&iota(x)))),
        )
    }

    /// Expected classification of `φ` from the hypotheses on `τ` and `λ`.
    pub fn phi_licensed(&self) -> [bool; 4] {
        let (t, l) = (self.tau_class(), self.lambda_class());
        [
            t.eta_plus && l.eta_plus,
            t.mu_plus && l.mu_plus,
            t.eta_minus && l.eta_minus,
            t.mu_minus && l.mu_minus && l.eta_plus && l.mu_plus,
        ]
    }

    /// Expected classification of `ψ` from the hypotheses on `σ` and `τ`.
    pub fn psi_licensed(&self) -> [bool; 4] {
        let (s, t) = (self.sigma_class(), self.tau_class());
        [
            s.eta_plus && t.eta_plus,
            s.mu_plus && t.mu_plus && t.eta_minus && t.mu_minus,
            s.eta_minus && t.eta_minus,
            s.mu_minus && t.mu_minus,
        ]
    }

    fn sigma_splits(&self) -> bool {
        let c = self.sigma_class();
        c.eta_plus && c.mu_plus && c.mu_minus
    }

    fn lambda_splits(&self) -> bool {
        let c = self.lambda_class();
        c.eta_plus && c.mu_plus && c.mu_minus
    }

    /// Axiom checks of a composite law, one per axiom; axioms the
    /// hypotheses do not license are skipped.
    fn composite_axioms(prefix: &str, law: &Law, licensed: [bool; 4]) -> Vec<Check> {
        Axiom::ALL
            .iter()
            .zip(licensed)
            .map(|(&ax, ok)| {
                let c = if ok {
                    law.check_axiom(ax).pool_limit(DEEP_POOL.0, DEEP_POOL.1)
                } else {
                    Check::skip(ax.id(), ax.anchor(), "not licensed by the axioms of the component laws")
                };
                c.prefixed(prefix)
            })
            .collect()
    }

    /// Axioms of `φ`, or a skip when `σ` cannot be split.
    pub fn check_phi(&self) -> Vec<Check> {
        if !self.sigma_splits() {
            return vec![Check::skip("phi", "φ = π^σT ∘ Rλ ∘ τS ∘ Tι^σ", "σ is not weak, so R•S does not exist")];
        }
        let phi = self.compose_first(&split_idempotent(&self.sigma));
        Triple::composite_axioms("phi-", &phi, self.phi_licensed())
    }

    /// Axioms of `ψ`, or a skip when `λ` cannot be split.
    pub fn check_psi(&self) -> Vec<Check> {
        if !self.lambda_splits() {
            return vec![Check::skip("psi", "ψ = Rπ^λ ∘ σT ∘ Sτ ∘ ι^λR", "λ is not weak, so S•T does not exist")];
        }
        let psi = self.compose_second(&split_idempotent(&self.lambda));
        Triple::composite_axioms("psi-", &psi, self.psi_licensed())
    }

    /// The two commutation lemmas for the idempotents. A lemma whose
    /// hypotheses do not hold is skipped.
    pub fn check_commutation_lemmas(&self) -> Vec<Check> {
        let mut out = Vec::new();
        let l = self.lambda_class();
        if self.sigma_splits() && l.eta_plus && l.mu_plus {
            let ks = self.sigma.kappa();
            let (ks1, ks2) = (ks.clone(), ks);
            let (f1, f2) = (self.r_lambda_tau_s(), self.r_lambda_tau_s());
            let t = self.t().clone();
            let input = self.t().stage().then(&self.r().stage()).then(&self.s().stage());
            out.push(Check::equation(
                "lemma-first",
                "κ^σT ∘ Rλ ∘ τS = Rλ ∘ τS ∘ Tκ^σ",
                input,
                vfn(move |x| ks1(&f1(x))),
                vfn(move |x| f2(&t.fmap(&|y| ks2(y), x))),
            ));
        } else {
            out.push(Check::skip("lemma-first", "κ^σT ∘ Rλ ∘ τS = Rλ ∘ τS ∘ Tκ^σ", "precondition not met: needs σ weak and (η+), (μ+) for λ"));
        }
        let t = self.tau_class();
        if self.lambda_splits() && t.eta_minus && t.mu_minus {
            let kl = self.lambda.kappa();
            let (kl1, kl2) = (kl.clone(), kl);
            let (f1, f2) = (self.sigma_t_s_tau(), self.sigma_t_s_tau());
            let r = self.r().clone();
            let input = self.s().stage().then(&self.t().stage()).then(&self.r().stage());
            out.push(Check::equation(
                "lemma-second",
                "Rκ^λ ∘ σT ∘ Sτ = σT ∘ Sτ ∘ κ^λR",
                input,
                vfn(move |x| r.fmap(&|y| kl1(y), &f1(x))),
                vfn(move |x| f2(&kl2(x))),
            ));
        } else {
            out.push(Check::skip("lemma-second", "Rκ^λ ∘ σT ∘ Sτ = σT ∘ Sτ ∘ κ^λR", "precondition not met: needs λ weak and (η−), (μ−) for τ"));
        }
        out
    }

    /// The checks behind "both composites give the same monad": the two
    /// expressions of each idempotent, the transported splitting, the four
    /// separate-and-merge equations, and equality of units and
    /// multiplications on the shared functor.
    pub fn check_associativity(&self) -> Vec<Check> {
        const ANCHOR: &str = "(R•S)•T = R•(S•T)";
        if !(self.sigma_splits() && self.lambda_splits()) {
            return vec![Check::skip("assoc", ANCHOR, "hypotheses not met: σ and λ must be weak")];
        }
        let tau_distributive = self.tau_class().tag() == LawTag::Distributive;
        let parts = AssocParts::new(self);
        let mut checks: Vec<Check> = parts.checks().into_iter().map(|c| c.max_size(2).pool_limit(32, 2)).collect();
        if !tau_distributive {
            // The statement assumes τ distributive; results are kept but
            // marked as exploratory in their ids.
            checks = checks.into_iter().map(|c| c.prefixed("exploratory-")).collect();
        }
        checks
    }
}

/// Everything the associativity checks are built from.
struct AssocParts {
    r: MonadDef,
    split_sigma: SplitData,
    split_lambda: SplitData,
    split_phi: SplitData,
    psi: Law,
    /// `K^σ T`, the functor of `φ`'s composite before splitting.
    kst: Stage,
    /// `R K^λ`.
    rk: Stage,
    /// `R S T`.
    rst: Stage,
}

impl AssocParts {
    fn new(tr: &Triple) -> AssocParts {
        let split_sigma = split_idempotent(&tr.sigma);
        let split_lambda = split_idempotent(&tr.lambda);
        let phi = tr.compose_first(&split_sigma);
        let psi = tr.compose_second(&split_lambda);
        let split_phi = split_idempotent(&phi);
        let kst = split_sigma.stage().then(&tr.t().stage());
        let rk = tr.r().stage().then(&split_lambda.stage());
        let rst = tr.r().stage().then(&tr.s().stage()).then(&tr.t().stage());
        AssocParts { r: tr.r().clone(), split_sigma, split_lambda, split_phi, psi, kst, rk, rst }
    }

    /// `α = π^σT ∘ Rι^λ : R K^λ ⇒ K^σ T`.
    fn alpha(&self) -> ValueFn {
        let (r, il, ps) = (self.r.clone(), self.split_lambda.iota(), self.split_sigma.pi());
        vfn(move |x| ps(&r.fmap(&|y| il(y), x)))
    }

    /// `β = Rπ^λ ∘ ι^σT : K^σ T ⇒ R K^λ`.
    fn beta(&self) -> ValueFn {
        let (r, pl, is) = (self.r.clone(), self.split_lambda.pi(), self.split_sigma.iota());
        vfn(move |x| r.fmap(&|y| pl(y), &is(x)))
    }

    /// `ι^ψ = β ∘ ι^φ`.
    fn iota_psi(&self) -> ValueFn {
        let (b, i) = (self.beta(), self.split_phi.iota());
        vfn(move |x| b(&i(x)))
    }

    /// `π^ψ = π^φ ∘ α`.
    fn pi_psi(&self) -> ValueFn {
        let (a, p) = (self.alpha(), self.split_phi.pi());
        vfn(move |x| p(&a(x)))
    }

    fn r_map(&self, f: ValueFn) -> ValueFn {
        let r = self.r.clone();
        vfn(move |x| r.fmap(&|y| f(y), x))
    }

    fn then(f: ValueFn, g: ValueFn) -> ValueFn {
        vfn(move |x| g(&f(x)))
    }

    fn checks(&self) -> Vec<Check> {
        let kphi = self.split_phi.stage();
        let (alpha, beta) = (self.alpha(), self.beta());
        let kappa_phi = self.split_phi.law.kappa();
        let kappa_psi = self.psi.kappa();
        let (pi_s, iota_s, kappa_s) = (self.split_sigma.pi(), self.split_sigma.iota(), self.split_sigma.law.kappa());
        let (pi_l, iota_l, kappa_l) = (self.split_lambda.pi(), self.split_lambda.iota(), self.split_lambda.law.kappa());
        let (pi_phi, iota_phi) = (self.split_phi.pi(), self.split_phi.iota());
        let (pi_psi, iota_psi) = (self.pi_psi(), self.iota_psi());
        let t = AssocParts::then;

        let mut out = vec![
            Check::equation("kappa-phi-ab", "κ^φ = α∘β", self.kst.clone(), kappa_phi.clone(), t(beta.clone(), alpha.clone())),
            Check::equation(
                "kappa-phi-expr",
                "κ^φ = π^σT ∘ Rκ^λ ∘ ι^σT",
                self.kst.clone(),
                kappa_phi,
                t(t(iota_s.clone(), self.r_map(kappa_l.clone())), pi_s.clone()),
            ),
            Check::equation("kappa-psi-ba", "κ^ψ = β∘α", self.rk.clone(), kappa_psi.clone(), t(alpha.clone(), beta.clone())),
            Check::equation(
                "kappa-psi-expr",
                "κ^ψ = Rπ^λ ∘ κ^σT ∘ Rι^λ",
                self.rk.clone(),
                kappa_psi.clone(),
                t(t(self.r_map(iota_l.clone()), kappa_s.clone()), self.r_map(pi_l.clone())),
            ),
            Check::equation(
                "transport-identity",
                "π^ψ ∘ ι^ψ = 1",
                kphi.clone(),
                t(iota_psi.clone(), pi_psi.clone()),
                vfn(Value::clone),
            ),
            Check::equation("transport-kappa", "ι^ψ ∘ π^ψ = κ^ψ", self.rk.clone(), t(pi_psi.clone(), iota_psi.clone()), kappa_psi),
            Check::equation(
                "s1",
                "Rι^λ ∘ ι^ψ = Rκ^λ ∘ ι^σT ∘ ι^φ",
                kphi.clone(),
                t(iota_psi.clone(), self.r_map(iota_l.clone())),
                t(t(iota_phi.clone(), iota_s.clone()), self.r_map(kappa_l.clone())),
            ),
            Check::equation(
                "s2",
                "ι^σT ∘ ι^φ = κ^σT ∘ Rι^λ ∘ ι^ψ",
                kphi.clone(),
                t(iota_phi.clone(), iota_s.clone()),
                t(t(iota_psi.clone(), self.r_map(iota_l)), kappa_s.clone()),
            ),
            Check::equation(
                "m1",
                "π^ψ ∘ Rπ^λ = π^φ ∘ π^σT ∘ Rκ^λ",
                self.rst.clone(),
                t(self.r_map(pi_l.clone()), pi_psi.clone()),
                t(t(self.r_map(kappa_l), pi_s.clone()), pi_phi.clone()),
            ),
            Check::equation(
                "m2",
                "π^φ ∘ π^σT = π^ψ ∘ Rπ^λ ∘ κ^σT",
                self.rst.clone(),
                t(pi_s, pi_phi),
                t(t(kappa_s, self.r_map(pi_l)), pi_psi.clone()),
            ),
        ];
        out.extend(self.unit_mult_checks());
        out
    }

    /// The two triple monads on `K^φ`: the `φ` composite directly, and the
    /// `ψ` composite carried over by the transported splitting.
    fn unit_mult_checks(&self) -> Vec<Check> {
        let kphi = self.split_phi.stage();
        let m_phi = weak_composite(&self.split_phi);
        let psi = &self.psi;
        let (pi_psi, pi_psi2, iota_psi) = (self.pi_psi(), self.pi_psi(), self.iota_psi());
        let unit_psi = psi.unit_st();
        let theta_psi = psi.theta();
        let rk = self.rk.clone();
        let (m1, m2) = (m_phi.clone(), m_phi);
        let mode = EqualityMode::for_stage(&kphi);
        vec![
            Check::equation("unit", "η^φ = η^ψ on K^φ", Stage::id(), vfn(move |x| m1.eta(x)), vfn(move |x| pi_psi(&unit_psi(x))))
                .with_mode(mode),
            Check::equation(
                "mult",
                "μ^φ = μ^ψ on K^φ",
                kphi.then(&kphi),
                vfn(move |v| m2.mu(v)),
                vfn(move |v| {
                    let outer = iota_psi(v);
                    pi_psi2(&theta_psi(&rk.fmap(&|y| iota_psi(y), &outer)))
                }),
            )
            .with_mode(mode),
        ]
    }
}

/// Whether two values agree under the equality of `stage`.
pub fn agree(stage: &Stage, a: &Value, b: &Value) -> bool {
    value_equal(a, b, EqualityMode::for_stage(stage))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::report::{RunConfig, Status};
    use crate::splitting::split_idempotent;

    #[test]
    fn identity_r_phi_reads_back_as_lambda() {
        let t = gallery::identity_left_triple(gallery::pp_law(), LawTag::Weak);
        let split = split_idempotent(&t.sigma);
        let phi = t.compose_first(&split);
        let (pi, iota) = (split.pi(), split.iota());
        let ts = t.lambda.ts();
        for n in 0..=2 {
            for x in ts.enumerate(n, 1 << 16).unwrap() {
                let via_phi = iota(&phi.apply(&t.t().fmap(&|y| pi(y), &x)));
                assert!(agree(&t.lambda.st(), &via_phi, &t.lambda.apply(&x)), "{x}");
            }
        }
    }

    #[test]
    fn all_distributive_triple_passes_everything() {
        let t = gallery::all_distributive_triple();
        let cfg = RunConfig { max_carrier_size: 1, ..RunConfig::default() };
        let mut checks = vec![t.check_yang_baxter()];
        checks.extend(t.check_phi());
        checks.extend(t.check_psi());
        checks.extend(t.check_associativity());
        for c in checks {
            let r = c.run("iterate", &cfg);
            assert_eq!(r.status, Status::Pass, "{r}");
        }
    }

    #[test]
    fn unmet_preconditions_skip() {
        let t = gallery::trivial_second_triple();
        let cfg = RunConfig::default();
        let lemmas: Vec<_> = t.check_commutation_lemmas().iter().map(|c| c.run("iterate", &cfg)).collect();
        let second = lemmas.iter().find(|r| r.check == "lemma-second").unwrap();
        assert_eq!(second.status, Status::Skipped);
        assert!(second.reason.as_deref().unwrap().starts_with("precondition not met"));
        assert!(!t.phi_licensed()[2]);
    }

    #[test]
    fn swapping_sides_of_yang_baxter_is_a_type_error() {
        let pp = gallery::pp_law();
        let eps = gallery::exception_law(crate::monads::powerset());
        assert!(matches!(
            Triple::new("bad", eps.clone(), pp, eps, [LawTag::Distributive; 3]),
            Err(LawError::TypeMismatch { .. })
        ));
    }
}
