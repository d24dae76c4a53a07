//! Splitting the idempotent κ of a law and the weak composite monad.
//!
//! Elements of the split functor `K` are `Norm(law, v)` where `v` is a
//! κ-fixed value of `ST` in normal form. Normal forms are structural for
//! stages without a distribution layer, and semantic (convex sets reduced
//! to their vertices) otherwise.

use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::kernel::{
    semantic_canonical, value_equal, vfn, EqualityMode, Functor, FunctorRef, KernelError, PoolParams, Stage, Symbol,
    Value, ValueFn,
};
use crate::laws::{Law, LawError};
use crate::monads::MonadDef;
use crate::report::{Check, RunConfig, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitStrategy {
    /// `K X` is the κ-image inside `ST X`.
    EnumeratedImage,
    /// `K X` is the set of semantic normal forms of κ-fixed values.
    NormalForm,
}

/// The functor `K` through which κ factors.
pub struct SplitF {
    id: Arc<str>,
    st: Stage,
    kappa: ValueFn,
    semantic: bool,
}

impl SplitF {
    fn normalize(&self, v: &Value) -> Value {
        if self.semantic {
            semantic_canonical(v)
        } else {
            v.clone()
        }
    }

    pub fn pi(&self, v: &Value) -> Value {
        Value::Norm(self.id.clone(), Box::new(self.normalize(&(self.kappa)(v))))
    }

    pub fn iota(&self, v: &Value) -> Value {
        match v {
            Value::Norm(id, p) if *id == self.id => (**p).clone(),
            _ => panic!("value {v} is not an element of K<{}>", self.id),
        }
    }
}

/// Largest `ST X` that is projected in full to enumerate `K X`. Each
/// projection can itself be exponential, so this is well below the
/// general cap.
pub const SPLIT_ENUMERATION_CAP: usize = 4096;

impl Functor for SplitF {
    fn symbol(&self) -> Symbol {
        Symbol::Split { law: self.id.to_string(), has_dist: self.semantic }
    }

    fn fmap(&self, f: &dyn Fn(&Value) -> Value, v: &Value) -> Value {
        self.pi(&self.st.fmap(f, &self.iota(v)))
    }

    fn enumerate_over(&self, atoms: &[Value], cap: usize) -> Option<Vec<Value>> {
        let mut out: Vec<Value> =
            self.st.enumerate_over(atoms, cap.min(SPLIT_ENUMERATION_CAP))?.iter().map(|v| self.pi(v)).collect();
        out.sort();
        out.dedup();
        Some(out)
    }

    fn sample_over(&self, atoms: &[Value], params: &PoolParams, rng: &mut ChaCha8Rng) -> Vec<Value> {
        let mut out: Vec<Value> = self.st.sample_over(atoms, params, rng).iter().map(|v| self.pi(v)).collect();
        out.sort();
        out.dedup();
        out
    }

    fn canonicalize(
        &self,
        v: &Value,
        inner: &dyn Fn(&Value) -> Result<Value, KernelError>,
    ) -> Result<Value, KernelError> {
        let shape = || KernelError::Shape { stage: format!("K<{}>", self.id), value: v.to_string() };
        match v {
            Value::Norm(id, p) if *id == self.id => {
                let p = self.st.canonicalize_with(p, inner)?;
                let n = self.pi(&p);
                if self.iota(&n) != self.normalize(&p) {
                    return Err(shape());
                }
                Ok(n)
            }
            _ => Err(shape()),
        }
    }

    fn contains_distribution(&self) -> bool {
        self.semantic
    }
}

/// A splitting `ι ∘ π = κ`, `π ∘ ι = 1` of a law's idempotent.
#[derive(Clone)]
pub struct SplitData {
    pub law: Law,
    pub k: Arc<SplitF>,
    pub strategy: SplitStrategy,
}

impl SplitData {
    pub fn functor(&self) -> FunctorRef {
        self.k.clone()
    }

    pub fn stage(&self) -> Stage {
        Stage::of(&self.functor())
    }

    pub fn pi(&self) -> ValueFn {
        let k = self.k.clone();
        vfn(move |v| k.pi(v))
    }

    pub fn iota(&self) -> ValueFn {
        let k = self.k.clone();
        vfn(move |v| k.iota(v))
    }
}

/// Splits κ of `law`. The strategy follows from whether `ST` has a
/// distribution layer.
pub fn split_idempotent(law: &Law) -> SplitData {
    let st = law.st();
    let semantic = st.contains_distribution();
    let k = Arc::new(SplitF { id: Arc::from(law.name.as_str()), st, kappa: law.kappa(), semantic });
    let strategy = if semantic { SplitStrategy::NormalForm } else { SplitStrategy::EnumeratedImage };
    SplitData { law: law.clone(), k, strategy }
}

/// As [`split_idempotent`], first confirming `κκ = κ` on the test inputs.
pub fn split_checked(law: &Law, cfg: &RunConfig) -> Result<SplitData, LawError> {
    let r = law.kappa_checks().swap_remove(0).run(&law.name, cfg);
    if r.status == Status::Fail {
        let input = r.witness.map(|w| w.input).unwrap_or_default();
        return Err(LawError::NotIdempotent { law: law.name.clone(), input });
    }
    Ok(split_idempotent(law))
}

/// `S •_λ T = (K, π ∘ η^Sη^T, π ∘ θ ∘ ιι)`.
pub fn weak_composite(split: &SplitData) -> MonadDef {
    let law = &split.law;
    let (pi1, pi2) = (split.pi(), split.pi());
    let (iota, unit_st, theta) = (split.iota(), law.unit_st(), law.theta());
    let st = law.st();
    MonadDef {
        name: format!("{}•{}", law.s.name, law.t.name),
        functor: split.functor(),
        unit: vfn(move |x| pi1(&unit_st(x))),
        mult: vfn(move |v| {
            let outer = iota(v);
            pi2(&theta(&st.fmap(&|y| iota(y), &outer)))
        }),
        is_monad: true,
    }
}

/// The composite `(ST, η^Sη^T, θ)` with no splitting at all. It is a monad
/// when the law is distributive.
pub fn plain_composite(law: &Law) -> MonadDef {
    let st = law.st();
    let stage = st.clone();
    MonadDef {
        name: format!("{}{}", law.s.name, law.t.name),
        functor: Arc::new(StageF(stage)),
        unit: law.unit_st(),
        mult: law.theta(),
        is_monad: true,
    }
}

/// A composite stage presented as a single functor.
pub struct StageF(pub Stage);

impl Functor for StageF {
    fn symbol(&self) -> Symbol {
        // Only used for display and stage equality; the parts are enough.
        Symbol::Split { law: self.0.to_string(), has_dist: self.0.contains_distribution() }
    }

    fn fmap(&self, f: &dyn Fn(&Value) -> Value, v: &Value) -> Value {
        self.0.fmap(f, v)
    }

    fn enumerate_over(&self, atoms: &[Value], cap: usize) -> Option<Vec<Value>> {
        self.0.enumerate_over(atoms, cap)
    }

    fn sample_over(&self, atoms: &[Value], params: &PoolParams, rng: &mut ChaCha8Rng) -> Vec<Value> {
        self.0.sample_over(atoms, params, rng)
    }

    fn canonicalize(
        &self,
        v: &Value,
        inner: &dyn Fn(&Value) -> Result<Value, KernelError>,
    ) -> Result<Value, KernelError> {
        self.0.canonicalize_with(v, inner)
    }

    fn contains_distribution(&self) -> bool {
        self.0.contains_distribution()
    }
}

/// Pool count and support bound for triply nested composite inputs.
pub const DEEP_POOL: (usize, usize) = (24, 2);

/// The retract equations of the splitting, the monad laws of the weak
/// composite, and associativity of `θ`.
pub fn check_appendix_a(split: &SplitData) -> Vec<Check> {
    let law = &split.law;
    let st = law.st();
    let k = split.stage();
    let m = weak_composite(split);
    let (pi, iota, kappa) = (split.pi(), split.iota(), law.kappa());
    let (pi2, iota2) = (split.pi(), split.iota());
    let mut checks = vec![
        Check::equation("retract-kappa", "ι∘π = κ", st.clone(), vfn(move |v| iota(&pi(v))), kappa),
        Check::equation("retract-identity", "π∘ι = 1", k.clone(), vfn(move |v| pi2(&iota2(v))), vfn(Value::clone)),
    ];
    checks.extend(composite_monad_laws(&m));
    let stst = st.then(&st);
    let ststst = stst.then(&st);
    let (th1, th2, th3, th4) = (law.theta(), law.theta(), law.theta(), law.theta());
    let st2 = st.clone();
    checks.push(Check::equation(
        "theta-assoc",
        "θ∘STθ = θ∘θST",
        ststst,
        vfn(move |v| th1(&st2.fmap(&|y| th2(y), v))),
        vfn(move |v| th3(&th4(v))),
    )
    .pool_limit(DEEP_POOL.0, DEEP_POOL.1));
    checks
}

/// Unit and associativity laws of a monad, under the ids used for
/// composites.
pub fn composite_monad_laws(m: &MonadDef) -> Vec<Check> {
    let t = m.stage();
    let ttt = t.then(&t).then(&t);
    let (m1, m2, m3, m4) = (m.clone(), m.clone(), m.clone(), m.clone());
    vec![
        Check::equation("composite-left-unit", "μ∘ηK = 1", t.clone(), vfn(move |x| m1.mu(&m1.eta(x))), vfn(Value::clone)),
        Check::equation(
            "composite-right-unit",
            "μ∘Kη = 1",
            t,
            vfn(move |x| m2.mu(&m2.fmap(&|y| m2.eta(y), x))),
            vfn(Value::clone),
        ),
        Check::equation(
            "composite-assoc",
            "μ∘Kμ = μ∘μK",
            ttt,
            vfn(move |x| m3.mu(&m3.fmap(&|y| m3.mu(y), x))),
            vfn(move |x| m4.mu(&m4.mu(x))),
        )
        .pool_limit(DEEP_POOL.0, DEEP_POOL.1),
    ]
}

/// For a distributive law: the weak composite read through `ι` is the
/// plain composite.
pub fn check_against_plain(split: &SplitData) -> Vec<Check> {
    let law = &split.law;
    let m = weak_composite(split);
    let k = split.stage();
    let (i1, i2, i3) = (split.iota(), split.iota(), split.iota());
    let (m1, m2) = (m.clone(), m);
    let (unit_st, theta, st) = (law.unit_st(), law.theta(), law.st());
    vec![
        Check::equation("plain-unit", "ιη^K = η^Sη^T", Stage::id(), vfn(move |x| i1(&m1.eta(x))), unit_st),
        Check::equation(
            "plain-mult",
            "ιμ^K = μ^Sμ^T∘SλT∘ιι",
            k.then(&k),
            vfn(move |v| i2(&m2.mu(v))),
            vfn(move |v| theta(&st.fmap(&|y| i3(y), &i3(v)))),
        ),
    ]
}

/// Pointwise comparison of two values that live in `K`, through `ι`.
pub fn equal_through_iota(split: &SplitData, a: &Value, b: &Value) -> bool {
    let mode = EqualityMode::for_stage(&split.law.st());
    value_equal(&split.k.iota(a), &split.k.iota(b), mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::kernel::Rat;

    fn b(i: u32) -> Value {
        Value::Base(i)
    }

    fn run_all(checks: Vec<Check>) {
        let cfg = RunConfig::default();
        for c in checks {
            let r = c.run("t", &cfg);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn trivial_identity_law_splits_onto_powerset() {
        let law = gallery::trivial_law_identity_p();
        let split = split_idempotent(&law);
        assert_eq!(split.strategy, SplitStrategy::EnumeratedImage);
        let kx = split.stage().enumerate(2, 1000).unwrap();
        assert_eq!(kx.len(), 4);
        for v in &kx {
            let inner = split.k.iota(v);
            assert_eq!(inner.members().unwrap().len(), 1);
        }
    }

    #[test]
    fn pp_composite_is_a_monad() {
        run_all(check_appendix_a(&split_idempotent(&gallery::pp_law())));
    }

    #[test]
    fn distributive_composite_is_the_plain_one() {
        let law = gallery::exception_law(crate::monads::powerset());
        let split = split_idempotent(&law);
        run_all(check_appendix_a(&split));
        run_all(check_against_plain(&split));
    }

    #[test]
    fn pd_projection_takes_vertices() {
        let split = split_idempotent(&gallery::pd_law());
        assert_eq!(split.strategy, SplitStrategy::NormalForm);
        let h = Rat::new(1, 2);
        let mid = Value::dist([(b(0), h), (b(1), h)]);
        let u = Value::set([Value::dirac(b(0)), mid, Value::dirac(b(1))]);
        let n = split.k.pi(&u);
        assert_eq!(split.k.iota(&n), Value::hull([Value::dirac(b(0)), Value::dirac(b(1))]));
    }
}
