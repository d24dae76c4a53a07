//! The catalogue of concrete laws, monad morphisms, and the derived laws
//! obtained by iterating them.

use crate::iterate::Triple;
use crate::kernel::{vfn, EqualityMode, Rat, Stage, Value, ValueFn};
use crate::laws::{Axiom, Law, LawClass, LawTag};
use crate::splitting::split_idempotent;
use crate::monads::{self, MonadDef, Monoid};
use crate::report::Check;

/// A monad morphism `γ : S ⇒ T`.
#[derive(Clone)]
pub struct MonadMorphism {
    pub name: String,
    pub source: MonadDef,
    pub target: MonadDef,
    pub component: ValueFn,
}

impl MonadMorphism {
    pub fn new(name: &str, source: MonadDef, target: MonadDef, component: ValueFn) -> MonadMorphism {
        MonadMorphism { name: name.into(), source, target, component }
    }

    pub fn apply(&self, v: &Value) -> Value {
        (self.component)(v)
    }

    /// Naturality, `γ ∘ η^S = η^T`, and `γ ∘ μ^S = μ^T ∘ γγ`.
    pub fn checks(&self) -> Vec<Check> {
        let (g1, g2, g3) = (self.component.clone(), self.component.clone(), self.component.clone());
        let (s1, s2, t1, t2) = (self.source.clone(), self.source.clone(), self.target.clone(), self.target.clone());
        vec![
            Check::naturality("natural", "γ natural", self.source.stage(), self.target.stage(), self.component.clone()),
            Check::equation("unit", "γ ∘ η^S = η^T", Stage::id(), vfn(move |x| g1(&s1.eta(x))), vfn(move |x| t1.eta(x))),
            Check::equation(
                "mult",
                "γ ∘ μ^S = μ^T ∘ γγ",
                self.source.stage().then(&self.source.stage()),
                vfn(move |v| g2(&s2.mu(v))),
                vfn(move |v| t2.mu(&t2.fmap(&|y| g3(y), &g3(v)))),
            ),
        ]
    }
}

/// The identity morphism of a monad.
pub fn identity_morphism(m: MonadDef) -> MonadMorphism {
    MonadMorphism::new(&format!("1_{}", m.name), m.clone(), m, vfn(Value::clone))
}

/// `supp : D ⇒ P`.
pub fn supp() -> MonadMorphism {
    MonadMorphism::new(
        "supp",
        monads::distribution(),
        monads::powerset(),
        vfn(|p| Value::set(p.dist_terms().expect("supp expects a distribution").iter().map(|(x, _)| x.clone()))),
    )
}

/// `â : R ⇒ 1`, evaluation at the label `a`.
pub fn eval_at(labels: usize, a: usize) -> MonadMorphism {
    MonadMorphism::new(
        &format!("eval{a}"),
        monads::reader(labels),
        monads::identity(),
        vfn(move |h| match h {
            Value::FuncOf(xs) => xs[a].clone(),
            _ => panic!("eval expects a reader value, got {h}"),
        }),
    )
}

/// `proj² : W ⇒ 1`.
pub fn proj2(monoid: Monoid) -> MonadMorphism {
    MonadMorphism::new(
        "proj2",
        monads::writer(monoid),
        monads::identity(),
        vfn(|v| match v {
            Value::PairOf(_, x) => (**x).clone(),
            _ => panic!("proj2 expects a writer value, got {v}"),
        }),
    )
}

/// The trivial law `η^S μ^T ∘ Tγ : [S,T]` of a morphism `γ : S ⇒ T`.
pub fn trivial_law(s: MonadDef, gamma: &MonadMorphism) -> Law {
    let t = gamma.target.clone();
    let (g, s2, t2) = (gamma.component.clone(), s.clone(), t.clone());
    Law::new(&format!("triv({})", gamma.name), s, t, vfn(move |x| s2.eta(&t2.mu(&t2.fmap(&|y| g(y), x)))))
}

/// The trivial law of `1_P : P ⇒ P`, sending `𝒰` to `{∪𝒰}`.
pub fn trivial_law_identity_p() -> Law {
    trivial_law(monads::powerset(), &identity_morphism(monads::powerset()))
}

/// The trivial law of `supp`, a law `[D,P]` sending `U` to `1·∪supp`.
pub fn trivial_law_supp() -> Law {
    trivial_law(monads::distribution(), &supp())
}

/// `η^W ∘ proj²` as a law `[W,1]`.
pub fn trivial_law_proj2(monoid: Monoid) -> Law {
    trivial_law(monads::writer(monoid.clone()), &proj2(monoid))
}

/// `η^R ∘ â` as a law `[R,1]`.
pub fn trivial_law_eval(labels: usize, a: usize) -> Law {
    trivial_law(monads::reader(labels), &eval_at(labels, a))
}

/// A law `[1,T]` given by an endomap `α : T ⇒ T`.
pub fn unit_left_law(name: &str, t: MonadDef, alpha: ValueFn) -> Law {
    Law::new(name, monads::identity(), t, alpha)
}

/// The law `[1,P]` sending every set to the empty set.
pub fn unit_left_empty() -> Law {
    unit_left_law("const-empty", monads::powerset(), vfn(|_| Value::set([])))
}

/// `ε^T : [T,E]`.
pub fn exception_law(t: MonadDef) -> Law {
    let t2 = t.clone();
    Law::new(
        &format!("eps<{}>", t.name),
        t,
        monads::exception(),
        vfn(move |x| match x {
            Value::InL(v) => t2.fmap(&|y| Value::inl(y.clone()), v),
            Value::InR => t2.eta(&Value::InR),
            _ => panic!("exception law expects an E value, got {x}"),
        }),
    )
}

/// `ρ^T : [R,T]`.
pub fn reader_law(t: MonadDef, labels: usize) -> Law {
    let t2 = t.clone();
    Law::new(
        &format!("rho<{}>", t.name),
        monads::reader(labels),
        t,
        vfn(move |z| {
            Value::FuncOf(
                (0..labels)
                    .map(|a| {
                        t2.fmap(
                            &|h| match h {
                                Value::FuncOf(xs) => xs[a].clone(),
                                _ => panic!("reader law expects reader values, got {h}"),
                            },
                            z,
                        )
                    })
                    .collect(),
            )
        }),
    )
}

/// `ω^T : [T,W]`.
pub fn writer_law(t: MonadDef, monoid: Monoid) -> Law {
    let t2 = t.clone();
    Law::new(
        &format!("omega:{}<{}>", monoid.name, t.name),
        t,
        monads::writer(monoid),
        vfn(move |v| match v {
            Value::PairOf(m, inner) => t2.fmap(&|x| Value::PairOf(m.clone(), Box::new(x.clone())), inner),
            _ => panic!("writer law expects a W value, got {v}"),
        }),
    )
}

/// Sets `V ⊆ ∪𝒰` meeting every member of `𝒰`, keeping only nonempty `V`
/// when `nonempty` is set.
fn hitting_sets(family: &Value, nonempty: bool) -> Value {
    let members = family.members().expect("expects a set of sets");
    let mut union: Vec<Value> =
        members.iter().flat_map(|u| u.members().expect("expects a set of sets").to_vec()).collect();
    union.sort();
    union.dedup();
    assert!(union.len() < 20, "union of {} elements is too large", union.len());
    let mut out = Vec::new();
    for mask in 0u32..(1 << union.len()) {
        if nonempty && mask == 0 {
            continue;
        }
        let v: Vec<Value> = (0..union.len()).filter(|i| mask & (1 << i) != 0).map(|i| union[i].clone()).collect();
        if members.iter().all(|u| u.members().unwrap().iter().any(|x| v.binary_search(x).is_ok())) {
            out.push(Value::SetOf(v));
        }
    }
    Value::set(out)
}

/// The law `[P,P]` sending `𝒰` to the sets meeting every member of `𝒰`.
pub fn pp_law() -> Law {
    Law::new("pp", monads::powerset(), monads::powerset(), vfn(|u| hitting_sets(u, false)))
}

/// The same formula as a law `[P,P*]`.
pub fn pp_star_law() -> Law {
    Law::new("pp*", monads::powerset(), monads::nonempty_powerset(), vfn(|u| hitting_sets(u, true)))
}

/// Generators `Σ p_i δ_{c(i)}` over all choices `c(i)` among the options
/// of term `i`. Empty when some term has no options.
pub fn choice_generators(terms: &[(Vec<Value>, Rat)]) -> Vec<Value> {
    let mut partial: Vec<Vec<(Value, Rat)>> = vec![Vec::new()];
    for (options, p) in terms {
        let mut next = Vec::with_capacity(partial.len() * options.len());
        for acc in &partial {
            for c in options {
                let mut a = acc.clone();
                a.push((c.clone(), *p));
                next.push(a);
            }
        }
        partial = next;
    }
    partial.into_iter().map(Value::dist).collect()
}

fn set_terms(p: &Value) -> Vec<(Vec<Value>, Rat)> {
    p.dist_terms()
        .expect("expects a distribution of sets")
        .iter()
        .map(|(u, w)| (u.members().expect("expects a distribution of sets").to_vec(), *w))
        .collect()
}

/// The law `[P,D]`: the convex hull of `Σ p_i δ_{c(i)}` over choices
/// `c(i) ∈ U_i`.
pub fn pd_law() -> Law {
    Law::new(
        "pd",
        monads::powerset(),
        monads::distribution(),
        vfn(|p| Value::hull(choice_generators(&set_terms(p)))),
    )
}

/// The identity law `[1,T]`.
pub fn identity_law_left(t: MonadDef) -> Law {
    unit_left_law(&format!("1<{}>", t.name), t, vfn(Value::clone))
}

/// Gallery laws with the classification they are registered under.
pub fn registered_laws() -> Vec<(Law, LawTag)> {
    use LawTag::*;
    let mut out = vec![
        (pp_law(), Weak),
        (pd_law(), Weak),
        (pp_star_law(), Weak),
        (trivial_law_identity_p(), Weak),
        (trivial_law_supp(), Weak),
        (trivial_law_proj2(Monoid::z2()), Weak),
        (trivial_law_eval(2, 0), Weak),
    ];
    for t in distributive_targets() {
        out.push((exception_law(t.clone()), Distributive));
        out.push((reader_law(t.clone(), 2), Distributive));
        for m in [Monoid::z2(), Monoid::rz3()] {
            out.push((writer_law(t.clone(), m), Distributive));
        }
    }
    out
}

/// The builtin monads the generic laws are instantiated at.
pub fn distributive_targets() -> Vec<MonadDef> {
    vec![
        monads::identity(),
        monads::exception(),
        monads::reader(2),
        monads::writer(Monoid::z2()),
        monads::writer(Monoid::rz3()),
        monads::powerset(),
        monads::distribution(),
    ]
}

/// Looks up a registered law by name.
pub fn law_by_name(name: &str) -> Option<(Law, LawTag)> {
    registered_laws().into_iter().find(|(l, _)| l.name == name)
}

/// `(S, T, E)` with `σ = λ`, `τ = ε^S`, and `ε^T` on the right.
pub fn exception_triple(law: Law, tag: LawTag) -> Triple {
    let (s, t) = (law.s.clone(), law.t.clone());
    Triple::new(&format!("exc<{}>", law.name), law, exception_law(s), exception_law(t), [tag, LawTag::Distributive, LawTag::Distributive])
        .expect("exception triple is well typed")
}

/// `(R, S, T)` with `σ = ρ^S`, `τ = ρ^T`, and the given `λ`.
pub fn reader_triple(law: Law, tag: LawTag, labels: usize) -> Triple {
    let (s, t) = (law.s.clone(), law.t.clone());
    Triple::new(
        &format!("reader{labels}<{}>", law.name),
        reader_law(s, labels),
        reader_law(t, labels),
        law,
        [LawTag::Distributive, LawTag::Distributive, tag],
    )
    .expect("reader triple is well typed")
}

/// `(S, T, W)` with `σ = λ`, `τ = ω^S`, and `ω^T` on the right.
pub fn writer_triple(law: Law, tag: LawTag, monoid: Monoid) -> Triple {
    let (s, t) = (law.s.clone(), law.t.clone());
    Triple::new(
        &format!("writer:{}<{}>", monoid.name, law.name),
        law,
        writer_law(s, monoid.clone()),
        writer_law(t, monoid),
        [tag, LawTag::Distributive, LawTag::Distributive],
    )
    .expect("writer triple is well typed")
}

/// `(R, D, P)` with `σ = ρ^D`, `τ = ρ^P`, and the trivial law of `supp`.
pub fn trivial_first_triple() -> Triple {
    Triple::new(
        "triv-first<supp>",
        reader_law(monads::distribution(), 2),
        reader_law(monads::powerset(), 2),
        trivial_law_supp(),
        [LawTag::Distributive, LawTag::Distributive, LawTag::Weak],
    )
    .expect("well typed")
}

/// `(D, P, P)` with `σ` the trivial law of `supp`, `τ` the same, and `λ`
/// the trivial law of `1_P`.
pub fn trivial_second_triple() -> Triple {
    Triple::new(
        "triv-second<supp>",
        trivial_law_supp(),
        trivial_law_supp(),
        trivial_law_identity_p(),
        [LawTag::Weak, LawTag::Weak, LawTag::Weak],
    )
    .expect("well typed")
}

/// `(P, P*, E)`: the triple that rebuilds the `[P,P]` law.
pub fn pstar_triple() -> Triple {
    exception_triple(pp_star_law(), LawTag::Weak)
}

/// `(1, S, T)`: identity laws on the left.
pub fn identity_left_triple(law: Law, tag: LawTag) -> Triple {
    let (s, t) = (law.s.clone(), law.t.clone());
    Triple::new(
        &format!("id<{}>", law.name),
        identity_law_left(s),
        identity_law_left(t),
        law,
        [LawTag::Distributive, LawTag::Distributive, tag],
    )
    .expect("well typed")
}

/// `(R, P, E)` with every law distributive.
pub fn all_distributive_triple() -> Triple {
    Triple::new(
        "distributive<R,P,E>",
        reader_law(monads::powerset(), 2),
        reader_law(monads::exception(), 2),
        exception_law(monads::powerset()),
        [LawTag::Distributive; 3],
    )
    .expect("well typed")
}

/// Registered triples by name.
pub fn registered_triples() -> Vec<Triple> {
    vec![
        exception_triple(pp_law(), LawTag::Weak),
        exception_triple(pd_law(), LawTag::Weak),
        reader_triple(pd_law(), LawTag::Weak, 2),
        writer_triple(pd_law(), LawTag::Weak, Monoid::z2()),
        writer_triple(pp_law(), LawTag::Weak, Monoid::rz3()),
        trivial_first_triple(),
        trivial_second_triple(),
        pstar_triple(),
        identity_left_triple(pp_law(), LawTag::Weak),
        all_distributive_triple(),
    ]
}

pub fn triple_by_name(name: &str) -> Option<Triple> {
    registered_triples().into_iter().find(|t| t.name == name)
}

fn prefix_all(prefix: &str, checks: Vec<Check>) -> Vec<Check> {
    checks.into_iter().map(|c| c.prefixed(&format!("{prefix}/"))).collect()
}

/// The four Yang-Baxter proposition families. Hypotheses come first in
/// each instance, then the equation itself.
pub fn yb_proposition_suites() -> Vec<Check> {
    let mut out = Vec::new();

    // Trivial law on the right: σ distributive, γ compatible with σ, τ.
    let tr = trivial_first_triple();
    let mut hyp = supp().checks();
    hyp.extend(tr.sigma.axiom_checks(LawClass::of_tag(LawTag::Distributive).unwrap()));
    let (g1, g2, r) = (supp().component, supp().component, monads::reader(2));
    let (sg, tu) = (tr.sigma.lambda.clone(), tr.tau.lambda.clone());
    hyp.push(Check::equation(
        "compat",
        "Rγ ∘ σ = τ ∘ γR",
        monads::distribution().stage().then(&r.stage()),
        vfn(move |x| r.fmap(&|y| g1(y), &sg(x))),
        vfn(move |x| tu(&g2(x))),
    ));
    hyp.push(tr.check_yang_baxter());
    out.extend(prefix_all("trivial-first", hyp));

    // Trivial law on the left: λ weak, γ compatible with τ and λ.
    let tr = trivial_second_triple();
    let mut hyp = supp().checks();
    hyp.extend(tr.lambda.axiom_checks(LawClass::of_tag(LawTag::Weak).unwrap()));
    let (g1, g2, p) = (supp().component, supp().component, monads::powerset());
    let (tu, lm) = (tr.tau.lambda.clone(), tr.lambda.lambda.clone());
    hyp.push(Check::equation(
        "compat",
        "γT ∘ τ = λ ∘ Tγ",
        p.stage().then(&monads::distribution().stage()),
        vfn(move |x| g1(&tu(x))),
        vfn(move |x| lm(&p.fmap(&|y| g2(y), x))),
    ));
    hyp.push(tr.check_yang_baxter());
    out.extend(prefix_all("trivial-second", hyp));

    // Exceptions: λ needs (η+) or (η−).
    for (law, tag) in [(pp_law(), LawTag::Weak), (pd_law(), LawTag::Weak), (pp_star_law(), LawTag::Weak)] {
        let hyp = vec![law.check_axiom(Axiom::EtaPlus).prefixed("hyp-"), exception_triple(law.clone(), tag).check_yang_baxter()];
        out.extend(prefix_all(&format!("exception<{}>", law.name), hyp));
    }

    // Reader and writer: any natural λ, law or not.
    let naturals: Vec<(Law, LawTag)> =
        vec![(pd_law(), LawTag::Weak), (pp_law(), LawTag::Weak), (const_empty_pp(), LawTag::None)];
    for (law, tag) in &naturals {
        let tr = reader_triple(law.clone(), *tag, 2);
        let hyp = vec![law.nat().check_naturality().prefixed("hyp-"), tr.check_yang_baxter()];
        out.extend(prefix_all(&format!("reader<{}>", law.name), hyp));
    }
    for (law, tag) in &naturals {
        for m in [Monoid::z2(), Monoid::rz3()] {
            let tr = writer_triple(law.clone(), *tag, m.clone());
            let hyp = vec![law.nat().check_naturality().prefixed("hyp-"), tr.check_yang_baxter()];
            out.extend(prefix_all(&format!("writer:{}<{}>", m.name, law.name), hyp));
        }
    }
    out
}

/// A natural transformation `PP ⇒ PP` that is not a law: everything goes
/// to the empty set.
pub fn const_empty_pp() -> Law {
    Law::new("const-empty-pp", monads::powerset(), monads::powerset(), vfn(|_| Value::set([])))
}

/// `Σ p_i e_i ↦ hull of Σ p_i δ_{c(i)}` where `c(i) ∈ inl U_i` for
/// `e_i = inl U_i` and `c(i) = inr` for `e_i = inr`.
pub fn subdistribution_direct(p: &Value) -> Value {
    let terms: Vec<(Vec<Value>, Rat)> = p
        .dist_terms()
        .expect("expects a distribution")
        .iter()
        .map(|(e, w)| match e {
            Value::InL(u) => (u.members().expect("expects sets").iter().cloned().map(Value::inl).collect(), *w),
            Value::InR => (vec![Value::InR], *w),
            _ => panic!("expects an exception value, got {e}"),
        })
        .collect();
    Value::hull(choice_generators(&terms))
}

/// The reader closed form: `a ↦ hull of Σ p_h δ_{c(h)}` with `c(h) ∈ h(a)`.
pub fn reader_closed_form(p: &Value, labels: usize) -> Value {
    let terms = p.dist_terms().expect("expects a distribution");
    Value::FuncOf(
        (0..labels)
            .map(|a| {
                let ts: Vec<(Vec<Value>, Rat)> = terms
                    .iter()
                    .map(|(h, w)| match h {
                        Value::FuncOf(xs) => (xs[a].members().expect("expects sets").to_vec(), *w),
                        _ => panic!("expects a reader value, got {h}"),
                    })
                    .collect();
                Value::hull(choice_generators(&ts))
            })
            .collect(),
    )
}

/// The writer closed form: hull of `Σ p_ij δ_{(m_i, c(ij))}` with
/// `c(ij) ∈ U_j`.
pub fn writer_closed_form(p: &Value) -> Value {
    let terms: Vec<(Vec<Value>, Rat)> = p
        .dist_terms()
        .expect("expects a distribution")
        .iter()
        .map(|(v, w)| match v {
            Value::PairOf(m, u) => (
                u.members().expect("expects sets").iter().map(|x| Value::PairOf(m.clone(), Box::new(x.clone()))).collect(),
                *w,
            ),
            _ => panic!("expects a writer value, got {v}"),
        })
        .collect();
    Value::hull(choice_generators(&terms))
}

/// `P X → P*E X`: `U ↦ {inl u : u ∈ U} ∪ {inr}`.
fn embed_in_pstar_e(u: &Value) -> Value {
    let mut xs: Vec<Value> = u.members().expect("expects a set").iter().cloned().map(Value::inl).collect();
    xs.push(Value::InR);
    Value::set(xs)
}

/// `P*E X → P X`: keep the non-exceptional elements.
fn drop_exception(v: &Value) -> Value {
    Value::set(v.members().expect("expects a set").iter().filter_map(|x| match x {
        Value::InL(y) => Some((**y).clone()),
        _ => None,
    }))
}

/// The four derived-law comparisons.
pub fn derived_law_checks() -> Vec<Check> {
    let mut out = Vec::new();
    let p = monads::powerset();
    let semantic = EqualityMode::Semantic;

    // (a) ψ of the exception triple around pd against the direct formula.
    let tr = exception_triple(pd_law(), LawTag::Weak);
    let split = split_idempotent(&tr.lambda);
    let psi = tr.compose_second(&split);
    let (i1, i2, p1) = (split.iota(), split.iota(), p.clone());
    out.push(
        Check::equation(
            "subdistribution",
            "λE ∘ Dε^P : [P, D∘E] as in the [P,D] display",
            split.stage().then(&p.stage()),
            vfn(move |x| p1.fmap(&|y| i1(y), &(psi.lambda)(x))),
            vfn(move |x| subdistribution_direct(&i2(x))),
        )
        .with_mode(semantic),
    );

    // (b) the [P,P] law rebuilt from ε^P, ε^{P*} and the [P,P*] law.
    let tr = pstar_triple();
    let split = split_idempotent(&tr.lambda);
    let psi = tr.compose_second(&split);
    let (pi, iota, p1) = (split.pi(), split.iota(), p.clone());
    let pp = pp_law();
    out.push(Check::equation(
        "pstar-decomposition",
        "[P,P] as an iterated law through P = P*∘E",
        p.stage().then(&p.stage()),
        vfn(move |u| pp.apply(u)),
        vfn(move |u| {
            let x = pi(&embed_in_pstar_e(u));
            p1.fmap(&|v| drop_exception(&iota(v)), &(psi.lambda)(&x))
        }),
    ));

    // (c) φ of the reader triple around pd against its closed form.
    for labels in [1, 2] {
        let tr = reader_triple(pd_law(), LawTag::Weak, labels);
        let split = split_idempotent(&tr.sigma);
        let phi = tr.compose_first(&split);
        let (i1, i2, d) = (split.iota(), split.iota(), monads::distribution());
        out.push(
            Check::equation(
                &format!("reader-closed-form-A{labels}"),
                "φ(Σ p_h h) = a ↦ {Σ p_h q^h | supp(q^h) ⊆ h(a)}",
                d.stage().then(&split.stage()),
                vfn(move |x| i1(&(phi.lambda)(x))),
                vfn(move |x| reader_closed_form(&d.fmap(&|h| i2(h), x), labels)),
            )
            .with_mode(semantic),
        );
    }

    // (d) ψ of the writer triple around pd against its closed form.
    for m in [Monoid::z2(), Monoid::rz3()] {
        let tr = writer_triple(pd_law(), LawTag::Weak, m.clone());
        let split = split_idempotent(&tr.lambda);
        let psi = tr.compose_second(&split);
        let (i1, i2, p1) = (split.iota(), split.iota(), p.clone());
        out.push(
            Check::equation(
                &format!("writer-closed-form-{}", m.name),
                "ψ(Σ p_ij (m_i,U_j)) = {Σ p_ij q^ij | supp(q^ij) ⊆ {(m_i,x) | x ∈ U_j}}",
                split.stage().then(&p.stage()),
                vfn(move |x| p1.fmap(&|y| i1(y), &(psi.lambda)(x))),
                vfn(move |x| writer_closed_form(&i2(x))),
            )
            .with_mode(semantic),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::RunConfig;

    fn b(i: u32) -> Value {
        Value::Base(i)
    }

    #[test]
    fn pp_law_on_small_family() {
        let u = Value::set([Value::set([b(0)]), Value::set([b(0), b(1)])]);
        let out = pp_law().apply(&u);
        assert_eq!(out, Value::set([Value::set([b(0)]), Value::set([b(0), b(1)])]));
        assert_eq!(pp_law().apply(&Value::set([])), Value::set([Value::set([])]));
        assert_eq!(pp_law().apply(&Value::set([Value::set([])])), Value::set([]));
    }

    #[test]
    fn pd_law_picks_vertices() {
        let h = Rat::new(1, 2);
        let p = Value::dist([(Value::set([b(0), b(1)]), h), (Value::set([b(2)]), h)]);
        let out = pd_law().apply(&p);
        assert_eq!(out.members().unwrap().len(), 2);
        let empty = Value::dist([(Value::set([]), Rat::one())]);
        assert_eq!(pd_law().apply(&empty), Value::hull([]));
    }

    #[test]
    fn morphisms_are_monad_morphisms() {
        let cfg = RunConfig::default();
        for g in [supp(), eval_at(2, 0), proj2(Monoid::z2()), identity_morphism(monads::powerset())] {
            for c in g.checks() {
                let r = c.run("t", &cfg);
                assert!(r.passed(), "{}: {r}", g.name);
            }
        }
    }
}
