//! The builtin monads on finite sets and a generic monad-law checker.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::kernel::{
    pool_distributions, vfn, Functor, FunctorRef, KernelError, PoolParams, Rat, Stage, Symbol, Value, ValueFn,
};
use crate::report::Check;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonadError {
    #[error("invalid monoid {name}: {reason}")]
    InvalidMonoid { name: String, reason: String },
    #[error("unknown monad '{0}'")]
    UnknownMonad(String),
}

fn shape(stage: &str, v: &Value) -> KernelError {
    KernelError::Shape { stage: stage.to_string(), value: v.to_string() }
}

fn bad_shape(stage: &str, v: &Value) -> ! {
    panic!("value {v} does not have the shape of {stage}")
}

/// All subsets of `atoms`, in canonical order.
fn all_subsets(atoms: &[Value], nonempty: bool) -> Vec<Value> {
    let n = atoms.len();
    let mut out: Vec<Value> = (0..1u64 << n)
        .filter(|&mask| !(nonempty && mask == 0))
        .map(|mask| Value::set((0..n).filter(|i| mask >> i & 1 == 1).map(|i| atoms[i].clone())))
        .collect();
    out.sort();
    out
}

/// All tuples of length `k` over `atoms`.
fn all_tuples(atoms: &[Value], k: usize) -> Vec<Vec<Value>> {
    let mut out: Vec<Vec<Value>> = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                atoms.iter().map(move |a| {
                    let mut t = t.clone();
                    t.push(a.clone());
                    t
                })
            })
            .collect();
    }
    out
}

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut r: usize = 1;
    for _ in 0..exp {
        r = r.checked_mul(base)?;
    }
    Some(r)
}

/// The identity functor.
pub struct IdF;

impl Functor for IdF {
    fn symbol(&self) -> Symbol {
        Symbol::Id
    }
    fn fmap(&self, f: &dyn Fn(&Value) -> Value, v: &Value) -> Value {
        f(v)
    }
    fn enumerate_over(&self, atoms: &[Value], _cap: usize) -> Option<Vec<Value>> {
        Some(atoms.to_vec())
    }
    fn sample_over(&self, atoms: &[Value], _p: &PoolParams, _rng: &mut ChaCha8Rng) -> Vec<Value> {
        atoms.to_vec()
    }
    fn canonicalize(
        &self,
        v: &Value,
        inner: &dyn Fn(&Value) -> Result<Value, KernelError>,
    ) -> Result<Value, KernelError> {
        inner(v)
    }
}

/// Finite powerset, or non-empty finite powerset when `nonempty` is set.
///
/// Both literal sets and generated convex sets (`Hull`) live here; the
/// functor action keeps the kind of its argument.
pub struct PowF {
    pub nonempty: bool,
}

impl PowF {
    fn name(&self) -> &'static str {
        if self.nonempty {
            "P*"
        } else {
            "P"
        }
    }
}

impl Functor for PowF {
    fn symbol(&self) -> Symbol {
        if self.nonempty {
            Symbol::PStar
        } else {
            Symbol::P
        }
    }

    fn fmap(&self, f: &dyn Fn(&Value) -> Value, v: &Value) -> Value {
        match v {
            Value::SetOf(xs) => Value::set(xs.iter().map(f)),
            Value::Hull(xs) => Value::hull(xs.iter().map(f)),
            _ => bad_shape(self.name(), v),
        }
    }

    fn enumerate_over(&self, atoms: &[Value], cap: usize) -> Option<Vec<Value>> {
        if atoms.len() >= 63 || (1u64 << atoms.len()) > cap as u64 {
            return None;
        }
        Some(all_subsets(atoms, self.nonempty))
    }

    fn sample_over(&self, atoms: &[Value], params: &PoolParams, rng: &mut ChaCha8Rng) -> Vec<Value> {
        let n = atoms.len();
        if n < 20 && (1usize << n) <= params.count {
            return all_subsets(atoms, self.nonempty);
        }
        let mut out = Vec::new();
        if !self.nonempty {
            out.push(Value::set([]));
        }
        out.extend(atoms.iter().take(params.count / 2).map(|a| Value::set([a.clone()])));
        let kmax = params.support_bound.min(n).max(1);
        let mut tries = 0;
        while out.len() < params.count && tries < 8 * params.count {
            tries += 1;
            let k = rng.gen_range(1..=kmax);
            out.push(Value::set(atoms.choose_multiple(rng, k).cloned()));
            out.sort();
            out.dedup();
        }
        out
    }

    fn canonicalize(
        &self,
        v: &Value,
        inner: &dyn Fn(&Value) -> Result<Value, KernelError>,
    ) -> Result<Value, KernelError> {
        let (xs, hull) = match v {
            Value::SetOf(xs) => (xs, false),
            Value::Hull(xs) => (xs, true),
            _ => return Err(shape(self.name(), v)),
        };
        if self.nonempty && xs.is_empty() {
            return Err(shape(self.name(), v));
        }
        let xs = xs.iter().map(inner).collect::<Result<Vec<_>, _>>()?;
        Ok(if hull { Value::hull(xs) } else { Value::set(xs) })
    }
}

/// Finitely supported distributions with rational weights.
pub struct DistF;

impl Functor for DistF {
    fn symbol(&self) -> Symbol {
        Symbol::D
    }

    fn fmap(&self, f: &dyn Fn(&Value) -> Value, v: &Value) -> Value {
        match v {
            Value::DistOf(ts) => Value::dist(ts.iter().map(|(x, w)| (f(x), *w))),
            _ => bad_shape("D", v),
        }
    }

    fn enumerate_over(&self, _atoms: &[Value], _cap: usize) -> Option<Vec<Value>> {
        None
    }

    fn sample_over(&self, atoms: &[Value], params: &PoolParams, rng: &mut ChaCha8Rng) -> Vec<Value> {
        pool_distributions(atoms, params, rng)
    }

    fn canonicalize(
        &self,
        v: &Value,
        inner: &dyn Fn(&Value) -> Result<Value, KernelError>,
    ) -> Result<Value, KernelError> {
        let Value::DistOf(ts) = v else {
            return Err(shape("D", v));
        };
        let total: Rat = ts.iter().map(|(_, w)| *w).sum();
        if ts.iter().any(|(_, w)| w.is_negative()) || !total.is_one() {
            return Err(KernelError::Weight { value: v.to_string() });
        }
        let ts = ts.iter().map(|(x, w)| Ok((inner(x)?, *w))).collect::<Result<Vec<_>, KernelError>>()?;
        Ok(Value::dist(ts))
    }

    fn contains_distribution(&self) -> bool {
        true
    }
}

/// The exception functor `X + 1`.
pub struct ExcF;

impl Functor for ExcF {
    fn symbol(&self) -> Symbol {
        Symbol::E
    }

    fn fmap(&self, f: &dyn Fn(&Value) -> Value, v: &Value) -> Value {
        match v {
            Value::InL(x) => Value::inl(f(x)),
            Value::InR => Value::InR,
            _ => bad_shape("E", v),
        }
    }

    fn enumerate_over(&self, atoms: &[Value], _cap: usize) -> Option<Vec<Value>> {
        let mut out: Vec<Value> = atoms.iter().cloned().map(Value::inl).collect();
        out.push(Value::InR);
        Some(out)
    }

    fn sample_over(&self, atoms: &[Value], _p: &PoolParams, _rng: &mut ChaCha8Rng) -> Vec<Value> {
        self.enumerate_over(atoms, usize::MAX).unwrap_or_default()
    }

    fn canonicalize(
        &self,
        v: &Value,
        inner: &dyn Fn(&Value) -> Result<Value, KernelError>,
    ) -> Result<Value, KernelError> {
        match v {
            Value::InL(x) => Ok(Value::inl(inner(x)?)),
            Value::InR => Ok(Value::InR),
            _ => Err(shape("E", v)),
        }
    }
}

/// The reader functor `X^A` for a label carrier `A` of `labels` elements.
pub struct ReaderF {
    pub labels: usize,
}

impl Functor for ReaderF {
    fn symbol(&self) -> Symbol {
        Symbol::R(self.labels)
    }

    fn fmap(&self, f: &dyn Fn(&Value) -> Value, v: &Value) -> Value {
        match v {
            Value::FuncOf(xs) => Value::FuncOf(xs.iter().map(f).collect()),
            _ => bad_shape("R", v),
        }
    }

    fn enumerate_over(&self, atoms: &[Value], cap: usize) -> Option<Vec<Value>> {
        if checked_pow(atoms.len(), self.labels)? > cap {
            return None;
        }
        let mut out: Vec<Value> = all_tuples(atoms, self.labels).into_iter().map(Value::FuncOf).collect();
        out.sort();
        Some(out)
    }

    fn sample_over(&self, atoms: &[Value], params: &PoolParams, rng: &mut ChaCha8Rng) -> Vec<Value> {
        if let Some(all) = self.enumerate_over(atoms, params.count) {
            return all;
        }
        let mut out: Vec<Value> =
            atoms.iter().take(params.count / 2).map(|a| Value::FuncOf(vec![a.clone(); self.labels])).collect();
        let mut tries = 0;
        while out.len() < params.count && tries < 8 * params.count {
            tries += 1;
            out.push(Value::FuncOf((0..self.labels).map(|_| atoms.choose(rng).unwrap().clone()).collect()));
            out.sort();
            out.dedup();
        }
        out
    }

    fn canonicalize(
        &self,
        v: &Value,
        inner: &dyn Fn(&Value) -> Result<Value, KernelError>,
    ) -> Result<Value, KernelError> {
        match v {
            Value::FuncOf(xs) if xs.len() == self.labels => {
                Ok(Value::FuncOf(xs.iter().map(inner).collect::<Result<_, _>>()?))
            }
            _ => Err(shape(&format!("R{}", self.labels), v)),
        }
    }
}

/// A finite monoid given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monoid {
    pub name: String,
    pub elements: Vec<Arc<str>>,
    pub unit: usize,
    table: Vec<Vec<usize>>,
}

impl Monoid {
    /// Builds a monoid, checking the unit laws and associativity.
    pub fn new(name: &str, elements: &[&str], unit: usize, table: Vec<Vec<usize>>) -> Result<Monoid, MonadError> {
        let invalid = |reason: String| MonadError::InvalidMonoid { name: name.to_string(), reason };
        let n = elements.len();
        if unit >= n {
            return Err(invalid("unit is not an element".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(invalid("table is not a total operation".into()));
        }
        for x in 0..n {
            if table[unit][x] != x || table[x][unit] != x {
                return Err(invalid(format!("unit law fails at {}", elements[x])));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        let e = |i: usize| elements[i];
                        return Err(invalid(format!("associativity fails at ({}, {}, {})", e(x), e(y), e(z))));
                    }
                }
            }
        }
        Ok(Monoid { name: name.to_string(), elements: elements.iter().map(|&s| Arc::from(s)).collect(), unit, table })
    }

    /// The group of order two, `{e, g}`.
    pub fn z2() -> Monoid {
        Monoid::new("z2", &["e", "g"], 0, vec![vec![0, 1], vec![1, 0]]).expect("valid fixture")
    }

    /// `{e, s, t}` where any product of two non-units is the right factor.
    pub fn rz3() -> Monoid {
        Monoid::new("rz3", &["e", "s", "t"], 0, vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 1, 2]])
            .expect("valid fixture")
    }

    pub fn by_name(name: &str) -> Option<Monoid> {
        match name {
            "z2" => Some(Monoid::z2()),
            "rz3" => Some(Monoid::rz3()),
            _ => None,
        }
    }

    pub fn index(&self, m: &str) -> Option<usize> {
        self.elements.iter().position(|e| &**e == m)
    }

    pub fn unit_name(&self) -> Arc<str> {
        self.elements[self.unit].clone()
    }

    pub fn mul(&self, a: &str, b: &str) -> Arc<str> {
        let i = self.index(a).unwrap_or_else(|| panic!("{a} is not in monoid {}", self.name));
        let j = self.index(b).unwrap_or_else(|| panic!("{b} is not in monoid {}", self.name));
        self.elements[self.table[i][j]].clone()
    }
}

/// The writer functor `M × X`.
pub struct WriterF {
    pub monoid: Monoid,
}

impl Functor for WriterF {
    fn symbol(&self) -> Symbol {
        Symbol::W(self.monoid.name.clone())
    }

    fn fmap(&self, f: &dyn Fn(&Value) -> Value, v: &Value) -> Value {
        match v {
            Value::PairOf(m, x) => Value::PairOf(m.clone(), Box::new(f(x))),
            _ => bad_shape("W", v),
        }
    }

    fn enumerate_over(&self, atoms: &[Value], cap: usize) -> Option<Vec<Value>> {
        if self.monoid.elements.len().checked_mul(atoms.len())? > cap {
            return None;
        }
        let mut out: Vec<Value> = self
            .monoid
            .elements
            .iter()
            .flat_map(|m| atoms.iter().map(move |a| Value::PairOf(m.clone(), Box::new(a.clone()))))
            .collect();
        out.sort();
        Some(out)
    }

    fn sample_over(&self, atoms: &[Value], params: &PoolParams, rng: &mut ChaCha8Rng) -> Vec<Value> {
        if let Some(all) = self.enumerate_over(atoms, params.count) {
            return all;
        }
        let e = self.monoid.unit_name();
        let mut out: Vec<Value> =
            atoms.iter().take(params.count / 2).map(|a| Value::PairOf(e.clone(), Box::new(a.clone()))).collect();
        let mut tries = 0;
        while out.len() < params.count && tries < 8 * params.count {
            tries += 1;
            let m = self.monoid.elements.choose(rng).unwrap().clone();
            out.push(Value::PairOf(m, Box::new(atoms.choose(rng).unwrap().clone())));
            out.sort();
            out.dedup();
        }
        out
    }

    fn canonicalize(
        &self,
        v: &Value,
        inner: &dyn Fn(&Value) -> Result<Value, KernelError>,
    ) -> Result<Value, KernelError> {
        match v {
            Value::PairOf(m, x) if self.monoid.index(m).is_some() => Ok(Value::PairOf(m.clone(), Box::new(inner(x)?))),
            _ => Err(shape(&format!("W({})", self.monoid.name), v)),
        }
    }
}

/// The constant functor at a carrier of `size` elements.
pub struct ConstF {
    pub size: usize,
}

impl Functor for ConstF {
    fn symbol(&self) -> Symbol {
        Symbol::Const(self.size)
    }

    fn fmap(&self, _f: &dyn Fn(&Value) -> Value, v: &Value) -> Value {
        v.clone()
    }

    fn enumerate_over(&self, _atoms: &[Value], _cap: usize) -> Option<Vec<Value>> {
        Some((0..self.size as u32).map(Value::Base).collect())
    }

    fn sample_over(&self, _atoms: &[Value], _p: &PoolParams, _rng: &mut ChaCha8Rng) -> Vec<Value> {
        (0..self.size as u32).map(Value::Base).collect()
    }

    fn canonicalize(
        &self,
        v: &Value,
        _inner: &dyn Fn(&Value) -> Result<Value, KernelError>,
    ) -> Result<Value, KernelError> {
        match v {
            Value::Base(i) if (*i as usize) < self.size => Ok(v.clone()),
            _ => Err(shape(&format!("Const{}", self.size), v)),
        }
    }
}

/// A monad: a functor with unit and multiplication components.
#[derive(Clone)]
pub struct MonadDef {
    pub name: String,
    pub functor: FunctorRef,
    pub unit: ValueFn,
    pub mult: ValueFn,
    /// False for a bare functor, whose unit and multiplication must not be
    /// used.
    pub is_monad: bool,
}

impl MonadDef {
    /// A functor without monad structure.
    pub fn functor_only(name: &str, functor: FunctorRef) -> MonadDef {
        let n1 = name.to_string();
        let n2 = name.to_string();
        MonadDef {
            name: name.to_string(),
            functor,
            unit: vfn(move |_| panic!("{n1} is not a monad")),
            mult: vfn(move |_| panic!("{n2} is not a monad")),
            is_monad: false,
        }
    }

    /// The constant functor at a carrier of `size` elements.
    pub fn constant(size: usize) -> MonadDef {
        MonadDef::functor_only(&format!("const{size}"), Arc::new(ConstF { size }))
    }

    pub fn stage(&self) -> Stage {
        Stage::of(&self.functor)
    }

    pub fn symbol(&self) -> Symbol {
        self.functor.symbol()
    }

    pub fn fmap(&self, f: &dyn Fn(&Value) -> Value, v: &Value) -> Value {
        self.functor.fmap(f, v)
    }

    pub fn eta(&self, v: &Value) -> Value {
        (self.unit)(v)
    }

    pub fn mu(&self, v: &Value) -> Value {
        (self.mult)(v)
    }
}

impl std::fmt::Debug for MonadDef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MonadDef({})", self.name)
    }
}

pub fn identity() -> MonadDef {
    MonadDef { name: "id".into(), functor: Arc::new(IdF), unit: vfn(Value::clone), mult: vfn(Value::clone), is_monad: true }
}

fn union(v: &Value) -> Value {
    let outer = v.members().unwrap_or_else(|| bad_shape("PP", v));
    let mut hull = v.is_hull();
    let mut items = Vec::new();
    for u in outer {
        hull |= u.is_hull();
        items.extend(u.members().unwrap_or_else(|| bad_shape("PP", v)).iter().cloned());
    }
    if hull {
        Value::hull(items)
    } else {
        Value::set(items)
    }
}

pub fn powerset() -> MonadDef {
    MonadDef {
        name: "pow".into(),
        functor: Arc::new(PowF { nonempty: false }),
        unit: vfn(|x| Value::set([x.clone()])),
        mult: vfn(union),
        is_monad: true,
    }
}

/// The non-empty powerset monad.
pub fn nonempty_powerset() -> MonadDef {
    MonadDef { name: "pstar".into(), functor: Arc::new(PowF { nonempty: true }), ..powerset() }
}

pub fn distribution() -> MonadDef {
    MonadDef {
        name: "dist".into(),
        functor: Arc::new(DistF),
        unit: vfn(|x| Value::dirac(x.clone())),
        mult: vfn(|v| {
            let outer = v.dist_terms().unwrap_or_else(|| bad_shape("DD", v));
            Value::dist(outer.iter().flat_map(|(p, q)| {
                p.dist_terms().unwrap_or_else(|| bad_shape("DD", v)).iter().map(move |(x, w)| (x.clone(), *q * *w))
            }))
        }),
        is_monad: true,
    }
}

pub fn exception() -> MonadDef {
    MonadDef {
        name: "exc".into(),
        functor: Arc::new(ExcF),
        unit: vfn(|x| Value::inl(x.clone())),
        mult: vfn(|v| match v {
            Value::InL(z) => (**z).clone(),
            Value::InR => Value::InR,
            _ => bad_shape("EE", v),
        }),
        is_monad: true,
    }
}

/// The reader monad over a label carrier with `labels` elements.
pub fn reader(labels: usize) -> MonadDef {
    MonadDef {
        name: format!("reader:A{labels}"),
        functor: Arc::new(ReaderF { labels }),
        unit: vfn(move |x| Value::FuncOf(vec![x.clone(); labels])),
        mult: vfn(|v| match v {
            Value::FuncOf(hs) => Value::FuncOf(
                hs.iter()
                    .enumerate()
                    .map(|(i, h)| match h {
                        Value::FuncOf(xs) => xs[i].clone(),
                        _ => bad_shape("RR", v),
                    })
                    .collect(),
            ),
            _ => bad_shape("RR", v),
        }),
        is_monad: true,
    }
}

pub fn writer(monoid: Monoid) -> MonadDef {
    let e = monoid.unit_name();
    let m2 = monoid.clone();
    MonadDef {
        name: format!("writer:{}", monoid.name),
        functor: Arc::new(WriterF { monoid }),
        unit: vfn(move |x| Value::PairOf(e.clone(), Box::new(x.clone()))),
        mult: vfn(move |v| match v {
            Value::PairOf(m, inner) => match &**inner {
                Value::PairOf(n, x) => Value::PairOf(m2.mul(m, n), x.clone()),
                _ => bad_shape("WW", v),
            },
            _ => bad_shape("WW", v),
        }),
        is_monad: true,
    }
}

/// Looks up a builtin monad by its command-line name.
pub fn builtin_monad(name: &str) -> Result<MonadDef, MonadError> {
    let unknown = || MonadError::UnknownMonad(name.to_string());
    match name {
        "id" | "identity" => Ok(identity()),
        "exc" | "exception" => Ok(exception()),
        "pow" | "powerset" => Ok(powerset()),
        "pstar" => Ok(nonempty_powerset()),
        "dist" | "distribution" => Ok(distribution()),
        _ => {
            if let Some(a) = name.strip_prefix("reader:A") {
                let n: usize = a.parse().map_err(|_| unknown())?;
                if n == 0 {
                    return Err(unknown());
                }
                Ok(reader(n))
            } else if let Some(m) = name.strip_prefix("writer:") {
                Ok(writer(Monoid::by_name(m).ok_or_else(unknown)?))
            } else {
                Err(unknown())
            }
        }
    }
}

/// The names of the six builtin monads with their default parameters.
pub const BUILTIN_NAMES: [&str; 7] = ["id", "exc", "reader:A2", "writer:z2", "writer:rz3", "pow", "dist"];

/// The unit and associativity laws of `m`, plus functoriality and
/// naturality of its unit and multiplication.
pub fn check_monad_laws(m: &MonadDef) -> Vec<Check> {
    let t = m.stage();
    let tt = t.then(&t);
    let ttt = tt.then(&t);
    let (m1, m2, m3, m4, m5, m6) = (m.clone(), m.clone(), m.clone(), m.clone(), m.clone(), m.clone());
    vec![
        Check::equation(
            "left-unit",
            "μ ∘ ηT = 1",
            t.clone(),
            vfn(move |x| m1.mu(&m1.eta(x))),
            vfn(Value::clone),
        ),
        Check::equation(
            "right-unit",
            "μ ∘ Tη = 1",
            t.clone(),
            vfn(move |x| m2.mu(&m2.fmap(&|y| m2.eta(y), x))),
            vfn(Value::clone),
        ),
        Check::equation(
            "assoc",
            "μ ∘ μT = μ ∘ Tμ",
            ttt,
            vfn(move |x| m3.mu(&m3.mu(x))),
            vfn(move |x| m4.mu(&m4.fmap(&|y| m4.mu(y), x))),
        ),
        Check::functoriality("functor", "T1 = 1, T(gf) = Tg ∘ Tf", t.clone()),
        Check::naturality("unit-natural", "η natural", Stage::id(), t.clone(), vfn(move |x| m5.eta(x))),
        Check::naturality("mult-natural", "μ natural", tt, t, vfn(move |x| m6.mu(x))),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(i: u32) -> Value {
        Value::Base(i)
    }

    #[test]
    fn powerset_mult_is_union() {
        let v = Value::set([Value::set([b(0)]), Value::set([b(0), b(1)])]);
        assert_eq!(powerset().mu(&v), Value::set([b(0), b(1)]));
    }

    #[test]
    fn distribution_mult_averages() {
        let h = Rat::new(1, 2);
        let inner = Value::dist([(b(0), h), (b(1), h)]);
        let v = Value::dist([(Value::dirac(b(0)), h), (inner, h)]);
        // 1/2 * 1 + 1/2 * 1/2 on a, 1/2 * 1/2 on b
        let expect = Value::dist([(b(0), Rat::new(3, 4)), (b(1), Rat::new(1, 4))]);
        assert_eq!(distribution().mu(&v), expect);
    }

    #[test]
    fn exception_mult_flattens() {
        assert_eq!(exception().mu(&Value::inl(Value::InR)), Value::InR);
        assert_eq!(exception().mu(&Value::InR), Value::InR);
    }

    #[test]
    fn reader_unit_is_constant() {
        assert_eq!(reader(2).eta(&b(0)), Value::FuncOf(vec![b(0), b(0)]));
        let h = Value::FuncOf(vec![Value::FuncOf(vec![b(0), b(1)]), Value::FuncOf(vec![b(2), b(3)])]);
        assert_eq!(reader(2).mu(&h), Value::FuncOf(vec![b(0), b(3)]));
    }

    #[test]
    fn writer_multiplies_tags() {
        let w = writer(Monoid::rz3());
        let v = Value::pair("t", Value::pair("s", b(0)));
        assert_eq!(w.mu(&v), Value::pair("s", b(0)));
    }

    #[test]
    fn monoid_validation() {
        assert!(Monoid::new("bad", &["e", "x"], 0, vec![vec![0, 1], vec![1, 1]]).is_ok());
        let err = Monoid::new("bad", &["e", "x"], 0, vec![vec![0, 1], vec![0, 0]]);
        assert!(matches!(err, Err(MonadError::InvalidMonoid { .. })));
        // left-zero-ish table that breaks associativity
        let t = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 2, 2]];
        assert!(Monoid::new("bad", &["e", "s", "t"], 0, t).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let x = Stage::of(&powerset().functor);
        assert_eq!(x.enumerate(2, 100).unwrap().len(), 4);
        assert_eq!(reader(2).stage().enumerate(2, 100).unwrap().len(), 4);
        assert_eq!(exception().stage().enumerate(3, 100).unwrap().len(), 4);
        assert_eq!(writer(Monoid::rz3()).stage().enumerate(2, 100).unwrap().len(), 6);
        let pd = powerset().stage().then(&distribution().stage());
        assert!(pd.enumerate(1, 100).is_none());
        assert_eq!(nonempty_powerset().stage().enumerate(2, 100).unwrap().len(), 3);
    }

    #[test]
    fn pools() {
        let d = distribution().stage();
        let params = PoolParams { seed: 0, denom_bound: 2, support_bound: 2, count: 3 };
        let pool = d.sample_pool(2, &params).unwrap();
        let h = Rat::new(1, 2);
        let mut expect = vec![Value::dirac(b(0)), Value::dirac(b(1)), Value::dist([(b(0), h), (b(1), h)])];
        expect.sort();
        assert_eq!(pool, expect);
        assert!(matches!(d.sample_pool(0, &params), Err(KernelError::EmptyStage { .. })));
        let p = powerset().stage();
        let params = PoolParams { count: 2, ..params };
        assert_eq!(p.sample_pool(1, &params).unwrap(), vec![Value::set([]), Value::set([b(0)])]);
    }

    #[test]
    fn canonicalize_examples() {
        let pd = powerset().stage().then(&distribution().stage());
        let h = Rat::new(1, 2);
        let v = Value::SetOf(vec![
            Value::DistOf(vec![(b(1), h), (b(0), h)]),
            Value::DistOf(vec![(b(0), h), (b(1), h)]),
        ]);
        let c = pd.canonicalize(&v).unwrap();
        assert_eq!(c.members().unwrap().len(), 1);
        let bad = Value::DistOf(vec![(b(0), h)]);
        assert!(matches!(distribution().stage().canonicalize(&bad), Err(KernelError::Weight { .. })));
        assert!(matches!(powerset().stage().canonicalize(&b(0)), Err(KernelError::Shape { .. })));
    }

    #[test]
    fn builtin_names_resolve() {
        for n in BUILTIN_NAMES {
            assert_eq!(builtin_monad(n).unwrap().name, n);
        }
        assert!(builtin_monad("writer:q7").is_err());
        assert!(builtin_monad("reader:A0").is_err());
    }

    #[test]
    fn builtins_satisfy_monad_laws() {
        let cfg = crate::report::RunConfig::default();
        for name in BUILTIN_NAMES.iter().chain(&["pstar"]) {
            let m = builtin_monad(name).unwrap();
            for c in check_monad_laws(&m) {
                let r = c.run("monads", &cfg);
                assert!(r.passed(), "{name}: {r}");
                assert!(r.inputs_tested > 0, "{name}: {r}");
            }
        }
    }

    #[test]
    fn intersection_is_not_a_monad_multiplication() {
        let mut m = powerset();
        m.mult = vfn(|v| {
            let us = v.members().unwrap();
            match us.split_first() {
                None => Value::set([]),
                Some((u, rest)) => Value::set(
                    u.members().unwrap().iter().filter(|x| rest.iter().all(|r| r.members().unwrap().contains(x))).cloned(),
                ),
            }
        });
        let reports: Vec<_> =
            check_monad_laws(&m).iter().map(|c| c.run("monads", &crate::report::RunConfig::default())).collect();
        assert!(reports.iter().any(|r| !r.passed() && r.witness.is_some()));
    }
}
