//! Functor symbols, composite stages, and the shared functor interface.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::value::Value;
use super::KernelError;

/// One functor symbol of a stage expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Id,
    P,
    /// Non-empty powerset.
    PStar,
    D,
    E,
    /// Reader over a label carrier of the given size.
    R(usize),
    /// Writer over the named monoid.
    W(String),
    /// Constant functor at a carrier of the given size.
    Const(usize),
    /// Splitting of a law's idempotent. `has_dist` records whether the
    /// split stage sits on top of a distribution functor.
    Split { law: String, has_dist: bool },
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Id => f.write_str("Id"),
            Symbol::P => f.write_str("P"),
            Symbol::PStar => f.write_str("P*"),
            Symbol::D => f.write_str("D"),
            Symbol::E => f.write_str("E"),
            Symbol::R(n) => write!(f, "R{n}"),
            Symbol::W(m) => write!(f, "W({m})"),
            Symbol::Const(n) => write!(f, "Const{n}"),
            Symbol::Split { law, .. } => write!(f, "K<{law}>"),
        }
    }
}

/// Sizing and seeding for pooled (sampled) inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PoolParams {
    pub seed: u64,
    pub denom_bound: u32,
    pub support_bound: usize,
    pub count: usize,
}

impl Default for PoolParams {
    fn default() -> Self {
        PoolParams { seed: 0, denom_bound: 4, support_bound: 3, count: 128 }
    }
}

/// A Set endofunctor acting on values.
///
/// Implementations are carrier-polymorphic: they only look at the shape
/// of the outermost layer and treat everything below it as opaque atoms.
pub trait Functor: Send + Sync {
    fn symbol(&self) -> Symbol;

    /// Functor action on a value-level map.
    fn fmap(&self, f: &dyn Fn(&Value) -> Value, v: &Value) -> Value;

    /// Every element over the given atoms, or `None` if there are
    /// infinitely many or more than `cap`.
    fn enumerate_over(&self, atoms: &[Value], cap: usize) -> Option<Vec<Value>>;

    /// A deterministic sample of elements over the given atoms.
    fn sample_over(&self, atoms: &[Value], params: &PoolParams, rng: &mut ChaCha8Rng) -> Vec<Value>;

    /// Checks the outermost layer and rebuilds it canonically, delegating
    /// to `inner` for the children.
    fn canonicalize(
        &self,
        v: &Value,
        inner: &dyn Fn(&Value) -> Result<Value, KernelError>,
    ) -> Result<Value, KernelError>;

    fn contains_distribution(&self) -> bool {
        false
    }
}

pub type FunctorRef = Arc<dyn Functor>;

/// A composite of functors, outermost first. The empty stage is the
/// identity functor.
#[derive(Clone, Default)]
pub struct Stage(pub Vec<FunctorRef>);

impl Stage {
    pub fn id() -> Stage {
        Stage(Vec::new())
    }

    pub fn of(f: &FunctorRef) -> Stage {
        Stage(vec![f.clone()])
    }

    /// `self ∘ inner`: `self` is applied outside.
    pub fn then(&self, inner: &Stage) -> Stage {
        let mut v = self.0.clone();
        v.extend(inner.0.iter().cloned());
        Stage(v)
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        self.0.iter().map(|f| f.symbol()).filter(|s| *s != Symbol::Id).collect()
    }

    pub fn contains_distribution(&self) -> bool {
        self.0.iter().any(|f| f.contains_distribution())
    }

    pub fn fmap(&self, f: &dyn Fn(&Value) -> Value, v: &Value) -> Value {
        match self.0.split_first() {
            None => f(v),
            Some((outer, rest)) => {
                let rest = Stage(rest.to_vec());
                outer.fmap(&|x| rest.fmap(f, x), v)
            }
        }
    }

    /// All values of this stage over a carrier of `carrier_size` elements,
    /// or `None` when a distribution layer occurs or more than `cap`
    /// values would be produced.
    pub fn enumerate(&self, carrier_size: usize, cap: usize) -> Option<Vec<Value>> {
        self.enumerate_over(&base_atoms(carrier_size), cap)
    }

    /// As [`Stage::enumerate`], over arbitrary atoms.
    pub fn enumerate_over(&self, atoms: &[Value], cap: usize) -> Option<Vec<Value>> {
        let mut atoms = atoms.to_vec();
        for f in self.0.iter().rev() {
            atoms = f.enumerate_over(&atoms, cap)?;
            if atoms.len() > cap {
                return None;
            }
        }
        Some(atoms)
    }

    /// Deterministic sampled pool of values of this stage.
    pub fn sample_pool(&self, carrier_size: usize, params: &PoolParams) -> Result<Vec<Value>, KernelError> {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ fnv(&self.to_string()) ^ carrier_size as u64);
        let atoms = self.sample_over(&base_atoms(carrier_size), params, &mut rng);
        if atoms.is_empty() {
            return Err(KernelError::EmptyStage { stage: self.to_string(), carrier_size });
        }
        Ok(atoms)
    }

    /// As [`Stage::sample_pool`], over arbitrary atoms with a caller-owned
    /// generator.
    pub fn sample_over(&self, atoms: &[Value], params: &PoolParams, rng: &mut ChaCha8Rng) -> Vec<Value> {
        let mut atoms = atoms.to_vec();
        for f in self.0.iter().rev() {
            atoms = f.sample_over(&atoms, params, rng);
            atoms.sort();
            atoms.dedup();
        }
        atoms
    }

    /// Validates the shape of `v` and returns its canonical form.
    pub fn canonicalize(&self, v: &Value) -> Result<Value, KernelError> {
        self.canonicalize_with(v, &|x| match x {
            Value::Base(_) => Ok(x.clone()),
            _ => Err(KernelError::Shape { stage: "Id".into(), value: x.to_string() }),
        })
    }

    /// As [`Stage::canonicalize`], with `inner` handling the atoms below
    /// the innermost functor.
    pub fn canonicalize_with(
        &self,
        v: &Value,
        inner: &dyn Fn(&Value) -> Result<Value, KernelError>,
    ) -> Result<Value, KernelError> {
        match self.0.split_first() {
            None => inner(v),
            Some((outer, rest)) => {
                let rest = Stage(rest.to_vec());
                outer.canonicalize(v, &|x| rest.canonicalize_with(x, inner))
            }
        }
    }
}

impl PartialEq for Stage {
    fn eq(&self, other: &Stage) -> bool {
        self.symbols() == other.symbols()
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let syms = self.symbols();
        if syms.is_empty() {
            return f.write_str("Id");
        }
        for (i, s) in syms.iter().enumerate() {
            if i > 0 {
                f.write_str("∘")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn base_atoms(n: usize) -> Vec<Value> {
    (0..n as u32).map(Value::Base).collect()
}

fn fnv(s: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}
