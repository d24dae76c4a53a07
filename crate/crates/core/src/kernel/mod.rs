//! Finite carriers, exact values, stages, and equality modes.

pub mod convex;
pub mod rat;
pub mod stage;
pub mod value;

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use convex::{convex_canonical, convex_member};
pub use rat::Rat;
pub use stage::{Functor, FunctorRef, PoolParams, Stage, Symbol};
pub use value::{base_name, parse_value, ParseError, Value};

/// A total map on values, shared between threads.
pub type ValueFn = Arc<dyn Fn(&Value) -> Value + Send + Sync>;

/// Wraps a closure as a [`ValueFn`].
pub fn vfn(f: impl Fn(&Value) -> Value + Send + Sync + 'static) -> ValueFn {
    Arc::new(f)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KernelError {
    #[error("value {value} does not have the shape of stage {stage}")]
    Shape { stage: String, value: String },
    #[error("bad distribution weights in {value}")]
    Weight { value: String },
    #[error("stage {stage} has no elements over a carrier of size {carrier_size}")]
    EmptyStage { stage: String, carrier_size: usize },
}

/// A named finite set. Element order is the canonical order of the
/// corresponding base values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Carrier {
    pub name: String,
    pub elements: Vec<String>,
}

impl Carrier {
    /// The carrier `{a, b, c, ...}` with `n` elements.
    pub fn standard(n: usize) -> Carrier {
        Carrier { name: format!("X{n}"), elements: (0..n as u32).map(base_name).collect() }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn values(&self) -> Vec<Value> {
        (0..self.len() as u32).map(Value::Base).collect()
    }
}

/// A function between standard carriers, by element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub mapping: Vec<u32>,
}

impl Morphism {
    pub fn new(target: usize, mapping: Vec<u32>) -> Morphism {
        assert!(mapping.iter().all(|&j| (j as usize) < target), "morphism leaves its target");
        Morphism { source: mapping.len(), target, mapping }
    }

    pub fn identity(n: usize) -> Morphism {
        Morphism::new(n, (0..n as u32).collect())
    }

    /// The map on base values; any other value is left untouched.
    pub fn apply(&self, v: &Value) -> Value {
        match v {
            Value::Base(i) => Value::Base(self.mapping[*i as usize]),
            other => other.clone(),
        }
    }

    pub fn compose(&self, first: &Morphism) -> Morphism {
        assert_eq!(first.target, self.source);
        Morphism::new(self.target, first.mapping.iter().map(|&i| self.mapping[i as usize]).collect())
    }

    /// Every function from an `n`-element carrier to an `m`-element one.
    pub fn all(n: usize, m: usize) -> Vec<Morphism> {
        if n > 0 && m == 0 {
            return Vec::new();
        }
        let total = m.pow(n as u32);
        (0..total)
            .map(|mut k| {
                let mut mapping = Vec::with_capacity(n);
                for _ in 0..n {
                    mapping.push((k % m) as u32);
                    k /= m;
                }
                Morphism::new(m, mapping)
            })
            .collect()
    }

    pub fn random(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Morphism {
        Morphism::new(m, (0..n).map(|_| rng.gen_range(0..m as u32)).collect())
    }
}

/// How two values of a stage are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EqualityMode {
    Structural,
    Semantic,
}

impl EqualityMode {
    /// Semantic for stages with a distribution layer, structural otherwise.
    pub fn for_stage(stage: &Stage) -> EqualityMode {
        if stage.contains_distribution() {
            EqualityMode::Semantic
        } else {
            EqualityMode::Structural
        }
    }
}

/// Normal form under semantic equality: every generated convex set of
/// distributions is reduced to its vertex set, and a generated set with at
/// most one generator is the literal finite set it denotes.
pub fn semantic_canonical(v: &Value) -> Value {
    let v = v.map_children(&semantic_canonical);
    match v {
        Value::Hull(gens) => {
            if gens.len() <= 1 {
                return Value::SetOf(gens);
            }
            if gens.iter().all(|g| matches!(g, Value::DistOf(_))) {
                let verts = convex_canonical(&gens);
                if verts.len() <= 1 {
                    Value::SetOf(verts)
                } else {
                    Value::Hull(verts)
                }
            } else if let Some(id) = common_norm_over_dist(&gens) {
                // A split carrier whose payloads are distributions: combine
                // payloads and wrap the vertices again.
                let payloads: Vec<Value> = gens.iter().map(|g| g.unwrap_norm().unwrap().clone()).collect();
                let verts: Vec<Value> = convex_canonical(&payloads).into_iter().map(|p| Value::norm(&id, p)).collect();
                if verts.len() <= 1 {
                    Value::SetOf(verts)
                } else {
                    Value::Hull(verts)
                }
            } else {
                Value::Hull(gens)
            }
        }
        other => other,
    }
}

fn common_norm_over_dist(gens: &[Value]) -> Option<String> {
    let first = match gens.first()? {
        Value::Norm(id, p) if matches!(**p, Value::DistOf(_)) => id.clone(),
        _ => return None,
    };
    gens.iter()
        .all(|g| matches!(g, Value::Norm(id, p) if *id == first && matches!(**p, Value::DistOf(_))))
        .then(|| first.to_string())
}

pub fn value_equal(a: &Value, b: &Value, mode: EqualityMode) -> bool {
    match mode {
        EqualityMode::Structural => a == b,
        EqualityMode::Semantic => a == b || semantic_canonical(a) == semantic_canonical(b),
    }
}

/// Canonical form of a possibly unnormalized value of `stage`.
pub fn canonicalize(v: &Value, stage: &Stage) -> Result<Value, KernelError> {
    stage.canonicalize(v)
}

/// All distributions over `atoms` with weights in multiples of
/// `1/denom` and at most `support` support points, in canonical order.
pub fn grid_distributions(atoms: &[Value], denom: u32, support: usize) -> Vec<Value> {
    let mut out = Vec::new();
    let n = atoms.len();
    let kmax = support.min(n).min(denom as usize);
    for k in 1..=kmax {
        for subset in index_subsets(n, k) {
            for parts in compositions(denom, k) {
                out.push(Value::dist(
                    subset.iter().zip(&parts).map(|(&i, &p)| (atoms[i].clone(), Rat::new(p as i128, denom as i128))),
                ));
            }
        }
    }
    out.sort();
    out
}

/// Number of grid distributions, without building them.
pub fn grid_count(n: usize, denom: u32, support: usize) -> u128 {
    let kmax = support.min(n).min(denom as usize);
    (1..=kmax).map(|k| binom(n as u128, k as u128) * binom(denom as u128 - 1, k as u128 - 1)).sum()
}

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Ordered ways of writing `total` as `k` positive parts.
fn compositions(total: u32, k: usize) -> Vec<Vec<u32>> {
    if k == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 1..total {
        if total - first < (k - 1) as u32 {
            break;
        }
        for mut rest in compositions(total - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Largest integer weight drawn by [`random_distribution`].
pub const RANDOM_WEIGHT_MAX: i128 = 16;

/// A random distribution with positive integer weights normalized to one.
pub fn random_distribution(atoms: &[Value], support: usize, rng: &mut ChaCha8Rng) -> Value {
    let k = rng.gen_range(1..=support.min(atoms.len()).max(1));
    let chosen: Vec<&Value> = atoms.choose_multiple(rng, k).collect();
    let weights: Vec<i128> = (0..k).map(|_| rng.gen_range(1..=RANDOM_WEIGHT_MAX)).collect();
    let total: i128 = weights.iter().sum();
    Value::dist(chosen.into_iter().zip(weights).map(|(v, w)| (v.clone(), Rat::new(w, total))))
}

/// Pooled distributions over `atoms`: the grid, thinned or topped up with
/// random distributions to reach `params.count`.
pub fn pool_distributions(atoms: &[Value], params: &PoolParams, rng: &mut ChaCha8Rng) -> Vec<Value> {
    if atoms.is_empty() {
        return Vec::new();
    }
    let target = params.count;
    let gc = grid_count(atoms.len(), params.denom_bound, params.support_bound);
    let mut out: Vec<Value> = if gc <= 4 * target as u128 {
        let mut grid = grid_distributions(atoms, params.denom_bound, params.support_bound);
        if grid.len() > target {
            grid.shuffle(rng);
            grid.truncate(target);
        }
        grid
    } else {
        // Too many grid points to list: draw grid points at random, always
        // keeping the Dirac distributions of the first atoms.
        let mut v: Vec<Value> = atoms.iter().take(target / 4).cloned().map(Value::dirac).collect();
        let kmax = params.support_bound.min(atoms.len()).min(params.denom_bound as usize);
        let mut tries = 0;
        while v.len() < target / 2 && tries < 20 * target {
            tries += 1;
            let k = rng.gen_range(1..=kmax);
            let parts = compositions(params.denom_bound, k);
            let parts = &parts[rng.gen_range(0..parts.len())];
            let chosen: Vec<&Value> = atoms.choose_multiple(rng, k).collect();
            v.push(Value::dist(
                chosen
                    .into_iter()
                    .zip(parts)
                    .map(|(a, &p)| (a.clone(), Rat::new(p as i128, params.denom_bound as i128))),
            ));
        }
        v
    };
    out.sort();
    out.dedup();
    let mut tries = 0;
    while out.len() < target && tries < 4 * target {
        tries += 1;
        let d = random_distribution(atoms, params.support_bound, rng);
        if let Err(pos) = out.binary_search(&d) {
            out.insert(pos, d);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(i: u32) -> Value {
        Value::Base(i)
    }

    #[test]
    fn grid_two_atoms_denominator_two() {
        let g = grid_distributions(&[b(0), b(1)], 2, 2);
        let h = Rat::new(1, 2);
        let mut expect = vec![Value::dirac(b(0)), Value::dirac(b(1)), Value::dist([(b(0), h), (b(1), h)])];
        expect.sort();
        assert_eq!(g, expect);
        assert_eq!(grid_count(2, 2, 2), 3);
        assert_eq!(grid_count(3, 4, 3), 3 + 3 * 3 + 3);
    }

    #[test]
    fn semantic_canonical_reduces_hulls() {
        let h = Rat::new(1, 2);
        let mid = Value::dist([(b(0), h), (b(1), h)]);
        let x = Value::hull([Value::dirac(b(0)), Value::dirac(b(1)), mid.clone()]);
        let y = Value::hull([Value::dirac(b(0)), Value::dirac(b(1))]);
        assert!(value_equal(&x, &y, EqualityMode::Semantic));
        assert!(!value_equal(&x, &y, EqualityMode::Structural));
        // a degenerate generated set is the literal singleton
        assert_eq!(semantic_canonical(&Value::hull([mid.clone()])), Value::set([mid.clone()]));
        // a literal finite set is not its convex hull
        let lit = Value::set([Value::dirac(b(0)), Value::dirac(b(1))]);
        assert!(!value_equal(&lit, &y, EqualityMode::Semantic));
    }

    #[test]
    fn morphisms_enumerate() {
        assert_eq!(Morphism::all(2, 2).len(), 4);
        assert_eq!(Morphism::all(0, 0).len(), 1);
        assert_eq!(Morphism::all(2, 0).len(), 0);
        let f = Morphism::new(1, vec![0, 0]);
        let g = Morphism::identity(1);
        assert_eq!(g.compose(&f), f);
    }
}
