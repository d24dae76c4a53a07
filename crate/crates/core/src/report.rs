//! Checks, the engine that runs them over finite carriers, and their
//! reports.
//!
//! A check compares two maps on every input of a stage. Inputs come from
//! full enumeration when the stage has at most [`ENUMERATION_CAP`] values
//! over a carrier, and from a seeded exact pool otherwise. The first
//! counterexample in input order is kept as a replayable witness.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::kernel::{parse_value, value_equal, EqualityMode, Morphism, PoolParams, Stage, Value, ValueFn};

/// Stages with at most this many values over a carrier are enumerated.
pub const ENUMERATION_CAP: usize = 70_000;

/// Number of random morphisms drawn per pair of carrier sizes when the
/// full function space is not used.
const SAMPLED_MORPHISMS: usize = 6;

/// Sizing and seeding shared by every check of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub max_carrier_size: usize,
    pub samples: usize,
    pub seed: u64,
    pub denom_bound: u32,
    pub support_bound: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { max_carrier_size: 2, samples: 128, seed: 0, denom_bound: 4, support_bound: 3 }
    }
}

impl RunConfig {
    pub fn pool_params(&self) -> PoolParams {
        PoolParams {
            seed: self.seed,
            denom_bound: self.denom_bound,
            support_bound: self.support_bound,
            count: self.samples,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Holds,
    Violated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputMode {
    Exhaustive,
    Pooled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismWitness {
    pub target: usize,
    pub mapping: Vec<u32>,
}

/// A single input on which the two sides were compared.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub carrier_size: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<MorphismWitness>,
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub check: String,
    pub anchor: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub expect: Expect,
    pub inputs_tested: usize,
    pub mode: InputMode,
    #[serde(default)]
    pub carrier_sizes: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let mode = match self.mode {
            InputMode::Exhaustive => "exhaustive",
            InputMode::Pooled => "pooled",
        };
        write!(f, "{status} {}/{} [{mode}, {} inputs]", self.suite, self.check, self.inputs_tested)?;
        if self.expect == Expect::Violated {
            f.write_str(" (violation expected)")?;
        }
        write!(f, " {}", self.anchor)?;
        if let Some(r) = &self.reason {
            write!(f, "\n    reason: {r}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n    carrier size {}", w.carrier_size)?;
            for m in &w.morphisms {
                write!(f, ", morphism {:?} into {}", m.mapping, m.target)?;
            }
            write!(f, "\n    input: {}\n    lhs:   {}\n    rhs:   {}", w.input, w.lhs, w.rhs)?;
        }
        Ok(())
    }
}

/// Outcome of a check that is not a plain equation of two maps.
#[derive(Debug, Clone)]
pub struct Computed {
    pub ok: bool,
    pub inputs_tested: usize,
    pub mode: InputMode,
    /// Shown as the witness on failure: what was examined, what was
    /// expected, and what was found.
    pub detail: (String, String, String),
}

pub type ComputeFn = Arc<dyn Fn(&RunConfig) -> Computed + Send + Sync>;

#[derive(Clone)]
pub enum CheckKind {
    /// `lhs = rhs` on every value of `input`.
    Equation { input: Stage, lhs: ValueFn, rhs: ValueFn },
    /// `G f ∘ a = a ∘ F f` for the component `a : F ⇒ G`.
    Naturality { source: Stage, target: Stage, component: ValueFn },
    /// `F 1 = 1` and `F (g ∘ f) = F g ∘ F f`.
    Functoriality { stage: Stage },
    Computed(ComputeFn),
    Skip(String),
}

#[derive(Clone)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub expect: Expect,
    pub mode: Option<EqualityMode>,
    pub max_size: Option<usize>,
    /// Caps on pool count and support bound for deeply nested inputs.
    pub pool_limit: Option<(usize, usize)>,
    /// Runs on this carrier size only, as for algebras on a fixed carrier.
    pub fixed_size: Option<usize>,
    /// Lowers the enumeration cap, so larger sizes are pooled instead.
    pub enumeration_cap: Option<usize>,
    pub kind: CheckKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReplayError {
    #[error("cannot parse witness {field}: {msg}")]
    Parse { field: String, msg: String },
    #[error("witness does not fit check {check}: {msg}")]
    Mismatch { check: String, msg: String },
}

impl Check {
    fn new(id: &str, anchor: &str, kind: CheckKind) -> Check {
        Check { id: id.into(), anchor: anchor.into(), expect: Expect::Holds, mode: None, max_size: None, pool_limit: None, fixed_size: None, enumeration_cap: None, kind }
    }

    pub fn equation(id: &str, anchor: &str, input: Stage, lhs: ValueFn, rhs: ValueFn) -> Check {
        Check::new(id, anchor, CheckKind::Equation { input, lhs, rhs })
    }

    pub fn naturality(id: &str, anchor: &str, source: Stage, target: Stage, component: ValueFn) -> Check {
        Check::new(id, anchor, CheckKind::Naturality { source, target, component })
    }

    pub fn functoriality(id: &str, anchor: &str, stage: Stage) -> Check {
        Check::new(id, anchor, CheckKind::Functoriality { stage })
    }

    pub fn computed(id: &str, anchor: &str, f: ComputeFn) -> Check {
        Check::new(id, anchor, CheckKind::Computed(f))
    }

    pub fn skip(id: &str, anchor: &str, reason: &str) -> Check {
        Check::new(id, anchor, CheckKind::Skip(reason.into()))
    }

    /// Marks the equation as one that must fail on some input.
    pub fn violated(mut self) -> Check {
        self.expect = Expect::Violated;
        self
    }

    pub fn expecting(mut self, expect: Expect) -> Check {
        self.expect = expect;
        self
    }

    pub fn with_mode(mut self, mode: EqualityMode) -> Check {
        self.mode = Some(mode);
        self
    }

    pub fn max_size(mut self, n: usize) -> Check {
        self.max_size = Some(n);
        self
    }

    /// Caps the pool used when inputs cannot be enumerated.
    pub fn pool_limit(mut self, count: usize, support_bound: usize) -> Check {
        self.pool_limit = Some((count, support_bound));
        self
    }

    /// Enumerates only stages with at most `cap` values per size.
    pub fn enumeration_cap(mut self, cap: usize) -> Check {
        self.enumeration_cap = Some(cap);
        self
    }

    pub fn at_size(mut self, n: usize) -> Check {
        self.fixed_size = Some(n);
        self
    }

    pub fn prefixed(mut self, prefix: &str) -> Check {
        self.id = format!("{prefix}{}", self.id);
        self
    }

    fn equality(&self, stage: &Stage) -> EqualityMode {
        self.mode.unwrap_or_else(|| EqualityMode::for_stage(stage))
    }

    fn sizes(&self, cfg: &RunConfig) -> std::ops::RangeInclusive<usize> {
        if let Some(n) = self.fixed_size {
            return n..=n;
        }
        let top = cfg.max_carrier_size + 1;
        0..=self.max_size.map_or(top, |m| m.min(top))
    }

    /// Runs the check and reports its verdict.
    pub fn run(&self, suite: &str, cfg: &RunConfig) -> CheckReport {
        let mut report = CheckReport {
            suite: suite.to_string(),
            check: self.id.clone(),
            anchor: self.anchor.clone(),
            status: Status::Pass,
            reason: None,
            expect: self.expect,
            inputs_tested: 0,
            mode: InputMode::Exhaustive,
            carrier_sizes: Vec::new(),
            witness: None,
        };
        let found = match &self.kind {
            CheckKind::Skip(reason) => {
                report.status = Status::Skipped;
                report.reason = Some(reason.clone());
                return report;
            }
            CheckKind::Computed(f) => {
                let c = f(cfg);
                report.inputs_tested = c.inputs_tested;
                report.mode = c.mode;
                (!c.ok).then(|| Witness {
                    carrier_size: cfg.max_carrier_size,
                    morphisms: Vec::new(),
                    input: c.detail.0,
                    lhs: c.detail.1,
                    rhs: c.detail.2,
                })
            }
            CheckKind::Equation { input, lhs, rhs } => {
                let eq = self.equality(input);
                let mut found = None;
                for (n, values, mode) in self.inputs(input, cfg) {
                    report.carrier_sizes.push(n);
                    if mode == InputMode::Pooled {
                        report.mode = InputMode::Pooled;
                    }
                    let bad = values.par_iter().position_first(|x| !value_equal(&lhs(x), &rhs(x), eq));
                    report.inputs_tested += bad.map_or(values.len(), |i| i + 1);
                    if let Some(i) = bad {
                        let x = &values[i];
                        found = Some(Witness {
                            carrier_size: n,
                            morphisms: Vec::new(),
                            input: x.to_string(),
                            lhs: lhs(x).to_string(),
                            rhs: rhs(x).to_string(),
                        });
                        break;
                    }
                }
                found
            }
            CheckKind::Naturality { source, target, component } => {
                self.run_naturality(source, target, component, cfg, &mut report)
            }
            CheckKind::Functoriality { stage } => self.run_functoriality(stage, cfg, &mut report),
        };
        match (self.expect, found) {
            (Expect::Holds, None) => {}
            (Expect::Holds, Some(w)) => {
                report.status = Status::Fail;
                report.witness = Some(w);
            }
            (Expect::Violated, Some(w)) => report.witness = Some(w),
            (Expect::Violated, None) => {
                report.status = Status::Fail;
                report.reason = Some("expected a counterexample but none was found".into());
            }
        }
        report
    }

    /// Input values per carrier size. Sizes up to the configured maximum
    /// always run, enumerated or pooled; one size beyond it runs only when
    /// it can be enumerated.
    fn inputs(&self, stage: &Stage, cfg: &RunConfig) -> Vec<(usize, Vec<Value>, InputMode)> {
        let mut out = Vec::new();
        for n in self.sizes(cfg) {
            if let Some(vs) = stage.enumerate(n, self.enumeration_cap.map_or(ENUMERATION_CAP, |c| c.min(ENUMERATION_CAP))) {
                out.push((n, vs, InputMode::Exhaustive));
            } else if n <= cfg.max_carrier_size || self.fixed_size.is_some() {
                let mut params = cfg.pool_params();
                if let Some((count, support)) = self.pool_limit {
                    params.count = params.count.min(count);
                    params.support_bound = params.support_bound.min(support);
                }
                match stage.sample_pool(n, &params) {
                    Ok(vs) => out.push((n, vs, InputMode::Pooled)),
                    Err(_) => out.push((n, Vec::new(), InputMode::Pooled)),
                }
            }
        }
        out
    }

    fn morphisms(n: usize, m: usize, seed: u64) -> Vec<Morphism> {
        if n <= 2 && m <= 2 {
            Morphism::all(n, m)
        } else if m == 0 {
            Vec::new()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 8 | m as u64));
            (0..SAMPLED_MORPHISMS).map(|_| Morphism::random(n, m, &mut rng)).collect()
        }
    }

    fn run_naturality(
        &self,
        source: &Stage,
        target: &Stage,
        component: &ValueFn,
        cfg: &RunConfig,
        report: &mut CheckReport,
    ) -> Option<Witness> {
        let eq = self.equality(target);
        let inputs = self.inputs(source, cfg);
        let sizes: Vec<usize> = inputs.iter().map(|(n, ..)| *n).collect();
        for (n, values, mode) in &inputs {
            report.carrier_sizes.push(*n);
            if *mode == InputMode::Pooled {
                report.mode = InputMode::Pooled;
            }
            for &m in &sizes {
                for f in Check::morphisms(*n, m, cfg.seed) {
                    let (l, r) = naturality_sides(source, target, component, &f);
                    let bad = values.par_iter().position_first(|x| !value_equal(&l(x), &r(x), eq));
                    report.inputs_tested += bad.map_or(values.len(), |i| i + 1);
                    if let Some(i) = bad {
                        let x = &values[i];
                        return Some(Witness {
                            carrier_size: *n,
                            morphisms: vec![MorphismWitness { target: m, mapping: f.mapping.clone() }],
                            input: x.to_string(),
                            lhs: l(x).to_string(),
                            rhs: r(x).to_string(),
                        });
                    }
                }
            }
        }
        None
    }

    fn run_functoriality(&self, stage: &Stage, cfg: &RunConfig, report: &mut CheckReport) -> Option<Witness> {
        let eq = self.equality(stage);
        let inputs = self.inputs(stage, cfg);
        let sizes: Vec<usize> = inputs.iter().map(|(n, ..)| *n).filter(|&n| n <= 2).collect();
        for (n, values, mode) in &inputs {
            report.carrier_sizes.push(*n);
            if *mode == InputMode::Pooled {
                report.mode = InputMode::Pooled;
            }
            let id = Morphism::identity(*n);
            let mut pairs = vec![(id.clone(), id)];
            for &k in &sizes {
                for &m in &sizes {
                    for f in Check::morphisms(*n, k, cfg.seed) {
                        for g in Check::morphisms(k, m, cfg.seed) {
                            pairs.push((f.clone(), g));
                        }
                    }
                }
            }
            for (f, g) in pairs {
                let (l, r) = functoriality_sides(stage, &f, &g);
                let bad = values.par_iter().position_first(|x| !value_equal(&l(x), &r(x), eq));
                report.inputs_tested += bad.map_or(values.len(), |i| i + 1);
                if let Some(i) = bad {
                    let x = &values[i];
                    return Some(Witness {
                        carrier_size: *n,
                        morphisms: vec![
                            MorphismWitness { target: f.target, mapping: f.mapping.clone() },
                            MorphismWitness { target: g.target, mapping: g.mapping.clone() },
                        ],
                        input: x.to_string(),
                        lhs: l(x).to_string(),
                        rhs: r(x).to_string(),
                    });
                }
            }
        }
        None
    }

    /// Re-evaluates both sides on a stored witness. Returns the two sides
    /// and whether they agree.
    pub fn replay(&self, w: &Witness) -> Result<(Value, Value, bool), ReplayError> {
        let mismatch = |msg: &str| ReplayError::Mismatch { check: self.id.clone(), msg: msg.to_string() };
        let parse = |field: &str, s: &str| {
            parse_value(s).map_err(|e| ReplayError::Parse { field: field.to_string(), msg: e.to_string() })
        };
        let read_input = |stage: &Stage| {
            let v = parse("input", &w.input)?;
            let v = stage.canonicalize(&v).map_err(|e| mismatch(&e.to_string()))?;
            if max_base(&v).is_some_and(|b| b as usize >= w.carrier_size) && !has_const(stage) {
                return Err(mismatch("input mentions an element outside the carrier"));
            }
            Ok(v)
        };
        let morphism = |i: usize, source: usize| -> Result<Morphism, ReplayError> {
            let m = w.morphisms.get(i).ok_or_else(|| mismatch("missing morphism"))?;
            if m.mapping.len() != source || m.mapping.iter().any(|&j| j as usize >= m.target) {
                return Err(mismatch("morphism does not fit the carrier"));
            }
            Ok(Morphism::new(m.target, m.mapping.clone()))
        };
        match &self.kind {
            CheckKind::Equation { input, lhs, rhs } => {
                let x = read_input(input)?;
                let (l, r) = (lhs(&x), rhs(&x));
                let ok = value_equal(&l, &r, self.equality(input));
                Ok((l, r, ok))
            }
            CheckKind::Naturality { source, target, component } => {
                let x = read_input(source)?;
                let f = morphism(0, w.carrier_size)?;
                let (lf, rf) = naturality_sides(source, target, component, &f);
                let (l, r) = (lf(&x), rf(&x));
                let ok = value_equal(&l, &r, self.equality(target));
                Ok((l, r, ok))
            }
            CheckKind::Functoriality { stage } => {
                let x = read_input(stage)?;
                let f = morphism(0, w.carrier_size)?;
                let g = morphism(1, f.target)?;
                let (lf, rf) = functoriality_sides(stage, &f, &g);
                let (l, r) = (lf(&x), rf(&x));
                let ok = value_equal(&l, &r, self.equality(stage));
                Ok((l, r, ok))
            }
            CheckKind::Computed(_) | CheckKind::Skip(_) => Err(mismatch("check has no pointwise witness")),
        }
    }
}

type Side = Box<dyn Fn(&Value) -> Value + Sync>;

fn naturality_sides(source: &Stage, target: &Stage, component: &ValueFn, f: &Morphism) -> (Side, Side) {
    let (s, t, c1, c2, f1, f2) =
        (source.clone(), target.clone(), component.clone(), component.clone(), f.clone(), f.clone());
    (
        Box::new(move |x| t.fmap(&|y| f1.apply(y), &c1(x))),
        Box::new(move |x| c2(&s.fmap(&|y| f2.apply(y), x))),
    )
}

fn functoriality_sides(stage: &Stage, f: &Morphism, g: &Morphism) -> (Side, Side) {
    let (s1, s2) = (stage.clone(), stage.clone());
    let gf = g.compose(f);
    let (f, g) = (f.clone(), g.clone());
    (
        Box::new(move |x| s1.fmap(&|y| gf.apply(y), x)),
        Box::new(move |x| s2.fmap(&|y| g.apply(y), &s2.fmap(&|y| f.apply(y), x))),
    )
}

fn max_base(v: &Value) -> Option<u32> {
    match v {
        Value::Base(i) => Some(*i),
        Value::DistOf(ts) => ts.iter().filter_map(|(x, _)| max_base(x)).max(),
        Value::FuncOf(xs) | Value::Hull(xs) | Value::SetOf(xs) => xs.iter().filter_map(max_base).max(),
        Value::InL(x) | Value::Norm(_, x) | Value::PairOf(_, x) => max_base(x),
        Value::InR => None,
    }
}

fn has_const(stage: &Stage) -> bool {
    stage.symbols().iter().any(|s| matches!(s, crate::kernel::Symbol::Const(_)))
}

/// A full run: the configuration and one report per check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub config: RunConfig,
    pub results: Vec<CheckReport>,
}

impl RunReport {
    pub fn new(config: RunConfig, results: Vec<CheckReport>) -> RunReport {
        RunReport { schema: 1, config, results }
    }

    pub fn all_passed(&self) -> bool {
        self.results.iter().all(CheckReport::passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut s = format!(
            "schema {}; max-carrier-size {}, samples {}, seed {}, denom-bound {}\n",
            self.schema, c.max_carrier_size, c.samples, c.seed, c.denom_bound
        );
        for r in &self.results {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        let failed = self.results.iter().filter(|r| r.status == Status::Fail).count();
        let skipped = self.results.iter().filter(|r| r.status == Status::Skipped).count();
        s.push_str(&format!(
            "{} checks: {} passed, {failed} failed, {skipped} skipped\n",
            self.results.len(),
            self.results.len() - failed - skipped
        ));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::vfn;
    use crate::monads::powerset;

    #[test]
    fn failing_equation_keeps_first_witness() {
        let p = powerset();
        let meet = vfn(|v: &Value| {
            let us = v.members().unwrap();
            match us.split_first() {
                None => Value::set([]),
                Some((first, rest)) => Value::set(
                    first
                        .members()
                        .unwrap()
                        .iter()
                        .filter(|x| rest.iter().all(|u| u.members().unwrap().contains(x)))
                        .cloned(),
                ),
            }
        });
        let pp = p.stage().then(&p.stage());
        let p2 = p.clone();
        let c = Check::equation("mult-is-union", "", pp, meet, vfn(move |v| p2.mu(v)));
        let r = c.run("t", &RunConfig::default());
        assert_eq!(r.status, Status::Fail);
        let w = r.witness.clone().unwrap();
        let (_, _, ok) = c.replay(&w).unwrap();
        assert!(!ok);
        // expected violations pass once a counterexample shows up
        assert_eq!(c.clone().violated().run("t", &RunConfig::default()).status, Status::Pass);
    }

    #[test]
    fn size_three_only_when_enumerable() {
        let p = powerset();
        let c = Check::equation("id", "", p.stage(), vfn(Value::clone), vfn(Value::clone));
        let r = c.run("t", &RunConfig::default());
        assert_eq!(r.carrier_sizes, vec![0, 1, 2, 3]);
        assert_eq!(r.inputs_tested, 1 + 2 + 4 + 8);
        assert_eq!(r.mode, InputMode::Exhaustive);
    }
}
