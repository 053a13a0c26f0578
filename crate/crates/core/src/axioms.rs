//! Preference oracles and the axiom checkers.
//!
//! An oracle compares two acts. Representation-backed oracles evaluate a
//! number for each act (maxmin, maxmax, subjective expected utility, and a
//! few deliberately broken variants used as negative controls); a dataset
//! oracle answers only the comparisons it has on record.
//!
//! Each checker samples trials from a seeded generator, evaluates them in
//! parallel and merges results in trial order. Every witness stores the
//! exact act pairs it queried together with the relations observed, so it
//! can be replayed against the oracle.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rand::seq::IndexedRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::credal::{CredalSet, Variant};
use crate::error::{Error, Result};
use crate::functional::Mode;
use crate::lp::dot;
use crate::sampling::{random_act, random_constant_act, seeded};
use crate::types::{constant_act, mix_acts, Act, Lottery, Universe};
use crate::utility::{utility_act, UtilityFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">")]
    Better,
    #[serde(rename = "~")]
    Indifferent,
    #[serde(rename = "<")]
    Worse,
    #[serde(rename = "?")]
    Unknown,
}

impl Relation {
    pub fn reverse(self) -> Self {
        match self {
            Relation::Better => Relation::Worse,
            Relation::Worse => Relation::Better,
            r => r,
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, Relation::Better | Relation::Worse)
    }

    /// Relation of two represented values under an indifference tolerance.
    pub fn of_values(a: f64, b: f64, tol: f64) -> Self {
        if a > b + tol {
            Relation::Better
        } else if b > a + tol {
            Relation::Worse
        } else {
            Relation::Indifferent
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Better => ">",
            Relation::Indifferent => "~",
            Relation::Worse => "<",
            Relation::Unknown => "?",
        })
    }
}

/// A comparator over acts.
pub trait PreferenceOracle: Send + Sync {
    fn compare(&self, f: &Act, g: &Act) -> Relation;
    fn describe(&self) -> String;
}

/// How a representation-backed oracle values acts. The last three kinds
/// break exactly one axiom each and serve as negative controls.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OracleSpec {
    /// `min_{p in C} <u o f, p>`.
    Maxmin { set: CredalSet },
    /// `max_{p in C} <u o f, p>`.
    Maxmax { set: CredalSet },
    /// `<u o f, p>`.
    Seu { prior: Vec<f64> },
    /// `min_{p in C} <phi(u o f), p>` with the concave increasing
    /// `phi(x) = (1 - exp(-k x)) / k` applied statewise. Breaks
    /// certainty independence only.
    Distorted { set: CredalSet, curvature: f64 },
    /// Expected utility with the sign of one state's utility flipped.
    /// Breaks monotonicity only.
    NegatedState { prior: Vec<f64>, state: usize },
    /// Compare worst-state utility, break ties by best-state utility.
    /// Breaks continuity only (on two states).
    Lexicographic,
}

impl OracleSpec {
    pub fn name(&self) -> &'static str {
        match self {
            OracleSpec::Maxmin { .. } => "maxmin",
            OracleSpec::Maxmax { .. } => "maxmax",
            OracleSpec::Seu { .. } => "seu",
            OracleSpec::Distorted { .. } => "distorted",
            OracleSpec::NegatedState { .. } => "negated-state",
            OracleSpec::Lexicographic => "lexicographic",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RepresentedOracle {
    utility: UtilityFunction,
    spec: OracleSpec,
    tol: f64,
}

fn check_prior(p: &[f64]) -> Result<()> {
    if p.iter().any(|&v| v.is_nan() || v < 0.0) || (p.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!("{p:?} is not a probability vector")));
    }
    Ok(())
}

impl RepresentedOracle {
    pub fn new(utility: UtilityFunction, spec: OracleSpec) -> Result<Self> {
        match &spec {
            OracleSpec::Seu { prior } => check_prior(prior)?,
            OracleSpec::NegatedState { prior, state } => {
                check_prior(prior)?;
                if *state >= prior.len() {
                    return Err(Error::Domain(format!("state {state} out of range")));
                }
            }
            OracleSpec::Distorted { curvature, .. } if curvature.is_nan() || *curvature <= 0.0 => {
                return Err(Error::Domain("distortion curvature must be positive".into()));
            }
            _ => {}
        }
        Ok(Self { utility, spec, tol: Tolerances::default().indifference })
    }

    pub fn with_indifference(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn utility(&self) -> &UtilityFunction {
        &self.utility
    }

    pub fn spec(&self) -> &OracleSpec {
        &self.spec
    }

    /// Represented value of `f`; `None` for the lexicographic kind or on a
    /// dimension mismatch.
    pub fn value(&self, f: &Act) -> Option<f64> {
        if f.num_prizes() != self.utility.values().len() {
            return None;
        }
        let b = utility_act(&self.utility, f);
        let b = b.values();
        match &self.spec {
            OracleSpec::Maxmin { set } => set.optimize(b, Mode::Min).ok().map(|r| r.0),
            OracleSpec::Maxmax { set } => set.optimize(b, Mode::Max).ok().map(|r| r.0),
            OracleSpec::Seu { prior } => (prior.len() == b.len()).then(|| dot(prior, b)),
            OracleSpec::Distorted { set, curvature } => {
                let k = *curvature;
                let phi: Vec<f64> = b.iter().map(|x| (1.0 - (-k * x).exp()) / k).collect();
                set.optimize(&phi, Mode::Min).ok().map(|r| r.0)
            }
            OracleSpec::NegatedState { prior, state } => (prior.len() == b.len()).then(|| {
                prior
                    .iter()
                    .zip(b)
                    .enumerate()
                    .map(|(s, (p, x))| if s == *state { -p * x } else { p * x })
                    .sum()
            }),
            OracleSpec::Lexicographic => None,
        }
    }
}

impl PreferenceOracle for RepresentedOracle {
    fn compare(&self, f: &Act, g: &Act) -> Relation {
        if let OracleSpec::Lexicographic = self.spec {
            if f.num_states() != g.num_states() {
                return Relation::Unknown;
            }
            let (a, b) = (utility_act(&self.utility, f), utility_act(&self.utility, g));
            return match Relation::of_values(a.lo(), b.lo(), self.tol) {
                Relation::Indifferent => Relation::of_values(a.hi(), b.hi(), self.tol),
                r => r,
            };
        }
        match (self.value(f), self.value(g)) {
            (Some(a), Some(b)) => Relation::of_values(a, b, self.tol),
            _ => Relation::Unknown,
        }
    }

    fn describe(&self) -> String {
        format!("{} oracle", self.spec.name())
    }
}

/// JSON description of a representation-backed oracle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleFile {
    pub universe: Universe,
    pub utility: BTreeMap<String, f64>,
    #[serde(flatten)]
    pub spec: OracleSpec,
}

impl OracleFile {
    pub fn build(&self) -> Result<RepresentedOracle> {
        self.universe.validate()?;
        let u = UtilityFunction::from_map(&self.universe, &self.utility)?;
        let n = self.universe.num_states();
        let dim_ok = match &self.spec {
            OracleSpec::Maxmin { set } | OracleSpec::Maxmax { set } | OracleSpec::Distorted { set, .. } => set.n() == n,
            OracleSpec::Seu { prior } | OracleSpec::NegatedState { prior, .. } => prior.len() == n,
            OracleSpec::Lexicographic => true,
        };
        if !dim_ok {
            return Err(Error::Domain(format!("oracle dimension does not match the {n}-state universe")));
        }
        RepresentedOracle::new(u, self.spec.clone())
    }
}

/// Finite comparison data over named acts.
#[derive(Debug, Clone, PartialEq)]
pub struct PreferenceDataset {
    universe: Universe,
    names: Vec<String>,
    acts: Vec<Act>,
    comparisons: Vec<(usize, usize, Relation)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NamedAct {
    name: String,
    act: BTreeMap<String, BTreeMap<String, f64>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComparisonRecord {
    lhs: String,
    rhs: String,
    rel: Relation,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DatasetFile {
    universe: Universe,
    acts: Vec<NamedAct>,
    comparisons: Vec<ComparisonRecord>,
}

impl PreferenceDataset {
    pub fn new(
        universe: Universe,
        named_acts: Vec<(String, Act)>,
        comparisons: Vec<(usize, usize, Relation)>,
    ) -> Result<Self> {
        let (names, acts): (Vec<_>, Vec<_>) = named_acts.into_iter().unzip();
        let k = acts.len();
        for a in &acts {
            if a.num_states() != universe.num_states() || a.num_prizes() != universe.num_prizes() {
                return Err(Error::Domain("dataset act does not match the universe".into()));
            }
        }
        for &(i, j, rel) in &comparisons {
            if i >= k || j >= k {
                return Err(Error::Parse(format!("comparison ({i}, {j}) refers to a missing act")));
            }
            if i == j && rel.is_strict() {
                return Err(Error::Parse(format!("act {i} is recorded as strictly better than itself")));
            }
        }
        Ok(Self { universe, names, acts, comparisons })
    }

    /// Record the oracle's verdict on every pair of `acts`.
    pub fn from_oracle(oracle: &dyn PreferenceOracle, universe: Universe, acts: Vec<Act>) -> Result<Self> {
        let k = acts.len();
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
        let comparisons = pairs
            .par_iter()
            .map(|&(i, j)| (i, j, oracle.compare(&acts[i], &acts[j])))
            .filter(|c| c.2 != Relation::Unknown)
            .collect();
        let named = acts.into_iter().enumerate().map(|(i, a)| (format!("a{i}"), a)).collect();
        Self::new(universe, named, comparisons)
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let file: DatasetFile = serde_json::from_value(value.clone())?;
        file.universe.validate()?;
        let mut index = BTreeMap::new();
        let mut named = Vec::new();
        for (i, na) in file.acts.iter().enumerate() {
            if index.insert(na.name.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate act name `{}`", na.name)));
            }
            named.push((na.name.clone(), file.universe.act_from_map(&na.act)?));
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::Parse(format!("comparison refers to unknown act `{name}`")))
        };
        let comparisons = file
            .comparisons
            .iter()
            .map(|c| Ok((lookup(&c.lhs)?, lookup(&c.rhs)?, c.rel)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(file.universe, named, comparisons)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let file = DatasetFile {
            universe: self.universe.clone(),
            acts: self
                .names
                .iter()
                .zip(&self.acts)
                .map(|(name, a)| NamedAct { name: name.clone(), act: self.universe.act_to_map(a) })
                .collect(),
            comparisons: self
                .comparisons
                .iter()
                .map(|&(i, j, rel)| ComparisonRecord { lhs: self.names[i].clone(), rhs: self.names[j].clone(), rel })
                .collect(),
        };
        serde_json::to_value(file).expect("serializable")
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.acts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.acts.is_empty()
    }

    pub fn act(&self, i: usize) -> &Act {
        &self.acts[i]
    }

    pub fn acts(&self) -> &[Act] {
        &self.acts
    }

    pub fn comparisons_resolved(&self) -> impl Iterator<Item = (usize, usize, Relation)> + '_ {
        self.comparisons.iter().copied()
    }

    pub fn oracle(&self) -> DatasetOracle<'_> {
        DatasetOracle { data: self }
    }

    fn index_of(&self, f: &Act) -> Option<usize> {
        self.acts.iter().position(|a| a.approx_eq(f, 1e-12))
    }

    fn recorded(&self, i: usize, j: usize) -> Relation {
        if i == j {
            return Relation::Indifferent;
        }
        for &(a, b, rel) in &self.comparisons {
            if (a, b) == (i, j) {
                return rel;
            }
            if (a, b) == (j, i) {
                return rel.reverse();
            }
        }
        Relation::Unknown
    }
}

/// Answers only recorded comparisons; everything else is `Unknown`.
pub struct DatasetOracle<'a> {
    data: &'a PreferenceDataset,
}

impl PreferenceOracle for DatasetOracle<'_> {
    fn compare(&self, f: &Act, g: &Act) -> Relation {
        match (self.data.index_of(f), self.data.index_of(g)) {
            (Some(i), Some(j)) => self.data.recorded(i, j),
            _ => Relation::Unknown,
        }
    }

    fn describe(&self) -> String {
        format!("dataset oracle ({} acts)", self.data.len())
    }
}

/// Sampling schedule shared by the oracle checkers.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckConfig {
    pub trials: usize,
    pub seed: u64,
    pub alpha_grid: Vec<f64>,
    /// Extra mixture weights probed by the continuity search after the
    /// grid: `1 - 10^-k` and `10^-k` for `k >= 3` while `10^-k` stays ten
    /// times above the indifference tolerance. Smaller weights would let
    /// the tolerance itself manufacture witnesses.
    pub continuity_tail: bool,
    pub tol: Tolerances,
    pub max_witnesses: usize,
}

impl CheckConfig {
    pub fn new(trials: usize, seed: u64) -> Self {
        Self {
            trials,
            seed,
            alpha_grid: (1..=99).map(|k| k as f64 / 100.0).collect(),
            continuity_tail: true,
            tol: Tolerances::default(),
            max_witnesses: 25,
        }
    }
}

/// A replayable counterexample: the act pairs queried and what the oracle
/// said about each.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: usize,
    pub pairs: Vec<(Act, Act)>,
    pub observed: Vec<Relation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<usize>>,
    pub note: String,
}

impl Witness {
    /// True when the oracle still returns the recorded relation on every pair.
    pub fn replay(&self, oracle: &dyn PreferenceOracle) -> bool {
        self.pairs
            .iter()
            .zip(&self.observed)
            .all(|((f, g), rel)| oracle.compare(f, g) == *rel)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub trials: usize,
    /// Trials that exercised the axiom (not vacuous, not unknown).
    pub tested: usize,
    pub vacuous: usize,
    pub unknown: usize,
    pub violation_count: usize,
    pub boundary_count: usize,
    pub inconclusive_count: usize,
    pub violations: Vec<Witness>,
    pub boundary: Vec<Witness>,
    pub inconclusive: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub completeness: Option<f64>,
    pub passed: bool,
}

enum Outcome {
    Ok,
    Vacuous,
    Unknown,
    Violation(Witness),
    Boundary(Witness),
    Inconclusive(Witness),
}

fn collect(axiom: &str, trials: usize, outcomes: Vec<Outcome>, cap: usize) -> AxiomReport {
    let mut r = AxiomReport {
        axiom: axiom.to_string(),
        trials,
        tested: 0,
        vacuous: 0,
        unknown: 0,
        violation_count: 0,
        boundary_count: 0,
        inconclusive_count: 0,
        violations: Vec::new(),
        boundary: Vec::new(),
        inconclusive: Vec::new(),
        completeness: None,
        passed: true,
    };
    for o in outcomes {
        match o {
            Outcome::Ok => r.tested += 1,
            Outcome::Vacuous => r.vacuous += 1,
            Outcome::Unknown => r.unknown += 1,
            Outcome::Violation(w) => {
                r.tested += 1;
                r.violation_count += 1;
                if r.violations.len() < cap {
                    r.violations.push(w);
                }
            }
            Outcome::Boundary(w) => {
                r.tested += 1;
                r.boundary_count += 1;
                if r.boundary.len() < cap {
                    r.boundary.push(w);
                }
            }
            Outcome::Inconclusive(w) => {
                r.tested += 1;
                r.inconclusive_count += 1;
                if r.inconclusive.len() < cap {
                    r.inconclusive.push(w);
                }
            }
        }
    }
    r.passed = r.violation_count == 0 && r.inconclusive_count == 0;
    r
}

/// Completeness and transitivity of recorded comparisons. Violations are
/// triples with `f >= g`, `g >= h` and `h > f`, reported once per cycle.
pub fn check_weak_order(data: &PreferenceDataset) -> AxiomReport {
    let k = data.len();
    let mut weak = vec![vec![false; k]; k];
    let mut strict = vec![vec![false; k]; k];
    let mut related: HashSet<(usize, usize)> = HashSet::new();
    for (i, row) in weak.iter_mut().enumerate() {
        row[i] = true;
    }
    for (i, j, rel) in data.comparisons_resolved() {
        match rel {
            Relation::Better => {
                weak[i][j] = true;
                strict[i][j] = true;
            }
            Relation::Worse => {
                weak[j][i] = true;
                strict[j][i] = true;
            }
            Relation::Indifferent => {
                weak[i][j] = true;
                weak[j][i] = true;
            }
            Relation::Unknown => continue,
        }
        if i != j {
            related.insert((i.min(j), i.max(j)));
        }
    }
    let total_pairs = k * k.saturating_sub(1) / 2;
    let completeness = if total_pairs == 0 || related.is_empty() { 0.0 } else { related.len() as f64 / total_pairs as f64 };

    let oracle = data.oracle();
    let mut seen = HashSet::new();
    let mut outcomes = Vec::new();
    for f in 0..k {
        for (g, weak_g) in weak.iter().enumerate() {
            if !weak[f][g] {
                continue;
            }
            for h in 0..k {
                if weak_g[h] && strict[h][f] {
                    let cyc = [f, g, h];
                    let start = (0..3).min_by_key(|&r| cyc[r]).unwrap();
                    let key = (cyc[start], cyc[(start + 1) % 3], cyc[(start + 2) % 3]);
                    if !seen.insert(key) {
                        continue;
                    }
                    let pairs = vec![
                        (data.act(f).clone(), data.act(g).clone()),
                        (data.act(g).clone(), data.act(h).clone()),
                        (data.act(h).clone(), data.act(f).clone()),
                    ];
                    let observed = pairs.iter().map(|(a, b)| oracle.compare(a, b)).collect();
                    outcomes.push(Outcome::Violation(Witness {
                        trial: outcomes.len(),
                        pairs,
                        observed,
                        alpha: None,
                        indices: Some(vec![f, g, h]),
                        note: "f >= g, g >= h, h > f".into(),
                    }));
                }
            }
        }
    }
    let mut report = collect("A1", related.len(), outcomes, usize::MAX);
    report.tested = related.len();
    report.completeness = Some(completeness);
    report
}

/// Weak order for an oracle: record its verdicts on all pairs of enough
/// random acts to cover `trials` pairs, then check the resulting dataset.
pub fn check_weak_order_oracle(oracle: &dyn PreferenceOracle, universe: &Universe, cfg: &CheckConfig) -> Result<AxiomReport> {
    let mut rng = seeded(cfg.seed);
    let mut k = 2;
    while k * (k - 1) / 2 < cfg.trials {
        k += 1;
    }
    let acts = (0..k)
        .map(|_| random_act(&mut rng, universe.num_states(), universe.num_prizes()))
        .collect();
    let data = PreferenceDataset::from_oracle(oracle, universe.clone(), acts)?;
    let mut report = check_weak_order(&data);
    report.violations.truncate(cfg.max_witnesses);
    Ok(report)
}

/// Best and worst prizes under the oracle's ranking of constant acts.
fn extreme_prizes(oracle: &dyn PreferenceOracle, universe: &Universe) -> Option<(Act, Act)> {
    let n = universe.num_states();
    let m = universe.num_prizes();
    let prize = |x: usize| constant_act(&Lottery::degenerate(m, x), n);
    let (mut best, mut worst) = (0, 0);
    for x in 1..m {
        match oracle.compare(&prize(x), &prize(best)) {
            Relation::Better => best = x,
            Relation::Unknown => return None,
            _ => {}
        }
        match oracle.compare(&prize(x), &prize(worst)) {
            Relation::Worse => worst = x,
            Relation::Unknown => return None,
            _ => {}
        }
    }
    Some((prize(best), prize(worst)))
}

/// An act indifferent to `f` on the segment between `start` and the best or
/// worst constant act, located by bisection. `None` if the oracle never
/// reports indifference.
fn indifferent_partner(
    oracle: &dyn PreferenceOracle,
    f: &Act,
    start: &Act,
    extremes: &(Act, Act),
    steps: usize,
) -> Option<Act> {
    let rel = oracle.compare(start, f);
    let end = match rel {
        Relation::Indifferent => return Some(start.clone()),
        Relation::Better => &extremes.1,
        Relation::Worse => &extremes.0,
        Relation::Unknown => return None,
    };
    match oracle.compare(end, f) {
        Relation::Indifferent => return Some(end.clone()),
        r if r == rel || r == Relation::Unknown => return None,
        _ => {}
    }
    // Path t -> t * start + (1 - t) * end; `rel` holds at t = 1.
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..steps {
        let t = 0.5 * (lo + hi);
        let g = mix_acts(t, start, end).ok()?;
        let r = oracle.compare(&g, f);
        if r == Relation::Indifferent {
            return Some(g);
        }
        if r == Relation::Unknown {
            return None;
        }
        if r == rel {
            hi = t;
        } else {
            lo = t;
        }
    }
    None
}

fn a2_partner(oracle: &dyn PreferenceOracle, f: &Act, g0: &Act, extremes: &(Act, Act), offset: f64, steps: usize) -> Act {
    // A near-indifferent partner: walk a little away from the indifference
    // point along the segment towards g0 or the extreme constant.
    match indifferent_partner(oracle, f, g0, extremes, steps) {
        Some(g) => {
            let towards = if offset > 0.0 { &extremes.0 } else { &extremes.1 };
            mix_acts(1.0 - offset.abs(), &g, towards).unwrap_or(g)
        }
        None => g0.clone(),
    }
}

/// Certainty independence: `f > g` iff `a f + (1-a) h > a g + (1-a) h` for
/// constant `h`. Strict reversals are violations; a strict relation turning
/// into indifference (or back) is reported separately as a boundary case.
pub fn check_certainty_independence(
    oracle: &dyn PreferenceOracle,
    universe: &Universe,
    cfg: &CheckConfig,
) -> Result<AxiomReport> {
    let (n, m) = (universe.num_states(), universe.num_prizes());
    let mut rng = seeded(cfg.seed);
    let extremes = extreme_prizes(oracle, universe);
    let inputs: Vec<(Act, Act, Act, f64, Option<f64>)> = (0..cfg.trials)
        .map(|t| {
            let f = random_act(&mut rng, n, m);
            let g = random_act(&mut rng, n, m);
            let h = random_constant_act(&mut rng, n, m);
            let alpha = *cfg.alpha_grid.choose(&mut rng).expect("nonempty grid");
            let near = (t % 2 == 1).then(|| {
                let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                sign * rng.random_range(0.005..0.1)
            });
            (f, g, h, alpha, near)
        })
        .collect();
    let steps = cfg.tol.max_bisection_steps;
    let outcomes = inputs
        .into_par_iter()
        .enumerate()
        .map(|(trial, (f, g0, h, alpha, near))| {
            let g = match (near, &extremes) {
                (Some(off), Some(ext)) => a2_partner(oracle, &f, &g0, ext, off, steps),
                _ => g0,
            };
            let fm = mix_acts(alpha, &f, &h).expect("same universe");
            let gm = mix_acts(alpha, &g, &h).expect("same universe");
            let before = oracle.compare(&f, &g);
            let after = oracle.compare(&fm, &gm);
            if before == Relation::Unknown || after == Relation::Unknown {
                return Outcome::Unknown;
            }
            if before == after {
                return Outcome::Ok;
            }
            let w = Witness {
                trial,
                pairs: vec![(f, g), (fm, gm)],
                observed: vec![before, after],
                alpha: Some(alpha),
                indices: None,
                note: format!("f {before} g but mixed with constant h at alpha={alpha}: {after}"),
            };
            if before.is_strict() && after.is_strict() {
                Outcome::Violation(w)
            } else {
                Outcome::Boundary(w)
            }
        })
        .collect();
    Ok(collect("A2", cfg.trials, outcomes, cfg.max_witnesses))
}

/// Order three acts strictly as `f > g > h`, if the oracle allows.
fn strict_order(oracle: &dyn PreferenceOracle, acts: [Act; 3]) -> std::result::Result<Option<[Act; 3]>, ()> {
    let [a, b, c] = acts;
    let mut v = vec![a, b, c];
    // Insertion sort by the oracle, best first.
    for i in 1..3 {
        let mut j = i;
        while j > 0 {
            match oracle.compare(&v[j], &v[j - 1]) {
                Relation::Better => {
                    v.swap(j, j - 1);
                    j -= 1;
                }
                Relation::Unknown => return Err(()),
                _ => break,
            }
        }
    }
    for i in 0..2 {
        match oracle.compare(&v[i], &v[i + 1]) {
            Relation::Better => {}
            Relation::Unknown => return Err(()),
            _ => return Ok(None),
        }
    }
    let h = v.pop().unwrap();
    let g = v.pop().unwrap();
    let f = v.pop().unwrap();
    Ok(Some([f, g, h]))
}

/// Continuity: for sampled `f > g > h`, search the weight grid for
/// `a f + (1-a) h > g` and for `g > b f + (1-b) h`. Triples without a grid
/// witness are flagged inconclusive; a finite search cannot refute the axiom.
pub fn check_continuity(oracle: &dyn PreferenceOracle, universe: &Universe, cfg: &CheckConfig) -> Result<AxiomReport> {
    let (n, m) = (universe.num_states(), universe.num_prizes());
    let mut rng = seeded(cfg.seed);
    let inputs: Vec<[Act; 3]> = (0..cfg.trials)
        .map(|_| [random_act(&mut rng, n, m), random_act(&mut rng, n, m), random_act(&mut rng, n, m)])
        .collect();
    let mut weights = cfg.alpha_grid.clone();
    if cfg.continuity_tail {
        let k_max = (-(10.0 * cfg.tol.indifference).log10()).floor() as i32;
        for k in 3..=k_max {
            weights.push(1.0 - 10f64.powi(-k));
            weights.push(10f64.powi(-k));
        }
    }
    let outcomes = inputs
        .into_par_iter()
        .enumerate()
        .map(|(trial, triple)| {
            let [f, g, h] = match strict_order(oracle, triple) {
                Err(()) => return Outcome::Unknown,
                Ok(None) => return Outcome::Vacuous,
                Ok(Some(t)) => t,
            };
            let upper = weights
                .iter()
                .any(|&a| oracle.compare(&mix_acts(a, &f, &h).unwrap(), &g) == Relation::Better);
            let lower = weights
                .iter()
                .any(|&b| oracle.compare(&g, &mix_acts(b, &f, &h).unwrap()) == Relation::Better);
            if upper && lower {
                return Outcome::Ok;
            }
            let note = match (upper, lower) {
                (false, false) => "no grid weight for either clause",
                (false, true) => "no grid weight a with a f + (1-a) h > g",
                _ => "no grid weight b with g > b f + (1-b) h",
            };
            Outcome::Inconclusive(Witness {
                trial,
                pairs: vec![(f.clone(), g.clone()), (g, h)],
                observed: vec![Relation::Better, Relation::Better],
                alpha: None,
                indices: None,
                note: format!("grid-inconclusive: {note}"),
            })
        })
        .collect();
    Ok(collect("A3", cfg.trials, outcomes, cfg.max_witnesses))
}

/// Monotonicity: random pairs are rearranged statewise so that
/// `f(s)* >= g(s)*` for every state; any `f < g` is a violation.
pub fn check_monotonicity(oracle: &dyn PreferenceOracle, universe: &Universe, cfg: &CheckConfig) -> Result<AxiomReport> {
    let (n, m) = (universe.num_states(), universe.num_prizes());
    let mut rng = seeded(cfg.seed);
    let inputs: Vec<(Act, Act)> = (0..cfg.trials)
        .map(|_| (random_act(&mut rng, n, m), random_act(&mut rng, n, m)))
        .collect();
    let outcomes = inputs
        .into_par_iter()
        .enumerate()
        .map(|(trial, (mut f, mut g))| {
            for s in 0..n {
                let (fs, gs) = (constant_act(f.at(s), n), constant_act(g.at(s), n));
                match oracle.compare(&fs, &gs) {
                    Relation::Worse => {
                        let (a, b) = (f.at(s).clone(), g.at(s).clone());
                        f = f.with_state(s, b);
                        g = g.with_state(s, a);
                    }
                    Relation::Unknown => return Outcome::Unknown,
                    _ => {}
                }
            }
            if f == g {
                return Outcome::Vacuous;
            }
            match oracle.compare(&f, &g) {
                Relation::Unknown => Outcome::Unknown,
                Relation::Worse => Outcome::Violation(Witness {
                    trial,
                    pairs: vec![(f, g)],
                    observed: vec![Relation::Worse],
                    alpha: None,
                    indices: None,
                    note: "f(s)* >= g(s)* in every state but f < g".into(),
                }),
                _ => Outcome::Ok,
            }
        })
        .collect();
    Ok(collect("A4", cfg.trials, outcomes, cfg.max_witnesses))
}

/// Attitude towards hedging. For each trial an indifferent pair `f ~ g` is
/// built (even trials first try the state-rotated copy of `f`; otherwise a
/// random act is moved towards a constant until indifferent), and
/// `(f + g) / 2` is compared with `f` against the requested variant.
pub fn check_uncertainty_attitude(
    oracle: &dyn PreferenceOracle,
    universe: &Universe,
    cfg: &CheckConfig,
    variant: Variant,
) -> Result<AxiomReport> {
    let (n, m) = (universe.num_states(), universe.num_prizes());
    let mut rng = seeded(cfg.seed);
    let extremes = extreme_prizes(oracle, universe);
    let inputs: Vec<(Act, Act)> = (0..cfg.trials)
        .map(|_| (random_act(&mut rng, n, m), random_act(&mut rng, n, m)))
        .collect();
    let steps = cfg.tol.max_bisection_steps;
    let axiom = match variant {
        Variant::A5 => "A5",
        Variant::A5Prime => "A5'",
        Variant::A5DoublePrime => "A5''",
    };
    let outcomes = inputs
        .into_par_iter()
        .enumerate()
        .map(|(trial, (f, g0))| {
            let rotated = (n > 1 && trial % 2 == 0).then(|| {
                let mut values = f.values().to_vec();
                values.rotate_left(1);
                Act::new(values).expect("same universe")
            });
            let g = match rotated.filter(|r| oracle.compare(r, &f) == Relation::Indifferent && *r != f) {
                Some(r) => r,
                None => match &extremes {
                    Some(ext) => match indifferent_partner(oracle, &f, &g0, ext, steps) {
                        Some(g) => g,
                        None => return Outcome::Vacuous,
                    },
                    None => return Outcome::Unknown,
                },
            };
            let mid = mix_acts(0.5, &f, &g).expect("same universe");
            let rel = oracle.compare(&mid, &f);
            let bad = match (variant, rel) {
                (_, Relation::Unknown) => return Outcome::Unknown,
                (Variant::A5, Relation::Worse) => true,
                (Variant::A5Prime, Relation::Better) => true,
                (Variant::A5DoublePrime, r) => r != Relation::Indifferent,
                _ => false,
            };
            if !bad {
                return Outcome::Ok;
            }
            Outcome::Violation(Witness {
                trial,
                pairs: vec![(f.clone(), g.clone()), (mid, f)],
                observed: vec![Relation::Indifferent, rel],
                alpha: Some(0.5),
                indices: None,
                note: format!("f ~ g but (f + g)/2 {rel} f"),
            })
        })
        .collect();
    Ok(collect(axiom, cfg.trials, outcomes, cfg.max_witnesses))
}

/// Run A1 through A4 and the requested attitude axiom.
pub fn check_all(
    oracle: &dyn PreferenceOracle,
    universe: &Universe,
    cfg: &CheckConfig,
    variant: Variant,
) -> Result<Vec<AxiomReport>> {
    Ok(vec![
        check_weak_order_oracle(oracle, universe, cfg)?,
        check_certainty_independence(oracle, universe, cfg)?,
        check_continuity(oracle, universe, cfg)?,
        check_monotonicity(oracle, universe, cfg)?,
        check_uncertainty_attitude(oracle, universe, cfg, variant)?,
    ])
}
