//! The certainty-equivalent functional on utility acts.
//!
//! A [`Functional`] maps a state-indexed utility vector to a real number. It
//! comes in four shapes: the minimum or maximum of expectations over a
//! credal set, a single expectation, or the certainty equivalent read off a
//! preference oracle by bisection. The property checkers in this module
//! measure, on finite samples, how far a functional is from being
//! positively homogeneous, translation invariant, midpoint superadditive (or
//! subadditive), linear and monotone.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::axioms::{OracleFile, PreferenceOracle, Relation};
use crate::config::Tolerances;
use crate::credal::CredalSet;
use crate::error::{Error, Result};
use crate::lp::dot;
use crate::sampling::random_vector;
use crate::types::{constant_act, Act};
use crate::utility::{normalize_utility, UtilityFunction};

/// Element of the space of simple utility-valued acts: one value per state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct UtilityAct {
    values: Vec<f64>,
    lo: f64,
    hi: f64,
}

impl UtilityAct {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("utility act needs at least one state".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("non-finite utility value".into()));
        }
        let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Ok(Self { values, lo, hi })
    }

    pub fn constant(n: usize, k: f64) -> Self {
        Self::new(vec![k; n]).expect("finite constant")
    }

    /// Indicator of the event `E`, given as a bitmask over states.
    pub fn set_indicator(n: usize, event: u64) -> Self {
        Self::new((0..n).map(|s| if event >> s & 1 == 1 { 1.0 } else { 0.0 }).collect())
            .expect("finite indicator")
    }

    pub fn unit(n: usize, s: usize) -> Self {
        Self::set_indicator(n, 1 << s)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Smallest state value.
    pub fn lo(&self) -> f64 {
        self.lo
    }

    /// Largest state value.
    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn is_constant(&self) -> bool {
        self.lo == self.hi
    }

    pub fn sup_norm(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn scale(&self, lambda: f64) -> Self {
        Self::new(self.values.iter().map(|v| lambda * v).collect()).expect("finite")
    }

    pub fn shift(&self, r: f64) -> Self {
        Self::new(self.values.iter().map(|v| v + r).collect()).expect("finite")
    }

    pub fn add(&self, other: &UtilityAct) -> Self {
        Self::new(self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect()).expect("finite")
    }

    /// `alpha * self + (1 - alpha) * other`.
    pub fn mix(&self, alpha: f64, other: &UtilityAct) -> Self {
        Self::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| alpha * a + (1.0 - alpha) * b)
                .collect(),
        )
        .expect("finite")
    }

    pub fn dominates(&self, other: &UtilityAct) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a >= b)
    }

    pub fn in_domain(&self, domain: Domain) -> bool {
        let slack = 1e-12 * (1.0 + self.sup_norm());
        self.lo >= domain.lo - slack && self.hi <= domain.hi + slack
    }
}

impl TryFrom<Vec<f64>> for UtilityAct {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        UtilityAct::new(v)
    }
}

impl From<UtilityAct> for Vec<f64> {
    fn from(b: UtilityAct) -> Self {
        b.values
    }
}

/// Range of admissible state values: `[lo, hi]`, infinite for the whole space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
}

impl Domain {
    pub const UNBOUNDED: Domain = Domain { lo: f64::NEG_INFINITY, hi: f64::INFINITY };

    pub fn interval(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() || self.hi.is_finite()
    }

    /// Finite sampling box: the domain clipped to `[-2, 2]`.
    fn sampling_box(&self) -> (f64, f64) {
        (self.lo.max(-2.0), self.hi.min(2.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Min,
    Max,
}

/// Expected shape of a functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Superlinear,
    Sublinear,
    Linear,
}

#[derive(Clone)]
pub enum FunctionalKind {
    CredalMin(CredalSet),
    CredalMax(CredalSet),
    /// Expectation against a weight vector. Weights are not required to be
    /// a probability here; recovery rejects non-monotone ones.
    Linear(Vec<f64>),
    OracleDerived {
        oracle: Arc<dyn PreferenceOracle>,
        utility: UtilityFunction,
        shape: Shape,
    },
}

impl fmt::Debug for FunctionalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionalKind::CredalMin(c) => f.debug_tuple("CredalMin").field(c).finish(),
            FunctionalKind::CredalMax(c) => f.debug_tuple("CredalMax").field(c).finish(),
            FunctionalKind::Linear(p) => f.debug_tuple("Linear").field(p).finish(),
            FunctionalKind::OracleDerived { oracle, utility, shape } => f
                .debug_struct("OracleDerived")
                .field("oracle", &oracle.describe())
                .field("utility", utility)
                .field("shape", shape)
                .finish(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Functional {
    kind: FunctionalKind,
    domain: Domain,
    /// Set after [`extend_to_b0`]: the original bounded domain that
    /// evaluations are rescaled into.
    base: Option<Domain>,
    tol: Tolerances,
}

impl Functional {
    pub fn credal_min(set: CredalSet) -> Self {
        Self::unbounded(FunctionalKind::CredalMin(set))
    }

    pub fn credal_max(set: CredalSet) -> Self {
        Self::unbounded(FunctionalKind::CredalMax(set))
    }

    pub fn linear(weights: Vec<f64>) -> Self {
        Self::unbounded(FunctionalKind::Linear(weights))
    }

    /// The certainty-equivalent functional of `oracle` on `B0(K)`, where `K`
    /// is the range of `utility`.
    pub fn oracle_derived(oracle: Arc<dyn PreferenceOracle>, utility: UtilityFunction, shape: Shape) -> Self {
        let domain = Domain::interval(utility.k_lo(), utility.k_hi());
        Self {
            kind: FunctionalKind::OracleDerived { oracle, utility, shape },
            domain,
            base: None,
            tol: Tolerances::default(),
        }
    }

    fn unbounded(kind: FunctionalKind) -> Self {
        Self { kind, domain: Domain::UNBOUNDED, base: None, tol: Tolerances::default() }
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    pub fn kind(&self) -> &FunctionalKind {
        &self.kind
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn expected_shape(&self) -> Shape {
        match &self.kind {
            FunctionalKind::CredalMin(_) => Shape::Superlinear,
            FunctionalKind::CredalMax(_) => Shape::Sublinear,
            FunctionalKind::Linear(_) => Shape::Linear,
            FunctionalKind::OracleDerived { shape, .. } => *shape,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match &self.kind {
            FunctionalKind::CredalMin(_) => "credal-min",
            FunctionalKind::CredalMax(_) => "credal-max",
            FunctionalKind::Linear(_) => "linear",
            FunctionalKind::OracleDerived { .. } => "oracle-derived",
        }
    }

    /// Number of states, when the functional fixes it.
    pub fn num_states(&self) -> Option<usize> {
        match &self.kind {
            FunctionalKind::CredalMin(c) | FunctionalKind::CredalMax(c) => Some(c.n()),
            FunctionalKind::Linear(p) => Some(p.len()),
            FunctionalKind::OracleDerived { .. } => None,
        }
    }

    pub fn eval(&self, b: &UtilityAct) -> Result<f64> {
        if !b.in_domain(self.domain) {
            return Err(Error::OutOfDomain { lo: self.domain.lo, hi: self.domain.hi });
        }
        match self.base {
            Some(base) => {
                let s = admissible_scale(b, base);
                self.eval_scaled(b, s)
            }
            None => self.eval_base(b),
        }
    }

    /// `s * I(b / s)` on an extended functional; `s` must map `b` into the
    /// original domain.
    pub fn eval_scaled(&self, b: &UtilityAct, s: f64) -> Result<f64> {
        let base = self.base.unwrap_or(self.domain);
        let scaled = b.scale(1.0 / s);
        if !scaled.in_domain(base) {
            return Err(Error::OutOfDomain { lo: base.lo, hi: base.hi });
        }
        Ok(s * self.eval_base(&scaled)?)
    }

    fn eval_base(&self, b: &UtilityAct) -> Result<f64> {
        match &self.kind {
            FunctionalKind::CredalMin(c) => eval_from_credal(c, b, Mode::Min),
            FunctionalKind::CredalMax(c) => eval_from_credal(c, b, Mode::Max),
            FunctionalKind::Linear(p) => {
                if p.len() != b.len() {
                    return Err(Error::Domain("utility act and weights differ in length".into()));
                }
                Ok(dot(p, b.values()))
            }
            FunctionalKind::OracleDerived { oracle, utility, .. } => {
                Ok(certainty_equivalent(oracle.as_ref(), utility, b, &self.tol)?.value)
            }
        }
    }
}

/// Smallest scale `s >= 1` with `b / s` inside `base`.
fn admissible_scale(b: &UtilityAct, base: Domain) -> f64 {
    let mut s: f64 = 1.0;
    if b.hi() > 0.0 {
        s = s.max(b.hi() / base.hi);
    }
    if b.lo() < 0.0 {
        s = s.max(b.lo() / base.lo);
    }
    s
}

/// `min` or `max` of `<b, p>` over the credal set, solved by the LP kernel.
pub fn eval_from_credal(set: &CredalSet, b: &UtilityAct, mode: Mode) -> Result<f64> {
    set.optimize(b.values(), mode).map(|(v, _)| v)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertaintyEquivalent {
    pub value: f64,
    /// Weight on the worst value: `value = lambda * lo + (1 - lambda) * hi`.
    pub lambda: f64,
    pub steps: usize,
}

/// The constant `c` with `c*` indifferent to `b` under the preference the
/// oracle induces on utility acts, found by bisection between `lo(b)` and
/// `hi(b)`.
pub fn certainty_equivalent(
    oracle: &dyn PreferenceOracle,
    utility: &UtilityFunction,
    b: &UtilityAct,
    tol: &Tolerances,
) -> Result<CertaintyEquivalent> {
    let n = b.len();
    let (lo, hi) = (b.lo(), b.hi());
    if b.is_constant() {
        return Ok(CertaintyEquivalent { value: lo, lambda: 1.0, steps: 0 });
    }
    let f = utility.act_with_utilities(b.values())?;
    let constant = |c: f64| -> Result<Act> { Ok(constant_act(&utility.lottery_with_utility(c)?, n)) };
    let query = |c: f64| -> Result<Relation> {
        match oracle.compare(&f, &constant(c)?) {
            Relation::Unknown => Err(Error::UnknownComparison),
            r => Ok(r),
        }
    };

    // Monotonicity: lo* <= b <= hi*.
    let at_lo = query(lo)?;
    let at_hi = query(hi)?;
    if at_lo == Relation::Worse || at_hi == Relation::Better {
        return Err(Error::AxiomViolation {
            axiom: "A4",
            detail: format!("act with utilities {:?} is not bracketed by its worst and best constants", b.values()),
        });
    }
    let lambda_of = |c: f64| ((hi - c) / (hi - lo)).clamp(0.0, 1.0);
    if at_lo == Relation::Indifferent {
        return Ok(CertaintyEquivalent { value: lo, lambda: 1.0, steps: 0 });
    }
    if at_hi == Relation::Indifferent {
        return Ok(CertaintyEquivalent { value: hi, lambda: 0.0, steps: 0 });
    }
    let (mut below, mut above) = (lo, hi);
    let mut steps = 0;
    while steps < tol.max_bisection_steps && (above - below) > tol.bisection * (hi - lo) {
        steps += 1;
        let mid = 0.5 * (below + above);
        match query(mid)? {
            Relation::Indifferent => return Ok(CertaintyEquivalent { value: mid, lambda: lambda_of(mid), steps }),
            Relation::Better => below = mid,
            Relation::Worse => above = mid,
            Relation::Unknown => unreachable!(),
        }
    }
    let value = 0.5 * (below + above);
    Ok(CertaintyEquivalent { value, lambda: lambda_of(value), steps })
}

/// Extend a positively homogeneous functional from `B0(K)` to all utility
/// acts by `I(b) = s * I(b / s)`.
pub fn extend_to_b0(functional: &Functional) -> Result<Functional> {
    let d = functional.domain;
    if !d.is_bounded() {
        return Ok(functional.clone());
    }
    if !(d.lo < 0.0 && d.hi > 0.0) {
        return Err(Error::Normalization(format!(
            "domain [{}, {}] does not contain a neighborhood of 0; normalize the utility first",
            d.lo, d.hi
        )));
    }
    let mut out = functional.clone();
    out.base = Some(d);
    out.domain = Domain::UNBOUNDED;
    Ok(out)
}

/// Outcome of one property check over a sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    pub samples: usize,
    pub max_violation: f64,
    /// The utility acts of the worst sample, when it violates the property.
    pub witness: Option<Vec<Vec<f64>>>,
    pub passed: bool,
}

fn summarize(property: &str, rows: Vec<(f64, Vec<Vec<f64>>)>, threshold: f64) -> PropertyReport {
    let samples = rows.len();
    let mut worst: Option<(f64, Vec<Vec<f64>>)> = None;
    for (v, w) in rows {
        if worst.as_ref().is_none_or(|(best, _)| v > *best) {
            worst = Some((v, w));
        }
    }
    let (max_violation, witness) = worst.unwrap_or((0.0, Vec::new()));
    let passed = max_violation <= threshold;
    PropertyReport {
        property: property.to_string(),
        samples,
        max_violation,
        witness: (!passed).then_some(witness),
        passed,
    }
}

/// `max |I(lambda b) - lambda I(b)|` over the samples.
pub fn check_positive_homogeneity(i: &Functional, samples: &[(f64, UtilityAct)]) -> Result<PropertyReport> {
    let rows = samples
        .par_iter()
        .map(|(lambda, b)| {
            let dev = (i.eval(&b.scale(*lambda))? - lambda * i.eval(b)?).abs();
            Ok((dev, vec![vec![*lambda], b.values().to_vec()]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize("positive_homogeneity", rows, i.tol.equality))
}

/// `max |I(b + r*) - I(b) - r|` over the samples.
pub fn check_translation(i: &Functional, samples: &[(UtilityAct, f64)]) -> Result<PropertyReport> {
    let rows = samples
        .par_iter()
        .map(|(b, r)| {
            let dev = (i.eval(&b.shift(*r))? - i.eval(b)? - r).abs();
            Ok((dev, vec![b.values().to_vec(), vec![*r]]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize("translation", rows, i.tol.equality))
}

/// Midpoint inequality in the direction the functional's shape demands:
/// `I(a/2 + b/2) >= I(a)/2 + I(b)/2` for superlinear, the reverse for
/// sublinear and equality for linear functionals.
pub fn check_midpoint_superadditivity(i: &Functional, samples: &[(UtilityAct, UtilityAct)]) -> Result<PropertyReport> {
    check_midpoint(i, samples, i.expected_shape())
}

pub fn check_midpoint(i: &Functional, samples: &[(UtilityAct, UtilityAct)], shape: Shape) -> Result<PropertyReport> {
    let rows = samples
        .par_iter()
        .map(|(a, b)| {
            let margin = i.eval(&a.mix(0.5, b))? - 0.5 * i.eval(a)? - 0.5 * i.eval(b)?;
            let violation = match shape {
                Shape::Superlinear => -margin,
                Shape::Sublinear => margin,
                Shape::Linear => margin.abs(),
            };
            Ok((violation.max(0.0), vec![a.values().to_vec(), b.values().to_vec()]))
        })
        .collect::<Result<Vec<_>>>()?;
    let name = match shape {
        Shape::Superlinear => "midpoint_superadditivity",
        Shape::Sublinear => "midpoint_subadditivity",
        Shape::Linear => "midpoint_additivity",
    };
    Ok(summarize(name, rows, i.tol.equality))
}

/// `max(|I(a + b) - I(a) - I(b)|, |I(b) + I(-b)|)` over the samples.
pub fn check_linearity(i: &Functional, samples: &[(UtilityAct, UtilityAct)]) -> Result<PropertyReport> {
    let rows = samples
        .par_iter()
        .map(|(a, b)| {
            let additive = (i.eval(&a.add(b))? - i.eval(a)? - i.eval(b)?).abs();
            let odd = (i.eval(b)? + i.eval(&b.scale(-1.0))?).abs();
            Ok((additive.max(odd), vec![a.values().to_vec(), b.values().to_vec()]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize("linearity", rows, i.tol.equality))
}

/// Pairs are reordered so the first dominates the second coordinatewise;
/// reports `max(I(c) - I(b))` over `b >= c`.
pub fn check_monotonicity(i: &Functional, samples: &[(UtilityAct, UtilityAct)]) -> Result<PropertyReport> {
    let rows = samples
        .par_iter()
        .map(|(a, b)| {
            let hi = UtilityAct::new(a.values().iter().zip(b.values()).map(|(x, y)| x.max(*y)).collect())?;
            let lo = UtilityAct::new(a.values().iter().zip(b.values()).map(|(x, y)| x.min(*y)).collect())?;
            let dev = (i.eval(&lo)? - i.eval(&hi)?).max(0.0);
            Ok((dev, vec![hi.values().to_vec(), lo.values().to_vec()]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize("monotonicity", rows, i.tol.equality))
}

/// `max(|I(1*) - 1|, |I(-1*) + 1|)`.
pub fn check_normalization(i: &Functional, n: usize) -> Result<PropertyReport> {
    let up = (i.eval(&UtilityAct::constant(n, 1.0))? - 1.0).abs();
    let down = (i.eval(&UtilityAct::constant(n, -1.0))? + 1.0).abs();
    Ok(summarize("normalization", vec![(up.max(down), vec![vec![1.0; n]])], i.tol.equality))
}

/// Random `(lambda, b)` with both `b` and `lambda b` inside the domain;
/// `lambda` ranges over `(0, 3]`.
pub fn homogeneity_samples<R: Rng>(rng: &mut R, n: usize, domain: Domain, count: usize) -> Vec<(f64, UtilityAct)> {
    let (lo, hi) = domain.sampling_box();
    (0..count)
        .map(|_| {
            let lambda: f64 = rng.random_range(0.0..3.0);
            let shrink = lambda.max(1.0);
            let b = UtilityAct::new(random_vector(rng, n, lo / shrink, hi / shrink)).unwrap();
            (lambda, b)
        })
        .collect()
}

/// Random `(b, r)` with `b` and `b + r*` inside the domain.
pub fn translation_samples<R: Rng>(rng: &mut R, n: usize, domain: Domain, count: usize) -> Vec<(UtilityAct, f64)> {
    let (lo, hi) = domain.sampling_box();
    (0..count)
        .map(|_| {
            let b = UtilityAct::new(random_vector(rng, n, lo, hi)).unwrap();
            let (rmin, rmax) = (lo - b.lo(), hi - b.hi());
            let r = if rmax > rmin { rng.random_range(rmin..=rmax) } else { 0.0 };
            (b, r)
        })
        .collect()
}

/// Random pairs inside the domain (midpoints stay inside by convexity).
pub fn pair_samples<R: Rng>(rng: &mut R, n: usize, domain: Domain, count: usize) -> Vec<(UtilityAct, UtilityAct)> {
    let (lo, hi) = domain.sampling_box();
    (0..count)
        .map(|_| {
            (
                UtilityAct::new(random_vector(rng, n, lo, hi)).unwrap(),
                UtilityAct::new(random_vector(rng, n, lo, hi)).unwrap(),
            )
        })
        .collect()
}

/// Pairs whose sums and negatives stay inside the domain.
pub fn linearity_samples<R: Rng>(rng: &mut R, n: usize, domain: Domain, count: usize) -> Vec<(UtilityAct, UtilityAct)> {
    let (lo, hi) = domain.sampling_box();
    let m = 0.5 * (-lo).min(hi);
    (0..count)
        .map(|_| {
            (
                UtilityAct::new(random_vector(rng, n, -m, m)).unwrap(),
                UtilityAct::new(random_vector(rng, n, -m, m)).unwrap(),
            )
        })
        .collect()
}

/// JSON description of a functional.
///
/// `oracle` wraps a preference oracle: its utility is normalized onto
/// `[-1, 1]` and the certainty-equivalent functional is extended to all
/// utility acts by positive homogeneity.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FunctionalSpec {
    CredalMin { set: CredalSet },
    CredalMax { set: CredalSet },
    Linear { weights: Vec<f64> },
    Oracle {
        oracle: OracleFile,
        #[serde(default = "default_shape")]
        shape: Shape,
    },
}

fn default_shape() -> Shape {
    Shape::Superlinear
}

impl FunctionalSpec {
    pub fn build(&self, tol: Tolerances) -> Result<Functional> {
        let f = match self {
            FunctionalSpec::CredalMin { set } => Functional::credal_min(set.clone()),
            FunctionalSpec::CredalMax { set } => Functional::credal_max(set.clone()),
            FunctionalSpec::Linear { weights } => Functional::linear(weights.clone()),
            FunctionalSpec::Oracle { oracle, shape } => {
                let oracle = oracle.build()?;
                let u = normalize_utility(oracle.utility())?;
                let f = Functional::oracle_derived(Arc::new(oracle), u, *shape).with_tolerances(tol);
                return extend_to_b0(&f);
            }
        };
        Ok(f.with_tolerances(tol))
    }

    /// Number of states the functional acts on.
    pub fn num_states(&self) -> usize {
        match self {
            FunctionalSpec::CredalMin { set } | FunctionalSpec::CredalMax { set } => set.n(),
            FunctionalSpec::Linear { weights } => weights.len(),
            FunctionalSpec::Oracle { oracle, .. } => oracle.universe.num_states(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::HalfSpace;
    use crate::sampling::seeded;

    fn ua(v: &[f64]) -> UtilityAct {
        UtilityAct::new(v.to_vec()).unwrap()
    }

    fn c13() -> CredalSet {
        CredalSet::from_hrep(
            2,
            vec![HalfSpace::new(vec![1.0, 0.0], 1.0 / 3.0), HalfSpace::new(vec![-1.0, 0.0], -2.0 / 3.0)],
        )
        .unwrap()
    }

    /// Brute-force support value of `b` over `{p in simplex_2 : p1 in [1/3, 2/3]}`
    /// on a 1e-4 grid.
    fn grid_min_c13(b: &[f64]) -> f64 {
        (0..=10_000)
            .map(|k| k as f64 * 1e-4)
            .filter(|p1| *p1 >= 1.0 / 3.0 - 1e-12 && *p1 <= 2.0 / 3.0 + 1e-12)
            .map(|p1| b[0] * p1 + b[1] * (1.0 - p1))
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn credal_evaluation() {
        let simplex = CredalSet::simplex(2);
        assert!((eval_from_credal(&simplex, &ua(&[1.0, -1.0]), Mode::Min).unwrap() + 1.0).abs() < 1e-12);
        let single = CredalSet::singleton(vec![0.5, 0.5]).unwrap();
        assert!(eval_from_credal(&single, &ua(&[1.0, -1.0]), Mode::Min).unwrap().abs() < 1e-12);
        let grid = grid_min_c13(&[1.0, 0.0]);
        let v = eval_from_credal(&c13(), &ua(&[1.0, 0.0]), Mode::Min).unwrap();
        assert!((v - grid).abs() < 2e-4);
        assert!((v - 1.0 / 3.0).abs() < 1e-12);
        // Constant acts evaluate to their constant.
        assert!((eval_from_credal(&c13(), &ua(&[0.7, 0.7]), Mode::Max).unwrap() - 0.7).abs() < 1e-12);
    }

    #[test]
    fn extension_rescales() {
        let i = Functional::credal_min(CredalSet::simplex(2)).with_domain(Domain::interval(-1.0, 1.0));
        assert!(matches!(i.eval(&ua(&[10.0, -10.0])), Err(Error::OutOfDomain { .. })));
        let ext = extend_to_b0(&i).unwrap();
        assert!((ext.eval(&ua(&[10.0, -10.0])).unwrap() + 10.0).abs() < 1e-12);
        assert_eq!(ext.eval(&ua(&[0.5, -0.3])).unwrap(), i.eval(&ua(&[0.5, -0.3])).unwrap());
        assert!((ext.eval(&UtilityAct::constant(2, 1.0)).unwrap() - 1.0).abs() < 1e-12);
        assert!((ext.eval(&UtilityAct::constant(2, -1.0)).unwrap() + 1.0).abs() < 1e-12);

        let bad = Functional::credal_min(CredalSet::simplex(2)).with_domain(Domain::interval(0.0, 10.0));
        assert!(matches!(extend_to_b0(&bad), Err(Error::Normalization(_))));
    }

    #[test]
    fn extension_is_scale_independent() {
        let mut rng = seeded(11);
        let set = CredalSet::from_hrep(3, vec![HalfSpace::new(vec![1.0, -1.0, 0.0], -0.2)]).unwrap();
        let ext = extend_to_b0(&Functional::credal_min(set).with_domain(Domain::interval(-1.0, 1.0))).unwrap();
        for _ in 0..200 {
            let norm = 10f64.powf(rng.random_range(0.0..3.0));
            let b = ua(&random_vector(&mut rng, 3, -norm, norm));
            let s1 = b.sup_norm().max(1.0);
            let s2 = 2.5 * s1;
            let v1 = ext.eval_scaled(&b, s1).unwrap();
            let v2 = ext.eval_scaled(&b, s2).unwrap();
            assert!((v1 - v2).abs() <= 1e-10 * (1.0 + v1.abs()), "{v1} vs {v2}");
        }
    }

    #[test]
    fn credal_min_is_homogeneous_translation_invariant_and_superadditive() {
        let mut rng = seeded(5);
        let set = CredalSet::from_hrep(
            3,
            vec![HalfSpace::new(vec![1.0, 0.0, 0.0], 0.1), HalfSpace::new(vec![0.0, -1.0, 1.0], -0.3)],
        )
        .unwrap();
        let i = Functional::credal_min(set);
        let d = Domain::interval(-1.0, 1.0);
        let h = check_positive_homogeneity(&i, &homogeneity_samples(&mut rng, 3, d, 1000)).unwrap();
        assert!(h.passed, "{h:?}");
        let t = check_translation(&i, &translation_samples(&mut rng, 3, d, 1000)).unwrap();
        assert!(t.passed, "{t:?}");
        let m = check_midpoint_superadditivity(&i, &pair_samples(&mut rng, 3, d, 1000)).unwrap();
        assert!(m.passed, "{m:?}");
        let mono = check_monotonicity(&i, &pair_samples(&mut rng, 3, d, 1000)).unwrap();
        assert!(mono.passed, "{mono:?}");
        assert!(check_normalization(&i, 3).unwrap().passed);
    }

    #[test]
    fn trivial_property_cases() {
        let i = Functional::credal_min(CredalSet::simplex(2));
        let b = ua(&[0.3, -0.7]);
        let h = check_positive_homogeneity(&i, &[(1.0, b.clone())]).unwrap();
        assert_eq!(h.max_violation, 0.0);
        assert_eq!(i.eval(&b.scale(0.0)).unwrap(), 0.0);
        let t = check_translation(&i, &[(b.clone(), 0.0)]).unwrap();
        assert_eq!(t.max_violation, 0.0);
        let m = check_midpoint_superadditivity(&i, &[(b.clone(), b.clone())]).unwrap();
        assert_eq!(m.max_violation, 0.0);
        // Translation of the (1, -1) act by 1/2 on the full simplex.
        assert!((i.eval(&ua(&[1.5, -0.5])).unwrap() + 0.5).abs() < 1e-12);
    }

    #[test]
    fn hedging_gain_and_sublinear_witness() {
        let a = ua(&[1.0, -1.0]);
        let b = ua(&[-1.0, 1.0]);
        let i = Functional::credal_min(CredalSet::simplex(2));
        assert!(i.eval(&a.mix(0.5, &b)).unwrap().abs() < 1e-12);
        let r = check_midpoint_superadditivity(&i, &[(a.clone(), b.clone())]).unwrap();
        assert!(r.passed);

        // The same pair refutes superadditivity for the max functional.
        let j = Functional::credal_max(CredalSet::simplex(2));
        let r = check_midpoint(&j, &[(a.clone(), b.clone())], Shape::Superlinear).unwrap();
        assert!(!r.passed);
        assert_eq!(r.witness.unwrap(), vec![vec![1.0, -1.0], vec![-1.0, 1.0]]);
        assert!(check_midpoint_superadditivity(&j, &[(a, b)]).unwrap().passed);
    }

    #[test]
    fn linearity_discriminates() {
        let mut rng = seeded(9);
        let samples = linearity_samples(&mut rng, 3, Domain::interval(-1.0, 1.0), 300);
        let lin = Functional::linear(vec![0.2, 0.3, 0.5]);
        assert!(check_linearity(&lin, &samples).unwrap().passed);
        assert_eq!(lin.eval(&UtilityAct::constant(3, 0.0)).unwrap(), 0.0);
        let two = CredalSet::from_hrep(3, vec![HalfSpace::new(vec![0.0, 0.0, 1.0], 0.5)]).unwrap();
        let r = check_linearity(&Functional::credal_min(two), &samples).unwrap();
        assert!(!r.passed);
        assert!(r.witness.is_some());
    }

    #[test]
    fn indicator_acts() {
        assert_eq!(UtilityAct::set_indicator(3, 0b101).values(), &[1.0, 0.0, 1.0]);
        assert_eq!(UtilityAct::unit(2, 1).values(), &[0.0, 1.0]);
        let b = ua(&[0.2, -0.4, 0.9]);
        assert_eq!((b.lo(), b.hi()), (-0.4, 0.9));
    }
}
