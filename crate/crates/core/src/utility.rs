//! The affine utility on lotteries and its calibration from constant-act
//! comparisons.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::axioms::{PreferenceDataset, PreferenceOracle, Relation};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::functional::UtilityAct;
use crate::lp::dot;
use crate::types::{constant_act, mix_lotteries, Act, Lottery, Universe};

/// Utility of each prize; extended to lotteries by expectation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct UtilityFunction {
    values: Vec<f64>,
    best: usize,
    worst: usize,
}

impl UtilityFunction {
    /// Requires at least two prizes with distinct utilities.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Domain("utility needs at least two prizes".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("non-finite utility".into()));
        }
        let best = (0..values.len()).max_by(|&i, &j| values[i].total_cmp(&values[j]).then(j.cmp(&i))).unwrap();
        let worst = (0..values.len()).min_by(|&i, &j| values[i].total_cmp(&values[j]).then(i.cmp(&j))).unwrap();
        if values[best] == values[worst] {
            return Err(Error::DegeneratePreference);
        }
        Ok(Self { values, best, worst })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn k_lo(&self) -> f64 {
        self.values[self.worst]
    }

    pub fn k_hi(&self) -> f64 {
        self.values[self.best]
    }

    pub fn best_prize(&self) -> usize {
        self.best
    }

    pub fn worst_prize(&self) -> usize {
        self.worst
    }

    pub fn from_map(universe: &Universe, map: &BTreeMap<String, f64>) -> Result<Self> {
        let mut values = vec![None; universe.num_prizes()];
        for (name, &v) in map {
            let i = universe
                .prize_index(name)
                .ok_or_else(|| Error::Parse(format!("unknown prize `{name}`")))?;
            values[i] = Some(v);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::Parse(format!("utility missing prize `{}`", universe.prizes()[i]))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }

    pub fn to_map(&self, universe: &Universe) -> BTreeMap<String, f64> {
        universe.prizes().iter().cloned().zip(self.values.iter().copied()).collect()
    }

    /// Lottery on the best and worst prizes whose utility is `c`.
    pub fn lottery_with_utility(&self, c: f64) -> Result<Lottery> {
        let (lo, hi) = (self.k_lo(), self.k_hi());
        let slack = 1e-12 * (1.0 + lo.abs().max(hi.abs()));
        if c < lo - slack || c > hi + slack {
            return Err(Error::OutOfDomain { lo, hi });
        }
        let q = ((c - lo) / (hi - lo)).clamp(0.0, 1.0);
        let m = self.values.len();
        mix_lotteries(q, &Lottery::degenerate(m, self.best), &Lottery::degenerate(m, self.worst))
    }

    /// An act whose statewise utilities are `b`.
    pub fn act_with_utilities(&self, b: &[f64]) -> Result<Act> {
        Act::new(b.iter().map(|&c| self.lottery_with_utility(c)).collect::<Result<Vec<_>>>()?)
    }
}

impl TryFrom<Vec<f64>> for UtilityFunction {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        UtilityFunction::new(v)
    }
}

impl From<UtilityFunction> for Vec<f64> {
    fn from(u: UtilityFunction) -> Self {
        u.values
    }
}

/// Expected prize utility under `y`.
pub fn evaluate_utility(u: &UtilityFunction, y: &Lottery) -> f64 {
    dot(u.values(), y.probs())
}

/// Statewise composition `u o f`.
pub fn utility_act(u: &UtilityFunction, f: &Act) -> UtilityAct {
    UtilityAct::new(f.values().iter().map(|y| evaluate_utility(u, y)).collect()).expect("finite utilities")
}

/// Positive affine rescale mapping `[K_lo, K_hi]` onto `[-1, 1]`.
pub fn normalize_utility(u: &UtilityFunction) -> Result<UtilityFunction> {
    let (lo, hi) = (u.k_lo(), u.k_hi());
    if lo >= hi {
        return Err(Error::DegeneratePreference);
    }
    if lo == -1.0 && hi == 1.0 {
        return Ok(u.clone());
    }
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let values = u
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if i == u.best {
                1.0
            } else if i == u.worst {
                -1.0
            } else {
                ((v - mid) / half).clamp(-1.0, 1.0)
            }
        })
        .collect();
    UtilityFunction::new(values)
}

fn strict(oracle: &dyn PreferenceOracle, f: &Act, g: &Act) -> Result<Relation> {
    match oracle.compare(f, g) {
        Relation::Unknown => Err(Error::UnknownComparison),
        r => Ok(r),
    }
}

/// Build a utility from the oracle's ranking of constant acts: the best and
/// worst prizes get `1` and `-1`, every other prize `2q - 1` where `q` is its
/// probability equivalent between them, found by bisection.
pub fn calibrate_utility(oracle: &dyn PreferenceOracle, universe: &Universe, tol: &Tolerances) -> Result<UtilityFunction> {
    let n = universe.num_states();
    let m = universe.num_prizes();
    let prize = |x: usize| constant_act(&Lottery::degenerate(m, x), n);

    let (mut best, mut worst) = (0, 0);
    for x in 1..m {
        if strict(oracle, &prize(x), &prize(best))? == Relation::Better {
            best = x;
        }
        if strict(oracle, &prize(x), &prize(worst))? == Relation::Worse {
            worst = x;
        }
    }
    if strict(oracle, &prize(best), &prize(worst))? != Relation::Better {
        return Err(Error::DegeneratePreference);
    }

    let top = Lottery::degenerate(m, best);
    let bottom = Lottery::degenerate(m, worst);
    let mut values = vec![0.0; m];
    for (x, value) in values.iter_mut().enumerate() {
        if x == best {
            *value = 1.0;
            continue;
        }
        if x == worst {
            *value = -1.0;
            continue;
        }
        let target = prize(x);
        let mixture = |q: f64| -> Result<Act> { Ok(constant_act(&mix_lotteries(q, &top, &bottom)?, n)) };
        if strict(oracle, &target, &mixture(0.0)?)? == Relation::Worse
            || strict(oracle, &target, &mixture(1.0)?)? == Relation::Better
        {
            return Err(Error::AxiomViolation {
                axiom: "A4",
                detail: format!("prize `{}` is not bracketed by the best and worst prizes", universe.prizes()[x]),
            });
        }
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        let mut q = None;
        for _ in 0..tol.max_bisection_steps {
            if hi - lo <= tol.bisection {
                break;
            }
            let mid = 0.5 * (lo + hi);
            match strict(oracle, &target, &mixture(mid)?)? {
                Relation::Indifferent => {
                    q = Some(mid);
                    break;
                }
                Relation::Better => lo = mid,
                Relation::Worse => hi = mid,
                Relation::Unknown => unreachable!(),
            }
        }
        let q = q.unwrap_or(0.5 * (lo + hi));
        *value = 2.0 * q - 1.0;
    }
    UtilityFunction::new(values)
}

/// Calibration from finite comparison data. Prize acts `x*` must be ranked
/// against each other in the dataset; each intermediate prize's probability
/// equivalent is bracketed by the recorded comparisons against constant
/// best/worst mixtures (an exact `~` record pins it).
pub fn calibrate_from_dataset(data: &PreferenceDataset) -> Result<UtilityFunction> {
    let universe = data.universe();
    let n = universe.num_states();
    let m = universe.num_prizes();
    let oracle = data.oracle();
    let prize = |x: usize| constant_act(&Lottery::degenerate(m, x), n);

    let mut best = 0;
    let mut worst = 0;
    for x in 1..m {
        match oracle.compare(&prize(x), &prize(best)) {
            Relation::Better => best = x,
            Relation::Unknown => return Err(Error::UnknownComparison),
            _ => {}
        }
        match oracle.compare(&prize(x), &prize(worst)) {
            Relation::Worse => worst = x,
            Relation::Unknown => return Err(Error::UnknownComparison),
            _ => {}
        }
    }
    if oracle.compare(&prize(best), &prize(worst)) != Relation::Better {
        return Err(Error::DegeneratePreference);
    }

    let mut values = vec![0.0; m];
    values[best] = 1.0;
    values[worst] = -1.0;
    for (x, value) in values.iter_mut().enumerate() {
        if x == best || x == worst {
            continue;
        }
        let (mut lo, mut hi, mut exact) = (0.0f64, 1.0f64, None);
        for (i, j, rel) in data.comparisons_resolved() {
            let (a, b, rel) = (data.act(i), data.act(j), rel);
            let (other, rel) = if a.approx_eq(&prize(x), 1e-12) {
                (b, rel)
            } else if b.approx_eq(&prize(x), 1e-12) {
                (a, rel.reverse())
            } else {
                continue;
            };
            let Some(y) = other.constant_value() else { continue };
            let support_ok = y
                .probs()
                .iter()
                .enumerate()
                .all(|(k, &p)| p == 0.0 || k == best || k == worst);
            if !support_ok {
                continue;
            }
            let q = y.probs()[best];
            match rel {
                Relation::Better => lo = lo.max(q),
                Relation::Worse => hi = hi.min(q),
                Relation::Indifferent => exact = Some(q),
                Relation::Unknown => {}
            }
        }
        if lo > hi {
            return Err(Error::AxiomViolation {
                axiom: "A1",
                detail: format!("recorded comparisons for prize `{}` are inconsistent", universe.prizes()[x]),
            });
        }
        *value = 2.0 * exact.unwrap_or(0.5 * (lo + hi)) - 1.0;
    }
    UtilityFunction::new(values)
}
