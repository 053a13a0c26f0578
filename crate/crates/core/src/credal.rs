//! Credal sets: closed convex sets of priors over a finite state space.
//!
//! A set is stored as half-spaces `<b, p> >= bound` intersected with the
//! probability simplex. The irredundant part of that list and, for up to six
//! states, the vertex list are derived once at construction. Recovery from a
//! superlinear functional intersects one half-space per probe direction,
//! which is the finite-dimensional form of dominating linear extensions.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::{
    check_linearity, check_midpoint, linearity_samples, pair_samples, Domain, Functional, Mode,
    PropertyReport, Shape, UtilityAct,
};
use crate::geometry::{diameter, hausdorff};
use crate::lp::{
    dot, enumerate_vertices, irredundant_subset, minimize_over_simplex, Constraint, HalfSpace, LinearProgram, LpOutcome,
    MAX_VERTEX_DIM,
};
use crate::sampling::random_direction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    #[default]
    Given,
    Recovered,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CredalSet {
    n: usize,
    hrep: Vec<HalfSpace>,
    core: Vec<usize>,
    vrep: Option<Vec<Vec<f64>>>,
    provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CredalSetFile {
    n: usize,
    #[serde(default)]
    hrep: Vec<HalfSpace>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vrep: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    provenance: Provenance,
}

impl Serialize for CredalSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CredalSetFile {
            n: self.n,
            hrep: self.hrep.clone(),
            vrep: self.vrep.clone(),
            provenance: self.provenance,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CredalSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = CredalSetFile::deserialize(d)?;
        let mut set = CredalSet::from_hrep(file.n, file.hrep).map_err(serde::de::Error::custom)?;
        set.provenance = file.provenance;
        if let Some(points) = file.vrep {
            for p in &points {
                if !set.contains(p, 1e-9) {
                    return Err(serde::de::Error::custom(format!("vrep point {p:?} lies outside the set")));
                }
            }
            if set.vrep.is_none() {
                set.vrep = Some(points);
            }
        }
        Ok(set)
    }
}

impl CredalSet {
    /// `{p in simplex : <b, p> >= bound for every half-space}`; fails with
    /// [`Error::EmptyCredalSet`] when the intersection is empty.
    pub fn from_hrep(n: usize, hrep: Vec<HalfSpace>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("credal set over zero states".into()));
        }
        if let Some(h) = hrep.iter().find(|h| h.normal.len() != n) {
            return Err(Error::Domain(format!("half-space of length {} over {n} states", h.normal.len())));
        }
        let core = irredundant_subset(n, &hrep, 1e-9).map_err(|_| Error::EmptyCredalSet)?;
        let mut set = Self { n, hrep, core, vrep: None, provenance: Provenance::Given };
        if n <= MAX_VERTEX_DIM {
            let vertices = enumerate_vertices(n, &set.core_rows(), 1e-9)?;
            if vertices.is_empty() {
                return Err(Error::EmptyCredalSet);
            }
            set.vrep = Some(vertices);
        }
        Ok(set)
    }

    pub fn simplex(n: usize) -> Self {
        Self::from_hrep(n, Vec::new()).expect("simplex is nonempty")
    }

    /// `{p}` as `p_s >= p(s)` for every state.
    pub fn singleton(p: Vec<f64>) -> Result<Self> {
        let n = p.len();
        if p.iter().any(|&v| v < 0.0) || (p.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("{p:?} is not a probability vector")));
        }
        let hrep = (0..n)
            .map(|s| HalfSpace::new(UtilityAct::unit(n, s).values().to_vec(), p[s]))
            .collect();
        let mut set = Self::from_hrep(n, hrep)?;
        set.vrep = Some(vec![p]);
        Ok(set)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hrep(&self) -> &[HalfSpace] {
        &self.hrep
    }

    pub fn vrep(&self) -> Option<&[Vec<f64>]> {
        self.vrep.as_deref()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Indices of the irredundant half-spaces.
    pub fn core(&self) -> &[usize] {
        &self.core
    }

    fn core_rows(&self) -> Vec<HalfSpace> {
        self.core.iter().map(|&k| self.hrep[k].clone()).collect()
    }

    /// Membership in the simplex and every half-space, within `tol`.
    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        p.len() == self.n
            && p.iter().all(|&v| v >= -tol)
            && (p.iter().sum::<f64>() - 1.0).abs() <= tol
            && self.hrep.iter().all(|h| h.slack(p) >= -tol)
    }

    /// Optimal value and optimizer of `<b, p>` over the set.
    pub fn optimize(&self, b: &[f64], mode: Mode) -> Result<(f64, Vec<f64>)> {
        if b.len() != self.n {
            return Err(Error::Domain(format!("utility act over {} states, set over {}", b.len(), self.n)));
        }
        let objective: Vec<f64> = match mode {
            Mode::Min => b.to_vec(),
            Mode::Max => b.iter().map(|v| -v).collect(),
        };
        match minimize_over_simplex(&objective, &self.core_rows(), 1e-10)? {
            LpOutcome::Optimal(s) => {
                let value = dot(b, &s.x);
                Ok((value, s.x))
            }
            LpOutcome::Infeasible => Err(Error::EmptyCredalSet),
            LpOutcome::Unbounded => unreachable!("bounded by the simplex"),
        }
    }

    /// Lower probability `min_{p in C} p(E)` of the event bitmask `E`.
    pub fn lower_probability(&self, event: u64) -> Result<f64> {
        self.optimize(UtilityAct::set_indicator(self.n, event).values(), Mode::Min).map(|(v, _)| v)
    }

    /// Points of the set used by reports: the vertices when known, otherwise
    /// LP optimizers along every unit and negated unit direction.
    pub fn sample_points(&self) -> Result<Vec<Vec<f64>>> {
        if let Some(v) = &self.vrep {
            return Ok(v.clone());
        }
        let mut out = Vec::new();
        for s in 0..self.n {
            let e = UtilityAct::unit(self.n, s);
            out.push(self.optimize(e.values(), Mode::Min)?.1);
            out.push(self.optimize(e.values(), Mode::Max)?.1);
        }
        Ok(out)
    }

    /// Copy with the bound of half-space `k` shifted by `delta`.
    pub fn with_shifted_bound(&self, k: usize, delta: f64) -> Result<Self> {
        let mut hrep = self.hrep.clone();
        hrep[k].bound += delta;
        let mut out = Self::from_hrep(self.n, hrep)?;
        out.provenance = self.provenance;
        Ok(out)
    }

    /// Copy with extra half-spaces appended.
    pub fn intersect(&self, extra: &[HalfSpace]) -> Result<Self> {
        let mut hrep = self.hrep.clone();
        hrep.extend_from_slice(extra);
        Self::from_hrep(self.n, hrep)
    }
}

/// Default probe directions: every `+-1_E` for nonempty events when
/// `n <= 12` (only `+-e_s` and `+-1*` beyond), plus `10 n^2` random unit
/// directions.
pub fn default_directions<R: Rng>(n: usize, rng: &mut R) -> Vec<UtilityAct> {
    let mut out = Vec::new();
    if n <= 12 {
        for event in 1..(1u64 << n) {
            let e = UtilityAct::set_indicator(n, event);
            out.push(e.scale(-1.0));
            out.push(e);
        }
    } else {
        for s in 0..n {
            let e = UtilityAct::unit(n, s);
            out.push(e.scale(-1.0));
            out.push(e);
        }
        out.push(UtilityAct::constant(n, 1.0));
        out.push(UtilityAct::constant(n, -1.0));
    }
    for _ in 0..10 * n * n {
        out.push(UtilityAct::new(random_direction(rng, n)).expect("finite"));
    }
    out
}

/// The set of priors dominating `functional` along every direction:
/// `{p : <b, p> >= I(b) for each probe b}`.
pub fn recover_credal_set(functional: &Functional, directions: &[UtilityAct]) -> Result<CredalSet> {
    let Some(first) = directions.first() else {
        return Err(Error::Domain("no probe directions".into()));
    };
    let n = first.len();
    if directions.iter().any(|d| d.len() != n) {
        return Err(Error::Domain("probe directions differ in length".into()));
    }
    for s in 0..n {
        let e = UtilityAct::unit(n, s);
        let neg = e.scale(-1.0);
        if !directions.contains(&e) || !directions.contains(&neg) {
            return Err(Error::Domain(format!("probe directions must include +-e_{s}")));
        }
    }
    let bounds = directions
        .par_iter()
        .map(|b| functional.eval(b))
        .collect::<Result<Vec<_>>>()?;
    recover_from_values(directions, bounds, functional.tolerances().equality)
}

/// Recovery from precomputed functional values on the probe directions.
///
/// Values read off an oracle carry bisection error, so `<b, p> >= I(b)` and
/// `<-b, p> >= I(-b)` can conflict by a few ulps of the tolerance when the
/// true set is flat along `b`. If the exact intersection is empty, every
/// bound is lowered by the smallest uniform amount that restores
/// feasibility, provided that amount is at most `slack_limit`.
pub fn recover_from_values(directions: &[UtilityAct], bounds: Vec<f64>, slack_limit: f64) -> Result<CredalSet> {
    let n = directions[0].len();
    let mut hrep: Vec<HalfSpace> = directions
        .iter()
        .zip(bounds)
        .map(|(b, v)| HalfSpace::new(b.values().to_vec(), v))
        .collect();
    if let Err(j) = irredundant_subset(n, &hrep, 1e-9) {
        let eps = min_relaxation(n, &hrep)?;
        if eps > slack_limit {
            return Err(Error::NotARepresentation { constraints: infeasible_witness(n, &hrep, j) });
        }
        for h in &mut hrep {
            h.bound -= eps;
        }
    }
    let mut set = CredalSet::from_hrep(n, hrep)?;
    set.provenance = Provenance::Recovered;
    Ok(set)
}

/// `min eps >= 0` such that `<b, p> >= bound - eps` for every half-space at
/// some `p` in the simplex.
fn min_relaxation(n: usize, hrep: &[HalfSpace]) -> Result<f64> {
    let mut constraints: Vec<Constraint> = hrep
        .iter()
        .map(|h| {
            let mut row = h.normal.clone();
            row.push(1.0);
            Constraint::ge(row, h.bound)
        })
        .collect();
    let mut total = vec![1.0; n];
    total.push(0.0);
    constraints.push(Constraint::eq(total, 1.0));
    let mut objective = vec![0.0; n];
    objective.push(1.0);
    match LinearProgram::new(objective, constraints)?.solve() {
        LpOutcome::Optimal(s) => Ok(s.value.max(0.0)),
        _ => unreachable!("feasible for large eps and bounded below by zero"),
    }
}

/// Smallest infeasible subset found among `{j}` and pairs `{i, j}`, falling
/// back to the prefix that failed.
fn infeasible_witness(n: usize, hrep: &[HalfSpace], j: usize) -> Vec<usize> {
    let feasible = |rows: &[usize]| {
        let hs: Vec<HalfSpace> = rows.iter().map(|&k| hrep[k].clone()).collect();
        matches!(minimize_over_simplex(&vec![0.0; n], &hs, 1e-9), Ok(LpOutcome::Optimal(_)))
    };
    if !feasible(&[j]) {
        return vec![j];
    }
    for i in 0..j {
        if !feasible(&[i, j]) {
            return vec![i, j];
        }
    }
    (0..=j).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityReport {
    pub points_checked: usize,
    pub events_checked: usize,
    pub min_coordinate: f64,
    pub max_sum_error: f64,
    /// `min over points and events of p(E) - I(1_E)`.
    pub min_event_margin: f64,
    pub witness: Option<Vec<f64>>,
    pub passed: bool,
}

/// Checks that every vertex (or sampled point) is a probability vector and
/// that `p(E) >= I(1_E)` for every event. When `lower` is `None` the set's
/// own lower probabilities are used.
pub fn probability_check(set: &CredalSet, lower: Option<&Functional>) -> Result<ProbabilityReport> {
    let n = set.n();
    let points = set.sample_points()?;
    let events: Vec<u64> = if n <= 12 { (1..(1u64 << n)).collect() } else { Vec::new() };
    let floors = events
        .par_iter()
        .map(|&e| match lower {
            Some(i) => i.eval(&UtilityAct::set_indicator(n, e)),
            None => set.lower_probability(e),
        })
        .collect::<Result<Vec<_>>>()?;

    let mut report = ProbabilityReport {
        points_checked: points.len(),
        events_checked: events.len(),
        min_coordinate: f64::INFINITY,
        max_sum_error: 0.0,
        min_event_margin: f64::INFINITY,
        witness: None,
        passed: true,
    };
    for p in &points {
        let min = p.iter().cloned().fold(f64::INFINITY, f64::min);
        let sum_err = (p.iter().sum::<f64>() - 1.0).abs();
        report.min_coordinate = report.min_coordinate.min(min);
        report.max_sum_error = report.max_sum_error.max(sum_err);
        let mut ok = min >= -1e-12 && sum_err <= 1e-12;
        for (&e, &floor) in events.iter().zip(&floors) {
            let pe: f64 = (0..n).filter(|s| e >> s & 1 == 1).map(|s| p[s]).sum();
            let margin = pe - floor;
            report.min_event_margin = report.min_event_margin.min(margin);
            ok &= margin >= -1e-9;
        }
        if !ok && report.witness.is_none() {
            report.witness = Some(p.clone());
        }
        report.passed &= ok;
    }
    Ok(report)
}

/// A prior in the set attaining `min <b, p>`.
pub fn attainment_witness(set: &CredalSet, b: &UtilityAct) -> Result<Vec<f64>> {
    set.optimize(b.values(), Mode::Min).map(|(_, p)| p)
}

/// Symmetric Euclidean Hausdorff distance between two sets, from their
/// vertex lists. Sets over more than six states without a stored vertex
/// list are [`Error::Unsupported`]; see [`support_distance`].
pub fn compare_sets(a: &CredalSet, b: &CredalSet) -> Result<f64> {
    if a.n() != b.n() {
        return Err(Error::Domain("credal sets over different state spaces".into()));
    }
    match (a.vrep(), b.vrep()) {
        (Some(va), Some(vb)) => Ok(hausdorff(&canonical(va), &canonical(vb))),
        _ => Err(Error::Unsupported(format!(
            "vertex enumeration over {} states; use the support-function distance",
            a.n()
        ))),
    }
}

fn canonical(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = points
        .iter()
        .map(|p| p.iter().map(|&v| crate::lp::snap(v, 1e-9)).collect())
        .collect();
    out.sort_by(|x, y| x.iter().zip(y).map(|(a, b)| a.total_cmp(b)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal));
    out.dedup();
    out
}

/// `max |h_A(d) - h_B(d)|` over the given unit directions, where `h` is the
/// support function. A lower bound on the Hausdorff distance.
pub fn support_distance(a: &CredalSet, b: &CredalSet, directions: &[Vec<f64>]) -> Result<f64> {
    directions
        .par_iter()
        .map(|d| Ok((a.optimize(d, Mode::Max)?.0 - b.optimize(d, Mode::Max)?.0).abs()))
        .collect::<Result<Vec<f64>>>()
        .map(|v| v.into_iter().fold(0.0, f64::max))
}

pub fn set_diameter(set: &CredalSet) -> Result<f64> {
    Ok(diameter(&set.sample_points()?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// Uncertainty aversion.
    A5,
    /// Uncertainty loving.
    #[serde(alias = "A5p")]
    A5Prime,
    /// Uncertainty neutrality.
    #[serde(alias = "A5pp")]
    A5DoublePrime,
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A5" => Ok(Variant::A5),
            "A5p" | "A5'" | "A5prime" => Ok(Variant::A5Prime),
            "A5pp" | "A5''" | "A5doubleprime" => Ok(Variant::A5DoublePrime),
            _ => Err(Error::Parse(format!("unknown variant `{s}` (expected A5, A5p or A5pp)"))),
        }
    }
}

/// Negated mirror `J(b) = -I(-b)`, which turns a sublinear functional into
/// a superlinear one.
#[derive(Clone, Debug)]
struct Mirror<'a>(&'a Functional);

impl Mirror<'_> {
    fn eval(&self, b: &UtilityAct) -> Result<f64> {
        Ok(-self.0.eval(&b.scale(-1.0))?)
    }
}

/// Dual set of a functional under the chosen attitude axiom: aversion gives
/// `(C, min)`, loving gives `(C, max)` via the mirror, neutrality gives a
/// singleton read off the unit acts.
pub fn variant_dualize<R: Rng>(
    functional: &Functional,
    variant: Variant,
    directions: &[UtilityAct],
    rng: &mut R,
    shape_samples: usize,
) -> Result<(CredalSet, Mode)> {
    let n = directions.first().map(|d| d.len()).ok_or_else(|| Error::Domain("no probe directions".into()))?;
    let domain = Domain::interval(-1.0, 1.0);
    let expect = |report: PropertyReport, expected: &'static str| -> Result<()> {
        if report.passed {
            Ok(())
        } else {
            Err(Error::ShapeMismatch { expected, witness: report.witness.unwrap_or_default() })
        }
    };
    match variant {
        Variant::A5 => {
            expect(check_midpoint(functional, &pair_samples(rng, n, domain, shape_samples), Shape::Superlinear)?, "superlinear")?;
            Ok((recover_credal_set(functional, directions)?, Mode::Min))
        }
        Variant::A5Prime => {
            expect(check_midpoint(functional, &pair_samples(rng, n, domain, shape_samples), Shape::Sublinear)?, "sublinear")?;
            let mirror = Mirror(functional);
            let values = directions
                .par_iter()
                .map(|b| mirror.eval(b))
                .collect::<Result<Vec<_>>>()?;
            Ok((recover_from_values(directions, values, functional.tolerances().equality)?, Mode::Max))
        }
        Variant::A5DoublePrime => {
            expect(check_linearity(functional, &linearity_samples(rng, n, domain, shape_samples))?, "linear")?;
            let p = (0..n)
                .map(|s| functional.eval(&UtilityAct::unit(n, s)))
                .collect::<Result<Vec<f64>>>()?;
            let total: f64 = p.iter().sum();
            if p.iter().any(|&v| v < -1e-12) || (total - 1.0).abs() > 1e-9 {
                return Err(Error::NotARepresentation { constraints: (0..n).collect() });
            }
            let p: Vec<f64> = p.into_iter().map(|v| v.max(0.0) / total).collect();
            Ok((CredalSet::singleton(p)?, Mode::Min))
        }
    }
}

/// Number of distinct vertices, for reports.
pub fn vertex_count(set: &CredalSet) -> Option<usize> {
    set.vrep().map(|v| canonical(v).len())
}
