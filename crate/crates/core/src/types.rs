//! Finite universes, lotteries over prizes, and acts mapping states to lotteries.
//!
//! Events are arbitrary subsets of the (finite, ordered) state list, so a
//! simple measurable function is just a state-indexed vector. Lotteries and
//! acts store dense vectors aligned with the universe's prize and state order.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sum tolerance applied when constructing lotteries.
pub const PROBABILITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Universe {
    states: Vec<String>,
    prizes: Vec<String>,
}

impl Universe {
    pub fn new(states: Vec<String>, prizes: Vec<String>) -> Result<Self> {
        let u = Self { states, prizes };
        u.validate()?;
        Ok(u)
    }

    /// Universe with states `s1..sn` and prizes `x1..xm`.
    pub fn indexed(n: usize, m: usize) -> Result<Self> {
        Self::new(
            (1..=n).map(|i| format!("s{i}")).collect(),
            (1..=m).map(|i| format!("x{i}")).collect(),
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.states.is_empty() {
            return Err(Error::Domain("universe needs at least one state".into()));
        }
        if self.prizes.len() < 2 {
            return Err(Error::Domain("universe needs at least two prizes".into()));
        }
        unique(&self.states, "state")?;
        unique(&self.prizes, "prize")
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn prizes(&self) -> &[String] {
        &self.prizes
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_prizes(&self) -> usize {
        self.prizes.len()
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn prize_index(&self, name: &str) -> Option<usize> {
        self.prizes.iter().position(|x| x == name)
    }

    /// Parse a `{prize: prob}` object. Missing prizes get probability zero.
    pub fn lottery_from_map(&self, map: &BTreeMap<String, f64>) -> Result<Lottery> {
        let mut probs = vec![0.0; self.num_prizes()];
        for (name, &p) in map {
            let i = self
                .prize_index(name)
                .ok_or_else(|| Error::Parse(format!("unknown prize `{name}`")))?;
            probs[i] = p;
        }
        Lottery::new(probs)
    }

    pub fn lottery_to_map(&self, y: &Lottery) -> BTreeMap<String, f64> {
        self.prizes
            .iter()
            .zip(y.probs())
            .filter(|(_, &p)| p != 0.0)
            .map(|(x, &p)| (x.clone(), p))
            .collect()
    }

    /// Parse a `{state: {prize: prob}}` object; every state must be present.
    pub fn act_from_map(&self, map: &BTreeMap<String, BTreeMap<String, f64>>) -> Result<Act> {
        let mut values: Vec<Option<Lottery>> = vec![None; self.num_states()];
        for (name, lottery) in map {
            let s = self
                .state_index(name)
                .ok_or_else(|| Error::Parse(format!("unknown state `{name}`")))?;
            values[s] = Some(self.lottery_from_map(lottery)?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(s, v)| v.ok_or_else(|| Error::Parse(format!("act missing state `{}`", self.states[s]))))
            .collect::<Result<Vec<_>>>()?;
        Act::new(values)
    }

    pub fn act_to_map(&self, f: &Act) -> BTreeMap<String, BTreeMap<String, f64>> {
        self.states
            .iter()
            .zip(f.values())
            .map(|(s, y)| (s.clone(), self.lottery_to_map(y)))
            .collect()
    }

    pub fn act_from_json(&self, value: &serde_json::Value) -> Result<Act> {
        let map: BTreeMap<String, BTreeMap<String, f64>> = serde_json::from_value(value.clone())?;
        self.act_from_map(&map)
    }
}

fn unique(names: &[String], what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(Error::Domain(format!("duplicate {what} identifier `{n}`")));
        }
    }
    Ok(())
}

/// A finite-support probability distribution over the universe's prizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Lottery {
    probs: Vec<f64>,
}

impl Lottery {
    /// Validates non-negativity and the unit sum. A sum off by at most
    /// [`PROBABILITY_TOLERANCE`] is renormalized; anything larger is rejected.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::Domain("lottery needs at least two prizes".into()));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::Domain(format!("negative or non-finite probability in {probs:?}")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > PROBABILITY_TOLERANCE {
            return Err(Error::Domain(format!("probabilities sum to {total}, not 1")));
        }
        let probs = if total == 1.0 { probs } else { probs.into_iter().map(|p| p / total).collect() };
        Ok(Self { probs })
    }

    /// Point mass on prize `x` out of `m`.
    pub fn degenerate(m: usize, x: usize) -> Self {
        assert!(x < m && m >= 2, "prize index {x} out of range for {m} prizes");
        let mut probs = vec![0.0; m];
        probs[x] = 1.0;
        Self { probs }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn num_prizes(&self) -> usize {
        self.probs.len()
    }

    pub fn approx_eq(&self, other: &Lottery, tol: f64) -> bool {
        self.probs.len() == other.probs.len()
            && self.probs.iter().zip(&other.probs).all(|(a, b)| (a - b).abs() <= tol)
    }
}

impl TryFrom<Vec<f64>> for Lottery {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Lottery::new(v)
    }
}

impl From<Lottery> for Vec<f64> {
    fn from(y: Lottery) -> Self {
        y.probs
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::Domain(format!("mixture weight {alpha} outside [0, 1]")))
    }
}

/// `alpha * y + (1 - alpha) * z`, prize by prize.
pub fn mix_lotteries(alpha: f64, y: &Lottery, z: &Lottery) -> Result<Lottery> {
    check_alpha(alpha)?;
    if y.num_prizes() != z.num_prizes() {
        return Err(Error::Domain("lotteries over different prize sets".into()));
    }
    let probs = y
        .probs
        .iter()
        .zip(&z.probs)
        .map(|(a, b)| alpha * a + (1.0 - alpha) * b)
        .collect();
    Ok(Lottery { probs })
}

/// A map from states to lotteries, total on the universe's states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Lottery>", into = "Vec<Lottery>")]
pub struct Act {
    values: Vec<Lottery>,
}

impl Act {
    pub fn new(values: Vec<Lottery>) -> Result<Self> {
        let Some(first) = values.first() else {
            return Err(Error::Domain("act needs at least one state".into()));
        };
        let m = first.num_prizes();
        if values.iter().any(|y| y.num_prizes() != m) {
            return Err(Error::Domain("act mixes lotteries over different prize sets".into()));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[Lottery] {
        &self.values
    }

    pub fn at(&self, s: usize) -> &Lottery {
        &self.values[s]
    }

    pub fn num_states(&self) -> usize {
        self.values.len()
    }

    pub fn num_prizes(&self) -> usize {
        self.values[0].num_prizes()
    }

    pub fn is_constant(&self) -> bool {
        self.values.windows(2).all(|w| w[0] == w[1])
    }

    /// The lottery of a constant act.
    pub fn constant_value(&self) -> Option<&Lottery> {
        self.is_constant().then(|| &self.values[0])
    }

    pub fn approx_eq(&self, other: &Act, tol: f64) -> bool {
        self.values.len() == other.values.len()
            && self.values.iter().zip(&other.values).all(|(a, b)| a.approx_eq(b, tol))
    }

    /// Copy of the act with state `s` assigned lottery `y`.
    pub fn with_state(&self, s: usize, y: Lottery) -> Act {
        let mut values = self.values.clone();
        values[s] = y;
        Act { values }
    }
}

impl TryFrom<Vec<Lottery>> for Act {
    type Error = Error;
    fn try_from(v: Vec<Lottery>) -> Result<Self> {
        Act::new(v)
    }
}

impl From<Act> for Vec<Lottery> {
    fn from(f: Act) -> Self {
        f.values
    }
}

/// The constant act `y*` over `n` states.
pub fn constant_act(y: &Lottery, n: usize) -> Act {
    assert!(n >= 1);
    Act { values: vec![y.clone(); n] }
}

/// Statewise mixture `alpha * f + (1 - alpha) * g`.
pub fn mix_acts(alpha: f64, f: &Act, g: &Act) -> Result<Act> {
    check_alpha(alpha)?;
    if f.num_states() != g.num_states() || f.num_prizes() != g.num_prizes() {
        return Err(Error::Domain("acts over different universes".into()));
    }
    let values = f
        .values
        .iter()
        .zip(&g.values)
        .map(|(y, z)| mix_lotteries(alpha, y, z))
        .collect::<Result<Vec<_>>>()?;
    Ok(Act { values })
}
