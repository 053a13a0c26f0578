//! The two-color ambiguous urn: bets on red, on black, and a fair-coin
//! hedge between them, valued under maxmin, maxmax and expected utility.

use serde::Serialize;

use crate::axioms::{OracleSpec, RepresentedOracle};
use crate::credal::CredalSet;
use crate::error::Result;
use crate::lp::HalfSpace;
use crate::types::{mix_acts, Act, Lottery, Universe};
use crate::utility::UtilityFunction;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EllsbergRow {
    pub model: String,
    pub bet_red: f64,
    pub bet_black: f64,
    pub hedge: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EllsbergTable {
    pub universe: Universe,
    /// `p(red)` ranges over this interval.
    pub red_interval: (f64, f64),
    pub rows: Vec<EllsbergRow>,
}

impl EllsbergTable {
    pub fn row(&self, model: &str) -> Option<&EllsbergRow> {
        self.rows.iter().find(|r| r.model == model)
    }
}

/// States `{red, black}`, prizes `{win, lose}` with utility 1 and 0.
pub fn ellsberg_universe() -> Universe {
    Universe::new(vec!["red".into(), "black".into()], vec!["win".into(), "lose".into()]).expect("valid universe")
}

/// `{p : p(red) in [lo, hi]}` over the two states.
pub fn ellsberg_set(lo: f64, hi: f64) -> Result<CredalSet> {
    CredalSet::from_hrep(
        2,
        vec![HalfSpace::new(vec![1.0, 0.0], lo), HalfSpace::new(vec![-1.0, 0.0], -hi)],
    )
}

pub fn ellsberg_table() -> Result<EllsbergTable> {
    let (lo, hi) = (0.25, 0.75);
    let universe = ellsberg_universe();
    let win = Lottery::degenerate(2, 0);
    let lose = Lottery::degenerate(2, 1);
    let red = Act::new(vec![win.clone(), lose.clone()])?;
    let black = Act::new(vec![lose, win])?;
    let hedge = mix_acts(0.5, &red, &black)?;
    let u = UtilityFunction::new(vec![1.0, 0.0])?;
    let set = ellsberg_set(lo, hi)?;
    let models = [
        ("maxmin", OracleSpec::Maxmin { set: set.clone() }),
        ("maxmax", OracleSpec::Maxmax { set }),
        ("seu", OracleSpec::Seu { prior: vec![0.5, 0.5] }),
    ];
    let mut rows = Vec::new();
    for (model, spec) in models {
        let oracle = RepresentedOracle::new(u.clone(), spec)?;
        let value = |f: &Act| oracle.value(f).expect("represented kind");
        rows.push(EllsbergRow {
            model: model.to_string(),
            bet_red: value(&red),
            bet_black: value(&black),
            hedge: value(&hedge),
        });
    }
    Ok(EllsbergTable { universe, red_interval: (lo, hi), rows })
}
