//! Numerical tolerances shared by every module.

use serde::{Deserialize, Serialize};

/// One auditable set of tolerance knobs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Pass/fail threshold for functional property checks.
    pub equality: f64,
    /// Early-exit width for bisections (probability equivalents, certainty equivalents).
    pub bisection: f64,
    /// Phase-one residual below which an LP counts as feasible.
    pub lp_feasibility: f64,
    /// Represented values closer than this are reported as indifferent.
    pub indifference: f64,
    /// Lottery and prior sums must be within this of one.
    pub probability: f64,
    /// Coordinate snapping used when deduplicating vertices.
    pub vertex_dedup: f64,
    /// Hard cap on bisection steps.
    pub max_bisection_steps: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            equality: 1e-8,
            bisection: 1e-9,
            lp_feasibility: 1e-10,
            indifference: 1e-9,
            probability: 1e-12,
            vertex_dedup: 1e-9,
            max_bisection_steps: 60,
        }
    }
}
