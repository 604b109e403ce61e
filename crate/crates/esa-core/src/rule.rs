//! Stopping rule: when does walking the ladder terminate?

use crate::error::EsaError;

/// How the promoting parameter widens the stopping test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MarginMode {
    /// Stop once `prev < (1 + delta) * current`. This is the promoting rule
    /// exactly as written, but it inverts its effect when criterion values
    /// are negative (e.g. ELBO-scale criteria).
    Multiplicative,
    /// Stop once `prev < current + delta * |current|`. Safe for either sign;
    /// the default. Coincides with `Multiplicative` at `delta = 0`.
    #[default]
    Additive,
}

/// Direction in which the ladder is walked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Traversal {
    /// Start from the simplest model and move up.
    #[default]
    Forward,
    /// Start from the most complex model and move down. Exposed as a
    /// traversal-order option only; no stopping guarantee is claimed for it.
    Backward,
}

/// Data-driven stopping rule on a criterion trace.
///
/// With `delta = 0` both margin modes reduce to the strict rule: stop at the
/// first model whose criterion strictly exceeds its predecessor's. Equal
/// adjacent values never trigger stopping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StopRule {
    delta: f64,
    margin_mode: MarginMode,
    traversal: Traversal,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule {
            delta: 0.0,
            margin_mode: MarginMode::default(),
            traversal: Traversal::default(),
        }
    }
}

impl StopRule {
    /// Builds a rule with promoting parameter `delta >= 0`.
    pub fn new(
        delta: f64,
        margin_mode: MarginMode,
        traversal: Traversal,
    ) -> Result<Self, EsaError> {
        if !delta.is_finite() || delta < 0.0 {
            return Err(EsaError::InvalidDelta(delta));
        }
        Ok(StopRule {
            delta,
            margin_mode,
            traversal,
        })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn margin_mode(&self) -> MarginMode {
        self.margin_mode
    }

    pub fn traversal(&self) -> Traversal {
        self.traversal
    }

    /// The improvement test: `true` means the walk stops at the model whose
    /// criterion is `current`.
    pub fn should_stop(&self, prev: f64, current: f64) -> bool {
        match self.margin_mode {
            MarginMode::Multiplicative => prev < (1.0 + self.delta) * current,
            MarginMode::Additive => prev < current + self.delta * current.abs(),
        }
    }
}
