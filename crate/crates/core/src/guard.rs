use crate::error::{Error, Result};

/// Size limits that turn runaway computations into explicit errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guardrails {
    pub weyl_order: usize,
    pub algebra_dim: usize,
    pub rep_dim: usize,
    pub chain_dim: usize,
}

impl Default for Guardrails {
    fn default() -> Self {
        Guardrails {
            weyl_order: 1_000_000,
            algebra_dim: 300,
            rep_dim: 200,
            chain_dim: 20_000,
        }
    }
}

impl Guardrails {
    /// Multiplies every limit by `factor` (rounded down, never below 1).
    pub fn scaled(self, factor: f64) -> Self {
        let s = |x: usize| ((x as f64) * factor).floor().max(1.0) as usize;
        Guardrails {
            weyl_order: s(self.weyl_order),
            algebra_dim: s(self.algebra_dim),
            rep_dim: s(self.rep_dim),
            chain_dim: s(self.chain_dim),
        }
    }

    pub(crate) fn check(what: &'static str, value: u128, limit: usize) -> Result<()> {
        if value > limit as u128 {
            Err(Error::Guardrail {
                what,
                value,
                limit: limit as u128,
            })
        } else {
            Ok(())
        }
    }
}
