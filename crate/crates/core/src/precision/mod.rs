//! Arbitrary-precision foundation: dyadic numbers, real and complex balls,
//! certified constants, truncated power series and rational approximation.

pub mod complex;
pub mod consts;
pub mod dyadic;
pub mod mag;
pub mod rational;
pub mod real;
pub mod series;

use serde::{Deserialize, Serialize};

pub use complex::{BallOp, ComplexBall};
pub use dyadic::Dyadic;
pub use mag::Mag;
pub use rational::{best_rational_approx, height, parse_rational};
pub use real::RealBall;
pub use series::{PowerSeries, SeriesOp};

use crate::error::{Error, Result};

/// Working precision and the escalation policy shared by all certified routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionContext {
    pub bits: u32,
    pub max_bits: u32,
    pub escalation_factor: u32,
}

impl PrecisionContext {
    pub fn new(bits: u32, max_bits: u32, escalation_factor: u32) -> Result<Self> {
        if bits == 0 || bits > max_bits || escalation_factor < 2 {
            return Err(Error::InvalidParameters(format!(
                "precision context bits={bits} max_bits={max_bits} factor={escalation_factor}"
            )));
        }
        Ok(Self {
            bits,
            max_bits,
            escalation_factor,
        })
    }

    /// Fixed precision with no room to escalate.
    pub fn fixed(bits: u32) -> Self {
        Self {
            bits,
            max_bits: bits,
            escalation_factor: 2,
        }
    }

    /// The next context in the escalation schedule, if any.
    pub fn escalate(&self) -> Option<Self> {
        if self.bits >= self.max_bits {
            return None;
        }
        let bits = (self.bits.saturating_mul(self.escalation_factor)).min(self.max_bits);
        Some(Self { bits, ..*self })
    }

    /// `bits, bits*f, ...` up to and including `max_bits`.
    pub fn schedule(&self) -> impl Iterator<Item = PrecisionContext> {
        std::iter::successors(Some(*self), |c| c.escalate())
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self {
            bits: 256,
            max_bits: 4096,
            escalation_factor: 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_doubles_to_cap() {
        let ctx = PrecisionContext::new(256, 4096, 2).unwrap();
        let bits: Vec<u32> = ctx.schedule().map(|c| c.bits).collect();
        assert_eq!(bits, vec![256, 512, 1024, 2048, 4096]);
        let odd = PrecisionContext::new(100, 250, 2).unwrap();
        let bits: Vec<u32> = odd.schedule().map(|c| c.bits).collect();
        assert_eq!(bits, vec![100, 200, 250]);
        assert!(PrecisionContext::new(512, 256, 2).is_err());
        assert!(PrecisionContext::new(64, 256, 1).is_err());
    }
}
