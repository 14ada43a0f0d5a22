use crate::error::{Error, Result};

/// Open interval `(lo, hi)` of admissible imaginary parts for a contour `iv + ℝ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Strip {
    pub lo: f64,
    pub hi: f64,
}

impl Strip {
    pub const ALL: Strip = Strip {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Self {
        Strip { lo, hi }
    }

    pub fn contains(&self, v: f64) -> bool {
        v > self.lo && v < self.hi
    }

    pub fn intersect(&self, other: &Strip) -> Strip {
        Strip::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }

    pub fn shift(&self, by: f64) -> Strip {
        Strip::new(self.lo + by, self.hi + by)
    }

    /// Rejects `v` unless it lies strictly inside the strip.
    pub fn check(&self, v: f64, what: &str) -> Result<()> {
        if v.is_finite() && self.contains(v) {
            Ok(())
        } else {
            Err(Error::Strip {
                what: what.to_string(),
                v,
                lo: self.lo,
                hi: self.hi,
            })
        }
    }
}
