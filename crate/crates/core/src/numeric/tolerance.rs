use crate::error::{Error, Result};

use super::Scalar;

/// Tolerance policy for the float backend. The exact backend ignores it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Relative epsilon, dimensionless.
    pub rel: f64,
    /// Absolute floor added to every relative test.
    pub abs: f64,
    /// Singular values below `rank_rel * sigma_max` count as zero.
    pub rank_rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-9,
            abs: 1e-12,
            rank_rel: 1e-8,
        }
    }
}

/// Tolerance used when certifying results produced under [`Tolerance::default`].
pub const CERTIFY_TOL: f64 = 1e-7;

impl Tolerance {
    pub fn new(rel: f64, abs: f64, rank_rel: f64) -> Result<Self> {
        for (name, v) in [("rel", rel), ("abs", abs), ("rank_rel", rank_rel)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidTolerance(format!("{name} = {v}")));
            }
        }
        Ok(Tolerance { rel, abs, rank_rel })
    }

    /// Same policy with the relative epsilon replaced.
    pub fn with_rel(self, rel: f64) -> Result<Self> {
        Tolerance::new(rel, self.abs, self.rank_rel)
    }

    /// True when `value` is zero relative to `scale`.
    pub fn is_negligible<S: Scalar>(&self, value: &S, scale: f64) -> bool {
        if S::is_exact() {
            value.is_exact_zero()
        } else {
            value.modulus() <= self.rel * scale + self.abs
        }
    }

    /// Relative residual test on a plain double.
    pub fn accepts(&self, residual: f64) -> bool {
        residual <= self.rel
    }
}
