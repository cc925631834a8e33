//! Size guardrails for exact elimination.

use crate::error::{Error, Result};

pub const TENSOR_LIMIT: u128 = 1_000_000;
pub const WEDGE_LIMIT: u128 = 5_000_000;
pub const ENV_VAR: &str = "BRAUER_COEND_MAX_DIM";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub tensor: u128,
    pub wedge: u128,
    pub force: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            tensor: TENSOR_LIMIT,
            wedge: WEDGE_LIMIT,
            force: false,
        }
    }
}

impl Limits {
    /// Defaults, overridden by `BRAUER_COEND_MAX_DIM` when it parses as an integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = std::env::var(ENV_VAR)
            .ok()
            .and_then(|s| s.trim().parse::<u128>().ok())
        {
            limits.tensor = v;
            limits.wedge = v;
        }
        limits
    }

    pub fn forced() -> Self {
        Limits {
            force: true,
            ..Limits::default()
        }
    }

    pub fn check_tensor(&self, what: &str, size: u128) -> Result<()> {
        check(self.force, what, size, self.tensor)
    }

    pub fn check_wedge(&self, what: &str, size: u128) -> Result<()> {
        check(self.force, what, size, self.wedge)
    }
}

fn check(force: bool, what: &str, size: u128, limit: u128) -> Result<()> {
    if force || size <= limit {
        Ok(())
    } else {
        Err(Error::TooLarge {
            what: what.to_string(),
            size,
            limit,
        })
    }
}

/// `n^k` without overflow surprises.
pub fn power(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, _| acc.saturating_mul(n as u128))
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_limit_refuses_and_force_allows() {
        let limits = Limits::default();
        assert!(limits.check_tensor("x", power(10, 6)).is_ok());
        assert!(limits.check_tensor("x", power(10, 6) + 1).is_err());
        assert!(Limits::forced().check_tensor("x", u128::MAX).is_ok());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(24, 3), 2024);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(90, 2), 4005);
    }
}
