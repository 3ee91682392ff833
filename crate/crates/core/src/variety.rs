use std::fmt;

use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The Segre-Veronese variety `X_(n,m,a,b)`: `P^n x P^m` embedded by the
/// forms of bidegree `(a, b)` into `P^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct SegreVeroneseSpec {
    pub n: usize,
    pub m: usize,
    pub a: usize,
    pub b: usize,
    /// Ambient projective dimension `C(n+a,n) C(m+b,m) - 1`.
    #[serde(rename = "N")]
    pub ambient_dim: usize,
}

#[derive(Deserialize)]
struct RawSpec {
    n: usize,
    m: usize,
    a: usize,
    b: usize,
    #[serde(rename = "N")]
    ambient_dim: usize,
}

impl TryFrom<RawSpec> for SegreVeroneseSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        let spec = SegreVeroneseSpec::new(raw.n, raw.m, raw.a, raw.b)?;
        if spec.ambient_dim != raw.ambient_dim {
            return Err(Error::InvalidSpec(format!(
                "N = {} does not match {spec}",
                raw.ambient_dim
            )));
        }
        Ok(spec)
    }
}

impl SegreVeroneseSpec {
    pub fn new(n: usize, m: usize, a: usize, b: usize) -> Result<Self> {
        if n == 0 || m == 0 || a == 0 || b == 0 {
            return Err(Error::InvalidSpec(format!(
                "n, m, a, b must be positive, got ({n},{m},{a},{b})"
            )));
        }
        let size = binomial(n as u128 + a as u128, n as u128)
            .checked_mul(binomial(m as u128 + b as u128, m as u128))
            .filter(|&s| s <= usize::MAX as u128)
            .ok_or_else(|| Error::InvalidSpec(format!("({n},{m},{a},{b}) is too large")))?;
        Ok(SegreVeroneseSpec {
            n,
            m,
            a,
            b,
            ambient_dim: size as usize - 1,
        })
    }

    /// `N + 1`, the number of bidegree-`(a,b)` monomials.
    pub fn monomial_count(&self) -> usize {
        self.ambient_dim + 1
    }

    /// Dimension of the variety itself, `n + m`.
    pub fn dim(&self) -> usize {
        self.n + self.m
    }

    /// The same variety with the factors exchanged.
    pub fn swapped(&self) -> SegreVeroneseSpec {
        SegreVeroneseSpec {
            n: self.m,
            m: self.n,
            a: self.b,
            b: self.a,
            ambient_dim: self.ambient_dim,
        }
    }
}

impl fmt::Display for SegreVeroneseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X({},{},{},{})", self.n, self.m, self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ambient_dimension() {
        assert_eq!(SegreVeroneseSpec::new(1, 1, 1, 1).unwrap().ambient_dim, 3);
        assert_eq!(SegreVeroneseSpec::new(2, 1, 3, 1).unwrap().ambient_dim, 19);
        assert_eq!(SegreVeroneseSpec::new(3, 1, 4, 1).unwrap().ambient_dim, 69);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(SegreVeroneseSpec::new(0, 1, 1, 1).is_err());
        assert!(SegreVeroneseSpec::new(1, 0, 1, 1).is_err());
        assert!(SegreVeroneseSpec::new(1, 1, 0, 1).is_err());
        assert!(SegreVeroneseSpec::new(1, 1, 1, 0).is_err());
    }

    #[test]
    fn deserialization_checks_ambient_dimension() {
        let ok: SegreVeroneseSpec = serde_json::from_str(r#"{"n":2,"m":1,"a":3,"b":1,"N":19}"#).unwrap();
        assert_eq!(ok, SegreVeroneseSpec::new(2, 1, 3, 1).unwrap());
        assert!(serde_json::from_str::<SegreVeroneseSpec>(r#"{"n":2,"m":1,"a":3,"b":1,"N":20}"#).is_err());
    }
}
