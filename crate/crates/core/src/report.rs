//! Named hypothesis checks shared by the setup checks and the certificate.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hypothesis {
    /// `p` does not divide the group order.
    Coprimality,
    /// Each vertex stabilizer acts faithfully on its component.
    Faithfulness,
    /// No non-identity element is the identity on every component it fixes.
    ComponentAction,
    /// Node stabilizers have the shape the local picture allows, and the
    /// recorded characters are multiplicative.
    NodeStructure,
    /// Tangent determinants match the sign on the branches.
    Orientation,
    /// The quotient curve could be formed.
    Quotient,
    /// Riemann–Hurwitz budget is non-negative.
    RhBudget,
}

impl Hypothesis {
    pub fn as_str(&self) -> &'static str {
        match self {
            Hypothesis::Coprimality => "coprimality",
            Hypothesis::Faithfulness => "faithfulness",
            Hypothesis::ComponentAction => "component-action",
            Hypothesis::NodeStructure => "node-structure",
            Hypothesis::Orientation => "orientation",
            Hypothesis::Quotient => "quotient",
            Hypothesis::RhBudget => "rh-budget",
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: Hypothesis,
    pub status: Status,
    pub evidence: String,
}

impl CheckItem {
    pub fn new(name: Hypothesis, ok: bool, evidence: impl Into<String>) -> Self {
        Self {
            name,
            status: Status::from_ok(ok),
            evidence: evidence.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for CheckItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.status, self.name, self.evidence)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{0} is not prime")]
pub struct NotPrime(pub u64);

/// A prime number, checked by trial division.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, NotPrime> {
        if is_prime(p) {
            Ok(Self(p))
        } else {
            Err(NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for Prime {
    type Error = NotPrime;

    fn try_from(p: u64) -> Result<Self, NotPrime> {
        Self::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(91).is_err());
        assert_eq!(Prime::new(97).unwrap().get(), 97);
    }

    #[test]
    fn divisors() {
        assert_eq!(prime_divisors(60), vec![2, 3, 5]);
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
        assert_eq!(prime_divisors(16), vec![2]);
        assert_eq!(prime_divisors(26), vec![2, 13]);
    }

    #[test]
    fn names_serialize_kebab_case() {
        let item = CheckItem::new(Hypothesis::RhBudget, true, "ok");
        let json = serde_json::to_string(&item).unwrap();
        assert_eq!(
            json,
            r#"{"name":"rh-budget","status":"PASS","evidence":"ok"}"#
        );
    }
}
