//! Permutations of a finite ground set `{0, .., degree - 1}`.
//!
//! A [`Permutation`] is stored as its image sequence. Composition follows the
//! functional convention: `a.compose(&b)` (or `&a * &b`) applies `b` first,
//! then `a`. Permutations serialize in disjoint-cycle notation, e.g.
//! `"(0 1 2)(3 4)"`, with the identity written `"()"`.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("image sequence is not a bijection of 0..{degree}: {detail}")]
    NotABijection { degree: usize, detail: String },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("cannot parse cycle notation {input:?}: {detail}")]
    Parse { input: String, detail: String },
}

/// A bijection of `{0, .., degree - 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &i in &images {
            if i >= degree {
                return Err(PermError::NotABijection {
                    degree,
                    detail: format!("image {i} out of range"),
                });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(PermError::NotABijection {
                    degree,
                    detail: format!("image {i} repeated"),
                });
            }
        }
        Ok(Self { images })
    }

    /// Builds a permutation of the given degree from (not necessarily
    /// disjoint) cycles. Cycles are composed right to left, so
    /// `from_cycles(3, &[vec![0, 1], vec![1, 2]])` is `(0 1)∘(1 2)`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut result = Self::identity(degree);
        for cycle in cycles.iter().rev() {
            let mut images: Vec<usize> = (0..degree).collect();
            let mut seen = std::collections::BTreeSet::new();
            for (k, &point) in cycle.iter().enumerate() {
                if point >= degree {
                    return Err(PermError::NotABijection {
                        degree,
                        detail: format!("point {point} out of range"),
                    });
                }
                if !seen.insert(point) {
                    return Err(PermError::NotABijection {
                        degree,
                        detail: format!("point {point} repeated within a cycle"),
                    });
                }
                images[point] = cycle[(k + 1) % cycle.len()];
            }
            result = Self { images }.compose(&result);
        }
        Ok(result)
    }

    /// Parses cycle notation. The degree is taken as the given minimum or
    /// one more than the largest point mentioned, whichever is larger.
    pub fn parse_with_degree(input: &str, min_degree: usize) -> Result<Self, PermError> {
        let cycles = parse_cycles(input)?;
        let degree = cycles
            .iter()
            .flatten()
            .map(|&p| p + 1)
            .max()
            .unwrap_or(0)
            .max(min_degree);
        Self::from_cycles(degree, &cycles).map_err(|e| PermError::Parse {
            input: input.to_string(),
            detail: e.to_string(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    ///
    /// Panics on degree mismatch; use [`Permutation::try_compose`] for
    /// untrusted input.
    pub fn compose(&self, other: &Self) -> Self {
        self.try_compose(other)
            .expect("composing permutations of different degrees")
    }

    pub fn try_compose(&self, other: &Self) -> Result<Self, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Self {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Self { images }
    }

    /// `self^exp` for any integer exponent.
    pub fn pow(&self, exp: i64) -> Self {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut result = Self::identity(self.degree());
        let mut square = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&square);
            }
            square = square.compose(&square);
            e >>= 1;
        }
        result
    }

    /// Disjoint cycles of length at least two, each starting at its
    /// smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.images[start];
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.images[next];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Least `n ≥ 1` with `selfⁿ = id`: the lcm of the cycle lengths.
    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .map(Vec::len)
            .fold(1, |acc, len| acc / gcd(acc, len) * len)
    }

    /// Sign of the permutation: `+1` for even, `-1` for odd.
    pub fn sign(&self) -> i8 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.compose(other) == other.compose(self)
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn parse_cycles(input: &str) -> Result<Vec<Vec<usize>>, PermError> {
    let err = |detail: &str| PermError::Parse {
        input: input.to_string(),
        detail: detail.to_string(),
    };
    let trimmed = input.trim();
    if trimmed.is_empty() {
        return Err(err("empty string; write the identity as ()"));
    }
    let mut cycles = Vec::new();
    let mut rest = trimmed;
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| err("expected '('"))?;
        let close = body.find(')').ok_or_else(|| err("unclosed '('"))?;
        let inner = &body[..close];
        let points = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| err(&format!("bad point {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Parses cycle notation with the degree inferred from the largest point.
impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_with_degree(s, 0)
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}
