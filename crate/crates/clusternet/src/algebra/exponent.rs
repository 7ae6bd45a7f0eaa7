use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vector of nonnegative integers: a monomial exponent, equally a state
/// counting units of each species.
///
/// Entries are 64-bit and every arithmetic path is checked; running out of
/// range reports [`Error::Overflow`] instead of wrapping.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Exponent(Vec<u64>);

/// States and exponent vectors share one representation.
pub type State = Exponent;

impl Exponent {
    pub fn new(entries: Vec<u64>) -> Self {
        Exponent(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    /// The `i`-th unit vector in `n` variables.
    pub fn unit(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, limit: n });
        }
        let mut e = vec![0; n];
        e[i] = 1;
        Ok(Exponent(e))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Indices of the nonzero entries, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Componentwise `self <= other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn shares_support(&self, other: &Exponent) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .any(|(&a, &b)| a > 0 && b > 0)
    }

    /// Componentwise maximum.
    pub fn lcm(&self, other: &Exponent) -> Result<Exponent> {
        self.ensure_len(other)?;
        Ok(Exponent(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        ))
    }

    pub fn checked_add(&self, other: &Exponent) -> Result<Exponent> {
        self.ensure_len(other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(Exponent)
    }

    /// `None` when the result would leave the nonnegative orthant.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        if self.0.len() != other.0.len() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(Exponent)
    }

    /// One rewriting step `self - head + tail`; the caller guarantees that
    /// `head` divides `self`.
    pub fn rewrite(&self, head: &Exponent, tail: &Exponent) -> Result<Exponent> {
        debug_assert!(head.divides(self));
        let stripped = self.checked_sub(head).ok_or(Error::Contract(
            "rewrite head does not divide the monomial",
        ))?;
        stripped.checked_add(tail)
    }

    /// `self + d` when the result stays nonnegative.
    pub fn apply_signed(&self, d: &[i64]) -> Option<Exponent> {
        if self.0.len() != d.len() {
            return None;
        }
        self.0
            .iter()
            .zip(d)
            .map(|(&a, &b)| {
                let v = (a as i128) + (b as i128);
                if (0..=u64::MAX as i128).contains(&v) {
                    Some(v as u64)
                } else {
                    None
                }
            })
            .collect::<Option<Vec<_>>>()
            .map(Exponent)
    }

    fn ensure_len(&self, other: &Exponent) -> Result<()> {
        if self.0.len() == other.0.len() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.0.len(),
                found: other.0.len(),
            })
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// The positive part `d+` of a signed transition vector.
pub fn positive_part(d: &[i64]) -> Exponent {
    Exponent(d.iter().map(|&v| if v > 0 { v as u64 } else { 0 }).collect())
}

/// The negative part `d-` of a signed transition vector (entries negated).
pub fn negative_part(d: &[i64]) -> Exponent {
    Exponent(
        d.iter()
            .map(|&v| if v < 0 { v.unsigned_abs() } else { 0 })
            .collect(),
    )
}
