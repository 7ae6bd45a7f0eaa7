use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::exponent::{negative_part, positive_part, Exponent};
use super::order::TermOrder;
use crate::error::Result;

/// A pure difference of two monomials, `x^head - x^tail`.
///
/// Input transitions have disjoint supports (`head = d+`, `tail = d-`);
/// S-pair remainders and colon output may share support, which is legal
/// here. Inside a Gröbner basis the pair is oriented with `head` strictly
/// larger under the governing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Binomial {
    head: Exponent,
    tail: Exponent,
}

impl Binomial {
    /// Pair without order context; `None` when the sides coincide (the zero
    /// binomial is never stored). Panics on mismatched lengths, which is a
    /// caller bug.
    pub fn new(head: Exponent, tail: Exponent) -> Option<Binomial> {
        assert_eq!(head.len(), tail.len(), "binomial sides must match in length");
        if head == tail {
            None
        } else {
            Some(Binomial { head, tail })
        }
    }

    /// Orient `x^a - x^b` so that the head is the larger side under `order`.
    pub fn oriented(a: Exponent, b: Exponent, order: &TermOrder) -> Result<Option<Binomial>> {
        Ok(match order.compare(&a, &b)? {
            Ordering::Greater => Some(Binomial { head: a, tail: b }),
            Ordering::Less => Some(Binomial { head: b, tail: a }),
            Ordering::Equal => None,
        })
    }

    /// Binomial of a signed transition vector: `x^{d+} - x^{d-}`.
    pub fn from_transition(d: &[i64]) -> Option<Binomial> {
        Binomial::new(positive_part(d), negative_part(d))
    }

    pub fn head(&self) -> &Exponent {
        &self.head
    }

    pub fn tail(&self) -> &Exponent {
        &self.tail
    }

    pub fn n_vars(&self) -> usize {
        self.head.len()
    }

    /// Same pair, re-oriented for `order`.
    pub fn reorient(&self, order: &TermOrder) -> Result<Option<Binomial>> {
        Binomial::oriented(self.head.clone(), self.tail.clone(), order)
    }

    /// Signed vector `head - tail`; entries must fit in `i64`.
    pub fn signed(&self) -> Vec<i64> {
        self.head
            .entries()
            .iter()
            .zip(self.tail.entries())
            .map(|(&h, &t)| {
                i64::try_from(h as i128 - t as i128).expect("move entry exceeds i64")
            })
            .collect()
    }

    pub fn heads_coprime(&self, other: &Binomial) -> bool {
        !self.head.shares_support(&other.head)
    }

    /// Divide both sides by `x_i` when both allow it; otherwise unchanged.
    /// Orientation survives division because the order is translation
    /// invariant.
    pub fn divide_once_by(&self, i: usize) -> Binomial {
        if self.head.get(i) >= 1 && self.tail.get(i) >= 1 {
            let strip = |e: &Exponent| {
                let mut v = e.entries().to_vec();
                v[i] -= 1;
                Exponent::new(v)
            };
            Binomial {
                head: strip(&self.head),
                tail: strip(&self.tail),
            }
        } else {
            self.clone()
        }
    }

    /// S-binomial of two oriented binomials, oriented under `order`;
    /// `None` when the two sides of the result coincide.
    pub fn spair(&self, other: &Binomial, order: &TermOrder) -> Result<Option<Binomial>> {
        let gamma = self.head.lcm(&other.head)?;
        let a = gamma.rewrite(&self.head, &self.tail)?;
        let b = gamma.rewrite(&other.head, &other.tail)?;
        Binomial::oriented(a, b, order)
    }
}
