use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::exponent::Exponent;
use crate::error::{Error, Result};

/// Key with `key(a) < key(b)` iff `a` precedes `b` in the order: weighted
/// degree, then the reversed permuted entries with inverted comparison.
pub(crate) type SortKey = (u128, Vec<u64>);

/// A weighted degrevlex term order.
///
/// Monomials are compared by weighted degree first; ties fall to reverse
/// lexicographic comparison under a fixed scan order of the variables
/// (`a` beats `b` when the last nonzero entry of the permuted `a - b` is
/// negative). Strictly positive weights make this a genuine term order:
/// the zero exponent is minimal and comparison is translation invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermOrder {
    weight: Vec<u64>,
    /// `perm[k]` is the variable scanned at position `k`; the last position
    /// is the cheapest variable in the tie break.
    perm: Vec<usize>,
}

impl TermOrder {
    pub fn new(weight: Vec<u64>, perm: Vec<usize>) -> Result<Self> {
        if weight.contains(&0) {
            return Err(Error::NonPositiveWeight);
        }
        let n = weight.len();
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: perm.len(),
            });
        }
        for &v in &perm {
            if v >= n || seen[v] {
                return Err(Error::InvalidGrading(
                    "tie-break permutation is not a permutation".into(),
                ));
            }
            seen[v] = true;
        }
        Ok(TermOrder { weight, perm })
    }

    /// Degrevlex weighted by a positive grading row, identity scan order.
    pub fn graded(g: &[i64]) -> Result<Self> {
        let weight = positive_weights(g)?;
        let perm = (0..g.len()).collect();
        TermOrder::new(weight, perm)
    }

    /// The order whose normal forms maximize coordinate `j` on every fiber
    /// of the grading `g`: weight `2g - e_j`, with `j` scanned last.
    ///
    /// On a fixed fiber the weighted degree is `2 deg - x_j`, so minimizing
    /// it maximizes `x_j`; all weights stay strictly positive because
    /// `g >= 1` componentwise.
    pub fn max_coordinate(g: &[i64], j: usize) -> Result<Self> {
        let base = positive_weights(g)?;
        let n = base.len();
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, limit: n });
        }
        let mut weight: Vec<u64> = base
            .iter()
            .map(|&w| w.checked_mul(2).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        weight[j] -= 1;
        let mut perm: Vec<usize> = (0..n).filter(|&v| v != j).collect();
        perm.push(j);
        TermOrder::new(weight, perm)
    }

    pub fn n_vars(&self) -> usize {
        self.weight.len()
    }

    pub fn weight(&self) -> &[u64] {
        &self.weight
    }

    pub fn weighted_degree(&self, a: &Exponent) -> Result<u128> {
        self.check_dims(a)?;
        let mut acc: u128 = 0;
        for (&w, &e) in self.weight.iter().zip(a.entries()) {
            let term = (w as u128)
                .checked_mul(e as u128)
                .ok_or(Error::Overflow)?;
            acc = acc.checked_add(term).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    /// Total comparison of two exponent vectors.
    pub fn compare(&self, a: &Exponent, b: &Exponent) -> Result<Ordering> {
        self.check_dims(a)?;
        self.check_dims(b)?;
        let da = self.weighted_degree(a)?;
        let db = self.weighted_degree(b)?;
        if da != db {
            return Ok(da.cmp(&db));
        }
        // Reverse-lex tie break: scan the permuted difference from the end;
        // a beats b when the last nonzero entry is negative.
        for &v in self.perm.iter().rev() {
            let (ea, eb) = (a.get(v), b.get(v));
            if ea != eb {
                return Ok(if ea < eb {
                    Ordering::Greater
                } else {
                    Ordering::Less
                });
            }
        }
        Ok(Ordering::Equal)
    }

    pub(crate) fn sort_key(&self, a: &Exponent) -> Result<SortKey> {
        let deg = self.weighted_degree(a)?;
        let tie: Vec<u64> = self
            .perm
            .iter()
            .rev()
            .map(|&v| u64::MAX - a.get(v))
            .collect();
        Ok((deg, tie))
    }

    fn check_dims(&self, a: &Exponent) -> Result<()> {
        if a.len() == self.weight.len() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.weight.len(),
                found: a.len(),
            })
        }
    }
}

fn positive_weights(g: &[i64]) -> Result<Vec<u64>> {
    if g.is_empty() {
        return Err(Error::NonPositiveWeight);
    }
    g.iter()
        .map(|&w| if w >= 1 { Ok(w as u64) } else { Err(Error::NonPositiveWeight) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[u64]) -> Exponent {
        Exponent::new(v.to_vec())
    }

    #[test]
    fn degrevlex_prefers_earlier_variables_at_equal_degree() {
        let o = TermOrder::graded(&[1, 1]).unwrap();
        assert_eq!(o.compare(&e(&[1, 0]), &e(&[0, 1])).unwrap(), Ordering::Greater);
    }

    #[test]
    fn weight_dominates() {
        let o = TermOrder::graded(&[1, 2]).unwrap();
        assert_eq!(o.compare(&e(&[2, 0]), &e(&[0, 2])).unwrap(), Ordering::Less);
    }

    #[test]
    fn reflexive_equality() {
        let o = TermOrder::graded(&[3, 1, 2]).unwrap();
        let a = e(&[4, 0, 1]);
        assert_eq!(o.compare(&a, &a).unwrap(), Ordering::Equal);
    }

    #[test]
    fn max_coordinate_weights() {
        let o = TermOrder::max_coordinate(&[1, 1], 0).unwrap();
        assert_eq!(o.weight(), &[1, 2]);
        let o = TermOrder::max_coordinate(&[1, 1, 1], 2).unwrap();
        assert_eq!(o.weight(), &[2, 2, 1]);
        // 19-entry grading: the weight is 2g - e_3 entrywise.
        let g = [8i64, 7, 1, 6, 1, 7, 5, 3, 1, 3, 3, 11, 3, 7, 13, 13, 11, 12, 12];
        let o = TermOrder::max_coordinate(&g, 2).unwrap();
        let expect: Vec<u64> = g
            .iter()
            .enumerate()
            .map(|(i, &w)| if i == 2 { 2 * w as u64 - 1 } else { 2 * w as u64 })
            .collect();
        assert_eq!(o.weight(), &expect[..]);
        assert_eq!(expect[..3], [16, 14, 1]);
    }

    #[test]
    fn max_coordinate_rejects_bad_input() {
        assert!(TermOrder::max_coordinate(&[1, 0], 0).is_err());
        assert!(TermOrder::max_coordinate(&[1, 1], 2).is_err());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let o = TermOrder::graded(&[1, 1]).unwrap();
        assert!(o.compare(&e(&[1, 0, 0]), &e(&[0, 1])).is_err());
    }

    #[test]
    fn sort_key_agrees_with_compare() {
        let o = TermOrder::max_coordinate(&[2, 1, 1, 1], 1).unwrap();
        let pts = [
            e(&[1, 0, 0, 0]),
            e(&[0, 1, 1, 0]),
            e(&[0, 1, 0, 1]),
            e(&[0, 0, 2, 0]),
            e(&[0, 2, 0, 0]),
        ];
        for a in &pts {
            for b in &pts {
                let by_key = o.sort_key(a).unwrap().cmp(&o.sort_key(b).unwrap());
                assert_eq!(by_key, o.compare(a, b).unwrap());
            }
        }
    }
}
