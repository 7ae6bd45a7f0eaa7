//! Positive (multi-)gradings and fiber enumeration.
//!
//! A grading with a strictly positive first row and all rows orthogonal to
//! the transition set forces every fiber (set of states of a fixed degree)
//! to be finite, which is what makes the reachable part of any transition
//! system finite and every enumeration below terminate.

use serde::{Deserialize, Serialize};

use crate::algebra::Exponent;
use crate::error::{Error, Result};

/// One or more integer weight rows; the first row is strictly positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grading {
    rows: Vec<Vec<i64>>,
}

impl Grading {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::InvalidGrading("no rows".into()))?;
        if first.is_empty() {
            return Err(Error::InvalidGrading("empty first row".into()));
        }
        if first.iter().any(|&w| w < 1) {
            return Err(Error::InvalidGrading(
                "first row must be strictly positive".into(),
            ));
        }
        let n = first.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGrading("ragged rows".into()));
        }
        Ok(Grading { rows })
    }

    pub fn single(row: Vec<i64>) -> Result<Self> {
        Grading::new(vec![row])
    }

    pub fn n_vars(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn positive_row(&self) -> &[i64] {
        &self.rows[0]
    }

    /// Multi-degree of a state, one entry per row.
    pub fn degree(&self, x: &Exponent) -> Result<Vec<i64>> {
        if x.len() != self.n_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars(),
                found: x.len(),
            });
        }
        self.rows
            .iter()
            .map(|row| {
                let mut acc: i128 = 0;
                for (&w, &e) in row.iter().zip(x.entries()) {
                    let term = (w as i128)
                        .checked_mul(e as i128)
                        .ok_or(Error::Overflow)?;
                    acc = acc.checked_add(term).ok_or(Error::Overflow)?;
                }
                i64::try_from(acc).map_err(|_| Error::Overflow)
            })
            .collect()
    }

    /// `true` when every row annihilates the signed move vector.
    pub fn annihilates(&self, d: &[i64]) -> bool {
        if d.len() != self.n_vars() {
            return false;
        }
        self.rows.iter().all(|row| {
            row.iter()
                .zip(d)
                .map(|(&w, &v)| w as i128 * v as i128)
                .sum::<i128>()
                == 0
        })
    }
}

/// Search a balance matrix for a strictly positive row combination.
///
/// The sum of the all-nonnegative rows is tried first; failing that, small
/// nonnegative integer combinations of all rows (coefficients `0..=4`,
/// ascending lexicographically) are scanned. The result lies in the row
/// space, hence is orthogonal to the kernel and to every balanced reaction.
pub fn find_positive_grading(matrix: &[Vec<i64>]) -> Result<Grading> {
    let n = rectangular_width(matrix)?;
    let nonneg_sum: Vec<i64> = (0..n)
        .map(|c| {
            matrix
                .iter()
                .filter(|row| row.iter().all(|&v| v >= 0))
                .map(|row| row[c])
                .sum()
        })
        .collect();
    if nonneg_sum.iter().all(|&v| v >= 1) {
        return Grading::single(nonneg_sum);
    }

    const MAX_COEFF: i64 = 4;
    let m = matrix.len();
    let mut coeffs = vec![0i64; m];
    loop {
        // odometer step
        let mut k = m;
        loop {
            if k == 0 {
                return Err(Error::NoPositiveGrading);
            }
            k -= 1;
            if coeffs[k] < MAX_COEFF {
                coeffs[k] += 1;
                for c in coeffs.iter_mut().skip(k + 1) {
                    *c = 0;
                }
                break;
            }
        }
        let combo: Option<Vec<i64>> = (0..n)
            .map(|c| {
                let acc: i128 = matrix
                    .iter()
                    .zip(&coeffs)
                    .map(|(row, &co)| row[c] as i128 * co as i128)
                    .sum();
                i64::try_from(acc).ok()
            })
            .collect();
        // combinations overflowing i64 are unusable, not an error
        if let Some(combo) = combo {
            if combo.iter().all(|&v| v >= 1) {
                return Grading::single(combo);
            }
        }
    }
}

/// `true` iff every move is annihilated by every grading row. Homogeneity
/// keeps moves out of the nonnegative orthant and fibers finite.
pub fn check_homogeneous(moves: &[Vec<i64>], g: &Grading) -> bool {
    moves.iter().all(|d| g.annihilates(d))
}

/// Extend a positive grading row to a positive multi-grading: each matrix
/// row gets the minimal positive multiple of `g` added that lifts every
/// entry to at least one (rows already positive still get one copy). The
/// output keeps `g` as its first row.
pub fn make_positive_multigrading(matrix: &[Vec<i64>], g: &Grading) -> Result<Grading> {
    let base = g.positive_row();
    let n = rectangular_width(matrix)?;
    if n != base.len() {
        return Err(Error::DimensionMismatch {
            expected: base.len(),
            found: n,
        });
    }
    let mut rows = vec![base.to_vec()];
    for row in matrix {
        let mut k: i64 = 1;
        for (&a, &w) in row.iter().zip(base) {
            if a < 1 {
                // minimal k with a + k*w >= 1
                let need = ((1 - a as i128) + (w as i128 - 1)) / w as i128;
                k = k.max(i64::try_from(need).map_err(|_| Error::Overflow)?);
            }
        }
        let bumped: Vec<i64> = row
            .iter()
            .zip(base)
            .map(|(&a, &w)| {
                k.checked_mul(w)
                    .and_then(|kw| a.checked_add(kw))
                    .ok_or(Error::Overflow)
            })
            .collect::<Result<_>>()?;
        rows.push(bumped);
    }
    Grading::new(rows)
}

/// All states of the given multi-degree, emitted in ascending lexicographic
/// order. The positive first row bounds the search; rows whose entries are
/// all nonnegative prune partial assignments. Exceeding `cap` aborts with
/// [`Error::CapExceeded`] carrying the partial count.
pub fn enumerate_fiber(g: &Grading, degree: &[i64], cap: usize) -> Result<Vec<Exponent>> {
    if degree.len() != g.rows().len() {
        return Err(Error::DimensionMismatch {
            expected: g.rows().len(),
            found: degree.len(),
        });
    }
    let n = g.n_vars();
    let nonneg_row: Vec<bool> = g
        .rows()
        .iter()
        .map(|r| r.iter().all(|&v| v >= 0))
        .collect();
    let mut out: Vec<Exponent> = Vec::new();
    let mut x = vec![0u64; n];
    let rem: Vec<i128> = degree.iter().map(|&d| d as i128).collect();

    fn step(
        g: &Grading,
        nonneg_row: &[bool],
        cap: usize,
        i: usize,
        x: &mut Vec<u64>,
        rem: Vec<i128>,
        out: &mut Vec<Exponent>,
    ) -> Result<()> {
        let n = g.n_vars();
        if i == n {
            if rem.iter().all(|&r| r == 0) {
                if out.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "fiber",
                        cap,
                        partial: out.len(),
                    });
                }
                out.push(Exponent::new(x.clone()));
            }
            return Ok(());
        }
        let w0 = g.positive_row()[i] as i128;
        if rem[0] < 0 {
            return Ok(());
        }
        let max_v = rem[0] / w0;
        for v in 0..=max_v {
            let mut next: Vec<i128> = Vec::with_capacity(rem.len());
            let mut dead = false;
            for (k, row) in g.rows().iter().enumerate() {
                let r = rem[k] - row[i] as i128 * v;
                // nonnegative rows only lose ground as v grows
                if nonneg_row[k] && r < 0 {
                    dead = true;
                    break;
                }
                next.push(r);
            }
            if dead {
                break;
            }
            x[i] = v as u64;
            step(g, nonneg_row, cap, i + 1, x, next, out)?;
        }
        x[i] = 0;
        Ok(())
    }

    step(g, &nonneg_row, cap, 0, &mut x, rem, &mut out)?;
    Ok(out)
}

fn rectangular_width(matrix: &[Vec<i64>]) -> Result<usize> {
    let n = matrix.first().map(|r| r.len()).unwrap_or(0);
    if matrix.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidGrading("ragged matrix".into()));
    }
    Ok(n)
}
