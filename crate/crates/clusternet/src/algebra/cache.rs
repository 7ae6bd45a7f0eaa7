//! Precomputed Gröbner bases for one reversible-transition set.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;

use super::binomial::Binomial;
use super::colon::{colon_by_monomial, colon_by_variable};
use super::exponent::{negative_part, Exponent};
use super::groebner::{buchberger, GroebnerBasis};
use super::order::TermOrder;
use crate::error::{Error, Result};
use crate::grading::Grading;

/// All bases the connectivity walk needs, populated once and immutable
/// afterwards (safe to share across threads).
///
/// `base` answers representative and same-cluster queries. For every
/// directed demand vector `d` the walk consumes, keyed by the ascending
/// support of `d-`: the full ideal re-ordered to maximize the first support
/// coordinate, the colon generators obtained by dividing that coordinate
/// out, and the colon ideal re-ordered to maximize the second coordinate.
/// Demands outside the precomputed keys are answered by computing the same
/// bases on the fly.
#[derive(Debug)]
pub struct BasisCache {
    grading: Grading,
    generators: Vec<Binomial>,
    base: Arc<GroebnerBasis>,
    max_bases: BTreeMap<usize, Arc<GroebnerBasis>>,
    colon_gens: BTreeMap<usize, Arc<Vec<Binomial>>>,
    pair_bases: BTreeMap<(usize, usize), Arc<GroebnerBasis>>,
}

impl BasisCache {
    /// Build the cache for reversible moves `u`, precomputing every basis
    /// demanded by the directed moves in `demands`. Population is parallel
    /// per key; the result does not depend on scheduling.
    pub fn build(u: &[Vec<i64>], grading: &Grading, demands: &[Vec<i64>]) -> Result<Self> {
        let n = grading.n_vars();
        let mut generators = Vec::with_capacity(u.len());
        for d in u {
            if d.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: d.len(),
                });
            }
            let b = Binomial::from_transition(d).ok_or(Error::ZeroTransition)?;
            generators.push(b);
        }

        let g = grading.positive_row();
        let base = Arc::new(buchberger(&generators, &TermOrder::graded(g)?)?);

        let mut max_keys: BTreeSet<usize> = BTreeSet::new();
        let mut pair_keys: BTreeSet<(usize, usize)> = BTreeSet::new();
        for d in demands {
            let neg = negative_part(d);
            let supp = neg.support();
            if let Some(&s1) = supp.first() {
                max_keys.insert(s1);
                if supp.len() >= 2 && neg.get(s1) == 1 {
                    pair_keys.insert((s1, supp[1]));
                }
            }
        }

        let max_bases: BTreeMap<usize, Arc<GroebnerBasis>> = max_keys
            .par_iter()
            .map(|&j| {
                let order = TermOrder::max_coordinate(g, j)?;
                Ok((j, Arc::new(buchberger(&generators, &order)?)))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .collect();

        let colon_gens: BTreeMap<usize, Arc<Vec<Binomial>>> = pair_keys
            .iter()
            .map(|&(i, _)| i)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .map(|i| {
                let gens = colon_by_variable(&max_bases[&i], i, g)?;
                Ok((i, Arc::new(gens)))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .collect();

        let pair_bases: BTreeMap<(usize, usize), Arc<GroebnerBasis>> = pair_keys
            .par_iter()
            .map(|&(i, j)| {
                let order = TermOrder::max_coordinate(g, j)?;
                Ok(((i, j), Arc::new(buchberger(&colon_gens[&i], &order)?)))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .collect();

        Ok(BasisCache {
            grading: grading.clone(),
            generators,
            base,
            max_bases,
            colon_gens,
            pair_bases,
        })
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn generators(&self) -> &[Binomial] {
        &self.generators
    }

    /// Basis of the full ideal under the default graded order; the source
    /// of canonical cluster representatives.
    pub fn base(&self) -> &GroebnerBasis {
        &self.base
    }

    /// Number of Buchberger runs the cache holds.
    pub fn basis_count(&self) -> usize {
        1 + self.max_bases.len() + self.pair_bases.len()
    }

    /// Basis of the full ideal maximizing coordinate `j`.
    pub fn max_basis(&self, j: usize) -> Result<Arc<GroebnerBasis>> {
        if let Some(b) = self.max_bases.get(&j) {
            return Ok(b.clone());
        }
        let order = TermOrder::max_coordinate(self.grading.positive_row(), j)?;
        Ok(Arc::new(buchberger(&self.generators, &order)?))
    }

    /// Basis of the colon ideal `J : x^dbar` maximizing coordinate `j`.
    /// Unit `dbar` hits the precomputed pair bases; anything else is
    /// computed fresh.
    pub fn colon_max_basis(&self, dbar: &Exponent, j: usize) -> Result<Arc<GroebnerBasis>> {
        if dbar.is_zero() {
            return self.max_basis(j);
        }
        let g = self.grading.positive_row();
        let supp = dbar.support();
        if supp.len() == 1 && dbar.get(supp[0]) == 1 {
            let i = supp[0];
            if let Some(b) = self.pair_bases.get(&(i, j)) {
                return Ok(b.clone());
            }
            let gens = match self.colon_gens.get(&i) {
                Some(gens) => gens.as_ref().clone(),
                None => colon_by_variable(self.max_basis(i)?.as_ref(), i, g)?,
            };
            let order = TermOrder::max_coordinate(g, j)?;
            return Ok(Arc::new(buchberger(&gens, &order)?));
        }
        let gens = colon_by_monomial(&self.base, dbar, g)?;
        let order = TermOrder::max_coordinate(g, j)?;
        Ok(Arc::new(buchberger(&gens, &order)?))
    }
}
