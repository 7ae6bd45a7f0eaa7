//! Buchberger's algorithm specialized to pure-difference binomials.
//!
//! Every polynomial in sight is a difference of two monomials with unit
//! coefficients, so reduction never leaves that class: reducing a monomial
//! by a binomial is a rewrite `m -> m - head + tail`, and reducing a
//! binomial reduces its two monomials independently. No field arithmetic
//! is needed.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::binomial::Binomial;
use super::exponent::Exponent;
use super::order::{SortKey, TermOrder};
use crate::error::{Error, Result};

/// A reduced Gröbner basis of a binomial ideal under a fixed term order.
///
/// Elements are oriented, pairwise auto-reduced (no head divides another
/// element's head or tail) and sorted by ascending head, which makes the
/// representation canonical for the ideal and order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerBasis {
    order: TermOrder,
    elements: Vec<Binomial>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Binomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The unique standard monomial in the congruence class of `m`: rewrite
    /// by basis heads until nothing applies. Among applicable elements the
    /// one with the largest head is taken (ties by index), which fixes the
    /// trace; the result does not depend on that choice.
    pub fn normal_form(&self, m: &Exponent) -> Result<Exponent> {
        reduce(m, &self.elements, &self.order)
    }

    /// Two states are joined by reversible moves exactly when their normal
    /// forms coincide.
    pub fn is_connected(&self, y: &Exponent, z: &Exponent) -> Result<bool> {
        Ok(self.normal_form(y)? == self.normal_form(z)?)
    }

    /// `true` when no basis head divides `m`.
    pub fn is_standard(&self, m: &Exponent) -> bool {
        !self.elements.iter().any(|b| b.head().divides(m))
    }

    /// Rebuild from serialized parts, re-checking orientation and pairwise
    /// reduction so a tampered file cannot smuggle in a broken basis.
    pub fn from_parts(order: TermOrder, elements: Vec<Binomial>) -> Result<Self> {
        for b in &elements {
            if order.compare(b.head(), b.tail())? != std::cmp::Ordering::Greater {
                return Err(Error::InvalidGraph("basis element not oriented".into()));
            }
        }
        for (i, b) in elements.iter().enumerate() {
            for (j, c) in elements.iter().enumerate() {
                if i != j && (b.head().divides(c.head()) || b.head().divides(c.tail())) {
                    return Err(Error::InvalidGraph("basis is not auto-reduced".into()));
                }
            }
        }
        let mut sorted = elements;
        sort_canonical(&mut sorted, &order)?;
        Ok(GroebnerBasis {
            order,
            elements: sorted,
        })
    }
}

/// Monomial normal form against an explicit element list (which need not be
/// a Gröbner basis): rewrite by the largest applicable head until none
/// divides, breaking ties by list index.
pub(crate) fn reduce(m: &Exponent, elements: &[Binomial], order: &TermOrder) -> Result<Exponent> {
    let mut current = m.clone();
    'outer: loop {
        let mut best: Option<&Binomial> = None;
        for b in elements {
            if !b.head().divides(&current) {
                continue;
            }
            best = match best {
                None => Some(b),
                Some(cur) => {
                    if order.compare(b.head(), cur.head())? == std::cmp::Ordering::Greater {
                        Some(b)
                    } else {
                        Some(cur)
                    }
                }
            };
        }
        match best {
            None => return Ok(current),
            Some(b) => {
                current = current.rewrite(b.head(), b.tail())?;
                continue 'outer;
            }
        }
    }
}

/// Reduced Gröbner basis of the ideal generated by `generators`.
///
/// Critical pairs are processed smallest lcm first and skipped when the
/// heads are coprime. Generators whose sides coincide are dropped. The
/// output is canonical: interreduced and sorted by ascending head.
pub fn buchberger(generators: &[Binomial], order: &TermOrder) -> Result<GroebnerBasis> {
    let mut basis: Vec<Binomial> = Vec::with_capacity(generators.len());
    for g in generators {
        if let Some(b) = g.reorient(order)? {
            basis.push(b);
        }
    }
    basis = interreduce_generators(basis, order)?;

    // Queue keyed by the lcm's sort key, then the pair indices.
    let mut queue: BTreeSet<(SortKey, usize, usize)> = BTreeSet::new();
    let push_pairs =
        |queue: &mut BTreeSet<(SortKey, usize, usize)>, basis: &[Binomial], j: usize| -> Result<()> {
            for i in 0..j {
                let lcm = basis[i].head().lcm(basis[j].head())?;
                queue.insert((order.sort_key(&lcm)?, i, j));
            }
            Ok(())
        };
    for j in 0..basis.len() {
        push_pairs(&mut queue, &basis, j)?;
    }

    while let Some((_, i, j)) = queue.pop_first() {
        let (f, g) = (&basis[i], &basis[j]);
        if f.heads_coprime(g) {
            continue;
        }
        let Some(s) = f.spair(g, order)? else { continue };
        let h_head = reduce(s.head(), &basis, order)?;
        let h_tail = reduce(s.tail(), &basis, order)?;
        if let Some(h) = Binomial::oriented(h_head, h_tail, order)? {
            basis.push(h);
            push_pairs(&mut queue, &basis, basis.len() - 1)?;
        }
    }

    let elements = reduce_basis(basis, order)?;
    Ok(GroebnerBasis {
        order: order.clone(),
        elements,
    })
}

/// Preprocessing pass over a generating set: reduce every element against
/// the others until stable, dropping elements that vanish. Sound for plain
/// generating sets because each rewrite is an ideal membership certificate.
fn interreduce_generators(mut gens: Vec<Binomial>, order: &TermOrder) -> Result<Vec<Binomial>> {
    loop {
        let mut changed = false;
        let mut idx = 0;
        while idx < gens.len() {
            let elem = gens[idx].clone();
            let others: Vec<Binomial> = gens
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != idx)
                .map(|(_, b)| b.clone())
                .collect();
            let h = reduce(elem.head(), &others, order)?;
            let t = reduce(elem.tail(), &others, order)?;
            if h == *elem.head() && t == *elem.tail() {
                idx += 1;
                continue;
            }
            changed = true;
            match Binomial::oriented(h, t, order)? {
                Some(b) => {
                    gens[idx] = b;
                    idx += 1;
                }
                None => {
                    gens.remove(idx);
                }
            }
        }
        if !changed {
            return Ok(gens);
        }
    }
}

/// Turn a (possibly redundant) Gröbner basis into the reduced one:
/// drop elements whose head is divisible by another head, reduce every
/// surviving tail, and sort by ascending head.
fn reduce_basis(mut elements: Vec<Binomial>, order: &TermOrder) -> Result<Vec<Binomial>> {
    sort_canonical(&mut elements, order)?;
    // A dividing head is never larger, so scanning ascending suffices.
    let mut kept: Vec<Binomial> = Vec::with_capacity(elements.len());
    for e in elements {
        if !kept.iter().any(|k| k.head().divides(e.head())) {
            kept.push(e);
        }
    }
    // Tails reduce strictly below their own head, so reducing against the
    // full kept list is safe and order of updates does not matter.
    for idx in 0..kept.len() {
        let t = reduce(kept[idx].tail(), &kept, order)?;
        if t != *kept[idx].tail() {
            let b = Binomial::new(kept[idx].head().clone(), t)
                .expect("tail reduction cannot reach the head");
            kept[idx] = b;
        }
    }
    Ok(kept)
}

fn sort_canonical(elements: &mut [Binomial], order: &TermOrder) -> Result<()> {
    let mut keyed: Vec<(SortKey, SortKey)> = Vec::with_capacity(elements.len());
    for b in elements.iter() {
        keyed.push((order.sort_key(b.head())?, order.sort_key(b.tail())?));
    }
    let mut idx: Vec<usize> = (0..elements.len()).collect();
    idx.sort_by(|&a, &b| keyed[a].cmp(&keyed[b]));
    let mut sorted: Vec<Binomial> = idx.iter().map(|&i| elements[i].clone()).collect();
    elements.swap_with_slice(&mut sorted);
    Ok(())
}

/// Buchberger criterion, checked directly: every S-pair reduces to zero.
pub fn is_groebner_basis(elements: &[Binomial], order: &TermOrder) -> Result<bool> {
    for (i, f) in elements.iter().enumerate() {
        for g in elements.iter().skip(i + 1) {
            let Some(s) = f.spair(g, order)? else { continue };
            let a = reduce(s.head(), elements, order)?;
            let b = reduce(s.tail(), elements, order)?;
            if a != b {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
