//! Colon ideals `J : x^m` for binomial ideals, by the divide-out rule.

use super::binomial::Binomial;
use super::exponent::Exponent;
use super::groebner::{buchberger, GroebnerBasis};
use super::order::TermOrder;
use crate::error::Result;

/// Generators of `J : x_i`, obtained from a Gröbner basis of `J` under the
/// order that makes `x_i` cheapest by dividing `x_i` out of every element
/// where both sides allow it.
///
/// If `basis` is not already under [`TermOrder::max_coordinate`]`(g, var)`
/// it is recomputed internally. The divided set generates the colon ideal
/// and is again a Gröbner basis under the same order (the oracle suites
/// check both claims; consumers that re-target the order only need the
/// first).
pub fn colon_by_variable(
    basis: &GroebnerBasis,
    var: usize,
    g: &[i64],
) -> Result<Vec<Binomial>> {
    let target = TermOrder::max_coordinate(g, var)?;
    let owned;
    let under_target = if basis.order() == &target {
        basis
    } else {
        owned = buchberger(basis.elements(), &target)?;
        &owned
    };
    Ok(divide_out(under_target, var))
}

/// Generators of `J : x^dbar` via the identity
/// `J : (x_i * m) = (J : x_i) : m`, recomputing a Gröbner basis between
/// single-variable steps. Variables are processed in ascending order, each
/// repeated `dbar_i` times. `dbar = 0` returns the basis elements unchanged.
pub fn colon_by_monomial(
    basis: &GroebnerBasis,
    dbar: &Exponent,
    g: &[i64],
) -> Result<Vec<Binomial>> {
    if dbar.is_zero() {
        return Ok(basis.elements().to_vec());
    }
    let mut gens = basis.elements().to_vec();
    for i in 0..dbar.len() {
        for _ in 0..dbar.get(i) {
            let gb = buchberger(&gens, &TermOrder::max_coordinate(g, i)?)?;
            gens = divide_out(&gb, i);
        }
    }
    Ok(gens)
}

fn divide_out(gb: &GroebnerBasis, var: usize) -> Vec<Binomial> {
    let mut out: Vec<Binomial> = Vec::with_capacity(gb.len());
    for b in gb.elements() {
        let divided = b.divide_once_by(var);
        if !out.contains(&divided) {
            out.push(divided);
        }
    }
    out
}
