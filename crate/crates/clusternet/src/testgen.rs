//! Seeded random homogeneous systems, shared by the oracle cross-check
//! suites and the CLI self-test.

use rand::Rng;

use crate::algebra::{Exponent, State};
use crate::error::Result;
use crate::grading::{enumerate_fiber, Grading};

#[derive(Debug, Clone, Copy)]
pub struct SystemConfig {
    pub max_species: usize,
    pub max_reversible: usize,
    pub max_directed: usize,
    pub entry_bound: i64,
    pub max_weight: i64,
    /// Initial states are resampled until their fiber fits this bound, so
    /// oracle exploration always covers fibers completely.
    pub fiber_cap: usize,
}

impl Default for SystemConfig {
    fn default() -> Self {
        SystemConfig {
            max_species: 5,
            max_reversible: 4,
            max_directed: 3,
            entry_bound: 2,
            max_weight: 3,
            fiber_cap: 300,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RandomSystem {
    pub grading: Grading,
    pub reversible: Vec<Vec<i64>>,
    pub directed: Vec<Vec<i64>>,
    pub initial: State,
}

/// One signed nonzero vector with `g . v = 0`, entries within the bound;
/// `None` when rejection sampling runs out of tries for this grading.
fn sample_homogeneous<R: Rng>(rng: &mut R, g: &[i64], bound: i64) -> Option<Vec<i64>> {
    for _ in 0..200 {
        let v: Vec<i64> = (0..g.len())
            .map(|_| rng.random_range(-bound..=bound))
            .collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let dot: i64 = g.iter().zip(&v).map(|(a, b)| a * b).sum();
        if dot == 0 {
            return Some(v);
        }
    }
    None
}

fn canonical_sign(v: &[i64]) -> Vec<i64> {
    match v.iter().find(|&&x| x != 0) {
        Some(&first) if first < 0 => v.iter().map(|x| -x).collect(),
        _ => v.to_vec(),
    }
}

/// A random homogeneous system with at least one reversible move and a
/// fully enumerable initial fiber.
pub fn random_system<R: Rng>(rng: &mut R, cfg: &SystemConfig) -> Result<RandomSystem> {
    loop {
        let n = rng.random_range(2..=cfg.max_species);
        let g_row: Vec<i64> = (0..n).map(|_| rng.random_range(1..=cfg.max_weight)).collect();
        let grading = Grading::single(g_row.clone())?;

        let mut reversible: Vec<Vec<i64>> = Vec::new();
        let want_u = rng.random_range(1..=cfg.max_reversible);
        for _ in 0..want_u {
            if let Some(v) = sample_homogeneous(rng, &g_row, cfg.entry_bound) {
                let c = canonical_sign(&v);
                if !reversible.contains(&c) {
                    reversible.push(c);
                }
            }
        }
        if reversible.is_empty() {
            continue;
        }
        reversible.sort();

        let mut directed: Vec<Vec<i64>> = Vec::new();
        let want_d = rng.random_range(0..=cfg.max_directed);
        for _ in 0..want_d {
            if let Some(v) = sample_homogeneous(rng, &g_row, cfg.entry_bound) {
                let c = canonical_sign(&v);
                if reversible.contains(&c) || directed.contains(&v) {
                    continue;
                }
                let mirror: Vec<i64> = v.iter().map(|x| -x).collect();
                if directed.contains(&mirror) {
                    continue;
                }
                directed.push(v);
            }
        }
        directed.sort();

        for _ in 0..50 {
            let initial =
                State::new((0..n).map(|_| rng.random_range(0..=3u64)).collect());
            if initial.is_zero() {
                continue;
            }
            let degree = grading.degree(&initial)?;
            if enumerate_fiber(&grading, &degree, cfg.fiber_cap).is_ok() {
                return Ok(RandomSystem {
                    grading,
                    reversible,
                    directed,
                    initial,
                });
            }
        }
    }
}

/// A small nonnegative demand vector for shifted-connectivity tests.
pub fn random_demand<R: Rng>(rng: &mut R, n: usize, bound: u64) -> Exponent {
    Exponent::new((0..n).map(|_| rng.random_range(0..=bound)).collect())
}

/// A signed query vector, not necessarily homogeneous.
pub fn random_signed<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<i64> {
    (0..n).map(|_| rng.random_range(-bound..=bound)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::check_homogeneous;
    use rand::SeedableRng;

    #[test]
    fn generated_systems_are_homogeneous_and_bounded() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let cfg = SystemConfig::default();
        for _ in 0..20 {
            let sys = random_system(&mut rng, &cfg).unwrap();
            assert!(check_homogeneous(&sys.reversible, &sys.grading));
            assert!(check_homogeneous(&sys.directed, &sys.grading));
            assert!(!sys.reversible.is_empty());
            let deg = sys.grading.degree(&sys.initial).unwrap();
            let fiber = enumerate_fiber(&sys.grading, &deg, cfg.fiber_cap).unwrap();
            assert!(fiber.contains(&sys.initial));
        }
    }
}
