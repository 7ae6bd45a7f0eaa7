//! Property-based invariants, mostly cross-checked against brute force.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use clusternet::algebra::{buchberger, negative_part, Binomial, Exponent, TermOrder};
use clusternet::grading::{enumerate_fiber, find_positive_grading, Grading};
use clusternet::model::{Model, ModelFile, TransitionLists};
use clusternet::parse::{parse_state, render_state};
use clusternet::reactions::{elementary_reactions, partition_transitions};
use clusternet::testgen::{random_system, SystemConfig};

/// Odometer over `[lo..=hi]^n`; `false` once the box is exhausted.
fn advance(idx: &mut [u64], lo: u64, hi: u64) -> bool {
    for k in (0..idx.len()).rev() {
        if idx[k] < hi {
            idx[k] += 1;
            for v in idx.iter_mut().skip(k + 1) {
                *v = lo;
            }
            return true;
        }
    }
    false
}

fn advance_signed(idx: &mut [i64], lo: i64, hi: i64) -> bool {
    for k in (0..idx.len()).rev() {
        if idx[k] < hi {
            idx[k] += 1;
            for v in idx.iter_mut().skip(k + 1) {
                *v = lo;
            }
            return true;
        }
    }
    false
}

fn order_strategy() -> impl Strategy<Value = (TermOrder, usize)> {
    (1usize..6)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec(1u64..50, n),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            )
        })
        .prop_map(|(w, perm)| {
            let n = w.len();
            (TermOrder::new(w, perm).unwrap(), n)
        })
}

proptest! {
    #[test]
    fn order_laws((order, n) in order_strategy(), seeds in (0u64..1_000_000, 0u64..1_000_000, 0u64..1_000_000)) {
        let gen = |seed: u64| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Exponent::new((0..n).map(|_| rand::Rng::random_range(&mut rng, 0u64..6)).collect())
        };
        let (a, b, c) = (gen(seeds.0), gen(seeds.1), gen(seeds.2));

        // antisymmetry
        prop_assert_eq!(order.compare(&a, &b).unwrap(), order.compare(&b, &a).unwrap().reverse());
        // equality is identity
        prop_assert_eq!(order.compare(&a, &b).unwrap() == Ordering::Equal, a == b);
        // transitivity
        if order.compare(&a, &b).unwrap() != Ordering::Greater
            && order.compare(&b, &c).unwrap() != Ordering::Greater
        {
            prop_assert_ne!(order.compare(&a, &c).unwrap(), Ordering::Greater);
        }
        // translation invariance
        let shifted = (a.checked_add(&c).unwrap(), b.checked_add(&c).unwrap());
        prop_assert_eq!(order.compare(&a, &b).unwrap(), order.compare(&shifted.0, &shifted.1).unwrap());
        // zero is minimal
        let zero = Exponent::zeros(n);
        prop_assert_ne!(order.compare(&zero, &a).unwrap(), Ordering::Greater);
    }

    #[test]
    fn normal_form_is_idempotent_and_congruent(seed in 0u64..500) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_system(&mut rng, &SystemConfig::default()).unwrap();
        let gens: Vec<Binomial> = sys.reversible.iter()
            .map(|d| Binomial::from_transition(d).unwrap())
            .collect();
        let order = TermOrder::graded(sys.grading.positive_row()).unwrap();
        let basis = buchberger(&gens, &order).unwrap();

        let n = sys.grading.n_vars();
        let m = Exponent::new((0..n).map(|_| rand::Rng::random_range(&mut rng, 0u64..5)).collect());
        let nf = basis.normal_form(&m).unwrap();
        prop_assert_eq!(basis.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(basis.is_standard(&nf));

        // one legal move off m lands in the same class
        for b in &gens {
            if b.head().divides(&m) {
                let moved = m.rewrite(b.head(), b.tail()).unwrap();
                prop_assert_eq!(basis.normal_form(&moved).unwrap(), nf.clone());
            }
            if b.tail().divides(&m) {
                let moved = m.rewrite(b.tail(), b.head()).unwrap();
                prop_assert_eq!(basis.normal_form(&moved).unwrap(), nf.clone());
            }
        }
    }

    #[test]
    fn buchberger_output_passes_its_own_criterion(seed in 0u64..300) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_system(&mut rng, &SystemConfig::default()).unwrap();
        let gens: Vec<Binomial> = sys.reversible.iter()
            .map(|d| Binomial::from_transition(d).unwrap())
            .collect();
        let order = TermOrder::graded(sys.grading.positive_row()).unwrap();
        let basis = buchberger(&gens, &order).unwrap();
        prop_assert!(clusternet::algebra::is_groebner_basis(basis.elements(), &order).unwrap());
        // every generator lies in the ideal the basis presents
        for g in &gens {
            prop_assert!(basis.is_connected(g.head(), g.tail()).unwrap());
        }
        // auto-reduction: no head divides another element's head or tail
        for (i, a) in basis.elements().iter().enumerate() {
            for (j, b) in basis.elements().iter().enumerate() {
                if i != j {
                    prop_assert!(!a.head().divides(b.head()));
                    prop_assert!(!a.head().divides(b.tail()));
                }
            }
        }
    }

    #[test]
    fn basis_is_independent_of_generator_order(seed in 0u64..300) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_system(&mut rng, &SystemConfig::default()).unwrap();
        let mut gens: Vec<Binomial> = sys.reversible.iter()
            .map(|d| Binomial::from_transition(d).unwrap())
            .collect();
        let order = TermOrder::graded(sys.grading.positive_row()).unwrap();
        let forward = buchberger(&gens, &order).unwrap();
        gens.reverse();
        let backward = buchberger(&gens, &order).unwrap();
        prop_assert_eq!(forward, backward);
    }

    #[test]
    fn fiber_enumeration_matches_brute_force(
        weights in proptest::collection::vec(1i64..4, 1..5),
        degree in 0i64..13,
    ) {
        let g = Grading::single(weights.clone()).unwrap();
        let fiber = enumerate_fiber(&g, &[degree], 100_000).unwrap();

        // ascending lexicographic, no duplicates
        for w in fiber.windows(2) {
            prop_assert!(w[0] < w[1]);
        }
        for x in &fiber {
            let dot: i64 = weights.iter().zip(x.entries()).map(|(&w, &e)| w * e as i64).sum();
            prop_assert_eq!(dot, degree);
        }

        // brute force over the bounding box
        let n = weights.len();
        let bound = degree as u64;
        let mut count = 0usize;
        let mut idx = vec![0u64; n];
        loop {
            let dot: i64 = weights.iter().zip(&idx).map(|(&w, &e)| w * e as i64).sum();
            if dot == degree {
                count += 1;
            }
            if !advance(&mut idx, 0, bound) {
                break;
            }
        }
        prop_assert_eq!(fiber.len(), count);
    }

    #[test]
    fn elementary_enumeration_matches_naive_kernel_scan(
        first_row in proptest::collection::vec(1i64..3, 2..5),
        extra_seed in 0u64..10_000,
    ) {
        let n = first_row.len();
        let mut rng = ChaCha8Rng::seed_from_u64(extra_seed);
        let extra_rows = rand::Rng::random_range(&mut rng, 0usize..3);
        let mut matrix = vec![first_row.clone()];
        for _ in 0..extra_rows {
            matrix.push((0..n).map(|_| rand::Rng::random_range(&mut rng, -2i64..=2)).collect());
        }
        let g = find_positive_grading(&matrix).unwrap();
        let enumerated = elementary_reactions(&matrix, &g, 2, 100_000).unwrap();
        let distinct: BTreeSet<Vec<i64>> = enumerated.distinct().into_iter().collect();

        // box big enough to hold every possible reaction vector
        let bound: i64 = 8;
        for d in &distinct {
            prop_assert!(d.iter().all(|v| v.abs() <= bound));
        }
        let mut naive: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut d = vec![-bound; n];
        loop {
            let in_kernel = matrix.iter().all(|row| {
                row.iter().zip(&d).map(|(&a, &b)| a * b).sum::<i64>() == 0
            });
            let consumed: u64 = negative_part(&d).entries().iter().sum();
            if in_kernel && consumed <= 2 && d.iter().any(|&v| v != 0) {
                naive.insert(d.clone());
            }
            if !advance_signed(&mut d, -bound, bound) {
                break;
            }
        }
        prop_assert_eq!(distinct, naive);
    }

    #[test]
    fn partition_reconstructs_the_input(seed in 0u64..2_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rand::Rng::random_range(&mut rng, 2usize..5);
        let mut input: BTreeSet<Vec<i64>> = BTreeSet::new();
        for _ in 0..rand::Rng::random_range(&mut rng, 1usize..8) {
            let v: Vec<i64> = (0..n).map(|_| rand::Rng::random_range(&mut rng, -2i64..=2)).collect();
            if v.iter().any(|&x| x != 0) {
                // sometimes insert the mirror as well
                if rand::Rng::random_bool(&mut rng, 0.4) {
                    input.insert(v.iter().map(|x| -x).collect());
                }
                input.insert(v);
            }
        }
        if input.is_empty() {
            return Ok(());
        }
        let list: Vec<Vec<i64>> = input.iter().cloned().collect();
        let (u, d) = partition_transitions(&list).unwrap();
        let mut rebuilt: BTreeSet<Vec<i64>> = BTreeSet::new();
        for v in &u {
            rebuilt.insert(v.clone());
            rebuilt.insert(v.iter().map(|x| -x).collect());
        }
        for v in &d {
            rebuilt.insert(v.clone());
        }
        prop_assert_eq!(rebuilt, input);
    }

    #[test]
    fn expression_rendering_inverts_parsing(entries in proptest::collection::vec(0u64..9, 1..6)) {
        let pool = ["A", "B+", "C-2", "[D,E]+", "H2O", "Mn+3"];
        let species: Vec<String> = pool.iter().take(entries.len()).map(|s| s.to_string()).collect();
        let state = Exponent::new(entries);
        let text = render_state(&state, &species);
        prop_assert_eq!(parse_state(&text, &species).unwrap(), state);
    }
}

#[test]
fn model_and_graph_files_round_trip() {
    let file = ModelFile {
        species: vec!["A".into(), "B".into(), "C".into()],
        balance: None,
        transitions: Some(TransitionLists {
            reversible: vec![vec![1, -1, 0]],
            irreversible: vec![vec![0, -1, 1]],
        }),
        grading: Some(vec![vec![1, 1, 1]]),
        caps: None,
    };
    let json = file.to_json().unwrap();
    let back: ModelFile = serde_json::from_str(&json).unwrap();
    assert_eq!(back, file);

    let model = Model::resolve(file).unwrap();
    let cache = model.basis_cache().unwrap();
    let graph = clusternet::cluster::build_cluster_graph(
        &cache,
        &model.irreversible,
        &[model.parse_state("A").unwrap()],
        clusternet::ReconstructionMode::Direct,
        clusternet::GraphCaps::default(),
    )
    .unwrap();
    let gf = clusternet::GraphFile::assemble(&model.species, &model.grading, cache.base(), &graph);
    let json = gf.to_json().unwrap();
    let back: clusternet::GraphFile = serde_json::from_str(&json).unwrap();
    assert_eq!(back, gf);
    assert_eq!(back.cluster_graph().unwrap(), graph);
    assert_eq!(&back.groebner().unwrap(), cache.base());
}
