//! Every analytic bound must dominate the exact enumeration on small
//! hypergraphs.

mod common;

use proptest::prelude::*;
use propb_core::discrete::{perm_bound, DiscreteBoundQuery};
use propb_core::locked::{BoundTable, ClassCounts, Incidence};
use propb_core::oracle::{
    enumerate_orderings, exact_critical_probability, gamma_exact, greedy_color, is_two_colorable,
    monte_carlo_failure, Hypergraph,
};
use propb_core::Rational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn perm(h: &Hypergraph) -> Rational {
    perm_bound(&DiscreteBoundQuery { n: h.n() as u32, v: h.v() as u64, m: h.m() as u64, gamma: gamma_exact(h) })
        .unwrap()
}

fn check_sandwich(h: &Hypergraph) {
    let c = enumerate_orderings(h, &[]).unwrap();
    let fail = c.failure_probability();
    let crit = c.critical_probability();
    assert!(fail <= crit, "{h:?}: failure {fail} > critical {crit}");
    let p = perm(h);
    assert!(crit <= p, "{h:?}: critical {crit} > permutation bound {p}");
    assert_eq!(c.red_edge_runs, 0, "{h:?}");
    assert_eq!(c.failing_without_critical, 0, "{h:?}");
    let colorable = is_two_colorable(h).unwrap();
    if colorable.is_none() {
        assert_eq!(fail, Rational::one(), "{h:?}: not 2-colorable but greedy sometimes succeeds");
    }
    if fail < Rational::one() {
        assert!(colorable.is_some(), "{h:?}: greedy succeeded on a non-2-colorable hypergraph");
    }
}

#[test]
fn sandwich_on_random_corpus() {
    for h in common::random_corpus(11, 250, 8) {
        check_sandwich(&h);
    }
}

#[test]
fn sandwich_on_fixed_instances() {
    for (name, h) in common::fixed_instances() {
        check_sandwich(&h);
        let fail = enumerate_orderings(&h, &[]).unwrap().failure_probability();
        match name {
            "single edge" => assert!(fail.is_zero()),
            "P4" => assert_eq!(fail, "1/4".parse().unwrap()),
            "K4" | "Fano" => assert_eq!(fail, Rational::one()),
            _ => unreachable!(),
        }
    }
}

/// Class counts of `h` relative to the locked vertices (bit `i` for
/// `locked[i]`).
fn class_counts(h: &Hypergraph, locked: &[usize]) -> ClassCounts {
    let mut by_mask = vec![0u64; 1 << locked.len()];
    for e in h.edges() {
        let mask = locked.iter().enumerate().filter(|(_, x)| e.contains(x)).fold(0, |a, (i, _)| a | 1 << i);
        by_mask[mask] += 1;
    }
    ClassCounts::new(locked.len() as u8, h.m() as u64, &by_mask[1..]).unwrap()
}

#[test]
fn locked_bound_dominates_locked_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    for h in common::random_corpus(23, 300, 9) {
        let s = rng.gen_range(1..=3usize.min(h.v() - 1));
        let mut vertices: Vec<usize> = (1..=h.v()).collect();
        vertices.shuffle(&mut rng);
        let mut positions: Vec<usize> = (1..=h.v()).collect();
        positions.shuffle(&mut rng);
        let locked = &vertices[..s];
        let placement: Vec<u64> = positions[..s].iter().map(|&p| p as u64).collect();
        let pins: Vec<(usize, usize)> = locked.iter().zip(&positions[..s]).map(|(&x, &p)| (x, p)).collect();

        let exact = exact_critical_probability(&h, &pins).unwrap();
        let counts = class_counts(&h, locked);
        for incidence in [Incidence::Exact, Incidence::Published] {
            let table = BoundTable::new(h.n() as u32, h.v() as u64, &placement, incidence).unwrap();
            let bound = table.eval(&counts);
            assert!(exact <= bound, "{h:?} locks {pins:?} ({incidence:?}): critical {exact} > bound {bound}");
        }
        checked += 1;
    }
    assert_eq!(checked, 300);
}

#[test]
fn published_incidence_is_weaker() {
    for h in common::random_corpus(29, 60, 9) {
        let counts = class_counts(&h, &[1]);
        for p in 1..=h.v() as u64 {
            let exact = BoundTable::new(h.n() as u32, h.v() as u64, &[p], Incidence::Exact).unwrap().eval(&counts);
            let published =
                BoundTable::new(h.n() as u32, h.v() as u64, &[p], Incidence::Published).unwrap().eval(&counts);
            assert!(exact <= published);
        }
    }
}

#[test]
fn monte_carlo_agrees_with_enumeration() {
    for (_, h) in common::fixed_instances() {
        let exact = enumerate_orderings(&h, &[]).unwrap().failure_probability().to_f64_approx();
        let mc = monte_carlo_failure(&h, 20_000, 17).unwrap();
        assert!(mc.low <= exact && exact <= mc.high, "{h:?}: {exact} outside [{}, {}]", mc.low, mc.high);
        assert_eq!(mc, monte_carlo_failure(&h, 20_000, 17).unwrap());
    }
}

fn hypergraph_strategy() -> impl Strategy<Value = Hypergraph> {
    (3usize..=7, any::<u64>()).prop_flat_map(|(v, seed)| {
        let n_max = (v / 2).max(2);
        (Just(v), 2usize..=n_max, 1usize..=10, Just(seed)).prop_map(|(v, n, m, seed)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let total: usize = propb_core::exact::binom(v as u64, n as i64).try_into().unwrap();
            Hypergraph::random(v, n, m.min(total), &mut rng).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sandwich_holds(h in hypergraph_strategy()) {
        check_sandwich(&h);
    }

    #[test]
    fn greedy_never_leaves_red_edges(h in hypergraph_strategy(), seed in any::<u64>()) {
        let mut order: Vec<usize> = (1..=h.v()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let run = greedy_color(&h, &order).unwrap();
        let red = |x: usize| run.colors[x - 1] == propb_core::oracle::Color::Red;
        prop_assert!(h.edges().iter().all(|e| !e.iter().all(|&x| red(x))));
        let blue_edge = h.edges().iter().any(|e| e.iter().all(|&x| !red(x)));
        prop_assert_eq!(blue_edge, run.failed);
    }

    #[test]
    fn formats_round_trip(h in hypergraph_strategy()) {
        prop_assert_eq!(Hypergraph::parse(&h.to_json()).unwrap(), h.clone());
        prop_assert_eq!(Hypergraph::parse(&h.to_text()).unwrap(), h);
    }
}
