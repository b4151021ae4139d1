#![allow(dead_code)]

use propb_core::exact::binom;
use propb_core::oracle::Hypergraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random uniform hypergraphs with at most `max_v` vertices, reproducible
/// from `seed`.
pub fn random_corpus(seed: u64, count: usize, max_v: usize) -> Vec<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let v = rng.gen_range(3..=max_v);
            let n = rng.gen_range(2..=(v / 2).clamp(2, 4));
            let total: u64 = binom(v as u64, n as i64).try_into().unwrap();
            let m = rng.gen_range(1..=total.min(14)) as usize;
            Hypergraph::random(v, n, m, &mut rng).unwrap()
        })
        .collect()
}

pub fn fixed_instances() -> Vec<(&'static str, Hypergraph)> {
    vec![
        ("single edge", Hypergraph::single_edge(3)),
        ("P4", Hypergraph::path4()),
        ("K4", Hypergraph::complete_graph(4)),
        ("Fano", Hypergraph::fano()),
    ]
}
