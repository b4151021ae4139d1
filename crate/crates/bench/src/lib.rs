//! Fixed workloads shared by the benchmarks.

use propb_core::locked::{LockConfig, LockedContext, SelectionStrategy};
use propb_core::oracle::Hypergraph;

/// `(n, v, m)` at the single-lock optimum for each `n` in 5..=9.
pub const SINGLE_LOCK_POINTS: [(u32, u64, u64); 5] =
    [(5, 22, 31), (6, 37, 63), (7, 73, 127), (8, 118, 261), (9, 185, 537)];

/// A locked context with its placement tables already built for `s` locks.
pub fn warm_context(n: u32, v: u64, m: u64, s: u8) -> LockedContext {
    let ctx = LockedContext::new(n, v, LockConfig::default()).expect("valid point");
    match s {
        1 => drop(ctx.single(m).expect("evaluates")),
        _ => drop(ctx.pair(m, SelectionStrategy::A, None).expect("evaluates")),
    }
    ctx
}

/// Hypergraphs for the enumeration benchmark, smallest first.
pub fn oracle_instances() -> Vec<(&'static str, Hypergraph)> {
    vec![
        ("P4", Hypergraph::path4()),
        ("K5", Hypergraph::complete_graph(5)),
        ("Fano", Hypergraph::fano()),
        ("K8", Hypergraph::complete_graph(8)),
    ]
}
