//! Exact lower bounds for `m(n)`, the minimum number of edges in an
//! `n`-uniform hypergraph that is not 2-colorable, and for `m(n, v)`, the
//! same on exactly `v` vertices.
//!
//! Every bound is computed with exact integer and rational arithmetic.
//! Floating point only appears in Monte Carlo estimates and to order work.

pub mod certificate;
pub mod classic;
pub mod discrete;
pub mod error;
pub mod exact;
pub mod locked;
pub mod oracle;
pub mod query;
pub mod steiner;

pub use certificate::{CertVerdict, Certificate};
pub use classic::{
    ck_eval, ck_lower_bound, ck_search, goldberg_russell, random_coloring_lower, schoenheim, CkBound, GoldbergRussell,
};
pub use discrete::{discrete_lower_bound, perm_bound, DiscreteBoundQuery, DiscreteScan};
pub use error::{Error, Result};
pub use exact::Rational;
pub use locked::{
    exclusion_lemma, locked1_bound, locked1_refutes, locked2_bound, locked2_refutes, locked3_refutes, locked_scan,
    theorem1, CascadeOptions, LockProfile1, LockProfile2, LockProfile3, LockedScan, RefutationOutcome,
    SelectionStrategy,
};
pub use oracle::{gamma_exact, greedy_color, is_two_colorable, Hypergraph};
pub use query::{evaluate, replay, table1, BoundRequest, Method, Table1};
pub use steiner::{steiner_params, theorem2_certify};
