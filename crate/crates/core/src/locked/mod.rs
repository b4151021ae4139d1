//! Bounds that pin one to three vertices at fixed positions of the random order.

pub mod engine;
pub mod profile;
pub mod refute;

pub use engine::{BoundTable, ClassCounts, FamilyVerdict, Incidence, PlacementFamily, PlacementWindow};
pub use profile::{
    feasible3, min_degree, profiles1, profiles2, profiles3, LockProfile1, LockProfile2, LockProfile3,
    SelectionStrategy,
};
pub use refute::{
    locked1_bound, locked1_refutes, locked2_bound, locked2_refutes, locked3_refutes, LockConfig, LockedContext,
    RefutationOutcome, Survivor, Verdict,
};
pub mod cascade;

pub use cascade::{
    cascade, exclusion_lemma, locked_scan, theorem1, theorem1_certificate, theorem1_report, theorem1_target,
    CascadeOptions, CascadeResult, CaseRecord, LockedRow, LockedScan, OpenCases, Stage, Theorem1Report,
    DEFAULT_V_MAX,
};
