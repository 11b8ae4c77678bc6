//! Lie closure of Hamiltonian generators, membership, symmetry certificates,
//! and an independent dense oracle.

mod basis;
mod exact;
mod modular;
mod oracle;
mod report;
mod separability;
mod symmetry;

pub use basis::{
    ambient_dimension, lie_closure, ClosureOptions, ClosureStats, LieBasis, Mode,
    DEFAULT_BIT_BUDGET, DEFAULT_TOLERANCE, MAX_FULL_QUBITS,
};
pub use exact::{exact_closure, ExactClosure, ExactStrategy, Method};
pub use modular::{representable, Fp, PRIME};
pub use oracle::{dense_closure_oracle, ORACLE_LIMIT, ORACLE_TOLERANCE};
pub use report::{
    analyze, hypotheses, AnalysisOptions, ClosureReport, Hypotheses, SeedRun, Stability, Verdict,
};
pub use separability::{separability_check, SeparabilityVerdict};
pub use symmetry::{
    cycle_notation, detect_permutation_symmetries, SymmetryCertificate, SymmetrySearch,
    DEFAULT_SYMMETRY_BUDGET, EXHAUSTIVE_LIMIT,
};
