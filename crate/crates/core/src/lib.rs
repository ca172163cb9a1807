//! Exact-arithmetic toolkit for the numerical divisor theory of smooth
//! projective surfaces: integer intersection lattices, blow-up transforms,
//! dual and river graphs of curve configurations, and checkers for a family
//! of sectional-genus bounds, all validated against brute-force oracles.

pub mod blowup;
pub mod bounds;
pub mod error;
pub mod graphs;
pub mod lattice;
pub mod oracle;

pub use error::{Error, Result};
pub use lattice::{
    abelian_surface, inertia, is_negative_semidefinite, is_negative_semidefinite_matrix,
    product_surface, validate_surface, CurveId, CurveRecord, DivisorClass, KodairaDim,
    SurfaceData, SurfaceModel, Violation,
};

pub use blowup::{
    apply_plan, genus_drop, separation_data, validate_snc, BlowupEvent, BlowupPlan, Center,
    EventId, EventRecord, TransformState,
};
pub use bounds::{
    applicable_theorem, check_conjecture, claim_4_8, classify_equality, cor_5_5_check,
    thm_4_22_check, BoundReport, ConjectureReport, Declarations, EqualityCase, Subject,
    TheoremId,
};
pub use graphs::{
    build_dual_graph, build_river, claim_4_23_check, classify_cnns, counts, lemma_4_20_check,
    m_formula, m_formula_biased, m_formula_total, m_oracle, n_of_d, non_cutpoints,
    non_cutpoints_bitmask, CnnsClass, Configuration, DualGraph, PointCluster, PointId,
    RiverGraph, RiverVertex, Verdict,
};
pub use oracle::{
    oracle_genus, oracle_m, oracle_semidef, random_plan, verify_seed, CorpusParams, OracleReport,
};
