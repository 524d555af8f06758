//! Exact computational algebra over small finite fields.
//!
//! The crate implements, and machine-checks by enumeration, the constructive
//! side of additive-polynomial algebra in positive characteristic:
//!
//! * [`gf`] — arithmetic in GF(p^k), Frobenius, traces and canonical
//!   subfield embeddings;
//! * [`addpoly`] — F_p-subspaces of a field's additive group, linearized
//!   polynomials, the subgroup polynomial `f_G` and its decomposition and
//!   twist identities;
//! * [`asext`] — Artin-Schreier extensions `L = K(alpha)` with
//!   `alpha^p - alpha` in `K`, and the image structure of the map
//!   `x^p - x`;
//! * [`contrary`] — contrary tuples, their explicit generator, and
//!   replayable witness certificates;
//! * [`hypercube`] — pullback hypercubes on the subset lattice of
//!   `{1..n}`, built bottom-up from quotient polynomials or top-down from
//!   fiber products, with point-level verification;
//! * [`codec`] — the canonical JSON wire formats.
//!
//! Everything is exact: all checks are equalities in finite fields, so
//! there are no tolerances anywhere.

pub mod addpoly;
pub mod asext;
pub mod codec;
pub mod contrary;
pub mod error;
pub mod gf;
pub mod hypercube;
mod linalg;

pub use addpoly::{
    by_one, decompose, descend, AdditivePolynomial, Decomposition, DescendOutcome, FpSubspace,
    HypothesisFailure,
};
pub use asext::{
    build_as_extension, is_as_closed, wp, wp_image, wp_outside_image, ArtinSchreierExtension,
};
pub use codec::canonical_json;
pub use contrary::{
    closure_check, generate_contrary, is_contrary_bruteforce, sample_independent_tuples,
    verify_certificate, CertificateSlot, ClosureReport, ContraryCertificate,
};
pub use error::Error;
pub use gf::{
    build_embedding, find_irreducible, in_subfield, Embedding, Field, FieldElement, FieldOps,
    FiniteField,
};
pub use hypercube::{
    baldwin_saxl_failure, build_bottom_up, build_top_down, cross_check_witness, hempel_condition,
    point_count_check, verify_geometric_surjectivity, verify_pullback, BaldwinSaxlReport,
    BottomUpHypercube, CrossCheckReport, PointCountReport, PullbackReport, SurjectivityReport,
    TopDownGroup,
};

/// Largest supported field order, `2^16`.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;
