//! Finite (possibly non-unital) rings presented by structure constants,
//! derivations, differential polynomial rings `R[x;D]` with `xa = ax + D(a)`,
//! radical computations, polynomial-identity checks, and machine certificates
//! for the structure of `J(R[x;D])`.
//!
//! The central object is the D-stable core `S` of the nilradical: the largest
//! D-stable ideal contained in `N(R)`. The harness certifies, instance by
//! instance, that `S` behaves exactly as the intersection of `J(R[x;D])` with
//! `R` must: it is a nil D-ideal, `S[x;D]` is quasi-regular, and the
//! coefficient identities extracted from the quasi-inverse equations hold.

pub mod caps;
pub mod derivation;
pub mod error;
pub mod finring;
pub mod harness;
pub mod identities;
pub mod parse;
pub mod radical;
pub mod skewpoly;
pub mod snf;

pub use caps::Caps;
pub use derivation::Derivation;
pub use error::{Error, Result};
pub use finring::{
    build_matrix_ring, build_product, build_triangular_ring, build_truncated_poly, build_zn,
    FiniteRing, IdealSet, QuotientMap, RingElement,
};
pub use harness::{
    compute_s, quotient_transfer_check, replay_proof, semiprimitivity_certificate,
    theorem1_certificate, ReplayRecord, SemiprimitivityCertificate, TheoremCertificate,
};
pub use identities::{
    centre_intersection_check, eval_identity, holds_on, standard_identity, MultilinearIdentity,
};
pub use parse::{
    build_ringfile, load_ringfile, parse_identity, parse_poly, parse_ringfile, BuiltRing, RingFile,
};
pub use radical::{
    d_stable_core, is_nil_ideal, is_quasi_regular, jacobson_radical, nilpotence_index, nilradical,
    quasi_regular_witness, radical_report, RadicalReport,
};
pub use skewpoly::{move_coeff, SearchOutcome, SkewPoly};
