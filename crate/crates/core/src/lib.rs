//! Exact symbolic computation for the G₂ vertex-operator algebra family:
//! the finite Lie algebra g = g(G₂) with a validated structure table, its
//! affinization ĝ, PBW arithmetic in enveloping algebras, raising-operator
//! invariants, singular vectors of the vacuum modules N(k,0) at the
//! one-third-integer levels k = m − 2 + i/3, their images under the Zhu
//! functor, and the resulting classification of admissible highest weights.
//!
//! All arithmetic is exact over ℚ (arbitrary-precision rationals); no
//! floating point enters any verified computation.

pub mod affine;
pub mod envelope;
pub mod g2;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod selement;
pub mod singular;
pub mod vacuum;
pub mod verify;
pub mod weights;
pub mod zhu;

pub use affine::{affine_bracket, weight_of, AffineGen, QhatWeight};
pub use envelope::{run_length, word_weight, Engine, PbwOrder, Terms, UElement, Word};
pub use g2::{
    bracket_gens, bracket_table, coroot, invariant_form, structure_table_dump,
    structure_table_hash, Gen, LieElement, RootVector, GENERATORS, POSITIVE_ROOTS,
};
pub use invariants::{
    abc_expansion, abc_recurrence_residues, count_abcw, count_uvw, dpartitions,
    invariant_kernel, member_stats, named_elements, table1, theta_delta_component,
    theta_delta_words, uvw_exponents, uvw_product, BetaString, NamedElements, Side,
    StringMember, SUBBASES,
};
pub use linalg::{null_space, Echelon, SparseVec};
pub use poly::{HPoly, QPoly};
pub use rational::{binomial, factorial, q, q_decimal, q_parse, q_str, qr, Q};
pub use selement::{SElement, Symmetrizer};
pub use singular::{
    boundary_exponents, candidate_space, closed_form_coefficients, solve_singular,
    verify_singular, Exponents, Level, SingularChecks, SingularVector,
};
pub use weights::{
    weight_multiplicities, weyl_dimension, zero_weight_multiplicity, RootCoords, OMEGA1,
};
pub use zhu::{
    adjoint_power, cartan_polynomials, classification_polynomials, classify_weights,
    factored_p1_string, leading_abc_coefficient, pi0, rational_survivors, univariate_in_h10,
    zero_weight_space, zhu_map, AdjointModule, Classification, Mu01Value, WeightCandidate,
};
pub use vacuum::{act, act_on_vacuum, basis_minus, c2_echelon, reduce_c2, VacMono, VacuumVector};
pub use verify::{
    appendix_check_ids, known_deviations, verify_appendices, verify_structure,
    verify_structure_with, AppendixReport, CheckOutcome, IdentityAudit,
};
