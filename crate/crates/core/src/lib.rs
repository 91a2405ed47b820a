//! Exact computations with the free bigraded Lie algebra on two generators
//! `x`, `y`: Lyndon bases, bracket normalization, special derivations and
//! their outer quotient, Witt-type dimension series for free algebras on
//! graded generators, and weight filtrations on bigraded dimension data.
//!
//! Everything is exact: scalars are arbitrary-precision rationals and all
//! linear algebra is fraction-free over the integers.

pub mod basis;
pub mod derivation;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod series;
pub mod verify;
pub mod weights;
pub mod word;

pub use basis::{classical_witt, lcs_dim, lyndon_basis, witt_dim};
pub use derivation::{
    apply, derivation_bracket, inner_intersection_dim, is_inner_special, outer_special_dims,
    special_dim, special_kernel_basis, Derivation, OuterSpecialTable, SpecialBasis, SpecialDim,
};
pub use error::{Error, Result};
pub use lie::{FreeLie, LieElement, Scalar, DEFAULT_TRUNCATION};
pub use series::{
    free_lie_dims, generator_count_from_dims, lyndon_count_over_graded_alphabet, total_collapse,
    BivariateSeries, GeneratorSpec,
};
pub use weights::{
    check_negatively_weighted, descend_character, graded_quotient, index_set, weight_filtration,
    GradedModule,
};
pub use word::{LyndonWord, MultiDegree, Word};
