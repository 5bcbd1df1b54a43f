//! Exact computation engine for stable irreducible decompositions of
//! symplectic derivation Lie algebras, driven by symmetric-group character
//! theory and cross-checked by an independent linear-algebra oracle.

pub mod character;
pub mod decomp;
pub mod dims;
pub mod error;
pub mod lr;
pub mod numbers;
pub mod oracle;
pub mod partition;
pub mod sp;
pub mod verify;

pub use character::{
    chi_induced, chi_l, chi_w, mn_character, verify_difference_identity, ClassFunction, Label,
};
pub use decomp::{
    check_conjugate_symmetry, decompose_h, decompose_lie, dimension_of, multiplicity,
    multiplicity_series_check, symmetry_guaranteed, Decomposition, SeriesEntry, SeriesReport,
    Source, SymmetryReport, SymmetryViolation,
};
pub use dims::{gl_dimension, hook_lengths, sn_dimension};
pub use error::{Error, Result};
pub use lr::{even_column_partitions, lr_coefficient};
pub use numbers::{
    binomial, divisor_count, divisors, factorial, mobius, witt_dimension, witt_mobius_sum,
};
pub use partition::{
    centralizer_order, class_data, class_sign, enumerate_partitions, ConjClass, Partition,
};
pub use oracle::{
    assoc_decompose, bracket_kernel_dimension, bracket_map_matrix, build_lyndon_basis,
    expand_bracket, kernel_dimension, sp_invariant_dimension, BracketExpr, LyndonBasis,
    OracleCaps, SparseExactMatrix,
};
pub use sp::{
    genus_one_invariant_dim, invariant_stabilization_genus, stable_invariant_dim,
    stable_invariant_dim_of, stable_restrict, unstable_invariant_dim, unstable_invariant_dim_of,
    SpDecomposition,
};
pub use verify::{
    all_suites, characters_suite, dimensions_suite, oracle_suite, symmetry_suite, Check,
    SuiteReport,
};
