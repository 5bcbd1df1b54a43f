//! Independent brute-force verification lane: explicit free Lie / free
//! associative algebra pieces, exact sparse matrices for the defining
//! linear conditions, and certified kernel dimensions. Shares no code with
//! the character pipeline; agreement between the two is what the
//! verification suites test.

pub mod assoc;
pub mod derivation;
pub mod lyndon;
pub mod matrix;

pub use assoc::assoc_decompose;
pub use derivation::{
    bracket_kernel_dimension, bracket_map_matrix, sp_invariant_dimension,
};
pub use lyndon::{
    build_lyndon_basis, expand_bracket, is_lyndon, lyndon_words, standard_bracketing,
    BracketExpr, Letter, LieExpander, LyndonBasis, Word,
};
pub use matrix::{kernel_dimension, rank, SparseExactMatrix};

/// Hard resource caps for the oracle. The oracle is deliberately
/// small-scale; anything beyond these bounds fails fast with an actionable
/// message instead of exhausting memory.
#[derive(Clone, Debug)]
pub struct OracleCaps {
    /// Largest Lyndon basis (one graded piece) that may be built.
    pub max_basis_words: usize,
    /// Largest column count for an explicitly assembled bracket matrix.
    pub max_matrix_columns: usize,
    /// Largest total column count for the blocked bracket-kernel
    /// computation (split across weight blocks, so far larger).
    pub max_blocked_columns: usize,
    /// Largest column count for a single exact elimination (the
    /// sp-invariant systems, which cannot be split into weight blocks).
    pub max_exact_columns: usize,
    /// Largest number of words enumerated in one weight block.
    pub max_block_words: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            max_basis_words: 500_000,
            max_matrix_columns: 25_000,
            max_blocked_columns: 2_000_000,
            max_exact_columns: 8_000,
            max_block_words: 2_000_000,
        }
    }
}
