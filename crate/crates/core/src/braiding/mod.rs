//! Braidings of Yetter-Drinfeld modules, the comparison with F(𝒱_{i,j}),
//! the rank-two diagonal reduction, the table classifier and braided
//! symmetrizers.

mod classify;
mod diagonal;
mod fmodule;
mod operator;
mod symmetrizer;
pub mod weyl;

pub use classify::{classify_nichols, matching_rows, NicholsVerdict, TableRow, VerdictReason, TABLE_ROWS};
pub use diagonal::{
    diagonal_dimension, reduce_to_diagonal, tag_shape_consistent, DiagonalBraidingData, DynkinDiagram2,
};
pub use fmodule::{
    beta, beta_lambda_identity, braided_iso_check, braided_iso_report, compare_with, f_module_braiding,
    f_module_braiding_with, f_module_dim,
};
pub use operator::{
    braiding_closed_form, braiding_operator, triangularity_check, triangularity_check_with_order,
    yang_baxter_check, yang_baxter_residual, BraidingOperator,
};
pub use symmetrizer::{
    graded_dims_from_operator, graded_nichols_dim, graded_nichols_dims, index_sum_check, lexmax_reduced_word,
    lexmin_reduced_word, lift_word, psi_coefficient, psi_coefficient_at, reduced_word_spot_check,
    symmetrizer_permsum, symmetrizer_recursive, RecursiveSymmetrizer, DEFAULT_BUDGET,
};
