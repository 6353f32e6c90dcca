//! Partitions, skew tableaux and Littlewood-Richardson coefficients.

mod form_a;
mod lr;
mod partition;
mod skew;

pub use form_a::{
    classify_form_a, form_a_shapes, verify_form_a_bounds, BoundCheck, Counterexample,
    FormADecomposition, FormAReport, DEFAULT_TABLEAU_CEILING,
};
pub use lr::{enumerate_lr_tableaux, lr_coefficient, lr_nonzero, lr_nonzero_contents};
pub use partition::Partition;
pub use skew::{gamma_of_word, is_lattice_word, letter_counts, SkewShape, SkewTableau};
