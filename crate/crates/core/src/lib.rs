//! Exact linear algebra for very good upper triangular matrices, totally
//! opposite flags and Billiard Arrays over ℚ and GF(p).
//!
//! ```
//! use ba_core::{bvalue_function, qbinom_matrix, Field};
//!
//! let q = Field::Rational.from_i64(3);
//! let t = qbinom_matrix(4, &q).unwrap();
//! let b = bvalue_function(&t).unwrap();
//! assert!(b.values().iter().all(|v| v.to_string() == "1/3"));
//! ```

pub mod billiard;
pub mod document;
pub mod error;
pub mod flags;
pub mod matrix;
pub mod qbinom;
pub mod scalar;
pub mod triangle;
pub mod valuefn;

pub use billiard::{
    bvalue_brace, bvalue_det, bvalue_function, bvalue_function_brace, edge_ratio, is_standard, standard_cba,
    verify_billiard, ConcreteBilliardArray,
};
pub use document::{FieldSpec, MatrixDocument, ValueEntry, ValueFunctionDocument};
pub use error::{Error, Result};
pub use flags::{
    billiard_from_flags, flags_from_matrix, is_opposite, is_totally_opposite, BilliardArray, Decomposition, Flag,
    MatrixFlags, Subspace,
};
pub use matrix::Matrix;
pub use qbinom::{qbinom_det_closed, qbinom_matrix, qbinomial, qfact, qint, IntPolynomial};
pub use scalar::{Field, Scalar};
pub use triangle::{Location, Triangle};
pub use valuefn::{
    fine_form, fine_preimage, hexagon_ratios, is_fine, is_nice, matrices_equivalent, matrix_from_window_dets,
    nice_form, random_very_good, vf_equivalent, window_det_function, NiceForm, ValueFunction,
};
