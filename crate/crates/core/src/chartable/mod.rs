//! Supercharacter tables and their LU factorization.

pub mod determinant;
pub mod entries;
pub mod matrix;
pub mod verify;

pub use determinant::{bareiss_determinant, determinant, determinant_formula, numeric_determinant};
pub use entries::{
    chi_to_rho_bruteforce, chi_to_rho_closed, diagonal_coeff, kappa_to_rho_coeff,
    rho_to_kappa_coeff, supercharacter_value,
};
pub use matrix::{build_matrix, matrix_multiply, Basis, BasisMatrix, MatrixKind, RationalMatrix};
pub use verify::{
    run_checks, verify_decomposition, Check, CheckRecord, Counterexample, VerifyReport,
};
