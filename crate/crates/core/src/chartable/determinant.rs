//! Determinant of the supercharacter table, three ways: product of the χ→ρ
//! diagonal, the closed sequence formula, and fraction-free elimination of
//! the table specialized at an integer `q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::entries::chi_to_rho_closed;
use super::matrix::{build_matrix, MatrixKind};
use crate::arcs::enumerate_arc_sets;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::sequences::{arcs_seq, dim_seq, nst_seq, Route};

/// `Π_λ A[λ][λ]` with `A` the χ→ρ matrix. Equals `det C` because `A` is lower
/// triangular and the ρ→κ matrix is unitriangular.
pub fn determinant(n: u32) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::one();
    for lam in enumerate_arc_sets(n) {
        acc = &acc * &chi_to_rho_closed(&lam, &lam)?;
    }
    Ok(acc)
}

/// `(-1)^{arcs(n)} q^{dim(n) - nst(n)}`.
pub fn determinant_formula(n: u32) -> Result<LaurentPoly> {
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let to_i64 = |v: num_bigint::BigUint| {
        i64::try_from(&v).map_err(|_| Error::OutOfRange(format!("exponent {v} exceeds i64")))
    };
    let arcs = arcs_seq(n, Route::Formula)?;
    let negative = arcs.is_odd();
    let exp = to_i64(dim_seq(n, Route::Formula)?)? - to_i64(nst_seq(n, Route::Formula)?)?;
    Ok(LaurentPoly::signed_monomial(negative, exp))
}

/// Determinant of the supercharacter table at `q = q0`, by Bareiss elimination.
pub fn numeric_determinant(n: u32, q0: &BigInt) -> Result<BigInt> {
    let table = build_matrix(n, MatrixKind::CHI_KAPPA)?;
    Ok(bareiss_determinant(table.evaluate_integer(q0)?))
}

/// Exact determinant of a square integer matrix by fraction-free elimination.
///
/// Every division is exact; row swaps track the sign.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let size = m.len();
    assert!(m.iter().all(|r| r.len() == size), "matrix must be square");
    if size == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev_pivot = BigInt::one();
    for k in 0..size - 1 {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev_pivot;
            }
            m[i][k] = BigInt::zero();
        }
        prev_pivot = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}
