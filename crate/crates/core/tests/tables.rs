use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use supertable::arcs::{nst, snst};
use supertable::chartable::{
    build_matrix, chi_to_rho_bruteforce, chi_to_rho_closed, determinant, determinant_formula,
    diagonal_coeff, matrix_multiply, numeric_determinant, BasisMatrix, MatrixKind,
};
use supertable::sequences::{arcs_seq, dim_seq, nst_seq, Route};
use supertable::{enumerate_arc_sets, LaurentPoly};

fn naive_product(a: &BasisMatrix, b: &BasisMatrix) -> Vec<LaurentPoly> {
    let s = a.size();
    let mut out = Vec::with_capacity(s * s);
    for r in 0..s {
        for c in 0..s {
            let mut acc = LaurentPoly::zero();
            for k in 0..s {
                acc.add_product(a.get(r, k), b.get(k, c));
            }
            out.push(acc);
        }
    }
    out
}

#[test]
fn closed_formula_equals_bruteforce() {
    for n in 0..=6 {
        let sets = enumerate_arc_sets(n);
        sets.par_iter().for_each(|lam| {
            for nu in &sets {
                assert_eq!(
                    chi_to_rho_closed(lam, nu).unwrap(),
                    chi_to_rho_bruteforce(lam, nu).unwrap(),
                    "{lam} {nu}"
                );
            }
        });
    }
}

#[test]
fn lu_factorization() {
    for n in 0..=6 {
        let a = build_matrix(n, MatrixKind::CHI_RHO).unwrap();
        let b = build_matrix(n, MatrixKind::RHO_KAPPA).unwrap();
        let c = build_matrix(n, MatrixKind::CHI_KAPPA).unwrap();
        let product = matrix_multiply(&a, &b).unwrap();
        assert_eq!(product.kind(), MatrixKind::CHI_KAPPA);
        assert_eq!(product, c, "n={n}");
        if n <= 4 {
            let naive =
                BasisMatrix::from_entries(n, MatrixKind::CHI_KAPPA, naive_product(&a, &b)).unwrap();
            assert_eq!(naive, c);
        }
        for (i, lam) in a.order().iter().enumerate() {
            assert_eq!(a.get(i, i), &diagonal_coeff(lam));
            assert!(b.get(i, i).is_one());
            for j in 0..i {
                assert!(b.get(i, j).is_zero());
                assert!(a.get(j, i).is_zero());
            }
        }
    }
}

#[test]
fn inversion_is_two_sided() {
    for n in 0..=6 {
        let k = build_matrix(n, MatrixKind::KAPPA_RHO).unwrap();
        let b = build_matrix(n, MatrixKind::RHO_KAPPA).unwrap();
        assert!(matrix_multiply(&k, &b).unwrap().is_identity(), "n={n}");
        assert!(matrix_multiply(&b, &k).unwrap().is_identity(), "n={n}");
    }
}

#[test]
fn integrality_and_vanishing() {
    for n in 0..=6 {
        let c = build_matrix(n, MatrixKind::CHI_KAPPA).unwrap();
        let a = build_matrix(n, MatrixKind::CHI_RHO).unwrap();
        let b = build_matrix(n, MatrixKind::RHO_KAPPA).unwrap();
        let s = a.size();
        for r in 0..s {
            for col in 0..s {
                assert!(c.get(r, col).is_polynomial());
                assert!(a.get(r, col).is_polynomial());
                assert!(b.get(r, col).is_inverse_polynomial());
                if col > r {
                    assert!(a.get(r, col).is_zero(), "vanishing above the diagonal");
                }
            }
        }
    }
}

/// Nonzero χ→ρ entries whose prefactor exponent `dim(λ) - |λ| - snst(λ,ν) - nst(ν,ν)` is negative.
fn negative_prefactors(n: u32) -> Vec<(String, String)> {
    let a = build_matrix(n, MatrixKind::CHI_RHO).unwrap();
    let mut out = Vec::new();
    for r in 0..a.size() {
        for col in 0..=r {
            if a.get(r, col).is_zero() {
                continue;
            }
            let (lam, nu) = (&a.order()[r], &a.order()[col]);
            let lower = snst(lam, nu).unwrap() + nst(nu.arcs(), nu.arcs()) + lam.arc_count() as u64;
            if lower > lam.dim_stat() {
                out.push((lam.to_string(), nu.to_string()));
            }
        }
    }
    out
}

// The bound snst + nst + |λ| <= dim(λ) assumes an arc of span s nests at most
// (s-1)/2 arcs; arcs sharing a node break that, e.g. 1-5 over 2-3 and 3-4.
// The brackets then carry the missing powers of q, so entries stay in Z[q].
#[test]
fn prefactor_exponent_can_be_negative() {
    let counts: Vec<usize> = (0..=6).map(|n| negative_prefactors(n).len()).collect();
    assert_eq!(counts, [0, 0, 0, 0, 0, 1, 7]);
    assert_eq!(
        negative_prefactors(5),
        [("n=5:1-5,2-3,3-4".to_string(), "n=5:1-5,2-3,3-4".to_string())]
    );
    let lam = "n=5:1-5,2-3,3-4".parse().unwrap();
    assert_eq!(
        chi_to_rho_closed(&lam, &lam).unwrap(),
        "-q^4".parse().unwrap()
    );
}

#[test]
fn rho_basis_at_one_is_subset_incidence() {
    let one = BigRational::from_integer(1.into());
    for n in 0..=6 {
        let b = build_matrix(n, MatrixKind::RHO_KAPPA)
            .unwrap()
            .evaluate(&one)
            .unwrap();
        let order = enumerate_arc_sets(n);
        for (r, nu) in order.iter().enumerate() {
            for (c, mu) in order.iter().enumerate() {
                let want = i32::from(nu.is_subset(mu).unwrap());
                assert_eq!(
                    b.entries[r * order.len() + c],
                    BigRational::from_integer(want.into())
                );
            }
        }
    }
}

#[test]
fn determinant_three_ways() {
    let two = BigInt::from(2);
    for n in 0..=5 {
        let symbolic = determinant(n).unwrap();
        let formula = determinant_formula(n).unwrap();
        assert_eq!(symbolic, formula, "n={n}");
        let numeric = numeric_determinant(n, &two).unwrap();
        assert_eq!(
            BigRational::from_integer(numeric),
            formula
                .eval(&BigRational::from_integer(two.clone()))
                .unwrap()
        );
        if n >= 1 {
            let exp = i64::try_from(dim_seq(n, Route::Enumerate).unwrap()).unwrap()
                - i64::try_from(nst_seq(n, Route::Enumerate).unwrap()).unwrap();
            let negative = arcs_seq(n, Route::Enumerate).unwrap().bit(0);
            assert_eq!(formula, LaurentPoly::signed_monomial(negative, exp));
        }
    }
    assert_eq!(determinant(2).unwrap(), "-q".parse().unwrap());
    assert_eq!(determinant(4).unwrap(), "-q^32".parse().unwrap());
}

#[test]
fn serialized_tables_round_trip() {
    for kind in MatrixKind::BUILDABLE {
        for n in [0, 1, 4] {
            let m = build_matrix(n, kind).unwrap();
            assert_eq!(BasisMatrix::from_csv(&m.to_csv()).unwrap(), m);
            assert_eq!(BasisMatrix::from_json(&m.to_json()).unwrap(), m);
        }
    }
}
