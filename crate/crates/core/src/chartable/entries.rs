//! Per-entry formulas for the four transition matrices.

use crate::arcs::{nst, nst_over, snst, Arc, ArcSet};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

fn same_n(a: &ArcSet, b: &ArcSet) -> Result<()> {
    if a.n() == b.n() {
        Ok(())
    } else {
        Err(Error::SizeMismatch(a.n(), b.n()))
    }
}

fn difference(a: &ArcSet, b: &ArcSet) -> Vec<Arc> {
    a.arcs()
        .iter()
        .filter(|x| !b.contains(x))
        .copied()
        .collect()
}

fn intersection_len(a: &ArcSet, b: &ArcSet) -> usize {
    a.arcs().iter().filter(|x| b.contains(x)).count()
}

fn exp(v: u64) -> i64 {
    i64::try_from(v).expect("exponent overflow")
}

/// Value of the supercharacter indexed by `lambda` on the superclass indexed by `mu`.
///
/// Zero when `mu` meets the conflict set of `lambda`; otherwise
/// `(q-1)^{|λ|-|λ∩μ|} q^{dim(λ)-|λ|-nst(λ,μ)} (-1)^{|λ∩μ|}`.
pub fn supercharacter_value(lambda: &ArcSet, mu: &ArcSet) -> Result<LaurentPoly> {
    same_n(lambda, mu)?;
    let conflicts = lambda.cflt();
    if mu.arcs().iter().any(|a| conflicts.binary_search(a).is_ok()) {
        return Ok(LaurentPoly::zero());
    }
    let shared = intersection_len(lambda, mu);
    let q_exp =
        exp(lambda.dim_stat()) - lambda.arc_count() as i64 - exp(nst(lambda.arcs(), mu.arcs()));
    let t_exp = (lambda.arc_count() - shared) as u32;
    Ok(LaurentPoly::t_power(t_exp).shift(q_exp) * LaurentPoly::signed_monomial(shared % 2 == 1, 0))
}

/// Coefficient of `κ_μ` in `ρ_ν(q)`: `q^{-nst(ν, μ-ν)}` when `ν ⊆ μ`, else zero.
pub fn rho_to_kappa_coeff(nu: &ArcSet, mu: &ArcSet) -> Result<LaurentPoly> {
    same_n(nu, mu)?;
    if !nu.is_subset_of(mu) {
        return Ok(LaurentPoly::zero());
    }
    let extra = difference(mu, nu);
    Ok(LaurentPoly::monomial(-exp(nst(nu.arcs(), &extra))))
}

/// Coefficient of `ρ_ν(q)` in `κ_μ`: `(-1)^{|ν-μ|} q^{-nst(ν, ν-μ)}` when `μ ⊆ ν`, else zero.
pub fn kappa_to_rho_coeff(mu: &ArcSet, nu: &ArcSet) -> Result<LaurentPoly> {
    same_n(mu, nu)?;
    if !mu.is_subset_of(nu) {
        return Ok(LaurentPoly::zero());
    }
    let removed = difference(nu, mu);
    Ok(LaurentPoly::signed_monomial(
        removed.len() % 2 == 1,
        -exp(nst(nu.arcs(), &removed)),
    ))
}

/// Coefficient of `ρ_ν(q)` in `χ^λ`, summed directly over every `μ ⊆ ν`.
///
/// Exponential in `|ν|`; this is the reference the closed formula is checked against.
pub fn chi_to_rho_bruteforce(lambda: &ArcSet, nu: &ArcSet) -> Result<LaurentPoly> {
    same_n(lambda, nu)?;
    let mut total = LaurentPoly::zero();
    for mu in nu.subsets() {
        let chi = supercharacter_value(lambda, &mu)?;
        if chi.is_zero() {
            continue;
        }
        total.add_product(&chi, &kappa_to_rho_coeff(&mu, nu)?);
    }
    Ok(total)
}

/// Coefficient of `ρ_ν(q)` in `χ^λ` from the closed product formula.
///
/// `(-1)^{|ν|} (q-1)^{|λ-ν|} q^{dim(λ) - |λ| - snst(λ,ν) - nst(ν,ν)}`
/// times `(q-1) q^{nst(λ,a)} + q^{nst(ν,a)}` for each `a ∈ ν∩λ`
/// times `q^{nst(λ,a)} - q^{nst(ν,a)}` for each `a ∈ ν-λ` outside `cflt(λ)`.
pub fn chi_to_rho_closed(lambda: &ArcSet, nu: &ArcSet) -> Result<LaurentPoly> {
    same_n(lambda, nu)?;
    let conflicts = lambda.cflt();
    let mut product = LaurentPoly::one();
    for a in nu.arcs() {
        let over_lambda = exp(nst_over(lambda.arcs(), a));
        let over_nu = exp(nst_over(nu.arcs(), a));
        let factor = if lambda.contains(a) {
            &LaurentPoly::t_power(1).shift(over_lambda) + &LaurentPoly::monomial(over_nu)
        } else if conflicts.binary_search(a).is_err() {
            if over_lambda == over_nu {
                return Ok(LaurentPoly::zero());
            }
            &LaurentPoly::monomial(over_lambda) - &LaurentPoly::monomial(over_nu)
        } else {
            continue;
        };
        product = &product * &factor;
    }
    let q_exp = exp(lambda.dim_stat())
        - lambda.arc_count() as i64
        - exp(snst(lambda, nu)?)
        - exp(nst(nu.arcs(), nu.arcs()));
    let t_exp = difference(lambda, nu).len() as u32;
    let prefactor = LaurentPoly::t_power(t_exp).shift(q_exp);
    let signed = if nu.arc_count() % 2 == 1 {
        -prefactor
    } else {
        prefactor
    };
    Ok(&signed * &product)
}

/// `(-1)^{|λ|} q^{dim(λ) - nst(λ,λ)}`, the diagonal of the χ→ρ matrix.
pub fn diagonal_coeff(lambda: &ArcSet) -> LaurentPoly {
    LaurentPoly::signed_monomial(
        lambda.arc_count() % 2 == 1,
        exp(lambda.dim_stat()) - exp(nst(lambda.arcs(), lambda.arcs())),
    )
}
