//! The family `X_n` of `2n`-dimensional nilpotent algebras and the
//! explicit zig-zag chain certifying `d_n ≠ 0` on it.
//!
//! Generators are ordered `dx_1..dx_n, ω_1..ω_n`, so `dx_k` is `f{k}` and
//! `ω_k` is `f{n+k}`.

use super::StructureEquations;
use crate::algebra::Form;
use crate::Error;

fn wedge_all(m: usize, factors: impl IntoIterator<Item = Form>) -> Form {
    factors.into_iter().fold(Form::constant(m, 1.into()), |acc, x| acc.wedge(&x).expect("same ambient"))
}

/// `dx_k` (1-based `k`) in `X_n`.
pub fn xn_dx(n: usize, k: usize) -> Form {
    assert!((1..=n).contains(&k));
    Form::holo_gen(2 * n, k - 1)
}

/// `ω_k` (1-based `k`) in `X_n`.
pub fn xn_omega(n: usize, k: usize) -> Form {
    assert!((1..=n).contains(&k));
    Form::holo_gen(2 * n, n + k - 1)
}

/// Structure equations of `X_n`:
/// `d(dx_k) = 0`, `dω_1 = dx̄_1∧dx_1`,
/// `dω_k = −dx_k∧dx_1 − dx_1∧dx̄_{k−1}` for `k ≥ 2`.
pub fn family_xn(n: usize) -> Result<StructureEquations, Error> {
    if n < 2 || 2 * n > crate::algebra::MAX_GENERATORS {
        return Err(Error::FamilyIndex(n));
    }
    let m = 2 * n;
    let dx = |k| xn_dx(n, k);
    let dxb = |k| xn_dx(n, k).conjugate();
    let w = |a: Form, b: Form| a.wedge(&b).expect("same ambient");
    let mut diffs = vec![Form::zero(m); n];
    diffs.push(w(dxb(1), dx(1)));
    for k in 2..=n {
        let d = w(dx(k), dx(1)).neg().sub(&w(dx(1), dxb(k - 1))).expect("same ambient");
        diffs.push(d);
    }
    StructureEquations::new(m, diffs)
}

/// The chain `β_1, …, β_n` of `X_n`, with
/// `β_1 = ω̄_1∧dx̄_2∧⋯∧dx̄_{n−1}` and
/// `β_k = dx_2∧⋯∧dx_{k−1}∧ω_k∧dx̄_k∧⋯∧dx̄_{n−1}` for `k = 2..n`.
///
/// `β_k` has bidegree `(k−1, n−k)`.
pub fn xn_beta_chain(n: usize) -> Vec<Form> {
    let m = 2 * n;
    let dx = |k| xn_dx(n, k);
    let dxb = |k| xn_dx(n, k).conjugate();
    let mut chain = Vec::with_capacity(n);
    chain.push(wedge_all(m, std::iter::once(xn_omega(n, 1).conjugate()).chain((2..n).map(dxb))));
    for k in 2..=n {
        let factors = (2..k).map(dx).chain(std::iter::once(xn_omega(n, k))).chain((k..n).map(dxb));
        chain.push(wedge_all(m, factors));
    }
    chain
}

/// `dx_1∧⋯∧dx_n`.
pub fn xn_top_form(n: usize) -> Form {
    wedge_all(2 * n, (1..=n).map(|k| xn_dx(n, k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_n() {
        assert_eq!(family_xn(1), Err(Error::FamilyIndex(1)));
        assert_eq!(family_xn(0), Err(Error::FamilyIndex(0)));
    }

    #[test]
    fn x2_equations() {
        let eq = family_xn(2).unwrap();
        let dx = |k| xn_dx(2, k);
        let dxb = |k| xn_dx(2, k).conjugate();
        let expected = dx(2).wedge(&dx(1)).unwrap().neg().sub(&dx(1).wedge(&dxb(1)).unwrap()).unwrap();
        assert_eq!(eq.diffs()[3], expected);
        assert_eq!(eq.diffs()[3].to_string(), "f1^f2 - f1^~f1");
    }

    #[test]
    fn dx_are_closed() {
        let eq = family_xn(3).unwrap();
        for k in 1..=3 {
            assert!(eq.apply_d(&xn_dx(3, k)).unwrap().is_zero());
        }
    }

    #[test]
    fn omega_differentials() {
        for n in 2..=4 {
            let eq = family_xn(n).unwrap();
            let dx = |k| xn_dx(n, k);
            let dxb = |k| xn_dx(n, k).conjugate();
            let d1 = eq.apply_d(&xn_omega(n, 1)).unwrap();
            assert_eq!(d1, dxb(1).wedge(&dx(1)).unwrap());
            assert_eq!(eq.del_bar(&xn_omega(n, 1)).unwrap(), d1);
            for k in 2..=n {
                let w = xn_omega(n, k);
                assert_eq!(eq.del(&w).unwrap(), dx(k).wedge(&dx(1)).unwrap().neg());
                assert_eq!(eq.del_bar(&w).unwrap(), dx(1).wedge(&dxb(k - 1)).unwrap().neg());
            }
        }
    }

    #[test]
    fn x_n_is_valid() {
        for n in 2..=4 {
            let r = family_xn(n).unwrap().validate();
            assert!(r.jacobi_ok && r.integrable && r.nilpotent, "n = {n}: {r}");
        }
    }

    #[test]
    fn beta_bidegrees() {
        for n in 2..=4 {
            let chain = xn_beta_chain(n);
            assert_eq!(chain.len(), n);
            for (i, b) in chain.iter().enumerate() {
                assert_eq!(b.bidegree(), Some((i, n - 1 - i)), "n = {n}, β_{}", i + 1);
            }
        }
    }
}
