//! Built-in example data shared by the command-line registry and the test
//! suite: the three standard k = 2 center bases with their families,
//! algebras, ideals, and conjugators, two classical schedules of K8, and
//! the order-8 family of size 7.

use crate::algebra_core::{
    build_free, default_z_signs, matrix_from_omega, quotient, HTypeAlgebra, OmegaVector,
};
use crate::graph_factor::{OneFactor, OneFactorization};
use crate::hr_arith::SignaturePair;
use crate::hr_family::{build_positive, HRFamily};
use crate::matrix::SignedMatrix;
use std::collections::BTreeMap;

fn omega(pairs: &[(usize, usize, i8)]) -> OmegaVector {
    let factor = OneFactor::new(pairs.iter().map(|&(i, j, _)| (i, j)).collect())
        .expect("fixture factors are valid");
    let coeffs: BTreeMap<(usize, usize), i8> =
        pairs.iter().map(|&(i, j, c)| ((i, j), c)).collect();
    OmegaVector::new(factor, coeffs).expect("fixture coefficients are valid")
}

/// Center basis of the omega1 example:
/// (e1 x e2 - e3 x e4, e1 x e3 + e2 x e4, -e1 x e4 + e2 x e3).
pub fn omega_basis_1() -> Vec<OmegaVector> {
    vec![
        omega(&[(1, 2, 1), (3, 4, -1)]),
        omega(&[(1, 3, 1), (2, 4, 1)]),
        omega(&[(1, 4, -1), (2, 3, 1)]),
    ]
}

/// Center basis of the omega2 example:
/// (e1 x e2 + e3 x e4, -e1 x e3 + e2 x e4, e1 x e4 + e2 x e3).
pub fn omega_basis_2() -> Vec<OmegaVector> {
    vec![
        omega(&[(1, 2, 1), (3, 4, 1)]),
        omega(&[(1, 3, -1), (2, 4, 1)]),
        omega(&[(1, 4, 1), (2, 3, 1)]),
    ]
}

/// Center basis of the omega3 example:
/// (e1 x e2 + e3 x e4, -e1 x e3 + e2 x e4, -e1 x e4 - e2 x e3).
pub fn omega_basis_3() -> Vec<OmegaVector> {
    vec![
        omega(&[(1, 2, 1), (3, 4, 1)]),
        omega(&[(1, 3, -1), (2, 4, 1)]),
        omega(&[(1, 4, -1), (2, 3, -1)]),
    ]
}

fn family_from(omegas: &[OmegaVector]) -> HRFamily {
    HRFamily {
        n: 4,
        s: omegas.len(),
        t: 0,
        members: omegas.iter().map(matrix_from_omega).collect(),
    }
}

/// The J-matrix family of [`omega_basis_1`].
pub fn family_1() -> HRFamily {
    family_from(&omega_basis_1())
}

/// The J-matrix family of [`omega_basis_2`].
pub fn family_2() -> HRFamily {
    family_from(&omega_basis_2())
}

/// The J-matrix family of [`omega_basis_3`].
pub fn family_3() -> HRFamily {
    family_from(&omega_basis_3())
}

fn algebra_from(omegas: &[OmegaVector]) -> HTypeAlgebra {
    let signs = default_z_signs(2, &[], 0, 0).expect("positive signs");
    let n = build_free(2, SignaturePair { s: 4, t: 0 }, &signs).expect("k = 2 free algebra");
    quotient(&n, omegas).expect("fixture omegas quotient cleanly")
}

/// The quotient algebra of [`omega_basis_1`] over positive-definite metrics.
pub fn algebra_1() -> HTypeAlgebra {
    algebra_from(&omega_basis_1())
}

/// The quotient algebra of [`omega_basis_2`] over positive-definite metrics.
pub fn algebra_2() -> HTypeAlgebra {
    algebra_from(&omega_basis_2())
}

/// The quotient algebra of [`omega_basis_3`] over positive-definite metrics.
pub fn algebra_3() -> HTypeAlgebra {
    algebra_from(&omega_basis_3())
}

/// The conjugator taking the omega1 family to the omega3 family:
/// e1 -> e2, e2 -> -e1, e3 -> e4, e4 -> e3.
pub fn conjugator_b() -> SignedMatrix {
    SignedMatrix::from_rows(vec![
        vec![0, -1, 0, 0],
        vec![1, 0, 0, 0],
        vec![0, 0, 0, 1],
        vec![0, 0, 1, 0],
    ])
    .expect("fixture matrix is a signed permutation")
}

/// The conjugator taking the omega1 family to the omega2 family with its
/// second and third members exchanged: e3 <-> e4.
pub fn conjugator_b1() -> SignedMatrix {
    SignedMatrix::from_rows(vec![
        vec![1, 0, 0, 0],
        vec![0, 1, 0, 0],
        vec![0, 0, 0, 1],
        vec![0, 0, 1, 0],
    ])
    .expect("fixture matrix is a signed permutation")
}

/// Basis of the ideal complementing [`omega_basis_1`], as coordinates over
/// the Z basis in pair order (1,2) (1,3) (1,4) (2,3) (2,4) (3,4):
/// (e1 x e2 + e3 x e4, e1 x e3 - e2 x e4, -e1 x e4 - e2 x e3).
pub fn ideal_span_1() -> Vec<Vec<i64>> {
    vec![
        vec![1, 0, 0, 0, 0, 1],
        vec![0, 1, 0, 0, -1, 0],
        vec![0, 0, -1, -1, 0, 0],
    ]
}

/// Basis of the ideal complementing [`omega_basis_2`]:
/// (e1 x e2 - e3 x e4, -e1 x e3 - e2 x e4, e1 x e4 - e2 x e3).
pub fn ideal_span_2() -> Vec<Vec<i64>> {
    vec![
        vec![1, 0, 0, 0, 0, -1],
        vec![0, -1, 0, 0, -1, 0],
        vec![0, 0, 1, -1, 0, 0],
    ]
}

/// Basis of the ideal complementing [`omega_basis_3`]:
/// (e1 x e2 - e3 x e4, -e1 x e3 - e2 x e4, -e1 x e4 + e2 x e3).
pub fn ideal_span_3() -> Vec<Vec<i64>> {
    vec![
        vec![1, 0, 0, 0, 0, -1],
        vec![0, -1, 0, 0, -1, 0],
        vec![0, 0, -1, 1, 0, 0],
    ]
}

/// The Kirkman schedule of K8: every union of two rounds is a single
/// 8-cycle.
pub fn kirkman_k8() -> OneFactorization {
    factorization(&[
        &[(1, 2), (3, 8), (4, 7), (5, 6)],
        &[(1, 3), (2, 4), (5, 8), (6, 7)],
        &[(1, 4), (2, 6), (3, 5), (7, 8)],
        &[(1, 5), (2, 8), (3, 7), (4, 6)],
        &[(1, 6), (2, 3), (5, 7), (4, 8)],
        &[(1, 7), (2, 5), (3, 4), (6, 8)],
        &[(1, 8), (2, 7), (3, 6), (4, 5)],
    ])
}

/// The Steiner schedule of K8: every union of two rounds splits into two
/// 4-cycles.
pub fn steiner_k8() -> OneFactorization {
    factorization(&[
        &[(1, 2), (3, 7), (4, 5), (6, 8)],
        &[(1, 3), (2, 7), (4, 8), (5, 6)],
        &[(1, 4), (2, 5), (3, 8), (6, 7)],
        &[(1, 5), (2, 4), (3, 6), (7, 8)],
        &[(1, 6), (2, 8), (3, 5), (4, 7)],
        &[(1, 7), (2, 3), (4, 6), (5, 8)],
        &[(1, 8), (2, 6), (3, 4), (5, 7)],
    ])
}

fn factorization(rows: &[&[(usize, usize)]]) -> OneFactorization {
    OneFactorization {
        factors: rows
            .iter()
            .map(|r| OneFactor::new(r.to_vec()).expect("fixture rows are matchings"))
            .collect(),
    }
}

/// The order-8 family of 7 skew members.
pub fn octonion8() -> HRFamily {
    build_positive(3, 7).expect("the order-8 family exists")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::same_span;
    use crate::graph_factor::validate_factorization;
    use crate::hr_family::verify_family;

    #[test]
    fn families_verify() {
        for fam in [family_1(), family_2(), family_3(), octonion8()] {
            assert!(verify_family(&fam).pass);
        }
    }

    #[test]
    fn algebras_verify() {
        for alg in [algebra_1(), algebra_2(), algebra_3()] {
            assert!(crate::algebra_core::verify_h_type(&alg).pass);
        }
    }

    #[test]
    fn schedules_are_factorizations() {
        assert!(validate_factorization(&kirkman_k8()));
        assert!(validate_factorization(&steiner_k8()));
    }

    #[test]
    fn omega2_and_omega3_span_the_same_subspace() {
        let signs = default_z_signs(2, &[], 0, 0).unwrap();
        let n = build_free(2, SignaturePair { s: 4, t: 0 }, &signs).unwrap();
        let coords = |oms: &[OmegaVector]| -> Vec<Vec<i64>> {
            oms.iter().map(|om| om.z_coordinates(&n)).collect()
        };
        assert!(same_span(
            &coords(&omega_basis_2()),
            &coords(&omega_basis_3())
        ));
        assert!(!same_span(
            &coords(&omega_basis_1()),
            &coords(&omega_basis_2())
        ));
    }
}
