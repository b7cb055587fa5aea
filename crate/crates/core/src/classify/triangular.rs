//! Simultaneous triangularization of a set of matrices by repeated common
//! eigenvectors, over the fields of an extension ladder.

use crate::exactla::{matrix, matrix::Matrix, Subspace, Vector};
use crate::scalar::{Embedding, Field, Scalar};

use super::ClassifyError;

/// Eigenvalues are found by enumerating the field, up to this size.
const EIGENVALUE_FIELD_LIMIT: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Triangularization {
    /// `basis[..k]` is invariant under every matrix for each `k`; scalars
    /// live in the degree-`extension_degree` extension.
    Flag { extension_degree: u32, basis: Vec<Vector> },
    /// A commutator in the generated Lie algebra that is not nilpotent.
    NotTriangularizable { witness: Matrix },
}

/// Basis of the Lie algebra generated by `mats` under commutators.
fn lie_closure(field: &Field, n: usize, mats: &[Matrix]) -> Vec<Matrix> {
    let flat = |m: &Matrix| -> Vector { m.iter().flatten().cloned().collect() };
    let mut e = crate::exactla::Echelon::new(field, n * n);
    let mut basis: Vec<Matrix> = Vec::new();
    for m in mats {
        if e.insert(&flat(m)) {
            basis.push(m.clone());
        }
    }
    let mut i = 0;
    while i < basis.len() {
        for j in 0..i {
            let c = matrix::commutator(field, &basis[i], &basis[j]);
            if e.insert(&flat(&c)) {
                basis.push(c);
            }
        }
        i += 1;
    }
    basis
}

/// A common eigenvector of `mats` acting on `field^n`, by intersecting
/// eigenspaces with backtracking over eigenvalues.
fn common_eigenvector(field: &Field, n: usize, mats: &[Matrix], elems: &[Scalar]) -> Option<Vector> {
    fn go(field: &Field, mats: &[Matrix], elems: &[Scalar], space: Subspace) -> Option<Vector> {
        let Some((m, rest)) = mats.split_first() else {
            return space.basis().first().cloned();
        };
        for lambda in elems {
            let shifted = matrix::shift(m, lambda);
            let k = Subspace::span_of(field, space.ambient(), &matrix::kernel(field, &shifted));
            let next = space.intersect_unchecked(&k);
            if next.is_zero() {
                continue;
            }
            if let Some(v) = go(field, rest, elems, next) {
                return Some(v);
            }
        }
        None
    }
    go(field, mats, elems, Subspace::full(field, n))
}

/// Flag over one fixed field, or `None` if some quotient has no common
/// eigenvector there.
fn flag_over(field: &Field, n: usize, mats: &[Matrix]) -> Option<Vec<Vector>> {
    let elems = field.elements()?;
    let mut flag: Vec<Vector> = Vec::new();
    while flag.len() < n {
        let sub = Subspace::span_of(field, n, &flag);
        let q = Subspace::full(field, n).quotient(&sub).ok()?;
        let lifts = q.lifted_basis();
        let induced: Vec<Matrix> = mats
            .iter()
            .map(|m| {
                let cols: Vec<Vector> = lifts.iter().map(|b| q.project(&matrix::apply(field, m, b))).collect();
                matrix::from_columns(field, q.dim(), &cols)
            })
            .collect();
        let v = common_eigenvector(field, q.dim(), &induced, &elems)?;
        flag.push(q.lift(&v));
    }
    Some(flag)
}

/// Triangularize `mats` over the smallest field of the ladder that works.
///
/// A non-nilpotent commutator of the generated Lie algebra rules out every
/// extension at once and is returned as the witness.
pub fn triangularize(field: &Field, mats: &[Matrix], ladder_max: u32) -> Result<Triangularization, ClassifyError> {
    let n = mats.first().map_or(0, Vec::len);
    let closure = lie_closure(field, n, mats);
    for (i, a) in closure.iter().enumerate() {
        for b in &closure[..i] {
            let c = matrix::commutator(field, a, b);
            if !matrix::is_nilpotent(field, &c) {
                return Ok(Triangularization::NotTriangularizable { witness: c });
            }
        }
    }
    let base_k = field.as_gf2k().ok_or_else(|| ClassifyError::UnsupportedField(field.name()))?.degree();
    for degree in 1..=ladder_max.max(1) {
        let (big, emb) = if degree == 1 {
            (field.clone(), Embedding::identity(field))
        } else {
            match field.extend_default(degree) {
                Ok(ext) => (ext.field, ext.embedding),
                Err(_) => break,
            }
        };
        if big.size().is_none_or(|q| q > EIGENVALUE_FIELD_LIMIT) || base_k * degree > 16 {
            break;
        }
        let lifted: Vec<Matrix> = mats.iter().map(|m| matrix::map_entries(m, |s| emb.apply(s))).collect();
        if let Some(basis) = flag_over(&big, n, &lifted) {
            return Ok(Triangularization::Flag { extension_degree: degree, basis });
        }
    }
    Err(ClassifyError::LadderExhausted(ladder_max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2_matrix(rows: &[&[u64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&b| Scalar::Gf(b)).collect()).collect()
    }

    #[test]
    fn strictly_upper_triangular_gives_standard_flag() {
        let f = Field::gf2();
        let a = gf2_matrix(&[&[0, 1, 1], &[0, 0, 1], &[0, 0, 0]]);
        let b = gf2_matrix(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]);
        let Triangularization::Flag { basis, .. } = triangularize(&f, &[a, b], 1).unwrap() else {
            panic!("expected a flag");
        };
        let std: Vec<Vector> = (0..3).map(|i| crate::exactla::unit_vector(&f, 3, i)).collect();
        assert_eq!(basis, std);
    }

    #[test]
    fn swap_matrix_has_eigenvector_one_one() {
        let f = Field::gf2();
        let s = gf2_matrix(&[&[0, 1], &[1, 0]]);
        let Triangularization::Flag { basis, extension_degree } = triangularize(&f, &[s], 1).unwrap() else {
            panic!("expected a flag");
        };
        assert_eq!(extension_degree, 1);
        assert_eq!(basis[0], vec![Scalar::Gf(1), Scalar::Gf(1)]);
    }

    #[test]
    fn rotation_needs_gf4() {
        // x^2 + x + 1 is irreducible over GF(2)
        let f = Field::gf2();
        let r = gf2_matrix(&[&[0, 1], &[1, 1]]);
        let Triangularization::Flag { extension_degree, .. } = triangularize(&f, &[r], 4).unwrap() else {
            panic!("expected a flag");
        };
        assert_eq!(extension_degree, 2);
        assert!(matches!(triangularize(&f, &[gf2_matrix(&[&[0, 1], &[1, 1]])], 1), Err(ClassifyError::LadderExhausted(1))));
    }

    #[test]
    fn n7_left_multiplications_are_not_triangularizable() {
        use crate::envelope::Envelope;
        let f = Field::gf2();
        let n7 = crate::families::n7(&f).unwrap();
        let sub = n7
            .rebase(&[n7.basis_vector(0), n7.basis_vector(3), n7.basis_vector(6)], vec!["x1".into(), "x4".into(), "z14".into()])
            .unwrap();
        let env = Envelope::new(&sub).unwrap();
        let left = |i: usize| -> Matrix {
            let cols: Vec<Vector> =
                (0..env.dim() as u32).map(|m| env.to_dense(&env.mul(&env.generator(i), &env.monomial(m)))).collect();
            matrix::from_columns(&f, env.dim(), &cols)
        };
        let Triangularization::NotTriangularizable { witness } = triangularize(&f, &[left(0), left(1)], 2).unwrap() else {
            panic!("expected a witness");
        };
        assert!(!matrix::is_nilpotent(&f, &witness));
    }
}
