//! Small ordinary Lie algebras used as fixtures and by the CLI.

use crate::exactla::unit_vector;
use crate::resla::LieAlgebra;
use crate::scalar::Field;

use super::OrdError;

fn build(field: &Field, names: &[&str], brackets: &[(usize, usize, usize)]) -> Result<LieAlgebra, OrdError> {
    let n = names.len();
    let table: Vec<_> = brackets.iter().map(|&(i, j, k)| (i, j, unit_vector(field, n, k))).collect();
    let lie = LieAlgebra::from_brackets(field, names.iter().map(|s| s.to_string()).collect(), &table)?;
    if !lie.check_lie_axioms().is_empty() {
        return Err(OrdError::InvalidAlgebra);
    }
    Ok(lie)
}

/// `[x, y] = x`.
pub fn affine_line(field: &Field) -> Result<LieAlgebra, OrdError> {
    build(field, &["x", "y"], &[(0, 1, 0)])
}

/// `[x, y] = z`.
pub fn heisenberg(field: &Field) -> Result<LieAlgebra, OrdError> {
    build(field, &["x", "y", "z"], &[(0, 1, 2)])
}

/// `[x1, y] = x1`, `[x2, y] = x2`, `[x1, x2] = z`.
pub fn two_eigenvectors(field: &Field) -> Result<LieAlgebra, OrdError> {
    build(field, &["x1", "x2", "y", "z"], &[(0, 2, 0), (1, 2, 1), (0, 1, 3)])
}

/// Free nilpotent of class 2 on `x1..x4`, with `[x_i, x_j] = z_ij`.
pub fn free_class2_rank4(field: &Field) -> Result<LieAlgebra, OrdError> {
    let mut names: Vec<String> = (1..=4).map(|i| format!("x{i}")).collect();
    let mut brackets = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            brackets.push((i, j, names.len()));
            names.push(format!("z{}{}", i + 1, j + 1));
        }
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    build(field, &refs, &brackets)
}
