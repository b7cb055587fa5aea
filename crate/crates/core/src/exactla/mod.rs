//! Exact linear algebra over a [`Field`]: vectors, row reduction, and the
//! lattice of subspaces of a coordinate space.

mod echelon;
pub mod matrix;

use std::fmt;

use thiserror::Error;

use crate::scalar::{Field, Scalar};

pub use echelon::Echelon;

/// Coordinates in a fixed basis; the field is carried separately.
pub type Vector = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaError {
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("not a subspace of the given total space")]
    NotASubspace,
}

pub fn zero_vector(field: &Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: &Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `acc += c * v`.
pub fn add_scaled(field: &Field, acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = a.add(&field.mul(c, x));
        }
    }
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn scale(field: &Field, c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| field.mul(c, x)).collect()
}

/// `sum_i coeffs[i] * vectors[i]` in an `n`-dimensional space.
pub fn combine(field: &Field, n: usize, coeffs: &[Scalar], vectors: &[Vector]) -> Vector {
    let mut acc = zero_vector(field, n);
    for (c, v) in coeffs.iter().zip(vectors) {
        add_scaled(field, &mut acc, c, v);
    }
    acc
}

/// A subspace stored as its reduced row echelon basis.
///
/// Rows are nonzero with strictly increasing pivots, each pivot entry is 1 and
/// every other entry in a pivot column is 0, so equality is structural.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Subspace(dim {} in {})", self.dim(), self.ambient)?;
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|s| self.field.format(s)).collect();
            writeln!(f, "  [{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

impl Subspace {
    pub(crate) fn from_rref_unchecked(field: Field, ambient: usize, rows: Vec<Vector>, pivots: Vec<usize>) -> Self {
        Subspace { field, ambient, rows, pivots }
    }

    pub fn zero(field: &Field, ambient: usize) -> Self {
        Subspace { field: field.clone(), ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: &Field, ambient: usize) -> Self {
        let rows = (0..ambient).map(|i| unit_vector(field, ambient, i)).collect();
        Subspace { field: field.clone(), ambient, rows, pivots: (0..ambient).collect() }
    }

    /// Checked span of arbitrary vectors.
    pub fn span(field: &Field, ambient: usize, vectors: &[Vector]) -> Result<Self, LaError> {
        let mut e = Echelon::new(field, ambient);
        for v in vectors {
            e.insert_checked(v)?;
        }
        Ok(e.to_subspace())
    }

    /// Span of vectors already known to have the right length and field.
    pub fn span_of(field: &Field, ambient: usize, vectors: &[Vector]) -> Self {
        let mut e = Echelon::new(field, ambient);
        for v in vectors {
            e.insert(v);
        }
        e.to_subspace()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_same(&self, other: &Subspace) -> Result<(), LaError> {
        if self.field != other.field {
            return Err(LaError::FieldMismatch);
        }
        if self.ambient != other.ambient {
            return Err(LaError::DimensionMismatch { expected: self.ambient, got: other.ambient });
        }
        Ok(())
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(&self.field, self.ambient);
        for r in &self.rows {
            e.insert(r);
        }
        e
    }

    /// Remainder of `v` modulo the subspace, zero exactly on pivot columns.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut w = v.to_vec();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let c = w[p].clone();
                add_scaled(&self.field, &mut w, &c, r);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero(&self.reduce(v))
    }

    /// Coordinates of `v` in the RREF basis, or `None` when `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LaError> {
        self.check_same(other)?;
        Ok(self.sum_unchecked(other))
    }

    pub(crate) fn sum_unchecked(&self, other: &Subspace) -> Subspace {
        if other.is_zero() {
            return self.clone();
        }
        let mut e = self.echelon();
        for r in &other.rows {
            e.insert(r);
        }
        e.to_subspace()
    }

    /// Add further vectors to the span.
    pub fn extend(&self, vectors: &[Vector]) -> Subspace {
        let mut e = self.echelon();
        for v in vectors {
            e.insert(v);
        }
        e.to_subspace()
    }

    /// Zassenhaus: reduce the block matrix `[[a, a], [b, 0]]`; the rows whose
    /// left half vanishes span the intersection in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LaError> {
        self.check_same(other)?;
        Ok(self.intersect_unchecked(other))
    }

    pub(crate) fn intersect_unchecked(&self, other: &Subspace) -> Subspace {
        let n = self.ambient;
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(&self.field, n);
        }
        let mut e = Echelon::new(&self.field, 2 * n);
        for r in &self.rows {
            let mut v = r.clone();
            v.extend(r.iter().cloned());
            e.insert(&v);
        }
        for r in &other.rows {
            let mut v = r.clone();
            v.extend(zero_vector(&self.field, n));
            e.insert(&v);
        }
        let full = e.to_subspace();
        let rows: Vec<Vector> = full
            .rows
            .iter()
            .zip(&full.pivots)
            .filter(|(_, &p)| p >= n)
            .map(|(r, _)| r[n..].to_vec())
            .collect();
        Subspace::span_of(&self.field, n, &rows)
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool, LaError> {
        self.check_same(other)?;
        Ok(self == other)
    }

    pub fn lattice(&self, other: &Subspace, op: LatticeOp) -> Result<LatticeResult, LaError> {
        self.check_same(other)?;
        Ok(match op {
            LatticeOp::Sum => LatticeResult::Space(self.sum_unchecked(other)),
            LatticeOp::Intersect => LatticeResult::Space(self.intersect_unchecked(other)),
            LatticeOp::Contains => LatticeResult::Bool(self.contains_subspace(other)),
            LatticeOp::Equals => LatticeResult::Bool(self == other),
        })
    }

    /// Quotient `self / sub` with a lifted complement basis.
    pub fn quotient(&self, sub: &Subspace) -> Result<Quotient, LaError> {
        self.check_same(sub)?;
        if !self.contains_subspace(sub) {
            return Err(LaError::NotASubspace);
        }
        let reduced: Vec<Vector> = self.rows.iter().map(|r| sub.reduce(r)).collect();
        // reduced rows vanish on the pivot columns of `sub`, and so does their RREF
        let comp = Subspace::span_of(&self.field, self.ambient, &reduced);
        Ok(Quotient { sub: sub.clone(), comp })
    }

    /// Image of the subspace under a coordinate map.
    pub fn map(&self, f: impl Fn(&[Scalar]) -> Vector, target_dim: usize) -> Subspace {
        let images: Vec<Vector> = self.rows.iter().map(|r| f(r)).collect();
        Subspace::span_of(&self.field, target_dim, &images)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeOp {
    Sum,
    Intersect,
    Contains,
    Equals,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeResult {
    Space(Subspace),
    Bool(bool),
}

/// Coordinates on `total / sub`: projection and lift through a complement.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub: Subspace,
    comp: Subspace,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.comp.dim()
    }

    pub fn sub(&self) -> &Subspace {
        &self.sub
    }

    /// Representatives of the quotient basis.
    pub fn lifted_basis(&self) -> &[Vector] {
        self.comp.basis()
    }

    /// Quotient coordinates of a vector of the total space; the kernel is
    /// exactly `sub`.
    pub fn project(&self, v: &[Scalar]) -> Vector {
        let w = self.sub.reduce(v);
        self.comp.pivots().iter().map(|&p| w[p].clone()).collect()
    }

    pub fn lift(&self, q: &[Scalar]) -> Vector {
        combine(self.comp.field(), self.comp.ambient(), q, self.comp.basis())
    }
}

/// Basis of `{x : rows · x = 0}` for a system of `rows` in `n` unknowns.
pub fn nullspace(field: &Field, n: usize, rows: &[Vector]) -> Vec<Vector> {
    let rref = Subspace::span_of(field, n, rows);
    let mut is_pivot = vec![false; n];
    for &p in rref.pivots() {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..n).filter(|&c| !is_pivot[c]) {
        let mut x = zero_vector(field, n);
        x[f] = field.one();
        for (r, &p) in rref.basis().iter().zip(rref.pivots()) {
            // characteristic two: -a = a
            x[p] = r[f].clone();
        }
        out.push(x);
    }
    out
}

/// Particular solution of `rows · x = rhs` with free variables set to zero.
pub fn solve(field: &Field, n: usize, rows: &[Vector], rhs: &[Scalar]) -> Option<Vector> {
    let augmented: Vec<Vector> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let rref = Subspace::span_of(field, n + 1, &augmented);
    if rref.pivots().contains(&n) {
        return None;
    }
    let mut x = zero_vector(field, n);
    for (r, &p) in rref.basis().iter().zip(rref.pivots()) {
        x[p] = r[n].clone();
    }
    Some(x)
}

/// Affine solution set `particular + span(kernel)` of a linear system.
pub fn solve_affine(field: &Field, n: usize, rows: &[Vector], rhs: &[Scalar]) -> Option<(Vector, Vec<Vector>)> {
    let x = solve(field, n, rows, rhs)?;
    Some((x, nullspace(field, n, rows)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(bits: &[u64]) -> Vector {
        bits.iter().map(|&b| Scalar::Gf(b)).collect()
    }

    #[test]
    fn span_examples() {
        let f = Field::gf2();
        assert_eq!(Subspace::span(&f, 3, &[]).unwrap().dim(), 0);
        let a = v(&[1, 1, 0]);
        assert_eq!(Subspace::span(&f, 3, &[a.clone(), a.clone()]).unwrap().dim(), 1);
        let s = Subspace::span(&f, 3, &[a, v(&[0, 1, 1]), v(&[1, 0, 1])]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.pivots(), &[0, 1]);
        assert!(matches!(
            Subspace::span(&f, 3, &[v(&[1, 0])]),
            Err(LaError::DimensionMismatch { .. })
        ));
        assert_eq!(Subspace::span(&f, 2, &[v(&[2, 0])]), Err(LaError::FieldMismatch));
    }

    #[test]
    fn quotient_round_trip() {
        let f = Field::gf4();
        let total = Subspace::full(&f, 3);
        let sub = Subspace::span(&f, 3, &[v(&[0, 0, 1])]).unwrap();
        let q = total.quotient(&sub).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(is_zero(&q.project(&v(&[0, 0, 3]))));
        let w = v(&[2, 3]);
        assert_eq!(q.project(&q.lift(&w)), w);
        assert_eq!(total.quotient(&total).unwrap().dim(), 0);
        assert_eq!(sub.quotient(&total).unwrap_err(), LaError::NotASubspace);
    }

    #[test]
    fn nullspace_and_solve() {
        let f = Field::gf4();
        let rows = vec![v(&[1, 2, 0]), v(&[0, 1, 3])];
        let ker = nullspace(&f, 3, &rows);
        assert_eq!(ker.len(), 1);
        for r in &rows {
            let dot = r.iter().zip(&ker[0]).fold(f.zero(), |acc, (a, b)| acc.add(&f.mul(a, b)));
            assert!(dot.is_zero());
        }
        let x = solve(&f, 3, &rows, &v(&[1, 1])).unwrap();
        for (r, b) in rows.iter().zip([1u64, 1]) {
            let dot = r.iter().zip(&x).fold(f.zero(), |acc, (a, c)| acc.add(&f.mul(a, c)));
            assert_eq!(dot, Scalar::Gf(b));
        }
        assert!(solve(&f, 1, &[v(&[1]), v(&[1])], &v(&[0, 1])).is_none());
    }
}
