//! Square matrices acting on column vectors: `apply(m, v)[i] = sum_j m[i][j] v[j]`.

use crate::scalar::{Field, Scalar};

use super::{add_scaled, nullspace, zero_vector, Vector};

pub type Matrix = Vec<Vector>;

pub fn zero(field: &Field, n: usize) -> Matrix {
    vec![zero_vector(field, n); n]
}

pub fn identity(field: &Field, n: usize) -> Matrix {
    let mut m = zero(field, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = field.one();
    }
    m
}

/// Matrix whose columns are the given vectors.
pub fn from_columns(field: &Field, n: usize, cols: &[Vector]) -> Matrix {
    let mut m = vec![zero_vector(field, cols.len()); n];
    for (j, c) in cols.iter().enumerate() {
        for (i, s) in c.iter().enumerate() {
            m[i][j] = s.clone();
        }
    }
    m
}

pub fn column(m: &Matrix, j: usize) -> Vector {
    m.iter().map(|r| r[j].clone()).collect()
}

pub fn apply(field: &Field, m: &Matrix, v: &[Scalar]) -> Vector {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(field.zero(), |acc, (a, b)| acc.add(&field.mul(a, b)))
        })
        .collect()
}

pub fn mul(field: &Field, a: &Matrix, b: &Matrix) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = zero_vector(field, cols);
            for (k, c) in row.iter().enumerate() {
                add_scaled(field, &mut out, c, &b[k]);
            }
            out
        })
        .collect()
}

pub fn add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(r, s)| super::add(r, s)).collect()
}

pub fn scale(field: &Field, c: &Scalar, m: &Matrix) -> Matrix {
    m.iter().map(|r| super::scale(field, c, r)).collect()
}

pub fn is_zero(m: &Matrix) -> bool {
    m.iter().all(|r| super::is_zero(r))
}

/// `ab - ba`, which is `ab + ba` in characteristic two.
pub fn commutator(field: &Field, a: &Matrix, b: &Matrix) -> Matrix {
    add(&mul(field, a, b), &mul(field, b, a))
}

pub fn is_nilpotent(field: &Field, m: &Matrix) -> bool {
    let n = m.len();
    let mut p = m.clone();
    // m^n = 0 iff nilpotent; square until the exponent reaches n
    let mut e = 1;
    while e < n {
        p = mul(field, &p, &p);
        e *= 2;
    }
    is_zero(&p)
}

/// Basis of the kernel `{v : m v = 0}`.
pub fn kernel(field: &Field, m: &Matrix) -> Vec<Vector> {
    let n = m.first().map_or(0, Vec::len);
    nullspace(field, n, m)
}

/// `m - c I` (equal to `m + c I`).
pub fn shift(m: &Matrix, c: &Scalar) -> Matrix {
    let mut out = m.clone();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = row[i].add(c);
    }
    out
}

pub fn map_entries(m: &Matrix, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
    m.iter().map(|r| r.iter().map(&f).collect()).collect()
}
