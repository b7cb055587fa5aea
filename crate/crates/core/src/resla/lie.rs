//! Lie algebras given by structure constants, without a power map.

use crate::exactla::matrix::{self, Matrix};
use crate::exactla::{add_scaled, is_zero, nullspace, unit_vector, zero_vector, Echelon, Subspace, Vector};
use crate::scalar::{Field, Scalar};

use super::{AxiomViolation, ResError};

/// Structure constants: `table[i][j]` holds the coordinates of `[b_i, b_j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    field: Field,
    names: Vec<String>,
    table: Vec<Vec<Vector>>,
}

impl LieAlgebra {
    /// The abelian algebra on the given basis names.
    pub fn abelian(field: &Field, names: Vec<String>) -> Self {
        let n = names.len();
        let table = vec![vec![zero_vector(field, n); n]; n];
        LieAlgebra { field: field.clone(), names, table }
    }

    /// Build from sparse brackets. An entry `(i, j, v)` sets `[b_i, b_j] = v`
    /// and, unless `(j, i)` is listed too, `[b_j, b_i] = v`.
    pub fn from_brackets(
        field: &Field,
        names: Vec<String>,
        brackets: &[(usize, usize, Vector)],
    ) -> Result<Self, ResError> {
        let n = names.len();
        let mut alg = LieAlgebra::abelian(field, names);
        let mut explicit = vec![vec![false; n]; n];
        for (i, j, v) in brackets {
            alg.check_vector(v)?;
            if *i >= n || *j >= n {
                return Err(ResError::IndexOutOfRange { index: (*i).max(*j), dim: n });
            }
            explicit[*i][*j] = true;
            alg.table[*i][*j] = v.clone();
        }
        for (i, j, v) in brackets {
            if !explicit[*j][*i] {
                alg.table[*j][*i] = v.clone();
            }
        }
        Ok(alg)
    }

    pub(crate) fn check_vector(&self, v: &[Scalar]) -> Result<(), ResError> {
        if v.len() != self.dim() {
            return Err(ResError::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        if !v.iter().all(|s| self.field.contains(s)) {
            return Err(ResError::FieldMismatch);
        }
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(&self.field, self.dim(), i)
    }

    pub fn zero_vector(&self) -> Vector {
        zero_vector(&self.field, self.dim())
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub(crate) fn set_bracket_entry(&mut self, i: usize, j: usize, v: Vector) {
        self.table[i][j] = v;
    }

    /// Whether the stored table is symmetric with zero diagonal, so the
    /// bracket is determined by its values on pairs `i < j`.
    pub fn is_alternating(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| is_zero(&self.table[i][i]) && (i + 1..n).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zero_vector(&self.field, n);
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let c = self.field.mul(&u[i], &v[j]);
                add_scaled(&self.field, &mut out, &c, &self.table[i][j]);
            }
        }
        out
    }

    /// Matrix of `ad x = [x, -]`; column `j` is `[x, b_j]`.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.bracket(x, &self.basis_vector(j))).collect();
        matrix::from_columns(&self.field, n, &cols)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.table[i][j].clone()).collect();
        matrix::from_columns(&self.field, self.dim(), &cols)
    }

    pub fn check_lie_axioms(&self) -> Vec<AxiomViolation> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            if !is_zero(&self.table[i][i]) {
                out.push(AxiomViolation::Alternating { i });
            }
            for j in i + 1..n {
                if self.table[i][j] != self.table[j][i] {
                    out.push(AxiomViolation::Symmetry { i, j });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket(&self.table[i][j], &self.basis_vector(k));
                    let b = self.bracket(&self.table[j][k], &self.basis_vector(i));
                    let c = self.bracket(&self.table[k][i], &self.basis_vector(j));
                    let s = crate::exactla::add(&crate::exactla::add(&a, &b), &c);
                    if !is_zero(&s) {
                        out.push(AxiomViolation::Jacobi { i, j, k });
                    }
                }
            }
        }
        out
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(&self.field, self.dim())
    }

    pub fn zero_space(&self) -> Subspace {
        Subspace::zero(&self.field, self.dim())
    }

    pub fn span(&self, vectors: &[Vector]) -> Subspace {
        Subspace::span_of(&self.field, self.dim(), vectors)
    }

    /// `[A, B] = span{[a, b]}` over basis pairs.
    pub fn bracket_spaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut e = Echelon::new(&self.field, self.dim());
        for u in a.basis() {
            for v in b.basis() {
                e.insert(&self.bracket(u, v));
            }
        }
        e.to_subspace()
    }

    pub fn derived(&self) -> Subspace {
        let l = self.full();
        self.bracket_spaces(&l, &l)
    }

    /// `L, L', L'', ...` ending with the first repeated term.
    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut out = vec![self.full()];
        loop {
            let last = out.last().unwrap();
            let next = self.bracket_spaces(last, last);
            if &next == last {
                return out;
            }
            let done = next.is_zero();
            out.push(next);
            if done {
                return out;
            }
        }
    }

    /// `gamma_1 = L, gamma_{k+1} = [gamma_k, L]` until stable.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let l = self.full();
        let mut out = vec![l.clone()];
        loop {
            let last = out.last().unwrap();
            let next = self.bracket_spaces(last, &l);
            if &next == last {
                return out;
            }
            let done = next.is_zero();
            out.push(next);
            if done {
                return out;
            }
        }
    }

    /// `0 = zeta_0, zeta_{k+1} = {x : [x, L] in zeta_k}` until stable.
    pub fn upper_central_series(&self) -> Vec<Subspace> {
        let mut out = vec![self.zero_space()];
        loop {
            let last = out.last().unwrap();
            let next = self.preimage_of_centralizing(last);
            if &next == last {
                return out;
            }
            let done = next.is_full();
            out.push(next);
            if done {
                return out;
            }
        }
    }

    /// `{x : [x, b_j] in target for all j}`.
    fn preimage_of_centralizing(&self, target: &Subspace) -> Subspace {
        let n = self.dim();
        // x -> ([x, b_j] mod target)_j is linear; its kernel is the answer
        let q = self.full().quotient(target).expect("target is a subspace");
        let mut rows: Vec<Vector> = Vec::new();
        for j in 0..n {
            let cols: Vec<Vector> = (0..n).map(|i| q.project(&self.table[i][j])).collect();
            for k in 0..q.dim() {
                rows.push(cols.iter().map(|c| c[k].clone()).collect());
            }
        }
        self.span(&nullspace(&self.field, n, &rows))
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&self.full())
    }

    /// `C_L(S) = {x : [x, s] = 0 for all s in S}`.
    pub fn centralizer(&self, s: &Subspace) -> Subspace {
        let n = self.dim();
        let mut rows: Vec<Vector> = Vec::new();
        for v in s.basis() {
            let cols: Vec<Vector> = (0..n).map(|i| self.bracket(&self.basis_vector(i), v)).collect();
            for k in 0..n {
                let row: Vector = cols.iter().map(|c| c[k].clone()).collect();
                if !is_zero(&row) {
                    rows.push(row);
                }
            }
        }
        self.span(&nullspace(&self.field, n, &rows))
    }

    /// The Lie ideal generated by a set of elements.
    pub fn ideal_closure(&self, gens: &[Vector]) -> Subspace {
        let n = self.dim();
        let mut e = Echelon::new(&self.field, n);
        let mut work: Vec<Vector> = Vec::new();
        for g in gens {
            if e.insert(g) {
                work.push(g.clone());
            }
        }
        while let Some(v) = work.pop() {
            for j in 0..n {
                let w = self.bracket(&v, &self.basis_vector(j));
                if e.insert(&w) {
                    work.push(w);
                }
            }
        }
        e.to_subspace()
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.basis()
            .iter()
            .all(|v| (0..self.dim()).all(|j| s.contains(&self.bracket(v, &self.basis_vector(j)))))
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        let b = s.basis();
        b.iter().enumerate().all(|(i, u)| b[i + 1..].iter().all(|v| s.contains(&self.bracket(u, v))))
    }

    pub fn is_abelian_subspace(&self, s: &Subspace) -> bool {
        let b = s.basis();
        b.iter().enumerate().all(|(i, u)| b[i + 1..].iter().all(|v| is_zero(&self.bracket(u, v))))
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|row| row.iter().all(|v| is_zero(v)))
    }

    /// Nilpotency class (length of the lower central series to zero), if nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let s = self.lower_central_series();
        if s.last().unwrap().is_zero() {
            Some(s.len() - 1)
        } else {
            None
        }
    }

    /// Structure constants of `L / I` in the lifted complement basis.
    pub fn quotient_table(&self, ideal: &Subspace) -> Result<(LieAlgebra, crate::exactla::Quotient), ResError> {
        if !self.is_ideal(ideal) {
            return Err(ResError::NotAnIdeal);
        }
        let q = self.full().quotient(ideal).map_err(|_| ResError::NotAnIdeal)?;
        let lifts = q.lifted_basis().to_vec();
        let names: Vec<String> = lifts.iter().map(|v| self.describe(v)).collect();
        let m = lifts.len();
        let mut out = LieAlgebra::abelian(&self.field, names);
        for i in 0..m {
            for j in 0..m {
                out.table[i][j] = q.project(&self.bracket(&lifts[i], &lifts[j]));
            }
        }
        Ok((out, q))
    }

    /// Structure constants on a new basis of a subalgebra, expressed in
    /// coordinates of that basis. `basis` must be independent and closed.
    pub fn restrict_to(&self, basis: &[Vector], names: Vec<String>) -> Result<LieAlgebra, ResError> {
        let m = basis.len();
        let coords = Coordinates::new(&self.field, self.dim(), basis)?;
        let mut out = LieAlgebra::abelian(&self.field, names);
        for i in 0..m {
            for j in 0..m {
                let b = self.bracket(&basis[i], &basis[j]);
                out.table[i][j] = coords.solve(&b).ok_or(ResError::NotASubalgebra)?;
            }
        }
        Ok(out)
    }

    /// Linear combination text such as `x1+t*z`.
    pub fn describe(&self, v: &[Scalar]) -> String {
        let mut parts = Vec::new();
        for (i, s) in v.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            if s.is_one() {
                parts.push(self.names[i].clone());
            } else {
                parts.push(format!("({})*{}", self.field.format(s), self.names[i]));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    pub(crate) fn map_constants(&self, field: &Field, f: impl Fn(&Scalar) -> Scalar) -> LieAlgebra {
        LieAlgebra {
            field: field.clone(),
            names: self.names.clone(),
            table: self.table.iter().map(|r| r.iter().map(|v| v.iter().map(&f).collect()).collect()).collect(),
        }
    }

    pub(crate) fn rename(&mut self, names: Vec<String>) {
        assert_eq!(names.len(), self.dim());
        self.names = names;
    }
}

/// Solves for coordinates in a fixed (not necessarily echelon) basis.
#[derive(Clone, Debug)]
pub struct Coordinates {
    field: Field,
    /// Transposed system: one row per ambient coordinate.
    rows: Vec<Vector>,
    m: usize,
}

impl Coordinates {
    pub fn new(field: &Field, ambient: usize, basis: &[Vector]) -> Result<Self, ResError> {
        let span = Subspace::span_of(field, ambient, basis);
        if span.dim() != basis.len() {
            return Err(ResError::DependentBasis);
        }
        let rows = (0..ambient).map(|k| basis.iter().map(|b| b[k].clone()).collect()).collect();
        Ok(Coordinates { field: field.clone(), rows, m: basis.len() })
    }

    pub fn solve(&self, v: &[Scalar]) -> Option<Vector> {
        crate::exactla::solve(&self.field, self.m, &self.rows, v)
    }
}
