//! Finite-dimensional restricted Lie algebras over a [`Field`].
//!
//! The 2-power map is stored on basis vectors and extended to all elements by
//! `(sum a_i b_i)^[2] = sum a_i^2 b_i^[2] + sum_{i<j} a_i a_j [b_i, b_j]`.

mod lie;

use std::fmt;

use thiserror::Error;

use crate::exactla::matrix;
use crate::exactla::{add_scaled, is_zero, nullspace, Echelon, Quotient, Subspace, Vector};
use crate::scalar::{Embedding, Extension, Field, Scalar, ScalarError};

pub use lie::{Coordinates, LieAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResError {
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("subspace is not a restricted ideal")]
    NotAnIdeal,
    #[error("subspace is not a restricted subalgebra")]
    NotASubalgebra,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("algebra is not abelian")]
    NotAbelian,
    #[error("operation unsupported over {0}")]
    UnsupportedField(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// One failed instance of a restricted Lie algebra axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `[b_i, b_i] != 0`.
    Alternating { i: usize },
    /// `[b_i, b_j] != [b_j, b_i]`.
    Symmetry { i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize },
    /// `ad(b_i^[2]) != (ad b_i)^2`.
    Restrictedness { i: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
    /// Basis names, for messages.
    pub names: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn describe(&self, v: &AxiomViolation) -> String {
        let n = |i: &usize| self.names.get(*i).cloned().unwrap_or_else(|| i.to_string());
        match v {
            AxiomViolation::Alternating { i } => format!("alternating: [{0},{0}] != 0", n(i)),
            AxiomViolation::Symmetry { i, j } => {
                format!("anticommutativity: [{0},{1}] != [{1},{0}]", n(i), n(j))
            }
            AxiomViolation::Jacobi { i, j, k } => {
                format!("jacobi: triple ({}, {}, {})", n(i), n(j), n(k))
            }
            AxiomViolation::Restrictedness { i } => {
                format!("restrictedness: ad({0}^[2]) != (ad {0})^2", n(i))
            }
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "all axioms hold");
        }
        let lines: Vec<String> = self.violations.iter().map(|v| self.describe(v)).collect();
        write!(f, "{}", lines.join("\n"))
    }
}

/// A subspace closed under brackets with `L` and under the power map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedIdeal {
    pub space: Subspace,
    pub closed_under_bracket: bool,
    pub closed_under_pmap: bool,
}

/// Outcome of iterating the power map on one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementNilpotency {
    /// `v^[2]^exponent = 0` with `exponent` minimal.
    Nilpotent { exponent: usize },
    /// The iterates `v, v^[2], ...` that never reached zero.
    NotNilpotent { iterates: Vec<Vector> },
}

/// The chain `N_1 = I, N_{k+1} = [N_k, I] + span{v^[2] : v basis of N_k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyChain {
    pub dims: Vec<usize>,
    pub nilpotent: bool,
    /// Final term of the chain (zero when nilpotent).
    pub last: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedLieAlgebra {
    lie: LieAlgebra,
    pmap: Vec<Vector>,
}

impl RestrictedLieAlgebra {
    pub fn new(lie: LieAlgebra, pmap: Vec<Vector>) -> Result<Self, ResError> {
        if pmap.len() != lie.dim() {
            return Err(ResError::DimensionMismatch { expected: lie.dim(), got: pmap.len() });
        }
        for v in &pmap {
            lie.check_vector(v)?;
        }
        Ok(RestrictedLieAlgebra { lie, pmap })
    }

    /// Build from sparse brackets and a dense list of basis images of the power map.
    pub fn from_parts(
        field: &Field,
        names: Vec<String>,
        brackets: &[(usize, usize, Vector)],
        pmap: Vec<Vector>,
    ) -> Result<Self, ResError> {
        let lie = LieAlgebra::from_brackets(field, names, brackets)?;
        RestrictedLieAlgebra::new(lie, pmap)
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn field(&self) -> &Field {
        self.lie.field()
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn names(&self) -> &[String] {
        self.lie.names()
    }

    pub fn name(&self, i: usize) -> &str {
        self.lie.name(i)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        self.lie.basis_vector(i)
    }

    pub fn pmap_basis(&self, i: usize) -> &Vector {
        &self.pmap[i]
    }

    pub fn pmap_table(&self) -> &[Vector] {
        &self.pmap
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        self.lie.bracket(u, v)
    }

    pub fn describe(&self, v: &[Scalar]) -> String {
        self.lie.describe(v)
    }

    pub fn set_pmap(&mut self, i: usize, v: Vector) {
        self.pmap[i] = v;
    }

    pub fn set_bracket_entry(&mut self, i: usize, j: usize, v: Vector) {
        self.lie.set_bracket_entry(i, j, v);
    }

    pub fn rename(&mut self, names: Vec<String>) {
        self.lie.rename(names);
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let mut violations = self.lie.check_lie_axioms();
        let field = self.field();
        for i in 0..self.dim() {
            let ad = self.lie.ad_basis(i);
            let sq = matrix::mul(field, &ad, &ad);
            if self.lie.ad(&self.pmap[i]) != sq {
                violations.push(AxiomViolation::Restrictedness { i });
            }
        }
        AxiomReport { violations, names: self.names().to_vec() }
    }

    /// The power map on an arbitrary element.
    pub fn pmap_eval(&self, v: &[Scalar]) -> Vector {
        let field = self.field();
        let n = self.dim();
        let mut out = self.lie.zero_vector();
        let support: Vec<usize> = (0..n).filter(|&i| !v[i].is_zero()).collect();
        for (a, &i) in support.iter().enumerate() {
            add_scaled(field, &mut out, &field.square(&v[i]), &self.pmap[i]);
            for &j in &support[a + 1..] {
                let c = field.mul(&v[i], &v[j]);
                add_scaled(field, &mut out, &c, self.lie.bracket_basis(i, j));
            }
        }
        out
    }

    pub fn is_strongly_abelian(&self) -> bool {
        self.lie.is_abelian() && self.pmap.iter().all(|v| is_zero(v))
    }

    pub fn series(&self, kind: SeriesKind) -> Vec<Subspace> {
        match kind {
            SeriesKind::Derived => self.lie.derived_series(),
            SeriesKind::LowerCentral => self.lie.lower_central_series(),
            SeriesKind::UpperCentral => self.lie.upper_central_series(),
        }
    }

    pub fn center(&self) -> Subspace {
        self.lie.center()
    }

    pub fn centralizer(&self, s: &Subspace) -> Subspace {
        self.lie.centralizer(s)
    }

    /// Least restricted ideal containing the given elements.
    pub fn restricted_closure(&self, gens: &[Vector]) -> RestrictedIdeal {
        let n = self.dim();
        let mut e = Echelon::new(self.field(), n);
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
            let p = self.pmap_eval(&v);
            if e.insert(&p) {
                work.push(p);
            }
        }
        let space = e.to_subspace();
        RestrictedIdeal { space, closed_under_bracket: true, closed_under_pmap: true }
    }

    pub fn is_restricted_ideal(&self, s: &Subspace) -> bool {
        self.lie.is_ideal(s) && s.basis().iter().all(|v| s.contains(&self.pmap_eval(v)))
    }

    pub fn is_restricted_subalgebra(&self, s: &Subspace) -> bool {
        self.lie.is_subalgebra(s) && s.basis().iter().all(|v| s.contains(&self.pmap_eval(v)))
    }

    pub fn element_nilpotency(&self, v: &[Scalar]) -> ElementNilpotency {
        let mut iterates = Vec::new();
        let mut x = v.to_vec();
        for m in 0..=self.dim() + 1 {
            if is_zero(&x) {
                return ElementNilpotency::Nilpotent { exponent: m };
            }
            let next = self.pmap_eval(&x);
            iterates.push(x);
            x = next;
        }
        ElementNilpotency::NotNilpotent { iterates }
    }

    pub fn is_2nilpotent_element(&self, v: &[Scalar]) -> bool {
        matches!(self.element_nilpotency(v), ElementNilpotency::Nilpotent { .. })
    }

    /// Chain criterion for 2-nilpotency of a subspace `I` (normally an ideal).
    pub fn nilpotency_chain(&self, ideal: &Subspace) -> NilpotencyChain {
        let mut cur = ideal.clone();
        let mut dims = vec![cur.dim()];
        // the chain is decreasing for ideals; the bound guards other inputs
        for _ in 0..=self.dim() + 1 {
            if cur.is_zero() {
                return NilpotencyChain { dims, nilpotent: true, last: cur };
            }
            let mut e = Echelon::new(self.field(), self.dim());
            for u in cur.basis() {
                for v in ideal.basis() {
                    e.insert(&self.bracket(u, v));
                }
                e.insert(&self.pmap_eval(u));
            }
            let next = e.to_subspace();
            if next == cur {
                return NilpotencyChain { dims, nilpotent: false, last: cur };
            }
            dims.push(next.dim());
            cur = next;
        }
        NilpotencyChain { dims, nilpotent: false, last: cur }
    }

    pub fn is_2nilpotent_ideal(&self, ideal: &Subspace) -> bool {
        self.nilpotency_chain(ideal).nilpotent
    }

    /// Whether `[I, I]` is 2-nilpotent.
    pub fn is_2abelian(&self, ideal: &Subspace) -> bool {
        let d = self.lie.bracket_spaces(ideal, ideal);
        self.is_2nilpotent_ideal(&d)
    }

    /// `L = T + N` for abelian `L` over GF(2^k): `T` the stable image of the
    /// power map (a torus) and `N` its stable kernel (2-nilpotent).
    pub fn torus_decomposition(&self) -> Result<(Subspace, Subspace), ResError> {
        let field = self.field();
        if field.as_gf2k().is_none() {
            return Err(ResError::UnsupportedField(field.name()));
        }
        if !self.lie.is_abelian() {
            return Err(ResError::NotAbelian);
        }
        let n = self.dim();
        // on an abelian algebra the power map is additive and 2-semilinear
        let images: Vec<Vector> = (0..n)
            .map(|i| {
                let mut x = self.basis_vector(i);
                for _ in 0..n {
                    x = self.pmap_eval(&x);
                }
                x
            })
            .collect();
        let torus = self.lie.span(&images);
        // sigma^n(sum a_i b_i) = sum a_i^(2^n) images_i: solve for b = a^(2^n)
        let rows: Vec<Vector> = (0..n).map(|k| images.iter().map(|c| c[k].clone()).collect()).collect();
        let kernel: Vec<Vector> = nullspace(field, n, &rows)
            .into_iter()
            .map(|b| {
                b.iter()
                    .map(|s| {
                        let mut r = s.clone();
                        for _ in 0..n {
                            r = field.sqrt(&r).expect("finite fields are perfect");
                        }
                        r
                    })
                    .collect()
            })
            .collect();
        Ok((torus, self.lie.span(&kernel)))
    }

    /// `L / I` on the lifted complement basis, with the quotient coordinates.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(RestrictedLieAlgebra, Quotient), ResError> {
        if !self.is_restricted_ideal(ideal) {
            return Err(ResError::NotAnIdeal);
        }
        let (lie, q) = self.lie.quotient_table(ideal)?;
        let pmap = q.lifted_basis().iter().map(|v| q.project(&self.pmap_eval(v))).collect();
        Ok((RestrictedLieAlgebra { lie, pmap }, q))
    }

    /// Scalars pushed through a field embedding.
    pub fn base_change(&self, ext: &Extension) -> RestrictedLieAlgebra {
        self.map_scalars(&ext.field, &ext.embedding)
    }

    pub fn map_scalars(&self, field: &Field, emb: &Embedding) -> RestrictedLieAlgebra {
        let f = |s: &Scalar| emb.apply(s);
        RestrictedLieAlgebra {
            lie: self.lie.map_constants(field, f),
            pmap: self.pmap.iter().map(|v| v.iter().map(f).collect()).collect(),
        }
    }

    pub fn direct_sum(&self, other: &RestrictedLieAlgebra) -> Result<RestrictedLieAlgebra, ResError> {
        if self.field() != other.field() {
            return Err(ResError::FieldMismatch);
        }
        let (n, m) = (self.dim(), other.dim());
        let field = self.field();
        let pad = |v: &Vector, left: bool| -> Vector {
            let mut out = vec![field.zero(); n + m];
            let off = if left { 0 } else { n };
            for (i, s) in v.iter().enumerate() {
                out[off + i] = s.clone();
            }
            out
        };
        let mut names = self.names().to_vec();
        names.extend(other.names().iter().cloned());
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in 0..n {
                brackets.push((i, j, pad(self.lie.bracket_basis(i, j), true)));
            }
        }
        for i in 0..m {
            for j in 0..m {
                brackets.push((n + i, n + j, pad(other.lie.bracket_basis(i, j), false)));
            }
        }
        let mut pmap: Vec<Vector> = self.pmap.iter().map(|v| pad(v, true)).collect();
        pmap.extend(other.pmap.iter().map(|v| pad(v, false)));
        RestrictedLieAlgebra::from_parts(field, names, &brackets, pmap)
    }

    /// Structure constants on a new basis of a restricted subalgebra (or of
    /// the whole algebra, which is a change of basis).
    pub fn rebase(&self, basis: &[Vector], names: Vec<String>) -> Result<RestrictedLieAlgebra, ResError> {
        let lie = self.lie.restrict_to(basis, names)?;
        let coords = Coordinates::new(self.field(), self.dim(), basis)?;
        let pmap = basis
            .iter()
            .map(|b| coords.solve(&self.pmap_eval(b)).ok_or(ResError::NotASubalgebra))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RestrictedLieAlgebra { lie, pmap })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Derived,
    LowerCentral,
    UpperCentral,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h3() -> RestrictedLieAlgebra {
        let f = Field::gf2();
        let names = vec!["e1".to_string(), "e2".to_string(), "e3".to_string()];
        let e3 = vec![f.zero(), f.zero(), f.one()];
        RestrictedLieAlgebra::from_parts(&f, names, &[(0, 1, e3)], vec![vec![f.zero(); 3]; 3]).unwrap()
    }

    fn vecs(f: &Field, bits: &[u64]) -> Vector {
        let _ = f;
        bits.iter().map(|&b| Scalar::Gf(b)).collect()
    }

    #[test]
    fn h3_axioms_and_series() {
        let l = h3();
        assert!(l.check_axioms().passed());
        let z = l.center();
        assert_eq!(z, l.lie().span(&[l.basis_vector(2)]));
        let lc = l.series(SeriesKind::LowerCentral);
        assert_eq!(lc.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![3, 1, 0]);
        let uc = l.series(SeriesKind::UpperCentral);
        assert_eq!(uc.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![0, 1, 3]);
        let c = l.centralizer(&l.lie().span(&[l.basis_vector(0)]));
        assert_eq!(c, l.lie().span(&[l.basis_vector(0), l.basis_vector(2)]));
    }

    #[test]
    fn injected_toral_pmap_breaks_restrictedness() {
        let mut l = h3();
        l.set_pmap(0, l.basis_vector(0));
        let r = l.check_axioms();
        assert_eq!(r.violations, vec![AxiomViolation::Restrictedness { i: 0 }]);
    }

    #[test]
    fn pmap_eval_cross_term() {
        let l = h3();
        let f = l.field().clone();
        assert_eq!(l.pmap_eval(&vecs(&f, &[1, 1, 0])), l.basis_vector(2));
    }

    #[test]
    fn closure_and_chain() {
        let l = h3();
        let i = l.restricted_closure(&[l.basis_vector(0)]);
        assert_eq!(i.space.dim(), 2);
        assert!(l.is_2nilpotent_ideal(&i.space));
        assert!(l.is_2abelian(&l.lie().full()));
    }

    #[test]
    fn element_mode() {
        let f = Field::gf2();
        let names = vec!["x".to_string(), "y".to_string(), "a".to_string()];
        let z = vec![f.zero(); 3];
        let l = RestrictedLieAlgebra::from_parts(
            &f,
            names,
            &[],
            vec![vecs(&f, &[0, 1, 0]), z.clone(), vecs(&f, &[0, 0, 1])],
        )
        .unwrap();
        assert_eq!(l.element_nilpotency(&l.basis_vector(0)), ElementNilpotency::Nilpotent { exponent: 2 });
        assert!(!l.is_2nilpotent_element(&l.basis_vector(2)));
        let (t, n) = l.torus_decomposition().unwrap();
        assert_eq!(t, l.lie().span(&[l.basis_vector(2)]));
        assert_eq!(n, l.lie().span(&[l.basis_vector(0), l.basis_vector(1)]));
    }

    #[test]
    fn quotient_and_direct_sum() {
        let l = h3();
        let (q, _) = l.quotient(&l.center()).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.is_strongly_abelian());
        let f = l.field().clone();
        let a = RestrictedLieAlgebra::from_parts(&f, vec!["a".into()], &[], vec![vec![f.one()]]).unwrap();
        let s = l.direct_sum(&a).unwrap();
        assert!(s.check_axioms().passed());
        assert_eq!(s.center().dim(), 2);
        let ext = f.extend_default(2).unwrap();
        let big = l.base_change(&ext);
        assert!(big.check_axioms().passed());
        assert_eq!(big.field(), &Field::gf4());
    }
}
