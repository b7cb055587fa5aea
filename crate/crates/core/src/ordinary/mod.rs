//! Ordinary Lie algebras in characteristic two: exact arithmetic in the
//! universal enveloping algebra `U(L)`, the classifier for Lie solvability
//! of `U(L)`, witness search, the universal 2-envelope and codimension-1
//! descent.

mod corollary;
mod descent;
pub mod examples;
mod two_envelope;
mod witness;

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::resla::{LieAlgebra, ResError};
use crate::scalar::{Field, Scalar};

pub use corollary::{corollary_classify, pattern_name, structural_match, OrdTag, OrdVerdict};
pub use descent::{descent_abelian_codim1, has_abelian_codim1, random_metabelian, DescentReport};
pub use two_envelope::{two_envelope, TwoEnvelope};
pub use witness::{witness_search, Pattern, WitnessBudget, WitnessOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdError {
    #[error("elements belong to different enveloping algebras")]
    AlgebraMismatch,
    #[error("input violates the Lie algebra axioms")]
    InvalidAlgebra,
    #[error("random generation gave up after {0} attempts")]
    GenerationBudgetExceeded(usize),
    #[error("linear algebra failure: {0}")]
    Linear(String),
    #[error(transparent)]
    Res(#[from] ResError),
    #[error(transparent)]
    Scalar(#[from] crate::scalar::ScalarError),
}

/// PBW exponent vector: the monomial `b_1^e_1 ... b_n^e_n`.
pub type Exponents = Vec<u32>;

/// Element of `U(L)` in PBW normal form, with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UEnvElement {
    terms: BTreeMap<Exponents, Scalar>,
}

impl UEnvElement {
    pub fn zero() -> Self {
        UEnvElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn add_term(&mut self, field: &Field, mono: Exponents, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn add_scaled(&mut self, field: &Field, c: &Scalar, other: &UEnvElement) {
        for (m, d) in &other.terms {
            self.add_term(field, m.clone(), &field.mul(c, d));
        }
    }
}

impl fmt::Debug for UEnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// `U(L)` for a fixed ordinary Lie algebra, with a memo of `monomial * b_j`.
pub struct UEnvelope {
    lie: LieAlgebra,
    memo: RefCell<HashMap<(Exponents, usize), UEnvElement>>,
}

impl fmt::Debug for UEnvelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UEnvelope").field("dim", &self.lie.dim()).finish()
    }
}

impl UEnvelope {
    pub fn new(lie: &LieAlgebra) -> Result<Self, OrdError> {
        if !lie.check_lie_axioms().is_empty() {
            return Err(OrdError::InvalidAlgebra);
        }
        Ok(UEnvelope { lie: lie.clone(), memo: RefCell::new(HashMap::new()) })
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn field(&self) -> &Field {
        self.lie.field()
    }

    pub fn one(&self) -> UEnvElement {
        self.monomial(vec![0; self.lie.dim()])
    }

    pub fn monomial(&self, e: Exponents) -> UEnvElement {
        let mut out = UEnvElement::zero();
        out.add_term(self.field(), e, &self.field().one());
        out
    }

    pub fn generator(&self, i: usize) -> UEnvElement {
        let mut e = vec![0; self.lie.dim()];
        e[i] = 1;
        self.monomial(e)
    }

    pub fn from_lie(&self, v: &[Scalar]) -> UEnvElement {
        let mut out = UEnvElement::zero();
        for (i, c) in v.iter().enumerate() {
            let mut e = vec![0; self.lie.dim()];
            e[i] = 1;
            out.add_term(self.field(), e, c);
        }
        out
    }

    /// `mono * b_j` in normal form. With `b_k` the last factor of `mono` and
    /// `k > j`: `m' b_k b_j = (m' b_j) b_k + m' [b_k, b_j]`.
    fn mono_times_gen(&self, mono: &Exponents, j: usize) -> UEnvElement {
        let Some(k) = mono.iter().rposition(|&e| e > 0).filter(|&k| k > j) else {
            let mut e = mono.clone();
            e[j] += 1;
            return self.monomial(e);
        };
        if let Some(hit) = self.memo.borrow().get(&(mono.clone(), j)) {
            return hit.clone();
        }
        let field = self.field();
        let mut prefix = mono.clone();
        prefix[k] -= 1;
        let mut out = UEnvElement::zero();
        for (m, c) in &self.mono_times_gen(&prefix, j).terms {
            out.add_scaled(field, c, &self.mono_times_gen(m, k));
        }
        let br = self.lie.bracket_basis(k, j);
        for (l, c) in br.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(field, c, &self.mono_times_gen(&prefix, l));
            }
        }
        self.memo.borrow_mut().insert((mono.clone(), j), out.clone());
        out
    }

    fn times_gen(&self, a: &UEnvElement, j: usize) -> UEnvElement {
        let field = self.field();
        let mut out = UEnvElement::zero();
        for (m, c) in &a.terms {
            out.add_scaled(field, c, &self.mono_times_gen(m, j));
        }
        out
    }

    pub fn add(&self, a: &UEnvElement, b: &UEnvElement) -> UEnvElement {
        let mut out = a.clone();
        out.add_scaled(self.field(), &self.field().one(), b);
        out
    }

    pub fn scale(&self, c: &Scalar, a: &UEnvElement) -> UEnvElement {
        let mut out = UEnvElement::zero();
        out.add_scaled(self.field(), c, a);
        out
    }

    /// Normal-form product, multiplying `a` on the right by the factors of
    /// each monomial of `b` in ascending order.
    pub fn mul(&self, a: &UEnvElement, b: &UEnvElement) -> UEnvElement {
        let field = self.field();
        let mut out = UEnvElement::zero();
        for (m, c) in &b.terms {
            let mut acc = a.clone();
            for (j, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    acc = self.times_gen(&acc, j);
                }
            }
            out.add_scaled(field, c, &acc);
        }
        out
    }

    pub fn mul_all(&self, factors: &[UEnvElement]) -> UEnvElement {
        factors.iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    /// `ab - ba`, which is `ab + ba` in characteristic two.
    pub fn bracket(&self, a: &UEnvElement, b: &UEnvElement) -> UEnvElement {
        self.add(&self.mul(a, b), &self.mul(b, a))
    }

    pub fn format(&self, a: &UEnvElement) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let field = self.field();
        let parts: Vec<String> = a
            .terms
            .iter()
            .map(|(m, c)| {
                let factors: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { self.lie.name(i).to_string() } else { format!("{}^{e}", self.lie.name(i)) })
                    .collect();
                let mono = if factors.is_empty() { "1".to_string() } else { factors.join("*") };
                if c.is_one() {
                    mono
                } else {
                    format!("({})*{mono}", field.format(c))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::unit_vector;

    fn affine(field: &Field) -> LieAlgebra {
        // [x, y] = x
        LieAlgebra::from_brackets(field, vec!["x".into(), "y".into()], &[(0, 1, unit_vector(field, 2, 0))]).unwrap()
    }

    #[test]
    fn one_straightening_step() {
        let f = Field::gf2();
        let u = UEnvelope::new(&affine(&f)).unwrap();
        let (x, y) = (u.generator(0), u.generator(1));
        let expected = u.add(&u.monomial(vec![1, 1]), &x);
        assert_eq!(u.mul(&y, &x), expected);
        assert_eq!(u.format(&u.mul(&y, &x)), "x + x*y");
    }

    #[test]
    fn squares_are_not_truncated() {
        let f = Field::gf2();
        let u = UEnvelope::new(&affine(&f)).unwrap();
        let x = u.generator(0);
        assert_eq!(u.mul(&x, &x), u.monomial(vec![2, 0]));
    }
}
