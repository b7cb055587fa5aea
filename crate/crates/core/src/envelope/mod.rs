//! The restricted enveloping algebra `u(L)` in characteristic two.
//!
//! PBW monomials are subsets of basis indices, encoded as bitmasks, so
//! `dim u(L) = 2^n`. Products are computed by right-multiplying normal
//! monomials by one generator at a time from a precomputed table.

mod certificates;
mod derived;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::exactla::Vector;
use crate::resla::{ResError, RestrictedLieAlgebra};
use crate::scalar::{Field, Scalar};

pub use certificates::{
    augmentation_nilpotent, cond_ii_certificate, frobenius_kernel_dim, m2_embedding_check,
    reducedness_check, CertificateCheck, CertificateReport, EmbeddingReport, ReducednessReport,
};
pub use derived::{DerivedOutcome, DerivedSeries, SzOutcome};

/// Largest supported dimension of `L`.
pub const MAX_GENERATORS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvError {
    #[error("dimension {0} exceeds the supported maximum of {MAX_GENERATORS}")]
    TooLarge(usize),
    #[error("elements belong to different enveloping algebras")]
    AlgebraMismatch,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("algebra is not abelian")]
    NotAbelian,
    #[error(transparent)]
    Res(#[from] ResError),
}

/// Sparse element of `u(L)`: `(monomial, coefficient)` pairs sorted by
/// monomial with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct EnvElement {
    terms: Vec<(u32, Scalar)>,
}

impl EnvElement {
    pub fn zero() -> Self {
        EnvElement { terms: Vec::new() }
    }

    /// Build from unsorted terms, merging duplicates and dropping zeros.
    pub fn from_terms(mut terms: Vec<(u32, Scalar)>) -> Self {
        terms.sort_by_key(|t| t.0);
        let mut out: Vec<(u32, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        EnvElement { terms: out }
    }

    pub fn terms(&self) -> &[(u32, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mask: u32) -> Option<&Scalar> {
        self.terms.binary_search_by_key(&mask, |t| t.0).ok().map(|i| &self.terms[i].1)
    }

    pub fn add(&self, other: &EnvElement) -> EnvElement {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a[i].1.add(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        EnvElement { terms: out }
    }

    /// Largest PBW degree among the terms.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.count_ones()).max()
    }
}

impl fmt::Debug for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c:?}*[{m:b}]")).collect();
        write!(f, "{}", if parts.is_empty() { "0".to_string() } else { parts.join(" + ") })
    }
}

/// `u(L)` together with the table of products `monomial * generator`.
#[derive(Clone)]
pub struct Envelope {
    alg: Arc<RestrictedLieAlgebra>,
    n: usize,
    /// Entry `mask * n + j` holds the normal form of `mask * b_j`.
    table: Arc<Vec<EnvElement>>,
    /// The same table as lists of monomials, over GF(2) only.
    bits_table: Option<Arc<Vec<Vec<u32>>>>,
}

impl fmt::Debug for Envelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u(L) with dim L = {} over {}", self.n, self.field().name())
    }
}

struct TableBuilder<'a> {
    alg: &'a RestrictedLieAlgebra,
    n: usize,
    memo: Vec<Option<EnvElement>>,
}

impl TableBuilder<'_> {
    fn lie_terms(&self, v: &Vector) -> Vec<(usize, Scalar)> {
        v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
    }

    /// `mask * sum c_k b_k`.
    fn mul_by_lie(&mut self, mask: u32, v: &Vector) -> EnvElement {
        let field = self.alg.field().clone();
        let mut terms = Vec::new();
        for (k, c) in self.lie_terms(v) {
            for (m, d) in self.entry(mask, k).terms {
                terms.push((m, field.mul(&c, &d)));
            }
        }
        EnvElement::from_terms(terms)
    }

    fn entry(&mut self, mask: u32, j: usize) -> EnvElement {
        let idx = mask as usize * self.n + j;
        if let Some(e) = &self.memo[idx] {
            return e.clone();
        }
        let field = self.alg.field().clone();
        let res = if mask == 0 || j > top_bit(mask) {
            EnvElement { terms: vec![(mask | (1 << j), field.one())] }
        } else {
            let t = top_bit(mask);
            let rest = mask ^ (1 << t);
            if j == t {
                // b_t b_t = b_t^[2]
                let p = self.alg.pmap_basis(t).clone();
                self.mul_by_lie(rest, &p)
            } else {
                // rest b_t b_j = (rest b_j) b_t + rest [b_t, b_j]
                let a = self.entry(rest, j);
                let mut terms = Vec::new();
                for (u, c) in a.terms {
                    for (m, d) in self.entry(u, t).terms {
                        terms.push((m, field.mul(&c, &d)));
                    }
                }
                let br = self.alg.lie().bracket_basis(t, j).clone();
                let tail = self.mul_by_lie(rest, &br);
                EnvElement::from_terms(terms).add(&tail)
            }
        };
        self.memo[idx] = Some(res.clone());
        res
    }
}

fn top_bit(mask: u32) -> usize {
    31 - mask.leading_zeros() as usize
}

/// Iterate the set bits of a mask in ascending order.
pub(crate) fn bits(mask: u32) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let b = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(b)
    })
}

impl Envelope {
    pub fn new(alg: &RestrictedLieAlgebra) -> Result<Self, EnvError> {
        let n = alg.dim();
        if n > MAX_GENERATORS {
            return Err(EnvError::TooLarge(n));
        }
        let mut b = TableBuilder { alg, n, memo: vec![None; (1usize << n) * n] };
        for mask in 0..(1u32 << n) {
            for j in 0..n {
                b.entry(mask, j);
            }
        }
        let table: Vec<EnvElement> = b.memo.into_iter().map(|e| e.expect("table filled")).collect();
        let bits_table = alg.field().is_gf2().then(|| {
            Arc::new(table.iter().map(|e| e.terms.iter().map(|t| t.0).collect()).collect())
        });
        Ok(Envelope { alg: Arc::new(alg.clone()), n, table: Arc::new(table), bits_table })
    }

    pub fn algebra(&self) -> &RestrictedLieAlgebra {
        &self.alg
    }

    pub fn field(&self) -> &Field {
        self.alg.field()
    }

    /// `dim L`.
    pub fn rank(&self) -> usize {
        self.n
    }

    /// `dim u(L) = 2^n`.
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn is_gf2(&self) -> bool {
        self.bits_table.is_some()
    }

    pub fn one(&self) -> EnvElement {
        self.monomial(0)
    }

    pub fn monomial(&self, mask: u32) -> EnvElement {
        EnvElement { terms: vec![(mask, self.field().one())] }
    }

    pub fn generator(&self, i: usize) -> EnvElement {
        self.monomial(1 << i)
    }

    /// Product of generators in the given order (any order, repeats allowed).
    pub fn word(&self, gens: &[usize]) -> EnvElement {
        let mut x = self.one();
        for &g in gens {
            x = self.right_mul_generator(&x, g);
        }
        x
    }

    /// The image of an element of `L`.
    pub fn from_lie(&self, v: &[Scalar]) -> EnvElement {
        EnvElement::from_terms(
            v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (1u32 << i, c.clone())).collect(),
        )
    }

    /// Lie coordinates of an element lying in the span of the generators.
    pub fn to_lie(&self, e: &EnvElement) -> Option<Vector> {
        let mut v = vec![self.field().zero(); self.n];
        for (m, c) in &e.terms {
            if m.count_ones() != 1 {
                return None;
            }
            v[m.trailing_zeros() as usize] = c.clone();
        }
        Some(v)
    }

    pub fn scale(&self, c: &Scalar, e: &EnvElement) -> EnvElement {
        if c.is_zero() {
            return EnvElement::zero();
        }
        EnvElement { terms: e.terms.iter().map(|(m, d)| (*m, self.field().mul(c, d))).collect() }
    }

    pub fn table_entry(&self, mask: u32, j: usize) -> &EnvElement {
        &self.table[mask as usize * self.n + j]
    }

    pub fn right_mul_generator(&self, x: &EnvElement, j: usize) -> EnvElement {
        let field = self.field();
        let mut terms = Vec::new();
        for (m, c) in &x.terms {
            for (u, d) in &self.table_entry(*m, j).terms {
                terms.push((*u, field.mul(c, d)));
            }
        }
        EnvElement::from_terms(terms)
    }

    /// Normal form of `a * b`.
    pub fn mul(&self, a: &EnvElement, b: &EnvElement) -> EnvElement {
        if a.is_zero() || b.is_zero() {
            return EnvElement::zero();
        }
        if let Some(t) = &self.bits_table {
            let words = self.words();
            let r = mul_bits(t, self.n, &self.to_bits(a), &self.to_bits(b), words);
            return self.from_bits(&r);
        }
        let field = self.field();
        let mut terms = Vec::new();
        for (m2, c2) in &b.terms {
            let mut x = a.clone();
            for j in bits(*m2) {
                x = self.right_mul_generator(&x, j);
            }
            terms.extend(x.terms.into_iter().map(|(m, c)| (m, field.mul(&c, c2))));
        }
        EnvElement::from_terms(terms)
    }

    pub fn mul_all(&self, factors: &[EnvElement]) -> EnvElement {
        factors.iter().skip(1).fold(factors.first().cloned().unwrap_or_else(|| self.one()), |acc, f| self.mul(&acc, f))
    }

    /// `ab + ba`.
    pub fn bracket(&self, a: &EnvElement, b: &EnvElement) -> EnvElement {
        self.mul(a, b).add(&self.mul(b, a))
    }

    /// Left-normed `[[...[a_1, a_2], ...], a_k]`.
    pub fn bracket_chain(&self, elems: &[EnvElement]) -> EnvElement {
        let mut it = elems.iter();
        let first = it.next().cloned().unwrap_or_default();
        it.fold(first, |acc, e| self.bracket(&acc, e))
    }

    pub fn square(&self, a: &EnvElement) -> EnvElement {
        self.mul(a, a)
    }

    /// Associative nilpotency: `a^(2^n) = 0` suffices in a `2^n`-dimensional algebra.
    pub fn is_nilpotent(&self, a: &EnvElement) -> bool {
        let mut x = a.clone();
        for _ in 0..self.n {
            if x.is_zero() {
                return true;
            }
            x = self.square(&x);
        }
        x.is_zero()
    }

    pub(crate) fn words(&self) -> usize {
        self.dim().div_ceil(64)
    }

    pub(crate) fn to_bits(&self, e: &EnvElement) -> Vec<u64> {
        let mut out = vec![0u64; self.words()];
        for (m, _) in &e.terms {
            out[*m as usize / 64] |= 1 << (m % 64);
        }
        out
    }

    pub(crate) fn from_bits(&self, b: &[u64]) -> EnvElement {
        let one = self.field().one();
        let mut terms = Vec::new();
        for (wi, &w) in b.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let t = w.trailing_zeros();
                terms.push(((wi * 64) as u32 + t, one.clone()));
                w &= w - 1;
            }
        }
        EnvElement { terms }
    }

    pub(crate) fn bits_table(&self) -> Option<&Arc<Vec<Vec<u32>>>> {
        self.bits_table.as_ref()
    }

    pub fn to_dense(&self, e: &EnvElement) -> Vector {
        let mut v = vec![self.field().zero(); self.dim()];
        for (m, c) in &e.terms {
            v[*m as usize] = c.clone();
        }
        v
    }

    pub fn from_dense(&self, v: &[Scalar]) -> EnvElement {
        EnvElement {
            terms: v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as u32, c.clone())).collect(),
        }
    }

    pub fn monomial_name(&self, mask: u32) -> String {
        if mask == 0 {
            return "1".to_string();
        }
        bits(mask).map(|i| self.alg.name(i).to_string()).collect::<Vec<_>>().join("*")
    }

    /// Text form `coeff·name1*name2 + ...`, coefficient omitted when 1.
    pub fn format(&self, e: &EnvElement) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = e
            .terms
            .iter()
            .map(|(m, c)| {
                let name = self.monomial_name(*m);
                if c.is_one() {
                    name
                } else {
                    let cs = self.field().format(c);
                    if cs.contains(['+', '/']) {
                        format!("({cs})·{name}")
                    } else {
                        format!("{cs}·{name}")
                    }
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// `x * b_j` on GF(2) bitsets.
pub(crate) fn right_gen_bits(table: &[Vec<u32>], n: usize, x: &[u64], j: usize, words: usize) -> Vec<u64> {
    let mut out = vec![0u64; words];
    for (wi, &w) in x.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            let m = wi * 64 + w.trailing_zeros() as usize;
            w &= w - 1;
            for &u in &table[m * n + j] {
                out[u as usize / 64] ^= 1 << (u % 64);
            }
        }
    }
    out
}

/// `a * b` on GF(2) bitsets; prefixes of the monomials of `b` are shared.
pub(crate) fn mul_bits(table: &[Vec<u32>], n: usize, a: &[u64], b: &[u64], words: usize) -> Vec<u64> {
    let mut out = vec![0u64; words];
    let mut masks: Vec<u32> = Vec::new();
    for (wi, &w) in b.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            masks.push((wi * 64) as u32 + w.trailing_zeros());
            w &= w - 1;
        }
    }
    // a * m for m in masks, computed along a depth-first walk of prefixes
    fn walk(
        table: &[Vec<u32>],
        n: usize,
        words: usize,
        prefix_val: &[u64],
        masks: &[u32],
        from_bit: usize,
        out: &mut [u64],
    ) {
        // masks all share the current prefix; those equal to it contribute now
        for &m in masks {
            if (m >> from_bit) == 0 {
                for (o, p) in out.iter_mut().zip(prefix_val) {
                    *o ^= p;
                }
            }
        }
        for j in from_bit..n {
            let group: Vec<u32> = masks
                .iter()
                .copied()
                .filter(|&m| (m >> from_bit) != 0 && (m >> from_bit).trailing_zeros() as usize + from_bit == j)
                .collect();
            if group.is_empty() {
                continue;
            }
            let next = right_gen_bits(table, n, prefix_val, j, words);
            if next.iter().any(|&w| w != 0) {
                walk(table, n, words, &next, &group, j + 1, out);
            }
        }
    }
    walk(table, n, words, a, &masks, 0, &mut out);
    out
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

    #[test]
    fn h3_straightening() {
        let u = Envelope::new(&h3()).unwrap();
        let (e1, e2) = (u.generator(0), u.generator(1));
        let p = u.mul(&e2, &e1);
        assert_eq!(u.format(&p), "e1*e2 + e3");
        assert!(u.mul(&e1, &e1).is_zero());
        assert_eq!(u.format(&u.bracket(&e1, &e2)), "e3");
        let lhs = u.mul(&u.mul(&e1, &e2), &e2);
        let rhs = u.mul(&e1, &u.mul(&e2, &e2));
        assert_eq!(lhs, rhs);
        assert!(lhs.is_zero());
    }

    #[test]
    fn bitset_product_matches_sparse_product() {
        let f = Field::gf2();
        let names: Vec<String> = (0..4).map(|i| format!("b{i}")).collect();
        let e = |i: usize| {
            let mut v = vec![f.zero(); 4];
            v[i] = f.one();
            v
        };
        let alg = RestrictedLieAlgebra::from_parts(
            &f,
            names,
            &[(0, 2, e(0)), (1, 2, e(1)), (0, 1, e(3))],
            vec![vec![f.zero(); 4], vec![f.zero(); 4], e(2), e(3)],
        )
        .unwrap();
        assert!(alg.check_axioms().passed(), "{}", alg.check_axioms());
        let u = Envelope::new(&alg).unwrap();
        for a in 0..16u32 {
            for b in 0..16u32 {
                let x = u.monomial(a).add(&u.monomial(b ^ 5));
                let y = u.monomial(b);
                let fast = u.mul(&x, &y);
                let mut slow = EnvElement::zero();
                for (m2, _) in y.terms() {
                    let mut z = x.clone();
                    for j in bits(*m2) {
                        z = u.right_mul_generator(&z, j);
                    }
                    slow = slow.add(&z);
                }
                assert_eq!(fast, slow);
            }
        }
    }
}
