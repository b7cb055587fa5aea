//! The spans `L^{2^k}` inside `U(L)` and their sum, the universal 2-envelope.

use std::collections::BTreeMap;

use crate::exactla::{solve, Echelon, Vector};
use crate::resla::{LieAlgebra, RestrictedLieAlgebra};
use crate::scalar::Field;

use super::{Exponents, OrdError, UEnvElement, UEnvelope};

#[derive(Clone, Debug)]
pub struct TwoEnvelope {
    /// `spans[k]` is a basis of `L^{2^k}`.
    pub spans: Vec<Vec<UEnvElement>>,
    /// `dim (L + L^2 + ... + L^{2^k})` for each computed `k`.
    pub total_dims: Vec<usize>,
    pub stabilized: bool,
    /// Basis of the accumulated sum.
    pub total: Vec<UEnvElement>,
    /// Present when `stabilized`: brackets and squares read off in `U(L)`.
    pub restricted: Option<RestrictedLieAlgebra>,
}

/// Dense coordinates of elements over the union of their monomials.
fn dense(field: &Field, elems: &[&UEnvElement]) -> Vec<Vector> {
    let index: BTreeMap<&Exponents, usize> = elems
        .iter()
        .flat_map(|e| e.terms.keys())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    elems
        .iter()
        .map(|e| {
            let mut v = vec![field.zero(); index.len()];
            for (m, c) in &e.terms {
                v[index[m]] = c.clone();
            }
            v
        })
        .collect()
}

/// The elements of `candidates` independent of `start` and of each other.
fn extend_independent(field: &Field, start: &[UEnvElement], candidates: Vec<UEnvElement>) -> Vec<UEnvElement> {
    let all: Vec<&UEnvElement> = start.iter().chain(&candidates).collect();
    let vecs = dense(field, &all);
    let mut ech = Echelon::new(field, vecs.first().map_or(0, Vec::len));
    for v in &vecs[..start.len()] {
        ech.insert(v);
    }
    candidates
        .into_iter()
        .zip(&vecs[start.len()..])
        .filter_map(|(c, v)| ech.insert(v).then_some(c))
        .collect()
}

/// Coordinates of `target` in the basis `basis`, if it lies in the span.
fn coordinates(field: &Field, basis: &[UEnvElement], target: &UEnvElement) -> Option<Vector> {
    let all: Vec<&UEnvElement> = basis.iter().chain(std::iter::once(target)).collect();
    let vecs = dense(field, &all);
    let (rhs, cols) = vecs.split_last()?;
    let rows: Vec<Vector> = (0..rhs.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    solve(field, basis.len(), &rows, rhs)
}

fn assemble(u: &UEnvelope, total: &[UEnvElement]) -> Option<RestrictedLieAlgebra> {
    let field = u.field();
    let d = total.len();
    let mut brackets = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            brackets.push((i, j, coordinates(field, total, &u.bracket(&total[i], &total[j]))?));
        }
    }
    let pmap = total.iter().map(|t| coordinates(field, total, &u.mul(t, t))).collect::<Option<Vec<_>>>()?;
    let names = (1..=d).map(|i| format!("t{i}")).collect();
    RestrictedLieAlgebra::from_parts(field, names, &brackets, pmap).ok()
}

/// `L^{2^{k+1}}` is spanned by `c_i^2` and `[c_i, c_j]` for a basis `c` of
/// `L^{2^k}`. Stops when the sum stops growing or after `m_max` steps.
pub fn two_envelope(lie: &LieAlgebra, m_max: usize) -> Result<TwoEnvelope, OrdError> {
    let u = UEnvelope::new(lie)?;
    let field = u.field().clone();
    let gens: Vec<UEnvElement> = (0..lie.dim()).map(|i| u.generator(i)).collect();
    let mut total = gens.clone();
    let mut spans = vec![gens];
    let mut total_dims = vec![total.len()];
    let mut stabilized = total.is_empty();
    for _ in 0..m_max {
        if stabilized {
            break;
        }
        let prev = spans.last().expect("level 0 present");
        let mut cand: Vec<UEnvElement> = prev.iter().map(|c| u.mul(c, c)).collect();
        for i in 0..prev.len() {
            for j in i + 1..prev.len() {
                cand.push(u.bracket(&prev[i], &prev[j]));
            }
        }
        let level = extend_independent(&field, &[], cand);
        let fresh = extend_independent(&field, &total, level.clone());
        stabilized = fresh.is_empty();
        total.extend(fresh);
        total_dims.push(total.len());
        spans.push(level);
    }
    let restricted = if stabilized { assemble(&u, &total) } else { None };
    Ok(TwoEnvelope { spans, total_dims, stabilized, total, restricted })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_never_stabilizes() {
        let f = Field::gf2();
        let env = two_envelope(&LieAlgebra::abelian(&f, vec!["x".into()]), 4).unwrap();
        assert!(!env.stabilized);
        assert_eq!(env.total_dims, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn zero_dimensional_is_stable() {
        let env = two_envelope(&LieAlgebra::abelian(&Field::gf2(), Vec::new()), 3).unwrap();
        assert!(env.stabilized);
        assert_eq!(env.restricted.map(|r| r.dim()), Some(0));
    }
}
