//! Lie derived series of `u(L)` and nilpotency of the ideal generated by
//! `[[a, b], [c, d], e]`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::exactla::{Echelon, Subspace};
use crate::scalar::Scalar;

use super::{mul_bits, EnvElement, Envelope};

/// Rows of pair brackets computed in parallel before each sequential merge.
const ROW_BLOCK: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DerivedOutcome {
    /// `D_length = 0`.
    ReachedZero { length: usize },
    /// `D_{k+1} = D_k` with the given nonzero dimension.
    Stabilized { dim: usize },
    /// `max_steps` brackets levels were computed without either outcome.
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct DerivedSeries {
    /// `dim D_0, dim D_1, ...`.
    pub dims: Vec<usize>,
    pub outcome: DerivedOutcome,
    /// Linearly independent spanning elements of each computed term.
    pub terms: Vec<Vec<EnvElement>>,
}

impl DerivedSeries {
    pub fn is_solvable(&self) -> bool {
        matches!(self.outcome, DerivedOutcome::ReachedZero { .. })
    }

    pub fn derived_length(&self) -> Option<usize> {
        match self.outcome {
            DerivedOutcome::ReachedZero { length } => Some(length),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SzOutcome {
    /// `T^index = 0` for the ideal `T`; `power_dims` lists `dim T^k`.
    Nilpotent { index: usize, power_dims: Vec<usize> },
    /// The powers stabilized at a nonzero ideal containing `witness`.
    NotNilpotent { witness: EnvElement, witness_verified: bool, power_dims: Vec<usize> },
}

/// Element arithmetic used by the series computations.
trait Backend: Sync {
    type E: Clone + Send + Sync;
    fn env(&self) -> &Envelope;
    fn lift(&self, e: &EnvElement) -> Self::E;
    fn lower(&self, e: &Self::E) -> EnvElement;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn insert(&self, ech: &mut Echelon, e: &Self::E) -> bool;

    fn bracket(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(&self.mul(a, b), &self.mul(b, a))
    }

    fn echelon(&self) -> Echelon {
        Echelon::new(self.env().field(), self.env().dim())
    }
}

struct Bits<'a>(&'a Envelope);

impl Backend for Bits<'_> {
    type E = Vec<u64>;

    fn env(&self) -> &Envelope {
        self.0
    }

    fn lift(&self, e: &EnvElement) -> Vec<u64> {
        self.0.to_bits(e)
    }

    fn lower(&self, e: &Vec<u64>) -> EnvElement {
        self.0.from_bits(e)
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let t = self.0.bits_table().expect("GF(2) table");
        mul_bits(t, self.0.rank(), a, b, self.0.words())
    }

    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| x ^ y).collect()
    }

    fn insert(&self, ech: &mut Echelon, e: &Vec<u64>) -> bool {
        ech.insert_bits(e.clone())
    }
}

struct Sparse<'a>(&'a Envelope);

impl Backend for Sparse<'_> {
    type E = EnvElement;

    fn env(&self) -> &Envelope {
        self.0
    }

    fn lift(&self, e: &EnvElement) -> EnvElement {
        e.clone()
    }

    fn lower(&self, e: &EnvElement) -> EnvElement {
        e.clone()
    }

    fn mul(&self, a: &EnvElement, b: &EnvElement) -> EnvElement {
        self.0.mul(a, b)
    }

    fn add(&self, a: &EnvElement, b: &EnvElement) -> EnvElement {
        a.add(b)
    }

    fn insert(&self, ech: &mut Echelon, e: &EnvElement) -> bool {
        let v: Vec<(usize, Scalar)> = e.terms().iter().map(|(m, c)| (*m as usize, c.clone())).collect();
        ech.insert_sparse(&v)
    }
}

/// `span{[g_a, g_b] : a < b}`, stopping early once `cap` is reached.
fn bracket_level<B: Backend>(b: &B, gens: &[B::E], cap: usize) -> Vec<B::E> {
    let mut ech = b.echelon();
    let mut kept = Vec::new();
    let g = gens.len();
    let mut start = 0;
    while start < g {
        let end = (start + ROW_BLOCK).min(g);
        let rows: Vec<Vec<B::E>> = (start..end)
            .into_par_iter()
            .map(|i| (i + 1..g).map(|j| b.bracket(&gens[i], &gens[j])).collect())
            .collect();
        for row in rows {
            for e in row {
                if b.insert(&mut ech, &e) {
                    kept.push(e);
                    if kept.len() == cap {
                        return kept;
                    }
                }
            }
        }
        start = end;
    }
    kept
}

/// Independent generators of `[u(L), u(L)] = span{[m, b_i]}`, which follows
/// from `[x, yz] = [xy, z] + [zx, y]` by induction on the degree of `yz`.
fn first_level<B: Backend>(b: &B) -> Vec<B::E> {
    let env = b.env();
    let n = env.rank();
    let gens: Vec<B::E> = (0..n).map(|i| b.lift(&env.generator(i))).collect();
    let all: Vec<Vec<B::E>> = (0..env.dim() as u32)
        .into_par_iter()
        .map(|m| {
            let mono = b.lift(&env.monomial(m));
            gens.iter().map(|g| b.bracket(&mono, g)).collect()
        })
        .collect();
    let mut ech = b.echelon();
    let mut kept = Vec::new();
    for row in all {
        for e in row {
            if b.insert(&mut ech, &e) {
                kept.push(e);
            }
        }
    }
    kept
}

fn series_impl<B: Backend>(b: &B, start: Option<&[EnvElement]>, max_steps: usize) -> DerivedSeries {
    let env = b.env();
    let (mut gens, d0) = match start {
        None => (None, env.dim()),
        Some(s) => {
            let mut ech = b.echelon();
            let kept: Vec<B::E> = s.iter().map(|e| b.lift(e)).filter(|e| b.insert(&mut ech, e)).collect();
            let d = kept.len();
            (Some(kept), d)
        }
    };
    let mut dims = vec![d0];
    let mut terms: Vec<Vec<EnvElement>> = Vec::new();
    if d0 == 0 {
        return DerivedSeries { dims, outcome: DerivedOutcome::ReachedZero { length: 0 }, terms };
    }
    for _ in 0..max_steps {
        let prev = *dims.last().unwrap();
        let next = match &gens {
            None => first_level(b),
            Some(g) => bracket_level(b, g, prev),
        };
        let d = next.len();
        if d == prev {
            return DerivedSeries { dims, outcome: DerivedOutcome::Stabilized { dim: d }, terms };
        }
        dims.push(d);
        terms.push(next.iter().map(|e| b.lower(e)).collect());
        if d == 0 {
            let length = dims.len() - 1;
            return DerivedSeries { dims, outcome: DerivedOutcome::ReachedZero { length }, terms };
        }
        gens = Some(next);
    }
    DerivedSeries { dims, outcome: DerivedOutcome::BudgetExceeded, terms }
}

/// Right ideal (or two-sided ideal when `two_sided`) generated by `gens`.
fn ideal_closure<B: Backend>(b: &B, gens: Vec<B::E>, two_sided: bool) -> Vec<B::E> {
    let env = b.env();
    let n = env.rank();
    let g_elems: Vec<B::E> = (0..n).map(|i| b.lift(&env.generator(i))).collect();
    let mut ech = b.echelon();
    let mut kept: Vec<B::E> = Vec::new();
    let mut work: Vec<B::E> = Vec::new();
    for g in gens {
        if b.insert(&mut ech, &g) {
            kept.push(g.clone());
            work.push(g);
        }
    }
    while !work.is_empty() {
        let batch: Vec<B::E> = std::mem::take(&mut work);
        let products: Vec<Vec<B::E>> = batch
            .par_iter()
            .map(|x| {
                let mut out: Vec<B::E> = g_elems.iter().map(|g| b.mul(x, g)).collect();
                if two_sided {
                    out.extend(g_elems.iter().map(|g| b.mul(g, x)));
                }
                out
            })
            .collect();
        for row in products {
            for e in row {
                if b.insert(&mut ech, &e) {
                    kept.push(e.clone());
                    work.push(e);
                }
            }
        }
    }
    kept
}

fn sz_impl<B: Backend>(b: &B, seed: u64) -> SzOutcome {
    let env = b.env();
    let n = env.rank();
    let d1 = first_level(b);
    let d2 = bracket_level(b, &d1, usize::MAX);
    let g_elems: Vec<B::E> = (0..n).map(|i| b.lift(&env.generator(i))).collect();
    let mut gen_ech = b.echelon();
    let gens: Vec<B::E> = d2
        .par_iter()
        .map(|d| g_elems.iter().map(|g| b.bracket(d, g)).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .filter(|e| b.insert(&mut gen_ech, e))
        .collect();
    let ideal = ideal_closure(b, gens.clone(), true);
    let mut power_dims = vec![ideal.len()];
    if ideal.is_empty() {
        return SzOutcome::Nilpotent { index: 1, power_dims };
    }
    let mut power = ideal.clone();
    loop {
        let products: Vec<B::E> = power
            .par_iter()
            .map(|p| gens.iter().map(|g| b.mul(p, g)).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect();
        let next = ideal_closure(b, products, false);
        if next.is_empty() {
            power_dims.push(0);
            return SzOutcome::Nilpotent { index: power_dims.len(), power_dims };
        }
        if next.len() == power.len() {
            let (witness, witness_verified) = find_non_nilpotent(b, &next, &gens, seed);
            return SzOutcome::NotNilpotent { witness, witness_verified, power_dims };
        }
        power_dims.push(next.len());
        power = next;
    }
}

/// A non-nilpotent element of a non-nilpotent ideal: such an ideal of a
/// finite-dimensional algebra is not nil, so sampling terminates quickly.
fn find_non_nilpotent<B: Backend>(b: &B, basis: &[B::E], gens: &[B::E], seed: u64) -> (EnvElement, bool) {
    let env = b.env();
    for e in gens.iter().chain(basis) {
        let x = b.lower(e);
        if !env.is_nilpotent(&x) {
            return (x, true);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let mut x = EnvElement::zero();
        for e in basis {
            let c = env.field().random(&mut rng);
            x = x.add(&env.scale(&c, &b.lower(e)));
        }
        if !x.is_zero() && !env.is_nilpotent(&x) {
            return (x, true);
        }
    }
    (b.lower(&basis[0]), false)
}

impl Envelope {
    /// Lie derived series of `u(L)` (or of the span of `start`).
    pub fn lie_derived_series(&self, start: Option<&[EnvElement]>, max_steps: usize) -> DerivedSeries {
        if self.is_gf2() {
            series_impl(&Bits(self), start, max_steps)
        } else {
            series_impl(&Sparse(self), start, max_steps)
        }
    }

    /// Nilpotency of the two-sided ideal generated by all `[[a, b], [c, d], e]`,
    /// which is generated by `[d, b_i]` for `d` in `[[u, u], [u, u]]`.
    pub fn sz_nilpotency(&self, seed: u64) -> SzOutcome {
        if self.is_gf2() {
            sz_impl(&Bits(self), seed)
        } else {
            sz_impl(&Sparse(self), seed)
        }
    }

    /// Two-sided ideal of `u(L)` generated by the given elements.
    pub fn two_sided_ideal(&self, gens: &[EnvElement]) -> Vec<EnvElement> {
        if self.is_gf2() {
            let b = Bits(self);
            let g = gens.iter().map(|e| b.lift(e)).collect();
            ideal_closure(&b, g, true).iter().map(|e| b.lower(e)).collect()
        } else {
            ideal_closure(&Sparse(self), gens.to_vec(), true)
        }
    }

    /// Canonical subspace spanned by elements of `u(L)`.
    pub fn span(&self, elems: &[EnvElement]) -> Subspace {
        let mut ech = Echelon::new(self.field(), self.dim());
        for e in elems {
            let v: Vec<(usize, Scalar)> = e.terms().iter().map(|(m, c)| (*m as usize, c.clone())).collect();
            ech.insert_sparse(&v);
        }
        ech.to_subspace()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resla::RestrictedLieAlgebra;
    use crate::scalar::Field;

    fn abelian_toral() -> RestrictedLieAlgebra {
        let f = Field::gf2();
        RestrictedLieAlgebra::from_parts(&f, vec!["a".into()], &[], vec![vec![f.one()]]).unwrap()
    }

    #[test]
    fn abelian_is_solvable_in_one_step() {
        let u = Envelope::new(&abelian_toral()).unwrap();
        let s = u.lie_derived_series(None, 10);
        assert_eq!(s.outcome, DerivedOutcome::ReachedZero { length: 1 });
        assert_eq!(u.sz_nilpotency(0), SzOutcome::Nilpotent { index: 1, power_dims: vec![0] });
    }
}
