//! Rejection sampling of small restricted Lie algebras.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactla::{matrix, solve, zero_vector, Vector};
use crate::resla::{LieAlgebra, RestrictedLieAlgebra};
use crate::scalar::Field;

use super::FamilyError;

pub const MAX_RANDOM_DIM: usize = 8;
const MAX_ATTEMPTS: usize = 20_000;

/// A random restricted Lie algebra of dimension `n`, deterministic in `seed`.
///
/// Brackets are sparse; half of the draws are graded (`[b_i, b_j]` supported
/// on indices above `j`), which makes the Jacobi identity likely. The power
/// map is then the solution of `ad(b_i^[2]) = ad(b_i)^2` plus a random
/// central element; draws without a solution are rejected.
pub fn random_instance(n: usize, field: &Field, seed: u64) -> Result<RestrictedLieAlgebra, FamilyError> {
    if n == 0 || n > MAX_RANDOM_DIM {
        return Err(FamilyError::BadParameters(format!("random dimension must be in 1..={MAX_RANDOM_DIM}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        if let Some(alg) = sample(n, field, &mut rng) {
            return Ok(alg);
        }
    }
    Err(FamilyError::GenerationBudgetExceeded { attempts: MAX_ATTEMPTS })
}

/// Sparse random brackets on `b1..bn`, or `None` if Jacobi fails.
pub(crate) fn random_lie(n: usize, field: &Field, rng: &mut ChaCha8Rng) -> Option<LieAlgebra> {
    let graded = rng.gen_bool(0.5);
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                continue;
            }
            let lo = if graded { j + 1 } else { 0 };
            if lo >= n {
                continue;
            }
            let mut v = zero_vector(field, n);
            for _ in 0..rng.gen_range(1..=2) {
                let k = rng.gen_range(lo..n);
                v[k] = field.random_nonzero(rng);
            }
            brackets.push((i, j, v));
        }
    }
    let names = (1..=n).map(|i| format!("b{i}")).collect();
    let lie = LieAlgebra::from_brackets(field, names, &brackets).ok()?;
    lie.check_lie_axioms().is_empty().then_some(lie)
}

fn sample(n: usize, field: &Field, rng: &mut ChaCha8Rng) -> Option<RestrictedLieAlgebra> {
    let lie = random_lie(n, field, rng)?;
    let ads: Vec<matrix::Matrix> = (0..n).map(|k| lie.ad_basis(k)).collect();
    let rows: Vec<Vector> =
        (0..n * n).map(|e| ads.iter().map(|a| a[e / n][e % n].clone()).collect()).collect();
    let center = lie.center();
    let mut pmap = Vec::with_capacity(n);
    for ad in &ads {
        let sq = matrix::mul(field, ad, ad);
        let rhs: Vector = (0..n * n).map(|e| sq[e / n][e % n].clone()).collect();
        let mut p = solve(field, n, &rows, &rhs)?;
        for z in center.basis() {
            if rng.gen_bool(0.5) {
                let c = field.random(rng);
                crate::exactla::add_scaled(field, &mut p, &c, z);
            }
        }
        pmap.push(p);
    }
    let alg = RestrictedLieAlgebra::new(lie, pmap).ok()?;
    alg.check_axioms().passed().then_some(alg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_is_abelian() {
        let f = Field::gf2();
        for seed in 0..8 {
            let a = random_instance(1, &f, seed).unwrap();
            assert!(a.lie().is_abelian());
            let p = a.pmap_basis(0);
            assert!(p[0].is_zero() || p[0].is_one());
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let f = Field::gf4();
        assert_eq!(random_instance(4, &f, 11).unwrap(), random_instance(4, &f, 11).unwrap());
    }
}
