//! Abelian ideals of codimension 1 before and after extending scalars.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::abelian_codim1_candidates;
use crate::resla::LieAlgebra;
use crate::scalar::{Extension, Field};

use super::OrdError;

const METABELIAN_ATTEMPTS: usize = 20_000;

/// Whether `L` has an abelian ideal of codimension exactly 1.
pub fn has_abelian_codim1(lie: &LieAlgebra) -> bool {
    if lie.is_abelian() {
        return lie.dim() > 0;
    }
    !abelian_codim1_candidates(lie).is_empty()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DescentReport {
    pub base: bool,
    pub extended: bool,
    /// `extended` implies `base`; a violation is an anomaly to investigate.
    pub implication_holds: bool,
}

pub fn descent_abelian_codim1(lie: &LieAlgebra, ext: &Extension) -> DescentReport {
    let base = has_abelian_codim1(lie);
    let big = lie.map_constants(&ext.field, |s| ext.embedding.apply(s));
    let extended = has_abelian_codim1(&big);
    DescentReport { base, extended, implication_holds: !extended || base }
}

/// A random Lie algebra with `L' != 0` and `L'' = 0`, deterministic in `seed`.
pub fn random_metabelian(n: usize, field: &Field, seed: u64) -> Result<LieAlgebra, OrdError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..METABELIAN_ATTEMPTS {
        let Some(lie) = crate::families::random_lie(n, field, &mut rng) else {
            continue;
        };
        let d = lie.derived();
        if !d.is_zero() && lie.bracket_spaces(&d, &d).is_zero() {
            return Ok(lie);
        }
    }
    Err(OrdError::GenerationBudgetExceeded(METABELIAN_ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_descends() {
        let f = Field::gf2();
        let h3 = crate::families::heisenberg(&f).unwrap().lie().clone();
        let r = descent_abelian_codim1(&h3, &f.extend_default(2).unwrap());
        assert_eq!(r, DescentReport { base: true, extended: true, implication_holds: true });
    }

    #[test]
    fn metabelian_sampler_is_metabelian() {
        let f = Field::gf2();
        let lie = random_metabelian(4, &f, 3).unwrap();
        assert_eq!(lie.derived_series().last().map(|s| s.dim()), Some(0));
        assert!(!lie.is_abelian());
    }
}
