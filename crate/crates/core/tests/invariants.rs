//! Structural invariants over random instances.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use liesolv::classify::{classify, ClassifyOptions};
use liesolv::envelope::{EnvElement, Envelope};
use liesolv::exactla::{Echelon, Vector};
use liesolv::families::random_instance;
use liesolv::scalar::Field;

fn field(gf4: bool) -> Field {
    if gf4 {
        Field::gf4()
    } else {
        Field::gf2()
    }
}

fn random_vector(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Vector {
    (0..n).map(|_| f.random(rng)).collect()
}

fn random_element(env: &Envelope, rng: &mut ChaCha8Rng) -> EnvElement {
    let f = env.field().clone();
    let mut terms = Vec::new();
    for m in 0..env.dim() as u32 {
        if rng.gen_bool(0.3) {
            terms.push((m, f.random(rng)));
        }
    }
    EnvElement::from_terms(terms)
}

/// An invertible matrix, as its list of columns.
fn random_basis(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Vec<Vector> {
    loop {
        let cols: Vec<Vector> = (0..n).map(|_| random_vector(f, n, rng)).collect();
        let mut e = Echelon::new(f, n);
        if cols.iter().all(|c| e.insert(c)) {
            return cols;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// `L` sits inside `u(L)` as a restricted Lie subalgebra, and the
    /// product of `u(L)` is associative.
    #[test]
    fn lie_embeds_and_product_associates(n in 1usize..=5, gf4 in any::<bool>(), seed in any::<u64>()) {
        let f = field(gf4);
        let alg = random_instance(n, &f, seed).unwrap();
        let env = Envelope::new(&alg).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let (u, v) = (random_vector(&f, n, &mut rng), random_vector(&f, n, &mut rng));
        let (eu, ev) = (env.from_lie(&u), env.from_lie(&v));
        prop_assert_eq!(env.bracket(&eu, &ev), env.from_lie(&alg.bracket(&u, &v)));
        prop_assert_eq!(env.square(&eu), env.from_lie(&alg.pmap_eval(&u)));
        let (a, b, c) = (random_element(&env, &mut rng), random_element(&env, &mut rng), random_element(&env, &mut rng));
        prop_assert_eq!(env.mul(&env.mul(&a, &b), &c), env.mul(&a, &env.mul(&b, &c)));
    }

    /// The verdict does not depend on the chosen basis of `L`.
    #[test]
    fn verdict_is_basis_independent(n in 2usize..=4, gf4 in any::<bool>(), seed in any::<u64>()) {
        let f = field(gf4);
        let alg = random_instance(n, &f, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(17));
        let basis = random_basis(&f, n, &mut rng);
        let names = (1..=n).map(|i| format!("c{i}")).collect();
        let other = alg.rebase(&basis, names).unwrap();
        let opts = ClassifyOptions::default();
        let (a, b) = (classify(&alg, &opts).unwrap(), classify(&other, &opts).unwrap());
        prop_assert_eq!(a.is_solvable(), b.is_solvable());
        prop_assert_eq!(a.is_not_solvable(), b.is_not_solvable());
        prop_assert!(a.verify(&alg).unwrap() && b.verify(&other).unwrap());
    }
}
