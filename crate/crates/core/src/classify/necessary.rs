//! Fast refutations: explicit elements of the ideal generated by all
//! `[[a, b], [c, d], e]` that fail to be nilpotent in `u(L)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::envelope::{EnvElement, Envelope};
use crate::exactla::{combine, Echelon, Vector};
use crate::resla::RestrictedLieAlgebra;

use super::ClassifyError;

/// Largest `dim L` for the tests that evaluate words in `u(L)`.
const WORD_TEST_DIM: usize = 10;
/// Largest `dim L` for the exhaustive pattern sweep.
const PATTERN_TEST_DIM: usize = 8;
const RANDOM_TRIES: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NecessaryTag {
    /// An element of `<[[L', L'], L]>_2` that is not 2-nilpotent.
    DerivedIdeal,
    /// `[[x4 x3 x1, x4], [x4 x1, x1], x2]` for basis elements outside the center.
    FourGenerator,
    /// `[[z b y, z], [x, x b], y]` on a tuple `(x, y, z, b)`.
    PatternZby,
    /// `[[a z, y], [x y a, x], z]` on a tuple `(x, y, z, a)`.
    PatternXya,
}

impl NecessaryTag {
    pub fn describe(self) -> &'static str {
        match self {
            NecessaryTag::DerivedIdeal => "<[[L',L'],L]>_2 element",
            NecessaryTag::FourGenerator => "four-generator relation",
            NecessaryTag::PatternZby => "[[zby,z],[x,xb],y]",
            NecessaryTag::PatternXya => "[[az,y],[xya,x],z]",
        }
    }
}

/// A failed necessary test: the element built from `inputs` by the rule of
/// `tag` is not nilpotent in `u(L)`.
#[derive(Clone, Debug)]
pub struct NecessaryFailure {
    pub tag: NecessaryTag,
    pub inputs: Vec<Vector>,
    pub witness: EnvElement,
    pub text: String,
}

#[derive(Clone, Debug)]
pub enum NecessaryOutcome {
    Pass,
    Failed(Box<NecessaryFailure>),
}

fn evaluate(env: &Envelope, tag: NecessaryTag, inputs: &[Vector]) -> EnvElement {
    let e: Vec<EnvElement> = inputs.iter().map(|v| env.from_lie(v)).collect();
    match tag {
        NecessaryTag::DerivedIdeal => e[0].clone(),
        NecessaryTag::FourGenerator => {
            let (x1, x2, x3, x4) = (&e[0], &e[1], &e[2], &e[3]);
            let a = env.bracket(&env.mul_all(&[x4.clone(), x3.clone(), x1.clone()]), x4);
            let b = env.bracket(&env.mul(x4, x1), x1);
            env.bracket(&env.bracket(&a, &b), x2)
        }
        NecessaryTag::PatternZby => {
            let (x, y, z, b) = (&e[0], &e[1], &e[2], &e[3]);
            let p = env.bracket(&env.mul_all(&[z.clone(), b.clone(), y.clone()]), z);
            let q = env.bracket(x, &env.mul(x, b));
            env.bracket(&env.bracket(&p, &q), y)
        }
        NecessaryTag::PatternXya => {
            let (x, y, z, a) = (&e[0], &e[1], &e[2], &e[3]);
            let p = env.bracket(&env.mul(a, z), y);
            let q = env.bracket(&env.mul_all(&[x.clone(), y.clone(), a.clone()]), x);
            env.bracket(&env.bracket(&p, &q), z)
        }
    }
}

fn derived_ideal(alg: &RestrictedLieAlgebra) -> crate::exactla::Subspace {
    let lie = alg.lie();
    let d = lie.derived();
    let second = lie.bracket_spaces(&lie.bracket_spaces(&d, &d), &lie.full());
    alg.restricted_closure(second.basis()).space
}

impl NecessaryFailure {
    /// Rebuild the witness from the inputs and confirm it is not nilpotent.
    pub fn verify(&self, alg: &RestrictedLieAlgebra) -> Result<bool, ClassifyError> {
        if self.tag == NecessaryTag::DerivedIdeal
            && !self.inputs.first().is_some_and(|v| derived_ideal(alg).contains(v))
        {
            return Ok(false);
        }
        let env = Envelope::new(alg)?;
        let w = evaluate(&env, self.tag, &self.inputs);
        Ok(w == self.witness && !env.is_nilpotent(&w))
    }
}

fn failure(env: &Envelope, tag: NecessaryTag, inputs: Vec<Vector>, witness: EnvElement) -> NecessaryOutcome {
    let text = env.format(&witness);
    NecessaryOutcome::Failed(Box::new(NecessaryFailure { tag, inputs, witness, text }))
}

/// A non-2-nilpotent element of a restricted ideal known not to be 2-nilpotent.
fn non_nilpotent_element(alg: &RestrictedLieAlgebra, ideal: &crate::exactla::Subspace, seed: u64) -> Option<Vector> {
    let chain = alg.nilpotency_chain(ideal);
    let candidates = ideal.basis().iter().chain(chain.last.basis());
    if let Some(v) = candidates.clone().find(|v| !alg.is_2nilpotent_element(v)) {
        return Some(v.clone());
    }
    let field = alg.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = ideal.basis();
    (0..RANDOM_TRIES).find_map(|_| {
        let coeffs: Vector = basis.iter().map(|_| field.random(&mut rng)).collect();
        let v = combine(field, alg.dim(), &coeffs, basis);
        (!alg.is_2nilpotent_element(&v)).then_some(v)
    })
}

/// Indices of basis vectors spanning a complement of the center.
fn complement_of_center(alg: &RestrictedLieAlgebra) -> Vec<usize> {
    let mut e = Echelon::new(alg.field(), alg.dim());
    for z in alg.center().basis() {
        e.insert(z);
    }
    (0..alg.dim()).filter(|&i| e.insert(&alg.basis_vector(i))).collect()
}

/// Ordered 4-tuples of distinct entries of `idx`.
fn ordered_quadruples(idx: &[usize]) -> impl Iterator<Item = [usize; 4]> + '_ {
    let m = idx.len();
    (0..m * m * m * m).filter_map(move |t| {
        let q = [t % m, t / m % m, t / (m * m) % m, t / (m * m * m)];
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| q[i] != q[j]));
        distinct.then(|| q.map(|i| idx[i]))
    })
}

/// Run the three necessary tests in order; the first failure wins.
pub fn necessary_tests(alg: &RestrictedLieAlgebra, seed: u64) -> Result<NecessaryOutcome, ClassifyError> {
    let ideal = derived_ideal(alg);
    if !alg.is_2nilpotent_ideal(&ideal) {
        if let Some(v) = non_nilpotent_element(alg, &ideal, seed) {
            let env = Envelope::new(alg)?;
            let w = env.from_lie(&v);
            return Ok(failure(&env, NecessaryTag::DerivedIdeal, vec![v], w));
        }
    }
    if alg.dim() > WORD_TEST_DIM || alg.lie().is_abelian() {
        return Ok(NecessaryOutcome::Pass);
    }
    let env = Envelope::new(alg)?;
    let sweep = |tag: NecessaryTag, idx: &[usize]| -> Option<NecessaryOutcome> {
        ordered_quadruples(idx).find_map(|q| {
            let inputs: Vec<Vector> = q.iter().map(|&i| alg.basis_vector(i)).collect();
            let w = evaluate(&env, tag, &inputs);
            (!env.is_nilpotent(&w)).then(|| failure(&env, tag, inputs, w))
        })
    };
    if let Some(f) = sweep(NecessaryTag::FourGenerator, &complement_of_center(alg)) {
        return Ok(f);
    }
    if alg.dim() <= PATTERN_TEST_DIM {
        let all: Vec<usize> = (0..alg.dim()).collect();
        for tag in [NecessaryTag::PatternZby, NecessaryTag::PatternXya] {
            if let Some(f) = sweep(tag, &all) {
                return Ok(f);
            }
        }
    }
    Ok(NecessaryOutcome::Pass)
}
