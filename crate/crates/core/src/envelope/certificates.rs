//! Reducedness of `u(L)` for abelian `L`, nilpotency of augmentation ideals,
//! and explicit solvability certificates built inside `u(L)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactla::{nullspace, Echelon, Subspace, Vector};
use crate::resla::{ResError, RestrictedLieAlgebra};
use crate::scalar::Scalar;

use super::{EnvElement, EnvError, Envelope};

/// Largest `dim u(L)` for which reducedness is also probed by sampling.
const SAMPLE_DIM_LIMIT: usize = 1 << 8;
const SAMPLE_COUNT: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducednessReport {
    /// `N = 0` in `L = T + N`.
    pub reduced: bool,
    pub torus_dim: usize,
    pub nilpotent_dim: usize,
    pub samples_checked: usize,
    /// A nonzero nilpotent element found by sampling.
    pub nilpotent_sample: Option<EnvElement>,
}

/// Decide whether `u(L)` is reduced for abelian `L` over a finite field.
pub fn reducedness_check(alg: &RestrictedLieAlgebra, seed: u64) -> Result<ReducednessReport, EnvError> {
    let (t, n) = alg.torus_decomposition().map_err(|e| match e {
        ResError::NotAbelian => EnvError::NotAbelian,
        e => EnvError::Res(e),
    })?;
    let mut report = ReducednessReport {
        reduced: n.is_zero(),
        torus_dim: t.dim(),
        nilpotent_dim: n.dim(),
        samples_checked: 0,
        nilpotent_sample: None,
    };
    let small = alg.field().size().is_some_and(|q| q <= 4);
    if small && alg.dim() <= super::MAX_GENERATORS && (1usize << alg.dim()) <= SAMPLE_DIM_LIMIT {
        let env = Envelope::new(alg)?;
        let f = env.field();
        // u(L) is commutative, so (sum c_m m)^2 = sum c_m^2 m^2
        let squares: Vec<Vector> = (0..env.dim() as u32).map(|m| env.to_dense(&env.square(&env.monomial(m)))).collect();
        let frobenius = |x: &Vector| {
            let mut out = vec![f.zero(); x.len()];
            for (c, sq) in x.iter().zip(&squares).filter(|(c, _)| !c.is_zero()) {
                let c2 = f.square(c);
                for (o, s) in out.iter_mut().zip(sq) {
                    *o = f.add(o, &f.mul(&c2, s));
                }
            }
            out
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SAMPLE_COUNT {
            let x = random_element(&env, &mut rng);
            report.samples_checked += 1;
            let mut y = env.to_dense(&x);
            for _ in 0..=alg.dim() {
                y = frobenius(&y);
            }
            if !x.is_zero() && y.iter().all(Scalar::is_zero) {
                report.nilpotent_sample = Some(x);
                break;
            }
        }
    }
    Ok(report)
}

pub(crate) fn random_element(env: &Envelope, rng: &mut ChaCha8Rng) -> EnvElement {
    let f = env.field();
    EnvElement::from_terms((0..env.dim() as u32).map(|m| (m, f.random(rng))).collect())
}

/// Dimension of the kernel of `x -> x^2` on commutative `u(L)` over GF(2^k).
///
/// `(sum c_m m)^2 = sum c_m^2 m^2`, and squaring is bijective on the
/// coefficients, so the kernel has the dimension of the relations among
/// the `m^2`. `u(L)` is reduced iff this is 0.
pub fn frobenius_kernel_dim(env: &Envelope) -> Result<usize, EnvError> {
    if !env.algebra().lie().is_abelian() {
        return Err(EnvError::NotAbelian);
    }
    if env.field().as_gf2k().is_none() {
        return Err(EnvError::PreconditionFailed("squaring must be bijective on scalars".into()));
    }
    let d = env.dim();
    let squares: Vec<Vector> = (0..d as u32).map(|m| env.to_dense(&env.square(&env.monomial(m)))).collect();
    let rows: Vec<Vector> = (0..d).map(|k| squares.iter().map(|s| s[k].clone()).collect()).collect();
    Ok(nullspace(env.field(), d, &rows).len())
}

/// Whether the augmentation ideal of `u(I)` is nilpotent, for a restricted
/// subalgebra `I` given by a subspace of `L`.
pub fn augmentation_nilpotent(alg: &RestrictedLieAlgebra, ideal: &Subspace) -> Result<bool, EnvError> {
    if ideal.is_zero() {
        return Ok(true);
    }
    let names = (0..ideal.dim()).map(|i| format!("i{i}")).collect();
    let sub = alg.rebase(ideal.basis(), names)?;
    let env = Envelope::new(&sub)?;
    let gens: Vec<EnvElement> = (0..env.rank()).map(|i| env.generator(i)).collect();
    // omega^(k+1) is the right ideal generated by omega^k * b_i
    let mut power: Vec<EnvElement> = (1..env.dim() as u32).map(|m| env.monomial(m)).collect();
    loop {
        let products: Vec<EnvElement> =
            power.iter().flat_map(|p| gens.iter().map(|g| env.mul(p, g))).collect();
        let next = right_closure(&env, &gens, products);
        if next.is_empty() {
            return Ok(true);
        }
        if next.len() == power.len() {
            return Ok(false);
        }
        power = next;
    }
}

fn sparse(e: &EnvElement) -> Vec<(usize, Scalar)> {
    e.terms().iter().map(|(m, c)| (*m as usize, c.clone())).collect()
}

fn right_closure(env: &Envelope, gens: &[EnvElement], start: Vec<EnvElement>) -> Vec<EnvElement> {
    let mut ech = Echelon::new(env.field(), env.dim());
    let mut kept = Vec::new();
    let mut work: Vec<EnvElement> = start;
    while let Some(x) = work.pop() {
        if ech.insert_sparse(&sparse(&x)) {
            work.extend(gens.iter().map(|g| env.mul(&x, g)));
            kept.push(x);
        }
    }
    kept
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    /// Elements of `L` independent modulo the center.
    pub complement: Vec<String>,
    pub checks: Vec<CertificateCheck>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Solvable filtration of `u(L)` for `L` of class at most 2 with
/// `dim L/Z(L) <= 3`.
///
/// With `x_1, x_2, x_3` independent modulo `Z = Z(L)`, `h` is spanned by the
/// products of `u(Z)` with monomials of degree at most 2 in the `x_i`, and
/// `k` by those of degree at most 1. Each containment of the chain
/// `u(L) > h > k > 0` is checked by direct computation in `u(L)`.
pub fn cond_ii_certificate(alg: &RestrictedLieAlgebra) -> Result<CertificateReport, EnvError> {
    if alg.lie().nilpotency_class().is_none_or(|c| c > 2) {
        return Err(EnvError::PreconditionFailed("nilpotency class exceeds 2".into()));
    }
    let center = alg.lie().center();
    let n = alg.dim();
    let r = n - center.dim();
    if r > 3 {
        return Err(EnvError::PreconditionFailed(format!("dim L/Z(L) = {r} exceeds 3")));
    }
    let mut span = center.clone();
    let mut basis: Vec<Vector> = Vec::new();
    let mut complement = Vec::new();
    for i in 0..n {
        let e = alg.basis_vector(i);
        if !span.contains(&e) {
            span = span.extend(std::slice::from_ref(&e));
            basis.push(e);
            complement.push(alg.name(i).to_string());
        }
    }
    basis.extend(center.basis().iter().cloned());
    let names: Vec<String> =
        (0..r).map(|i| format!("x{}", i + 1)).chain((0..n - r).map(|i| format!("z{}", i + 1))).collect();
    let adapted = alg.rebase(&basis, names)?;
    let env = Envelope::new(&adapted)?;

    let xmask: u32 = (1 << r) - 1;
    let xdeg = |m: u32| (m & xmask).count_ones();
    let in_h = |e: &EnvElement| e.terms().iter().all(|(m, _)| xdeg(*m) <= 2);
    let in_k = |e: &EnvElement| e.terms().iter().all(|(m, _)| xdeg(*m) <= 1);
    let all: Vec<u32> = (0..env.dim() as u32).collect();
    let h: Vec<u32> = all.iter().copied().filter(|&m| xdeg(m) <= 2).collect();
    let k: Vec<u32> = all.iter().copied().filter(|&m| xdeg(m) <= 1).collect();
    let br = |a: u32, b: u32| env.bracket(&env.monomial(a), &env.monomial(b));

    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool| checks.push(CertificateCheck { name: name.to_string(), passed });
    push("[h, u(L)] in h", h.iter().all(|&a| all.iter().all(|&b| in_h(&br(a, b)))));
    push("[u(L), u(L)] in h", all.iter().all(|&a| all.iter().filter(|&&b| b > a).all(|&b| in_h(&br(a, b)))));
    push("[k, h] in k", k.iter().all(|&a| h.iter().all(|&b| in_k(&br(a, b)))));
    let k_elems: Vec<EnvElement> = k.iter().map(|&m| env.monomial(m)).collect();
    let k_series = env.lie_derived_series(Some(&k_elems), 2);
    push("k'' = 0", k_series.derived_length().is_some_and(|l| l <= 2));

    if r == 3 {
        let x = |i: usize| env.generator(i);
        let lie_br = |i: usize, j: usize| env.from_lie(adapted.lie().bracket_basis(i, j));
        let xx = |i: usize, j: usize| env.mul(&x(i), &x(j));
        let e = [
            env.bracket(&xx(0, 1), &xx(0, 2)),
            env.bracket(&xx(0, 1), &xx(1, 2)),
            env.bracket(&xx(0, 2), &xx(1, 2)),
        ];
        let rhs = [
            env.mul(&lie_br(0, 2), &xx(0, 1)).add(&env.mul(&lie_br(0, 1), &xx(0, 2))),
            env.mul(&lie_br(0, 1), &xx(1, 2)).add(&env.mul(&lie_br(1, 2), &xx(0, 1))),
            env.mul(&lie_br(0, 2), &xx(1, 2)).add(&env.mul(&lie_br(1, 2), &xx(0, 2))),
        ];
        for i in 0..3 {
            push(&format!("e{} congruence mod k", i + 1), in_k(&e[i].add(&rhs[i])));
        }
        for i in 0..3 {
            for j in i + 1..3 {
                push(&format!("[e{}, e{}] in k", i + 1, j + 1), in_k(&env.bracket(&e[i], &e[j])));
            }
        }
    }
    let h_elems: Vec<EnvElement> = h.iter().map(|&m| env.monomial(m)).collect();
    let h_series = env.lie_derived_series(Some(&h_elems), 2);
    let second = h_series.terms.get(1).map_or(true, |t| t.iter().all(|e| in_k(e)));
    push("h'' in k", second);
    Ok(CertificateReport { complement, checks })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub pairs_checked: usize,
    pub failures: usize,
    pub base_commutative: bool,
    /// Name of the basis element outside `A`.
    pub y: String,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.base_commutative
    }
}

type Mat2 = [[EnvElement; 2]; 2];

/// Representation of `u(L)` on itself as a free left `u(A)`-module with
/// basis `1, y`, for an abelian restricted ideal `A` of codimension 1.
///
/// Right multiplication is `u(A)`-linear, so `r` acts by the 2x2 matrix
/// whose rows are the coordinates of `1*r` and `y*r`; with row vectors
/// `rho(rs) = rho(r) rho(s)`. Multiplicativity is checked on random pairs.
pub fn m2_embedding_check(
    alg: &RestrictedLieAlgebra,
    a: &Subspace,
    pairs: usize,
    seed: u64,
) -> Result<EmbeddingReport, EnvError> {
    let n = alg.dim();
    if a.dim() + 1 != n {
        return Err(EnvError::PreconditionFailed("A must have codimension 1".into()));
    }
    if !alg.lie().is_abelian_subspace(a) || !alg.is_restricted_ideal(a) {
        return Err(EnvError::PreconditionFailed("A must be an abelian restricted ideal".into()));
    }
    let yi = (0..n).find(|&i| !a.contains(&alg.basis_vector(i))).expect("codimension 1");
    let mut basis: Vec<Vector> = a.basis().to_vec();
    basis.push(alg.basis_vector(yi));
    let names = (0..n - 1).map(|i| format!("a{}", i + 1)).chain(["y".to_string()]).collect();
    let adapted = alg.rebase(&basis, names)?;
    let env = Envelope::new(&adapted)?;
    let ybit = 1u32 << (n - 1);

    let split = |e: &EnvElement| -> [EnvElement; 2] {
        let (mut lo, mut hi) = (Vec::new(), Vec::new());
        for (m, c) in e.terms() {
            if m & ybit == 0 {
                lo.push((*m, c.clone()));
            } else {
                hi.push((m ^ ybit, c.clone()));
            }
        }
        [EnvElement::from_terms(lo), EnvElement::from_terms(hi)]
    };
    let y = env.generator(n - 1);
    let rho = |r: &EnvElement| -> Mat2 { [split(r), split(&env.mul(&y, r))] };
    let mat_mul = |p: &Mat2, q: &Mat2| -> Mat2 {
        let entry = |i: usize, k: usize| env.mul(&p[i][0], &q[0][k]).add(&env.mul(&p[i][1], &q[1][k]));
        [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
    };

    let base_commutative = (0..n - 1)
        .all(|i| (i + 1..n - 1).all(|j| env.bracket(&env.generator(i), &env.generator(j)).is_zero()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..pairs {
        let r = random_element(&env, &mut rng);
        let s = random_element(&env, &mut rng);
        if rho(&env.mul(&r, &s)) != mat_mul(&rho(&r), &rho(&s)) {
            failures += 1;
        }
    }
    Ok(EmbeddingReport { pairs_checked: pairs, failures, base_commutative, y: alg.name(yi).to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn one_dim(square: bool) -> RestrictedLieAlgebra {
        let f = Field::gf2();
        let p = if square { f.one() } else { f.zero() };
        RestrictedLieAlgebra::from_parts(&f, vec!["a".into()], &[], vec![vec![p]]).unwrap()
    }

    fn h3() -> RestrictedLieAlgebra {
        let f = Field::gf2();
        let e3 = vec![f.zero(), f.zero(), f.one()];
        let z = vec![f.zero(); 3];
        RestrictedLieAlgebra::from_parts(&f, vec!["e1".into(), "e2".into(), "e3".into()], &[(0, 1, e3)], vec![z; 3])
            .unwrap()
    }

    #[test]
    fn toral_line_is_reduced() {
        let r = reducedness_check(&one_dim(true), 1).unwrap();
        assert!(r.reduced && r.nilpotent_sample.is_none());
        assert_eq!(frobenius_kernel_dim(&Envelope::new(&one_dim(true)).unwrap()).unwrap(), 0);
        let r = reducedness_check(&one_dim(false), 1).unwrap();
        assert!(!r.reduced);
        assert!(r.nilpotent_sample.is_some());
        assert_eq!(frobenius_kernel_dim(&Envelope::new(&one_dim(false)).unwrap()).unwrap(), 1);
    }

    #[test]
    fn heisenberg_certificates() {
        let g = h3();
        let rep = cond_ii_certificate(&g).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let f = g.field().clone();
        let a = g.lie().span(&[g.basis_vector(1), g.basis_vector(2)]);
        let e = m2_embedding_check(&g, &a, 50, 7).unwrap();
        assert!(e.passed(), "{e:?}");
        assert_eq!(f, Field::gf2());
        assert!(augmentation_nilpotent(&g, &g.lie().full()).unwrap());
    }
}
