//! 2-nilpotent restricted ideals used as the core `I` before matching `L/I`.

use crate::exactla::{nullspace, Quotient, Subspace, Vector};
use crate::resla::RestrictedLieAlgebra;
use crate::scalar::{Field, Scalar};

use super::ClassifyError;

/// Outcome of the core fixpoint.
#[derive(Clone, Debug)]
pub enum CoreOutcome {
    Core(Subspace),
    /// `<[[L', L'], L]>_2` of some quotient is not 2-nilpotent; the subspace
    /// is that ideal pulled back to `L`.
    NotNilpotent(Subspace),
}

/// `{z in S : z^[2]^m = 0 for some m}` for a subspace `S` of central
/// elements with `S^[2]` inside `S`.
///
/// On such `S` the power map is additive and 2-semilinear, so
/// `sigma^m(sum c_i s_i) = sum c_i^(2^m) sigma^m(s_i)`; taking `2^m`-th roots
/// coordinatewise turns the kernel into a linear nullspace. Returns `None`
/// when a needed root does not exist in the field.
pub fn nilpotent_locus(alg: &RestrictedLieAlgebra, space: &Subspace) -> Option<Subspace> {
    let field = alg.field();
    let basis = space.basis();
    let m = basis.len();
    if m == 0 {
        return Some(space.clone());
    }
    let images: Vec<Vector> = basis
        .iter()
        .map(|b| {
            let mut x = b.clone();
            for _ in 0..m {
                x = alg.pmap_eval(&x);
            }
            x
        })
        .collect();
    let mut rooted = Vec::with_capacity(m);
    for v in &images {
        let mut r = Vec::with_capacity(v.len());
        for s in v {
            let mut t = s.clone();
            for _ in 0..m {
                t = field.sqrt(&t).ok()?;
            }
            r.push(t);
        }
        rooted.push(r);
    }
    let n = alg.dim();
    let rows: Vec<Vector> = (0..n).map(|k| rooted.iter().map(|v| v[k].clone()).collect()).collect();
    let kernel: Vec<Vector> = nullspace(field, m, &rows)
        .into_iter()
        .map(|c| crate::exactla::combine(field, n, &c, basis))
        .collect();
    Some(alg.lie().span(&kernel))
}

/// Preimage in `L` of a subspace of `L / core`.
pub(crate) fn pull_back(core: &Subspace, q: &Quotient, sub: &Subspace) -> Subspace {
    let lifted: Vec<Vector> = sub.basis().iter().map(|v| q.lift(v)).collect();
    core.extend(&lifted)
}

/// Fixpoint of two saturation steps on successive quotients: add
/// `<[[L', L'], L]>_2` when it is 2-nilpotent, then the 2-nilpotent part of
/// `L' ∩ Z(L)`.
pub fn nilpotent_core(alg: &RestrictedLieAlgebra) -> Result<CoreOutcome, ClassifyError> {
    saturate(alg, alg.lie().zero_space())
}

/// The same fixpoint started from a 2-nilpotent restricted ideal.
pub fn saturate(alg: &RestrictedLieAlgebra, start: Subspace) -> Result<CoreOutcome, ClassifyError> {
    let mut core = start;
    loop {
        let (quot, q) = alg.quotient(&core)?;
        let lie = quot.lie();
        let derived = lie.derived();
        let second = lie.bracket_spaces(&lie.bracket_spaces(&derived, &derived), &lie.full());
        let closure = quot.restricted_closure(second.basis()).space;
        if !closure.is_zero() {
            if !quot.is_2nilpotent_ideal(&closure) {
                return Ok(CoreOutcome::NotNilpotent(pull_back(&core, &q, &closure)));
            }
            core = pull_back(&core, &q, &closure);
            continue;
        }
        let central = derived.intersect(&lie.center()).map_err(ClassifyError::from)?;
        // powers of central elements stay central
        let stable = quot.restricted_closure(central.basis()).space;
        let Some(locus) = nilpotent_locus(&quot, &stable) else {
            return Err(ClassifyError::UnsupportedField(quot.field().name()));
        };
        if locus.is_zero() {
            return Ok(CoreOutcome::Core(core));
        }
        core = pull_back(&core, &q, &locus);
    }
}

/// Cores obtained by adding the restricted closure of every nonempty subset
/// of a basis of the 2-nilpotent central locus of `L / core`.
pub fn alternative_cores(alg: &RestrictedLieAlgebra, core: &Subspace) -> Result<Vec<Subspace>, ClassifyError> {
    let (quot, q) = alg.quotient(core)?;
    let center = quot.lie().center();
    let Some(locus) = nilpotent_locus(&quot, &center) else {
        return Ok(Vec::new());
    };
    let basis = locus.basis();
    let mut out: Vec<Subspace> = Vec::new();
    for mask in 1u32..(1 << basis.len().min(12)) {
        let gens: Vec<Vector> =
            basis.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, b)| b.clone()).collect();
        let closure = quot.restricted_closure(&gens).space;
        let candidate = pull_back(core, &q, &closure);
        if !out.contains(&candidate) {
            out.push(candidate);
        }
    }
    Ok(out)
}

/// Nonzero vectors of `F^d` up to scalars (first nonzero coordinate 1), or
/// `None` when there are more than `cap` of them or `F` is infinite.
fn projective_space(field: &Field, d: usize, cap: usize) -> Option<Vec<Vector>> {
    let elems = field.elements()?;
    let q = elems.len();
    let count = (0..d).try_fold(0usize, |acc, _| acc.checked_mul(q)?.checked_add(1))?;
    if count > cap {
        return None;
    }
    let mut out = Vec::with_capacity(count);
    for lead in 0..d {
        let tail = d - lead - 1;
        for t in 0..q.pow(tail as u32) {
            let mut v = vec![field.zero(); d];
            v[lead] = field.one();
            let mut r = t;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = elems[r % q].clone();
                r /= q;
            }
            out.push(v);
        }
    }
    Some(out)
}

/// Cores `<A'>_2` (saturated, together with `core`) for `A = L` and every
/// hyperplane `A` containing `L' + core` whose derived ideal is 2-nilpotent.
pub fn derived_cores(alg: &RestrictedLieAlgebra, core: &Subspace, cap: usize) -> Result<Vec<Subspace>, ClassifyError> {
    let lie = alg.lie();
    let field = alg.field();
    let base = lie.derived().sum(core)?;
    let quotient = lie.full().quotient(&base)?;
    let d = quotient.dim();
    let mut hyperplanes = vec![lie.full()];
    if let Some(forms) = projective_space(field, d, cap) {
        for phi in forms {
            let kernel: Vec<Vector> = nullspace(field, d, &[phi]).iter().map(|v| quotient.lift(v)).collect();
            hyperplanes.push(base.extend(&kernel));
        }
    }
    let mut out: Vec<Subspace> = Vec::new();
    for a in hyperplanes {
        let derived = lie.bracket_spaces(&a, &a);
        let mut gens = core.basis().to_vec();
        gens.extend(derived.basis().iter().cloned());
        let start = alg.restricted_closure(&gens).space;
        if !alg.is_2nilpotent_ideal(&start) {
            continue;
        }
        if let CoreOutcome::Core(c) = saturate(alg, start)? {
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    Ok(out)
}

pub(crate) fn scalar_ratio(a: &[Scalar], b: &[Scalar], field: &Field) -> Option<Scalar> {
    // r with a = r b, for b nonzero
    let k = b.iter().position(|s| !s.is_zero())?;
    let r = field.div(&a[k], &b[k]).ok()?;
    a.iter().zip(b).all(|(x, y)| *x == field.mul(&r, y)).then_some(r)
}
