//! Search for nonzero elements `[[a, b], [c, d], e]` of `U(L)`.
//!
//! `U(L)` has no zero divisors, so a nonzero element of the ideal generated
//! by such commutators is not nilpotent and `U(L)` is not Lie solvable.
//! Exhausting the budget proves nothing.

use crate::resla::LieAlgebra;

use super::{Exponents, OrdError, UEnvElement, UEnvelope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// `[[x4 x3 x1, x4], [x4 x1, x1], x2]` on `(x1, x2, x3, x4)`.
    FourGenerator,
    /// `[[z b y, z], [x, x b], y]` on `(x, y, z, b)`.
    Zby,
    /// `[[a z, y], [x y a, x], z]` on `(x, y, z, a)`.
    Xya,
    /// `[[a, b], [c, d], e]`.
    Generic,
}

impl Pattern {
    pub const ALL: [Pattern; 4] = [Pattern::FourGenerator, Pattern::Zby, Pattern::Xya, Pattern::Generic];

    pub fn arity(self) -> usize {
        match self {
            Pattern::Generic => 5,
            _ => 4,
        }
    }

    /// Patterns with named roles take pairwise distinct arguments.
    fn distinct(self) -> bool {
        self != Pattern::Generic
    }

    pub fn evaluate(self, u: &UEnvelope, args: &[UEnvElement]) -> UEnvElement {
        let m = |f: &[&UEnvElement]| u.mul_all(&f.iter().map(|e| (*e).clone()).collect::<Vec<_>>());
        match self {
            Pattern::FourGenerator => {
                let (x1, x2, x3, x4) = (&args[0], &args[1], &args[2], &args[3]);
                let a = u.bracket(&m(&[x4, x3, x1]), x4);
                let b = u.bracket(&m(&[x4, x1]), x1);
                u.bracket(&u.bracket(&a, &b), x2)
            }
            Pattern::Zby => {
                let (x, y, z, b) = (&args[0], &args[1], &args[2], &args[3]);
                let p = u.bracket(&m(&[z, b, y]), z);
                let q = u.bracket(x, &m(&[x, b]));
                u.bracket(&u.bracket(&p, &q), y)
            }
            Pattern::Xya => {
                let (x, y, z, a) = (&args[0], &args[1], &args[2], &args[3]);
                let p = u.bracket(&m(&[a, z]), y);
                let q = u.bracket(&m(&[x, y, a]), x);
                u.bracket(&u.bracket(&p, &q), z)
            }
            Pattern::Generic => {
                let ab = u.bracket(&args[0], &args[1]);
                let cd = u.bracket(&args[2], &args[3]);
                u.bracket(&u.bracket(&ab, &cd), &args[4])
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessBudget {
    /// Evaluations allowed per pattern.
    pub max_evaluations: usize,
    /// Arguments are PBW monomials of degree `1..=max_degree`.
    pub max_degree: u32,
}

impl Default for WitnessBudget {
    fn default() -> Self {
        WitnessBudget { max_evaluations: 5000, max_degree: 2 }
    }
}

#[derive(Clone, Debug)]
pub enum WitnessOutcome {
    Witness { pattern: Pattern, args: Vec<String>, element: UEnvElement, text: String },
    Exhausted { evaluations: usize },
}

impl WitnessOutcome {
    pub fn is_witness(&self) -> bool {
        matches!(self, WitnessOutcome::Witness { .. })
    }
}

/// Monomials of total degree `1..=max_degree` in `n` variables, by degree
/// and then lexicographically.
fn monomials(n: usize, max_degree: u32) -> Vec<Exponents> {
    fn fill(n: usize, i: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(cur.clone());
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            fill(n, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for d in 1..=max_degree {
        fill(n, 0, d, &mut vec![0; n], &mut out);
    }
    out
}

/// First nonzero pattern evaluation. Patterns are tried in order; argument
/// tuples by largest index used, then lexicographically.
pub fn witness_search(lie: &LieAlgebra, budget: WitnessBudget) -> Result<WitnessOutcome, OrdError> {
    let u = UEnvelope::new(lie)?;
    let monos = monomials(lie.dim(), budget.max_degree);
    let args: Vec<UEnvElement> = monos.iter().map(|m| u.monomial(m.clone())).collect();
    let m = args.len();
    let mut evaluations = 0;
    for pattern in Pattern::ALL {
        let k = pattern.arity();
        if m == 0 || (pattern.distinct() && m < k) {
            continue;
        }
        let mut done = 0;
        'shells: for top in 0..m {
            // tuples over `0..=top` that use `top`, in lexicographic order
            let width = top + 1;
            for t in 0..width.pow(k as u32) {
                let idx: Vec<usize> = (0..k).map(|p| t / width.pow((k - 1 - p) as u32) % width).collect();
                if !idx.contains(&top) || (pattern.distinct() && (0..k).any(|i| idx[i + 1..].contains(&idx[i]))) {
                    continue;
                }
                if done >= budget.max_evaluations {
                    break 'shells;
                }
                done += 1;
                let tuple: Vec<UEnvElement> = idx.iter().map(|&i| args[i].clone()).collect();
                let w = pattern.evaluate(&u, &tuple);
                if !w.is_zero() {
                    let text = u.format(&w);
                    let names = idx.iter().map(|&i| u.format(&args[i])).collect();
                    return Ok(WitnessOutcome::Witness { pattern, args: names, element: w, text });
                }
            }
        }
        evaluations += done;
    }
    Ok(WitnessOutcome::Exhausted { evaluations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    #[test]
    fn abelian_is_exhausted() {
        let lie = LieAlgebra::abelian(&Field::gf2(), vec!["a".into(), "b".into(), "c".into(), "d".into()]);
        assert!(!witness_search(&lie, WitnessBudget::default()).unwrap().is_witness());
    }

    #[test]
    fn monomials_by_degree() {
        let m = monomials(2, 2);
        assert_eq!(m, vec![vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
    }
}
