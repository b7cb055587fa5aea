//! The 7-dimensional algebra over GF(2)(X, Y) that has no abelian restricted
//! ideal of codimension 1 but is expected to acquire one modulo a
//! 2-nilpotent ideal after adjoining `sqrt(X)` and `sqrt(Y)`.

use serde::Serialize;

use crate::envelope::Envelope;
use crate::exactla::Vector;
use crate::resla::RestrictedLieAlgebra;
use crate::scalar::{ExtensionSpec, Field, RatFunc, Scalar};

use super::Builder;

const NAMES: [&str; 7] = ["x", "x1", "x2", "x3", "z1", "z2", "z3"];

/// Brackets `[x,x1] = [x,x3] = z1`, `[x,x2] = z2`, `[x1,x2] = z3`,
/// `[x1,x3] = (b/a) z3`, `[x2,x3] = 0`; powers `z1 -> z1`, `z2 -> a z1`,
/// `z3 -> b z1`, `x_i -> 0`, with `a`, `b` given.
fn build(field: &Field, a: &Scalar, b: &Scalar) -> RestrictedLieAlgebra {
    let mut bld = Builder::new(field, NAMES.iter().map(|s| s.to_string()).collect());
    let b_over_a = field.div(b, a).expect("a is nonzero");
    bld.bracket_basis(0, 1, 4);
    bld.bracket_basis(0, 3, 4);
    bld.bracket_basis(0, 2, 5);
    bld.bracket_basis(1, 2, 6);
    bld.bracket(1, 3, &[(6, b_over_a)]);
    bld.power_basis(4, 4);
    bld.power(5, &[(4, a.clone())]);
    bld.power(6, &[(4, b.clone())]);
    bld.build().expect("the example satisfies the axioms")
}

fn x() -> Scalar {
    Scalar::rat(RatFunc::x())
}

fn y() -> Scalar {
    Scalar::rat(RatFunc::y())
}

/// The algebra over GF(2)(X, Y) with `a = X`, `b = Y`.
pub(crate) fn rational_example() -> RestrictedLieAlgebra {
    build(&Field::ratfunc2(), &x(), &y())
}

/// Base change through the square-root adjunction; there `a = X^2`, `b = Y^2`.
pub(crate) fn rational_extended() -> RestrictedLieAlgebra {
    let f = Field::ratfunc2();
    let ext = f.extend(&ExtensionSpec::SqrtXY).expect("sqrt adjunction");
    rational_example().base_change(&ext)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalExampleReport {
    /// Normal form of `[[x, x*x1], [x1, x1*x2*x3], x2]` in `u(L)`.
    pub commutator: String,
    pub commutator_nonzero: bool,
    /// `v = sqrt(a) z1 + z2` and `w = sqrt(b) z1 + z3` in the extension.
    pub v: String,
    pub w: String,
    pub v_square_zero: bool,
    pub w_square_zero: bool,
    pub j_central: bool,
    pub j_restricted_ideal: bool,
    pub j_2nilpotent: bool,
    /// Restricted ideal generated by `x`, `a x1 + x2`, `b x1 + x3` modulo `J`.
    pub ideal_dim: usize,
    pub quotient_dim: usize,
    pub ideal_codim_1: bool,
    pub ideal_abelian: bool,
    /// A nonzero bracket of two elements of that ideal, if any.
    pub ideal_nonzero_bracket: Option<String>,
}

pub fn rational_example_report() -> RationalExampleReport {
    let base = rational_example();
    let env = Envelope::new(&base).expect("dimension 7");
    let g = |i: usize| env.generator(i);
    let left = env.bracket(&g(0), &env.mul(&g(0), &g(1)));
    let right = env.bracket(&g(1), &env.mul_all(&[g(1), g(2), g(3)]));
    let c = env.bracket_chain(&[left, right, g(2)]);

    let ext = rational_extended();
    let f = ext.field().clone();
    let e = |i: usize| ext.basis_vector(i);
    let comb = |terms: &[(Scalar, usize)]| -> Vector {
        let mut v = vec![f.zero(); 7];
        for (s, i) in terms {
            v[*i] = v[*i].add(s);
        }
        v
    };
    // in the extension a = X^2 and b = Y^2, with square roots X and Y
    let (a1, b1) = (x(), y());
    let (a, b) = (f.square(&a1), f.square(&b1));
    let v = comb(&[(a1, 4), (f.one(), 5)]);
    let w = comb(&[(b1, 4), (f.one(), 6)]);
    let vw = ext.lie().span(&[v.clone(), w.clone()]);
    let center = ext.center();
    let (quot, q) = ext.quotient(&vw).expect("J is a restricted ideal");
    let gens: Vec<Vector> = [e(0), comb(&[(a, 1), (f.one(), 2)]), comb(&[(b, 1), (f.one(), 3)])]
        .iter()
        .map(|u| q.project(u))
        .collect();
    let ideal = quot.restricted_closure(&gens).space;
    let basis = ideal.basis();
    let nonzero = basis.iter().enumerate().find_map(|(i, u)| {
        basis[i + 1..].iter().map(|t| quot.bracket(u, t)).find(|r| !crate::exactla::is_zero(r))
    });

    RationalExampleReport {
        commutator: env.format(&c),
        commutator_nonzero: !c.is_zero(),
        v: ext.describe(&v),
        w: ext.describe(&w),
        v_square_zero: crate::exactla::is_zero(&ext.pmap_eval(&v)),
        w_square_zero: crate::exactla::is_zero(&ext.pmap_eval(&w)),
        j_central: center.contains_subspace(&vw),
        j_restricted_ideal: ext.is_restricted_ideal(&vw),
        j_2nilpotent: ext.is_2nilpotent_ideal(&vw),
        ideal_dim: ideal.dim(),
        quotient_dim: quot.dim(),
        ideal_codim_1: ideal.dim() + 1 == quot.dim(),
        ideal_abelian: nonzero.is_none(),
        ideal_nonzero_bracket: nonzero.map(|r| quot.describe(&r)),
    }
}
