//! Matchers for the five sufficient shapes of `L / I` and the relation
//! checks that certify a match.

use crate::envelope::cond_ii_certificate;
use crate::exactla::{combine, is_zero, matrix, nullspace, scale, Subspace, Vector};
use crate::resla::{LieAlgebra, RestrictedLieAlgebra};
use crate::scalar::Field;

use super::core_ideal::scalar_ratio;
use super::{ClassifyError, ConditionTag};

/// Projective lines are enumerated only over fields up to this size.
const PROJECTIVE_FIELD_LIMIT: u64 = 4096;
/// The filtration certificate for class 2 is built up to this `dim L`.
const FILTRATION_DIM: usize = 10;

/// Data found by a matcher, in coordinates of the matched algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchData {
    AbelianIdeal { ideal: Subspace },
    Class2 { filtration: bool },
    /// `xs` holds `x1, x2` for the two-eigenvector shape and `x` otherwise.
    Eigen { y: Vector, xs: Vec<Vector>, h: Vec<Vector> },
}

impl MatchData {
    pub fn describe(&self, alg: &RestrictedLieAlgebra) -> Vec<String> {
        match self {
            MatchData::AbelianIdeal { ideal } => {
                ideal.basis().iter().enumerate().map(|(i, v)| format!("a{} = {}", i + 1, alg.describe(v))).collect()
            }
            MatchData::Class2 { .. } => {
                let z = alg.center();
                vec![format!("dim L = {}", alg.dim()), format!("dim Z = {}", z.dim())]
            }
            MatchData::Eigen { y, xs, h } => {
                let mut out = Vec::new();
                if xs.len() == 1 {
                    out.push(format!("x = {}", alg.describe(&xs[0])));
                } else {
                    out.extend(xs.iter().enumerate().map(|(i, x)| format!("x{} = {}", i + 1, alg.describe(x))));
                }
                out.push(format!("y = {}", alg.describe(y)));
                out.extend(h.iter().enumerate().map(|(i, v)| format!("h{} = {}", i + 1, alg.describe(v))));
                out
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub text: String,
    pub holds: bool,
}

fn rel(text: impl Into<String>, holds: bool) -> Relation {
    Relation { text: text.into(), holds }
}

enum Forms {
    Abelian,
    /// Linear forms (in coordinates of the given basis) whose kernels are
    /// exactly the commuting hyperplanes.
    Constrained(Subspace),
    Impossible,
}

/// Each coordinate of `[e_i, e_j]` is an alternating form `B_k`. A
/// hyperplane `ker phi` commutes iff every nonzero `B_k` has rank 2 and
/// `phi` lies in its row space.
fn commuting_hyperplane_forms(lie: &LieAlgebra, basis: &[Vector]) -> Forms {
    let field = lie.field();
    let (n, r) = (lie.dim(), basis.len());
    let mut table = vec![vec![lie.zero_vector(); r]; r];
    for i in 0..r {
        for j in i + 1..r {
            table[i][j] = lie.bracket(&basis[i], &basis[j]);
            table[j][i] = table[i][j].clone();
        }
    }
    let mut w = Subspace::full(field, r);
    let mut abelian = true;
    for k in 0..n {
        let rows: Vec<Vector> = (0..r).map(|i| (0..r).map(|j| table[i][j][k].clone()).collect()).collect();
        if rows.iter().all(|row| is_zero(row)) {
            continue;
        }
        abelian = false;
        let space = Subspace::span_of(field, r, &rows);
        if space.dim() > 2 {
            return Forms::Impossible;
        }
        w = w.intersect_unchecked(&space);
    }
    if abelian {
        Forms::Abelian
    } else if w.is_zero() {
        Forms::Impossible
    } else {
        Forms::Constrained(w)
    }
}

/// Representatives of the nonzero points of `P(w)` for `dim w <= 2`.
fn projective_points(field: &Field, w: &Subspace) -> Vec<Vector> {
    let b = w.basis();
    match b.len() {
        0 => Vec::new(),
        1 => vec![b[0].clone()],
        _ => {
            let mut out = vec![b[0].clone()];
            match field.size().filter(|&q| q <= PROJECTIVE_FIELD_LIMIT).and_then(|_| field.elements()) {
                Some(elems) => {
                    for c in elems {
                        let mut v = b[1].clone();
                        crate::exactla::add_scaled(field, &mut v, &c, &b[0]);
                        out.push(v);
                    }
                }
                None => {
                    out.push(b[1].clone());
                    out.push(crate::exactla::add(&b[0], &b[1]));
                }
            }
            out
        }
    }
}

/// `ker phi` inside `span(basis)`, as vectors of the ambient algebra.
fn kernel_in(field: &Field, ambient: usize, basis: &[Vector], phi: &[crate::scalar::Scalar]) -> Vec<Vector> {
    nullspace(field, basis.len(), &[phi.to_vec()])
        .into_iter()
        .map(|c| combine(field, ambient, &c, basis))
        .collect()
}

/// Every abelian ideal of codimension at most 1, up to the enumeration
/// limit on projective lines; exact for `L'` non-central.
pub(crate) fn abelian_codim1_candidates(lie: &LieAlgebra) -> Vec<Subspace> {
    let n = lie.dim();
    if lie.is_abelian() {
        return vec![lie.full()];
    }
    let c = lie.centralizer(&lie.derived());
    let candidates: Vec<Subspace> = if c.dim() + 1 == n {
        vec![c]
    } else if c.dim() == n {
        let std: Vec<Vector> = (0..n).map(|i| lie.basis_vector(i)).collect();
        match commuting_hyperplane_forms(lie, &std) {
            Forms::Constrained(w) => projective_points(lie.field(), &w)
                .iter()
                .map(|phi| lie.span(&kernel_in(lie.field(), n, &std, phi)))
                .collect(),
            _ => Vec::new(),
        }
    } else {
        Vec::new()
    };
    candidates.into_iter().filter(|a| a.dim() + 1 >= n && lie.is_abelian_subspace(a)).collect()
}

fn match_abelian_ideal(alg: &RestrictedLieAlgebra) -> Option<Subspace> {
    abelian_codim1_candidates(alg.lie()).into_iter().find(|a| alg.is_restricted_ideal(a))
}

/// `y` with `ad y` the identity on `(L' + Z) / Z`, and the eigenvalue-1
/// eigenspace `E` of `ad y`, when `L' + Z` has codimension 1 and
/// `[E, E]` is central.
pub(crate) fn eigen_split(lie: &LieAlgebra) -> Result<Option<(Vector, Vec<Vector>)>, ClassifyError> {
    let field = lie.field();
    let n = lie.dim();
    let z = lie.center();
    let d = lie.derived().sum(&z)?;
    if d.dim() + 1 != n {
        return Ok(None);
    }
    let Some(y0) = (0..n).map(|i| lie.basis_vector(i)).find(|v| !d.contains(v)) else {
        return Ok(None);
    };
    let q = d.quotient(&z)?;
    if q.dim() == 0 {
        return Ok(None);
    }
    let mut lambda = None;
    for b in q.lifted_basis() {
        let Some(r) = scalar_ratio(&q.project(&lie.bracket(&y0, b)), &q.project(b), field) else {
            return Ok(None);
        };
        if *lambda.get_or_insert_with(|| r.clone()) != r {
            return Ok(None);
        }
    }
    let lambda = lambda.expect("nonempty quotient basis");
    if lambda.is_zero() {
        return Ok(None);
    }
    let y = scale(field, &field.inv(&lambda)?, &y0);
    let e = matrix::kernel(field, &matrix::shift(&lie.ad(&y), &field.one()));
    if e.len() != q.dim() {
        return Ok(None);
    }
    let central = e.iter().enumerate().all(|(i, u)| e[i + 1..].iter().all(|v| z.contains(&lie.bracket(u, v))));
    Ok(central.then_some((y, e)))
}

/// Kernel of the power map on an abelian span, via coordinatewise roots.
fn square_zero_part(alg: &RestrictedLieAlgebra, basis: &[Vector]) -> Option<Vec<Vector>> {
    let field = alg.field();
    let n = alg.dim();
    let squares: Vec<Vector> = basis.iter().map(|b| alg.pmap_eval(b)).collect();
    let rows: Vec<Vector> = (0..n).map(|k| squares.iter().map(|s| s[k].clone()).collect()).collect();
    nullspace(field, basis.len(), &rows)
        .into_iter()
        .map(|c| {
            let roots = c.iter().map(|s| field.sqrt(s).ok()).collect::<Option<Vec<_>>>()?;
            Some(combine(field, n, &roots, basis))
        })
        .collect()
}

/// Candidate `(x, H)` splittings of the eigenspace `e`.
fn hyperplane_candidates(alg: &RestrictedLieAlgebra, e: &[Vector]) -> Vec<(Vector, Vec<Vector>)> {
    let field = alg.field();
    let n = alg.dim();
    let split = |phi: &[crate::scalar::Scalar]| -> Option<(Vector, Vec<Vector>)> {
        let i = phi.iter().position(|s| !s.is_zero())?;
        Some((e[i].clone(), kernel_in(field, n, e, phi)))
    };
    match commuting_hyperplane_forms(alg.lie(), e) {
        Forms::Impossible => Vec::new(),
        Forms::Constrained(w) => projective_points(field, &w).iter().filter_map(|phi| split(phi)).collect(),
        Forms::Abelian => {
            // only hyperplanes of square-zero elements can serve
            let Some(k) = square_zero_part(alg, e) else {
                return Vec::new();
            };
            let ks = alg.lie().span(&k);
            if ks.dim() == e.len() {
                vec![(e[0].clone(), e[1..].to_vec())]
            } else if ks.dim() + 1 == e.len() {
                let x = e.iter().find(|v| !ks.contains(v)).expect("proper subspace").clone();
                vec![(x, ks.basis().to_vec())]
            } else {
                Vec::new()
            }
        }
    }
}

/// `c` with `c^2 [x, h]^[2] = h^[2]` on the basis of `h`, if one exists.
fn matching_scale(alg: &RestrictedLieAlgebra, x: &[crate::scalar::Scalar], h: &[Vector]) -> Option<crate::scalar::Scalar> {
    let field = alg.field();
    let mut c2 = None;
    for v in h {
        let a = alg.pmap_eval(&alg.bracket(x, v));
        let b = alg.pmap_eval(v);
        if is_zero(&a) {
            if !is_zero(&b) {
                return None;
            }
            continue;
        }
        let r = scalar_ratio(&b, &a, field)?;
        if *c2.get_or_insert_with(|| r.clone()) != r {
            return None;
        }
    }
    match c2 {
        None => Some(field.one()),
        Some(r) if r.is_zero() => None,
        Some(r) => field.sqrt(&r).ok(),
    }
}

/// Look for the shape `tag` in `alg` (normally a quotient by a core).
pub fn match_condition(alg: &RestrictedLieAlgebra, tag: ConditionTag) -> Result<Option<MatchData>, ClassifyError> {
    let lie = alg.lie();
    match tag {
        ConditionTag::CodimAbelian => Ok(match_abelian_ideal(alg).map(|ideal| MatchData::AbelianIdeal { ideal })),
        ConditionTag::Class2Codim3 => {
            let fits = lie.nilpotency_class() == Some(2) && alg.dim() - lie.center().dim() == 3;
            Ok(fits.then_some(MatchData::Class2 { filtration: alg.dim() <= FILTRATION_DIM }))
        }
        ConditionTag::TwoEigenvectors => {
            let Some((y, e)) = eigen_split(alg.lie())? else {
                return Ok(None);
            };
            Ok((e.len() == 2).then_some(MatchData::Eigen { y, xs: e, h: Vec::new() }))
        }
        ConditionTag::StronglyAbelianH | ConditionTag::MatchedSquaresH => {
            let Some((y, e)) = eigen_split(alg.lie())? else {
                return Ok(None);
            };
            if e.len() < 2 {
                return Ok(None);
            }
            for (x, h) in hyperplane_candidates(alg, &e) {
                let data = if tag == ConditionTag::StronglyAbelianH {
                    if !h.iter().all(|v| is_zero(&alg.pmap_eval(v))) {
                        continue;
                    }
                    MatchData::Eigen { y: y.clone(), xs: vec![x], h }
                } else {
                    let Some(c) = matching_scale(alg, &x, &h) else {
                        continue;
                    };
                    MatchData::Eigen { y: y.clone(), xs: vec![scale(alg.field(), &c, &x)], h }
                };
                if check_relations(alg, tag, &data)?.iter().all(|r| r.holds) {
                    return Ok(Some(data));
                }
            }
            Ok(None)
        }
    }
}

/// Every relation that makes `data` an instance of `tag` in `alg`.
pub fn check_relations(
    alg: &RestrictedLieAlgebra,
    tag: ConditionTag,
    data: &MatchData,
) -> Result<Vec<Relation>, ClassifyError> {
    let lie = alg.lie();
    let n = alg.dim();
    let mut out = Vec::new();
    match (tag, data) {
        (ConditionTag::CodimAbelian, MatchData::AbelianIdeal { ideal }) => {
            out.push(rel(format!("codim A = {} <= 1", n - ideal.dim()), ideal.ambient() == n && ideal.dim() + 1 >= n));
            out.push(rel("A abelian", lie.is_abelian_subspace(ideal)));
            out.push(rel("A restricted ideal", alg.is_restricted_ideal(ideal)));
        }
        (ConditionTag::Class2Codim3, MatchData::Class2 { filtration }) => {
            out.push(rel("nilpotent of class 2", lie.nilpotency_class() == Some(2)));
            out.push(rel("dim L/Z = 3", n - lie.center().dim() == 3));
            if *filtration {
                out.push(rel("filtration containments of u(L)", cond_ii_certificate(alg)?.passed()));
            }
        }
        (
            ConditionTag::TwoEigenvectors | ConditionTag::StronglyAbelianH | ConditionTag::MatchedSquaresH,
            MatchData::Eigen { y, xs, h },
        ) => {
            let z = lie.center();
            let shape_ok = match tag {
                ConditionTag::TwoEigenvectors => xs.len() == 2 && h.is_empty(),
                _ => xs.len() == 1,
            };
            out.push(rel("element counts", shape_ok));
            let mut gens: Vec<Vector> = xs.clone();
            gens.push(y.clone());
            gens.extend(h.iter().cloned());
            let span = lie.span(&gens);
            let direct = span.dim() == gens.len() && span.intersect(&z)?.is_zero() && span.dim() + z.dim() == n;
            out.push(rel("L = span(x, y, H) + Z direct", direct));
            let names: Vec<String> = if xs.len() == 2 { vec!["x1".into(), "x2".into()] } else { vec!["x".into()] };
            for (x, name) in xs.iter().zip(&names) {
                out.push(rel(format!("[{name},y] = {name}"), alg.bracket(x, y) == *x));
            }
            for (i, v) in h.iter().enumerate() {
                out.push(rel(format!("[y,h{}] = h{}", i + 1, i + 1), alg.bracket(y, v) == *v));
            }
            if tag == ConditionTag::TwoEigenvectors {
                if let [x1, x2] = xs.as_slice() {
                    out.push(rel("[x1,x2] central", z.contains(&alg.bracket(x1, x2))));
                }
            } else if let Some(x) = xs.first() {
                let abelian = h.iter().enumerate().all(|(i, u)| h[i + 1..].iter().all(|v| is_zero(&alg.bracket(u, v))));
                out.push(rel("H abelian", abelian));
                for (i, v) in h.iter().enumerate() {
                    let k = i + 1;
                    let xh = alg.bracket(x, v);
                    out.push(rel(format!("[x,h{k}] central"), z.contains(&xh)));
                    if tag == ConditionTag::StronglyAbelianH {
                        out.push(rel(format!("h{k}^[2] = 0"), is_zero(&alg.pmap_eval(v))));
                    } else {
                        out.push(rel(format!("[x,h{k}]^[2] = h{k}^[2]"), alg.pmap_eval(&xh) == alg.pmap_eval(v)));
                    }
                }
            }
        }
        _ => out.push(rel("data matches condition", false)),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{heisenberg, make, n7, FamilySpec};

    #[test]
    fn n7_modulo_derived_center_has_no_match_for_i_or_ii() {
        let alg = n7(&Field::gf2()).unwrap();
        let z = alg.lie().derived().intersect(&alg.center()).unwrap();
        let core = alg.lie().span(&z.basis().iter().filter(|v| alg.is_2nilpotent_element(v)).cloned().collect::<Vec<_>>());
        let (q, _) = alg.quotient(&core).unwrap();
        assert!(match_condition(&q, ConditionTag::CodimAbelian).unwrap().is_none());
        assert!(match_condition(&q, ConditionTag::Class2Codim3).unwrap().is_none());
    }

    #[test]
    fn heisenberg_has_codim_one_abelian_ideal() {
        let alg = heisenberg(&Field::gf2()).unwrap();
        let Some(MatchData::AbelianIdeal { ideal }) = match_condition(&alg, ConditionTag::CodimAbelian).unwrap() else {
            panic!("no match");
        };
        assert_eq!(ideal.dim(), 2);
    }

    #[test]
    fn fam_iii_minimal_matches_two_eigenvectors() {
        let alg = make(&FamilySpec::FamIII { field: Field::gf2(), center_dim: 0, toral_center: false }).unwrap();
        let data = match_condition(&alg, ConditionTag::TwoEigenvectors).unwrap().expect("match");
        let rels = check_relations(&alg, ConditionTag::TwoEigenvectors, &data).unwrap();
        assert!(rels.iter().all(|r| r.holds), "{rels:?}");
    }
}
