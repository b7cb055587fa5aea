//! Constructors for the standard solvable families, negative controls,
//! witness chains, the two-parameter rational example, and random instances.

mod example;
mod random;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{zero_vector, Vector};
use crate::resla::{ResError, RestrictedLieAlgebra};
use crate::scalar::{Field, Scalar};

pub use example::{rational_example_report, RationalExampleReport};
pub use random::random_instance;
pub(crate) use random::random_lie;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("constructed algebra violates the axioms: {0}")]
    Axioms(String),
    #[error("no instance accepted after {attempts} attempts")]
    GenerationBudgetExceeded { attempts: usize },
    #[error(transparent)]
    Res(#[from] ResError),
}

/// A member of one of the built-in families.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    /// Abelian ideal `A` of codimension 1 with `y` acting diagonally.
    FamI { field: Field, dim: usize },
    /// Free class-2 algebra on 3 generators plus `extra_center` central elements.
    FamII { field: Field, extra_center: usize, toral_center: bool },
    /// `<x1, x2, y> + Z` with `[x_i, y] = x_i`, `[x1, x2] in Z`.
    FamIII { field: Field, center_dim: usize, toral_center: bool },
    /// `<x, y> + H + Z` with `H` strongly abelian.
    FamIV { field: Field, h_dim: usize },
    /// `<x, y> + H + Z` with `[x, h]^[2] = h^[2]` up to rescaling `x`.
    FamV { field: Field, h_dim: usize },
    Heisenberg { field: Field },
    /// Class 2 on `x1..x4` whose four-generator relation is toral.
    NegativeClass2 { field: Field },
    WitnessChain { field: Field, k: usize },
    RationalExample {},
    RationalExtended {},
    Random { field: Field, n: usize, seed: u64 },
}

impl FamilySpec {
    pub fn label(&self) -> String {
        match self {
            FamilySpec::FamI { field, dim } => format!("fam_i(dim={dim}) over {}", field.name()),
            FamilySpec::FamII { field, extra_center, toral_center } => {
                format!("fam_ii(extra_center={extra_center}, toral={toral_center}) over {}", field.name())
            }
            FamilySpec::FamIII { field, center_dim, toral_center } => {
                format!("fam_iii(center_dim={center_dim}, toral={toral_center}) over {}", field.name())
            }
            FamilySpec::FamIV { field, h_dim } => format!("fam_iv(h_dim={h_dim}) over {}", field.name()),
            FamilySpec::FamV { field, h_dim } => format!("fam_v(h_dim={h_dim}) over {}", field.name()),
            FamilySpec::Heisenberg { field } => format!("heisenberg over {}", field.name()),
            FamilySpec::NegativeClass2 { field } => format!("n7 over {}", field.name()),
            FamilySpec::WitnessChain { field, k } => format!("witness_chain(k={k}) over {}", field.name()),
            FamilySpec::RationalExample {} => "rational_example".to_string(),
            FamilySpec::RationalExtended {} => "rational_extended".to_string(),
            FamilySpec::Random { field, n, seed } => format!("random(n={n}, seed={seed}) over {}", field.name()),
        }
    }
}

/// Sparse construction helper; every bracket and power is a list of terms.
pub(crate) struct Builder {
    field: Field,
    names: Vec<String>,
    brackets: Vec<(usize, usize, Vector)>,
    pmap: Vec<Vector>,
}

impl Builder {
    pub(crate) fn new(field: &Field, names: Vec<String>) -> Self {
        let n = names.len();
        Builder { field: field.clone(), names, brackets: Vec::new(), pmap: vec![zero_vector(field, n); n] }
    }

    fn dim(&self) -> usize {
        self.names.len()
    }

    pub(crate) fn vector(&self, terms: &[(usize, Scalar)]) -> Vector {
        let mut v = zero_vector(&self.field, self.dim());
        for (k, c) in terms {
            v[*k] = v[*k].add(c);
        }
        v
    }

    pub(crate) fn bracket(&mut self, i: usize, j: usize, terms: &[(usize, Scalar)]) {
        let v = self.vector(terms);
        self.brackets.push((i, j, v));
    }

    pub(crate) fn bracket_basis(&mut self, i: usize, j: usize, k: usize) {
        let one = self.field.one();
        self.bracket(i, j, &[(k, one)]);
    }

    pub(crate) fn power(&mut self, i: usize, terms: &[(usize, Scalar)]) {
        self.pmap[i] = self.vector(terms);
    }

    pub(crate) fn power_basis(&mut self, i: usize, k: usize) {
        let one = self.field.one();
        self.power(i, &[(k, one)]);
    }

    pub(crate) fn build(self) -> Result<RestrictedLieAlgebra, FamilyError> {
        let alg = RestrictedLieAlgebra::from_parts(&self.field, self.names, &self.brackets, self.pmap)?;
        let report = alg.check_axioms();
        if !report.passed() {
            return Err(FamilyError::Axioms(report.to_string()));
        }
        Ok(alg)
    }
}

fn names(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

fn strings(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn require_finite(field: &Field) -> Result<(), FamilyError> {
    if field.as_gf2k().is_none() {
        return Err(FamilyError::BadParameters("family is defined over GF(2^k) only".into()));
    }
    Ok(())
}

pub fn make(spec: &FamilySpec) -> Result<RestrictedLieAlgebra, FamilyError> {
    match spec {
        FamilySpec::FamI { field, dim } => fam_i(field, *dim),
        FamilySpec::FamII { field, extra_center, toral_center } => fam_ii(field, *extra_center, *toral_center),
        FamilySpec::FamIII { field, center_dim, toral_center } => fam_iii(field, *center_dim, *toral_center),
        FamilySpec::FamIV { field, h_dim } => fam_iv_v(field, *h_dim, false),
        FamilySpec::FamV { field, h_dim } => fam_iv_v(field, *h_dim, true),
        FamilySpec::Heisenberg { field } => heisenberg(field),
        FamilySpec::NegativeClass2 { field } => n7(field),
        FamilySpec::WitnessChain { field, k } => witness_chain(field, *k),
        FamilySpec::RationalExample {} => Ok(example::rational_example()),
        FamilySpec::RationalExtended {} => Ok(example::rational_extended()),
        FamilySpec::Random { field, n, seed } => random_instance(*n, field, *seed),
    }
}

pub fn heisenberg(field: &Field) -> Result<RestrictedLieAlgebra, FamilyError> {
    let mut b = Builder::new(field, strings(&["e1", "e2", "e3"]));
    b.bracket_basis(0, 1, 2);
    b.build()
}

/// `y, a1..a_{dim-1}`: `y` toral, acting as the identity on the first half
/// of the `a_i` (which square to 0) and trivially on the rest (which are toral).
fn fam_i(field: &Field, dim: usize) -> Result<RestrictedLieAlgebra, FamilyError> {
    require_finite(field)?;
    if dim < 2 {
        return Err(FamilyError::BadParameters("fam_i needs dim >= 2".into()));
    }
    let mut all = vec!["y".to_string()];
    all.extend(names("a", dim - 1));
    let mut b = Builder::new(field, all);
    let moved = dim / 2;
    b.power_basis(0, 0);
    for i in 1..dim {
        if i <= moved {
            b.bracket_basis(0, i, i);
        } else {
            b.power_basis(i, i);
        }
    }
    b.build()
}

fn fam_ii(field: &Field, extra: usize, toral: bool) -> Result<RestrictedLieAlgebra, FamilyError> {
    require_finite(field)?;
    let mut all = strings(&["x1", "x2", "x3", "z12", "z13", "z23"]);
    all.extend(names("c", extra));
    let mut b = Builder::new(field, all);
    b.bracket_basis(0, 1, 3);
    b.bracket_basis(0, 2, 4);
    b.bracket_basis(1, 2, 5);
    if toral {
        for i in 3..6 + extra {
            b.power_basis(i, i);
        }
        if extra > 0 {
            b.power_basis(0, 6);
        }
    }
    b.build()
}

fn fam_iii(field: &Field, center: usize, toral: bool) -> Result<RestrictedLieAlgebra, FamilyError> {
    require_finite(field)?;
    if center > 2 {
        return Err(FamilyError::BadParameters("fam_iii supports center_dim <= 2".into()));
    }
    let mut all = strings(&["x1", "x2", "y"]);
    all.extend(names("z", center));
    let mut b = Builder::new(field, all);
    b.bracket_basis(0, 2, 0);
    b.bracket_basis(1, 2, 1);
    b.power_basis(2, 2);
    if center >= 1 {
        b.bracket_basis(0, 1, 3);
        if toral {
            b.power_basis(1, 3);
        }
    }
    if toral {
        for i in 3..3 + center {
            b.power_basis(i, i);
        }
    }
    b.build()
}

/// `x, y, h1..hm, z1..zm` with `[x, y] = x`, `[y, h_i] = h_i`,
/// `[x, h_i] = z_i` and toral `z_i`. With `matched`, `h_i^[2] = g z_i` for
/// the field generator `g`, so `x` must be rescaled by `sqrt(g)`.
fn fam_iv_v(field: &Field, m: usize, matched: bool) -> Result<RestrictedLieAlgebra, FamilyError> {
    require_finite(field)?;
    if m == 0 {
        return Err(FamilyError::BadParameters("h_dim must be positive".into()));
    }
    let mut all = strings(&["x", "y"]);
    all.extend(names("h", m));
    all.extend(names("z", m));
    let mut b = Builder::new(field, all);
    let g = field.generator();
    b.bracket_basis(0, 1, 0);
    b.power_basis(1, 1);
    for i in 0..m {
        let (h, z) = (2 + i, 2 + m + i);
        b.bracket_basis(1, h, h);
        b.bracket_basis(0, h, z);
        b.power_basis(z, z);
        if matched {
            b.power(h, &[(z, g.clone())]);
        }
    }
    b.build()
}

pub fn n7(field: &Field) -> Result<RestrictedLieAlgebra, FamilyError> {
    let mut b = Builder::new(field, strings(&["x1", "x2", "x3", "x4", "z12", "z13", "z14"]));
    b.bracket_basis(0, 1, 4);
    b.bracket_basis(0, 2, 5);
    b.bracket_basis(0, 3, 6);
    b.bracket_basis(1, 2, 6);
    b.power_basis(6, 6);
    b.build()
}

/// `x, y, a1..ak, c1..ck, d1..dk` with `[a_i, x] = c_i`, `[a_i, y] = d_i`
/// central, everything else commuting and the power map zero: the finite
/// core of the products `[a_i, x][a_{i+1}, x][b_i, y][b_{i+1}, y]` with the
/// `b_i` identified with the `a_i`.
fn witness_chain(field: &Field, k: usize) -> Result<RestrictedLieAlgebra, FamilyError> {
    if k == 0 {
        return Err(FamilyError::BadParameters("witness_chain needs k >= 1".into()));
    }
    let mut all = strings(&["x", "y"]);
    all.extend(names("a", k));
    all.extend(names("c", k));
    all.extend(names("d", k));
    let mut b = Builder::new(field, all);
    for i in 0..k {
        let a = 2 + i;
        b.bracket_basis(a, 0, 2 + k + i);
        b.bracket_basis(a, 1, 2 + 2 * k + i);
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fam_iii_minimal_matches_statement() {
        let f = Field::gf2();
        let l = make(&FamilySpec::FamIII { field: f.clone(), center_dim: 0, toral_center: false }).unwrap();
        assert_eq!(l.dim(), 3);
        assert_eq!(l.lie().bracket_basis(0, 2), &l.basis_vector(0));
        assert_eq!(l.lie().bracket_basis(1, 2), &l.basis_vector(1));
        assert!(crate::exactla::is_zero(l.lie().bracket_basis(0, 1)));
        assert_eq!(l.pmap_basis(2), &l.basis_vector(2));
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = FamilySpec::FamV { field: Field::gf4(), h_dim: 2 };
        let s = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<FamilySpec>(&s).unwrap(), spec);
        assert!(serde_json::from_str::<FamilySpec>(r#"{"family":"rational_example","x":1}"#).is_err());
    }
}
