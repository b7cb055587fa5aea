//! Decision procedure for Lie solvability of `u(L)`: a 2-nilpotent core
//! ideal, condition matchers on the quotient, fast necessary tests, and an
//! optional ground-truth cross-check against the derived series of `u(L)`.

mod core_ideal;
mod matchers;
mod necessary;
mod triangular;

use serde::Serialize;
use thiserror::Error;

use crate::envelope::{DerivedOutcome, EnvElement, EnvError, Envelope, SzOutcome};
use crate::exactla::{LaError, Subspace};
use crate::resla::{ResError, RestrictedLieAlgebra};
use crate::scalar::{Field, ScalarError};

pub use core_ideal::{alternative_cores, derived_cores, nilpotent_core, nilpotent_locus, saturate, CoreOutcome};
pub use matchers::{check_relations, match_condition, MatchData, Relation};
pub(crate) use matchers::{abelian_codim1_candidates, eigen_split};
pub use necessary::{necessary_tests, NecessaryFailure, NecessaryOutcome, NecessaryTag};
pub use triangular::{triangularize, Triangularization};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("input violates the restricted Lie algebra axioms: {0}")]
    InvalidAlgebra(String),
    #[error("operation unsupported over {0}")]
    UnsupportedField(String),
    #[error("extension ladder exhausted at degree {0}")]
    LadderExhausted(u32),
    #[error(transparent)]
    La(#[from] LaError),
    #[error(transparent)]
    Res(#[from] ResError),
    #[error(transparent)]
    Env(#[from] EnvError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// The five sufficient shapes of `L / I`, in matching order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ConditionTag {
    /// An abelian restricted ideal of codimension at most 1.
    #[serde(rename = "I_CodimLE1Abelian")]
    CodimAbelian,
    /// Nilpotent of class 2 with `dim L/Z = 3`.
    #[serde(rename = "II_Class2Codim3")]
    Class2Codim3,
    /// `L = <x1, x2, y> + Z` with `[x_i, y] = x_i` and `[x1, x2]` central.
    #[serde(rename = "III_TwoEigenvectorsToral")]
    TwoEigenvectors,
    /// `L = <x, y> + H + Z` with `H` strongly abelian.
    #[serde(rename = "IV_StronglyAbelianH")]
    StronglyAbelianH,
    /// `L = <x, y> + H + Z` with `[x, h]^[2] = h^[2]`.
    #[serde(rename = "V_MatchedSquaresH")]
    MatchedSquaresH,
}

impl ConditionTag {
    pub const ALL: [ConditionTag; 5] = [
        ConditionTag::CodimAbelian,
        ConditionTag::Class2Codim3,
        ConditionTag::TwoEigenvectors,
        ConditionTag::StronglyAbelianH,
        ConditionTag::MatchedSquaresH,
    ];

    pub fn numeral(self) -> &'static str {
        match self {
            ConditionTag::CodimAbelian => "(i)",
            ConditionTag::Class2Codim3 => "(ii)",
            ConditionTag::TwoEigenvectors => "(iii)",
            ConditionTag::StronglyAbelianH => "(iv)",
            ConditionTag::MatchedSquaresH => "(v)",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ConditionTag::CodimAbelian => "I_CodimLE1Abelian",
            ConditionTag::Class2Codim3 => "II_Class2Codim3",
            ConditionTag::TwoEigenvectors => "III_TwoEigenvectorsToral",
            ConditionTag::StronglyAbelianH => "IV_StronglyAbelianH",
            ConditionTag::MatchedSquaresH => "V_MatchedSquaresH",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    /// Largest degree multiplier tried on the base field.
    pub extension_ladder_max: u32,
    /// Alternative cores are searched only up to this `dim L`.
    pub exhaustive_core_dim_limit: usize,
    pub oracle_crosscheck: bool,
    /// The oracle runs only up to this `dim L`.
    pub oracle_dim_limit: usize,
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            extension_ladder_max: 4,
            exhaustive_core_dim_limit: 7,
            oracle_crosscheck: true,
            oracle_dim_limit: 10,
            seed: 0,
        }
    }
}

/// Evidence for a Solvable verdict, in coordinates of `L` base-changed to
/// degree `extension_degree` (core) and of the quotient by the core (data).
#[derive(Clone, Debug)]
pub struct Certificate {
    pub condition: ConditionTag,
    pub extension_degree: u32,
    pub core: Subspace,
    pub data: MatchData,
    pub relations: Vec<String>,
    /// Text form of the core basis and of the matched elements.
    pub core_basis: Vec<String>,
    pub elements: Vec<String>,
}

impl Certificate {
    /// Recompute everything from `alg`: the core is a 2-nilpotent restricted
    /// ideal and every relation of the match holds in the quotient.
    pub fn verify(&self, alg: &RestrictedLieAlgebra) -> Result<bool, ClassifyError> {
        let ext = extended(alg, self.extension_degree)?;
        if self.core.ambient() != ext.dim()
            || !ext.is_restricted_ideal(&self.core)
            || !ext.is_2nilpotent_ideal(&self.core)
        {
            return Ok(false);
        }
        let (quot, _) = ext.quotient(&self.core)?;
        let rels = check_relations(&quot, self.condition, &self.data)?;
        Ok(!rels.is_empty() && rels.iter().all(|r| r.holds))
    }
}

/// A non-nilpotent element of the ideal generated by `[[a, b], [c, d], e]`.
#[derive(Clone, Debug)]
pub struct Witness {
    pub element: EnvElement,
    pub text: String,
}

#[derive(Clone, Debug)]
pub enum NotSolvableReason {
    SzWitness(Witness),
    OracleStabilized(usize),
    NecessaryTestFailed(NecessaryFailure),
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Solvable(Box<Certificate>),
    NotSolvable(NotSolvableReason),
    Inconclusive(String),
}

/// Ground truth from the derived series of `u(L)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub dims: Vec<usize>,
    /// `None` when the step budget ran out.
    pub solvable: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub outcome: Outcome,
    pub oracle: Option<OracleCheck>,
}

impl Verdict {
    pub fn is_solvable(&self) -> bool {
        matches!(self.outcome, Outcome::Solvable(_))
    }

    pub fn is_not_solvable(&self) -> bool {
        matches!(self.outcome, Outcome::NotSolvable(_))
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self.outcome, Outcome::Inconclusive(_))
    }

    pub fn condition(&self) -> Option<ConditionTag> {
        match &self.outcome {
            Outcome::Solvable(c) => Some(c.condition),
            _ => None,
        }
    }

    /// `Some(false)` only when the oracle ran to completion and contradicts
    /// a Solvable or NotSolvable outcome.
    pub fn agrees_with_oracle(&self) -> Option<bool> {
        let solvable = self.oracle.as_ref()?.solvable?;
        match &self.outcome {
            Outcome::Solvable(_) => Some(solvable),
            Outcome::NotSolvable(_) => Some(!solvable),
            Outcome::Inconclusive(_) => None,
        }
    }

    /// Re-check the carried certificate or witness against `alg`.
    pub fn verify(&self, alg: &RestrictedLieAlgebra) -> Result<bool, ClassifyError> {
        match &self.outcome {
            Outcome::Solvable(c) => c.verify(alg),
            Outcome::NotSolvable(NotSolvableReason::NecessaryTestFailed(f)) => f.verify(alg),
            Outcome::NotSolvable(NotSolvableReason::SzWitness(w)) => {
                let env = Envelope::new(alg)?;
                Ok(!w.element.is_zero() && !env.is_nilpotent(&w.element))
            }
            Outcome::NotSolvable(NotSolvableReason::OracleStabilized(dim)) => {
                let env = Envelope::new(alg)?;
                let series = env.lie_derived_series(None, ORACLE_STEPS);
                Ok(series.outcome == DerivedOutcome::Stabilized { dim: *dim })
            }
            Outcome::Inconclusive(_) => Ok(true),
        }
    }

    pub fn report(&self) -> VerdictReport {
        let mut r = VerdictReport {
            outcome: String::new(),
            condition: None,
            core_basis: Vec::new(),
            extension_degree: None,
            relations: Vec::new(),
            elements: Vec::new(),
            reason: None,
            witness: None,
            oracle: self.oracle.clone(),
        };
        match &self.outcome {
            Outcome::Solvable(c) => {
                r.outcome = "Solvable".into();
                r.condition = Some(c.condition.name().into());
                r.core_basis = c.core_basis.clone();
                r.extension_degree = Some(c.extension_degree);
                r.relations = c.relations.clone();
                r.elements = c.elements.clone();
            }
            Outcome::NotSolvable(reason) => {
                r.outcome = "NotSolvable".into();
                match reason {
                    NotSolvableReason::SzWitness(w) => {
                        r.reason = Some("S-Z ideal witness non-nilpotent".into());
                        r.witness = Some(w.text.clone());
                    }
                    NotSolvableReason::OracleStabilized(d) => {
                        r.reason = Some(format!("derived series of u(L) stabilized at dimension {d}"));
                    }
                    NotSolvableReason::NecessaryTestFailed(f) => {
                        r.reason = Some(format!("necessary test: {} witness non-nilpotent", f.tag.describe()));
                        r.witness = Some(f.text.clone());
                    }
                }
            }
            Outcome::Inconclusive(why) => {
                r.outcome = "Inconclusive".into();
                r.reason = Some(why.clone());
            }
        }
        r
    }
}

/// Serializable form of a [`Verdict`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub outcome: String,
    pub condition: Option<String>,
    pub core_basis: Vec<String>,
    pub extension_degree: Option<u32>,
    pub relations: Vec<String>,
    pub elements: Vec<String>,
    pub reason: Option<String>,
    pub witness: Option<String>,
    pub oracle: Option<OracleCheck>,
}

impl std::fmt::Display for VerdictReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.outcome)?;
        if let Some(c) = &self.condition {
            write!(f, " {c}")?;
        }
        if let Some(r) = &self.reason {
            write!(f, " ({r})")?;
        }
        Ok(())
    }
}

const ORACLE_STEPS: usize = 32;
/// Most hyperplanes enumerated when searching derived cores.
const HYPERPLANE_CAP: usize = 4096;

/// `alg` over the degree-`degree` extension of its field; degree 1 is `alg`.
pub fn extended(alg: &RestrictedLieAlgebra, degree: u32) -> Result<RestrictedLieAlgebra, ClassifyError> {
    if degree <= 1 {
        return Ok(alg.clone());
    }
    if matches!(alg.field(), Field::RatFunc2) {
        return Err(ClassifyError::UnsupportedField(alg.field().name()));
    }
    let ext = alg.field().extend_default(degree)?;
    Ok(alg.base_change(&ext))
}

/// Match every condition in order on `ext / core`.
fn match_on_core(
    ext: &RestrictedLieAlgebra,
    core: &Subspace,
    degree: u32,
) -> Result<Option<Certificate>, ClassifyError> {
    let (quot, _) = ext.quotient(core)?;
    for tag in ConditionTag::ALL {
        let Some(data) = match_condition(&quot, tag)? else {
            continue;
        };
        let rels = check_relations(&quot, tag, &data)?;
        if !rels.iter().all(|r| r.holds) {
            continue;
        }
        return Ok(Some(Certificate {
            condition: tag,
            extension_degree: degree,
            core: core.clone(),
            elements: data.describe(&quot),
            data,
            relations: rels.into_iter().map(|r| r.text).collect(),
            core_basis: core.basis().iter().map(|v| ext.describe(v)).collect(),
        }));
    }
    Ok(None)
}

/// Canonical core first, then the zero core and the alternatives.
fn search_degree(
    ext: &RestrictedLieAlgebra,
    degree: u32,
    opts: &ClassifyOptions,
) -> Result<Option<Certificate>, ClassifyError> {
    let core = match nilpotent_core(ext) {
        Ok(CoreOutcome::Core(c)) => c,
        Ok(CoreOutcome::NotNilpotent(_)) | Err(ClassifyError::UnsupportedField(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    if let Some(c) = match_on_core(ext, &core, degree)? {
        return Ok(Some(c));
    }
    if ext.dim() > opts.exhaustive_core_dim_limit {
        return Ok(None);
    }
    let mut tried = vec![core.clone()];
    let mut candidates = vec![ext.lie().zero_space()];
    candidates.extend(alternative_cores(ext, &core)?);
    candidates.extend(derived_cores(ext, &core, HYPERPLANE_CAP)?);
    for cand in candidates {
        if tried.contains(&cand) || !ext.is_2nilpotent_ideal(&cand) {
            continue;
        }
        if let Some(c) = match_on_core(ext, &cand, degree)? {
            return Ok(Some(c));
        }
        tried.push(cand);
    }
    Ok(None)
}

fn run_oracle(alg: &RestrictedLieAlgebra, opts: &ClassifyOptions) -> Result<Option<(Envelope, OracleCheck)>, ClassifyError> {
    if !opts.oracle_crosscheck || alg.dim() > opts.oracle_dim_limit {
        return Ok(None);
    }
    let env = Envelope::new(alg)?;
    let series = env.lie_derived_series(None, ORACLE_STEPS);
    let solvable = match series.outcome {
        DerivedOutcome::ReachedZero { .. } => Some(true),
        DerivedOutcome::Stabilized { .. } => Some(false),
        DerivedOutcome::BudgetExceeded => None,
    };
    Ok(Some((env, OracleCheck { dims: series.dims, solvable })))
}

/// Decide whether `u(L)` is Lie solvable.
///
/// Necessary tests run first; then each extension degree up to the ladder
/// bound is tried with the canonical core and, for small `L`, alternative
/// cores. When nothing matches, the oracle (if enabled and feasible) supplies
/// a NotSolvable witness; otherwise the verdict is Inconclusive.
pub fn classify(alg: &RestrictedLieAlgebra, opts: &ClassifyOptions) -> Result<Verdict, ClassifyError> {
    let axioms = alg.check_axioms();
    if !axioms.passed() {
        return Err(ClassifyError::InvalidAlgebra(axioms.to_string()));
    }
    if let NecessaryOutcome::Failed(f) = necessary_tests(alg, opts.seed)? {
        let oracle = run_oracle(alg, opts)?.map(|(_, o)| o);
        return Ok(Verdict { outcome: Outcome::NotSolvable(NotSolvableReason::NecessaryTestFailed(*f)), oracle });
    }
    let top = match alg.field() {
        Field::RatFunc2 => 1,
        Field::Gf2k(_) => opts.extension_ladder_max.max(1),
    };
    let mut reached = 0;
    for degree in 1..=top {
        let ext = match extended(alg, degree) {
            Ok(e) => e,
            Err(ClassifyError::Scalar(_)) => break,
            Err(e) => return Err(e),
        };
        reached = degree;
        if let Some(cert) = search_degree(&ext, degree, opts)? {
            let oracle = run_oracle(alg, opts)?.map(|(_, o)| o);
            return Ok(Verdict { outcome: Outcome::Solvable(Box::new(cert)), oracle });
        }
    }
    let Some((env, oracle)) = run_oracle(alg, opts)? else {
        return Ok(Verdict {
            outcome: Outcome::Inconclusive(format!("no condition matched up to extension degree {reached}")),
            oracle: None,
        });
    };
    let outcome = match oracle.solvable {
        Some(false) => match env.sz_nilpotency(opts.seed) {
            SzOutcome::NotNilpotent { witness: w, witness_verified: true, .. } => {
                let text = env.format(&w);
                Outcome::NotSolvable(NotSolvableReason::SzWitness(Witness { element: w, text }))
            }
            _ => Outcome::NotSolvable(NotSolvableReason::OracleStabilized(*oracle.dims.last().unwrap_or(&0))),
        },
        Some(true) => Outcome::Inconclusive(format!(
            "derived series of u(L) reaches zero but no condition matched up to extension degree {reached}"
        )),
        None => Outcome::Inconclusive("oracle step budget exceeded".into()),
    };
    Ok(Verdict { outcome, oracle: Some(oracle) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{heisenberg, make, n7, FamilySpec};

    fn opts() -> ClassifyOptions {
        ClassifyOptions::default()
    }

    #[test]
    fn heisenberg_core_is_center_and_matches_i() {
        let alg = heisenberg(&Field::gf2()).unwrap();
        let CoreOutcome::Core(core) = nilpotent_core(&alg).unwrap() else { panic!("core") };
        assert_eq!(core, alg.lie().span(&[alg.basis_vector(2)]));
        let v = classify(&alg, &opts()).unwrap();
        assert_eq!(v.condition(), Some(ConditionTag::CodimAbelian));
        assert!(v.verify(&alg).unwrap());
        assert_eq!(v.agrees_with_oracle(), Some(true));
    }

    #[test]
    fn fam_iii_minimal_core_is_zero() {
        let alg = make(&FamilySpec::FamIII { field: Field::gf2(), center_dim: 0, toral_center: false }).unwrap();
        let CoreOutcome::Core(core) = nilpotent_core(&alg).unwrap() else { panic!("core") };
        assert!(core.is_zero());
    }

    #[test]
    fn n7_core_excludes_toral_z14() {
        let alg = n7(&Field::gf2()).unwrap();
        let CoreOutcome::Core(core) = nilpotent_core(&alg).unwrap() else { panic!("core") };
        assert_eq!(core, alg.lie().span(&[alg.basis_vector(4), alg.basis_vector(5)]));
    }

    #[test]
    fn n7_refuted_by_four_generator_test() {
        let alg = n7(&Field::gf2()).unwrap();
        let v = classify(&alg, &opts()).unwrap();
        let Outcome::NotSolvable(NotSolvableReason::NecessaryTestFailed(f)) = &v.outcome else {
            panic!("expected a necessary-test refutation, got {}", v.report());
        };
        assert_eq!(f.tag, NecessaryTag::FourGenerator);
        assert!(v.verify(&alg).unwrap());
        assert_eq!(v.agrees_with_oracle(), Some(true));
    }

    #[test]
    fn fam_v_over_gf4_rescales_x() {
        let alg = make(&FamilySpec::FamV { field: Field::gf4(), h_dim: 2 }).unwrap();
        let v = classify(&alg, &opts()).unwrap();
        let Outcome::Solvable(cert) = &v.outcome else { panic!("{}", v.report()) };
        assert_eq!(cert.condition, ConditionTag::MatchedSquaresH);
        let MatchData::Eigen { xs, .. } = &cert.data else { panic!("eigen data") };
        assert!(xs[0].iter().any(|s| !s.is_zero() && !s.is_one()), "x was not rescaled");
        assert!(v.verify(&alg).unwrap());
    }

    #[test]
    fn abelian_passes_necessary_tests() {
        let alg = make(&FamilySpec::FamI { field: Field::gf2(), dim: 2 }).unwrap();
        let ab = alg.quotient(&alg.lie().derived()).unwrap().0;
        assert!(matches!(necessary_tests(&ab, 0).unwrap(), NecessaryOutcome::Pass));
    }

    #[test]
    fn tampered_certificate_fails_verification() {
        let alg = heisenberg(&Field::gf2()).unwrap();
        let v = classify(&alg, &opts()).unwrap();
        let Outcome::Solvable(mut cert) = v.outcome else { panic!("solvable") };
        cert.core = alg.lie().span(&[alg.basis_vector(0)]);
        assert!(!cert.verify(&alg).unwrap());
    }
}
