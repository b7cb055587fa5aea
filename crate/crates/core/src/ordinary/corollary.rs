//! Lie solvability of `U(L)` for an ordinary Lie algebra in characteristic 2.

use serde::Serialize;

use crate::classify::{abelian_codim1_candidates, eigen_split};
use crate::resla::LieAlgebra;

use super::{witness_search, OrdError, Pattern, WitnessBudget, WitnessOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OrdTag {
    /// `L` is abelian.
    Abelian,
    /// `L` has an abelian ideal of codimension 1.
    CodimOneAbelian,
    /// `L` is nilpotent of class 2 with `dim L/Z(L) = 3`.
    Class2Codim3,
    /// `L = <x1, x2, y> + Z(L)` with `[x_i, y] = x_i` and `[x1, x2]` central.
    TwoEigenvectors,
}

impl OrdTag {
    pub fn numeral(self) -> &'static str {
        match self {
            OrdTag::Abelian => "i",
            OrdTag::CodimOneAbelian => "ii",
            OrdTag::Class2Codim3 => "iii",
            OrdTag::TwoEigenvectors => "iv",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum OrdVerdict {
    /// `certificate` lists the structure found, as readable lines.
    Solvable { tag: OrdTag, certificate: Vec<String> },
    NotSolvable { pattern: String, args: Vec<String>, witness: String },
    Inconclusive(String),
}

impl OrdVerdict {
    pub fn is_solvable(&self) -> bool {
        matches!(self, OrdVerdict::Solvable { .. })
    }

    pub fn is_not_solvable(&self) -> bool {
        matches!(self, OrdVerdict::NotSolvable { .. })
    }

    pub fn tag(&self) -> Option<OrdTag> {
        match self {
            OrdVerdict::Solvable { tag, .. } => Some(*tag),
            _ => None,
        }
    }
}

fn describe_basis(lie: &LieAlgebra, basis: &[crate::exactla::Vector]) -> String {
    let parts: Vec<String> = basis.iter().map(|v| lie.describe(v)).collect();
    format!("<{}>", parts.join(", "))
}

/// The first structural condition that holds, in order (i) to (iv).
pub fn structural_match(lie: &LieAlgebra) -> Result<Option<(OrdTag, Vec<String>)>, OrdError> {
    if lie.is_abelian() {
        return Ok(Some((OrdTag::Abelian, vec!["[L, L] = 0".into()])));
    }
    if let Some(a) = abelian_codim1_candidates(lie).into_iter().find(|a| a.dim() + 1 == lie.dim()) {
        return Ok(Some((OrdTag::CodimOneAbelian, vec![format!("A = {}", describe_basis(lie, a.basis()))])));
    }
    let z = lie.center();
    if lie.nilpotency_class() == Some(2) && lie.dim() - z.dim() == 3 {
        return Ok(Some((
            OrdTag::Class2Codim3,
            vec!["class 2".into(), format!("Z(L) = {}", describe_basis(lie, z.basis()))],
        )));
    }
    let split = eigen_split(lie).map_err(|e| OrdError::Linear(e.to_string()))?;
    if let Some((y, e)) = split.filter(|(_, e)| e.len() == 2 && z.dim() + 3 == lie.dim()) {
        let x1x2 = lie.bracket(&e[0], &e[1]);
        return Ok(Some((
            OrdTag::TwoEigenvectors,
            vec![
                format!("y = {}", lie.describe(&y)),
                format!("x1 = {}", lie.describe(&e[0])),
                format!("x2 = {}", lie.describe(&e[1])),
                format!("[x1, x2] = {}", lie.describe(&x1x2)),
            ],
        )));
    }
    Ok(None)
}

/// Structural conditions first; if none holds, a witness from
/// [`witness_search`] refutes solvability, and an exhausted search leaves
/// the verdict open.
pub fn corollary_classify(lie: &LieAlgebra, budget: WitnessBudget) -> Result<OrdVerdict, OrdError> {
    if !lie.check_lie_axioms().is_empty() {
        return Err(OrdError::InvalidAlgebra);
    }
    if let Some((tag, certificate)) = structural_match(lie)? {
        return Ok(OrdVerdict::Solvable { tag, certificate });
    }
    Ok(match witness_search(lie, budget)? {
        WitnessOutcome::Witness { pattern, args, text, .. } => {
            OrdVerdict::NotSolvable { pattern: pattern_name(pattern).into(), args, witness: text }
        }
        WitnessOutcome::Exhausted { evaluations } => OrdVerdict::Inconclusive(format!(
            "no structural condition holds and {evaluations} pattern evaluations vanished"
        )),
    })
}

pub fn pattern_name(p: Pattern) -> &'static str {
    match p {
        Pattern::FourGenerator => "[[x4x3x1,x4],[x4x1,x1],x2]",
        Pattern::Zby => "[[zby,z],[x,xb],y]",
        Pattern::Xya => "[[az,y],[xya,x],z]",
        Pattern::Generic => "[[a,b],[c,d],e]",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    #[test]
    fn heisenberg_has_codim_one_abelian_ideal() {
        let f = Field::gf2();
        let h3 = crate::families::heisenberg(&f).unwrap().lie().clone();
        let v = corollary_classify(&h3, WitnessBudget::default()).unwrap();
        assert_eq!(v.tag(), Some(OrdTag::CodimOneAbelian));
    }
}
