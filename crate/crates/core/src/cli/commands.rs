use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::classify::{classify, ClassifyOptions};
use crate::envelope::{DerivedOutcome, Envelope, SzOutcome};
use crate::families::{rational_example_report, make};
use crate::ordinary::{self, corollary_classify, two_envelope, witness_search, OrdVerdict, WitnessOutcome};
use crate::resla::{LieAlgebra, RestrictedLieAlgebra};

use super::{
    axiom_report, load, AlgebraFile, CliError, Command, FamilyChoice, OrdinaryAction, OrdinaryFamily, ParsedAlgebra,
    RunOutput, RunReport, EXIT_DISAGREEMENT, EXIT_INPUT, EXIT_OK,
};

fn output(text: String, digest: Option<String>, seed: u64, budgets: &[(&str, u64)], result: Value) -> RunOutput {
    RunOutput {
        text,
        report: RunReport {
            tool: "liesolv".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: String::new(),
            input_digest: digest,
            seed,
            budgets: budgets.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>(),
            result,
        },
        exit_code: EXIT_OK,
    }
}

fn restricted(alg: ParsedAlgebra, path: &Path) -> Result<RestrictedLieAlgebra, CliError> {
    match alg {
        ParsedAlgebra::Restricted(a) => Ok(a),
        ParsedAlgebra::Ordinary(_) => {
            Err(CliError::Usage(format!("{}: command needs a restricted algebra", path.display())))
        }
    }
}

fn ordinary_lie(alg: ParsedAlgebra, path: &Path) -> Result<LieAlgebra, CliError> {
    match alg {
        ParsedAlgebra::Ordinary(l) => Ok(l),
        ParsedAlgebra::Restricted(_) => {
            Err(CliError::Usage(format!("{}: command needs an ordinary algebra (\"restricted\": false)", path.display())))
        }
    }
}

fn compute<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Compute(e.to_string())
}

fn arrow_dims(dims: &[usize]) -> String {
    dims.iter().map(usize::to_string).collect::<Vec<_>>().join(" → ")
}

pub(super) fn execute(cmd: &Command, seed: u64) -> Result<RunOutput, CliError> {
    match cmd {
        Command::Axioms { file } => {
            let (alg, digest) = load(file, true)?;
            let report = axiom_report(&alg);
            let violations: Vec<String> = report.violations.iter().map(|v| report.describe(v)).collect();
            let text = if violations.is_empty() {
                "axioms: passed".to_string()
            } else {
                format!("axioms: {} violation(s)\n{}", violations.len(), violations.join("\n"))
            };
            let mut out = output(text, Some(digest), seed, &[], json!({ "passed": violations.is_empty(), "violations": violations }));
            if !violations.is_empty() {
                out.exit_code = EXIT_INPUT;
            }
            Ok(out)
        }
        Command::Solvable { file, max_steps } => {
            let (alg, digest) = load(file, false)?;
            let alg = restricted(alg, file)?;
            let env = Envelope::new(&alg).map_err(compute)?;
            let s = env.lie_derived_series(None, *max_steps);
            let (head, outcome) = match s.outcome {
                DerivedOutcome::ReachedZero { length } => {
                    (format!("ReachedZero, derived length {length}"), json!({ "kind": "ReachedZero", "length": length }))
                }
                DerivedOutcome::Stabilized { dim } => {
                    (format!("Stabilized at dimension {dim}"), json!({ "kind": "Stabilized", "dim": dim }))
                }
                DerivedOutcome::BudgetExceeded => ("BudgetExceeded".to_string(), json!({ "kind": "BudgetExceeded" })),
            };
            let text = format!("{head}, dims: {}", arrow_dims(&s.dims));
            let budgets = [("max_steps", *max_steps as u64)];
            Ok(output(text, Some(digest), seed, &budgets, json!({ "outcome": outcome, "dims": s.dims })))
        }
        Command::Classify { file, ladder, core_dim_limit, oracle } => {
            let (alg, digest) = load(file, false)?;
            let alg = restricted(alg, file)?;
            let opts = ClassifyOptions {
                extension_ladder_max: *ladder,
                exhaustive_core_dim_limit: *core_dim_limit,
                oracle_crosscheck: *oracle,
                seed,
                ..ClassifyOptions::default()
            };
            let verdict = classify(&alg, &opts).map_err(compute)?;
            let report = verdict.report();
            let mut text = report.to_string();
            if !report.core_basis.is_empty() {
                let _ = write!(text, "\ncore: <{}>", report.core_basis.join(", "));
            }
            if let Some(d) = report.extension_degree {
                let _ = write!(text, "\nextension degree: {d}");
            }
            for e in &report.elements {
                let _ = write!(text, "\n  {e}");
            }
            for r in &report.relations {
                let _ = write!(text, "\n  {r}");
            }
            if let Some(w) = &report.witness {
                let _ = write!(text, "\nwitness: {w}");
            }
            if let Some(o) = &report.oracle {
                let _ = write!(text, "\noracle: dims {}", arrow_dims(&o.dims));
            }
            let budgets = [
                ("extension_ladder_max", *ladder as u64),
                ("exhaustive_core_dim_limit", *core_dim_limit as u64),
                ("oracle", *oracle as u64),
            ];
            let mut out = output(text, Some(digest), seed, &budgets, serde_json::to_value(&report).expect("serializable"));
            if verdict.agrees_with_oracle() == Some(false) {
                out.exit_code = EXIT_DISAGREEMENT;
                out.text.push_str("\nDISAGREEMENT with the derived-series oracle");
            }
            Ok(out)
        }
        Command::SzIndex { file } => {
            let (alg, digest) = load(file, false)?;
            let alg = restricted(alg, file)?;
            let env = Envelope::new(&alg).map_err(compute)?;
            let (text, result) = match env.sz_nilpotency(seed) {
                SzOutcome::Nilpotent { index, power_dims } => (
                    format!("Nilpotent, index {index}, dims of powers: {}", arrow_dims(&power_dims)),
                    json!({ "nilpotent": true, "index": index, "power_dims": power_dims }),
                ),
                SzOutcome::NotNilpotent { witness, witness_verified, power_dims } => {
                    let w = env.format(&witness);
                    (
                        format!("NotNilpotent, dims of powers: {}\nwitness: {w}", arrow_dims(&power_dims)),
                        json!({ "nilpotent": false, "witness": w, "witness_verified": witness_verified, "power_dims": power_dims }),
                    )
                }
            };
            Ok(output(text, Some(digest), seed, &[], result))
        }
        Command::Family { choice, output: path } => {
            let file = match choice {
                FamilyChoice::Restricted(spec) => AlgebraFile::from_restricted(&make(spec).map_err(compute)?),
                FamilyChoice::Ordinary { tag, field } => AlgebraFile::from_lie(&ordinary_family(*tag, field)?),
            };
            let json = file.to_json();
            std::fs::write(path, &json).map_err(|source| CliError::Io { path: path.clone(), source })?;
            let text = format!("wrote {} (dim {}, {})", path.display(), file.dim, file.field.name());
            let digest = super::digest(json.as_bytes());
            Ok(output(text, Some(digest.clone()), seed, &[], json!({ "dim": file.dim, "output_digest": digest })))
        }
        Command::RationalExample => {
            let r = rational_example_report();
            let text = format!(
                "(1) [[x,x*x1],[x1,x1*x2*x3],x2] = {}\n    nonzero: {}\n\
                 (2) v = {}, w = {}\n    v^[2] = 0: {}, w^[2] = 0: {}, J central: {}, restricted ideal: {}, 2-nilpotent: {}\n\
                 (3) ideal generated by x, a*x1+x2, b*x1+x3 modulo J: dim {} of {}, codimension 1: {}, abelian: {}",
                r.commutator,
                r.commutator_nonzero,
                r.v,
                r.w,
                r.v_square_zero,
                r.w_square_zero,
                r.j_central,
                r.j_restricted_ideal,
                r.j_2nilpotent,
                r.ideal_dim,
                r.quotient_dim,
                r.ideal_codim_1,
                r.ideal_abelian,
            );
            Ok(output(text, None, seed, &[], serde_json::to_value(&r).expect("serializable")))
        }
        Command::Ordinary { action, file, budget, m_max } => {
            let (alg, digest) = load(file, false)?;
            let lie = ordinary_lie(alg, file)?;
            let budgets = [
                ("max_evaluations", budget.max_evaluations as u64),
                ("max_degree", budget.max_degree as u64),
                ("m_max", *m_max as u64),
            ];
            let (text, result) = match action {
                OrdinaryAction::Classify => {
                    let v = corollary_classify(&lie, *budget).map_err(compute)?;
                    (ord_verdict_text(&v), serde_json::to_value(&v).expect("serializable"))
                }
                OrdinaryAction::Witness => witness_json(&witness_search(&lie, *budget).map_err(compute)?),
                OrdinaryAction::Envelope => {
                    let e = two_envelope(&lie, *m_max).map_err(compute)?;
                    let level_dims: Vec<usize> = e.spans.iter().map(Vec::len).collect();
                    let mut text = format!(
                        "{}, dims of L^(2^k): {:?}, cumulative: {}",
                        if e.stabilized { "stabilized" } else { "not stabilized" },
                        level_dims,
                        arrow_dims(&e.total_dims)
                    );
                    let hat = e.restricted.as_ref().map(AlgebraFile::from_restricted);
                    if let Some(h) = &hat {
                        let _ = write!(text, "\nrestricted envelope of dimension {}", h.dim);
                    }
                    let result = json!({
                        "stabilized": e.stabilized,
                        "level_dims": level_dims,
                        "total_dims": e.total_dims,
                        "envelope": hat,
                    });
                    (text, result)
                }
            };
            Ok(output(text, Some(digest), seed, &budgets, result))
        }
        Command::Corpus { dir } => corpus(dir, seed),
    }
}

fn ordinary_family(tag: OrdinaryFamily, field: &crate::scalar::Field) -> Result<LieAlgebra, CliError> {
    use crate::ordinary::examples as ex;
    match tag {
        OrdinaryFamily::Abelian(n) => Ok(LieAlgebra::abelian(field, (1..=n).map(|i| format!("a{i}")).collect())),
        OrdinaryFamily::AffineLine => ex::affine_line(field).map_err(compute),
        OrdinaryFamily::Heisenberg => ex::heisenberg(field).map_err(compute),
        OrdinaryFamily::TwoEigenvectors => ex::two_eigenvectors(field).map_err(compute),
        OrdinaryFamily::FreeClass2Rank4 => ex::free_class2_rank4(field).map_err(compute),
    }
}

fn ord_verdict_text(v: &OrdVerdict) -> String {
    match v {
        OrdVerdict::Solvable { tag, certificate } => {
            format!("Solvable ({})\n  {}", tag.numeral(), certificate.join("\n  "))
        }
        OrdVerdict::NotSolvable { pattern, args, witness } => {
            format!("NotSolvable ({pattern} at ({}) is nonzero in U(L))\nwitness: {witness}", args.join(", "))
        }
        OrdVerdict::Inconclusive(why) => format!("Inconclusive ({why})"),
    }
}

fn witness_json(w: &WitnessOutcome) -> (String, Value) {
    match w {
        WitnessOutcome::Witness { pattern, args, text, .. } => {
            let name = ordinary::pattern_name(*pattern);
            (
                format!("Witness: {name} at ({}) = {text}", args.join(", ")),
                json!({ "found": true, "pattern": name, "args": args, "witness": text }),
            )
        }
        WitnessOutcome::Exhausted { evaluations } => (
            format!("Exhausted after {evaluations} evaluations (not a solvability proof)"),
            json!({ "found": false, "evaluations": evaluations }),
        ),
    }
}

/// One corpus file: `Ok(agrees)` or an input error message.
fn corpus_entry(path: &Path, seed: u64) -> (Value, Option<bool>) {
    let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let (alg, _) = match load(path, false) {
        Ok(x) => x,
        Err(e) => return (json!({ "file": name, "error": e.to_string() }), None),
    };
    match alg {
        ParsedAlgebra::Restricted(a) => {
            let opts = ClassifyOptions { seed, ..ClassifyOptions::default() };
            match classify(&a, &opts) {
                Ok(v) => {
                    let agrees = v.agrees_with_oracle();
                    let oracle = v.oracle.as_ref().and_then(|o| o.solvable);
                    (
                        json!({ "file": name, "kind": "restricted", "verdict": v.report().to_string(), "oracle_solvable": oracle, "agrees": agrees }),
                        Some(agrees != Some(false)),
                    )
                }
                Err(e) => (json!({ "file": name, "error": e.to_string() }), None),
            }
        }
        ParsedAlgebra::Ordinary(l) => {
            let budget = crate::ordinary::WitnessBudget::default();
            match (corollary_classify(&l, budget), witness_search(&l, budget)) {
                (Ok(v), Ok(w)) => {
                    // a witness refutes solvability, so it must not coexist with a certificate
                    let agrees = !(v.is_solvable() && w.is_witness());
                    (
                        json!({ "file": name, "kind": "ordinary", "verdict": ord_verdict_text(&v).lines().next(), "witness_found": w.is_witness(), "agrees": agrees }),
                        Some(agrees),
                    )
                }
                (Err(e), _) | (_, Err(e)) => (json!({ "file": name, "error": e.to_string() }), None),
            }
        }
    }
}

fn corpus(dir: &Path, seed: u64) -> Result<RunOutput, CliError> {
    let rd = std::fs::read_dir(dir).map_err(|source| CliError::Io { path: dir.into(), source })?;
    let mut files: Vec<_> = rd
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let entries: Vec<(Value, Option<bool>)> = files.par_iter().map(|p| corpus_entry(p, seed)).collect();
    let disagreements = entries.iter().filter(|(_, a)| *a == Some(false)).count();
    let errors = entries.iter().filter(|(_, a)| a.is_none()).count();
    let mut text = String::new();
    for (v, _) in &entries {
        let file = v["file"].as_str().unwrap_or("?");
        let line = match v.get("error") {
            Some(e) => format!("{file}: error: {}", e.as_str().unwrap_or("?")),
            None => format!(
                "{file}: {}{}",
                v["verdict"].as_str().unwrap_or("?"),
                if v["agrees"] == json!(false) { "  DISAGREEMENT" } else { "" }
            ),
        };
        text.push_str(&line);
        text.push('\n');
    }
    let _ = write!(text, "{} file(s), {disagreements} disagreement(s), {errors} error(s)", entries.len());
    let digest = super::digest(
        files.iter().map(|p| std::fs::read(p).unwrap_or_default()).collect::<Vec<_>>().concat().as_slice(),
    );
    let result = json!({
        "files": entries.iter().map(|(v, _)| v.clone()).collect::<Vec<_>>(),
        "disagreements": disagreements,
        "errors": errors,
    });
    let mut out = output(text, Some(digest), seed, &[], result);
    out.exit_code = if disagreements > 0 {
        EXIT_DISAGREEMENT
    } else if errors > 0 {
        EXIT_INPUT
    } else {
        EXIT_OK
    };
    Ok(out)
}
