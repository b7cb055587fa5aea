//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use liesolv::classify::{classify, ClassifyOptions, NecessaryTag, NotSolvableReason, Outcome};
use liesolv::envelope::{cond_ii_certificate, m2_embedding_check, reducedness_check, DerivedOutcome, Envelope, SzOutcome};
use liesolv::exactla::{matrix, Subspace, Vector};
use liesolv::families::{rational_example_report, make, random_instance, FamilySpec as F};
use liesolv::resla::{LieAlgebra, RestrictedLieAlgebra};
use liesolv::scalar::{Field, Scalar};

type Check = Result<String, String>;

fn fields() -> [Field; 2] {
    [Field::gf2(), Field::gf4()]
}

/// The solvable families at the sizes the criteria name.
fn solvable_specs() -> Vec<F> {
    let mut out = Vec::new();
    for f in fields() {
        for dim in 2..=8 {
            out.push(F::FamI { field: f.clone(), dim });
        }
        for (extra_center, toral_center) in [(0, false), (1, false), (1, true), (2, true)] {
            out.push(F::FamII { field: f.clone(), extra_center, toral_center });
        }
        for (center_dim, toral_center) in [(0, false), (1, false), (1, true), (2, false), (2, true)] {
            out.push(F::FamIII { field: f.clone(), center_dim, toral_center });
        }
        for h_dim in 1..=3 {
            out.push(F::FamIV { field: f.clone(), h_dim });
            out.push(F::FamV { field: f.clone(), h_dim });
        }
        out.push(F::Heisenberg { field: f.clone() });
    }
    out
}

fn curated_specs() -> Vec<F> {
    let mut out = solvable_specs();
    for f in fields() {
        out.push(F::NegativeClass2 { field: f });
    }
    out.push(F::RationalExample {});
    out
}

fn build(spec: &F) -> RestrictedLieAlgebra {
    make(spec).unwrap_or_else(|e| panic!("{}: {e}", spec.label()))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `ad(p(b_i)) = ad(b_i)^2` on every basis vector, recomputed from the
/// bracket table.
fn restricted_by_hand(alg: &RestrictedLieAlgebra) -> bool {
    let f = alg.field();
    (0..alg.dim()).all(|i| {
        let ad = alg.lie().ad_basis(i);
        alg.lie().ad(alg.pmap_basis(i)) == matrix::mul(f, &ad, &ad)
    })
}

fn criterion_1() -> Check {
    let mut checked = 0;
    for spec in curated_specs().iter().chain(&[F::RationalExtended {}]) {
        let alg = build(spec);
        let r = alg.check_axioms();
        ensure(r.passed(), || format!("{} fails its axioms", spec.label()))?;
        checked += 1;
    }
    let f = Field::gf4();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut mutants = 0;
    for spec in [F::Heisenberg { field: f.clone() }, F::FamIII { field: f.clone(), center_dim: 1, toral_center: false }] {
        let base = build(&spec);
        let n = base.dim();
        // 20 one-sided bracket constants: the stored table stops being alternating
        for _ in 0..20 {
            let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            let mut m = base.clone();
            let mut v = base.lie().bracket_basis(i, j).clone();
            v[k] = f.add(&v[k], &f.random_nonzero(&mut rng));
            m.set_bracket_entry(i, j, v);
            ensure(!m.check_axioms().passed(), || format!("bracket mutant ({i},{j},{k}) of {} accepted", spec.label()))?;
            mutants += 1;
        }
        // 10 power-map constants that break ad(x^[2]) = (ad x)^2
        let mut taken = 0;
        while taken < 10 {
            let (i, k) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let mut m = base.clone();
            let mut p = base.pmap_basis(i).clone();
            p[k] = f.add(&p[k], &f.random_nonzero(&mut rng));
            m.set_pmap(i, p);
            if restricted_by_hand(&m) {
                continue;
            }
            ensure(!m.check_axioms().passed(), || format!("pmap mutant ({i},{k}) of {} accepted", spec.label()))?;
            taken += 1;
            mutants += 1;
        }
    }
    Ok(format!("{checked} curated instances pass, {mutants} mutants rejected"))
}

fn criterion_2() -> Check {
    let mut slowest = Duration::ZERO;
    let specs = solvable_specs();
    for spec in &specs {
        let alg = build(spec);
        let t = Instant::now();
        let s = Envelope::new(&alg).unwrap().lie_derived_series(None, 40);
        let el = t.elapsed();
        slowest = slowest.max(el);
        ensure(s.is_solvable(), || format!("{}: {:?} dims {:?}", spec.label(), s.outcome, s.dims))?;
        ensure(el <= Duration::from_secs(120), || format!("{} took {el:?}", spec.label()))?;
    }
    let stress = F::FamII { field: Field::gf2(), extra_center: 4, toral_center: true };
    let alg = build(&stress);
    let t = Instant::now();
    let s = Envelope::new(&alg).unwrap().lie_derived_series(None, 40);
    let el = t.elapsed();
    ensure(s.is_solvable(), || format!("stress {}: {:?}", stress.label(), s.outcome))?;
    ensure(el <= Duration::from_secs(1800), || format!("stress took {el:?}"))?;
    Ok(format!(
        "{} instances reach zero (slowest {slowest:.2?}); dim-10 stress {} dims {:?} in {el:.2?}",
        specs.len(),
        stress.label(),
        s.dims
    ))
}

fn criterion_3() -> Check {
    let alg = build(&F::NegativeClass2 { field: Field::gf2() });
    let env = Envelope::new(&alg).unwrap();
    ensure(env.dim() == 128, || format!("dim u(N7) = {}", env.dim()))?;
    let s = env.lie_derived_series(None, 40);
    let DerivedOutcome::Stabilized { dim } = s.outcome else {
        return Err(format!("derived series: {:?}", s.outcome));
    };
    ensure(dim > 0, || "stabilized at 0".into())?;
    let SzOutcome::NotNilpotent { witness_verified, .. } = env.sz_nilpotency(0) else {
        return Err("S-Z ideal nilpotent".into());
    };
    ensure(witness_verified, || "S-Z witness not verified".into())?;
    let v = classify(&alg, &ClassifyOptions::default()).unwrap();
    let Outcome::NotSolvable(NotSolvableReason::NecessaryTestFailed(f)) = &v.outcome else {
        return Err(format!("classify: {}", v.report()));
    };
    ensure(f.tag == NecessaryTag::FourGenerator, || format!("refuted by {:?}", f.tag))?;
    ensure(v.verify(&alg).unwrap(), || "witness does not verify".into())?;
    Ok(format!("derived series stabilizes at {dim}, S-Z witness verified, classify: {}", v.report()))
}

fn criterion_4() -> Check {
    let opts = ClassifyOptions::default();
    let mut curated_inconclusive = Vec::new();
    for spec in curated_specs() {
        let alg = build(&spec);
        let v = classify(&alg, &opts).unwrap();
        ensure(v.agrees_with_oracle() != Some(false), || format!("{} disagrees: {}", spec.label(), v.report()))?;
        ensure(v.verify(&alg).unwrap(), || format!("{}: certificate fails", spec.label()))?;
        if v.is_inconclusive() {
            curated_inconclusive.push(spec.label());
        }
    }
    ensure(curated_inconclusive.is_empty(), || format!("inconclusive on curated: {curated_inconclusive:?}"))?;
    let (mut total, mut inconclusive, mut not_solvable) = (0, 0, 0);
    for seed in 0..200u64 {
        let f = &fields()[(seed % 2) as usize];
        let n = 1 + (seed / 2 % 5) as usize;
        let alg = random_instance(n, f, seed).unwrap();
        let v = classify(&alg, &ClassifyOptions { seed, ..opts.clone() }).unwrap();
        ensure(v.agrees_with_oracle() != Some(false), || format!("random n={n} seed={seed} disagrees: {}", v.report()))?;
        ensure(v.verify(&alg).unwrap(), || format!("random n={n} seed={seed}: certificate fails"))?;
        total += 1;
        inconclusive += v.is_inconclusive() as usize;
        not_solvable += v.is_not_solvable() as usize;
    }
    let rate = inconclusive as f64 / total as f64;
    ensure(rate <= 0.10, || format!("inconclusive rate {rate:.3}"))?;
    Ok(format!(
        "{} curated agree, 0 inconclusive; {total} random agree, {not_solvable} not solvable, inconclusive rate {rate:.3}",
        curated_specs().len()
    ))
}

fn criterion_5() -> Check {
    let r = rational_example_report();
    let a = r.commutator_nonzero;
    let b = r.v_square_zero && r.w_square_zero && r.j_restricted_ideal && r.j_2nilpotent;
    let c = r.ideal_codim_1 && r.ideal_abelian;
    let summary = format!(
        "(a) {} = {}; (b) v = {}, w = {}: {}; (c) ideal dim {} of {}, abelian {}{}",
        "[[x,x*x1],[x1,x1*x2*x3],x2]",
        r.commutator,
        r.v,
        r.w,
        if b { "ok" } else { "fails" },
        r.ideal_dim,
        r.quotient_dim,
        r.ideal_abelian,
        r.ideal_nonzero_bracket.as_deref().map(|s| format!(" (nonzero bracket {s})")).unwrap_or_default(),
    );
    if a && b && c {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn criterion_6() -> Check {
    let mut rows = Vec::new();
    for spec in solvable_specs() {
        let alg = build(&spec);
        let env = Envelope::new(&alg).unwrap();
        let length = match env.lie_derived_series(None, 40).outcome {
            DerivedOutcome::ReachedZero { length } => length,
            o => return Err(format!("{}: {o:?}", spec.label())),
        };
        let SzOutcome::Nilpotent { index, .. } = env.sz_nilpotency(0) else {
            return Err(format!("{}: S-Z ideal not nilpotent", spec.label()));
        };
        rows.push((length, index));
    }
    rows.sort();
    let monotone = rows.windows(2).all(|w| w[0].1 <= w[1].1);
    let mut pairs: Vec<String> = rows.iter().map(|(l, i)| format!("{l}:{i}")).collect();
    pairs.dedup();
    Ok(format!(
        "{} finite indices; (derived length:index) {}; index monotone in length: {monotone}",
        rows.len(),
        pairs.join(" ")
    ))
}

fn criterion_7() -> Check {
    let mut lines = Vec::new();
    for f in fields() {
        for spec in [F::Heisenberg { field: f.clone() }, F::FamII { field: f.clone(), extra_center: 0, toral_center: false }] {
            let r = cond_ii_certificate(&build(&spec)).map_err(|e| format!("{}: {e}", spec.label()))?;
            ensure(r.passed(), || format!("{}: {:?}", spec.label(), r.checks))?;
            lines.push(format!("{} ({} containments)", spec.label(), r.checks.len()));
        }
    }
    Ok(lines.join(", "))
}

/// Every hyperplane of `L` over a small field, by brute force.
fn hyperplanes(alg: &RestrictedLieAlgebra) -> Vec<Subspace> {
    let f = alg.field();
    let n = alg.dim();
    let elems = f.elements().expect("finite field");
    let mut out: Vec<Subspace> = Vec::new();
    let total = elems.len().pow(n as u32);
    for t in 1..total {
        let phi: Vec<Scalar> = (0..n).map(|i| elems[t / elems.len().pow(i as u32) % elems.len()].clone()).collect();
        let kernel = liesolv::exactla::nullspace(f, n, &[phi]);
        let h = Subspace::span_of(f, n, &kernel);
        if !out.contains(&h) {
            out.push(h);
        }
    }
    out
}

fn criterion_8() -> Check {
    let mut lines = Vec::new();
    let mut specs = Vec::new();
    for f in fields() {
        specs.push(F::Heisenberg { field: f.clone() });
        for (center_dim, toral_center) in [(0, false), (1, false), (1, true), (2, false), (2, true)] {
            specs.push(F::FamIII { field: f.clone(), center_dim, toral_center });
        }
    }
    let mut fam_iii = 0;
    for spec in specs {
        let alg = build(&spec);
        let Some(a) = hyperplanes(&alg)
            .into_iter()
            .find(|h| alg.lie().is_abelian_subspace(h) && alg.is_restricted_ideal(h))
        else {
            lines.push(format!("{}: no abelian restricted ideal of codim 1", spec.label()));
            continue;
        };
        let r = m2_embedding_check(&alg, &a, 64, 7).map_err(|e| format!("{}: {e}", spec.label()))?;
        ensure(r.passed() && r.pairs_checked >= 50, || format!("{}: {r:?}", spec.label()))?;
        fam_iii += matches!(spec, F::FamIII { .. }) as usize;
        lines.push(format!("{}: {} pairs", spec.label(), r.pairs_checked));
    }
    ensure(fam_iii > 0, || "no FamIII instance checked".into())?;
    Ok(lines.join(", "))
}

/// Nonzero `x` in `L` with `x^[2^m] = 0` for some `m`, by enumerating `L`.
fn has_nilpotent_element(alg: &RestrictedLieAlgebra) -> bool {
    let f = alg.field();
    let n = alg.dim();
    let elems = f.elements().expect("finite field");
    let q = elems.len();
    (1..q.pow(n as u32)).any(|t| {
        let mut x: Vector = (0..n).map(|i| elems[t / q.pow(i as u32) % q].clone()).collect();
        for _ in 0..=n {
            x = alg.pmap_eval(&x);
            if x.iter().all(Scalar::is_zero) {
                return true;
            }
        }
        false
    })
}

fn criterion_9() -> Check {
    let (mut checked, mut reduced) = (0, 0);
    for f in fields() {
        let q = f.size().expect("finite") as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 1..=8usize {
            if q.pow(n as u32) > 1 << 16 {
                break;
            }
            for _ in 0..12 {
                let names = (1..=n).map(|i| format!("t{i}")).collect();
                // sparse random power map; any choice is restricted on an abelian algebra
                let pmap = (0..n)
                    .map(|_| (0..n).map(|_| if rng.gen_bool(0.4) { f.random(&mut rng) } else { f.zero() }).collect())
                    .collect();
                let alg = RestrictedLieAlgebra::new(LieAlgebra::abelian(&f, names), pmap).unwrap();
                let r = reducedness_check(&alg, 3).map_err(|e| e.to_string())?;
                let brute = !has_nilpotent_element(&alg);
                ensure(r.reduced == brute, || format!("n={n} over {}: check {} vs brute force {brute}", f.name(), r.reduced))?;
                ensure(r.nilpotent_sample.is_none() || !r.reduced, || "nilpotent sample in a reduced algebra".into())?;
                checked += 1;
                reduced += r.reduced as usize;
            }
        }
    }
    Ok(format!("{checked} abelian instances, {reduced} reduced, 0 disagreements"))
}

fn criterion_10() -> Check {
    let mut lengths = Vec::new();
    for k in 1..=3 {
        let alg = build(&F::WitnessChain { field: Field::gf2(), k });
        let s = Envelope::new(&alg).unwrap().lie_derived_series(None, 40);
        let DerivedOutcome::ReachedZero { length } = s.outcome else {
            return Err(format!("witness_chain({k}): {:?}", s.outcome));
        };
        lengths.push(length);
    }
    let nondecreasing = lengths.windows(2).all(|w| w[0] <= w[1]);
    let strict = lengths.windows(2).any(|w| w[0] < w[1]);
    ensure(nondecreasing && strict, || format!("derived lengths {lengths:?}"))?;
    Ok(format!("derived lengths {lengths:?}"))
}

fn criterion_11() -> Check {
    use liesolv::ordinary::{self, examples as ex, WitnessBudget, WitnessOutcome};
    let f = Field::gf2();
    let budget = WitnessBudget::default();
    let abelian = LieAlgebra::abelian(&f, vec!["a".into(), "b".into()]);
    for (name, lie) in [("abelian", abelian), ("H3", ex::heisenberg(&f).unwrap()), ("(iv)", ex::two_eigenvectors(&f).unwrap())] {
        let v = ordinary::corollary_classify(&lie, budget).map_err(|e| e.to_string())?;
        ensure(v.is_solvable(), || format!("{name}: {v:?}"))?;
    }
    let free = ex::free_class2_rank4(&f).unwrap();
    let WitnessOutcome::Witness { text, .. } = ordinary::witness_search(&free, budget).map_err(|e| e.to_string())? else {
        return Err("no witness for free class 2 on 4 generators".into());
    };
    ensure(text == "z14^3*z23 + z13*z14^2*z24 + z12*z14^2*z34", || format!("witness {text}"))?;
    let ext = f.extend_default(2).unwrap();
    let mut both = 0;
    for seed in 0..200u64 {
        let n = 2 + (seed % 4) as usize;
        let lie = ordinary::random_metabelian(n, &f, seed).map_err(|e| e.to_string())?;
        let r = ordinary::descent_abelian_codim1(&lie, &ext);
        ensure(r.implication_holds, || format!("descent anomaly n={n} seed={seed}"))?;
        both += (r.base && r.extended) as usize;
    }
    Ok(format!("abelian, H3, (iv) solvable; witness {text}; descent holds on 200 ({both} with the ideal)"))
}

fn criterion_12() -> Check {
    use liesolv::cli::{run, Command, FamilyChoice, OrdinaryAction, OrdinaryFamily};
    use liesolv::ordinary::WitnessBudget;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let p = |name: &str| dir.path().join(name);
    let f = Field::gf4();
    let families = [
        ("h3.json", FamilyChoice::Restricted(F::Heisenberg { field: f.clone() })),
        ("f5.json", FamilyChoice::Restricted(F::FamV { field: f.clone(), h_dim: 2 })),
        ("n7.json", FamilyChoice::Restricted(F::NegativeClass2 { field: Field::gf2() })),
        ("r.json", FamilyChoice::Restricted(F::Random { field: f.clone(), n: 5, seed: 12 })),
        ("o.json", FamilyChoice::Ordinary { tag: OrdinaryFamily::TwoEigenvectors, field: f.clone() }),
    ];
    let mut commands: Vec<Command> =
        families.iter().map(|(n, c)| Command::Family { choice: c.clone(), output: p(n) }).collect();
    for n in ["h3.json", "f5.json", "n7.json", "r.json"] {
        commands.push(Command::Classify { file: p(n), ladder: 4, core_dim_limit: 7, oracle: true });
        commands.push(Command::Solvable { file: p(n), max_steps: 32 });
        commands.push(Command::SzIndex { file: p(n) });
    }
    for action in [OrdinaryAction::Classify, OrdinaryAction::Witness, OrdinaryAction::Envelope] {
        commands.push(Command::Ordinary { action, file: p("o.json"), budget: WitnessBudget::default(), m_max: 3 });
    }
    commands.push(Command::RationalExample);
    commands.push(Command::Corpus { dir: dir.path().into() });
    let suite = || -> Result<Vec<String>, String> {
        commands.iter().map(|c| run(c, 5).map(|o| o.json()).map_err(|e| e.to_string())).collect()
    };
    let (first, second) = (suite()?, suite()?);
    ensure(first == second, || "reports differ between runs".into())?;
    let bytes: usize = first.iter().map(String::len).sum();
    Ok(format!("{} commands, {bytes} bytes of reports identical across two runs", first.len()))
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Check, u64); 12] = [
        (1, criterion_1, 5),
        (2, criterion_2, 3600),
        (3, criterion_3, 60),
        (4, criterion_4, 1800),
        (5, criterion_5, 120),
        (6, criterion_6, 1800),
        (7, criterion_7, 600),
        (8, criterion_8, 600),
        (9, criterion_9, 600),
        (10, criterion_10, 600),
        (11, criterion_11, 600),
        (12, criterion_12, 600),
    ];
    let mut failed = 0;
    for (n, check, budget) in criteria {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let el = t.elapsed();
        let result = result.and_then(|s| {
            if el > Duration::from_secs(budget) {
                Err(format!("{s}; over the {budget}s budget"))
            } else {
                Ok(s)
            }
        });
        match result {
            Ok(s) => println!("criterion {n:>2}: PASS [{el:.2?}] {s}"),
            Err(s) => {
                failed += 1;
                println!("criterion {n:>2}: FAIL [{el:.2?}] {s}");
            }
        }
    }
    println!("{} of 12 criteria pass", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
