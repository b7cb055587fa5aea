//! Ordinary Lie algebras: U(L) arithmetic, the classifier, witnesses and
//! the 2-envelope.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use liesolv::exactla::Echelon;
use liesolv::ordinary::examples as ex;
use liesolv::ordinary::{
    corollary_classify, descent_abelian_codim1, two_envelope, witness_search, OrdTag, OrdVerdict, Pattern,
    UEnvElement, UEnvelope, WitnessBudget, WitnessOutcome,
};
use liesolv::resla::LieAlgebra;
use liesolv::scalar::Field;

fn curated(f: &Field) -> Vec<(&'static str, LieAlgebra)> {
    vec![
        ("abelian", LieAlgebra::abelian(f, vec!["a".into(), "b".into(), "c".into()])),
        ("affine", ex::affine_line(f).unwrap()),
        ("heisenberg", ex::heisenberg(f).unwrap()),
        ("two_eigenvectors", ex::two_eigenvectors(f).unwrap()),
        ("free_class2_rank4", ex::free_class2_rank4(f).unwrap()),
    ]
}

/// Random element of degree at most 3 with coefficients in `f`.
fn random_element(u: &UEnvelope, rng: &mut ChaCha8Rng) -> UEnvElement {
    let n = u.lie().dim();
    let mut out = UEnvElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut e = vec![0u32; n];
        for _ in 0..rng.gen_range(0..=3) {
            e[rng.gen_range(0..n)] += 1;
        }
        let c = u.field().random_nonzero(rng);
        out = u.add(&out, &u.scale(&c, &u.monomial(e)));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Associativity and the absence of zero divisors on degree-3 elements.
    #[test]
    fn u_is_an_associative_domain(which in 0usize..4, gf4 in any::<bool>(), seed in any::<u64>()) {
        let f = if gf4 { Field::gf4() } else { Field::gf2() };
        let lie = curated(&f).swap_remove(which + 1).1;
        let u = UEnvelope::new(&lie).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (random_element(&u, &mut rng), random_element(&u, &mut rng), random_element(&u, &mut rng));
        prop_assert_eq!(u.mul(&u.mul(&a, &b), &c), u.mul(&a, &u.mul(&b, &c)));
        let ab = u.mul(&a, &b);
        prop_assert!(a.is_zero() || b.is_zero() || !ab.is_zero());
        let degree_sum = a.degree().unwrap_or(0) + b.degree().unwrap_or(0);
        prop_assert!(ab.degree().unwrap_or(0) <= degree_sum);
    }
}

#[test]
fn classifier_matches_expected_conditions() {
    let f = Field::gf2();
    let expect = [
        ("abelian", Some(OrdTag::Abelian)),
        ("affine", Some(OrdTag::CodimOneAbelian)),
        ("heisenberg", Some(OrdTag::CodimOneAbelian)),
        ("two_eigenvectors", Some(OrdTag::TwoEigenvectors)),
        ("free_class2_rank4", None),
    ];
    for ((name, lie), (ename, tag)) in curated(&f).into_iter().zip(expect) {
        assert_eq!(name, ename);
        let v = corollary_classify(&lie, WitnessBudget::default()).unwrap();
        assert_eq!(v.tag(), tag, "{name}");
    }
}

#[test]
fn heisenberg_certificate_is_the_hyperplane_through_the_center() {
    let v = corollary_classify(&ex::heisenberg(&Field::gf2()).unwrap(), WitnessBudget::default()).unwrap();
    assert_eq!(v, OrdVerdict::Solvable { tag: OrdTag::CodimOneAbelian, certificate: vec!["A = <y, z>".into()] });
}

#[test]
fn class2_with_three_dimensional_quotient() {
    // free class 2 on three generators: no abelian ideal of codimension 1
    let f = Field::gf2();
    let e = |k| liesolv::exactla::unit_vector(&f, 6, k);
    let names = ["x1", "x2", "x3", "z12", "z13", "z23"].map(String::from).to_vec();
    let lie = LieAlgebra::from_brackets(&f, names, &[(0, 1, e(3)), (0, 2, e(4)), (1, 2, e(5))]).unwrap();
    assert_eq!(corollary_classify(&lie, WitnessBudget::default()).unwrap().tag(), Some(OrdTag::Class2Codim3));
}

/// Witness for the free class-2 algebra on four generators, checked against
/// the polynomial `z14^2 (z12 z34 + z13 z24 + z14 z23)` computed by hand.
#[test]
fn free_class2_witness_is_the_expected_polynomial() {
    let f = Field::gf2();
    let lie = ex::free_class2_rank4(&f).unwrap();
    let WitnessOutcome::Witness { pattern, element, .. } = witness_search(&lie, WitnessBudget::default()).unwrap() else {
        panic!("expected a witness");
    };
    assert_eq!(pattern, Pattern::FourGenerator);
    // basis order x1..x4, z12, z13, z14, z23, z24, z34
    let mono = |pairs: &[(usize, u32)]| {
        let mut e = vec![0u32; 10];
        for &(i, k) in pairs {
            e[i] = k;
        }
        e
    };
    let expected = [mono(&[(6, 2), (4, 1), (9, 1)]), mono(&[(6, 2), (5, 1), (8, 1)]), mono(&[(6, 3), (7, 1)])];
    let mut got: Vec<Vec<u32>> = element.terms().map(|(m, _)| m.clone()).collect();
    got.sort();
    let mut want = expected.to_vec();
    want.sort();
    assert_eq!(got, want);
}

/// A certificate and a witness never coexist on the curated set.
#[test]
fn certificates_and_witnesses_exclude_each_other() {
    for f in [Field::gf2(), Field::gf4()] {
        for (name, lie) in curated(&f) {
            let v = corollary_classify(&lie, WitnessBudget::default()).unwrap();
            let w = witness_search(&lie, WitnessBudget::default()).unwrap();
            assert_eq!(v.is_solvable(), !w.is_witness(), "{name} over {}", f.name());
        }
    }
}

#[test]
fn two_envelope_sums_grow_and_contain_squares() {
    let f = Field::gf2();
    let lie = ex::affine_line(&f).unwrap();
    let env = two_envelope(&lie, 3).unwrap();
    assert!(!env.stabilized);
    assert!(env.total_dims.windows(2).all(|w| w[0] < w[1]));
    // (x + y)^2 lies in the span of the second level
    let u = UEnvelope::new(&lie).unwrap();
    let s = u.add(&u.generator(0), &u.generator(1));
    let sq = u.mul(&s, &s);
    let mut all: Vec<&UEnvElement> = env.spans[1].iter().collect();
    all.push(&sq);
    let monos: std::collections::BTreeSet<&Vec<u32>> = all.iter().flat_map(|e| e.terms().map(|(m, _)| m)).collect();
    let idx: Vec<&Vec<u32>> = monos.into_iter().collect();
    let mut ech = Echelon::new(&f, idx.len());
    for e in &env.spans[1] {
        let v: Vec<_> = idx.iter().map(|m| e.terms().find(|(k, _)| k == m).map_or(f.zero(), |(_, c)| c.clone())).collect();
        assert!(ech.insert(&v));
    }
    let v: Vec<_> = idx.iter().map(|m| sq.terms().find(|(k, _)| k == m).map_or(f.zero(), |(_, c)| c.clone())).collect();
    assert!(!ech.insert(&v));
}

#[test]
fn descent_on_fixtures() {
    let f = Field::gf2();
    let ext = f.extend_default(2).unwrap();
    for (name, lie) in curated(&f) {
        let r = descent_abelian_codim1(&lie, &ext);
        assert!(r.implication_holds, "{name}");
        assert_eq!(r.base, name != "free_class2_rank4" && name != "two_eigenvectors", "{name}");
    }
}
