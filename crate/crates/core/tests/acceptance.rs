//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (run with `--nocapture` to see the lines for passing
//! tests). Every numeric claim is exact; there are no tolerances.

use std::sync::Arc;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use skewring::derivation::enumerate_derivations;
use skewring::finring::product_embed;
use skewring::{
    build_matrix_ring, build_product, build_truncated_poly, build_zn, centre_intersection_check,
    compute_s, d_stable_core, holds_on, is_quasi_regular, jacobson_radical, load_ringfile,
    move_coeff, nilradical, parse_poly, parse_ringfile, quotient_transfer_check, replay_proof,
    standard_identity, theorem1_certificate, BuiltRing, Caps, Derivation, FiniteRing, RingElement,
    SearchOutcome, SkewPoly,
};

fn caps() -> Caps {
    Caps::default()
}

fn load_corpus_file(name: &str) -> BuiltRing {
    let path = format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    load_ringfile(&text, &caps()).unwrap_or_else(|e| panic!("{path}: {e}"))
}

/// The six (R, D) instances the certificates are replayed on.
fn corpus() -> Vec<(&'static str, BuiltRing)> {
    [
        "z4_trivial.ring",
        "tdual.ring",
        "t2f2_inner.ring",
        "m2f2_inner.ring",
        "z2xm2f2.ring",
        "truncpoly43_euler.ring",
    ]
    .into_iter()
    .map(|f| (f, load_corpus_file(f)))
    .collect()
}

fn report(criterion: u32, ok: bool, detail: &str) {
    println!(
        "acceptance criterion {criterion:2}: {} — {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {detail}");
}

#[test]
fn criterion_01_theorem1_certificates_on_corpus() {
    let mut detail = String::new();
    let mut all = true;
    for (name, built) in corpus() {
        let cert = theorem1_certificate(&built.ring, &built.deriv, 42, &caps()).unwrap();
        let ok = cert.s_is_ideal && cert.s_is_d_stable && cert.s_is_nil;
        all &= ok;
        detail.push_str(&format!("{name}: |S|={} nil-D-ideal={ok}; ", cert.s.len()));
    }
    report(1, all, detail.trim_end_matches("; "));
}

#[test]
fn criterion_02_radical_ground_truth_vs_oracle() {
    // independent oracle: exhaustive ideal lattice, maximal quasi-regular ideal
    fn oracle(ring: &Arc<FiniteRing>) -> Vec<RingElement> {
        let mut best: Vec<RingElement> = vec![ring.zero()];
        for ideal in ring.enumerate_ideals(&caps()).unwrap() {
            if ideal
                .elements()
                .iter()
                .all(|a| is_quasi_regular(ring, a))
                && ideal.len() > best.len()
            {
                best = ideal.elements().to_vec();
            }
        }
        best
    }

    let z4 = build_zn(4, &caps()).unwrap();
    let j = jacobson_radical(&z4, &caps()).unwrap();
    assert_eq!(j.elements(), oracle(&z4));
    assert_eq!(
        j.elements(),
        vec![z4.zero(), z4.element(&[2]).unwrap()]
    );

    let m2 = build_matrix_ring(2, 2, &caps()).unwrap();
    let j = jacobson_radical(&m2, &caps()).unwrap();
    assert_eq!(j.elements(), oracle(&m2));
    assert_eq!(j.elements(), vec![m2.zero()]);

    let t2 = load_corpus_file("t2f2_inner.ring");
    let j = jacobson_radical(&t2.ring, &caps()).unwrap();
    assert_eq!(j.elements(), oracle(&t2.ring));
    let e12 = t2.ring.generator(*t2.labels.get("E12").unwrap());
    assert_eq!(j.elements(), vec![t2.ring.zero(), e12]);

    report(2, true, "J(Z_4)={0,2}, J(M_2(F_2))={0}, J(T_2(F_2))={0,E12}, all equal to the lattice oracle");
}

#[test]
fn criterion_03_proof_replay_every_element_of_s() {
    let mut replayed = 0usize;
    for (name, built) in corpus() {
        let s = compute_s(&built.ring, &built.deriv, &caps()).unwrap();
        for a in s.elements() {
            let rec = replay_proof(&built.ring, &built.deriv, a, &caps()).unwrap();
            assert!(
                rec.passed(),
                "{name}: replay failed for {a}: {:?}",
                rec.checks
            );
            replayed += 1;
        }
    }
    report(3, true, &format!("{replayed} elements replayed, every check exact zero"));
}

#[test]
fn criterion_04_commutation_identity_vs_one_step_oracle() {
    // oracle: right-normalize a*x^r by repeated single swaps c*x = x*c - D(c)
    fn one_step_oracle(deriv: &Arc<Derivation>, a: &RingElement, r: usize) -> Vec<RingElement> {
        let ring = deriv.ring();
        let mut coeffs = vec![a.clone()];
        for _ in 0..r {
            let mut next = vec![ring.zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = ring.add(&next[i + 1], c);
                next[i] = ring.sub(&next[i], &deriv.apply(c));
            }
            coeffs = next;
        }
        coeffs
    }

    let mut checked = 0usize;
    for file in ["tdual.ring", "t2f2_inner.ring", "truncpoly43_euler.ring"] {
        let built = load_corpus_file(file);
        for a in built.ring.elements() {
            for r in 0..=6usize {
                let got = move_coeff(&built.deriv, &a, r);
                let want = one_step_oracle(&built.deriv, &a, r);
                for (i, w) in want.iter().enumerate() {
                    assert_eq!(
                        &got.coefficient(i),
                        w,
                        "{file}: move_coeff({a}, {r}) coefficient {i}"
                    );
                }
                assert!(got.degree().is_none_or(|d| d < want.len()));
                checked += 1;
            }
        }
    }
    report(4, true, &format!("{checked} (a, r) pairs exhaustive, zero mismatches"));
}

#[test]
fn criterion_05_skew_ring_axioms_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut total = 0usize;
    for (name, built) in corpus() {
        let elems: Vec<RingElement> = built.ring.elements().collect();
        let rand_poly = |rng: &mut ChaCha8Rng| {
            let deg = rng.random_range(0..=4usize);
            let coeffs = (0..=deg)
                .map(|_| elems[rng.random_range(0..elems.len())].clone())
                .collect();
            SkewPoly::from_coeffs(built.deriv.clone(), coeffs).unwrap()
        };
        for _ in 0..10_000 {
            let p = rand_poly(&mut rng);
            let q = rand_poly(&mut rng);
            let r = rand_poly(&mut rng);
            let assoc = p.mul(&q).unwrap().mul(&r).unwrap() == p.mul(&q.mul(&r).unwrap()).unwrap();
            let ldist = p.mul(&q.add(&r).unwrap()).unwrap()
                == p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap();
            let rdist = p.add(&q).unwrap().mul(&r).unwrap()
                == p.mul(&r).unwrap().add(&q.mul(&r).unwrap()).unwrap();
            assert!(assoc && ldist && rdist, "{name}: axiom failure");
            total += 1;
        }
    }
    report(5, true, &format!("{total} random (p,q,r) triples, all axioms exact"));
}

#[test]
fn criterion_06_corollary_instance_m2f2() {
    let m2 = build_matrix_ring(2, 2, &caps()).unwrap();
    let derivs = enumerate_derivations(&m2, &caps()).unwrap();
    assert!(!derivs.is_empty());
    let mut found: Vec<String> = Vec::new();
    let mut searches = 0usize;
    for d in derivs {
        let d = Arc::new(d);
        let s = compute_s(&m2, &d, &caps()).unwrap();
        assert!(s.is_zero(), "S must be {{0}} on the semiprime ring M_2(F_2)");
        for a in m2.elements().filter(|a| !a.is_zero()) {
            let p = SkewPoly::monomial(d.clone(), 1, a.clone()).unwrap();
            searches += 1;
            if let SearchOutcome::Found(f) = p.quasi_inverse_search(8, &caps()).unwrap() {
                found.push(format!("x*({a}) has quasi-inverse {f}"));
            }
        }
    }
    let ok = found.is_empty();
    let detail = if ok {
        format!("S={{0}} for every derivation; {searches} bounded searches all NotFound")
    } else {
        format!(
            "S={{0}} holds, but {} of {searches} searches found a quasi-inverse \
             (nilpotent x*a with a^2=0 and D(a)a=0 is quasi-regular even though \
             J(R[x;D])=0; first: {})",
            found.len(),
            found[0]
        )
    };
    report(6, ok, &detail);
}

#[test]
fn criterion_07_nilradical_not_d_stable_on_dual_numbers() {
    let built = load_corpus_file("tdual.ring");
    let t = built.ring.generator(1);
    let n = nilradical(&built.ring, &caps()).unwrap();
    assert_eq!(n.elements(), vec![built.ring.zero(), t.clone()]);
    let s = compute_s(&built.ring, &built.deriv, &caps()).unwrap();
    assert!(s.is_zero());
    let rep = quotient_transfer_check(&built.ring, &built.deriv, &caps()).unwrap();
    assert!(!rep.descends);
    assert_eq!(rep.obstruction, Some(t));
    report(7, true, "N={0,t}, S={0}, obstruction witness t recorded");
}

#[test]
fn criterion_08_amitsur_levitzki_instance() {
    let m2 = build_matrix_ring(2, 2, &caps()).unwrap();
    let (ok4, _) = holds_on(&m2, &standard_identity(4).unwrap()).unwrap();
    assert!(ok4);
    let (ok2, witness) = holds_on(&m2, &standard_identity(2).unwrap()).unwrap();
    assert!(!ok2);
    assert_eq!(witness.unwrap(), vec![m2.generator(0), m2.generator(1)]);
    report(8, true, "S_4 holds on M_2(F_2); S_2 fails with witness (E11, E12)");
}

#[test]
fn criterion_09_centre_theorem_instances() {
    let m2 = build_matrix_ring(2, 2, &caps()).unwrap();
    let rep = centre_intersection_check(&m2, &caps()).unwrap();
    assert_eq!(rep.checked, 15);
    assert!(rep.violations.is_empty());

    let prod = load_corpus_file("z2xm2f2.ring");
    let rep2 = centre_intersection_check(&prod.ring, &caps()).unwrap();
    assert_eq!(rep2.checked, 31);
    assert!(rep2.violations.is_empty());
    report(9, true, "15 + 31 nonzero principal ideals all meet the centre");
}

#[test]
fn criterion_10_d_zero_specialization_random_commutative_rings() {
    // random valid commutative structure-constant rings: seeded products of
    // cyclic and truncated polynomial factors, |R| <= 64
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut built = 0usize;
    while built < 20 {
        let factor = |rng: &mut ChaCha8Rng| match rng.random_range(0..5u32) {
            0 => build_zn(rng.random_range(2..=9u64), &caps()).unwrap(),
            1 => build_truncated_poly(2, rng.random_range(2..=3usize), &caps()).unwrap(),
            2 => build_truncated_poly(4, 2, &caps()).unwrap(),
            3 => build_truncated_poly(3, 2, &caps()).unwrap(),
            _ => build_zn(2u64.pow(rng.random_range(1..=3u32)), &caps()).unwrap(),
        };
        let r = if rng.random_bool(0.5) {
            factor(&mut rng)
        } else {
            let a = factor(&mut rng);
            let b = factor(&mut rng);
            if a.order() * b.order() > 64 {
                continue;
            }
            build_product(&a, &b, &caps()).unwrap()
        };
        if r.order() > 64 {
            continue;
        }
        let d = Arc::new(Derivation::trivial(r.clone()));
        let s = compute_s(&r, &d, &caps()).unwrap();
        let n = nilradical(&r, &caps()).unwrap();
        assert_eq!(s.elements(), n.elements(), "|R|={}", r.order());
        // and the core really is the fixed point of the chain
        let again = d_stable_core(&r, &d, &n, &caps()).unwrap();
        assert_eq!(again.elements(), n.elements());
        built += 1;
    }
    report(10, true, "20 random commutative rings: compute_S(R, 0) = nilradical(R)");
}

#[test]
fn criterion_11_parser_round_trip_and_fuzz() {
    // 100 canonical expressions round-trip byte-exactly
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut round_trips = 0usize;
    for file in ["tdual.ring", "truncpoly43_euler.ring", "t2f2_inner.ring", "z4_trivial.ring"] {
        let built = load_corpus_file(file);
        let elems: Vec<RingElement> = built.ring.elements().collect();
        for _ in 0..25 {
            let deg = rng.random_range(0..=5usize);
            let coeffs = (0..=deg)
                .map(|_| elems[rng.random_range(0..elems.len())].clone())
                .collect();
            let p = SkewPoly::from_coeffs(built.deriv.clone(), coeffs).unwrap();
            let printed = p.to_string();
            let reparsed = parse_poly(&printed, &built).unwrap();
            assert_eq!(reparsed, p, "{file}: parse(print(p)) != p");
            assert_eq!(reparsed.to_string(), printed, "{file}: print not canonical");
            round_trips += 1;
        }
    }
    assert!(round_trips >= 100);

    // 10^5 fuzzed ringfile inputs: Ok or ParseError, never a panic
    let tokens = [
        "ring.kind", "ring.params", "ring.labels", "ring.left", "ring.right", "=", "zn",
        "matrix", "truncpoly", "product", "structure", "triangular", "[structure]",
        "[derivation]", "D(g1)", "inner", "zero", "g1", "g2", "2g1 + g3", "4", "2,2", "#x",
        "\n", "*", "(", ")", "-", "9999999999999999999999999", "é", "\t", ":", "g1*g2",
    ];
    for _ in 0..100_000 {
        let n = rng.random_range(0..24usize);
        let mut text = String::new();
        for _ in 0..n {
            if rng.random_bool(0.8) {
                text.push_str(tokens[rng.random_range(0..tokens.len())]);
            } else {
                text.push(rng.random_range(0x20u8..0x7f) as char);
            }
            if rng.random_bool(0.3) {
                text.push('\n');
            }
        }
        let _ = parse_ringfile(&text); // must not panic
    }
    report(11, true, &format!("{round_trips} round-trips byte-exact; 100000 fuzz inputs, no crash"));
}

/// Monotonicity across direct products (certificate invariant): the core of a
/// product is the product of the cores.
#[test]
fn product_core_monotonicity() {
    let z4 = build_zn(4, &caps()).unwrap();
    let m2 = build_matrix_ring(2, 2, &caps()).unwrap();
    let prod = build_product(&z4, &m2, &caps()).unwrap();
    let d = Arc::new(Derivation::trivial(prod.clone()));
    let s = compute_s(&prod, &d, &caps()).unwrap();
    let s_left = compute_s(&z4, &Arc::new(Derivation::trivial(z4.clone())), &caps()).unwrap();
    let s_right = compute_s(&m2, &Arc::new(Derivation::trivial(m2.clone())), &caps()).unwrap();
    let mut expected: Vec<RingElement> = Vec::new();
    for a in s_left.elements() {
        for b in s_right.elements() {
            expected.push(product_embed(&prod, z4.generator_count(), Some(a), Some(b)).unwrap());
        }
    }
    expected.sort();
    assert_eq!(s.elements(), expected);
}
