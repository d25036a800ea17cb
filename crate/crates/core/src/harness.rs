//! Certificate machinery for the main radical theorem on finite rings.
//!
//! For a finite ring `R` with derivation `D`, the intersection of
//! `J(R[x;D])` with `R` is realized computationally as the largest D-stable
//! ideal inside the nilradical `N(R)`. One direction is the theorem itself
//! (S is a nil D-ideal, hence inside that core); the other follows because
//! the core is a nilpotent D-stable ideal, so its skew extension is a
//! nilpotent ideal of `R[x;D]` and sits inside the radical. Reports label
//! the surrogate accordingly.

use std::sync::Arc;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::finring::{FiniteRing, IdealSet, RingElement};
use crate::radical;
use crate::skewpoly::{SearchOutcome, SkewPoly};

pub const S_PROVENANCE: &str = "S computed as the largest D-stable ideal inside N(R)";

/// `S`: the largest D-stable ideal inside the nilradical.
pub fn compute_s(ring: &Arc<FiniteRing>, deriv: &Derivation, caps: &Caps) -> Result<IdealSet> {
    let n = radical::nilradical(ring, caps)?;
    radical::d_stable_core(ring, deriv, &n, caps)
}

/// Per-element replay of the coefficient identities behind the proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayRecord {
    pub element: RingElement,
    /// Canonical form of the quasi-inverse `f` of `x*a`.
    pub quasi_inverse: String,
    pub degree: Option<usize>,
    pub checks: Vec<(String, bool)>,
}

impl ReplayRecord {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Construct the quasi-inverse `f` of `p = x*a` for `a` in `S` and check,
/// coefficient by coefficient:
///   - both circle equations vanish exactly;
///   - `b_0 = 0`;
///   - `b_n a = 0`;
///   - `b_i - b_{i-1} a + D(b_i) a = 0` for `i = 2..n`;
///   - `b_1 + a + D(b_1) a = 0`;
///   - every coefficient of `f(xa) - (xa)f` vanishes (this subsumes the
///     degree-specific commutator instances);
///   - the chain `b_{n-j+1} a^j` lands in `N` for `j = 1..n`, and
///     `a^{n+1}` lands in `N`.
pub fn replay_proof(
    ring: &Arc<FiniteRing>,
    deriv: &Arc<Derivation>,
    a: &RingElement,
    caps: &Caps,
) -> Result<ReplayRecord> {
    let s = compute_s(ring, deriv, caps)?;
    if !s.contains(a) {
        return Err(Error::NotInS);
    }
    let n_ideal = radical::nilradical(ring, caps)?;
    let s_index = radical::nilpotence_index(ring, &s).ok_or_else(|| {
        Error::InternalInconsistency("S must be nilpotent over a finite ring".into())
    })?;

    let p = SkewPoly::monomial(deriv.clone(), 1, a.clone())?;
    // p has coefficients in the D-stable nilpotent ideal S, so p^k = 0 at
    // the ideal's nilpotence index
    let f = p
        .quasi_inverse_nilpotent(s_index)
        .map_err(|e| Error::QuasiInverseFailure(e.to_string()))?;

    let mut checks: Vec<(String, bool)> = Vec::new();
    checks.push((
        "circle_right".into(),
        f.circle(&p)?.is_zero(),
    ));
    checks.push((
        "circle_left".into(),
        p.circle(&f)?.is_zero(),
    ));
    checks.push(("b0_zero".into(), f.coefficient(0).is_zero()));

    let n = f.degree().unwrap_or(0);
    let b = |i: usize| f.coefficient(i);
    let d_of = |x: &RingElement| deriv.apply(x);

    // b_n a = 0
    checks.push(("top_coefficient_kills_a".into(), ring.mul(&b(n), a).is_zero()));
    // b_i - b_{i-1} a + D(b_i) a = 0 for i = 2..n
    let mut middle_ok = true;
    for i in 2..=n {
        let v = ring.add(
            &ring.sub(&b(i), &ring.mul(&b(i - 1), a)),
            &ring.mul(&d_of(&b(i)), a),
        );
        if !v.is_zero() {
            middle_ok = false;
        }
    }
    checks.push(("middle_coefficients".into(), middle_ok));
    // b_1 + a + D(b_1) a = 0
    let v = ring.add(&ring.add(&b(1), a), &ring.mul(&d_of(&b(1)), a));
    checks.push(("degree_one_coefficient".into(), v.is_zero()));
    // all coefficients of f(xa) - (xa)f vanish
    let comm = f.mul(&p)?.sub(&p.mul(&f)?)?;
    checks.push(("commutator_with_xa".into(), comm.is_zero()));

    // claim chain: b_{n-j+1} a^j in N for j = 1..n, and a^{n+1} in N
    let mut chain_ok = true;
    if !f.is_zero() {
        let mut a_pow = a.clone();
        for j in 1..=n {
            let prod = ring.mul(&b(n - j + 1), &a_pow);
            if !n_ideal.contains(&prod) {
                chain_ok = false;
            }
            a_pow = ring.mul(&a_pow, a);
        }
        // a_pow is now a^{n+1}
        if !n_ideal.contains(&a_pow) {
            chain_ok = false;
        }
    }
    checks.push(("nilradical_chain".into(), chain_ok));

    Ok(ReplayRecord {
        element: a.clone(),
        quasi_inverse: f.to_string(),
        degree: f.degree(),
        checks,
    })
}

/// Evidence that `S[x;D]` is a nilpotent ideal: products of `k` polynomials
/// with coefficients in `S` vanish, and the geometric-series quasi-inverse
/// works for sampled members.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SkewNilpotenceCertificate {
    pub nilpotence_index: usize,
    pub products_checked: usize,
    pub quasi_inverses_checked: usize,
    pub exhaustive: bool,
}

pub fn certify_nilpotent_skew_ideal(
    ring: &Arc<FiniteRing>,
    deriv: &Arc<Derivation>,
    s: &IdealSet,
    seed: u64,
    _caps: &Caps,
) -> Result<SkewNilpotenceCertificate> {
    ring.verify_ideal(s)?;
    let k = radical::nilpotence_index(ring, s).ok_or_else(|| {
        Error::CertificateFailure("S is not a nilpotent ideal".into())
    })?;
    if s.is_zero() {
        return Ok(SkewNilpotenceCertificate {
            nilpotence_index: k,
            products_checked: 0,
            quasi_inverses_checked: 0,
            exhaustive: true,
        });
    }

    let degree_bound = 2usize;
    let tuple_space = (s.len() as u128).checked_pow(k as u32);
    let exhaustive = matches!(tuple_space, Some(t) if t <= 4096);
    let mut products_checked = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let check_product = |factors: &[SkewPoly]| -> Result<()> {
        let mut acc = factors[0].clone();
        for f in &factors[1..] {
            acc = acc.mul(f)?;
        }
        if !acc.is_zero() {
            return Err(Error::CertificateFailure(format!(
                "product of {} polynomials over S is nonzero: {}",
                factors.len(),
                acc
            )));
        }
        Ok(())
    };

    if exhaustive {
        // all k-tuples of monomials x^d * s with degrees cycling 0..=2
        let mut idx = vec![0usize; k];
        loop {
            let factors: Vec<SkewPoly> = idx
                .iter()
                .enumerate()
                .map(|(pos, &i)| {
                    SkewPoly::monomial(
                        deriv.clone(),
                        (pos + i) % (degree_bound + 1),
                        s.elements()[i % s.len()].clone(),
                    )
                })
                .collect::<Result<_>>()?;
            check_product(&factors)?;
            products_checked += 1;
            let mut pos = k;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < s.len() {
                    break;
                }
                idx[pos] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    } else {
        for _ in 0..1000 {
            let factors: Vec<SkewPoly> = (0..k)
                .map(|_| {
                    let coeffs: Vec<RingElement> = (0..=rng.random_range(0..=degree_bound))
                        .map(|_| s.elements()[rng.random_range(0..s.len())].clone())
                        .collect();
                    SkewPoly::from_coeffs(deriv.clone(), coeffs)
                })
                .collect::<Result<_>>()?;
            check_product(&factors)?;
            products_checked += 1;
        }
    }

    // sampled members of S[x;D] must be quasi-regular via the geometric series
    let mut quasi_inverses_checked = 0usize;
    for _ in 0..20 {
        let coeffs: Vec<RingElement> = (0..=rng.random_range(0..=degree_bound))
            .map(|_| s.elements()[rng.random_range(0..s.len())].clone())
            .collect();
        let p = SkewPoly::from_coeffs(deriv.clone(), coeffs)?;
        if p.is_zero() {
            continue;
        }
        let g = p.quasi_inverse_nilpotent(k).map_err(|e| {
            Error::CertificateFailure(format!("quasi-inverse failed on a member of S[x;D]: {e}"))
        })?;
        if !p.circle(&g)?.is_zero() || !g.circle(&p)?.is_zero() {
            return Err(Error::CertificateFailure(
                "geometric-series quasi-inverse does not satisfy the circle equations".into(),
            ));
        }
        quasi_inverses_checked += 1;
    }

    Ok(SkewNilpotenceCertificate {
        nilpotence_index: k,
        products_checked,
        quasi_inverses_checked,
        exhaustive,
    })
}

/// The full certificate for one `(R, D)` instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TheoremCertificate {
    pub ring_order: u128,
    pub derivation_trivial: bool,
    pub s: IdealSet,
    pub s_is_ideal: bool,
    pub s_is_d_stable: bool,
    pub s_is_nil: bool,
    pub s_nilpotence_index: usize,
    pub skew_nilpotence: SkewNilpotenceCertificate,
    pub replay: Vec<ReplayRecord>,
    pub replay_sampled: bool,
    /// Bounded quasi-inverse search outcomes for `x*a`, `a` outside `S`.
    /// Informational: individual elements of `R[x;D]` may be quasi-regular
    /// without lying in the radical.
    pub outside_evidence: Vec<(RingElement, String)>,
    pub provenance: String,
}

impl TheoremCertificate {
    pub fn passed(&self) -> bool {
        self.s_is_ideal
            && self.s_is_d_stable
            && self.s_is_nil
            && self.replay.iter().all(|r| r.passed())
    }
}

pub fn theorem1_certificate(
    ring: &Arc<FiniteRing>,
    deriv: &Arc<Derivation>,
    seed: u64,
    caps: &Caps,
) -> Result<TheoremCertificate> {
    let s = compute_s(ring, deriv, caps)?;
    let s_is_ideal = ring.verify_ideal(&s).is_ok();
    let s_is_d_stable = s
        .elements()
        .iter()
        .all(|a| s.contains(&deriv.apply(a)));
    let (s_is_nil, _) = radical::is_nil_ideal(ring, &s)?;
    let s_nilpotence_index = radical::nilpotence_index(ring, &s).ok_or_else(|| {
        Error::CertificateFailure("S is not nilpotent".into())
    })?;
    let skew_nilpotence = certify_nilpotent_skew_ideal(ring, deriv, &s, seed, caps)?;

    let mut replay = Vec::new();
    let mut replay_sampled = false;
    if s.len() <= 64 {
        for a in s.elements() {
            replay.push(replay_proof(ring, deriv, a, caps)?);
        }
    } else {
        replay_sampled = true;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..64 {
            let a = &s.elements()[rng.random_range(0..s.len())];
            replay.push(replay_proof(ring, deriv, a, caps)?);
        }
    }

    let mut outside_evidence = Vec::new();
    if ring.order() <= 64 {
        for a in ring.elements().filter(|a| !a.is_zero() && !s.contains(a)).take(16) {
            let p = SkewPoly::monomial(deriv.clone(), 1, a.clone())?;
            let outcome = match p.quasi_inverse_search(caps.max_degree, caps)? {
                SearchOutcome::Found(f) => format!("found: {f}"),
                SearchOutcome::NotFound { max_degree } => format!("not_found({max_degree})"),
            };
            outside_evidence.push((a, outcome));
        }
    }

    Ok(TheoremCertificate {
        ring_order: ring.order(),
        derivation_trivial: deriv.is_trivial(),
        s,
        s_is_ideal,
        s_is_d_stable,
        s_is_nil,
        s_nilpotence_index,
        skew_nilpotence,
        replay,
        replay_sampled,
        outside_evidence,
        provenance: S_PROVENANCE.into(),
    })
}

/// Semiprimitivity evidence for rings with zero nilradical.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SemiprimitivityCertificate {
    pub s_is_zero: bool,
    /// `(element, outcome)` of the bounded search on `x*a` per nonzero `a`.
    pub searches: Vec<(RingElement, String)>,
    pub all_not_found: bool,
    pub provenance: String,
}

impl SemiprimitivityCertificate {
    pub fn passed(&self) -> bool {
        self.s_is_zero && self.all_not_found
    }
}

pub fn semiprimitivity_certificate(
    ring: &Arc<FiniteRing>,
    deriv: &Arc<Derivation>,
    seed: u64,
    caps: &Caps,
) -> Result<SemiprimitivityCertificate> {
    let n = radical::nilradical(ring, caps)?;
    if !n.is_zero() {
        return Err(Error::PreconditionFailed(format!(
            "nilradical has {} elements, expected it to be zero",
            n.len()
        )));
    }
    let s = compute_s(ring, deriv, caps)?;
    let s_is_zero = s.is_zero();

    let sample: Vec<RingElement> = if ring.order() <= 64 {
        ring.elements().filter(|a| !a.is_zero()).collect()
    } else {
        let elems: Vec<RingElement> = ring.elements().filter(|a| !a.is_zero()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..64)
            .map(|_| elems[rng.random_range(0..elems.len())].clone())
            .collect()
    };
    let mut searches = Vec::new();
    let mut all_not_found = true;
    for a in sample {
        let p = SkewPoly::monomial(deriv.clone(), 1, a.clone())?;
        let outcome = match p.quasi_inverse_search(caps.max_degree, caps)? {
            SearchOutcome::Found(f) => {
                all_not_found = false;
                format!("found: {f}")
            }
            SearchOutcome::NotFound { max_degree } => format!("not_found({max_degree})"),
        };
        searches.push((a, outcome));
    }
    Ok(SemiprimitivityCertificate {
        s_is_zero,
        searches,
        all_not_found,
        provenance: S_PROVENANCE.into(),
    })
}

/// Does `D` descend to `R/N(R)`? It does exactly when `N` is D-stable;
/// otherwise the witness element is the obstruction to passing to a
/// semiprimitive image.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuotientTransferReport {
    pub nilradical_size: usize,
    pub descends: bool,
    pub obstruction: Option<RingElement>,
    pub quotient_derivation_trivial: Option<bool>,
}

pub fn quotient_transfer_check(
    ring: &Arc<FiniteRing>,
    deriv: &Derivation,
    caps: &Caps,
) -> Result<QuotientTransferReport> {
    let n = radical::nilradical(ring, caps)?;
    let obstruction = n
        .elements()
        .iter()
        .find(|a| !n.contains(&deriv.apply(a)))
        .cloned();
    if let Some(w) = obstruction {
        return Ok(QuotientTransferReport {
            nilradical_size: n.len(),
            descends: false,
            obstruction: Some(w),
            quotient_derivation_trivial: None,
        });
    }
    let (q, map) = ring.quotient_ring(&n, caps)?;
    let images: Vec<RingElement> = map
        .lifts()
        .iter()
        .map(|l| map.project(&q, &deriv.apply(l)))
        .collect::<Result<_>>()?;
    let dq = Derivation::new(q.clone(), images).map_err(|e| {
        Error::InternalInconsistency(format!(
            "derivation failed to descend to the quotient despite stability: {e}"
        ))
    })?;
    Ok(QuotientTransferReport {
        nilradical_size: n.len(),
        descends: true,
        obstruction: None,
        quotient_derivation_trivial: Some(dq.is_trivial()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::{enumerate_derivations, product_derivation};
    use crate::finring::{
        build_product, build_triangular_ring, build_truncated_poly, build_zn,
    };

    fn caps() -> Caps {
        Caps::default()
    }

    fn dual_numbers() -> (Arc<FiniteRing>, Arc<Derivation>) {
        let r = build_truncated_poly(2, 2, &caps()).unwrap();
        let d = Derivation::new(r.clone(), vec![r.zero(), r.element(&[1, 0]).unwrap()]).unwrap();
        (r, Arc::new(d))
    }

    #[test]
    fn s_for_trivial_derivation_is_nilradical() {
        let z4 = build_zn(4, &caps()).unwrap();
        let d = Derivation::trivial(z4.clone());
        let s = compute_s(&z4, &d, &caps()).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.contains(&z4.element(&[2]).unwrap()));
    }

    #[test]
    fn s_vanishes_for_formal_derivative_on_dual_numbers() {
        let (r, d) = dual_numbers();
        let s = compute_s(&r, &d, &caps()).unwrap();
        assert!(s.is_zero());
        // while the nilradical itself is nonzero
        assert_eq!(radical::nilradical(&r, &caps()).unwrap().len(), 2);
    }

    #[test]
    fn s_for_inner_derivation_on_t2f2() {
        let r = build_triangular_ring(2, 2, &caps()).unwrap();
        let d = Derivation::inner(r.clone(), &r.generator(1)).unwrap();
        let s = compute_s(&r, &d, &caps()).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.contains(&r.generator(1)));
    }

    #[test]
    fn replay_z4() {
        let z4 = build_zn(4, &caps()).unwrap();
        let d = Arc::new(Derivation::trivial(z4.clone()));
        let two = z4.element(&[2]).unwrap();
        let rec = replay_proof(&z4, &d, &two, &caps()).unwrap();
        assert!(rec.passed(), "failing checks: {:?}", rec.checks);
        // hand expansion: f = x*2 is its own quasi-inverse, degree 1
        assert_eq!(rec.degree, Some(1));
    }

    #[test]
    fn replay_zero_element_degenerates() {
        let z4 = build_zn(4, &caps()).unwrap();
        let d = Arc::new(Derivation::trivial(z4.clone()));
        let rec = replay_proof(&z4, &d, &z4.zero(), &caps()).unwrap();
        assert!(rec.passed());
        assert_eq!(rec.degree, None);
    }

    #[test]
    fn replay_rejects_elements_outside_s() {
        let (r, d) = dual_numbers();
        let t = r.generator(1);
        assert_eq!(replay_proof(&r, &d, &t, &caps()), Err(Error::NotInS));
    }

    #[test]
    fn theorem_certificate_on_t2f2() {
        let r = build_triangular_ring(2, 2, &caps()).unwrap();
        let d = Arc::new(Derivation::inner(r.clone(), &r.generator(1)).unwrap());
        let cert = theorem1_certificate(&r, &d, 0, &caps()).unwrap();
        assert!(cert.passed());
        assert_eq!(cert.s.len(), 2);
        assert_eq!(cert.s_nilpotence_index, 2);
        assert!(cert.replay.iter().all(|r| r.passed()));
    }

    #[test]
    fn semiprimitivity_preconditions() {
        let z4 = build_zn(4, &caps()).unwrap();
        let d = Arc::new(Derivation::trivial(z4.clone()));
        assert!(matches!(
            semiprimitivity_certificate(&z4, &d, 0, &caps()),
            Err(Error::PreconditionFailed(_))
        ));

        let z2 = build_zn(2, &caps()).unwrap();
        let d = Arc::new(Derivation::trivial(z2.clone()));
        let cert = semiprimitivity_certificate(&z2, &d, 0, &caps()).unwrap();
        assert!(cert.s_is_zero);
    }

    #[test]
    fn quotient_transfer_obstruction_on_dual_numbers() {
        let (r, d) = dual_numbers();
        let rep = quotient_transfer_check(&r, &d, &caps()).unwrap();
        assert!(!rep.descends);
        assert_eq!(rep.obstruction, Some(r.generator(1)));
    }

    #[test]
    fn quotient_transfer_descends_for_trivial_and_inner() {
        let z4 = build_zn(4, &caps()).unwrap();
        let d = Derivation::trivial(z4.clone());
        let rep = quotient_transfer_check(&z4, &d, &caps()).unwrap();
        assert!(rep.descends);

        let t2 = build_triangular_ring(2, 2, &caps()).unwrap();
        let d = Derivation::inner(t2.clone(), &t2.generator(1)).unwrap();
        let rep = quotient_transfer_check(&t2, &d, &caps()).unwrap();
        assert!(rep.descends);
        // the image of E12 is zero in the quotient, so the induced
        // derivation is trivial
        assert_eq!(rep.quotient_derivation_trivial, Some(true));
    }

    #[test]
    fn s_is_monotone_over_products() {
        let z4 = build_zn(4, &caps()).unwrap();
        let t2 = build_triangular_ring(2, 2, &caps()).unwrap();
        let d1 = Derivation::trivial(z4.clone());
        let d2 = Derivation::inner(t2.clone(), &t2.generator(1)).unwrap();
        let prod = build_product(&z4, &t2, &caps()).unwrap();
        let dp = product_derivation(prod.clone(), &d1, &d2).unwrap();

        let s1 = compute_s(&z4, &d1, &caps()).unwrap();
        let s2 = compute_s(&t2, &d2, &caps()).unwrap();
        let sp = compute_s(&prod, &dp, &caps()).unwrap();
        assert_eq!(sp.len(), s1.len() * s2.len());
        for a in s1.elements() {
            for b in s2.elements() {
                let e = crate::finring::product_embed(&prod, z4.generator_count(), Some(a), Some(b))
                    .unwrap();
                assert!(sp.contains(&e));
            }
        }
    }

    #[test]
    fn s_always_inside_nilradical_with_equality_iff_stable() {
        let dual = build_truncated_poly(2, 2, &caps()).unwrap();
        for d in enumerate_derivations(&dual, &caps()).unwrap() {
            let n = radical::nilradical(&dual, &caps()).unwrap();
            let s = compute_s(&dual, &d, &caps()).unwrap();
            assert!(s.elements().iter().all(|a| n.contains(a)));
            let stable = n.elements().iter().all(|a| n.contains(&d.apply(a)));
            assert_eq!(stable, s.elements() == n.elements());
        }
    }

    #[test]
    fn skew_nilpotence_certificate_on_s() {
        let z4 = build_zn(4, &caps()).unwrap();
        let d = Arc::new(Derivation::trivial(z4.clone()));
        let s = compute_s(&z4, &d, &caps()).unwrap();
        let cert = certify_nilpotent_skew_ideal(&z4, &d, &s, 0, &caps()).unwrap();
        assert_eq!(cert.nilpotence_index, 2);
        assert!(cert.products_checked > 0);
    }
}
