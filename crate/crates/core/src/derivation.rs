//! Derivations of a finite ring: additive maps `D` with
//! `D(ab) = D(a)b + aD(b)`, stored by their images on the additive
//! generators and extended by additivity.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::finring::{FiniteRing, RingElement};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    #[serde(skip)]
    ring: Option<Arc<FiniteRing>>,
    images: Vec<RingElement>,
}

impl Derivation {
    /// Validate generator images and build a derivation.
    ///
    /// Order compatibility (`m_i * D(g_i) = 0`) makes the additive extension
    /// well defined; Leibniz on generator pairs extends to all elements by
    /// bilinearity of both sides.
    pub fn new(ring: Arc<FiniteRing>, images: Vec<RingElement>) -> Result<Derivation> {
        let k = ring.generator_count();
        if images.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: images.len(),
            });
        }
        for (i, img) in images.iter().enumerate() {
            if !ring.contains(img) {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    got: img.residues().len(),
                });
            }
            if !ring.int_mul_i128(ring.moduli()[i] as i128, img).is_zero() {
                return Err(Error::OrderViolation(i));
            }
        }
        let d = Derivation {
            ring: Some(ring.clone()),
            images,
        };
        for i in 0..k {
            for j in 0..k {
                let gi = ring.generator(i);
                let gj = ring.generator(j);
                let lhs = d.apply(&ring.mul(&gi, &gj));
                let rhs = ring.add(
                    &ring.mul(&d.images[i], &gj),
                    &ring.mul(&gi, &d.images[j]),
                );
                if lhs != rhs {
                    return Err(Error::LeibnizViolation(i, j));
                }
            }
        }
        Ok(d)
    }

    /// The zero derivation.
    pub fn trivial(ring: Arc<FiniteRing>) -> Derivation {
        let images = vec![ring.zero(); ring.generator_count()];
        Derivation {
            ring: Some(ring),
            images,
        }
    }

    /// `D(a) = ba - ab`. Always a valid derivation.
    pub fn inner(ring: Arc<FiniteRing>, b: &RingElement) -> Result<Derivation> {
        let images = (0..ring.generator_count())
            .map(|i| {
                let g = ring.generator(i);
                ring.sub(&ring.mul(b, &g), &ring.mul(&g, b))
            })
            .collect();
        Derivation::new(ring, images)
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        self.ring.as_ref().expect("derivation without ring")
    }

    pub fn images(&self) -> &[RingElement] {
        &self.images
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|i| i.is_zero())
    }

    pub fn apply(&self, a: &RingElement) -> RingElement {
        let ring = self.ring();
        let mut acc = ring.zero();
        for (i, &c) in a.residues().iter().enumerate() {
            if c != 0 {
                acc = ring.add(&acc, &ring.int_mul_i128(c as i128, &self.images[i]));
            }
        }
        acc
    }

    pub fn apply_power(&self, a: &RingElement, n: usize) -> RingElement {
        let mut x = a.clone();
        for _ in 0..n {
            x = self.apply(&x);
        }
        x
    }

    /// `sum_{k=0}^{n} C(n,k) D^k(a) D^{n-k}(b)`, the iterated Leibniz
    /// expansion of `D^n(ab)`. Binomials are exact integers reduced through
    /// integer multiplication of elements.
    pub fn leibniz_power(&self, a: &RingElement, b: &RingElement, n: usize) -> RingElement {
        let ring = self.ring();
        let mut da = Vec::with_capacity(n + 1);
        let mut db = Vec::with_capacity(n + 1);
        da.push(a.clone());
        db.push(b.clone());
        for _ in 0..n {
            da.push(self.apply(da.last().unwrap()));
            db.push(self.apply(db.last().unwrap()));
        }
        let mut acc = ring.zero();
        let mut binom = BigInt::one();
        for k in 0..=n {
            let term = ring.mul(&da[k], &db[n - k]);
            acc = ring.add(&acc, &ring.int_mul_big(&binom, &term));
            // C(n, k+1) = C(n, k) * (n - k) / (k + 1)
            binom = binom * BigInt::from(n - k) / BigInt::from(k + 1);
        }
        acc
    }
}

/// All derivations of `R`, in canonical order of their image tuples.
pub fn enumerate_derivations(ring: &Arc<FiniteRing>, caps: &Caps) -> Result<Vec<Derivation>> {
    let k = ring.generator_count();
    if ring.order() > caps.element_cap {
        return Err(Error::SizeCapExceeded {
            needed: ring.order(),
            cap: caps.element_cap,
        });
    }
    // per-generator candidates: elements killed by the generator's order
    let mut candidates: Vec<Vec<RingElement>> = Vec::with_capacity(k);
    let mut total: u128 = 1;
    for i in 0..k {
        let m = ring.moduli()[i] as i128;
        let c: Vec<RingElement> = ring
            .elements()
            .filter(|e| ring.int_mul_i128(m, e).is_zero())
            .collect();
        total = total.saturating_mul(c.len() as u128);
        candidates.push(c);
    }
    if total > caps.element_cap.saturating_mul(caps.element_cap) {
        return Err(Error::SizeCapExceeded {
            needed: total,
            cap: caps.element_cap.saturating_mul(caps.element_cap),
        });
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let images: Vec<RingElement> = idx
            .iter()
            .enumerate()
            .map(|(i, &j)| candidates[i][j].clone())
            .collect();
        if let Ok(d) = Derivation::new(ring.clone(), images) {
            out.push(d);
        }
        // odometer increment, least significant last
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < candidates[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// The componentwise derivation `D1 x D2` on a product ring built with the
/// same factor order.
pub fn product_derivation(
    prod: Arc<FiniteRing>,
    d1: &Derivation,
    d2: &Derivation,
) -> Result<Derivation> {
    let k1 = d1.ring().generator_count();
    let mut images = Vec::with_capacity(prod.generator_count());
    for img in d1.images() {
        images.push(crate::finring::product_embed(&prod, k1, Some(img), None)?);
    }
    for img in d2.images() {
        images.push(crate::finring::product_embed(&prod, k1, None, Some(img))?);
    }
    Derivation::new(prod, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{build_triangular_ring, build_truncated_poly, build_zn};

    fn caps() -> Caps {
        Caps::default()
    }

    fn ddt(ring: &Arc<FiniteRing>) -> Derivation {
        // formal derivative on Z_2[t]/(t^2): D(1)=0, D(t)=1
        Derivation::new(
            ring.clone(),
            vec![ring.zero(), ring.element(&[1, 0]).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn formal_derivative_on_dual_numbers_validates() {
        let r = build_truncated_poly(2, 2, &caps()).unwrap();
        let d = ddt(&r);
        let t = r.generator(1);
        assert_eq!(d.apply(&t), r.element(&[1, 0]).unwrap());
        assert_eq!(d.apply_power(&t, 2), r.zero());
    }

    #[test]
    fn non_leibniz_image_rejected() {
        // on Z_4, D(1) must be 0 since D(1) = D(1)1 + 1D(1) = 2D(1)
        let r = build_zn(4, &caps()).unwrap();
        let err = Derivation::new(r.clone(), vec![r.element(&[2]).unwrap()]);
        assert_eq!(err, Err(Error::LeibnizViolation(0, 0)));
    }

    #[test]
    fn inner_derivation_on_t2f2() {
        let r = build_triangular_ring(2, 2, &caps()).unwrap();
        let e12 = r.generator(1);
        let d = Derivation::inner(r.clone(), &e12).unwrap();
        let e22 = r.generator(2);
        assert_eq!(d.apply(&e22), e12);
        assert_eq!(d.apply(&e12), r.zero());
    }

    #[test]
    fn inner_derivation_trivial_on_commutative() {
        let r = build_truncated_poly(2, 2, &caps()).unwrap();
        for b in r.elements() {
            assert!(Derivation::inner(r.clone(), &b).unwrap().is_trivial());
        }
    }

    #[test]
    fn z4_has_only_trivial_derivation() {
        let r = build_zn(4, &caps()).unwrap();
        let ds = enumerate_derivations(&r, &caps()).unwrap();
        assert_eq!(ds.len(), 1);
        assert!(ds[0].is_trivial());
    }

    #[test]
    fn dual_number_derivations_enumerated() {
        let r = build_truncated_poly(2, 2, &caps()).unwrap();
        let ds = enumerate_derivations(&r, &caps()).unwrap();
        // D(1)=0 forced; D(t) can be any of the 4 elements: each satisfies
        // Leibniz because 2tD(t) = 0 in characteristic 2
        assert_eq!(ds.len(), 4);
        for d in &ds {
            assert!(d.images()[0].is_zero());
        }
    }

    #[test]
    fn leibniz_power_matches_direct_iteration() {
        // Euler derivation t*d/dt on Z_2[t]/(t^3): D(t^i) = i t^i
        let r = build_truncated_poly(2, 3, &caps()).unwrap();
        let d = Derivation::new(
            r.clone(),
            vec![r.zero(), r.element(&[0, 1, 0]).unwrap(), r.zero()],
        )
        .unwrap();
        let elems: Vec<_> = r.elements().collect();
        for a in &elems {
            for b in &elems {
                for n in 0..=6 {
                    assert_eq!(
                        d.leibniz_power(a, b, n),
                        d.apply_power(&r.mul(a, b), n),
                        "leibniz expansion mismatch at n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn perturbed_valid_derivation_is_rejected() {
        let r = build_truncated_poly(2, 2, &caps()).unwrap();
        let d = ddt(&r);
        // perturbing D(1) by any nonzero element must break validation
        for e in r.elements().filter(|e| !e.is_zero()) {
            let mut images = d.images().to_vec();
            images[0] = r.add(&images[0], &e);
            assert!(Derivation::new(r.clone(), images).is_err());
        }
    }
}
