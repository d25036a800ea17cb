//! Quasi-regularity, Jacobson radical, upper nilradical, nilpotence
//! indices, and D-stable cores for finite rings.
//!
//! Quasi-regularity is two-sided throughout: `b` is a quasi-inverse of `a`
//! when `a + b - ab = 0` and `a + b - ba = 0`. For finite rings the
//! Jacobson radical is nilpotent and equals the upper nilradical; both
//! facts are verified rather than assumed.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::finring::{FiniteRing, IdealSet, RingElement};

/// Radical data with the cross-checks baked in.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadicalReport {
    pub jacobson: IdealSet,
    pub nilradical: IdealSet,
    pub nilpotence_index: usize,
}

/// Two-sided quasi-regularity: returns the witness `b` when one exists.
pub fn quasi_regular_witness(ring: &FiniteRing, a: &RingElement) -> Option<RingElement> {
    ring.elements().find(|b| {
        ring.add(a, &ring.sub(b, &ring.mul(a, b))).is_zero()
            && ring.add(a, &ring.sub(b, &ring.mul(b, a))).is_zero()
    })
}

pub fn is_quasi_regular(ring: &FiniteRing, a: &RingElement) -> bool {
    quasi_regular_witness(ring, a).is_some()
}

fn quasi_regular_set(ring: &FiniteRing) -> BTreeSet<RingElement> {
    ring.elements()
        .filter(|a| is_quasi_regular(ring, a))
        .collect()
}

/// `J(R) = {a : every element of the principal ideal of a is quasi-regular}`.
///
/// Computed directly from the non-unital definition, then verified to be an
/// ideal and nilpotent.
pub fn jacobson_radical(ring: &FiniteRing, caps: &Caps) -> Result<IdealSet> {
    let order = ring.order();
    if order > caps.element_cap {
        return Err(Error::SizeCapExceeded {
            needed: order,
            cap: caps.element_cap,
        });
    }
    let qr = quasi_regular_set(ring);
    let mut members = Vec::new();
    for a in ring.elements() {
        if !qr.contains(&a) {
            continue;
        }
        let principal = ring.ideal_closure(std::slice::from_ref(&a), caps)?;
        if principal.elements().iter().all(|x| qr.contains(x)) {
            members.push(a);
        }
    }
    let j = ring.ideal_closure(&members, caps)?;
    if j.elements().len() != members.len() {
        return Err(Error::InternalInconsistency(
            "jacobson radical member set is not an ideal".into(),
        ));
    }
    if nilpotence_index(ring, &j).is_none() {
        return Err(Error::InternalInconsistency(
            "jacobson radical of a finite ring must be nilpotent".into(),
        ));
    }
    Ok(j)
}

/// Least `k >= 1` with `a^k = 0`, if any.
pub fn element_nilpotence(ring: &FiniteRing, a: &RingElement) -> Option<usize> {
    let mut seen = BTreeSet::new();
    let mut x = a.clone();
    let mut k = 1;
    loop {
        if x.is_zero() {
            return Some(k);
        }
        if !seen.insert(x.clone()) {
            return None; // power cycle without reaching zero
        }
        x = ring.mul(&x, a);
        k += 1;
    }
}

/// Nil test with a witness for the failing element.
pub fn is_nil_ideal(ring: &FiniteRing, ideal: &IdealSet) -> Result<(bool, Option<RingElement>)> {
    ring.verify_ideal(ideal)?;
    for a in ideal.elements() {
        if element_nilpotence(ring, a).is_none() {
            return Ok((false, Some(a.clone())));
        }
    }
    Ok((true, None))
}

/// Least `k` with `I^k = {0}`, computed by iterated setwise products.
/// Returns `None` when the ideal is not nilpotent.
pub fn nilpotence_index(ring: &FiniteRing, ideal: &IdealSet) -> Option<usize> {
    if ideal.is_zero() {
        return Some(1);
    }
    let mut products: BTreeSet<RingElement> = ideal.elements().iter().cloned().collect();
    let mut k = 1;
    let bound = ideal.len() + 1;
    while k <= bound {
        if products.iter().all(|p| p.is_zero()) {
            return Some(k);
        }
        products = products
            .iter()
            .flat_map(|p| ideal.elements().iter().map(|q| ring.mul(p, q)))
            .collect();
        k += 1;
    }
    None
}

/// Upper nilradical `N(R)`: obtained from `J(R)` plus a per-element
/// nilpotency pass. For finite rings the two coincide; any discrepancy is a
/// hard error, not a fallback.
pub fn nilradical(ring: &FiniteRing, caps: &Caps) -> Result<IdealSet> {
    let j = jacobson_radical(ring, caps)?;
    for a in j.elements() {
        if element_nilpotence(ring, a).is_none() {
            return Err(Error::InternalInconsistency(format!(
                "element {a} of the radical is not nilpotent"
            )));
        }
    }
    Ok(j)
}

pub fn radical_report(ring: &FiniteRing, caps: &Caps) -> Result<RadicalReport> {
    let jacobson = jacobson_radical(ring, caps)?;
    let nil = nilradical(ring, caps)?;
    let index = nilpotence_index(ring, &jacobson).ok_or_else(|| {
        Error::InternalInconsistency("radical nilpotence index missing".into())
    })?;
    Ok(RadicalReport {
        jacobson,
        nilradical: nil,
        nilpotence_index: index,
    })
}

/// Largest D-stable ideal inside `I`: the fixpoint of
/// `K_{j+1} = {a in K_j : D(a) in K_j}`, verified to be an ideal.
pub fn d_stable_core(
    ring: &FiniteRing,
    deriv: &Derivation,
    ideal: &IdealSet,
    caps: &Caps,
) -> Result<IdealSet> {
    ring.verify_ideal(ideal)?;
    let mut current: BTreeSet<RingElement> = ideal.elements().iter().cloned().collect();
    loop {
        let next: BTreeSet<RingElement> = current
            .iter()
            .filter(|a| current.contains(&deriv.apply(a)))
            .cloned()
            .collect();
        if next.len() == current.len() {
            break;
        }
        current = next;
    }
    let gens: Vec<RingElement> = current.iter().cloned().collect();
    let core = ring.ideal_closure(&gens, caps)?;
    if core.len() != current.len() {
        return Err(Error::InternalInconsistency(
            "D-stable core chain did not terminate on an ideal".into(),
        ));
    }
    Ok(core)
}
