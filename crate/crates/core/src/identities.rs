//! Multilinear polynomial identities on finite rings: evaluation, the
//! standard identity family `S_d`, and the centre-intersection check for
//! semiprime rings.
//!
//! Only multilinear identities are supported: vanishing on all generator
//! tuples is then equivalent to vanishing everywhere, which turns the check
//! into `k^d` tuple evaluations instead of `|R|^d`.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::finring::{FiniteRing, RingElement};
use crate::radical;

/// `sum_terms c * x_{perm(1)} ... x_{perm(d)}` with integer coefficients.
/// Permutations are stored zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultilinearIdentity {
    arity: usize,
    terms: Vec<(Vec<usize>, i64)>,
}

impl MultilinearIdentity {
    pub fn new(arity: usize, terms: Vec<(Vec<usize>, i64)>) -> Result<MultilinearIdentity> {
        for (perm, _) in &terms {
            if perm.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    got: perm.len(),
                });
            }
            let mut seen = vec![false; arity];
            for &p in perm {
                if p >= arity || seen[p] {
                    return Err(Error::ShapeError(format!(
                        "term {:?} is not a permutation of 1..{}",
                        perm, arity
                    )));
                }
                seen[p] = true;
            }
        }
        Ok(MultilinearIdentity { arity, terms })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[(Vec<usize>, i64)] {
        &self.terms
    }

    /// True when the identity-position monomial `x_1 x_2 ... x_d` carries
    /// coefficient 1 (the usual PI normalization).
    pub fn has_unit_leading_coefficient(&self) -> bool {
        let id: Vec<usize> = (0..self.arity).collect();
        self.terms.iter().any(|(p, c)| *p == id && *c == 1)
    }
}

/// The standard identity `S_d = sum_sigma sgn(sigma) x_{sigma(1)}...x_{sigma(d)}`.
pub fn standard_identity(d: usize) -> Result<MultilinearIdentity> {
    if d < 2 {
        return Err(Error::ShapeError("standard identity needs arity >= 2".into()));
    }
    let mut terms = Vec::new();
    for perm in (0..d).permutations(d) {
        let mut inversions = 0usize;
        for i in 0..d {
            for j in (i + 1)..d {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        terms.push((perm, sign));
    }
    MultilinearIdentity::new(d, terms)
}

pub fn eval_identity(
    ring: &FiniteRing,
    f: &MultilinearIdentity,
    args: &[RingElement],
) -> Result<RingElement> {
    if args.len() != f.arity {
        return Err(Error::ArityMismatch {
            expected: f.arity,
            got: args.len(),
        });
    }
    let mut acc = ring.zero();
    for (perm, coeff) in &f.terms {
        let mut prod = args[perm[0]].clone();
        for &p in &perm[1..] {
            prod = ring.try_mul(&prod, &args[p])?;
        }
        acc = ring.add(&acc, &ring.int_mul_i128(*coeff as i128, &prod));
    }
    Ok(acc)
}

/// Check `f` on all generator tuples; sufficient for multilinear `f`.
/// Returns the first failing tuple in canonical order as a witness.
pub fn holds_on(
    ring: &FiniteRing,
    f: &MultilinearIdentity,
) -> Result<(bool, Option<Vec<RingElement>>)> {
    let k = ring.generator_count();
    let mut idx = vec![0usize; f.arity];
    loop {
        let args: Vec<RingElement> = idx.iter().map(|&i| ring.generator(i)).collect();
        if !eval_identity(ring, f, &args)?.is_zero() {
            return Ok((false, Some(args)));
        }
        let mut pos = f.arity;
        loop {
            if pos == 0 {
                return Ok((true, None));
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < k {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CentreIntersectionReport {
    pub checked: usize,
    pub violations: Vec<RingElement>,
}

/// For a ring with zero nilradical, every nonzero ideal meets the centre
/// nontrivially. This replays that statement over all nonzero principal
/// ideals; a violation would falsify the implementation, not the theorem.
pub fn centre_intersection_check(
    ring: &FiniteRing,
    caps: &Caps,
) -> Result<CentreIntersectionReport> {
    let n = radical::nilradical(ring, caps)?;
    if !n.is_zero() {
        return Err(Error::PreconditionFailed(format!(
            "nilradical has {} elements, expected it to be zero",
            n.len()
        )));
    }
    let centre = ring.centre(caps)?;
    let mut checked = 0;
    let mut violations = Vec::new();
    for a in ring.elements().filter(|a| !a.is_zero()) {
        let ideal = ring.ideal_closure(std::slice::from_ref(&a), caps)?;
        checked += 1;
        let meets = ideal
            .elements()
            .iter()
            .any(|x| !x.is_zero() && centre.contains(x));
        if !meets {
            violations.push(a);
        }
    }
    Ok(CentreIntersectionReport {
        checked,
        violations,
    })
}
