//! Exact arithmetic in the differential polynomial ring `R[x;D]`.
//!
//! Elements are right-normalized: `coeffs[i]` is the coefficient of `x^i`
//! in `sum x^i a_i`, and the top coefficient is nonzero (empty list = zero).
//! Multiplication rests on the commutation identity
//! `a x^r = sum_{l=0}^{r} (-1)^l C(r,l) x^{r-l} D^l(a)`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::caps::Caps;
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::finring::{FiniteRing, RingElement};
use crate::snf;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewPoly {
    deriv: Arc<Derivation>,
    coeffs: Vec<RingElement>,
}

/// Outcome of a bounded quasi-inverse search. `NotFound` is a certificate
/// bounded by the searched degree, not a proof of non-quasi-regularity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(SkewPoly),
    NotFound { max_degree: usize },
}

impl SkewPoly {
    pub fn zero(deriv: Arc<Derivation>) -> SkewPoly {
        SkewPoly {
            deriv,
            coeffs: Vec::new(),
        }
    }

    pub fn from_coeffs(deriv: Arc<Derivation>, coeffs: Vec<RingElement>) -> Result<SkewPoly> {
        let ring = deriv.ring();
        for c in &coeffs {
            if !ring.contains(c) {
                return Err(Error::DimensionMismatch {
                    expected: ring.generator_count(),
                    got: c.residues().len(),
                });
            }
        }
        let mut p = SkewPoly { deriv, coeffs };
        p.normalize();
        Ok(p)
    }

    pub fn constant(deriv: Arc<Derivation>, a: RingElement) -> Result<SkewPoly> {
        SkewPoly::from_coeffs(deriv, vec![a])
    }

    /// The monomial `x^i * a`.
    pub fn monomial(deriv: Arc<Derivation>, i: usize, a: RingElement) -> Result<SkewPoly> {
        let ring = deriv.ring();
        let mut coeffs = vec![ring.zero(); i];
        coeffs.push(a);
        SkewPoly::from_coeffs(deriv, coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn deriv(&self) -> &Arc<Derivation> {
        &self.deriv
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        self.deriv.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` as the marker for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficient(&self, i: usize) -> RingElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ring().zero())
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    fn same_context(&self, other: &SkewPoly) -> Result<()> {
        if self.deriv.as_ref() == other.deriv.as_ref() {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.same_context(other)?;
        let ring = self.ring();
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| ring.add(&self.coefficient(i), &other.coefficient(i)))
            .collect();
        SkewPoly::from_coeffs(self.deriv.clone(), coeffs)
    }

    pub fn neg(&self) -> SkewPoly {
        let ring = self.ring();
        let coeffs = self.coeffs.iter().map(|c| ring.neg(c)).collect();
        SkewPoly {
            deriv: self.deriv.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.same_context(other)?;
        let ring = self.ring();
        if self.is_zero() || other.is_zero() {
            return Ok(SkewPoly::zero(self.deriv.clone()));
        }
        let dp = self.coeffs.len() - 1;
        let dq = other.coeffs.len() - 1;
        let mut acc = vec![ring.zero(); dp + dq + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                // (x^i a)(x^j b) = x^i * (a x^j) * b
                let moved = move_coeff(&self.deriv, a, j);
                for (l, c) in moved.coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let term = ring.mul(c, b);
                    acc[i + l] = ring.add(&acc[i + l], &term);
                }
            }
        }
        SkewPoly::from_coeffs(self.deriv.clone(), acc)
    }

    pub fn pow(&self, n: usize) -> Result<SkewPoly> {
        if n == 0 {
            return Err(Error::ShapeError(
                "power 0 is undefined in a non-unital polynomial ring".into(),
            ));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// The circle operation `p + q - pq` underlying quasi-regularity.
    pub fn circle(&self, other: &SkewPoly) -> Result<SkewPoly> {
        self.add(other)?.sub(&self.mul(other)?)
    }

    /// Quasi-inverse of a nilpotent element: if `p^k = 0` then
    /// `g = -(p + p^2 + ... + p^{k-1})` satisfies both circle equations.
    pub fn quasi_inverse_nilpotent(&self, k: usize) -> Result<SkewPoly> {
        if k == 0 {
            return Err(Error::NotNilpotent(0));
        }
        if self.is_zero() {
            return Ok(SkewPoly::zero(self.deriv.clone()));
        }
        let mut powers = Vec::with_capacity(k);
        powers.push(self.clone());
        for _ in 1..k {
            let next = powers.last().unwrap().mul(self)?;
            powers.push(next);
        }
        if !powers[k - 1].is_zero() {
            return Err(Error::NotNilpotent(k));
        }
        let mut sum = SkewPoly::zero(self.deriv.clone());
        for p in &powers[..k - 1] {
            sum = sum.add(p)?;
        }
        Ok(sum.neg())
    }

    /// Bounded two-sided quasi-inverse search: look for `f` of degree at most
    /// `max_degree` with `f + p - fp = 0` and `f + p - pf = 0`.
    ///
    /// Both equations are affine-linear in the coefficients of `f` over the
    /// integers, so the search is a linear congruence system solved exactly
    /// by Smith normal form, never raw enumeration of `|R|^(d+1)` candidates.
    pub fn quasi_inverse_search(&self, max_degree: usize, caps: &Caps) -> Result<SearchOutcome> {
        let ring = self.ring().clone();
        let k = ring.generator_count();
        if self.is_zero() {
            return Ok(SearchOutcome::Found(SkewPoly::zero(self.deriv.clone())));
        }
        let dp = self.coeffs.len() - 1;
        let out_len = max_degree + dp + 1;
        let n_unknowns = (max_degree + 1) * k;
        let n_rows = 2 * out_len * k;
        let cells = (n_unknowns + n_rows) as u128 * n_rows as u128;
        if cells > caps.search_budget {
            return Err(Error::SearchCapExceeded(cells));
        }

        // columns: images of the basis monomials under f -> f - f*p and
        // f -> f - p*f, stacked
        let mut a: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n_unknowns + n_rows]; n_rows];
        let push_poly = |a: &mut Vec<Vec<BigInt>>, col: usize, top: &SkewPoly, bottom: &SkewPoly| {
            for (deg, c) in top.coeffs.iter().enumerate() {
                for (comp, &r) in c.residues().iter().enumerate() {
                    a[deg * k + comp][col] = BigInt::from(r);
                }
            }
            for (deg, c) in bottom.coeffs.iter().enumerate() {
                for (comp, &r) in c.residues().iter().enumerate() {
                    a[(out_len + deg) * k + comp][col] = BigInt::from(r);
                }
            }
        };
        for i in 0..=max_degree {
            for comp in 0..k {
                let basis = SkewPoly::monomial(self.deriv.clone(), i, ring.generator(comp))?;
                let col1 = basis.sub(&basis.mul(self)?)?;
                let col2 = basis.sub(&self.mul(&basis)?)?;
                push_poly(&mut a, i * k + comp, &col1, &col2);
            }
        }
        // slack columns carry the per-row moduli
        for row in 0..n_rows {
            let comp = row % k;
            a[row][n_unknowns + row] = BigInt::from(ring.moduli()[comp]);
        }
        // right-hand side: -p in both equation blocks
        let mut b = vec![BigInt::zero(); n_rows];
        for (deg, c) in self.coeffs.iter().enumerate() {
            for (comp, &r) in c.residues().iter().enumerate() {
                b[deg * k + comp] = -BigInt::from(r);
                b[(out_len + deg) * k + comp] = -BigInt::from(r);
            }
        }

        match snf::solve_integer(&a, &b) {
            None => Ok(SearchOutcome::NotFound { max_degree }),
            Some(y) => {
                let mut coeffs = Vec::with_capacity(max_degree + 1);
                for i in 0..=max_degree {
                    let raw: Vec<i128> = (0..k)
                        .map(|comp| {
                            let v = &y[i * k + comp];
                            let m = BigInt::from(ring.moduli()[comp]);
                            let mut r = v % &m;
                            if r < BigInt::zero() {
                                r += &m;
                            }
                            r.to_i128().unwrap_or(0)
                        })
                        .collect();
                    coeffs.push(ring.element(&raw)?);
                }
                let f = SkewPoly::from_coeffs(self.deriv.clone(), coeffs)?;
                // the solver is exact; a bad solution means a bug
                if !f.circle(self)?.is_zero() || !self.circle(&f)?.is_zero() {
                    return Err(Error::InternalInconsistency(
                        "quasi-inverse solver produced a non-solution".into(),
                    ));
                }
                Ok(SearchOutcome::Found(f))
            }
        }
    }
}

/// Right-normalize `a * x^r` via the binomial commutation identity:
/// `a x^r = sum_{l=0}^{r} (-1)^l C(r,l) x^{r-l} D^l(a)`.
pub fn move_coeff(deriv: &Arc<Derivation>, a: &RingElement, r: usize) -> SkewPoly {
    let ring = deriv.ring();
    let mut coeffs = vec![ring.zero(); r + 1];
    let mut d_power = a.clone();
    let mut binom = BigInt::one();
    for l in 0..=r {
        let mut signed = binom.clone();
        if l % 2 == 1 {
            signed = -signed;
        }
        coeffs[r - l] = ring.int_mul_big(&signed, &d_power);
        if l < r {
            d_power = deriv.apply(&d_power);
            binom = binom * BigInt::from(r - l) / BigInt::from(l + 1);
        }
    }
    let mut p = SkewPoly {
        deriv: deriv.clone(),
        coeffs,
    };
    p.normalize();
    p
}

impl fmt::Display for SkewPoly {
    /// Canonical printing: terms highest degree first, `x^i*(coeff)` for
    /// positive degrees, `(coeff)` for the constant term, joined by " + ".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "({c})")?;
            } else {
                write!(f, "x^{i}*({c})")?;
            }
        }
        Ok(())
    }
}
