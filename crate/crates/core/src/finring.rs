//! Finite, possibly non-unital, associative rings presented by structure
//! constants over a product of cyclic groups `Z_{m_1} x ... x Z_{m_k}`.
//!
//! An element is a residue vector; the product of two elements is the
//! bilinear extension of the generator table. Validation checks
//! associativity on generator triples, which suffices by bilinearity.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::snf::{self, mat_from_i128};

/// An element of a [`FiniteRing`]: one residue per additive generator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RingElement {
    residues: Vec<u64>,
}

impl RingElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.residues.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c == 1 {
                write!(f, "g{}", i + 1)?;
            } else {
                write!(f, "{}g{}", c, i + 1)?;
            }
        }
        Ok(())
    }
}

/// A finite ring given by additive moduli and a generator multiplication
/// table. Immutable after validated construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteRing {
    moduli: Vec<u64>,
    /// Row-major `k*k` table; entry `[i*k + j]` is the product `g_i g_j`.
    mul_table: Vec<RingElement>,
    unit: Option<RingElement>,
}

impl FiniteRing {
    /// Validate raw structure data and build a ring.
    pub fn build_structure(
        moduli: Vec<u64>,
        table: Vec<Vec<Vec<u64>>>,
        caps: &Caps,
    ) -> Result<Arc<FiniteRing>> {
        let k = moduli.len();
        if k == 0 {
            return Err(Error::ShapeError("a ring needs at least one generator".into()));
        }
        if moduli.iter().any(|&m| m == 0) {
            return Err(Error::ShapeError("additive moduli must be >= 1".into()));
        }
        if table.len() != k {
            return Err(Error::ShapeError(format!(
                "multiplication table has {} rows, expected {}",
                table.len(),
                k
            )));
        }
        let mut mul_table = Vec::with_capacity(k * k);
        for (i, row) in table.iter().enumerate() {
            if row.len() != k {
                return Err(Error::ShapeError(format!(
                    "row {} of the table has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    k
                )));
            }
            for (j, entry) in row.iter().enumerate() {
                if entry.len() != k {
                    return Err(Error::ShapeError(format!(
                        "entry ({}, {}) has {} components, expected {}",
                        i + 1,
                        j + 1,
                        entry.len(),
                        k
                    )));
                }
                if entry.iter().zip(&moduli).any(|(&r, &m)| r >= m) {
                    return Err(Error::ShapeError(format!(
                        "entry ({}, {}) is not reduced modulo the additive moduli",
                        i + 1,
                        j + 1
                    )));
                }
                mul_table.push(RingElement {
                    residues: entry.clone(),
                });
            }
        }
        let mut ring = FiniteRing {
            moduli,
            mul_table,
            unit: None,
        };
        ring.validate()?;
        ring.unit = ring.scan_unit(caps);
        Ok(Arc::new(ring))
    }

    fn validate(&self) -> Result<()> {
        let k = self.generator_count();
        // additive order compatibility of table entries
        for i in 0..k {
            for j in 0..k {
                let e = self.gen_product(i, j);
                let oi = self.int_mul_i128(self.moduli[i] as i128, e);
                let oj = self.int_mul_i128(self.moduli[j] as i128, e);
                if !oi.is_zero() || !oj.is_zero() {
                    return Err(Error::OrderIncompatibility(i, j));
                }
            }
        }
        // associativity on generator triples
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let lhs = self.mul(self.gen_product(i, j), &self.generator(l));
                    let rhs = self.mul(&self.generator(i), self.gen_product(j, l));
                    if lhs != rhs {
                        return Err(Error::AssociativityViolation(i, j, l));
                    }
                }
            }
        }
        Ok(())
    }

    fn scan_unit(&self, caps: &Caps) -> Option<RingElement> {
        if self.order() > caps.element_cap {
            return None;
        }
        let k = self.generator_count();
        self.elements().find(|u| {
            (0..k).all(|i| {
                let g = self.generator(i);
                self.mul(u, &g) == g && self.mul(&g, u) == g
            })
        })
    }

    pub fn generator_count(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn unit(&self) -> Option<&RingElement> {
        self.unit.as_ref()
    }

    pub fn order(&self) -> u128 {
        self.moduli.iter().fold(1u128, |acc, &m| acc * m as u128)
    }

    pub fn zero(&self) -> RingElement {
        RingElement {
            residues: vec![0; self.generator_count()],
        }
    }

    pub fn generator(&self, i: usize) -> RingElement {
        let mut residues = vec![0; self.generator_count()];
        if self.moduli[i] > 1 {
            residues[i] = 1;
        }
        RingElement { residues }
    }

    fn gen_product(&self, i: usize, j: usize) -> &RingElement {
        &self.mul_table[i * self.generator_count() + j]
    }

    /// Build an element from raw residues, reducing each modulo its modulus.
    pub fn element(&self, residues: &[i128]) -> Result<RingElement> {
        if residues.len() != self.generator_count() {
            return Err(Error::DimensionMismatch {
                expected: self.generator_count(),
                got: residues.len(),
            });
        }
        Ok(RingElement {
            residues: residues
                .iter()
                .zip(&self.moduli)
                .map(|(&r, &m)| r.rem_euclid(m as i128) as u64)
                .collect(),
        })
    }

    pub fn contains(&self, a: &RingElement) -> bool {
        a.residues.len() == self.generator_count()
            && a.residues.iter().zip(&self.moduli).all(|(&r, &m)| r < m)
    }

    fn check(&self, a: &RingElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.generator_count(),
                got: a.residues.len(),
            })
        }
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        debug_assert!(self.contains(a) && self.contains(b));
        RingElement {
            residues: a
                .residues
                .iter()
                .zip(&b.residues)
                .zip(&self.moduli)
                .map(|((&x, &y), &m)| (x + y) % m)
                .collect(),
        }
    }

    pub fn try_add(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        debug_assert!(self.contains(a));
        RingElement {
            residues: a
                .residues
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| if x == 0 { 0 } else { m - x })
                .collect(),
        }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.add(a, &self.neg(b))
    }

    pub fn int_mul_i128(&self, n: i128, a: &RingElement) -> RingElement {
        debug_assert!(self.contains(a));
        RingElement {
            residues: a
                .residues
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| {
                    let nm = n.rem_euclid(m as i128) as u128;
                    ((nm * x as u128) % m as u128) as u64
                })
                .collect(),
        }
    }

    pub fn int_mul_big(&self, n: &BigInt, a: &RingElement) -> RingElement {
        debug_assert!(self.contains(a));
        RingElement {
            residues: a
                .residues
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| {
                    let mb = BigInt::from(m);
                    let mut nm = n % &mb;
                    if nm.is_negative() {
                        nm += &mb;
                    }
                    let nm = nm.to_u128().unwrap_or(0);
                    ((nm * x as u128) % m as u128) as u64
                })
                .collect(),
        }
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        debug_assert!(self.contains(a) && self.contains(b));
        let k = self.generator_count();
        let mut acc = vec![0u128; k];
        for i in 0..k {
            let ai = a.residues[i];
            if ai == 0 {
                continue;
            }
            for j in 0..k {
                let bj = b.residues[j];
                if bj == 0 {
                    continue;
                }
                let c = ai as u128 * bj as u128;
                let entry = self.gen_product(i, j);
                for (t, &e) in entry.residues.iter().enumerate() {
                    let m = self.moduli[t] as u128;
                    acc[t] = (acc[t] + (c % m) * e as u128) % m;
                }
            }
        }
        RingElement {
            residues: acc
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| (x % m as u128) as u64)
                .collect(),
        }
    }

    pub fn try_mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    /// All elements in canonical (lexicographic residue vector) order.
    pub fn elements(&self) -> ElementIter<'_> {
        ElementIter {
            ring: self,
            next: Some(vec![0; self.generator_count()]),
        }
    }

    fn require_order(&self, cap: u128) -> Result<()> {
        let n = self.order();
        if n > cap {
            Err(Error::SizeCapExceeded { needed: n, cap })
        } else {
            Ok(())
        }
    }

    /// The set `{z : za = az for all a}`, checked on generators.
    pub fn centre(&self, caps: &Caps) -> Result<Vec<RingElement>> {
        self.require_order(caps.element_cap)?;
        let k = self.generator_count();
        Ok(self
            .elements()
            .filter(|z| {
                (0..k).all(|i| {
                    let g = self.generator(i);
                    self.mul(z, &g) == self.mul(&g, z)
                })
            })
            .collect())
    }
}

pub struct ElementIter<'a> {
    ring: &'a FiniteRing,
    next: Option<Vec<u64>>,
}

impl Iterator for ElementIter<'_> {
    type Item = RingElement;

    fn next(&mut self) -> Option<RingElement> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        // lexicographic increment, most significant component first
        let mut i = succ.len();
        loop {
            if i == 0 {
                self.next = None;
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.ring.moduli[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(RingElement { residues: cur })
    }
}

/// A two-sided ideal given as an explicit element set, remembering the
/// generators it was closed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSet {
    elements: Vec<RingElement>,
    generators: Vec<RingElement>,
}

impl IdealSet {
    pub fn elements(&self) -> &[RingElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[RingElement] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: &RingElement) -> bool {
        self.elements.binary_search(a).is_ok()
    }

    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_zero()
    }
}

impl FiniteRing {
    /// Smallest two-sided ideal containing `gens`: closed under addition,
    /// negation, and multiplication by every ring element. Integer multiples
    /// come for free from subgroup closure.
    pub fn ideal_closure(&self, gens: &[RingElement], caps: &Caps) -> Result<IdealSet> {
        self.require_order(caps.element_cap)?;
        for g in gens {
            self.check(g)?;
        }
        let k = self.generator_count();
        let mut set: BTreeSet<RingElement> = BTreeSet::new();
        set.insert(self.zero());
        let mut queue: Vec<RingElement> = gens.to_vec();
        while let Some(x) = queue.pop() {
            if set.contains(&x) {
                continue;
            }
            queue.push(self.neg(&x));
            queue.push(self.add(&x, &x));
            for y in set.iter() {
                queue.push(self.add(&x, y));
            }
            for i in 0..k {
                let g = self.generator(i);
                queue.push(self.mul(&x, &g));
                queue.push(self.mul(&g, &x));
            }
            set.insert(x);
        }
        Ok(IdealSet {
            elements: set.into_iter().collect(),
            generators: gens.to_vec(),
        })
    }

    /// Check that an element set actually is a two-sided ideal.
    pub fn verify_ideal(&self, i: &IdealSet) -> Result<()> {
        if !i.contains(&self.zero()) {
            return Err(Error::NotAnIdeal("missing zero".into()));
        }
        let k = self.generator_count();
        for x in &i.elements {
            if !i.contains(&self.neg(x)) {
                return Err(Error::NotAnIdeal(format!("not closed under negation at {x}")));
            }
            for y in &i.elements {
                if !i.contains(&self.add(x, y)) {
                    return Err(Error::NotAnIdeal(format!(
                        "not closed under addition at {x}, {y}"
                    )));
                }
            }
            for g in 0..k {
                let gen = self.generator(g);
                if !i.contains(&self.mul(x, &gen)) || !i.contains(&self.mul(&gen, x)) {
                    return Err(Error::NotAnIdeal(format!(
                        "not closed under multiplication at {x}, g{}",
                        g + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// All two-sided ideals, smallest first, each in canonical element order.
    pub fn enumerate_ideals(&self, caps: &Caps) -> Result<Vec<IdealSet>> {
        self.require_order(caps.ideal_cap)?;
        let elements: Vec<RingElement> = self.elements().collect();
        let zero_ideal = self.ideal_closure(&[], caps)?;
        let mut seen: BTreeSet<Vec<RingElement>> = BTreeSet::new();
        seen.insert(zero_ideal.elements.clone());
        let mut queue = vec![zero_ideal];
        let mut found: Vec<IdealSet> = Vec::new();
        while let Some(ideal) = queue.pop() {
            for x in &elements {
                if ideal.contains(x) {
                    continue;
                }
                let mut gens = ideal.generators.clone();
                gens.push(x.clone());
                let bigger = self.ideal_closure(&gens, caps)?;
                if seen.insert(bigger.elements.clone()) {
                    queue.push(bigger);
                }
            }
            found.push(ideal);
        }
        found.sort_by(|a, b| a.len().cmp(&b.len()).then(a.elements.cmp(&b.elements)));
        Ok(found)
    }
}

/// Projection map attached to a quotient ring.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    source_moduli: Vec<u64>,
    v: Vec<Vec<BigInt>>,
    target_moduli: Vec<u64>,
    kept: Vec<usize>,
    lifts: Vec<RingElement>,
}

impl QuotientMap {
    /// Preimages in `R` of the quotient ring's generators.
    pub fn lifts(&self) -> &[RingElement] {
        &self.lifts
    }

    pub fn project(&self, target: &FiniteRing, a: &RingElement) -> Result<RingElement> {
        if a.residues.len() != self.source_moduli.len() {
            return Err(Error::DimensionMismatch {
                expected: self.source_moduli.len(),
                got: a.residues.len(),
            });
        }
        let vec: Vec<BigInt> = a.residues.iter().map(|&r| BigInt::from(r)).collect();
        let image = snf::vec_mat(&vec, &self.v);
        if self.kept.is_empty() {
            return target.element(&[0]);
        }
        let mut out = Vec::with_capacity(self.kept.len());
        for (slot, &idx) in self.kept.iter().enumerate() {
            let m = BigInt::from(self.target_moduli[slot]);
            let mut r = &image[idx] % &m;
            if r.is_negative() {
                r += &m;
            }
            out.push(r.to_i128().unwrap_or(0));
        }
        target.element(&out)
    }
}

impl FiniteRing {
    /// Quotient by a verified two-sided ideal. The additive quotient group
    /// is put in invariant-factor form via Smith normal form; generators of
    /// the quotient are lifted back to `R` to read off the product table.
    pub fn quotient_ring(
        self: &Arc<Self>,
        ideal: &IdealSet,
        caps: &Caps,
    ) -> Result<(Arc<FiniteRing>, QuotientMap)> {
        self.require_order(caps.ideal_cap)?;
        self.verify_ideal(ideal)?;
        let k = self.generator_count();

        // lattice: Z^k rows for the moduli relations plus the ideal elements
        let mut rows: Vec<Vec<i128>> = Vec::new();
        for i in 0..k {
            let mut r = vec![0i128; k];
            r[i] = self.moduli[i] as i128;
            rows.push(r);
        }
        for e in ideal.elements() {
            rows.push(e.residues.iter().map(|&x| x as i128).collect());
        }
        let s = snf::smith_normal_form(&mat_from_i128(&rows));

        let mut kept = Vec::new();
        let mut target_moduli = Vec::new();
        for (i, d) in s.diag.iter().enumerate() {
            let d = d.to_u64().ok_or_else(|| {
                Error::InternalInconsistency("quotient invariant factor out of range".into())
            })?;
            if d > 1 {
                kept.push(i);
                target_moduli.push(d);
            }
        }
        let trivial = kept.is_empty();
        if trivial {
            target_moduli = vec![1];
        }

        // lift each kept quotient generator: row i of v_inv, reduced into R
        let lifts: Vec<RingElement> = kept
            .iter()
            .map(|&i| {
                let raw: Vec<i128> = s.v_inv[i]
                    .iter()
                    .map(|x| x.to_i128().unwrap_or(0))
                    .collect();
                self.element(&raw)
            })
            .collect::<Result<_>>()?;

        let map = QuotientMap {
            source_moduli: self.moduli.clone(),
            v: s.v,
            target_moduli: target_moduli.clone(),
            kept,
            lifts: lifts.clone(),
        };

        let kq = target_moduli.len();
        let mut table = vec![vec![vec![0u64; kq]; kq]; kq];
        if !trivial {
            // need a throwaway target to express projections while building
            let probe = FiniteRing {
                moduli: target_moduli.clone(),
                mul_table: vec![
                    RingElement {
                        residues: vec![0; kq]
                    };
                    kq * kq
                ],
                unit: None,
            };
            for (i, li) in lifts.iter().enumerate() {
                for (j, lj) in lifts.iter().enumerate() {
                    let prod = self.mul(li, lj);
                    let img = map.project(&probe, &prod)?;
                    table[i][j] = img.residues.clone();
                }
            }
        }
        let quotient = FiniteRing::build_structure(target_moduli, table, caps)?;
        Ok((quotient, map))
    }
}

// ---- builders ----

fn cap_check(order: u128, caps: &Caps) -> Result<()> {
    if order > caps.element_cap {
        Err(Error::SizeCapExceeded {
            needed: order,
            cap: caps.element_cap,
        })
    } else {
        Ok(())
    }
}

/// The cyclic unital ring `Z_n`.
pub fn build_zn(n: u64, caps: &Caps) -> Result<Arc<FiniteRing>> {
    if n < 1 {
        return Err(Error::ShapeError("zn requires n >= 1".into()));
    }
    cap_check(n as u128, caps)?;
    let g11 = if n == 1 { vec![0] } else { vec![1] };
    FiniteRing::build_structure(vec![n], vec![vec![g11]], caps)
}

/// Full `n x n` matrices over `Z_m`; generators are the matrix units
/// `E_ij` in row-major order.
pub fn build_matrix_ring(n: usize, m: u64, caps: &Caps) -> Result<Arc<FiniteRing>> {
    if n < 1 || m < 2 {
        return Err(Error::ShapeError("matrix ring requires n >= 1, m >= 2".into()));
    }
    let k = n * n;
    cap_check((m as u128).checked_pow(k as u32).unwrap_or(u128::MAX), caps)?;
    let idx = |i: usize, j: usize| i * n + j;
    let mut table = vec![vec![vec![0u64; k]; k]; k];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if b == c {
                        table[idx(a, b)][idx(c, d)][idx(a, d)] = 1 % m;
                    }
                }
            }
        }
    }
    FiniteRing::build_structure(vec![m; k], table, caps)
}

/// Upper triangular `n x n` matrices over `Z_m`; generators `E_ij`, `i <= j`,
/// row-major.
pub fn build_triangular_ring(n: usize, m: u64, caps: &Caps) -> Result<Arc<FiniteRing>> {
    if n < 1 || m < 2 {
        return Err(Error::ShapeError(
            "triangular ring requires n >= 1, m >= 2".into(),
        ));
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i..n {
            pairs.push((i, j));
        }
    }
    let k = pairs.len();
    cap_check((m as u128).checked_pow(k as u32).unwrap_or(u128::MAX), caps)?;
    let pos = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).unwrap();
    let mut table = vec![vec![vec![0u64; k]; k]; k];
    for (p, &(a, b)) in pairs.iter().enumerate() {
        for (q, &(c, d)) in pairs.iter().enumerate() {
            if b == c {
                table[p][q][pos(a, d)] = 1 % m;
            }
        }
    }
    FiniteRing::build_structure(vec![m; k], table, caps)
}

/// The truncated polynomial ring `Z_m[t]/(t^e)`; generators `1, t, ..., t^{e-1}`.
pub fn build_truncated_poly(m: u64, e: usize, caps: &Caps) -> Result<Arc<FiniteRing>> {
    if m < 2 || e < 1 {
        return Err(Error::ShapeError(
            "truncated polynomial ring requires m >= 2, e >= 1".into(),
        ));
    }
    cap_check((m as u128).checked_pow(e as u32).unwrap_or(u128::MAX), caps)?;
    let mut table = vec![vec![vec![0u64; e]; e]; e];
    for i in 0..e {
        for j in 0..e {
            if i + j < e {
                table[i][j][i + j] = 1 % m;
            }
        }
    }
    FiniteRing::build_structure(vec![m; e], table, caps)
}

/// Direct product `R1 x R2` with componentwise operations.
pub fn build_product(
    r1: &Arc<FiniteRing>,
    r2: &Arc<FiniteRing>,
    caps: &Caps,
) -> Result<Arc<FiniteRing>> {
    cap_check(r1.order().saturating_mul(r2.order()), caps)?;
    let k1 = r1.generator_count();
    let k2 = r2.generator_count();
    let k = k1 + k2;
    let mut moduli = r1.moduli.clone();
    moduli.extend_from_slice(&r2.moduli);
    let mut table = vec![vec![vec![0u64; k]; k]; k];
    for i in 0..k1 {
        for j in 0..k1 {
            let e = r1.gen_product(i, j);
            table[i][j][..k1].copy_from_slice(&e.residues);
        }
    }
    for i in 0..k2 {
        for j in 0..k2 {
            let e = r2.gen_product(i, j);
            table[k1 + i][k1 + j][k1..].copy_from_slice(&e.residues);
        }
    }
    FiniteRing::build_structure(moduli, table, caps)
}

/// Embed elements of the two factors into a product ring.
pub fn product_embed(
    prod: &FiniteRing,
    k1: usize,
    left: Option<&RingElement>,
    right: Option<&RingElement>,
) -> Result<RingElement> {
    let k = prod.generator_count();
    let mut residues = vec![0i128; k];
    if let Some(l) = left {
        for (i, &r) in l.residues.iter().enumerate() {
            residues[i] = r as i128;
        }
    }
    if let Some(r) = right {
        for (i, &x) in r.residues.iter().enumerate() {
            residues[k1 + i] = x as i128;
        }
    }
    prod.element(&residues)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn z4_is_unital() {
        let r = build_zn(4, &caps()).unwrap();
        assert_eq!(r.order(), 4);
        assert_eq!(r.unit(), Some(&r.element(&[1]).unwrap()));
        let two = r.element(&[2]).unwrap();
        let three = r.element(&[3]).unwrap();
        assert_eq!(r.add(&two, &three), r.element(&[1]).unwrap());
        assert_eq!(r.mul(&two, &two), r.zero());
    }

    #[test]
    fn nonunital_ring_on_z4() {
        // g1*g1 = 2g1: associative, no unit
        let r = FiniteRing::build_structure(vec![4], vec![vec![vec![2]]], &caps()).unwrap();
        assert!(r.unit().is_none());
        let g = r.generator(0);
        let gg = r.mul(&g, &g);
        assert_eq!(gg, r.element(&[2]).unwrap());
        assert_eq!(r.mul(&gg, &g), r.mul(&g, &gg));
    }

    #[test]
    fn malformed_table_rejected() {
        let err =
            FiniteRing::build_structure(vec![2, 2], vec![vec![vec![0, 3], vec![0, 0]]], &caps());
        assert!(matches!(err, Err(Error::ShapeError(_))));
    }

    #[test]
    fn matrix_units_multiply() {
        let r = build_matrix_ring(2, 2, &caps()).unwrap();
        assert_eq!(r.order(), 16);
        assert!(r.unit().is_some());
        let e11 = r.generator(0);
        let e12 = r.generator(1);
        assert_eq!(r.mul(&e11, &e12), e12);
        assert_eq!(r.mul(&e12, &e11), r.zero());
    }

    #[test]
    fn triangular_ring_order() {
        let r = build_triangular_ring(2, 2, &caps()).unwrap();
        assert_eq!(r.order(), 8);
        assert!(r.unit().is_some());
    }

    #[test]
    fn truncated_poly_nilpotent_generator() {
        let r = build_truncated_poly(2, 2, &caps()).unwrap();
        assert_eq!(r.order(), 4);
        let t = r.generator(1);
        assert_eq!(r.mul(&t, &t), r.zero());
    }

    #[test]
    fn centre_of_m2f2_is_scalars() {
        let r = build_matrix_ring(2, 2, &caps()).unwrap();
        let c = r.centre(&caps()).unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.contains(&r.zero()));
        assert!(c.contains(r.unit().unwrap()));
    }

    #[test]
    fn centre_of_t2f2_is_scalars() {
        let r = build_triangular_ring(2, 2, &caps()).unwrap();
        let c = r.centre(&caps()).unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn centre_of_z4_is_everything() {
        let r = build_zn(4, &caps()).unwrap();
        assert_eq!(r.centre(&caps()).unwrap().len(), 4);
    }

    #[test]
    fn principal_ideals() {
        let z4 = build_zn(4, &caps()).unwrap();
        let i = z4.ideal_closure(&[z4.element(&[2]).unwrap()], &caps()).unwrap();
        assert_eq!(i.len(), 2);

        let t2 = build_triangular_ring(2, 2, &caps()).unwrap();
        let e12 = t2.generator(1);
        let i = t2.ideal_closure(&[e12.clone()], &caps()).unwrap();
        assert_eq!(i.len(), 2);
        assert!(i.contains(&e12));

        let m2 = build_matrix_ring(2, 2, &caps()).unwrap();
        let i = m2.ideal_closure(&[m2.generator(0)], &caps()).unwrap();
        assert_eq!(i.len(), 16);
    }

    #[test]
    fn ideal_enumeration() {
        let z4 = build_zn(4, &caps()).unwrap();
        let ideals = z4.enumerate_ideals(&caps()).unwrap();
        assert_eq!(ideals.len(), 3);

        let m2 = build_matrix_ring(2, 2, &caps()).unwrap();
        let ideals = m2.enumerate_ideals(&caps()).unwrap();
        assert_eq!(ideals.len(), 2); // simple ring

        let z2 = build_zn(2, &caps()).unwrap();
        let prod = build_product(&z2, &z2, &caps()).unwrap();
        assert_eq!(prod.enumerate_ideals(&caps()).unwrap().len(), 4);
    }

    #[test]
    fn quotient_z4_by_two() {
        let z4 = build_zn(4, &caps()).unwrap();
        let i = z4.ideal_closure(&[z4.element(&[2]).unwrap()], &caps()).unwrap();
        let (q, map) = z4.quotient_ring(&i, &caps()).unwrap();
        assert_eq!(q.order(), 2);
        let one = map.project(&q, &z4.element(&[1]).unwrap()).unwrap();
        assert_eq!(q.mul(&one, &one), one);
        assert!(!one.is_zero());
    }

    #[test]
    fn quotient_t2f2_by_e12() {
        let t2 = build_triangular_ring(2, 2, &caps()).unwrap();
        let i = t2.ideal_closure(&[t2.generator(1)], &caps()).unwrap();
        let (q, map) = t2.quotient_ring(&i, &caps()).unwrap();
        assert_eq!(q.order(), 4);
        // commutative: all pairs of projected generators commute
        let imgs: Vec<_> = (0..3)
            .map(|i| map.project(&q, &t2.generator(i)).unwrap())
            .collect();
        for a in &imgs {
            for b in &imgs {
                assert_eq!(q.mul(a, b), q.mul(b, a));
            }
        }
    }

    #[test]
    fn quotient_by_zero_is_same_ring() {
        let t2 = build_triangular_ring(2, 2, &caps()).unwrap();
        let zero = t2.ideal_closure(&[], &caps()).unwrap();
        let (q, _) = t2.quotient_ring(&zero, &caps()).unwrap();
        assert_eq!(q.order(), t2.order());
    }

    #[test]
    fn quotient_projection_is_homomorphism() {
        let t2 = build_triangular_ring(2, 2, &caps()).unwrap();
        let i = t2.ideal_closure(&[t2.generator(1)], &caps()).unwrap();
        let (q, map) = t2.quotient_ring(&i, &caps()).unwrap();
        let elems: Vec<_> = t2.elements().collect();
        for a in &elems {
            for b in &elems {
                let pa = map.project(&q, a).unwrap();
                let pb = map.project(&q, b).unwrap();
                assert_eq!(map.project(&q, &t2.add(a, b)).unwrap(), q.add(&pa, &pb));
                assert_eq!(map.project(&q, &t2.mul(a, b)).unwrap(), q.mul(&pa, &pb));
            }
        }
    }

    #[test]
    fn product_ring_componentwise() {
        let z2 = build_zn(2, &caps()).unwrap();
        let m2 = build_matrix_ring(2, 2, &caps()).unwrap();
        let p = build_product(&z2, &m2, &caps()).unwrap();
        assert_eq!(p.order(), 32);
        assert!(p.unit().is_some());
    }
}
