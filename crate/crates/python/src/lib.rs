//! Python bindings for the skewring library.
//!
//! Elements cross the boundary as residue vectors (lists of ints in
//! generator coordinates), polynomials as lists of residue vectors
//! (`coeffs[i]` is the coefficient of `x^i`), and certificates as JSON
//! strings matching the CLI report payloads.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use skewring::{
    jacobson_radical, load_ringfile, nilradical, replay_proof, theorem1_certificate, Caps,
    FiniteRing, RingElement, SearchOutcome, SkewPoly as CoreSkewPoly,
};

fn err(e: skewring::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn caps() -> Caps {
    Caps::default()
}

#[pyclass(frozen)]
struct Ring {
    inner: Arc<FiniteRing>,
}

impl Ring {
    fn elem(&self, residues: Vec<i128>) -> PyResult<RingElement> {
        self.inner.element(&residues).map_err(err)
    }
}

fn out(e: &RingElement) -> Vec<u64> {
    e.residues().to_vec()
}

#[pymethods]
impl Ring {
    #[staticmethod]
    fn zn(n: u64) -> PyResult<Ring> {
        Ok(Ring { inner: skewring::build_zn(n, &caps()).map_err(err)? })
    }

    #[staticmethod]
    fn matrix(n: usize, m: u64) -> PyResult<Ring> {
        Ok(Ring { inner: skewring::build_matrix_ring(n, m, &caps()).map_err(err)? })
    }

    #[staticmethod]
    fn triangular(n: usize, m: u64) -> PyResult<Ring> {
        Ok(Ring { inner: skewring::build_triangular_ring(n, m, &caps()).map_err(err)? })
    }

    #[staticmethod]
    fn truncpoly(m: u64, e: usize) -> PyResult<Ring> {
        Ok(Ring { inner: skewring::build_truncated_poly(m, e, &caps()).map_err(err)? })
    }

    /// Parse a ring definition file; returns (ring, derivation).
    #[staticmethod]
    fn load(text: &str) -> PyResult<(Ring, Derivation)> {
        let built = load_ringfile(text, &caps()).map_err(err)?;
        Ok((
            Ring { inner: built.ring.clone() },
            Derivation { inner: built.deriv.clone() },
        ))
    }

    fn order(&self) -> u128 {
        self.inner.order()
    }

    fn moduli(&self) -> Vec<u64> {
        self.inner.moduli().to_vec()
    }

    fn unit(&self) -> Option<Vec<u64>> {
        self.inner.unit().map(out)
    }

    fn add(&self, a: Vec<i128>, b: Vec<i128>) -> PyResult<Vec<u64>> {
        Ok(out(&self.inner.add(&self.elem(a)?, &self.elem(b)?)))
    }

    fn mul(&self, a: Vec<i128>, b: Vec<i128>) -> PyResult<Vec<u64>> {
        Ok(out(&self.inner.mul(&self.elem(a)?, &self.elem(b)?)))
    }

    fn neg(&self, a: Vec<i128>) -> PyResult<Vec<u64>> {
        Ok(out(&self.inner.neg(&self.elem(a)?)))
    }

    fn show(&self, a: Vec<i128>) -> PyResult<String> {
        Ok(self.elem(a)?.to_string())
    }

    fn jacobson_radical(&self) -> PyResult<Vec<Vec<u64>>> {
        let j = jacobson_radical(&self.inner, &caps()).map_err(err)?;
        Ok(j.elements().iter().map(out).collect())
    }

    fn nilradical(&self) -> PyResult<Vec<Vec<u64>>> {
        let n = nilradical(&self.inner, &caps()).map_err(err)?;
        Ok(n.elements().iter().map(out).collect())
    }

    fn centre(&self) -> PyResult<Vec<Vec<u64>>> {
        let c = self.inner.centre(&caps()).map_err(err)?;
        Ok(c.iter().map(out).collect())
    }

    fn trivial_derivation(&self) -> Derivation {
        Derivation {
            inner: Arc::new(skewring::Derivation::trivial(self.inner.clone())),
        }
    }

    fn inner_derivation(&self, b: Vec<i128>) -> PyResult<Derivation> {
        let b = self.elem(b)?;
        Ok(Derivation {
            inner: Arc::new(skewring::Derivation::inner(self.inner.clone(), &b).map_err(err)?),
        })
    }

    fn derivation(&self, images: Vec<Vec<i128>>) -> PyResult<Derivation> {
        let images = images
            .into_iter()
            .map(|i| self.elem(i))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Derivation {
            inner: Arc::new(skewring::Derivation::new(self.inner.clone(), images).map_err(err)?),
        })
    }
}

#[pyclass(frozen)]
struct Derivation {
    inner: Arc<skewring::Derivation>,
}

#[pymethods]
impl Derivation {
    fn is_trivial(&self) -> bool {
        self.inner.is_trivial()
    }

    fn apply(&self, a: Vec<i128>) -> PyResult<Vec<u64>> {
        let a = self.inner.ring().element(&a).map_err(err)?;
        Ok(out(&self.inner.apply(&a)))
    }

    /// Coefficients of `x^i` as residue vectors; index = degree.
    fn poly(&self, coeffs: Vec<Vec<i128>>) -> PyResult<SkewPoly> {
        let ring = self.inner.ring();
        let coeffs = coeffs
            .into_iter()
            .map(|c| ring.element(&c).map_err(err))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(SkewPoly {
            inner: CoreSkewPoly::from_coeffs(self.inner.clone(), coeffs).map_err(err)?,
        })
    }

    /// The D-stable core S of the nilradical ("S via Theorem 1").
    fn compute_s(&self) -> PyResult<Vec<Vec<u64>>> {
        let s = skewring::compute_s(self.inner.ring(), &self.inner, &caps()).map_err(err)?;
        Ok(s.elements().iter().map(out).collect())
    }

    /// Full Theorem 1 certificate as a JSON string.
    #[pyo3(signature = (seed = 42))]
    fn theorem1_certificate(&self, seed: u64) -> PyResult<String> {
        let cert =
            theorem1_certificate(self.inner.ring(), &self.inner, seed, &caps()).map_err(err)?;
        let mut v = serde_json::to_value(&cert).map_err(|e| PyValueError::new_err(e.to_string()))?;
        v["passed"] = serde_json::Value::Bool(cert.passed());
        Ok(serde_json::to_string_pretty(&v).unwrap())
    }

    /// Replay the proof's coefficient identities for one element of S.
    fn replay(&self, a: Vec<i128>) -> PyResult<String> {
        let a = self.inner.ring().element(&a).map_err(err)?;
        let rec = replay_proof(self.inner.ring(), &self.inner, &a, &caps()).map_err(err)?;
        serde_json::to_string_pretty(&rec).map_err(|e| PyValueError::new_err(e.to_string()))
    }
}

#[pyclass(frozen)]
struct SkewPoly {
    inner: CoreSkewPoly,
}

#[pymethods]
impl SkewPoly {
    fn degree(&self) -> Option<usize> {
        self.inner.degree()
    }

    fn coeffs(&self) -> Vec<Vec<u64>> {
        self.inner.coeffs().iter().map(out).collect()
    }

    fn add(&self, other: &SkewPoly) -> PyResult<SkewPoly> {
        Ok(SkewPoly { inner: self.inner.add(&other.inner).map_err(err)? })
    }

    fn mul(&self, other: &SkewPoly) -> PyResult<SkewPoly> {
        Ok(SkewPoly { inner: self.inner.mul(&other.inner).map_err(err)? })
    }

    /// Bounded quasi-inverse search; returns the quasi-inverse or None.
    #[pyo3(signature = (max_degree = 8))]
    fn quasi_inverse(&self, max_degree: usize) -> PyResult<Option<SkewPoly>> {
        match self.inner.quasi_inverse_search(max_degree, &caps()).map_err(err)? {
            SearchOutcome::Found(f) => Ok(Some(SkewPoly { inner: f })),
            SearchOutcome::NotFound { .. } => Ok(None),
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SkewPoly({})", self.inner)
    }

    fn __eq__(&self, other: &SkewPoly) -> bool {
        self.inner == other.inner
    }
}

#[pymodule]
fn skewring_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ring>()?;
    m.add_class::<Derivation>()?;
    m.add_class::<SkewPoly>()?;
    Ok(())
}
