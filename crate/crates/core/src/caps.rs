/// Resource caps for enumeration-based operations.
///
/// Everything here is a hard bound, not a tuning knob: exceeding a cap is a
/// reported error, never silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Caps {
    /// Maximum ring order for element-enumeration operations (centre,
    /// radical scans, ideal closures, derivation enumeration).
    pub element_cap: u128,
    /// Maximum ring order for ideal-lattice enumeration and quotient
    /// construction.
    pub ideal_cap: u128,
    /// Maximum matrix cell count for the quasi-inverse linear solver.
    pub search_budget: u128,
    /// Default degree bound for bounded quasi-inverse searches.
    pub max_degree: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            element_cap: 4096,
            ideal_cap: 256,
            search_budget: 2_000_000,
            max_degree: 8,
        }
    }
}

impl Caps {
    pub fn with_element_cap(mut self, cap: u128) -> Self {
        self.element_cap = cap;
        self
    }

    pub fn with_max_degree(mut self, d: usize) -> Self {
        self.max_degree = d;
        self
    }
}
