//! Resource caps for the exhaustive algorithms.
//!
//! Every search in this crate is exact and enumerative; the caps make the
//! cost explicit. Exceeding a cap is a reported error, never a silent
//! fallback to an approximation.

/// Configurable bounds. `Caps::default()` matches the documented defaults.
#[derive(Debug, Clone)]
pub struct Caps {
    /// Largest admissible field order q = p^m.
    pub field_order: u64,
    /// Largest permutation group that may be fully enumerated.
    pub group_order: u64,
    /// Largest number of codewords enumerated by a distance/weight scan.
    pub distance_words: u64,
    /// Largest code length for automorphism-group computation.
    pub paut_degree: usize,
    /// Largest number of subspaces enumerate-and-filter may visit.
    pub subspace_count: u64,
    /// Largest group order for isomorphism testing.
    pub iso_order: usize,
    /// Largest field order for PGL2 enumeration.
    pub pgl_field: u64,
    /// Largest number of single-generator ideals seeded during ideal
    /// enumeration (q^|G| generators are scanned).
    pub ideal_generators: u64,
    /// Node budget for the regular-subgroup backtracking search.
    pub search_nodes: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            field_order: 4096,
            group_order: 1_000_000,
            distance_words: 2_000_000,
            paut_degree: 13,
            subspace_count: 1_000_000,
            iso_order: 64,
            pgl_field: 16,
            ideal_generators: 100_000,
            search_nodes: 50_000_000,
        }
    }
}
