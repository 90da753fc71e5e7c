//! Size limits shared by the constructors, searches and solvers.
//!
//! The limits live in a process-wide setting so that front ends can raise or
//! lower them once (for example from a `--cap-order` flag) without threading a
//! parameter through every call.

use std::sync::RwLock;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest group order any constructor will tabulate.
    pub group_order: usize,
    /// Largest `n` accepted by `symmetric(n)`.
    pub symmetric_degree: usize,
    /// Largest number of stored entries in a single cochain.
    pub cochain_entries: usize,
    /// Largest number of unknowns for the bit-packed solver over F_2.
    pub solver_unknowns_f2: usize,
    /// Largest number of unknowns for the solver over Z/p^e, p^e > 2.
    pub solver_unknowns: usize,
    /// Largest number of normalized sections tried by the section search.
    pub section_budget: u64,
    /// Largest number of lifting nodes visited per section.
    pub lifting_budget: u64,
    /// Largest `|pi0|` for the equivalence search.
    pub iso_pi0: usize,
    /// Largest `|pi1|` for the equivalence search.
    pub iso_pi1: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            group_order: 5040,
            symmetric_degree: 8,
            cochain_entries: 20_000_000,
            solver_unknowns_f2: 20_000,
            solver_unknowns: 4_000,
            section_budget: 1_000_000,
            lifting_budget: 1_000_000,
            iso_pi0: 24,
            iso_pi1: 16,
        }
    }
}

static CAPS: RwLock<Option<Caps>> = RwLock::new(None);

/// The limits currently in force.
pub fn current() -> Caps {
    CAPS.read().expect("caps lock").clone().unwrap_or_default()
}

/// Replace the process-wide limits.
pub fn set(caps: Caps) {
    *CAPS.write().expect("caps lock") = Some(caps);
}
