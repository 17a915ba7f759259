//! Exact arithmetic modulo odd prime powers `p^k`.
//!
//! The units group `G_k` of order `(p-1) p^(k-1)` splits as core `A_k`
//! (order `p - 1`, the solutions of `n^p = n`) times extension `B_k`
//! (order `p^(k-1)`, the units `= 1 mod p`). On top of that structure the crate
//! provides cubic roots of unity, normalized FLT roots `a^p + b^p = -1`,
//! Newton-Hensel lifting, core subgroup sums and the triplet orbits of
//! `a -> -(a+1)^-1`.
//!
//! `no_std`; needs `alloc`. Moduli are bounded by 2^63 so products fit `u128`.
//!
//! ```
//! use modpk_core::{cubic_roots_of_unity, find_core_triplets, GroupStructure, PrimePowerModulus};
//!
//! let m = PrimePowerModulus::new(7, 2)?;
//! let g = GroupStructure::new(m);
//! assert_eq!(g.generator.value(), 3);
//! assert_eq!(g.core_order, 6);
//!
//! let roots = cubic_roots_of_unity(m)?;
//! assert_eq!(roots.roots.map(|r| r.value()), [1, 18, 30]);
//!
//! let t = find_core_triplets(PrimePowerModulus::new(59, 2)?)?;
//! assert_eq!(t.proper.len(), 4);
//! # Ok::<(), modpk_core::Error>(())
//! ```
#![no_std]

extern crate alloc;

pub mod additive;
pub mod arith;
pub mod dlog;
pub mod error;
pub mod flt;
pub mod group;
pub mod residue;
pub mod triplet;

pub use additive::{core_subgroup, subgroup_sum, verify_core_theorem, CoreSubgroup, CoreTheoremReport, DivisorCheck};
pub use dlog::{discrete_log, is_generator, primitive_root, DiscreteLog};
pub use error::{Error, ParseError, Result};
pub use flt::{
    cubic_roots_of_unity, eds_check, enumerate_flt_roots_mod_p2, hensel_lift_poly_root, lift_flt_root,
    normalize_flt_triple, pth_roots, CubicRootTriple, EdsReport, FltRootPair, LiftedFltRoot, NormalizedTriple,
};
pub use group::{
    core_elements, core_project, decompose_unit, fst_extension_check, is_core_member, is_pth_power_residue,
    units_order, CoreSet, GroupStructure,
};
pub use residue::{PAdicDigits, PrimePowerModulus, Residue, MODULUS_BOUND};
pub use triplet::{
    find_core_triplets, orbit_of, scan_prime, scan_primes, scan_range, t_map, CoreTriplets, Orbit, ScanRecord, Triplet,
};

/// `is_prime` re-exported at the crate root since callers validate inputs with it.
pub use arith::is_prime;
