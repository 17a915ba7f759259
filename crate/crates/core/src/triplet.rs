//! Orbits of the successor-inverse map `t(a) = -(a+1)^-1`.
//!
//! `t` has order 3 wherever it is defined, so every admissible unit lies on a
//! 3-cycle `(a, b, c)` with `a + 1 = -b^-1`, `b + 1 = -c^-1`, `c + 1 = -a^-1`
//! (and then `abc = 1`), or is a fixed point, which happens exactly for the
//! nontrivial cube roots of 1. Cycles whose members are all core elements give
//! FLT roots `{a, b^-1}` that are not inverse pairs.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::time::Duration;

use crate::arith;
use crate::error::{Error, Result};
use crate::group::core_elements;
use crate::residue::{PrimePowerModulus, Residue, MODULUS_BOUND};

pub fn t_map(a: Residue) -> Result<Residue> {
    let a = a.require_unit()?;
    let s = a.succ();
    if !s.is_unit() {
        return Err(Error::UndefinedAtMinusOne(a.value()));
    }
    Ok(-s.inv_mod()?)
}

/// A 3-cycle of `t_map`, rotated so the smallest value leads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triplet {
    pub a: Residue,
    pub b: Residue,
    pub c: Residue,
}

impl Triplet {
    fn canonical(a: Residue, b: Residue, c: Residue) -> Self {
        let rotations = [(a, b, c), (b, c, a), (c, a, b)];
        let (a, b, c) = rotations
            .into_iter()
            .min_by_key(|(x, _, _)| x.value())
            .expect("three rotations");
        Self { a, b, c }
    }

    pub fn modulus(&self) -> PrimePowerModulus {
        self.a.modulus()
    }

    pub fn members(&self) -> [Residue; 3] {
        [self.a, self.b, self.c]
    }

    /// Distinct members; a degenerate orbit is a single cubic root.
    pub fn is_proper(&self) -> bool {
        self.a != self.b
    }

    /// `a + b^-1 = b + c^-1 = c + a^-1 = -1`.
    pub fn satisfies_chain(&self) -> bool {
        let minus_one = self.modulus().minus_one();
        let link = |x: Residue, y: Residue| {
            y.inv_mod()
                .and_then(|yi| x.add_mod(yi))
                .map(|s| s == minus_one)
                .unwrap_or(false)
        };
        link(self.a, self.b) && link(self.b, self.c) && link(self.c, self.a)
    }

    pub fn product(&self) -> Residue {
        self.a
            .mul_mod(self.b)
            .and_then(|x| x.mul_mod(self.c))
            .expect("same modulus")
    }

    fn key(&self) -> (u64, u64, u64) {
        (self.a.value(), self.b.value(), self.c.value())
    }
}

impl PartialOrd for Triplet {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Triplet {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orbit {
    Triplet(Triplet),
    /// `t(a) = a`: a nontrivial cube root of 1.
    FixedPoint(Residue),
}

pub fn orbit_of(a: Residue) -> Result<Orbit> {
    let b = t_map(a)?;
    if b == a {
        return Ok(Orbit::FixedPoint(a));
    }
    let c = t_map(b)?;
    let back = t_map(c)?;
    assert_eq!(back, a, "t_map must have order 3");
    Ok(Orbit::Triplet(Triplet::canonical(a, b, c)))
}

/// Orbits of `t_map` lying entirely inside the core.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoreTriplets {
    /// Canonical proper triplets, ascending.
    pub proper: Vec<Triplet>,
    /// Fixed points (nontrivial cubic roots), ascending.
    pub fixed_points: Vec<Residue>,
}

pub fn find_core_triplets(modulus: PrimePowerModulus) -> Result<CoreTriplets> {
    if modulus.k() < 2 {
        return Err(Error::InvalidPrecision {
            from: modulus.k(),
            to: 2,
        });
    }
    let core = core_elements(modulus);
    let mut proper = BTreeSet::new();
    let mut fixed = BTreeSet::new();
    for &a in core.elements() {
        if !a.succ().is_unit() {
            continue;
        }
        match orbit_of(a)? {
            Orbit::FixedPoint(x) => {
                fixed.insert(x.value());
            }
            Orbit::Triplet(t) => {
                if t.members().iter().all(|x| core.contains(x.value())) {
                    proper.insert(t);
                }
            }
        }
    }
    Ok(CoreTriplets {
        proper: proper.into_iter().collect(),
        fixed_points: fixed.into_iter().map(|v| modulus.residue(v)).collect(),
    })
}

/// Per-prime outcome of a triplet scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRecord {
    pub p: u64,
    pub k: u32,
    pub degenerate_count: usize,
    pub proper_triplet_count: usize,
    pub first_proper: Option<Triplet>,
    /// Wall time spent on this prime; left at zero where no clock is available.
    pub elapsed: Duration,
}

impl ScanRecord {
    /// Same record without the timing, for determinism comparisons.
    pub fn untimed(&self) -> Self {
        Self {
            elapsed: Duration::ZERO,
            ..self.clone()
        }
    }
}

/// Runs `find_core_triplets` for one prime.
pub fn scan_prime(p: u64, k: u32) -> Result<ScanRecord> {
    let found = find_core_triplets(PrimePowerModulus::new(p, k)?)?;
    Ok(ScanRecord {
        p,
        k,
        degenerate_count: found.fixed_points.len(),
        proper_triplet_count: found.proper.len(),
        first_proper: found.proper.first().copied(),
        elapsed: Duration::ZERO,
    })
}

/// Odd primes in `[p_min, p_max]` after validating the scan range.
pub fn scan_range(p_min: u64, p_max: u64, k: u32) -> Result<Vec<u64>> {
    if p_min < 3 || p_min > p_max {
        return Err(Error::OutOfRange);
    }
    if k < 2 {
        return Err(Error::InvalidPrecision { from: k, to: 2 });
    }
    match p_max.checked_pow(k) {
        Some(m) if m < MODULUS_BOUND => {}
        _ => return Err(Error::OutOfRange),
    }
    Ok((p_min..=p_max).filter(|&n| arith::is_prime(n)).collect())
}

/// Sequential scan over every prime in `[p_min, p_max]`, ascending.
pub fn scan_primes(p_min: u64, p_max: u64, k: u32) -> Result<Vec<ScanRecord>> {
    scan_range(p_min, p_max, k)?
        .into_iter()
        .map(|p| scan_prime(p, k))
        .collect()
}
