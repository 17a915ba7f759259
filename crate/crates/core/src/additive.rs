//! Subgroups of the core and their sums: every core subgroup other than `{1}`
//! sums to 0 mod `p^k`.

use alloc::vec::Vec;

use crate::arith;
use crate::error::{Error, Result};
use crate::group::GroupStructure;
use crate::residue::{PrimePowerModulus, Residue};

/// The unique subgroup of order `d` in the cyclic core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreSubgroup {
    pub order: u64,
    /// `h^(i (p-1)/d)` for `i = 0..d`.
    pub elements: Vec<Residue>,
    pub modulus: PrimePowerModulus,
}

impl CoreSubgroup {
    pub fn sum(&self) -> Residue {
        subgroup_sum(self)
    }
}

pub fn core_subgroup(group: &GroupStructure, d: u64) -> Result<CoreSubgroup> {
    if d == 0 || !group.core_order.is_multiple_of(d) {
        return Err(Error::NotADivisor {
            d,
            order: group.core_order,
        });
    }
    let step = group.core_generator.pow_mod(group.core_order / d);
    let elements = core::iter::successors(Some(group.modulus.one()), |x| {
        Some(x.mul_mod(step).expect("same modulus"))
    })
    .take(d as usize)
    .collect();
    Ok(CoreSubgroup {
        order: d,
        elements,
        modulus: group.modulus,
    })
}

pub fn subgroup_sum(s: &CoreSubgroup) -> Residue {
    let m = s.modulus.m();
    s.modulus
        .residue(s.elements.iter().fold(0u64, |acc, r| arith::add_mod(acc, r.value(), m)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorCheck {
    pub d: u64,
    pub sum: Residue,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreTheoremReport {
    pub modulus: PrimePowerModulus,
    /// One entry per divisor `d > 1` of `p - 1`, ascending.
    pub checks: Vec<DivisorCheck>,
    /// Sum of the trivial subgroup `{1}`, listed separately.
    pub trivial_sum: Residue,
}

impl CoreTheoremReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passes)
    }
}

pub fn verify_core_theorem(modulus: PrimePowerModulus) -> CoreTheoremReport {
    let group = GroupStructure::new(modulus);
    let mut checks = Vec::new();
    let mut trivial_sum = modulus.one();
    for d in arith::divisors(modulus.p() - 1) {
        let s = core_subgroup(&group, d).expect("divisor of p - 1");
        let sum = s.sum();
        if d == 1 {
            trivial_sum = sum;
        } else {
            checks.push(DivisorCheck {
                d,
                sum,
                passes: sum.value() == 0,
            });
        }
    }
    CoreTheoremReport {
        modulus,
        checks,
        trivial_sum,
    }
}
