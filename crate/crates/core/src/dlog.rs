//! Generators of the units group and discrete logarithms by baby-step giant-step.

use alloc::vec::Vec;

use crate::arith;
use crate::error::{Error, Result};
use crate::residue::{PrimePowerModulus, Residue};

/// Upper limit on baby-step table entries.
pub const MAX_BABY_STEPS: u64 = 1 << 24;

/// True when `g` has order exactly `(p-1) p^(k-1)`.
pub fn is_generator(g: Residue) -> bool {
    let modulus = g.modulus();
    if !g.is_unit() {
        return false;
    }
    let p = modulus.p();
    let n = modulus.units_order();
    let order_mod_p_full = arith::factorize(p - 1)
        .iter()
        .all(|&(q, _)| g.pow_mod(n / q).value() != 1);
    order_mod_p_full && (modulus.k() == 1 || g.pow_mod(n / p).value() != 1)
}

/// Smallest positive generator of the units group mod `p^k`.
///
/// A primitive root mod `p^2` generates every `G_k` with `k >= 2`, so the
/// candidate test only needs the prime factors of `p - 1` and one extra
/// power check mod `p^2`.
pub fn primitive_root(modulus: PrimePowerModulus) -> Residue {
    let p = modulus.p();
    let factors = arith::factorize(p - 1);
    let p2 = p as u128 * p as u128;
    let mut g = 2u64;
    loop {
        if !g.is_multiple_of(p) {
            let gp = g % p;
            let primitive_mod_p = factors.iter().all(|&(q, _)| arith::pow_mod(gp, (p - 1) / q, p) != 1);
            let lifts = modulus.k() == 1 || {
                // p^2 may exceed u64 only when k == 1, which is handled above.
                let p2 = p2 as u64;
                arith::pow_mod(g % p2, p - 1, p2) != 1
            };
            if primitive_mod_p && lifts {
                let root = modulus.residue(g);
                debug_assert!(is_generator(root));
                return root;
            }
        }
        g += 1;
    }
}

/// Baby-step giant-step table for one generator; immutable once built.
#[derive(Debug, Clone)]
pub struct DiscreteLog {
    generator: Residue,
    order: u64,
    step: u64,
    /// `(g^j, j)` for `j < step`, sorted by value.
    baby: Vec<(u64, u64)>,
    /// `g^(-step)`.
    giant: Residue,
}

impl DiscreteLog {
    pub fn new(generator: Residue) -> Result<Self> {
        if !generator.is_unit() {
            return Err(Error::NotAUnit(generator.value()));
        }
        if !is_generator(generator) {
            return Err(Error::NotAGenerator(generator.value()));
        }
        let order = generator.modulus().units_order();
        let step = arith::ceil_sqrt(order);
        if step > MAX_BABY_STEPS {
            return Err(Error::TableTooLarge(order));
        }
        let mut baby = Vec::with_capacity(step as usize);
        let mut cur = generator.modulus().one();
        for j in 0..step {
            baby.push((cur.value(), j));
            cur = cur.mul_mod(generator)?;
        }
        baby.sort_unstable();
        // `cur` is now g^step.
        let giant = cur.inv_mod()?;
        Ok(Self {
            generator,
            order,
            step,
            baby,
            giant,
        })
    }

    pub fn generator(&self) -> Residue {
        self.generator
    }

    /// The unique `t` in `[0, |G_k|)` with `g^t = x`.
    pub fn log(&self, x: Residue) -> Result<u64> {
        if x.modulus() != self.generator.modulus() {
            return Err(Error::ModulusMismatch);
        }
        if !x.is_unit() {
            return Err(Error::NotAUnit(x.value()));
        }
        let mut gamma = x;
        for i in 0..self.step {
            if let Ok(idx) = self.baby.binary_search_by(|&(v, _)| v.cmp(&gamma.value())) {
                let t = i * self.step + self.baby[idx].1;
                if t < self.order {
                    return Ok(t);
                }
            }
            gamma = gamma.mul_mod(self.giant)?;
        }
        Err(Error::NotInGroup(x.value()))
    }
}

/// One-shot discrete log of `x` to base `g`.
pub fn discrete_log(g: Residue, x: Residue) -> Result<u64> {
    if g.modulus() != x.modulus() {
        return Err(Error::ModulusMismatch);
    }
    DiscreteLog::new(g)?.log(x)
}
