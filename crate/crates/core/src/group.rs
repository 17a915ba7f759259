//! Units group `G_k` mod `p^k` as the direct product of the core `A_k`
//! (order `p - 1`) and the extension subgroup `B_k` (order `p^(k-1)`).
//!
//! Core elements are the fixed points of `n -> n^p`; the projection
//! `n -> n^(p^(k-1))` maps every unit onto the core element in its class mod `p`.

use alloc::vec::Vec;

use crate::dlog::primitive_root;
use crate::error::Result;
use crate::residue::{PrimePowerModulus, Residue};

pub fn units_order(modulus: PrimePowerModulus) -> u64 {
    modulus.units_order()
}

/// Generator and order data for `G_k`, `A_k`, `B_k` and the `p`-th power subgroup `F_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupStructure {
    pub modulus: PrimePowerModulus,
    pub group_order: u64,
    pub generator: Residue,
    /// `g^(p^(k-1))`
    pub core_generator: Residue,
    /// `g^(p-1)`
    pub extension_generator: Residue,
    pub core_order: u64,
    pub extension_order: u64,
    /// `(p-1) p^(k-2)` for `k >= 2`; the whole group when `k = 1`.
    pub fermat_order: u64,
}

impl GroupStructure {
    pub fn new(modulus: PrimePowerModulus) -> Self {
        let p = modulus.p();
        let generator = primitive_root(modulus);
        let extension_order = modulus.m() / p;
        let group_order = modulus.units_order();
        Self {
            modulus,
            group_order,
            generator,
            core_generator: generator.pow_mod(extension_order),
            extension_generator: generator.pow_mod(p - 1),
            core_order: p - 1,
            extension_order,
            fermat_order: if modulus.k() >= 2 { group_order / p } else { group_order },
        }
    }

    pub fn core_elements(&self) -> CoreSet {
        let h = self.core_generator;
        let elements: Vec<Residue> =
            core::iter::successors(Some(self.modulus.one()), |x| Some(x.mul_mod(h).expect("same modulus")))
                .take(self.core_order as usize)
                .collect();
        CoreSet::from_elements(self.modulus, elements)
    }
}

/// The `p - 1` elements of `A_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreSet {
    modulus: PrimePowerModulus,
    elements: Vec<Residue>,
    sorted: Vec<u64>,
}

impl CoreSet {
    fn from_elements(modulus: PrimePowerModulus, elements: Vec<Residue>) -> Self {
        let mut sorted: Vec<u64> = elements.iter().map(Residue::value).collect();
        sorted.sort_unstable();
        Self {
            modulus,
            elements,
            sorted,
        }
    }

    pub fn modulus(&self) -> PrimePowerModulus {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements in generator-power order `h^0, h^1, ..., h^(p-2)`.
    ///
    /// The first entry is 1; display code that wants the `h^1 .. h^(p-1)`
    /// layout can rotate it to the end.
    pub fn elements(&self) -> &[Residue] {
        &self.elements
    }

    /// Element values ascending.
    pub fn sorted_values(&self) -> &[u64] {
        &self.sorted
    }

    pub fn contains(&self, value: u64) -> bool {
        self.sorted.binary_search(&value).is_ok()
    }
}

/// `n^(p^(k-1))`, the core element congruent to `n` mod `p`.
pub fn core_project(n: Residue) -> Result<Residue> {
    let n = n.require_unit()?;
    let m = n.modulus();
    Ok(n.pow_mod(m.m() / m.p()))
}

pub fn core_elements(modulus: PrimePowerModulus) -> CoreSet {
    GroupStructure::new(modulus).core_elements()
}

/// `n` is a unit with `n^(p-1) = 1`.
pub fn is_core_member(n: Residue) -> bool {
    n.is_unit() && n.pow_mod(n.modulus().p() - 1).value() == 1
}

/// Membership in `F_k`, the image of the `p`-th power map.
pub fn is_pth_power_residue(n: Residue) -> Result<bool> {
    let n = n.require_unit()?;
    let m = n.modulus();
    if m.k() == 1 {
        // gcd(p, p - 1) = 1, so x -> x^p permutes the units mod p.
        return Ok(true);
    }
    let e = (m.p() - 1) * (m.m() / (m.p() * m.p()));
    Ok(n.pow_mod(e).value() == 1)
}

/// Unique factorization `n = a * b` with `a` in `A_k` and `b` in `B_k` (`b = 1 mod p`).
pub fn decompose_unit(n: Residue) -> Result<(Residue, Residue)> {
    let core_part = core_project(n)?;
    let extension_part = n.mul_mod(core_part.inv_mod()?)?;
    debug_assert_eq!(extension_part.value() % n.modulus().p(), 1 % n.modulus().p());
    Ok((core_part, extension_part))
}

/// Checks `n^p = n` for every core element.
pub fn fst_extension_check(modulus: PrimePowerModulus) -> bool {
    core_elements(modulus)
        .elements()
        .iter()
        .all(|&n| n.pow_mod(modulus.p()) == n)
}

/// Order of a unit, by stripping prime factors of `|G_k|`.
pub fn element_order(n: Residue) -> Result<u64> {
    let n = n.require_unit()?;
    let m = n.modulus();
    let mut order = m.units_order();
    let mut factors = crate::arith::factorize(m.p() - 1);
    if m.k() >= 2 {
        factors.push((m.p(), m.k() - 1));
    }
    for (q, e) in factors {
        for _ in 0..e {
            if n.pow_mod(order / q).value() == 1 {
                order /= q;
            } else {
                break;
            }
        }
    }
    Ok(order)
}
