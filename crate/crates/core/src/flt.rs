//! Normalized FLT roots `a^p + b^p = -1 (mod p^k)`, cubic roots of unity,
//! the distributivity check `(a+b)^p = a^p + b^p`, `p`-th roots and Newton-Hensel lifting.

use alloc::vec::Vec;

use crate::arith;
use crate::dlog::{primitive_root, DiscreteLog};
use crate::error::{Error, Result};
use crate::group::{core_elements, core_project, is_core_member, is_pth_power_residue, GroupStructure};
use crate::residue::{PrimePowerModulus, Residue};

/// Below this bound the cubic-root seed mod `p` is found by scanning; above it
/// via `g^((p-1)/3)`.
pub const CUBIC_SEED_SCAN_LIMIT: u64 = 10_000;

/// `{1, a, a^2}` with `a^3 = 1`, `a != 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicRootTriple {
    /// Lift of the smallest nontrivial root mod `p`.
    pub a: Residue,
    /// `1, a, a^2` sorted by value.
    pub roots: [Residue; 3],
}

impl CubicRootTriple {
    pub fn modulus(&self) -> PrimePowerModulus {
        self.a.modulus()
    }

    /// `a^2 = a^-1`.
    pub fn a_inverse(&self) -> Residue {
        self.a.pow_mod(2)
    }

    pub fn sum(&self) -> Residue {
        self.roots.iter().fold(self.modulus().residue(0), |acc, &r| {
            acc.add_mod(r).expect("same modulus")
        })
    }
}

/// Nontrivial root of `x^2 + x + 1` mod `p`, smallest by value, by exhaustive scan.
pub fn cubic_seed_by_scan(p: u64) -> Option<u64> {
    (2..p).find(|&x| (arith::mul_mod(x, x, p) + x + 1).is_multiple_of(p))
}

/// Nontrivial cube root of 1 mod `p` as `g^((p-1)/3)` for the smallest primitive root `g`.
pub fn cubic_seed_by_generator(p: u64) -> Option<u64> {
    if p % 3 != 1 {
        return None;
    }
    let modulus = PrimePowerModulus::new(p, 1).ok()?;
    Some(primitive_root(modulus).pow_mod((p - 1) / 3).value())
}

pub fn cubic_roots_of_unity(modulus: PrimePowerModulus) -> Result<CubicRootTriple> {
    let p = modulus.p();
    if p % 6 != 1 {
        return Err(Error::NoCubicRoots(p));
    }
    let seed = if p < CUBIC_SEED_SCAN_LIMIT {
        cubic_seed_by_scan(p)
    } else {
        // The generator path may return either root; take the smaller one so
        // the result does not depend on which path ran.
        cubic_seed_by_generator(p).map(|r| r.min(p - 1 - r))
    }
    .ok_or(Error::NoCubicRoots(p))?;
    let seed = modulus.with_precision(1)?.residue(seed);
    let a = hensel_lift_poly_root(&[1, 1, 1], seed, modulus.k())?;
    let mut roots = [modulus.one(), a, a.pow_mod(2)];
    roots.sort_unstable_by_key(Residue::value);
    Ok(CubicRootTriple { a, roots })
}

fn eval_poly(coeffs: &[i64], x: u64, m: u64) -> u64 {
    coeffs.iter().rev().fold(0u64, |acc, &c| {
        let c = (c as i128).rem_euclid(m as i128) as u64;
        arith::add_mod(arith::mul_mod(acc, x, m), c, m)
    })
}

fn derivative(coeffs: &[i64]) -> Vec<i64> {
    coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as i64).collect()
}

/// Lifts a simple root of `f` from precision `p^j` (the modulus of `root`) to
/// `p^target_k`. Coefficients are given constant term first.
pub fn hensel_lift_poly_root(coeffs: &[i64], root: Residue, target_k: u32) -> Result<Residue> {
    let base = root.modulus();
    if target_k < base.k() {
        return Err(Error::InvalidPrecision {
            from: base.k(),
            to: target_k,
        });
    }
    let target = base.with_precision(target_k)?;
    if eval_poly(coeffs, root.value(), base.m()) != 0 {
        return Err(Error::NotARoot);
    }
    let df = derivative(coeffs);
    if eval_poly(&df, root.value(), base.p()) == 0 {
        return Err(Error::SingularRoot);
    }

    let mut r = root.value();
    let mut prec = base.k();
    while prec < target_k {
        prec = (prec * 2).min(target_k);
        let m = base.p().pow(prec);
        let fr = eval_poly(coeffs, r, m);
        let dfr = arith::inv_mod(eval_poly(&df, r, m), m).ok_or(Error::SingularRoot)?;
        r = arith::sub_mod(r % m, arith::mul_mod(fr, dfr, m), m);
    }
    debug_assert_eq!(eval_poly(coeffs, r, target.m()), 0);
    Ok(target.residue(r))
}

/// Both sides of `(a+b)^p = a^p + b^p (mod p^k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdsReport {
    pub lhs: Residue,
    pub rhs: Residue,
    pub holds: bool,
}

pub fn eds_check(a: Residue, b: Residue) -> Result<EdsReport> {
    let p = a.modulus().p();
    let lhs = a.add_mod(b)?.pow_mod(p);
    let rhs = a.pow_mod(p).add_mod(b.pow_mod(p))?;
    Ok(EdsReport {
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

/// Unordered pair of units with `a^p + b^p = -1`, stored with `a <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FltRootPair {
    pub a: Residue,
    pub b: Residue,
    pub eds_holds: bool,
}

impl FltRootPair {
    pub fn modulus(&self) -> PrimePowerModulus {
        self.a.modulus()
    }

    /// `a * b = 1`: the pair is a cubic root and its inverse.
    pub fn is_inverse_pair(&self) -> bool {
        self.a.mul_mod(self.b).map(|x| x.value() == 1).unwrap_or(false)
    }
}

/// All unordered pairs `{a, b}` of core elements mod `p^2` with `a + b = -1`.
///
/// Core elements mod `p^2` are exactly the `p`-th power residues, so these are
/// the distinct value pairs `(x^p, y^p)` over all unit solutions `(x, y)`.
pub fn enumerate_flt_roots_mod_p2(p: u64) -> Result<Vec<FltRootPair>> {
    let modulus = PrimePowerModulus::new(p, 2)?;
    let core = core_elements(modulus);
    let m = modulus.m();
    let mut out = Vec::new();
    for &alpha in core.sorted_values() {
        let beta = m - 1 - alpha;
        if beta < alpha || beta % p == 0 || !core.contains(beta) {
            continue;
        }
        let (a, b) = (modulus.residue(alpha), modulus.residue(beta));
        out.push(FltRootPair {
            a,
            b,
            eds_holds: eds_check(a, b)?.holds,
        });
    }
    Ok(out)
}

/// A root pair mod `p^2` carried to precision `k` by taking the core lift of `a`
/// and completing with `b' = -1 - a'`. Both stay `p`-th power residues; `b'`
/// stays in the core only when the pair survives at the higher precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftedFltRoot {
    pub a: Residue,
    pub b: Residue,
    pub b_in_core: bool,
    pub b_is_pth_power: bool,
    pub eds: EdsReport,
}

pub fn lift_flt_root(pair: &FltRootPair, k: u32) -> Result<LiftedFltRoot> {
    let target = pair.modulus().with_precision(k)?;
    let a = core_project(target.residue(pair.a.value()))?;
    let b = target.minus_one().sub_mod(a)?;
    Ok(LiftedFltRoot {
        a,
        b,
        b_in_core: is_core_member(b),
        b_is_pth_power: is_pth_power_residue(b)?,
        eds: eds_check(a, b)?,
    })
}

/// Every `x` with `x^p = c`; empty when `c` is not a `p`-th power residue.
pub fn pth_roots(c: Residue) -> Result<Vec<Residue>> {
    let c = c.require_unit()?;
    let modulus = c.modulus();
    let p = modulus.p();
    let order = modulus.units_order();
    if modulus.k() == 1 {
        // x^p = x mod p.
        return Ok(alloc::vec![c]);
    }
    let group = GroupStructure::new(modulus);
    let t = DiscreteLog::new(group.generator)?.log(c)?;
    if t % p != 0 {
        return Ok(Vec::new());
    }
    let first = group.generator.pow_mod(t / p);
    let step = group.generator.pow_mod(order / p);
    let mut roots: Vec<Residue> = core::iter::successors(Some(first), |x| Some(x.mul_mod(step).expect("same modulus")))
        .take(p as usize)
        .collect();
    roots.sort_unstable_by_key(Residue::value);
    Ok(roots)
}

/// Result of rescaling `x^p + y^p = z^p` by `-z^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalizedTriple {
    pub a: Residue,
    pub b: Residue,
    /// Whether `a^p + b^p = -1` actually holds.
    pub valid: bool,
}

pub fn normalize_flt_triple(x: i64, y: i64, z: i64, modulus: PrimePowerModulus) -> Result<NormalizedTriple> {
    let p = modulus.p() as i128;
    for v in [x, y, z] {
        if (v as i128) % p == 0 {
            return Err(Error::Case2Excluded(v));
        }
    }
    let scale = -modulus.residue_i64(z).inv_mod()?;
    let a = modulus.residue_i64(x).mul_mod(scale)?;
    let b = modulus.residue_i64(y).mul_mod(scale)?;
    let (a, b) = if a.value() <= b.value() { (a, b) } else { (b, a) };
    let pp = modulus.p();
    let valid = a.pow_mod(pp).add_mod(b.pow_mod(pp))? == modulus.minus_one();
    Ok(NormalizedTriple { a, b, valid })
}
