//! The ring `Z / p^k` and its elements.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arith;
use crate::error::{Error, ParseError, Result};

/// Largest admissible modulus (exclusive).
pub const MODULUS_BOUND: u64 = 1 << 63;

/// An odd prime power `m = p^k`, validated on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePowerModulus {
    p: u64,
    k: u32,
    m: u64,
}

impl PrimePowerModulus {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if p < 3 || !arith::is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if k == 0 {
            return Err(Error::ZeroPrecision);
        }
        match p.checked_pow(k) {
            Some(m) if m < MODULUS_BOUND => Ok(Self { p, k, m }),
            _ => Err(Error::ModulusOverflow { p, k }),
        }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn m(&self) -> u64 {
        self.m
    }

    /// Same prime at a different precision.
    pub fn with_precision(&self, k: u32) -> Result<Self> {
        Self::new(self.p, k)
    }

    /// `(p - 1) * p^(k-1)`, the order of the units group.
    #[inline]
    pub fn units_order(&self) -> u64 {
        (self.p - 1) * (self.m / self.p)
    }

    pub fn residue(&self, value: u64) -> Residue {
        Residue {
            value: value % self.m,
            modulus: *self,
        }
    }

    pub fn residue_i64(&self, value: i64) -> Residue {
        let v = (value as i128).rem_euclid(self.m as i128) as u64;
        Residue {
            value: v,
            modulus: *self,
        }
    }

    pub fn one(&self) -> Residue {
        self.residue(1)
    }

    pub fn minus_one(&self) -> Residue {
        Residue {
            value: self.m - 1,
            modulus: *self,
        }
    }

    /// Iterator over every unit in ascending order.
    pub fn units(&self) -> impl Iterator<Item = Residue> + '_ {
        (1..self.m).filter(|v| v % self.p != 0).map(|v| self.residue(v))
    }
}

impl fmt::Display for PrimePowerModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.k)
    }
}

/// Canonical representative in `[0, m)` of a class mod `p^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: PrimePowerModulus,
}

impl Residue {
    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(&self) -> PrimePowerModulus {
        self.modulus
    }

    #[inline]
    pub fn is_unit(&self) -> bool {
        !self.value.is_multiple_of(self.modulus.p)
    }

    pub fn require_unit(self) -> Result<Self> {
        if self.is_unit() {
            Ok(self)
        } else {
            Err(Error::NotAUnit(self.value))
        }
    }

    fn same_modulus(&self, other: &Residue) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch)
        }
    }

    #[inline]
    fn with_value(&self, value: u64) -> Residue {
        Residue {
            value,
            modulus: self.modulus,
        }
    }

    pub fn mul_mod(self, other: Residue) -> Result<Residue> {
        self.same_modulus(&other)?;
        Ok(self.with_value(arith::mul_mod(self.value, other.value, self.modulus.m)))
    }

    pub fn add_mod(self, other: Residue) -> Result<Residue> {
        self.same_modulus(&other)?;
        Ok(self.with_value(arith::add_mod(self.value, other.value, self.modulus.m)))
    }

    pub fn sub_mod(self, other: Residue) -> Result<Residue> {
        self.same_modulus(&other)?;
        Ok(self.with_value(arith::sub_mod(self.value, other.value, self.modulus.m)))
    }

    pub fn pow_mod(self, e: u64) -> Residue {
        self.with_value(arith::pow_mod(self.value, e, self.modulus.m))
    }

    pub fn inv_mod(self) -> Result<Residue> {
        if !self.is_unit() {
            return Err(Error::NotAUnit(self.value));
        }
        let inv = arith::inv_mod(self.value, self.modulus.m).ok_or(Error::NotAUnit(self.value))?;
        Ok(self.with_value(inv))
    }

    /// `self + 1`.
    pub fn succ(self) -> Residue {
        self.with_value(arith::add_mod(self.value, 1, self.modulus.m))
    }

    /// Reduction to a lower precision `j <= k`.
    pub fn truncate(self, j: u32) -> Result<Residue> {
        if j > self.modulus.k {
            return Err(Error::InvalidPrecision {
                from: self.modulus.k,
                to: j,
            });
        }
        Ok(self.modulus.with_precision(j)?.residue(self.value))
    }

    /// Representative in `(-m/2, m/2]`, the notation used for tables like `{7, -1, -7, 1}`.
    pub fn signed(&self) -> i64 {
        if self.value <= self.modulus.m / 2 {
            self.value as i64
        } else {
            -((self.modulus.m - self.value) as i64)
        }
    }

    pub fn to_padic(&self) -> PAdicDigits {
        let p = self.modulus.p;
        let mut digits = alloc::vec![0u64; self.modulus.k as usize];
        let mut v = self.value;
        for d in digits.iter_mut().rev() {
            *d = v % p;
            v /= p;
        }
        PAdicDigits {
            digits,
            p,
            k: self.modulus.k,
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Fixed-width base-`p` code of a residue, most significant digit first.
///
/// Text form: for `p <= 36` one character per digit (`0-9`, then `a-z`);
/// above that, decimal digit values joined by `:`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PAdicDigits {
    digits: Vec<u64>,
    p: u64,
    k: u32,
}

impl PAdicDigits {
    pub fn from_digits(digits: Vec<u64>, modulus: PrimePowerModulus) -> Result<Self> {
        if digits.len() != modulus.k as usize {
            return Err(ParseError::WrongLength {
                expected: modulus.k,
                found: digits.len(),
            }
            .into());
        }
        if let Some(&d) = digits.iter().find(|&&d| d >= modulus.p) {
            return Err(ParseError::InvalidDigit {
                digit: d,
                base: modulus.p,
            }
            .into());
        }
        Ok(Self {
            digits,
            p: modulus.p,
            k: modulus.k,
        })
    }

    pub fn parse(text: &str, modulus: PrimePowerModulus) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(ParseError::Empty.into());
        }
        let digits = if modulus.p <= 36 {
            text.chars()
                .map(|c| c.to_digit(36).map(u64::from).ok_or(ParseError::BadCharacter(c)))
                .collect::<core::result::Result<Vec<_>, _>>()?
        } else {
            let mut out = Vec::new();
            for part in text.split(':') {
                let mut v: u64 = 0;
                if part.is_empty() {
                    return Err(ParseError::Empty.into());
                }
                for c in part.chars() {
                    let d = c.to_digit(10).ok_or(ParseError::BadCharacter(c))?;
                    v = v.checked_mul(10).and_then(|v| v.checked_add(u64::from(d))).ok_or(
                        ParseError::InvalidDigit {
                            digit: u64::MAX,
                            base: modulus.p,
                        },
                    )?;
                }
                out.push(v);
            }
            out
        };
        Self::from_digits(digits, modulus)
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn to_residue(&self) -> Result<Residue> {
        let modulus = PrimePowerModulus::new(self.p, self.k)?;
        let value = self.digits.iter().fold(0u64, |acc, &d| acc * self.p + d);
        Ok(modulus.residue(value))
    }

    pub fn render(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        if self.p <= 36 {
            for &d in &self.digits {
                s.push(char::from_digit(d as u32, 36).unwrap_or('?'));
            }
        } else {
            for (i, d) in self.digits.iter().enumerate() {
                if i > 0 {
                    s.push(':');
                }
                let _ = write!(s, "{d}");
            }
        }
        s
    }
}

impl fmt::Display for PAdicDigits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl core::ops::Neg for Residue {
    type Output = Residue;

    fn neg(self) -> Residue {
        self.with_value(arith::sub_mod(0, self.value, self.modulus.m))
    }
}
