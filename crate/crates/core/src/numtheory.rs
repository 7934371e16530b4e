//! Primality, prime enumeration and the Legendre symbol.

use std::fmt;

use crate::error::{Error, Result};

/// Largest prime accepted by [`OddPrime::new`]. Below this bound the
/// witness set {2, 7, 61} makes Miller-Rabin deterministic.
pub const PRIME_BOUND: u64 = 1 << 32;

/// Residue class of an odd prime modulo 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mod4 {
    One,
    Three,
}

impl Mod4 {
    pub fn as_u8(self) -> u8 {
        match self {
            Mod4::One => 1,
            Mod4::Three => 3,
        }
    }

    pub fn from_u8(r: u8) -> Option<Self> {
        match r {
            1 => Some(Mod4::One),
            3 => Some(Mod4::Three),
            _ => None,
        }
    }
}

/// An odd prime `p` with its class mod 4 cached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddPrime {
    value: u64,
    residue: Mod4,
}

impl OddPrime {
    pub fn new(value: u64) -> Result<Self> {
        if value > PRIME_BOUND {
            return Err(Error::PrimeOutOfRange {
                value,
                bound: PRIME_BOUND,
            });
        }
        if value < 3 || !is_prime(value) {
            return Err(Error::NotOddPrime(value));
        }
        let residue = if value % 4 == 1 {
            Mod4::One
        } else {
            Mod4::Three
        };
        Ok(OddPrime { value, residue })
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn residue_class(self) -> Mod4 {
        self.residue
    }

    /// `n = (p - 1) / 2`.
    #[inline]
    pub fn half(self) -> usize {
        ((self.value - 1) / 2) as usize
    }

    pub fn is_one_mod_4(self) -> bool {
        self.residue == Mod4::One
    }

    pub fn require(self, class: Mod4) -> Result<Self> {
        if self.residue == class {
            Ok(self)
        } else {
            Err(Error::WrongResidueClass {
                p: self.value,
                expected: class.as_u8(),
            })
        }
    }

    /// Legendre symbol `(a / self)`.
    #[inline]
    pub fn legendre(self, a: i64) -> i8 {
        legendre(a, self)
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Smallest generator of the multiplicative group mod `p`.
pub fn primitive_root(p: OddPrime) -> u64 {
    let pv = p.value();
    let mut factors = Vec::new();
    let mut m = pv - 1;
    let mut q = 2;
    while q * q <= m {
        if m.is_multiple_of(q) {
            factors.push(q);
            while m.is_multiple_of(q) {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..pv)
        .find(|&g| factors.iter().all(|&f| pow_mod(g, (pv - 1) / f, pv) != 1))
        .expect("every prime has a primitive root")
}

/// Deterministic primality test, exact for all `n <= PRIME_BOUND`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 61] {
        if n == small {
            return true;
        }
        if n.is_multiple_of(small) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 7, 61] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Legendre symbol `(a / p)` by the binary Jacobi algorithm.
pub fn legendre(a: i64, p: OddPrime) -> i8 {
    let mut n = p.value();
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz & 1 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// All primes `p` with `lo <= p <= hi`, optionally restricted to one class
/// mod 4, in ascending order.
pub fn primes_in(lo: u64, hi: u64, filter: Option<Mod4>) -> Result<Vec<OddPrime>> {
    if lo < 3 || lo > hi {
        return Err(Error::InvalidRange { lo, hi });
    }
    if hi > PRIME_BOUND {
        return Err(Error::PrimeOutOfRange {
            value: hi,
            bound: PRIME_BOUND,
        });
    }
    Ok((lo..=hi)
        .filter(|&n| is_prime(n))
        .map(|n| OddPrime::new(n).expect("checked prime"))
        .filter(|p| filter.is_none_or(|f| p.residue_class() == f))
        .collect())
}
