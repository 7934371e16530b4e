//! Arithmetic in Q(√p): fundamental units by continued fractions and class
//! numbers by counting reduced binary quadratic forms.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rat, Rational};
use crate::numtheory::{Mod4, OddPrime};

/// `a + b√p` with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadElem {
    pub a: Rational,
    pub b: Rational,
    pub p: OddPrime,
}

impl QuadElem {
    pub fn new(a: Rational, b: Rational, p: OddPrime) -> Self {
        QuadElem { a, b, p }
    }

    pub fn one(p: OddPrime) -> Self {
        QuadElem::new(Rational::one(), Rational::zero(), p)
    }

    /// `a² - p b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - rat(self.p.value() as i64) * &self.b * &self.b
    }

    pub fn pow(&self, mut exp: u64) -> QuadElem {
        let mut base = self.clone();
        let mut acc = QuadElem::one(self.p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }
}

impl Mul for &QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: &QuadElem) -> QuadElem {
        assert_eq!(self.p, rhs.p, "mixed radicands");
        let p = rat(self.p.value() as i64);
        QuadElem {
            a: &self.a * &rhs.a + p * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            p: self.p,
        }
    }
}

/// Renders as `a+b√p`, e.g. `1/2+1/2√5`.
impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}√{}", self.a, sign, self.b.abs(), self.p)
    }
}

/// Integral binary quadratic form `a X² + b XY + c Y²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }
}

/// Reduction condition for indefinite forms of nonsquare discriminant `d`:
/// `|√d - 2|a|| < b < √d`.
fn is_reduced_indefinite(f: &QuadForm, d: i64) -> bool {
    let two_a = 2 * f.a.abs();
    let lower = two_a - f.b; // need √d - b < 2|a|, i.e. √d < 2|a| + b
    f.b > 0
        && f.b * f.b < d
        && (two_a + f.b) * (two_a + f.b) > d
        && (lower <= 0 || lower * lower < d)
}

/// One step of the reduction operator on reduced indefinite forms:
/// `(a, b, c) -> (c, b', (b'² - d) / 4c)` with `b' ≡ -b (mod 2c)` and
/// `√d - 2|c| < b' < √d`.
fn rho(f: &QuadForm, d: i64) -> QuadForm {
    let s = d.sqrt();
    let m = 2 * f.c.abs();
    let b = s - (s + f.b).rem_euclid(m);
    QuadForm {
        a: f.c,
        b,
        c: (b * b - d) / (4 * f.c),
    }
}

/// Every reduced primitive indefinite form of discriminant `d`.
pub fn reduced_indefinite_forms(d: i64) -> Vec<QuadForm> {
    let mut out = Vec::new();
    let mut b = d.rem_euclid(2);
    while b * b < d {
        if b > 0 {
            let ac = (b * b - d) / 4; // negative
            let n = -ac;
            let mut a = 1;
            while a * a <= n {
                if n % a == 0 {
                    for (x, y) in [(a, n / a), (n / a, a)] {
                        for f in [QuadForm { a: x, b, c: -y }, QuadForm { a: -x, b, c: y }] {
                            if f.is_primitive() && is_reduced_indefinite(&f, d) {
                                out.push(f);
                            }
                        }
                    }
                }
                a += 1;
            }
        }
        b += 2;
    }
    out.sort();
    out.dedup();
    out
}

/// Number of ρ-cycles among the reduced forms of discriminant `d`.
pub fn count_form_cycles(d: i64) -> usize {
    let mut remaining: BTreeSet<QuadForm> = reduced_indefinite_forms(d).into_iter().collect();
    let mut cycles = 0;
    while let Some(start) = remaining.pop_first() {
        cycles += 1;
        let mut f = rho(&start, d);
        while f != start {
            debug_assert!(is_reduced_indefinite(&f, d), "{f:?} not reduced");
            remaining.remove(&f);
            f = rho(&f, d);
        }
    }
    cycles
}

/// Fundamental unit of Q(√p) for a prime `p ≡ 1 (mod 4)`.
///
/// Expands ω = (1 + √p)/2 as a continued fraction and stops at the first
/// convergent h/k with `N(h - kω) = ±1`; the unit is then `h - kω̄`.
pub fn fundamental_unit(p: OddPrime) -> Result<QuadElem> {
    p.require(Mod4::One)?;
    let d = p.value() as i64;
    let s = d.sqrt();
    let quarter = BigInt::from((d - 1) / 4);
    // complete quotient (P + √d) / Q
    let (mut pp, mut qq) = (1i64, 2i64);
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    loop {
        let a = (pp + s).div_euclid(qq);
        let h_next = &h * a + &h_prev;
        let k_next = &k * a + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);

        let norm = &h * &h - &h * &k - &k * &k * &quarter;
        if norm.abs().is_one() {
            if norm.is_one() {
                return Err(Error::Internal(format!(
                    "fundamental unit of Q(√{d}) has norm +1"
                )));
            }
            let two = BigInt::from(2);
            let unit = QuadElem::new(
                Rational::new(&h * &two - &k, two.clone()),
                Rational::new(k.clone(), two),
                p,
            );
            return Ok(unit);
        }

        pp = a * qq - pp;
        qq = (d - pp * pp) / qq;
    }
}

/// Class number `h_p` of Q(√p), `p ≡ 1 (mod 4)`, as the number of cycles of
/// reduced forms of discriminant `p`. Since the fundamental unit has norm
/// -1 this agrees with the narrow class number.
pub fn class_number_real(p: OddPrime) -> Result<u64> {
    fundamental_unit(p)?;
    Ok(count_form_cycles(p.value() as i64) as u64)
}

/// Reduced positive definite forms of discriminant `-p`.
pub fn reduced_definite_forms(p: OddPrime) -> Vec<QuadForm> {
    let n = p.value() as i64;
    let mut out = Vec::new();
    let mut a = 1;
    // 3a² <= 4ac - b² = p
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            let num = b * b + n;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || ((a == c || b.abs() == a) && b < 0) {
                continue;
            }
            let f = QuadForm { a, b, c };
            if f.is_primitive() {
                out.push(f);
            }
        }
        a += 1;
    }
    out
}

/// `(#residues - #non-residues in (0, p/2)) / (2 - (2/p))`.
pub fn class_number_imag_character_sum(p: OddPrime) -> Result<i64> {
    let n = p.value() as i64;
    let sum: i64 = (1..=(n - 1) / 2).map(|k| p.legendre(k) as i64).sum();
    let div = 2 - p.legendre(2) as i64;
    if sum % div != 0 {
        return Err(Error::Internal(format!(
            "character sum {sum} for p = {n} not divisible by {div}"
        )));
    }
    Ok(sum / div)
}

/// Class number `h(-p)` of Q(√-p) for `p ≡ 3 (mod 4)`, `p > 3`, counted by
/// reduced forms and cross-checked against the character sum.
pub fn class_number_imag(p: OddPrime) -> Result<u64> {
    p.require(Mod4::Three)?;
    if p.value() == 3 {
        return Err(Error::ExcludedPrime(3));
    }
    let forms = reduced_definite_forms(p).len() as i64;
    let chi = class_number_imag_character_sum(p)?;
    if forms != chi {
        return Err(Error::Internal(format!(
            "h(-{p}): {forms} reduced forms but character sum gives {chi}"
        )));
    }
    Ok(forms as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitPower {
    /// Exponent `h_p`, giving `(a_p, b_p)`.
    Plain,
    /// Exponent `(2 - (2/p)) h_p`, giving `(a_p', b_p')`.
    Primed,
}

/// Coordinates of `ε_p^{h_p}` or `ε_p^{(2-(2/p)) h_p}` in the basis `1, √p`.
pub fn unit_power_coeffs(p: OddPrime, variant: UnitPower) -> Result<(Rational, Rational)> {
    let eps = fundamental_unit(p)?;
    let h = class_number_real(p)?;
    let exp = match variant {
        UnitPower::Plain => h,
        UnitPower::Primed => (2 - p.legendre(2) as i64) as u64 * h,
    };
    let u = eps.pow(exp);
    if u.norm() != rat(-1) || !u.a.is_positive() || !u.b.is_positive() {
        return Err(Error::Internal(format!(
            "ε^{exp} = {u} for p = {p} violates norm -1 / positivity"
        )));
    }
    Ok((u.a, u.b))
}

/// All of the per-prime quadratic constants in one place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadConstants {
    pub unit: QuadElem,
    pub class_number: u64,
    pub plain: (Rational, Rational),
    pub primed: (Rational, Rational),
}

pub fn quad_constants(p: OddPrime) -> Result<QuadConstants> {
    Ok(QuadConstants {
        unit: fundamental_unit(p)?,
        class_number: class_number_real(p)?,
        plain: unit_power_coeffs(p, UnitPower::Plain)?,
        primed: unit_power_coeffs(p, UnitPower::Primed)?,
    })
}
