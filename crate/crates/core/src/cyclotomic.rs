//! Exact arithmetic in the cyclotomic field Q(ζ_p) and the half-size
//! Legendre matrix decomposition over it.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{p-2}` as integer
//! numerators over one positive common denominator. Products are computed
//! modulo `X^p - 1` and then folded back with
//! `ζ^{p-1} = -1 - ζ - … - ζ^{p-2}`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, rat, Matrix, Rational};
use crate::numtheory::{pow_mod, primitive_root, Mod4, OddPrime};
use crate::quadfield::{unit_power_coeffs, UnitPower};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElem {
    p: OddPrime,
    num: Vec<BigInt>,
    den: BigInt,
}

pub type CycloMatrix = Matrix<CycloElem>;

impl CycloElem {
    fn degree(p: OddPrime) -> usize {
        p.value() as usize - 1
    }

    pub fn zero(p: OddPrime) -> Self {
        CycloElem {
            p,
            num: vec![BigInt::zero(); Self::degree(p)],
            den: BigInt::one(),
        }
    }

    pub fn one(p: OddPrime) -> Self {
        Self::from_rational(p, &Rational::one())
    }

    pub fn from_int(p: OddPrime, n: i64) -> Self {
        Self::from_rational(p, &rat(n))
    }

    pub fn from_rational(p: OddPrime, r: &Rational) -> Self {
        let mut e = Self::zero(p);
        e.num[0] = r.numer().clone();
        e.den = r.denom().clone();
        e
    }

    /// Builds an element from rational coefficients of `1, ζ, ζ², …`.
    /// Any number of coefficients is accepted; exponents are read mod p.
    pub fn from_coeffs(p: OddPrime, coeffs: &[Rational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut wide = vec![BigInt::zero(); p.value() as usize];
        let n = wide.len();
        for (k, c) in coeffs.iter().enumerate() {
            wide[k % n] += c.numer() * (&den / c.denom());
        }
        Self::fold(p, wide, den)
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(p: OddPrime, k: i64) -> Self {
        let n = p.value() as i64;
        let mut wide = vec![BigInt::zero(); n as usize];
        wide[k.rem_euclid(n) as usize] = BigInt::one();
        Self::fold(p, wide, BigInt::one())
    }

    pub fn zeta(p: OddPrime) -> Self {
        Self::zeta_pow(p, 1)
    }

    /// Reduces a numerator vector of length p (mod `X^p - 1`) to canonical
    /// form.
    fn fold(p: OddPrime, mut wide: Vec<BigInt>, den: BigInt) -> Self {
        debug_assert_eq!(wide.len(), p.value() as usize);
        let top = wide.pop().unwrap();
        if !top.is_zero() {
            for c in wide.iter_mut() {
                *c -= &top;
            }
        }
        let mut e = CycloElem { p, num: wide, den };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in self.num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
        } else if !g.is_one() {
            self.den /= &g;
            for c in self.num.iter_mut() {
                if !c.is_zero() {
                    *c /= &g;
                }
            }
        }
    }

    pub fn prime(&self) -> OddPrime {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// Coefficients of `1, ζ, …, ζ^{p-2}`.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        self.num[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| Rational::new(self.num[0].clone(), self.den.clone()))
    }

    fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.p.value(), other.p.value()))
        }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_field(rhs)?;
        let n = self.p.value() as usize;
        let mut acc = vec![BigInt::zero(); n];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = if i + j >= n { i + j - n } else { i + j };
                acc[k] += a * b;
            }
        }
        Ok(Self::fold(self.p, acc, &self.den * &rhs.den))
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.check_same_field(rhs)?;
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        let den = self.den.lcm(&rhs.den);
        let (fa, fb) = (&den / &self.den, &den / &rhs.den);
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| a * &fa + b * &fb)
            .collect();
        let mut e = CycloElem {
            p: self.p,
            num,
            den,
        };
        e.normalize();
        Ok(e)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut e = CycloElem {
            p: self.p,
            num: self.num.iter().map(|c| c * r.numer()).collect(),
            den: &self.den * r.denom(),
        };
        e.normalize();
        e
    }

    /// `self · ζ^k`, a rotation of coefficients.
    pub fn mul_zeta_pow(&self, k: i64) -> Self {
        let n = self.p.value() as usize;
        let shift = k.rem_euclid(n as i64) as usize;
        let mut wide = vec![BigInt::zero(); n];
        for (i, c) in self.num.iter().enumerate() {
            wide[(i + shift) % n] = c.clone();
        }
        Self::fold(self.p, wide, self.den.clone())
    }

    /// Image under the automorphism `ζ ↦ ζ^k`, `p ∤ k`.
    pub fn galois(&self, k: i64) -> Self {
        let n = self.p.value() as usize;
        let k = k.rem_euclid(n as i64) as usize;
        assert!(k != 0, "ζ ↦ 1 is not an automorphism");
        let mut wide = vec![BigInt::zero(); n];
        for (i, c) in self.num.iter().enumerate() {
            wide[i * k % n] += c;
        }
        Self::fold(self.p, wide, self.den.clone())
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse as the product of the other Galois conjugates
    /// divided by the norm.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.p, &r.recip()));
        }
        let pv = self.p.value();
        let g = primitive_root(self.p);
        // σ_g applied to ∏_{i<p-2} σ_g^i(self) gives ∏_{i=1}^{p-2} σ_g^i(self).
        let conj = self.orbit_product(g, pv as usize - 2).galois(g as i64);
        let norm = (self * &conj)
            .as_rational()
            .ok_or_else(|| Error::Internal(format!("norm of {self} is not rational")))?;
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(conj.scale(&norm.recip()))
    }

    /// `∏_{i=0}^{k-1} σ_g^i(self)` where `σ_g : ζ ↦ ζ^g`.
    fn orbit_product(&self, g: u64, k: usize) -> Self {
        let pv = self.p.value();
        if k == 1 {
            return self.clone();
        }
        if k.is_multiple_of(2) {
            let half = self.orbit_product(g, k / 2);
            let shift = pow_mod(g, (k / 2) as u64, pv);
            &half * &half.galois(shift as i64)
        } else {
            let rest = self.orbit_product(g, k - 1);
            let shift = pow_mod(g, (k - 1) as u64, pv);
            &rest * &self.galois(shift as i64)
        }
    }

    /// `Σ e · ζ^k` over `(e, k)` pairs, summed over one common denominator.
    pub fn sum_rotated(p: OddPrime, terms: &[(&CycloElem, i64)]) -> Self {
        let n = p.value() as usize;
        let den = terms
            .iter()
            .filter(|(e, _)| !e.is_zero())
            .fold(BigInt::one(), |acc, (e, _)| acc.lcm(&e.den));
        let mut wide = vec![BigInt::zero(); n];
        for (e, k) in terms {
            if e.is_zero() {
                continue;
            }
            let shift = k.rem_euclid(n as i64) as usize;
            let factor = &den / &e.den;
            for (i, c) in e.num.iter().enumerate() {
                if !c.is_zero() {
                    wide[(i + shift) % n] += c * &factor;
                }
            }
        }
        Self::fold(p, wide, den)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(&rhs.inv()?)
    }
}

impl Mul for &CycloElem {
    type Output = CycloElem;
    fn mul(self, rhs: &CycloElem) -> CycloElem {
        self.checked_mul(rhs).expect("same cyclotomic field")
    }
}

impl Add for &CycloElem {
    type Output = CycloElem;
    fn add(self, rhs: &CycloElem) -> CycloElem {
        self.checked_add(rhs).expect("same cyclotomic field")
    }
}

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem {
            p: self.p,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Sub for &CycloElem {
    type Output = CycloElem;
    fn sub(self, rhs: &CycloElem) -> CycloElem {
        self + &(-rhs)
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = Rational::new(c.clone(), self.den.clone());
            match (first, r.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mag = r.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        f.write_str("ζ")?;
                    } else {
                        write!(f, "ζ^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.p, self)
    }
}

/// Product of cyclotomic matrices.
pub fn cyclo_matmul(a: &CycloMatrix, b: &CycloMatrix) -> Result<CycloMatrix> {
    if a.cols() != b.rows() || a.rows() == 0 {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let p = a[(0, 0)].prime();
    let mut out = Vec::with_capacity(a.rows() * b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut acc = CycloElem::zero(p);
            for k in 0..a.cols() {
                if a[(i, k)].is_zero() || b[(k, j)].is_zero() {
                    continue;
                }
                acc = acc.checked_add(&a[(i, k)].checked_mul(&b[(k, j)])?)?;
            }
            out.push(acc);
        }
    }
    Matrix::from_vec(a.rows(), b.cols(), out)
}

/// Determinant over Q(ζ_p) by Gaussian elimination with exact inverses.
pub fn cyclo_det(m: &CycloMatrix) -> Result<CycloElem> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Err(Error::DimensionMismatch("empty cyclotomic matrix".into()));
    }
    let p = m[(0, 0)].prime();
    let mut rows: Vec<Vec<CycloElem>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut acc = CycloElem::one(p);
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !rows[i][k].is_zero()) else {
            return Ok(CycloElem::zero(p));
        };
        if piv != k {
            rows.swap(k, piv);
            acc = -&acc;
        }
        acc = &acc * &rows[k][k];
        let inv = rows[k][k].inv()?;
        let (head, tail) = rows.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            if row[k].is_zero() {
                continue;
            }
            let f = &row[k] * &inv;
            for j in k + 1..n {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &(&f * &pivot_row[j]);
                }
            }
        }
    }
    Ok(acc)
}

/// The quadratic Gauss sum `Σ (k/p) ζ^k`, whose square is `p` when
/// `p ≡ 1 (mod 4)`. Used as the square root of p throughout.
pub fn gauss_sum(p: OddPrime) -> Result<CycloElem> {
    p.require(Mod4::One)?;
    let coeffs: Vec<Rational> = (0..p.value() as i64)
        .map(|k| rat(p.legendre(k) as i64))
        .collect();
    let g = CycloElem::from_coeffs(p, &coeffs);
    if (&g * &g).as_rational() != Some(rat(p.value() as i64)) {
        return Err(Error::Internal(format!(
            "Gauss sum for p = {p} does not square to p"
        )));
    }
    Ok(g)
}

/// Factors `λ, V, D, U` of the half-size Legendre matrix for a prime
/// `p ≡ 1 (mod 4)`, all of order `(p+1)/2` and indexed from 0.
#[derive(Debug, Clone)]
pub struct DecompositionMatrices {
    /// Diagonal, `d_ii = ∏_{k≠i} 1/(ζ^{2i} - ζ^{2k})`.
    pub d: CycloMatrix,
    pub u: CycloMatrix,
    /// `U` with the top-left entry replaced by `(2/p)√p·x`.
    pub u_tilde: CycloMatrix,
    /// `v_ij = ζ^{2ij}`.
    pub v: CycloMatrix,
    /// `(2/p)√p ζ^{(p-1)/4}`.
    pub lambda: CycloElem,
    pub sqrt_p: CycloElem,
}

pub fn decomposition_matrices(p: OddPrime, x: &Rational) -> Result<DecompositionMatrices> {
    let g = gauss_sum(p)?;
    let n = p.half();
    let pv = p.value() as i64;
    let chi = |k: usize| p.legendre(k as i64) as i64;
    let chi2 = chi(2);

    let d_diag: Vec<CycloElem> = (0..=n)
        .map(|i| {
            let mut prod = CycloElem::one(p);
            for k in (0..=n).filter(|&k| k != i) {
                let diff =
                    &CycloElem::zeta_pow(p, 2 * i as i64) - &CycloElem::zeta_pow(p, 2 * k as i64);
                prod = &prod * &diff;
            }
            prod.inv()
        })
        .collect::<Result<_>>()?;
    let zero = CycloElem::zero(p);
    let d = Matrix::from_fn(n + 1, n + 1, |i, j| {
        if i == j {
            d_diag[i].clone()
        } else {
            zero.clone()
        }
    });

    // Denominators ζ^{-(i+j)} + (i/p)(j/p) depend only on (i + j, sign).
    let mut inv_cache: HashMap<(i64, i64), CycloElem> = HashMap::new();
    let mut u = Matrix::from_fn(n + 1, n + 1, |_, _| zero.clone());
    for i in 0..=n {
        for j in 0..=n {
            let (ci, cj) = (chi(i), chi(j));
            let s = i as i64 + j as i64;
            let key = (s, ci * cj);
            let den_inv = match inv_cache.get(&key) {
                Some(v) => v.clone(),
                None => {
                    let den = &CycloElem::zeta_pow(p, -s) + &CycloElem::from_int(p, ci * cj);
                    if den.is_zero() {
                        return Err(Error::Internal(format!(
                            "vanishing denominator at ({i}, {j}) for p = {p}"
                        )));
                    }
                    let v = den.inv()?;
                    inv_cache.insert(key, v.clone());
                    v
                }
            };
            let numer = &CycloElem::zeta_pow(p, -(j as i64) - 2 * i as i64).scale(&rat(ci))
                + &CycloElem::zeta_pow(p, -2 * (j as i64) - i as i64).scale(&rat(cj));
            u[(i, j)] = &numer * &den_inv;
        }
    }
    let mut u_tilde = u.clone();
    u_tilde[(0, 0)] = g.scale(&(rat(chi2) * x));

    let v = Matrix::from_fn(n + 1, n + 1, |i, j| {
        CycloElem::zeta_pow(p, (2 * i * j) as i64 % pv)
    });
    let lambda = g.scale(&rat(chi2)).mul_zeta_pow((pv - 1) / 4);
    Ok(DecompositionMatrices {
        d,
        u,
        u_tilde,
        v,
        lambda,
        sqrt_p: g,
    })
}

/// One named sub-check of a cyclotomic verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub label: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl CheckOutcome {
    fn compare(label: impl Into<String>, lhs: &CycloElem, rhs: &CycloElem) -> Self {
        let passed = lhs == rhs;
        CheckOutcome {
            label: label.into(),
            passed,
            detail: (!passed).then(|| format!("lhs = {lhs}; rhs = {rhs}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloReport {
    pub p: OddPrime,
    pub checks: Vec<CheckOutcome>,
}

impl CycloReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// `λ · V · D · M · D · V`, using that `V` has monomial entries and `D` is
/// diagonal.
fn sandwich(vs: &DecompositionMatrices, middle: &CycloMatrix) -> Result<CycloMatrix> {
    let size = middle.rows();
    let p = vs.lambda.prime();
    let pv = p.value() as i64;
    let dmd = Matrix::from_fn(size, size, |i, j| {
        &(&vs.d[(i, i)] * &middle[(i, j)]) * &vs.d[(j, j)]
    });
    // (V M)_{ij} = Σ_k ζ^{2ik} M_{kj}; V is symmetric so the right factor
    // is handled the same way on the transpose.
    let left_v = |m: &CycloMatrix| -> Result<CycloMatrix> {
        let mut out = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                let terms: Vec<_> = (0..size)
                    .map(|k| (&m[(k, j)], (2 * i * k) as i64 % pv))
                    .collect();
                out.push(CycloElem::sum_rotated(p, &terms));
            }
        }
        Matrix::from_vec(size, size, out)
    };
    let vm = left_v(&dmd)?;
    let vmv = left_v(&vm.transpose())?.transpose();
    Ok(vmv.map(|e| &vs.lambda * e))
}

fn first_entry_mismatch(lhs: &CycloMatrix, rhs: &CycloMatrix) -> Option<String> {
    for i in 0..lhs.rows() {
        for j in 0..lhs.cols() {
            if lhs[(i, j)] != rhs[(i, j)] {
                return Some(format!(
                    "entry ({i}, {j}): expected {}, got {}",
                    lhs[(i, j)],
                    rhs[(i, j)]
                ));
            }
        }
    }
    None
}

/// `[x + ((j - i)/p)]` for `0 <= i, j <= (p-1)/2`, as rationals.
pub fn half_legendre_matrix(p: OddPrime, x: &Rational) -> linalg::RatMatrix {
    let n = p.half();
    Matrix::from_fn(n + 1, n + 1, |i, j| {
        x + rat(p.legendre(j as i64 - i as i64) as i64)
    })
}

/// Checks `C(x) = λ V D Ũ(x) D V` for every `x`, the base decomposition of
/// `[((j-i)/p)]`, and that the top-left cofactor of `C(x)` equals
/// `(2/p) b_p' - a_p' x`.
pub fn verify_decomposition(p: OddPrime, xs: &[Rational]) -> Result<CycloReport> {
    p.require(Mod4::One)?;
    if xs.is_empty() {
        return Err(Error::DimensionMismatch("no x samples".into()));
    }
    let (a_primed, b_primed) = unit_power_coeffs(p, UnitPower::Primed)?;
    let chi2 = rat(p.legendre(2) as i64);
    let mut checks = Vec::new();

    let base = decomposition_matrices(p, &Rational::zero())?;
    let lift = |m: &linalg::RatMatrix| m.map(|r| CycloElem::from_rational(p, r));
    let target = lift(&half_legendre_matrix(p, &Rational::zero()));
    let got = sandwich(&base, &base.u)?;
    let detail = first_entry_mismatch(&target, &got);
    checks.push(CheckOutcome {
        label: "base".into(),
        passed: detail.is_none(),
        detail,
    });

    for x in xs {
        let mut u_tilde = base.u.clone();
        u_tilde[(0, 0)] = base.sqrt_p.scale(&(&chi2 * x));
        let c = half_legendre_matrix(p, x);
        let got = sandwich(&base, &u_tilde)?;
        let detail = first_entry_mismatch(&lift(&c), &got);
        checks.push(CheckOutcome {
            label: format!("x={x}"),
            passed: detail.is_none(),
            detail,
        });

        let cofactor = linalg::det(&c.minor(0, 0))?;
        let expected = &chi2 * &b_primed - &a_primed * x;
        let passed = cofactor == expected;
        checks.push(CheckOutcome {
            label: format!("cofactor x={x}"),
            passed,
            detail: (!passed).then(|| format!("det R(x) = {cofactor}, expected {expected}")),
        });
    }
    Ok(CycloReport { p, checks })
}

/// The five product identities inside Q(ζ_p), with √p realised as the
/// Gauss sum:
///
/// 1. `∏_{j=1}^n (1 + (j/p)ζ^{-j})² = (-1)^{n/2} ζ^{-n(n+1)/2} (b'p + a'√p)`
/// 2. `∏_{j=1}^n (1 - (j/p)ζ^{-j})² = (-1)^{n/2} ζ^{-n(n+1)/2} (b'p - a'√p)`
/// 3. `d_00² = p^{-1} ζ^{-(p-1)/4}`
/// 4. `∏ (1 + x_i²)^{-1} ∏ x_i² = ζ^{-n(n+1)/2} (2/p)` with `x_i = (i/p)ζ^{-i}`
/// 5. `ζ^{(p-1)²/8} p^{(p+3)/4} (det V)² (det D)² f₁² f₂^{-2} = 1`
pub fn verify_product_identities(p: OddPrime) -> Result<CycloReport> {
    p.require(Mod4::One)?;
    let pv = p.value() as i64;
    let n = p.half() as i64;
    let (a_primed, b_primed) = unit_power_coeffs(p, UnitPower::Primed)?;
    let g = gauss_sum(p)?;
    let one = CycloElem::one(p);
    let chi = |k: i64| p.legendre(k) as i64;
    let zeta = |k: i64| CycloElem::zeta_pow(p, k);
    let sign_half_n = if (n / 2) % 2 == 0 { 1 } else { -1 };
    let twist = zeta(-n * (n + 1) / 2).scale(&rat(sign_half_n));
    let bp = CycloElem::from_rational(p, &(&b_primed * rat(pv)));
    let ag = g.scale(&a_primed);

    let mut checks = Vec::new();

    for (label, s) in [("1", 1i64), ("2", -1i64)] {
        let mut lhs = one.clone();
        for j in 1..=n {
            let factor = &one + &zeta(-j).scale(&rat(s * chi(j)));
            lhs = &lhs * &(&factor * &factor);
        }
        let inner = if s == 1 { &bp + &ag } else { &bp - &ag };
        checks.push(CheckOutcome::compare(label, &lhs, &(&twist * &inner)));
    }

    let vs = decomposition_matrices(p, &Rational::zero())?;
    let d00 = &vs.d[(0, 0)];
    let rhs3 = zeta(-(pv - 1) / 4).scale(&Rational::new(1.into(), pv.into()));
    checks.push(CheckOutcome::compare("3", &(d00 * d00), &rhs3));

    let mut num4 = one.clone();
    let mut den4 = one.clone();
    for i in 1..=n {
        let xi = zeta(-i).scale(&rat(chi(i)));
        let xi2 = &xi * &xi;
        den4 = &den4 * &(&one + &xi2);
        num4 = &num4 * &xi2;
    }
    let lhs4 = num4.div(&den4)?;
    let rhs4 = zeta(-n * (n + 1) / 2).scale(&rat(chi(2)));
    checks.push(CheckOutcome::compare("4", &lhs4, &rhs4));

    let det_v = cyclo_det(&vs.v)?;
    let det_d = cyclo_det(&vs.d)?;
    let mut f1 = one.clone();
    let mut f2 = one.clone();
    for i in 1..=n {
        for j in i + 1..=n {
            let zi = zeta(i).scale(&rat(chi(i)));
            let zj = zeta(j).scale(&rat(chi(j)));
            f1 = &f1 * &(&zj - &zi);
            f2 = &f2 * &(&one + &(&zi * &zj));
        }
    }
    let p_pow = num_traits::pow(BigInt::from(pv), ((pv + 3) / 4) as usize);
    let lhs5 = [&det_v, &det_v, &det_d, &det_d, &f1, &f1].into_iter().fold(
        zeta((pv - 1) * (pv - 1) / 8).scale(&Rational::from_integer(p_pow)),
        |acc, e| &acc * e,
    );
    let f2_sq = &f2 * &f2;
    let lhs5 = lhs5.div(&f2_sq)?;
    checks.push(CheckOutcome::compare("5", &lhs5, &one));

    Ok(CycloReport { p, checks })
}
