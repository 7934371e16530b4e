//! Multilinear polynomials in the variables x, y, z, w.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::linalg::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
    Z,
    W,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::Z, Var::W];

    fn bit(self) -> u8 {
        1 << (self as u8)
    }

    pub fn name(self) -> char {
        match self {
            Var::X => 'x',
            Var::Y => 'y',
            Var::Z => 'z',
            Var::W => 'w',
        }
    }
}

/// A squarefree monomial, i.e. a subset of {x, y, z, w}.
///
/// Ordered by size, then lexicographically with x < y < z < w.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u8);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_vars(vars: &[Var]) -> Self {
        Monomial(vars.iter().fold(0, |m, v| m | v.bit()))
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 & v.bit() != 0
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn vars(self) -> impl Iterator<Item = Var> {
        Var::ALL.into_iter().filter(move |v| self.contains(*v))
    }

    pub fn is_subset_of(self, other: Monomial) -> bool {
        self.0 & !other.0 == 0
    }

    fn disjoint(self, other: Monomial) -> bool {
        self.0 & other.0 == 0
    }

    fn union(self, other: Monomial) -> Monomial {
        Monomial(self.0 | other.0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.vars().cmp(other.vars()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        let mut first = true;
        for v in self.vars() {
            if !first {
                f.write_str("*")?;
            }
            write!(f, "{}", v.name())?;
            first = false;
        }
        Ok(())
    }
}

/// A value for each variable; unset variables read as zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    values: [Rational; 4],
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, v: Var, value: Rational) -> Self {
        self.set(v, value);
        self
    }

    pub fn set(&mut self, v: Var, value: Rational) {
        self.values[v as usize] = value;
    }

    pub fn get(&self, v: Var) -> &Rational {
        &self.values[v as usize]
    }

    pub fn x(&self) -> &Rational {
        self.get(Var::X)
    }
    pub fn y(&self) -> &Rational {
        self.get(Var::Y)
    }
    pub fn z(&self) -> &Rational {
        self.get(Var::Z)
    }
    pub fn w(&self) -> &Rational {
        self.get(Var::W)
    }
}

/// Polynomial of degree at most one in each variable, with exact rational
/// coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, Default)]
pub struct MultilinearPoly {
    vars: Monomial,
    coeffs: BTreeMap<Monomial, Rational>,
}

impl MultilinearPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms(&[], [(Monomial::ONE, c)])
    }

    pub fn var(v: Var) -> Self {
        Self::from_terms(&[v], [(Monomial::from_vars(&[v]), Rational::one())])
    }

    /// Builds a polynomial over `vars` from `(monomial, coefficient)` pairs.
    /// Repeated monomials are summed.
    ///
    /// Panics if a monomial mentions a variable outside `vars`.
    pub fn from_terms(vars: &[Var], terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = MultilinearPoly {
            vars: Monomial::from_vars(vars),
            coeffs: BTreeMap::new(),
        };
        for (m, c) in terms {
            assert!(
                m.is_subset_of(p.vars),
                "monomial {m} outside the declared variables"
            );
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        self.vars = self.vars.union(m);
        let slot = self.coeffs.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn variables(&self) -> Vec<Var> {
        self.vars.vars().collect()
    }

    pub fn coeff(&self, m: Monomial) -> Rational {
        self.coeffs.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Rational)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, at: &Assignment) -> Rational {
        self.coeffs
            .iter()
            .map(|(m, c)| m.vars().fold(c.clone(), |acc, v| acc * at.get(v)))
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = MultilinearPoly {
            vars: self.vars,
            coeffs: BTreeMap::new(),
        };
        for (m, c) in &self.coeffs {
            out.add_term(*m, c * k);
        }
        out
    }

    /// First monomial (canonical order) where `self` and `other` differ,
    /// with the two coefficients.
    pub fn first_mismatch(&self, other: &Self) -> Option<(Monomial, Rational, Rational)> {
        let mut keys: Vec<Monomial> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|m| {
            let (a, b) = (self.coeff(m), other.coeff(m));
            (a != b).then_some((m, a, b))
        })
    }
}

impl PartialEq for MultilinearPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for MultilinearPoly {}

impl From<Rational> for MultilinearPoly {
    fn from(c: Rational) -> Self {
        MultilinearPoly::constant(c)
    }
}

impl Add for &MultilinearPoly {
    type Output = MultilinearPoly;
    fn add(self, rhs: &MultilinearPoly) -> MultilinearPoly {
        let mut out = self.clone();
        out.vars = out.vars.union(rhs.vars);
        for (m, c) in &rhs.coeffs {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Neg for &MultilinearPoly {
    type Output = MultilinearPoly;
    fn neg(self) -> MultilinearPoly {
        self.scale(&-Rational::one())
    }
}

impl Sub for &MultilinearPoly {
    type Output = MultilinearPoly;
    fn sub(self, rhs: &MultilinearPoly) -> MultilinearPoly {
        self + &(-rhs)
    }
}

/// Product of polynomials in disjoint variable sets.
///
/// Panics if a pair of terms shares a variable, since the result would not
/// be multilinear.
impl Mul for &MultilinearPoly {
    type Output = MultilinearPoly;
    fn mul(self, rhs: &MultilinearPoly) -> MultilinearPoly {
        let mut out = MultilinearPoly {
            vars: self.vars.union(rhs.vars),
            coeffs: BTreeMap::new(),
        };
        for (m1, c1) in &self.coeffs {
            for (m2, c2) in &rhs.coeffs {
                assert!(m1.disjoint(*m2), "product {m1} * {m2} is not multilinear");
                out.add_term(m1.union(*m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MultilinearPoly {
            type Output = MultilinearPoly;
            fn $f(self, rhs: MultilinearPoly) -> MultilinearPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Canonical rendering, e.g. `-5 - 18*x - 5*y - 5*z + 5*x*w - 5*y*z`.
/// Coefficients print as `num/den`, or `num` when the denominator is 1.
impl fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}
