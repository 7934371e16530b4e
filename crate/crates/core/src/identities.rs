//! Legendre-symbol matrix families, their closed-form determinants, and the
//! verifiers that compare the two.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, rat, Matrix, RatMatrix, Rational};
use crate::numtheory::{Mod4, OddPrime};
use crate::poly::{Assignment, MultilinearPoly, Var};
use crate::quadfield::{class_number_imag, unit_power_coeffs, UnitPower};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// `[x + ((i-j)/p) + (i/p)y + (j/p)z + (ij/p)w]`, `0 <= i,j <= (p-3)/2`.
    Main,
    /// `[x + ((i-j)/p)]`, `1 <= i,j <= (p-1)/2`.
    Simple,
    /// `[((i-j)/p)]`, `0 <= i,j <= (p-1)/2`.
    Evil,
    /// `Evil` with its first row replaced by ones.
    Mp,
    /// `[1 + ((j-i)/p)]`, `1 <= i,j <= (p-1)/2`.
    OnePlus,
    /// `[x + ((i+j-1)/p)]`, `1 <= i,j <= (p+1)/2`.
    Chapman,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Main,
        Family::Simple,
        Family::Evil,
        Family::Mp,
        Family::OnePlus,
        Family::Chapman,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Main => "main",
            Family::Simple => "simple",
            Family::Evil => "evil",
            Family::Mp => "mp",
            Family::OnePlus => "oneplus",
            Family::Chapman => "chapman",
        }
    }

    /// Variables the determinant depends on.
    pub fn variables(self) -> &'static [Var] {
        match self {
            Family::Main => &[Var::X, Var::Y, Var::Z, Var::W],
            Family::Simple | Family::Chapman => &[Var::X],
            Family::Evil | Family::Mp | Family::OnePlus => &[],
        }
    }

    pub fn order(self, p: OddPrime) -> usize {
        let n = p.half();
        match self {
            Family::Main => n,
            Family::Simple | Family::OnePlus => n,
            Family::Evil | Family::Mp | Family::Chapman => n + 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.tag().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown family '{s}'"))
    }
}

/// The matrix of `family` at `p` under `at` (unset variables are zero).
pub fn build(family: Family, p: OddPrime, at: &Assignment) -> RatMatrix {
    let leg = |k: i64| rat(p.legendre(k) as i64);
    let size = family.order(p);
    match family {
        Family::Main => Matrix::from_fn(size, size, |i, j| {
            let (i, j) = (i as i64, j as i64);
            at.x() + leg(i - j) + leg(i) * at.y() + leg(j) * at.z() + leg(i * j) * at.w()
        }),
        Family::Simple => Matrix::from_fn(size, size, |i, j| at.x() + leg(i as i64 - j as i64)),
        Family::Evil => Matrix::from_fn(size, size, |i, j| leg(i as i64 - j as i64)),
        Family::Mp => Matrix::from_fn(size, size, |i, j| {
            if i == 0 {
                Rational::one()
            } else {
                leg(i as i64 - j as i64)
            }
        }),
        Family::OnePlus => Matrix::from_fn(size, size, |i, j| rat(1) + leg(j as i64 - i as i64)),
        Family::Chapman => {
            Matrix::from_fn(size, size, |i, j| at.x() + leg(i as i64 + j as i64 + 1))
        }
    }
}

/// Expected determinant, or the reason none is stated for this prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expectation {
    Value(MultilinearPoly),
    Skipped(String),
}

fn sign_pow(e: u64) -> Rational {
    if e.is_multiple_of(2) {
        rat(1)
    } else {
        rat(-1)
    }
}

/// The closed form for `family` at `p`, with the quadratic-field constants
/// filled in.
pub fn closed_form(family: Family, p: OddPrime) -> Result<Expectation> {
    use Expectation::{Skipped, Value};
    let x = MultilinearPoly::var(Var::X);
    let constant = |r: Rational| Value(MultilinearPoly::constant(r));
    let pv = p.value();
    let one_mod_4 = p.is_one_mod_4();
    let chi2 = rat(p.legendre(2) as i64);
    let primed = || unit_power_coeffs(p, UnitPower::Primed);

    Ok(match family {
        Family::Main if one_mod_4 => {
            let (a, b) = primed()?;
            let one = MultilinearPoly::constant(rat(1));
            let y1 = &MultilinearPoly::var(Var::Y) + &one;
            let z1 = &MultilinearPoly::var(Var::Z) + &one;
            let wx = &MultilinearPoly::var(Var::W) * &x;
            let shape = &(&y1 * &z1) - &wx;
            Value(&shape.scale(&(chi2 * b)) - &x.scale(&a))
        }
        Family::Main => Value(x),
        Family::Simple if one_mod_4 => {
            let (a, b) = primed()?;
            Value(&MultilinearPoly::constant(chi2 * b) - &x.scale(&a))
        }
        Family::Simple => Value(x),
        Family::Evil if one_mod_4 => constant(-primed()?.0),
        Family::Evil => constant(rat(1)),
        Family::Mp if one_mod_4 => constant(sign_pow((pv - 1) / 4)),
        Family::Mp if pv == 3 => Skipped("closed form stated for p > 3 only".into()),
        Family::Mp => constant(sign_pow((class_number_imag(p)? - 1) / 2)),
        Family::OnePlus if one_mod_4 => Skipped("closed form stated for p ≡ 3 (mod 4) only".into()),
        Family::OnePlus => constant(rat(1)),
        Family::Chapman if one_mod_4 => {
            let (a, b) = unit_power_coeffs(p, UnitPower::Plain)?;
            let two_pow = Rational::from_integer(num_traits::pow(2.into(), p.half()));
            let inner = &x.scale(&(rat(pv as i64) * b)) - &MultilinearPoly::constant(a);
            Value(inner.scale(&(chi2 * two_pow)))
        }
        Family::Chapman if pv == 3 => Skipped("closed form stated for p > 3 only".into()),
        Family::Chapman => constant(Rational::from_integer(num_traits::pow(2.into(), p.half()))),
    })
}

/// Exact determinant of the family as a polynomial in its variables.
pub fn computed_determinant(family: Family, p: OddPrime) -> Result<MultilinearPoly> {
    let vars = family.variables();
    if vars.is_empty() {
        let d = linalg::det(&build(family, p, &Assignment::new()))?;
        return Ok(MultilinearPoly::constant(d));
    }
    linalg::det_multilinear(|at| Ok(build(family, p, at)), vars)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationRecord {
    pub family: Family,
    pub p: OddPrime,
    pub status: Status,
    pub computed: Option<MultilinearPoly>,
    pub expected: Option<MultilinearPoly>,
    pub elapsed_ms: u64,
    pub detail: Option<String>,
}

/// Computes the determinant of `family` at `p` and compares it with the
/// closed form. Errors become failed records.
pub fn verify(family: Family, p: OddPrime) -> VerificationRecord {
    let start = Instant::now();
    let mut rec = VerificationRecord {
        family,
        p,
        status: Status::Fail,
        computed: None,
        expected: None,
        elapsed_ms: 0,
        detail: None,
    };
    match closed_form(family, p) {
        Err(e) => rec.detail = Some(e.to_string()),
        Ok(Expectation::Skipped(reason)) => {
            rec.status = Status::Skipped;
            rec.detail = Some(reason);
        }
        Ok(Expectation::Value(expected)) => {
            match computed_determinant(family, p) {
                Err(e) => rec.detail = Some(e.to_string()),
                Ok(computed) => {
                    if let Some((m, c, e)) = computed.first_mismatch(&expected) {
                        rec.detail =
                            Some(format!("coefficient of {m}: computed {c}, expected {e}"));
                    } else {
                        rec.status = Status::Pass;
                    }
                    rec.computed = Some(computed);
                }
            }
            rec.expected = Some(expected);
        }
    }
    rec.elapsed_ms = start.elapsed().as_millis() as u64;
    rec
}

/// One record per `(family, p)` pair, sorted by family then prime.
pub fn verify_range(families: &[Family], primes: &[OddPrime]) -> Vec<VerificationRecord> {
    let tasks: Vec<(Family, OddPrime)> = families
        .iter()
        .flat_map(|&f| primes.iter().map(move |&p| (f, p)))
        .collect();
    let mut out: Vec<VerificationRecord> =
        tasks.into_par_iter().map(|(f, p)| verify(f, p)).collect();
    out.sort_by_key(|r| (r.family, r.p));
    out
}

/// A labelled comparison inside the section-3 pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineCheck {
    pub label: String,
    pub computed: String,
    pub expected: String,
    pub passed: bool,
}

impl PipelineCheck {
    fn values(label: &str, computed: &Rational, expected: &Rational) -> Self {
        PipelineCheck {
            label: label.into(),
            computed: computed.to_string(),
            expected: expected.to_string(),
            passed: computed == expected,
        }
    }

    fn holds(label: &str, ok: bool) -> Self {
        PipelineCheck {
            label: label.into(),
            computed: ok.to_string(),
            expected: true.to_string(),
            passed: ok,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section3Report {
    pub p: OddPrime,
    pub checks: Vec<PipelineCheck>,
}

impl Section3Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Runs the Cramer's-rule construction for `p ≡ 3 (mod 4)`, `p > 3`: solve
/// `Σ_i ((j-i)/p) c_i = 1`, form `A`, `B = M* Aᵀ` and `B*`, and check every
/// determinant in the chain down to `det[1 + ((j-i)/p)] = 1`.
pub fn verify_section3(p: OddPrime) -> Result<Section3Report> {
    p.require(Mod4::Three)?;
    if p.value() == 3 {
        return Err(Error::ExcludedPrime(3));
    }
    let n = p.half();
    let size = n + 1;
    let leg = |k: i64| rat(p.legendre(k) as i64);
    let sign = sign_pow((class_number_imag(p)? - 1) / 2);

    // T = [((j-i)/p)]_{0..n}
    let t = Matrix::from_fn(size, size, |i, j| leg(j as i64 - i as i64));
    let det_t = linalg::det(&t)?;

    let m_p = build(Family::Mp, p, &Assignment::new());
    let m_star = Matrix::from_fn(size, size, |i, j| m_p[(n - i, n - j)].clone());

    // Σ_i T_{ij} c_i = 1 for each j, i.e. Tᵀ c = 1.
    let ones = vec![Rational::one(); size];
    let c = linalg::solve(&t.transpose(), &ones).map_err(|e| match e {
        Error::Singular(s) => Error::Internal(format!("section 3 system singular: {s}")),
        other => other,
    })?;
    let a = Matrix::from_fn(size, size, |i, j| {
        if i == n {
            c[j].clone()
        } else if i == j {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let det_a = linalg::det(&a)?;
    let det_m_star = linalg::det(&m_star)?;
    let det_m = linalg::det(&m_p)?;

    let b = &m_star * &a.transpose();
    let c_sum: Rational = c.iter().sum();
    let b_shape_ok = (0..size).all(|i| {
        (0..size).all(|j| {
            let expect = if i < n && j < n {
                leg(j as i64 - i as i64)
            } else if i < n {
                rat(-1)
            } else if j < n {
                rat(1)
            } else {
                c_sum.clone()
            };
            b[(i, j)] == expect
        })
    });
    let det_b = linalg::det(&b)?;
    let mut b_star = b.clone();
    b_star[(n, n)] = Rational::one();
    let det_b_star = linalg::det(&b_star)?;
    let det_one_plus = linalg::det(&build(Family::OnePlus, p, &Assignment::new()))?;

    let checks = vec![
        PipelineCheck::values("det T", &det_t, &rat(1)),
        PipelineCheck::holds("A T = M*", &a * &t == m_star),
        PipelineCheck::values("det M", &det_m, &sign),
        PipelineCheck::values("det M*", &det_m_star, &det_m),
        PipelineCheck::values("det A", &det_a, &sign),
        PipelineCheck::values("det A det T", &(&det_a * &det_t), &det_m_star),
        PipelineCheck::holds("B = M* Aᵀ shape", b_shape_ok),
        PipelineCheck::values("det B", &det_b, &rat(1)),
        PipelineCheck::values("det B*", &det_b_star, &det_b),
        PipelineCheck::values("det oneplus", &det_one_plus, &det_b_star),
    ];
    Ok(Section3Report { p, checks })
}
